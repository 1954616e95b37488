#include "hyperlab/identities.hpp"

#include <cmath>
#include <functional>
#include <sstream>

#include "hyperlab/error.hpp"
#include "hyperlab/hyperseries.hpp"
#include "hyperlab/parallel.hpp"
#include "hyperlab/quadrature.hpp"

namespace hyperlab {

size_t GridSpec::size() const {
  if (axes.empty()) return 0;
  size_t n = 1;
  for (const auto& ax : axes) n *= ax.size();
  return n;
}

std::vector<Complex> GridSpec::point(size_t index) const {
  std::vector<Complex> p(axes.size());
  for (size_t k = axes.size(); k-- > 0;) {
    p[k] = axes[k][index % axes[k].size()];
    index /= axes[k].size();
  }
  return p;
}

namespace {

nlohmann::json complex_json(Complex z) { return nlohmann::json::array({z.real(), z.imag()}); }

nlohmann::json point_json(const std::vector<Complex>& p) {
  auto arr = nlohmann::json::array();
  for (Complex z : p) arr.push_back(complex_json(z));
  return arr;
}

std::string point_text(const std::vector<Complex>& p) {
  std::ostringstream os;
  os.precision(6);
  os << '(';
  for (size_t i = 0; i < p.size(); ++i) {
    if (i) os << ", ";
    os << p[i].real();
    if (p[i].imag() != 0.0) os << (p[i].imag() < 0 ? "" : "+") << p[i].imag() << 'i';
  }
  os << ')';
  return os.str();
}

}  // namespace

nlohmann::json IdentityReport::to_json() const {
  nlohmann::json j;
  j["identity"] = identity;
  j["grid_size"] = grid_size;
  j["evaluated"] = evaluated;
  j["max_residual"] = max_residual;
  j["argmax"] = point_json(argmax);
  j["tol"] = tol;
  j["pass"] = pass;
  auto skipped_json = nlohmann::json::array();
  for (const auto& s : skipped) {
    skipped_json.push_back({{"point", point_json(s.point)}, {"reason", s.reason}});
  }
  j["skipped"] = skipped_json;
  if (control) {
    j["control"] = {{"perturbation", control->perturbation},
                    {"max_residual", control->max_residual},
                    {"threshold", control->threshold},
                    {"detected", control->detected()}};
  }
  return j;
}

std::string IdentityReport::to_text() const {
  std::ostringstream os;
  os.precision(3);
  os << (pass ? "PASS " : "FAIL ") << identity << " grid=" << grid_size
     << " evaluated=" << evaluated << std::scientific << " max_residual=" << max_residual
     << " tol=" << tol << " argmax=" << point_text(argmax);
  if (control) {
    os << " control[" << control->perturbation << "]=" << control->max_residual
       << (control->detected() ? " (detected)" : " (NOT detected)");
  }
  if (!skipped.empty()) os << " skipped=" << skipped.size();
  return os.str();
}

namespace {

using Residual = std::function<double(const std::vector<Complex>&)>;

struct PointOutcome {
  bool skipped = false;
  std::string reason;
  double residual = 0.0;
  double control = 0.0;
};

bool is_skip(ErrorCode c) {
  return c == ErrorCode::PreconditionViolated || c == ErrorCode::DivergentInput ||
         c == ErrorCode::SingularSample;
}

IdentityReport run_points(const std::string& name, const std::vector<std::vector<Complex>>& points,
                          double tol, const EvalPolicy& policy, const Residual& residual,
                          const Residual& control, const std::string& perturbation) {
  std::vector<PointOutcome> outcomes(points.size());
  parallel_for(points.size(), policy.jobs, [&](size_t i) {
    try {
      outcomes[i].residual = residual(points[i]);
      if (control) outcomes[i].control = control(points[i]);
    } catch (const Error& e) {
      if (!is_skip(e.code())) throw;
      outcomes[i].skipped = true;
      outcomes[i].reason = std::string(error_code_name(e.code())) + ": " + e.what();
    }
  });
  IdentityReport r;
  r.identity = name;
  r.grid_size = points.size();
  r.tol = tol;
  double control_max = 0.0;
  for (size_t i = 0; i < points.size(); ++i) {
    const auto& o = outcomes[i];
    if (o.skipped) {
      r.skipped.push_back({points[i], o.reason});
      continue;
    }
    ++r.evaluated;
    // NaN residuals must fail, so they always win the comparison.
    if (r.evaluated == 1 || o.residual > r.max_residual || std::isnan(o.residual)) {
      if (!std::isnan(r.max_residual)) {
        r.max_residual = o.residual;
        r.argmax = points[i];
      }
    }
    control_max = std::max(control_max, o.control);
  }
  r.pass = r.evaluated > 0 && r.max_residual < tol;
  if (control) {
    r.control = ControlResult{perturbation, control_max, 1e-4};
    r.pass = r.pass && r.control->detected();
  }
  return r;
}

std::vector<std::vector<Complex>> grid_points(const GridSpec& grid) {
  std::vector<std::vector<Complex>> pts;
  for (size_t i = 0; i < grid.size(); ++i) pts.push_back(grid.point(i));
  return pts;
}

void check_arity(const GridSpec& grid, size_t n, const char* name) {
  if (grid.axes.size() != n) {
    throw Error(ErrorCode::ArityMismatch, std::string(name) + ": grid must have " +
                                              std::to_string(n) + " axes");
  }
}

void precondition(bool ok, const char* what) {
  if (!ok) throw Error(ErrorCode::PreconditionViolated, what);
}

Complex cpow(Complex base, const Rational& e) { return std::pow(base, e.get_d()); }

const Rational kTenth(1, 10);

GridSpec square_grid(std::vector<Complex> xs, std::vector<Complex> ys, double tol) {
  return GridSpec{{std::move(xs), std::move(ys)}, tol};
}

}  // namespace

GridSpec default_grid_p78(double tol) {
  return square_grid({-0.2, -0.1, 0.05, 0.1, 0.2}, {-0.2, -0.05, 0.1, 0.2, 0.3}, tol);
}

GridSpec default_grid_p80(double tol) {
  return square_grid({-0.2, -0.1, 0.05, 0.1, 0.2}, {-0.2, -0.1, 0.05, 0.1, 0.2}, tol);
}

GridSpec default_grid_p81(double tol) {
  return square_grid({-0.2, -0.1, 0.05, 0.1, 0.15}, {-0.2, -0.1, 0.05, 0.1, 0.15}, tol);
}

GridSpec default_grid_appendix_a(double tol) {
  return GridSpec{{{-0.1, 0.0, 0.05, 0.1, 0.15}, {-0.1, 0.05, 0.1, 0.15, 0.2}, {-0.15, 0.1}},
                  tol};
}

GridSpec default_grid_matome(double tol) {
  return square_grid({-0.2, -0.1, 0.0, 0.1, 0.15}, {-0.2, -0.1, 0.0, 0.1, 0.15}, tol);
}

IdentityReport verify_bailey_p80(const Rational& a, const Rational& b, const Rational& bp,
                                 const Rational& c, const GridSpec& grid,
                                 const EvalPolicy& policy) {
  check_arity(grid, 2, "p80");
  auto lhs = [=](const Rational& bprime, Complex x, Complex y) {
    const Complex w = -y / (1.0 - y);
    precondition(std::abs(x) + std::abs(w) < 1.0, "p80: |x| + |y/(1-y)| must be < 1");
    return cpow(1.0 - y, -bprime) * appell_f2(a, b, bprime, c, a, x, w);
  };
  auto rhs = [=](Complex x, Complex y) {
    precondition(std::abs(x) < 1.0 && std::abs(x * (1.0 - y)) < 1.0,
                 "p80: |x| and |x(1-y)| must be < 1");
    return appell_f1(b, a - bp, bp, c, x, x * (1.0 - y));
  };
  return run_points(
      "p80", grid_points(grid), grid.tol, policy,
      [&](const std::vector<Complex>& p) { return std::abs(lhs(bp, p[0], p[1]) - rhs(p[0], p[1])); },
      [&](const std::vector<Complex>& p) {
        return std::abs(lhs(bp + kTenth, p[0], p[1]) - rhs(p[0], p[1]));
      },
      "b' + 1/10 on the left side");
}

IdentityReport verify_bailey_p81(const Rational& a, const Rational& b, const Rational& bp,
                                 const GridSpec& grid, const EvalPolicy& policy) {
  check_arity(grid, 2, "p81");
  auto lhs = [=](const Rational& bb, Complex x, Complex y) {
    precondition(std::abs(x) + std::abs(y) < 1.0, "p81: |x| + |y| must be < 1");
    return appell_f2(a, bb, bp, a, a, x, y);
  };
  auto rhs = [=](Complex x, Complex y) {
    const Complex z = x * y / ((1.0 - x) * (1.0 - y));
    precondition(std::abs(z) < 1.0, "p81: |xy/((1-x)(1-y))| must be < 1");
    return cpow(1.0 - x, -b) * cpow(1.0 - y, -bp) * gauss_2f1(b, bp, a, z);
  };
  return run_points(
      "p81", grid_points(grid), grid.tol, policy,
      [&](const std::vector<Complex>& p) { return std::abs(lhs(b, p[0], p[1]) - rhs(p[0], p[1])); },
      [&](const std::vector<Complex>& p) {
        return std::abs(lhs(b + kTenth, p[0], p[1]) - rhs(p[0], p[1]));
      },
      "b + 1/10 on the left side");
}

IdentityReport verify_bailey_p78(const Rational& a, const Rational& b, const Rational& bp,
                                 const Rational& c, const GridSpec& grid,
                                 const EvalPolicy& policy) {
  check_arity(grid, 2, "p78");
  auto lhs = [=](const Rational& cc, Complex x, Complex y) {
    precondition(std::abs(x) < 1.0 && std::abs(y) < 1.0, "p78: |x|, |y| must be < 1");
    return appell_f1(a, b, bp, cc, x, y);
  };
  auto rhs = [=](Complex x, Complex y) {
    const Complex u = -x / (1.0 - x);
    const Complex v = (y - x) / (1.0 - x);
    precondition(std::abs(u) < 1.0 && std::abs(v) < 1.0,
                 "p78: |x/(1-x)| and |(y-x)/(1-x)| must be < 1");
    return cpow(1.0 - x, -a) * appell_f1(a, c - b - bp, bp, c, u, v);
  };
  return run_points(
      "p78", grid_points(grid), grid.tol, policy,
      [&](const std::vector<Complex>& p) { return std::abs(lhs(c, p[0], p[1]) - rhs(p[0], p[1])); },
      [&](const std::vector<Complex>& p) {
        return std::abs(lhs(c + kTenth, p[0], p[1]) - rhs(p[0], p[1]));
      },
      "c + 1/10 on the left side");
}

namespace {

struct PhiParts {
  Complex lhs;
  Complex rhs;
};

// P(a,b,c;x) Phi by Euler-operator calculus in x, and b x d/ds(s(1-s)/(x-s) Phi).
PhiParts lemma_phi_sides(double a, double b, double c, Complex s, Complex x) {
  const Complex phi = std::pow(s, b - c) * std::pow(1.0 - s, c - a - 1.0) * std::pow(x - s, -b);
  const Complex g = -b * x / (x - s);                             // D Phi / Phi
  const Complex g2 = (b * x * s + b * b * x * x) / ((x - s) * (x - s));  // D^2 Phi / Phi
  const Complex lhs = ((c - 1.0) * g + g2 - x * (a * b + (a + b) * g + g2)) * phi;
  const Complex h = s * (1.0 - s) / (x - s);
  const Complex dh = ((1.0 - 2.0 * s) * (x - s) + s * (1.0 - s)) / ((x - s) * (x - s));
  const Complex dlog = (b - c) / s - (c - a - 1.0) / (1.0 - s) + b / (x - s);
  const Complex rhs = b * x * (dh + h * dlog) * phi;
  return {lhs, rhs};
}

void check_sample(Complex s, Complex x) {
  auto near = [](Complex u, Complex v) { return std::abs(u - v) < 1e-12; };
  if (near(s, 0.0) || near(s, 1.0) || near(s, x)) {
    throw Error(ErrorCode::SingularSample, "sample s coincides with 0, 1 or x");
  }
}

std::vector<std::vector<Complex>> sample_points(const std::vector<std::array<Complex, 2>>& samples) {
  std::vector<std::vector<Complex>> pts;
  for (const auto& s : samples) pts.push_back({s[0], s[1]});
  return pts;
}

}  // namespace

IdentityReport verify_lemma_phi(const Rational& a, const Rational& b, const Rational& c,
                                const std::vector<std::array<Complex, 2>>& samples, double tol,
                                const EvalPolicy& policy) {
  const double ad = a.get_d(), bd = b.get_d(), cd = c.get_d();
  return run_points(
      "lemma_phi", sample_points(samples), tol, policy,
      [=](const std::vector<Complex>& p) {
        check_sample(p[0], p[1]);
        const auto sides = lemma_phi_sides(ad, bd, cd, p[0], p[1]);
        return std::abs(sides.lhs - sides.rhs);
      },
      [=](const std::vector<Complex>& p) {
        check_sample(p[0], p[1]);
        const auto shifted = lemma_phi_sides(ad + 0.1, bd, cd, p[0], p[1]);
        const auto sides = lemma_phi_sides(ad, bd, cd, p[0], p[1]);
        return std::abs(shifted.lhs - sides.rhs);
      },
      "a + 1/10 in the operator");
}

namespace {

// u(s,t) = int_0^s sigma^(b-c) (1-sigma)^(c-a-1) (t-sigma)^(-b) d sigma
Complex lemma_u(double a, double b, double c, Complex s, Complex t) {
  Integrand f;
  f.factors = {{0.0, 1.0, b - c}, {1.0, -1.0, c - a - 1.0}, {t, -1.0, -b}};
  return integrate_path(f, {0.0, s}, 32).value;
}

}  // namespace

LemmaIndefiniteReport verify_lemma_indefinite(const Rational& a, const Rational& b,
                                              const Rational& c,
                                              const std::vector<std::array<Complex, 2>>& samples,
                                              double analytic_tol, double quadrature_tol,
                                              const EvalPolicy& policy) {
  if (b - c <= -1) {
    throw Error(ErrorCode::IntegrabilityViolated, "endpoint exponent b - c must exceed -1");
  }
  const double ad = a.get_d(), bd = b.get_d(), cd = c.get_d();
  const auto pts = sample_points(samples);
  auto guard = [](Complex s, Complex t) {
    check_sample(s, t);
    if (std::abs(t) < 1e-12 || std::abs(t - 1.0) < 1e-12) {
      throw Error(ErrorCode::SingularSample, "t coincides with 0 or 1");
    }
  };
  // Phi and its s- and t-derivatives
  auto phi_parts = [=](Complex s, Complex t) {
    const Complex phi =
        std::pow(s, bd - cd) * std::pow(1.0 - s, cd - ad - 1.0) * std::pow(t - s, -bd);
    const Complex phi_s = phi * ((bd - cd) / s - (cd - ad - 1.0) / (1.0 - s) + bd / (t - s));
    const Complex phi_t = -bd * phi / (t - s);
    return std::array<Complex, 3>{phi, phi_s, phi_t};
  };
  LemmaIndefiniteReport out;
  out.r1 = run_points(
      "lemma_indefinite_R1", pts, analytic_tol, policy,
      [&](const std::vector<Complex>& p) {
        guard(p[0], p[1]);
        const auto [phi, phi_s, phi_t] = phi_parts(p[0], p[1]);
        (void)phi_s;
        return std::abs((p[0] - p[1]) * phi_t - bd * phi);
      },
      nullptr, "");
  out.p1 = run_points(
      "lemma_indefinite_P1", pts, analytic_tol, policy,
      [&](const std::vector<Complex>& p) {
        guard(p[0], p[1]);
        const Complex s = p[0], t = p[1];
        const auto [phi, phi_s, phi_t] = phi_parts(s, t);
        return std::abs(s * (1.0 - s) * phi_s + t * (1.0 - s) * phi_t +
                        (cd - (ad + 1.0) * s) * phi);
      },
      nullptr, "");
  out.q1 = run_points(
      "lemma_indefinite_Q1", pts, quadrature_tol, policy,
      [&](const std::vector<Complex>& p) {
        guard(p[0], p[1]);
        const Complex s = p[0], t = p[1];
        auto u = [&](Complex tt) { return lemma_u(ad, bd, cd, s, tt); };
        const double h = 1e-4;
        // central differences at h and h/2, combined by one Richardson step
        auto d1 = [&](double hh) { return (u(t + hh) - u(t - hh)) / (2.0 * hh); };
        auto d2 = [&](double hh) { return (u(t + hh) - 2.0 * u(t) + u(t - hh)) / (hh * hh); };
        const Complex u_t = (4.0 * d1(h / 2) - d1(h)) / 3.0;
        const Complex u_tt = (4.0 * d2(h / 2) - d2(h)) / 3.0;
        const auto [phi, phi_s, phi_t] = phi_parts(s, t);
        (void)phi_s;
        const Complex q = t * (1.0 - t) * u_tt + s * (1.0 - t) * phi_t +
                          (cd - (ad + bd + 1.0) * t) * u_t - bd * s * phi - ad * bd * u(t);
        return std::abs(q);
      },
      nullptr, "");
  return out;
}

IdentityReport verify_appendix_a(const Rational& a2, const Rational& a3, const Rational& a4,
                                 const Rational& a6, const GridSpec& grid,
                                 const EvalPolicy& policy) {
  check_arity(grid, 3, "appendixA");
  const Rational a5 = 1 - a2 - a4;
  auto residual = [=](const Rational& five, const std::vector<Complex>& p) {
    const Complex x1 = p[0], x3 = p[1], x4 = p[2];
    const double r = 0.2 + 1e-12;
    precondition(std::abs(x1) <= r && std::abs(x3) <= r && std::abs(x4) <= r,
                 "appendixA: coordinates must stay within radius 0.2");
    const Complex lhs = fx3_series(a2, a3, a4, five, a6, x1, x3, x4);
    const Complex rhs = cpow(1.0 - x1, -a2) *
                        lauricella_fd3(a3, a4, 1 - a6, a2, 1 + a3 - five, x3, x4,
                                       (x3 - x1) / (1.0 - x1));
    return std::abs(lhs - rhs);
  };
  return run_points(
      "appendixA", grid_points(grid), grid.tol, policy,
      [&](const std::vector<Complex>& p) { return residual(a5, p); },
      [&](const std::vector<Complex>& p) { return residual(a5 + kTenth, p); },
      "a5 + 1/10 on both sides");
}

IdentityReport verify_theorem_matome(const Rational& a, const Rational& b, const Rational& bp,
                                     const GridSpec& grid, const EvalPolicy& policy) {
  check_arity(grid, 2, "matome");
  auto chain = [=](const Rational& bprime0, Complex x, Complex y) {
    precondition(std::abs(x) + std::abs(y) < 1.0, "matome: |x| + |y| must be < 1");
    const Complex xy1 = x / (1.0 - y);
    const Complex u = -x / (1.0 - x);
    const Complex z = x * y / ((1.0 - x) * (1.0 - y));
    precondition(std::abs(xy1) < 1.0 && std::abs(u) < 1.0 && std::abs(z) < 1.0,
                 "matome: transformed arguments must lie in the unit disc");
    const Complex pre = cpow(1.0 - y, -bp);
    const Complex v0 = appell_f2(a, b, bprime0, a, a, x, y);
    const Complex v1 = pre * appell_f1(b, a - bp, bp, a, x, xy1);
    const Complex v2 = pre * cpow(1.0 - x, -b) * appell_f1(b, 0, bp, a, u, z);
    const Complex v3 = pre * cpow(1.0 - x, -b) * gauss_2f1(b, bp, a, z);
    return std::max({std::abs(v0 - v1), std::abs(v1 - v2), std::abs(v2 - v3)});
  };
  return run_points(
      "matome", grid_points(grid), grid.tol, policy,
      [&](const std::vector<Complex>& p) { return chain(bp, p[0], p[1]); },
      [&](const std::vector<Complex>& p) { return chain(bp + kTenth, p[0], p[1]); },
      "b' + 1/10 in the F2 generator");
}

}  // namespace hyperlab
