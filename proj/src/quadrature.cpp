#include "hyperlab/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <tuple>

#include <Eigen/Eigenvalues>

#include "hyperlab/error.hpp"

namespace hyperlab {

namespace {

constexpr double kCollision = 1e-8;
constexpr int kMaxSplitDepth = 60;

GaussRule golub_welsch(int n, double a, double b) {
  Eigen::VectorXd diag(n);
  Eigen::VectorXd off(n > 1 ? n - 1 : 1);
  const double ab = a + b;
  diag(0) = (b - a) / (ab + 2.0);
  for (int k = 1; k < n; ++k) {
    const double s = 2.0 * k + ab;
    diag(k) = (b * b - a * a) / (s * (s + 2.0));
    double sq;
    if (k == 1) {
      sq = 4.0 * (1.0 + a) * (1.0 + b) / ((2.0 + ab) * (2.0 + ab) * (3.0 + ab));
    } else {
      sq = 4.0 * k * (k + a) * (k + b) * (k + ab) / (s * s * (s + 1.0) * (s - 1.0));
    }
    off(k - 1) = std::sqrt(sq);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  if (n == 1) {
    Eigen::MatrixXd m(1, 1);
    m(0, 0) = diag(0);
    solver.compute(m);
  } else {
    solver.computeFromTridiagonal(diag, off);
  }
  const double mu0 = std::exp((ab + 1.0) * std::log(2.0) + std::lgamma(a + 1.0) +
                              std::lgamma(b + 1.0) - std::lgamma(ab + 2.0));
  GaussRule rule;
  for (int i = 0; i < n; ++i) {
    const double v = solver.eigenvectors()(0, i);
    rule.nodes.push_back(solver.eigenvalues()(i));
    rule.weights.push_back(mu0 * v * v);
  }
  return rule;
}

// One straight piece of the path, with the weight exponents at its ends.
struct Piece {
  Complex a, b;
  double ea = 0.0, eb = 0.0;
};

bool vanishes_at(const PowerFactor& f, Complex z) {
  const double scale = std::abs(f.offset) + std::abs(f.slope) * std::abs(z);
  return std::abs(f.base(z)) <= 1e-14 * std::max(scale, 1e-300);
}

double distance_to_segment(Complex r, Complex a, Complex b) {
  const Complex d = b - a;
  double t = std::real((r - a) * std::conj(d)) / std::norm(d);
  t = std::clamp(t, 0.0, 1.0);
  return std::abs(r - (a + t * d));
}

void split(const Integrand& f, const Piece& p, int depth, std::vector<Piece>& out) {
  const double len = std::abs(p.b - p.a);
  if (depth < kMaxSplitDepth) {
    for (const auto& fac : f.factors) {
      if (fac.slope == 0.0) continue;
      if ((p.ea != 0.0 && vanishes_at(fac, p.a)) || (p.eb != 0.0 && vanishes_at(fac, p.b))) continue;
      if (distance_to_segment(fac.root(), p.a, p.b) < 0.5 * len) {
        const Complex mid = 0.5 * (p.a + p.b);
        split(f, {p.a, mid, p.ea, 0.0}, depth + 1, out);
        split(f, {mid, p.b, 0.0, p.eb}, depth + 1, out);
        return;
      }
    }
  }
  out.push_back(p);
}

double continue_arg(const PowerFactor& f, double arg_from, Complex from, Complex to) {
  return arg_from + std::arg(f.base(to) / f.base(from));
}

Complex power(double modulus, double arg, double e) {
  return std::polar(std::pow(modulus, e), e * arg);
}

struct PathPlan {
  std::vector<Piece> pieces;
  std::vector<std::vector<double>> mid_args;  // per piece, per factor
  std::vector<double> reference_args;
};

PathPlan plan_path(const Integrand& f, const QuadratureSpec& spec) {
  const auto& path = spec.path;
  PathPlan plan;
  // Factors vanishing anywhere on the path other than at a weighted endpoint collide.
  for (size_t s = 0; s + 1 < path.size(); ++s) {
    for (const auto& fac : f.factors) {
      if (fac.slope == 0.0) continue;
      const Complex r = fac.root();
      if (distance_to_segment(r, path[s], path[s + 1]) >= kCollision) continue;
      const bool at_start = s == 0 && std::abs(r - path.front()) < kCollision;
      const bool at_end = s + 2 == path.size() && std::abs(r - path.back()) < kCollision;
      if ((at_start && vanishes_at(fac, path.front())) || (at_end && vanishes_at(fac, path.back())))
        continue;
      throw Error(ErrorCode::BranchCollision, "integration path passes within 1e-8 of a branch point");
    }
  }
  std::vector<size_t> first_segment_pieces;
  for (size_t s = 0; s + 1 < path.size(); ++s) {
    const double ea = s == 0 ? spec.alpha : 0.0;
    const double eb = s + 2 == path.size() ? spec.beta : 0.0;
    const size_t before = plan.pieces.size();
    split(f, {path[s], path[s + 1], ea, eb}, 0, plan.pieces);
    if (s == 0) {
      for (size_t i = before; i < plan.pieces.size(); ++i) first_segment_pieces.push_back(i);
    }
  }
  const Complex ref = 0.5 * (path[0] + path[1]);
  for (const auto& fac : f.factors) {
    double arg = std::arg(fac.base(ref));
    if (!std::isnan(fac.arg_hint)) {
      arg += 2.0 * std::numbers::pi * std::round((fac.arg_hint - arg) / (2.0 * std::numbers::pi));
    }
    plan.reference_args.push_back(arg);
  }

  plan.mid_args.resize(plan.pieces.size());
  for (size_t i = 0; i < plan.pieces.size(); ++i) {
    const Complex mid = 0.5 * (plan.pieces[i].a + plan.pieces[i].b);
    auto& args = plan.mid_args[i];
    args.resize(f.factors.size());
    for (size_t k = 0; k < f.factors.size(); ++k) {
      const auto& fac = f.factors[k];
      if (i < first_segment_pieces.size()) {
        args[k] = continue_arg(fac, plan.reference_args[k], ref, mid);
      } else {
        const Complex prev_mid = 0.5 * (plan.pieces[i - 1].a + plan.pieces[i - 1].b);
        const Complex joint = plan.pieces[i].a;
        const double at_joint = continue_arg(fac, plan.mid_args[i - 1][k], prev_mid, joint);
        args[k] = continue_arg(fac, at_joint, joint, mid);
      }
    }
  }
  return plan;
}

Complex integrate_plan(const Integrand& f, const PathPlan& plan, int n) {
  Complex total = 0.0;
  for (size_t i = 0; i < plan.pieces.size(); ++i) {
    const Piece& p = plan.pieces[i];
    const GaussRule& rule = gauss_jacobi_rule(n, p.eb, p.ea);
    const Complex half = 0.5 * (p.b - p.a);
    const Complex mid = 0.5 * (p.a + p.b);
    Complex acc = 0.0;
    for (size_t j = 0; j < rule.nodes.size(); ++j) {
      const double u = rule.nodes[j];
      const Complex z = mid + half * u;
      Complex value = f.scale;
      for (size_t k = 0; k < f.factors.size(); ++k) {
        const auto& fac = f.factors[k];
        Complex base;
        double weight_power = 0.0;
        if (p.ea != 0.0 && vanishes_at(fac, p.a)) {
          base = fac.slope * half * (1.0 + u);
          weight_power = (1.0 + u);
        } else if (p.eb != 0.0 && vanishes_at(fac, p.b)) {
          base = -fac.slope * half * (1.0 - u);
          weight_power = (1.0 - u);
        } else {
          base = fac.base(z);
        }
        const double arg = continue_arg(fac, plan.mid_args[i][k], mid, z);
        if (weight_power != 0.0) {
          // divide out the part absorbed by the Jacobi weight
          value *= power(std::abs(base) / weight_power, arg, fac.exponent);
        } else {
          value *= power(std::abs(base), arg, fac.exponent);
        }
      }
      acc += rule.weights[j] * value;
    }
    total += half * acc;
  }
  return total;
}

}  // namespace

const GaussRule& gauss_jacobi_rule(int n, double a, double b) {
  static std::mutex mutex;
  static std::map<std::tuple<int, double, double>, GaussRule> cache;
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "quadrature needs at least one node");
  if (!(a > -1.0) || !(b > -1.0)) {
    throw Error(ErrorCode::NonIntegrableExponent, "endpoint exponent must exceed -1");
  }
  std::lock_guard<std::mutex> lock(mutex);
  auto key = std::make_tuple(n, a, b);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, golub_welsch(n, a, b)).first;
  return it->second;
}

double singular_exponent_at(const Integrand& f, Complex z) {
  double e = 0.0;
  for (const auto& fac : f.factors) {
    if (fac.slope != 0.0 && vanishes_at(fac, z)) e += fac.exponent;
  }
  return e;
}

PeriodValue gauss_jacobi_segment(const Integrand& f, const QuadratureSpec& spec) {
  if (spec.path.size() < 2) throw Error(ErrorCode::InvalidArgument, "path needs two endpoints");
  for (size_t s = 0; s + 1 < spec.path.size(); ++s) {
    if (spec.path[s] == spec.path[s + 1]) {
      throw Error(ErrorCode::InvalidArgument, "degenerate path segment");
    }
  }
  if (!(spec.alpha > -1.0) || !(spec.beta > -1.0)) {
    throw Error(ErrorCode::NonIntegrableExponent, "endpoint exponent must exceed -1");
  }
  if (std::abs(singular_exponent_at(f, spec.path.front()) - spec.alpha) > 1e-12 ||
      std::abs(singular_exponent_at(f, spec.path.back()) - spec.beta) > 1e-12) {
    throw Error(ErrorCode::InvalidArgument,
                "declared endpoint exponents do not match the integrand");
  }
  const PathPlan plan = plan_path(f, spec);
  const Complex coarse = integrate_plan(f, plan, spec.nodes);
  const Complex fine = integrate_plan(f, plan, 2 * spec.nodes);
  PeriodValue out;
  out.value = fine;
  out.err_estimate = std::abs(fine - coarse);
  out.reference_args = plan.reference_args;
  if (!std::isfinite(out.err_estimate)) {
    throw Error(ErrorCode::NonIntegrableExponent, "quadrature produced a non-finite value");
  }
  return out;
}

PeriodValue integrate_path(const Integrand& f, std::vector<Complex> path, int nodes) {
  if (path.size() < 2) throw Error(ErrorCode::InvalidArgument, "path needs two endpoints");
  QuadratureSpec spec;
  spec.nodes = nodes;
  spec.alpha = singular_exponent_at(f, path.front());
  spec.beta = singular_exponent_at(f, path.back());
  spec.path = std::move(path);
  return gauss_jacobi_segment(f, spec);
}

double beta_function(double p, double q) {
  return std::tgamma(p) * std::tgamma(q) / std::tgamma(p + q);
}

}  // namespace hyperlab
