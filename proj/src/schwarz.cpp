#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>

#include <Eigen/Dense>

#include "hyperlab/error.hpp"
#include "hyperlab/hyperseries.hpp"
#include "hyperlab/parallel.hpp"
#include "hyperlab/periods.hpp"

namespace hyperlab {

namespace {

const Complex kOmega(-0.5, std::sqrt(3.0) / 2.0);

double b23() { return beta_function(2.0 / 3.0, 2.0 / 3.0); }

Complex kappa2() {
  const double b = b23();
  return kOmega * kOmega * b * b / beta_function(2.0 / 3.0, -1.0 / 3.0);
}

// Periods are continued from t in (0, 1) through the half plane containing t;
// real t > 1 is reached from above.
double side_of(Complex t) { return t.imag() < 0.0 ? -1.0 : 1.0; }

Integrand invariant_integrand(Complex t, double offset1) {
  const double hint = -side_of(t) * std::numbers::pi / 2.0;
  Integrand f;
  f.factors = {{0.0, 1.0, -1.0 / 3.0, hint},
               {offset1, -offset1, -1.0 / 3.0, hint},
               {1.0, -t, -2.0 / 3.0, hint}};
  return f;
}

double segment_distance(Complex r, Complex a, Complex b) {
  const Complex d = b - a;
  const double u = std::clamp(std::real((r - a) * std::conj(d)) / std::norm(d), 0.0, 1.0);
  return std::abs(r - (a + u * d));
}

std::array<Complex, 2> quadrature_periods(Complex t, const PeriodOptions& opts) {
  const Complex inv = 1.0 / t;
  // sigma^(-1/3) (1-sigma)^(-1/3) (1-t sigma)^(-2/3) over (0, 1)
  std::vector<Complex> path1 = {0.0, 1.0};
  if (segment_distance(inv, 0.0, 1.0) < 0.25) path1 = {0.0, Complex(0.5, 0.5 * side_of(t)), 1.0};
  const PeriodValue j1 = integrate_path(invariant_integrand(t, 1.0), path1, opts.nodes);
  // same integrand with (s-1)^(-1/3), from 1 to 1/t
  const PeriodValue j2 = integrate_path(invariant_integrand(t, -1.0), {1.0, inv}, opts.nodes);
  return {b23() * j1.value, kappa2() * j2.value};
}

std::array<Complex, 2> series_periods(Complex t) {
  if (!(std::abs(t) < 1.0)) throw Error(ErrorCode::DivergentInput, "series route needs |t| < 1");
  const double b = b23();
  const Complex pi1 = b * b * gauss_2f1(Rational(2, 3), Rational(2, 3), Rational(4, 3), t);
  const Complex local = std::pow(t, -1.0 / 3.0) *
                        gauss_2f1(Rational(1, 3), Rational(1, 3), Rational(2, 3), t);
  const Complex pi2 =
      kOmega * kOmega * pi1 + kappa2() * beta_function(1.0 / 3.0, 1.0 / 3.0) * local;
  return {pi1, pi2};
}

void require_admissible(Complex t) {
  if (std::abs(t) < 1e-14 || std::abs(t - 1.0) < 1e-14) {
    throw Error(ErrorCode::PreconditionViolated, "t must avoid 0 and 1");
  }
}

std::string number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

std::array<Complex, 2> invariant_periods(Complex t, PeriodRoute route, const PeriodOptions& opts) {
  require_admissible(t);
  return route == PeriodRoute::Series ? series_periods(t) : quadrature_periods(t, opts);
}

std::array<Complex, 2> arc_periods(Complex t, const PeriodOptions& opts) {
  require_admissible(t);
  const Integrand f = abel_jacobi_integrand(1, t);
  std::vector<Complex> path_a = {0.0, 1.0};
  if (segment_distance(t, 0.0, 1.0) < 0.25) path_a = {0.0, Complex(0.5, -0.5 * side_of(t)), 1.0};
  std::vector<Complex> path_b = {1.0, t};
  if (segment_distance(0.0, 1.0, t) < 0.25 * std::abs(t - 1.0)) {
    const Complex mid = 0.5 * (1.0 + t);
    path_b = {1.0, mid + Complex(0.0, 0.5 * std::abs(t - 1.0) * side_of(t)), t};
  }
  return {integrate_path(f, path_a, opts.nodes).value, integrate_path(f, path_b, opts.nodes).value};
}

double hermitian_witness(const std::array<Complex, 2>& v) {
  const Complex w1 = v[0] + v[1];
  const Complex w2 = (-2.0 - kOmega) * v[1];
  return -2.0 * std::sqrt(3.0) * std::imag(w1 * std::conj(w2));
}

SchwarzPoint schwarz_from_periods(Complex t, const std::array<Complex, 2>& v) {
  if (v[1] == 0.0) throw Error(ErrorCode::SingularSample, "second period vanishes");
  SchwarzPoint p;
  p.t = t;
  p.ratio = v[0] / v[1];
  p.quadruple = {v[0], v[1], 0.0, 0.0};
  p.sign_witness = hermitian_witness(v);
  return p;
}

SchwarzPoint schwarz_s1(Complex t, PeriodBasis basis, const PeriodOptions& opts) {
  const auto v = basis == PeriodBasis::Invariant ? invariant_periods(t, PeriodRoute::Quadrature, opts)
                                                 : arc_periods(t, opts);
  return schwarz_from_periods(t, v);
}

SchwarzPoint schwarz_s2(Complex s, Complex t, int t_branch, const PeriodOptions& opts) {
  SchwarzPoint p = schwarz_s1(t, PeriodBasis::Invariant, opts);
  const Complex unit = std::pow(kOmega, ((t_branch % 3) + 3) % 3);
  const Complex cube = std::pow(t, -1.0 / 3.0) * unit;
  p.quadruple[2] = abel_jacobi(1, s, t, opts).value;
  p.quadruple[3] = cube * abel_jacobi(2, s, t, opts).value;
  return p;
}

std::vector<DiscRow> sample_disc_image(const std::vector<Complex>& t_samples, int jobs,
                                       const PeriodOptions& opts) {
  std::vector<DiscRow> rows(t_samples.size());
  parallel_for(t_samples.size(), jobs, [&](size_t i) {
    rows[i].t = t_samples[i];
    try {
      rows[i].point = schwarz_s1(t_samples[i], PeriodBasis::Invariant, opts);
    } catch (const Error& e) {
      rows[i].error = std::string(error_code_name(e.code())) + ": " + e.what();
    }
  });
  return rows;
}

void write_disc_csv(std::ostream& out, const std::vector<DiscRow>& rows) {
  out << "t_re,t_im,ratio_re,ratio_im,sign_witness\n";
  for (const auto& r : rows) {
    if (!r.point) continue;
    out << number(r.t.real()) << ',' << number(r.t.imag()) << ',' << number(r.point->ratio.real())
        << ',' << number(r.point->ratio.imag()) << ',' << number(r.point->sign_witness) << '\n';
  }
}

void write_disc_svg(std::ostream& out, const std::vector<DiscRow>& rows) {
  double lo_x = 0, hi_x = 0, lo_y = 0, hi_y = 0;
  bool first = true;
  for (const auto& r : rows) {
    if (!r.point) continue;
    const Complex z = r.point->ratio;
    if (first) {
      lo_x = hi_x = z.real();
      lo_y = hi_y = z.imag();
      first = false;
    }
    lo_x = std::min(lo_x, z.real());
    hi_x = std::max(hi_x, z.real());
    lo_y = std::min(lo_y, z.imag());
    hi_y = std::max(hi_y, z.imag());
  }
  const double size = 400.0, margin = 20.0;
  const double span = std::max({hi_x - lo_x, hi_y - lo_y, 1e-12});
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size + 2 * margin << "\" height=\""
      << size + 2 * margin << "\">\n";
  for (const auto& r : rows) {
    if (!r.point) continue;
    const Complex z = r.point->ratio;
    const double cx = margin + (z.real() - lo_x) / span * size;
    const double cy = margin + (hi_y - z.imag()) / span * size;
    out << "  <circle cx=\"" << number(cx) << "\" cy=\"" << number(cy) << "\" r=\"2\" fill=\""
        << (r.point->sign_witness < 0 ? "steelblue" : "firebrick") << "\"/>\n";
  }
  out << "</svg>\n";
}

Complex independence_determinant(Complex s, Complex t, double step, const PeriodOptions& opts) {
  const std::array<std::pair<Complex, Complex>, 4> offsets = {
      {{0.0, 0.0}, {step, 0.0}, {0.0, step}, {Complex(0.0, step), Complex(0.0, step)}}};
  Eigen::Matrix4cd m;
  for (int r = 0; r < 4; ++r) {
    const SchwarzPoint p = schwarz_s2(s + offsets[r].first, t + offsets[r].second, 0, opts);
    for (int c = 0; c < 4; ++c) m(r, c) = p.quadruple[c];
  }
  return m.determinant();
}

}  // namespace hyperlab
