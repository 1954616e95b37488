#include "hyperlab/periods.hpp"

#include <algorithm>
#include <cmath>

#include "hyperlab/error.hpp"

namespace hyperlab {

namespace {

constexpr double kDetourRadius = 0.25;

double distance_to_segment(Complex r, Complex a, Complex b) {
  const Complex d = b - a;
  double u = std::real((r - a) * std::conj(d)) / std::norm(d);
  u = std::clamp(u, 0.0, 1.0);
  return std::abs(r - (a + u * d));
}

// 0 -> end, bending through end(1+i)/2 when a branch point other than the
// endpoint sits close to the straight segment.
std::vector<Complex> detour_path(Complex end, std::initializer_list<Complex> branch_points) {
  const double len = std::abs(end);
  for (Complex r : branch_points) {
    if (std::abs(r - end) < 1e-12 * std::max(1.0, len)) continue;
    if (std::abs(r) < 1e-12) continue;
    if (distance_to_segment(r, 0.0, end) < kDetourRadius * len) {
      return {Complex(0.0), end * Complex(0.5, 0.5), end};
    }
  }
  return {Complex(0.0), end};
}

void require_admissible_t(Complex t) {
  if (std::abs(t) < 1e-14 || std::abs(t - 1.0) < 1e-14) {
    throw Error(ErrorCode::PreconditionViolated, "t must avoid 0 and 1");
  }
}

}  // namespace

Integrand abel_jacobi_integrand(int k, Complex t) {
  if (k != 1 && k != 2) throw Error(ErrorCode::InvalidArgument, "abel_jacobi index must be 1 or 2");
  const double e0 = k == 1 ? -2.0 / 3.0 : -1.0 / 3.0;
  const double e1 = k == 1 ? -1.0 / 3.0 : -2.0 / 3.0;
  Integrand f;
  f.factors = {{0.0, 1.0, e0}, {-1.0, 1.0, e1}, {-t, 1.0, e0}};
  return f;
}

std::vector<Complex> abel_jacobi_path(Complex s, Complex t) { return detour_path(s, {1.0, t}); }

PeriodValue abel_jacobi(int k, Complex s, Complex t, const PeriodOptions& opts) {
  require_admissible_t(t);
  const Integrand f = abel_jacobi_integrand(k, t);
  if (s == 0.0) return PeriodValue{};
  return integrate_path(f, abel_jacobi_path(s, t), opts.nodes);
}

PeriodValue abel_jacobi_along(int k, const std::vector<Complex>& path, Complex t,
                              const PeriodOptions& opts) {
  require_admissible_t(t);
  return integrate_path(abel_jacobi_integrand(k, t), path, opts.nodes);
}

PeriodValue indefinite_f(int which, const Rational& a, const Rational& b, const Rational& bp,
                         Complex x, Complex y, const PeriodOptions& opts) {
  if (which != 1 && which != 2) throw Error(ErrorCode::InvalidArgument, "which must be 1 or 2");
  if (std::abs(1.0 - x) < 1e-14 || std::abs(1.0 - y) < 1e-14) {
    throw Error(ErrorCode::DomainViolated, "x and y must avoid 1");
  }
  const Complex big_x = -x / (1.0 - x);
  const Complex big_y = -y / (1.0 - y);
  const Complex prod = big_x * big_y;
  const double ad = a.get_d(), bd = b.get_d(), bpd = bp.get_d();
  Integrand f;
  if (which == 1) {
    f.factors = {{0.0, 1.0, bpd - ad}, {1.0, -1.0, ad - bd - 1.0}, {prod, -1.0, -bpd}};
  } else {
    if (std::abs(prod) < 1e-300) throw Error(ErrorCode::DomainViolated, "f_2 needs xy != 0");
    f.factors = {{0.0, 1.0, bpd - 1.0}, {1.0, -1.0, -bd}, {prod, -1.0, ad - bpd - 1.0}};
    f.scale = std::pow(prod, 1.0 - ad);
  }
  if (big_x == 0.0) return PeriodValue{};
  return integrate_path(f, detour_path(big_x, {1.0, prod}), opts.nodes);
}

PeriodValue e2_square_integral(double x, double y, const SquareParams& p, const PeriodOptions& opts) {
  if (!(std::abs(x) + std::abs(y) < 1.0)) {
    throw Error(ErrorCode::DomainViolated, "square integral needs |x| + |y| < 1");
  }
  const double a = p.a.get_d(), b = p.b.get_d(), bp = p.bp.get_d();
  const double c = p.c.get_d(), cp = p.cp.get_d();
  auto tensor = [&](int n) {
    // t^beta (1-t)^alpha dt = 2^(-alpha-beta-1) (1+u)^beta (1-u)^alpha du
    const GaussRule& r1 = gauss_jacobi_rule(n, c - b - 1.0, b - 1.0);
    const GaussRule& r2 = gauss_jacobi_rule(n, cp - bp - 1.0, bp - 1.0);
    const double jac = std::pow(2.0, -(c - 1.0)) * std::pow(2.0, -(cp - 1.0));
    double acc = 0.0;
    for (size_t i = 0; i < r1.nodes.size(); ++i) {
      const double t1 = 0.5 * (1.0 + r1.nodes[i]);
      double inner = 0.0;
      for (size_t j = 0; j < r2.nodes.size(); ++j) {
        const double t2 = 0.5 * (1.0 + r2.nodes[j]);
        inner += r2.weights[j] * std::pow(1.0 - t1 * x - t2 * y, -a);
      }
      acc += r1.weights[i] * inner;
    }
    return jac * acc;
  };
  const double coarse = tensor(opts.nodes);
  const double fine = tensor(2 * opts.nodes);
  PeriodValue out;
  out.value = fine;
  out.err_estimate = std::abs(fine - coarse);
  return out;
}

}  // namespace hyperlab
