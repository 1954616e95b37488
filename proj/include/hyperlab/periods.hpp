#pragma once

#include <array>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "hyperlab/quadrature.hpp"
#include "hyperlab/rational.hpp"

namespace hyperlab {

struct PeriodOptions {
  int nodes = 32;
};

// Integrand of omega_k on C_t: s^e0 (s-1)^e1 (s-t)^e2 with
// (e0,e1,e2) = (-2/3,-1/3,-2/3) for k = 1 and (-1/3,-2/3,-1/3) for k = 2.
Integrand abel_jacobi_integrand(int k, Complex t);

// Straight segment 0 -> s, or the two-segment detour through s(1+i)/2 when
// the segment passes near 1 or t.
std::vector<Complex> abel_jacobi_path(Complex s, Complex t);

PeriodValue abel_jacobi(int k, Complex s, Complex t, const PeriodOptions& opts = {});
PeriodValue abel_jacobi_along(int k, const std::vector<Complex>& path, Complex t,
                              const PeriodOptions& opts = {});

// f_1, f_2 in X = -x/(1-x), Y = -y/(1-y).
PeriodValue indefinite_f(int which, const Rational& a, const Rational& b, const Rational& bp,
                         Complex x, Complex y, const PeriodOptions& opts = {});

// Unit-square Euler integral of
//   t1^(b-1) (1-t1)^(c-b-1) t2^(b'-1) (1-t2)^(c'-b'-1) (1 - t1 x - t2 y)^(-a)
// for real x, y with |x| + |y| < 1. Defaults to the E parameters.
struct SquareParams {
  Rational a{4, 3}, b{2, 3}, bp{2, 3}, c{4, 3}, cp{4, 3};
};
PeriodValue e2_square_integral(double x, double y, const SquareParams& p = {},
                               const PeriodOptions& opts = {});

// Finite-difference P2/Q2 residuals of a function of (x, y); central
// differences with step h and one Richardson pass.
struct PdeResidual {
  double p2 = 0.0;
  double q2 = 0.0;
};
template <class Fn>
PdeResidual e2_residual(const Fn& u, const SquareParams& p, Complex x, Complex y, double h = 1e-3);

// ---- Schwarz maps ----

enum class PeriodBasis {
  Invariant,  // the pair spanning the monodromy-invariant subspace
  Arcs,       // omega_1 over (0,1) and over (1,t)
};

enum class PeriodRoute { Quadrature, Series };

struct SchwarzPoint {
  Complex t;
  Complex ratio;
  std::array<Complex, 4> quadruple;
  double sign_witness = 0.0;
};

// Frozen sign of the Hermitian witness on the invariant basis.
inline constexpr int kDiscWitnessSign = -1;

// (Pi_1, Pi_2) in the basis whose circuits around t = 0 and t = 1 are M'_1, M'_3.
std::array<Complex, 2> invariant_periods(Complex t, PeriodRoute route = PeriodRoute::Quadrature,
                                         const PeriodOptions& opts = {});
std::array<Complex, 2> arc_periods(Complex t, const PeriodOptions& opts = {});

// -2 sqrt(3) Im(w1 conj(w2)) with w = P v.
double hermitian_witness(const std::array<Complex, 2>& v);

SchwarzPoint schwarz_from_periods(Complex t, const std::array<Complex, 2>& v);
SchwarzPoint schwarz_s1(Complex t, PeriodBasis basis = PeriodBasis::Invariant,
                        const PeriodOptions& opts = {});
// t_branch rotates the principal t^(-1/3) by omega^t_branch.
SchwarzPoint schwarz_s2(Complex s, Complex t, int t_branch = 0, const PeriodOptions& opts = {});

struct DiscRow {
  Complex t;
  std::optional<SchwarzPoint> point;
  std::string error;
};

std::vector<DiscRow> sample_disc_image(const std::vector<Complex>& t_samples, int jobs = 1,
                                       const PeriodOptions& opts = {});
// Header t_re,t_im,ratio_re,ratio_im,sign_witness; failed rows are omitted.
void write_disc_csv(std::ostream& out, const std::vector<DiscRow>& rows);
void write_disc_svg(std::ostream& out, const std::vector<DiscRow>& rows);

// det of the 4x4 matrix whose rows are S2 quadruples at (s, t) and three
// offsets of it; nonzero when the four coordinate functions are independent.
Complex independence_determinant(Complex s, Complex t, double step = 0.1,
                                 const PeriodOptions& opts = {});

// ---- template definitions ----

template <class Fn>
PdeResidual e2_residual(const Fn& u, const SquareParams& p, Complex x, Complex y, double h) {
  const double a = p.a.get_d(), b = p.b.get_d(), bp = p.bp.get_d();
  const double c = p.c.get_d(), cp = p.cp.get_d();
  struct Derivs {
    Complex u, ux, uy, uxx, uyy, uxy;
  };
  auto stencil = [&](double hh) {
    const Complex dx(hh, 0.0), dy(hh, 0.0);
    const Complex u0 = u(x, y);
    const Complex upx = u(x + dx, y), umx = u(x - dx, y);
    const Complex upy = u(x, y + dy), umy = u(x, y - dy);
    const Complex upp = u(x + dx, y + dy), upm = u(x + dx, y - dy);
    const Complex ump = u(x - dx, y + dy), umm = u(x - dx, y - dy);
    return Derivs{u0,
                  (upx - umx) / (2.0 * hh),
                  (upy - umy) / (2.0 * hh),
                  (upx - 2.0 * u0 + umx) / (hh * hh),
                  (upy - 2.0 * u0 + umy) / (hh * hh),
                  (upp - upm - ump + umm) / (4.0 * hh * hh)};
  };
  const Derivs d1 = stencil(h), d2 = stencil(h / 2);
  auto rich = [](Complex coarse, Complex fine) { return (4.0 * fine - coarse) / 3.0; };
  const Complex ux = rich(d1.ux, d2.ux), uy = rich(d1.uy, d2.uy);
  const Complex uxx = rich(d1.uxx, d2.uxx), uyy = rich(d1.uyy, d2.uyy);
  const Complex uxy = rich(d1.uxy, d2.uxy), u0 = d2.u;
  PdeResidual r;
  r.p2 = std::abs(x * (1.0 - x) * uxx - x * y * uxy + (c - (a + b + 1.0) * x) * ux - b * y * uy -
                  a * b * u0);
  r.q2 = std::abs(y * (1.0 - y) * uyy - x * y * uxy + (cp - (a + bp + 1.0) * y) * uy -
                  bp * x * ux - a * bp * u0);
  return r;
}

}  // namespace hyperlab
