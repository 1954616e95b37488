#include <gtest/gtest.h>

#include <numbers>
#include <sstream>

#include "hyperlab/eisenstein.hpp"
#include "hyperlab/error.hpp"
#include "hyperlab/hyperseries.hpp"
#include "hyperlab/periods.hpp"

using namespace hyperlab;

namespace {

constexpr double kPi = std::numbers::pi;
const Complex kOmega(-0.5, std::sqrt(3.0) / 2.0);

// Plain power series for 2F1, used only as an oracle at |z| <= 1/2.
Complex gauss_oracle(double a, double b, double c, Complex z) {
  Complex term = 1.0, sum = 1.0;
  for (int n = 0; n < 400; ++n) {
    term *= (a + n) * (b + n) / ((c + n) * (n + 1.0)) * z;
    sum += term;
    if (std::abs(term) < 1e-18) break;
  }
  return sum;
}

template <class Fn>
Complex derivative(const Fn& f, Complex t, double h = 1e-3) {
  auto d = [&](double hh) { return (f(t + hh) - f(t - hh)) / (2.0 * hh); };
  return (4.0 * d(h / 2) - d(h)) / 3.0;
}

// RK4 for t(1-t)u'' + (4/3 - 7/3 t)u' - 4/9 u = 0 along t(theta) = centre + r e^{i theta}.
std::array<Complex, 2> continue_around(Complex centre, double radius, Complex u0, Complex du0) {
  const double a = 2.0 / 3.0, b = 2.0 / 3.0, c = 4.0 / 3.0;
  auto rhs = [&](Complex t, Complex u, Complex du) {
    return (a * b * u - (c - (a + b + 1.0) * t) * du) / (t * (1.0 - t));
  };
  const int steps = 4000;
  const double h = 2 * kPi / steps;
  Complex u = u0, du = du0;
  for (int k = 0; k < steps; ++k) {
    const double th = k * h;
    auto t_at = [&](double s) { return centre + radius * std::polar(1.0, s); };
    auto dt = [&](double s) { return Complex(0.0, 1.0) * radius * std::polar(1.0, s); };
    // state derivative with respect to theta
    auto f = [&](double s, Complex uu, Complex dd) {
      return std::array<Complex, 2>{dd * dt(s), rhs(t_at(s), uu, dd) * dt(s)};
    };
    const auto k1 = f(th, u, du);
    const auto k2 = f(th + h / 2, u + h / 2 * k1[0], du + h / 2 * k1[1]);
    const auto k3 = f(th + h / 2, u + h / 2 * k2[0], du + h / 2 * k2[1]);
    const auto k4 = f(th + h, u + h * k3[0], du + h * k3[1]);
    u += h / 6 * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0]);
    du += h / 6 * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1]);
  }
  return {u, du};
}

std::array<Complex, 2> apply_block(const EisensteinMatrix& m, const std::array<Complex, 2>& v) {
  return {m(0, 0).to_complex() * v[0] + m(0, 1).to_complex() * v[1],
          m(1, 0).to_complex() * v[0] + m(1, 1).to_complex() * v[1]};
}

}  // namespace

TEST(Quadrature, BetaIntegral) {
  Integrand f;
  f.factors = {{0.0, 1.0, -1.0 / 3.0}, {1.0, -1.0, -2.0 / 3.0}};
  const auto r = integrate_path(f, {0.0, 1.0});
  EXPECT_NEAR(std::abs(r.value - 2 * kPi / std::sqrt(3.0)), 0.0, 1e-10);
  EXPECT_NEAR(beta_function(1.0 / 3.0, 2.0 / 3.0), 2 * kPi / std::sqrt(3.0), 1e-12);
}

TEST(Quadrature, ConstantIntegrand) {
  Integrand f;
  EXPECT_NEAR(std::abs(integrate_path(f, {0.0, 1.0}).value - 1.0), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(integrate_path(f, {0.0, Complex(0.0, 2.0)}).value - Complex(0.0, 2.0)), 0.0, 1e-14);
}

TEST(Quadrature, NodeDoublingConverges) {
  Integrand f;
  f.factors = {{0.0, 1.0, -1.0 / 3.0}, {1.0, -1.0, -2.0 / 3.0}, {2.0, -1.0, -0.5}};
  const Complex ref = integrate_path(f, {0.0, 1.0}, 256).value;
  const double err32 = std::abs(integrate_path(f, {0.0, 1.0}, 32).value - ref);
  const double err64 = std::abs(integrate_path(f, {0.0, 1.0}, 64).value - ref);
  EXPECT_LE(err64, std::max(err32 / 100.0, 1e-13));
}

TEST(Quadrature, BranchCollision) {
  Integrand f;
  f.factors = {{-1.0, 1.0, -0.5}};
  try {
    integrate_path(f, {0.0, 2.0});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::BranchCollision);
  }
}

TEST(Quadrature, NonIntegrableEndpoint) {
  Integrand f;
  f.factors = {{0.0, 1.0, -1.0}};
  try {
    integrate_path(f, {0.0, 1.0});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NonIntegrableExponent);
  }
}

TEST(AbelJacobi, ModulusAgainstHypergeometric) {
  const double b = beta_function(1.0 / 3.0, 2.0 / 3.0);
  for (Complex t : {Complex(2.0), Complex(3.0), Complex(2.0, 1.0)}) {
    const double expected = b * std::pow(std::abs(t), -2.0 / 3.0) *
                            std::abs(gauss_oracle(2.0 / 3.0, 1.0 / 3.0, 1.0, 1.0 / t));
    EXPECT_NEAR(std::abs(abel_jacobi(1, 1.0, t).value), expected, 1e-10 * expected) << t;
  }
  const double expected2 = beta_function(2.0 / 3.0, 1.0 / 3.0) * std::pow(3.0, -1.0 / 3.0) *
                           std::abs(gauss_oracle(1.0 / 3.0, 2.0 / 3.0, 1.0, 1.0 / 3.0));
  EXPECT_NEAR(std::abs(abel_jacobi(2, 1.0, 3.0).value), expected2, 1e-10 * expected2);
}

TEST(AbelJacobi, SmallArgumentModel) {
  const double s = 1e-4;
  const Complex t(2.0, 0.5);
  const double model1 = 3.0 * std::cbrt(s) * std::pow(std::abs(t), -2.0 / 3.0);
  const double model2 = 1.5 * std::pow(s, 2.0 / 3.0) * std::pow(std::abs(t), -1.0 / 3.0);
  EXPECT_NEAR(std::abs(abel_jacobi(1, s, t).value) / model1, 1.0, 0.05);
  EXPECT_NEAR(std::abs(abel_jacobi(2, s, t).value) / model2, 1.0, 0.05);
  EXPECT_EQ(abel_jacobi(1, 0.0, t).value, Complex(0.0));
}

TEST(AbelJacobi, PathIndependence) {
  const Complex s(0.5, 0.1), t(3.0, 0.0);
  const Complex straight = abel_jacobi_along(1, {0.0, s}, t).value;
  const Complex bent = abel_jacobi_along(1, {0.0, Complex(0.2, 0.2), s}, t).value;
  EXPECT_LT(std::abs(straight - bent), 1e-9);
}

TEST(AbelJacobi, DetourAroundNearbyBranchPoint) {
  EXPECT_EQ(abel_jacobi_path(0.5, 3.0).size(), 2u);
  EXPECT_EQ(abel_jacobi_path(0.5, Complex(0.25, 0.01)).size(), 3u);
}

TEST(AbelJacobi, InvalidArguments) {
  EXPECT_THROW(abel_jacobi(3, 0.5, 2.0), Error);
  EXPECT_THROW(abel_jacobi(1, 0.5, 1.0), Error);
}

TEST(IndefiniteF, F1IsMinusAbelJacobi) {
  const Rational a(4, 3), b(2, 3), bp(2, 3);
  for (auto [x, y] : {std::pair{-0.3, -0.2}, std::pair{-0.5, -0.4}, std::pair{0.2, -0.6}}) {
    const Complex bx = -x / (1.0 - x), by = -y / (1.0 - y);
    const Complex f1 = indefinite_f(1, a, b, bp, x, y).value;
    const Complex phi = abel_jacobi(1, bx, bx * by).value;
    EXPECT_LT(std::abs(f1 + phi), 1e-12) << x << "," << y;
  }
}

TEST(IndefiniteF, EmptyPathAtOriginButSingularLimit) {
  const Rational a(4, 3), b(2, 3), bp(2, 3);
  EXPECT_EQ(indefinite_f(1, a, b, bp, 0.0, -0.2).value, Complex(0.0));
  // s -> X u shows f_1 ~ X^(-1/3) as x -> 0 with y fixed
  const double near = std::abs(indefinite_f(1, a, b, bp, -1e-4, -0.2).value);
  const double nearer = std::abs(indefinite_f(1, a, b, bp, -1e-6, -0.2).value);
  EXPECT_NEAR(nearer / near, std::cbrt(100.0), 0.01 * std::cbrt(100.0));
}

TEST(IndefiniteF, SolvesE2AfterGaugeFactor) {
  const SquareParams p;
  auto u = [&](Complex x, Complex y) {
    return std::pow(1.0 - x, -p.b.get_d()) * std::pow(1.0 - y, -p.bp.get_d()) *
           indefinite_f(1, p.a, p.b, p.bp, x, y, {64}).value;
  };
  const auto r = e2_residual(u, p, -0.3, -0.2);
  EXPECT_LT(r.p2, 1e-4);
  EXPECT_LT(r.q2, 1e-4);
}

TEST(IndefiniteF, DomainErrors) {
  const Rational a(4, 3), b(2, 3), bp(2, 3);
  EXPECT_THROW(indefinite_f(1, a, b, bp, 1.0, 0.1), Error);
  EXPECT_THROW(indefinite_f(2, a, b, bp, 0.1, 0.0), Error);
  EXPECT_THROW(indefinite_f(3, a, b, bp, 0.1, 0.1), Error);
}

TEST(SquareIntegral, OriginIsProductOfBetas) {
  const double b = beta_function(2.0 / 3.0, 2.0 / 3.0);
  EXPECT_NEAR(e2_square_integral(0.0, 0.0).value.real(), b * b, 1e-12);
}

TEST(SquareIntegral, Symmetric) {
  EXPECT_NEAR(e2_square_integral(0.1, -0.3).value.real(), e2_square_integral(-0.3, 0.1).value.real(),
              1e-13);
}

TEST(SquareIntegral, MatchesAppellF2) {
  const SquareParams p;
  const double scale = beta_function(2.0 / 3.0, 2.0 / 3.0) * beta_function(2.0 / 3.0, 2.0 / 3.0);
  for (auto [x, y] : {std::pair{0.05, 0.05}, std::pair{-0.2, 0.3}, std::pair{0.4, -0.1}}) {
    const Complex series = scale * appell_f2(p.a, p.b, p.bp, p.c, p.cp, x, y);
    EXPECT_LT(std::abs(e2_square_integral(x, y).value - series), 1e-9) << x << "," << y;
  }
  EXPECT_THROW(e2_square_integral(0.6, 0.5), Error);
}

TEST(SquareIntegral, SolvesE2) {
  const SquareParams p;
  auto u = [&](Complex x, Complex y) { return e2_square_integral(x.real(), y.real()).value; };
  const auto r = e2_residual(u, p, 0.05, 0.05);
  EXPECT_LT(r.p2, 1e-4);
  EXPECT_LT(r.q2, 1e-4);
}

TEST(InvariantPeriods, SeriesMatchesQuadrature) {
  for (Complex t : {Complex(0.3), Complex(0.2, 0.3), Complex(-0.4, -0.2), Complex(0.6, -0.1)}) {
    const auto q = invariant_periods(t, PeriodRoute::Quadrature);
    const auto s = invariant_periods(t, PeriodRoute::Series);
    EXPECT_LT(std::abs(q[0] - s[0]), 1e-9) << t;
    EXPECT_LT(std::abs(q[1] - s[1]), 1e-9) << t;
  }
  EXPECT_THROW(invariant_periods(2.0, PeriodRoute::Series), Error);
}

TEST(InvariantPeriods, AnalyticContinuationMonodromy) {
  const Complex t0 = 0.5;
  const auto v = invariant_periods(t0);
  std::array<Complex, 2> dv;
  for (int k = 0; k < 2; ++k)
    dv[k] = derivative([&](Complex t) { return invariant_periods(t)[k]; }, t0);
  // counterclockwise loops of radius 1/2 around 0 and around 1, both through t0
  for (auto [radius, index] : {std::pair{0.5, 1}, std::pair{-0.5, 3}}) {
    const Complex centre = t0 - radius;
    std::array<Complex, 2> after;
    for (int k = 0; k < 2; ++k) after[k] = continue_around(centre, radius, v[k], dv[k])[0];
    const auto expected = apply_block(reduced_block(index), v);
    EXPECT_LT(std::abs(after[0] - expected[0]), 1e-6) << index;
    EXPECT_LT(std::abs(after[1] - expected[1]), 1e-6) << index;
  }
}

TEST(InvariantPeriods, Wronskian) {
  const Complex t = 0.5;
  const auto v = invariant_periods(t);
  const Complex d0 = derivative([](Complex s) { return invariant_periods(s)[0]; }, t);
  const Complex d1 = derivative([](Complex s) { return invariant_periods(s)[1]; }, t);
  EXPECT_GT(std::abs(v[0] * d1 - v[1] * d0), 1e-6);
}

TEST(Schwarz, WitnessSignIsConstant) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> re(-0.8, 1.8), im(-0.9, 0.9);
  int checked = 0;
  while (checked < 20) {
    const Complex t(re(rng), im(rng));
    if (std::abs(t) < 0.1 || std::abs(t - 1.0) < 0.1) continue;
    const auto p = schwarz_s1(t);
    EXPECT_EQ(p.sign_witness < 0 ? -1 : 1, kDiscWitnessSign) << t;
    ++checked;
  }
  EXPECT_EQ(kDiscWitnessSign, -1);
}

TEST(Schwarz, ProjectiveInvariance) {
  const Complex t(0.3, 0.2);
  const auto v = invariant_periods(t);
  const Complex c(7.0, 2.0);
  const auto p = schwarz_from_periods(t, v);
  const auto q = schwarz_from_periods(t, {c * v[0], c * v[1]});
  EXPECT_LT(std::abs(p.ratio - q.ratio), 1e-14 * std::max(1.0, std::abs(p.ratio)));
  EXPECT_NEAR(q.sign_witness / p.sign_witness, std::norm(c), 1e-9 * std::norm(c));
}

TEST(Schwarz, ArcBasisIsFinite) {
  const auto p = schwarz_s1(Complex(0.4, 0.2), PeriodBasis::Arcs);
  EXPECT_TRUE(std::isfinite(p.ratio.real()) && std::isfinite(p.ratio.imag()));
  EXPECT_THROW(schwarz_s1(1.0), Error);
}

TEST(Schwarz, S2Quadruple) {
  const auto p = schwarz_s2(0.5, 2.0);
  const auto s1 = schwarz_s1(2.0);
  EXPECT_EQ(p.quadruple[0], s1.quadruple[0]);
  EXPECT_EQ(p.quadruple[1], s1.quadruple[1]);
  for (const auto& z : p.quadruple) EXPECT_TRUE(std::isfinite(std::abs(z)));
  const auto near_zero = schwarz_s2(1e-9, 2.0);
  EXPECT_LT(std::abs(near_zero.quadruple[2]), 1e-2);
  EXPECT_LT(std::abs(near_zero.quadruple[3]), 1e-2);
  const auto rotated = schwarz_s2(0.5, 2.0, 1);
  EXPECT_EQ(rotated.quadruple[2], p.quadruple[2]);
  EXPECT_LT(std::abs(rotated.quadruple[3] - kOmega * p.quadruple[3]), 1e-14);
  EXPECT_LT(std::abs(schwarz_s2(0.5, 2.0, -2).quadruple[3] - rotated.quadruple[3]), 1e-14);
}

TEST(Schwarz, CoordinatesAreIndependent) {
  EXPECT_GT(std::abs(independence_determinant(0.5, 2.0)), 1e-8);
}

TEST(Schwarz, DiscSampling) {
  std::vector<Complex> ts;
  for (int k = 0; k < 50; ++k) ts.push_back(0.05 + 0.9 * k / 49.0);
  const auto rows = sample_disc_image(ts, 2);
  ASSERT_EQ(rows.size(), 50u);
  for (const auto& r : rows) ASSERT_TRUE(r.point.has_value()) << r.error;
  std::ostringstream csv;
  write_disc_csv(csv, rows);
  const std::string text = csv.str();
  EXPECT_EQ(text.substr(0, text.find('\n')), "t_re,t_im,ratio_re,ratio_im,sign_witness");
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 51);
  std::ostringstream svg;
  write_disc_svg(svg, rows);
  EXPECT_NE(svg.str().find("<svg"), std::string::npos);
}

TEST(Schwarz, DiscSamplingEdgeCases) {
  EXPECT_TRUE(sample_disc_image({}).empty());
  const auto rows = sample_disc_image({0.5, 0.5, 1.0});
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[0].point->ratio, rows[1].point->ratio);
  EXPECT_FALSE(rows[2].point.has_value());
  EXPECT_NE(rows[2].error.find("PreconditionViolated"), std::string::npos);
}
