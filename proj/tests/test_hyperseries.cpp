#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "hyperlab/error.hpp"
#include "hyperlab/hyperseries.hpp"
#include "hyperlab/quadrature.hpp"

using namespace hyperlab;

namespace {

const Rational kThird(1, 3);

Rational q(long p, long d) {
  Rational r(p, d);
  r.canonicalize();
  return r;
}

template <class Fn>
ErrorCode code_of(Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected an Error";
  return ErrorCode::InvalidArgument;
}

Rational factorial(int n) {
  Rational r = 1;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

}  // namespace

TEST(Pochhammer, SmallCases) {
  EXPECT_EQ(pochhammer(q(5, 7), 0), Rational(1));
  EXPECT_EQ(pochhammer(Rational(1), 4), Rational(24));
  EXPECT_EQ(pochhammer(q(2, 3), 2), q(10, 9));
}

TEST(Pochhammer, RecurrenceUpToFifty) {
  for (const Rational& a : {q(2, 3), q(-7, 5), q(11, 2)}) {
    for (unsigned n = 0; n < 50; ++n) {
      EXPECT_EQ(pochhammer(a, n + 1), pochhammer(a, n) * (a + n));
    }
  }
}

TEST(Pochhammer, NumericMatchesExact) {
  const ParamValue exact = pochhammer(ParamValue(q(2, 3)), 5);
  const ParamValue numeric = pochhammer(ParamValue::numeric(2.0 / 3.0), 5);
  ASSERT_TRUE(exact.is_exact());
  EXPECT_NEAR(std::abs(exact.to_complex() - numeric.to_complex()), 0.0, 1e-12);
}

TEST(ParamValue, RejectsNonFinite) {
  EXPECT_EQ(code_of([] { ParamValue::numeric(Complex(NAN, 0.0)); }), ErrorCode::InvalidArgument);
  EXPECT_EQ(code_of([] { ParamValue::numeric(Complex(0.0, INFINITY)); }), ErrorCode::InvalidArgument);
}

TEST(Gauss, ConstantTermAtOrigin) {
  EXPECT_EQ(gauss_2f1(q(1, 3), q(2, 7), q(5, 4), 0.0), Complex(1.0));
}

TEST(Gauss, BinomialCollapse) {
  const Complex v = gauss_2f1(q(1, 2), q(3, 5), q(3, 5), 0.5);
  EXPECT_NEAR(v.real(), std::sqrt(2.0), 1e-14);
  EXPECT_NEAR(v.imag(), 0.0, 1e-15);
}

TEST(Gauss, EulerIntegralOracle) {
  // t^(2/3) * int_0^1 s^(-2/3) (1-s)^(-1/3) (t-s)^(-2/3) ds / B(1/3, 2/3) at t = 2
  Integrand f;
  f.factors = {{0.0, 1.0, -2.0 / 3.0}, {1.0, -1.0, -1.0 / 3.0}, {2.0, -1.0, -2.0 / 3.0}};
  const PeriodValue phi = integrate_path(f, {0.0, 1.0});
  const Complex oracle = std::pow(2.0, 2.0 / 3.0) * phi.value / beta_function(1.0 / 3.0, 2.0 / 3.0);
  EXPECT_NEAR(std::abs(gauss_2f1(q(1, 3), q(2, 3), 1, 0.5) - oracle), 0.0, 1e-8);
}

TEST(Gauss, Errors) {
  EXPECT_EQ(code_of([] { gauss_2f1(q(1, 3), q(1, 3), q(1, 2), 1.0); }), ErrorCode::DivergentInput);
  EXPECT_EQ(code_of([] { gauss_2f1(q(1, 3), q(1, 3), -2, 0.1); }), ErrorCode::PoleParameter);
  SeriesOptions tight;
  tight.max_terms = 3;
  EXPECT_EQ(code_of([&] { gauss_2f1(q(1, 3), q(1, 3), q(1, 2), 0.9, tight); }), ErrorCode::NoConvergence);
  SeriesOptions bad;
  bad.tol = 0.0;
  EXPECT_EQ(code_of([&] { gauss_2f1(q(1, 3), q(1, 3), q(1, 2), 0.1, bad); }), ErrorCode::InvalidArgument);
}

TEST(AppellF1, Collapses) {
  EXPECT_EQ(appell_f1(q(1, 3), q(1, 5), q(1, 7), q(3, 2), 0.0, 0.0), Complex(1.0));
  const Complex x(0.3, -0.1);
  EXPECT_NEAR(std::abs(appell_f1(q(1, 3), q(1, 5), q(1, 7), q(3, 2), x, 0.0) -
                       gauss_2f1(q(1, 3), q(1, 5), q(3, 2), x)),
              0.0, 1e-15);
}

TEST(AppellF1, DiagonalMatchesGauss) {
  const Complex lhs = appell_f1(q(1, 3), q(1, 5), q(1, 7), q(3, 2), 0.2, 0.2);
  const Complex rhs = gauss_2f1(q(1, 3), q(1, 5) + q(1, 7), q(3, 2), 0.2);
  EXPECT_NEAR(std::abs(lhs - rhs), 0.0, 1e-12);
}

TEST(AppellF1, VandermondeOnTruncation) {
  // Diagonal sums of the F1 coefficients are the 2F1(a, b+b', c) coefficients.
  const std::vector<Rational> p = {q(1, 3), q(1, 5), q(1, 7), q(3, 2)};
  const TruncatedSeries s = truncate_formal(SeriesId::F1, p, 10);
  for (int n = 0; n <= 10; ++n) {
    Rational diag = 0;
    for (int i = 0; i <= n; ++i) diag += s.coefficient({i, n - i, 0});
    const Rational expected =
        pochhammer(p[0], n) * pochhammer(Rational(p[1] + p[2]), n) / (pochhammer(p[3], n) * factorial(n));
    EXPECT_EQ(diag, expected) << "degree " << n;
  }
}

TEST(AppellF1, SwapSymmetry) {
  for (double x : {-0.4, -0.1, 0.0, 0.2, 0.5}) {
    for (double y : {-0.3, 0.0, 0.1, 0.3, 0.6}) {
      const Complex a = appell_f1(q(1, 3), q(1, 5), q(1, 7), q(3, 2), x, y);
      const Complex b = appell_f1(q(1, 3), q(1, 7), q(1, 5), q(3, 2), y, x);
      EXPECT_NEAR(std::abs(a - b), 0.0, 1e-14) << x << "," << y;
    }
  }
}

TEST(AppellF2, Collapses) {
  EXPECT_EQ(appell_f2(q(4, 3), q(2, 3), q(2, 3), q(4, 3), q(4, 3), 0.0, 0.0), Complex(1.0));
  const Complex lhs = appell_f2(q(5, 4), 0, q(2, 3), q(4, 3), q(7, 5), 0.3, 0.25);
  EXPECT_NEAR(std::abs(lhs - gauss_2f1(q(5, 4), q(2, 3), q(7, 5), 0.25)), 0.0, 1e-15);
}

TEST(AppellF2, ProductFormula) {
  const double x = 0.15, y = 0.1;
  const Complex lhs = appell_f2(q(4, 3), q(2, 3), q(2, 3), q(4, 3), q(4, 3), x, y);
  const Complex z = x * y / ((1 - x) * (1 - y));
  const Complex rhs = std::pow(1 - x, -2.0 / 3.0) * std::pow(1 - y, -2.0 / 3.0) *
                      gauss_2f1(q(2, 3), q(2, 3), q(4, 3), z);
  EXPECT_NEAR(std::abs(lhs - rhs), 0.0, 1e-10);
}

TEST(AppellF2, SwapSymmetry) {
  const std::vector<double> axis = {-0.3, -0.1, 0.0, 0.1, 0.3};
  for (double x : axis) {
    for (double y : axis) {
      const Complex a = appell_f2(q(4, 3), q(1, 5), q(2, 3), q(3, 2), q(5, 7), x, y);
      const Complex b = appell_f2(q(4, 3), q(2, 3), q(1, 5), q(5, 7), q(3, 2), y, x);
      EXPECT_NEAR(std::abs(a - b), 0.0, 1e-14);
    }
  }
}

TEST(AppellF2, DomainIsTheSimplex) {
  EXPECT_EQ(code_of([] { appell_f2(1, 1, 1, 2, 2, 0.6, 0.5); }), ErrorCode::DivergentInput);
}

TEST(LauricellaFD, Collapses) {
  EXPECT_EQ(lauricella_fd3(q(1, 2), q(1, 3), q(1, 4), q(1, 5), 2, 0.0, 0.0, 0.0), Complex(1.0));
  const Complex a = lauricella_fd3(q(1, 2), q(1, 3), q(1, 4), 0, 2, 0.1, 0.2, 0.3);
  EXPECT_NEAR(std::abs(a - appell_f1(q(1, 2), q(1, 3), q(1, 4), 2, 0.1, 0.2)), 0.0, 1e-15);
}

TEST(LauricellaFD, EulerIntegralOracle) {
  // Gamma(c)/(Gamma(a)Gamma(c-a)) int_0^1 t^(a-1)(1-t)^(c-a-1) prod (1 - y_i t)^(-b_i) dt
  Integrand f;
  f.factors = {{0.0, 1.0, -0.5}, {1.0, -1.0, 0.5}, {1.0, -0.1, -1.0 / 3.0},
               {1.0, -0.2, -0.25}, {1.0, -0.3, -0.2}};
  const Complex oracle = integrate_path(f, {0.0, 1.0}).value / beta_function(0.5, 1.5);
  const Complex v = lauricella_fd3(q(1, 2), q(1, 3), q(1, 4), q(1, 5), 2, 0.1, 0.2, 0.3);
  EXPECT_NEAR(std::abs(v - oracle), 0.0, 1e-8);
}

TEST(FX3, OriginAndFirstCoefficient) {
  const Rational a2 = q(1, 3), a3 = q(2, 5), a4 = q(1, 7), a5 = q(3, 4), a6 = q(1, 6);
  EXPECT_EQ(fx3_series(a2, a3, a4, a5, a6, 0.0, 0.0, 0.0), Complex(1.0));
  const std::vector<Rational> p = {a2, a3, a4, a5, a6};
  const TruncatedSeries s = truncate_formal(SeriesId::FX3, p, 3);
  EXPECT_EQ(s.coefficient({1, 0, 0}), (1 - a5) * a2 / (a2 + a3 + a4));
  EXPECT_EQ(s.coefficient({0, 0, 1}), (1 - a6) * a3 / (a2 + a3 + a4));
}

TEST(TruncateFormal, LowOrders) {
  const Rational a = q(1, 3), b = q(2, 7), bp = q(5, 4), c = q(3, 2), cp = q(7, 3);
  const std::vector<Rational> p = {a, b, bp, c, cp};
  TruncatedSeries expected(2, 1);
  expected.set({0, 0, 0}, 1);
  expected.set({1, 0, 0}, a * b / c);
  expected.set({0, 1, 0}, a * bp / cp);
  EXPECT_EQ(truncate_formal(SeriesId::F2, p, 1), expected);

  const std::vector<Rational> g = {a, b, c};
  EXPECT_EQ(truncate_formal(SeriesId::F, g, 0), TruncatedSeries::constant(1, 0, 1));
}

TEST(TruncateFormal, ProductExpansionOfF2) {
  // (1-x)^(-b)(1-y)^(-b') F(b, b', a; xy/((1-x)(1-y))), expanded by hand:
  // coefficient of x^i y^j = sum_k c_k (b+k)_(i-k)/(i-k)! (b'+k)_(j-k)/(j-k)!
  const Rational a = q(4, 3), b = q(2, 3), bp = q(2, 3);
  const std::vector<Rational> p = {a, b, bp, a, a};
  const TruncatedSeries s = truncate_formal(SeriesId::F2, p, 3);
  for (int i = 0; i <= 3; ++i) {
    for (int j = 0; i + j <= 3; ++j) {
      Rational expected = 0;
      for (int k = 0; k <= std::min(i, j); ++k) {
        const Rational ck = pochhammer(b, k) * pochhammer(bp, k) / (pochhammer(a, k) * factorial(k));
        expected += ck * pochhammer(Rational(b + k), i - k) / factorial(i - k) * pochhammer(Rational(bp + k), j - k) /
                    factorial(j - k);
      }
      EXPECT_EQ(s.coefficient({i, j, 0}), expected) << i << "," << j;
    }
  }
}

TEST(TruncateFormal, RejectsPoles) {
  const std::vector<Rational> p = {q(1, 3), q(1, 3), -1};
  EXPECT_EQ(code_of([&] { truncate_formal(SeriesId::F, p, 4); }), ErrorCode::PoleParameter);
}

TEST(TruncateFormal, AgreesWithNumericNearOrigin) {
  // Order-12 truncation differs from the full sum by the tail, bounded here
  // by 4 r^13 with r the l1 norm of the point.
  struct Case {
    SeriesId id;
    std::vector<Rational> params;
    std::vector<Complex> point;
  };
  const std::vector<Case> cases = {
      {SeriesId::F, {q(1, 3), q(2, 3), q(4, 3)}, {Complex(0.1, 0.0)}},
      {SeriesId::F1, {q(1, 3), q(1, 5), q(1, 7), q(3, 2)}, {Complex(0.1, 0.0), Complex(-0.05, 0.05)}},
      {SeriesId::F2, {q(4, 3), q(2, 3), q(2, 3), q(4, 3), q(4, 3)}, {Complex(0.1, 0.0), Complex(0.0, 0.1)}},
      {SeriesId::FD3, {q(1, 2), q(1, 3), q(1, 4), q(1, 5), 2}, {Complex(0.1), Complex(-0.1), Complex(0.05)}},
      {SeriesId::FX3, {q(1, 3), q(1, 3), q(1, 3), q(1, 3), q(1, 3)}, {Complex(0.1), Complex(0.1), Complex(-0.1)}},
  };
  const SeriesOptions opts;
  for (const auto& c : cases) {
    std::vector<ParamValue> pv(c.params.begin(), c.params.end());
    const Complex numeric = evaluate_series(c.id, pv, c.point, opts);
    const Complex formal = truncate_formal(c.id, c.params, 12).evaluate(c.point);
    double r = 0.0;
    for (Complex z : c.point) r += std::abs(z);
    EXPECT_LE(std::abs(numeric - formal), 10 * opts.tol + 4 * std::pow(r, 13)) << series_name(c.id);
  }
}
