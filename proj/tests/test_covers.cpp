#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <set>

#include "hyperlab/covers.hpp"
#include "hyperlab/error.hpp"

using namespace hyperlab;

namespace {

// Enumerates the curves S^n = prod (s - p_i)^m_i directly: exponents with
// sum 0 mod n, indices k_i = n / gcd(m_i, n), Riemann-Hurwitz for the genus.
std::set<CoverSignature> brute_force_genus2(int max_n) {
  std::set<CoverSignature> out;
  for (int n = 2; n <= max_n; ++n) {
    for (int a = 1; a < n; ++a)
      for (int b = a; b < n; ++b)
        for (int c = b; c < n; ++c)
          for (int d = c; d < n; ++d) {
            if ((a + b + c + d) % n != 0) continue;
            std::array<int, 4> k = {n / std::gcd(a, n), n / std::gcd(b, n), n / std::gcd(c, n),
                                    n / std::gcd(d, n)};
            if (std::lcm(std::lcm(k[0], k[1]), std::lcm(k[2], k[3])) != n) continue;
            int chi = -2 * n;
            for (int v : k) chi += n / v;
            std::sort(k.begin(), k.end());
            if (chi == -2) out.insert({n, k});
          }
  }
  return out;
}

}  // namespace

TEST(Covers, EulerCharacteristic) {
  EXPECT_EQ(euler_characteristic(make_signature(3, {3, 3, 3, 3})), Rational(-2));
  EXPECT_EQ(euler_characteristic(make_signature(2, {2, 2, 2, 2})), Rational(0));
  EXPECT_EQ(euler_characteristic(make_signature(4, {4, 4, 2, 2})), Rational(-2));
}

TEST(Covers, SignatureIsSorted) {
  const auto s = make_signature(6, {3, 2, 3, 2});
  EXPECT_EQ(s.k, (std::array<int, 4>{2, 2, 3, 3}));
  EXPECT_EQ(s.to_string(), "(6;2,2,3,3)");
  EXPECT_THROW(make_signature(6, {1, 2, 3, 6}), Error);
}

TEST(Covers, GenusTwoClassification) {
  const auto found = classify_genus2(60);
  const std::vector<CoverSignature> expected = {
      make_signature(3, {3, 3, 3, 3}), make_signature(4, {2, 2, 4, 4}), make_signature(6, {2, 2, 3, 3})};
  EXPECT_EQ(found, expected);
  const auto small = classify_genus2(24);
  EXPECT_EQ(std::set<CoverSignature>(small.begin(), small.end()), brute_force_genus2(24));
}

TEST(Covers, UnrealizableIndexSolutionIsExcluded) {
  // 3/2 + 1/6 + 2/6 = 2 with lcm 6, but three exponents of 3 and one unit never sum to 0 mod 6
  const auto sig = make_signature(6, {2, 2, 2, 6});
  EXPECT_EQ(euler_characteristic(sig), Rational(-2));
  const auto found = classify_genus2(12);
  EXPECT_EQ(std::find(found.begin(), found.end(), sig), found.end());
}

TEST(Covers, BothCriteriaAgreeAtGenusTwo) {
  EXPECT_EQ(classify_covers(40, -2, CoverCriterion::EulerCharacteristic),
            classify_covers(40, -2, CoverCriterion::IndexEquation));
}

TEST(Covers, ListStabilizesBeyondSix) {
  EXPECT_EQ(classify_genus2(6), classify_genus2(60));
  EXPECT_EQ(classify_genus2(2).size(), 0u);
}

TEST(Covers, TorusCoversAtGenusOne) {
  const auto tori = classify_covers(12, 0);
  ASSERT_FALSE(tori.empty());
  EXPECT_EQ(tori.front(), make_signature(2, {2, 2, 2, 2}));
}

TEST(Covers, CurveAnnotations) {
  for (const auto& s : classify_genus2(60)) EXPECT_TRUE(curve_annotation(s).has_value()) << s.to_string();
  EXPECT_FALSE(curve_annotation(make_signature(2, {2, 2, 2, 2})).has_value());
}
