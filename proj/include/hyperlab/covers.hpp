#pragma once

#include <array>
#include <compare>
#include <optional>
#include <string>
#include <vector>

#include "hyperlab/rational.hpp"

namespace hyperlab {

// n-fold cyclic cover of the line branched at four points with indices k.
struct CoverSignature {
  int n = 0;
  std::array<int, 4> k{};  // sorted, each >= 2

  auto operator<=>(const CoverSignature&) const = default;
  std::string to_string() const;
};

CoverSignature make_signature(int n, std::array<int, 4> k);

Rational euler_characteristic(const CoverSignature& sig);

enum class CoverCriterion {
  EulerCharacteristic,  // chi == target
  IndexEquation,        // sum 1/k_i + 2/n == 2 (genus 2 only)
};

// All signatures with n <= max_n, k_i <= n and lcm(k) = n meeting the criterion
// and realizable by branch exponents summing to 0 mod n.
std::vector<CoverSignature> classify_covers(int max_n, const Rational& target_chi = -2,
                                            CoverCriterion criterion = CoverCriterion::EulerCharacteristic);

// Both criteria at chi = -2, intersected.
std::vector<CoverSignature> classify_genus2(int max_n);

// Realizing curve for the three genus-2 cases.
std::optional<std::string> curve_annotation(const CoverSignature& sig);

}  // namespace hyperlab
