#pragma once

#include <array>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "hyperlab/matrix.hpp"
#include "hyperlab/rational.hpp"

namespace hyperlab {

// p + q*omega in Q(omega), omega = (-1 + sqrt(-3))/2.
class Eisenstein {
 public:
  Eisenstein() = default;
  Eisenstein(int n) : p_(n) {}  // NOLINT(google-explicit-constructor)
  Eisenstein(const Rational& p, const Rational& q = 0) : p_(p), q_(q) {}  // NOLINT

  static Eisenstein omega() { return {0, 1}; }
  static Eisenstein omega_squared() { return {-1, -1}; }
  // sqrt(-3) = 2*omega + 1
  static Eisenstein sqrt_minus3() { return {1, 2}; }

  const Rational& p() const { return p_; }
  const Rational& q() const { return q_; }

  Eisenstein conj() const { return {p_ - q_, -q_}; }
  Rational norm() const { return p_ * p_ - p_ * q_ + q_ * q_; }
  bool is_zero() const { return p_ == 0 && q_ == 0; }
  bool is_integral() const { return p_.get_den() == 1 && q_.get_den() == 1; }
  Complex to_complex() const;
  std::string to_string() const;
  nlohmann::json to_json() const;

  friend Eisenstein operator+(const Eisenstein& x, const Eisenstein& y) {
    return {x.p_ + y.p_, x.q_ + y.q_};
  }
  friend Eisenstein operator-(const Eisenstein& x, const Eisenstein& y) {
    return {x.p_ - y.p_, x.q_ - y.q_};
  }
  friend Eisenstein operator-(const Eisenstein& x) { return {-x.p_, -x.q_}; }
  friend Eisenstein operator*(const Eisenstein& x, const Eisenstein& y) {
    // omega^2 = -1 - omega
    return {x.p_ * y.p_ - x.q_ * y.q_, x.p_ * y.q_ + x.q_ * y.p_ - x.q_ * y.q_};
  }
  friend Eisenstein operator/(const Eisenstein& x, const Eisenstein& y);
  friend bool operator==(const Eisenstein& x, const Eisenstein& y) {
    return x.p_ == y.p_ && x.q_ == y.q_;
  }

 private:
  Rational p_{0};
  Rational q_{0};
};

Eisenstein eis_mul(const Eisenstein& x, const Eisenstein& y);

using EisensteinMatrix = Matrix<Eisenstein>;

EisensteinMatrix conj_transpose(const EisensteinMatrix& m);
nlohmann::json matrix_json(const EisensteinMatrix& m);
std::string matrix_text(const EisensteinMatrix& m);

enum class CircuitKind { M, Dual };

// Fixed tables of the circuit matrices at mu_1 = ... = mu_5 = omega^2.
EisensteinMatrix omega_table(int i, CircuitKind which);
// (-1/3) [[1, w, 0, 0], [-w-1, 0, 0, 0], [-w-1, 0, s, 0], [-w-1, 0, 0, s]], s = sqrt(-3)
EisensteinMatrix omega_hermitian();

// Evaluates the generic structured formulas exactly at mu = omega^2 and
// checks the result against omega_table; throws SpecializationMismatch.
EisensteinMatrix specialize_omega(int i, CircuitKind which);

struct InvarianceReport {
  std::array<bool, 5> holds{};
  bool hermitian_invertible = false;

  bool pass() const;
};

// replace_dual_with_identity (1..5) swaps that dual matrix for I as a control.
InvarianceReport check_special_invariance(std::optional<int> replace_dual_with_identity = {});

// Top-left 2x2 block M'_i (i = 1, 3, 5); checks M'_1 = M'_2 and M'_4 = M'_5.
EisensteinMatrix reduced_block(int i);
EisensteinMatrix reduced_hermitian();  // H' = [[-1, -w], [w+1, 0]]
EisensteinMatrix conjugator_p();       // P = [[1, 1], [0, -2-w]]

using IntMatrix2 = std::array<std::array<Integer, 2>, 2>;

IntMatrix2 int_matrix(long a, long b, long c, long d);
Integer determinant(const IntMatrix2& m);
IntMatrix2 multiply(const IntMatrix2& x, const IntMatrix2& y);
IntMatrix2 inverse_unimodular(const IntMatrix2& m);
std::string to_string(const IntMatrix2& m);

struct ScaledIntMatrix {
  IntMatrix2 matrix;
  Eisenstein scalar;  // one of the six units
};

// P M'_i P^{-1} written as unit * integer matrix; throws NonIntegralResult.
ScaledIntMatrix conjugate_by_p(int i);

// a = 1, d = 1, c = 0 mod 3; throws NotUnimodular if det != 1.
bool gamma1_3_membership(const IntMatrix2& m);

struct HermitianTransformReport {
  bool transform_matches = false;
  bool is_hermitian = false;
  bool determinant_minus_one = false;

  bool pass() const { return transform_matches && is_hermitian && determinant_minus_one; }
};

HermitianTransformReport hermitian_transform_check();

struct WordReport {
  std::vector<std::string> words;
  std::vector<IntMatrix2> images;
  size_t members = 0;
};

// Random words of length 1..max_len in the integer images of M'_1 (scalar
// dropped), M'_3, M'_5 and their inverses.
WordReport random_word_check(std::mt19937_64& rng, size_t count, int max_len);

// B^3 for B = integer part of P M'_1 P^{-1}; a scalar matrix for an order-3
// projective image.
bool projective_order_three();

}  // namespace hyperlab

namespace hyperlab {

// M'_i H' conj(M'_i)^T == H'
bool reduced_block_unitary(int i);

}  // namespace hyperlab
