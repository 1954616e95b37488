#pragma once

#include <array>
#include <map>
#include <span>

#include "hyperlab/rational.hpp"

namespace hyperlab {

using Exponent = std::array<int, 3>;

inline int total_degree(const Exponent& e) { return e[0] + e[1] + e[2]; }

// Multivariate power series in up to three variables with exact rational
// coefficients, known through total degree `order`.
class TruncatedSeries {
 public:
  using Map = std::map<Exponent, Rational>;

  TruncatedSeries(int nvars, int order);

  static TruncatedSeries constant(int nvars, int order, const Rational& value);
  static TruncatedSeries monomial(int nvars, int order, const Exponent& e,
                                  const Rational& coefficient = 1);

  int nvars() const { return nvars_; }
  int order() const { return order_; }

  Rational coefficient(const Exponent& e) const;
  // Stores `value`; zero erases. Exponents beyond the order are dropped.
  void set(const Exponent& e, const Rational& value);
  void add_to(const Exponent& e, const Rational& value);

  const Map& terms() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }

  TruncatedSeries truncated(int order) const;

  TruncatedSeries& operator+=(const TruncatedSeries& rhs);
  TruncatedSeries& operator-=(const TruncatedSeries& rhs);
  TruncatedSeries& operator*=(const Rational& scalar);

  friend TruncatedSeries operator+(TruncatedSeries lhs, const TruncatedSeries& rhs) {
    return lhs += rhs;
  }
  friend TruncatedSeries operator-(TruncatedSeries lhs, const TruncatedSeries& rhs) {
    return lhs -= rhs;
  }
  friend TruncatedSeries operator*(const Rational& s, TruncatedSeries rhs) { return rhs *= s; }
  friend bool operator==(const TruncatedSeries& a, const TruncatedSeries& b) {
    return a.nvars_ == b.nvars_ && a.order_ == b.order_ && a.coeffs_ == b.coeffs_;
  }

  // Nested Horner evaluation in the last variable, then the earlier ones.
  Complex evaluate(std::span<const Complex> point) const;

 private:
  void check_exponent(const Exponent& e) const;

  int nvars_;
  int order_;
  Map coeffs_;
};

}  // namespace hyperlab
