#include "hyperlab/truncated_series.hpp"

#include <algorithm>
#include <vector>

#include "hyperlab/error.hpp"

namespace hyperlab {

TruncatedSeries::TruncatedSeries(int nvars, int order) : nvars_(nvars), order_(order) {
  if (nvars < 1 || nvars > 3) {
    throw Error(ErrorCode::InvalidArgument, "truncated series supports 1 to 3 variables");
  }
  if (order < -1) throw Error(ErrorCode::InvalidArgument, "negative truncation order");
}

TruncatedSeries TruncatedSeries::constant(int nvars, int order, const Rational& value) {
  TruncatedSeries s(nvars, order);
  s.set({0, 0, 0}, value);
  return s;
}

TruncatedSeries TruncatedSeries::monomial(int nvars, int order, const Exponent& e,
                                          const Rational& coefficient) {
  TruncatedSeries s(nvars, order);
  s.set(e, coefficient);
  return s;
}

void TruncatedSeries::check_exponent(const Exponent& e) const {
  for (int k = 0; k < 3; ++k) {
    if (e[k] < 0 || (k >= nvars_ && e[k] != 0)) {
      throw Error(ErrorCode::InvalidArgument, "exponent outside the series variables");
    }
  }
}

Rational TruncatedSeries::coefficient(const Exponent& e) const {
  auto it = coeffs_.find(e);
  return it == coeffs_.end() ? Rational(0) : it->second;
}

void TruncatedSeries::set(const Exponent& e, const Rational& value) {
  check_exponent(e);
  if (total_degree(e) > order_) return;
  if (value == 0) {
    coeffs_.erase(e);
  } else {
    coeffs_[e] = value;
  }
}

void TruncatedSeries::add_to(const Exponent& e, const Rational& value) {
  if (value == 0) return;
  set(e, coefficient(e) + value);
}

TruncatedSeries TruncatedSeries::truncated(int order) const {
  TruncatedSeries out(nvars_, std::min(order, order_));
  for (const auto& [e, c] : coeffs_) out.set(e, c);
  return out;
}

TruncatedSeries& TruncatedSeries::operator+=(const TruncatedSeries& rhs) {
  if (rhs.nvars_ != nvars_) throw Error(ErrorCode::InvalidArgument, "variable count mismatch");
  if (rhs.order_ < order_) *this = truncated(rhs.order_);
  for (const auto& [e, c] : rhs.coeffs_) add_to(e, c);
  return *this;
}

TruncatedSeries& TruncatedSeries::operator-=(const TruncatedSeries& rhs) {
  if (rhs.nvars_ != nvars_) throw Error(ErrorCode::InvalidArgument, "variable count mismatch");
  if (rhs.order_ < order_) *this = truncated(rhs.order_);
  for (const auto& [e, c] : rhs.coeffs_) add_to(e, -c);
  return *this;
}

TruncatedSeries& TruncatedSeries::operator*=(const Rational& scalar) {
  if (scalar == 0) {
    coeffs_.clear();
    return *this;
  }
  for (auto& [e, c] : coeffs_) c *= scalar;
  return *this;
}

Complex TruncatedSeries::evaluate(std::span<const Complex> point) const {
  if (static_cast<int>(point.size()) != nvars_) {
    throw Error(ErrorCode::ArityMismatch, "point dimension does not match series variables");
  }
  if (order_ < 0) return 0.0;
  const int n = order_ + 1;
  // dense[e0][e1][e2], then Horner from the innermost variable outward
  std::vector<Complex> dense(static_cast<size_t>(n) * n * n, 0.0);
  auto idx = [n](int i, int j, int k) { return (static_cast<size_t>(i) * n + j) * n + k; };
  for (const auto& [e, c] : coeffs_) dense[idx(e[0], e[1], e[2])] = c.get_d();
  const Complex x0 = point[0];
  const Complex x1 = nvars_ > 1 ? point[1] : 0.0;
  const Complex x2 = nvars_ > 2 ? point[2] : 0.0;
  Complex outer = 0.0;
  for (int i = order_; i >= 0; --i) {
    Complex middle = 0.0;
    for (int j = order_ - i; j >= 0; --j) {
      Complex inner = 0.0;
      for (int k = order_ - i - j; k >= 0; --k) inner = inner * x2 + dense[idx(i, j, k)];
      middle = middle * x1 + inner;
    }
    outer = outer * x0 + middle;
  }
  return outer;
}

}  // namespace hyperlab
