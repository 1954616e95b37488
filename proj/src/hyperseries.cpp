#include "hyperlab/hyperseries.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hyperlab/error.hpp"

namespace hyperlab {

ParamValue::ParamValue(const Rational& r) : value_(r) {
  std::get<Rational>(value_).canonicalize();
}

ParamValue ParamValue::numeric(Complex z) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
    throw Error(ErrorCode::InvalidArgument, "numeric parameter must be finite");
  }
  return ParamValue(z);
}

const Rational& ParamValue::rational() const {
  if (!is_exact()) throw Error(ErrorCode::InvalidArgument, "exact rational parameter required");
  return std::get<Rational>(value_);
}

Complex ParamValue::to_complex() const {
  if (is_exact()) return {std::get<Rational>(value_).get_d(), 0.0};
  return std::get<Complex>(value_);
}

ParamValue operator+(const ParamValue& a, const ParamValue& b) {
  if (a.is_exact() && b.is_exact()) return ParamValue(Rational(a.rational() + b.rational()));
  return ParamValue::numeric(a.to_complex() + b.to_complex());
}

ParamValue operator-(const ParamValue& a, const ParamValue& b) {
  if (a.is_exact() && b.is_exact()) return ParamValue(Rational(a.rational() - b.rational()));
  return ParamValue::numeric(a.to_complex() - b.to_complex());
}

Rational pochhammer(const Rational& a, unsigned n) {
  Rational r = 1;
  for (unsigned k = 0; k < n; ++k) r *= a + k;
  return r;
}

ParamValue pochhammer(const ParamValue& a, unsigned n) {
  if (a.is_exact()) return pochhammer(a.rational(), n);
  Complex r = 1.0;
  const Complex z = a.to_complex();
  for (unsigned k = 0; k < n; ++k) r *= z + static_cast<double>(k);
  return ParamValue::numeric(r);
}

void SeriesOptions::validate() const {
  if (!(tol > 0.0) || max_terms < 1 || trunc_order < 1) {
    throw Error(ErrorCode::InvalidArgument, "series options require tol > 0, max_terms >= 1, trunc_order >= 1");
  }
}

const char* series_name(SeriesId id) {
  switch (id) {
    case SeriesId::F: return "F";
    case SeriesId::F1: return "F1";
    case SeriesId::F2: return "F2";
    case SeriesId::FD3: return "FD3";
    case SeriesId::FX3: return "FX3";
  }
  return "?";
}

size_t series_arity(SeriesId id) { return id == SeriesId::F ? 3 : id == SeriesId::F1 ? 4 : 5; }

size_t series_nvars(SeriesId id) {
  switch (id) {
    case SeriesId::F: return 1;
    case SeriesId::F1:
    case SeriesId::F2: return 2;
    default: return 3;
  }
}

namespace {

// A Pochhammer factor (p, n_S) where n_S sums the exponents selected by `mask`.
struct Factor {
  int param;
  unsigned mask;
};

struct Shape {
  int nvars;
  std::vector<Factor> numer;
  std::vector<Factor> denom;
};

Shape shape_of(SeriesId id) {
  switch (id) {
    case SeriesId::F: return {1, {{0, 1}, {1, 1}}, {{2, 1}}};
    case SeriesId::F1: return {2, {{0, 3}, {1, 1}, {2, 2}}, {{3, 3}}};
    case SeriesId::F2: return {2, {{0, 3}, {1, 1}, {2, 2}}, {{3, 1}, {4, 2}}};
    case SeriesId::FD3: return {3, {{0, 7}, {1, 1}, {2, 2}, {3, 4}}, {{4, 7}}};
    case SeriesId::FX3: return {3, {{0, 3}, {1, 4}, {2, 1}, {3, 6}}, {{4, 7}}};
  }
  throw Error(ErrorCode::InvalidArgument, "unknown series");
}

// FX3 is summed over the resolved parameters (1-a5, 1-a6, a2, a3, a2+a3+a4).
template <class T>
std::vector<T> resolve_params(SeriesId id, std::span<const T> p) {
  if (p.size() != series_arity(id)) {
    throw Error(ErrorCode::ArityMismatch,
                std::string(series_name(id)) + " expects " + std::to_string(series_arity(id)) +
                    " parameters");
  }
  if (id != SeriesId::FX3) return {p.begin(), p.end()};
  const T one(1);
  return {one - p[3], one - p[4], p[0], p[1], p[0] + p[1] + p[2]};
}

int masked_sum(const Exponent& n, unsigned mask) {
  int s = 0;
  for (int k = 0; k < 3; ++k) {
    if (mask & (1u << k)) s += n[k];
  }
  return s;
}

bool complex_pole(Complex p) {
  if (std::abs(p.imag()) > 1e-14 || p.real() > 0.5) return false;
  return std::abs(p.real() - std::round(p.real())) < 1e-14;
}

std::vector<Exponent> layer(int nvars, int d) {
  std::vector<Exponent> out;
  if (nvars == 1) {
    out.push_back({d, 0, 0});
  } else if (nvars == 2) {
    for (int i = d; i >= 0; --i) out.push_back({i, d - i, 0});
  } else {
    for (int i = d; i >= 0; --i)
      for (int j = d - i; j >= 0; --j) out.push_back({i, j, d - i - j});
  }
  return out;
}

size_t layer_index(int nvars, int d, const Exponent& n) {
  if (nvars == 1) return 0;
  if (nvars == 2) return static_cast<size_t>(n[0]);
  return static_cast<size_t>(n[0]) * (d + 1) + n[1];
}

int first_nonzero(const Exponent& n) {
  for (int k = 0; k < 3; ++k) {
    if (n[k] > 0) return k;
  }
  return -1;
}

// Multiplier taking the coefficient at m to the coefficient at m + e_k.
template <class T>
T coefficient_ratio(const Shape& sh, const std::vector<T>& p, const Exponent& m, int k) {
  T num(1), den(m[k] + 1);
  const unsigned bit = 1u << k;
  for (const Factor& f : sh.numer) {
    if (f.mask & bit) num *= p[f.param] + T(masked_sum(m, f.mask));
  }
  for (const Factor& f : sh.denom) {
    if (f.mask & bit) den *= p[f.param] + T(masked_sum(m, f.mask));
  }
  if (den == T(0)) throw Error(ErrorCode::PoleParameter, "denominator Pochhammer vanishes");
  return num / den;
}

Complex sum_series(SeriesId id, std::span<const ParamValue> params,
                   std::span<const Complex> point, const SeriesOptions& opts) {
  opts.validate();
  const Shape sh = shape_of(id);
  if (point.size() != static_cast<size_t>(sh.nvars)) {
    throw Error(ErrorCode::ArityMismatch, std::string(series_name(id)) + " expects " +
                                              std::to_string(sh.nvars) + " coordinates");
  }
  for (Complex z : point) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw Error(ErrorCode::InvalidArgument, "non-finite coordinate");
    }
  }
  std::vector<ParamValue> pv = resolve_params<ParamValue>(id, params);
  for (const Factor& f : sh.denom) {
    const ParamValue& p = pv[f.param];
    if (p.is_exact() ? is_nonpositive_integer(p.rational()) : complex_pole(p.to_complex())) {
      throw Error(ErrorCode::PoleParameter,
                  std::string(series_name(id)) + ": lower parameter is a nonpositive integer");
    }
  }
  std::vector<Complex> p;
  for (const ParamValue& v : pv) p.push_back(v.to_complex());

  std::vector<Complex> prev{1.0};
  Complex sum = 1.0;
  for (int d = 1;; ++d) {
    if (d > opts.max_terms) {
      throw Error(ErrorCode::NoConvergence,
                  std::string(series_name(id)) + ": max_terms reached before tol");
    }
    const auto cells = layer(sh.nvars, d);
    std::vector<Complex> cur(static_cast<size_t>(d + 1) * (d + 1), 0.0);
    double layer_max = 0.0;
    for (const Exponent& n : cells) {
      const int k = first_nonzero(n);
      Exponent m = n;
      --m[k];
      const Complex prev_term = prev[layer_index(sh.nvars, d - 1, m)];
      Complex term = 0.0;
      if (prev_term != 0.0 && point[k] != 0.0) {
        term = prev_term * coefficient_ratio<Complex>(sh, p, m, k) * point[k];
      }
      cur[layer_index(sh.nvars, d, n)] = term;
      sum += term;
      layer_max = std::max(layer_max, std::abs(term));
    }
    if (!std::isfinite(layer_max) || !std::isfinite(sum.real()) || !std::isfinite(sum.imag())) {
      throw Error(ErrorCode::NoConvergence, std::string(series_name(id)) + ": overflow");
    }
    if (layer_max < opts.tol) break;
    prev.swap(cur);
  }
  return sum;
}

void require(bool ok, const char* what) {
  if (!ok) throw Error(ErrorCode::DivergentInput, what);
}

}  // namespace

Complex gauss_2f1(const ParamValue& a, const ParamValue& b, const ParamValue& c, Complex x,
                  const SeriesOptions& opts) {
  require(std::abs(x) < 1.0, "F: requires |x| < 1");
  const ParamValue p[] = {a, b, c};
  const Complex z[] = {x};
  return sum_series(SeriesId::F, p, z, opts);
}

Complex appell_f1(const ParamValue& a, const ParamValue& b, const ParamValue& bp,
                  const ParamValue& c, Complex x, Complex y, const SeriesOptions& opts) {
  require(std::abs(x) < 1.0 && std::abs(y) < 1.0, "F1: requires |x| < 1 and |y| < 1");
  const ParamValue p[] = {a, b, bp, c};
  const Complex z[] = {x, y};
  return sum_series(SeriesId::F1, p, z, opts);
}

Complex appell_f2(const ParamValue& a, const ParamValue& b, const ParamValue& bp,
                  const ParamValue& c, const ParamValue& cp, Complex x, Complex y,
                  const SeriesOptions& opts) {
  require(std::abs(x) + std::abs(y) < 1.0, "F2: requires |x| + |y| < 1");
  const ParamValue p[] = {a, b, bp, c, cp};
  const Complex z[] = {x, y};
  return sum_series(SeriesId::F2, p, z, opts);
}

Complex lauricella_fd3(const ParamValue& a, const ParamValue& b1, const ParamValue& b2,
                       const ParamValue& b3, const ParamValue& c, Complex y1, Complex y2,
                       Complex y3, const SeriesOptions& opts) {
  require(std::abs(y1) < 1.0 && std::abs(y2) < 1.0 && std::abs(y3) < 1.0,
          "FD3: requires |y_i| < 1");
  const ParamValue p[] = {a, b1, b2, b3, c};
  const Complex z[] = {y1, y2, y3};
  return sum_series(SeriesId::FD3, p, z, opts);
}

Complex fx3_series(const ParamValue& a2, const ParamValue& a3, const ParamValue& a4,
                   const ParamValue& a5, const ParamValue& a6, Complex x1, Complex x3,
                   Complex x4, const SeriesOptions& opts) {
  require(std::max({std::abs(x1), std::abs(x3), std::abs(x4)}) < 1.0,
          "FX3: coordinates must lie in the unit polydisc");
  const ParamValue p[] = {a2, a3, a4, a5, a6};
  const Complex z[] = {x1, x3, x4};
  return sum_series(SeriesId::FX3, p, z, opts);
}

Complex evaluate_series(SeriesId id, std::span<const ParamValue> params,
                        std::span<const Complex> point, const SeriesOptions& opts) {
  if (params.size() != series_arity(id)) {
    throw Error(ErrorCode::ArityMismatch, std::string(series_name(id)) + " expects " +
                                              std::to_string(series_arity(id)) + " parameters");
  }
  if (point.size() != series_nvars(id)) {
    throw Error(ErrorCode::ArityMismatch, std::string(series_name(id)) + " expects " +
                                              std::to_string(series_nvars(id)) + " coordinates");
  }
  const auto& p = params;
  switch (id) {
    case SeriesId::F: return gauss_2f1(p[0], p[1], p[2], point[0], opts);
    case SeriesId::F1: return appell_f1(p[0], p[1], p[2], p[3], point[0], point[1], opts);
    case SeriesId::F2: return appell_f2(p[0], p[1], p[2], p[3], p[4], point[0], point[1], opts);
    case SeriesId::FD3:
      return lauricella_fd3(p[0], p[1], p[2], p[3], p[4], point[0], point[1], point[2], opts);
    case SeriesId::FX3:
      return fx3_series(p[0], p[1], p[2], p[3], p[4], point[0], point[1], point[2], opts);
  }
  throw Error(ErrorCode::InvalidArgument, "unknown series");
}

TruncatedSeries truncate_formal(SeriesId id, std::span<const Rational> params, int order) {
  if (order < 0) throw Error(ErrorCode::InvalidArgument, "negative truncation order");
  const Shape sh = shape_of(id);
  const std::vector<Rational> p = resolve_params<Rational>(id, params);
  TruncatedSeries out(sh.nvars, order);
  out.set({0, 0, 0}, 1);
  std::map<Exponent, Rational> prev{{{0, 0, 0}, Rational(1)}};
  for (int d = 1; d <= order; ++d) {
    std::map<Exponent, Rational> cur;
    for (const Exponent& n : layer(sh.nvars, d)) {
      const int k = first_nonzero(n);
      Exponent m = n;
      --m[k];
      const Rational c = prev[m] * coefficient_ratio<Rational>(sh, p, m, k);
      cur[n] = c;
      out.set(n, c);
    }
    prev.swap(cur);
  }
  return out;
}

}  // namespace hyperlab
