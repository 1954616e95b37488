#pragma once

#include <span>
#include <variant>
#include <vector>

#include "hyperlab/rational.hpp"
#include "hyperlab/truncated_series.hpp"

namespace hyperlab {

// A series parameter: exact rational or finite double-precision complex.
class ParamValue {
 public:
  ParamValue(const Rational& r);  // NOLINT(google-explicit-constructor)
  ParamValue(int n) : ParamValue(Rational(n)) {}  // NOLINT(google-explicit-constructor)
  // Unevaluated gmpxx expressions such as `a - b`.
  template <class T, class U>
  ParamValue(const __gmp_expr<T, U>& e)  // NOLINT(google-explicit-constructor)
      : ParamValue(Rational(e)) {}
  static ParamValue numeric(Complex z);

  bool is_exact() const { return std::holds_alternative<Rational>(value_); }
  const Rational& rational() const;
  Complex to_complex() const;

 private:
  explicit ParamValue(Complex z) : value_(z) {}
  std::variant<Rational, Complex> value_;
};

ParamValue operator+(const ParamValue& a, const ParamValue& b);
ParamValue operator-(const ParamValue& a, const ParamValue& b);

ParamValue pochhammer(const ParamValue& a, unsigned n);
Rational pochhammer(const Rational& a, unsigned n);

struct SeriesOptions {
  double tol = 1e-17;
  int max_terms = 4000;
  int trunc_order = 8;

  void validate() const;
};

enum class SeriesId { F, F1, F2, FD3, FX3 };

const char* series_name(SeriesId id);
size_t series_arity(SeriesId id);
size_t series_nvars(SeriesId id);

Complex gauss_2f1(const ParamValue& a, const ParamValue& b, const ParamValue& c, Complex x,
                  const SeriesOptions& opts = {});

Complex appell_f1(const ParamValue& a, const ParamValue& b, const ParamValue& bp,
                  const ParamValue& c, Complex x, Complex y, const SeriesOptions& opts = {});

Complex appell_f2(const ParamValue& a, const ParamValue& b, const ParamValue& bp,
                  const ParamValue& c, const ParamValue& cp, Complex x, Complex y,
                  const SeriesOptions& opts = {});

Complex lauricella_fd3(const ParamValue& a, const ParamValue& b1, const ParamValue& b2,
                       const ParamValue& b3, const ParamValue& c, Complex y1, Complex y2,
                       Complex y3, const SeriesOptions& opts = {});

// Pochhammer pattern (a5',n13)(a6',n4)(a2,n1)(a3,n34) / (a2+a3+a4,n134) in (x1,x3,x4).
Complex fx3_series(const ParamValue& a2, const ParamValue& a3, const ParamValue& a4,
                   const ParamValue& a5, const ParamValue& a6, Complex x1, Complex x3,
                   Complex x4, const SeriesOptions& opts = {});

// Dispatches on `id`; `params` and `point` follow the argument order above.
Complex evaluate_series(SeriesId id, std::span<const ParamValue> params,
                        std::span<const Complex> point, const SeriesOptions& opts = {});

TruncatedSeries truncate_formal(SeriesId id, std::span<const Rational> params, int order);

}  // namespace hyperlab
