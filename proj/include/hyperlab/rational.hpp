#pragma once

#include <complex>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace hyperlab {

using Rational = mpq_class;
using Integer = mpz_class;
using Complex = std::complex<double>;

// Parses "p/q" or an integer literal. Decimals are rejected.
Rational parse_rational(std::string_view text);

// Accepts "p/q", integers and decimal literals.
bool looks_exact(std::string_view text);

std::string to_string(const Rational& r);

inline double to_double(const Rational& r) { return r.get_d(); }

bool is_nonpositive_integer(const Rational& r);

// exp(2*pi*i*r), reducing r modulo 1 exactly before converting.
Complex unit_root(const Rational& r);

}  // namespace hyperlab
