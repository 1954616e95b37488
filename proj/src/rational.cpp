#include "hyperlab/rational.hpp"

#include <cctype>
#include <numbers>

#include "hyperlab/error.hpp"

namespace hyperlab {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::DivergentInput: return "DivergentInput";
    case ErrorCode::PoleParameter: return "PoleParameter";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::ArityMismatch: return "ArityMismatch";
    case ErrorCode::DegenerateMu: return "DegenerateMu";
    case ErrorCode::SingularPivot: return "SingularPivot";
    case ErrorCode::SpecializationMismatch: return "SpecializationMismatch";
    case ErrorCode::BlockMismatch: return "BlockMismatch";
    case ErrorCode::NonIntegralResult: return "NonIntegralResult";
    case ErrorCode::NotUnimodular: return "NotUnimodular";
    case ErrorCode::PreconditionViolated: return "PreconditionViolated";
    case ErrorCode::SingularSample: return "SingularSample";
    case ErrorCode::IntegrabilityViolated: return "IntegrabilityViolated";
    case ErrorCode::NonIntegrableExponent: return "NonIntegrableExponent";
    case ErrorCode::BranchCollision: return "BranchCollision";
    case ErrorCode::DomainViolated: return "DomainViolated";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

namespace {

bool is_integer_literal(std::string_view s) {
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
  if (s.empty()) return false;
  for (char ch : s) {
    if (!std::isdigit(static_cast<unsigned char>(ch))) return false;
  }
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  const std::string_view num = text.substr(0, slash);
  const std::string_view den =
      slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
  if (!is_integer_literal(num) || !is_integer_literal(den)) {
    throw Error(ErrorCode::InvalidArgument,
                "expected an exact rational of the form p/q, got '" + std::string(text) + "'");
  }
  std::string n(num), d(den);
  if (n.front() == '+') n.erase(0, 1);
  if (d.front() == '+') d.erase(0, 1);
  Integer q(d);
  if (q == 0) {
    throw Error(ErrorCode::InvalidArgument, "zero denominator in '" + std::string(text) + "'");
  }
  Rational r(Integer(n), q);
  r.canonicalize();
  return r;
}

bool looks_exact(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return is_integer_literal(text);
  return is_integer_literal(text.substr(0, slash)) && is_integer_literal(text.substr(slash + 1));
}

std::string to_string(const Rational& r) { return r.get_str(); }

bool is_nonpositive_integer(const Rational& r) {
  return r.get_den() == 1 && r <= 0;
}

Complex unit_root(const Rational& r) {
  Integer whole;
  mpz_fdiv_q(whole.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  const Rational frac = r - Rational(whole);
  if (frac == 0) return {1.0, 0.0};
  if (frac == Rational(1, 2)) return {-1.0, 0.0};
  if (frac == Rational(1, 4)) return {0.0, 1.0};
  if (frac == Rational(3, 4)) return {0.0, -1.0};
  return std::polar(1.0, 2.0 * std::numbers::pi * frac.get_d());
}

}  // namespace hyperlab
