#include "hyperlab/eisenstein.hpp"

#include <sstream>

#include "hyperlab/error.hpp"
#include "hyperlab/monodromy_formulas.hpp"

namespace hyperlab {

Eisenstein operator/(const Eisenstein& x, const Eisenstein& y) {
  const Rational n = y.norm();
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "division by zero in Q(omega)");
  const Eisenstein t = x * y.conj();
  return {t.p_ / n, t.q_ / n};
}

Eisenstein eis_mul(const Eisenstein& x, const Eisenstein& y) { return x * y; }

Complex Eisenstein::to_complex() const {
  const Complex w(-0.5, std::sqrt(3.0) / 2.0);
  return p_.get_d() + q_.get_d() * w;
}

std::string Eisenstein::to_string() const {
  if (q_ == 0) return p_.get_str();
  std::ostringstream os;
  if (p_ != 0) os << p_.get_str() << (q_ < 0 ? "-" : "+");
  else if (q_ < 0) os << "-";
  const Rational aq = abs(q_);
  if (aq != 1) os << aq.get_str();
  os << "w";
  return os.str();
}

nlohmann::json Eisenstein::to_json() const {
  return {{"p_numer", p_.get_num().get_str()},
          {"p_denom", p_.get_den().get_str()},
          {"q_numer", q_.get_num().get_str()},
          {"q_denom", q_.get_den().get_str()}};
}

EisensteinMatrix conj_transpose(const EisensteinMatrix& m) {
  EisensteinMatrix t(m.cols(), m.rows());
  for (size_t i = 0; i < m.rows(); ++i)
    for (size_t j = 0; j < m.cols(); ++j) t(j, i) = m(i, j).conj();
  return t;
}

nlohmann::json matrix_json(const EisensteinMatrix& m) {
  nlohmann::json entries = nlohmann::json::array();
  for (size_t i = 0; i < m.rows(); ++i)
    for (size_t j = 0; j < m.cols(); ++j) entries.push_back(m(i, j).to_json());
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"entries", entries}};
}

std::string matrix_text(const EisensteinMatrix& m) {
  size_t width = 0;
  for (size_t i = 0; i < m.rows(); ++i)
    for (size_t j = 0; j < m.cols(); ++j) width = std::max(width, m(i, j).to_string().size());
  std::ostringstream out;
  for (size_t i = 0; i < m.rows(); ++i) {
    out << "  [";
    for (size_t j = 0; j < m.cols(); ++j) {
      const std::string s = m(i, j).to_string();
      out << (j ? "  " : "") << std::string(width - s.size(), ' ') << s;
    }
    out << "]\n";
  }
  return out.str();
}

namespace {

using E = Eisenstein;

E e(int p, int q) { return E(p, q); }

formulas::Mu<E> omega_mu() {
  formulas::Mu<E> m;
  m.v.fill(E::omega_squared());
  return m;
}

void check_index(int i) {
  if (i < 1 || i > 5) throw Error(ErrorCode::InvalidArgument, "circuit index must be 1..5");
}

}  // namespace

EisensteinMatrix omega_table(int i, CircuitKind which) {
  check_index(i);
  const E o(0), l(1);
  if (which == CircuitKind::M) {
    switch (i) {
      case 1: return {{l, o, o, o}, {e(-1, -2), e(-1, -1), o, o}, {e(-1, -2), o, e(-1, -1), o}, {o, o, o, l}};
      case 2: return {{l, o, o, o}, {e(-1, -2), e(-1, -1), o, o}, {o, o, l, o}, {e(-1, -2), o, o, e(-1, -1)}};
      case 3: return {{l, e(-2, -1), o, o}, {o, l, o, o}, {o, o, l, o}, {o, o, o, l}};
      case 4: return {{e(3, 1), e(-1, -2), o, o}, {e(1, -1), e(-1, -1), o, o}, {e(1, -1), e(-2, -1), l, o}, {o, o, o, l}};
      default: return {{e(3, 1), e(-1, -2), o, o}, {e(1, -1), e(-1, -1), o, o}, {o, o, l, o}, {e(1, -1), e(-2, -1), o, l}};
    }
  }
  switch (i) {
    case 1: return {{l, e(1, 2), o, o}, {o, e(0, 1), o, o}, {o, o, e(0, 1), o}, {o, e(1, 1), o, l}};
    case 2: return {{l, e(1, 2), o, o}, {o, e(0, 1), o, o}, {o, e(1, 1), l, o}, {o, o, o, e(0, 1)}};
    case 3: return {{l, o, o, o}, {e(-1, 1), l, o, o}, {o, o, l, o}, {o, o, o, l}};
    case 4: return {{e(2, -1), e(2, 1), o, o}, {e(1, 2), e(0, 1), o, o}, {o, o, l, o}, {e(0, -1), l, o, l}};
    default: return {{e(2, -1), e(2, 1), o, o}, {e(1, 2), e(0, 1), o, o}, {e(0, -1), l, l, o}, {o, o, o, l}};
  }
}

EisensteinMatrix omega_hermitian() {
  const E o(0), s = E::sqrt_minus3(), w = E::omega(), mw1 = e(-1, -1);
  const EisensteinMatrix h{{1, w, o, o}, {mw1, o, o, o}, {mw1, o, s, o}, {mw1, o, o, s}};
  return E(Rational(-1, 3)) * h;
}

EisensteinMatrix specialize_omega(int i, CircuitKind which) {
  check_index(i);
  const auto mu = omega_mu();
  const EisensteinMatrix m = which == CircuitKind::M ? formulas::circuit_structured(i, mu)
                                                     : formulas::dual_structured(i, mu);
  for (size_t r = 0; r < 4; ++r)
    for (size_t c = 0; c < 4; ++c) {
      if (!m(r, c).is_integral()) {
        throw Error(ErrorCode::SpecializationMismatch, "specialized entry is not in Z[omega]");
      }
    }
  if (!(m == omega_table(i, which))) {
    throw Error(ErrorCode::SpecializationMismatch,
                std::string(which == CircuitKind::M ? "M" : "M~") + std::to_string(i) +
                    " differs from the tabulated omega specialization");
  }
  return m;
}

bool InvarianceReport::pass() const {
  for (bool b : holds) {
    if (!b) return false;
  }
  return hermitian_invertible;
}

InvarianceReport check_special_invariance(std::optional<int> replace) {
  const EisensteinMatrix h = omega_hermitian();
  InvarianceReport r;
  r.hermitian_invertible = !h.determinant().is_zero();
  for (int i = 1; i <= 5; ++i) {
    const EisensteinMatrix m = specialize_omega(i, CircuitKind::M);
    const EisensteinMatrix w = replace && *replace == i ? EisensteinMatrix::identity(4)
                                                        : specialize_omega(i, CircuitKind::Dual);
    r.holds[i - 1] = m * h * w == h;
  }
  return r;
}

EisensteinMatrix reduced_block(int i) {
  check_index(i);
  auto block = [](int k) { return specialize_omega(k, CircuitKind::M).block(0, 0, 2, 2); };
  if (!(block(1) == block(2)) || !(block(4) == block(5))) {
    throw Error(ErrorCode::BlockMismatch, "expected M'_1 = M'_2 and M'_4 = M'_5");
  }
  return block(i);
}

EisensteinMatrix reduced_hermitian() { return {{E(-1), e(0, -1)}, {e(1, 1), E(0)}}; }

EisensteinMatrix conjugator_p() { return {{E(1), E(1)}, {E(0), e(-2, -1)}}; }

bool reduced_block_unitary(int i) {
  const EisensteinMatrix m = reduced_block(i);
  const EisensteinMatrix h = reduced_hermitian();
  return m * h * conj_transpose(m) == h;
}

IntMatrix2 int_matrix(long a, long b, long c, long d) {
  return {{{Integer(a), Integer(b)}, {Integer(c), Integer(d)}}};
}

Integer determinant(const IntMatrix2& m) { return m[0][0] * m[1][1] - m[0][1] * m[1][0]; }

IntMatrix2 multiply(const IntMatrix2& x, const IntMatrix2& y) {
  IntMatrix2 r;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) r[i][j] = x[i][0] * y[0][j] + x[i][1] * y[1][j];
  return r;
}

IntMatrix2 inverse_unimodular(const IntMatrix2& m) {
  if (determinant(m) != 1) throw Error(ErrorCode::NotUnimodular, "matrix is not in SL2(Z)");
  return {{{m[1][1], -m[0][1]}, {-m[1][0], m[0][0]}}};
}

std::string to_string(const IntMatrix2& m) {
  return "[[" + m[0][0].get_str() + ", " + m[0][1].get_str() + "], [" + m[1][0].get_str() +
         ", " + m[1][1].get_str() + "]]";
}

ScaledIntMatrix conjugate_by_p(int i) {
  if (i != 1 && i != 3 && i != 5) {
    throw Error(ErrorCode::InvalidArgument, "conjugation is defined for M'_1, M'_3, M'_5");
  }
  const EisensteinMatrix p = conjugator_p();
  const E det = p(0, 0) * p(1, 1) - p(0, 1) * p(1, 0);
  const EisensteinMatrix p_inv{{p(1, 1) / det, -p(0, 1) / det}, {-p(1, 0) / det, p(0, 0) / det}};
  const EisensteinMatrix c = p * reduced_block(i) * p_inv;
  const E units[] = {E(1), E::omega(), E::omega_squared(), E(-1), -E::omega(), -E::omega_squared()};
  for (const E& u : units) {
    ScaledIntMatrix out{{}, u};
    bool ok = true;
    for (int r = 0; r < 2 && ok; ++r)
      for (int s = 0; s < 2 && ok; ++s) {
        const E v = c(r, s) / u;
        ok = v.q() == 0 && v.p().get_den() == 1;
        if (ok) out.matrix[r][s] = v.p().get_num();
      }
    if (ok) return out;
  }
  throw Error(ErrorCode::NonIntegralResult, "P M'_i P^{-1} is not a unit times an integer matrix");
}

bool gamma1_3_membership(const IntMatrix2& m) {
  if (determinant(m) != 1) throw Error(ErrorCode::NotUnimodular, "determinant must be 1");
  auto divisible = [](const Integer& v) { return v % 3 == 0; };
  return divisible(m[0][0] - 1) && divisible(m[1][1] - 1) && divisible(m[1][0]);
}

HermitianTransformReport hermitian_transform_check() {
  const EisensteinMatrix p = conjugator_p();
  const EisensteinMatrix h = reduced_hermitian();
  const E s = E::sqrt_minus3();
  const EisensteinMatrix target{{E(0), s}, {-s, E(0)}};
  HermitianTransformReport r;
  r.transform_matches = p * h * conj_transpose(p) == target;
  r.is_hermitian = conj_transpose(h) == h;
  r.determinant_minus_one = h.determinant() == E(-1);
  return r;
}

WordReport random_word_check(std::mt19937_64& rng, size_t count, int max_len) {
  if (max_len < 1) throw Error(ErrorCode::InvalidArgument, "word length must be positive");
  const IntMatrix2 gens[3] = {conjugate_by_p(1).matrix, conjugate_by_p(3).matrix,
                              conjugate_by_p(5).matrix};
  const char* names[3] = {"g1", "g3", "g5"};
  WordReport report;
  for (size_t n = 0; n < count; ++n) {
    const int len = 1 + static_cast<int>(rng() % static_cast<uint64_t>(max_len));
    IntMatrix2 acc = int_matrix(1, 0, 0, 1);
    std::string word;
    for (int k = 0; k < len; ++k) {
      const uint64_t pick = rng() % 6;
      const int g = static_cast<int>(pick / 2);
      const bool inverse = pick % 2 == 1;
      acc = multiply(acc, inverse ? inverse_unimodular(gens[g]) : gens[g]);
      if (!word.empty()) word += ' ';
      word += names[g];
      if (inverse) word += "^-1";
    }
    report.words.push_back(word);
    report.images.push_back(acc);
    if (gamma1_3_membership(acc)) ++report.members;
  }
  return report;
}

bool projective_order_three() {
  const IntMatrix2 b = conjugate_by_p(1).matrix;
  const IntMatrix2 cube = multiply(multiply(b, b), b);
  return cube[0][1] == 0 && cube[1][0] == 0 && cube[0][0] == cube[1][1] && cube[0][0] != 0;
}

}  // namespace hyperlab
