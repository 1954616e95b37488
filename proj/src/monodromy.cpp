#include "hyperlab/monodromy.hpp"

#include <algorithm>
#include <iomanip>
#include <numbers>
#include <sstream>

#include <limits>

#include <Eigen/Dense>

namespace hyperlab {

ParamSet sigma_e_params() {
  return {Rational(4, 3), Rational(2, 3), Rational(2, 3), Rational(4, 3), Rational(4, 3)};
}

MuVector::MuVector(std::array<Complex, 5> mu) : mu_{mu} {
  for (const Complex& z : mu) {
    if (std::abs(std::abs(z) - 1.0) > 1e-12) {
      throw Error(ErrorCode::InvalidArgument, "mu values must lie on the unit circle");
    }
  }
}

double MuVector::distance_to_degeneracy() const {
  double d = std::abs(prod({1, 2, 3, 4, 5}) - 1.0);
  for (int i = 1; i <= 5; ++i) d = std::min(d, std::abs((*this)[i] - 1.0));
  return d;
}

bool MuVector::admissible(double tol) const { return distance_to_degeneracy() >= tol; }

MuVector mu_from_params(const ParamSet& p) {
  return MuVector({unit_root(p.b), unit_root(p.c - p.b), unit_root(p.bp), unit_root(p.cp - p.bp),
                   unit_root(-p.a)});
}

std::optional<formulas::Mu<Eisenstein>> mu_exact_from_params(const ParamSet& p) {
  const Rational args[5] = {p.b, p.c - p.b, p.bp, p.cp - p.bp, -p.a};
  formulas::Mu<Eisenstein> out;
  for (int k = 0; k < 5; ++k) {
    const Rational three = args[k] * 3;
    if (three.get_den() != 1) return std::nullopt;
    Integer r = three.get_num() % 3;
    if (r < 0) r += 3;
    out.v[k] = r == 0 ? Eisenstein(1) : r == 1 ? Eisenstein::omega() : Eisenstein::omega_squared();
  }
  return out;
}

MuVector random_admissible_mu(std::mt19937_64& rng, double margin) {
  for (;;) {
    std::array<Complex, 5> mu;
    for (auto& z : mu) {
      const double theta = static_cast<double>(rng() >> 11) * 0x1.0p-53;
      z = std::polar(1.0, 2.0 * std::numbers::pi * theta);
    }
    MuVector v(mu);
    if (v.admissible(margin)) return v;
  }
}

namespace {

// The formulas cancel heavily near degenerate mu, so the floating-point
// instances run in extended precision and round once at the end.
using ComplexL = std::complex<long double>;
using MatrixL = Matrix<ComplexL>;

formulas::Mu<ComplexL> widen(const MuVector& mu) {
  formulas::Mu<ComplexL> w;
  for (int k = 0; k < 5; ++k) w.v[k] = ComplexL(mu.raw().v[k]);
  return w;
}

MatrixC narrow(const MatrixL& m) {
  MatrixC out(m.rows(), m.cols());
  for (size_t i = 0; i < m.rows(); ++i)
    for (size_t j = 0; j < m.cols(); ++j) out(i, j) = Complex(m(i, j));
  return out;
}

MatrixL circuit_wide(int i, const MuVector& mu) { return formulas::circuit_structured(i, widen(mu)); }

MatrixL dual_wide(int i, const MuVector& mu) { return formulas::dual_structured(i, widen(mu)); }

}  // namespace

MatrixC intersection_matrix(const MuVector& mu) { return narrow(formulas::intersection_matrix(widen(mu))); }

Complex intersection_det_closed_form(const MuVector& mu) {
  Complex den = 1.0;
  for (int i = 1; i <= 4; ++i) den *= (mu[i] - 1.0) * (mu[i] - 1.0);
  return mu.prod({1, 2, 3, 4}) * (mu[5] - 1.0) * (mu.prod({1, 2, 3, 4, 5}) - 1.0) / den;
}

Complex determinant(const MatrixC& m) {
  Eigen::MatrixXcd e(m.rows(), m.cols());
  for (size_t i = 0; i < m.rows(); ++i)
    for (size_t j = 0; j < m.cols(); ++j) e(i, j) = m(i, j);
  return e.partialPivLu().determinant();
}

Complex circuit_lambda(int i, const MuVector& mu) { return formulas::lambda(i, mu.raw()); }

MatrixC circuit_matrix_structured(int i, const MuVector& mu) { return narrow(circuit_wide(i, mu)); }

MatrixC circuit_matrix_explicit(int i, const MuVector& mu) {
  return narrow(formulas::circuit_explicit(i, widen(mu)));
}

MatrixC dual_circuit_matrix(int i, const MuVector& mu, Variant variant) {
  return narrow(variant == Variant::Structured ? dual_wide(i, mu)
                                               : formulas::dual_explicit(i, widen(mu)));
}

double PairingReport::max_deviation() const {
  return *std::max_element(deviation.begin(), deviation.end());
}

PairingReport check_pairing_invariance(const MuVector& mu, std::optional<int> replace) {
  const MatrixL h = formulas::intersection_matrix(widen(mu));
  PairingReport r;
  for (int i = 1; i <= 5; ++i) {
    const MatrixL m = circuit_wide(i, mu);
    const MatrixL w = replace && *replace == i ? MatrixL::identity(4) : dual_wide(i, mu);
    r.deviation[i - 1] = max_abs_diff(narrow(m * h * w - h), MatrixC(4, 4));
  }
  return r;
}

std::array<Complex, 4> square_decomposition(SquareKind which, const MuVector& mu) {
  const Complex i5 = formulas::checked_inverse(mu[5] - 1.0, "mu5 - 1");
  switch (which) {
    case SquareKind::Square5:
      return {-(mu.prod({4, 5}) - 1.0) * i5, 0.0, 0.0, -(mu.prod({3, 4, 5}) - 1.0) * i5};
    case SquareKind::Square6:
      return {-(mu.prod({2, 5}) - 1.0) * i5, 0.0, -(mu.prod({1, 2, 5}) - 1.0) * i5, 0.0};
    case SquareKind::Dual5:
      return {-(mu.prod({4, 5}) - 1.0) * i5 / mu[4], 0.0, 0.0, -i5 / mu.prod({3, 4})};
    case SquareKind::Dual6:
      return {-(mu.prod({2, 5}) - 1.0) * i5 / mu[2], 0.0, -i5 / mu.prod({1, 2}), 0.0};
  }
  throw Error(ErrorCode::InvalidArgument, "unknown square");
}

std::array<Complex, 4> square_intersection_row(SquareKind which, const MuVector& mu) {
  auto inv = [](Complex z, const char* what) { return formulas::checked_inverse(z, what); };
  const Complex i1 = inv(mu[1] - 1.0, "mu1 - 1"), i2 = inv(mu[2] - 1.0, "mu2 - 1");
  const Complex i3 = inv(mu[3] - 1.0, "mu3 - 1"), i4 = inv(mu[4] - 1.0, "mu4 - 1");
  const Complex i5 = inv(mu[5] - 1.0, "mu5 - 1");
  switch (which) {
    case SquareKind::Square5:
      return {-mu[4] * (mu.prod({1, 2}) - 1.0) * i1 * i2 * i4,
              -(mu.prod({4, 5}) - 1.0) * i2 * i4 * i5,
              mu.prod({1, 4}) * (mu.prod({1, 2, 5}) - 1.0) * i1 * i4, 0.0};
    case SquareKind::Square6:
      return {-mu[2] * (mu.prod({3, 4}) - 1.0) * i2 * i3 * i4,
              -(mu.prod({2, 5}) - 1.0) * i2 * i4 * i5, 0.0,
              mu.prod({2, 3}) * (mu.prod({3, 4, 5}) - 1.0) * i2 * i3};
    default:
      throw Error(ErrorCode::InvalidArgument, "intersection rows exist for squares 5 and 6 only");
  }
}

std::vector<Complex> eigenvalues(const MatrixC& m) {
  Eigen::MatrixXcd e(m.rows(), m.cols());
  for (size_t i = 0; i < m.rows(); ++i)
    for (size_t j = 0; j < m.cols(); ++j) e(i, j) = m(i, j);
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(e, false);
  std::vector<Complex> out;
  for (Eigen::Index k = 0; k < solver.eigenvalues().size(); ++k) out.push_back(solver.eigenvalues()(k));
  return out;
}

double multiset_distance(std::vector<Complex> expected, std::vector<Complex> computed) {
  if (expected.size() != computed.size()) return std::numeric_limits<double>::infinity();
  double worst = 0.0;
  for (const Complex& e : expected) {
    auto best = std::min_element(computed.begin(), computed.end(), [&](Complex u, Complex v) {
      return std::abs(u - e) < std::abs(v - e);
    });
    worst = std::max(worst, std::abs(*best - e));
    computed.erase(best);
  }
  return worst;
}

EigenReport eigenstructure_check(int i, const MuVector& mu, double tol) {
  EigenReport r;
  r.index = i;
  const Complex lam = circuit_lambda(i, mu);
  if (i <= 2) {
    r.expected = {1.0, 1.0, lam, lam};
  } else {
    r.expected = {1.0, 1.0, 1.0, lam};
  }
  r.computed = eigenvalues(circuit_matrix_structured(i, mu));
  r.max_mismatch = multiset_distance(r.expected, r.computed);
  r.pass = r.max_mismatch < tol;
  return r;
}

nlohmann::json matrix_json(const MatrixC& m) {
  nlohmann::json entries = nlohmann::json::array();
  for (size_t i = 0; i < m.rows(); ++i)
    for (size_t j = 0; j < m.cols(); ++j) entries.push_back({m(i, j).real(), m(i, j).imag()});
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"entries", entries}};
}

std::string matrix_text(const MatrixC& m, int precision) {
  std::vector<std::string> cells;
  size_t width = 0;
  for (size_t i = 0; i < m.rows(); ++i)
    for (size_t j = 0; j < m.cols(); ++j) {
      std::ostringstream os;
      os << std::fixed << std::setprecision(precision) << m(i, j).real()
         << (m(i, j).imag() < 0 ? " - " : " + ") << std::abs(m(i, j).imag()) << "i";
      cells.push_back(os.str());
      width = std::max(width, cells.back().size());
    }
  std::ostringstream out;
  for (size_t i = 0; i < m.rows(); ++i) {
    out << "  [";
    for (size_t j = 0; j < m.cols(); ++j) {
      out << (j ? "  " : "") << std::setw(static_cast<int>(width)) << cells[i * m.cols() + j];
    }
    out << "]\n";
  }
  return out.str();
}

}  // namespace hyperlab
