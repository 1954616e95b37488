#pragma once

#include <array>
#include <optional>
#include <random>
#include <vector>

#include <json.hpp>

#include "hyperlab/matrix.hpp"
#include "hyperlab/monodromy_formulas.hpp"
#include "hyperlab/rational.hpp"

namespace hyperlab {

// The five E2 parameters (a, b, b', c, c').
struct ParamSet {
  Rational a, b, bp, c, cp;
};

ParamSet sigma_e_params();  // (4/3, 2/3, 2/3, 4/3, 4/3)

class MuVector {
 public:
  explicit MuVector(std::array<Complex, 5> mu);

  const Complex& operator[](int i) const { return mu_.v[i - 1]; }  // 1-based
  Complex prod(std::initializer_list<int> idx) const { return mu_.prod(idx); }
  const formulas::Mu<Complex>& raw() const { return mu_; }

  // mu_i != 1 (i = 1..5) and mu_12345 != 1, each with tolerance `tol`.
  bool admissible(double tol = 1e-10) const;
  double distance_to_degeneracy() const;

 private:
  formulas::Mu<Complex> mu_;
};

// mu1 = e(b), mu2 = e(c-b), mu3 = e(b'), mu4 = e(c'-b'), mu5 = e(-a), e(r) = exp(2 pi i r).
MuVector mu_from_params(const ParamSet& p);

// Exact values when every mu lies in {1, omega, omega^2}.
std::optional<formulas::Mu<Eisenstein>> mu_exact_from_params(const ParamSet& p);

// Draws exp(2 pi i theta) uniformly, rejecting draws within `margin` of a
// degeneracy.
MuVector random_admissible_mu(std::mt19937_64& rng, double margin = 1e-6);

MatrixC intersection_matrix(const MuVector& mu);
Complex intersection_det_closed_form(const MuVector& mu);
Complex determinant(const MatrixC& m);

enum class Variant { Structured, Explicit };

Complex circuit_lambda(int i, const MuVector& mu);
MatrixC circuit_matrix_structured(int i, const MuVector& mu);
MatrixC circuit_matrix_explicit(int i, const MuVector& mu);
MatrixC dual_circuit_matrix(int i, const MuVector& mu, Variant variant);

struct PairingReport {
  std::array<double, 5> deviation{};
  double max_deviation() const;
};

// ||M_i H M~_i - H||_max for i = 1..5.
PairingReport check_pairing_invariance(const MuVector& mu,
                                       std::optional<int> replace_dual_with_identity = {});

enum class SquareKind { Square5, Square6, Dual5, Dual6 };

std::array<Complex, 4> square_decomposition(SquareKind which, const MuVector& mu);
// Intersection numbers of the square 5 / 6 cycles against the dual basis.
std::array<Complex, 4> square_intersection_row(SquareKind which, const MuVector& mu);

struct EigenReport {
  int index = 0;
  std::vector<Complex> expected;
  std::vector<Complex> computed;
  double max_mismatch = 0.0;
  bool pass = false;
};

std::vector<Complex> eigenvalues(const MatrixC& m);
// Greedy nearest pairing of two multisets; returns the worst distance.
double multiset_distance(std::vector<Complex> expected, std::vector<Complex> computed);
EigenReport eigenstructure_check(int i, const MuVector& mu, double tol = 1e-9);

nlohmann::json matrix_json(const MatrixC& m);
std::string matrix_text(const MatrixC& m, int precision = 6);

}  // namespace hyperlab
