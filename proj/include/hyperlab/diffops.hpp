#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hyperlab/rational.hpp"
#include "hyperlab/truncated_series.hpp"

namespace hyperlab {

// Polynomial differential operator built from variables, Euler operators
// x_k d/dx_k and rational scalars.
class EulerOp {
 public:
  enum class Kind { Scalar, Var, Theta, Sum, Compose };

  static EulerOp scalar(const Rational& r);
  static EulerOp var(int k);
  static EulerOp theta(int k);
  static EulerOp sum(std::vector<EulerOp> terms);
  // compose({A, B, C}) acts as A(B(C(.)))
  static EulerOp compose(std::vector<EulerOp> factors);

  Kind kind() const;
  // Highest number of variable multiplications along any summand.
  int variable_depth() const;
  std::string to_string() const;

  friend EulerOp operator+(const EulerOp& a, const EulerOp& b);
  friend EulerOp operator-(const EulerOp& a, const EulerOp& b);
  friend EulerOp operator*(const EulerOp& a, const EulerOp& b);
  friend EulerOp operator*(const Rational& s, const EulerOp& a);
  friend EulerOp operator+(const EulerOp& a, const Rational& s) { return a + scalar(s); }

  friend TruncatedSeries apply(const EulerOp& op, const TruncatedSeries& s);

 private:
  struct Node;
  explicit EulerOp(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

TruncatedSeries apply(const EulerOp& op, const TruncatedSeries& s);

enum class SystemName { E, E1, E2, ED3, EX3 };

const char* system_name(SystemName name);

// For E2 only: Q2 with (b'+D') or the (b'+D) variant kept as a control.
enum class Q2Factor { Primed, Unprimed };

struct OperatorSystem {
  SystemName name;
  std::vector<Rational> params;
  std::vector<EulerOp> operators;
  std::vector<std::string> labels;
  int nvars;
};

OperatorSystem build_system(SystemName name, std::span<const Rational> params,
                            Q2Factor q2 = Q2Factor::Primed);

struct AnnihilationReport {
  int certified_order = 0;
  std::optional<int> max_nonzero_order;
  std::optional<Exponent> witness;
  std::optional<std::string> witness_operator;

  bool annihilated() const { return !witness.has_value(); }
};

AnnihilationReport certify_annihilation(const OperatorSystem& sys, const TruncatedSeries& s);

}  // namespace hyperlab
