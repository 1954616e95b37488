#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "hyperlab/rational.hpp"

namespace hyperlab {

// Cartesian product of per-variable sample lists, enumerated lexicographically.
struct GridSpec {
  std::vector<std::vector<Complex>> axes;
  double tol = 1e-9;

  size_t size() const;
  std::vector<Complex> point(size_t index) const;
};

struct SkippedPoint {
  std::vector<Complex> point;
  std::string reason;
};

struct ControlResult {
  std::string perturbation;
  double max_residual = 0.0;
  double threshold = 1e-4;

  bool detected() const { return max_residual > threshold; }
};

struct IdentityReport {
  std::string identity;
  size_t grid_size = 0;
  size_t evaluated = 0;
  double max_residual = 0.0;
  std::vector<Complex> argmax;
  double tol = 0.0;
  bool pass = false;
  std::vector<SkippedPoint> skipped;
  std::optional<ControlResult> control;

  nlohmann::json to_json() const;
  std::string to_text() const;
};

struct EvalPolicy {
  int jobs = 1;
};

// Default 5x5 grids and sample sets used by the verification suites.
GridSpec default_grid_p78(double tol = 1e-9);
GridSpec default_grid_p80(double tol = 1e-9);
GridSpec default_grid_p81(double tol = 1e-9);
GridSpec default_grid_appendix_a(double tol = 1e-9);
GridSpec default_grid_matome(double tol = 1e-9);

IdentityReport verify_bailey_p80(const Rational& a, const Rational& b, const Rational& bp,
                                 const Rational& c, const GridSpec& grid,
                                 const EvalPolicy& policy = {});
IdentityReport verify_bailey_p81(const Rational& a, const Rational& b, const Rational& bp,
                                 const GridSpec& grid, const EvalPolicy& policy = {});
IdentityReport verify_bailey_p78(const Rational& a, const Rational& b, const Rational& bp,
                                 const Rational& c, const GridSpec& grid,
                                 const EvalPolicy& policy = {});

// Samples are (s, x) pairs.
IdentityReport verify_lemma_phi(const Rational& a, const Rational& b, const Rational& c,
                                const std::vector<std::array<Complex, 2>>& samples,
                                double tol = 1e-10, const EvalPolicy& policy = {});

struct LemmaIndefiniteReport {
  IdentityReport r1;
  IdentityReport p1;
  IdentityReport q1;

  bool pass() const { return r1.pass && p1.pass && q1.pass; }
};

// Samples are (s, t) pairs; u(s,t) = int_0^s Phi.
LemmaIndefiniteReport verify_lemma_indefinite(const Rational& a, const Rational& b,
                                              const Rational& c,
                                              const std::vector<std::array<Complex, 2>>& samples,
                                              double analytic_tol = 1e-12,
                                              double quadrature_tol = 1e-5,
                                              const EvalPolicy& policy = {});

// a5 is fixed by a2 + a4 + a5 = 1. Grid axes are (x1, x3, x4).
IdentityReport verify_appendix_a(const Rational& a2, const Rational& a3, const Rational& a4,
                                 const Rational& a6, const GridSpec& grid,
                                 const EvalPolicy& policy = {});

IdentityReport verify_theorem_matome(const Rational& a, const Rational& b, const Rational& bp,
                                     const GridSpec& grid, const EvalPolicy& policy = {});

}  // namespace hyperlab
