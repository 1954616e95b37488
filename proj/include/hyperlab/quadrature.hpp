#pragma once

#include <limits>
#include <vector>

#include "hyperlab/rational.hpp"

namespace hyperlab {

// (offset + slope * z)^exponent
struct PowerFactor {
  Complex offset;
  Complex slope;
  double exponent;
  // Preferred argument at the reference point; NaN keeps the principal one.
  double arg_hint = std::numeric_limits<double>::quiet_NaN();

  Complex base(Complex z) const { return offset + slope * z; }
  Complex root() const { return -offset / slope; }
};

// scale * prod_k factors[k], each power continued along the integration path
// from its principal value at the midpoint of the first segment.
struct Integrand {
  std::vector<PowerFactor> factors;
  Complex scale{1.0, 0.0};
};

struct QuadratureSpec {
  int nodes = 32;
  double alpha = 0.0;  // singular exponent at the path start
  double beta = 0.0;   // singular exponent at the path end
  std::vector<Complex> path;
};

struct PeriodValue {
  Complex value;
  double err_estimate = 0.0;
  // arg of each factor's base at the reference point (branch bookkeeping)
  std::vector<double> reference_args;
};

struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// Nodes and weights for the weight (1-u)^a (1+u)^b on [-1, 1]; cached.
const GaussRule& gauss_jacobi_rule(int n, double a, double b);

// Sum of exponents of the factors vanishing at z.
double singular_exponent_at(const Integrand& f, Complex z);

PeriodValue gauss_jacobi_segment(const Integrand& f, const QuadratureSpec& spec);

// Fills the endpoint exponents from the integrand.
PeriodValue integrate_path(const Integrand& f, std::vector<Complex> path, int nodes = 32);

double beta_function(double p, double q);

}  // namespace hyperlab
