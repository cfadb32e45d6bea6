#pragma once

// Real special functions backing the analytic one-center integrals:
// gamma family, lower incomplete gamma, the restricted Gauss series
// 2F1(1,b;c;z), and generalized Laguerre expansion with real upper index.

#include <vector>

namespace aetos {

// Gamma(x) for x > 0. Throws std::domain_error for x <= 0 and
// std::overflow_error once the result exceeds the double range
// (use logGamma beyond x ~ 171).
double gammaFn(double x);

// ln Gamma(x) for x > 0.
double logGamma(double x);

// ln |Gamma(x)| for any non-pole x, with the sign of Gamma(x) in *sign.
double signedLogGamma(double x, int* sign);

// Lower incomplete gamma: integral of t^(a-1) e^-t over [0, x].
// Requires a > 0, x >= 0.
double lowerIncompleteGamma(double a, double x);

struct HypergeometricSum {
  double value = 0.0;
  bool converged = false;
  int terms = 0;
};

// 2F1(1, b; c; z) summed term by term for b, c > 0 and 0 <= z < 1.
// Stops once the relative term drops below 1e-16; if 20000 terms are
// exhausted first, `converged` is false and the partial sum is returned.
HypergeometricSum gauss2F1Restricted(double b, double c, double z);

// L_q^gamma expanded in powers of x; coefficients[j] multiplies x^j.
struct LaguerrePolynomial {
  int degree = 0;
  double upperIndex = 0.0;
  std::vector<double> coefficients;

  double evaluate(double x) const;
};

// Coefficients (-1)^j C(q+gamma, q-j) / j! via logGamma differences.
// Requires q >= 0 and gamma + q > -1.
LaguerrePolynomial laguerreExpand(int q, double gamma);

}  // namespace aetos
