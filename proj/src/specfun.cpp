#include "aetos/specfun.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace aetos {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Lanczos approximation, g = 7, 9 terms. Good to ~1e-15 relative on (0.5, inf).
constexpr double kLanczos[9] = {
    0.99999999999980993,      676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,    12.507343278686905,
    -0.13857109526572012,     9.9843695780195716e-6, 1.5056327351493116e-7};

double lanczosSum(double z) {
  double a = kLanczos[0];
  for (int i = 1; i < 9; ++i) a += kLanczos[i] / (z + i);
  return a;
}

// Largest x with Gamma(x) representable as a double.
constexpr double kGammaOverflowX = 171.62437695630273;

}  // namespace

double logGamma(double x) {
  if (!(x > 0.0)) {
    std::ostringstream os;
    os << "logGamma: requires x > 0, got x = " << x;
    throw std::domain_error(os.str());
  }
  if (x < 0.5) {
    // Reflection; sin(pi x) > 0 on (0, 0.5).
    return std::log(kPi / std::sin(kPi * x)) - logGamma(1.0 - x);
  }
  const double z = x - 1.0;
  const double t = z + 7.5;
  return 0.5 * std::log(2.0 * kPi) + (z + 0.5) * std::log(t) - t +
         std::log(lanczosSum(z));
}

double gammaFn(double x) {
  if (!(x > 0.0)) {
    std::ostringstream os;
    os << "gammaFn: requires x > 0, got x = " << x;
    throw std::domain_error(os.str());
  }
  if (x > kGammaOverflowX) {
    std::ostringstream os;
    os << "gammaFn: Gamma(" << x << ") exceeds double range; use logGamma";
    throw std::overflow_error(os.str());
  }
  if (x < 0.5) return kPi / (std::sin(kPi * x) * gammaFn(1.0 - x));
  const double z = x - 1.0;
  const double t = z + 7.5;
  return std::sqrt(2.0 * kPi) * std::pow(t, z + 0.5) * std::exp(-t) *
         lanczosSum(z);
}

double signedLogGamma(double x, int* sign) {
  if (x > 0.0) {
    if (sign) *sign = 1;
    return logGamma(x);
  }
  if (x == std::floor(x)) {
    std::ostringstream os;
    os << "signedLogGamma: pole at non-positive integer x = " << x;
    throw std::domain_error(os.str());
  }
  // Gamma(x) = pi / (sin(pi x) Gamma(1 - x)) for non-integer x < 0.
  const double s = std::sin(kPi * x);
  if (sign) *sign = (s > 0.0) ? 1 : -1;
  return std::log(kPi / std::fabs(s)) - logGamma(1.0 - x);
}

namespace {

// Series for the regularized-style sum: gamma(a,x) = x^a e^-x sum_n x^n / (a (a+1) ... (a+n)).
double lowerGammaSeries(double a, double x) {
  double term = 1.0 / a;
  double sum = term;
  for (int n = 1; n < 10000; ++n) {
    term *= x / (a + n);
    sum += term;
    if (std::fabs(term) < std::fabs(sum) * 1e-17) {
      return std::exp(a * std::log(x) - x) * sum;
    }
  }
  throw std::runtime_error("lowerIncompleteGamma: series failed to converge");
}

// Legendre continued fraction for the upper incomplete gamma, x >= a + 1.
double upperGammaContinuedFraction(double a, double x) {
  const double tiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < 10000; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < 1e-16) {
      return std::exp(a * std::log(x) - x) * h;
    }
  }
  throw std::runtime_error(
      "lowerIncompleteGamma: continued fraction failed to converge");
}

}  // namespace

double lowerIncompleteGamma(double a, double x) {
  if (!(a > 0.0)) {
    std::ostringstream os;
    os << "lowerIncompleteGamma: requires a > 0, got a = " << a;
    throw std::domain_error(os.str());
  }
  if (!(x >= 0.0)) {
    std::ostringstream os;
    os << "lowerIncompleteGamma: requires x >= 0, got x = " << x;
    throw std::domain_error(os.str());
  }
  if (x == 0.0) return 0.0;
  if (x < a + 1.0) return lowerGammaSeries(a, x);
  return gammaFn(a) - upperGammaContinuedFraction(a, x);
}

HypergeometricSum gauss2F1Restricted(double b, double c, double z) {
  if (!(b > 0.0) || !(c > 0.0)) {
    std::ostringstream os;
    os << "gauss2F1Restricted: requires b, c > 0, got b = " << b
       << ", c = " << c;
    throw std::domain_error(os.str());
  }
  if (!(z >= 0.0 && z < 1.0)) {
    std::ostringstream os;
    os << "gauss2F1Restricted: requires 0 <= z < 1, got z = " << z;
    throw std::domain_error(os.str());
  }
  HypergeometricSum out;
  double term = 1.0;
  double sum = 1.0;
  // Kahan-compensated accumulation; all terms are positive here.
  double comp = 0.0;
  for (int n = 0; n < 20000; ++n) {
    term *= (b + n) / (c + n) * z;
    const double y = term - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
    if (term < sum * 1e-16) {
      out.value = sum;
      out.converged = true;
      out.terms = n + 1;
      return out;
    }
  }
  out.value = sum;
  out.converged = false;
  out.terms = 20000;
  return out;
}

double LaguerrePolynomial::evaluate(double x) const {
  double v = 0.0;
  for (int j = degree; j >= 0; --j) v = v * x + coefficients[j];
  return v;
}

LaguerrePolynomial laguerreExpand(int q, double gamma) {
  if (q < 0) throw std::domain_error("laguerreExpand: requires q >= 0");
  if (!(gamma + q > -1.0)) {
    std::ostringstream os;
    os << "laguerreExpand: requires gamma + q > -1, got gamma = " << gamma
       << ", q = " << q;
    throw std::domain_error(os.str());
  }
  LaguerrePolynomial poly;
  poly.degree = q;
  poly.upperIndex = gamma;
  poly.coefficients.resize(q + 1);
  int signTop = 1;
  const double lgTop = signedLogGamma(q + gamma + 1.0, &signTop);
  for (int j = 0; j <= q; ++j) {
    const double arg = gamma + j + 1.0;
    if (arg == std::floor(arg) && arg <= 0.0) {
      // C(q+gamma, q-j) vanishes at the Gamma pole in the denominator.
      poly.coefficients[j] = 0.0;
      continue;
    }
    int signBottom = 1;
    const double lgBottom = signedLogGamma(arg, &signBottom);
    const double lg =
        lgTop - logGamma(static_cast<double>(q - j + 1)) - lgBottom -
        logGamma(static_cast<double>(j + 1));
    const int sign = ((j % 2) ? -1 : 1) * signTop * signBottom;
    poly.coefficients[j] = sign * std::exp(lg);
  }
  return poly;
}

}  // namespace aetos
