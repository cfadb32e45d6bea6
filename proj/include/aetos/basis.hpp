#pragma once

// Radial basis functions of three exponential families, each reduced to a
// list of primitives c * r^mu * e^(-zeta r):
//
//   STF    r^(n-1) e^(-zeta r), integer n = p + 1
//   NSTF   r^(n*-1) e^(-zeta r), real n* = p + nu (gamma-function norm)
//   BHETO  (2 zeta r)^(l+nu-1) e^(-zeta r) L_q^gamma(2 zeta r),
//          q = p - l, gamma = 2l + 2nu - alpha, orthonormal under the
//          weighted measure r^(2-alpha) dr at equal zeta
//
// plus parsing of the compact notation strings ("1122-22": digits are the
// conventional n labels, '-' separates l channels).

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace aetos {

enum class BasisFamily { BHETO, STF, NSTF };

std::string familyName(BasisFamily family);
BasisFamily familyFromName(const std::string& name);

struct RadialPrimitive {
  double coefficient = 0.0;
  double power = 0.0;     // exponent of r, > -1
  double exponent = 0.0;  // zeta, > 0 (1/bohr)
};

struct BasisFunction {
  BasisFamily family = BasisFamily::STF;
  int l = 0;
  int p = 0;  // radial index; conventional label n = p + 1
  double nu = 1.0;
  double alpha = 2.0;
  double zeta = 1.0;
  std::vector<RadialPrimitive> primitives;
  double normConstant = 1.0;

  // Smallest reduced-radial power (smallest primitive power + 1).
  double minReducedPower() const;
};

BasisFunction buildBasisFunction(BasisFamily family, int l, int p, double nu,
                                 double alpha, double zeta);

// R(r) = sum_j c_j r^(mu_j) e^(-zeta r); requires r > 0.
double evaluateRadial(const BasisFunction& f, double r);

// Parsed notation skeleton: p values per l channel, in string order.
struct NotationSkeleton {
  BasisFamily family = BasisFamily::BHETO;
  std::vector<std::vector<int>> pByChannel;

  int functionCount() const;
};

NotationSkeleton parseNotation(const std::string& s, BasisFamily family);
std::string serializeNotation(const NotationSkeleton& skeleton);

struct BasisSetSpec {
  std::map<int, std::vector<BasisFunction>> channels;
  std::optional<double> sharedNu;
  std::optional<double> sharedAlpha;
  std::string notation;

  int lMax() const;
  int dimension(int l) const;
  int totalFunctions() const;
};

struct BasisBuildOptions {
  double nuMin = 0.5;          // open bound; kinetic integrability
  double nuMax = 1.1;
  double alphaMargin = 1e-9;   // enforced gap in alpha < 2 l_min + 2 nu + 1
};

// Builds every function in notation order, binding zetas sequentially, and
// checks the set-level constraints (shared-nu range for BHETO, pairwise
// kinetic integrability within each channel).
BasisSetSpec assembleBasisSet(const NotationSkeleton& skeleton, double nu,
                              double alpha, const std::vector<double>& zetas,
                              const BasisBuildOptions& options = {});

// r -> 0 behavior of one l = 0 orbital given as a coefficient vector over
// its channel. Informational only.
struct CuspReport {
  enum class Kind { FiniteRatio, DivergentAtOrigin, VanishingAtOrigin };
  Kind kind = Kind::FiniteRatio;
  double ratio = 0.0;      // R'(0)/R(0) when finite
  double reference = 0.0;  // -Z
  bool satisfied = false;
  std::string text;
};

CuspReport cuspDiagnostic(const std::vector<BasisFunction>& channelFunctions,
                          const std::vector<double>& coefficients, double Z);

}  // namespace aetos
