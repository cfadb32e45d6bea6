#include "aetos/basis.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "aetos/errors.hpp"
#include "aetos/specfun.hpp"

namespace aetos {

std::string familyName(BasisFamily family) {
  switch (family) {
    case BasisFamily::BHETO: return "bheto";
    case BasisFamily::STF: return "stf";
    case BasisFamily::NSTF: return "nstf";
  }
  return "?";
}

BasisFamily familyFromName(const std::string& name) {
  std::string s;
  for (char c : name) s += static_cast<char>(std::tolower(c));
  if (s == "bheto" || s == "bh-eto" || s == "eto") return BasisFamily::BHETO;
  if (s == "stf" || s == "sto") return BasisFamily::STF;
  if (s == "nstf") return BasisFamily::NSTF;
  throw ConstraintError("unknown basis family '" + name + "'");
}

double BasisFunction::minReducedPower() const {
  double m = primitives.front().power;
  for (const auto& prim : primitives) m = std::min(m, prim.power);
  return m + 1.0;
}

namespace {

void requirePositive(double zeta) {
  if (!(zeta > 0.0)) {
    std::ostringstream os;
    os << "basis: requires zeta > 0, got zeta = " << zeta;
    throw ConstraintError(os.str());
  }
}

}  // namespace

BasisFunction buildBasisFunction(BasisFamily family, int l, int p, double nu,
                                 double alpha, double zeta) {
  if (l < 0) throw ConstraintError("basis: requires l >= 0");
  if (p < l) {
    std::ostringstream os;
    os << "basis: requires p >= l (digit >= l+1), got p = " << p
       << " in l = " << l;
    throw ConstraintError(os.str());
  }
  requirePositive(zeta);

  BasisFunction f;
  f.family = family;
  f.l = l;
  f.p = p;
  f.nu = nu;
  f.alpha = alpha;
  f.zeta = zeta;

  const double log2z = std::log(2.0 * zeta);
  switch (family) {
    case BasisFamily::STF: {
      const int n = p + 1;
      f.normConstant =
          std::exp((n + 0.5) * log2z - 0.5 * logGamma(2.0 * n + 1.0));
      f.primitives.push_back({f.normConstant, static_cast<double>(n - 1), zeta});
      break;
    }
    case BasisFamily::NSTF: {
      const double nstar = p + nu;
      if (!(nstar > 0.0)) {
        std::ostringstream os;
        os << "basis: NSTF requires n* = p + nu > 0, got n* = " << nstar;
        throw ConstraintError(os.str());
      }
      f.normConstant =
          std::exp((nstar + 0.5) * log2z - 0.5 * logGamma(2.0 * nstar + 1.0));
      f.primitives.push_back({f.normConstant, nstar - 1.0, zeta});
      break;
    }
    case BasisFamily::BHETO: {
      if (!(nu > 0.0)) {
        std::ostringstream os;
        os << "basis: BHETO requires nu > 0, got nu = " << nu;
        throw ConstraintError(os.str());
      }
      const int q = p - l;
      const double gamma = 2.0 * l + 2.0 * nu - alpha;
      if (!(gamma > -1.0)) {
        std::ostringstream os;
        os << "basis: BHETO requires alpha < 2l + 2nu + 1 = "
           << 2.0 * l + 2.0 * nu + 1.0 << ", got alpha = " << alpha;
        throw ConstraintError(os.str());
      }
      const LaguerrePolynomial lag = laguerreExpand(q, gamma);
      f.normConstant =
          std::exp(0.5 * (3.0 - alpha) * log2z +
                   0.5 * (logGamma(q + 1.0) - logGamma(q + gamma + 1.0)));
      for (int j = 0; j <= q; ++j) {
        const double mu = l + nu - 1.0 + j;
        const double c =
            f.normConstant * std::exp((l + nu - 1.0 + j) * log2z) *
            lag.coefficients[j];
        f.primitives.push_back({c, mu, zeta});
      }
      break;
    }
  }

  for (const auto& prim : f.primitives) {
    if (!(prim.power > -1.0)) {
      std::ostringstream os;
      os << "basis: primitive power mu = " << prim.power
         << " violates mu > -1";
      throw ConstraintError(os.str());
    }
  }
  if (!std::isfinite(f.normConstant) || !(f.normConstant > 0.0))
    throw ConstraintError("basis: normalization constant not finite/positive");
  return f;
}

double evaluateRadial(const BasisFunction& f, double r) {
  if (!(r > 0.0)) {
    std::ostringstream os;
    os << "evaluateRadial: requires r > 0, got r = " << r;
    throw std::domain_error(os.str());
  }
  double v = 0.0;
  for (const auto& prim : f.primitives)
    v += prim.coefficient * std::pow(r, prim.power) * std::exp(-prim.exponent * r);
  return v;
}

int NotationSkeleton::functionCount() const {
  int n = 0;
  for (const auto& block : pByChannel) n += static_cast<int>(block.size());
  return n;
}

NotationSkeleton parseNotation(const std::string& s, BasisFamily family) {
  if (s.empty()) throw ConstraintError("notation: empty string");
  NotationSkeleton skeleton;
  skeleton.family = family;
  std::vector<int> block;
  int l = 0;
  auto closeBlock = [&]() {
    if (block.empty()) {
      std::ostringstream os;
      os << "notation '" << s << "': empty l = " << l << " block";
      throw ConstraintError(os.str());
    }
    skeleton.pByChannel.push_back(block);
    block.clear();
    ++l;
  };
  for (char c : s) {
    if (c == '-') {
      closeBlock();
      continue;
    }
    if (!std::isdigit(static_cast<unsigned char>(c)) || c == '0') {
      std::ostringstream os;
      os << "notation '" << s << "': unexpected character '" << c << "'";
      throw ConstraintError(os.str());
    }
    const int digit = c - '0';
    if (digit <= l) {
      std::ostringstream os;
      os << "notation '" << s << "': digit " << digit
         << " not allowed in l = " << l << " block (needs digit >= l+1)";
      throw ConstraintError(os.str());
    }
    block.push_back(digit - 1);  // digit is the conventional n label
  }
  closeBlock();
  return skeleton;
}

std::string serializeNotation(const NotationSkeleton& skeleton) {
  std::string out;
  for (size_t l = 0; l < skeleton.pByChannel.size(); ++l) {
    if (l > 0) out += '-';
    for (int p : skeleton.pByChannel[l]) out += static_cast<char>('1' + p);
  }
  return out;
}

int BasisSetSpec::lMax() const {
  return channels.empty() ? -1 : channels.rbegin()->first;
}

int BasisSetSpec::dimension(int l) const {
  auto it = channels.find(l);
  return it == channels.end() ? 0 : static_cast<int>(it->second.size());
}

int BasisSetSpec::totalFunctions() const {
  int n = 0;
  for (const auto& [l, fs] : channels) n += static_cast<int>(fs.size());
  return n;
}

BasisSetSpec assembleBasisSet(const NotationSkeleton& skeleton, double nu,
                              double alpha, const std::vector<double>& zetas,
                              const BasisBuildOptions& options) {
  const int count = skeleton.functionCount();
  if (static_cast<int>(zetas.size()) != count) {
    std::ostringstream os;
    os << "basis set: notation '" << serializeNotation(skeleton) << "' needs "
       << count << " zeta values, got " << zetas.size();
    throw ConstraintError(os.str());
  }
  if (skeleton.family == BasisFamily::BHETO) {
    if (!(nu > options.nuMin && nu <= options.nuMax)) {
      std::ostringstream os;
      os << "basis set: BHETO requires nu in (" << options.nuMin << ", "
         << options.nuMax << "], got nu = " << nu;
      throw ConstraintError(os.str());
    }
    // l_min = 0 for every notation-built set.
    const double bound = 2.0 * nu + 1.0 - options.alphaMargin;
    if (!(alpha < bound)) {
      std::ostringstream os;
      os << "basis set: requires alpha < 2 l_min + 2 nu + 1 - margin = "
         << bound << ", got alpha = " << alpha;
      throw ConstraintError(os.str());
    }
  }

  BasisSetSpec spec;
  spec.notation = serializeNotation(skeleton);
  if (skeleton.family != BasisFamily::STF) spec.sharedNu = nu;
  if (skeleton.family == BasisFamily::BHETO) spec.sharedAlpha = alpha;
  size_t zi = 0;
  for (size_t l = 0; l < skeleton.pByChannel.size(); ++l) {
    for (int p : skeleton.pByChannel[l]) {
      spec.channels[static_cast<int>(l)].push_back(buildBasisFunction(
          skeleton.family, static_cast<int>(l), p, nu, alpha, zetas[zi++]));
    }
  }

  // Pairwise kinetic integrability: the derivative Gram integrand goes as
  // r^(m+m'-2) near the origin, so every pair needs m + m' > 1.
  for (const auto& [l, fs] : spec.channels) {
    for (size_t i = 0; i < fs.size(); ++i) {
      for (size_t j = i; j < fs.size(); ++j) {
        const double m = fs[i].minReducedPower() + fs[j].minReducedPower();
        if (!(m > 1.0)) {
          std::ostringstream os;
          os << "basis set: kinetic integrability requires reduced powers "
                "m + m' > 1 for every pair in a channel; pair (" << i << ","
             << j << ") in l = " << l << " has m + m' = " << m
             << " (shared-nu l=0 channels need nu > 1/2)";
          throw ConstraintError(os.str());
        }
      }
    }
  }
  return spec;
}

CuspReport cuspDiagnostic(const std::vector<BasisFunction>& channelFunctions,
                          const std::vector<double>& coefficients, double Z) {
  if (channelFunctions.size() != coefficients.size())
    throw std::invalid_argument("cuspDiagnostic: coefficient count mismatch");

  // Cluster net primitive contributions by power.
  struct Term { double power; double coef; double zetaCoef; };
  std::vector<Term> terms;
  double scale = 0.0;
  for (size_t i = 0; i < channelFunctions.size(); ++i) {
    for (const auto& prim : channelFunctions[i].primitives) {
      const double c = coefficients[i] * prim.coefficient;
      scale = std::max(scale, std::fabs(c));
      bool merged = false;
      for (auto& t : terms) {
        if (std::fabs(t.power - prim.power) < 1e-9) {
          t.coef += c;
          t.zetaCoef += c * prim.exponent;
          merged = true;
          break;
        }
      }
      if (!merged) terms.push_back({prim.power, c, c * prim.exponent});
    }
  }
  std::erase_if(terms, [&](const Term& t) {
    return std::fabs(t.coef) < 1e-12 * std::max(scale, 1e-300);
  });
  std::sort(terms.begin(), terms.end(),
            [](const Term& a, const Term& b) { return a.power < b.power; });

  CuspReport report;
  report.reference = -Z;
  if (terms.empty()) {
    report.kind = CuspReport::Kind::VanishingAtOrigin;
    report.text = "orbital numerically zero near the origin";
    return report;
  }
  const double muMin = terms.front().power;
  if (muMin < -1e-9) {
    report.kind = CuspReport::Kind::DivergentAtOrigin;
    std::ostringstream os;
    os << "divergent at origin: leading power r^(" << muMin
       << ") (nu < 1 class)";
    report.text = os.str();
    return report;
  }
  if (muMin > 1e-9) {
    report.kind = CuspReport::Kind::VanishingAtOrigin;
    std::ostringstream os;
    os << "vanishes at origin: leading power r^(" << muMin
       << ") (nu > 1 class)";
    report.text = os.str();
    return report;
  }

  // Finite R(0). R'(0) is finite only if every other power is >= 1.
  double r0 = 0.0, r0zeta = 0.0, r1 = 0.0;
  bool fractional = false;
  for (const auto& t : terms) {
    if (std::fabs(t.power) < 1e-9) {
      r0 += t.coef;
      r0zeta += t.zetaCoef;
    } else if (std::fabs(t.power - 1.0) < 1e-9) {
      r1 += t.coef;
    } else if (t.power < 1.0) {
      fractional = true;
    }
  }
  if (fractional) {
    report.kind = CuspReport::Kind::DivergentAtOrigin;
    report.text = "R(0) finite but R'(0) divergent (fractional power < 1)";
    return report;
  }
  report.kind = CuspReport::Kind::FiniteRatio;
  report.ratio = (r1 - r0zeta) / r0;
  report.satisfied =
      std::fabs(report.ratio - report.reference) < 1e-6 * std::max(1.0, std::fabs(Z));
  std::ostringstream os;
  os << "R'(0)/R(0) = " << report.ratio << " vs -Z = " << report.reference
     << (report.satisfied ? " (cusp satisfied)" : " (cusp not satisfied)");
  report.text = os.str();
  return report;
}

}  // namespace aetos
