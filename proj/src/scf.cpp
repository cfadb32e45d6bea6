#include "aetos/scf.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "aetos/errors.hpp"

namespace aetos {

void AtomSystem::validate() const {
  if (!(Z > 0.0)) throw ConstraintError("system: requires Z > 0");
  if (nElectrons <= 0) throw ConstraintError("system: requires nElectrons > 0");
  int total = 0;
  for (const auto& [l, nocc] : occupancies) {
    if (l < 0 || nocc < 0) throw ConstraintError("system: invalid occupancy");
    total += nocc * 2 * (2 * l + 1);
  }
  if (total != nElectrons) {
    std::ostringstream os;
    os << "system: occupancies account for " << total << " electrons, expected "
       << nElectrons;
    throw ConstraintError(os.str());
  }
}

std::map<int, int> AtomSystem::closedShellOccupancies(int nElectrons) {
  // Madelung filling order; enough for the systems this code targets.
  static const int order[][2] = {{1, 0}, {2, 0}, {2, 1}, {3, 0}, {3, 1},
                                 {4, 0}, {3, 2}, {4, 1}, {5, 0}};
  std::map<int, int> occ;
  int remaining = nElectrons;
  for (const auto& shell : order) {
    if (remaining == 0) break;
    const int l = shell[1];
    const int cap = 2 * (2 * l + 1);
    if (remaining < cap) {
      std::ostringstream os;
      os << "system: " << nElectrons
         << " electrons do not close a shell; specify occupancies explicitly";
      throw ConstraintError(os.str());
    }
    occ[l] += 1;
    remaining -= cap;
  }
  if (remaining != 0)
    throw ConstraintError("system: electron count beyond supported shells");
  return occ;
}

std::map<int, Matrix> densityFromCoefficients(
    const std::map<int, Matrix>& coefficients,
    const std::map<int, int>& occupancies) {
  std::map<int, Matrix> density;
  for (const auto& [l, C] : coefficients) {
    const int n = C.rows();
    Matrix P(n, n);
    auto it = occupancies.find(l);
    const int nocc = (it == occupancies.end()) ? 0 : it->second;
    const double w = 2.0 * (2 * l + 1);
    for (int a = 0; a < nocc; ++a)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) P(i, j) += w * C(i, a) * C(j, a);
    density[l] = std::move(P);
  }
  return density;
}

std::map<int, Matrix> buildFock(const std::map<int, Matrix>& density,
                                const IntegralTables& tables,
                                const AngularTable& angular) {
  std::map<int, Matrix> fock;
  for (const auto& [l, cm] : tables.channels) {
    const int n = cm.h.rows();
    Matrix F = cm.h;
    for (const auto& [lp, P] : density) {
      const auto& pair = tables.pairs.at({l, lp});
      const auto& kList = angular.at(l, lp);
      const int m = P.rows();
      for (int p = 0; p < n; ++p) {
        for (int q = p; q < n; ++q) {
          // Extended precision keeps the contraction independent of the
          // density index order (permutation invariance at the 1e-12 bar).
          long double v = 0.0L;
          for (int r = 0; r < m; ++r) {
            for (int s = 0; s < m; ++s) {
              const double prs = P(r, s);
              if (prs == 0.0) continue;
              double t = pair.coulomb.at(p, q, r, s);
              for (const auto& [k, lambda] : kList)
                t -= 0.5 * lambda * pair.exchange.at(k).at(p, q, r, s);
              v += static_cast<long double>(prs) * t;
            }
          }
          F(p, q) += static_cast<double>(v);
          if (q != p) F(q, p) += static_cast<double>(v);
        }
      }
    }
    fock[l] = std::move(F);
  }
  return fock;
}

double scfEnergy(const std::map<int, Matrix>& density,
                 const IntegralTables& tables,
                 const std::map<int, Matrix>& fock) {
  // Extended-precision accumulation; the convergence threshold sits close to
  // the round-off floor for the heavier systems.
  long double sum = 0.0L;
  for (const auto& [l, P] : density) {
    const Matrix& h = tables.channels.at(l).h;
    const Matrix& F = fock.at(l);
    for (int i = 0; i < P.rows(); ++i)
      for (int j = 0; j < P.cols(); ++j)
        sum += 0.5L * static_cast<long double>(P(i, j)) * (h(i, j) + F(i, j));
  }
  return static_cast<double>(sum);
}

namespace {

double traceProduct(const Matrix& P, const Matrix& A) {
  double s = 0.0;
  for (int i = 0; i < P.rows(); ++i)
    for (int j = 0; j < P.cols(); ++j) s += P(i, j) * A(i, j);
  return s;
}

}  // namespace

SCFSolution runSCFWithTables(const AtomSystem& system,
                             const BasisSetSpec& basis,
                             const IntegralTables& tables,
                             const AngularTable& angular,
                             const ScfOptions& options) {
  system.validate();
  for (const auto& [l, nocc] : system.occupancies) {
    if (nocc == 0) continue;
    const int dim = basis.dimension(l);
    if (dim < nocc) {
      std::ostringstream os;
      os << "scf: channel l = " << l << " has " << dim << " functions for "
         << nocc << " occupied subshells";
      throw ConstraintError(os.str());
    }
  }

  SCFSolution sol;

  // Rescale every function to unit diagonal overlap before factoring. The
  // energy is invariant under per-function scaling, but the weighted-measure
  // normalization can spread diagonal norms over many orders of magnitude
  // (alpha -> 3 runs), which would push density entries far above the
  // absolute convergence thresholds. Coefficients are mapped back at exit.
  std::map<int, std::vector<double>> funcScale;
  IntegralTables scaled;
  for (const auto& [l, cm] : tables.channels) {
    const int n = cm.S.rows();
    std::vector<double> d(n);
    for (int i = 0; i < n; ++i) {
      const double sii = cm.S(i, i);
      if (!(sii > 0.0))
        throw ConstraintError("scf: non-positive diagonal overlap");
      d[i] = 1.0 / std::sqrt(sii);
    }
    ChannelMatrices sm{Matrix(n, n), Matrix(n, n), Matrix(n, n), Matrix(n, n)};
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const double w = d[i] * d[j];
        sm.S(i, j) = w * cm.S(i, j);
        sm.T(i, j) = w * cm.T(i, j);
        sm.V(i, j) = w * cm.V(i, j);
        sm.h(i, j) = w * cm.h(i, j);
      }
    scaled.channels[l] = std::move(sm);
    funcScale[l] = std::move(d);
  }
  for (const auto& [key, pair] : tables.pairs) {
    const auto& dl = funcScale.at(key.first);
    const auto& dlp = funcScale.at(key.second);
    ChannelPairTensors sp;
    const int n1 = pair.coulomb.dim1();
    const int n2 = pair.coulomb.dim2();
    // Extended-precision products keep the scaled entries independent of the
    // factor order, so permuting functions permutes the tensors exactly.
    auto weight = [&](int p, int q, int r, int s) {
      return (static_cast<long double>(dl[p]) * dl[q]) *
             (static_cast<long double>(dlp[r]) * dlp[s]);
    };
    sp.coulomb = Tensor4(n1, n2);
    for (int p = 0; p < n1; ++p)
      for (int q = 0; q < n1; ++q)
        for (int r = 0; r < n2; ++r)
          for (int s = 0; s < n2; ++s)
            sp.coulomb.at(p, q, r, s) = static_cast<double>(
                weight(p, q, r, s) * pair.coulomb.at(p, q, r, s));
    for (const auto& [k, ex] : pair.exchange) {
      Tensor4 t(n1, n2);
      for (int p = 0; p < n1; ++p)
        for (int q = 0; q < n1; ++q)
          for (int r = 0; r < n2; ++r)
            for (int s = 0; s < n2; ++s)
              t.at(p, q, r, s) = static_cast<double>(weight(p, q, r, s) *
                                                     ex.at(p, q, r, s));
      sp.exchange[k] = std::move(t);
    }
    scaled.pairs[key] = std::move(sp);
  }

  std::map<int, Matrix> cholesky;
  for (const auto& [l, cm] : scaled.channels) {
    if (cm.S.rows() > options.maxDim) {
      std::ostringstream os;
      os << "scf: channel l = " << l << " dimension " << cm.S.rows()
         << " exceeds cap " << options.maxDim;
      throw ConstraintError(os.str());
    }
    try {
      cholesky[l] = choleskyFactor(cm.S);
    } catch (const LinearDependenceError& e) {
      std::ostringstream os;
      os << "channel l = " << l << ": " << e.what();
      throw LinearDependenceError(os.str(), e.pivotIndex);
    }
    const EigenSolution es = symmetricEigen(cm.S);
    const double lmin = es.values.front();
    const double lmax = es.values.back();
    const double cond = (lmin > 0.0) ? lmax / lmin
                                     : std::numeric_limits<double>::infinity();
    sol.conditionNumbers[l] = cond;
    if (cond > options.conditionWarning) {
      std::ostringstream os;
      os << "channel l = " << l << ": overlap condition number " << cond
         << " exceeds " << options.conditionWarning
         << "; basis near linear dependence";
      sol.warnings.push_back(os.str());
    }
  }

  auto solveChannels = [&](const std::map<int, Matrix>& fock) {
    std::map<int, Matrix> C;
    std::map<int, std::vector<double>> eps;
    for (const auto& [l, F] : fock) {
      EigenSolution es = generalizedEigenExtended(F, scaled.channels.at(l).S);
      C[l] = std::move(es.vectors);
      eps[l] = std::move(es.values);
    }
    return std::pair(std::move(C), std::move(eps));
  };

  // Core guess.
  std::map<int, Matrix> hmap;
  for (const auto& [l, cm] : scaled.channels) hmap[l] = cm.h;
  auto [C, eps] = solveChannels(hmap);
  std::map<int, Matrix> P = densityFromCoefficients(C, system.occupancies);

  double Eold = 0.0;
  int iter = 0;
  // Once the thresholds are met, a few more damped iterations shrink the
  // remaining geometric tail below round-off, so the reported energy does
  // not depend on function ordering at the 1e-12 level.
  int settle = -1;
  for (iter = 1; iter <= options.maxIter; ++iter) {
    const std::map<int, Matrix> F = buildFock(P, scaled, angular);
    const double E = scfEnergy(P, scaled, F);
    std::tie(C, eps) = solveChannels(F);
    const std::map<int, Matrix> Pnew =
        densityFromCoefficients(C, system.occupancies);
    double dP = 0.0;
    for (const auto& [l, Pl] : P) dP = std::max(dP, maxAbsDiff(Pl, Pnew.at(l)));
    const double dE = std::fabs(E - Eold);
    Eold = E;
    if (settle < 0 && iter > 1 && dE < options.energyTol &&
        dP < options.densityTol) {
      sol.converged = true;
      settle = 8;
    }
    if (settle == 0) break;
    if (settle > 0) --settle;
    for (auto& [l, Pl] : P) {
      const Matrix& Pn = Pnew.at(l);
      for (int i = 0; i < Pl.rows(); ++i)
        for (int j = 0; j < Pl.cols(); ++j)
          Pl(i, j) = (1.0 - options.mixing) * Pl(i, j) +
                     options.mixing * Pn(i, j);
    }
  }
  sol.iterations = std::min(iter, options.maxIter);
  // Back to the caller's normalization: C_orig(i,a) = d_i C_scaled(i,a),
  // followed by a Gram correction against the caller's overlap (the scaled
  // overlap carries its own rounding, which near the dependence threshold
  // would otherwise leave C^T S C off identity by ~cond * eps).
  for (auto& [l, Cl] : C) {
    const auto& d = funcScale.at(l);
    for (int i = 0; i < Cl.rows(); ++i)
      for (int a = 0; a < Cl.cols(); ++a) Cl(i, a) *= d[i];
    refineOrthonormality(Cl, tables.channels.at(l).S);
  }
  sol.coefficients = std::move(C);
  sol.orbitalEnergies = std::move(eps);
  sol.totalEnergy = Eold;
  sol.kineticEnergy = 0.0;
  sol.nuclearAttraction = 0.0;
  for (const auto& [l, Pl] : P) {
    sol.kineticEnergy += traceProduct(Pl, scaled.channels.at(l).T);
    sol.nuclearAttraction += traceProduct(Pl, scaled.channels.at(l).V);
  }
  sol.twoElectronEnergy =
      sol.totalEnergy - sol.kineticEnergy - sol.nuclearAttraction;
  sol.potentialEnergy = sol.totalEnergy - sol.kineticEnergy;
  return sol;
}

SCFSolution runSCF(const AtomSystem& system, const BasisSetSpec& basis,
                   const ScfOptions& options) {
  const AngularTable angular = angularTable(std::max(basis.lMax(), 0));
  const IntegralTables tables =
      buildIntegralTables(basis, system.Z, angular, options.route);
  return runSCFWithTables(system, basis, tables, angular, options);
}

}  // namespace aetos
