#pragma once

// Closed-shell atomic Hartree-Fock-Roothaan engine. The Roothaan problem
// block-diagonalizes over l channels; each channel's generalized eigenproblem
// F C = S C eps is reduced to standard form through the Cholesky factor of S.

#include <map>
#include <string>
#include <vector>

#include "aetos/angular.hpp"
#include "aetos/basis.hpp"
#include "aetos/integrals.hpp"
#include "aetos/linalg.hpp"

namespace aetos {

struct AtomSystem {
  std::string label;
  double Z = 0.0;
  int nElectrons = 0;
  std::map<int, int> occupancies;  // l -> closed subshells, 2(2l+1) e- each

  void validate() const;

  // Aufbau closed-shell filling (1s 2s 2p 3s 3p 4s 3d ...); throws unless
  // nElectrons closes a shell exactly.
  static std::map<int, int> closedShellOccupancies(int nElectrons);
};

struct ScfOptions {
  double energyTol = 1e-12;
  double densityTol = 1e-9;
  double mixing = 0.5;  // fraction of the fresh density blended in
  int maxIter = 500;
  int maxDim = 32;
  double conditionWarning = 1e10;
  WRoute route = WRoute::Auto;
};

struct SCFSolution {
  std::map<int, Matrix> coefficients;              // columns = orbitals
  std::map<int, std::vector<double>> orbitalEnergies;  // ascending
  double totalEnergy = 0.0;
  double kineticEnergy = 0.0;
  double potentialEnergy = 0.0;   // nuclear attraction + electron repulsion
  double nuclearAttraction = 0.0;
  double twoElectronEnergy = 0.0;
  int iterations = 0;
  bool converged = false;
  std::map<int, double> conditionNumbers;  // of S, per channel
  std::vector<std::string> warnings;

  double virialRatio() const {
    return kineticEnergy != 0.0 ? -potentialEnergy / kineticEnergy : 0.0;
  }
};

// Full-shell density matrices P^(l) = 2(2l+1) sum_occ C C^T.
std::map<int, Matrix> densityFromCoefficients(
    const std::map<int, Matrix>& coefficients,
    const std::map<int, int>& occupancies);

// F^(l) = h^(l) + sum_l' P^(l')_rs [ R^0(pq;rs) - 1/2 sum_k Lambda_k R^k(pr;qs) ].
std::map<int, Matrix> buildFock(const std::map<int, Matrix>& density,
                                const IntegralTables& tables,
                                const AngularTable& angular);

// E = sum_l 1/2 Tr[P^(l) (h^(l) + F^(l))].
double scfEnergy(const std::map<int, Matrix>& density,
                 const IntegralTables& tables,
                 const std::map<int, Matrix>& fock);

SCFSolution runSCF(const AtomSystem& system, const BasisSetSpec& basis,
                   const ScfOptions& options = {});

// Convenience: SCF on prebuilt tables (the optimizer's inner loop).
SCFSolution runSCFWithTables(const AtomSystem& system,
                             const BasisSetSpec& basis,
                             const IntegralTables& tables,
                             const AngularTable& angular,
                             const ScfOptions& options = {});

}  // namespace aetos
