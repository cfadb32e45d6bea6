#pragma once

// Harness drivers shared by the CLI and the test suites: running bundled
// cases, reproduction reports, parameter scans, and the optimization setup.

#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "aetos/cases.hpp"
#include "aetos/config.hpp"
#include "aetos/optimize.hpp"
#include "aetos/scf.hpp"

namespace aetos {

struct CaseResult {
  const CaseRecord* record = nullptr;
  SCFSolution solution;
  double usedAlpha = 0.0;
  bool alphaRecovered = false;
  double deltaE = 0.0;  // computed - reference
  bool pass = false;
  std::string error;  // non-empty when the run failed outright
};

// Runs one bundled case; recovers alpha by golden-section minimization when
// the record has no tabulated value.
CaseResult runCase(const CaseRecord& record, double tolerance = 5e-7);

struct ReproduceReport {
  std::vector<CaseResult> rows;  // ordered by case index
  bool allPass = true;
};

// jobs <= 1 runs serially; higher values evaluate cases concurrently.
ReproduceReport reproduce(const std::string& selector, double tolerance = 5e-7,
                          int jobs = 0);

void writeReproduceCsv(std::ostream& out, const ReproduceReport& report);

struct ScanRow {
  double value = 0.0;
  double energy = 0.0;
  bool converged = false;
  std::string note;  // constraint violations etc.
};

// Scans one parameter ("nu", "alpha", or "zeta<i>", 1-based) over explicit
// values; constraint violations mark the row instead of aborting the scan.
std::vector<ScanRow> scanParameter(const RunInputs& base,
                                   const std::string& param,
                                   const std::vector<double>& values);

void writeScanCsv(std::ostream& out, const std::string& param,
                  const std::vector<ScanRow>& rows);

// Variational recovery of alpha at fixed nu/zeta over (lo, hi).
double recoverAlpha(const RunInputs& base, double lo, double hi);

// Powell problem over the requested slots ("nu", "alpha", "zeta").
struct OptimizeSetup {
  OptimizationProblem problem;
  std::vector<double> start;
  // Fills a copy of `base` with the slot values from a parameter vector.
  std::function<RunInputs(const std::vector<double>&)> apply;
};

struct OptimizeBounds {
  double nuMin = 0.5;
  double nuMax = 1.1;
  double alphaMin = 0.05;
  double alphaMax = 2.9;
};

OptimizeSetup makeOptimizeSetup(const RunInputs& base,
                                const std::vector<std::string>& varySlots,
                                const OptimizeBounds& bounds = {});

void printEnergyReport(std::ostream& out, const RunInputs& inputs,
                       const BasisSetSpec& basis, const SCFSolution& solution);

std::string formatEnergy(double e);  // fixed, 14 decimals

}  // namespace aetos
