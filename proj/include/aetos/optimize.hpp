#pragma once

// Derivative-free minimization: golden-section line searches inside Powell's
// direction-set method. Bound constraints are handled by smooth coordinate
// transforms (log for positive quantities, logistic for two-sided bounds),
// so the line searches always act on unconstrained variables.

#include <functional>
#include <string>
#include <vector>

namespace aetos {

struct ParameterSlot {
  enum class Kind { Free, Log, Logistic };
  std::string name;
  Kind kind = Kind::Free;
  double lo = 0.0;  // Logistic only
  double hi = 0.0;

  double toUnconstrained(double value) const;
  double toNatural(double t) const;
};

struct TracePoint {
  std::vector<double> parameters;  // natural space
  double value = 0.0;
};

struct OptimizationProblem {
  std::vector<ParameterSlot> slots;
  // Natural-space objective. Expected to return a finite penalty (not throw)
  // for infeasible points; makePenalized helps wrap a throwing function.
  std::function<double(const std::vector<double>&)> objective;
  double penaltyValue = 1e6;

  static std::function<double(const std::vector<double>&)> makePenalized(
      std::function<double(const std::vector<double>&)> f, double penalty);
};

struct BracketResult {
  double a = 0.0, b = 0.0, c = 0.0;
  double fa = 0.0, fb = 0.0, fc = 0.0;
  bool ok = false;
};

// Expands from x0 by doubling until f(b) < f(a), f(b) < f(c); at most
// maxExpand growth steps.
BracketResult bracketMinimum(const std::function<double(double)>& f, double x0,
                             double step, int maxExpand = 60);

struct GoldenResult {
  double x = 0.0;
  double f = 0.0;
  bool bracketed = false;  // false: bracketing failed, x is the start point
};

// Golden-section refinement of a valid bracket down to |c - a| < tol.
GoldenResult goldenSection(const std::function<double(double)>& f, double a,
                           double b, double c, double tol = 1e-8);

// Bracket + golden-section from a start point.
GoldenResult lineMinimize(const std::function<double(double)>& f, double x0,
                          double f0, double step, double tol = 1e-8);

struct PowellOptions {
  double cycleTol = 1e-11;   // stop when a full cycle gains less than this
  int maxCycles = 200;
  double lineTol = 1e-8;     // golden-section width, unconstrained coords
  double initialStep = 0.1;
  double boundReportDistance = 1e-6;
};

struct PowellResult {
  std::vector<double> parameters;  // natural space, best-ever
  double value = 0.0;
  int cycles = 0;
  bool converged = false;
  std::vector<TracePoint> trace;   // every objective evaluation
  std::vector<std::string> boundReports;
};

PowellResult powellMinimize(const OptimizationProblem& problem,
                            const std::vector<double>& start,
                            const PowellOptions& options = {});

void writeTraceCsv(const std::string& path, const OptimizationProblem& problem,
                   const std::vector<TracePoint>& trace);

}  // namespace aetos
