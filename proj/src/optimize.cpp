#include "aetos/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "aetos/errors.hpp"

namespace aetos {

double ParameterSlot::toUnconstrained(double value) const {
  switch (kind) {
    case Kind::Free:
      return value;
    case Kind::Log:
      if (!(value > 0.0))
        throw ConstraintError("slot '" + name + "': requires value > 0");
      return std::log(value);
    case Kind::Logistic: {
      if (!(value > lo && value < hi)) {
        std::ostringstream os;
        os << "slot '" << name << "': start value " << value
           << " outside open bounds (" << lo << ", " << hi << ")";
        throw ConstraintError(os.str());
      }
      const double frac = (value - lo) / (hi - lo);
      return std::log(frac / (1.0 - frac));
    }
  }
  return value;
}

double ParameterSlot::toNatural(double t) const {
  switch (kind) {
    case Kind::Free:
      return t;
    case Kind::Log:
      return std::exp(t);
    case Kind::Logistic: {
      // Keep the image strictly interior even when the logistic saturates.
      double frac = 1.0 / (1.0 + std::exp(-t));
      frac = std::min(std::max(frac, 1e-12), 1.0 - 1e-12);
      return lo + (hi - lo) * frac;
    }
  }
  return t;
}

std::function<double(const std::vector<double>&)>
OptimizationProblem::makePenalized(
    std::function<double(const std::vector<double>&)> f, double penalty) {
  return [f = std::move(f), penalty](const std::vector<double>& x) {
    try {
      const double v = f(x);
      return std::isfinite(v) ? v : penalty;
    } catch (const ConstraintError&) {
      return penalty;
    } catch (const LinearDependenceError&) {
      return penalty;
    }
  };
}

BracketResult bracketMinimum(const std::function<double(double)>& f, double x0,
                             double step, int maxExpand) {
  constexpr double kGolden = 1.618033988749895;
  BracketResult br;
  double a = x0, fa = f(a);
  double b = x0 + step, fb = f(b);
  if (fb > fa) {
    std::swap(a, b);
    std::swap(fa, fb);
  }
  double c = b + kGolden * (b - a);
  double fc = f(c);
  int expand = 0;
  while (fc <= fb) {
    if (++expand > maxExpand) return br;  // ok stays false
    a = b;
    fa = fb;
    b = c;
    fb = fc;
    c = b + kGolden * (b - a);
    fc = f(c);
  }
  br.a = a; br.b = b; br.c = c;
  br.fa = fa; br.fb = fb; br.fc = fc;
  br.ok = true;
  return br;
}

GoldenResult goldenSection(const std::function<double(double)>& f, double a,
                           double b, double c, double tol) {
  constexpr double kRatio = 0.6180339887498949;
  constexpr double kComp = 1.0 - kRatio;
  if (!((a < b && b < c) || (a > b && b > c)))
    throw std::invalid_argument("goldenSection: invalid bracket ordering");
  double x0 = a, x3 = c, x1, x2;
  if (std::fabs(c - b) > std::fabs(b - a)) {
    x1 = b;
    x2 = b + kComp * (c - b);
  } else {
    x2 = b;
    x1 = b - kComp * (b - a);
  }
  double f1 = f(x1);
  double f2 = f(x2);
  while (std::fabs(x3 - x0) > tol) {
    if (f2 < f1) {
      x0 = x1;
      x1 = x2;
      x2 = kRatio * x2 + kComp * x3;
      f1 = f2;
      f2 = f(x2);
    } else {
      x3 = x2;
      x2 = x1;
      x1 = kRatio * x1 + kComp * x0;
      f2 = f1;
      f1 = f(x1);
    }
  }
  GoldenResult out;
  out.bracketed = true;
  if (f1 < f2) {
    out.x = x1;
    out.f = f1;
  } else {
    out.x = x2;
    out.f = f2;
  }
  return out;
}

GoldenResult lineMinimize(const std::function<double(double)>& f, double x0,
                          double f0, double step, double tol) {
  const BracketResult br = bracketMinimum(f, x0, step);
  if (!br.ok) {
    GoldenResult out;
    out.x = x0;
    out.f = f0;
    out.bracketed = false;
    return out;
  }
  GoldenResult out = goldenSection(f, br.a, br.b, br.c, tol);
  if (out.f > f0) {  // never step uphill on a noisy plateau
    out.x = x0;
    out.f = f0;
  }
  return out;
}

PowellResult powellMinimize(const OptimizationProblem& problem,
                            const std::vector<double>& start,
                            const PowellOptions& options) {
  const int n = static_cast<int>(problem.slots.size());
  if (static_cast<int>(start.size()) != n)
    throw std::invalid_argument("powellMinimize: start size mismatch");

  PowellResult result;
  std::vector<double> bestX;
  double bestF = std::numeric_limits<double>::infinity();

  auto toNatural = [&](const std::vector<double>& t) {
    std::vector<double> x(n);
    for (int i = 0; i < n; ++i) x[i] = problem.slots[i].toNatural(t[i]);
    return x;
  };
  auto evaluate = [&](const std::vector<double>& t) {
    const std::vector<double> x = toNatural(t);
    const double v = problem.objective(x);
    result.trace.push_back({x, v});
    if (v < bestF) {
      bestF = v;
      bestX = t;
    }
    return v;
  };

  std::vector<double> t(n);
  for (int i = 0; i < n; ++i) t[i] = problem.slots[i].toUnconstrained(start[i]);
  double fcur = evaluate(t);

  std::vector<std::vector<double>> dirs(n, std::vector<double>(n, 0.0));
  auto resetDirections = [&]() {
    for (int i = 0; i < n; ++i) {
      std::fill(dirs[i].begin(), dirs[i].end(), 0.0);
      dirs[i][i] = 1.0;
    }
  };
  resetDirections();

  auto lineSearch = [&](const std::vector<double>& d) {
    auto g = [&](double lambda) {
      std::vector<double> tt(n);
      for (int i = 0; i < n; ++i) tt[i] = t[i] + lambda * d[i];
      return evaluate(tt);
    };
    const GoldenResult r =
        lineMinimize(g, 0.0, fcur, options.initialStep, options.lineTol);
    if (r.f < fcur) {
      for (int i = 0; i < n; ++i) t[i] += r.x * d[i];
      const double gain = fcur - r.f;
      fcur = r.f;
      return gain;
    }
    return 0.0;
  };

  int cycle = 0;
  for (cycle = 1; cycle <= options.maxCycles; ++cycle) {
    const double f0 = fcur;
    const std::vector<double> t0 = t;
    double biggestDrop = 0.0;
    int dropIndex = -1;
    for (int i = 0; i < n; ++i) {
      const double gain = lineSearch(dirs[i]);
      if (gain > biggestDrop) {
        biggestDrop = gain;
        dropIndex = i;
      }
    }
    const double cycleGain = f0 - fcur;

    // Powell's criterion for replacing the direction of largest decrease by
    // the net cycle displacement.
    if (dropIndex >= 0) {
      std::vector<double> tExtrap(n), dNew(n);
      double norm = 0.0;
      for (int i = 0; i < n; ++i) {
        dNew[i] = t[i] - t0[i];
        tExtrap[i] = 2.0 * t[i] - t0[i];
        norm += dNew[i] * dNew[i];
      }
      norm = std::sqrt(norm);
      if (norm > 0.0) {
        const double fExtrap = evaluate(tExtrap);
        if (fExtrap < f0) {
          const double lhs = 2.0 * (f0 - 2.0 * fcur + fExtrap) *
                             std::pow(f0 - fcur - biggestDrop, 2);
          const double rhs = biggestDrop * std::pow(f0 - fExtrap, 2);
          if (lhs < rhs) {
            for (int i = 0; i < n; ++i) dNew[i] /= norm;
            lineSearch(dNew);
            dirs[dropIndex] = dNew;
          }
        }
      }
    }

    if (cycleGain < options.cycleTol) {
      result.converged = true;
      break;
    }
    if (cycle % n == 0) resetDirections();
  }
  result.cycles = std::min(cycle, options.maxCycles);

  t = bestX;
  result.value = bestF;
  result.parameters = toNatural(t);
  for (int i = 0; i < n; ++i) {
    const ParameterSlot& slot = problem.slots[i];
    if (slot.kind != ParameterSlot::Kind::Logistic) continue;
    const double v = result.parameters[i];
    if (slot.hi - v < options.boundReportDistance ||
        v - slot.lo < options.boundReportDistance) {
      std::ostringstream os;
      os << "slot '" << slot.name << "' = " << v
         << " sits within " << options.boundReportDistance << " of bound ("
         << slot.lo << ", " << slot.hi << ")";
      result.boundReports.push_back(os.str());
    }
  }
  return result;
}

void writeTraceCsv(const std::string& path, const OptimizationProblem& problem,
                   const std::vector<TracePoint>& trace) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write trace file '" + path + "'");
  out << "iteration";
  for (const auto& slot : problem.slots) out << "," << slot.name;
  out << ",energy\n";
  out.precision(16);
  for (size_t i = 0; i < trace.size(); ++i) {
    out << i;
    for (double v : trace[i].parameters) out << "," << v;
    out << "," << trace[i].value << "\n";
  }
}

}  // namespace aetos
