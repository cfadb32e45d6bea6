#include "aetos/report.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "aetos/errors.hpp"

namespace aetos {

std::string formatEnergy(double e) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.14f", e);
  return buf;
}

double recoverAlpha(const RunInputs& base, double lo, double hi) {
  auto energyAt = [&](double alpha) {
    RunInputs run = base;
    run.alpha = alpha;
    const SCFSolution sol = runSCF(run.system, run.assemble(), run.scf);
    return sol.converged ? sol.totalEnergy : 1e6;
  };
  // Plain golden-section over the closed interval; E(alpha) is smooth and
  // single-welled for the bundled systems.
  constexpr double kRatio = 0.6180339887498949;
  double a = lo, b = hi;
  double c = b - kRatio * (b - a);
  double d = a + kRatio * (b - a);
  double fc = energyAt(c);
  double fd = energyAt(d);
  while (b - a > 1e-9) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kRatio * (b - a);
      fc = energyAt(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kRatio * (b - a);
      fd = energyAt(d);
    }
  }
  return 0.5 * (a + b);
}

CaseResult runCase(const CaseRecord& record, double tolerance) {
  CaseResult result;
  result.record = &record;
  try {
    double alpha;
    if (record.alphaPolicy == AlphaPolicy::Recovered) {
      RunInputs probe = record.toRunInputs(2.0);
      const double hi = std::min(2.9, 2.0 * record.nu + 1.0 - 1e-6);
      alpha = recoverAlpha(probe, 0.1, hi);
      result.alphaRecovered = true;
    } else {
      alpha = record.alphaOrDefault();
    }
    result.usedAlpha = alpha;
    const RunInputs run = record.toRunInputs(alpha);
    result.solution = runSCF(run.system, run.assemble(), run.scf);
    if (!result.solution.converged) {
      result.error = "SCF did not converge";
      result.pass = false;
      return result;
    }
    result.deltaE = result.solution.totalEnergy - record.referenceEnergy;
    result.pass = std::fabs(result.deltaE) < tolerance;
  } catch (const std::exception& e) {
    result.error = e.what();
    result.pass = false;
  }
  return result;
}

ReproduceReport reproduce(const std::string& selector, double tolerance,
                          int jobs) {
  const std::vector<const CaseRecord*> selected = selectCases(selector);
  ReproduceReport report;
  report.rows.resize(selected.size());
  if (jobs <= 0) {
    const unsigned hw = std::thread::hardware_concurrency();
    jobs = static_cast<int>(hw ? hw : 1);
  }
  jobs = std::min<int>(jobs, static_cast<int>(selected.size()));
  if (jobs <= 1) {
    for (size_t i = 0; i < selected.size(); ++i)
      report.rows[i] = runCase(*selected[i], tolerance);
  } else {
    std::atomic<size_t> next{0};
    auto worker = [&]() {
      for (;;) {
        const size_t i = next.fetch_add(1);
        if (i >= selected.size()) return;
        report.rows[i] = runCase(*selected[i], tolerance);
      }
    };
    std::vector<std::thread> pool;
    for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  for (const auto& row : report.rows)
    if (!row.pass) report.allPass = false;
  return report;
}

void writeReproduceCsv(std::ostream& out, const ReproduceReport& report) {
  out << "atom,basis,source,E_ref,E_computed,dE,status\n";
  for (const auto& row : report.rows) {
    const CaseRecord& c = *row.record;
    out << c.atomLabel << ",(" << c.basisNotation << "),\"" << c.source
        << "\",";
    if (!row.error.empty()) {
      out << formatEnergy(c.referenceEnergy) << ",,," << "error: " << row.error
          << "\n";
      continue;
    }
    out << formatEnergy(c.referenceEnergy) << ","
        << formatEnergy(row.solution.totalEnergy) << ",";
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3e", row.deltaE);
    out << buf << "," << (row.pass ? "pass" : "FAIL") << "\n";
  }
}

std::vector<ScanRow> scanParameter(const RunInputs& base,
                                   const std::string& param,
                                   const std::vector<double>& values) {
  std::vector<ScanRow> rows;
  for (double v : values) {
    ScanRow row;
    row.value = v;
    RunInputs run = base;
    if (param == "nu") {
      run.nu = v;
    } else if (param == "alpha") {
      run.alpha = v;
    } else if (param.rfind("zeta", 0) == 0) {
      const int idx = std::stoi(param.substr(4)) - 1;
      if (idx < 0 || idx >= static_cast<int>(run.zetas.size()))
        throw ConstraintError("scan: no such parameter '" + param + "'");
      run.zetas[idx] = v;
    } else {
      throw ConstraintError("scan: unknown parameter '" + param +
                            "' (expected nu, alpha, or zeta<i>)");
    }
    try {
      const SCFSolution sol = runSCF(run.system, run.assemble(), run.scf);
      row.energy = sol.totalEnergy;
      row.converged = sol.converged;
      if (!sol.converged) row.note = "scf not converged";
    } catch (const std::exception& e) {
      row.converged = false;
      row.note = e.what();
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

void writeScanCsv(std::ostream& out, const std::string& param,
                  const std::vector<ScanRow>& rows) {
  out << param << ",E_total,converged,note\n";
  out.precision(16);
  for (const auto& row : rows) {
    out << row.value << ",";
    if (row.note.empty() || row.converged)
      out << formatEnergy(row.energy);
    out << "," << (row.converged ? 1 : 0) << ",\"" << row.note << "\"\n";
  }
}

OptimizeSetup makeOptimizeSetup(const RunInputs& base,
                                const std::vector<std::string>& varySlots,
                                const OptimizeBounds& bounds) {
  OptimizeSetup setup;
  std::vector<int> zetaIndex;  // slot order bookkeeping
  bool varyNu = false, varyAlpha = false;
  for (const auto& name : varySlots) {
    if (name == "nu") varyNu = true;
    else if (name == "alpha") varyAlpha = true;
    else if (name == "zeta") {
      for (size_t i = 0; i < base.zetas.size(); ++i)
        zetaIndex.push_back(static_cast<int>(i));
    } else if (name.rfind("zeta", 0) == 0) {
      const int idx = std::stoi(name.substr(4)) - 1;
      if (idx < 0 || idx >= static_cast<int>(base.zetas.size()))
        throw ConstraintError("optimize: no such slot '" + name + "'");
      zetaIndex.push_back(idx);
    } else {
      throw ConstraintError("optimize: unknown slot '" + name + "'");
    }
  }
  std::sort(zetaIndex.begin(), zetaIndex.end());
  zetaIndex.erase(std::unique(zetaIndex.begin(), zetaIndex.end()),
                  zetaIndex.end());

  for (int idx : zetaIndex) {
    ParameterSlot slot;
    slot.name = "zeta" + std::to_string(idx + 1);
    slot.kind = ParameterSlot::Kind::Log;
    setup.problem.slots.push_back(slot);
    setup.start.push_back(base.zetas[idx]);
  }
  if (varyNu) {
    ParameterSlot slot;
    slot.name = "nu";
    slot.kind = ParameterSlot::Kind::Logistic;
    slot.lo = bounds.nuMin;
    slot.hi = bounds.nuMax;
    setup.problem.slots.push_back(slot);
    setup.start.push_back(base.nu);
  }
  if (varyAlpha) {
    ParameterSlot slot;
    slot.name = "alpha";
    slot.kind = ParameterSlot::Kind::Logistic;
    slot.lo = bounds.alphaMin;
    slot.hi = bounds.alphaMax;
    setup.problem.slots.push_back(slot);
    setup.start.push_back(base.alpha);
  }

  auto apply = [base, zetaIndex, varyNu, varyAlpha](
                   const std::vector<double>& x) {
    RunInputs run = base;
    size_t pos = 0;
    for (int idx : zetaIndex) run.zetas[idx] = x[pos++];
    if (varyNu) run.nu = x[pos++];
    if (varyAlpha) run.alpha = x[pos++];
    return run;
  };
  setup.apply = apply;
  setup.problem.objective = OptimizationProblem::makePenalized(
      [apply](const std::vector<double>& x) {
        const RunInputs run = apply(x);
        const SCFSolution sol = runSCF(run.system, run.assemble(), run.scf);
        if (!sol.converged)
          throw ConstraintError("scf not converged");  // mapped to penalty
        return sol.totalEnergy;
      },
      setup.problem.penaltyValue);
  return setup;
}

void printEnergyReport(std::ostream& out, const RunInputs& inputs,
                       const BasisSetSpec& basis, const SCFSolution& solution) {
  out << "system: " << (inputs.system.label.empty() ? "?" : inputs.system.label)
      << "  Z = " << inputs.system.Z
      << "  electrons = " << inputs.system.nElectrons << "\n";
  out << "basis: (" << basis.notation << ")";
  if (basis.sharedNu) out << "  nu = " << *basis.sharedNu;
  if (basis.sharedAlpha) out << "  alpha = " << *basis.sharedAlpha;
  out << "\n\n";
  out << "E_total     = " << formatEnergy(solution.totalEnergy) << " hartree\n";
  out << "E_kinetic   = " << formatEnergy(solution.kineticEnergy) << "\n";
  out << "E_potential = " << formatEnergy(solution.potentialEnergy) << "\n";
  out << "virial -V/T = " << formatEnergy(solution.virialRatio()) << "\n";
  out << "iterations  = " << solution.iterations
      << (solution.converged ? " (converged)" : " (NOT converged)") << "\n\n";
  for (const auto& [l, eps] : solution.orbitalEnergies) {
    out << "orbital energies l=" << l << ":";
    for (double e : eps) out << "  " << formatEnergy(e);
    out << "\n";
  }
  for (const auto& [l, cond] : solution.conditionNumbers) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3e", cond);
    out << "overlap condition l=" << l << ": " << buf << "\n";
  }
  for (const auto& w : solution.warnings) out << "warning: " << w << "\n";
}

}  // namespace aetos
