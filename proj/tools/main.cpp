// aetos command line: closed-shell atomic Hartree-Fock-Roothaan calculations
// over exponential-type radial bases (BH-ETO / STF / NSTF).
//
// Exit codes: 0 success / all-pass, 1 usage or parse error, 2 constraint
// error, 3 SCF non-convergence, 4 reproduction failures.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "aetos/cases.hpp"
#include "aetos/config.hpp"
#include "aetos/errors.hpp"
#include "aetos/report.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitConstraint = 2;
constexpr int kExitNoConvergence = 3;
constexpr int kExitReproduceFail = 4;

std::string dirOf(const std::string& path) {
  const auto parent = std::filesystem::path(path).parent_path();
  return parent.empty() ? std::string(".") : parent.string();
}

aetos::RunInputs loadInputs(const std::string& configPath) {
  const aetos::ConfigFile cfg = aetos::ConfigFile::load(configPath);
  return aetos::decodeRunInputs(cfg, dirOf(configPath));
}

std::vector<double> parseValueList(const std::string& csv) {
  std::vector<double> out;
  std::stringstream ss(csv);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (!tok.empty()) out.push_back(std::stod(tok));
  }
  return out;
}

int cmdEnergy(const std::string& configPath) {
  const aetos::RunInputs inputs = loadInputs(configPath);
  const aetos::BasisSetSpec basis = inputs.assemble();
  const aetos::SCFSolution sol =
      aetos::runSCF(inputs.system, basis, inputs.scf);
  aetos::printEnergyReport(std::cout, inputs, basis, sol);
  return sol.converged ? kExitOk : kExitNoConvergence;
}

int cmdDiag(const std::string& configPath) {
  const aetos::RunInputs inputs = loadInputs(configPath);
  const aetos::BasisSetSpec basis = inputs.assemble();
  std::cout << "basis (" << basis.notation << "), "
            << basis.totalFunctions() << " functions\n";
  for (const auto& [l, fs] : basis.channels) {
    for (const auto& f : fs) {
      std::cout << "  l=" << f.l << " p=" << f.p << " zeta=" << f.zeta
                << " norm=" << f.normConstant << " primitives:";
      for (const auto& prim : f.primitives)
        std::cout << "  " << prim.coefficient << " r^" << prim.power;
      std::cout << "\n";
    }
  }
  const aetos::SCFSolution sol =
      aetos::runSCF(inputs.system, basis, inputs.scf);
  std::cout << "\nE_total = " << aetos::formatEnergy(sol.totalEnergy)
            << (sol.converged ? "" : "  (NOT converged)") << "\n";
  for (const auto& [l, cond] : sol.conditionNumbers) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6e", cond);
    std::cout << "overlap condition l=" << l << ": " << buf << "\n";
  }
  for (const auto& w : sol.warnings) std::cout << "warning: " << w << "\n";
  // Cusp diagnostic on the lowest s orbital.
  auto it = basis.channels.find(0);
  if (it != basis.channels.end() && sol.coefficients.count(0)) {
    const aetos::Matrix& C = sol.coefficients.at(0);
    std::vector<double> coeffs;
    for (int i = 0; i < C.rows(); ++i) coeffs.push_back(C(i, 0));
    const aetos::CuspReport cusp =
        aetos::cuspDiagnostic(it->second, coeffs, inputs.system.Z);
    std::cout << "cusp (lowest s orbital): " << cusp.text << "\n";
  }
  return sol.converged ? kExitOk : kExitNoConvergence;
}

int cmdOptimize(const std::string& configPath, std::string varyCsv,
                double alphaMin, double alphaMax, double nuMax,
                const std::string& outPath, const std::string& tracePath,
                int multiStart) {
  const aetos::RunInputs inputs = loadInputs(configPath);

  if (varyCsv.empty()) {
    // Minimal sets (one function per occupied orbital) vary alpha as well;
    // larger sets keep it fixed.
    int occupied = 0;
    for (const auto& [l, n] : inputs.system.occupancies) occupied += n;
    const bool minimal = inputs.skeleton.functionCount() == occupied;
    varyCsv = (inputs.skeleton.family == aetos::BasisFamily::BHETO)
                  ? (minimal ? "zeta,nu,alpha" : "zeta,nu")
                  : "zeta";
  }
  std::vector<std::string> vary;
  {
    std::stringstream ss(varyCsv);
    std::string tok;
    while (std::getline(ss, tok, ',')) vary.push_back(tok);
  }

  aetos::OptimizeBounds bounds;
  bounds.alphaMin = alphaMin;
  bounds.alphaMax = alphaMax;
  bounds.nuMax = nuMax;
  aetos::OptimizeSetup setup = aetos::makeOptimizeSetup(inputs, vary, bounds);

  aetos::PowellResult best;
  bool haveBest = false;
  for (int s = 0; s < std::max(1, multiStart); ++s) {
    std::vector<double> start = setup.start;
    if (s > 0) {
      // Deterministic spread: alternate expanding/contracting zeta starts.
      const double factor = 1.0 + 0.15 * ((s % 2) ? s : -s) / 2.0;
      for (size_t i = 0; i < start.size(); ++i)
        if (setup.problem.slots[i].kind == aetos::ParameterSlot::Kind::Log)
          start[i] *= factor;
    }
    aetos::PowellResult r = aetos::powellMinimize(setup.problem, start);
    if (!haveBest || r.value < best.value) {
      best = std::move(r);
      haveBest = true;
    }
  }

  std::cout << "optimized " << best.trace.size() << " evaluations, "
            << best.cycles << " cycles\n";
  std::cout << "E = " << aetos::formatEnergy(best.value) << " hartree\n";
  for (size_t i = 0; i < best.parameters.size(); ++i) {
    std::cout.precision(12);
    std::cout << "  " << setup.problem.slots[i].name << " = "
              << best.parameters[i] << "\n";
  }
  for (const auto& note : best.boundReports)
    std::cout << "note: " << note << "\n";

  const aetos::RunInputs finalInputs = setup.apply(best.parameters);
  if (!outPath.empty()) {
    aetos::ConfigFile out = aetos::encodeRunInputs(finalInputs);
    out.set("options", "optimized_energy", aetos::formatEnergy(best.value));
    out.set("options", "optimizer_evaluations",
            std::to_string(best.trace.size()));
    out.save(outPath);
    std::cout << "wrote " << outPath << "\n";
  }
  if (!tracePath.empty()) {
    aetos::writeTraceCsv(tracePath, setup.problem, best.trace);
    std::cout << "wrote " << tracePath << "\n";
  }
  return kExitOk;
}

int cmdReproduce(const std::string& selector, const std::string& csvPath,
                 double tolerance, int jobs) {
  const aetos::ReproduceReport report =
      aetos::reproduce(selector, tolerance, jobs);
  if (report.rows.empty()) {
    std::cerr << "no bundled cases match '" << selector << "'\n";
    return kExitUsage;
  }
  if (csvPath.empty() || csvPath == "-") {
    aetos::writeReproduceCsv(std::cout, report);
  } else {
    std::ofstream out(csvPath);
    if (!out) {
      std::cerr << "cannot write '" << csvPath << "'\n";
      return kExitUsage;
    }
    aetos::writeReproduceCsv(out, report);
    std::cout << "wrote " << csvPath << "\n";
  }
  int passed = 0;
  for (const auto& row : report.rows) passed += row.pass ? 1 : 0;
  std::cout << passed << "/" << report.rows.size() << " cases within tolerance\n";
  return report.allPass ? kExitOk : kExitReproduceFail;
}

int cmdScan(const std::string& configPath, const std::string& param,
            const std::string& valuesCsv, double from, double to, int points,
            const std::string& csvPath) {
  const aetos::RunInputs inputs = loadInputs(configPath);
  std::vector<double> values;
  if (!valuesCsv.empty()) {
    values = parseValueList(valuesCsv);
  } else {
    if (points < 2) throw aetos::ConstraintError("scan: needs >= 2 points");
    for (int i = 0; i < points; ++i)
      values.push_back(from + (to - from) * i / (points - 1));
  }
  const std::vector<aetos::ScanRow> rows =
      aetos::scanParameter(inputs, param, values);
  if (csvPath.empty() || csvPath == "-") {
    aetos::writeScanCsv(std::cout, param, rows);
  } else {
    std::ofstream out(csvPath);
    aetos::writeScanCsv(out, param, rows);
    std::cout << "wrote " << csvPath << "\n";
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"atomic Hartree-Fock-Roothaan over exponential-type orbitals"};
  app.require_subcommand(1);

  std::string configPath, varyCsv, outPath, tracePath, selector = "all";
  std::string csvPath, param, valuesCsv;
  double alphaMin = 0.05, alphaMax = 2.9, nuMax = 1.1, tolerance = 5e-7;
  double from = 0.0, to = 0.0;
  int points = 0, jobs = 0, multiStart = 1;

  CLI::App* energy = app.add_subcommand("energy", "single-point SCF energy");
  energy->add_option("config", configPath, "configuration file")->required();

  CLI::App* diag = app.add_subcommand("diag", "basis diagnostics + SCF summary");
  diag->add_option("config", configPath, "configuration file")->required();

  CLI::App* optimize =
      app.add_subcommand("optimize", "Powell optimization of basis parameters");
  optimize->add_option("config", configPath, "configuration file")->required();
  optimize->add_option("--vary", varyCsv,
                       "slots to vary (zeta, nu, alpha, zeta<i>)");
  optimize->add_option("--alpha-min", alphaMin, "lower alpha bound");
  optimize->add_option("--alpha-max", alphaMax, "upper alpha bound");
  optimize->add_option("--nu-max", nuMax, "upper nu bound");
  optimize->add_option("--out", outPath, "write optimized parameters here");
  optimize->add_option("--trace", tracePath, "write evaluation trace CSV");
  optimize->add_option("--multi-start", multiStart,
                       "deterministic multi-start count");

  CLI::App* repro =
      app.add_subcommand("reproduce", "run bundled reference cases");
  repro->add_option("selector", selector,
                    "all | be-series | ne-series | hf-limit | atom | id prefix");
  repro->add_option("--csv", csvPath, "CSV output path ('-' = stdout)");
  repro->add_option("--tolerance", tolerance, "pass/fail tolerance (hartree)");
  repro->add_option("--jobs", jobs, "concurrent case evaluations");

  CLI::App* scan = app.add_subcommand("scan", "1-D parameter scan");
  scan->add_option("config", configPath, "configuration file")->required();
  scan->add_option("--param", param, "nu | alpha | zeta<i>")->required();
  scan->add_option("--values", valuesCsv, "comma-separated values");
  scan->add_option("--from", from, "range start");
  scan->add_option("--to", to, "range end");
  scan->add_option("--points", points, "number of range points");
  scan->add_option("--csv", csvPath, "CSV output path ('-' = stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (energy->parsed()) return cmdEnergy(configPath);
    if (diag->parsed()) return cmdDiag(configPath);
    if (optimize->parsed())
      return cmdOptimize(configPath, varyCsv, alphaMin, alphaMax, nuMax,
                         outPath, tracePath, multiStart);
    if (repro->parsed()) return cmdReproduce(selector, csvPath, tolerance, jobs);
    if (scan->parsed())
      return cmdScan(configPath, param, valuesCsv, from, to, points, csvPath);
  } catch (const aetos::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const aetos::LinearDependenceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConstraint;
  } catch (const aetos::ConstraintError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConstraint;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
