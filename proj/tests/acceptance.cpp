// Acceptance suite: end-to-end checks of the solver against its quantitative
// contracts. Prints one PASS/FAIL line per criterion; exit code = number of
// failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "aetos/basis.hpp"
#include "aetos/cases.hpp"
#include "aetos/errors.hpp"
#include "aetos/integrals.hpp"
#include "aetos/optimize.hpp"
#include "aetos/report.hpp"
#include "aetos/scf.hpp"
#include "support/quadrature.hpp"

using namespace aetos;

namespace {

int failures = 0;

void report(int index, const std::string& name, bool pass,
            const std::string& detail, double seconds) {
  std::printf("[%s] criterion %d: %s (%s) [%.1f s]\n", pass ? "PASS" : "FAIL",
              index, name.c_str(), detail.c_str(), seconds);
  std::fflush(stdout);
  if (!pass) ++failures;
}

void runCriterion(int index, const std::string& name,
                  const std::function<bool(std::string&)>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  std::string detail;
  bool pass = false;
  try {
    pass = body(detail);
  } catch (const std::exception& e) {
    detail = std::string("exception: ") + e.what();
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  report(index, name, pass, detail, seconds);
}

AtomSystem makeSystem(const char* label, double Z, int nElectrons) {
  AtomSystem sys;
  sys.label = label;
  sys.Z = Z;
  sys.nElectrons = nElectrons;
  sys.occupancies = AtomSystem::closedShellOccupancies(nElectrons);
  return sys;
}

BasisFunction randomFunction(std::mt19937& rng, int l) {
  std::uniform_real_distribution<double> nuD(0.8, 1.1);
  std::uniform_real_distribution<double> zD(0.2, 15.0);
  std::uniform_real_distribution<double> aD(0.5, 2.9);
  const int family = static_cast<int>(rng() % 3);
  const int p = l + static_cast<int>(rng() % (3 - l));
  const double nu = nuD(rng);
  const double zeta = zD(rng);
  switch (family) {
    case 0: {
      const double alpha = std::min(aD(rng), 2.0 * l + 2.0 * nu + 1.0 - 0.05);
      return buildBasisFunction(BasisFamily::BHETO, l, p, nu, alpha, zeta);
    }
    case 1:
      return buildBasisFunction(BasisFamily::STF, l, p, 1.0, 2.0, zeta);
    default:
      return buildBasisFunction(BasisFamily::NSTF, l, p, nu, 2.0, zeta);
  }
}

// --- criterion 1: integral correctness against the quadrature oracle -----

bool criterionIntegrals(std::string& detail) {
  std::mt19937 rng(118227);
  double worst = 0.0;
  int tuples = 0;
  auto relDev = [](double a, double b) {
    return std::fabs(a - b) / std::max({std::fabs(a), std::fabs(b), 1e-12});
  };
  for (int trial = 0; trial < 200; ++trial) {
    const int l1 = static_cast<int>(rng() % 2);
    const int l2 = static_cast<int>(rng() % 2);
    const BasisFunction fa = randomFunction(rng, l1);
    const BasisFunction fb = randomFunction(rng, l1);
    const BasisFunction fc = randomFunction(rng, l2);
    const BasisFunction fd = randomFunction(rng, l2);
    worst = std::max(worst, relDev(overlap(fa, fb), testing::overlapQuad(fa, fb)));
    worst = std::max(worst, relDev(kinetic(fa, fb), testing::kineticQuad(fa, fb)));
    worst = std::max(
        worst, relDev(nuclear(fa, fb, 7.0), testing::nuclearQuad(fa, fb, 7.0)));
    const int kMin = std::abs(l1 - l2);
    const int k = kMin + 2 * static_cast<int>(rng() % ((l1 + l2 - kMin) / 2 + 1));
    worst = std::max(worst, relDev(slaterRk(fa, fb, fc, fd, k),
                                   testing::slaterRkQuad(fa, fb, fc, fd, k)));
    ++tuples;
  }
  std::ostringstream os;
  os << tuples << " random tuples, worst relative deviation " << worst;
  detail = os.str();
  return worst < 1e-10;
}

// --- criterion 2: He-like closed form -------------------------------------

bool criterionHelium(std::string& detail) {
  ConfigFile cfg = ConfigFile::parse(R"(
[system]
label = He
z = 2
electrons = 2
[basis]
family = stf
notation = 1
[parameters]
zeta = 1.0
)");
  const RunInputs inputs = decodeRunInputs(cfg);
  const OptimizeSetup setup = makeOptimizeSetup(inputs, {"zeta"});
  const PowellResult r = powellMinimize(setup.problem, setup.start);
  std::ostringstream os;
  os << "zeta = " << r.parameters[0] << ", E = " << formatEnergy(r.value);
  detail = os.str();
  return std::fabs(r.parameters[0] - 1.6875) < 1e-6 &&
         std::fabs(r.value - (-2.84765625)) < 1e-9;
}

// --- criterion 3: table reproduction ---------------------------------------

bool criterionTables(std::string& detail) {
  const ReproduceReport report = reproduce("be-series", 5e-7, 0);
  const ReproduceReport report2 = reproduce("ne-series", 5e-7, 0);
  int pass = 0, total = 0;
  double worst = 0.0;
  auto tally = [&](const ReproduceReport& rep) {
    for (const auto& row : rep.rows) {
      ++total;
      if (row.pass) ++pass;
      worst = std::max(worst, std::fabs(row.deltaE));
    }
  };
  tally(report);
  tally(report2);
  // spot-check the named values at their full printed precision
  struct Pin { const char* id; double e; };
  const Pin pins[] = {
      {"be/12/opt", -14.56492264690451},
      {"be/12/limit3", -14.55673726489952},
      {"be/1111/a2", -14.57301028405534},
      {"be/1111/limit3", -14.57300949244482},
      {"ne/12-2/opt", -127.84859737811554},
      {"nap/12-2/opt", -160.99799774813393},
      {"ne/1122-22/a2", -128.53598171288771},
  };
  bool pinsOk = true;
  for (const Pin& pin : pins) {
    const auto sel = selectCases(pin.id);
    if (sel.size() != 1 ||
        std::fabs(sel[0]->referenceEnergy - pin.e) > 5e-14 * std::fabs(pin.e)) {
      pinsOk = false;
    }
  }
  std::ostringstream os;
  os << pass << "/" << total << " rows within 5e-7, worst |dE| = " << worst
     << (pinsOk ? "" : "; pinned reference mismatch");
  detail = os.str();
  return pass == total && total == 49 && pinsOk;
}

// --- criterion 4: the near-limit Be run ------------------------------------

bool criterionHfLimit(std::string& detail) {
  const auto sel = selectCases("hf-limit");
  if (sel.size() != 1) {
    detail = "bundled near-limit case missing";
    return false;
  }
  const CaseResult res = runCase(*sel[0]);
  if (!res.error.empty()) {
    detail = res.error;
    return false;
  }
  const double vsPrinted = res.solution.totalEnergy - (-14.57302316699873);
  const double vsNumerical = res.solution.totalEnergy - (-14.57302317);
  std::ostringstream os;
  os << "E = " << formatEnergy(res.solution.totalEnergy) << ", vs printed "
     << vsPrinted << ", vs numerical reference " << vsNumerical;
  detail = os.str();
  return std::fabs(vsPrinted) < 5e-7 && std::fabs(vsNumerical) < 1e-7;
}

// --- criterion 5: alpha -> 3 convergence study ------------------------------

bool criterionAlphaLimit(std::string& detail) {
  // Be (12), zeta from the alpha->3 column, nu = 1.
  ConfigFile cfg = ConfigFile::parse(R"(
[system]
label = Be
z = 4
electrons = 4
[basis]
family = bheto
notation = 12
[parameters]
nu = 1.0
alpha = 2.9
zeta = 3.6831195179 0.9561216976
)");
  const RunInputs inputs = decodeRunInputs(cfg);

  // native STF energy with the same exponents
  RunInputs stfInputs = inputs;
  stfInputs.skeleton = parseNotation("12", BasisFamily::STF);
  const double eStf =
      runSCF(stfInputs.system, stfInputs.assemble(), stfInputs.scf).totalEnergy;

  const std::vector<double> alphas{2.9, 2.99, 2.999, 2.99999};
  const auto rows = scanParameter(inputs, "alpha", alphas);
  bool decreasing = true;
  double prev = 1e300;
  std::ostringstream os;
  os << "E_STF = " << formatEnergy(eStf) << "; |E(alpha) - E_STF| =";
  for (const auto& row : rows) {
    if (!row.converged) {
      detail = "scan row failed: " + row.note;
      return false;
    }
    const double gap = std::fabs(row.energy - eStf);
    os << " " << gap;
    if (!(gap < prev)) decreasing = false;
    prev = gap;
  }
  detail = os.str();
  return decreasing;
}

// --- criterion 6: optimizer quality ----------------------------------------

bool criterionOptimizer(std::string& detail) {
  std::ostringstream os;
  bool ok = true;

  // Deterministic perturbations of the published minimal-basis parameters.
  // The optimizer must recover at least the printed quality; landing below
  // the printed value is variationally legitimate (for C2+ the perturbed
  // start reaches a deeper interior minimum than the published row).
  for (const char* id : {"be/12/opt", "c2p/12/opt"}) {
    const auto sel = selectCases(id);
    if (sel.size() != 1) return false;
    const CaseRecord& rec = *sel[0];
    RunInputs start = rec.toRunInputs(*rec.alpha);
    start.zetas[0] *= 1.10;
    start.zetas[1] *= 0.90;
    start.nu = rec.nu - 0.02;
    const OptimizeSetup setup =
        makeOptimizeSetup(start, {"zeta", "nu", "alpha"});
    const PowellResult r = powellMinimize(setup.problem, setup.start);
    const double gap = r.value - rec.referenceEnergy;
    os << rec.atomLabel << ": E - E_ref = " << gap << "; ";
    if (gap > 1e-6) ok = false;
  }

  // Li- pushes alpha to the imposed cap.
  {
    const auto sel = selectCases("lim/12/opt");
    if (sel.size() != 1) return false;
    const CaseRecord& rec = *sel[0];
    RunInputs start = rec.toRunInputs(2.5);  // away from the cap
    start.zetas[0] *= 1.10;
    start.zetas[1] *= 0.90;
    start.nu = rec.nu - 0.02;
    OptimizeBounds bounds;
    bounds.alphaMax = 2.9;
    const OptimizeSetup setup =
        makeOptimizeSetup(start, {"zeta", "nu", "alpha"}, bounds);
    const PowellResult r = powellMinimize(setup.problem, setup.start);
    double alphaFinal = 0.0;
    for (size_t i = 0; i < setup.problem.slots.size(); ++i)
      if (setup.problem.slots[i].name == "alpha") alphaFinal = r.parameters[i];
    os << "Li-: alpha = " << alphaFinal << " (cap 2.9)";
    if (std::fabs(alphaFinal - 2.9) > 1e-3) ok = false;
  }
  detail = os.str();
  return ok;
}

// --- criterion 7: invariance suite over every bundled case ------------------

bool criterionInvariants(std::string& detail) {
  int checked = 0;
  const double hfLimitBe = -14.573023168;
  for (const CaseRecord& rec : embeddedCases()) {
    const double alpha = rec.alphaPolicy == AlphaPolicy::Recovered
                             ? 2.6104529           // recovered once; fixed here
                             : rec.alphaOrDefault();
    const RunInputs run = rec.toRunInputs(alpha);
    BasisSetSpec basis = run.assemble();
    const AngularTable angular = angularTable(std::max(basis.lMax(), 0));
    const IntegralTables tables =
        buildIntegralTables(basis, run.system.Z, angular);
    const SCFSolution sol =
        runSCFWithTables(run.system, basis, tables, angular, run.scf);
    if (!sol.converged) {
      detail = rec.id + ": SCF not converged";
      return false;
    }

    // Orthonormality against the caller-side overlap. Computed through the
    // identity C^T S C = (L^T C)^T (L^T C) + C^T (S - L L^T) C, which keeps
    // every partial sum O(1): near the dependence threshold the coefficients
    // reach ~1e4 and a direct product would inject ~cond * eps of verifier
    // rounding into the check.
    for (const auto& [l, C] : sol.coefficients) {
      const Matrix& S = tables.channels.at(l).S;
      const Matrix L = choleskyFactor(S);
      const int n = C.rows();
      std::vector<long double> W(static_cast<size_t>(n) * n);
      for (int i = 0; i < n; ++i)
        for (int a = 0; a < n; ++a) {
          long double acc = 0.0L;
          for (int kk = i; kk < n; ++kk)
            acc += static_cast<long double>(L(kk, i)) * C(kk, a);
          W[static_cast<size_t>(i) * n + a] = acc;
        }
      std::vector<long double> E(static_cast<size_t>(n) * n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          long double acc = S(i, j);
          for (int kk = 0; kk <= std::min(i, j); ++kk)
            acc -= static_cast<long double>(L(i, kk)) * L(j, kk);
          E[static_cast<size_t>(i) * n + j] = acc;
        }
      double worst = 0.0;
      for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
          long double acc = 0.0L;
          for (int i = 0; i < n; ++i)
            acc += W[static_cast<size_t>(i) * n + a] *
                   W[static_cast<size_t>(i) * n + b];
          for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
              acc += static_cast<long double>(C(i, a)) *
                     E[static_cast<size_t>(i) * n + j] * C(j, b);
          worst = std::max(worst, std::fabs(static_cast<double>(
                                      acc - (a == b ? 1.0L : 0.0L))));
        }
      }
      if (worst > 1e-10) {
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%.3e", worst);
        detail = rec.id + ": C^T S C deviates from identity by " + buf;
        return false;
      }
    }

    // energy identity: trace formula vs explicit term assembly
    {
      const std::map<int, Matrix> P =
          densityFromCoefficients(sol.coefficients, run.system.occupancies);
      double e1 = 0.0, e2 = 0.0;
      for (const auto& [l, Pl] : P) {
        const auto& cm = tables.channels.at(l);
        for (int i = 0; i < Pl.rows(); ++i)
          for (int j = 0; j < Pl.cols(); ++j) e1 += Pl(i, j) * cm.h(i, j);
        for (const auto& [lp, Plp] : P) {
          const auto& pair = tables.pairs.at({l, lp});
          for (int p = 0; p < Pl.rows(); ++p)
            for (int q = 0; q < Pl.rows(); ++q)
              for (int r = 0; r < Plp.rows(); ++r)
                for (int s = 0; s < Plp.rows(); ++s) {
                  double t = pair.coulomb.at(p, q, r, s);
                  for (const auto& [k, lambda] : angular.at(l, lp))
                    t -= 0.5 * lambda * pair.exchange.at(k).at(p, q, r, s);
                  e2 += 0.5 * Pl(p, q) * Plp(r, s) * t;
                }
        }
      }
      const double dev = std::fabs(sol.totalEnergy - (e1 + e2)) /
                         std::fabs(sol.totalEnergy);
      if (dev > 1e-11) {
        detail = rec.id + ": energy identity deviates by " + std::to_string(dev);
        return false;
      }
    }

    // scale invariance (one function rescaled)
    {
      BasisSetSpec scaled = basis;
      for (auto& prim : scaled.channels.begin()->second.front().primitives)
        prim.coefficient *= 3.7;
      const SCFSolution sol2 = runSCF(run.system, scaled, run.scf);
      if (std::fabs(sol2.totalEnergy - sol.totalEnergy) > 1e-10) {
        detail = rec.id + ": scale invariance broken";
        return false;
      }
    }

    // permutation invariance (swap two functions in the largest channel)
    {
      BasisSetSpec permuted = basis;
      auto& fs = permuted.channels.begin()->second;
      if (fs.size() >= 2) {
        std::swap(fs[0], fs[fs.size() - 1]);
        const SCFSolution sol3 = runSCF(run.system, permuted, run.scf);
        if (std::fabs(sol3.totalEnergy - sol.totalEnergy) > 1e-12) {
          detail = rec.id + ": permutation invariance broken (" +
                   std::to_string(sol3.totalEnergy - sol.totalEnergy) + ")";
          return false;
        }
      }
    }

    // variational bound for the Be cases
    if (rec.atomLabel == "Be" && sol.totalEnergy < hfLimitBe - 1e-6) {
      detail = rec.id + ": energy below the Be reference limit";
      return false;
    }
    ++checked;
  }
  detail = std::to_string(checked) + " cases, all invariants hold";
  return checked == 50;
}

// --- criterion 8: linear-dependence guard -----------------------------------

bool criterionDependenceGuard(std::string& detail) {
  std::vector<BasisFunction> dup{
      buildBasisFunction(BasisFamily::NSTF, 0, 0, 0.93, 2.0, 1.4),
      buildBasisFunction(BasisFamily::NSTF, 0, 0, 0.93, 2.0, 1.4)};
  BasisSetSpec dupSpec;
  dupSpec.channels[0] = dup;
  dupSpec.notation = "11";
  bool threw = false;
  try {
    runSCF(makeSystem("He", 2.0, 2), dupSpec);
  } catch (const LinearDependenceError&) {
    threw = true;
  }

  std::vector<BasisFunction> near{
      buildBasisFunction(BasisFamily::NSTF, 0, 0, 0.93, 2.0, 1.4),
      buildBasisFunction(BasisFamily::NSTF, 0, 0, 0.93 + 1e-6, 2.0, 1.4)};
  BasisSetSpec nearSpec;
  nearSpec.channels[0] = near;
  nearSpec.notation = "11";
  const SCFSolution sol = runSCF(makeSystem("He", 2.0, 2), nearSpec);
  const double cond = sol.conditionNumbers.at(0);
  std::ostringstream os;
  os << "duplicate -> " << (threw ? "dependence error" : "NO error")
     << "; |dn*| = 1e-6 -> condition " << cond << ", "
     << sol.warnings.size() << " warning(s)";
  detail = os.str();
  return threw && cond > 1e10 && !sol.warnings.empty();
}

}  // namespace

int main() {
  std::printf("acceptance suite\n================\n");
  runCriterion(1, "analytic integrals vs quadrature oracle", criterionIntegrals);
  runCriterion(2, "He-like closed-form optimum", criterionHelium);
  runCriterion(3, "bundled table reproduction at 5e-7", criterionTables);
  runCriterion(4, "near-limit Be run", criterionHfLimit);
  runCriterion(5, "alpha -> 3 convergence toward STF", criterionAlphaLimit);
  runCriterion(6, "optimizer recovers published minima", criterionOptimizer);
  runCriterion(7, "invariance suite on every bundled case", criterionInvariants);
  runCriterion(8, "linear-dependence guard", criterionDependenceGuard);
  std::printf("================\n%s (%d criterion failure%s)\n",
              failures == 0 ? "ALL CRITERIA PASS" : "FAILURES PRESENT",
              failures, failures == 1 ? "" : "s");
  return failures;
}
