#pragma once

// Bundled reference cases: closed-shell ground states of the Be and Ne
// isoelectronic series (plus Li- and F-) with published optimized basis
// parameters and total energies, and the near-basis-set-limit Be run.
// Energies are in hartree with all printed digits.

#include <optional>
#include <string>
#include <vector>

#include "aetos/basis.hpp"
#include "aetos/config.hpp"

namespace aetos {

enum class AlphaPolicy {
  Optimized,   // alpha was a variational parameter; value embedded
  FixedTwo,    // alpha = 2
  FixedLimit,  // alpha = 2.99999 (the alpha -> 3 limit), nu = 1
  Recovered,   // alpha missing from the source; recover variationally
};

struct CaseRecord {
  std::string id;       // e.g. "be/12/opt"
  std::string group;    // "be-series", "ne-series", "hf-limit"
  std::string atomLabel;
  double Z = 0.0;
  int nElectrons = 0;
  std::string basisNotation;
  BasisFamily family = BasisFamily::BHETO;
  double nu = 1.0;
  AlphaPolicy alphaPolicy = AlphaPolicy::Optimized;
  std::optional<double> alpha;
  std::vector<double> zetas;
  double referenceEnergy = 0.0;
  std::string source;

  RunInputs toRunInputs(double alphaValue) const;
  double alphaOrDefault() const;  // throws for Recovered
};

const std::vector<CaseRecord>& embeddedCases();

// Cases whose id, group, or atom label matches the selector ("all" for
// everything). Matching is case-insensitive; ids match by prefix.
std::vector<const CaseRecord*> selectCases(const std::string& selector);

}  // namespace aetos
