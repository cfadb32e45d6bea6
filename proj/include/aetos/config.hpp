#pragma once

// Flat sectioned key-value configuration:
//
//   [system]
//   label = Be
//   Z = 4
//   electrons = 4
//   # occupancies = 2        (subshell counts per l; derived when omitted)
//
//   [basis]
//   family = bheto
//   notation = 12
//
//   [parameters]
//   nu = 0.97956747171
//   alpha = 2.4904602359
//   zeta = 3.6131446496 1.0072023726
//   # zeta_file = koga.zeta  (whitespace-separated values, replaces zeta)
//
//   [options]
//   mixing = 0.5
//
// Zeta values bind to basis functions in notation-string order.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "aetos/basis.hpp"
#include "aetos/scf.hpp"

namespace aetos {

class ConfigFile {
 public:
  static ConfigFile parse(const std::string& text);
  static ConfigFile load(const std::string& path);

  bool has(const std::string& section, const std::string& key) const;
  std::string getString(const std::string& section, const std::string& key) const;
  std::string getString(const std::string& section, const std::string& key,
                        const std::string& fallback) const;
  double getDouble(const std::string& section, const std::string& key) const;
  double getDouble(const std::string& section, const std::string& key,
                   double fallback) const;
  int getInt(const std::string& section, const std::string& key,
             int fallback) const;
  std::vector<double> getDoubleList(const std::string& section,
                                    const std::string& key) const;

  void set(const std::string& section, const std::string& key,
           const std::string& value);
  void setDouble(const std::string& section, const std::string& key,
                 double value);
  void setDoubleList(const std::string& section, const std::string& key,
                     const std::vector<double>& values);

  std::string serialize() const;
  void save(const std::string& path) const;

 private:
  struct Entry {
    std::string section, key, value;
  };
  std::vector<Entry> entries_;  // insertion-ordered
  const Entry* find(const std::string& section, const std::string& key) const;
};

// Everything needed to run one case, decoded from a config.
struct RunInputs {
  AtomSystem system;
  NotationSkeleton skeleton;
  double nu = 1.0;
  double alpha = 2.0;
  std::vector<double> zetas;
  ScfOptions scf;
  BasisBuildOptions basisOptions;

  BasisSetSpec assemble() const {
    return assembleBasisSet(skeleton, nu, alpha, zetas, basisOptions);
  }
};

// `baseDir` resolves relative zeta_file references.
RunInputs decodeRunInputs(const ConfigFile& config,
                          const std::string& baseDir = "");

ConfigFile encodeRunInputs(const RunInputs& inputs,
                           const std::string& label = "");

}  // namespace aetos
