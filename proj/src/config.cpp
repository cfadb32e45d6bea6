#include "aetos/config.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "aetos/errors.hpp"

namespace aetos {

namespace {

std::string trim(const std::string& s) {
  size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

std::string lower(const std::string& s) {
  std::string out = s;
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return out;
}

}  // namespace

ConfigFile ConfigFile::parse(const std::string& text) {
  ConfigFile cfg;
  std::istringstream in(text);
  std::string line, section;
  int lineNo = 0;
  while (std::getline(in, line)) {
    ++lineNo;
    const size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') {
        std::ostringstream os;
        os << "config line " << lineNo << ": malformed section header";
        throw ConfigError(os.str());
      }
      section = lower(trim(line.substr(1, line.size() - 2)));
      continue;
    }
    const size_t eq = line.find('=');
    if (eq == std::string::npos) {
      std::ostringstream os;
      os << "config line " << lineNo << ": expected key = value";
      throw ConfigError(os.str());
    }
    Entry e;
    e.section = section;
    e.key = lower(trim(line.substr(0, eq)));
    e.value = trim(line.substr(eq + 1));
    if (e.key.empty()) {
      std::ostringstream os;
      os << "config line " << lineNo << ": empty key";
      throw ConfigError(os.str());
    }
    cfg.entries_.push_back(std::move(e));
  }
  return cfg;
}

ConfigFile ConfigFile::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

const ConfigFile::Entry* ConfigFile::find(const std::string& section,
                                          const std::string& key) const {
  for (const auto& e : entries_)
    if (e.section == section && e.key == key) return &e;
  return nullptr;
}

bool ConfigFile::has(const std::string& section, const std::string& key) const {
  return find(section, key) != nullptr;
}

std::string ConfigFile::getString(const std::string& section,
                                  const std::string& key) const {
  const Entry* e = find(section, key);
  if (!e)
    throw ConfigError("config: missing [" + section + "] " + key);
  return e->value;
}

std::string ConfigFile::getString(const std::string& section,
                                  const std::string& key,
                                  const std::string& fallback) const {
  const Entry* e = find(section, key);
  return e ? e->value : fallback;
}

double ConfigFile::getDouble(const std::string& section,
                             const std::string& key) const {
  const std::string v = getString(section, key);
  try {
    size_t pos = 0;
    const double d = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw ConfigError("config: [" + section + "] " + key +
                      " is not a number: '" + v + "'");
  }
}

double ConfigFile::getDouble(const std::string& section, const std::string& key,
                             double fallback) const {
  return has(section, key) ? getDouble(section, key) : fallback;
}

int ConfigFile::getInt(const std::string& section, const std::string& key,
                       int fallback) const {
  if (!has(section, key)) return fallback;
  return static_cast<int>(getDouble(section, key));
}

std::vector<double> ConfigFile::getDoubleList(const std::string& section,
                                              const std::string& key) const {
  std::istringstream in(getString(section, key));
  std::vector<double> out;
  std::string tok;
  while (in >> tok) {
    try {
      out.push_back(std::stod(tok));
    } catch (const std::exception&) {
      throw ConfigError("config: [" + section + "] " + key +
                        " has a non-numeric entry '" + tok + "'");
    }
  }
  return out;
}

void ConfigFile::set(const std::string& section, const std::string& key,
                     const std::string& value) {
  for (auto& e : entries_) {
    if (e.section == section && e.key == key) {
      e.value = value;
      return;
    }
  }
  entries_.push_back({section, key, value});
}

void ConfigFile::setDouble(const std::string& section, const std::string& key,
                           double value) {
  std::ostringstream os;
  os.precision(16);
  os << value;
  set(section, key, os.str());
}

void ConfigFile::setDoubleList(const std::string& section,
                               const std::string& key,
                               const std::vector<double>& values) {
  std::ostringstream os;
  os.precision(16);
  for (size_t i = 0; i < values.size(); ++i) {
    if (i) os << ' ';
    os << values[i];
  }
  set(section, key, os.str());
}

std::string ConfigFile::serialize() const {
  // Canonical section order, keys in insertion order within each.
  std::vector<std::string> sections;
  for (const std::string fixed : {"system", "basis", "parameters", "options"})
    sections.push_back(fixed);
  for (const auto& e : entries_)
    if (std::find(sections.begin(), sections.end(), e.section) == sections.end())
      sections.push_back(e.section);

  std::ostringstream os;
  bool first = true;
  for (const auto& sec : sections) {
    bool any = false;
    for (const auto& e : entries_) {
      if (e.section != sec) continue;
      if (!any) {
        if (!first) os << "\n";
        os << "[" << sec << "]\n";
        any = true;
        first = false;
      }
      os << e.key << " = " << e.value << "\n";
    }
  }
  return os.str();
}

void ConfigFile::save(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write config file '" + path + "'");
  out << serialize();
}

namespace {

std::vector<double> readZetaFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open zeta file '" + path + "'");
  std::vector<double> out;
  std::string tok;
  while (in >> tok) {
    if (tok.front() == '#') {
      std::getline(in, tok);
      continue;
    }
    try {
      out.push_back(std::stod(tok));
    } catch (const std::exception&) {
      throw ConfigError("zeta file '" + path + "': bad entry '" + tok + "'");
    }
  }
  return out;
}

}  // namespace

RunInputs decodeRunInputs(const ConfigFile& config, const std::string& baseDir) {
  RunInputs run;
  run.system.label = config.getString("system", "label", "");
  run.system.Z = config.getDouble("system", "z");
  run.system.nElectrons = static_cast<int>(config.getDouble("system", "electrons"));
  if (config.has("system", "occupancies")) {
    const std::vector<double> occ = config.getDoubleList("system", "occupancies");
    for (size_t l = 0; l < occ.size(); ++l) {
      const int n = static_cast<int>(occ[l]);
      if (n > 0) run.system.occupancies[static_cast<int>(l)] = n;
    }
  } else {
    run.system.occupancies =
        AtomSystem::closedShellOccupancies(run.system.nElectrons);
  }
  run.system.validate();

  const BasisFamily family =
      familyFromName(config.getString("basis", "family", "bheto"));
  run.skeleton = parseNotation(config.getString("basis", "notation"), family);

  run.nu = config.getDouble("parameters", "nu", 1.0);
  run.alpha = config.getDouble("parameters", "alpha", 2.0);
  if (config.has("parameters", "zeta_file")) {
    std::string path = config.getString("parameters", "zeta_file");
    if (!baseDir.empty() && path.front() != '/') path = baseDir + "/" + path;
    run.zetas = readZetaFile(path);
  } else {
    run.zetas = config.getDoubleList("parameters", "zeta");
  }

  run.scf.energyTol = config.getDouble("options", "energy_tol", 1e-12);
  run.scf.densityTol = config.getDouble("options", "density_tol", 1e-9);
  run.scf.mixing = config.getDouble("options", "mixing", 0.5);
  run.scf.maxIter = config.getInt("options", "max_iter", 500);
  run.scf.maxDim = config.getInt("options", "max_dim", 32);
  run.scf.conditionWarning = config.getDouble("options", "condition_warning", 1e10);
  run.basisOptions.nuMax = config.getDouble("options", "nu_max", 1.1);
  return run;
}

ConfigFile encodeRunInputs(const RunInputs& inputs, const std::string& label) {
  ConfigFile cfg;
  cfg.set("system", "label", label.empty() ? inputs.system.label : label);
  cfg.setDouble("system", "z", inputs.system.Z);
  cfg.set("system", "electrons", std::to_string(inputs.system.nElectrons));
  {
    int lmax = -1;
    for (const auto& [l, n] : inputs.system.occupancies) lmax = std::max(lmax, l);
    std::ostringstream os;
    for (int l = 0; l <= lmax; ++l) {
      if (l) os << ' ';
      auto it = inputs.system.occupancies.find(l);
      os << (it == inputs.system.occupancies.end() ? 0 : it->second);
    }
    cfg.set("system", "occupancies", os.str());
  }
  cfg.set("basis", "family", familyName(inputs.skeleton.family));
  cfg.set("basis", "notation", serializeNotation(inputs.skeleton));
  cfg.setDouble("parameters", "nu", inputs.nu);
  cfg.setDouble("parameters", "alpha", inputs.alpha);
  cfg.setDoubleList("parameters", "zeta", inputs.zetas);
  return cfg;
}

}  // namespace aetos
