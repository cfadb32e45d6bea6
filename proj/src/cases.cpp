#include "aetos/cases.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

#include "aetos/errors.hpp"

namespace aetos {

RunInputs CaseRecord::toRunInputs(double alphaValue) const {
  RunInputs run;
  run.system.label = atomLabel;
  run.system.Z = Z;
  run.system.nElectrons = nElectrons;
  run.system.occupancies = AtomSystem::closedShellOccupancies(nElectrons);
  run.skeleton = parseNotation(basisNotation, family);
  run.nu = nu;
  run.alpha = alphaValue;
  run.zetas = zetas;
  return run;
}

double CaseRecord::alphaOrDefault() const {
  switch (alphaPolicy) {
    case AlphaPolicy::Optimized:
      return alpha.value();
    case AlphaPolicy::FixedTwo:
      return 2.0;
    case AlphaPolicy::FixedLimit:
      return 2.99999;
    case AlphaPolicy::Recovered:
      throw ConstraintError("case " + id +
                            ": alpha not tabulated; recover it variationally");
  }
  return 2.0;
}

namespace {

struct SeriesAtom {
  const char* label;
  double Z;
};

constexpr SeriesAtom kBeSeries[] = {{"Li-", 3},  {"Be", 4},   {"B+", 5},
                                    {"C2+", 6},  {"N3+", 7},  {"O4+", 8},
                                    {"F5+", 9}};
constexpr SeriesAtom kNeSeries[] = {{"F-", 9},   {"Ne", 10},  {"Na+", 11},
                                    {"Mg2+", 12}, {"Al3+", 13}, {"Si4+", 14},
                                    {"P5+", 15}};

// Per-atom rows: { nu, zetas..., alpha | energies } transcribed with all
// printed digits.
struct MinimalRow {
  double nu, z1, z2, alpha, energy;
};
struct Limit12Row {
  double z1, z2, energy;
};
struct Dz1111Row {
  double nu, z[4], energy;
};
struct Limit1111Row {
  double z[4], energy;
};
struct Minimal122Row {
  double nu, z1s, z2s, z2p;
  double alpha;  // < 0 marks "not tabulated"
  double energy;
};
struct Limit122Row {
  double z1s, z2s, z2p, energy;
};
struct Dz112222Row {
  double nu, z[6], energy;
};

constexpr MinimalRow kBeMinimal[] = {
    {0.9701163825, 2.6049697070, 0.4792972405, 2.8999041450, -7.417273592383753},
    {0.97956747171, 3.6131446496, 1.0072023726, 2.4904602359, -14.564922646904510},
    {0.9848583007, 4.6225494216, 1.5239624414, 2.1857107121, -24.230226304421595},
    {0.9889984844, 5.6379122542, 2.0229893324, 2.0382151003, -36.401308003597424},
    {0.9891369406, 6.6203802997, 2.5371197768, 1.8513553935, -51.075589138454587},
    {0.9906055392, 7.6206833268, 3.0404728509, 1.7467909290, -68.251117880583673},
    {0.9917383317, 8.6215856677, 3.5369460431, 1.6829748950, -87.927604949884237},
};

constexpr Limit12Row kBeLimit12[] = {
    {2.6888175678, 0.4852813454, -7.410801587373588},
    {3.6831195179, 0.9561216976, -14.556737264899524},
    {4.6760197952, 1.3970533051, -24.213571327899284},
    {5.6645843145, 1.8343364075, -36.370298585781181},
    {6.6522171589, 2.2547270750, -51.023919969855167},
    {7.6397616246, 2.6837161249, -68.173196131062880},
    {8.6270747166, 3.1121842717, -87.817519924420202},
};

constexpr Dz1111Row kBeDz[] = {
    {0.9997984887, {4.5576970490, 2.4569335946, 1.7264626387, 0.2886529270}, -7.427983290477606},
    {1.0004174856, {6.4451773995, 3.4727235581, 1.7790399021, 0.7261427913}, -14.573010284055339},
    {0.9972510695, {6.2633782967, 1.3287533885, 4.1080845371, 1.7254283209}, -24.237089980846127},
    {0.9966690825, {6.6438270104, 4.5890343866, 2.7931988859, 1.6248973212}, -36.408086256825231},
    {0.9980530736, {7.9260968182, 5.6572447500, 3.2069705224, 2.1091716741}, -51.081961569229371},
    {0.9989934502, {9.3369976476, 6.7014157153, 3.8512490279, 2.5500845672}, -68.257435526573289},
    {1.0000557108, {13.9998347326, 8.3950174457, 4.3004918266, 3.0358972070}, -87.934021451639024},
};

constexpr Limit1111Row kBeDzLimit[] = {
    {{4.4458060567, 2.4263793834, 1.7846983545, 0.2875140144}, -7.427978021286749},
    {{6.3755330417, 3.4664242495, 1.7778610618, 0.7261548576}, -14.573009492444817},
    {{6.8683053745, 1.4451303795, 4.2801940690, 1.5473524255}, -24.236983286628266},
    {{7.0369479464, 4.8063959667, 2.6299038347, 1.6440533298}, -36.408003729764007},
    {{8.3599594588, 5.7525383192, 3.3352487831, 2.1179575655}, -51.081847315976135},
    {{9.2539243380, 6.6274957584, 3.7406427966, 2.5769526322}, -68.257293326395948},
    {{10.6664235397, 7.4998512593, 4.2154487717, 3.0727528559}, -87.933673685422440},
};

constexpr Minimal122Row kNeMinimal[] = {
    {0.9822606280, 8.4995261354, 2.5297419409, 2.3250102604, 2.7717848831, -98.724272652163216},
    {0.9825339174, 9.4733428896, 2.9794886577, 2.8547415082, -1.0, -127.848597378115539},
    {0.9833015839, 10.4573583937, 3.4544983769, 3.3745198391, 2.4587260866, -160.997997748133933},
    {0.9837582684, 11.4352599053, 3.9405095523, 3.8879711275, 2.3297608824, -198.164122511009889},
    {0.9845051322, 12.4290284003, 4.4410854296, 4.3981329108, 2.2101255711, -239.342109957522552},
    {0.9855992166, 13.4215377457, 4.9157074391, 4.9081858887, 2.1444738860, -284.529096804018849},
    {0.9862557929, 14.4127628023, 5.4143261889, 5.4155068635, 2.0619065963, -333.722657673972560},
};

constexpr Limit122Row kNeLimit[] = {
    {8.6570632990, 2.4931381677, 2.3442354210, -98.696504505301074},
    {9.6422656782, 2.8793495290, 2.8790280249, -127.812181115375182},
    {10.6257577291, 3.2805307120, 3.4025074345, -160.948024896361785},
    {11.6102825640, 3.6892018603, 3.9201044426, -198.095253106736642},
    {12.6159102418, 4.1010109078, 4.4345855008, -239.248443465904755},
    {13.5740214130, 4.5199081014, 4.9376272806, -284.405521637001334},
    {14.5420231886, 4.9525834019, 5.4341676062, -333.562006026325598},
};

constexpr Dz112222Row kNeDz[] = {
    {0.9968747986, {1.7546849714, 5.8813541022, 6.7502499772, 9.5085545706, 3.8374776750, 1.5173018282}, -99.438077954353993},
    {0.9982593378, {9.7271242395, 2.0618904534, 7.9434490396, 13.1648186693, 4.6702488162, 2.0508938267}, -128.535981712887771},
    {0.9950146384, {9.3056711417, 2.4505657837, 10.6646823365, 7.7244954605, 2.2532393242, 4.8397442843}, -161.647891959363061},
    {0.9981279176, {8.6313456480, 2.8333213164, 8.4501758064, 11.1447466879, 3.0418510394, 6.1411223457}, -198.824335695833906},
    {0.9923097835, {15.6703265866, 3.2425511727, 9.5037481035, 14.3486034355, 5.7914915716, 3.2720608325}, -239.942562433418995},
    {0.9964091871, {7.3748647781, 3.7119029269, 8.9465440937, 13.1178909915, 6.9420610108, 3.8275244614}, -285.163129118075236},
    {0.9980322501, {14.9502845306, 3.8362227840, 14.8646586715, 11.8794871225, 11.8724313940, 5.1684166250}, -334.255572068375186},
};

std::string atomId(const char* label) {
  std::string out;
  for (const char* c = label; *c; ++c) {
    if (*c == '+') out += 'p';
    else if (*c == '-') out += 'm';
    else out += static_cast<char>(std::tolower(static_cast<unsigned char>(*c)));
  }
  return out;
}

std::vector<CaseRecord> buildCases() {
  std::vector<CaseRecord> cases;

  for (int i = 0; i < 7; ++i) {
    const SeriesAtom& atom = kBeSeries[i];
    const std::string aid = atomId(atom.label);
    {
      const MinimalRow& row = kBeMinimal[i];
      CaseRecord c;
      c.id = aid + "/12/opt";
      c.group = "be-series";
      c.atomLabel = atom.label;
      c.Z = atom.Z;
      c.nElectrons = 4;
      c.basisNotation = "12";
      c.nu = row.nu;
      c.alphaPolicy = AlphaPolicy::Optimized;
      c.alpha = row.alpha;
      c.zetas = {row.z1, row.z2};
      c.referenceEnergy = row.energy;
      c.source = "be-series minimal (12), nu/zeta/alpha optimized";
      cases.push_back(std::move(c));
    }
    {
      const Limit12Row& row = kBeLimit12[i];
      CaseRecord c;
      c.id = aid + "/12/limit3";
      c.group = "be-series";
      c.atomLabel = atom.label;
      c.Z = atom.Z;
      c.nElectrons = 4;
      c.basisNotation = "12";
      c.nu = 1.0;
      c.alphaPolicy = AlphaPolicy::FixedLimit;
      c.alpha = 2.99999;
      c.zetas = {row.z1, row.z2};
      c.referenceEnergy = row.energy;
      c.source = "be-series minimal (12), alpha->3 limit";
      cases.push_back(std::move(c));
    }
    {
      const Dz1111Row& row = kBeDz[i];
      CaseRecord c;
      c.id = aid + "/1111/a2";
      c.group = "be-series";
      c.atomLabel = atom.label;
      c.Z = atom.Z;
      c.nElectrons = 4;
      c.basisNotation = "1111";
      c.nu = row.nu;
      c.alphaPolicy = AlphaPolicy::FixedTwo;
      c.alpha = 2.0;
      c.zetas.assign(row.z, row.z + 4);
      c.referenceEnergy = row.energy;
      c.source = "be-series double-zeta (1111), alpha=2";
      cases.push_back(std::move(c));
    }
    {
      const Limit1111Row& row = kBeDzLimit[i];
      CaseRecord c;
      c.id = aid + "/1111/limit3";
      c.group = "be-series";
      c.atomLabel = atom.label;
      c.Z = atom.Z;
      c.nElectrons = 4;
      c.basisNotation = "1111";
      c.nu = 1.0;
      c.alphaPolicy = AlphaPolicy::FixedLimit;
      c.alpha = 2.99999;
      c.zetas.assign(row.z, row.z + 4);
      c.referenceEnergy = row.energy;
      c.source = "be-series double-zeta (1111), alpha->3 limit";
      cases.push_back(std::move(c));
    }
  }

  for (int i = 0; i < 7; ++i) {
    const SeriesAtom& atom = kNeSeries[i];
    const std::string aid = atomId(atom.label);
    {
      const Minimal122Row& row = kNeMinimal[i];
      CaseRecord c;
      c.id = aid + "/12-2/opt";
      c.group = "ne-series";
      c.atomLabel = atom.label;
      c.Z = atom.Z;
      c.nElectrons = 10;
      c.basisNotation = "12-2";
      c.nu = row.nu;
      if (row.alpha < 0.0) {
        c.alphaPolicy = AlphaPolicy::Recovered;
        c.source = "ne-series minimal (12-2); alpha not tabulated, recovered "
                   "variationally";
      } else {
        c.alphaPolicy = AlphaPolicy::Optimized;
        c.alpha = row.alpha;
        c.source = "ne-series minimal (12-2), nu/zeta/alpha optimized";
      }
      c.zetas = {row.z1s, row.z2s, row.z2p};
      c.referenceEnergy = row.energy;
      cases.push_back(std::move(c));
    }
    {
      const Limit122Row& row = kNeLimit[i];
      CaseRecord c;
      c.id = aid + "/12-2/limit3";
      c.group = "ne-series";
      c.atomLabel = atom.label;
      c.Z = atom.Z;
      c.nElectrons = 10;
      c.basisNotation = "12-2";
      c.nu = 1.0;
      c.alphaPolicy = AlphaPolicy::FixedLimit;
      c.alpha = 2.99999;
      c.zetas = {row.z1s, row.z2s, row.z2p};
      c.referenceEnergy = row.energy;
      c.source = "ne-series minimal (12-2), alpha->3 limit";
      cases.push_back(std::move(c));
    }
    {
      const Dz112222Row& row = kNeDz[i];
      CaseRecord c;
      c.id = aid + "/1122-22/a2";
      c.group = "ne-series";
      c.atomLabel = atom.label;
      c.Z = atom.Z;
      c.nElectrons = 10;
      c.basisNotation = "1122-22";
      c.nu = row.nu;
      c.alphaPolicy = AlphaPolicy::FixedTwo;
      c.alpha = 2.0;
      c.zetas.assign(row.z, row.z + 6);
      c.referenceEnergy = row.energy;
      c.source = "ne-series double-zeta (1122-22), alpha=2";
      cases.push_back(std::move(c));
    }
  }

  {
    // Near-limit Be run: five 1s + five 2s, nu/alpha/zeta all optimized.
    CaseRecord c;
    c.id = "be/1111122222/hf-limit";
    c.group = "hf-limit";
    c.atomLabel = "Be";
    c.Z = 4;
    c.nElectrons = 4;
    c.basisNotation = "1111122222";
    c.nu = 1.0000101316;
    c.alphaPolicy = AlphaPolicy::Optimized;
    c.alpha = 0.0535028025;
    c.zetas = {0.7633436854, 1.4663467859, 3.7216392141, 14.6100042129,
               7.1950350726, 1.2110077606, 2.8443073746, 5.7451359725,
               9.0880240131, 3.4077574368};
    c.referenceEnergy = -14.573023166999873;
    c.source = "be near-limit run (1111122222)";
    cases.push_back(std::move(c));
  }

  return cases;
}

}  // namespace

const std::vector<CaseRecord>& embeddedCases() {
  static const std::vector<CaseRecord> cases = buildCases();
  return cases;
}

std::vector<const CaseRecord*> selectCases(const std::string& selector) {
  std::string sel;
  for (char c : selector)
    sel += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  std::vector<const CaseRecord*> out;
  for (const CaseRecord& c : embeddedCases()) {
    std::string label;
    for (char ch : c.atomLabel)
      label += static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
    const bool match = sel.empty() || sel == "all" || sel == c.group ||
                       sel == label || c.id.rfind(sel, 0) == 0;
    if (match) out.push_back(&c);
  }
  return out;
}

}  // namespace aetos
