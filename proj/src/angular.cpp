#include "aetos/angular.hpp"

#include <cmath>
#include <stdexcept>

#include "aetos/specfun.hpp"

namespace aetos {

double threeJZeroSquared(int l, int k, int lp) {
  if (l < 0 || k < 0 || lp < 0)
    throw std::domain_error("threeJZeroSquared: negative angular momentum");
  const int J = l + k + lp;
  if (J % 2 != 0) return 0.0;
  if (k < std::abs(l - lp) || k > l + lp) return 0.0;
  const int g = J / 2;
  // [3j]^2 = (2g-2l)!(2g-2k)!(2g-2lp)!/(2g+1)! * [g!/((g-l)!(g-k)!(g-lp)!)]^2
  const double lgDelta = logGamma(J - 2 * l + 1.0) + logGamma(J - 2 * k + 1.0) +
                         logGamma(J - 2 * lp + 1.0) - logGamma(J + 2.0);
  const double lgRatio = logGamma(g + 1.0) - logGamma(g - l + 1.0) -
                         logGamma(g - k + 1.0) - logGamma(g - lp + 1.0);
  return std::exp(lgDelta + 2.0 * lgRatio);
}

const std::vector<std::pair<int, double>>& AngularTable::at(int l, int lp) const {
  auto it = entries.find({l, lp});
  if (it == entries.end())
    throw std::out_of_range("AngularTable: channel pair not tabulated");
  return it->second;
}

AngularTable angularTable(int lMax) {
  AngularTable table;
  for (int l = 0; l <= lMax; ++l) {
    for (int lp = 0; lp <= lMax; ++lp) {
      std::vector<std::pair<int, double>> ks;
      for (int k = std::abs(l - lp); k <= l + lp; k += 2)
        ks.emplace_back(k, threeJZeroSquared(l, k, lp));
      table.entries[{l, lp}] = std::move(ks);
    }
  }
  return table;
}

}  // namespace aetos
