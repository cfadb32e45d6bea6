#pragma once

// Angular factors for closed-shell atomic Fock operators: allowed multipole
// orders k and the m-averaged exchange weights
// Lambda_k(l,l') = [3j(l k l'; 0 0 0)]^2.

#include <map>
#include <utility>
#include <vector>

namespace aetos {

// Squared zero-projection Wigner 3j symbol. Returns 0 when the triangle
// inequality fails or l + k + l' is odd.
double threeJZeroSquared(int l, int k, int lp);

struct AngularTable {
  // (l, l') -> ascending list of (k, Lambda_k)
  std::map<std::pair<int, int>, std::vector<std::pair<int, double>>> entries;

  const std::vector<std::pair<int, double>>& at(int l, int lp) const;
};

AngularTable angularTable(int lMax);

}  // namespace aetos
