#pragma once

// Closed-form one-center integrals over reduced radial functions u = r R
// expanded in primitives: overlap, kinetic, nuclear attraction, and the
// two-electron Slater radial integrals R^k assembled from the two-range
// kernel W. Everything reduces to gamma-function moments and the
// restricted hypergeometric series 2F1(1, b; c; z).

#include <map>
#include <utility>
#include <vector>

#include "aetos/angular.hpp"
#include "aetos/basis.hpp"
#include "aetos/linalg.hpp"

namespace aetos {

// Elementary moment: integral of r^mu e^(-beta r) over [0, inf)
// = Gamma(mu+1)/beta^(mu+1). Requires mu > -1, beta > 0.
double basicA(double mu, double beta);

// Matrix elements over u = r R with measure dr.
double overlap(const BasisFunction& f, const BasisFunction& g);
double kinetic(const BasisFunction& f, const BasisFunction& g);
double nuclear(const BasisFunction& f, const BasisFunction& g, double Z);

// Evaluation route for the two-range kernel. GeneralOnly bypasses the
// integer-exponent fast path (used to cross-check it).
enum class WRoute { Auto, GeneralOnly };

// W(a,b1,b,k,b2) = int int s^a e^(-b1 s) t^b e^(-b2 t) r_<^k / r_>^(k+1) ds dt.
// Requires a + k > -1, b + k > -1, a + b > -1.
double twoRangeW(double a, double beta1, double b, int k, double beta2,
                 WRoute route = WRoute::Auto);

// Slater radial integral R^k(ab;cd): electron 1 carries the (a,b) pair.
double slaterRk(const BasisFunction& fa, const BasisFunction& fb,
                const BasisFunction& fc, const BasisFunction& fd, int k,
                WRoute route = WRoute::Auto);

// Dense 4-index block with dims (n1, n1, n2, n2).
class Tensor4 {
 public:
  Tensor4() = default;
  Tensor4(int n1, int n2)
      : n1_(n1), n2_(n2),
        data_(static_cast<size_t>(n1) * n1 * n2 * n2, 0.0) {}
  double& at(int p, int q, int r, int s) {
    return data_[((static_cast<size_t>(p) * n1_ + q) * n2_ + r) * n2_ + s];
  }
  double at(int p, int q, int r, int s) const {
    return data_[((static_cast<size_t>(p) * n1_ + q) * n2_ + r) * n2_ + s];
  }
  int dim1() const { return n1_; }
  int dim2() const { return n2_; }

 private:
  int n1_ = 0, n2_ = 0;
  std::vector<double> data_;
};

struct ChannelMatrices {
  Matrix S, T, V, h;  // h = T + V
};

struct ChannelPairTensors {
  // coulomb.at(p,q,r,s) = R^0((p q)_l ; (r s)_l')
  Tensor4 coulomb;
  // exchange[k].at(p,q,r,s) = R^k((p r); (q s)), p,q in l and r,s in l'
  std::map<int, Tensor4> exchange;
};

struct IntegralTables {
  std::map<int, ChannelMatrices> channels;
  std::map<std::pair<int, int>, ChannelPairTensors> pairs;  // all ordered pairs
};

IntegralTables buildIntegralTables(const BasisSetSpec& basis, double Z,
                                   const AngularTable& angular,
                                   WRoute route = WRoute::Auto);

}  // namespace aetos
