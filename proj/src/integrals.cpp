#include "aetos/integrals.hpp"

#include <array>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "aetos/specfun.hpp"

namespace aetos {

namespace {

// Extended-precision accumulator: keeps the assembled tables independent of
// summation order (function permutations flip the pair-expansion order).
struct KahanSum {
  long double acc = 0.0L;
  void add(double x) { acc += x; }
  double value() const { return static_cast<double>(acc); }
};

// One term of a reduced-radial pair product u_f u_g: c r^a e^(-beta r),
// a = mu_f + mu_g + 2.
struct PairTerm {
  double c;
  double a;
  double beta;
};

std::vector<PairTerm> pairTerms(const BasisFunction& f, const BasisFunction& g) {
  std::vector<PairTerm> terms;
  terms.reserve(f.primitives.size() * g.primitives.size());
  for (const auto& pf : f.primitives)
    for (const auto& pg : g.primitives)
      terms.push_back({pf.coefficient * pg.coefficient,
                       pf.power + pg.power + 2.0,
                       pf.exponent + pg.exponent});
  return terms;
}

}  // namespace

double basicA(double mu, double beta) {
  if (!(mu > -1.0)) {
    std::ostringstream os;
    os << "basicA: requires mu > -1, got mu = " << mu;
    throw std::domain_error(os.str());
  }
  if (!(beta > 0.0)) {
    std::ostringstream os;
    os << "basicA: requires beta > 0, got beta = " << beta;
    throw std::domain_error(os.str());
  }
  return std::exp(logGamma(mu + 1.0) - (mu + 1.0) * std::log(beta));
}

double overlap(const BasisFunction& f, const BasisFunction& g) {
  KahanSum s;
  for (const auto& t : pairTerms(f, g)) s.add(t.c * basicA(t.a, t.beta));
  return s.value();
}

double kinetic(const BasisFunction& f, const BasisFunction& g) {
  if (f.l != g.l)
    throw std::invalid_argument("kinetic: functions from different channels");
  const double ll = static_cast<double>(f.l) * (f.l + 1);
  KahanSum s;
  for (const auto& pf : f.primitives) {
    for (const auto& pg : g.primitives) {
      const double m1 = pf.power + 1.0;  // reduced powers
      const double m2 = pg.power + 1.0;
      const double beta = pf.exponent + pg.exponent;
      const double c = pf.coefficient * pg.coefficient;
      // (1/2) int u_f' u_g' + (l(l+1)/2) int u_f u_g / r^2
      double v = pf.exponent * pg.exponent * basicA(m1 + m2, beta) -
                 (m1 * pg.exponent + m2 * pf.exponent) * basicA(m1 + m2 - 1.0, beta);
      const double w = m1 * m2 + ll;
      if (w != 0.0) v += w * basicA(m1 + m2 - 2.0, beta);
      s.add(0.5 * c * v);
    }
  }
  return s.value();
}

double nuclear(const BasisFunction& f, const BasisFunction& g, double Z) {
  KahanSum s;
  for (const auto& t : pairTerms(f, g)) s.add(t.c * basicA(t.a - 1.0, t.beta));
  return -Z * s.value();
}

namespace {

// T(p, beta; q, delta) = int_0^inf x^p e^(-beta x) gamma(q+1, delta x) / delta^(q+1) dx
//                      = Gamma(p+q+2) / ((q+1)(beta+delta)^(p+q+2))
//                        * 2F1(1, p+q+2; q+2; delta/(beta+delta)).
// The series has positive terms; it is summed directly for z <= 0.6 and via
// the complement T = Gamma(q+1)Gamma(p+1)/(delta^(q+1) beta^(p+1)) - T(q,delta;p,beta)
// otherwise, where the swapped term sees argument 1 - z.
double termDirectSeries(double p, double beta, double q, double delta,
                        bool* converged) {
  const double z = delta / (beta + delta);
  const HypergeometricSum f = gauss2F1Restricted(p + q + 2.0, q + 2.0, z);
  if (converged) *converged = f.converged;
  return std::exp(logGamma(p + q + 2.0) - std::log(q + 1.0) -
                  (p + q + 2.0) * std::log(beta + delta)) *
         f.value;
}

double termIntegerFast(double p, double beta, int qi, double delta) {
  // gamma(q+1, x) = q! (1 - e^-x sum_{m<=q} x^m/m!), exact for integer q.
  const double full = std::exp(logGamma(p + 1.0) - (p + 1.0) * std::log(beta));
  KahanSum partial;
  for (int m = 0; m <= qi; ++m) {
    partial.add(std::exp(m * std::log(delta) - logGamma(m + 1.0) +
                         logGamma(p + m + 1.0) -
                         (p + m + 1.0) * std::log(beta + delta)));
  }
  const double bracket = full - partial.value();
  if (!(bracket > 1e-4 * full)) return -1.0;  // cancellation; caller re-routes
  return std::exp(logGamma(qi + 1.0) - (qi + 1.0) * std::log(delta)) * bracket;
}

double termT(double p, double beta, double q, double delta, WRoute route) {
  const double z = delta / (beta + delta);

  if (route == WRoute::Auto && p > -1.0 + 1e-9 && z >= 0.5) {
    const double qr = std::round(q);
    if (qr >= 0.0 && std::fabs(q - qr) < 1e-12) {
      const double fast = termIntegerFast(p, beta, static_cast<int>(qr), delta);
      if (fast >= 0.0) return fast;
    }
  }

  if (z <= 0.6 || !(p > -1.0 + 1e-12)) {
    bool ok = false;
    const double direct = termDirectSeries(p, beta, q, delta, &ok);
    if (ok) return direct;
    if (!(p > -1.0 + 1e-12))
      throw std::runtime_error("twoRangeW: series did not converge and the "
                               "complementary route is unavailable (p <= -1)");
    // fall through to the complement
  }

  const double full = std::exp(logGamma(q + 1.0) + logGamma(p + 1.0) -
                               (q + 1.0) * std::log(delta) -
                               (p + 1.0) * std::log(beta));
  bool ok = false;
  const double swapped = termDirectSeries(q, delta, p, beta, &ok);  // arg 1-z
  if (!ok)
    throw std::runtime_error("twoRangeW: both series routes failed to converge");
  const double result = full - swapped;
  if (result > 1e-4 * full) return result;

  // Heavy cancellation: the direct series is still well-conditioned, just slow.
  const double direct = termDirectSeries(p, beta, q, delta, &ok);
  if (!ok)
    throw std::runtime_error("twoRangeW: both series routes failed to converge");
  return direct;
}

}  // namespace

double twoRangeW(double a, double beta1, double b, int k, double beta2,
                 WRoute route) {
  if (k < 0) throw std::domain_error("twoRangeW: requires k >= 0");
  if (!(beta1 > 0.0) || !(beta2 > 0.0))
    throw std::domain_error("twoRangeW: requires beta1, beta2 > 0");
  if (!(a + k > -1.0) || !(b + k > -1.0) || !(a + b > -1.0)) {
    std::ostringstream os;
    os << "twoRangeW: requires a+k > -1, b+k > -1, a+b > -1; got a = " << a
       << ", b = " << b << ", k = " << k;
    throw std::domain_error(os.str());
  }
  // Region s < t: outer t^(b-k-1), inner moment of s^(a+k); and the mirror.
  return termT(b - k - 1.0, beta2, a + k, beta1, route) +
         termT(a - k - 1.0, beta1, b + k, beta2, route);
}

double slaterRk(const BasisFunction& fa, const BasisFunction& fb,
                const BasisFunction& fc, const BasisFunction& fd, int k,
                WRoute route) {
  KahanSum s;
  for (const auto& t1 : pairTerms(fa, fb))
    for (const auto& t2 : pairTerms(fc, fd))
      s.add(t1.c * t2.c * twoRangeW(t1.a, t1.beta, t2.a, k, t2.beta, route));
  return s.value();
}

namespace {

// Memoized R^k over unordered function pairs; the value depends only on the
// pair sets {a,b}, {c,d} and is symmetric under pair exchange.
class RkEvaluator {
 public:
  RkEvaluator(const std::vector<BasisFunction>& e1,
              const std::vector<BasisFunction>& e2, bool samePool, int k,
              WRoute route)
      : e1_(e1), e2_(e2), samePool_(samePool), k_(k), route_(route) {}

  double operator()(int a, int b, int c, int d) {
    int p1 = std::min(a, b), q1 = std::max(a, b);
    int p2 = std::min(c, d), q2 = std::max(c, d);
    if (samePool_ && (p2 < p1 || (p2 == p1 && q2 < q1))) {
      std::swap(p1, p2);
      std::swap(q1, q2);
    }
    const long key = ((static_cast<long>(p1) * 64 + q1) * 64 + p2) * 64 + q2;
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    const double v = slaterRk(e1_[p1], e1_[q1], e2_[p2], e2_[q2], k_, route_);
    memo_[key] = v;
    return v;
  }

 private:
  const std::vector<BasisFunction>& e1_;
  const std::vector<BasisFunction>& e2_;
  bool samePool_;
  int k_;
  WRoute route_;
  std::map<long, double> memo_;
};

}  // namespace

IntegralTables buildIntegralTables(const BasisSetSpec& basis, double Z,
                                   const AngularTable& angular, WRoute route) {
  IntegralTables tables;
  for (const auto& [l, fs] : basis.channels) {
    const int n = static_cast<int>(fs.size());
    ChannelMatrices cm{Matrix(n, n), Matrix(n, n), Matrix(n, n), Matrix(n, n)};
    for (int i = 0; i < n; ++i) {
      for (int j = i; j < n; ++j) {
        const double s = overlap(fs[i], fs[j]);
        const double t = kinetic(fs[i], fs[j]);
        const double v = nuclear(fs[i], fs[j], Z);
        cm.S(i, j) = cm.S(j, i) = s;
        cm.T(i, j) = cm.T(j, i) = t;
        cm.V(i, j) = cm.V(j, i) = v;
        cm.h(i, j) = cm.h(j, i) = t + v;
      }
    }
    tables.channels[l] = std::move(cm);
  }

  for (const auto& [l, fl] : basis.channels) {
    for (const auto& [lp, flp] : basis.channels) {
      if (lp < l) continue;  // fill (lp, l) from (l, lp) below
      const int n1 = static_cast<int>(fl.size());
      const int n2 = static_cast<int>(flp.size());
      ChannelPairTensors pair;

      // Coulomb block: electron 1 pair from l, electron 2 pair from l'.
      pair.coulomb = Tensor4(n1, n2);
      {
        RkEvaluator rk(fl, flp, l == lp, 0, route);
        for (int p = 0; p < n1; ++p)
          for (int q = p; q < n1; ++q)
            for (int r = 0; r < n2; ++r)
              for (int s = r; s < n2; ++s) {
                const double v = rk(p, q, r, s);
                pair.coulomb.at(p, q, r, s) = v;
                pair.coulomb.at(q, p, r, s) = v;
                pair.coulomb.at(p, q, s, r) = v;
                pair.coulomb.at(q, p, s, r) = v;
              }
      }

      // Exchange blocks: electron 1 pair (p, r) mixes the channels.
      for (const auto& [k, lambda] : angular.at(l, lp)) {
        (void)lambda;
        Tensor4 ex(n1, n2);
        std::map<long, double> memo;
        for (int p = 0; p < n1; ++p)
          for (int q = 0; q < n1; ++q)
            for (int r = 0; r < n2; ++r)
              for (int s = 0; s < n2; ++s) {
                // R^k((p r); (q s)) keyed by the unordered pair of pairs.
                long k1 = static_cast<long>(p) * 64 + r;
                long k2 = static_cast<long>(q) * 64 + s;
                if (k2 < k1) std::swap(k1, k2);
                const long key = k1 * 4096 + k2;
                auto it = memo.find(key);
                double v;
                if (it != memo.end()) {
                  v = it->second;
                } else {
                  const int pp = static_cast<int>(k1 / 64);
                  const int rr = static_cast<int>(k1 % 64);
                  const int qq = static_cast<int>(k2 / 64);
                  const int ss = static_cast<int>(k2 % 64);
                  v = slaterRk(fl[pp], flp[rr], fl[qq], flp[ss], k, route);
                  memo[key] = v;
                }
                ex.at(p, q, r, s) = v;
              }
        pair.exchange[k] = std::move(ex);
      }
      tables.pairs[{l, lp}] = std::move(pair);
    }
  }

  // Mirror blocks for l > l' by swapping index groups.
  for (const auto& [l, fl] : basis.channels) {
    for (const auto& [lp, flp] : basis.channels) {
      if (lp >= l) continue;
      const auto& src = tables.pairs.at({lp, l});
      const int n1 = static_cast<int>(fl.size());
      const int n2 = static_cast<int>(flp.size());
      ChannelPairTensors pair;
      pair.coulomb = Tensor4(n1, n2);
      for (int p = 0; p < n1; ++p)
        for (int q = 0; q < n1; ++q)
          for (int r = 0; r < n2; ++r)
            for (int s = 0; s < n2; ++s)
              pair.coulomb.at(p, q, r, s) = src.coulomb.at(r, s, p, q);
      for (const auto& [k, ex] : src.exchange) {
        Tensor4 t(n1, n2);
        for (int p = 0; p < n1; ++p)
          for (int q = 0; q < n1; ++q)
            for (int r = 0; r < n2; ++r)
              for (int s = 0; s < n2; ++s)
                t.at(p, q, r, s) = ex.at(r, s, p, q);
        pair.exchange[k] = std::move(t);
      }
      tables.pairs[{l, lp}] = std::move(pair);
    }
  }
  return tables;
}

}  // namespace aetos
