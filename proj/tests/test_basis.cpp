#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "aetos/basis.hpp"
#include "aetos/errors.hpp"
#include "support/quadrature.hpp"

using namespace aetos;

TEST_CASE("notation parsing: block structure") {
  const NotationSkeleton s1 = parseNotation("12", BasisFamily::BHETO);
  REQUIRE(s1.pByChannel.size() == 1);
  CHECK(s1.pByChannel[0] == std::vector<int>{0, 1});

  const NotationSkeleton s2 = parseNotation("1122-22", BasisFamily::BHETO);
  REQUIRE(s2.pByChannel.size() == 2);
  CHECK(s2.pByChannel[0] == std::vector<int>{0, 0, 1, 1});
  CHECK(s2.pByChannel[1] == std::vector<int>{1, 1});

  const NotationSkeleton s3 = parseNotation("1111122-22223", BasisFamily::STF);
  REQUIRE(s3.pByChannel.size() == 2);
  CHECK(s3.pByChannel[0] == std::vector<int>{0, 0, 0, 0, 0, 1, 1});
  CHECK(s3.pByChannel[1] == std::vector<int>{1, 1, 1, 1, 2});
}

TEST_CASE("notation parsing: rejections and round trip") {
  CHECK_THROWS_AS(parseNotation("12-1", BasisFamily::BHETO), ConstraintError);
  CHECK_THROWS_AS(parseNotation("12--2", BasisFamily::BHETO), ConstraintError);
  CHECK_THROWS_AS(parseNotation("-12", BasisFamily::BHETO), ConstraintError);
  CHECK_THROWS_AS(parseNotation("12-", BasisFamily::BHETO), ConstraintError);
  CHECK_THROWS_AS(parseNotation("", BasisFamily::BHETO), ConstraintError);
  CHECK_THROWS_AS(parseNotation("1a2", BasisFamily::BHETO), ConstraintError);
  CHECK_THROWS_AS(parseNotation("102", BasisFamily::BHETO), ConstraintError);

  for (const char* s : {"12", "1111", "12-2", "1122-22", "1111122-22223"}) {
    CHECK(serializeNotation(parseNotation(s, BasisFamily::BHETO)) == s);
  }
}

TEST_CASE("BHETO construction: nodeless case and normalization") {
  const BasisFunction f = buildBasisFunction(BasisFamily::BHETO, 0, 0, 1.0, 2.0, 1.0);
  REQUIRE(f.primitives.size() == 1);
  CHECK(f.primitives[0].power == doctest::Approx(0.0));
  CHECK(f.normConstant == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
  // unit norm under the weighted measure r^(2-alpha) dr
  CHECK(testing::weightedNormQuad(f, 2.0) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("STF construction") {
  const BasisFunction f = buildBasisFunction(BasisFamily::STF, 0, 0, 1.0, 2.0, 2.0);
  REQUIRE(f.primitives.size() == 1);
  CHECK(f.primitives[0].power == doctest::Approx(0.0));
  CHECK(f.normConstant == doctest::Approx(5.6568542495).epsilon(1e-10));
}

TEST_CASE("BHETO degenerates to a nodeless STF as alpha -> 3") {
  const BasisFunction f =
      buildBasisFunction(BasisFamily::BHETO, 0, 1, 1.0, 2.99999, 1.0);
  REQUIRE(f.primitives.size() == 2);
  const double ratio =
      std::fabs(f.primitives[0].coefficient / f.primitives[1].coefficient);
  CHECK(ratio > 1e-6);
  CHECK(ratio < 1e-4);

  // pointwise agreement with the normalized 2s STF after rescaling away the
  // overall normalization difference
  const BasisFunction stf = buildBasisFunction(BasisFamily::STF, 0, 1, 1.0, 2.0, 1.0);
  const double fRef = evaluateRadial(f, 1.0);
  const double sRef = evaluateRadial(stf, 1.0);
  for (double r : {0.1, 0.5, 2.0, 5.0, 10.0}) {
    const double a = evaluateRadial(f, r) / fRef;
    const double b = evaluateRadial(stf, r) / sRef;
    CHECK(a == doctest::Approx(b).epsilon(1e-4));
  }

  const BasisFunction f9 =
      buildBasisFunction(BasisFamily::BHETO, 0, 1, 1.0, 3.0 - 1e-9, 1.0);
  const double f9Ref = evaluateRadial(f9, 1.0);
  for (double r : {0.1, 0.5, 2.0, 5.0, 10.0}) {
    const double a = evaluateRadial(f9, r) / f9Ref;
    const double b = evaluateRadial(stf, r) / sRef;
    CHECK(a == doctest::Approx(b).epsilon(1e-9));
  }
}

TEST_CASE("radial evaluation values") {
  const BasisFunction stf = buildBasisFunction(BasisFamily::STF, 0, 0, 1.0, 2.0, 1.0);
  CHECK(evaluateRadial(stf, 1.0) ==
        doctest::Approx(2.0 * std::exp(-1.0)).epsilon(1e-12));

  const BasisFunction bh = buildBasisFunction(BasisFamily::BHETO, 0, 0, 1.0, 2.0, 1.0);
  CHECK(evaluateRadial(bh, 0.5) ==
        doctest::Approx(std::sqrt(2.0) * std::exp(-0.5)).epsilon(1e-12));

  // Frozen from an extended-precision expansion of the same formula.
  const BasisFunction b2 =
      buildBasisFunction(BasisFamily::BHETO, 0, 1, 0.98, 2.5, 1.0);
  CHECK(evaluateRadial(b2, 2.0) ==
        doctest::Approx(-0.588858204068366021).epsilon(1e-12));

  CHECK_THROWS_AS(evaluateRadial(stf, 0.0), std::domain_error);
}

TEST_CASE("constraint rejections carry the failed inequality") {
  CHECK_THROWS_WITH_AS(
      buildBasisFunction(BasisFamily::BHETO, 0, 0, 0.9, 3.1, 1.0),
      doctest::Contains("alpha < 2l + 2nu + 1"), ConstraintError);
  CHECK_THROWS_AS(buildBasisFunction(BasisFamily::STF, 0, 0, 1.0, 2.0, -1.0),
                  ConstraintError);
  CHECK_THROWS_AS(buildBasisFunction(BasisFamily::BHETO, 1, 0, 1.0, 2.0, 1.0),
                  ConstraintError);  // p < l
  CHECK_THROWS_AS(buildBasisFunction(BasisFamily::NSTF, 0, 0, -0.2, 2.0, 1.0),
                  ConstraintError);  // n* <= 0
}

TEST_CASE("BHETO channel orthonormal under the weighted measure at equal zeta") {
  const double nu = 0.9, alpha = 1.7, zeta = 2.3;
  std::vector<BasisFunction> fs;
  for (int p = 0; p <= 3; ++p)
    fs.push_back(buildBasisFunction(BasisFamily::BHETO, 0, p, nu, alpha, zeta));
  for (size_t i = 0; i < fs.size(); ++i) {
    for (size_t j = i; j < fs.size(); ++j) {
      const double q = testing::integrateSemiInfinite(
          [&](double r) {
            return evaluateRadial(fs[i], r) * evaluateRadial(fs[j], r) *
                   std::pow(r, 2.0 - alpha);
          },
          2.0 * zeta, 2.0 * (nu - 1.0) + 2.0 - alpha);
      CHECK(std::fabs(q - (i == j ? 1.0 : 0.0)) < 1e-10);
    }
  }
}

TEST_CASE("weighted norm is 1 for randomized valid parameters") {
  std::mt19937 rng(31337);
  std::uniform_real_distribution<double> nuD(0.55, 1.1);
  std::uniform_real_distribution<double> zD(0.2, 15.0);
  std::uniform_real_distribution<double> aD(0.5, 2.9);
  for (int trial = 0; trial < 40; ++trial) {
    const int l = static_cast<int>(rng() % 2);
    const int p = l + static_cast<int>(rng() % (3 - l));
    const double nu = nuD(rng);
    double alpha = std::min(aD(rng), 2.0 * l + 2.0 * nu + 1.0 - 0.05);
    const double zeta = zD(rng);
    const BasisFunction f =
        buildBasisFunction(BasisFamily::BHETO, l, p, nu, alpha, zeta);
    CHECK(testing::weightedNormQuad(f, alpha) ==
          doctest::Approx(1.0).epsilon(1e-10));
  }
}

TEST_CASE("basis set assembly: zeta binding, shared-parameter checks") {
  const NotationSkeleton skel = parseNotation("1122-22", BasisFamily::BHETO);
  const std::vector<double> zetas{9.7, 2.1, 7.9, 13.2, 4.7, 2.1};
  const BasisSetSpec spec = assembleBasisSet(skel, 0.998, 2.0, zetas);
  REQUIRE(spec.dimension(0) == 4);
  REQUIRE(spec.dimension(1) == 2);
  CHECK(spec.channels.at(0)[2].p == 1);
  CHECK(spec.channels.at(0)[2].zeta == doctest::Approx(7.9));
  CHECK(spec.channels.at(1)[0].zeta == doctest::Approx(4.7));
  CHECK(spec.notation == "1122-22");
  CHECK(spec.sharedNu == doctest::Approx(0.998));

  CHECK_THROWS_AS(assembleBasisSet(skel, 0.998, 2.0, {1.0, 2.0}),
                  ConstraintError);  // zeta count mismatch
  CHECK_THROWS_AS(assembleBasisSet(skel, 0.5, 2.0, zetas),
                  ConstraintError);  // nu at the open lower bound
  CHECK_THROWS_AS(assembleBasisSet(skel, 1.2, 2.0, zetas),
                  ConstraintError);  // nu above nu_max
  CHECK_THROWS_AS(assembleBasisSet(skel, 0.998, 2.996, zetas),
                  ConstraintError);  // alpha >= 2 nu + 1
}

TEST_CASE("kinetic integrability guards the nu > 1/2 region") {
  const NotationSkeleton skel = parseNotation("12", BasisFamily::NSTF);
  // n* = 0.3 and 1.3: the (1,1) pair has m + m' = 0.6 < 1
  BasisBuildOptions opts;
  CHECK_THROWS_WITH_AS(assembleBasisSet(skel, 0.3, 2.0, {1.0, 2.0}, opts),
                       doctest::Contains("kinetic integrability"),
                       ConstraintError);
  // n* = 0.8: fine
  CHECK_NOTHROW(assembleBasisSet(skel, 0.8, 2.0, {1.0, 2.0}, opts));
}

TEST_CASE("cusp diagnostic classes") {
  const double Z = 2.0;
  // single STF 1s with zeta = Z: exact cusp
  const BasisFunction s1 = buildBasisFunction(BasisFamily::STF, 0, 0, 1.0, 2.0, Z);
  const CuspReport r1 = cuspDiagnostic({s1}, {1.0}, Z);
  CHECK(r1.kind == CuspReport::Kind::FiniteRatio);
  CHECK(r1.ratio == doctest::Approx(-Z).epsilon(1e-12));
  CHECK(r1.satisfied);

  // BHETO with nu < 1 diverges at the origin
  const BasisFunction b =
      buildBasisFunction(BasisFamily::BHETO, 0, 0, 0.98, 2.0, 1.0);
  const CuspReport r2 = cuspDiagnostic({s1, b}, {0.7, 0.3}, Z);
  CHECK(r2.kind == CuspReport::Kind::DivergentAtOrigin);

  // two 1s STFs: ratio from the closed form
  const BasisFunction sA = buildBasisFunction(BasisFamily::STF, 0, 0, 1.0, 2.0, 1.0);
  const BasisFunction sB = buildBasisFunction(BasisFamily::STF, 0, 0, 1.0, 2.0, 2.5);
  const double c1 = 0.8, c2 = 0.4;
  const CuspReport r3 = cuspDiagnostic({sA, sB}, {c1, c2}, Z);
  const double n1 = sA.normConstant, n2 = sB.normConstant;
  const double expect = -(c1 * n1 * 1.0 + c2 * n2 * 2.5) / (c1 * n1 + c2 * n2);
  CHECK(r3.kind == CuspReport::Kind::FiniteRatio);
  CHECK(r3.ratio == doctest::Approx(expect).epsilon(1e-12));

  // nu > 1 vanishes at the origin
  const BasisFunction bHigh =
      buildBasisFunction(BasisFamily::BHETO, 0, 0, 1.05, 2.0, 1.0);
  const CuspReport r4 = cuspDiagnostic({bHigh}, {1.0}, Z);
  CHECK(r4.kind == CuspReport::Kind::VanishingAtOrigin);
}
