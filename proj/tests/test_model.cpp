#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "beq/errors.hpp"
#include "beq/model.hpp"

using namespace beq;

TEST_CASE("presets carry the documented parameter tuples") {
  const ModelParams ch = load_preset("CamassaHolm");
  CHECK(ch.alpha == 1.0);
  CHECK(ch.c0 == 0.0);
  CHECK(ch.b == 2.0);
  CHECK(ch.gamma == 0.0);
  CHECK(ch.c1 == 2.0);
  CHECK(ch.c2 == 1.0);

  const ModelParams fw = load_preset("fornberg-whitham");
  CHECK(fw.alpha == 1.0);
  CHECK(fw.c0 == -1.0);
  CHECK(fw.b == 0.5);
  CHECK(fw.c1 == 4.5);
  CHECK(fw.c2 == 1.5);

  const ModelParams dp = load_preset("dp");
  CHECK(dp.b == 3.0);
  CHECK(dp.c1 == 3.0);
  CHECK(dp.c2 == 1.0);

  const ModelParams kdv = load_preset("KdV");
  CHECK(kdv.alpha == 0.0);
  CHECK(kdv.gamma == 1.0);
  CHECK(kdv.b == 2.0);
}

TEST_CASE("unknown preset names are rejected") {
  CHECK_THROWS_AS(load_preset("burgers"), InputError);
}

TEST_CASE("classification of the presets") {
  const RegimeReport ch = classify(load_preset("ch"));
  CHECK(ch.verdict == Regime::Stable);
  CHECK(ch.ratio_a == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(ch.ratio_b == doctest::Approx(4.0 / 3.0).epsilon(1e-14));

  const RegimeReport dp = classify(load_preset("dp"));
  CHECK(dp.verdict == Regime::Stable);
  CHECK(dp.ratio_a == doctest::Approx(0.75).epsilon(1e-14));
  CHECK(dp.ratio_b == doctest::Approx(1.5).epsilon(1e-14));

  const RegimeReport fw = classify(load_preset("fw"));
  CHECK(fw.verdict == Regime::Unstable);
  CHECK(fw.ratio_a == doctest::Approx(-3.0).epsilon(1e-14));

  CHECK(classify(load_preset("kdv")).verdict == Regime::NotApplicable);
}

TEST_CASE("b = -1 is rejected") {
  ModelParams p = load_preset("ch");
  p.b = -1.0;
  CHECK_THROWS_AS(classify(p), InputError);
}

TEST_CASE("classification is independent of alpha") {
  for (double c1 : {-1.0, 0.5, 2.0, 3.5, 5.0}) {
    for (double c2 : {-2.0, 0.0, 1.0, 4.0}) {
      ModelParams p = load_preset("ch");
      p.c1 = c1;
      p.c2 = c2;
      const RegimeReport base = classify(p);
      for (double alpha : {0.1, -2.0, 7.0}) {
        p.alpha = alpha;
        const RegimeReport r = classify(p);
        CHECK(r.ratio_a == base.ratio_a);
        CHECK(r.ratio_b == base.ratio_b);
        CHECK(r.verdict == base.verdict);
        CHECK(r.verdict != Regime::NotApplicable);
      }
    }
  }
}

TEST_CASE("boundary cases of the verdict") {
  // numerator_a = 0 forces ratio_b = (1 + 2B)/B, negative only for -1/2 < B < 0.
  ModelParams q = load_preset("ch");
  q.b = -1.25;
  q.c1 = 0.0;
  q.c2 = 0.5;
  CHECK(classify(q).numerator_a == doctest::Approx(0.0));
  CHECK(classify(q).ratio_b == doctest::Approx(-2.0));
  CHECK(classify(q).verdict == Regime::Unstable);

  ModelParams p = load_preset("ch");  // B = 3
  // numerator_a = 0 with ratio_b > 0 stays open
  p.c1 = 3.0;
  p.c2 = 0.0;
  CHECK(classify(p).verdict == Regime::Unclassified);
  // ratio_a > 0, ratio_b <= 0
  p.c1 = 0.0;
  p.c2 = 2.0;
  CHECK(classify(p).ratio_a > 0.0);
  CHECK(classify(p).verdict == Regime::Unclassified);
}

TEST_CASE("regime zero test uses a relative tolerance") {
  // FW-like rationals: c1 chosen so that numerator_a vanishes up to rounding.
  ModelParams p = load_preset("fw");
  p.c2 = 0.1;
  p.c1 = (2.0 * p.b_plus_one() + p.c2) / 2.0;
  const RegimeReport r = classify(p);
  CHECK(r.numerator_a == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(r.verdict != Regime::Stable);
}

TEST_CASE("Gamma and c0 do not influence the verdict") {
  ModelParams p = load_preset("dp");
  const RegimeReport base = classify(p);
  p.gamma = 3.0;
  p.c0 = -2.5;
  CHECK(classify(p).verdict == base.verdict);
  CHECK(classify(p).ratio_a == base.ratio_a);
}

TEST_CASE("decay exponent and classify share one value") {
  for (const char* name : {"ch", "dp", "fw"}) {
    const ModelParams p = load_preset(name);
    CHECK(stable_decay_exponent(p) == classify(p).ratio_a);
  }
}
