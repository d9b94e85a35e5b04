#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "thetaset/census.hpp"
#include "thetaset/genset.hpp"
#include "thetaset/laws.hpp"

using namespace thetaset;

TEST_CASE("inclusion law: worked example at q = 3") {
  PrimeTables t(1000);
  const auto rep = verify_inclusions(ThetaSpec::dense(2), 3, 12, t);
  CHECK(rep.pass());
  // the lifted set up to 12 is {1,2,4,6,8,10,12}
  CHECK(members(lift_q(ThetaSpec::dense(2), 3), 12, t, true) ==
        std::vector<u64>{1, 2, 4, 6, 8, 10, 12});
}

TEST_CASE("inclusion law across monotone specs") {
  PrimeTables t(200000);
  const ThetaSpec specs[] = {ThetaSpec::practical(), ThetaSpec::dense(2),
                             ThetaSpec::dense(3), ThetaSpec::smooth(7)};
  for (const auto& spec : specs)
    for (u64 q : {2, 3, 7, 12, 30}) {
      const auto rep = verify_inclusions(spec, q, 1000, t);
      CAPTURE(spec.describe());
      CAPTURE(q);
      CHECK(rep.pass());
    }
}

TEST_CASE("inclusion rejects non-monotone specs") {
  PrimeTables t(100);
  CHECK_THROWS_AS(verify_inclusions(ThetaSpec::prime_powers(), 3, 10, t),
                  std::invalid_argument);
  CHECK_THROWS_AS(verify_inclusions(ThetaSpec::almost_prime(2), 3, 10, t),
                  std::invalid_argument);
}

TEST_CASE("equidistribution report") {
  PrimeTables t(100000);
  const u64 xs[] = {1000, 100000};
  const auto rep = equidist_report(ThetaSpec::practical(), xs, 5, t);
  CHECK(rep.pass());  // never hard-fails
  REQUIRE(rep.rows.size() == 2);
  // columns: x, members, coprime_members, max_dev, dev_share, dev_scaled
  CHECK(rep.rows[0][0] == 1000);
  CHECK(rep.rows[1][0] == 100000);
  // decay of the normalized deviation
  CHECK(rep.rows[1][4] < rep.rows[0][4]);

  // q = 2: a single coprime class, so the deviation is exactly zero
  const u64 one_x[] = {10000};
  const auto rep2 = equidist_report(ThetaSpec::practical(), one_x, 2, t);
  CHECK(rep2.rows[0][3] == 0.0);

  // dense(2): every member above 1 is even, so odd classes hold at most n = 1
  const auto h = histogram(ThetaSpec::dense(2), 100000, 6, t);
  CHECK(h.counts[1] == 1);  // just n = 1
  CHECK(h.counts[3] == 0);
  CHECK(h.counts[5] == 0);
}

TEST_CASE("closure law: worked examples") {
  PrimeTables t(10000);
  {
    const ClosurePair pairs[] = {{4, 3}};
    const auto rep = closure_check(ThetaSpec::practical(), 2, pairs, t);
    CHECK(rep.pass());
    CHECK(rep.rejected.empty());
  }
  {
    const ClosurePair pairs[] = {{6, 4}};
    const auto rep = closure_check(ThetaSpec::dense(2), 3, pairs, t);
    CHECK(rep.pass());
    CHECK(rep.rejected.empty());
  }
  {
    // 7 is not 4-dense: rejected as a precondition failure, not a violation
    const ClosurePair pairs[] = {{6, 7}};
    const auto rep = closure_check(ThetaSpec::dense(2), 3, pairs, t);
    CHECK(rep.pass());
    REQUIRE(rep.rejected.size() == 1);
    CHECK(rep.rejected[0].find("dense") != std::string::npos);
  }
  {
    // m not a member, m <= q, n wrong residue
    const ClosurePair pairs[] = {{3, 4}, {2, 4}, {6, 5}};
    const auto rep = closure_check(ThetaSpec::dense(2), 3, pairs, t);
    CHECK(rep.rejected.size() == 3);
  }
  CHECK_THROWS_AS(closure_check(ThetaSpec::smooth(7), 2, {}, t),
                  std::invalid_argument);
}

TEST_CASE("closure law on sampled pairs") {
  PrimeTables t(20000);
  const ThetaSpec specs[] = {ThetaSpec::practical(), ThetaSpec::dense(2),
                             ThetaSpec::dense(3)};
  for (const auto& spec : specs)
    for (u64 q : {2, 5, 10}) {
      const auto pairs = sample_closure_pairs(spec, q, 200, 10000, 42, t);
      REQUIRE(pairs.size() == 200);
      const auto rep = closure_check(spec, q, pairs, t);
      CAPTURE(spec.describe());
      CAPTURE(q);
      CHECK(rep.pass());
      CHECK(rep.rejected.empty());  // sampler only draws valid pairs
    }
  // fixed seed reproduces the draw
  const auto a = sample_closure_pairs(ThetaSpec::practical(), 3, 50, 5000, 7, t);
  const auto b = sample_closure_pairs(ThetaSpec::practical(), 3, 50, 5000, 7, t);
  CHECK(std::equal(a.begin(), a.end(), b.begin(),
                   [](auto x, auto y) { return x.m == y.m && x.n == y.n; }));
}

TEST_CASE("progression classification mod 12") {
  PrimeTables t(100000);
  const auto spec = ThetaSpec::practical();
  const u64 bound = 100000;

  const auto c10 = classify_progression(spec, 12, 10, bound, t);
  CHECK(c10.verdict == ProgressionVerdict::Empty);
  CHECK(c10.heuristic);

  const auto c2 = classify_progression(spec, 12, 2, bound, t);
  CHECK(c2.verdict == ProgressionVerdict::Singleton);
  CHECK(c2.witness == 2);
  CHECK(c2.heuristic);

  const auto c4 = classify_progression(spec, 12, 4, bound, t);
  CHECK(c4.verdict == ProgressionVerdict::Infinite);
  CHECK_FALSE(c4.heuristic);

  // full classification: Infinite exactly where a member >= 12 exists
  for (u64 a = 0; a < 12; ++a) {
    const auto cls = classify_progression(spec, 12, static_cast<i64>(a), bound, t);
    const bool inf_expected = (a == 0 || a == 4 || a == 8 || a == 6);
    CHECK((cls.verdict == ProgressionVerdict::Infinite) == inf_expected);
    if (cls.verdict == ProgressionVerdict::Singleton) CHECK(cls.witness < 12);
  }
  // the two singletons mod 12 carry witnesses 1 and 2
  CHECK(classify_progression(spec, 12, 1, bound, t).witness == 1);
}

TEST_CASE("classification preconditions") {
  PrimeTables t(1000);
  CHECK_THROWS_AS(classify_progression(ThetaSpec::practical(), 100, 1, 50, t),
                  std::invalid_argument);  // bound < q
  CHECK_THROWS_AS(classify_progression(ThetaSpec::smooth(7), 12, 1, 1000, t),
                  std::invalid_argument);
  CHECK(to_string(ProgressionVerdict::Empty) == std::string("Empty"));
}
