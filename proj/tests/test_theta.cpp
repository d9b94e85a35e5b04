#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "thetaset/theta.hpp"

using namespace thetaset;

namespace {

ExtendedBound eval_at(const ThetaSpec& spec, u64 n, const PrimeTables& t) {
  return theta_eval(spec, factorize(n, t));
}

}  // namespace

TEST_CASE("table of variants evaluates per definition") {
  PrimeTables t(1000);
  const auto practical = ThetaSpec::practical();
  const auto pp = ThetaSpec::prime_powers();
  const auto d2 = ThetaSpec::dense(2);

  CHECK(eval_at(practical, 4, t).num() == 8);  // sigma(4) + 1
  CHECK(eval_at(pp, 1, t).is_infinite());
  CHECK(eval_at(pp, 8, t).num() == 2);
  CHECK(eval_at(d2, 6, t).num() == 12);
  CHECK(eval_at(d2, 6, t).den() == 1);

  const auto ap2 = ThetaSpec::almost_prime(2);
  CHECK(eval_at(ap2, 6, t).num() == 3);  // omega = 2 = k, so P+
  CHECK(eval_at(ap2, 8, t).is_infinite());

  const auto s7 = ThetaSpec::smooth(7);
  CHECK(eval_at(s7, 1, t).num() == 7);
  CHECK(eval_at(s7, 22, t).num() == 11);  // max(7, P+)
}

TEST_CASE("half-integer dense ratio stays exact") {
  PrimeTables t(100);
  const auto d52 = ThetaSpec::dense(5, 2);
  const auto b = eval_at(d52, 3, t);  // 15/2
  CHECK(b.num() == 15);
  CHECK(b.den() == 2);
  CHECK(b.admits(7));
  CHECK_FALSE(b.admits(8));
  CHECK(b.below(8));
  CHECK_FALSE(b.below(7));
  // dense:6/4 reduces to 3/2... rejected (3 < 2*2); dense:6/2 reduces to 3
  CHECK_THROWS_AS(ThetaSpec::dense(6, 4), std::invalid_argument);
  CHECK(ThetaSpec::dense(6, 2).dense_num() == 3);
}

TEST_CASE("prime_fits boundary is inclusive") {
  PrimeTables t(100);
  CHECK_FALSE(prime_fits(ThetaSpec::practical(), factorize(2, t), 5));  // theta(2)=4
  CHECK(prime_fits(ThetaSpec::dense(2), factorize(1, t), 2));           // 2 <= 2
  CHECK(prime_fits(ThetaSpec::almost_prime(2), factorize(1, t), 1000000007ull));
}

TEST_CASE("theta respects floor constraints for every variant") {
  PrimeTables t(3000);
  const ThetaSpec specs[] = {ThetaSpec::practical(),    ThetaSpec::prime_powers(),
                             ThetaSpec::dense(2),       ThetaSpec::dense(5, 2),
                             ThetaSpec::smooth(7),      ThetaSpec::almost_prime(3)};
  for (const auto& spec : specs) {
    const auto at1 = eval_at(spec, 1, t);
    CHECK(at1.admits(2));  // theta(1) >= 2
    for (u64 n = 2; n <= 3000; ++n) {
      const Factorization f = factorize(n, t);
      CHECK(theta_eval(spec, f).admits(pplus(f)));  // theta(n) >= P+(n)
    }
  }
}

TEST_CASE("monotone variants satisfy theta(n) <= theta(mn)") {
  PrimeTables t(1000001);
  const ThetaSpec specs[] = {ThetaSpec::practical(), ThetaSpec::dense(2),
                             ThetaSpec::dense(5, 2), ThetaSpec::smooth(7)};
  for (const auto& spec : specs) {
    for (u64 n = 1; n <= 1000; ++n) {
      const auto bn = eval_at(spec, n, t);
      for (u64 m = 1; m <= 1000; ++m) {
        const auto bmn = eval_at(spec, m * n, t);
        // bn <= bmn, exact cross multiply
        const bool le = static_cast<u128>(bn.num()) * bmn.den() <=
                        static_cast<u128>(bmn.num()) * bn.den();
        if (!le) {
          CAPTURE(spec.describe());
          CAPTURE(n);
          CAPTURE(m);
          REQUIRE(le);
        }
      }
    }
  }
}

TEST_CASE("lift examples") {
  PrimeTables t(100);
  const auto l3 = lift_q(ThetaSpec::dense(2), 3);
  CHECK(eval_at(l3, 1, t).num() == 2);   // theta(1)=2 < 3, unchanged
  CHECK(eval_at(l3, 2, t).num() == 12);  // 3 <= theta(2)=4, so theta(6)=12

  const auto l4 = lift_q(ThetaSpec::practical(), 4);
  CHECK(eval_at(l4, 1, t).num() == 8);  // absorbs 2 then 2: sigma(4)+1

  const auto l12 = lift_q(ThetaSpec::practical(), 12);
  CHECK(std::vector<u64>(l12.modulus_primes().begin(), l12.modulus_primes().end()) ==
        std::vector<u64>{2, 2, 3});
}

TEST_CASE("lift preconditions") {
  CHECK_THROWS_AS(lift_q(ThetaSpec::prime_powers(), 3), std::invalid_argument);
  CHECK_THROWS_AS(lift_q(ThetaSpec::almost_prime(2), 3), std::invalid_argument);
  CHECK_THROWS_AS(lift_q(ThetaSpec::dense(2), 1), std::invalid_argument);
  const auto once = lift_q(ThetaSpec::dense(2), 3);
  CHECK_THROWS_AS(lift_q(once, 2), std::invalid_argument);
}

TEST_CASE("lift bracket: theta_q vs theta") {
  PrimeTables t(200000);
  const ThetaSpec specs[] = {ThetaSpec::practical(), ThetaSpec::dense(2),
                             ThetaSpec::dense(3), ThetaSpec::smooth(7)};
  for (const auto& spec : specs) {
    for (u64 q : {2, 3, 4, 9, 12}) {
      const auto lifted = lift_q(spec, q);
      const u64 q1 = lifted.modulus_primes().front();
      for (u64 n = 1; n <= 2000; ++n) {
        const auto base = eval_at(spec, n, t);
        const auto up = eval_at(lifted, n, t);
        if (base.below(q1)) {
          // theta(n) < q_1: lifted value identical
          CHECK(up.num() == base.num());
          CHECK(up.den() == base.den());
        } else {
          // theta_q(n) >= theta(n)
          CHECK(static_cast<u128>(base.num()) * up.den() <=
                static_cast<u128>(up.num()) * base.den());
        }
      }
    }
  }
}

TEST_CASE("dense lift equals t * n * absorbed prefix") {
  PrimeTables t(2000);
  for (u64 q : {2, 3, 6, 8, 15}) {
    const auto lifted = lift_q(ThetaSpec::dense(2), q);
    const auto qp = lifted.modulus_primes();
    for (u64 n = 1; n <= 500; ++n) {
      // apply the rule directly: absorb q_i while q_i <= 2 * (n * prefix)
      u64 g = n;
      for (u64 qi : qp) {
        if (qi <= 2 * g)
          g *= qi;
        else
          break;
      }
      CHECK(eval_at(lifted, n, t).num() == 2 * g);
    }
  }
}

TEST_CASE("spec string grammar") {
  CHECK(parse_theta("practical").kind() == ThetaKind::Practical);
  CHECK(parse_theta("prime-powers").kind() == ThetaKind::PrimePowers);
  CHECK(parse_theta("dense:2").dense_num() == 2);
  CHECK(parse_theta("dense:5/2").dense_den() == 2);
  CHECK(parse_theta("smooth:7").smooth_y() == 7);
  CHECK(parse_theta("almost-prime:3").almost_k() == 3);

  CHECK_THROWS_AS(parse_theta("dense:1"), std::invalid_argument);
  CHECK_THROWS_AS(parse_theta("dense:3/2"), std::invalid_argument);
  CHECK_THROWS_AS(parse_theta("smooth:1"), std::invalid_argument);
  CHECK_THROWS_AS(parse_theta("almost-prime:0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_theta("dense:x"), std::invalid_argument);
  CHECK_THROWS_AS(parse_theta("dense:2/0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_theta("primes"), std::invalid_argument);
  CHECK_THROWS_AS(parse_theta(""), std::invalid_argument);

  CHECK(parse_theta("dense:5/2").describe() == "dense:5/2");
  CHECK(parse_theta("practical").describe() == "practical");
  CHECK(lift_q(parse_theta("dense:2"), 12).describe() == "dense:2[q=12]");
}

TEST_CASE("value bound covers observed thresholds") {
  PrimeTables t(300000);
  const ThetaSpec specs[] = {ThetaSpec::practical(), ThetaSpec::dense(3),
                             ThetaSpec::smooth(7),
                             lift_q(ThetaSpec::practical(), 12),
                             lift_q(ThetaSpec::dense(2), 20)};
  for (const auto& spec : specs) {
    const u64 bound = theta_value_bound(spec, 5000);
    for (u64 n = 1; n <= 5000; ++n) {
      const auto b = eval_at(spec, n, t);
      if (!b.is_infinite()) CHECK(b.num() <= static_cast<u128>(bound) * b.den());
    }
  }
}
