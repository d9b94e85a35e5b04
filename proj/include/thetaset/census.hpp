#ifndef THETASET_CENSUS_HPP
#define THETASET_CENSUS_HPP

#include <vector>

#include "thetaset/arith.hpp"
#include "thetaset/theta.hpp"

namespace thetaset {

// per-residue member counts: counts[a] = B(x, q, a), sum over a = B(x)
struct ResidueHistogram {
  u64 x = 0;
  u64 q = 1;
  std::vector<u64> counts;
};

// Two-sided bracket around the count of multiples of q:
//   lower = B_lifted(x/q) - R(x,q), mid = B_q(x), upper = B_lifted(x/q)
struct SandwichReport {
  u64 x = 0;
  u64 q = 0;
  i64 lower = 0;
  u64 mid = 0;
  u64 upper = 0;
  bool pass = false;
};

// B(x); B(0) == 0
u64 count(const ThetaSpec& spec, u64 x, const PrimeTables& tables,
          unsigned workers = 1);

// members congruent to a mod q; a is normalized into [0, q)
u64 count_class(const ThetaSpec& spec, u64 x, u64 q, i64 a,
                const PrimeTables& tables, unsigned workers = 1);

// B_q(x): members divisible by q
u64 count_multiples(const ThetaSpec& spec, u64 x, u64 q,
                    const PrimeTables& tables, unsigned workers = 1);

// members with gcd(n, q) exactly d; requires d | q
u64 count_gcd_class(const ThetaSpec& spec, u64 x, u64 q, u64 d,
                    const PrimeTables& tables, unsigned workers = 1);

// the inclusion-exclusion sum over m | q/d of mu(m) B_{dm}(x); equals
// count_gcd_class exactly
i64 mobius_rhs(const ThetaSpec& spec, u64 x, u64 q, u64 d,
               const PrimeTables& tables, unsigned workers = 1);

// all q residue buckets in one enumeration pass
ResidueHistogram histogram(const ThetaSpec& spec, u64 x, u64 q,
                           const PrimeTables& tables, unsigned workers = 1);

// B_q(x) / B(x)
double r_empirical(const ThetaSpec& spec, u64 x, u64 q,
                   const PrimeTables& tables, unsigned workers = 1);

// R(x, q) = |{n <= x/q : theta(n) < P+(q)}|, by exact scan
u64 r_count(const ThetaSpec& spec, u64 x, u64 q, const PrimeTables& tables);

// requires a monotone, unlifted spec
SandwichReport sandwich_check(const ThetaSpec& spec, u64 x, u64 q,
                              const PrimeTables& tables, unsigned workers = 1);

// prime-table limit sufficient for sandwich_check(spec, x, q)
u64 sandwich_table_limit(const ThetaSpec& spec, u64 x, u64 q);

}  // namespace thetaset

#endif  // THETASET_CENSUS_HPP
