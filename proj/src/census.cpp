#include "thetaset/census.hpp"

#include <numeric>
#include <string>

#include "thetaset/genset.hpp"

namespace thetaset {

namespace {

u64 normalize_residue(i64 a, u64 q) {
  if (a >= 0) return static_cast<u64>(a) % q;
  const u64 mag = static_cast<u64>(-(a + 1)) + 1;  // |a|, safe at INT64_MIN
  const u64 r = mag % q;
  return r == 0 ? 0 : q - r;
}

template <class Pred>
u64 count_if_members(const ThetaSpec& spec, u64 x, const PrimeTables& tables,
                     unsigned workers, Pred pred) {
  return reduce_members<u64>(
      spec, x, tables, workers, 0,
      [&pred](u64& acc, u64 n, const Factorization&) {
        if (pred(n)) ++acc;
      },
      [](u64& a, u64&& b) { a += b; });
}

}  // namespace

u64 count(const ThetaSpec& spec, u64 x, const PrimeTables& tables,
          unsigned workers) {
  return count_if_members(spec, x, tables, workers, [](u64) { return true; });
}

u64 count_class(const ThetaSpec& spec, u64 x, u64 q, i64 a,
                const PrimeTables& tables, unsigned workers) {
  if (q < 1) throw std::invalid_argument("count_class: q must be >= 1");
  const u64 r = normalize_residue(a, q);
  return count_if_members(spec, x, tables, workers,
                          [q, r](u64 n) { return n % q == r; });
}

u64 count_multiples(const ThetaSpec& spec, u64 x, u64 q,
                    const PrimeTables& tables, unsigned workers) {
  if (q < 1) throw std::invalid_argument("count_multiples: q must be >= 1");
  return count_if_members(spec, x, tables, workers,
                          [q](u64 n) { return n % q == 0; });
}

u64 count_gcd_class(const ThetaSpec& spec, u64 x, u64 q, u64 d,
                    const PrimeTables& tables, unsigned workers) {
  if (q < 1 || d < 1 || q % d != 0)
    throw std::invalid_argument("count_gcd_class: d must divide q");
  return count_if_members(spec, x, tables, workers,
                          [q, d](u64 n) { return std::gcd(n, q) == d; });
}

i64 mobius_rhs(const ThetaSpec& spec, u64 x, u64 q, u64 d,
               const PrimeTables& tables, unsigned workers) {
  if (q < 1 || d < 1 || q % d != 0)
    throw std::invalid_argument("mobius_rhs: d must divide q");
  // squarefree divisors m of q/d carry mu(m) = (-1)^(number of primes)
  const Factorization cofactor = trial_factorize(q / d);
  const std::size_t k = cofactor.factors.size();
  i64 sum = 0;
  for (u64 mask = 0; mask < (u64{1} << k); ++mask) {
    u64 m = 1;
    int sign = 1;
    for (std::size_t i = 0; i < k; ++i) {
      if (mask & (u64{1} << i)) {
        m *= cofactor.factors[i].p;
        sign = -sign;
      }
    }
    sum += sign * static_cast<i64>(count_multiples(spec, x, d * m, tables, workers));
  }
  return sum;
}

ResidueHistogram histogram(const ThetaSpec& spec, u64 x, u64 q,
                           const PrimeTables& tables, unsigned workers) {
  if (q < 1) throw std::invalid_argument("histogram: q must be >= 1");
  ResidueHistogram h;
  h.x = x;
  h.q = q;
  h.counts = reduce_members<std::vector<u64>>(
      spec, x, tables, workers, std::vector<u64>(q, 0),
      [q](std::vector<u64>& acc, u64 n, const Factorization&) { ++acc[n % q]; },
      [](std::vector<u64>& a, std::vector<u64>&& b) {
        for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
      });
  return h;
}

double r_empirical(const ThetaSpec& spec, u64 x, u64 q,
                   const PrimeTables& tables, unsigned workers) {
  const u64 total = count(spec, x, tables, workers);
  if (total == 0) throw std::invalid_argument("r_empirical: B(x) is empty");
  const u64 mult = count_multiples(spec, x, q, tables, workers);
  return static_cast<double>(mult) / static_cast<double>(total);
}

u64 r_count(const ThetaSpec& spec, u64 x, u64 q, const PrimeTables& tables) {
  if (q < 2) throw std::invalid_argument("r_count: q must be >= 2");
  const u64 pq = pplus(trial_factorize(q));
  u64 hi = x / q;
  // dense and practical thresholds satisfy theta(n) > n, so theta(n) < P+(q)
  // forces n < P+(q); the scan can stop there
  const ThetaKind kind = spec.kind();
  if (kind == ThetaKind::Dense || kind == ThetaKind::Practical)
    hi = std::min(hi, pq - 1);
  u64 hits = 0;
  for (u64 n = 1; n <= hi; ++n) {
    const Factorization f = factorize(n, tables);
    if (theta_eval(spec, f).below(pq)) ++hits;
  }
  return hits;
}

SandwichReport sandwich_check(const ThetaSpec& spec, u64 x, u64 q,
                              const PrimeTables& tables, unsigned workers) {
  if (q < 2) throw std::invalid_argument("sandwich_check: q must be >= 2");
  if (!spec.monotone() || spec.kind() == ThetaKind::Lifted)
    throw std::invalid_argument("sandwich_check: requires a monotone, unlifted spec");
  const ThetaSpec lifted = lift_q(spec, q);
  SandwichReport rep;
  rep.x = x;
  rep.q = q;
  rep.upper = count(lifted, x / q, tables, workers);
  rep.mid = count_multiples(spec, x, q, tables, workers);
  rep.lower = static_cast<i64>(rep.upper) - static_cast<i64>(r_count(spec, x, q, tables));
  rep.pass = rep.lower <= static_cast<i64>(rep.mid) && rep.mid <= rep.upper;
  return rep;
}

u64 sandwich_table_limit(const ThetaSpec& spec, u64 x, u64 q) {
  const ThetaSpec lifted = lift_q(spec, q);
  u64 limit = std::max(branch_prime_bound(spec, x),
                       branch_prime_bound(lifted, x / q));
  limit = std::max(limit, std::min(x / q, x));  // spf fast path for the R scan
  return std::max<u64>(limit, 16);
}

}  // namespace thetaset
