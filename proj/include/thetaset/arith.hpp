#ifndef THETASET_ARITH_HPP
#define THETASET_ARITH_HPP

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace thetaset {

using u32 = std::uint32_t;
using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;

// Thrown when a table or enumeration would exceed its memory budget, or when
// a computation needs primes beyond the table limit.
class ResourceError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct PrimePower {
  u64 p;
  u32 e;
  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

// Ordered prime-power decomposition: value == product of p^e, factors
// strictly ascending in p, value == 1 iff factors is empty.
struct Factorization {
  u64 value = 1;
  std::vector<PrimePower> factors;
};

// Smallest-prime-factor table for 2..limit plus the ascending list of all
// primes <= limit. Immutable after construction, shareable across threads.
class PrimeTables {
public:
  // max_bytes == 0 means no budget check.
  explicit PrimeTables(u64 limit, std::size_t max_bytes = 0);

  u64 limit() const { return limit_; }
  std::span<const u64> primes() const { return primes_; }

  // least prime factor of n; requires 2 <= n <= limit
  u32 spf(u64 n) const;
  bool is_prime(u64 n) const;  // requires n <= limit

  // index of the first prime > p (primes().size() when there is none)
  std::size_t index_above(u64 p) const;

  static std::size_t estimate_bytes(u64 limit);

private:
  u64 limit_;
  std::vector<u32> spf_;
  std::vector<u64> primes_;
};

// Factorization via spf, falling back to trial division by the stored primes
// when n exceeds the table. Throws ResourceError when the table cannot reach
// sqrt of the remaining cofactor.
Factorization factorize(u64 n, const PrimeTables& tables);

// Plain trial division, independent of any table. Meant for small inputs
// (moduli, lift parameters), cost O(sqrt n).
Factorization trial_factorize(u64 n);

// sum of divisors; throws std::overflow_error instead of wrapping
u64 sigma(const Factorization& f);

u64 omega(const Factorization& f);
u64 pplus(const Factorization& f);  // largest prime factor, P+(1) = 1

int mobius(u64 m, const PrimeTables& tables);
u64 euler_phi(u64 q, const PrimeTables& tables);

// Psi(x, y): number of y-smooth integers <= x, counting n = 1
u64 smooth_count(u64 x, u64 y, const PrimeTables& tables);

// Unconditional upper bound on max sigma(m) for m <= n (Robin's inequality
// with slack). Used only for sizing tables, never for membership decisions.
u64 sigma_value_bound(u64 n);

u64 isqrt_u64(u64 n);

}  // namespace thetaset

#endif  // THETASET_ARITH_HPP
