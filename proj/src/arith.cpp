#include "thetaset/arith.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace thetaset {

PrimeTables::PrimeTables(u64 limit, std::size_t max_bytes) : limit_(limit) {
  if (limit < 2) throw std::invalid_argument("PrimeTables: limit must be >= 2");
  if (limit > 0xFFFFFFFFull)
    throw ResourceError("PrimeTables: limit above 2^32 is not supported");
  if (max_bytes != 0 && estimate_bytes(limit) > max_bytes)
    throw ResourceError("PrimeTables: limit " + std::to_string(limit) +
                        " exceeds the configured memory budget");

  spf_.assign(limit + 1, 0);
  const double dl = static_cast<double>(limit);
  primes_.reserve(static_cast<std::size_t>(1.26 * dl / std::log(dl)) + 16);

  // linear sieve: every composite is crossed off once, by its least factor
  for (u64 i = 2; i <= limit; ++i) {
    if (spf_[i] == 0) {
      spf_[i] = static_cast<u32>(i);
      primes_.push_back(i);
    }
    for (u64 p : primes_) {
      if (p > spf_[i] || i * p > limit) break;
      spf_[i * p] = static_cast<u32>(p);
    }
  }
}

u32 PrimeTables::spf(u64 n) const {
  if (n < 2 || n > limit_)
    throw std::domain_error("spf: n = " + std::to_string(n) +
                            " outside [2, " + std::to_string(limit_) + "]");
  return spf_[n];
}

bool PrimeTables::is_prime(u64 n) const {
  if (n > limit_) throw std::domain_error("is_prime: n beyond table limit");
  return n >= 2 && spf_[n] == n;
}

std::size_t PrimeTables::index_above(u64 p) const {
  return static_cast<std::size_t>(
      std::upper_bound(primes_.begin(), primes_.end(), p) - primes_.begin());
}

std::size_t PrimeTables::estimate_bytes(u64 limit) {
  const double dl = static_cast<double>(std::max<u64>(limit, 16));
  const double pi_bound = 1.26 * dl / std::log(dl) + 16;
  return static_cast<std::size_t>((dl + 1) * sizeof(u32) + pi_bound * sizeof(u64));
}

Factorization factorize(u64 n, const PrimeTables& tables) {
  if (n == 0) throw std::invalid_argument("factorize: n must be >= 1");
  Factorization f;
  f.value = n;
  u64 m = n;
  // beyond the table: peel with stored primes until spf can take over
  std::size_t i = 0;
  const auto ps = tables.primes();
  while (m > tables.limit()) {
    bool advanced = false;
    for (; i < ps.size(); ++i) {
      const u64 p = ps[i];
      if (static_cast<u128>(p) * p > m) {
        f.factors.push_back({m, 1});  // remaining cofactor is prime
        m = 1;
        advanced = true;
        break;
      }
      if (m % p == 0) {
        u32 e = 0;
        do {
          m /= p;
          ++e;
        } while (m % p == 0);
        f.factors.push_back({p, e});
        ++i;
        advanced = true;
        break;
      }
    }
    if (!advanced)
      throw ResourceError("factorize: " + std::to_string(n) +
                          " is beyond the reach of the prime table");
  }
  while (m > 1) {
    const u64 p = tables.spf(m);
    u32 e = 0;
    do {
      m /= p;
      ++e;
    } while (m % p == 0);
    f.factors.push_back({p, e});
  }
  return f;
}

Factorization trial_factorize(u64 n) {
  if (n == 0) throw std::invalid_argument("trial_factorize: n must be >= 1");
  Factorization f;
  f.value = n;
  u64 m = n;
  for (u64 p = 2; static_cast<u128>(p) * p <= m; p += (p == 2 ? 1 : 2)) {
    if (m % p != 0) continue;
    u32 e = 0;
    do {
      m /= p;
      ++e;
    } while (m % p == 0);
    f.factors.push_back({p, e});
  }
  if (m > 1) f.factors.push_back({m, 1});
  return f;
}

u64 sigma(const Factorization& f) {
  u128 s = 1;
  for (const auto& [p, e] : f.factors) {
    u128 term = 1;
    u128 pw = 1;
    for (u32 i = 0; i < e; ++i) {
      pw *= p;
      term += pw;
    }
    s *= term;  // sigma(n) <= n (1 + ln n) < 2^70 for 64-bit n, no u128 overflow
  }
  if (s > std::numeric_limits<u64>::max())
    throw std::overflow_error("sigma: result exceeds 64 bits");
  return static_cast<u64>(s);
}

u64 omega(const Factorization& f) { return f.factors.size(); }

u64 pplus(const Factorization& f) {
  return f.factors.empty() ? 1 : f.factors.back().p;
}

int mobius(u64 m, const PrimeTables& tables) {
  if (m == 0) throw std::invalid_argument("mobius: m must be >= 1");
  const Factorization f = factorize(m, tables);
  for (const auto& pp : f.factors)
    if (pp.e >= 2) return 0;
  return (f.factors.size() % 2 == 0) ? 1 : -1;
}

u64 euler_phi(u64 q, const PrimeTables& tables) {
  if (q == 0) throw std::invalid_argument("euler_phi: q must be >= 1");
  u64 result = 1;
  for (const auto& [p, e] : factorize(q, tables).factors) {
    for (u32 i = 0; i + 1 < e; ++i) result *= p;
    result *= p - 1;
  }
  return result;
}

namespace {

u64 smooth_rec(std::span<const u64> ps, std::size_t j, u64 rem) {
  u64 total = 1;
  for (std::size_t i = j; i < ps.size() && ps[i] <= rem; ++i) {
    for (u64 r = rem / ps[i];; r /= ps[i]) {
      total += smooth_rec(ps, i + 1, r);
      if (r < ps[i]) break;
    }
  }
  return total;
}

}  // namespace

u64 smooth_count(u64 x, u64 y, const PrimeTables& tables) {
  if (x == 0) return 0;
  if (y == 0) throw std::invalid_argument("smooth_count: y must be >= 1");
  if (y >= x) return x;
  if (y < 2) return 1;
  if (tables.limit() < y)
    throw ResourceError("smooth_count: prime table does not reach y");
  const auto ps = tables.primes().subspan(0, tables.index_above(y));
  return smooth_rec(ps, 0, x);
}

u64 sigma_value_bound(u64 n) {
  if (n < 3) return n == 2 ? 3 : 1;
  if (n < 16) return 3 * n + 4;  // covers sigma(12) = 28
  const double dn = static_cast<double>(n);
  const double ll = std::log(std::log(dn));
  // Robin: sigma(m) < e^gamma m lnln m + 0.6483 m / lnln m  (m >= 3)
  const double bound = (1.7810724179901979852 * ll + 0.6483 / ll) * dn * 1.02 + 16;
  if (bound >= static_cast<double>(std::numeric_limits<u64>::max()))
    return std::numeric_limits<u64>::max();
  return static_cast<u64>(bound);
}

u64 isqrt_u64(u64 n) {
  if (n == 0) return 0;
  u64 r = static_cast<u64>(std::sqrt(static_cast<double>(n)));
  while (r > 0 && static_cast<u128>(r) * r > n) --r;
  while (static_cast<u128>(r + 1) * (r + 1) <= n) ++r;
  return r;
}

}  // namespace thetaset
