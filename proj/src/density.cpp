#include "thetaset/density.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "thetaset/genset.hpp"

namespace thetaset {

MertensTables::MertensTables(u64 limit, std::size_t max_bytes) : limit_(limit) {
  if (limit < 2) throw std::invalid_argument("MertensTables: limit must be >= 2");
  if (max_bytes != 0 && estimate_bytes(limit) > max_bytes)
    throw ResourceError("MertensTables: limit " + std::to_string(limit) +
                        " exceeds the configured memory budget");

  // odds-only sieve; the cumulative arrays are what we keep
  const u64 half = limit / 2 + 1;
  std::vector<bool> composite(half, false);
  for (u64 i = 1; 2 * i + 1 <= limit / (2 * i + 1); ++i) {
    if (composite[i]) continue;
    const u64 p = 2 * i + 1;
    for (u64 j = (p * p) / 2; j < half; j += p) composite[j] = true;
  }
  const double dl = static_cast<double>(limit);
  primes_.reserve(static_cast<std::size_t>(1.26 * dl / std::log(dl)) + 16);
  primes_.push_back(2);
  for (u64 i = 1; 2 * i + 1 <= limit; ++i)
    if (!composite[i]) primes_.push_back(2 * i + 1);

  s_.resize(primes_.size());
  p_.resize(primes_.size());
  double sum = 0, comp = 0, prod = 1;
  for (std::size_t i = 0; i < primes_.size(); ++i) {
    const double p = static_cast<double>(primes_[i]);
    const double term = std::log(p) / (p - 1.0);
    const double y = term - comp;  // Kahan
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
    prod *= 1.0 - 1.0 / p;
    s_[i] = sum;
    p_[i] = prod;
  }
}

std::size_t MertensTables::index_of(u64 num, u64 den) const {
  if (den == 0) throw std::invalid_argument("MertensTables: zero denominator");
  if (num / den > limit_)
    throw ResourceError("MertensTables: query " + std::to_string(num / den) +
                        " beyond table limit " + std::to_string(limit_));
  // largest index with primes_[i] * den <= num
  std::size_t lo = 0, hi = primes_.size();
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (static_cast<u128>(primes_[mid]) * den <= num)
      lo = mid + 1;
    else
      hi = mid;
  }
  return lo;  // count of primes <= num/den
}

double MertensTables::log_weight_sum(u64 num, u64 den) const {
  const std::size_t k = index_of(num, den);
  return k == 0 ? 0.0 : s_[k - 1];
}

double MertensTables::coprime_density(u64 num, u64 den) const {
  const std::size_t k = index_of(num, den);
  return k == 0 ? 1.0 : p_[k - 1];
}

double MertensTables::scale() {
  static const double value = 1.0 / (1.0 - std::exp(-kEulerGamma));
  return value;
}

std::size_t MertensTables::estimate_bytes(u64 limit) {
  const double dl = static_cast<double>(std::max<u64>(limit, 16));
  const double pi_bound = 1.26 * dl / std::log(dl) + 16;
  return static_cast<std::size_t>(pi_bound * (sizeof(u64) + 2 * sizeof(double)) +
                                  dl / 16 + 64);
}

namespace {

struct Kahan {
  double sum = 0;
  double comp = 0;
  void add(double term) {
    const double y = term - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
};

struct SeriesAcc {
  Kahan total;
  Kahan tail;
};

void require_series_spec(const ThetaSpec& spec) {
  const ThetaSpec& base = spec.kind() == ThetaKind::Lifted ? spec.base() : spec;
  if (base.kind() != ThetaKind::Dense && base.kind() != ThetaKind::Practical)
    throw std::invalid_argument(
        "density series is defined only for dense/practical thresholds "
        "(needs n <= theta(n) and theta(n) = O(sigma(n)))");
}

}  // namespace

DensityEstimate c_theta(const ThetaSpec& spec, u64 N, const PrimeTables& tables,
                        const MertensTables& mertens, unsigned workers) {
  require_series_spec(spec);
  if (N < 1) throw std::invalid_argument("c_theta: truncation must be >= 1");
  if (theta_value_bound(spec, N) > mertens.limit())
    throw ResourceError("c_theta: Mertens table limit " +
                        std::to_string(mertens.limit()) +
                        " below the largest threshold value for N = " +
                        std::to_string(N));

  const u64 tail_lo = N / 10;
  auto visit = [&](SeriesAcc& acc, u64 n, const Factorization& f) {
    const ExtendedBound b = theta_eval(spec, f);
    const double s = mertens.log_weight_sum(b.num(), b.den());
    const double p = mertens.coprime_density(b.num(), b.den());
    const double term =
        (s - std::log(static_cast<double>(n))) * p / static_cast<double>(n);
    acc.total.add(term);
    if (n > tail_lo) acc.tail.add(term);
  };
  auto merge = [](SeriesAcc& a, SeriesAcc&& b) {
    a.total.add(b.total.sum);
    a.total.add(-b.total.comp);
    a.tail.add(b.tail.sum);
    a.tail.add(-b.tail.comp);
  };

  const SeriesAcc acc =
      reduce_members<SeriesAcc>(spec, N, tables, workers, SeriesAcc{}, visit, merge);
  DensityEstimate est;
  est.value = MertensTables::scale() * acc.total.sum;
  est.truncation = N;
  est.tail_indicator = MertensTables::scale() * std::abs(acc.tail.sum);
  est.spec = spec.describe();
  return est;
}

double c_q(const ThetaSpec& spec, u64 q, u64 N, const PrimeTables& tables,
           const MertensTables& mertens, unsigned workers) {
  if (q == 1) return c_theta(spec, N, tables, mertens, workers).value;
  return c_theta(lift_q(spec, q), N, tables, mertens, workers).value /
         static_cast<double>(q);
}

namespace {

double r_q_with_base(const ThetaSpec& spec, u64 q, u64 N, const PrimeTables& tables,
                     const MertensTables& mertens, unsigned workers, double c_base) {
  if (q == 1) return 1.0;
  return c_q(spec, q, N, tables, mertens, workers) / c_base;
}

}  // namespace

double r_q(const ThetaSpec& spec, u64 q, u64 N, const PrimeTables& tables,
           const MertensTables& mertens, unsigned workers) {
  const double base = c_theta(spec, N, tables, mertens, workers).value;
  return r_q_with_base(spec, q, N, tables, mertens, workers, base);
}

double r_qa(const ThetaSpec& spec, u64 q, i64 a, u64 N, const PrimeTables& tables,
            const MertensTables& mertens, unsigned workers) {
  if (q < 1) throw std::invalid_argument("r_qa: q must be >= 1");
  u64 a_mod;
  if (a >= 0) {
    a_mod = static_cast<u64>(a) % q;
  } else {
    const u64 mag = static_cast<u64>(-(a + 1)) + 1;
    const u64 r = mag % q;
    a_mod = r == 0 ? 0 : q - r;
  }
  const u64 d = std::gcd(a_mod, q);  // gcd(0, q) == q covers a == 0
  const u64 cof = q / d;
  const double c_base = c_theta(spec, N, tables, mertens, workers).value;

  const Factorization cf = trial_factorize(cof);
  const std::size_t k = cf.factors.size();
  u64 phi = 1;
  for (const auto& [p, e] : cf.factors) {
    for (u32 i = 0; i + 1 < e; ++i) phi *= p;
    phi *= p - 1;
  }
  double sum = 0;
  for (u64 mask = 0; mask < (u64{1} << k); ++mask) {
    u64 m = 1;
    int sign = 1;
    for (std::size_t i = 0; i < k; ++i) {
      if (mask & (u64{1} << i)) {
        m *= cf.factors[i].p;
        sign = -sign;
      }
    }
    sum += sign * r_q_with_base(spec, d * m, N, tables, mertens, workers, c_base);
  }
  return sum / static_cast<double>(phi);
}

std::vector<std::pair<u64, double>> table_rq(const ThetaSpec& spec, u64 q_max,
                                             u64 N, const PrimeTables& tables,
                                             const MertensTables& mertens,
                                             unsigned workers) {
  if (q_max < 2) throw std::invalid_argument("table_rq: q_max must be >= 2");
  const double base = c_theta(spec, N, tables, mertens, workers).value;
  std::vector<std::pair<u64, double>> rows;
  rows.reserve(q_max - 1);
  for (u64 q = 2; q <= q_max; ++q)
    rows.emplace_back(q, r_q_with_base(spec, q, N, tables, mertens, workers, base));
  return rows;
}

u64 series_prime_limit(const ThetaSpec& spec, u64 q_max, u64 N) {
  u64 limit = branch_prime_bound(spec, N);
  for (u64 q = 2; q <= q_max; ++q)
    limit = std::max(limit, branch_prime_bound(lift_q(spec, q), N));
  return limit;
}

u64 series_mertens_limit(const ThetaSpec& spec, u64 q_max, u64 N) {
  u64 limit = theta_value_bound(spec, N);
  for (u64 q = 2; q <= q_max; ++q)
    limit = std::max(limit, theta_value_bound(lift_q(spec, q), N));
  return limit;
}

}  // namespace thetaset
