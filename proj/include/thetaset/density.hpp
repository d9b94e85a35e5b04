#ifndef THETASET_DENSITY_HPP
#define THETASET_DENSITY_HPP

#include <string>
#include <utility>
#include <vector>

#include "thetaset/arith.hpp"
#include "thetaset/theta.hpp"

namespace thetaset {

// Cumulative prime sums/products needed by the density series:
//   S(y) = sum over primes p <= y of log p / (p - 1)
//   P(y) = product over primes p <= y of (1 - 1/p)
// indexed by the largest prime <= y; queries above the limit throw.
class MertensTables {
public:
  // max_bytes == 0 means no budget check
  explicit MertensTables(u64 limit, std::size_t max_bytes = 0);

  u64 limit() const { return limit_; }

  // y given exactly as num/den
  double log_weight_sum(u64 num, u64 den = 1) const;   // S(y)
  double coprime_density(u64 num, u64 den = 1) const;  // P(y)

  // Euler-Mascheroni constant, 20 digits (OEIS A001620)
  static constexpr double kEulerGamma = 0.57721566490153286061;
  // 1 / (1 - e^-gamma)
  static double scale();

  static std::size_t estimate_bytes(u64 limit);

private:
  std::size_t index_of(u64 num, u64 den) const;

  u64 limit_;
  std::vector<u64> primes_;
  std::vector<double> s_;
  std::vector<double> p_;
};

struct DensityEstimate {
  double value = 0;        // truncated series, scaled
  u64 truncation = 0;      // members up to this bound were summed
  double tail_indicator = 0;  // |contribution of members in (N/10, N]|
  std::string spec;
};

// Truncated series for the density constant: sum over members n <= N of
// (1/n)(S(theta(n)) - log n) P(theta(n)), scaled by 1/(1 - e^-gamma).
// Defined for dense and practical thresholds and their lifts.
DensityEstimate c_theta(const ThetaSpec& spec, u64 N, const PrimeTables& tables,
                        const MertensTables& mertens, unsigned workers = 1);

// c_q = c_{theta_q} / q (q == 1 gives the base constant)
double c_q(const ThetaSpec& spec, u64 q, u64 N, const PrimeTables& tables,
           const MertensTables& mertens, unsigned workers = 1);

// r_q = c_q / c_theta, both at the same truncation
double r_q(const ThetaSpec& spec, u64 q, u64 N, const PrimeTables& tables,
           const MertensTables& mertens, unsigned workers = 1);

// r_{q,a} = (1/phi(q/d)) sum over m | q/d of mu(m) r_{dm}, d = gcd(a, q)
double r_qa(const ThetaSpec& spec, u64 q, i64 a, u64 N, const PrimeTables& tables,
            const MertensTables& mertens, unsigned workers = 1);

// rows (q, r_q) for q = 2..q_max; the base constant is computed once
std::vector<std::pair<u64, double>> table_rq(const ThetaSpec& spec, u64 q_max,
                                             u64 N, const PrimeTables& tables,
                                             const MertensTables& mertens,
                                             unsigned workers = 1);

// table limits sufficient for the series at truncation N with moduli <= q_max
u64 series_prime_limit(const ThetaSpec& spec, u64 q_max, u64 N);
u64 series_mertens_limit(const ThetaSpec& spec, u64 q_max, u64 N);

}  // namespace thetaset

#endif  // THETASET_DENSITY_HPP
