#ifndef THETASET_THETA_HPP
#define THETASET_THETA_HPP

#include <limits>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "thetaset/arith.hpp"

namespace thetaset {

// Threshold value: an exact nonnegative rational, or +infinity. All
// comparisons against integers are exact (128-bit cross multiplication);
// no floating point is involved in membership decisions.
class ExtendedBound {
public:
  static ExtendedBound infinity() {
    ExtendedBound b;
    b.infinite_ = true;
    return b;
  }
  static ExtendedBound exact(u64 num, u64 den = 1) {
    if (den == 0) throw std::invalid_argument("ExtendedBound: zero denominator");
    ExtendedBound b;
    b.num_ = num;
    b.den_ = den;
    return b;
  }

  bool is_infinite() const { return infinite_; }
  u64 num() const { return num_; }
  u64 den() const { return den_; }

  // v <= bound
  bool admits(u64 v) const {
    return infinite_ || static_cast<u128>(v) * den_ <= num_;
  }
  // bound < v
  bool below(u64 v) const {
    return !infinite_ && num_ < static_cast<u128>(v) * den_;
  }

  double approx() const {
    return infinite_ ? std::numeric_limits<double>::infinity()
                     : static_cast<double>(num_) / static_cast<double>(den_);
  }

private:
  bool infinite_ = false;
  u64 num_ = 0;
  u64 den_ = 1;
};

enum class ThetaKind { PrimePowers, AlmostPrime, Smooth, Dense, Practical, Lifted };

// A threshold function on factored integers. Immutable value type; copies
// are cheap (the lifted variant shares its base).
class ThetaSpec {
public:
  static ThetaSpec prime_powers();
  static ThetaSpec almost_prime(u64 k);    // k >= 1
  static ThetaSpec smooth(u64 y);          // y >= 2
  static ThetaSpec dense(u64 u, u64 v = 1);  // reduced to u/v, requires u >= 2v
  static ThetaSpec practical();

  ThetaKind kind() const { return kind_; }
  bool monotone() const;

  u64 almost_k() const { return k_; }
  u64 smooth_y() const { return y_; }
  u64 dense_num() const { return tnum_; }
  u64 dense_den() const { return tden_; }

  // lifted-only accessors
  u64 modulus() const { return q_; }
  std::span<const u64> modulus_primes() const { return q_primes_; }
  const ThetaSpec& base() const;

  std::string describe() const;

private:
  friend ThetaSpec lift_q(const ThetaSpec&, u64);
  ThetaSpec() = default;

  ThetaKind kind_ = ThetaKind::Practical;
  u64 k_ = 0;
  u64 y_ = 0;
  u64 tnum_ = 0;
  u64 tden_ = 1;
  u64 q_ = 1;
  std::vector<u64> q_primes_;  // ascending, with multiplicity, product == q_
  std::shared_ptr<const ThetaSpec> base_;
};

// theta evaluated at n given its factorization. f.value must equal the
// product of f.factors.
ExtendedBound theta_eval(const ThetaSpec& spec, const Factorization& f);

// p <= theta(n), exactly
bool prime_fits(const ThetaSpec& spec, const Factorization& f, u64 p);

// The q-lifted threshold: absorbs prime factors of q (ascending, with
// multiplicity) as long as each fits the threshold of the product so far,
// then evaluates the base at the enlarged argument. Requires a monotone,
// not already lifted base and q >= 2.
ThetaSpec lift_q(const ThetaSpec& spec, u64 q);

// Grammar: practical | dense:<u>[/<v>] | smooth:<y> | almost-prime:<k> |
// prime-powers. Lifted specs are constructed, never parsed.
ThetaSpec parse_theta(std::string_view text);

// Upper bound on any prime the generation DFS may test against the
// threshold when enumerating members <= x. Safe, not tight.
u64 branch_prime_bound(const ThetaSpec& spec, u64 x);

// Upper bound on finite theta(n) over n <= n_max, for sizing prime-sum
// tables. For the variants whose threshold can be infinite this bounds only
// the finite branch.
u64 theta_value_bound(const ThetaSpec& spec, u64 n_max);

}  // namespace thetaset

#endif  // THETASET_THETA_HPP
