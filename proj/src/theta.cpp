#include "thetaset/theta.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>

namespace thetaset {

namespace {

// multiply the factored value by one prime, keeping factors ascending
Factorization multiply_prime(Factorization f, u64 p) {
  const u128 value = static_cast<u128>(f.value) * p;
  if (value > std::numeric_limits<u64>::max())
    throw std::overflow_error("theta: lifted argument exceeds 64 bits");
  f.value = static_cast<u64>(value);
  auto it = std::lower_bound(
      f.factors.begin(), f.factors.end(), p,
      [](const PrimePower& pp, u64 x) { return pp.p < x; });
  if (it != f.factors.end() && it->p == p)
    ++it->e;
  else
    f.factors.insert(it, PrimePower{p, 1});
  return f;
}

ExtendedBound eval_lifted(const ThetaSpec& base, std::span<const u64> q_primes,
                          const Factorization& f) {
  Factorization g = f;
  for (u64 qi : q_primes) {
    if (!theta_eval(base, g).admits(qi)) break;
    g = multiply_prime(std::move(g), qi);
  }
  return theta_eval(base, g);
}

}  // namespace

ThetaSpec ThetaSpec::prime_powers() {
  ThetaSpec s;
  s.kind_ = ThetaKind::PrimePowers;
  return s;
}

ThetaSpec ThetaSpec::almost_prime(u64 k) {
  if (k < 1) throw std::invalid_argument("almost_prime: k must be >= 1");
  ThetaSpec s;
  s.kind_ = ThetaKind::AlmostPrime;
  s.k_ = k;
  return s;
}

ThetaSpec ThetaSpec::smooth(u64 y) {
  if (y < 2) throw std::invalid_argument("smooth: y must be >= 2");
  ThetaSpec s;
  s.kind_ = ThetaKind::Smooth;
  s.y_ = y;
  return s;
}

ThetaSpec ThetaSpec::dense(u64 u, u64 v) {
  if (v == 0) throw std::invalid_argument("dense: zero denominator");
  const u64 g = std::gcd(u, v);
  u /= g;
  v /= g;
  if (u < 2 * v) throw std::invalid_argument("dense: ratio must be >= 2");
  ThetaSpec s;
  s.kind_ = ThetaKind::Dense;
  s.tnum_ = u;
  s.tden_ = v;
  return s;
}

ThetaSpec ThetaSpec::practical() {
  ThetaSpec s;
  s.kind_ = ThetaKind::Practical;
  return s;
}

bool ThetaSpec::monotone() const {
  switch (kind_) {
    case ThetaKind::PrimePowers:
    case ThetaKind::AlmostPrime:
      return false;
    case ThetaKind::Smooth:
    case ThetaKind::Dense:
    case ThetaKind::Practical:
      return true;
    case ThetaKind::Lifted:
      return true;  // construction requires a monotone base
  }
  return false;
}

const ThetaSpec& ThetaSpec::base() const {
  if (kind_ != ThetaKind::Lifted)
    throw std::logic_error("ThetaSpec::base: not a lifted spec");
  return *base_;
}

std::string ThetaSpec::describe() const {
  switch (kind_) {
    case ThetaKind::PrimePowers:
      return "prime-powers";
    case ThetaKind::AlmostPrime:
      return "almost-prime:" + std::to_string(k_);
    case ThetaKind::Smooth:
      return "smooth:" + std::to_string(y_);
    case ThetaKind::Dense:
      return tden_ == 1 ? "dense:" + std::to_string(tnum_)
                        : "dense:" + std::to_string(tnum_) + "/" + std::to_string(tden_);
    case ThetaKind::Practical:
      return "practical";
    case ThetaKind::Lifted:
      return base_->describe() + "[q=" + std::to_string(q_) + "]";
  }
  return "?";
}

ExtendedBound theta_eval(const ThetaSpec& spec, const Factorization& f) {
  switch (spec.kind()) {
    case ThetaKind::PrimePowers:
      return f.factors.empty() ? ExtendedBound::infinity()
                               : ExtendedBound::exact(pplus(f));
    case ThetaKind::AlmostPrime:
      return omega(f) < spec.almost_k() ? ExtendedBound::infinity()
                                        : ExtendedBound::exact(pplus(f));
    case ThetaKind::Smooth:
      return ExtendedBound::exact(std::max(spec.smooth_y(), pplus(f)));
    case ThetaKind::Dense: {
      const u128 num = static_cast<u128>(spec.dense_num()) * f.value;
      if (num > std::numeric_limits<u64>::max())
        throw std::overflow_error("theta: dense threshold exceeds 64 bits");
      return ExtendedBound::exact(static_cast<u64>(num), spec.dense_den());
    }
    case ThetaKind::Practical: {
      const u64 s = sigma(f);
      if (s == std::numeric_limits<u64>::max())
        throw std::overflow_error("theta: sigma + 1 exceeds 64 bits");
      return ExtendedBound::exact(s + 1);
    }
    case ThetaKind::Lifted:
      return eval_lifted(spec.base(), spec.modulus_primes(), f);
  }
  throw std::logic_error("theta_eval: bad kind");
}

bool prime_fits(const ThetaSpec& spec, const Factorization& f, u64 p) {
  return theta_eval(spec, f).admits(p);
}

ThetaSpec lift_q(const ThetaSpec& spec, u64 q) {
  if (q < 2) throw std::invalid_argument("lift_q: q must be >= 2");
  if (spec.kind() == ThetaKind::Lifted)
    throw std::invalid_argument(
        "lift_q: spec is already lifted; lift the base by the product of the moduli instead");
  if (!spec.monotone())
    throw std::invalid_argument("lift_q: threshold must be monotone (theta(n) <= theta(mn))");
  ThetaSpec s;
  s.kind_ = ThetaKind::Lifted;
  s.q_ = q;
  for (const auto& [p, e] : trial_factorize(q).factors)
    for (u32 i = 0; i < e; ++i) s.q_primes_.push_back(p);
  s.base_ = std::make_shared<const ThetaSpec>(spec);
  return s;
}

namespace {

u64 parse_u64_or_throw(std::string_view text, std::string_view what) {
  u64 value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size())
    throw std::invalid_argument("theta spec: bad " + std::string(what) + " '" +
                                std::string(text) + "'");
  return value;
}

}  // namespace

ThetaSpec parse_theta(std::string_view text) {
  if (text == "practical") return ThetaSpec::practical();
  if (text == "prime-powers") return ThetaSpec::prime_powers();
  if (text.starts_with("dense:")) {
    std::string_view rest = text.substr(6);
    const auto slash = rest.find('/');
    if (slash == std::string_view::npos)
      return ThetaSpec::dense(parse_u64_or_throw(rest, "dense ratio"));
    return ThetaSpec::dense(parse_u64_or_throw(rest.substr(0, slash), "dense numerator"),
                            parse_u64_or_throw(rest.substr(slash + 1), "dense denominator"));
  }
  if (text.starts_with("smooth:"))
    return ThetaSpec::smooth(parse_u64_or_throw(text.substr(7), "smoothness bound"));
  if (text.starts_with("almost-prime:"))
    return ThetaSpec::almost_prime(parse_u64_or_throw(text.substr(13), "factor count"));
  throw std::invalid_argument("theta spec: unknown form '" + std::string(text) +
                              "' (expected practical | dense:<u>[/<v>] | smooth:<y> | "
                              "almost-prime:<k> | prime-powers)");
}

namespace {

u64 clamp_to_x(u128 bound, u64 x) {
  const u128 capped = std::min<u128>(bound, x);
  return static_cast<u64>(std::max<u128>(capped, 2));
}

// sqrt of a u128 product, rounded up with slack
u64 sqrt_bound(u128 product) {
  const double d = std::sqrt(static_cast<double>(product));
  if (d >= 1.8e19) return std::numeric_limits<u64>::max();
  return static_cast<u64>(d * 1.01) + 16;
}

}  // namespace

u64 branch_prime_bound(const ThetaSpec& spec, u64 x) {
  if (x < 2) return 2;
  switch (spec.kind()) {
    case ThetaKind::PrimePowers:
    case ThetaKind::AlmostPrime:
      return x;  // theta is unbounded until enough primes accumulate
    case ThetaKind::Smooth:
      return clamp_to_x(spec.smooth_y(), x);
    case ThetaKind::Dense:
      // p <= min(u n / v, x / n) <= sqrt(u x / v)
      return clamp_to_x(sqrt_bound(static_cast<u128>(spec.dense_num()) * x /
                                   spec.dense_den()),
                        x);
    case ThetaKind::Practical: {
      const double ratio =
          static_cast<double>(sigma_value_bound(x)) / static_cast<double>(x);
      return clamp_to_x(sqrt_bound(static_cast<u128>(ratio * x) + x), x);
    }
    case ThetaKind::Lifted: {
      const ThetaSpec& base = spec.base();
      const u64 q = spec.modulus();
      switch (base.kind()) {
        case ThetaKind::Smooth: {
          const u64 pq = spec.modulus_primes().back();
          return clamp_to_x(std::max(base.smooth_y(), pq), x);
        }
        case ThetaKind::Dense:
          return clamp_to_x(sqrt_bound(static_cast<u128>(base.dense_num()) * x *
                                       q / base.dense_den()),
                            x);
        case ThetaKind::Practical: {
          const u128 xq = static_cast<u128>(x) * q;
          const u64 xq64 = xq > std::numeric_limits<u64>::max()
                               ? std::numeric_limits<u64>::max()
                               : static_cast<u64>(xq);
          const double ratio = static_cast<double>(sigma_value_bound(xq64)) /
                               static_cast<double>(xq64);
          return clamp_to_x(sqrt_bound(static_cast<u128>(ratio * x) * q + xq), x);
        }
        default:
          return x;
      }
    }
  }
  return x;
}

u64 theta_value_bound(const ThetaSpec& spec, u64 n_max) {
  if (n_max < 1) n_max = 1;
  switch (spec.kind()) {
    case ThetaKind::PrimePowers:
    case ThetaKind::AlmostPrime:
      return std::max<u64>(n_max, 2);  // finite branch is P+(n) <= n
    case ThetaKind::Smooth:
      return std::max(spec.smooth_y(), n_max);
    case ThetaKind::Dense: {
      const u128 num = static_cast<u128>(spec.dense_num()) * n_max;
      const u128 val = num / spec.dense_den() + 1;
      if (val > std::numeric_limits<u64>::max())
        throw std::overflow_error("theta_value_bound: dense bound exceeds 64 bits");
      return static_cast<u64>(val);
    }
    case ThetaKind::Practical:
      return sigma_value_bound(n_max) + 1;
    case ThetaKind::Lifted: {
      const u128 arg = static_cast<u128>(n_max) * spec.modulus();
      if (arg > std::numeric_limits<u64>::max())
        throw std::overflow_error("theta_value_bound: lifted argument exceeds 64 bits");
      return theta_value_bound(spec.base(), static_cast<u64>(arg));
    }
  }
  throw std::logic_error("theta_value_bound: bad kind");
}

}  // namespace thetaset
