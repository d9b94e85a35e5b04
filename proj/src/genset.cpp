#include "thetaset/genset.hpp"

namespace thetaset {

bool is_member(const ThetaSpec& spec, u64 n, const PrimeTables& tables) {
  if (n == 0) throw std::invalid_argument("is_member: n must be >= 1");
  if (n == 1) return true;
  const Factorization full = factorize(n, tables);
  Factorization prefix;  // product of the prime powers seen so far
  for (const auto& [p, e] : full.factors) {
    if (!prime_fits(spec, prefix, p)) return false;
    prefix.factors.push_back({p, e});
    for (u32 i = 0; i < e; ++i) prefix.value *= p;
  }
  return true;
}

std::vector<u64> members(const ThetaSpec& spec, u64 x, const PrimeTables& tables,
                         bool sorted) {
  std::vector<u64> out;
  for_each_member(spec, x, tables,
                  [&](u64 n, const Factorization&) { out.push_back(n); });
  if (sorted) std::sort(out.begin(), out.end());
  return out;
}

}  // namespace thetaset
