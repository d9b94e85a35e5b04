#ifndef THETASET_LAWS_HPP
#define THETASET_LAWS_HPP

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "thetaset/arith.hpp"
#include "thetaset/theta.hpp"

namespace thetaset {

// Outcome of one structural check. A law passes iff violations is empty;
// rejected lists inputs that failed their preconditions and were skipped.
struct LawReport {
  std::string law;
  std::string params;
  std::vector<std::string> violations;
  std::vector<std::string> rejected;
  std::vector<std::pair<std::string, double>> stats;
  std::vector<std::string> row_header;       // optional tabular payload
  std::vector<std::vector<double>> rows;
  bool pass() const { return violations.empty(); }
};

enum class ProgressionVerdict { Empty, Singleton, Infinite };

// Classification of the members in one arithmetic progression. Infinite is
// rigorous (a member >= q exists); Empty/Singleton depend on the search
// bound and are flagged heuristic.
struct ProgressionClass {
  u64 q = 0;
  u64 a = 0;
  ProgressionVerdict verdict = ProgressionVerdict::Empty;
  u64 witness = 0;  // the unique member when verdict == Singleton
  u64 search_bound = 0;
  bool heuristic = true;
};

const char* to_string(ProgressionVerdict v);

// Element-wise check of both inclusions
//   {m : mq in B} subset B_lifted subset {m : mq in B} u {m : theta(m) < P+(q)}
// for all m <= m_max. Requires a monotone spec.
LawReport verify_inclusions(const ThetaSpec& spec, u64 q, u64 m_max,
                            const PrimeTables& tables, unsigned workers = 1);

// For each x: D(x) = max over residues a coprime to q of
// |B(x,q,a) - M(x)/phi(q)| with M(x) the count of members coprime to q.
// Reported, never asserted (the error term carries unknown constants).
LawReport equidist_report(const ThetaSpec& spec, std::span<const u64> x_list,
                          u64 q, const PrimeTables& tables, unsigned workers = 1);

struct ClosurePair {
  u64 m = 0;
  u64 n = 0;
};

// Checks m n in B for pairs with m in B, m > q, n == 1 mod q, and n in the
// (q+1)-dense set. Pairs failing the preconditions are reported separately.
// Requires a dense or practical spec.
LawReport closure_check(const ThetaSpec& spec, u64 q,
                        std::span<const ClosurePair> pairs,
                        const PrimeTables& tables);

// Draws valid closure pairs: n from the (q+1)-dense members == 1 mod q up to
// cap, m from the members in (q, cap]. Deterministic for a fixed seed.
std::vector<ClosurePair> sample_closure_pairs(const ThetaSpec& spec, u64 q,
                                              std::size_t count, u64 cap,
                                              u64 seed, const PrimeTables& tables);

// Enumerates members == a mod q up to search_bound. Any member >= q makes
// the class provably infinite; otherwise the verdict is a bounded-search
// heuristic. Requires a dense or practical spec and search_bound >= q.
ProgressionClass classify_progression(const ThetaSpec& spec, u64 q, i64 a,
                                      u64 search_bound, const PrimeTables& tables,
                                      unsigned workers = 1);

}  // namespace thetaset

#endif  // THETASET_LAWS_HPP
