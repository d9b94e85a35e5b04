#ifndef THETASET_GENSET_HPP
#define THETASET_GENSET_HPP

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "thetaset/arith.hpp"
#include "thetaset/theta.hpp"

namespace thetaset {

// n is a member iff n = 1 or every distinct prime of n fits the threshold
// of the product of all earlier full prime powers.
bool is_member(const ThetaSpec& spec, u64 n, const PrimeTables& tables);

namespace detail {

// Calls g(m) for every child m <= x of the node (n, f): next primes strictly
// above P+(n) that fit theta(n), each at every exponent. f temporarily holds
// the child state during g. Throws ResourceError if the prime list ends
// while the threshold and x still admit larger primes.
template <class G>
void expand_children(const ThetaSpec& spec, u64 x, const PrimeTables& tables,
                     u64 n, Factorization& f, G&& g) {
  const u64 head = x / n;  // largest admissible prime at this node
  if (head < 2) return;
  const ExtendedBound bound = theta_eval(spec, f);
  const auto ps = tables.primes();
  std::size_t i = f.factors.empty() ? 0 : tables.index_above(f.factors.back().p);
  for (; i < ps.size(); ++i) {
    const u64 p = ps[i];
    if (p > head || !bound.admits(p)) return;
    f.factors.push_back({p, 1});
    for (u64 m = n * p;;) {
      f.value = m;
      g(m);
      if (m > x / p) break;
      m *= p;
      ++f.factors.back().e;
    }
    f.factors.pop_back();
    f.value = n;
  }
  const u64 next = tables.limit() + 1;
  if (next <= head && bound.admits(next))
    throw ResourceError("enumeration needs primes beyond the table limit " +
                        std::to_string(tables.limit()));
}

// depth-first traversal of the full subtree rooted at (n, f), including the
// root itself
template <class Visit>
void walk(const ThetaSpec& spec, u64 x, const PrimeTables& tables, u64 n,
          Factorization& f, Visit&& visit) {
  visit(n, static_cast<const Factorization&>(f));
  expand_children(spec, x, tables, n, f,
                  [&](u64 m) { walk(spec, x, tables, m, f, visit); });
}

struct Seed {
  u64 value;
  Factorization f;
};

}  // namespace detail

// Visit every member of the set up to x, in DFS order, single-threaded.
// visit(n, f) receives the value and its factorization; the factorization
// reference is only valid during the call.
template <class Visit>
void for_each_member(const ThetaSpec& spec, u64 x, const PrimeTables& tables,
                     Visit&& visit) {
  if (x < 1) return;
  Factorization f;
  detail::walk(spec, x, tables, 1, f, visit);
}

// Reduction over all members. The forest is split at the second distinct
// prime; subtrees are grouped into a fixed number of tasks and merged in
// task order, so the result is identical for every worker count (bit-exact,
// including floating-point accumulators).
//
// Acc: copyable accumulator. visit(acc, n, f) folds one member, merge(acc,
// other) folds a finished task accumulator.
template <class Acc, class Visit, class Merge>
Acc reduce_members(const ThetaSpec& spec, u64 x, const PrimeTables& tables,
                   unsigned workers, const Acc& zero, Visit visit, Merge merge) {
  Acc result = zero;
  if (x < 1) return result;
  if (workers == 0) workers = 1;

  // members with fewer than two distinct primes are folded directly;
  // everything else hangs below one of the seeds
  std::vector<detail::Seed> seeds;
  {
    Factorization f;
    visit(result, u64{1}, static_cast<const Factorization&>(f));
    detail::expand_children(spec, x, tables, 1, f, [&](u64 m1) {
      visit(result, m1, static_cast<const Factorization&>(f));
      detail::expand_children(spec, x, tables, m1, f,
                              [&](u64 m2) { seeds.push_back({m2, f}); });
    });
  }
  if (seeds.empty()) return result;

  const std::size_t ntasks = std::min<std::size_t>(seeds.size(), 256);
  std::vector<Acc> task_acc(ntasks, zero);
  std::atomic<std::size_t> next_task{0};
  std::mutex error_mutex;
  std::exception_ptr error;

  auto run_tasks = [&]() {
    try {
      for (;;) {
        const std::size_t t = next_task.fetch_add(1, std::memory_order_relaxed);
        if (t >= ntasks) break;
        Acc& acc = task_acc[t];
        for (std::size_t s = t; s < seeds.size(); s += ntasks) {
          Factorization f = seeds[s].f;
          detail::walk(spec, x, tables, seeds[s].value, f,
                       [&](u64 n, const Factorization& ff) { visit(acc, n, ff); });
        }
      }
    } catch (...) {
      std::lock_guard<std::mutex> lock(error_mutex);
      if (!error) error = std::current_exception();
      next_task.store(ntasks, std::memory_order_relaxed);
    }
  };

  if (workers == 1 || ntasks == 1) {
    run_tasks();
  } else {
    std::vector<std::thread> pool;
    const unsigned spawn = std::min<unsigned>(workers, static_cast<unsigned>(ntasks));
    pool.reserve(spawn);
    for (unsigned w = 0; w < spawn; ++w) pool.emplace_back(run_tasks);
    for (auto& th : pool) th.join();
  }
  if (error) std::rethrow_exception(error);

  for (auto& acc : task_acc) merge(result, std::move(acc));
  return result;
}

// Materialized member list (DFS order, or ascending when sorted == true).
std::vector<u64> members(const ThetaSpec& spec, u64 x, const PrimeTables& tables,
                         bool sorted = false);

}  // namespace thetaset

#endif  // THETASET_GENSET_HPP
