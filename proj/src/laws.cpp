#include "thetaset/laws.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "thetaset/census.hpp"
#include "thetaset/genset.hpp"

namespace thetaset {

const char* to_string(ProgressionVerdict v) {
  switch (v) {
    case ProgressionVerdict::Empty:
      return "Empty";
    case ProgressionVerdict::Singleton:
      return "Singleton";
    case ProgressionVerdict::Infinite:
      return "Infinite";
  }
  return "?";
}

namespace {

void require_growth_spec(const ThetaSpec& spec, const char* what) {
  if (spec.kind() != ThetaKind::Dense && spec.kind() != ThetaKind::Practical)
    throw std::invalid_argument(std::string(what) +
                                ": requires a dense or practical spec");
}

u64 normalize_residue(i64 a, u64 q) {
  if (a >= 0) return static_cast<u64>(a) % q;
  const u64 mag = static_cast<u64>(-(a + 1)) + 1;  // |a|, safe at INT64_MIN
  const u64 r = mag % q;
  return r == 0 ? 0 : q - r;
}

}  // namespace

LawReport verify_inclusions(const ThetaSpec& spec, u64 q, u64 m_max,
                            const PrimeTables& tables, unsigned workers) {
  if (q < 2) throw std::invalid_argument("verify_inclusions: q must be >= 2");
  if (!spec.monotone() || spec.kind() == ThetaKind::Lifted)
    throw std::invalid_argument(
        "verify_inclusions: requires a monotone, unlifted spec");
  (void)workers;

  LawReport rep;
  rep.law = "inclusion";
  rep.params = spec.describe() + " q=" + std::to_string(q) +
               " m_max=" + std::to_string(m_max);

  const ThetaSpec lifted = lift_q(spec, q);
  const u64 pq = pplus(trial_factorize(q));
  std::vector<char> in_lifted(m_max + 1, 0);
  for_each_member(lifted, m_max, tables,
                  [&](u64 n, const Factorization&) { in_lifted[n] = 1; });

  u64 lifted_size = 0, product_side = 0, escape_side = 0;
  for (u64 m = 1; m <= m_max; ++m) {
    const bool mq_member = is_member(spec, m * q, tables);
    if (mq_member) ++product_side;
    if (in_lifted[m]) ++lifted_size;
    if (mq_member && !in_lifted[m])
      rep.violations.push_back("m=" + std::to_string(m) +
                               ": mq is a member but m is outside the lifted set");
    if (in_lifted[m] && !mq_member) {
      const Factorization fm = factorize(m, tables);
      if (!theta_eval(spec, fm).below(pq)) {
        ++escape_side;
        rep.violations.push_back(
            "m=" + std::to_string(m) +
            ": in the lifted set, mq not a member, theta(m) >= P+(q)");
      }
    }
  }
  rep.stats.emplace_back("lifted_members", static_cast<double>(lifted_size));
  rep.stats.emplace_back("product_members", static_cast<double>(product_side));
  rep.stats.emplace_back("escape_violations", static_cast<double>(escape_side));
  return rep;
}

LawReport equidist_report(const ThetaSpec& spec, std::span<const u64> x_list,
                          u64 q, const PrimeTables& tables, unsigned workers) {
  if (q < 2) throw std::invalid_argument("equidist_report: q must be >= 2");
  LawReport rep;
  rep.law = "equidist";
  rep.params = spec.describe() + " q=" + std::to_string(q);
  rep.row_header = {"x", "members", "coprime_members", "max_dev", "dev_share",
                    "dev_scaled"};

  const u64 phi = euler_phi(q, tables);
  for (const u64 x : x_list) {
    const ResidueHistogram h = histogram(spec, x, q, tables, workers);
    u64 coprime_total = 0, total = 0;
    for (u64 a = 0; a < q; ++a) {
      total += h.counts[a];
      if (std::gcd(a, q) == 1) coprime_total += h.counts[a];
    }
    const double expected =
        static_cast<double>(coprime_total) / static_cast<double>(phi);
    double dev = 0;
    for (u64 a = 0; a < q; ++a) {
      if (std::gcd(a, q) != 1) continue;
      dev = std::max(dev, std::abs(static_cast<double>(h.counts[a]) - expected));
    }
    const double dx = static_cast<double>(x);
    rep.rows.push_back({dx, static_cast<double>(total),
                        static_cast<double>(coprime_total), dev,
                        total ? dev / static_cast<double>(total) : 0.0,
                        dev * std::log(dx) / dx});
  }
  return rep;
}

LawReport closure_check(const ThetaSpec& spec, u64 q,
                        std::span<const ClosurePair> pairs,
                        const PrimeTables& tables) {
  if (q < 2) throw std::invalid_argument("closure_check: q must be >= 2");
  require_growth_spec(spec, "closure_check");

  LawReport rep;
  rep.law = "closure";
  rep.params = spec.describe() + " q=" + std::to_string(q) +
               " pairs=" + std::to_string(pairs.size());
  const ThetaSpec dq1 = ThetaSpec::dense(q + 1);

  u64 checked = 0;
  for (const auto& [m, n] : pairs) {
    std::string tag = "m=" + std::to_string(m) + " n=" + std::to_string(n);
    if (m <= q || !is_member(spec, m, tables)) {
      rep.rejected.push_back(tag + ": m must be a member greater than q");
      continue;
    }
    if (n % q != 1 % q) {
      rep.rejected.push_back(tag + ": n must be congruent to 1 mod q");
      continue;
    }
    if (!is_member(dq1, n, tables)) {
      rep.rejected.push_back(tag + ": n is not " + std::to_string(q + 1) +
                             "-dense");
      continue;
    }
    ++checked;
    if (!is_member(spec, m * n, tables))
      rep.violations.push_back(tag + ": product is not a member");
  }
  rep.stats.emplace_back("checked", static_cast<double>(checked));
  return rep;
}

std::vector<ClosurePair> sample_closure_pairs(const ThetaSpec& spec, u64 q,
                                              std::size_t count, u64 cap,
                                              u64 seed,
                                              const PrimeTables& tables) {
  if (q < 2) throw std::invalid_argument("sample_closure_pairs: q must be >= 2");
  require_growth_spec(spec, "sample_closure_pairs");

  std::vector<u64> ns;
  for_each_member(ThetaSpec::dense(q + 1), cap, tables,
                  [&](u64 n, const Factorization&) {
                    if (n % q == 1 % q) ns.push_back(n);
                  });
  std::vector<u64> ms;
  for_each_member(spec, cap, tables, [&](u64 m, const Factorization&) {
    if (m > q) ms.push_back(m);
  });
  if (ns.empty() || ms.empty())
    throw std::invalid_argument("sample_closure_pairs: cap too small to draw pairs");
  std::sort(ns.begin(), ns.end());
  std::sort(ms.begin(), ms.end());

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick_n(0, ns.size() - 1);
  std::uniform_int_distribution<std::size_t> pick_m(0, ms.size() - 1);
  std::vector<ClosurePair> pairs;
  pairs.reserve(count);
  for (std::size_t i = 0; i < count; ++i)
    pairs.push_back({ms[pick_m(rng)], ns[pick_n(rng)]});
  return pairs;
}

ProgressionClass classify_progression(const ThetaSpec& spec, u64 q, i64 a,
                                      u64 search_bound, const PrimeTables& tables,
                                      unsigned workers) {
  if (q < 1) throw std::invalid_argument("classify_progression: q must be >= 1");
  require_growth_spec(spec, "classify_progression");
  if (search_bound < q)
    throw std::invalid_argument(
        "classify_progression: search bound must be at least q");

  const u64 r = normalize_residue(a, q);
  struct Acc {
    u64 in_class = 0;
    u64 smallest = 0;
    bool any_ge_q = false;
  };
  const Acc acc = reduce_members<Acc>(
      spec, search_bound, tables, workers, Acc{},
      [q, r](Acc& s, u64 n, const Factorization&) {
        if (n % q != r) return;
        ++s.in_class;
        if (s.smallest == 0 || n < s.smallest) s.smallest = n;
        if (n >= q) s.any_ge_q = true;
      },
      [](Acc& s, Acc&& o) {
        s.in_class += o.in_class;
        if (s.smallest == 0 || (o.smallest != 0 && o.smallest < s.smallest))
          s.smallest = o.smallest;
        s.any_ge_q = s.any_ge_q || o.any_ge_q;
      });

  ProgressionClass out;
  out.q = q;
  out.a = r;
  out.search_bound = search_bound;
  if (acc.any_ge_q) {
    out.verdict = ProgressionVerdict::Infinite;
    out.heuristic = false;  // a member >= q forces a positive proportion
  } else if (acc.in_class == 1) {
    out.verdict = ProgressionVerdict::Singleton;
    out.witness = acc.smallest;  // necessarily < q
    out.heuristic = true;
  } else {
    out.verdict = ProgressionVerdict::Empty;
    out.heuristic = true;
  }
  return out;
}

}  // namespace thetaset
