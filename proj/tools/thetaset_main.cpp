// Command-line surface: enumeration, counting, density tables, and law
// verification for threshold-generated integer sets. Exit codes: 0 success,
// 1 a verified law failed, 2 usage or parse error, 3 resource limit.
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "thetaset/census.hpp"
#include "thetaset/density.hpp"
#include "thetaset/genset.hpp"
#include "thetaset/laws.hpp"

using namespace thetaset;
using nlohmann::json;

namespace {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

using Cell = std::variant<u64, i64, double, bool, std::string>;

// One tabular result: a header row and homogeneous data rows, emitted as CSV
// (single header line, comma separated, newline terminated) or as a JSON
// object with a "rows" array. Identical inputs produce identical bytes.
class Report {
public:
  Report(std::string command, std::string spec)
      : command_(std::move(command)), spec_(std::move(spec)) {}

  void header(std::vector<std::string> cols) { header_ = std::move(cols); }

  void row(std::vector<Cell> cells) { rows_.push_back(std::move(cells)); }

  void write(const std::string& format, const std::string& out_path) const {
    std::ostream* os = &std::cout;
    std::ofstream file;
    if (!out_path.empty()) {
      file.open(out_path);
      if (!file) throw std::invalid_argument("cannot open output file " + out_path);
      os = &file;
    }
    if (format == "json")
      write_json(*os);
    else
      write_csv(*os);
    os->flush();
  }

private:
  static std::string csv_cell(const Cell& c) {
    return std::visit(
        [](const auto& v) -> std::string {
          using T = std::decay_t<decltype(v)>;
          if constexpr (std::is_same_v<T, u64> || std::is_same_v<T, i64>)
            return std::to_string(v);
          else if constexpr (std::is_same_v<T, double>)
            return format_double(v);
          else if constexpr (std::is_same_v<T, bool>)
            return v ? "1" : "0";
          else
            return v;
        },
        c);
  }

  void write_csv(std::ostream& os) const {
    for (std::size_t i = 0; i < header_.size(); ++i)
      os << (i ? "," : "") << header_[i];
    os << "\n";
    for (const auto& r : rows_) {
      for (std::size_t i = 0; i < r.size(); ++i)
        os << (i ? "," : "") << csv_cell(r[i]);
      os << "\n";
    }
  }

  void write_json(std::ostream& os) const {
    json doc;
    doc["command"] = command_;
    if (!spec_.empty()) doc["spec"] = spec_;
    json rows = json::array();
    for (const auto& r : rows_) {
      json obj;
      for (std::size_t i = 0; i < r.size(); ++i) {
        const auto& key = header_[i];
        std::visit([&](const auto& v) { obj[key] = v; }, r[i]);
      }
      rows.push_back(std::move(obj));
    }
    doc["rows"] = std::move(rows);
    os << doc.dump() << "\n";
  }

  std::string command_;
  std::string spec_;
  std::vector<std::string> header_;
  std::vector<std::vector<Cell>> rows_;
};

std::size_t table_budget_bytes() {
  const char* env = std::getenv("THETASET_MAX_TABLE_BYTES");
  if (!env || !*env) return 0;  // unlimited
  char* end = nullptr;
  const unsigned long long v = std::strtoull(env, &end, 10);
  if (!end || *end != '\0')
    throw std::invalid_argument("THETASET_MAX_TABLE_BYTES is not a number");
  return static_cast<std::size_t>(v);
}

void check_budget(std::size_t need) {
  const std::size_t cap = table_budget_bytes();
  if (cap != 0 && need > cap)
    throw ResourceError("estimated table memory " + std::to_string(need) +
                        " bytes exceeds THETASET_MAX_TABLE_BYTES=" +
                        std::to_string(cap));
}

PrimeTables make_tables(u64 limit) {
  limit = std::max<u64>(limit, 16);
  check_budget(PrimeTables::estimate_bytes(limit));
  return PrimeTables(limit);
}

struct Options {
  std::string theta;
  u64 limit = 0;
  u64 q = 0;
  i64 a = 0;
  bool has_a = false;
  bool multiples = false;
  u64 gcd_d = 0;
  bool has_gcd = false;
  bool sorted = false;
  u64 truncation = 1000000;
  u64 qmax = 0;
  u64 mmax = 10000;
  u64 bound = 0;
  u64 pairs = 1000;
  u64 cap = 100000;
  u64 seed = 1;
  std::vector<std::string> explicit_pairs;
  std::vector<u64> limits;
  unsigned workers = 1;
  std::string format = "csv";
  std::string out;
};

int cmd_members(const Options& o) {
  const ThetaSpec spec = parse_theta(o.theta);
  PrimeTables t = make_tables(branch_prime_bound(spec, o.limit));
  u64 residue = 0;
  if (o.q >= 1) {
    if (o.a >= 0) {
      residue = static_cast<u64>(o.a) % o.q;
    } else {
      const u64 r = (static_cast<u64>(-(o.a + 1)) + 1) % o.q;
      residue = r == 0 ? 0 : o.q - r;
    }
  }
  auto picked = reduce_members<std::vector<u64>>(
      spec, o.limit, t, o.workers, {},
      [&](std::vector<u64>& acc, u64 n, const Factorization&) {
        if (o.q >= 1 && n % o.q != residue) return;
        acc.push_back(n);
      },
      [](std::vector<u64>& a, std::vector<u64>&& b) {
        a.insert(a.end(), b.begin(), b.end());
      });
  if (o.sorted) std::sort(picked.begin(), picked.end());

  // member lists can be large; stream them instead of buffering a Report
  std::ostream* os = &std::cout;
  std::ofstream file;
  if (!o.out.empty()) {
    file.open(o.out);
    if (!file) throw std::invalid_argument("cannot open output file " + o.out);
    os = &file;
  }
  if (o.format == "json") {
    *os << "{\"command\":\"members\",\"spec\":\"" << spec.describe()
        << "\",\"rows\":[";
    for (std::size_t i = 0; i < picked.size(); ++i)
      *os << (i ? "," : "") << "{\"n\":" << picked[i] << "}";
    *os << "]}\n";
  } else {
    *os << "n\n";
    for (u64 n : picked) *os << n << "\n";
  }
  os->flush();
  return 0;
}

int cmd_count(const Options& o) {
  const ThetaSpec spec = parse_theta(o.theta);
  PrimeTables t = make_tables(branch_prime_bound(spec, o.limit));
  u64 value = 0;
  if (o.q == 0) {
    value = count(spec, o.limit, t, o.workers);
  } else if (o.has_a) {
    value = count_class(spec, o.limit, o.q, o.a, t, o.workers);
  } else if (o.has_gcd) {
    value = count_gcd_class(spec, o.limit, o.q, o.gcd_d, t, o.workers);
  } else {
    value = count_multiples(spec, o.limit, o.q, t, o.workers);
  }
  Report rep("count", spec.describe());
  rep.header({"count"});
  rep.row({value});
  rep.write(o.format, o.out);
  return 0;
}

int cmd_hist(const Options& o) {
  const ThetaSpec spec = parse_theta(o.theta);
  PrimeTables t = make_tables(branch_prime_bound(spec, o.limit));
  const ResidueHistogram h = histogram(spec, o.limit, o.q, t, o.workers);
  Report rep("hist", spec.describe());
  rep.header({"residue", "count"});
  for (u64 a = 0; a < h.q; ++a) rep.row({a, h.counts[a]});
  rep.write(o.format, o.out);
  return 0;
}

struct SeriesTables {
  PrimeTables primes;
  MertensTables mertens;
};

SeriesTables make_series_tables(const ThetaSpec& spec, u64 q_max, u64 N) {
  const u64 plim = std::max<u64>(series_prime_limit(spec, q_max, N), 16);
  const u64 mlim = std::max<u64>(series_mertens_limit(spec, q_max, N), 16);
  check_budget(PrimeTables::estimate_bytes(plim) +
               MertensTables::estimate_bytes(mlim));
  return SeriesTables{PrimeTables(plim), MertensTables(mlim)};
}

int cmd_rq(const Options& o) {
  const ThetaSpec spec = parse_theta(o.theta);
  const auto st = make_series_tables(spec, std::max<u64>(o.q, 2), o.truncation);
  const double r = r_q(spec, o.q, o.truncation, st.primes, st.mertens, o.workers);
  Report rep("rq", spec.describe());
  rep.header({"q", "r_q"});
  rep.row({o.q, r});
  rep.write(o.format, o.out);
  return 0;
}

int cmd_rqa(const Options& o) {
  const ThetaSpec spec = parse_theta(o.theta);
  const auto st = make_series_tables(spec, std::max<u64>(o.q, 2), o.truncation);
  const double r =
      r_qa(spec, o.q, o.a, o.truncation, st.primes, st.mertens, o.workers);
  Report rep("rqa", spec.describe());
  rep.header({"q", "a", "r_qa"});
  rep.row({o.q, o.a, r});
  rep.write(o.format, o.out);
  return 0;
}

int cmd_table(const Options& o) {
  const ThetaSpec spec = parse_theta(o.theta);
  const auto st = make_series_tables(spec, o.qmax, o.truncation);
  const auto rows =
      table_rq(spec, o.qmax, o.truncation, st.primes, st.mertens, o.workers);
  Report rep("table", spec.describe());
  rep.header({"q", "r_q"});
  for (const auto& [q, r] : rows) rep.row({q, r});
  rep.write(o.format, o.out);
  return 0;
}

std::vector<u64> moduli_from(const Options& o) {
  std::vector<u64> qs;
  if (o.q >= 2) qs.push_back(o.q);
  if (o.qmax >= 2)
    for (u64 q = 2; q <= o.qmax; ++q) qs.push_back(q);
  if (qs.empty())
    throw std::invalid_argument("pass --mod Q or --qmax M");
  return qs;
}

int cmd_verify_sandwich(const Options& o) {
  const ThetaSpec spec = parse_theta(o.theta);
  const auto qs = moduli_from(o);
  u64 limit = 16;
  for (u64 q : qs) limit = std::max(limit, sandwich_table_limit(spec, o.limit, q));
  PrimeTables t = make_tables(limit);
  Report rep("verify-sandwich", spec.describe());
  rep.header({"x", "q", "lower", "mid", "upper", "pass"});
  bool all = true;
  for (u64 q : qs) {
    const SandwichReport s = sandwich_check(spec, o.limit, q, t, o.workers);
    all = all && s.pass;
    rep.row({s.x, s.q, i64{s.lower}, s.mid, s.upper, s.pass});
  }
  rep.write(o.format, o.out);
  return all ? 0 : 1;
}

int cmd_verify_moebius(const Options& o) {
  const ThetaSpec spec = parse_theta(o.theta);
  const auto qs = moduli_from(o);
  PrimeTables t = make_tables(branch_prime_bound(spec, o.limit));
  Report rep("verify-moebius", spec.describe());
  rep.header({"q", "d", "gcd_count", "mobius_sum", "match"});
  bool all = true;
  for (u64 q : qs) {
    for (u64 d = 1; d <= q; ++d) {
      if (q % d != 0) continue;
      const u64 lhs = count_gcd_class(spec, o.limit, q, d, t, o.workers);
      const i64 rhs = mobius_rhs(spec, o.limit, q, d, t, o.workers);
      const bool match = rhs >= 0 && lhs == static_cast<u64>(rhs);
      all = all && match;
      rep.row({q, d, lhs, rhs, match});
    }
  }
  rep.write(o.format, o.out);
  return all ? 0 : 1;
}

int cmd_verify_inclusion(const Options& o) {
  const ThetaSpec spec = parse_theta(o.theta);
  const ThetaSpec lifted = lift_q(spec, o.q);
  u64 limit = std::max(branch_prime_bound(lifted, o.mmax),
                       std::max(o.mmax, isqrt_u64(o.mmax * o.q) + 1));
  PrimeTables t = make_tables(limit);
  const LawReport law = verify_inclusions(spec, o.q, o.mmax, t, o.workers);
  for (const auto& v : law.violations) std::cerr << "violation: " << v << "\n";
  Report rep("verify-inclusion", spec.describe());
  rep.header({"q", "m_max", "lifted_members", "violations", "pass"});
  rep.row({o.q, o.mmax, static_cast<u64>(law.stats[0].second),
           static_cast<u64>(law.violations.size()), law.pass()});
  rep.write(o.format, o.out);
  return law.pass() ? 0 : 1;
}

int cmd_verify_closure(const Options& o) {
  const ThetaSpec spec = parse_theta(o.theta);
  const u64 limit = std::max({branch_prime_bound(spec, o.cap),
                              branch_prime_bound(ThetaSpec::dense(o.q + 1), o.cap),
                              o.cap});
  PrimeTables t = make_tables(limit);
  std::vector<ClosurePair> pairs;
  if (!o.explicit_pairs.empty()) {
    for (const auto& s : o.explicit_pairs) {
      const auto comma = s.find(',');
      if (comma == std::string::npos)
        throw std::invalid_argument("--pair expects m,n");
      pairs.push_back({std::stoull(s.substr(0, comma)),
                       std::stoull(s.substr(comma + 1))});
    }
  } else {
    pairs = sample_closure_pairs(spec, o.q, o.pairs, o.cap, o.seed, t);
  }
  const LawReport law = closure_check(spec, o.q, pairs, t);
  for (const auto& v : law.violations) std::cerr << "violation: " << v << "\n";
  for (const auto& r : law.rejected) std::cerr << "rejected: " << r << "\n";
  Report rep("verify-closure", spec.describe());
  rep.header({"q", "pairs", "checked", "rejected", "violations", "pass"});
  rep.row({o.q, static_cast<u64>(pairs.size()),
           static_cast<u64>(law.stats[0].second),
           static_cast<u64>(law.rejected.size()),
           static_cast<u64>(law.violations.size()), law.pass()});
  rep.write(o.format, o.out);
  return law.pass() ? 0 : 1;
}

int cmd_verify_equidist(const Options& o) {
  const ThetaSpec spec = parse_theta(o.theta);
  if (o.limits.empty()) throw std::invalid_argument("pass --limits x1,x2,...");
  u64 xmax = 0;
  for (u64 x : o.limits) xmax = std::max(xmax, x);
  PrimeTables t = make_tables(branch_prime_bound(spec, xmax));
  const LawReport law = equidist_report(spec, o.limits, o.q, t, o.workers);
  Report rep("verify-equidist", spec.describe());
  rep.header({law.row_header.begin(), law.row_header.end()});
  for (const auto& r : law.rows) {
    std::vector<Cell> cells;
    cells.emplace_back(static_cast<u64>(r[0]));
    cells.emplace_back(static_cast<u64>(r[1]));
    cells.emplace_back(static_cast<u64>(r[2]));
    for (std::size_t i = 3; i < r.size(); ++i) cells.emplace_back(r[i]);
    rep.row(std::move(cells));
  }
  rep.write(o.format, o.out);
  return 0;  // observational: never a law failure
}

int cmd_verify_classify(const Options& o) {
  const ThetaSpec spec = parse_theta(o.theta);
  PrimeTables t = make_tables(branch_prime_bound(spec, o.bound));
  const ProgressionClass c =
      classify_progression(spec, o.q, o.a, o.bound, t, o.workers);
  Report rep("verify-classify", spec.describe());
  rep.header({"q", "a", "verdict", "witness", "heuristic"});
  rep.row({c.q, c.a, std::string(to_string(c.verdict)), c.witness, c.heuristic});
  rep.write(o.format, o.out);
  return 0;
}

void add_common(CLI::App* cmd, Options& o, bool needs_theta = true) {
  if (needs_theta)
    cmd->add_option("--theta", o.theta,
                    "threshold spec: practical | dense:<u>[/<v>] | smooth:<y> | "
                    "almost-prime:<k> | prime-powers")
        ->required();
  cmd->add_option("--workers", o.workers, "worker threads (default 1)");
  cmd->add_option("--format", o.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--out", o.out, "write the report to a file instead of stdout");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"builds, counts and verifies threshold-generated integer sets "
               "(practical, dense, smooth, almost-prime, prime-power)"};
  app.require_subcommand(1);
  Options o;

  auto* members_cmd = app.add_subcommand("members", "list the members up to a limit");
  add_common(members_cmd, o);
  members_cmd->add_option("--limit", o.limit)->required();
  members_cmd->add_option("--mod,--q", o.q, "keep one residue class only");
  members_cmd->add_option("--residue,--a", o.a)->needs("--mod");
  members_cmd->add_flag("--sorted", o.sorted, "ascending output");

  auto* count_cmd = app.add_subcommand("count", "count members, optionally by class");
  add_common(count_cmd, o);
  count_cmd->add_option("--limit", o.limit)->required();
  count_cmd->add_option("--mod,--q", o.q);
  auto* res_opt = count_cmd->add_option("--residue,--a", o.a)->needs("--mod");
  count_cmd->add_flag("--multiples", o.multiples, "count multiples of the modulus")
      ->needs("--mod")
      ->excludes(res_opt);
  count_cmd->add_option("--gcd", o.gcd_d, "count members with gcd(n, mod) = d")
      ->needs("--mod")
      ->excludes(res_opt)
      ->excludes("--multiples");

  auto* hist_cmd = app.add_subcommand("hist", "residue histogram mod q");
  add_common(hist_cmd, o);
  hist_cmd->add_option("--limit", o.limit)->required();
  hist_cmd->add_option("--mod,--q", o.q)->required();

  auto* rq_cmd = app.add_subcommand("rq", "series ratio r_q at a truncation");
  add_common(rq_cmd, o);
  rq_cmd->add_option("--q,--mod", o.q)->required();
  rq_cmd->add_option("--truncation", o.truncation);

  auto* rqa_cmd = app.add_subcommand("rqa", "series ratio r_{q,a}");
  add_common(rqa_cmd, o);
  rqa_cmd->add_option("--q,--mod", o.q)->required();
  rqa_cmd->add_option("--a,--residue", o.a)->required();
  rqa_cmd->add_option("--truncation", o.truncation);

  auto* table_cmd = app.add_subcommand("table", "rows (q, r_q) for q = 2..qmax");
  add_common(table_cmd, o);
  table_cmd->add_option("--qmax", o.qmax)->required();
  table_cmd->add_option("--truncation", o.truncation);

  auto* verify = app.add_subcommand("verify", "check the structural laws");
  verify->require_subcommand(1);

  auto* sandwich_cmd = verify->add_subcommand("sandwich", "count bracket for B_q");
  add_common(sandwich_cmd, o);
  sandwich_cmd->add_option("--limit", o.limit)->required();
  sandwich_cmd->add_option("--mod", o.q);
  sandwich_cmd->add_option("--qmax", o.qmax);

  auto* moebius_cmd =
      verify->add_subcommand("moebius", "inclusion-exclusion count identity");
  add_common(moebius_cmd, o);
  moebius_cmd->add_option("--limit", o.limit)->required();
  moebius_cmd->add_option("--mod", o.q);
  moebius_cmd->add_option("--qmax", o.qmax);

  auto* inclusion_cmd =
      verify->add_subcommand("inclusion", "element-wise lifted-set inclusions");
  add_common(inclusion_cmd, o);
  inclusion_cmd->add_option("--mod,--q", o.q)->required();
  inclusion_cmd->add_option("--mmax", o.mmax);

  auto* closure_cmd =
      verify->add_subcommand("closure", "products m n stay in the set");
  add_common(closure_cmd, o);
  closure_cmd->add_option("--mod,--q", o.q)->required();
  closure_cmd->add_option("--pairs", o.pairs, "random valid pairs to draw");
  closure_cmd->add_option("--cap", o.cap, "upper bound for drawn m and n");
  closure_cmd->add_option("--seed", o.seed);
  closure_cmd->add_option("--pair", o.explicit_pairs, "explicit pair m,n")
      ->take_all();

  auto* equidist_cmd =
      verify->add_subcommand("equidist", "deviation across coprime classes");
  add_common(equidist_cmd, o);
  equidist_cmd->add_option("--mod,--q", o.q)->required();
  equidist_cmd->add_option("--limits", o.limits, "comma-separated x values")
      ->required()
      ->delimiter(',');

  auto* classify_cmd =
      verify->add_subcommand("classify", "Empty / Singleton / Infinite verdict");
  add_common(classify_cmd, o);
  classify_cmd->add_option("--q,--mod", o.q)->required();
  classify_cmd->add_option("--a,--residue", o.a)->required();
  classify_cmd->add_option("--bound", o.bound)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  o.has_a = res_opt->count() > 0 || rqa_cmd->count("--a") > 0;
  o.has_gcd = count_cmd->count("--gcd") > 0;
  if (members_cmd->parsed() && members_cmd->count("--residue") == 0) o.a = 0;

  try {
    if (members_cmd->parsed()) return cmd_members(o);
    if (count_cmd->parsed()) return cmd_count(o);
    if (hist_cmd->parsed()) return cmd_hist(o);
    if (rq_cmd->parsed()) return cmd_rq(o);
    if (rqa_cmd->parsed()) return cmd_rqa(o);
    if (table_cmd->parsed()) return cmd_table(o);
    if (sandwich_cmd->parsed()) return cmd_verify_sandwich(o);
    if (moebius_cmd->parsed()) return cmd_verify_moebius(o);
    if (inclusion_cmd->parsed()) return cmd_verify_inclusion(o);
    if (closure_cmd->parsed()) return cmd_verify_closure(o);
    if (equidist_cmd->parsed()) return cmd_verify_equidist(o);
    if (classify_cmd->parsed()) return cmd_verify_classify(o);
    std::cerr << "no subcommand\n";
    return 2;
  } catch (const ResourceError& e) {
    std::cerr << "resource limit: " << e.what() << "\n";
    return 3;
  } catch (const std::overflow_error& e) {
    std::cerr << "overflow: " << e.what() << "\n";
    return 3;
  } catch (const std::logic_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
