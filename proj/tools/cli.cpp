#include "cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <random>
#include <type_traits>
#include <sstream>

#include <nlohmann/json.hpp>

#include "gslab/canonical_paths.hpp"
#include "gslab/errors.hpp"
#include "gslab/influence.hpp"
#include "gslab/manipulation.hpp"
#include "gslab/report.hpp"

namespace gslab::cli {

using nlohmann::json;

namespace {

struct Config {
  std::string rule = "borda";
  int q = 0;
  std::size_t n = 0;
  bool exact = false;
  std::uint64_t samples = 0;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::string format = "json";
  unsigned workers = 1;
  std::uint64_t cap = kDefaultCap;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Exact exact_mode(const Config& c) { return Exact{c.cap, c.workers}; }

Sampled sampled_mode(const Config& c) {
  if (!c.seed) throw UsageError("--seed is required with --samples");
  return Sampled{c.samples, *c.seed, c.workers};
}

void require_mode(const Config& c) {
  if (c.exact == (c.samples > 0)) throw UsageError("choose exactly one of --exact and --samples K");
}

std::size_t parse_index(const std::string& text) {
  std::size_t pos = 0;
  const auto v = std::stoul(text, &pos);
  if (pos != text.size()) throw DomainError("bad number: " + text);
  return v;
}

std::string with_default(const std::string& v, const std::string& d) { return v.empty() ? d : v; }

// --- census ---------------------------------------------------------------

int cmd_census(const Config& c, std::ostream& out) {
  require_mode(c);
  auto f = make_rule(c.rule, c.q, c.n);
  if (c.format == "csv") {
    if (!c.exact) throw UsageError("per-profile CSV needs --exact");
    ManipulationIndex index(f, exact_mode(c));
    write_profile_flags_csv(out, index);
    return kPass;
  }
  auto report = c.exact ? census(f, exact_mode(c)) : census(f, sampled_mode(c), c.cap);
  report.rule = c.rule;
  out << census_json(report).dump(2) << "\n";
  if (report.pass_thm13 == false || report.pass_thm16 == false) return kBoundFail;
  return kPass;
}

// --- verify ---------------------------------------------------------------

struct Check {
  std::string name;
  std::string status;  // PASS, FAIL, N/A
  std::string detail;
};

struct Suite {
  std::vector<Check> checks;

  void add(const std::string& name, std::optional<bool> ok, const std::string& detail = "") {
    checks.push_back({name, !ok ? "N/A" : (*ok ? "PASS" : "FAIL"), detail});
  }
  bool failed() const {
    return std::any_of(checks.begin(), checks.end(), [](const Check& k) { return k.status == "FAIL"; });
  }
};

std::string compare_text(const Rational& lhs, const char* op, const Rational& rhs) {
  return to_string(lhs) + " " + op + " " + to_string(rhs);
}

void suite_lemmas(Suite& s, const Config& c) {
  const int q = c.q ? c.q : 3;
  const std::size_t n = c.n ? c.n : 2;
  auto f = make_rule(c.rule, q, n);
  auto table = tabulate(f, exact_mode(c));
  std::vector<Rational> var(static_cast<std::size_t>(q) + 1);
  Rational var_sum = 0;
  for (Alternative a = 1; a <= q; ++a) var_sum += (var[static_cast<std::size_t>(a)] = variance_indicator(f, a, exact_mode(c)));
  std::vector<CoordinateInfluence> inf;
  for (std::size_t i = 0; i < n; ++i) inf.emplace_back(*table, i, c.workers);

  for (std::size_t i = 0; i < n; ++i) {
    Rational by_value = 0, by_pair = 0;
    for (Alternative a = 1; a <= q; ++a) {
      by_value += inf[i].value(SingleInfluence{a});
      for (Alternative b = 1; b <= q; ++b)
        if (a != b) by_pair += inf[i].value(PairInfluence{a, b});
    }
    const Rational total = inf[i].value(TotalInfluence{});
    s.add("influence_decomposition[i=" + std::to_string(i + 1) + "]", total == by_value && total == by_pair,
          "Inf_i = " + to_string(total));
  }
  for (Alternative a = 1; a <= q; ++a) {
    Rational sum = 0;
    for (std::size_t i = 0; i < n; ++i) sum += inf[i].value(SingleInfluence{a});
    const Rational& v = var[static_cast<std::size_t>(a)];
    s.add("total_influence_bounds_variance[a=" + std::to_string(a) + "]",
          v == 0 ? std::nullopt : std::optional<bool>(sum >= v), compare_text(sum, ">=", v));
  }
  const Rational dconst = dist_to_const(f, exact_mode(c));
  const Rational rhs = Rational(q, 2) * var_sum;
  s.add("constant_distance_bound", dconst == 0 ? std::nullopt : std::optional<bool>(dconst <= rhs),
        compare_text(dconst, "<=", rhs));
  const auto ts = all_transpositions(q);
  for (std::size_t i = 0; i < n; ++i) {
    for (Alternative a = 1; a <= q; ++a) {
      Rational refined = 0;
      for (const auto& z : ts) refined += inf[i].value(SingleRefinedInfluence{a, z});
      const Rational single = inf[i].value(SingleInfluence{a});
      const Rational bound = single / (q * q);
      s.add("refined_influence_bound[i=" + std::to_string(i + 1) + ",a=" + std::to_string(a) + "]",
            single == 0 ? std::nullopt : std::optional<bool>(refined >= bound),
            compare_text(refined, ">=", bound));
    }
  }

  const bool neutral = is_neutral(f, exact_mode(c)).neutral;
  struct L {
    const char* name;
    BoundaryLemma lemma;
    bool needs_neutral;
  };
  for (const L& l : {L{"large_boundary_pair", BoundaryLemma::Plain, false},
                     L{"large_boundary_pair_neutral", BoundaryLemma::PlainNeutral, true},
                     L{"large_refined_boundary_pair", BoundaryLemma::Refined, false},
                     L{"large_refined_boundary_pair_neutral", BoundaryLemma::RefinedNeutral, true}}) {
    const bool refined = l.lemma == BoundaryLemma::Refined || l.lemma == BoundaryLemma::RefinedNeutral;
    if (n < 2 || q < (l.needs_neutral ? 4 : 3) || (l.needs_neutral && !neutral)) {
      s.add(l.name, std::nullopt, "hypotheses not met");
      continue;
    }
    auto r = find_large_boundary_pair(f, l.lemma, std::nullopt, exact_mode(c));
    if (r.epsilon == 0) {
      s.add(l.name, std::nullopt, "epsilon = 0");
      continue;
    }
    if (r.pairs) {
      const auto& [p, t] = *r.pairs;
      const bool ok = p.i != t.i && p.influence >= r.pair_threshold && t.influence >= r.pair_threshold;
      s.add(l.name, ok,
            "i=" + std::to_string(p.i + 1) + " (" + std::to_string(p.a) + "," + std::to_string(p.b) +
                ") j=" + std::to_string(t.i + 1) + " (" + std::to_string(t.a) + "," + std::to_string(t.b) +
                ") threshold " + to_string(r.pair_threshold));
    } else if (refined) {
      s.add(l.name, *r.two_manipulable_fraction >= *r.manipulation_threshold,
            "2-manipulable " + compare_text(*r.two_manipulable_fraction, ">=", *r.manipulation_threshold));
    } else {
      s.add(l.name, false, "no pair found");
    }
  }
}

template <class V>
void path_census_checks(Suite& s, const PathMap<V>& m, const BigInt& bound,
                        const std::optional<std::type_identity_t<GroupAction<V>>>& group, unsigned workers) {
  auto c = inverse_image_census(m, false, workers);
  s.add(m.name + ":endpoints_and_lengths", c.endpoints_ok && c.lengths_ok,
        "max length " + std::to_string(c.observed_max_length) + " <= " + std::to_string(c.declared_max_length));
  s.add(m.name + ":union_bound", c.union_bound_ok);
  s.add(m.name + ":census_bound", BigInt(c.max_total) <= bound,
        "max |G^-1(z)| = " + std::to_string(c.max_total) + " <= " + bound.str());
  if (!group) return;
  auto v = verify_invariance(m, *group);
  s.add(m.name + ":invariance", v.pass(), v.witness.empty() ? std::to_string(v.checks) + " checks" : v.witness);
  const auto h = group->elements.size();
  const Rational step = symmetric_step_bound(m.sources.size(), m.targets.size(), h);
  const Rational total = symmetric_total_bound(m.sources.size(), m.targets.size(), h, m.max_length);
  s.add(m.name + ":symmetric_step_bound", Rational(c.max_step_overall) <= step,
        compare_text(Rational(c.max_step_overall), "<=", step));
  s.add(m.name + ":symmetric_total_bound", Rational(c.max_total) <= total,
        compare_text(Rational(c.max_total), "<=", total));
}

template <class V>
void junction_check(Suite& s, const PathMap<V>& m, const std::string& label, bool last,
                    const std::function<bool(std::uint64_t)>& ok, const std::string& what) {
  auto counts = part_endpoint_census(m, label, last);
  std::uint64_t lo = UINT64_MAX, hi = 0;
  for (const auto& [k, n] : counts) {
    lo = std::min(lo, n);
    hi = std::max(hi, n);
  }
  bool good = true;
  for (const auto& [k, n] : counts) good = good && ok(n);
  s.add(m.name + ":junction_" + label + (last ? "_end" : "_start"), good,
        "counts in [" + std::to_string(lo) + ", " + std::to_string(hi) + "], " + what);
}

void suite_paths(Suite& s, const Config& c) {
  const int q = c.q ? c.q : 4;
  if (q < 4) throw UsageError("the paths suite needs q >= 4");
  const Letters l{1, 2, 3, 4};
  for (int k : {3, q}) path_census_checks(s, bubble_map(k), bound_bubble_map(k), relabeling_action_rankings(k, {}), c.workers);
  {
    auto m = order_preserving_map(q, 1, 2);
    path_census_checks(s, m, bound_order_preserving(q), relabeling_action_rankings(q, {1, 2}), c.workers);
    bool inside = true;
    for (const auto& x : m.sources)
      for (const auto& y : m.targets)
        for (const auto& v : m.generate(x, y).vertices) inside = inside && v.prefers(1, 2);
    s.add(m.name + ":a_above_b", inside);
  }
  {
    auto m = generic_refined_map(q, l);
    path_census_checks(s, m, bound_generic_refined(q), relabeling_action_rankings(q, {1, 2, 3, 4}), c.workers);
    const std::uint64_t qf = factorial(q);
    junction_check(s, m, "I", true, [qf](std::uint64_t n) { return n == qf; }, "expected exactly q!");
  }
  {
    auto m = block_refined_map(q, l);
    path_census_checks(s, m, bound_block_refined(q), relabeling_action_rankings(q, {1, 2, 3, 4}), c.workers);
    const BigInt b = bound_block_refined(q);
    junction_check(s, m, "I", true, [b](std::uint64_t n) { return BigInt(n) <= b; }, "bound 2q^3q!");
    junction_check(s, m, "Pi", false, [b](std::uint64_t n) { return BigInt(n) <= b; }, "bound 2q^3q!");
  }
  if (q == 4) {
    auto m = refined_profile_map(4, 2, l, 0, 1);
    path_census_checks<ProfilePair>(s, m, bound_refined_profile(4, 2), std::nullopt, c.workers);
  } else {
    s.add("refined:census_bound", std::nullopt, "profile-pair census runs at q = 4 only");
  }
}

void suite_gs(Suite& s, const Config& c) {
  const int q = c.q ? c.q : 3;
  const std::size_t n = c.n ? c.n : 2;
  const std::uint64_t count = c.samples ? c.samples : 1000;
  const std::uint64_t seed = c.seed.value_or(1);
  auto rng = block_rng(seed, 0);
  std::uint64_t applicable = 0, witnesses = 0, bad = 0;
  for (std::uint64_t k = 0; k < count; ++k) {
    auto f = random_tabular(rng, q, n);
    auto o = gs_witness(f, exact_mode(c));
    if (!o.applicable) continue;
    ++applicable;
    if (o.witness && is_manipulation_pair(f, o.witness->x, o.witness->y))
      ++witnesses;
    else
      ++bad;
  }
  s.add("gs_witnesses", applicable == 0 ? std::nullopt : std::optional<bool>(bad == 0),
        std::to_string(witnesses) + "/" + std::to_string(applicable) + " applicable functions have witnesses (" +
            std::to_string(count) + " drawn)");
}

void suite_neutrality(Suite& s, const Config& c) {
  const int q = c.q ? c.q : 3;
  const std::size_t n = c.n ? c.n : 3;
  const bool exact = profile_count(q, n) && *profile_count(q, n) <= c.cap;
  for (const auto& [rule, expected] : std::vector<std::pair<std::string, bool>>{
           {"borda", true}, {"plurality", true}, {"dictator:1", true}, {"constant:1", false}}) {
    auto f = make_rule(rule, q, n);
    auto v = exact ? is_neutral(f, exact_mode(c)) : is_neutral(f, Sampled{c.samples ? c.samples : 10000, c.seed.value_or(1), c.workers});
    std::string detail = v.neutral ? "neutral" : "not neutral";
    if (v.relabeling && v.profile) detail += " (relabeling " + to_string(*v.relabeling) + " at " + to_string(*v.profile) + ")";
    s.add("neutrality[" + rule + "]", v.neutral == expected, detail);
  }
}

int cmd_verify(const Config& c, const std::string& suite, std::ostream& out) {
  Suite s;
  if (suite == "lemmas")
    suite_lemmas(s, c);
  else if (suite == "paths")
    suite_paths(s, c);
  else if (suite == "gs")
    suite_gs(s, c);
  else if (suite == "neutrality")
    suite_neutrality(s, c);
  else
    throw UsageError("unknown suite " + suite);
  if (c.format == "csv") {
    out << "check,status,detail\n";
    for (const auto& k : s.checks) out << k.name << ',' << k.status << ",\"" << k.detail << "\"\n";
  } else {
    json j;
    j["suite"] = suite;
    j["rule"] = c.rule;
    j["checks"] = json::array();
    for (const auto& k : s.checks) j["checks"].push_back({{"name", k.name}, {"status", k.status}, {"detail", k.detail}});
    j["pass"] = !s.failed();
    out << j.dump(2) << "\n";
  }
  return s.failed() ? kBoundFail : kPass;
}

// --- paths ----------------------------------------------------------------

ProfilePair parse_pair(const std::string& text, const std::optional<std::pair<AdjTransposition, std::size_t>>& partner) {
  auto semi = text.find(';');
  if (semi == std::string::npos) {
    if (!partner) throw DomainError("expected \"x ; x'\"");
    Profile x = parse_profile(text);
    return {x, apply_adjacent(partner->first, partner->second, x)};
  }
  auto trim = [](std::string s) {
    s.erase(0, s.find_first_not_of(' '));
    s.erase(s.find_last_not_of(' ') + 1);
    return s;
  };
  return {parse_profile(trim(text.substr(0, semi))), parse_profile(trim(text.substr(semi + 1)))};
}

struct PathArgs {
  std::string kind;
  std::string from;
  std::string to;
  Letters letters;
  std::size_t i = 1;
  std::size_t j = 2;
};

int cmd_paths(const PathArgs& p, std::ostream& out) {
  const Letters& l = p.letters;
  auto emit = [&](const auto& path, const std::vector<std::string>& violations) {
    if (!violations.empty()) {
      std::ostringstream msg;
      for (const auto& v : violations) msg << v << "; ";
      throw TheoremViolation("constructed path breaks its discipline: " + msg.str());
    }
    write_path(out, path, p.kind + " " + p.from + " -> " + p.to);
    return kPass;
  };
  const std::map<std::string, RankingPathKind> ranking_kinds{
      {"bubble", RankingPathKind::Bubble},   {"order_preserving", RankingPathKind::OrderPreserving},
      {"sim_canon", RankingPathKind::SimCanon}, {"generic", RankingPathKind::Generic},
      {"block", RankingPathKind::Block}};
  if (auto it = ranking_kinds.find(p.kind); it != ranking_kinds.end()) {
    const Ranking x = parse_ranking(p.from);
    const Ranking z = parse_ranking(p.to);
    Path<Ranking> path;
    switch (it->second) {
      case RankingPathKind::Bubble: path = bubble_map_path(x, z); break;
      case RankingPathKind::OrderPreserving: path = order_preserving_path(l.a, l.b, x, z); break;
      case RankingPathKind::SimCanon: path = sim_canon_path(l.a, l.b, x, z); break;
      case RankingPathKind::Generic: path = generic_refined_path(l, x, z); break;
      case RankingPathKind::Block: path = block_refined_path(l, x, z); break;
    }
    return emit(path, discipline_violations(it->second, l, x, z, path));
  }
  if (p.i == 0 || p.j == 0) throw DomainError("voters are numbered from 1");
  const std::size_t i = p.i - 1;
  const std::size_t j = p.j - 1;
  if (p.kind == "v1") {
    auto s = parse_pair(p.from, std::nullopt);
    auto e = parse_pair(p.to, std::nullopt);
    auto path = profile_path_v1(l, i, j, s, e);
    return emit(path, discipline_violations_v1(l, i, j, s, e, path));
  }
  if (p.kind == "refined") {
    auto s = parse_pair(p.from, std::pair{AdjTransposition(l.a, l.b), i});
    auto e = parse_pair(p.to, std::pair{AdjTransposition(l.c, l.d), j});
    auto path = refined_profile_path(l, i, j, s, e);
    return emit(path, discipline_violations_refined(l, i, j, s, e, path));
  }
  throw UsageError("unknown path kind " + p.kind);
}

// --- scaling, influence -----------------------------------------------------

int cmd_scaling(const Config& c, const std::string& ns_text, std::ostream& out) {
  if (c.samples == 0) throw UsageError("scaling needs --samples K");
  std::vector<std::size_t> ns;
  std::stringstream in(ns_text);
  for (std::string item; std::getline(in, item, ',');) ns.push_back(parse_index(item));
  const int q = c.q ? c.q : 3;
  auto rows = plurality_scaling_experiment(q, ns, sampled_mode(c));
  if (c.format == "csv") {
    out << "n,manipulable,manipulable_stderr,near_tie,near_tie_stderr\n";
    for (const auto& r : rows)
      out << r.n << ',' << json(r.manipulable.value).dump() << ',' << json(r.manipulable.stderr_).dump() << ','
          << json(r.near_tie.value).dump() << ',' << json(r.near_tie.stderr_).dump() << '\n';
    return kPass;
  }
  json j{{"rule", "plurality"}, {"q", q}, {"samples", c.samples}, {"seed", *c.seed}, {"rows", json::array()}};
  for (const auto& r : rows)
    j["rows"].push_back({{"n", r.n}, {"manipulable", estimate_json(r.manipulable)}, {"near_tie", estimate_json(r.near_tie)}});
  out << j.dump(2) << "\n";
  return kPass;
}

int cmd_influence(const Config& c, std::ostream& out) {
  auto f = make_rule(c.rule, c.q, c.n);
  if (c.format == "csv") {
    write_influence_csv(out, f, exact_mode(c));
    return kPass;
  }
  auto table = tabulate(f, exact_mode(c));
  json j{{"rule", c.rule}, {"q", c.q}, {"n", c.n}, {"coordinates", json::array()}};
  for (std::size_t i = 0; i < c.n; ++i) {
    CoordinateInfluence inf(*table, i, c.workers);
    json single = json::array();
    for (Alternative a = 1; a <= c.q; ++a) single.push_back(rational_json(inf.value(SingleInfluence{a})));
    j["coordinates"].push_back({{"i", i + 1}, {"total", rational_json(inf.value(TotalInfluence{}))}, {"single", single}});
  }
  json var = json::array();
  for (Alternative a = 1; a <= c.q; ++a) var.push_back(rational_json(variance_indicator(f, a, exact_mode(c))));
  j["variance"] = var;
  out << j.dump(2) << "\n";
  return kPass;
}

}  // namespace

SocialChoiceFn make_rule(const std::string& text, int q, std::size_t n) {
  if (q < 2 || n < 1) throw DomainError("need --q >= 2 and --n >= 1");
  const auto colon = text.find(':');
  const std::string name = text.substr(0, colon);
  const std::string arg = colon == std::string::npos ? "" : text.substr(colon + 1);
  if (name == "borda") return borda_voter1_tiebreak(q, n);
  if (name == "plurality") return plurality_leftmost(q, n);
  if (name == "constant") return constant(q, n, static_cast<Alternative>(parse_index(with_default(arg, "1"))));
  if (name == "dictator") {
    const std::size_t voter = parse_index(with_default(arg, "1"));
    if (voter == 0) throw DomainError("voters are numbered from 1");
    return dictator_top(q, n, voter - 1);
  }
  if (name == "random") {
    std::mt19937_64 rng(parse_index(with_default(arg, "0")));
    return random_tabular(rng, q, n);
  }
  if (name == "tabular") {
    auto table = std::make_shared<const TabularScf>(load_tabular_file(arg));
    if (table->alternatives() != q || table->voters() != n)
      throw DomainError("table dimensions differ from --q/--n");
    return tabular(table);
  }
  throw DomainError("unknown rule " + text);
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Manipulation censuses, bound checks and canonical paths for social choice functions"};
  app.require_subcommand(1);
  Config c;
  if (const char* env = std::getenv("GSLAB_CAP")) {
    try {
      c.cap = parse_index(env);
    } catch (const std::exception&) {
      err << "GSLAB_CAP is not a number\n";
      return kUsage;
    }
  }
  auto common = [&](CLI::App* sub, bool rule) {
    if (rule) sub->add_option("--rule", c.rule, "borda | plurality | constant:A | dictator:I | random:SEED | tabular:PATH");
    sub->add_option("--q", c.q, "number of alternatives");
    sub->add_option("--n", c.n, "number of voters");
    sub->add_flag("--exact", c.exact, "exhaustive enumeration");
    sub->add_option("--samples", c.samples, "Monte Carlo sample count");
    sub->add_option("--seed", c.seed, "seed for sampled mode");
    sub->add_option("--out", c.out, "write the report here instead of stdout");
    sub->add_option("--format", c.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--workers", c.workers, "worker threads")->check(CLI::PositiveNumber);
    sub->add_option("--cap", c.cap, "largest profile space enumerated exactly");
  };
  auto* census_cmd = app.add_subcommand("census", "manipulation census with the lower bounds");
  common(census_cmd, true);
  std::string suite;
  auto* verify_cmd = app.add_subcommand("verify", "run a verification suite");
  common(verify_cmd, true);
  verify_cmd->add_option("--suite", suite, "lemmas | paths | gs | neutrality")->required();
  PathArgs pa;
  auto* paths_cmd = app.add_subcommand("paths", "print a canonical path");
  paths_cmd->add_option("--kind", pa.kind, "bubble | order_preserving | sim_canon | generic | block | v1 | refined")->required();
  paths_cmd->add_option("--from", pa.from, "source ranking, or \"x ; x'\"")->required();
  paths_cmd->add_option("--to", pa.to, "target ranking, or \"z ; z'\"")->required();
  paths_cmd->add_option("--a", pa.letters.a);
  paths_cmd->add_option("--b", pa.letters.b);
  paths_cmd->add_option("--c", pa.letters.c);
  paths_cmd->add_option("--d", pa.letters.d);
  paths_cmd->add_option("--i", pa.i, "coordinate of the source edge (1-based)");
  paths_cmd->add_option("--j", pa.j, "coordinate of the target edge (1-based)");
  paths_cmd->add_option("--out", c.out, "write the dump here instead of stdout");
  std::string ns = "5,11,21";
  auto* scaling_cmd = app.add_subcommand("scaling", "plurality manipulation fraction against n");
  common(scaling_cmd, false);
  scaling_cmd->add_option("--ns", ns, "comma-separated voter counts");
  auto* influence_cmd = app.add_subcommand("influence", "influences of every coordinate");
  common(influence_cmd, true);

  std::vector<std::string> argv_store{"gslab"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_store) argv.push_back(a.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kPass : kUsage;
  }

  std::ostringstream buffer;
  int code = kPass;
  try {
    if (*census_cmd) {
      code = cmd_census(c, buffer);
    } else if (*verify_cmd) {
      code = cmd_verify(c, suite, buffer);
    } else if (*paths_cmd) {
      code = cmd_paths(pa, buffer);
    } else if (*scaling_cmd) {
      code = cmd_scaling(c, ns, buffer);
    } else if (*influence_cmd) {
      code = cmd_influence(c, buffer);
    }
  } catch (const TheoremViolation& e) {
    err << "theorem violation: " << e.what() << "\n";
    return kTheoremViolation;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  if (c.out.empty()) {
    out << buffer.str();
  } else {
    std::ofstream file(c.out, std::ios::binary);
    file << buffer.str();
    if (!file) {
      err << "error: cannot write " << c.out << "\n";
      return kUsage;
    }
  }
  return code;
}

}  // namespace gslab::cli
