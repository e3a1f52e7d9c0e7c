#include "spinlm/suites.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include "spinlm/lift.hpp"
#include "spinlm/parahoric.hpp"
#include "spinlm/permissibility.hpp"

namespace spinlm {

using json = nlohmann::ordered_json;

namespace {

constexpr int kReportVersion = 1;
constexpr int kDefaultMaxRank = 6;
constexpr int kParahoricMaxRank = 12;

const char* kClaimCells = "Schubert cells at vertex i number min{i,n-i}+4, and 1 per sign when i is 0 or n";
const char* kClaimPermAdm = "permissible and admissible W_I-double cosets coincide";
const char* kClaimWPrime = "every type-III permissible coset has a representative in W'";
const char* kClaimVertexwise = "W_I-admissible cosets are exactly those whose vertex projections are admissible";
const char* kClaimStrata = "the top rank stratum holds two cells per sign and every lower stratum one cell";
const char* kClaimStrataSigns = "top rank cells split two and two between signs; lower cells lie in both";
const char* kClaimLifts = "each special-fiber representative lifts to the generic fiber";
const char* kClaimParahoric = "maximal parahoric classes are {0} and 2..floor(n/2); Xi is Z/4 for odd n, (Z/2)^2 for even n";

json coset_list(const std::vector<DoubleCoset>& cs) {
  json out = json::array();
  for (const DoubleCoset& c : cs) out.push_back(c.rep().str());
  return out;
}

json label_list(const std::vector<VertexLabel>& ls) {
  json out = json::array();
  for (const VertexLabel& l : ls) out.push_back(l.str());
  return out;
}

json index_json(const std::vector<int>& indices) {
  json out = json::array();
  for (int i : indices) out.push_back(i);
  return out;
}

void compare_cosets(VerificationRecord& r, const std::vector<DoubleCoset>& expected_set,
                    const std::vector<DoubleCoset>& computed_set, const char* expected_name,
                    const char* computed_name) {
  std::vector<DoubleCoset> only_expected;
  std::vector<DoubleCoset> only_computed;
  std::set_difference(expected_set.begin(), expected_set.end(), computed_set.begin(), computed_set.end(),
                      std::back_inserter(only_expected));
  std::set_difference(computed_set.begin(), computed_set.end(), expected_set.begin(), expected_set.end(),
                      std::back_inserter(only_computed));
  r.expected["cosets"] = expected_set.size();
  r.expected["symmetric_difference"] = 0;
  r.computed["cosets"] = computed_set.size();
  r.computed["symmetric_difference"] = only_expected.size() + only_computed.size();
  if (!only_expected.empty() || !only_computed.empty()) {
    r.witness[std::string("only_") + expected_name] = coset_list(only_expected);
    r.witness[std::string("only_") + computed_name] = coset_list(only_computed);
  }
}

json base_params(int n, const std::vector<int>& indices, const std::string& sign) {
  json p;
  p["n"] = n;
  p["I"] = index_json(indices);
  p["sign"] = sign;
  return p;
}

void finish(VerificationRecord& r) { r.status = r.expected == r.computed ? Status::pass : Status::fail; }

std::vector<AffineElement> corrupted_admissible(Sign s, int n, const Facet& f) {
  // Drop the whole double coset of the defining translation.
  const auto& adm = admissible_set(s, n);
  CosetIndex top({AffineElement::translation(cochar(s, n))}, f);
  std::vector<AffineElement> out;
  for (const AffineElement& w : adm) {
    if (!top.contains(w)) out.push_back(w);
  }
  return out;
}

std::vector<std::vector<int>> all_subsets(int n) {
  std::vector<std::vector<int>> out;
  for (unsigned m = 1; m < (1U << (n + 1)); ++m) {
    std::vector<int> s;
    for (int i = 0; i <= n; ++i) {
      if ((m >> i) & 1U) s.push_back(i);
    }
    out.push_back(s);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::vector<int>> singletons(int lo, int hi) {
  std::vector<std::vector<int>> out;
  for (int i = lo; i <= hi; ++i) out.push_back({i});
  return out;
}

std::vector<std::vector<int>> index_sets_for(const std::string& suite, int n, const SuiteConfig& cfg) {
  std::vector<std::vector<int>> sets;
  if (cfg.all_index_sets) {
    sets = all_subsets(n);
  } else if (cfg.index_sets) {
    for (const auto& s : *cfg.index_sets) {
      if (std::all_of(s.begin(), s.end(), [n](int i) { return i >= 0 && i <= n; })) sets.push_back(s);
    }
  } else if (suite == "vertexwise") {
    sets = all_subsets(n);
  } else if (suite == "strata" || suite == "lifts") {
    sets = singletons(1, n - 1);
  } else {
    sets = singletons(0, n);
  }
  if (suite == "cells" || suite == "strata" || suite == "lifts") {
    std::erase_if(sets, [&](const std::vector<int>& s) {
      return s.size() != 1 || ((suite != "cells") && (s[0] == 0 || s[0] == n));
    });
  }
  return sets;
}

// ---- suites ----

std::vector<VerificationRecord> cells_task(int n, int i, const SuiteConfig& cfg) {
  std::vector<VerificationRecord> out;
  if (i == 0 || i == n) {
    for (Sign s : cfg.signs) {
      VerificationRecord r{"cells", base_params(n, {i}, sign_str(s)), kClaimCells, {}, {}, Status::skipped, 0, {}};
      r.expected["cells"] = 1;
      r.computed["cells"] = enumerate_perm(i, s, n, PermNormalization::cell_index).size();
      finish(r);
      out.push_back(std::move(r));
    }
    return out;
  }
  VerificationRecord r{"cells", base_params(n, {i}, "both"), kClaimCells, {}, {}, Status::skipped, 0, {}};
  std::set<DoubleCoset> all;
  for (Sign s : {Sign::plus, Sign::minus}) {
    for (const DoubleCoset& c : enumerate_perm(i, s, n, PermNormalization::cell_index)) all.insert(c);
  }
  r.expected["cells"] = std::min(i, n - i) + 4;
  r.computed["cells"] = all.size();
  finish(r);
  out.push_back(std::move(r));
  return out;
}

std::vector<VerificationRecord> perm_adm_task(int n, const std::vector<int>& indices, Sign s, const SuiteConfig& cfg) {
  std::vector<VerificationRecord> out;
  const Facet f = Facet::of_indices(n, indices);
  VerificationRecord r{"perm-adm", base_params(n, indices, sign_str(s)), kClaimPermAdm, {}, {}, Status::skipped, 0, {}};
  std::vector<DoubleCoset> adm = cfg.mutate_adm ? double_cosets(corrupted_admissible(s, n, f), f).cosets
                                                : double_cosets(admissible_set(s, n), f).cosets;
  GeneralPerm perm;
  if (indices.size() == 1) {
    perm.cosets = enumerate_perm(indices[0], s, n, PermNormalization::kottwitz_fiber);
  } else {
    perm = enumerate_perm_general(indices, s, n, PermNormalization::kottwitz_fiber);
  }
  compare_cosets(r, adm, perm.cosets, "adm", "perm");
  finish(r);
  out.push_back(std::move(r));

  bool type_three = std::none_of(indices.begin(), indices.end(), [n](int i) { return i == 0 || i == n; });
  if (type_three) {
    VerificationRecord w{"perm-adm", base_params(n, indices, sign_str(s)), kClaimWPrime, {}, {}, Status::skipped, 0, {}};
    w.params["check"] = "w_prime_representative";
    GeneralPerm g = enumerate_perm_general(indices, s, n, PermNormalization::kottwitz_fiber);
    w.expected["missing"] = 0;
    w.computed["missing"] = g.missing_tau1_partner.size();
    if (!g.missing_tau1_partner.empty()) w.witness["cosets"] = coset_list(g.missing_tau1_partner);
    finish(w);
    out.push_back(std::move(w));
  }
  return out;
}

std::vector<VerificationRecord> vertexwise_task(int n, const std::vector<int>& indices, Sign s, const SuiteConfig& cfg) {
  const Facet f = Facet::of_indices(n, indices);
  VerificationRecord r{"vertexwise", base_params(n, indices, sign_str(s)), kClaimVertexwise, {}, {}, Status::skipped, 0, {}};
  r.expected["J"] = label_list(facet_vertex_set(indices, n));
  r.computed["J"] = label_list(facet_geometry(f).fixed_vertices);
  std::vector<DoubleCoset> adm = cfg.mutate_adm ? double_cosets(corrupted_admissible(s, n, f), f).cosets
                                                : double_cosets(admissible_set(s, n), f).cosets;
  compare_cosets(r, adm, vertexwise_intersection(indices, s, n), "adm", "intersection");
  finish(r);
  return {r};
}

std::vector<VerificationRecord> strata_task(int n, int i, const SuiteConfig& cfg) {
  std::vector<VerificationRecord> out;
  std::map<Sign, std::map<DoubleCoset, int>> ranks;
  for (Sign s : {Sign::plus, Sign::minus}) {
    for (const DoubleCoset& c : enumerate_perm(i, s, n, PermNormalization::cell_index)) {
      ranks[s][c] = stratum_rank(zero_subset(mu_vector(c.rep(), i), i, n));
    }
  }
  const int lo = std::max(0, 2 * i - n);
  for (Sign s : cfg.signs) {
    VerificationRecord r{"strata", base_params(n, {i}, sign_str(s)), kClaimStrata, {}, {}, Status::skipped, 0, {}};
    std::map<int, int> counts;
    for (const auto& [c, rank] : ranks[s]) ++counts[rank];
    for (int l = lo; l <= i; ++l) r.expected["rank_" + std::to_string(l)] = l == i ? 2 : 1;
    for (const auto& [rank, count] : counts) r.computed["rank_" + std::to_string(rank)] = count;
    finish(r);
    out.push_back(std::move(r));
  }
  VerificationRecord r{"strata", base_params(n, {i}, "both"), kClaimStrataSigns, {}, {}, Status::skipped, 0, {}};
  int top_plus = 0;
  int top_minus = 0;
  int top_shared = 0;
  int lower_shared = 0;
  int lower_single = 0;
  for (const auto& [c, rank] : ranks[Sign::plus]) {
    bool shared = ranks[Sign::minus].count(c) > 0;
    if (rank == i) {
      shared ? ++top_shared : ++top_plus;
    } else {
      shared ? ++lower_shared : ++lower_single;
    }
  }
  for (const auto& [c, rank] : ranks[Sign::minus]) {
    if (ranks[Sign::plus].count(c)) continue;
    rank == i ? ++top_minus : ++lower_single;
  }
  r.expected = {{"top_plus_only", 2}, {"top_minus_only", 2}, {"top_shared", 0}, {"lower_shared", i - lo}, {"lower_one_sign", 0}};
  r.computed = {{"top_plus_only", top_plus}, {"top_minus_only", top_minus}, {"top_shared", top_shared},
                {"lower_shared", lower_shared}, {"lower_one_sign", lower_single}};
  finish(r);
  out.push_back(std::move(r));
  return out;
}

std::vector<VerificationRecord> lifts_task(int n, int i, const SuiteConfig&) {
  std::vector<VerificationRecord> out;
  for (int l = std::max(0, 2 * i - n); l <= i; ++l) {
    for (int d = 1; d <= (l == i ? 4 : 1); ++d) {
      VerificationRecord r{"lifts", base_params(n, {i}, "both"), kClaimLifts, {}, {}, Status::skipped, 0, {}};
      r.params["l"] = l;
      r.params["d"] = d;
      LiftPair pair = build_lift(l, d, i, n);
      IsoSubset target = orbit_representative(l, d, i, n);
      LmReport rep = check_lm_conditions(pair, i, n, target);
      json failed = json::array();
      for (const LmClause& c : rep.clauses) {
        if (!c.pass) {
          failed.push_back(c.name);
          r.witness[c.name] = c.witness;
        }
      }
      r.expected["failed_clauses"] = json::array();
      r.computed["failed_clauses"] = failed;
      r.expected["reduction"] = target.str();
      r.computed["reduction"] = IsoSubset::of_positions(n, i, reduced_support(pair.plus_side)).str();
      r.expected["reduction_rank"] = l;
      r.computed["reduction_rank"] = stratum_rank(IsoSubset::of_positions(n, i, reduced_support(pair.plus_side)));
      if (l < i) {
        r.expected["dual_matches_listed"] = true;
        r.computed["dual_matches_listed"] = same_module(dual_module(pair.plus_side), listed_dual_lift(l, i, n));
      }
      finish(r);
      out.push_back(std::move(r));
    }
  }
  return out;
}

std::vector<VerificationRecord> parahoric_task(int n, const SuiteConfig&) {
  VerificationRecord r{"parahoric", json{{"n", n}}, kClaimParahoric, {}, {}, Status::skipped, 0, {}};
  XiGroup g = xi_group(n);
  std::vector<VertexLabel> expected_max{VertexLabel::std_vertex(0)};
  for (int j = 2; j <= n / 2; ++j) expected_max.push_back(VertexLabel::std_vertex(j));
  r.expected["order"] = 4;
  r.computed["order"] = g.elements.size();
  r.expected["cyclic"] = n % 2 == 1;
  r.computed["cyclic"] = g.cyclic();
  r.expected["maximal_classes"] = label_list(expected_max);
  r.computed["maximal_classes"] = label_list(maximal_classes(n));
  r.expected["classes"] = burnside_count(g);
  r.computed["classes"] = conjugacy_classes(n).size();
  if (n <= kMaxRank) {
    SpecialElements sp = special_elements(n);
    r.expected["tables_match_alcove_action"] = true;
    r.computed["tables_match_alcove_action"] = diagram_action(sp.tau1) == g.tau1 && diagram_action(sp.tau2) == g.tau2;
  }
  finish(r);
  return {r};
}

}  // namespace

std::string status_str(Status s) {
  switch (s) {
    case Status::pass: return "pass";
    case Status::fail: return "fail";
    case Status::skipped: return "skipped";
  }
  return "skipped";
}

std::string index_set_str(const std::vector<int>& indices) {
  std::string s = "{";
  for (std::size_t k = 0; k < indices.size(); ++k) s += (k ? "," : "") + std::to_string(indices[k]);
  return s + "}";
}

std::string VerificationRecord::sort_key() const {
  char buf[64];
  std::string key = suite + "|";
  std::snprintf(buf, sizeof buf, "%02d|", params.value("n", 0));
  key += buf;
  if (params.contains("I")) {
    unsigned mask = 0;
    for (const auto& i : params["I"]) mask |= 1U << i.get<int>();
    std::snprintf(buf, sizeof buf, "%02zu:%08x|", params["I"].size(), mask);
    key += buf;
  }
  key += params.value("sign", std::string{}) + "|" + params.value("check", std::string{}) + "|";
  std::snprintf(buf, sizeof buf, "%02d|%d|", params.value("l", 0), params.value("d", 0));
  key += buf;
  return key + claim;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"cells", "perm-adm", "vertexwise", "strata", "lifts", "parahoric"};
  return names;
}

void validate_config(const SuiteConfig& cfg) {
  if (cfg.n_values.empty()) throw Error("no value of n given");
  if (cfg.suites.empty()) throw Error("no suite selected");
  if (cfg.jobs < 1) throw Error("--jobs must be positive");
  if (cfg.signs.empty()) throw Error("no sign selected");
  for (const std::string& s : cfg.suites) {
    if (std::find(suite_names().begin(), suite_names().end(), s) == suite_names().end()) {
      throw Error("unknown suite '" + s + "'");
    }
  }
  bool group_suites = std::any_of(cfg.suites.begin(), cfg.suites.end(), [](const std::string& s) { return s != "parahoric"; });
  for (int n : cfg.n_values) {
    if (n < kMinRank) throw Error("n must be at least 4");
    if (n > kDefaultMaxRank && !cfg.allow_large) {
      throw Error("n=" + std::to_string(n) + " exceeds 6; pass --allow-large");
    }
    if (group_suites && n > kMaxRank) throw Error("group suites support n <= 8");
    if (n > kParahoricMaxRank) throw Error("parahoric suite supports n <= 12");
  }
}

void parse_index_sets(const std::string& text, SuiteConfig& cfg) {
  if (text == "all") {
    cfg.all_index_sets = true;
    cfg.index_sets.reset();
    return;
  }
  if (text == "vertices") {
    std::vector<std::vector<int>> sets;
    for (int i = 0; i <= kParahoricMaxRank; ++i) sets.push_back({i});
    cfg.index_sets = sets;
    cfg.all_index_sets = false;
    return;
  }
  std::vector<std::vector<int>> sets;
  std::stringstream outer(text);
  std::string part;
  while (std::getline(outer, part, ';')) {
    std::vector<int> set;
    std::stringstream inner(part);
    std::string tok;
    while (std::getline(inner, tok, ',')) {
      std::size_t used = 0;
      int v = 0;
      try {
        v = std::stoi(tok, &used);
      } catch (const std::exception&) {
        throw Error("bad index '" + tok + "' in --index-sets");
      }
      if (used != tok.size() || v < 0) throw Error("bad index '" + tok + "' in --index-sets");
      set.push_back(v);
    }
    if (set.empty()) throw Error("empty index set in --index-sets");
    std::sort(set.begin(), set.end());
    set.erase(std::unique(set.begin(), set.end()), set.end());
    sets.push_back(set);
  }
  if (sets.empty()) throw Error("--index-sets is empty");
  cfg.index_sets = sets;
  cfg.all_index_sets = false;
}

std::vector<VerificationRecord> run_suites(const SuiteConfig& cfg) {
  validate_config(cfg);
  std::vector<std::function<std::vector<VerificationRecord>()>> tasks;
  for (const std::string& suite : cfg.suites) {
    for (int n : cfg.n_values) {
      if (suite == "parahoric") {
        tasks.emplace_back([n, &cfg] { return parahoric_task(n, cfg); });
        continue;
      }
      for (const std::vector<int>& indices : index_sets_for(suite, n, cfg)) {
        if (suite == "cells") {
          tasks.emplace_back([n, i = indices[0], &cfg] { return cells_task(n, i, cfg); });
        } else if (suite == "strata") {
          tasks.emplace_back([n, i = indices[0], &cfg] { return strata_task(n, i, cfg); });
        } else if (suite == "lifts") {
          tasks.emplace_back([n, i = indices[0], &cfg] { return lifts_task(n, i, cfg); });
        } else {
          for (Sign s : cfg.signs) {
            if (suite == "perm-adm") {
              tasks.emplace_back([n, indices, s, &cfg] { return perm_adm_task(n, indices, s, cfg); });
            } else {
              tasks.emplace_back([n, indices, s, &cfg] { return vertexwise_task(n, indices, s, cfg); });
            }
          }
        }
      }
    }
  }

  std::vector<VerificationRecord> records;
  std::mutex mu;
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < tasks.size(); k = next++) {
      auto start = std::chrono::steady_clock::now();
      std::vector<VerificationRecord> rs = tasks[k]();
      double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
      for (VerificationRecord& r : rs) r.elapsed_ms = ms / static_cast<double>(rs.size());
      std::lock_guard<std::mutex> lock(mu);
      for (VerificationRecord& r : rs) records.push_back(std::move(r));
    }
  };
  std::vector<std::thread> pool;
  for (int j = 1; j < cfg.jobs; ++j) pool.emplace_back(worker);
  worker();
  for (std::thread& t : pool) t.join();
  std::sort(records.begin(), records.end(),
            [](const VerificationRecord& a, const VerificationRecord& b) { return a.sort_key() < b.sort_key(); });
  return records;
}

bool all_passed(const std::vector<VerificationRecord>& records) {
  return std::all_of(records.begin(), records.end(), [](const VerificationRecord& r) { return r.status == Status::pass; });
}

namespace {

json config_echo(const SuiteConfig& cfg) {
  json c;
  c["suites"] = cfg.suites;
  c["n"] = cfg.n_values;
  if (cfg.all_index_sets) {
    c["index_sets"] = "all";
  } else if (cfg.index_sets) {
    json sets = json::array();
    for (const auto& s : *cfg.index_sets) sets.push_back(index_json(s));
    c["index_sets"] = sets;
  } else {
    c["index_sets"] = "default";
  }
  json signs = json::array();
  for (Sign s : cfg.signs) signs.push_back(sign_str(s));
  c["signs"] = signs;
  c["allow_large"] = cfg.allow_large;
  if (cfg.mutate_adm) c["mutate_adm"] = true;
  return c;
}

json record_json(const VerificationRecord& r, bool timings) {
  json j;
  j["suite"] = r.suite;
  j["params"] = r.params;
  j["claim"] = r.claim;
  j["expected"] = r.expected;
  j["computed"] = r.computed;
  j["status"] = status_str(r.status);
  if (!r.witness.is_null()) j["witness"] = r.witness;
  if (timings) j["elapsed_ms"] = r.elapsed_ms;
  return j;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string param_str(const json& p, const char* key) {
  if (!p.contains(key)) return "";
  if (p[key].is_string()) return p[key].get<std::string>();
  if (p[key].is_array()) {
    std::vector<int> v;
    for (const auto& x : p[key]) v.push_back(x.get<int>());
    return index_set_str(v);
  }
  return p[key].dump();
}

}  // namespace

json report_json(const std::vector<VerificationRecord>& records, const SuiteConfig& cfg) {
  json out;
  out["version"] = kReportVersion;
  out["config"] = config_echo(cfg);
  json rs = json::array();
  for (const VerificationRecord& r : records) rs.push_back(record_json(r, cfg.timings));
  out["records"] = rs;
  out["passed"] = all_passed(records);
  return out;
}

std::string report_csv(const std::vector<VerificationRecord>& records, const SuiteConfig& cfg) {
  std::string out = "suite,n,I,sign,l,d,claim,expected,computed,status";
  out += cfg.timings ? ",elapsed_ms\n" : "\n";
  for (const VerificationRecord& r : records) {
    out += r.suite + "," + param_str(r.params, "n") + "," + csv_escape(param_str(r.params, "I")) + "," +
           param_str(r.params, "sign") + "," + param_str(r.params, "l") + "," + param_str(r.params, "d") + "," +
           csv_escape(r.claim) + "," + csv_escape(r.expected.dump()) + "," + csv_escape(r.computed.dump()) + "," +
           status_str(r.status);
    if (cfg.timings) out += "," + std::to_string(r.elapsed_ms);
    out += "\n";
  }
  return out;
}

std::string report_text(const std::vector<VerificationRecord>& records, const SuiteConfig& cfg, bool color) {
  std::ostringstream os;
  std::size_t passed = 0;
  for (const VerificationRecord& r : records) {
    bool ok = r.status == Status::pass;
    passed += ok ? 1 : 0;
    const char* tag = ok ? "PASS" : (r.status == Status::fail ? "FAIL" : "SKIP");
    if (color) os << (ok ? "\033[32m" : "\033[31m");
    os << tag;
    if (color) os << "\033[0m";
    os << "  " << r.suite << " n=" << param_str(r.params, "n");
    if (r.params.contains("I")) os << " I=" << param_str(r.params, "I");
    if (r.params.contains("sign")) os << " sign=" << param_str(r.params, "sign");
    if (r.params.contains("l")) os << " l=" << param_str(r.params, "l") << " d=" << param_str(r.params, "d");
    if (r.params.contains("check")) os << " [" << param_str(r.params, "check") << "]";
    if (cfg.timings) os << " (" << static_cast<long long>(r.elapsed_ms) << " ms)";
    os << "\n";
    if (!ok) {
      os << "      expected " << r.expected.dump() << "\n      computed " << r.computed.dump() << "\n";
      if (!r.witness.is_null()) os << "      witness  " << r.witness.dump() << "\n";
    }
  }
  os << passed << "/" << records.size() << " records passed\n";
  return os.str();
}

}  // namespace spinlm
