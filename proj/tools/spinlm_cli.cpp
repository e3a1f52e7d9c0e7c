// spinlm: verification suites and raw enumerations for the spin local model combinatorics.

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "CLI11.hpp"
#include "json.hpp"
#include "spinlm/bruhat.hpp"
#include "spinlm/parahoric.hpp"
#include "spinlm/permissibility.hpp"
#include "spinlm/suites.hpp"

namespace {

using json = nlohmann::ordered_json;
using spinlm::Sign;

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<int> parse_n_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    auto dash = tok.find('-');
    try {
      if (dash == std::string::npos) {
        out.push_back(std::stoi(tok));
      } else {
        int lo = std::stoi(tok.substr(0, dash));
        int hi = std::stoi(tok.substr(dash + 1));
        if (hi < lo) throw UsageError("empty range '" + tok + "' in --n");
        for (int n = lo; n <= hi; ++n) out.push_back(n);
      }
    } catch (const std::logic_error&) {
      throw UsageError("bad value '" + tok + "' in --n");
    }
  }
  if (out.empty()) throw UsageError("--n is empty");
  return out;
}

std::vector<Sign> parse_signs(const std::string& s) {
  if (s == "+" || s == "plus") return {Sign::plus};
  if (s == "-" || s == "minus") return {Sign::minus};
  if (s == "both") return {Sign::plus, Sign::minus};
  throw UsageError("--sign must be +, - or both");
}

bool use_color(bool to_terminal) {
  const char* no_color = std::getenv("NO_COLOR");
  if (no_color != nullptr && *no_color != '\0') return false;
  return to_terminal && isatty(STDOUT_FILENO) != 0;
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty() || out_path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(out_path);
  if (!f) throw UsageError("cannot open '" + out_path + "' for writing");
  f << text;
}

struct VerifyArgs {
  std::string suite;
  std::string n_text = "4";
  std::string index_sets;
  std::string sign = "both";
  std::string format = "json";
  std::string out;
  int jobs = 1;
  bool allow_large = false;
  bool mutate_adm = false;
  bool timings = false;
  bool dedupe = false;
};

int run_verify(const VerifyArgs& a) {
  spinlm::SuiteConfig cfg;
  cfg.n_values = parse_n_list(a.n_text);
  cfg.signs = parse_signs(a.sign);
  cfg.jobs = a.jobs;
  cfg.allow_large = a.allow_large;
  cfg.mutate_adm = a.mutate_adm;
  cfg.timings = a.timings;
  if (a.suite == "all") {
    cfg.suites = spinlm::suite_names();
  } else {
    cfg.suites = {a.suite};
  }
  if (!a.index_sets.empty()) spinlm::parse_index_sets(a.index_sets, cfg);
  if (a.dedupe && cfg.index_sets) {
    // Canonical images only make sense relative to one n.
    if (cfg.n_values.size() != 1) throw UsageError("--dedupe needs a single --n");
    std::vector<std::vector<int>> kept;
    for (const auto& s : *cfg.index_sets) {
      auto c = spinlm::normalize_index(s, cfg.n_values.front());
      if (std::find(kept.begin(), kept.end(), c) == kept.end()) kept.push_back(c);
    }
    cfg.index_sets = kept;
  }
  spinlm::validate_config(cfg);

  auto records = spinlm::run_suites(cfg);
  std::string text;
  if (a.format == "json") {
    text = spinlm::report_json(records, cfg).dump(2) + "\n";
  } else if (a.format == "csv") {
    text = spinlm::report_csv(records, cfg);
  } else {
    bool to_terminal = a.out.empty() || a.out == "-";
    text = spinlm::report_text(records, cfg, use_color(to_terminal));
  }
  emit(text, a.out);
  return spinlm::all_passed(records) ? kExitPass : kExitFail;
}

struct EnumerateArgs {
  std::string what;
  int n = 4;
  int i = 0;
  std::string index_sets;
  std::string sign = "+";
  std::string out;
  bool allow_large = false;
};

json coset_json(const spinlm::DoubleCoset& c, int i) {
  json j;
  j["rep"] = c.rep().str();
  if (i >= 0) {
    spinlm::IsoSubset e = spinlm::zero_subset(spinlm::mu_vector(c.rep(), i), i, c.rep().rank());
    j["E"] = e.str();
    j["rank"] = spinlm::stratum_rank(e);
  }
  return j;
}

int run_enumerate(const EnumerateArgs& a) {
  if (a.n < spinlm::kMinRank || a.n > spinlm::kMaxRank) throw UsageError("--n must lie in [4, 8]");
  if (a.n > 6 && !a.allow_large) throw UsageError("n > 6 needs --allow-large");
  if (a.i < 0 || a.i > a.n) throw UsageError("--i must lie in [0, n]");
  std::vector<Sign> signs = parse_signs(a.sign);
  json out;
  out["what"] = a.what;
  out["n"] = a.n;
  json items = json::array();
  if (a.what == "adm") {
    for (Sign s : signs) {
      for (const auto& w : spinlm::admissible_set(s, a.n)) {
        items.push_back({{"sign", spinlm::sign_str(s)}, {"element", w.str()}, {"length", spinlm::length(w)}});
      }
    }
  } else if (a.what == "perm") {
    std::vector<int> indices{a.i};
    if (!a.index_sets.empty()) {
      spinlm::SuiteConfig tmp;
      spinlm::parse_index_sets(a.index_sets, tmp);
      if (!tmp.index_sets || tmp.index_sets->size() != 1) throw UsageError("enumerate perm takes one index set");
      indices = tmp.index_sets->front();
      for (int i : indices) {
        if (i > a.n) throw UsageError("index set exceeds n");
      }
    }
    out["I"] = indices;
    for (Sign s : signs) {
      auto cosets = indices.size() == 1
                        ? spinlm::enumerate_perm(indices[0], s, a.n, spinlm::PermNormalization::kottwitz_fiber)
                        : spinlm::enumerate_perm_general(indices, s, a.n, spinlm::PermNormalization::kottwitz_fiber).cosets;
      for (const auto& c : cosets) {
        json j = coset_json(c, indices.size() == 1 ? indices[0] : -1);
        j["sign"] = spinlm::sign_str(s);
        items.push_back(j);
      }
    }
  } else if (a.what == "faces") {
    out["i"] = a.i;
    for (const auto& e : spinlm::permissible_subsets(a.i, a.n)) {
      spinlm::Face f = spinlm::face_of_subset(e);
      json vs;
      for (const auto& [j, v] : f.base()) vs[std::to_string(j)] = v.str();
      items.push_back({{"E", e.str()}, {"d", f.d()}, {"v", vs}});
    }
  } else if (a.what == "subsets") {
    out["i"] = a.i;
    for (const auto& e : spinlm::permissible_subsets(a.i, a.n)) {
      json signs_json = json::array();
      for (Sign s : spinlm::subset_signs(e)) signs_json.push_back(spinlm::sign_str(s));
      json j{{"E", e.str()}, {"rank", spinlm::stratum_rank(e)}, {"signs", signs_json}};
      if (a.i > 0 && a.i < a.n) {
        spinlm::OrbitClass c = spinlm::orbit_classify(e);
        j["type"] = c.type;
        j["d"] = c.d;
      }
      items.push_back(j);
    }
  } else {
    throw UsageError("unknown enumeration '" + a.what + "'");
  }
  out["items"] = items;
  emit(out.dump(2) + "\n", a.out);
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spin local model combinatorics: verification suites and enumerations"};
  app.require_subcommand(1);

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "Run verification suites and report records");
  std::vector<std::string> suite_choices = spinlm::suite_names();
  suite_choices.push_back("all");
  verify->add_option("suite", va.suite, "Suite name or 'all'")->required()->check(CLI::IsMember(suite_choices));
  verify->add_option("--n", va.n_text, "Ranks, e.g. 4 or 4,5 or 4-6")->capture_default_str();
  verify->add_option("--index-sets", va.index_sets, "'0,2;1;3', 'all' or 'vertices'");
  verify->add_option("--sign", va.sign, "+, - or both")->capture_default_str();
  verify->add_option("--format", va.format, "json, csv or text")
      ->check(CLI::IsMember({"json", "csv", "text"}))
      ->capture_default_str();
  verify->add_option("--out", va.out, "Output path (default stdout)");
  verify->add_option("--jobs", va.jobs, "Worker threads")->check(CLI::PositiveNumber)->capture_default_str();
  verify->add_flag("--allow-large", va.allow_large, "Permit n > 6");
  verify->add_flag("--timings", va.timings, "Include elapsed_ms in records");
  verify->add_flag("--dedupe", va.dedupe, "Collapse I and n-I to one index set");
  verify->add_flag("--mutate-adm", va.mutate_adm, "Test hook: corrupt Adm before comparing")->group("");

  EnumerateArgs ea;
  auto* enumerate = app.add_subcommand("enumerate", "Dump raw enumerations as JSON");
  enumerate->add_option("what", ea.what, "perm, adm, faces or subsets")
      ->required()
      ->check(CLI::IsMember({"perm", "adm", "faces", "subsets"}));
  enumerate->add_option("--n", ea.n, "Rank")->capture_default_str();
  enumerate->add_option("--i", ea.i, "Vertex index")->capture_default_str();
  enumerate->add_option("--index-sets", ea.index_sets, "One index set for perm, e.g. '0,2'");
  enumerate->add_option("--sign", ea.sign, "+, - or both")->capture_default_str();
  enumerate->add_option("--out", ea.out, "Output path (default stdout)");
  enumerate->add_flag("--allow-large", ea.allow_large, "Permit n > 6");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitPass : kExitUsage;
  }

  try {
    if (verify->parsed()) return run_verify(va);
    return run_enumerate(ea);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const spinlm::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}
