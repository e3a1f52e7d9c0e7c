#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <string>

#include "doctest.h"
#include "json.hpp"
#include "spinlm/permissibility.hpp"
#include "spinlm/suites.hpp"

using json = nlohmann::json;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run_cli(const std::string& args) {
  const char* cli = std::getenv("SPINLM_CLI");
  REQUIRE_MESSAGE(cli != nullptr, "SPINLM_CLI must point at the spinlm binary");
  const std::string cmd = std::string("NO_COLOR=1 '") + cli + "' " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf{};
  std::size_t got = 0;
  while ((got = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

const json* find_record(const json& report, const std::string& suite, int i) {
  for (const json& r : report["records"]) {
    if (r["suite"] == suite && r["params"]["I"] == json::array({i})) return &r;
  }
  return nullptr;
}

}  // namespace

TEST_CASE("cells report at n=4") {
  const Run r = run_cli("verify cells --n 4");
  CHECK(r.code == 0);
  const json report = json::parse(r.out);
  CHECK(report["version"] == 1);
  CHECK(report["passed"] == true);
  const json* rec = find_record(report, "cells", 2);
  REQUIRE(rec != nullptr);
  CHECK((*rec)["expected"]["cells"] == 6);
  CHECK((*rec)["computed"]["cells"] == 6);
  CHECK((*rec)["status"] == "pass");
  CHECK_FALSE(rec->contains("elapsed_ms"));
}

TEST_CASE("cells at n=5 i=1 expects five") {
  const Run r = run_cli("verify cells --n 5 --index-sets 1");
  CHECK(r.code == 0);
  const json report = json::parse(r.out);
  const json* rec = find_record(report, "cells", 1);
  REQUIRE(rec != nullptr);
  CHECK((*rec)["expected"]["cells"] == 5);
}

TEST_CASE("output is identical regardless of parallelism") {
  const Run a = run_cli("verify all --n 4 --jobs 1");
  const Run b = run_cli("verify all --n 4 --jobs 6");
  CHECK(a.code == 0);
  CHECK(b.code == 0);
  CHECK(a.out == b.out);
}

TEST_CASE("records are in canonical order") {
  const json report = json::parse(run_cli("verify vertexwise --n 4 --jobs 4").out);
  std::vector<spinlm::VerificationRecord> records;
  for (const json& j : report["records"]) {
    spinlm::VerificationRecord r;
    r.suite = j["suite"];
    r.params = nlohmann::ordered_json::parse(j["params"].dump());
    r.claim = j["claim"];
    records.push_back(r);
  }
  REQUIRE(records.size() == 62);
  for (std::size_t k = 1; k < records.size(); ++k) CHECK(records[k - 1].sort_key() < records[k].sort_key());
}

TEST_CASE("general index set perm-adm") {
  const Run r = run_cli("verify perm-adm --n 4 --index-sets 0,2 --sign -");
  CHECK(r.code == 0);
  const json report = json::parse(r.out);
  REQUIRE(report["records"].size() == 1);
  CHECK(report["records"][0]["computed"]["symmetric_difference"] == 0);
}

TEST_CASE("corrupted Adm fails with a witness") {
  const Run r = run_cli("verify perm-adm --n 4 --index-sets 2 --sign + --mutate-adm");
  CHECK(r.code == 1);
  const json report = json::parse(r.out);
  CHECK(report["passed"] == false);
  bool witnessed = false;
  for (const json& rec : report["records"]) {
    if (rec["status"] == "fail") {
      witnessed = rec.contains("witness") && !rec["witness"]["only_perm"].empty();
    }
  }
  CHECK(witnessed);
}

TEST_CASE("strata, lifts and parahoric examples") {
  const json strata = json::parse(run_cli("verify strata --n 4 --index-sets 2 --sign +").out);
  const json& rec = strata["records"][0];
  CHECK(rec["computed"]["rank_2"] == 2);
  CHECK(rec["computed"]["rank_1"] == 1);
  CHECK(rec["computed"]["rank_0"] == 1);

  CHECK(run_cli("verify lifts --n 4").code == 0);

  const json para = json::parse(run_cli("verify parahoric --n 6").out);
  CHECK(para["records"][0]["computed"]["maximal_classes"] == json::array({"0", "2", "3"}));
}

TEST_CASE("usage errors exit with status 2") {
  CHECK(run_cli("verify cells --n 3").code == 2);
  CHECK(run_cli("verify cells --n 7").code == 2);
  CHECK(run_cli("verify nonsense").code == 2);
  CHECK(run_cli("verify cells --sign x").code == 2);
  CHECK(run_cli("verify cells --index-sets 1,,2").code == 2);
  CHECK(run_cli("verify cells --jobs 0").code == 2);
  CHECK(run_cli("").code == 2);
  CHECK(run_cli("enumerate perm --n 4 --i 9").code == 2);
}

TEST_CASE("large ranks need the opt-in flag") {
  CHECK(run_cli("verify parahoric --n 7").code == 2);
  CHECK(run_cli("verify parahoric --n 7-10 --allow-large").code == 0);
}

TEST_CASE("csv and text formats") {
  const Run csv = run_cli("verify cells --n 4 --format csv");
  CHECK(csv.code == 0);
  CHECK(csv.out.rfind("suite,n,I,sign,l,d,claim,expected,computed,status\n", 0) == 0);
  const Run text = run_cli("verify cells --n 4 --format text --timings");
  CHECK(text.out.find("\033[") == std::string::npos);
  CHECK(text.out.find("7/7 records passed") != std::string::npos);
}

TEST_CASE("enumerations") {
  const json subsets = json::parse(run_cli("enumerate subsets --n 4 --i 2").out);
  CHECK(subsets["items"].size() > 0);
  const json perm = json::parse(run_cli("enumerate perm --n 4 --i 2 --sign both").out);
  const auto kf = spinlm::PermNormalization::kottwitz_fiber;
  CHECK(perm["items"].size() == spinlm::enumerate_perm(2, spinlm::Sign::plus, 4, kf).size() +
                                    spinlm::enumerate_perm(2, spinlm::Sign::minus, 4, kf).size());
  const json adm = json::parse(run_cli("enumerate adm --n 4 --sign +").out);
  CHECK(adm["items"].size() == 115);
  const json faces = json::parse(run_cli("enumerate faces --n 4 --i 0").out);
  CHECK(faces["items"].size() == spinlm::permissible_subsets(0, 4).size());
}
