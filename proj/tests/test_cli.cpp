#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <string>

#include <doctest.h>

#include "deon/system_io.hpp"
#include "support.hpp"

using deon::Json;
using deon::testing::data;

namespace {

struct Run {
  int status = -1;
  std::string out;
};

Run deon_cli(const std::string& args) {
  std::string cmd = std::string(DEON_CLI_PATH) + " " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  int raw = pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("check exit codes and witness") {
    std::string ross = data("ross.json");
    Run reject = deon_cli("check " + ross + " 'p | ~q'");
    CHECK(reject.status == 1);
    CHECK(reject.out.find("01 ≺ 00") != std::string::npos);
    CHECK(deon_cli("check " + ross + " p").status == 0);
    CHECK(deon_cli("check " + ross + " '[11]'").status == 0);
    Run json = deon_cli("check --json " + ross + " 'p | ~q'");
    CHECK(json.status == 1);
    Json doc = Json::parse(json.out);
    CHECK(doc["accepted"] == false);
    CHECK(doc["criteria"]["downward_closed"]["relations"][0] == "01 ≺ 00");
    CHECK(deon_cli("explain " + ross + " 'p | ~q'").status == 1);
  }

  TEST_CASE("soft checks") {
    CHECK(deon_cli("check --soft " + data("assassin.json") + " '~o'").status == 0);
    CHECK(deon_cli("check --soft --epsilon 0 " + data("assassin.json") + " '~o'").status == 1);
    CHECK(deon_cli("check --soft " + data("ross.json") + " p").status == 2);
    CHECK(deon_cli("check --soft --basis variables " + data("library.json") + " '~w'").status == 0);
    CHECK(deon_cli("check --basis variables " + data("library.json") + " '~w'").status == 1);
  }

  TEST_CASE("derive") {
    Run text = deon_cli("derive " + data("indep-pq.json"));
    CHECK(text.status == 0);
    CHECK(text.out.find("4 derived obligations") != std::string::npos);
    Run json = deon_cli("derive --json " + data("indep-pq.json"));
    Json doc = Json::parse(json.out);
    CHECK(doc["count"] == 4);
    CHECK(doc["sets"][0]["models"] == Json::array({"11"}));
    CHECK(doc["limit_exceeded"] == false);
    Run capped = deon_cli("derive --limit 1 " + data("indep-pq.json"));
    CHECK(capped.status == 0);
    CHECK(capped.out.find("limit exceeded") != std::string::npos);
    CHECK(deon_cli("derive " + data("single-world.json")).out.find("0 derived obligations") != std::string::npos);
  }

  TEST_CASE("verify-paper and search") {
    Run suite = deon_cli("verify-paper --claim example-count --claim distance-laws --systems 20");
    CHECK(suite.status == 0);
    CHECK(suite.out.find("PASS example-count") != std::string::npos);
    CHECK(suite.out.find("2 claims, 0 failed") != std::string::npos);
    Run lines = deon_cli("verify-paper --json --claim example-count --claim example-library");
    std::size_t nl = lines.out.find('\n');
    REQUIRE(nl != std::string::npos);
    CHECK(Json::parse(lines.out.substr(0, nl))["claim"] == "example-count");
    Run found = deon_cli("search closed+best-implies-neighbourhood --vars 6 --seed 7");
    CHECK(found.status == 0);
    CHECK(found.out.find("counterexample for") != std::string::npos);
    Run none = deon_cli("search local-implies-closed --budget 2000 --systems 50");
    CHECK(none.status == 0);
    CHECK(none.out.find("no counterexample") != std::string::npos);
  }

  TEST_CASE("errors exit 2") {
    CHECK(deon_cli("search nosuchclaim").status == 2);
    CHECK(deon_cli("check /nonexistent.json p").status == 2);
    CHECK(deon_cli("check " + data("bad-field.json") + " p").status == 2);
    CHECK(deon_cli("check " + data("ross.json") + " 'p &'").status == 2);
    CHECK(deon_cli("check --variant best " + data("ross.json") + " p").status == 2);
    CHECK(deon_cli("frobnicate").status == 2);
    CHECK(deon_cli("search local-implies-closed --vars 9").status == 2);
  }
}
