#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(QTENSOR_CLI) + " " + args + " 2>/dev/null";
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::array<char, 4096> buf{};
  for (std::size_t n; (n = fread(buf.data(), 1, buf.size(), p)) > 0;) r.out.append(buf.data(), n);
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

nlohmann::json json_of(const Run& r) { return nlohmann::json::parse(r.out); }

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("tensor cyclic 6 --q 3 reports C3 x C6") {
  const auto r = run("tensor cyclic 6 --q 3");
  REQUIRE(r.code == 0);
  const auto j = json_of(r);
  CHECK(j["schema"] == 1);
  CHECK(j["upsilon"]["invariants"]["torsion"] == nlohmann::json::array({3, 6}));
  CHECK(j["all_passed"] == true);
}

TEST_CASE("tensor trivial and s3") {
  const auto t = json_of(run("tensor trivial --q 5"));
  CHECK(t["nu_order"] == 1);
  CHECK(t["upsilon"]["order"] == 1);
  const auto s = run("tensor s3 --q 0");
  CHECK(s.code == 0);
  CHECK(json_of(s)["all_passed"] == true);
}

TEST_CASE("closed forms from the command line") {
  CHECK(run("closed bound 3 2 --format text").out == "20\n");
  CHECK(run("closed bound 3 2 --coprime --format text").out == "9\n");
  CHECK(run("closed witt 2 3 --format text").out == "2\n");
  const auto f = json_of(run("closed freenil2 2 0"));
  CHECK(f["structure"]["ranks"]["total_rank"] == "6");
  CHECK(f["structure"]["structure"] == "Z^6");
  CHECK(run("closed cyclic inf 4 --format text").out == "C4 x Z\n");
  CHECK(json_of(run("closed class2 3 1"))["count"] == 20);
  CHECK(json_of(run("closed basis abelian 2,4 --q 2"))["orders"] == nlohmann::json::array({2, 4}));
}

TEST_CASE("verify a single pair") {
  const auto r = run("verify cyclic 2 --q 0");
  CHECK(r.code == 0);
  const auto j = json_of(r);
  REQUIRE(j["rows"].size() == 1);
  CHECK(j["rows"][0]["outcome"] == "pass");
  CHECK(j["rows"][0]["upsilon"] == j["rows"][0]["closed_form"]);
}

TEST_CASE("verify reports a corrupt Cayley table as an input error") {
  const std::string path = "qtensor_cli_bad_catalog.json";
  std::ofstream(path) << R"({"schema": 1, "groups": [{"group": {"kind": "cayley", "table": [[0, 1], [1, 1]]}}]})";
  const auto r = run("verify --catalog " + path);
  CHECK(r.code == 4);
  CHECK(json_of(r)["rows"][0]["outcome"] == "input-error");
  std::remove(path.c_str());
}

TEST_CASE("exit codes") {
  CHECK(run("tensor bogus").code == 4);
  CHECK(run("tensor cyclic 4 --q -1").code == 4);
  CHECK(run("closed nope 1").code == 4);
  CHECK(run("verify --q-range 3..1").code == 4);
  CHECK(run("tensor q8 --q 2 --max-cosets 10").code == 3);
  CHECK(run("").code == 4);
}

TEST_CASE("identical seed gives byte-identical output") {
  const auto a = run("tensor dihedral 8 --q 2 --seed 7");
  const auto b = run("tensor dihedral 8 --q 2 --seed 7");
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(json_of(a)["seed"] == 7);
  CHECK(run("verify --q-range 0..2 --seed 3").out == run("verify --q-range 0..2 --seed 3").out);
}

TEST_CASE("export matches the golden file") {
  CHECK(run("export cyclic 2 --q 0 --format gap").out == read_file(std::string(QTENSOR_GOLDEN_DIR) + "/nu_cyclic2_q0.gap"));
  const auto j = json_of(run("export cyclic 3 --q 2 --format json"));
  CHECK(j.is_object());
}
