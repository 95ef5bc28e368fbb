#include "bscope/cli.hpp"
#include "bscope/report.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <unistd.h>

using bscope::Json;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
  Json json() const { return Json::parse(out); }
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = bscope::run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

class TempDir {
 public:
  TempDir() : path_(std::filesystem::temp_directory_path() / ("bscope-cli-" + std::to_string(::getpid()))) {
    std::filesystem::create_directories(path_);
  }
  ~TempDir() { std::filesystem::remove_all(path_); }
  std::string file(const std::string& name, const std::string& content = {}) const {
    const auto p = (path_ / name).string();
    if (!content.empty()) std::ofstream(p) << content;
    return p;
  }
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

const std::string kZ2 = "zd:2:gens=(1,0),(0,1)";
const std::string kXYZ = R"([{"label":"x","ray":"lattice:offset=(0,0);dir=(1,0);mode=straight"},
 {"label":"y","ray":"lattice:offset=(0,0);dir=(0,1);mode=straight"},
 {"label":"z","ray":"lattice:offset=(0,0);dir=(1,1);mode=straight"}])";

}  // namespace

TEST_CASE("cli: delta of a tree ball") {
  const auto r = run({"delta", "--group", "free:2", "--radius", "4"});
  REQUIRE(r.code == 0);
  const auto j = r.json();
  CHECK(j["schema"] == "bscope/1");
  CHECK(j["tool"]["name"] == "bscope");
  CHECK(j["status"] == "computed");
  CHECK(j["result"]["delta"] == "0");
  CHECK(j["result"]["witness"].is_null());
  CHECK(j["config"]["group"] == "free:2");
}

TEST_CASE("cli: ball export") {
  const auto r = run({"ball", "--group", "free:2", "--radius", "2"});
  REQUIRE(r.code == 0);
  const auto b = r.json()["result"];
  CHECK(b["spec"] == "free:2");
  CHECK(b["radius"] == 2);
  CHECK(b["elements"].size() == 17);
  CHECK(b["elements"][0] == Json{{"id", 0}, {"repr", "e"}, {"norm", 0}});
}

TEST_CASE("cli: exit codes") {
  CHECK(run({"ball", "--group", "free:9", "--radius", "12"}).code == 3);
  CHECK(run({"ball", "--radius", "2"}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({}).code == 2);
  CHECK(run({"ball", "--group", "zd:2:gens=(2,0),(0,2)", "--radius", "2"}).code == 2);
  CHECK(run({"ball", "--group", "free:2", "--radius", "2", "--format", "csv"}).code == 2);
  CHECK(run({"delta", "--group", "free:2"}).code == 2);
  CHECK(run({"--help"}).code == 0);
  CHECK(run({"equiv", "--group", "free:2", "--ray", "free:|a", "--ray", "free:|b", "--horizon", "6", "--M", "10"}).code == 2);
  const auto inc = run({"metric-equiv", "--group", "free:2", "--ray", "free:|a", "--ray", "free:|a", "--horizon", "4",
                        "--probe-radius", "3"});
  CHECK(inc.code == 4);
  CHECK(inc.json()["status"] == "inconclusive");
  CHECK(run({"classify", "--group", "free:2", "--ray", "free:|a", "--horizon", "10"}).code == 2);
}

TEST_CASE("cli: quotient of the lattice example") {
  TempDir dir;
  const auto samples = dir.file("xyz.json", kXYZ);
  const auto r = run({"quotient", "--group", kZ2, "--samples", "@" + samples, "--M", "20", "--horizon", "50"});
  REQUIRE(r.code == 0);
  const auto q = r.json()["result"];
  CHECK(q["partitioned"] == false);
  CHECK(q["classes"].is_null());
  REQUIRE(q["transitivity_violations"].size() == 1);
  CHECK(q["transitivity_violations"][0] == Json{{"x", "x"}, {"y", "y"}, {"z", "z"}});
}

TEST_CASE("cli: witness, classify, extended, continuity") {
  const auto w = run({"witness", "--group", "free:2", "--ray", "free:|a", "--horizon", "40", "--M", "10", "--epsilon", "1/2"});
  REQUIRE(w.code == 0);
  CHECK(w.json()["result"]["witness"]["z"] == "aaaaaaaaaaa");
  CHECK(w.json()["result"]["witness"]["bound"] == 11);

  const auto c = run({"classify", "--group", "free:2", "--ray", "free:|a", "--horizon", "12", "--epsilon", "1/2"});
  REQUIRE(c.code == 0);
  for (const auto& rep : c.json()["result"]["reports"]) {
    CHECK(rep["verdict"] == "pass");
    CHECK(rep["replayed"] == true);
  }

  const auto e = run({"extended", "--group", "free:2", "--ray", "free:|a", "--ray", "free:a|b", "--horizon", "20"});
  REQUIRE(e.code == 0);
  CHECK(e.json()["result"]["product"]["value"] == "1");
  const auto pp = run({"extended", "--group", "free:2", "--x", "ab", "--y", "aba"});
  CHECK(pp.json()["result"]["product"]["value"] == "2");
  CHECK(pp.json()["result"]["product"]["exact"] == true);

  const auto k = run({"continuity", "--group", "free:2", "--samples",
                      R"([{"label":"w","ray":"free:|a"},{"label":"w2","ray":"free:aa|b"}])", "--target", "w",
                      "--horizon", "20", "--M", "1", "--probe-radius", "4"});
  REQUIRE(k.code == 0);
  CHECK(k.json()["result"]["rows"][0]["agreement_radius"] == 2);
  CHECK(k.json()["result"]["rows"][0]["extended_product"] == "2");

  const auto p = run({"product", "--group", kZ2, "--x", "(4,0)", "--y", "(0,4)", "--z", "(2,2)"});
  REQUIRE(p.code == 0);
  CHECK(p.json()["result"]["gap"] == "0");
  CHECK(p.json()["result"]["between"] == true);
}

TEST_CASE("cli: explicit tables from files") {
  TempDir dir;
  std::string rows = "[";
  for (int t = 0; t <= 20; ++t) rows += (t ? "," : "") + std::string("[") + std::to_string(t) + ",\"(" + std::to_string(t) + "," + std::to_string(t % 2) + ")\"]";
  rows += "]";
  const auto table = dir.file("osc.json", rows);
  const auto r = run({"classify", "--group", kZ2, "--ray", "@" + table, "--horizon", "20", "--clause", "geodesic"});
  REQUIRE(r.code == 0);
  const auto rep = r.json()["result"]["reports"][0];
  CHECK(rep["verdict"] == "fail");
  CHECK(rep["witness"]["defect"] == "1");
}

TEST_CASE("cli: mean-scan csv") {
  const auto r = run({"mean-scan", "--group", "free:2", "--ray", "free:|a", "--n", "4,8", "--gen", "a", "--format", "csv"});
  REQUIRE(r.code == 0);
  CHECK(r.out == "g,omega,n,defect,defect_decimal\na,\"free:|a\",4,1/2,0.5\na,\"free:|a\",8,1/4,0.25\n");
}

TEST_CASE("cli: determinism, atomic output and verify") {
  TempDir dir;
  const auto samples = dir.file("xyz.json", kXYZ);
  const std::vector<std::string> args{"quotient", "--group", kZ2, "--samples", "@" + samples, "--M", "5", "--horizon", "20"};
  CHECK(run(args).out == run(args).out);

  const auto report = dir.file("report.json");
  auto with_out = args;
  with_out.insert(with_out.end(), {"--out", report});
  REQUIRE(run(with_out).code == 0);
  CHECK(std::filesystem::exists(report));
  CHECK_FALSE(std::filesystem::exists(report + ".tmp"));

  const auto v = run({"verify", "@" + report});
  CHECK(v.code == 0);
  CHECK(v.json()["status"] == "match");

  auto doc = Json::parse(std::ifstream(report));
  doc["result"]["labels"][0] = "tampered";
  std::ofstream(report) << doc.dump(2);
  const auto bad = run({"verify", "@" + report});
  CHECK(bad.code == 1);
  CHECK(bad.json()["status"] == "mismatch");
}
