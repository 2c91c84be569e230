#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace {

const std::filesystem::path kFixtures = LTR_FIXTURES_DIR;
const std::string kTool = LTR_TOOL;

struct Run {
  int code;
  std::string out;
};

Run run(const std::string& args) {
  auto out_file = std::filesystem::temp_directory_path() / "ltr_cli_test.out";
  const std::string cmd = "\"" + kTool + "\" " + args + " > \"" + out_file.string() + "\" 2>&1";
  int status = std::system(cmd.c_str());
  std::ifstream in(out_file);
  std::stringstream buf;
  buf << in.rdbuf();
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, buf.str()};
}

std::string fixture(const std::string& name) { return "\"" + (kFixtures / name).string() + "\""; }

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

TEST_CASE("validate") {
  CHECK(run("validate " + fixture("gx.json")).code == 0);
  CHECK(run("validate " + fixture("gy.json")).code == 0);
  CHECK(run("validate " + fixture("bad_live_reset.json")).code == 2);
  CHECK(run("validate " + fixture("missing.json")).code == 2);
}

TEST_CASE("usage errors") {
  CHECK(run("").code == 2);
  CHECK(run("frobnicate").code == 2);
  CHECK(run("check " + fixture("gx.json") + " --ef p").code == 2);
  CHECK(run("check " + fixture("gx.json") + " --ef p --eg q --full").code == 2);
  CHECK(run("check " + fixture("gx.json") + " --full --reduced --ef p").code == 2);
}

TEST_CASE("check") {
  Run ef = run("check " + fixture("gx.json") + " --ef r3_reached --full --witness");
  CHECK(ef.code == 0);
  CHECK(ef.out.find("(r3,s0,t0)") != std::string::npos);
  Run red = run("check " + fixture("gx.json") + " --ef r3_reached --reduced --witness");
  CHECK(red.code == 0);
  CHECK(red.out.find("lifted run") != std::string::npos);
  CHECK(run("check " + fixture("gx.json") + " --ef nothing --full").code == 1);
  CHECK(run("check " + fixture("gy.json") + " --eg p --full").code == 0);
  CHECK(run("check " + fixture("gy.json") + " --eg p --reduced").code == 1);
  CHECK(run("check " + fixture("gy.json") + " --ef p --reduced").code == 0);
  CHECK(run("--cap 3 check " + fixture("gx.json") + " --ef r3_reached --full").code == 3);
}

TEST_CASE("reduce output feeds back into the toolchain") {
  auto dir = std::filesystem::temp_directory_path();
  auto reduced = dir / "ltr_cli_reduced.json";
  auto dot = dir / "ltr_cli_reduced.dot";
  Run r = run("reduce " + fixture("gx.json") + " -o \"" + reduced.string() + "\" --dot \"" +
              dot.string() + "\"");
  REQUIRE(r.code == 0);
  CHECK(r.out.find("12 states") != std::string::npos);
  CHECK(run("validate \"" + reduced.string() + "\"").code == 0);
  CHECK(run("check \"" + reduced.string() + "\" --ef r3_reached --full").code == 0);
  Run again = run("reduce \"" + reduced.string() + "\"");
  CHECK(again.out.find("12 states") != std::string::npos);
  auto first = slurp(dot);
  run("reduce " + fixture("gx.json") + " --dot \"" + dot.string() + "\"");
  CHECK(slurp(dot) == first);
  CHECK(run("reduce " + fixture("gx.json") + " --keep-locked").out.find("21 states") !=
        std::string::npos);
  std::filesystem::remove(reduced);
  std::filesystem::remove(dot);
}

TEST_CASE("product, stats, gen and suite") {
  auto dir = std::filesystem::temp_directory_path();
  CHECK(run("product " + fixture("gx.json")).out.find("15 states") != std::string::npos);
  Run s = run("stats " + fixture("gx.json"));
  CHECK(s.code == 0);
  CHECK(s.out.find("reduced states           12") != std::string::npos);

  auto g1 = dir / "ltr_cli_gen1.json", g2 = dir / "ltr_cli_gen2.json";
  CHECK(run("gen --seed 5 -o \"" + g1.string() + "\"").code == 0);
  CHECK(run("gen --seed 5 -o \"" + g2.string() + "\"").code == 0);
  CHECK(slurp(g1) == slurp(g2));
  CHECK(run("validate \"" + g1.string() + "\"").code == 0);

  auto report = dir / "ltr_cli_suite.json";
  Run suite = run("suite --seeds 20 --max-depth 2 --json \"" + report.string() + "\"");
  CHECK((suite.code == 0 || suite.code == 1));
  auto j = nlohmann::json::parse(slurp(report));
  CHECK(j["evaluated"] == 20);
  CHECK(j["unreducedDisagreements"] == 0);
  for (const auto& f : {g1, g2, report}) std::filesystem::remove(f);
}
