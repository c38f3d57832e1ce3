#include <cstdlib>
#include <filesystem>
#include <unistd.h>
#include <sys/wait.h>

#include "doctest.h"
#include "reqcomp/app/commands.h"
#include "reqcomp/ml/model.h"
#include "reqcomp/util/errors.h"
#include "reqcomp/util/io.h"

using namespace reqcomp;
using namespace reqcomp::app;
namespace fs = std::filesystem;

namespace {

const fs::path kData = REQCOMP_TEST_DATA;

fs::path scratch(const std::string& name) {
  auto p = fs::temp_directory_path() / ("reqcomp_app_" + name + "_" + std::to_string(::getpid()));
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

RunConfig sample_config() {
  RunConfig c;
  c.inputs = {kData / "monitoring" / "disclosed.txt"};
  c.fixture = kData / "monitoring" / "fixture";
  return c;
}

int run_cli(const std::string& args, const std::string& env = "") {
  std::string cmd = env + " " + REQCOMP_CLI + " " + args + " >/dev/null 2>&1";
  int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST_CASE("config validation") {
  RunConfig c;
  CHECK_NOTHROW(c.validate());
  c.k = 0;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c.k = 51;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = {};
  c.depth = -1;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = {};
  c.preset = "aggressive";
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = {};
  c.which = {4};
  CHECK_THROWS_AS(c.validate(), ConfigError);
}

TEST_CASE("recommend") {
  auto c = sample_config();
  auto out = cmd_recommend(c);
  REQUIRE(out["documents"].size() == 1);
  const auto& terms = out["documents"][0]["terms"];
  std::set<std::string> seen;
  for (const auto& t : terms) {
    CHECK(seen.insert(t["term"].get<std::string>()).second);
    CHECK(t["evidence"].contains("f13"));
  }
  for (const char* w : {"stability", "network", "traffic", "comply", "security"}) CHECK(seen.count(w));
  CHECK(!seen.count("service"));
  CHECK(!seen.count("system"));
  for (std::size_t i = 1; i < terms.size(); ++i) CHECK(terms[i - 1]["score"] >= terms[i]["score"]);
  CHECK(recommendations_csv(out).rfind("doc_id,term,", 0) == 0);

  auto dir = scratch("empty");
  write_file(dir / "empty.txt", "");
  c.inputs = {dir / "empty.txt"};
  auto empty = cmd_recommend(c);
  CHECK(empty["documents"][0]["terms"].empty());
  fs::remove_all(dir);

  c = sample_config();
  c.fixture.clear();
  CHECK_THROWS_AS(cmd_recommend(c), ConfigError);
  c.provider_url = "http://127.0.0.1:1";
  try {
    cmd_recommend(c);
    FAIL("expected an unreachable provider");
  } catch (...) {
    CHECK(exit_code(std::current_exception()) == kExitProvider);
  }
}

TEST_CASE("train, evaluate and baseline") {
  auto dir = scratch("pipeline");
  auto c = sample_config();
  c.inputs = {kData / "monitoring" / "full.txt"};
  c.preset = "lenient";
  c.repetitions = 6;
  c.out = dir / "lenient.json";
  auto summary = cmd_train(c);
  CHECK(summary["preset"] == "lenient");
  CHECK(summary["algorithm"] == "SVM");
  auto model = ml::load_model(dir / "lenient.json");
  REQUIRE(model.config.cost.has_value());
  CHECK(model.config.cost->cost_fn == 2.0);
  CHECK(nlohmann::json::parse(read_file(dir / "lenient.json"))["cost"]["cost_fn"] == 2.0);

  c.preset = "none";
  CHECK_THROWS_AS(cmd_train(c), ConfigError);

  // recommend with the model as a filter keeps a subset
  auto r = sample_config();
  r.models = {(dir / "lenient.json").string()};
  auto filtered = cmd_recommend(r)["documents"][0]["terms"].size();
  CHECK(filtered <= cmd_recommend(sample_config())["documents"][0]["terms"].size());
  r.preset = "strict";
  CHECK_THROWS_AS(cmd_recommend(r), ConfigError);  // no strict model given

  auto e = sample_config();
  e.inputs = {kData / "monitoring" / "full.txt", kData / "monitoring" / "disclosed.txt"};
  e.models = {"lenient=" + (dir / "lenient.json").string()};
  e.out = dir / "eval";
  auto report = cmd_evaluate(e);
  CHECK(report.records.size() == 2 * 2);
  auto j = nlohmann::json::parse(read_file(dir / "eval" / "report.json"));
  CHECK(j["format"] == "reqcomp-eval-report");
  CHECK(j["records"].size() == 4);
  CHECK(j["config"]["filters"][0] == "lenient");
  CHECK(fs::exists(dir / "eval" / "records.csv"));

  auto b = sample_config();
  b.inputs = {kData / "monitoring" / "full.txt"};
  b.wordnet = kData / "wordnet";
  auto base = cmd_baseline(b);
  REQUIRE(base["runs"].size() == 1);
  for (const char* name : {"baseline1", "baseline2", "baseline3"}) CHECK(base["runs"][0][name].contains("hits"));
  CHECK(base["runs"][0]["baseline2"]["empty_source"] == true);
  b.wordnet.clear();
  CHECK_THROWS_AS(cmd_baseline(b), ConfigError);
  b.which = {1, 2};
  CHECK_NOTHROW(cmd_baseline(b));
  fs::remove_all(dir);
}

TEST_CASE("exit codes") {
  auto code = [](auto&& thrower) {
    try {
      thrower();
    } catch (...) {
      return exit_code(std::current_exception());
    }
    return -1;
  };
  CHECK(code([] { throw ConfigError("x"); }) == kExitConfig);
  CHECK(code([] { throw ParseError("x"); }) == kExitConfig);
  CHECK(code([] { throw NetworkError("x"); }) == kExitNetwork);
  CHECK(code([] { throw FixtureMiss("x"); }) == kExitProvider);
  CHECK(code([] { throw ProviderUnreachable("x"); }) == kExitProvider);
  CHECK(code([] { throw std::runtime_error("x"); }) == kExitInternal);
}

TEST_CASE("command line") {
  std::string disclosed = (kData / "monitoring" / "disclosed.txt").string();
  std::string fixture = (kData / "monitoring" / "fixture").string();
  CHECK(run_cli("--help") == 0);
  CHECK(run_cli("recommend --input " + disclosed + " --fixture " + fixture) == 0);
  CHECK(run_cli("recommend --input " + disclosed + " --fixture " + fixture + " --k 0") == kExitConfig);
  CHECK(run_cli("recommend --input " + disclosed + " --fixture " + fixture, "REQCOMP_K=99") == kExitConfig);
  CHECK(run_cli("recommend --input " + disclosed + " --fixture " + fixture + " --k 5", "REQCOMP_K=99") == 0);
  CHECK(run_cli("recommend --input " + disclosed, "REQCOMP_FIXTURE=" + fixture) == 0);
  CHECK(run_cli("recommend --input /nonexistent.txt --fixture " + fixture) == kExitConfig);
  CHECK(run_cli("recommend --input " + disclosed + " --provider-url http://127.0.0.1:1") == kExitProvider);
  CHECK(run_cli("nonsense") == kExitConfig);

  // fixture recorded under another id than the document: a miss
  auto dir = scratch("cli");
  write_file(dir / "other.txt", read_file(kData / "monitoring" / "disclosed.txt"));
  CHECK(run_cli("recommend --input " + (dir / "other.txt").string() + " --fixture " + fixture) == kExitProvider);

  auto out = dir / "rec.json";
  CHECK(run_cli("recommend --input " + disclosed + " --fixture " + fixture + " --out " + out.string()) == 0);
  auto first = read_file(out);
  CHECK(run_cli("recommend --input " + disclosed + " --fixture " + fixture + " --out " + out.string()) == 0);
  CHECK(read_file(out) == first);
  CHECK(nlohmann::json::parse(first)["documents"][0]["doc_id"] == "disclosed");
  fs::remove_all(dir);
}
