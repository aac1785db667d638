#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"

namespace fs = std::filesystem;

namespace {

struct Workspace {
  fs::path dir;
  Workspace() {
    dir = fs::temp_directory_path() / ("qproxy_cli_" + std::to_string(::getpid()));
    fs::create_directories(dir);
  }
  ~Workspace() { fs::remove_all(dir); }
  fs::path write(const std::string& name, const std::string& text) const {
    std::ofstream(dir / name) << text;
    return dir / name;
  }
  std::string read(const std::string& name) const {
    std::ifstream in(dir / name);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }
};

int run(const std::string& args, const Workspace& ws) {
  const std::string cmd = std::string(QPROXY_CLI_PATH) + " " + args + " >" + (ws.dir / "stdout").string() + " 2>" +
                          (ws.dir / "stderr").string();
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("detect writes a report and exits 0") {
  Workspace ws;
  const auto cfg = ws.write("run.json", R"({"states": [{"id": "w", "family": "werner", "p": 0.8}],
                                             "criteria": [{"id": "unext.feasibility", "k": 2}]})");
  CHECK(run("detect --config " + cfg.string() + " --out " + (ws.dir / "report.json").string(), ws) == 0);
  const auto doc = nlohmann::json::parse(ws.read("report.json"));
  CHECK(doc["schema"] == "qproxy-report/1");
  CHECK(doc["entries"][0]["detected"] == true);
  CHECK(ws.read("stdout").empty());
}

TEST_CASE("detect output is byte-identical across runs") {
  Workspace ws;
  const auto cfg = ws.write("run.json", R"({"states": [{"id": "r", "family": "random", "dims": [2, 2]}],
                                             "criteria": ["unext.feasibility", "unext.invariant.isotropic"]})");
  REQUIRE(run("detect --config " + cfg.string() + " --seed 9", ws) == 0);
  const std::string first = ws.read("stdout");
  REQUIRE(run("detect --config " + cfg.string() + " --seed 9 --jobs 3", ws) == 0);
  CHECK(first == ws.read("stdout"));
  CHECK(nlohmann::json::parse(first)["seed"] == 9);
}

TEST_CASE("config errors exit 2") {
  Workspace ws;
  const auto cfg = ws.write("bad.json", R"({"states": [{"id": "w", "family": "werner", "p": 0.8}],
                                             "criteria": ["unext.model.xxx", "nope"]})");
  CHECK(run("detect --config " + cfg.string(), ws) == 2);
  const std::string err = ws.read("stderr");
  CHECK(err.find("mismatch") != std::string::npos);
  CHECK(err.find("nope") != std::string::npos);
  CHECK(run("detect --config " + (ws.dir / "missing.json").string(), ws) == 2);
  CHECK(run("detect --config " + cfg.string() + " --format xml", ws) == 2);
  CHECK(run("frobnicate", ws) == 2);
}

TEST_CASE("undecided solver results exit 3 and still write the report") {
  Workspace ws;
  const auto cfg = ws.write("run.json", R"({"states": [{"id": "w", "family": "werner", "p": 0.7}],
                                             "criteria": [{"id": "unext.feasibility", "k": 2}]})");
  CHECK(run("detect --config " + cfg.string() + " --ext-iters 3 --ext-tol 1e-14", ws) == 3);
  const auto doc = nlohmann::json::parse(ws.read("stdout"));
  CHECK(doc["entries"][0]["undecided"] == true);
  CHECK(doc["summary"]["undecided"] == 1);
  CHECK(doc["config"]["solver"]["ext_iters"] == 3);
}

TEST_CASE("csv output") {
  Workspace ws;
  const auto cfg = ws.write("run.json", R"({"states": [{"id": "w", "family": "werner", "p": 0,
      "sweep": {"param": "p", "from": 0, "to": 1, "step": 0.05}}], "criteria": ["unext.feasibility"]})");
  REQUIRE(run("detect --config " + cfg.string() + " --format csv", ws) == 0);
  std::istringstream in(ws.read("stdout"));
  std::string line;
  int rows = -1;
  while (std::getline(in, line)) ++rows;
  CHECK(rows == 21);
}

TEST_CASE("model shortcut") {
  Workspace ws;
  REQUIRE(run("model xxx --sites 8 --coupling 1 --k 3 --criteria entanglement.model,steering.model,unext.model.xxx", ws) == 0);
  const auto doc = nlohmann::json::parse(ws.read("stdout"));
  REQUIRE(doc["entries"].size() == 3);
  for (const auto& e : doc["entries"]) CHECK(e["detected"] == true);
  CHECK(run("model ising --sites 6 --coupling 1 --field 0.5 --criteria coherence.basis", ws) == 0);
  CHECK(run("model j1j2 --sites 6 --coupling 1 --j2 0.5 --criteria unext.model.j1j2 --format csv", ws) == 0);
  CHECK(run("model xxx --sites 5 --criteria unext.model.xxx", ws) == 2);
  CHECK(run("model kagome --sites 4", ws) == 2);
}

}  // TEST_SUITE
