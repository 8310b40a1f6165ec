#include "catch_amalgamated.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "simfs/cli.hpp"
#include "simfs/dataset_io.hpp"
#include "simfs/fixtures.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using simfs::run_cli;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

struct Workspace {
  fs::path dir;
  explicit Workspace(const std::string& name) : dir(fs::temp_directory_path() / ("simfs_cli_" + name)) {
    fs::remove_all(dir);
    fs::create_directories(dir);
  }
  ~Workspace() { fs::remove_all(dir); }
  std::string path(const std::string& leaf) const { return (dir / leaf).string(); }
};

const std::string kTarget = "Inflation consumer prices";

}  // namespace

TEST_CASE("fixtures generate writes a readable panel") {
  Workspace ws("fixtures");
  const auto r = cli({"fixtures", "generate", "--out", ws.path("panel.csv"), "--seed", "3"});
  REQUIRE(r.code == 0);
  const auto panel = simfs::read_wdi_csv(ws.path("panel.csv"));
  for (const auto& t : simfs::benchmark_target_names()) CHECK(panel.find(t));
  CHECK(slurp(ws.path("panel.csv")) == simfs::write_wdi_csv(simfs::make_benchmark_panel(3)));
}

TEST_CASE("run writes three reports and reruns identically") {
  Workspace ws("run");
  REQUIRE(cli({"fixtures", "generate", "--out", ws.path("panel.csv")}).code == 0);
  const json config = {{"input_csv", "panel.csv"},
                       {"output_dir", "out"},
                       {"targets", {kTarget, "GNI"}},
                       {"roster", {"euc", "corrolation", "lasso"}},
                       {"cv", {{"iterations", 2}}}};
  std::ofstream(ws.path("config.json")) << config.dump();
  const auto first = cli({"run", "--config", ws.path("config.json"), "--deterministic"});
  REQUIRE(first.code == 0);
  CHECK(first.out.find("top methods") != std::string::npos);
  for (const char* f : {"report.json", "report.csv", "report.md"}) CHECK(fs::exists(ws.dir / "out" / f));
  const auto report = json::parse(slurp(ws.dir / "out" / "report.json"));
  CHECK(report["grid"].size() == 6);
  CHECK(!report.contains("generated_at"));
  const auto rows = simfs::parse_csv_records(slurp(ws.dir / "out" / "report.csv"));
  REQUIRE(rows.size() == 7);
  CHECK(rows[0] == std::vector<std::string>{"target", "method", "category", "status", "mean_mae", "mean_rmse"});
  for (std::size_t i = 1; i < rows.size(); ++i) {
    CHECK(rows[i].size() == 6);
    CHECK(std::stod(rows[i][4]) == report["grid"][i - 1]["mean_mae"].get<double>());
  }
  const auto md = slurp(ws.dir / "out" / "report.md");
  CHECK(md.find("| category | average rank |") != std::string::npos);
  const auto json_before = slurp(ws.dir / "out" / "report.json");
  const auto csv_before = slurp(ws.dir / "out" / "report.csv");
  REQUIRE(cli({"run", "--config", ws.path("config.json"), "--deterministic", "--jobs", "4"}).code == 0);
  CHECK(slurp(ws.dir / "out" / "report.json") == json_before);
  CHECK(slurp(ws.dir / "out" / "report.csv") == csv_before);
  REQUIRE(cli({"run", "--config", ws.path("config.json")}).code == 0);
  CHECK(json::parse(slurp(ws.dir / "out" / "report.json")).contains("generated_at"));
}

TEST_CASE("run config errors") {
  Workspace ws("config");
  std::ofstream(ws.path("no_input.json")) << R"({"output_dir": "out"})";
  const auto missing = cli({"run", "--config", ws.path("no_input.json")});
  CHECK(missing.code == 2);
  CHECK(missing.err.find("input_csv") != std::string::npos);

  std::ofstream(ws.path("sparse.json")) << R"({"input_csv": "x.csv", "output_dir": "out", "roster": ["Sparse"]})";
  CHECK(cli({"run", "--config", ws.path("sparse.json")}).code == 2);

  std::ofstream(ws.path("bad.json")) << "{not json";
  CHECK(cli({"run", "--config", ws.path("bad.json")}).code == 2);

  std::ofstream(ws.path("absent.json")) << R"({"input_csv": "absent.csv", "output_dir": "out"})";
  CHECK(cli({"run", "--config", ws.path("absent.json")}).code == 3);
}

TEST_CASE("a run where every cell fails exits 4") {
  Workspace ws("empty");
  REQUIRE(cli({"fixtures", "generate", "--out", ws.path("panel.csv")}).code == 0);
  std::ofstream(ws.path("c.json")) << json{{"input_csv", "panel.csv"}, {"output_dir", "out"},
                                           {"targets", {kTarget}}, {"roster", {"euc"}},
                                           {"year_range", {2000, 2001}}}
                                          .dump();
  CHECK(cli({"run", "--config", ws.path("c.json")}).code == 4);
}

TEST_CASE("select prints json and warns when k exceeds p") {
  Workspace ws("select");
  REQUIRE(cli({"fixtures", "generate", "--out", ws.path("panel.csv")}).code == 0);
  const auto r = cli({"select", "--input", ws.path("panel.csv"), "--target", kTarget, "--method", "hausdorff",
                      "--k", "5"});
  REQUIRE(r.code == 0);
  const auto j = json::parse(r.out);
  CHECK(j["selected"].size() == 5);
  CHECK(j["method"] == "hausdorff");

  const auto big = cli({"select", "--input", ws.path("panel.csv"), "--target", kTarget, "--method", "var",
                        "--k", "500"});
  REQUIRE(big.code == 0);
  CHECK(big.err.find("warning") != std::string::npos);
  const auto all = json::parse(big.out);
  CHECK(all["selected"].size() == all["scores"].size());

  const auto sparse = cli({"select", "--input", ws.path("panel.csv"), "--target", kTarget, "--method", "sparse"});
  CHECK(sparse.code == 2);
  CHECK(sparse.err.find("stepwise") != std::string::npos);
  CHECK(cli({"select", "--input", ws.path("nothing.csv"), "--target", kTarget, "--method", "euc"}).code == 3);
  CHECK(cli({"select", "--input", ws.path("panel.csv"), "--target", "GDPX", "--method", "euc"}).code == 3);
}

TEST_CASE("a planted duplicate of the target is listed first") {
  Workspace ws("duplicate");
  auto panel = simfs::make_benchmark_panel(5);
  const auto target = *panel.find(kTarget);
  panel.indicators.push_back({"Twin of the target", std::nullopt});
  panel.values.push_back(panel.values[target]);
  std::ofstream(ws.path("panel.csv")) << simfs::write_wdi_csv(panel);

  const auto r = cli({"select", "--input", ws.path("panel.csv"), "--target", kTarget, "--method", "hausdorff",
                      "--k", "3"});
  REQUIRE(r.code == 0);
  const auto j = json::parse(r.out);
  CHECK(j["selected"][0] == "Twin of the target");

  const auto d = cli({"distances", "--input", ws.path("panel.csv"), "--target", kTarget, "--measure", "euc"});
  REQUIRE(d.code == 0);
  CHECK(d.out.rfind("feature,distance\nTwin of the target,0\n", 0) == 0);
}

TEST_CASE("distances with bounds and bad measures") {
  Workspace ws("distances");
  REQUIRE(cli({"fixtures", "generate", "--out", ws.path("panel.csv")}).code == 0);
  const auto r = cli({"distances", "--input", ws.path("panel.csv"), "--target", kTarget, "--measure", "dtw",
                      "--debug-bounds"});
  REQUIRE(r.code == 0);
  std::istringstream lines(r.out);
  std::string line;
  std::getline(lines, line);
  CHECK(line == "feature,distance,l1_bound,within_bound");
  int rows = 0;
  while (std::getline(lines, line)) {
    ++rows;
    CHECK(line.size() > 5);
    CHECK(line.substr(line.size() - 5) == ",true");
  }
  CHECK(rows > 20);
  CHECK(cli({"distances", "--input", ws.path("panel.csv"), "--target", kTarget, "--measure", "cosine"}).code == 2);
}

TEST_CASE("argument errors exit 2") {
  CHECK(cli({}).code == 2);
  CHECK(cli({"select", "--method", "euc"}).code == 2);
  CHECK(cli({"frobnicate"}).code == 2);
  const auto help = cli({"run", "--help"});
  CHECK(help.code == 0);
  CHECK(help.out.find("paper23") != std::string::npos);
}
