// CLI contract checks: exit codes (0 success, 1 validation, 2 stage failure),
// stage subcommands, overrides, and the standalone extract/eval commands.

#include <sys/wait.h>

#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "hapticlang/pipeline.hpp"
#include "hapticlang/synthetic.hpp"
#include "../support/fixtures.hpp"

using namespace hapticlang;

namespace {

std::string g_bin;
int g_failures = 0;

int run_cli(const std::vector<std::string>& args, const std::string& redirect = ">/dev/null 2>&1") {
  std::string cmd = g_bin;
  for (const auto& a : args) cmd += " " + a;
  cmd += " " + redirect;
  int rc = std::system(cmd.c_str());
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

void check(bool cond, const std::string& what) {
  if (cond) {
    std::cout << "ok: " << what << "\n";
  } else {
    ++g_failures;
    std::cout << "FAILED: " << what << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: cli_tests <path-to-pipeline-binary>\n";
    return 2;
  }
  g_bin = argv[1];

  test_support::TempDir tmp("cli");
  auto fx = synthetic::write_grounding_fixture(tmp.path());
  const std::string config = fx.config_path.string();

  check(run_cli({"run", "--config", (tmp / "nope.json").string()}) == 1,
        "missing config file exits 1");

  {
    auto raw = nlohmann::json::parse(fsio::read_file(fx.config_path));
    raw["embeddings"]["path"] = "missing.txt";
    fsio::write_file(tmp / "bad.json", raw.dump());
    check(run_cli({"run", "--config", (tmp / "bad.json").string()}) == 1,
          "dangling embeddings path exits 1 before any stage");
    check(!std::filesystem::exists(fx.output_dir / "keywords.jsonl"),
          "no partial outputs after validation failure");
  }

  check(run_cli({"run", "--config", config, "--stage", "correlate"}) == 2,
        "stage without its inputs exits 2");
  check(run_cli({"run", "--config", config, "--stage", "frobnicate"}) == 1,
        "unknown stage name exits 1");

  check(run_cli({"run", "--config", config}) == 0, "full run exits 0");
  check(std::filesystem::exists(fx.output_dir / "report.txt"), "run produces the report");

  check(run_cli({"features", "--config", config}) == 0, "stage alias subcommand works");

  {
    int rc = run_cli({"run", "--config", config, "--override", "clustering.k_positive=4",
                      "--override", "output_dir=out-k4"});
    check(rc == 0, "overrides exit 0");
    auto counts = fsio::read_file(fx.root / "out-k4" / "counts_positive.csv");
    check(counts.rfind("signal_id,P1,P2,P3,P4\n", 0) == 0, "k override reaches the cluster stage");
  }

  {
    int rc = run_cli({"extract", "--method", "rule", "--in",
                      (fx.root / "transcripts.jsonl").string(), "--out",
                      (tmp / "kw.jsonl").string()});
    check(rc == 0, "standalone extract exits 0");
    check(run_cli({"eval-extraction", "--pred", (tmp / "kw.jsonl").string(), "--gold",
                   (fx.root / "gold.jsonl").string()}) == 0,
          "standalone eval-extraction exits 0");
    check(run_cli({"extract", "--method", "nonsense", "--in",
                   (fx.root / "transcripts.jsonl").string(), "--out",
                   (tmp / "kw2.jsonl").string()}) == 1,
          "bad method exits 1");
    check(run_cli({"eval-extraction", "--pred", (tmp / "kw.jsonl").string()}) == 1,
          "eval without gold exits 1");
  }

  if (g_failures > 0) {
    std::cout << g_failures << " CLI check(s) failed\n";
    return 1;
  }
  std::cout << "all CLI checks passed\n";
  return 0;
}
