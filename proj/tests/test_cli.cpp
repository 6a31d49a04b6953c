#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"

namespace fs = std::filesystem;

namespace {

const char* kSmall =
    "[method]\npreset = setting1\n[train]\niterations = 12\ndiscriminator_arch = 2 16 3\n"
    "generator_arch = 2 16 2\n[eval]\nreplications = 2\ngrid_resolution = 10\n";

const char* kSmallWood =
    "[method]\npreset = wood2d\n[train]\niterations = 12\ndiscriminator_arch = 2 16 3\n"
    "[eval]\nreplications = 2\ngrid_resolution = 10\n";

struct Run {
  int status;
  std::string output;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Run run(const std::string& args, const fs::path& log) {
  const std::string cmd = std::string(SEEOOD_CLI_PATH) + " " + args + " > " + log.string() + " 2>&1";
  const int raw = std::system(cmd.c_str());
  REQUIRE(WIFEXITED(raw));
  return {WEXITSTATUS(raw), slurp(log)};
}

struct Workspace {
  fs::path dir;
  explicit Workspace(const std::string& name)
      : dir(fs::temp_directory_path() / ("seeood_cli_" + name)) {
    fs::remove_all(dir);
    fs::create_directories(dir);
    std::ofstream(dir / "small.ini") << kSmall;
    std::ofstream(dir / "wood.ini") << kSmallWood;
  }
  ~Workspace() { fs::remove_all(dir); }
  std::string path(const char* name) const { return (dir / name).string(); }
  Run operator()(const std::string& args) const { return run(args, dir / "log.txt"); }
};

}  // namespace

TEST_CASE("cli: help documents every subcommand and key") {
  Workspace ws("help");
  const Run r = ws("--help");
  CHECK(r.status == 0);
  for (const char* word : {"gen-data", "train", "evaluate", "heatmap", "replicate", "compare",
                           "beta_ood", "beta_z", "n_d", "n_g", "lr_d", "lr_g", "iterations",
                           "tnr_targets", "replications", "grid_resolution", "cost_matrix",
                           "ood_subsample", "Exit status"}) {
    CHECK_MESSAGE(r.output.find(word) != std::string::npos, word);
  }
  const Run sub = ws("train --help");
  CHECK(sub.status == 0);
  for (const char* word : {"--config", "--out", "--seed", "--preset", "--data"}) {
    CHECK_MESSAGE(sub.output.find(word) != std::string::npos, word);
  }
}

TEST_CASE("cli: configuration errors exit with 2") {
  Workspace ws("config_errors");
  std::ofstream(ws.dir / "bad.ini") << "[method]\nname = wood\n[eval]\nreplications = 0\n";
  CHECK(ws("replicate --config " + ws.path("bad.ini") + " --out " + ws.path("o")).status == 2);
  CHECK(ws("replicate --out " + ws.path("o")).status == 2);
  CHECK(ws("replicate --preset setting9").status == 2);
  CHECK(ws("replicate --config " + ws.path("missing.ini")).status == 2);
  CHECK(ws("frobnicate").status == 2);
  CHECK(ws("").status == 2);
  CHECK(ws("compare --preset wood2d --out " + ws.path("o")).status == 2);
  const Run r = ws("train --config " + ws.path("bad.ini"));
  CHECK(r.output.find("replications") != std::string::npos);
}

TEST_CASE("cli: runtime errors exit with 3") {
  Workspace ws("runtime_errors");
  CHECK(ws("evaluate --config " + ws.path("small.ini") + " --out " + ws.path("o") +
           " --weights " + ws.path("nope.txt"))
            .status == 3);
  std::ofstream(ws.dir / "junk.csv") << "not,a,dataset\n";
  CHECK(ws("train --config " + ws.path("small.ini") + " --out " + ws.path("o") + " --data " +
           ws.path("junk.csv"))
            .status != 0);
  std::ofstream(ws.dir / "blocker") << "x";
  CHECK(ws("gen-data --config " + ws.path("small.ini") + " --out " + ws.path("blocker") + "/sub")
            .status == 3);
}

TEST_CASE("cli: gen-data, train, evaluate and heatmap pipeline") {
  Workspace ws("pipeline");
  const std::string common = " --config " + ws.path("small.ini") + " --seed 4 --out " + ws.path("run");
  CHECK(ws("gen-data" + common).status == 0);
  CHECK(fs::exists(ws.dir / "run" / "dataset.csv"));
  const Run tr = ws("train" + common + " --data " + ws.path("run/dataset.csv"));
  CHECK(tr.status == 0);
  for (const char* f : {"history.csv", "discriminator.txt", "generator.txt"}) {
    CHECK_MESSAGE(fs::exists(ws.dir / "run" / f), f);
  }
  const std::string from_csv = slurp(ws.dir / "run" / "history.csv");
  CHECK(ws("train --config " + ws.path("small.ini") + " --seed 4 --out " + ws.path("sim")).status ==
        0);
  CHECK(slurp(ws.dir / "sim" / "history.csv") == from_csv);

  const Run ev = ws("evaluate" + common);
  CHECK(ev.status == 0);
  CHECK(ev.output.find("TPR@95") != std::string::npos);
  CHECK(fs::exists(ws.dir / "run" / "evaluation.csv"));
  CHECK(ws("heatmap" + common).status == 0);
  CHECK(fs::exists(ws.dir / "run" / "heatmap.csv"));
  CHECK(slurp(ws.dir / "run" / "heatmap.pgm").rfind("P2\n10 10\n255\n", 0) == 0);
}

TEST_CASE("cli: replicate is deterministic") {
  Workspace ws("replicate");
  CHECK(ws("replicate --config " + ws.path("small.ini") + " --out " + ws.path("a")).status == 0);
  const Run second = ws("replicate --config " + ws.path("small.ini") + " --out " + ws.path("b"));
  CHECK(second.status == 0);
  CHECK(second.output.find("replications: 2") != std::string::npos);
  for (const char* f : {"report.csv", "summary.txt", "rep_0/history.csv", "rep_0/discriminator.txt",
                        "rep_0/generator.txt", "rep_1/heatmap.csv", "rep_1/heatmap.pgm"}) {
    REQUIRE_MESSAGE(fs::exists(ws.dir / "a" / f), f);
    CHECK_MESSAGE(slurp(ws.dir / "a" / f) == slurp(ws.dir / "b" / f), f);
  }
  CHECK(ws("replicate --config " + ws.path("small.ini") + " --seed 9 --out " + ws.path("c"))
            .status == 0);
  CHECK(slurp(ws.dir / "a" / "report.csv") != slurp(ws.dir / "c" / "report.csv"));
}

TEST_CASE("cli: compare writes both experiments and the areas") {
  Workspace ws("compare");
  const Run r = ws("compare --config " + ws.path("small.ini") + " --against " + ws.path("wood.ini") +
                   " --out " + ws.path("cmp"));
  CHECK(r.status == 0);
  CHECK(r.output.find("replication 1") != std::string::npos);
  CHECK(fs::exists(ws.dir / "cmp" / "a" / "report.csv"));
  CHECK(fs::exists(ws.dir / "cmp" / "b" / "report.csv"));
  const std::string csv = slurp(ws.dir / "cmp" / "comparison.csv");
  CHECK(csv.rfind("replication,tnr,area_a,area_b,difference\n", 0) == 0);
  CHECK(ws("compare --config " + ws.path("small.ini") + " --against " + ws.path("wood.ini") +
           " --tnr 0.5 --out " + ws.path("cmp2"))
            .status == 3);
}
