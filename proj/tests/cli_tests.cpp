// Exercises the installed command-line surface: output formats,
// determinism of seeded runs, and exit codes.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"

namespace {

const std::string cli = XPAIR_CLI_PATH;

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

int run(const std::string& args) {
  const int status = std::system((cli + " " + args + " > /dev/null 2>&1").c_str());
  return WEXITSTATUS(status);
}

struct TempDir {
  std::filesystem::path path;
  TempDir() {
    path = std::filesystem::temp_directory_path() / "xpair_cli_test";
    std::filesystem::remove_all(path);
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
};

}  // namespace

TEST_CASE("seeded runs are byte-identical") {
  TempDir tmp;
  const std::string a = (tmp.path / "a.csv").string();
  const std::string b = (tmp.path / "b.csv").string();
  const std::string common =
      "verify --model curie-weiss --n 32 --beta 0.4 --reps 2000 --seed 11 --out ";
  REQUIRE(run(common + a) == 0);
  REQUIRE(run(common + b) == 0);
  const std::string bytes = slurp(a);
  CHECK(bytes == slurp(b));
  CHECK(bytes.rfind("t,empirical_tail,ci_upper,bound,vacuous,violated\n", 0) == 0);

  // a different seed changes the samples
  const std::string c = (tmp.path / "c.csv").string();
  REQUIRE(run("verify --model curie-weiss --n 32 --beta 0.4 --reps 2000 --seed 12 --out " + c) == 0);
  CHECK(bytes != slurp(c));
}

TEST_CASE("report emits the preset sections deterministically") {
  TempDir tmp;
  const std::string dir1 = (tmp.path / "r1").string();
  const std::string dir2 = (tmp.path / "r2").string();
  const std::string common =
      "report --model curie-weiss --n 16 --beta 0.5 --reps 1500 --seed 3 --out ";
  REQUIRE(run(common + dir1) == 0);
  REQUIRE(run(common + dir2) == 0);
  const std::string json = slurp(dir1 + "/report.json");
  CHECK(json == slurp(dir2 + "/report.json"));
  CHECK(slurp(dir1 + "/tail_verification.csv") == slurp(dir2 + "/tail_verification.csv"));
  CHECK(json.find("variance-identity") != std::string::npos);
  CHECK(json.find("v-bound") != std::string::npos);
  CHECK(json.find("tail-verification") != std::string::npos);
  CHECK(json.find("config-hash") != std::string::npos);
}

TEST_CASE("configuration errors exit with code 2") {
  CHECK(run("verify --model not-a-model --n 8") == 2);
  CHECK(run("verify --model ising --beta 0.1") == 2);          // missing --graph
  CHECK(run("verify --model curie-weiss --format yaml") == 2); // bad format
  CHECK(run("enumerate --model curie-weiss --n 25") == 2);     // cap exceeded
  CHECK(run("frobnicate") == 2);                               // unknown subcommand
}

TEST_CASE("edge-list files drive the graph models") {
  TempDir tmp;
  const std::string edges = (tmp.path / "path.edges").string();
  {
    std::ofstream out(edges);
    out << "# path on five vertices\n";
    for (int i = 0; i + 1 < 5; ++i) out << i << " " << i + 1 << "\n";
  }
  const std::string out_csv = (tmp.path / "coloring.csv").string();
  CHECK(run("verify --model coloring --graph " + edges +
            " --k 5 --reps 1500 --seed 2 --out " + out_csv) == 0);
  CHECK(slurp(out_csv).rfind("t,empirical_tail", 0) == 0);

  const std::string est = (tmp.path / "estimate.json").string();
  CHECK(run("estimate --graph " + edges +
            " --theta 0.2 --grid 21 --theta-max 1 --format json --out " + est) == 0);
  const std::string est_json = slurp(est);
  CHECK(est_json.find("theta_hat") != std::string::npos);
  CHECK(est_json.find("profile") != std::string::npos);

  // malformed edge list: named line diagnostics, config exit code
  const std::string broken = (tmp.path / "broken.edges").string();
  {
    std::ofstream out(broken);
    out << "0 1\n2\n";
  }
  CHECK(run("verify --model coloring --graph " + broken + " --k 5") == 2);
}

TEST_CASE("exact and spectra subcommands run clean") {
  CHECK(run("verify --model permutation --n 6") == 0);
  CHECK(run("verify --model unitary --n 6 --reps 40 --seed 4") == 0);
  CHECK(run("spectra --n 8 --reps 60 --seed 5 --format json") == 0);
  CHECK(run("simulate --model permutation --n 7 --reps 500") == 0);
  CHECK(run("bound --model sk --n 16 --beta 0.5 --grid 10") == 0);
}
