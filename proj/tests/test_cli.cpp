#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

const fs::path kDir = fs::temp_directory_path() / "kdvms_test_cli";

int run(const std::string& args) {
  const std::string cmd = std::string(KDVMS_CLI) + " " + args + " >/dev/null 2>&1";
  const int rc = std::system(cmd.c_str());
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

void write(const fs::path& p, const std::string& text) {
  fs::create_directories(p.parent_path());
  std::ofstream(p) << text;
}

}  // namespace

TEST_CASE("exit codes") {
  fs::remove_all(kDir);
  CHECK(run("run --n 21 --steps 5 --amplitude 0 --out " + (kDir / "zero").string()) == 0);
  CHECK(run("run --scheme pq --n 100") == 3);
  CHECK(run("run --scheme nope") == 3);
  CHECK(run("run --no-such-flag 1") == 3);
  CHECK(run("run --scheme preissman-monolithic --n 5 --anchored false --steps 2") == 2);
  CHECK(run("run --max-iter 1") == 2);
  CHECK(run("run --scheme zk --n 99 --tau 0.04 --steps 200 --out " + (kDir / "zk").string()) == 4);
  CHECK(slurp(kDir / "zk" / "snapshots.csv").find("# truncated") != std::string::npos);
  CHECK(run("rank --n 5") == 2);
  CHECK(run("rank --n 5 --with-anchor") == 0);
  CHECK(run("--help") == 0);
}

TEST_CASE("config file and flag precedence") {
  const auto cfg = kDir / "run.cfg";
  write(cfg, "# minimal\nscheme=eight\nn=40\ntau=0.01\nsteps=4\nic=soliton\n");
  const auto out = kDir / "prec";
  REQUIRE(run("run -c " + cfg.string() + " --tau 0.001 --out " + out.string()) == 0);
  const auto manifest = slurp(out / "manifest.txt");
  CHECK(manifest.find("tau=0.001\n") != std::string::npos);
  CHECK(manifest.find("scheme=eight\n") != std::string::npos);
  CHECK(manifest.find("tol=1e-12\n") != std::string::npos);
  CHECK(manifest.find("anchor=1:0\n") != std::string::npos);
  CHECK(manifest.find("variant=exact\n") != std::string::npos);

  write(kDir / "bad.cfg", "scheme=pq\nn=100\n");
  CHECK(run("run -c " + (kDir / "bad.cfg").string()) == 3);
  write(kDir / "bad2.cfg", "n = 9\nwhat\n");
  CHECK(run("run -c " + (kDir / "bad2.cfg").string()) == 3);
}

TEST_CASE("compare mode") {
  const auto out = kDir / "cmp";
  REQUIRE(run("compare --scheme preissman --other eight --n 99 --steps 30 --out " +
              out.string()) == 0);
  std::ifstream f(out / "compare.csv");
  std::string line;
  std::getline(f, line);
  CHECK(line == "step,t,linf,l2");
  int rows = 0;
  while (std::getline(f, line)) {
    const auto a = line.find(',');
    const auto b = line.find(',', a + 1);
    const auto c = line.find(',', b + 1);
    CHECK(std::stod(line.substr(b + 1, c - b - 1)) <= 1e-9);
    ++rows;
  }
  CHECK(rows == 31);
}
