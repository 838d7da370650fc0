// File-level tests of the CLI: runs the installed binary through std::system
// and inspects the emitted CSV/JSON artifacts.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

namespace fs = std::filesystem;

namespace {

std::string g_bin;
int g_failures = 0;

#define CHECK_MSG(cond, msg)                                                   \
  do {                                                                         \
    if (!(cond)) {                                                             \
      std::cerr << "FAIL: " << msg << " (" << #cond << ") at line " << __LINE__ << "\n"; \
      ++g_failures;                                                            \
    }                                                                          \
  } while (0)

int run(const std::string& args) {
  const std::string cmd = g_bin + " " + args + " >/dev/null 2>&1";
  const int rc = std::system(cmd.c_str());
  return WEXITSTATUS(rc);
}

std::size_t line_count(const fs::path& p) {
  std::ifstream in(p);
  std::size_t n = 0;
  std::string line;
  while (std::getline(in, line)) ++n;
  return n;
}

std::vector<std::string> read_lines(const fs::path& p) {
  std::ifstream in(p);
  std::vector<std::string> out;
  std::string line;
  while (std::getline(in, line)) out.push_back(line);
  return out;
}

bool same_bytes(const fs::path& a, const fs::path& b) {
  std::ifstream fa(a, std::ios::binary), fb(b, std::ios::binary);
  std::stringstream sa, sb;
  sa << fa.rdbuf();
  sb << fb.rdbuf();
  return sa.str() == sb.str();
}

void test_phase_grid(const fs::path& tmp) {
  const fs::path out = tmp / "phase_full";
  CHECK_MSG(run("phase --window -2:2:-2:2 --grid-step 0.01 --out " + out.string()) == 0,
            "phase grid run");
  const auto lines = read_lines(out / "phase.csv");
  CHECK_MSG(lines.size() == 160802, "401x401 rows plus header");
  CHECK_MSG(lines[0] == "sigma,tau,region,p", "phase header");

  // region counts against closed-form areas on the clipped window
  std::size_t c1 = 0, c2 = 0, c3 = 0;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (lines[i].find(",B1,") != std::string::npos) ++c1;
    else if (lines[i].find(",B2,") != std::string::npos) ++c2;
    else if (lines[i].find(",B3,") != std::string::npos) ++c3;
  }
  const double cell = 0.01 * 0.01;
  const double a3 = 3.0860, a2 = 9.3431, a1 = 16.0 - a3 - a2;
  CHECK_MSG(std::abs(c3 * cell - a3) < 0.10, "B3 area by counting");
  CHECK_MSG(std::abs(c2 * cell - a2) < 0.10, "B2 area by counting");
  CHECK_MSG(std::abs(c1 * cell - a1) < 0.15, "B1 area by counting");
}

void test_phase_point_and_errors(const fs::path& tmp) {
  const fs::path out = tmp / "phase_pt";
  CHECK_MSG(run("phase --window 0:0.001:1:1.001 --grid-step 0.01 --out " + out.string()) == 0,
            "single point run");
  const auto lines = read_lines(out / "phase.csv");
  CHECK_MSG(lines.size() == 2, "one data row");
  CHECK_MSG(lines[1].find("Boundary13") != std::string::npos, "(0,1) labeled Boundary13");
  CHECK_MSG(lines[1].substr(lines[1].rfind(',') + 1) == "0.5", "p = 0.5 at (0,1)");

  CHECK_MSG(run("phase --window 2:-2:0:1 --out " + tmp.string()) == 1, "empty grid errors");
}

void test_zeros(const fs::path& tmp) {
  const fs::path out = tmp / "zeros";
  CHECK_MSG(run("zeros --window 0.1:0.5:1.2:1.6 --n 9 --rho 1 --seed 5 --replicas 4 --out " +
                out.string()) == 0,
            "zeros run");
  CHECK_MSG(fs::exists(out / "zeros_r003.csv"), "per-replica files");
  CHECK_MSG(fs::exists(out / "density.csv"), "density histogram");
  CHECK_MSG(fs::exists(out / "manifest.json"), "manifest");
  for (int r = 0; r < 4; ++r) {
    char name[64];
    std::snprintf(name, sizeof(name), "zeros_r%03d.csv", r);
    const auto lines = read_lines(out / name);
    CHECK_MSG(lines[0] == "re,im,multiplicity,residual", "zeros header");
  }
}

void test_fluct_contract(const fs::path& tmp) {
  const fs::path out = tmp / "fluct";
  const int rc = run("fluct --beta 0.4+1.2i --rho 1 --n 10 --seed 3 --replicas 400 --out " +
                     out.string());
  std::ifstream in(out / "report.json");
  nlohmann::json j;
  in >> j;
  CHECK_MSG(j["case_tag"] == "C1b", "case tag in report");
  const bool all_pass = j["all_pass"].get<bool>();
  CHECK_MSG(rc == (all_pass ? 0 : 2), "exit code mirrors the gate outcome");
  CHECK_MSG(line_count(out / "samples.csv") == 401, "samples rows = replicas + header");
}

void test_zeta_and_gaf(const fs::path& tmp) {
  CHECK_MSG(run("zeta --beta 1,0 --replicas 10 --out " + (tmp / "zp").string()) == 1,
            "zeta refuses the pole");
  const fs::path out = tmp / "zeta";
  CHECK_MSG(run("zeta --beta 0.9+0.3i --horizon-tol 0.1 --replicas 50 --seed 2 --out " +
                out.string()) == 0,
            "zeta run");
  std::ifstream in(out / "manifest.json");
  nlohmann::json j;
  in >> j;
  const double T = std::stod(j["args"]["chosen_horizon"].get<std::string>());
  // closed form (tol^2 (2s-1))^{1/(1-2s)} at s = 0.9
  const double expect = std::pow(0.1 * 0.1 * 0.8, 1.0 / (1.0 - 1.8));
  CHECK_MSG(std::abs(T - expect) < 1e-6 * expect, "horizon matches the closed form");

  const fs::path gout = tmp / "gaf";
  CHECK_MSG(run("gaf --radius 1.0 --replicas 30 --seed 4 --out " + gout.string()) == 0,
            "gaf run");
  CHECK_MSG(line_count(gout / "gaf_counts.csv") == 31, "gaf counts rows");
}

void test_rerun_bitwise(const fs::path& tmp) {
  const fs::path out1 = tmp / "r1";
  const fs::path out2 = tmp / "r2";
  CHECK_MSG(run("zeros --window 0.1:0.4:1.25:1.55 --n 9 --rho 1 --seed 11 --replicas 3 --out " +
                out1.string()) == 0,
            "original run");
  CHECK_MSG(run("rerun " + (out1 / "manifest.json").string() + " --out " + out2.string()) == 0,
            "manifest-driven rerun verifies digests");
  CHECK_MSG(same_bytes(out1 / "zeros_r000.csv", out2 / "zeros_r000.csv"),
            "byte-identical outputs");
  CHECK_MSG(same_bytes(out1 / "density.csv", out2 / "density.csv"), "byte-identical density");
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: integration_cli <remlab-binary>\n";
    return 1;
  }
  g_bin = argv[1];
  const fs::path tmp = fs::temp_directory_path() / "remlab_cli_test";
  fs::remove_all(tmp);
  fs::create_directories(tmp);

  test_phase_grid(tmp);
  test_phase_point_and_errors(tmp);
  test_zeros(tmp);
  test_fluct_contract(tmp);
  test_zeta_and_gaf(tmp);
  test_rerun_bitwise(tmp);

  if (g_failures == 0) {
    std::cout << "integration_cli: all checks passed\n";
    return 0;
  }
  std::cout << "integration_cli: " << g_failures << " failures\n";
  return 1;
}
