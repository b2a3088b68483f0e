#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <unistd.h>

#include "acceptance.hpp"
#include "config.hpp"
#include "runner.hpp"

namespace acc {

namespace fs = std::filesystem;

namespace {

struct Case {
  const char* subcommand;
  const char* file;
};

// One shipped configuration per subcommand, plus every convergence target.
const Case kCases[] = {
    {"trajectory", "trajectory_constant_e.ini"},   {"rotor", "rotor_constant_b.ini"},
    {"dirac-free", "dirac_free.ini"},              {"wigner", "wigner_sine.ini"},
    {"kvnd", "kvnd_sine.ini"},                     {"salpeter", "salpeter_free.ini"},
    {"kvn", "kvn_harmonic.ini"},                   {"klein-gordon", "klein_gordon.ini"},
    {"operator-check", "operator_check.ini"},      {"convergence", "convergence_wigner_dt.ini"},
    {"convergence", "convergence_kappa.ini"},      {"convergence", "convergence_salpeter_dx.ini"},
    {"convergence", "convergence_kvn_dx.ini"},
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

/// Copy of the shipped config redirected to `out`, written next to it.
fs::path redirect(const fs::path& src, const fs::path& out, const fs::path& ini) {
  auto c = relwig::cli::load_config(src.string());
  c.output_dir = out.string();
  std::ofstream(ini) << relwig::cli::serialize_config(c);
  return ini;
}

/// Runs with WIGNER_THREADS set to `threads` ("" leaves it unset).
int run_with_threads(const char* sub, const fs::path& ini, const std::string& threads) {
  if (threads.empty())
    unsetenv("WIGNER_THREADS");
  else
    setenv("WIGNER_THREADS", threads.c_str(), 1);
  std::ostringstream out, err;
  return relwig::cli::run_command(sub, ini.string(), out, err);
}

/// Relative paths of the CSV and .wgrid artifacts under dir.
std::vector<fs::path> artifacts(const fs::path& dir) {
  std::vector<fs::path> files;
  for (const auto& e : fs::recursive_directory_iterator(dir)) {
    const auto ext = e.path().extension();
    if (e.is_regular_file() && (ext == ".csv" || ext == ".wgrid")) files.push_back(fs::relative(e.path(), dir));
  }
  std::sort(files.begin(), files.end());
  return files;
}

}  // namespace

Outcome determinism() {
  const fs::path configs = RELWIG_CONFIG_DIR;
  const fs::path root = fs::temp_directory_path() / ("relwig_determinism_" + std::to_string(::getpid()));
  fs::remove_all(root);
  fs::create_directories(root);
  const char* saved = std::getenv("WIGNER_THREADS");
  const std::string restore = saved ? saved : "";

  Outcome result{true, ""};
  std::size_t compared = 0;
  int index = 0;
  for (const auto& c : kCases) {
    const std::string tag = std::to_string(index++);
    const fs::path a = root / (tag + "a"), b = root / (tag + "b");
    const auto ia = redirect(configs / c.file, a, root / (tag + "a.ini"));
    const auto ib = redirect(configs / c.file, b, root / (tag + "b.ini"));
    // First run at the machine's default parallelism, second on one worker.
    const int ra = run_with_threads(c.subcommand, ia, restore);
    const int rb = run_with_threads(c.subcommand, ib, "1");
    if (ra != 0 || rb != 0) {
      result = {false, std::string(c.file) + ": run failed"};
      break;
    }
    const auto fa = artifacts(a), fb = artifacts(b);
    if (fa.empty() || fa != fb) {
      result = {false, std::string(c.file) + ": artifact lists differ"};
      break;
    }
    for (const auto& f : fa) {
      if (slurp(a / f) != slurp(b / f)) {
        result = {false, std::string(c.file) + ": " + f.string() + " differs"};
        break;
      }
      ++compared;
    }
    if (!result.pass) break;
  }
  if (saved)
    setenv("WIGNER_THREADS", restore.c_str(), 1);
  else
    unsetenv("WIGNER_THREADS");
  fs::remove_all(root);
  if (result.pass)
    result.detail = std::to_string(compared) + " CSV/snapshot files byte-identical across " +
                    std::to_string(std::size(kCases)) + " scenario configs, default vs single-thread runs";
  return result;
}

}  // namespace acc
