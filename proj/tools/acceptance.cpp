#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "crystalwalk/verify.hpp"
#include "crystalwalk/version.hpp"

using namespace crystalwalk;

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria runner: one PASS/FAIL line per criterion"};
  std::vector<int> only;
  unsigned threads = 0;
  std::string json_out;
  app.add_option("--only", only, "Run only these criterion numbers");
  app.add_option("--threads", threads, "Worker threads for Monte Carlo criteria (0: all cores)");
  app.add_option("--json", json_out, "Also write detailed results as JSON");
  CLI11_PARSE(app, argc, argv);

  if (only.empty()) {
    for (int k = 1; k <= acceptance_count(); ++k) only.push_back(k);
  }
  int failed = 0;
  nlohmann::json all = nlohmann::json::array();
  for (int k : only) {
    if (k < 1 || k > acceptance_count()) {
      std::cerr << "no criterion " << k << "\n";
      return 2;
    }
    const SuiteResult r = acceptance_criterion(k, threads);
    std::cout << format_line(r) << std::endl;
    if (r.status != Status::Pass) ++failed;
    auto j = to_json(r);
    j["criterion"] = k;
    all.push_back(j);
  }
  if (!json_out.empty()) std::ofstream(json_out) << all.dump(2) << "\n";
  std::cout << (only.size() - failed) << "/" << only.size() << " criteria passed (crystalwalk " << kVersion << ")\n";
  return failed == 0 ? 0 : 1;
}
