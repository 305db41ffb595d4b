#include <CLI11.hpp>
#include <iostream>

#include "chemolab/harness/csv.hpp"
#include "chemolab/harness/sweep.hpp"
#include "verify/criteria.hpp"

namespace {

using namespace chemolab;

int cmd_run(const std::string& config_path, const std::string& out_dir) {
  harness::ScenarioConfig cfg = harness::load_config(config_path);
  cfg.output_dir = out_dir;
  const harness::RunSummary s = harness::run(cfg);
  for (const auto& w : s.warnings) std::cerr << "warning: " << w << "\n";
  for (const auto& [k, v] : s.metrics) std::cout << k << " = " << harness::format_double(v) << "\n";
  return 0;
}

int cmd_sweep(const std::string& config_path, const std::vector<std::string>& axes, int workers,
              const std::string& out_dir) {
  harness::SweepSpec spec;
  spec.base = harness::load_config(config_path);
  spec.base.output_dir = out_dir;
  for (const auto& a : axes) spec.axes.push_back(harness::parse_axis(a));
  spec.workers = workers > 0 ? workers : harness::default_workers();
  const harness::SweepReport rep = harness::sweep(spec);
  int failures = 0;
  for (const auto& p : rep.points) {
    if (!p.ok) {
      ++failures;
      std::cerr << "point " << p.index << " failed: " << p.error << "\n";
    }
  }
  std::cout << rep.points.size() - failures << " of " << rep.points.size() << " points completed\n";
  for (const auto& f : rep.fits) {
    std::cout << "fit " << f.metric << " vs " << f.axis << (f.group.empty() ? "" : " [" + f.group + "]")
              << ": slope " << harness::format_double(f.fit.slope) << ", r^2 "
              << harness::format_double(f.fit.r_squared) << "\n";
  }
  return 0;
}

int cmd_verify(const std::string& suite) {
  const auto which = suite == "full" ? verify::Suite::Full : verify::Suite::Fast;
  const auto results = verify::run_suite(which, [](const verify::CriterionResult& r) {
    std::cout << r.line() << std::endl;
  });
  int failed = 0;
  for (const auto& r : results) failed += r.passed ? 0 : 1;
  std::cout << results.size() - failed << " passed, " << failed << " failed\n";
  return failed == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"chemotaxis-reaction-diffusion numerical lab"};
  app.require_subcommand(1);

  std::string config_path, out_dir, suite = "fast", in_dir;
  std::vector<std::string> axes;
  int workers = 0;

  auto* run = app.add_subcommand("run", "run one scenario");
  run->add_option("--config", config_path, "scenario config file")->required()->check(CLI::ExistingFile);
  run->add_option("--out", out_dir, "output directory")->required();

  auto* sweep = app.add_subcommand("sweep", "run a cartesian parameter sweep");
  sweep->add_option("--config", config_path, "base scenario config file")->required()->check(CLI::ExistingFile);
  sweep->add_option("--axis", axes, "key=v1,v2,... (L, chi, eps, M0, sigma); repeatable")->required();
  sweep->add_option("--workers", workers, "worker threads (default: CHEMOLAB_WORKERS or hardware threads)")
      ->check(CLI::PositiveNumber);
  sweep->add_option("--out", out_dir, "output directory")->required();

  auto* verify = app.add_subcommand("verify", "run the verification suite");
  verify->add_option("--suite", suite, "fast or full")->check(CLI::IsMember({"fast", "full"}));

  auto* report = app.add_subcommand("report", "regenerate fits and diagnostics from stored CSVs");
  report->add_option("--in", in_dir, "run or sweep output directory")->required()->check(CLI::ExistingDirectory);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) return cmd_run(config_path, out_dir);
    if (*sweep) return cmd_sweep(config_path, axes, workers, out_dir);
    if (*verify) return cmd_verify(suite);
    if (*report) {
      std::cout << harness::report(in_dir);
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
