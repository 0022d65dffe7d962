#include "nccn/sim/scenario.hpp"

#include <CLI11.hpp>

#include <atomic>
#include <fstream>
#include <iostream>
#include <mutex>
#include <thread>

namespace {

namespace fs = std::filesystem;
using nccn::sim::ScenarioConfig;
using nccn::sim::ScenarioResult;

struct Options
{
  std::string scenario;
  std::optional<uint64_t> seed;
  std::string out;
  bool compare = false;
  bool trace = false;
  std::string format = "json";
  unsigned jobs = 1;
  uint64_t sweep = 1;
};

void
writeFile(const fs::path& path, const std::string& text)
{
  std::ofstream f(path, std::ios::binary);
  f << text;
  if (!f) {
    throw std::runtime_error("cannot write " + path.string());
  }
}

std::string
render(const ScenarioResult& r, const std::string& format)
{
  return format == "csv" ? r.toCsv() : r.toJson().dump(2) + "\n";
}

void
emit(const ScenarioResult& r, const Options& opt, const fs::path& dir)
{
  if (opt.out.empty()) {
    std::cout << render(r, opt.format);
    return;
  }
  fs::create_directories(dir);
  writeFile(dir / (opt.format == "csv" ? "metrics.csv" : "metrics.json"), render(r, opt.format));
  if (opt.trace) {
    for (const auto& a : r.arms) {
      writeFile(dir / ("trace_" + a.arm + ".tsv"), a.trace);
    }
  }
}

int
run(const Options& opt)
{
  ScenarioConfig base = nccn::sim::loadScenario(opt.scenario);
  if (opt.seed) {
    base.seed = *opt.seed;
  }
  base.compare = base.compare || opt.compare;

  if (opt.sweep <= 1) {
    emit(nccn::sim::runScenario(base, opt.trace), opt, opt.out);
    return 0;
  }

  // seed sweep: independent instances, written to one directory per seed
  std::vector<ScenarioResult> results(opt.sweep);
  std::vector<std::exception_ptr> errors(opt.sweep);
  std::atomic<uint64_t> next{0};
  auto worker = [&] {
    for (uint64_t i = next++; i < opt.sweep; i = next++) {
      try {
        auto cfg = base;
        cfg.seed = base.seed + i;
        results[i] = nccn::sim::runScenario(cfg, opt.trace);
      }
      catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned j = 0; j < std::max(1u, opt.jobs); ++j) {
    pool.emplace_back(worker);
  }
  for (auto& t : pool) {
    t.join();
  }
  for (uint64_t i = 0; i < opt.sweep; ++i) {
    if (errors[i]) {
      std::rethrow_exception(errors[i]);
    }
    emit(results[i], opt, fs::path(opt.out) / ("seed-" + std::to_string(results[i].config.seed)));
  }
  return 0;
}

} // namespace

int
main(int argc, char** argv)
{
  CLI::App app{"nccn-sim: network-coded content networking simulator"};
  app.require_subcommand(1);
  Options opt;
  auto* cmd = app.add_subcommand("run", "run one scenario config");
  cmd->add_option("--scenario", opt.scenario, "scenario config (JSON)")->required();
  cmd->add_option("--seed", opt.seed, "override the config's seed");
  cmd->add_option("--out", opt.out, "output directory (default: print metrics to stdout)");
  cmd->add_flag("--compare", opt.compare, "run both the NC-on and NC-off arms");
  cmd->add_flag("--trace", opt.trace, "write one packet trace per arm (needs --out)");
  cmd->add_option("--format", opt.format, "metrics format")->check(CLI::IsMember({"json", "csv"}));
  cmd->add_option("--jobs", opt.jobs, "parallel instances for --sweep")->check(CLI::PositiveNumber);
  cmd->add_option("--sweep", opt.sweep, "run this many consecutive seeds")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  }
  catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  }
  catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  if (opt.trace && opt.out.empty()) {
    std::cerr << "error: --trace needs --out\n";
    return 2;
  }

  try {
    return run(opt);
  }
  catch (const nccn::sim::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  }
  catch (const nccn::InvariantViolation& e) {
    std::cerr << "internal invariant violated: " << e.what() << "\n";
    return 3;
  }
  catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
}
