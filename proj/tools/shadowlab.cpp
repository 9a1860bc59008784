// Command-line runner for the shadowlab experiments.
//
// Exit codes: 0 when every claim passes, 1 when any fails, 2 on a bad config.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "shadowlab/experiments.hpp"

namespace {

using shadowlab::ConfigError;
using shadowlab::ExperimentConfig;
using shadowlab::Rat;

struct RawOptions {
  std::string eps;
  std::string deltas;
  std::string periods;
};

void add_system_opts(CLI::App* cmd, ExperimentConfig& cfg, RawOptions& raw) {
  cmd->add_option("--depth", cfg.depth, "truncation depth D (dyadic m_k = 2^k)")->capture_default_str();
  cmd->add_option("--periods", raw.periods, "explicit periodic structure m_1,...,m_D");
}

std::vector<std::int64_t> parse_int_list(const std::string& text) {
  std::vector<std::int64_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.find_first_not_of(' ') == std::string::npos) continue;
    std::size_t used = 0;
    const auto v = std::stoll(item, &used);
    if (item.find_first_not_of(' ', used) != std::string::npos) throw ConfigError("bad integer '" + item + "'");
    out.push_back(v);
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"shadowlab: exact shadowing and limit-shadowing experiments"};
  app.set_config("--config", "", "TOML/INI config file; command-line flags override it");
  app.require_subcommand(1);

  ExperimentConfig cfg;
  RawOptions raw;
  std::string out_path;
  std::string format = "text";
  app.add_option("--seed", cfg.seed, "RNG seed")->capture_default_str();
  app.add_option("--out", out_path, "also write the report to this file");
  app.add_option("--format", format, "report format")->check(CLI::IsMember({"text", "machine"}))->capture_default_str();

  auto* ex41 = app.add_subcommand("ex41", "pointed odometer without s-limit shadowing");
  ex41->add_option("--K", cfg.K, "jump level K")->capture_default_str();
  ex41->add_option("--window", cfg.window, "window length L")->capture_default_str();
  add_system_opts(ex41, cfg, raw);

  auto* ex1 = app.add_subcommand("ex1", "ladder map: limit shadowing without shadowing");
  ex1->add_option("--eps", raw.eps, "shadowing tolerance")->default_str("1/4");
  ex1->add_option("--deltas", raw.deltas, "comma separated chain tolerances")->default_str("1/4,1/16,1/64");
  ex1->add_option("--range", cfg.range, "ladder range N")->capture_default_str();
  ex1->add_option("--window", cfg.window, "limit pseudo orbit window");

  auto* odo = app.add_subcommand("odometer", "odometer shadowing experiments");
  odo->require_subcommand(1);
  auto* shadow = odo->add_subcommand("shadow", "random delta-pseudo orbits versus their start");
  shadow->add_option("--eps", raw.eps)->default_str("1/4");
  shadow->add_option("--trials", cfg.trials)->capture_default_str();
  shadow->add_option("--len", cfg.length)->capture_default_str();
  add_system_opts(shadow, cfg, raw);
  auto* exhaustive = odo->add_subcommand("exhaustive", "every delta-pseudo orbit at small depth");
  exhaustive->add_option("--eps", raw.eps)->default_str("1/4");
  exhaustive->add_option("--len", cfg.length);
  add_system_opts(exhaustive, cfg, raw);
  auto* limit = odo->add_subcommand("limit", "limit shadowing construction");
  limit->add_option("--plan", cfg.plan, "single-jump:I:Z or random")->capture_default_str();
  limit->add_option("--window", cfg.window);
  limit->add_option("--trials", cfg.trials, "families for the random plan");
  add_system_opts(limit, cfg, raw);
  auto* thick = odo->add_subcommand("thick", "thick shadowing candidate for an ergodic pseudo orbit");
  thick->add_option("--eps", raw.eps)->default_str("1/4");
  thick->add_option("--window", cfg.window);
  add_system_opts(thick, cfg, raw);
  auto* isometry = odo->add_subcommand("isometry", "metric axioms and isometry, exhaustively");
  add_system_opts(isometry, cfg, raw);

  auto* chains = app.add_subcommand("chains", "delta-chain graphs and components");
  chains->add_option("--system", cfg.system)->check(CLI::IsMember({"ladder", "odometer", "pointed"}))->capture_default_str();
  chains->add_option("--deltas", raw.deltas)->required();
  chains->add_option("--range", cfg.range, "ladder range N (0: vertices {0,1,2})")->capture_default_str();
  add_system_opts(chains, cfg, raw);

  // Per-experiment defaults that differ from the config struct.
  exhaustive->preparse_callback([&](std::size_t) { cfg.depth = 3, cfg.length = 6; });
  shadow->preparse_callback([&](std::size_t) { cfg.depth = 8; });
  limit->preparse_callback([&](std::size_t) { cfg.depth = 4, cfg.window = 64, cfg.trials = 100; });
  thick->preparse_callback([&](std::size_t) { cfg.depth = 8, cfg.window = 256; });
  isometry->preparse_callback([&](std::size_t) { cfg.depth = 4; });
  ex1->preparse_callback([&](std::size_t) { cfg.window = 64; });
  chains->preparse_callback([&](std::size_t) { cfg.depth = 3; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  shadowlab::RunReport run;
  try {
    if (ex41->parsed()) cfg.experiment = "ex41";
    if (ex1->parsed()) cfg.experiment = "ex1";
    if (chains->parsed()) cfg.experiment = "chains";
    if (odo->parsed()) {
      cfg.experiment = "odometer";
      for (auto* sub : odo->get_subcommands()) cfg.mode = sub->get_name();
    }
    if (!raw.eps.empty()) cfg.eps = Rat::parse(raw.eps);
    if (ex1->parsed() && raw.deltas.empty()) raw.deltas = "1/4,1/16,1/64";
    cfg.deltas = shadowlab::parse_rat_list(raw.deltas);
    if (!raw.periods.empty()) cfg.periods = parse_int_list(raw.periods);
    run = shadowlab::run_experiment(cfg);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::out_of_range& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  }

  const std::string text = format == "machine" ? run.to_machine() : run.to_text();
  std::cout << text;
  if (!out_path.empty()) {
    std::ofstream out(out_path);
    if (!out) {
      std::cerr << "cannot write " << out_path << "\n";
      return 2;
    }
    out << text;
  }
  return run.overall() == shadowlab::Status::Pass ? 0 : 1;
}
