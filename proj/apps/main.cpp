#include <cstdio>
#include <exception>
#include <string>

#include <CLI11.hpp>

#include "fockbar/runner.hpp"

int main(int argc, char** argv) {
  CLI::App app{"fockbar: asymptotic kernel calculus and its numerical lab"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir = "out";
  auto add_mode = [&](const std::string& name, const std::string& desc) {
    CLI::App* sub = app.add_subcommand(name, desc);
    sub->add_option("--config", config_path, "experiment config (JSON)")
        ->required();
    sub->add_option("--out", out_dir, "output directory");
    return sub;
  };
  CLI::App* verify =
      add_mode("verify-calculus", "run the symbolic identity battery");
  CLI::App* expand =
      add_mode("expand", "run the expansion engine and export the series");
  CLI::App* simulate =
      add_mode("simulate", "build the discrete models and measure norms");
  CLI::App* decay = add_mode("decay", "fit the off-diagonal kernel decay");

  CLI11_PARSE(app, argc, argv);

  try {
    fockbar::ExperimentConfig cfg = fockbar::ExperimentConfig::load(config_path);
    fockbar::RunReport rep;
    if (verify->parsed()) rep = fockbar::run_verify(cfg, out_dir);
    if (expand->parsed()) rep = fockbar::run_expand(cfg, out_dir);
    if (simulate->parsed()) rep = fockbar::run_simulate(cfg, out_dir);
    if (decay->parsed()) rep = fockbar::run_decay(cfg, out_dir);
    for (const auto& c : rep.checks)
      std::printf("%-32s %s  (%.6g)\n", c.name.c_str(),
                  c.passed ? "PASS" : "FAIL", c.value);
    std::printf("summary written to %s/summary.json\n", out_dir.c_str());
    return rep.all_passed() ? 0 : 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
}
