#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ddsense/errors.hpp"
#include "ddsense/version.hpp"
#include "commands.hpp"
#include "config.hpp"

namespace {

using ddsense::cli::ConfigMap;

struct CommonArgs {
  std::string config_path;
  std::vector<std::string> sets;
  std::string output;
  std::string format;
  std::string seed;
  std::string threads;
  std::string pulse;
};

void add_common(CLI::App* sub, CommonArgs& args) {
  sub->add_option("-c,--config", args.config_path,
                  "INI-style config file (section.key = value)");
  sub->add_option("-s,--set", args.sets,
                  "Override one entry as section.key=value (repeatable)");
  sub->add_option("-o,--output", args.output, "Output file path");
  sub->add_option("--format", args.format, "Output format: csv or json");
  sub->add_option("--seed", args.seed, "Base RNG seed");
  sub->add_option("--threads", args.threads,
                  "Worker threads (0 = all hardware threads)");
  sub->add_option("--pulse", args.pulse,
                  "Pulse: builtin rect/composite or a JSON file");
}

ConfigMap build_config(const CommonArgs& args) {
  ConfigMap config;
  if (!args.config_path.empty())
    config = ddsense::cli::load_config_file(args.config_path);
  for (const std::string& assignment : args.sets)
    ddsense::cli::apply_override(config, assignment);
  if (!args.output.empty()) config.set("run.output", args.output);
  if (!args.format.empty()) config.set("run.format", args.format);
  if (!args.seed.empty()) config.set("run.seed", args.seed);
  if (!args.threads.empty()) config.set("run.threads", args.threads);
  if (!args.pulse.empty()) config.set("pulse.name", args.pulse);
  return config;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dynamical-decoupling sensing simulator"};
  app.set_version_flag("--version", std::string(ddsense::version_string));
  app.require_subcommand(1);

  CommonArgs fmap_args;
  CLI::App* fmap = app.add_subcommand(
      "fidelity-map", "F_QS / F_QC of a pulse over an error grid");
  add_common(fmap, fmap_args);

  CommonArgs opt_args;
  std::string history_output;
  std::string init;
  CLI::App* opt = app.add_subcommand(
      "optimize", "Gradient-ascent design of a robust pi pulse");
  add_common(opt, opt_args);
  opt->add_option("--history-output", history_output,
                  "Objective-history CSV path");
  opt->add_option("--init", init,
                  "Starting pulse: random, a builtin, or a JSON file");

  CommonArgs sense_args;
  CLI::App* sense = app.add_subcommand(
      "echo-sense", "Spin-echo magnetometry sensitivity sweep");
  add_common(sense, sense_args);

  CommonArgs nmr_args;
  std::string mode;
  CLI::App* nmr = app.add_subcommand(
      "nmr", "CPMG detection of a nuclear-spin bath");
  add_common(nmr, nmr_args);
  nmr->add_option("--mode", mode, "scan-tau, scan-n, or scaling");

  CommonArgs qpt_args;
  CLI::App* qpt = app.add_subcommand(
      "qpt", "Process tomography of a pulse at one error point");
  add_common(qpt, qpt_args);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (fmap->parsed())
      return ddsense::cli::cmd_fidelity_map(build_config(fmap_args));
    if (opt->parsed()) {
      ConfigMap config = build_config(opt_args);
      if (!history_output.empty())
        config.set("optimize.history_output", history_output);
      if (!init.empty()) config.set("optimize.init", init);
      return ddsense::cli::cmd_optimize(config);
    }
    if (sense->parsed())
      return ddsense::cli::cmd_echo_sense(build_config(sense_args));
    if (nmr->parsed()) {
      ConfigMap config = build_config(nmr_args);
      if (!mode.empty()) config.set("nmr.mode", mode);
      return ddsense::cli::cmd_nmr(config);
    }
    if (qpt->parsed()) return ddsense::cli::cmd_qpt(build_config(qpt_args));
  } catch (const ddsense::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ddsense::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
