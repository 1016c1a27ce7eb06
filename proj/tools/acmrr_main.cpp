// acmrr: simulation and fitting toolkit for atomically-clad microring
// resonators. Subcommands cover ensemble spectrum simulation, spectrum and
// saturation fits, Allan-deviation analysis and quick vapor lookups.

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "acmrr/config.hpp"
#include "acmrr/errors.hpp"
#include "acmrr/pipelines.hpp"

namespace {

struct CommonArgs {
  std::string config_path;
  std::string output;
  std::optional<double> temperature_c;
  std::optional<double> temperature_k;
  std::optional<std::uint64_t> seed;
};

acmrr::config::RunConfig load_with_overrides(const CommonArgs& args) {
  auto cfg = acmrr::config::load_config(args.config_path);
  if (args.temperature_c) cfg.vapor.temperature_k = *args.temperature_c + 273.15;
  if (args.temperature_k) cfg.vapor.temperature_k = *args.temperature_k;
  if (args.seed) cfg.simulation.seed = *args.seed;
  return cfg;
}

void add_common(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("-c,--config", args.config_path, "config file or preset name")->required();
  cmd->add_option("--temperature-C", args.temperature_c, "override vapor temperature (deg C)");
  cmd->add_option("--temperature-K", args.temperature_k, "override vapor temperature (K)");
  cmd->add_option("--seed", args.seed, "override the master seed");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"atomically-clad microring cavity QED toolkit"};
  app.require_subcommand(1);

  CommonArgs args;
  std::string input_path;
  std::string fit_model = "interaction-factor";

  auto* simulate = app.add_subcommand("simulate-spectrum",
                                      "Monte-Carlo averaged cavity transmission spectrum");
  add_common(simulate, args);
  simulate->add_option("-o,--output", args.output, "output CSV path");

  auto* fit = app.add_subcommand("fit-spectrum", "fit a spectrum trace");
  add_common(fit, args);
  fit->add_option("-i,--input", input_path, "input spectrum CSV")->required();
  fit->add_option("-m,--model", fit_model, "lorentzian | interaction-factor");
  fit->add_option("-o,--output", args.output, "output JSON path");

  auto* scan = app.add_subcommand("saturation-scan",
                                  "power ladder: fit IF per power, then fit P_sat");
  add_common(scan, args);
  scan->add_option("-o,--output-dir", args.output, "output directory");

  auto* allan = app.add_subcommand("allan", "Allan deviation of a frequency series");
  add_common(allan, args);
  allan->add_option("-o,--output", args.output, "output CSV path");

  auto* info = app.add_subcommand("vapor-info", "density, Doppler width and atom number");
  add_common(info, args);

  auto* report = app.add_subcommand("report", "one-page device report");
  add_common(report, args);
  report->add_option("-o,--output", args.output, "output path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& help) {
    return app.exit(help);
  } catch (const CLI::ParseError& error) {
    std::cerr << "error: usage: " << error.what() << "\n";
    return acmrr::kExitUsage;
  }

  try {
    const auto cfg = load_with_overrides(args);
    if (simulate->parsed()) {
      acmrr::pipelines::run_simulate_spectrum(cfg, args.output, std::cout);
    } else if (fit->parsed()) {
      acmrr::pipelines::run_fit_spectrum(cfg, input_path, fit_model, args.output, std::cout);
    } else if (scan->parsed()) {
      acmrr::pipelines::run_saturation_scan(cfg, args.output, std::cout);
    } else if (allan->parsed()) {
      acmrr::pipelines::run_allan(cfg, args.output, std::cout);
    } else if (info->parsed()) {
      acmrr::pipelines::run_vapor_info(cfg, std::cout);
    } else if (report->parsed()) {
      acmrr::pipelines::run_report(cfg, args.output, std::cout);
    }
    return acmrr::kExitOk;
  } catch (const acmrr::UsageError& error) {
    std::cerr << "error: usage: " << error.what() << "\n";
    return acmrr::kExitUsage;
  } catch (const acmrr::ValidationError& error) {
    std::cerr << "error: validation: " << error.what() << "\n";
    return acmrr::kExitValidation;
  } catch (const acmrr::DataError& error) {
    std::cerr << "error: data: " << error.what() << "\n";
    return acmrr::kExitData;
  } catch (const acmrr::FitError& error) {
    std::cerr << "error: fit: " << error.what() << "\n";
    return acmrr::kExitFit;
  } catch (const acmrr::AccuracyError& error) {
    std::cerr << "error: accuracy: " << error.what() << "\n";
    return acmrr::kExitAccuracy;
  } catch (const std::exception& error) {
    std::cerr << "error: " << error.what() << "\n";
    return 1;
  }
}
