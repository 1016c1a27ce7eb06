#ifndef ACMRR_PIPELINES_HPP
#define ACMRR_PIPELINES_HPP

#include <ostream>
#include <string>

#include "acmrr/config.hpp"
#include "acmrr/spectrum.hpp"

namespace acmrr::pipelines {

// Command implementations behind the CLI, kept here so they can be exercised
// directly by tests. Each returns the path(s) of the files it wrote via out
// and reports human-readable progress on `log`.

SpectrumTrace simulate_spectrum(const config::RunConfig& cfg);
std::string run_simulate_spectrum(const config::RunConfig& cfg, const std::string& output_path,
                                  std::ostream& log);

std::string run_fit_spectrum(const config::RunConfig& cfg, const std::string& input_path,
                             const std::string& model, const std::string& output_path,
                             std::ostream& log);

// Sweeps input powers, simulates (or loads) one trace per power, fits the
// interaction factor per power, then fits the saturation law to the ladder.
std::string run_saturation_scan(const config::RunConfig& cfg, const std::string& output_dir,
                                std::ostream& log);

std::string run_allan(const config::RunConfig& cfg, const std::string& output_path,
                      std::ostream& log);

void run_vapor_info(const config::RunConfig& cfg, std::ostream& out);

// Computes the headline quantities for the configured device and writes a
// one-page report with computed-vs-reference values.
std::string run_report(const config::RunConfig& cfg, const std::string& output_path,
                       std::ostream& log);

}  // namespace acmrr::pipelines

#endif
