#ifndef ACMRR_IO_HPP
#define ACMRR_IO_HPP

#include <string>

#include "acmrr/fitting.hpp"
#include "acmrr/saturation.hpp"
#include "acmrr/spectrum.hpp"
#include "acmrr/stability.hpp"

namespace acmrr::io {

// All writers emit doubles with round-trip precision (%.17g); re-ingesting an
// emitted file and re-emitting it is byte-identical.
std::string format_double(double value);

std::string spectrum_to_csv(const SpectrumTrace& trace);
SpectrumTrace spectrum_from_csv(const std::string& text);
void write_spectrum_csv(const SpectrumTrace& trace, const std::string& path);
SpectrumTrace read_spectrum_csv(const std::string& path);

std::string allan_to_csv(const stability::AllanCurve& curve, const std::string& label);
void write_allan_csv(const stability::AllanCurve& curve, const std::string& label,
                     const std::string& path);

// Two-column (time_s, offset_Hz) or single-column (offset_Hz, declared sample
// period) text input.
stability::FrequencySeries read_frequency_series(const std::string& path,
                                                 double sample_period_s_hint = 0.0);

std::string saturation_curve_to_csv(const saturation::SaturationCurve& curve);
saturation::SaturationCurve saturation_curve_from_csv(const std::string& text);

// FitResult as JSON, including the full parameter covariance.
std::string fit_result_to_json(const fitting::FitResult& result, const std::string& model);
void write_fit_result_json(const fitting::FitResult& result, const std::string& model,
                           const std::string& path);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace acmrr::io

#endif
