#include "acmrr/io.hpp"

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "acmrr/errors.hpp"

namespace acmrr::io {

namespace {

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::stringstream stream(text);
  std::string item;
  while (std::getline(stream, item, sep)) out.push_back(item);
  return out;
}

double parse_double(const std::string& text, const std::string& context) {
  try {
    std::size_t used = 0;
    const double value = std::stod(text, &used);
    while (used < text.size() && std::isspace(static_cast<unsigned char>(text[used]))) ++used;
    if (used != text.size()) throw std::invalid_argument(text);
    return value;
  } catch (const std::exception&) {
    throw DataError("cannot parse number '" + text + "' in " + context);
  }
}

// Header lines are "# key: value"; returns empty if the line is not one.
std::pair<std::string, std::string> header_entry(const std::string& line) {
  if (line.empty() || line[0] != '#') return {};
  const auto colon = line.find(':');
  if (colon == std::string::npos) return {};
  std::string key = line.substr(1, colon - 1);
  std::string value = line.substr(colon + 1);
  const auto trim = [](std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    const auto end = s.find_last_not_of(" \t\r");
    s = begin == std::string::npos ? "" : s.substr(begin, end - begin + 1);
  };
  trim(key);
  trim(value);
  return {key, value};
}

}  // namespace

std::string format_double(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

std::string spectrum_to_csv(const SpectrumTrace& trace) {
  trace.validate();
  std::string out;
  out += "# acmrr spectrum v1\n";
  out += "# scenario: " + trace.scenario + "\n";
  out += "# kind: " + trace.kind + "\n";
  out += "# seed: " + std::to_string(trace.seed) + "\n";
  out += "# power_W: " + format_double(trace.power_w) + "\n";
  out += "# temperature_K: " + format_double(trace.temperature_k) + "\n";
  out += "# reference_frequency_Hz: " + format_double(trace.reference_frequency_hz) + "\n";
  out += "# columns: detuning_Hz,transmission\n";
  for (std::size_t i = 0; i < trace.detuning_hz.size(); ++i) {
    out += format_double(trace.detuning_hz[i]);
    out += ',';
    out += format_double(trace.transmission[i]);
    out += '\n';
  }
  return out;
}

SpectrumTrace spectrum_from_csv(const std::string& text) {
  SpectrumTrace trace;
  std::stringstream stream(text);
  std::string line;
  while (std::getline(stream, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      const auto [key, value] = header_entry(line);
      if (key == "scenario") trace.scenario = value;
      else if (key == "kind") trace.kind = value;
      else if (key == "seed") trace.seed = std::strtoull(value.c_str(), nullptr, 10);
      else if (key == "power_W") trace.power_w = parse_double(value, "spectrum header");
      else if (key == "temperature_K") trace.temperature_k = parse_double(value, "spectrum header");
      else if (key == "reference_frequency_Hz") {
        trace.reference_frequency_hz = parse_double(value, "spectrum header");
      }
      continue;
    }
    const auto fields = split(line, ',');
    if (fields.size() != 2) throw DataError("spectrum row needs 2 columns: '" + line + "'");
    trace.detuning_hz.push_back(parse_double(fields[0], "spectrum row"));
    trace.transmission.push_back(parse_double(fields[1], "spectrum row"));
  }
  trace.validate();
  return trace;
}

void write_spectrum_csv(const SpectrumTrace& trace, const std::string& path) {
  write_text_file(path, spectrum_to_csv(trace));
}

SpectrumTrace read_spectrum_csv(const std::string& path) {
  return spectrum_from_csv(read_text_file(path));
}

std::string allan_to_csv(const stability::AllanCurve& curve, const std::string& label) {
  std::string out;
  out += "# acmrr allan v1\n";
  out += "# label: " + label + "\n";
  out += "# columns: tau_s,deviation_Hz,n_samples\n";
  for (std::size_t i = 0; i < curve.tau_s.size(); ++i) {
    out += format_double(curve.tau_s[i]);
    out += ',';
    out += format_double(curve.deviation_hz[i]);
    out += ',';
    out += std::to_string(curve.n_samples[i]);
    out += '\n';
  }
  return out;
}

void write_allan_csv(const stability::AllanCurve& curve, const std::string& label,
                     const std::string& path) {
  write_text_file(path, allan_to_csv(curve, label));
}

stability::FrequencySeries read_frequency_series(const std::string& path,
                                                 double sample_period_s_hint) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open frequency series: " + path);
  stability::FrequencySeries series;
  series.label = path;
  std::vector<double> times;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream fields(line);
    double a = 0.0, b = 0.0;
    if (!(fields >> a)) throw DataError("malformed series row: '" + line + "'");
    if (fields >> b) {
      times.push_back(a);
      series.values_hz.push_back(b);
    } else {
      series.values_hz.push_back(a);
    }
  }
  if (!times.empty()) {
    if (times.size() != series.values_hz.size() || times.size() < 2) {
      throw DataError("two-column series must have (time_s, offset_Hz) rows");
    }
    series.sample_period_s = (times.back() - times.front()) / (times.size() - 1.0);
  } else {
    if (!(sample_period_s_hint > 0)) {
      throw DataError("single-column series needs a declared sample period");
    }
    series.sample_period_s = sample_period_s_hint;
  }
  series.validate();
  return series;
}

std::string saturation_curve_to_csv(const saturation::SaturationCurve& curve) {
  std::string out;
  out += "# acmrr saturation v1\n";
  out += "# alpha0: " + format_double(curve.alpha0) + "\n";
  out += "# p_sat_W: " + format_double(curve.p_sat_w) + "\n";
  out += "# columns: power_W,alpha,sigma\n";
  for (const auto& point : curve.points) {
    out += format_double(point.power_w);
    out += ',';
    out += format_double(point.alpha);
    out += ',';
    out += format_double(point.sigma);
    out += '\n';
  }
  return out;
}

saturation::SaturationCurve saturation_curve_from_csv(const std::string& text) {
  saturation::SaturationCurve curve;
  std::stringstream stream(text);
  std::string line;
  while (std::getline(stream, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      const auto [key, value] = header_entry(line);
      if (key == "alpha0") curve.alpha0 = parse_double(value, "saturation header");
      else if (key == "p_sat_W") curve.p_sat_w = parse_double(value, "saturation header");
      continue;
    }
    const auto fields = split(line, ',');
    if (fields.size() != 3) throw DataError("saturation row needs 3 columns: '" + line + "'");
    curve.points.push_back({parse_double(fields[0], "saturation row"),
                            parse_double(fields[1], "saturation row"),
                            parse_double(fields[2], "saturation row")});
  }
  curve.validate();
  return curve;
}

std::string fit_result_to_json(const fitting::FitResult& result, const std::string& model) {
  nlohmann::ordered_json doc;
  doc["model"] = model;
  doc["converged"] = result.converged;
  doc["iterations"] = result.iterations;
  doc["residual_norm"] = result.residual_norm;
  doc["ill_conditioned"] = result.ill_conditioned;
  doc["parameters"] = nlohmann::ordered_json::array();
  for (const auto& parameter : result.parameters) {
    doc["parameters"].push_back({{"name", parameter.name},
                                 {"value", parameter.value},
                                 {"ci95", parameter.ci95},
                                 {"at_lower_bound", parameter.at_lower_bound}});
  }
  doc["covariance"] = result.covariance;
  return doc.dump(2) + "\n";
}

void write_fit_result_json(const fitting::FitResult& result, const std::string& model,
                           const std::string& path) {
  write_text_file(path, fit_result_to_json(result, model));
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write file: " + path);
  out << content;
  if (!out) throw DataError("write failed: " + path);
}

}  // namespace acmrr::io
