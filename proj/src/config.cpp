#include "cstirap/config.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <set>
#include <string>
#include <vector>

namespace cstirap {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r'))
    s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

double parse_double(std::string_view key, std::string_view value) {
  if (!value.empty() && value.front() == '+') value.remove_prefix(1);
  double out = 0.0;
  const char* first = value.data();
  const char* last = value.data() + value.size();
  const auto [ptr, ec] = std::from_chars(first, last, out);
  if (ec != std::errc{} || ptr != last || !std::isfinite(out))
    throw config_error(std::string(key) + ": not a finite number: '" +
                       std::string(value) + "'");
  return out;
}

int parse_int(std::string_view key, std::string_view value) {
  int out = 0;
  const char* first = value.data();
  const char* last = value.data() + value.size();
  const auto [ptr, ec] = std::from_chars(first, last, out);
  if (ec != std::errc{} || ptr != last)
    throw config_error(std::string(key) + ": not an integer: '" + std::string(value) + "'");
  return out;
}

std::string format_exact(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

PulseSet RunConfig::pulses() const {
  return {GaussianPulse(omega0, tau_p, width_p),
          GaussianPulse(gamma_i0, tau_i, width_i),
          GaussianPulse(gamma_c0, tau_c, width_c)};
}

ModelParams RunConfig::params() const {
  ModelParams p;
  p.delta_pump = delta_pump;
  p.delta_control = delta_control;
  p.gamma_loss = gamma;
  p.fano_q = fano_q;
  p.stark_1 = stark_1;
  p.stark_2 = stark_2;
  p.stark_c = stark_c;
  p.kind = model;
  return p;
}

TimeWindow RunConfig::window() const {
  const TimeWindow padded = time_window(pulses(), padding);
  return {t_start.value_or(padded.t_start), t_end.value_or(padded.t_end)};
}

void apply_setting(RunConfig& c, std::string_view key, std::string_view value) {
  if (key == "model") {
    if (value == "two_level")
      c.model = ModelKind::two_level;
    else if (value == "three_level")
      c.model = ModelKind::three_level;
    else
      throw config_error("model: expected two_level or three_level, got '" +
                         std::string(value) + "'");
  } else if (key == "omega0") c.omega0 = parse_double(key, value);
  else if (key == "tau_p") c.tau_p = parse_double(key, value);
  else if (key == "width_p") c.width_p = parse_double(key, value);
  else if (key == "gamma_i0") c.gamma_i0 = parse_double(key, value);
  else if (key == "tau_i") c.tau_i = parse_double(key, value);
  else if (key == "width_i") c.width_i = parse_double(key, value);
  else if (key == "gamma_c0") c.gamma_c0 = parse_double(key, value);
  else if (key == "tau_c") c.tau_c = parse_double(key, value);
  else if (key == "width_c") c.width_c = parse_double(key, value);
  else if (key == "gamma") c.gamma = parse_double(key, value);
  else if (key == "delta_pump") c.delta_pump = parse_double(key, value);
  else if (key == "delta_control") c.delta_control = parse_double(key, value);
  else if (key == "fano_q") c.fano_q = parse_double(key, value);
  else if (key == "stark_1") c.stark_1 = parse_double(key, value);
  else if (key == "stark_2") c.stark_2 = parse_double(key, value);
  else if (key == "stark_c") c.stark_c = parse_double(key, value);
  else if (key == "tol_rel") c.tol_rel = parse_double(key, value);
  else if (key == "tol_abs") c.tol_abs = parse_double(key, value);
  else if (key == "padding") c.padding = parse_double(key, value);
  else if (key == "sample_count") c.sample_count = parse_int(key, value);
  else if (key == "t_start") c.t_start = parse_double(key, value);
  else if (key == "t_end") c.t_end = parse_double(key, value);
  else
    throw config_error("unknown key '" + std::string(key) + "'");
}

void validate_config(const RunConfig& c) {
  auto positive = [](std::string_view key, double v) {
    if (!(v > 0.0))
      throw config_error(std::string(key) + ": must be > 0, got " + format_exact(v));
  };
  auto nonnegative = [](std::string_view key, double v) {
    if (!(v >= 0.0))
      throw config_error(std::string(key) + ": must be >= 0, got " + format_exact(v));
  };
  positive("width_p", c.width_p);
  positive("width_i", c.width_i);
  positive("width_c", c.width_c);
  nonnegative("omega0", c.omega0);
  nonnegative("gamma_i0", c.gamma_i0);
  nonnegative("gamma_c0", c.gamma_c0);
  nonnegative("gamma", c.gamma);
  positive("tol_rel", c.tol_rel);
  positive("tol_abs", c.tol_abs);
  positive("padding", c.padding);
  if (c.sample_count < 2)
    throw config_error("sample_count: must be >= 2, got " + std::to_string(c.sample_count));
  if (c.model == ModelKind::two_level && c.gamma_c0 > 0.0)
    throw config_error("gamma_c0: a control pulse requires model=three_level");
  if (c.t_start && c.t_end && !(*c.t_start < *c.t_end))
    throw config_error("t_start: explicit window needs t_start < t_end");
}

RunConfig parse_config(std::string_view text) {
  RunConfig c;
  std::set<std::string, std::less<>> seen;
  bool have_model = false;

  std::size_t pos = 0;
  int lineno = 0;
  while (pos <= text.size()) {
    const std::size_t eol = text.find('\n', pos);
    std::string_view line =
        text.substr(pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++lineno;

    if (const std::size_t hash = line.find('#'); hash != std::string_view::npos)
      line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    const std::size_t eq = line.find('=');
    if (eq == std::string_view::npos)
      throw config_error("line " + std::to_string(lineno) + ": expected key=value");
    const std::string_view key = trim(line.substr(0, eq));
    const std::string_view value = trim(line.substr(eq + 1));
    if (key.empty())
      throw config_error("line " + std::to_string(lineno) + ": empty key");
    if (!seen.insert(std::string(key)).second)
      throw config_error("duplicate key '" + std::string(key) + "'");

    apply_setting(c, key, value);
    if (key == "model") have_model = true;
  }

  if (!have_model)
    throw config_error("model: key is required (two_level or three_level)");
  validate_config(c);
  return c;
}

std::string dump_config(const RunConfig& c) {
  std::string out;
  auto kv = [&out](std::string_view key, const std::string& value) {
    out += key;
    out += " = ";
    out += value;
    out += '\n';
  };
  kv("model", c.model == ModelKind::two_level ? "two_level" : "three_level");
  kv("omega0", format_exact(c.omega0));
  kv("tau_p", format_exact(c.tau_p));
  kv("width_p", format_exact(c.width_p));
  kv("gamma_i0", format_exact(c.gamma_i0));
  kv("tau_i", format_exact(c.tau_i));
  kv("width_i", format_exact(c.width_i));
  kv("gamma_c0", format_exact(c.gamma_c0));
  kv("tau_c", format_exact(c.tau_c));
  kv("width_c", format_exact(c.width_c));
  kv("gamma", format_exact(c.gamma));
  kv("delta_pump", format_exact(c.delta_pump));
  kv("delta_control", format_exact(c.delta_control));
  kv("fano_q", format_exact(c.fano_q));
  kv("stark_1", format_exact(c.stark_1));
  kv("stark_2", format_exact(c.stark_2));
  kv("stark_c", format_exact(c.stark_c));
  kv("tol_rel", format_exact(c.tol_rel));
  kv("tol_abs", format_exact(c.tol_abs));
  kv("padding", format_exact(c.padding));
  kv("sample_count", std::to_string(c.sample_count));
  if (c.t_start) kv("t_start", format_exact(*c.t_start));
  if (c.t_end) kv("t_end", format_exact(*c.t_end));
  return out;
}

}  // namespace cstirap
