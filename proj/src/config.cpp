#include "sparsedyn/harness/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace sparsedyn::harness {

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split_list(std::string_view s) {
  std::vector<std::string> items;
  std::size_t start = 0;
  while (start <= s.size()) {
    const auto comma = s.find(',', start);
    const auto item = trim(s.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
    if (!item.empty()) items.push_back(item);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return items;
}

ConfigError field_error(std::string_view key, const std::string& message) {
  return ConfigError(std::string(key) + ": " + message);
}

double parse_double(std::string_view key, const std::string& text) {
  double value = 0.0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || end != text.data() + text.size() || !std::isfinite(value))
    throw field_error(key, "expected a number, got '" + text + "'");
  return value;
}

long parse_integer(std::string_view key, const std::string& text) {
  long value = 0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || end != text.data() + text.size()) throw field_error(key, "expected an integer, got '" + text + "'");
  return value;
}

bool parse_bool(std::string_view key, const std::string& text) {
  if (text == "true") return true;
  if (text == "false") return false;
  throw field_error(key, "expected true or false, got '" + text + "'");
}

std::string_view stability_name(StabilityPolicy p) {
  switch (p) {
    case StabilityPolicy::Warn: return "warn";
    case StabilityPolicy::Strict: return "strict";
    case StabilityPolicy::Ignore: return "ignore";
  }
  return "warn";
}

}  // namespace

Equation equation_from_name(std::string_view name) {
  for (Equation eq : {Equation::Convection, Equation::Parabolic, Equation::Burgers, Equation::Vorticity2D})
    if (to_string(eq) == name) return eq;
  throw field_error("equation", "unknown equation '" + std::string(name) + "'");
}

CoefficientSpec::Kind coefficient_kind_from_name(std::string_view name) {
  using K = CoefficientSpec::Kind;
  for (K kind : {K::None, K::Constant, K::Transport, K::Diffusion, K::Burgers, K::VorticityForcing})
    if (to_string(kind) == name) return kind;
  throw ConfigError("unknown coefficient '" + std::string(name) + "'");
}

std::string format_double(double value) {
  char buf[64];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, end);
}

GridSpec ExperimentConfig::grid() const { return GridSpec(dims, n_per_dim, domain_length); }

EquationParams ExperimentConfig::params() const { return {equation, coefficient, gamma, forcing}; }

long ExperimentConfig::n_steps() const {
  if (!(dt > 0.0)) throw field_error("dt", "must be > 0");
  if (!(t_end >= 0.0)) throw field_error("t_end", "must be >= 0");
  const double ratio = t_end / dt;
  const double steps = std::round(ratio);
  if (std::abs(ratio - steps) > 1e-9 * std::max(1.0, steps))
    throw field_error("t_end", "t_end / dt = " + format_double(ratio) + " is not a whole number of steps");
  return long(steps);
}

long ExperimentConfig::step_of(double time) const { return std::lround(time / dt); }

void ExperimentConfig::validate() const {
  const long steps = n_steps();
  GridSpec g(1, 4);
  try {
    g = grid();
  } catch (const GridError& e) {
    throw field_error("n_per_dim", e.what());
  }
  try {
    lambda.validate();
  } catch (const Error& e) {
    throw field_error("lambda", e.what());
  }
  for (double t : snapshot_times)
    if (!(t >= 0.0) || step_of(t) > steps) throw field_error("snapshot_times", "time " + format_double(t) + " outside [0, t_end]");
  if (initial.kind == InitialSpec::Kind::TwoVortices && dims != 2)
    throw field_error("initial", "two_vortices needs dims = 2");
  if (!(initial.width >= 0.0)) throw field_error("initial_width", "must be >= 0");
  try {
    (void)make_problem(params(), g);
  } catch (const UnderResolved& e) {
    throw field_error("n_per_dim", e.what());
  } catch (const InvalidParameters& e) {
    throw field_error(equation == Equation::Vorticity2D ? "gamma" : "coefficient", e.what());
  } catch (const GridError& e) {
    throw field_error("dims", e.what());
  } catch (const NotTwoDimensional& e) {
    throw field_error("dims", e.what());
  }
}

ExperimentConfig parse_config(std::string_view text) {
  ExperimentConfig c;
  std::set<std::string> seen;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string body = trim(line);
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value'");
    const std::string key = trim(std::string_view(body).substr(0, eq));
    const std::string value = trim(std::string_view(body).substr(eq + 1));
    if (!seen.insert(key).second) throw field_error(key, "given more than once");

    if (key == "name") c.name = value;
    else if (key == "equation") c.equation = equation_from_name(value);
    else if (key == "dims") c.dims = int(parse_integer(key, value));
    else if (key == "n_per_dim") c.n_per_dim = int(parse_integer(key, value));
    else if (key == "domain_length") c.domain_length = parse_double(key, value);
    else if (key == "dt") c.dt = parse_double(key, value);
    else if (key == "t_end") c.t_end = parse_double(key, value);
    else if (key == "lambda_mode") {
      if (value == "fixed") c.lambda.mode = LambdaSchedule::Mode::Fixed;
      else if (value == "power_law") c.lambda.mode = LambdaSchedule::Mode::PowerLaw;
      else throw field_error(key, "expected fixed or power_law, got '" + value + "'");
    } else if (key == "lambda") c.lambda.fixed_lambda = parse_double(key, value);
    else if (key == "lambda_c") c.lambda.C = parse_double(key, value);
    else if (key == "lambda_p") c.lambda.p = parse_double(key, value);
    else if (key == "coefficient") {
      try {
        c.coefficient.kind = coefficient_kind_from_name(value);
      } catch (const ConfigError& e) {
        throw field_error(key, e.what());
      }
    } else if (key == "coefficient_value") c.coefficient.value = parse_double(key, value);
    else if (key == "coefficient_frequency") c.coefficient.frequency = int(parse_integer(key, value));
    else if (key == "gamma") c.gamma = parse_double(key, value);
    else if (key == "forcing") {
      try {
        c.forcing.kind = coefficient_kind_from_name(value);
      } catch (const ConfigError& e) {
        throw field_error(key, e.what());
      }
    } else if (key == "forcing_frequency") c.forcing.frequency = int(parse_integer(key, value));
    else if (key == "initial") {
      try {
        c.initial.kind = initial_kind_from_name(value);
      } catch (const UnknownInitialSpec& e) {
        throw field_error(key, e.what());
      }
    } else if (key == "initial_width") c.initial.width = parse_double(key, value);
    else if (key == "initial_amplitude") c.initial.amplitude = parse_double(key, value);
    else if (key == "seed") {
      const long seed = parse_integer(key, value);
      if (seed < 0) throw field_error(key, "must be >= 0");
      c.initial.seed = std::uint64_t(seed);
    } else if (key == "protect_mean") c.protect_mean = parse_bool(key, value);
    else if (key == "baselines") {
      c.dense_baseline = c.low_frequency_baseline = false;
      for (const auto& item : split_list(value)) {
        if (item == "dense") c.dense_baseline = true;
        else if (item == "low_frequency") c.low_frequency_baseline = true;
        else if (item != "none") throw field_error(key, "unknown baseline '" + item + "'");
      }
    } else if (key == "stability") {
      if (value == "warn") c.stability = StabilityPolicy::Warn;
      else if (value == "strict") c.stability = StabilityPolicy::Strict;
      else if (value == "ignore") c.stability = StabilityPolicy::Ignore;
      else throw field_error(key, "expected warn, strict or ignore, got '" + value + "'");
    } else if (key == "output_dir") c.output_dir = value;
    else if (key == "snapshot_times") {
      c.snapshot_times.clear();
      for (const auto& item : split_list(value)) c.snapshot_times.push_back(parse_double(key, item));
    } else {
      throw field_error(key, "unknown key (line " + std::to_string(line_no) + ")");
    }
  }
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path.string() + "'");
  std::stringstream text;
  text << in.rdbuf();
  return parse_config(text.str());
}

std::string serialize_config(const ExperimentConfig& c) {
  std::ostringstream out;
  auto put = [&](std::string_view key, const std::string& value) { out << key << " = " << value << '\n'; };
  put("name", c.name);
  put("equation", std::string(to_string(c.equation)));
  put("dims", std::to_string(c.dims));
  put("n_per_dim", std::to_string(c.n_per_dim));
  put("domain_length", format_double(c.domain_length));
  put("dt", format_double(c.dt));
  put("t_end", format_double(c.t_end));
  put("lambda_mode", c.lambda.mode == LambdaSchedule::Mode::Fixed ? "fixed" : "power_law");
  put("lambda", format_double(c.lambda.fixed_lambda));
  put("lambda_c", format_double(c.lambda.C));
  put("lambda_p", format_double(c.lambda.p));
  put("coefficient", std::string(to_string(c.coefficient.kind)));
  put("coefficient_value", format_double(c.coefficient.value));
  put("coefficient_frequency", std::to_string(c.coefficient.frequency));
  put("gamma", format_double(c.gamma));
  put("forcing", std::string(to_string(c.forcing.kind)));
  put("forcing_frequency", std::to_string(c.forcing.frequency));
  put("initial", std::string(to_string(c.initial.kind)));
  put("initial_width", format_double(c.initial.width));
  put("initial_amplitude", format_double(c.initial.amplitude));
  put("seed", std::to_string(c.initial.seed));
  put("protect_mean", c.protect_mean ? "true" : "false");
  std::string baselines;
  if (c.dense_baseline) baselines = "dense";
  if (c.low_frequency_baseline) baselines += baselines.empty() ? "low_frequency" : ",low_frequency";
  put("baselines", baselines.empty() ? "none" : baselines);
  put("stability", std::string(stability_name(c.stability)));
  put("output_dir", c.output_dir);
  std::string times;
  for (double t : c.snapshot_times) times += (times.empty() ? "" : ",") + format_double(t);
  put("snapshot_times", times);
  return out.str();
}

}  // namespace sparsedyn::harness
