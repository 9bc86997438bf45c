#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "softdrive/controllers.hpp"
#include "softdrive/plant.hpp"
#include "softdrive/reference.hpp"
#include "softdrive/sensor.hpp"
#include "softdrive/text.hpp"

namespace softdrive {

/// Raised with every problem found in a configuration, not just the first.
class ConfigError : public std::runtime_error
{
public:
  explicit ConfigError(std::vector<std::string> faults)
      : std::runtime_error(join(faults)), faults_(std::move(faults))
  {}

  const std::vector<std::string>& faults() const { return faults_; }

private:
  static std::string join(const std::vector<std::string>& f)
  {
    std::string out = "invalid configuration:";
    for (const auto& s : f) out += "\n  " + s;
    return out;
  }

  std::vector<std::string> faults_;
};

enum class ControllerType { none, model_based, switching, pi_cascade };

/// Everything needed to run one scenario. Grouped by config section.
struct ScenarioConfig
{
  struct Run
  {
    std::string name{"scenario"};
    double duration{30.0};
    double dt{0.0005};
    std::uint64_t seed{1};
  } run;

  struct Plant
  {
    double p_supply{600e3};
    double p_tank{0.0};
    double supply_droop{0.0};
    double c_a{3.3e11};
    double initial_pressure{0.0};
    // True flow factors relative to the nominal valve data.
    double hp_kv_scale{1.0};
    double lp_kv_scale{1.0};
  } plant;

  // Nominal valve data shared by plant and controller. The defaults give
  // K_v = 1e-8 m^3/(s*sqrt(Pa)): 0.38 l/min at 400 kPa, in line with a
  // 0.7 mm sharp-edged orifice in water.
  struct Valves
  {
    double hp_q_nom{6.324555320336759e-06};
    double hp_dp_nom{400e3};
    double lp_q_nom{6.324555320336759e-06};
    double lp_dp_nom{400e3};
    double p_tr{1000.0};
    double delay{0.002};
    double movement_time{0.003};
    double sticking_time{0.001};
  } valves;

  struct Tip
  {
    double gain{1.8e-5};
    double offset{0.0};
    double saturation_lo{0.0};
    double saturation_hi{12.0};
    double play_width{0.0};
  } tip;

  struct Payload
  {
    bool enabled{false};
    double offset_shift{0.0};
    double saturation_hi{12.0};
  } payload;

  struct Controller
  {
    ControllerType type{ControllerType::model_based};
    double quantum{0.005};
    // model-based
    double tolerance{10e3};
    double sample_period{0.005};
    double hp_kv_scale{1.0};
    double lp_kv_scale{1.0};
    double c_a_scale{1.0};
    // switching
    double threshold{0.5};
    double switching_period{0.1};
    double duty{0.15};
    // PI outer loop
    double kp{2000.0};
    double ki{4000.0};
    double bias{150e3};
    double out_min{0.0};
    double out_max{400e3};
    double outer_period{0.05};
  } controller;

  struct Reference
  {
    ReferenceKind kind{ReferenceKind::chirp_sine};
    double value{0.0};
    std::vector<double> levels{};
    std::vector<double> times{};
    double min{150e3};
    double max{250e3};
    double f_start{0.0};
    double f_end{1.0};
    double sweep_time{30.0};
  } reference;

  // Position defaults: 50 ms frame period, 5 ms bus + 4 ms processing delay,
  // 800 px across an 80 mm field of view.
  struct Sensor
  {
    double position_period{0.05};
    double position_delay{0.009};
    double position_fov{80.0};
    double position_pixels{800.0};
    double position_noise_std{0.0};
    double pressure_period{0.005};
    double pressure_delay{0.004};
    double pressure_quantization{0.0};
    double pressure_noise_std{0.0};
  } sensor;

  struct Hysteresis
  {
    double p_min{0.0};
    double p_max{250e3};
    std::uint64_t steps{50};
  } hysteresis;
};

// ---------------------------------------------------------------------------
// Schema
// ---------------------------------------------------------------------------

struct ConfigField
{
  std::string key;   // "section.name"
  std::string type;  // for messages
  std::function<bool(ScenarioConfig&, std::string_view)> assign;
  std::function<std::string(const ScenarioConfig&)> show;
};

namespace detail {

template <class Access>
ConfigField real_field(std::string key, Access access)
{
  return {std::move(key), "real",
          [access](ScenarioConfig& c, std::string_view s) {
            const auto v = text::parse_double(s);
            if (!v || !std::isfinite(*v)) return false;
            access(c) = *v;
            return true;
          },
          [access](const ScenarioConfig& c) { return text::format_double(access(c)); }};
}

template <class Access>
ConfigField uint_field(std::string key, Access access)
{
  return {std::move(key), "unsigned integer",
          [access](ScenarioConfig& c, std::string_view s) {
            const auto v = text::parse_uint(s);
            if (!v) return false;
            access(c) = *v;
            return true;
          },
          [access](const ScenarioConfig& c) { return std::to_string(access(c)); }};
}

template <class Access>
ConfigField bool_field(std::string key, Access access)
{
  return {std::move(key), "boolean",
          [access](ScenarioConfig& c, std::string_view s) {
            const auto v = text::parse_bool(s);
            if (!v) return false;
            access(c) = *v;
            return true;
          },
          [access](const ScenarioConfig& c) {
            return std::string(access(c) ? "true" : "false");
          }};
}

template <class Access>
ConfigField list_field(std::string key, Access access)
{
  return {std::move(key), "list of reals",
          [access](ScenarioConfig& c, std::string_view s) {
            const auto v = text::parse_double_list(s);
            if (!v) return false;
            for (double x : *v) {
              if (!std::isfinite(x)) return false;
            }
            access(c) = *v;
            return true;
          },
          [access](const ScenarioConfig& c) {
            return text::format_double_list(access(c));
          }};
}

template <class Enum>
struct EnumName
{
  Enum value;
  std::string_view name;
};

template <class Enum, std::size_t N, class Access>
ConfigField enum_field(std::string key, const std::array<EnumName<Enum>, N>& names, Access access)
{
  std::string type = "one of {";
  for (std::size_t i = 0; i < N; ++i) type += (i ? ", " : "") + std::string(names[i].name);
  type += "}";
  return {std::move(key), type,
          [names, access](ScenarioConfig& c, std::string_view s) {
            s = text::trim(s);
            for (const auto& n : names) {
              if (n.name == s) {
                access(c) = n.value;
                return true;
              }
            }
            return false;
          },
          [names, access](const ScenarioConfig& c) {
            const auto v = access(c);
            for (const auto& n : names) {
              if (n.value == v) return std::string(n.name);
            }
            return std::string("?");
          }};
}

inline constexpr std::array<EnumName<ControllerType>, 4> kControllerNames{{
    {ControllerType::none, "none"},
    {ControllerType::model_based, "model_based"},
    {ControllerType::switching, "switching"},
    {ControllerType::pi_cascade, "pi_cascade"},
}};

inline constexpr std::array<EnumName<ReferenceKind>, 3> kReferenceNames{{
    {ReferenceKind::constant, "constant"},
    {ReferenceKind::step_sequence, "step_sequence"},
    {ReferenceKind::chirp_sine, "chirp_sine"},
}};

}  // namespace detail

#define SOFTDRIVE_ACCESS(path) [](auto& c) -> auto& { return c.path; }

inline const std::vector<ConfigField>& config_schema()
{
  using namespace detail;
  static const std::vector<ConfigField> fields = [] {
    std::vector<ConfigField> f;
    f.push_back({"run.name", "string",
                 [](ScenarioConfig& c, std::string_view s) {
                   s = text::trim(s);
                   if (s.empty()) return false;
                   c.run.name = std::string(s);
                   return true;
                 },
                 [](const ScenarioConfig& c) { return c.run.name; }});
    f.push_back(real_field("run.duration", SOFTDRIVE_ACCESS(run.duration)));
    f.push_back(real_field("run.dt", SOFTDRIVE_ACCESS(run.dt)));
    f.push_back(uint_field("run.seed", SOFTDRIVE_ACCESS(run.seed)));

    f.push_back(real_field("plant.p_supply", SOFTDRIVE_ACCESS(plant.p_supply)));
    f.push_back(real_field("plant.p_tank", SOFTDRIVE_ACCESS(plant.p_tank)));
    f.push_back(real_field("plant.supply_droop", SOFTDRIVE_ACCESS(plant.supply_droop)));
    f.push_back(real_field("plant.c_a", SOFTDRIVE_ACCESS(plant.c_a)));
    f.push_back(real_field("plant.initial_pressure", SOFTDRIVE_ACCESS(plant.initial_pressure)));
    f.push_back(real_field("plant.hp_kv_scale", SOFTDRIVE_ACCESS(plant.hp_kv_scale)));
    f.push_back(real_field("plant.lp_kv_scale", SOFTDRIVE_ACCESS(plant.lp_kv_scale)));

    f.push_back(real_field("valves.hp_q_nom", SOFTDRIVE_ACCESS(valves.hp_q_nom)));
    f.push_back(real_field("valves.hp_dp_nom", SOFTDRIVE_ACCESS(valves.hp_dp_nom)));
    f.push_back(real_field("valves.lp_q_nom", SOFTDRIVE_ACCESS(valves.lp_q_nom)));
    f.push_back(real_field("valves.lp_dp_nom", SOFTDRIVE_ACCESS(valves.lp_dp_nom)));
    f.push_back(real_field("valves.p_tr", SOFTDRIVE_ACCESS(valves.p_tr)));
    f.push_back(real_field("valves.delay", SOFTDRIVE_ACCESS(valves.delay)));
    f.push_back(real_field("valves.movement_time", SOFTDRIVE_ACCESS(valves.movement_time)));
    f.push_back(real_field("valves.sticking_time", SOFTDRIVE_ACCESS(valves.sticking_time)));

    f.push_back(real_field("tip.gain", SOFTDRIVE_ACCESS(tip.gain)));
    f.push_back(real_field("tip.offset", SOFTDRIVE_ACCESS(tip.offset)));
    f.push_back(real_field("tip.saturation_lo", SOFTDRIVE_ACCESS(tip.saturation_lo)));
    f.push_back(real_field("tip.saturation_hi", SOFTDRIVE_ACCESS(tip.saturation_hi)));
    f.push_back(real_field("tip.play_width", SOFTDRIVE_ACCESS(tip.play_width)));

    f.push_back(bool_field("payload.enabled", SOFTDRIVE_ACCESS(payload.enabled)));
    f.push_back(real_field("payload.offset_shift", SOFTDRIVE_ACCESS(payload.offset_shift)));
    f.push_back(real_field("payload.saturation_hi", SOFTDRIVE_ACCESS(payload.saturation_hi)));

    f.push_back(enum_field("controller.type", kControllerNames, SOFTDRIVE_ACCESS(controller.type)));
    f.push_back(real_field("controller.quantum", SOFTDRIVE_ACCESS(controller.quantum)));
    f.push_back(real_field("controller.tolerance", SOFTDRIVE_ACCESS(controller.tolerance)));
    f.push_back(real_field("controller.sample_period", SOFTDRIVE_ACCESS(controller.sample_period)));
    f.push_back(real_field("controller.hp_kv_scale", SOFTDRIVE_ACCESS(controller.hp_kv_scale)));
    f.push_back(real_field("controller.lp_kv_scale", SOFTDRIVE_ACCESS(controller.lp_kv_scale)));
    f.push_back(real_field("controller.c_a_scale", SOFTDRIVE_ACCESS(controller.c_a_scale)));
    f.push_back(real_field("controller.threshold", SOFTDRIVE_ACCESS(controller.threshold)));
    f.push_back(real_field("controller.switching_period", SOFTDRIVE_ACCESS(controller.switching_period)));
    f.push_back(real_field("controller.duty", SOFTDRIVE_ACCESS(controller.duty)));
    f.push_back(real_field("controller.kp", SOFTDRIVE_ACCESS(controller.kp)));
    f.push_back(real_field("controller.ki", SOFTDRIVE_ACCESS(controller.ki)));
    f.push_back(real_field("controller.bias", SOFTDRIVE_ACCESS(controller.bias)));
    f.push_back(real_field("controller.out_min", SOFTDRIVE_ACCESS(controller.out_min)));
    f.push_back(real_field("controller.out_max", SOFTDRIVE_ACCESS(controller.out_max)));
    f.push_back(real_field("controller.outer_period", SOFTDRIVE_ACCESS(controller.outer_period)));

    f.push_back(enum_field("reference.kind", kReferenceNames, SOFTDRIVE_ACCESS(reference.kind)));
    f.push_back(real_field("reference.value", SOFTDRIVE_ACCESS(reference.value)));
    f.push_back(list_field("reference.levels", SOFTDRIVE_ACCESS(reference.levels)));
    f.push_back(list_field("reference.times", SOFTDRIVE_ACCESS(reference.times)));
    f.push_back(real_field("reference.min", SOFTDRIVE_ACCESS(reference.min)));
    f.push_back(real_field("reference.max", SOFTDRIVE_ACCESS(reference.max)));
    f.push_back(real_field("reference.f_start", SOFTDRIVE_ACCESS(reference.f_start)));
    f.push_back(real_field("reference.f_end", SOFTDRIVE_ACCESS(reference.f_end)));
    f.push_back(real_field("reference.sweep_time", SOFTDRIVE_ACCESS(reference.sweep_time)));

    f.push_back(real_field("sensor.position_period", SOFTDRIVE_ACCESS(sensor.position_period)));
    f.push_back(real_field("sensor.position_delay", SOFTDRIVE_ACCESS(sensor.position_delay)));
    f.push_back(real_field("sensor.position_fov", SOFTDRIVE_ACCESS(sensor.position_fov)));
    f.push_back(real_field("sensor.position_pixels", SOFTDRIVE_ACCESS(sensor.position_pixels)));
    f.push_back(real_field("sensor.position_noise_std", SOFTDRIVE_ACCESS(sensor.position_noise_std)));
    f.push_back(real_field("sensor.pressure_period", SOFTDRIVE_ACCESS(sensor.pressure_period)));
    f.push_back(real_field("sensor.pressure_delay", SOFTDRIVE_ACCESS(sensor.pressure_delay)));
    f.push_back(real_field("sensor.pressure_quantization", SOFTDRIVE_ACCESS(sensor.pressure_quantization)));
    f.push_back(real_field("sensor.pressure_noise_std", SOFTDRIVE_ACCESS(sensor.pressure_noise_std)));

    f.push_back(real_field("hysteresis.p_min", SOFTDRIVE_ACCESS(hysteresis.p_min)));
    f.push_back(real_field("hysteresis.p_max", SOFTDRIVE_ACCESS(hysteresis.p_max)));
    f.push_back(uint_field("hysteresis.steps", SOFTDRIVE_ACCESS(hysteresis.steps)));
    return f;
  }();
  return fields;
}

#undef SOFTDRIVE_ACCESS

inline const ConfigField* find_field(std::string_view key)
{
  for (const auto& f : config_schema()) {
    if (f.key == key) return &f;
  }
  return nullptr;
}

// ---------------------------------------------------------------------------
// Validation
// ---------------------------------------------------------------------------

namespace detail {

inline bool is_multiple(double value, double unit)
{
  const double r = value / unit;
  return std::abs(r - std::round(r)) < 1e-6 && std::round(r) >= 1.0;
}

}  // namespace detail

/// All semantic problems in `c`; empty when the config is runnable.
inline std::vector<std::string> config_faults(const ScenarioConfig& c)
{
  std::vector<std::string> faults;
  auto require = [&](bool ok, const std::string& msg) {
    if (!ok) faults.push_back(msg);
  };

  require(c.run.duration > 0.0, "run.duration must be positive");
  require(c.run.dt > 0.0, "run.dt must be positive");

  require(c.plant.p_supply > 0.0, "plant.p_supply must be positive");
  require(c.plant.p_tank >= 0.0, "plant.p_tank must be non-negative");
  require(c.plant.p_tank < c.plant.p_supply, "plant.p_tank must be below plant.p_supply");
  require(c.plant.supply_droop >= 0.0, "plant.supply_droop must be non-negative");
  require(c.plant.c_a > 0.0, "plant.c_a must be positive");
  require(c.plant.initial_pressure >= c.plant.p_tank && c.plant.initial_pressure <= c.plant.p_supply,
          "plant.initial_pressure must lie within [p_tank, p_supply]");
  require(c.plant.hp_kv_scale > 0.0, "plant.hp_kv_scale must be positive");
  require(c.plant.lp_kv_scale > 0.0, "plant.lp_kv_scale must be positive");

  require(c.valves.hp_q_nom > 0.0, "valves.hp_q_nom must be positive");
  require(c.valves.hp_dp_nom > 0.0, "valves.hp_dp_nom must be positive");
  require(c.valves.lp_q_nom > 0.0, "valves.lp_q_nom must be positive");
  require(c.valves.lp_dp_nom > 0.0, "valves.lp_dp_nom must be positive");
  require(c.valves.p_tr > 0.0, "valves.p_tr must be positive");
  require(c.valves.delay >= 0.0, "valves.delay must be non-negative");
  require(c.valves.movement_time >= 0.0, "valves.movement_time must be non-negative");
  require(c.valves.sticking_time >= 0.0, "valves.sticking_time must be non-negative");

  require(c.tip.gain >= 0.0, "tip.gain must be non-negative");
  require(c.tip.play_width >= 0.0, "tip.play_width must be non-negative");
  require(c.tip.saturation_lo <= c.tip.saturation_hi, "tip.saturation_lo must not exceed tip.saturation_hi");
  if (c.payload.enabled) {
    require(c.tip.saturation_lo <= c.payload.saturation_hi,
            "payload.saturation_hi must not be below tip.saturation_lo");
  }

  const auto& k = c.controller;
  require(k.quantum > 0.0, "controller.quantum must be positive");
  if (c.run.dt > 0.0 && k.quantum > 0.0) {
    require(detail::is_multiple(k.quantum, c.run.dt), "controller.quantum must be a whole number of run.dt steps");
  }
  if (k.type == ControllerType::model_based || k.type == ControllerType::pi_cascade) {
    require(k.tolerance >= 0.0, "controller.tolerance must be non-negative");
    require(k.hp_kv_scale > 0.0 && k.lp_kv_scale > 0.0 && k.c_a_scale > 0.0,
            "controller kv/c_a scales must be positive");
    if (k.quantum > 0.0) {
      require(detail::is_multiple(k.sample_period, k.quantum),
              "controller.sample_period must be a whole number of command quanta");
    }
  }
  if (k.type == ControllerType::switching) {
    require(k.threshold > 0.0, "controller.threshold must be positive");
    require(k.duty >= 0.0 && k.duty <= 1.0, "controller.duty must lie in [0, 1]");
    if (k.quantum > 0.0) {
      require(detail::is_multiple(k.switching_period, k.quantum),
              "controller.switching_period must be a whole number of command quanta");
    }
  }
  if (k.type == ControllerType::pi_cascade) {
    require(k.kp >= 0.0 && k.ki >= 0.0, "controller.kp and controller.ki must be non-negative");
    require(k.out_min <= k.out_max, "controller.out_min must not exceed controller.out_max");
    require(k.out_min >= 0.0, "controller.out_min must be non-negative");
    if (k.sample_period > 0.0) {
      require(detail::is_multiple(k.outer_period, k.sample_period),
              "controller.outer_period must be a whole number of controller.sample_period");
    }
  }

  const auto& r = c.reference;
  if (r.kind == ReferenceKind::step_sequence) {
    require(!r.levels.empty(), "reference.levels must not be empty for step_sequence");
    require(r.levels.size() == r.times.size(), "reference.levels and reference.times must have equal length");
    require(std::is_sorted(r.times.begin(), r.times.end()) &&
                std::adjacent_find(r.times.begin(), r.times.end()) == r.times.end(),
            "reference.times must be strictly increasing");
  }
  if (r.kind == ReferenceKind::chirp_sine) {
    require(r.min <= r.max, "reference.min must not exceed reference.max");
    require(r.sweep_time > 0.0, "reference.sweep_time must be positive");
    require(r.f_start >= 0.0 && r.f_end >= 0.0, "reference frequencies must be non-negative");
  }

  const auto& s = c.sensor;
  require(s.position_period >= 0.0 && s.position_delay >= 0.0 && s.position_noise_std >= 0.0,
          "sensor position timing and noise must be non-negative");
  require(s.position_fov >= 0.0, "sensor.position_fov must be non-negative");
  require(s.position_pixels > 0.0, "sensor.position_pixels must be positive");
  require(s.pressure_period >= 0.0 && s.pressure_delay >= 0.0 && s.pressure_quantization >= 0.0 &&
              s.pressure_noise_std >= 0.0,
          "sensor pressure timing, quantization and noise must be non-negative");
  if (k.type == ControllerType::switching) {
    require(k.threshold >= s.position_fov / s.position_pixels,
            "controller.threshold must be at least one position quantization step");
  }

  require(c.hysteresis.p_min >= 0.0, "hysteresis.p_min must be non-negative");
  require(c.hysteresis.p_min < c.hysteresis.p_max, "hysteresis.p_min must be below hysteresis.p_max");
  require(c.hysteresis.steps >= 1, "hysteresis.steps must be at least 1");
  return faults;
}

// ---------------------------------------------------------------------------
// Parsing
// ---------------------------------------------------------------------------

/// Set one "section.key" from text. Returns a fault message or empty string.
inline std::string set_config_value(ScenarioConfig& c, std::string_view key, std::string_view value)
{
  const ConfigField* f = find_field(key);
  if (!f) return "unknown key '" + std::string(key) + "'";
  if (!f->assign(c, value)) {
    return "key '" + std::string(key) + "': cannot parse '" + std::string(text::trim(value)) + "' as " + f->type;
  }
  return {};
}

using ConfigOverrides = std::vector<std::pair<std::string, std::string>>;

/// Parse a config from INI text, then apply `overrides` ("section.key", value).
/// Unknown sections and keys, malformed values and semantic faults are all
/// collected and reported together.
inline ScenarioConfig parse_config(std::istream& in, std::string_view origin = "<config>",
                                   const ConfigOverrides& overrides = {})
{
  namespace pt = boost::property_tree;
  pt::ptree tree;
  try {
    pt::ini_parser::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError({std::string(origin) + ": line " + std::to_string(e.line()) + ": " + e.message()});
  }

  ScenarioConfig c;
  std::vector<std::string> faults;
  for (const auto& [section, body] : tree) {
    if (body.empty()) {
      faults.push_back("key '" + section + "' is outside any section");
      continue;
    }
    for (const auto& [key, node] : body) {
      auto msg = set_config_value(c, section + "." + key, node.get_value<std::string>());
      if (!msg.empty()) faults.push_back(std::move(msg));
    }
  }
  for (const auto& [key, value] : overrides) {
    auto msg = set_config_value(c, key, value);
    if (!msg.empty()) faults.push_back("override: " + msg);
  }
  auto semantic = config_faults(c);
  faults.insert(faults.end(), semantic.begin(), semantic.end());
  if (!faults.empty()) throw ConfigError(std::move(faults));
  return c;
}

inline ScenarioConfig parse_config_string(const std::string& s)
{
  std::istringstream in(s);
  return parse_config(in);
}

inline ScenarioConfig load_config(const std::filesystem::path& path, const ConfigOverrides& overrides = {})
{
  std::ifstream in(path);
  if (!in) throw ConfigError({"cannot open config file '" + path.string() + "'"});
  return parse_config(in, path.string(), overrides);
}

/// Canonical INI rendering of every key. Reading it back gives an equal config.
inline std::string write_config(const ScenarioConfig& c)
{
  std::string out;
  std::string section;
  for (const auto& f : config_schema()) {
    const auto dot = f.key.find('.');
    const auto sec = f.key.substr(0, dot);
    if (sec != section) {
      if (!section.empty()) out += "\n";
      out += "[" + sec + "]\n";
      section = sec;
    }
    out += f.key.substr(dot + 1) + " = " + f.show(c) + "\n";
  }
  return out;
}

inline void check(const ScenarioConfig& c)
{
  auto faults = config_faults(c);
  if (!faults.empty()) throw ConfigError(std::move(faults));
}

// ---------------------------------------------------------------------------
// Projections onto the simulation types
// ---------------------------------------------------------------------------

inline OrificeModel nominal_hp_orifice(const ScenarioConfig& c)
{
  return {flow_factor_from_nominal(c.valves.hp_q_nom, c.valves.hp_dp_nom), c.valves.p_tr};
}

inline OrificeModel nominal_lp_orifice(const ScenarioConfig& c)
{
  return {flow_factor_from_nominal(c.valves.lp_q_nom, c.valves.lp_dp_nom), c.valves.p_tr};
}

inline TipMap effective_tip_map(const ScenarioConfig& c)
{
  TipMap m{c.tip.gain, c.tip.offset, c.tip.saturation_lo, c.tip.saturation_hi, c.tip.play_width};
  if (c.payload.enabled) {
    m.offset += c.payload.offset_shift;
    m.saturation_hi = std::min(m.saturation_hi, c.payload.saturation_hi);
  }
  return m;
}

inline PlantParams plant_params(const ScenarioConfig& c)
{
  PlantParams p;
  p.p_supply = c.plant.p_supply;
  p.p_tank = c.plant.p_tank;
  p.supply_droop = c.plant.supply_droop;
  p.hp_orifice = nominal_hp_orifice(c);
  p.hp_orifice.k_v *= c.plant.hp_kv_scale;
  p.lp_orifice = nominal_lp_orifice(c);
  p.lp_orifice.k_v *= c.plant.lp_kv_scale;
  const ValveTiming timing{c.valves.delay, c.valves.movement_time, c.valves.sticking_time};
  p.hp_timing = timing;
  p.lp_timing = timing;
  p.tube.c_a = c.plant.c_a;
  p.tip = effective_tip_map(c);
  return p;
}

inline ModelBasedParams model_based_params(const ScenarioConfig& c)
{
  ModelBasedParams m;
  m.hp_orifice = nominal_hp_orifice(c);
  m.hp_orifice.k_v *= c.controller.hp_kv_scale;
  m.lp_orifice = nominal_lp_orifice(c);
  m.lp_orifice.k_v *= c.controller.lp_kv_scale;
  m.tube.c_a = c.plant.c_a * c.controller.c_a_scale;
  m.tolerance = c.controller.tolerance;
  m.sample_period = c.controller.sample_period;
  return m;
}

inline SwitchingParams switching_params(const ScenarioConfig& c)
{
  return {c.controller.threshold, c.controller.switching_period, c.controller.duty, c.controller.quantum};
}

inline PiParams pi_params(const ScenarioConfig& c)
{
  return {c.controller.kp, c.controller.ki, c.controller.bias, c.controller.out_min, c.controller.out_max};
}

inline ReferenceSignal reference_signal(const ScenarioConfig& c)
{
  const auto& r = c.reference;
  return {r.kind, r.value, r.levels, r.times, r.min, r.max, r.f_start, r.f_end, r.sweep_time};
}

inline SensorModel position_sensor(const ScenarioConfig& c)
{
  return {c.sensor.position_period, c.sensor.position_delay, c.sensor.position_fov / c.sensor.position_pixels,
          c.sensor.position_noise_std};
}

inline SensorModel pressure_sensor(const ScenarioConfig& c)
{
  return {c.sensor.pressure_period, c.sensor.pressure_delay, c.sensor.pressure_quantization,
          c.sensor.pressure_noise_std};
}

}  // namespace softdrive
