// Command-line front end: run, sweep, hysteresis, validate.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "softdrive/softdrive.hpp"

namespace {

struct CommonOptions
{
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<double> dt;
  std::string out_dir{"out"};
};

void add_common(CLI::App* cmd, CommonOptions& opt, bool with_outputs = true)
{
  cmd->add_option("config", opt.config, "Scenario config file")->required();
  cmd->add_option("--seed", opt.seed, "Override run.seed");
  cmd->add_option("--dt", opt.dt, "Override run.dt (s)");
  if (with_outputs) cmd->add_option("--out-dir", opt.out_dir, "Output directory")->capture_default_str();
}

softdrive::ConfigOverrides overrides_of(const CommonOptions& opt)
{
  softdrive::ConfigOverrides o;
  if (opt.seed) o.emplace_back("run.seed", std::to_string(*opt.seed));
  if (opt.dt) o.emplace_back("run.dt", softdrive::text::format_double(*opt.dt));
  return o;
}

int report_config_error(const softdrive::ConfigError& e)
{
  std::cerr << "error: invalid configuration (" << e.faults().size() << " problem"
            << (e.faults().size() == 1 ? "" : "s") << ")\n";
  for (const auto& f : e.faults()) std::cerr << "  - " << f << '\n';
  return 2;
}

}  // namespace

int main(int argc, char** argv)
{
  CLI::App app{"Digital-hydraulic soft actuator simulator"};
  app.require_subcommand(1);

  CommonOptions run_opt, hyst_opt, val_opt, sweep_opt;
  std::string sweep_param;
  std::vector<std::string> sweep_values;

  auto* run_cmd = app.add_subcommand("run", "Simulate a scenario and write trace + metrics");
  add_common(run_cmd, run_opt);

  auto* sweep_cmd = app.add_subcommand("sweep", "Run a scenario once per value of one config key");
  add_common(sweep_cmd, sweep_opt);
  sweep_cmd->add_option("--param", sweep_param, "Config key, e.g. controller.tolerance")->required();
  sweep_cmd->add_option("--values", sweep_values, "Values to try")->required()->delimiter(',');

  auto* hyst_cmd = app.add_subcommand("hysteresis", "Trace the pressure/tip hysteresis loop");
  add_common(hyst_cmd, hyst_opt);

  auto* val_cmd = app.add_subcommand("validate", "Check a config file and list every problem");
  add_common(val_cmd, val_opt, false);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run_cmd) {
      const auto cfg = softdrive::load_config(run_opt.config, overrides_of(run_opt));
      const auto r = softdrive::run_scenario(cfg, run_opt.out_dir);
      std::cout << "trace:   " << r.trace_path.string() << '\n'
                << "metrics: " << r.metrics_path.string() << '\n'
                << softdrive::metrics_record(cfg, r.result, r.metrics).dump(2) << '\n';
    } else if (*sweep_cmd) {
      const auto cfg = softdrive::load_config(sweep_opt.config, overrides_of(sweep_opt));
      const auto rows = softdrive::sweep(cfg, sweep_param, sweep_values);
      const auto path = softdrive::write_sweep(cfg, sweep_param, rows, sweep_opt.out_dir);
      std::cout << "table: " << path.string() << '\n' << softdrive::sweep_csv_text(sweep_param, rows);
    } else if (*hyst_cmd) {
      const auto cfg = softdrive::load_config(hyst_opt.config, overrides_of(hyst_opt));
      const auto r = softdrive::run_hysteresis(cfg, hyst_opt.out_dir);
      std::cout << "loop: " << r.loop_path.string() << '\n'
                << "points: " << r.points.size() << '\n'
                << "area_pa_mm: " << softdrive::text::format_double(r.area) << '\n';
    } else if (*val_cmd) {
      softdrive::load_config(val_opt.config, overrides_of(val_opt));
      std::cout << "ok\n";
    }
  } catch (const softdrive::ConfigError& e) {
    return report_config_error(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
