// Command-line front end: experiment presets, direct module access, and the
// acceptance suite.  Exit codes: 0 success, 1 verification failure,
// 2 configuration error, 3 numerical guard tripped.

#include <filesystem>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cspin/acceptance.hpp"
#include "cspin/canonical.hpp"
#include "cspin/ergotropy.hpp"
#include "cspin/experiments.hpp"
#include "cspin/hmf.hpp"
#include "cspin/thermo.hpp"

namespace {

using namespace cspin;
namespace fs = std::filesystem;

// amplitudes arrive as "re,im" (or a bare real)
Complex parse_complex(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) return Complex(std::stod(text), 0.0);
  return Complex(std::stod(text.substr(0, comma)),
                 std::stod(text.substr(comma + 1)));
}

// Flags land in `flags`; each option remembers how to transplant its value
// onto another config, so the precedence is base < config file < flags.
struct CommonOptions {
  ExperimentConfig flags;
  std::string config_path;
  double temperature = 0.0;
  std::string initial_name;
  std::string c0_text, c1_text;
  std::vector<std::pair<CLI::Option*, std::function<void(ExperimentConfig&)>>>
      transplants;

  void bind(CLI::App* cmd) {
    cmd->add_option("--config", config_path,
                    "key = value config file (flags given on the command "
                    "line override it)");
    cmd->add_option("--omega0", flags.params.omega0, "system frequency");
    transplants.emplace_back(cmd->get_option("--omega0"),
                             [this](ExperimentConfig& cfg) {
                               cfg.params.omega0 = flags.params.omega0;
                             });
    cmd->add_option("--omega", flags.params.omega, "bath frequency");
    transplants.emplace_back(cmd->get_option("--omega"),
                             [this](ExperimentConfig& cfg) {
                               cfg.params.omega = flags.params.omega;
                             });
    cmd->add_option("--epsilon", flags.params.epsilon, "coupling strength");
    transplants.emplace_back(cmd->get_option("--epsilon"),
                             [this](ExperimentConfig& cfg) {
                               cfg.params.epsilon = flags.params.epsilon;
                             });
    cmd->add_option("--n-spins", flags.params.n_spins, "bath spin count N");
    transplants.emplace_back(cmd->get_option("--n-spins"),
                             [this](ExperimentConfig& cfg) {
                               cfg.params.n_spins = flags.params.n_spins;
                             });
    cmd->add_option("--beta", flags.params.beta, "inverse temperature");
    transplants.emplace_back(cmd->get_option("--beta"),
                             [this](ExperimentConfig& cfg) {
                               cfg.params.beta = flags.params.beta;
                             });
    cmd->add_option("--temperature", temperature,
                    "temperature (overrides --beta)");
    transplants.emplace_back(cmd->get_option("--temperature"),
                             [this](ExperimentConfig& cfg) {
                               cfg.params.beta = 1.0 / temperature;
                             });
    cmd->add_option("--t-max", flags.grid.t_max, "time grid extent");
    transplants.emplace_back(cmd->get_option("--t-max"),
                             [this](ExperimentConfig& cfg) {
                               cfg.grid.t_max = flags.grid.t_max;
                             });
    cmd->add_option("--samples", flags.grid.samples, "time grid nodes");
    transplants.emplace_back(cmd->get_option("--samples"),
                             [this](ExperimentConfig& cfg) {
                               cfg.grid.samples = flags.grid.samples;
                             });
    cmd->add_option("--beta-min", flags.beta_grid.beta_min, "beta grid start");
    transplants.emplace_back(cmd->get_option("--beta-min"),
                             [this](ExperimentConfig& cfg) {
                               cfg.beta_grid.beta_min = flags.beta_grid.beta_min;
                             });
    cmd->add_option("--beta-max", flags.beta_grid.beta_max, "beta grid end");
    transplants.emplace_back(cmd->get_option("--beta-max"),
                             [this](ExperimentConfig& cfg) {
                               cfg.beta_grid.beta_max = flags.beta_grid.beta_max;
                             });
    cmd->add_option("--beta-samples", flags.beta_grid.samples,
                    "beta grid nodes");
    transplants.emplace_back(cmd->get_option("--beta-samples"),
                             [this](ExperimentConfig& cfg) {
                               cfg.beta_grid.samples = flags.beta_grid.samples;
                             });
    cmd->add_option("--epsilons", flags.epsilons,
                    "coupling sweep values (multi-curve presets)");
    transplants.emplace_back(cmd->get_option("--epsilons"),
                             [this](ExperimentConfig& cfg) {
                               cfg.epsilons = flags.epsilons;
                             });
    cmd->add_option("--initial", initial_name,
                    "excited | ground | superposition | thermal");
    transplants.emplace_back(
        cmd->get_option("--initial"), [this](ExperimentConfig& cfg) {
          const Complex c0 = cfg.initial.c0, c1 = cfg.initial.c1;
          cfg.initial = InitialStateSpec::parse(initial_name);
          cfg.initial.c0 = c0;
          cfg.initial.c1 = c1;
        });
    cmd->add_option("--c0", c0_text, "superposition amplitude c0 as re,im");
    transplants.emplace_back(cmd->get_option("--c0"),
                             [this](ExperimentConfig& cfg) {
                               cfg.initial.c0 = parse_complex(c0_text);
                             });
    cmd->add_option("--c1", c1_text, "superposition amplitude c1 as re,im");
    transplants.emplace_back(cmd->get_option("--c1"),
                             [this](ExperimentConfig& cfg) {
                               cfg.initial.c1 = parse_complex(c1_text);
                             });
    cmd->add_option("--output", flags.output_dir, "output directory");
    transplants.emplace_back(cmd->get_option("--output"),
                             [this](ExperimentConfig& cfg) {
                               cfg.output_dir = flags.output_dir;
                             });
    cmd->add_flag("--reduced-only", flags.reduced_only,
                  "skip joint-state (bath-side) quantities");
    transplants.emplace_back(cmd->get_option("--reduced-only"),
                             [this](ExperimentConfig& cfg) {
                               cfg.reduced_only = flags.reduced_only;
                             });
    cmd->add_flag("--include-1e5", flags.include_large_n,
                  "fig1: include the N = 100000 curve");
    transplants.emplace_back(cmd->get_option("--include-1e5"),
                             [this](ExperimentConfig& cfg) {
                               cfg.include_large_n = flags.include_large_n;
                             });
    cmd->add_option("--threads", flags.threads,
                    "worker threads (results independent of count)");
    transplants.emplace_back(cmd->get_option("--threads"),
                             [this](ExperimentConfig& cfg) {
                               cfg.threads = flags.threads;
                             });
  }

  /// base <- config file <- explicitly passed flags
  ExperimentConfig resolve(ExperimentConfig base) const {
    if (!config_path.empty()) apply_config_file(base, config_path);
    for (const auto& [option, transplant] : transplants)
      if (option->count() > 0) transplant(base);
    return base;
  }
};

int emit(const RunResult& result, const std::string& output_dir) {
  std::cout << "wrote " << result.files.size() << " file(s) to " << output_dir;
  if (!result.skipped_times.empty())
    std::cout << " (" << result.skipped_times.size()
              << " singular node(s) skipped)";
  std::cout << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"central-spin exact dynamics and thermodynamics"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string("cspin ") + kVersion);

  auto* run_cmd =
      app.add_subcommand("run", "run a figure preset or custom sweep");
  std::string preset_arg;
  run_cmd->add_option("preset", preset_arg, "fig1..fig7 | custom")->required();
  CommonOptions run_opts;
  run_opts.bind(run_cmd);

  auto* dynamics_cmd =
      app.add_subcommand("dynamics", "reduced trajectory (triplet + Bloch)");
  CommonOptions dynamics_opts;
  dynamics_opts.bind(dynamics_cmd);

  auto* thermo_cmd =
      app.add_subcommand("thermo", "joint-state heat/work/entropy bookkeeping");
  CommonOptions thermo_opts;
  thermo_opts.bind(thermo_cmd);

  auto* hmf_cmd = app.add_subcommand("hmf", "mean-force sweep over beta");
  CommonOptions hmf_opts;
  hmf_opts.bind(hmf_cmd);

  auto* canonical_cmd =
      app.add_subcommand("canonical", "canonical Hamiltonian and tilde ledger");
  CommonOptions canonical_opts;
  canonical_opts.bind(canonical_cmd);

  auto* ergotropy_cmd =
      app.add_subcommand("ergotropy", "ground-state charging trajectory");
  CommonOptions ergotropy_opts;
  ergotropy_opts.bind(ergotropy_cmd);

  auto* verify_cmd = app.add_subcommand("verify", "run the acceptance suite");
  acceptance::Options acc;
  bool skip_perf = false;
  verify_cmd->add_flag("--skip-performance", skip_perf,
                       "skip the timed throughput criteria");
  verify_cmd->add_option("--only", acc.only, "run one criterion (1..10)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run_cmd->parsed()) {
      ExperimentConfig cfg =
          run_opts.resolve(preset_config(preset_from_string(preset_arg)));
      return emit(run(cfg), cfg.output_dir);
    }
    if (verify_cmd->parsed()) {
      acc.performance = !skip_perf;
      const auto results = acceptance::run_acceptance(acc);
      return acceptance::print_results(results, std::cout) ? 0 : 1;
    }

    if (dynamics_cmd->parsed()) {
      ExperimentConfig cfg = dynamics_opts.resolve(ExperimentConfig{});
      cfg.preset = Preset::kCustom;
      cfg.reduced_only = true;
      return emit(run(cfg), cfg.output_dir);
    }
    if (thermo_cmd->parsed()) {
      ExperimentConfig cfg = thermo_opts.resolve(ExperimentConfig{});
      cfg.validate();
      fs::create_directories(cfg.output_dir);
      const auto records = thermo_trajectory(
          cfg.params, cfg.initial.realize(cfg.params), cfg.grid.times());
      CsvWriter csv((fs::path(cfg.output_dir) / "thermo.csv").string(),
                    {"t", "dU_S", "Q_B", "W", "W_interaction", "Sigma",
                     "Sigma_clausius", "Sigma_finite", "Sigma_finite_integral",
                     "T_fit", "beta_fit", "dS_S", "mutual_information",
                     "bath_relative_entropy"});
      for (const auto& rec : records)
        csv.row({rec.t, rec.du_system, rec.q_bath, rec.work,
                 rec.work_interaction, rec.sigma, rec.sigma_clausius,
                 rec.sigma_finite, rec.sigma_finite_integral, rec.t_fit,
                 rec.beta_fit, rec.ds_system, rec.mutual_information,
                 rec.bath_relative_entropy});
      std::cout << "wrote " << csv.path() << "\n";
      return 0;
    }
    if (hmf_cmd->parsed()) {
      ExperimentConfig cfg = hmf_opts.resolve(ExperimentConfig{});
      cfg.params.validate();
      cfg.beta_grid.validate();
      fs::create_directories(cfg.output_dir);
      CsvWriter csv((fs::path(cfg.output_dir) / "hmf.csv").string(),
                    {"beta", "pi00", "pi11", "h_star_00", "h_star_11",
                     "hs_norm_diff", "S_thermo"});
      for (double beta : cfg.beta_grid.betas()) {
        const MeanForceResult mf = mean_force(cfg.params, beta);
        csv.row({beta, mf.pi00, mf.pi11, mf.h_star(0, 0).real(),
                 mf.h_star(1, 1).real(), mf.hs_norm_diff, mf.s_thermo});
      }
      std::cout << "wrote " << csv.path() << "\n";
      return 0;
    }
    if (canonical_cmd->parsed()) {
      ExperimentConfig cfg = canonical_opts.resolve(ExperimentConfig{});
      cfg.validate();
      fs::create_directories(cfg.output_dir);
      const QubitState rho0 = cfg.initial.realize(cfg.params);
      const auto tilde = tilde_quantities(cfg.params, rho0, cfg.grid.times());
      CsvWriter csv((fs::path(cfg.output_dir) / "canonical.csv").string(),
                    {"t", "Omega", "dU_tilde", "dW_tilde", "dQ_tilde",
                     "Sigma_tilde", "dU_B_tilde", "Sigma_prime"});
      for (const auto& rec : tilde)
        csv.row({rec.t, rec.omega_t, rec.du_system, rec.dw_system,
                 rec.dq_system, rec.sigma_tilde, rec.du_bath, rec.sigma_prime});
      std::cout << "wrote " << csv.path() << "\n";
      return 0;
    }
    if (ergotropy_cmd->parsed()) {
      ExperimentConfig cfg = ergotropy_opts.resolve(ExperimentConfig{});
      cfg.validate();
      fs::create_directories(cfg.output_dir);
      const ChargingSeries series =
          charging_trajectory(cfg.params, cfg.grid.times());
      CsvWriter csv((fs::path(cfg.output_dir) / "ergotropy.csv").string(),
                    {"t", "eta", "W_total", "W_incoherent", "W_coherent",
                     "charging"});
      for (const auto& rec : series.records)
        csv.row({rec.t, rec.eta, rec.total, rec.incoherent, rec.coherent,
                 rec.charging ? 1.0 : 0.0});
      std::cout << "wrote " << csv.path() << " (eta > 1/2 at "
                << series.charging_samples << " samples)\n";
      return 0;
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const CLI::ParseError& e) {
    std::cerr << "argument error: " << e.what() << "\n";
    return 2;
  } catch (const NumericalGuard& e) {
    std::cerr << "numerical guard: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
