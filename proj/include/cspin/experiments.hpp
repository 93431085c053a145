#pragma once

#include <string>
#include <vector>

#include "cspin/dynamics.hpp"

namespace cspin {

inline constexpr const char* kVersion = "0.1.0";

enum class Preset { kFig1, kFig2, kFig3, kFig4, kFig5, kFig6, kFig7, kCustom };

Preset preset_from_string(const std::string& name);
std::string preset_name(Preset preset);

enum class InitialStateKind { kExcited, kGround, kSuperposition, kThermal };

struct InitialStateSpec {
  InitialStateKind kind = InitialStateKind::kExcited;
  Complex c0{1.0, 0.0};  // superposition amplitudes
  Complex c1{0.0, 0.0};

  QubitState realize(const ModelParams& params) const;
  std::string label() const;
  static InitialStateSpec parse(const std::string& name);
};

struct TimeGrid {
  double t_max = 20.0;
  int samples = 401;  ///< nodes including t = 0

  std::vector<double> times() const;
  void validate() const;
};

struct BetaGrid {
  double beta_min = 0.01;
  double beta_max = 50.0;
  int samples = 160;

  /// log-spaced, strictly increasing
  std::vector<double> betas() const;
  void validate() const;
};

struct ExperimentConfig {
  Preset preset = Preset::kCustom;
  ModelParams params;
  InitialStateSpec initial;
  TimeGrid grid;
  BetaGrid beta_grid;
  std::vector<double> epsilons;  ///< multi-curve sweeps; empty = {params.epsilon}
  std::string output_dir = ".";
  bool reduced_only = false;
  bool include_large_n = false;  ///< fig1: add the N = 1e5 curve
  int threads = 1;

  std::vector<double> epsilon_list() const;
  void validate() const;
};

/// Figure-caption parameters baked in; overridable afterwards.
ExperimentConfig preset_config(Preset preset);

/// key = value lines, '#' comments; throws ConfigError with file:line
/// diagnostics.
void apply_config_file(ExperimentConfig& config, const std::string& path);
/// One key/value pair; context prefixes error messages.
void apply_key_value(ExperimentConfig& config, const std::string& key,
                     const std::string& value, const std::string& context);

struct RunResult {
  std::vector<std::string> files;       ///< CSVs written, in order
  std::vector<double> skipped_times;    ///< map-singular nodes left as nan
  double wall_ms = 0.0;
};

/// Executes a preset (or custom run), writing CSVs plus run_meta.json into
/// output_dir.  CSV bytes are bit-identical across runs of the same build.
RunResult run(const ExperimentConfig& config);

/// Plain CSV emitter: header row then %.17g values; writes on destruction.
class CsvWriter {
 public:
  CsvWriter(const std::string& path, const std::vector<std::string>& columns);
  ~CsvWriter();
  CsvWriter(const CsvWriter&) = delete;
  CsvWriter& operator=(const CsvWriter&) = delete;

  void row(const std::vector<double>& values);
  const std::string& path() const { return path_; }

 private:
  std::string path_;
  std::string buffer_;
  size_t columns_;
};

}  // namespace cspin
