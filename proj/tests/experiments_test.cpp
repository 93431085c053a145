#include <doctest.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cspin/experiments.hpp"

using namespace cspin;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path temp_dir(const std::string& tag) {
  const fs::path dir = fs::temp_directory_path() / ("cspin_test_" + tag);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("config file parsing reports line diagnostics") {
  const fs::path dir = temp_dir("cfg");
  const fs::path good = dir / "good.cfg";
  {
    std::ofstream out(good);
    out << "# comment\n"
        << "omega0 = 3.1\n"
        << "epsilons = 0.1, 0.5\n"
        << "initial = ground\n"
        << "samples = 11\n";
  }
  ExperimentConfig cfg;
  apply_config_file(cfg, good.string());
  CHECK(cfg.params.omega0 == doctest::Approx(3.1));
  CHECK(cfg.epsilons.size() == 2);
  CHECK(cfg.initial.label() == "ground");
  CHECK(cfg.grid.samples == 11);

  const fs::path bad = dir / "bad.cfg";
  {
    std::ofstream out(bad);
    out << "omega0 = 3.1\nnot_a_key = 7\n";
  }
  try {
    apply_config_file(cfg, bad.string());
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find(":2") != std::string::npos);
    CHECK(std::string(e.what()).find("not_a_key") != std::string::npos);
  }

  const fs::path nan_cfg = dir / "nan.cfg";
  {
    std::ofstream out(nan_cfg);
    out << "omega0 = definitely_not\n";
  }
  CHECK_THROWS_AS(apply_config_file(cfg, nan_cfg.string()), ConfigError);
}

TEST_CASE("grid validation") {
  TimeGrid grid{-1.0, 10};
  CHECK_THROWS_AS(grid.validate(), ConfigError);
  BetaGrid betas{0.5, 0.1, 10};
  CHECK_THROWS_AS(betas.validate(), ConfigError);
  InitialStateSpec bad;
  bad.kind = InitialStateKind::kSuperposition;
  bad.c0 = 0.9;
  bad.c1 = 0.9;
  CHECK_THROWS_AS(bad.realize(ModelParams{}), ConfigError);
}

TEST_CASE("runs are deterministic byte for byte") {
  ExperimentConfig cfg = preset_config(Preset::kFig3);
  cfg.params.n_spins = 4;
  cfg.grid = {2.0, 6};
  const fs::path dir1 = temp_dir("det1"), dir2 = temp_dir("det2");
  cfg.output_dir = dir1.string();
  run(cfg);
  cfg.output_dir = dir2.string();
  run(cfg);
  CHECK(slurp(dir1 / "fig3.csv") == slurp(dir2 / "fig3.csv"));
  CHECK(!slurp(dir1 / "fig3.csv").empty());
}

TEST_CASE("fig3 golden file pins the CSV schema and values") {
  ExperimentConfig cfg = preset_config(Preset::kFig3);
  cfg.params.n_spins = 4;
  cfg.grid = {2.0, 6};
  const fs::path dir = temp_dir("golden");
  cfg.output_dir = dir.string();
  run(cfg);
  const std::string produced = slurp(dir / "fig3.csv");
  const fs::path golden = fs::path(CSPIN_TEST_DIR) / "golden" / "fig3_tiny.csv";
  if (std::getenv("CSPIN_REGEN_GOLDEN")) {
    std::ofstream out(golden, std::ios::binary);
    out << produced;
  }
  REQUIRE_MESSAGE(fs::exists(golden),
                  "golden file missing; regenerate with CSPIN_REGEN_GOLDEN=1");
  CHECK_MESSAGE(produced == slurp(golden),
                "fig3 CSV changed; regenerate the golden file deliberately "
                "with CSPIN_REGEN_GOLDEN=1 if the schema change is intended");
}

TEST_CASE("custom run emits the reduced trajectory with stable columns") {
  ExperimentConfig cfg;
  cfg.preset = Preset::kCustom;
  cfg.params = {2.5, 2.0, 1.0, 6, 1.0};
  cfg.grid = {3.0, 7};
  cfg.reduced_only = true;
  const fs::path dir = temp_dir("custom");
  cfg.output_dir = dir.string();
  const RunResult result = run(cfg);
  CHECK(result.files.size() == 1);
  const std::string text = slurp(result.files.front());
  CHECK(text.rfind("t,alpha,eta,re_delta,im_delta,x,y,z,ergotropy\n", 0) == 0);
  // 7 samples + header
  CHECK(std::count(text.begin(), text.end(), '\n') == 8);

  SUBCASE("metadata carries parameters and version") {
    const std::string meta = slurp(dir / "run_meta.json");
    CHECK(meta.find("\"preset\": \"custom\"") != std::string::npos);
    CHECK(meta.find("\"version\"") != std::string::npos);
  }
}

TEST_CASE("worker count does not change the bytes") {
  ExperimentConfig cfg;
  cfg.preset = Preset::kCustom;
  cfg.params = {2.5, 2.0, 1.0, 30, 1.0};
  cfg.grid = {10.0, 64};
  cfg.reduced_only = true;
  const fs::path dir1 = temp_dir("thr1"), dir4 = temp_dir("thr4");
  cfg.output_dir = dir1.string();
  cfg.threads = 1;
  run(cfg);
  cfg.output_dir = dir4.string();
  cfg.threads = 4;
  run(cfg);
  CHECK(slurp(dir1 / "custom_dynamics.csv") ==
        slurp(dir4 / "custom_dynamics.csv"));
}

TEST_CASE("preset tables carry the figure-caption parameters") {
  const ExperimentConfig fig2 = preset_config(Preset::kFig2);
  CHECK(fig2.params.n_spins == 50);
  CHECK(fig2.params.omega == doctest::Approx(3.0));
  CHECK(fig2.params.omega0 == doctest::Approx(3.25));
  CHECK(fig2.params.beta == doctest::Approx(4.0));
  CHECK(fig2.epsilon_list().size() == 4);

  const ExperimentConfig fig3 = preset_config(Preset::kFig3);
  CHECK(fig3.params.n_spins == 10);
  CHECK(fig3.params.beta == doctest::Approx(1.0));
  CHECK(fig3.params.epsilon == doctest::Approx(1.0));
  CHECK(fig3.params.omega0 == doctest::Approx(2.5));
  CHECK(fig3.params.omega == doctest::Approx(2.0));

  const ExperimentConfig fig4 = preset_config(Preset::kFig4);
  CHECK(fig4.params.n_spins == 80);
  CHECK(fig4.params.omega == doctest::Approx(5.0));
  CHECK(fig4.params.omega0 == doctest::Approx(5.0));

  const ExperimentConfig fig6 = preset_config(Preset::kFig6);
  CHECK(fig6.params.omega == doctest::Approx(3.5));
  CHECK(fig6.params.omega0 == doctest::Approx(3.0));
  CHECK(fig6.params.beta == doctest::Approx(10.0));
}
