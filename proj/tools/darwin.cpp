#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include "darwin/cli.hpp"

#ifndef DARWIN_CONFIG_DIR
#define DARWIN_CONFIG_DIR "configs"
#endif

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitNumerical = 3;

darwin::Regime parse_regime(const std::string& s) {
  if (s == "max" || s == "max_koenig") return darwin::Regime::MaxKoenig;
  if (s == "min" || s == "min_strong") return darwin::Regime::MinStrong;
  throw darwin::ValidationError("--regime must be max or min");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum Darwinism under random unitary interactions"};
  app.require_subcommand(1);
  app.fallthrough();
  int max_qubits = 0;
  app.add_option("--max-qubits", max_qubits, "Qubit cap for dense states (default 14, or DARWIN_MAX_QUBITS)");

  auto* run = app.add_subcommand("run", "Run one experiment from a JSON config");
  std::string config_path, out_dir, parity;
  run->add_option("--config", config_path, "Config file")->required();
  run->add_option("--out", out_dir, "Output directory")->required();
  run->add_option("--parity", parity, "Asymptotic branch")->check(CLI::IsMember({"even", "odd"}));

  auto* dims = app.add_subcommand("dims", "Compare attractor dimension formulas with numeric bases");
  int k = 1, n = 1, max_numeric = 5;
  std::string regime = "max";
  dims->add_option("--k", k, "System qubits")->required();
  dims->add_option("--n", n, "Environment qubits")->required();
  dims->add_option("--regime", regime, "max or min");
  dims->add_option("--max-numeric", max_numeric, "Largest k+n for the numeric check");

  auto* repro = app.add_subcommand("reproduce", "Regenerate the CSV data behind a figure");
  std::string figure, configs_dir = DARWIN_CONFIG_DIR, repro_out;
  repro->add_option("figure", figure, "fig1, fig4, fig5, fig6 or fig7")->required();
  repro->add_option("--out", repro_out, "Output directory")->required();
  repro->add_option("--configs", configs_dir, "Directory holding the pinned configs");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitValidation;
  }

  try {
    if (max_qubits > 0) darwin::set_max_qubits(max_qubits);
    if (*run) {
      nlohmann::json j;
      {
        std::ifstream in(config_path);
        if (!in) throw darwin::ValidationError("cannot open config file " + config_path);
        try {
          j = nlohmann::json::parse(in);
        } catch (const nlohmann::json::parse_error& e) {
          throw darwin::ValidationError(std::string("config is not valid JSON: ") + e.what());
        }
      }
      if (!parity.empty()) j["parity"] = parity;
      const darwin::ExperimentConfig c = darwin::parse_config(j);
      const darwin::RunResult r = darwin::run_experiment(c);
      const std::filesystem::path out(out_dir);
      darwin::write_atomic(out / "pip.csv", darwin::pip_csv(r.pip));
      darwin::write_atomic(out / "summary.json", darwin::summary_json(c, r).dump(2) + "\n");
      std::cout << "wrote " << (out / "pip.csv").string() << " and " << (out / "summary.json").string() << '\n';
    } else if (*dims) {
      const darwin::DimsReport rep = darwin::dims_report(k, n, parse_regime(regime), max_numeric);
      darwin::print_dims(rep, std::cout);
      if (!rep.match()) return kExitNumerical;
    } else if (*repro) {
      for (const auto& p : darwin::reproduce(figure, configs_dir, repro_out)) std::cout << "wrote " << p.string() << '\n';
    }
  } catch (const darwin::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const darwin::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNumerical;
  }
  return 0;
}
