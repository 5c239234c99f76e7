#pragma once

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "darwin/analysis.hpp"
#include "darwin/attractor.hpp"
#include "darwin/channels.hpp"
#include "darwin/digraph.hpp"
#include "darwin/input_state.hpp"

namespace darwin {

inline constexpr const char* kArtifactVersion = "0.1.0";

enum class Model { Zurek, RandomUnitaryIterate, RandomUnitaryAsymptotic };
enum class AsymptoticMethod { Auto, ClosedForm, AnalyticBasis, Numeric };

std::string to_string(Model m);
std::string to_string(AsymptoticMethod m);

// Either a preset ("koenig", "complete_env", "env_cycle") plus extra E->E edges,
// or an explicit edge list. Edges use register positions: S is 0..k-1, E is k..k+n-1.
struct DigraphConfig {
  std::string preset;
  std::vector<Edge> edges;
  std::vector<Edge> extra_edges;
  std::vector<double> probabilities;

  InteractionDigraph build(int k, int n) const;
};

struct ExperimentConfig {
  Model model = Model::Zurek;
  int k = 1;
  int n = 1;
  double phi = kCnotPhi;
  std::optional<long long> N;
  std::optional<DigraphConfig> digraph;
  InputStateSpec input;
  TraceOrder trace_order;
  std::optional<Parity> parity;
  double delta = 0.01;
  AsymptoticMethod asymptotic_method = AsymptoticMethod::Auto;
  std::optional<ZurekAssignment> zurek_assignment;
  int rehermitize_every = 64;
};

// Strict parsing: unknown fields, type errors and cross-field violations throw
// ValidationError naming the offending field.
ExperimentConfig parse_config(const nlohmann::json& j);
ExperimentConfig load_config(const std::filesystem::path& path);

// Canonical form with every default filled in; parse_config(to_json(c)) == c.
nlohmann::json to_json(const ExperimentConfig& c);
std::string sha256_hex(const std::string& data);
std::string config_hash(const ExperimentConfig& c);

struct AttractorDims {
  long long plus = 0;
  long long minus = 0;
  std::string source;  // "formula" or "basis"
};

struct RunResult {
  PipTable pip;
  RedundancyReport redundancy;
  std::string regime;
  std::string method;
  std::optional<AttractorDims> dims;
  std::vector<std::string> diagnostics;
  Mat state;
};

Mat evolve(const ExperimentConfig& c, RunResult& info);
RunResult run_experiment(const ExperimentConfig& c);

// pip.csv body: header L,f,H_S,H_E,H_SE,I,ratio and 17 significant digits.
std::string pip_csv(const PipTable& t);
std::string format_double(double x);
nlohmann::json summary_json(const ExperimentConfig& c, const RunResult& r);

// Writes to a temporary sibling and renames it into place.
void write_atomic(const std::filesystem::path& path, const std::string& content);

struct DimsReport {
  int k = 1;
  int n = 1;
  Regime regime = Regime::MaxKoenig;
  std::pair<long long, long long> formula;
  std::optional<std::pair<long long, long long>> numeric;
  std::string note;
  bool match() const { return !numeric || *numeric == formula; }
};

DimsReport dims_report(int k, int n, Regime regime, int max_numeric = 5, double phi = kCnotPhi);
void print_dims(const DimsReport& r, std::ostream& os);

// Runs every curve listed in <configs>/<figure>/manifest.json and writes one CSV per curve.
std::vector<std::filesystem::path> reproduce(const std::string& figure, const std::filesystem::path& configs_dir,
                                             const std::filesystem::path& out_dir);

}  // namespace darwin
