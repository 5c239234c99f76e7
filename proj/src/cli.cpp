#include "darwin/cli.hpp"

#include <openssl/evp.h>
#include <unistd.h>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <initializer_list>
#include <set>
#include <sstream>

namespace darwin {

using nlohmann::json;

namespace {

[[noreturn]] void field_error(const std::string& field, const std::string& what) {
  throw ValidationError("config field '" + field + "': " + what);
}

void check_fields(const json& obj, std::initializer_list<const char*> allowed, const std::string& where) {
  if (!obj.is_object()) field_error(where, "must be an object");
  const std::set<std::string> ok(allowed.begin(), allowed.end());
  for (const auto& [key, value] : obj.items())
    if (!ok.count(key)) field_error(where.empty() ? key : where + "." + key, "unknown field");
}

int get_int(const json& j, const std::string& field) {
  if (!j.is_number_integer()) field_error(field, "must be an integer");
  const auto v = j.get<long long>();
  if (v < -1000000000LL || v > 1000000000LL) field_error(field, "out of range");
  return static_cast<int>(v);
}

double get_number(const json& j, const std::string& field) {
  if (!j.is_number()) field_error(field, "must be a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) field_error(field, "must be finite");
  return v;
}

std::string get_string(const json& j, const std::string& field) {
  if (!j.is_string()) field_error(field, "must be a string");
  return j.get<std::string>();
}

cplx get_complex(const json& j, const std::string& field) {
  if (j.is_number()) return {get_number(j, field), 0.0};
  if (j.is_array() && j.size() == 2) return {get_number(j[0], field), get_number(j[1], field)};
  field_error(field, "must be a number or a [re, im] pair");
}

json complex_json(cplx z) { return json::array({z.real(), z.imag()}); }

std::uint64_t get_registry(const json& j, int n, const std::string& field) {
  const std::uint64_t all = (std::uint64_t{1} << n) - 1;
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "zeros") return 0;
    if (s == "ones") return all;
    if (s == "leading_one") return leading_ones(1, n);
    if (s == "trailing_one") return 1;
    if (s == "ones_but_last") return all - 1;
    field_error(field, "unknown registry name '" + s + "' (zeros, ones, leading_one, trailing_one, ones_but_last)");
  }
  if (!j.is_number_integer() || j.get<long long>() < 0) field_error(field, "must be a nonnegative integer or a registry name");
  const auto y = j.get<std::uint64_t>();
  if (y > all) field_error(field, "registry index exceeds 2^n - 1");
  return y;
}

Edge get_edge(const json& j, const std::string& field) {
  if (!j.is_array() || j.size() != 2) field_error(field, "each edge must be a [control, target] pair");
  return {get_int(j[0], field), get_int(j[1], field)};
}

std::vector<Edge> get_edges(const json& j, const std::string& field) {
  if (!j.is_array()) field_error(field, "must be an array of [control, target] pairs");
  std::vector<Edge> out;
  for (const auto& e : j) out.push_back(get_edge(e, field));
  return out;
}

json edges_json(const std::vector<Edge>& edges) {
  json a = json::array();
  for (const Edge& e : edges) a.push_back(json::array({e.control, e.target}));
  return a;
}

Model parse_model(const std::string& s) {
  if (s == "zurek") return Model::Zurek;
  if (s == "random_unitary_iterate") return Model::RandomUnitaryIterate;
  if (s == "random_unitary_asymptotic") return Model::RandomUnitaryAsymptotic;
  field_error("model", "must be zurek, random_unitary_iterate or random_unitary_asymptotic");
}

AsymptoticMethod parse_method(const std::string& s) {
  if (s == "auto") return AsymptoticMethod::Auto;
  if (s == "closed_form") return AsymptoticMethod::ClosedForm;
  if (s == "analytic_basis") return AsymptoticMethod::AnalyticBasis;
  if (s == "numeric") return AsymptoticMethod::Numeric;
  field_error("asymptotic_method", "must be auto, closed_form, analytic_basis or numeric");
}

Parity parse_parity(const std::string& s, const std::string& field) {
  if (s == "even") return Parity::Even;
  if (s == "odd") return Parity::Odd;
  field_error(field, "must be even or odd");
}

InputStateSpec parse_input(const json& j, int k, int n) {
  check_fields(j, {"s_amplitudes", "environment"}, "input");
  InputStateSpec in;
  in.k = k;
  in.n = n;
  if (!j.contains("s_amplitudes")) field_error("input.s_amplitudes", "is required");
  const json& a = j["s_amplitudes"];
  if (a.is_string()) {
    if (a.get<std::string>() != "equal") field_error("input.s_amplitudes", "the only named value is \"equal\"");
    in.s_amplitudes.assign(std::size_t{1} << k, cplx(std::pow(2.0, -0.5 * k), 0.0));
  } else {
    if (!a.is_array()) field_error("input.s_amplitudes", "must be an array of 2^k amplitudes or \"equal\"");
    for (const auto& x : a) in.s_amplitudes.push_back(get_complex(x, "input.s_amplitudes"));
    if (in.s_amplitudes.size() != (std::size_t{1} << k)) field_error("input.s_amplitudes", "must have 2^k entries");
  }
  if (!j.contains("environment")) field_error("input.environment", "is required");
  const json& e = j["environment"];
  if (!e.is_object() || !e.contains("kind")) field_error("input.environment", "must be an object with a kind");
  const std::string kind = get_string(e["kind"], "input.environment.kind");
  if (kind == "registry") {
    check_fields(e, {"kind", "index"}, "input.environment");
    in.kind = EnvKind::Registry;
    if (!e.contains("index")) field_error("input.environment.index", "is required");
    in.registry = get_registry(e["index"], n, "input.environment.index");
  } else if (kind == "mixture") {
    check_fields(e, {"kind", "terms"}, "input.environment");
    in.kind = EnvKind::MixtureOfRegistries;
    if (!e.contains("terms") || !e["terms"].is_array()) field_error("input.environment.terms", "must be an array");
    for (const auto& t : e["terms"]) {
      if (!t.is_array() || t.size() != 2) field_error("input.environment.terms", "each term must be [weight, registry]");
      in.mixture.emplace_back(get_number(t[0], "input.environment.terms"), get_registry(t[1], n, "input.environment.terms"));
    }
  } else if (kind == "superposition") {
    check_fields(e, {"kind", "terms"}, "input.environment");
    in.kind = EnvKind::SuperpositionOfRegistries;
    if (!e.contains("terms") || !e["terms"].is_array()) field_error("input.environment.terms", "must be an array");
    for (const auto& t : e["terms"]) {
      if (!t.is_array() || t.size() != 2) field_error("input.environment.terms", "each term must be [amplitude, registry]");
      in.superposition.emplace_back(get_complex(t[0], "input.environment.terms"),
                                    get_registry(t[1], n, "input.environment.terms"));
    }
  } else if (kind == "maximally_mixed") {
    check_fields(e, {"kind"}, "input.environment");
    in.kind = EnvKind::MaximallyMixed;
  } else if (kind == "symmetry_entangled") {
    check_fields(e, {"kind", "c1"}, "input.environment");
    in.kind = EnvKind::SymmetryEntangled;
    if (e.contains("c1")) in.c1 = get_number(e["c1"], "input.environment.c1");
  } else {
    field_error("input.environment.kind",
                "must be registry, mixture, superposition, maximally_mixed or symmetry_entangled");
  }
  try {
    in.validate();
  } catch (const ValidationError& err) {
    field_error("input", err.what());
  }
  return in;
}

json input_json(const InputStateSpec& in) {
  json a = json::array();
  for (const cplx& x : in.s_amplitudes) a.push_back(complex_json(x));
  json e;
  switch (in.kind) {
    case EnvKind::Registry: e = {{"kind", "registry"}, {"index", in.registry}}; break;
    case EnvKind::MixtureOfRegistries: {
      json t = json::array();
      for (const auto& [w, y] : in.mixture) t.push_back(json::array({w, y}));
      e = {{"kind", "mixture"}, {"terms", t}};
      break;
    }
    case EnvKind::SuperpositionOfRegistries: {
      json t = json::array();
      for (const auto& [z, y] : in.superposition) t.push_back(json::array({complex_json(z), y}));
      e = {{"kind", "superposition"}, {"terms", t}};
      break;
    }
    case EnvKind::MaximallyMixed: e = {{"kind", "maximally_mixed"}}; break;
    case EnvKind::SymmetryEntangled: e = {{"kind", "symmetry_entangled"}, {"c1", in.c1}}; break;
  }
  return {{"s_amplitudes", a}, {"environment", e}};
}

DigraphConfig parse_digraph(const json& j) {
  DigraphConfig d;
  if (j.is_string()) {
    d.preset = j.get<std::string>();
  } else {
    check_fields(j, {"preset", "edges", "extra_edges", "probabilities"}, "digraph");
    if (j.contains("preset")) d.preset = get_string(j["preset"], "digraph.preset");
    if (j.contains("edges")) d.edges = get_edges(j["edges"], "digraph.edges");
    if (j.contains("extra_edges")) d.extra_edges = get_edges(j["extra_edges"], "digraph.extra_edges");
    if (j.contains("probabilities")) {
      if (!j["probabilities"].is_array()) field_error("digraph.probabilities", "must be an array");
      for (const auto& p : j["probabilities"]) d.probabilities.push_back(get_number(p, "digraph.probabilities"));
    }
    if (d.preset.empty() == d.edges.empty()) field_error("digraph", "give exactly one of preset or edges");
    if (!d.edges.empty() && !d.extra_edges.empty()) field_error("digraph.extra_edges", "only allowed with a preset");
  }
  if (!d.preset.empty() && d.preset != "koenig" && d.preset != "complete_env" && d.preset != "env_cycle")
    field_error("digraph.preset", "must be koenig, complete_env or env_cycle");
  return d;
}

json digraph_json(const DigraphConfig& d) {
  json j;
  if (!d.preset.empty()) {
    j["preset"] = d.preset;
    j["extra_edges"] = edges_json(d.extra_edges);
  } else {
    j["edges"] = edges_json(d.edges);
  }
  j["probabilities"] = d.probabilities;
  return j;
}

bool is_cnot_angle(double phi) { return std::abs(phi - kCnotPhi) <= 1e-12; }

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
  return s;
}

}  // namespace

std::string to_string(Model m) {
  switch (m) {
    case Model::Zurek: return "zurek";
    case Model::RandomUnitaryIterate: return "random_unitary_iterate";
    case Model::RandomUnitaryAsymptotic: return "random_unitary_asymptotic";
  }
  return "zurek";
}

std::string to_string(AsymptoticMethod m) {
  switch (m) {
    case AsymptoticMethod::Auto: return "auto";
    case AsymptoticMethod::ClosedForm: return "closed_form";
    case AsymptoticMethod::AnalyticBasis: return "analytic_basis";
    case AsymptoticMethod::Numeric: return "numeric";
  }
  return "auto";
}

InteractionDigraph DigraphConfig::build(int k, int n) const {
  try {
    if (preset.empty()) return make_digraph({k, n}, edges, probabilities);
    InteractionDigraph base = preset == "koenig" ? koenig(k, n) : preset == "complete_env" ? complete_env(k, n) : env_cycle(k, n);
    if (extra_edges.empty() && probabilities.empty()) return base;
    if (extra_edges.empty()) return make_digraph(base.layout, base.edges, probabilities);
    return with_env_bindings(base, extra_edges,
                             probabilities.empty() ? std::nullopt : std::optional<std::vector<double>>(probabilities));
  } catch (const ValidationError& e) {
    field_error("digraph", e.what());
  }
}

ExperimentConfig parse_config(const json& j) {
  check_fields(j,
               {"model", "k", "n", "phi", "N", "digraph", "input", "trace_order", "parity", "delta", "seed",
                "asymptotic_method", "zurek_assignment", "rehermitize_every"},
               "");
  ExperimentConfig c;
  for (const char* f : {"model", "k", "n", "input"})
    if (!j.contains(f)) field_error(f, "is required");
  c.model = parse_model(get_string(j["model"], "model"));
  c.k = get_int(j["k"], "k");
  c.n = get_int(j["n"], "n");
  if (c.k < 1) field_error("k", "must be >= 1");
  if (c.n < 1) field_error("n", "must be >= 1");
  try {
    check_qubits(c.k + c.n);
  } catch (const ValidationError& e) {
    field_error("n", e.what());
  }
  if (j.contains("phi")) c.phi = get_number(j["phi"], "phi");
  if (!(c.phi >= 0.0 && c.phi <= kPi)) field_error("phi", "must lie in [0, pi]");
  if (j.contains("seed") && !j["seed"].is_null()) field_error("seed", "must be absent or null (the channel is deterministic)");
  if (j.contains("delta")) c.delta = get_number(j["delta"], "delta");
  if (!(c.delta > 0.0 && c.delta < 0.5)) field_error("delta", "must lie in (0, 0.5)");

  c.input = parse_input(j["input"], c.k, c.n);

  if (j.contains("trace_order")) {
    const json& t = j["trace_order"];
    if (t.is_string()) {
      if (t.get<std::string>() != "right_to_left") field_error("trace_order", "must be \"right_to_left\" or a permutation");
    } else if (t.is_array()) {
      std::vector<int> labels;
      for (const auto& x : t) labels.push_back(get_int(x, "trace_order"));
      try {
        c.trace_order = TraceOrder::from_removal(labels, c.n);
      } catch (const ValidationError& e) {
        field_error("trace_order", e.what());
      }
    } else {
      field_error("trace_order", "must be \"right_to_left\" or an array of E labels");
    }
  }

  const bool zurek = c.model == Model::Zurek;
  const bool iterate = c.model == Model::RandomUnitaryIterate;
  const bool asym = c.model == Model::RandomUnitaryAsymptotic;

  if (j.contains("digraph")) {
    if (zurek) field_error("digraph", "not used by the zurek model");
    c.digraph = parse_digraph(j["digraph"]);
    c.digraph->build(c.k, c.n);
  } else if (!zurek) {
    field_error("digraph", "is required for random unitary models");
  }

  if (j.contains("N")) {
    if (!iterate) field_error("N", "only used by random_unitary_iterate");
    if (!j["N"].is_number_integer() || j["N"].get<long long>() < 0) field_error("N", "must be a nonnegative integer");
    c.N = j["N"].get<long long>();
  } else if (iterate) {
    field_error("N", "is required for random_unitary_iterate");
  }

  if (j.contains("parity")) {
    if (!asym) field_error("parity", "only used by random_unitary_asymptotic");
    c.parity = parse_parity(get_string(j["parity"], "parity"), "parity");
  } else if (asym) {
    c.parity = Parity::Even;
  }

  if (j.contains("asymptotic_method")) {
    if (!asym) field_error("asymptotic_method", "only used by random_unitary_asymptotic");
    c.asymptotic_method = parse_method(get_string(j["asymptotic_method"], "asymptotic_method"));
  }

  if (j.contains("rehermitize_every")) {
    if (!iterate) field_error("rehermitize_every", "only used by random_unitary_iterate");
    c.rehermitize_every = get_int(j["rehermitize_every"], "rehermitize_every");
    if (c.rehermitize_every < 1) field_error("rehermitize_every", "must be >= 1");
  }

  if (zurek) {
    if (c.n < c.k) field_error("n", "the zurek model needs n >= k");
    if (j.contains("zurek_assignment")) {
      const json& a = j["zurek_assignment"];
      if (!a.is_array()) field_error("zurek_assignment", "must be an array of E-position lists");
      ZurekAssignment z;
      for (const auto& sub : a) {
        if (!sub.is_array()) field_error("zurek_assignment", "must be an array of E-position lists");
        std::vector<int> s;
        for (const auto& x : sub) s.push_back(get_int(x, "zurek_assignment"));
        z.push_back(s);
      }
      try {
        validate_zurek_assignment(z, {c.k, c.n});
      } catch (const ValidationError& e) {
        field_error("zurek_assignment", e.what());
      }
      c.zurek_assignment = z;
    } else {
      c.zurek_assignment = default_zurek_assignment(c.k, c.n);
    }
  } else if (j.contains("zurek_assignment")) {
    field_error("zurek_assignment", "only used by the zurek model");
  }
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open config file " + path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ValidationError("config file " + path.string() + " is not valid JSON: " + e.what());
  }
  return parse_config(j);
}

json to_json(const ExperimentConfig& c) {
  json j;
  j["model"] = to_string(c.model);
  j["k"] = c.k;
  j["n"] = c.n;
  j["phi"] = c.phi;
  j["input"] = input_json(c.input);
  if (c.trace_order.removal.empty())
    j["trace_order"] = "right_to_left";
  else
    j["trace_order"] = c.trace_order.removal;
  j["delta"] = c.delta;
  j["seed"] = nullptr;
  if (c.digraph) j["digraph"] = digraph_json(*c.digraph);
  if (c.N) j["N"] = *c.N;
  if (c.model == Model::RandomUnitaryIterate) j["rehermitize_every"] = c.rehermitize_every;
  if (c.model == Model::RandomUnitaryAsymptotic) {
    j["parity"] = to_string(c.parity.value_or(Parity::Even));
    j["asymptotic_method"] = to_string(c.asymptotic_method);
  }
  if (c.zurek_assignment) j["zurek_assignment"] = *c.zurek_assignment;
  return j;
}

std::string sha256_hex(const std::string& data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1)
    throw NumericalError("SHA-256 computation failed");
  std::string hex;
  char buf[3];
  for (unsigned int i = 0; i < len; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", digest[i]);
    hex += buf;
  }
  return hex;
}

std::string config_hash(const ExperimentConfig& c) { return sha256_hex(to_json(c).dump()); }

Mat evolve(const ExperimentConfig& c, RunResult& info) {
  const RegisterLayout layout{c.k, c.n};
  check_qubits(layout.qubits());
  const Mat rho = build_input_state(c.input);
  if (c.model == Model::Zurek) {
    info.regime = "zurek";
    info.method = "zurek";
    return zurek_evolve(rho, layout, c.zurek_assignment.value_or(default_zurek_assignment(c.k, c.n)), c.phi);
  }
  const InteractionDigraph g = c.digraph->build(c.k, c.n);
  const std::string tag = lower(to_string(classify(g).tag));
  if (c.model == Model::RandomUnitaryIterate) {
    info.regime = tag;
    info.method = "iterate";
    ChannelSpec spec{g, c.phi, *c.N, c.rehermitize_every};
    return iterate_channel(rho, spec);
  }

  const Parity parity = c.parity.value_or(Parity::Even);
  std::optional<Regime> regime;
  if (is_full_koenig(g))
    regime = Regime::MaxKoenig;
  else if (is_minimal_regime(g))
    regime = Regime::MinStrong;
  const bool closed = regime && is_cnot_angle(c.phi) && analytic_case(c.input, *regime).has_value();

  AsymptoticMethod method = c.asymptotic_method;
  if (method == AsymptoticMethod::Auto) {
    if (closed)
      method = AsymptoticMethod::ClosedForm;
    else if (layout.qubits() <= kNumericAttractorMaxQubits)
      method = AsymptoticMethod::Numeric;
    else
      field_error("asymptotic_method", "no closed form applies and k+n exceeds the numeric attractor limit of " +
                                           std::to_string(kNumericAttractorMaxQubits));
  }
  info.method = to_string(method);
  info.regime = regime ? to_string(*regime) : tag;

  auto project = [&](const AttractorSpaces& s) {
    info.dims = AttractorDims{s.plus.size(), s.minus.size(), "basis"};
    info.diagnostics.insert(info.diagnostics.end(), s.notes.begin(), s.notes.end());
    return asymptotic_project(rho, s, parity);
  };

  switch (method) {
    case AsymptoticMethod::ClosedForm: {
      if (!closed)
        field_error("asymptotic_method", "closed_form needs phi = pi/2, a full Koenig or minimal-regime digraph and a supported input");
      const auto [dp, dm] = dimension_formula(c.k, c.n, *regime);
      info.dims = AttractorDims{dp, dm, "formula"};
      info.diagnostics.push_back("closed form: " + *analytic_case(c.input, *regime));
      return analytic_output_state(c.input, *regime, parity);
    }
    case AsymptoticMethod::AnalyticBasis:
      if (!regime) field_error("asymptotic_method", "analytic_basis needs a full Koenig or minimal-regime digraph");
      if (c.n < c.k || layout.qubits() > kAnalyticBasisMaxQubits)
        field_error("asymptotic_method", "analytic_basis needs n >= k and k+n <= " + std::to_string(kAnalyticBasisMaxQubits));
      return project(*regime == Regime::MaxKoenig ? analytic_basis_max(c.k, c.n, c.phi) : analytic_basis_min(c.k, c.n, c.phi));
    default:
      if (layout.qubits() > kNumericAttractorMaxQubits)
        field_error("asymptotic_method", "numeric needs k+n <= " + std::to_string(kNumericAttractorMaxQubits));
      return project(numeric_attractor_basis(g, c.phi));
  }
}

RunResult run_experiment(const ExperimentConfig& c) {
  RunResult r;
  r.state = evolve(c, r);
  if (!r.state.allFinite()) throw NumericalError("output state has non-finite entries");
  r.pip = pip(r.state, {c.k, c.n}, c.trace_order);
  r.pip.model = to_string(c.model);
  r.pip.parity = c.model == Model::RandomUnitaryAsymptotic ? to_string(c.parity.value_or(Parity::Even)) : "";
  r.redundancy = redundancy(r.pip, c.delta);
  if (!r.pip.ratio_defined) r.diagnostics.push_back("classical entropy of S vanishes; ratio column is nan");
  for (const PipRow& row : r.pip.rows)
    if (row.mi < -1e-9) r.diagnostics.push_back("negative mutual information at L=" + std::to_string(row.L));
  return r;
}

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (x == 0.0) return "0";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string pip_csv(const PipTable& t) {
  std::ostringstream os;
  os << "L,f,H_S,H_E,H_SE,I,ratio\n";
  for (const PipRow& r : t.rows)
    os << r.L << ',' << format_double(r.f) << ',' << format_double(r.h_s) << ',' << format_double(r.h_e) << ','
       << format_double(r.h_se) << ',' << format_double(r.mi) << ',' << format_double(r.ratio) << '\n';
  return os.str();
}

json summary_json(const ExperimentConfig& c, const RunResult& r) {
  json j;
  j["artifact_version"] = kArtifactVersion;
  j["config"] = to_json(c);
  j["config_hash"] = config_hash(c);
  j["model"] = to_string(c.model);
  j["H_S_class"] = r.pip.h_s_class;
  j["ratio_defined"] = r.pip.ratio_defined;
  j["plateau_found"] = r.redundancy.plateau_found;
  j["f_star"] = r.redundancy.plateau_found ? json(r.redundancy.f_star) : json(nullptr);
  j["R"] = r.redundancy.plateau_found ? json(r.redundancy.R) : json(nullptr);
  j["delta"] = r.redundancy.delta;
  j["parity"] = r.pip.parity.empty() ? json(nullptr) : json(r.pip.parity);
  j["regime"] = r.regime;
  j["method"] = r.method;
  j["trace_order"] = r.pip.trace_order;
  if (r.dims)
    j["attractor_dims"] = {{"plus", r.dims->plus}, {"minus", r.dims->minus}, {"source", r.dims->source}};
  else
    j["attractor_dims"] = nullptr;
  j["diagnostics"] = r.diagnostics;
  return j;
}

void write_atomic(const std::filesystem::path& path, const std::string& content) {
  const std::filesystem::path dir = path.has_parent_path() ? path.parent_path() : std::filesystem::path(".");
  std::filesystem::create_directories(dir);
  const std::filesystem::path tmp = dir / ("." + path.filename().string() + ".tmp." + std::to_string(::getpid()));
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ValidationError("cannot write " + tmp.string());
    out << content;
    out.flush();
    if (!out) throw ValidationError("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

DimsReport dims_report(int k, int n, Regime regime, int max_numeric, double phi) {
  DimsReport r;
  r.k = k;
  r.n = n;
  r.regime = regime;
  r.formula = dimension_formula(k, n, regime);
  const int cap = std::min(max_numeric, kNumericAttractorMaxQubits);
  if (k + n > cap) {
    r.note = "numeric skipped (cap k+n <= " + std::to_string(cap) + ")";
    return r;
  }
  InteractionDigraph g = koenig(k, n);
  if (regime == Regime::MinStrong) {
    if (n >= 2)
      g = complete_env(k, n);
    else
      r.note = "n = 1 admits no E-E edge; the numeric side uses koenig(k, 1)";
  }
  const AttractorSpaces s = numeric_attractor_basis(g, phi);
  r.numeric = std::make_pair(static_cast<long long>(s.plus.size()), static_cast<long long>(s.minus.size()));
  return r;
}

void print_dims(const DimsReport& r, std::ostream& os) {
  os << "dims k=" << r.k << " n=" << r.n << " regime=" << to_string(r.regime) << '\n';
  os << "formula: plus=" << r.formula.first << " minus=" << r.formula.second << '\n';
  if (r.numeric)
    os << "numeric: plus=" << r.numeric->first << " minus=" << r.numeric->second << '\n';
  else
    os << "numeric: skipped\n";
  if (!r.note.empty()) os << "note: " << r.note << '\n';
  if (r.numeric) os << (r.match() ? "MATCH" : "MISMATCH") << '\n';
}

std::vector<std::filesystem::path> reproduce(const std::string& figure, const std::filesystem::path& configs_dir,
                                             const std::filesystem::path& out_dir) {
  static const std::set<std::string> figures{"fig1", "fig4", "fig5", "fig6", "fig7"};
  if (!figures.count(figure)) throw ValidationError("unknown figure '" + figure + "' (fig1, fig4, fig5, fig6, fig7)");
  const std::filesystem::path dir = configs_dir / figure;
  std::ifstream in(dir / "manifest.json");
  if (!in) throw ValidationError("missing manifest " + (dir / "manifest.json").string());
  const json manifest = json::parse(in);
  std::vector<std::filesystem::path> written;
  json index = json::array();
  for (const json& curve : manifest.at("curves")) {
    const std::string name = curve.at("name").get<std::string>();
    const std::string table = curve.value("table", "pip");
    std::ifstream cf(dir / curve.at("config").get<std::string>());
    if (!cf) throw ValidationError("missing config for curve " + name);
    const json base = json::parse(cf);
    std::string csv;
    json hashes = json::array();
    if (table == "pip") {
      const ExperimentConfig c = parse_config(base);
      const RunResult r = run_experiment(c);
      csv = pip_csv(r.pip);
      hashes.push_back(config_hash(c));
    } else if (table == "final_ratio") {
      const json& sweep = curve.at("sweep");
      const std::string field = sweep.at("field").get<std::string>();
      std::ostringstream os;
      os << field << ",H_S_class,H_S,H_E,H_SE,I,ratio\n";
      for (const json& v : sweep.at("values")) {
        json cfg = base;
        cfg[field] = v;
        const ExperimentConfig c = parse_config(cfg);
        const RunResult r = run_experiment(c);
        const PipRow& last = r.pip.rows.back();
        os << v.dump() << ',' << format_double(r.pip.h_s_class) << ',' << format_double(last.h_s) << ','
           << format_double(last.h_e) << ',' << format_double(last.h_se) << ',' << format_double(last.mi) << ','
           << format_double(last.ratio) << '\n';
        hashes.push_back(config_hash(c));
      }
      csv = os.str();
    } else {
      throw ValidationError("curve " + name + ": table must be pip or final_ratio");
    }
    const std::filesystem::path path = out_dir / (name + ".csv");
    write_atomic(path, csv);
    written.push_back(path);
    index.push_back({{"name", name}, {"file", name + ".csv"}, {"table", table}, {"config_hashes", hashes}});
  }
  json idx = {{"figure", figure}, {"artifact_version", kArtifactVersion}, {"curves", index}};
  write_atomic(out_dir / "index.json", idx.dump(2) + "\n");
  return written;
}

}  // namespace darwin
