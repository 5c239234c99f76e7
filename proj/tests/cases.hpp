#pragma once

#include <string>
#include <vector>

#include "darwin/attractor.hpp"
#include "darwin/digraph.hpp"
#include "darwin/input_state.hpp"

namespace testing_util {

struct ClosedFormCase {
  std::string label;
  darwin::Regime regime;
  darwin::InputStateSpec input;
};

inline darwin::InteractionDigraph regime_graph(darwin::Regime r, int k, int n) {
  return r == darwin::Regime::MaxKoenig ? darwin::koenig(k, n) : darwin::complete_env(k, n);
}

// The ten closed-form outputs for one S qubit, with the given S amplitudes.
inline std::vector<ClosedFormCase> closed_form_cases(int n, std::vector<darwin::cplx> amps) {
  using darwin::EnvKind;
  using darwin::Regime;
  auto make = [&](EnvKind kind) {
    darwin::InputStateSpec s;
    s.k = 1;
    s.n = n;
    s.s_amplitudes = amps;
    s.kind = kind;
    return s;
  };
  const std::uint64_t ones = (std::uint64_t{1} << n) - 1;
  std::vector<ClosedFormCase> out;
  auto registry = [&](std::uint64_t y) {
    auto s = make(EnvKind::Registry);
    s.registry = y;
    return s;
  };
  auto pair = [&](std::uint64_t y) {
    auto s = make(EnvKind::MixtureOfRegistries);
    s.mixture = {{0.5, 0}, {0.5, y}};
    return s;
  };
  out.push_back({"max_registry", Regime::MaxKoenig, registry(0)});
  out.push_back({"max_mixture_ground_all_ones", Regime::MaxKoenig, pair(ones)});
  out.push_back({"max_maximally_mixed", Regime::MaxKoenig, make(EnvKind::MaximallyMixed)});
  out.push_back({"max_mixture_ground_leading_one", Regime::MaxKoenig, pair(darwin::leading_ones(1, n))});
  out.push_back({"max_symmetry_entangled", Regime::MaxKoenig, make(EnvKind::SymmetryEntangled)});
  out.push_back({"min_registry_ground", Regime::MinStrong, registry(0)});
  out.push_back({"min_registry_excited", Regime::MinStrong, registry(ones)});
  out.push_back({"min_mixture_ground_pair", Regime::MinStrong, pair(ones)});
  out.push_back({"min_maximally_mixed", Regime::MinStrong, make(EnvKind::MaximallyMixed)});
  out.push_back({"min_symmetry_entangled", Regime::MinStrong, make(EnvKind::SymmetryEntangled)});
  return out;
}

}  // namespace testing_util
