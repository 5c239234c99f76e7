#pragma once

#include <optional>
#include <string>
#include <vector>

#include "darwin/qstate.hpp"

namespace darwin {

// Register positions: S qubits are 0..k-1, E qubits k..k+n-1.
struct Edge {
  int control = 0;
  int target = 0;
  bool operator==(const Edge&) const = default;
};

struct InteractionDigraph {
  RegisterLayout layout;
  std::vector<Edge> edges;
  std::vector<double> probabilities;

  // Edge endpoints, no S targets, no duplicates or self-loops, p_e > 0, sum 1.
  void validate() const;
};

enum class DigraphTag { Koenig, EnvStronglyConnected, Other };

struct DigraphClass {
  DigraphTag tag = DigraphTag::Other;
  int e_binding_count = 0;
};

std::string to_string(DigraphTag tag);

// Builds and validates; empty probabilities mean uniform 1/|M|.
InteractionDigraph make_digraph(RegisterLayout layout, std::vector<Edge> edges,
                                std::vector<double> probabilities = {});

InteractionDigraph koenig(int k, int n);

// Adds E->E edges; probabilities become uniform unless given for the merged set.
InteractionDigraph with_env_bindings(const InteractionDigraph& g, const std::vector<Edge>& extra,
                                     std::optional<std::vector<double>> probabilities = std::nullopt);

// koenig(k, n) plus every ordered E-E pair.
InteractionDigraph complete_env(int k, int n);

// koenig(k, n) plus the cycle e_1 -> e_2 -> ... -> e_n -> e_1.
InteractionDigraph env_cycle(int k, int n);

DigraphClass classify(const InteractionDigraph& g);

// True when the edge set is exactly all S->E pairs (the maximal regime).
bool is_full_koenig(const InteractionDigraph& g);

// Environment strongly connected and every S qubit drives at least one E qubit.
bool is_minimal_regime(const InteractionDigraph& g);

}  // namespace darwin
