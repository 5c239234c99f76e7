#pragma once

#include <numbers>
#include <vector>

#include "darwin/digraph.hpp"
#include "darwin/qstate.hpp"

namespace darwin {

constexpr double kPi = std::numbers::pi;
constexpr double kCnotPhi = std::numbers::pi / 2.0;

struct ChannelSpec {
  InteractionDigraph graph;
  double phi = kCnotPhi;
  long long N = 0;
  int rehermitize_every = 64;

  void validate() const;
};

// Full-register matrix of U_ij(phi) = |0><0|_i (x) I + |1><1|_i (x) u_j, u = cos(phi) Z + sin(phi) X.
Mat controlled_u(int i, int j, double phi, int nq);

// U rho U^dagger for one edge, by index arithmetic (U is real symmetric).
Mat conjugate_by_gate(const Mat& rho, int i, int j, double phi, int nq);

// In-place variants acting on rows (U X) and columns (X U).
void apply_gate_left(Mat& x, int i, int j, double phi, int nq);
void apply_gate_right(Mat& x, int i, int j, double phi, int nq);

// assignment[s] lists the absolute E-qubit positions driven by S-qubit s.
using ZurekAssignment = std::vector<std::vector<int>>;

// Contiguous blocks of E, one per S qubit; the last block takes the remainder.
ZurekAssignment default_zurek_assignment(int k, int n);
void validate_zurek_assignment(const ZurekAssignment& a, const RegisterLayout& layout);

// One pass of controlled-u gates, one per (S qubit, assigned E qubit) pair.
Mat zurek_evolve(const Mat& rho, const RegisterLayout& layout, const ZurekAssignment& assignment,
                 double phi = kCnotPhi);

// Exact convex mixture sum_e p_e U_e rho U_e^dagger.
Mat channel_step(const Mat& rho, const ChannelSpec& spec);

struct IterationDiagnostics {
  bool record = false;
  std::vector<double> step_distance;  // trace distance between successive states
};

// N channel steps with periodic re-Hermitization; NaN/Inf aborts with the step index.
Mat iterate_channel(const Mat& rho, const ChannelSpec& spec, IterationDiagnostics* diag = nullptr);

}  // namespace darwin
