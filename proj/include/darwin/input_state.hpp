#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "darwin/qstate.hpp"

namespace darwin {

enum class EnvKind { Registry, MixtureOfRegistries, SuperpositionOfRegistries, MaximallyMixed, SymmetryEntangled };

std::string to_string(EnvKind kind);

// Pure S amplitudes times an environment family, or the entangled
// a|0>|s_c1^n> + b|1>|s_c2^n> form (SymmetryEntangled, k = 1, amplitudes (a, b)).
struct InputStateSpec {
  int k = 1;
  int n = 1;
  std::vector<cplx> s_amplitudes;
  EnvKind kind = EnvKind::Registry;
  std::uint64_t registry = 0;
  std::vector<std::pair<double, std::uint64_t>> mixture;
  std::vector<std::pair<cplx, std::uint64_t>> superposition;
  double c1 = 0.70710678118654752440;

  void validate() const;
};

// Registry index of |1_m 0_{n-m}>: the first m E qubits set.
std::uint64_t leading_ones(int m, int n);

// |s_c1> = c1|0> + c2|1>, |s_c2> = c2|0> - c1|1>, with c2 = sqrt(1 - c1^2).
Vec symmetry_ket_plus(double c1);
Vec symmetry_ket_minus(double c1);

// c1 = cos(phi/2): the u(phi) eigenvectors for eigenvalues +1 and -1.
double c1_from_phi(double phi);

Vec s_state_vector(const InputStateSpec& spec);
Mat environment_state(const InputStateSpec& spec);
Mat build_input_state(const InputStateSpec& spec);

InputStateSpec equal_amplitude_input(int k, int n, EnvKind kind = EnvKind::Registry, std::uint64_t registry = 0);

}  // namespace darwin
