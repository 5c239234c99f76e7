#include "darwin/input_state.hpp"

#include <cmath>

namespace darwin {

std::string to_string(EnvKind kind) {
  switch (kind) {
    case EnvKind::Registry: return "registry";
    case EnvKind::MixtureOfRegistries: return "mixture";
    case EnvKind::SuperpositionOfRegistries: return "superposition";
    case EnvKind::MaximallyMixed: return "maximally_mixed";
    case EnvKind::SymmetryEntangled: return "symmetry_entangled";
  }
  return "registry";
}

void InputStateSpec::validate() const {
  RegisterLayout{k, n}.validate();
  if (n < 1) throw ValidationError("input: n must be >= 1");
  if (s_amplitudes.size() != (std::size_t{1} << k))
    throw ValidationError("input: s_amplitudes must have 2^k entries");
  double norm = 0.0;
  for (const cplx& a : s_amplitudes) {
    if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) throw ValidationError("input: non-finite amplitude");
    norm += std::norm(a);
  }
  if (std::abs(norm - 1.0) > 1e-12) throw ValidationError("input: s_amplitudes are not normalized");
  const std::uint64_t size = std::uint64_t{1} << n;
  switch (kind) {
    case EnvKind::Registry:
      if (registry >= size) throw ValidationError("input: registry index out of range");
      break;
    case EnvKind::MixtureOfRegistries: {
      if (mixture.empty()) throw ValidationError("input: mixture is empty");
      double w = 0.0;
      for (const auto& [p, y] : mixture) {
        if (!(p > 0.0)) throw ValidationError("input: mixture weights must be positive");
        if (y >= size) throw ValidationError("input: mixture registry index out of range");
        w += p;
      }
      if (std::abs(w - 1.0) > 1e-12) throw ValidationError("input: mixture weights must sum to 1");
      break;
    }
    case EnvKind::SuperpositionOfRegistries: {
      if (superposition.empty()) throw ValidationError("input: superposition is empty");
      double w = 0.0;
      for (const auto& [a, y] : superposition) {
        if (y >= size) throw ValidationError("input: superposition registry index out of range");
        w += std::norm(a);
      }
      if (std::abs(w - 1.0) > 1e-12) throw ValidationError("input: superposition amplitudes are not normalized");
      break;
    }
    case EnvKind::MaximallyMixed: break;
    case EnvKind::SymmetryEntangled:
      if (k != 1) throw ValidationError("input: symmetry_entangled requires k = 1");
      if (!(c1 > 0.0 && c1 < 1.0)) throw ValidationError("input: c1 must lie in (0, 1)");
      break;
  }
}

std::uint64_t leading_ones(int m, int n) {
  std::uint64_t y = 0;
  for (int q = 0; q < m; ++q) y |= qubit_mask(q, n);
  return y;
}

Vec symmetry_ket_plus(double c1) {
  Vec v(2);
  v << c1, std::sqrt(1.0 - c1 * c1);
  return v;
}

Vec symmetry_ket_minus(double c1) {
  Vec v(2);
  v << std::sqrt(1.0 - c1 * c1), -c1;
  return v;
}

double c1_from_phi(double phi) { return std::cos(phi / 2.0); }

Vec s_state_vector(const InputStateSpec& spec) {
  Vec v(static_cast<Eigen::Index>(spec.s_amplitudes.size()));
  for (std::size_t i = 0; i < spec.s_amplitudes.size(); ++i) v(static_cast<Eigen::Index>(i)) = spec.s_amplitudes[i];
  return v;
}

Mat environment_state(const InputStateSpec& spec) {
  const auto dim = static_cast<Eigen::Index>(std::uint64_t{1} << spec.n);
  switch (spec.kind) {
    case EnvKind::Registry: return projector(basis_ket(static_cast<std::size_t>(dim), spec.registry));
    case EnvKind::MixtureOfRegistries: {
      Mat r = Mat::Zero(dim, dim);
      for (const auto& [p, y] : spec.mixture) r(static_cast<Eigen::Index>(y), static_cast<Eigen::Index>(y)) += p;
      return r;
    }
    case EnvKind::SuperpositionOfRegistries: {
      Vec v = Vec::Zero(dim);
      for (const auto& [a, y] : spec.superposition) v(static_cast<Eigen::Index>(y)) += a;
      return projector(v);
    }
    case EnvKind::MaximallyMixed: return Mat::Identity(dim, dim) / static_cast<double>(dim);
    case EnvKind::SymmetryEntangled: break;
  }
  throw ValidationError("input: the symmetry_entangled form has no separate environment state");
}

Mat build_input_state(const InputStateSpec& spec) {
  spec.validate();
  if (spec.kind == EnvKind::SymmetryEntangled) {
    Vec up = Vec::Zero(2), down = Vec::Zero(2);
    up(0) = 1.0;
    down(1) = 1.0;
    Vec psi = spec.s_amplitudes[0] * kron(up, kron_power(symmetry_ket_plus(spec.c1), spec.n)) +
              spec.s_amplitudes[1] * kron(down, kron_power(symmetry_ket_minus(spec.c1), spec.n));
    return projector(psi);
  }
  Vec s = s_state_vector(spec);
  return kron(projector(s), environment_state(spec));
}

InputStateSpec equal_amplitude_input(int k, int n, EnvKind kind, std::uint64_t registry) {
  InputStateSpec spec;
  spec.k = k;
  spec.n = n;
  spec.kind = kind;
  spec.registry = registry;
  const double a = std::pow(2.0, -0.5 * k);
  spec.s_amplitudes.assign(std::size_t{1} << k, cplx(a, 0.0));
  return spec;
}

}  // namespace darwin
