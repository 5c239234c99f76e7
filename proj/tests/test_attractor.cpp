#include <doctest.h>

#include <cmath>

#include "cases.hpp"
#include "darwin/attractor.hpp"
#include "darwin/channels.hpp"
#include "darwin/input_state.hpp"
#include "helpers.hpp"
#include "oracle_values.hpp"

using namespace darwin;
using testing_util::closed_form_cases;
using testing_util::regime_graph;

namespace {

std::pair<long long, long long> numeric_dims(const InteractionDigraph& g, double phi = kCnotPhi) {
  const AttractorSpaces s = numeric_attractor_basis(g, phi);
  return {s.plus.size(), s.minus.size()};
}

void check_basis(const AttractorBasis& b, const InteractionDigraph& g, double phi) {
  CHECK(gram_deviation(b) < 1e-10);
  if (b.size() > 0) CHECK(eigen_residual(b, g, phi) < 1e-9);
}

}  // namespace

TEST_CASE("symmetry states are the eigenvectors of u") {
  for (double phi : {0.3, 1.0, kCnotPhi, 2.5}) {
    const SymmetryStates s = SymmetryStates::from_phi(phi);
    CHECK_NOTHROW(s.validate(phi));
    CHECK(std::abs(s.plus().dot(s.minus())) < 1e-15);
    CHECK(s.c1 * s.c1 + s.c2 * s.c2 == doctest::Approx(1.0).epsilon(1e-15));
  }
  CHECK_THROWS_AS(SymmetryStates::from_phi(0.4).validate(1.2), ValidationError);
}

TEST_CASE("dimension formulas") {
  using P = std::pair<long long, long long>;
  CHECK(dimension_formula(1, 3, Regime::MaxKoenig) == P{88, 24});
  CHECK(dimension_formula(2, 2, Regime::MaxKoenig) == P{58, 18});
  CHECK(dimension_formula(1, 2, Regime::MaxKoenig) == P{28, 12});
  CHECK(dimension_formula(1, 1, Regime::MaxKoenig) == P{10, 6});
  CHECK(dimension_formula(2, 1, Regime::MaxKoenig) == dimension_formula(1, 2, Regime::MaxKoenig));
  for (int n = 2; n <= 9; ++n) CHECK(dimension_formula(2, n, Regime::MinStrong) == P{29, 0});
  CHECK(dimension_formula(1, 5, Regime::MinStrong) == P{11, 0});
  CHECK(dimension_formula(1, 1, Regime::MinStrong) == P{11, 1});
}

TEST_CASE("numeric attractor dimensions") {
  using P = std::pair<long long, long long>;
  CHECK(numeric_dims(koenig(1, 1)) == P{10, 6});
  CHECK(numeric_dims(koenig(1, 2)) == P{28, 12});
  CHECK(numeric_dims(koenig(1, 2), kPi / 3) == P{oracle::kKoenig12ThirdPiDims[0], oracle::kKoenig12ThirdPiDims[1]});
  CHECK(numeric_dims(complete_env(1, 3)) == P{11, 0});
  CHECK(numeric_dims(koenig(2, 1)) == P{oracle::kNumericDims[0], oracle::kNumericDims[1]});
  CHECK(numeric_dims(env_cycle(1, 3)) == P{oracle::kNumericDims[2], oracle::kNumericDims[3]});
  CHECK(numeric_dims(with_env_bindings(koenig(1, 3), {{1, 2}})) == P{oracle::kNumericDims[4], oracle::kNumericDims[5]});
  CHECK_THROWS_AS(numeric_attractor_basis(koenig(1, 6), kCnotPhi), ValidationError);
}

TEST_CASE("one environment binding empties the minus space") {
  CHECK(numeric_dims(with_env_bindings(koenig(1, 2), {{1, 2}})).second == 0);
  CHECK(numeric_dims(with_env_bindings(koenig(1, 3), {{2, 3}})).second == 0);
  CHECK(numeric_dims(with_env_bindings(koenig(2, 2), {{3, 2}})).second == 0);
  CHECK(numeric_dims(with_env_bindings(koenig(1, 3), {{1, 2}}), 1.0).second == 0);
}

TEST_CASE("minimal regime holds when S drives a single environment qubit") {
  using P = std::pair<long long, long long>;
  std::vector<Edge> edges{{0, 1}};
  for (int a = 1; a <= 3; ++a)
    for (int b = 1; b <= 3; ++b)
      if (a != b) edges.push_back({a, b});
  const InteractionDigraph g = make_digraph({1, 3}, edges);
  CHECK(is_minimal_regime(g));
  CHECK(numeric_dims(g) == dimension_formula(1, 3, Regime::MinStrong));

  const InteractionDigraph h = make_digraph({2, 2}, {{0, 2}, {1, 3}, {2, 3}, {3, 2}});
  CHECK(is_minimal_regime(h));
  CHECK(numeric_dims(h) == P{29, 0});
  CHECK(numeric_dims(env_cycle(2, 2)) == P{29, 0});
}

TEST_CASE("numeric bases are orthonormal eigen-operators") {
  for (double phi : {kCnotPhi, kPi / 3}) {
    for (const InteractionDigraph& g : {koenig(1, 2), koenig(2, 2), complete_env(1, 3), env_cycle(2, 2)}) {
      const AttractorSpaces s = numeric_attractor_basis(g, phi);
      check_basis(s.plus, g, phi);
      check_basis(s.minus, g, phi);
    }
  }
}

TEST_CASE("analytic maximal bases match the numeric spans") {
  for (auto [k, n] : std::vector<std::pair<int, int>>{{1, 1}, {1, 2}, {1, 3}, {2, 2}, {1, 4}}) {
    for (double phi : {kCnotPhi, kPi / 3}) {
      CAPTURE(k);
      CAPTURE(n);
      CAPTURE(phi);
      const InteractionDigraph g = koenig(k, n);
      const AttractorSpaces a = analytic_basis_max(k, n, phi);
      const AttractorSpaces num = numeric_attractor_basis(g, phi);
      const auto [dp, dm] = dimension_formula(k, n, Regime::MaxKoenig);
      CHECK(a.plus.size() == dp);
      CHECK(a.minus.size() == dm);
      CHECK(a.plus.provenance == BasisProvenance::AnalyticMax);
      check_basis(a.plus, g, phi);
      check_basis(a.minus, g, phi);
      CHECK(num.plus.size() == dp);
      CHECK(num.minus.size() == dm);
      CHECK(span_residual(a.plus, num.plus) < 1e-8);
      CHECK(span_residual(a.minus, num.minus) < 1e-8);
    }
  }
}

TEST_CASE("analytic minimal bases match the numeric spans") {
  for (auto [k, n] : std::vector<std::pair<int, int>>{{1, 2}, {1, 3}, {2, 2}, {1, 4}}) {
    for (double phi : {kCnotPhi, kPi / 3}) {
      CAPTURE(k);
      CAPTURE(n);
      const InteractionDigraph g = complete_env(k, n);
      const AttractorSpaces a = analytic_basis_min(k, n, phi);
      const AttractorSpaces num = numeric_attractor_basis(g, phi);
      const auto [dp, dm] = dimension_formula(k, n, Regime::MinStrong);
      CHECK(a.plus.size() == dp);
      CHECK(a.minus.size() == dm);
      check_basis(a.plus, g, phi);
      CHECK(num.plus.size() == dp);
      CHECK(num.minus.size() == 0);
      CHECK(span_residual(a.plus, num.plus) < 1e-8);
    }
  }
  // With n = 1 there is no E-E edge; the generators collapse to rank 10 and lie in the koenig(1,1) spaces.
  const AttractorSpaces one = analytic_basis_min(1, 1, kCnotPhi);
  const AttractorSpaces k11 = numeric_attractor_basis(koenig(1, 1), kCnotPhi);
  CHECK(one.plus.size() == 10);
  CHECK(one.minus.size() == 1);
  CHECK_FALSE(one.notes.empty());
  CHECK(gram_deviation(one.plus) < 1e-10);
  CHECK(gram_deviation(one.minus) < 1e-10);
  CHECK(span_residual(one.plus, k11.plus) < 1e-8);
  CHECK(span_residual(one.minus, k11.minus) < 1e-8);
}

TEST_CASE("analytic bases reject unsupported shapes") {
  CHECK_THROWS_AS(analytic_basis_max(2, 1, kCnotPhi), ValidationError);
  CHECK_THROWS_AS(analytic_basis_min(1, 6, kCnotPhi), ValidationError);
}

TEST_CASE("asymptotic projection is an idempotent trace-preserving map") {
  std::mt19937_64 rng(21);
  const AttractorSpaces s = numeric_attractor_basis(koenig(1, 3), kCnotPhi);
  for (int trial = 0; trial < 5; ++trial) {
    const Mat rho = testing_util::random_state(rng, 16, 2);
    const Mat even = asymptotic_project(rho, s, Parity::Even);
    CHECK(std::abs(even.trace() - cplx(1.0)) < 1e-9);
    CHECK(max_abs(asymptotic_project(even, s, Parity::Even) - even) < 1e-10);
    const Mat odd = asymptotic_project(rho, s, Parity::Odd);
    CHECK(max_abs(asymptotic_project(odd, s, Parity::Odd) - even) < 1e-10);
    CHECK(max_abs(time_averaged_project(rho, s) - 0.5 * (even + odd)) < 1e-14);
  }
  AttractorSpaces broken = s;
  broken.plus.q.col(0) *= 1.1;
  CHECK_THROWS_AS(asymptotic_project(Mat::Identity(16, 16) / 16.0, broken, Parity::Even), NumericalError);
}

TEST_CASE("odd projection of the symmetry-entangled input flips b") {
  InputStateSpec in = equal_amplitude_input(1, 3, EnvKind::SymmetryEntangled);
  in.s_amplitudes = {cplx(0.6, 0.0), cplx(0.0, 0.8)};
  const AttractorSpaces s = numeric_attractor_basis(koenig(1, 3), kCnotPhi);
  const Mat rho = build_input_state(in);
  CHECK(max_abs(asymptotic_project(rho, s, Parity::Even) - rho) < 1e-10);
  InputStateSpec flipped = in;
  flipped.s_amplitudes[1] = -flipped.s_amplitudes[1];
  CHECK(max_abs(asymptotic_project(rho, s, Parity::Odd) - build_input_state(flipped)) < 1e-10);
}

TEST_CASE("closed forms agree with the attractor projection for one S qubit") {
  std::mt19937_64 rng(31);
  for (int n = 2; n <= 4; ++n) {
    const auto amps = testing_util::random_amplitudes(rng, 1);
    const AttractorSpaces maxs = numeric_attractor_basis(koenig(1, n), kCnotPhi);
    const AttractorSpaces mins = numeric_attractor_basis(complete_env(1, n), kCnotPhi);
    for (const auto& c : closed_form_cases(n, amps)) {
      CAPTURE(c.label);
      CAPTURE(n);
      REQUIRE(analytic_case(c.input, c.regime) == c.label);
      const Mat rho = build_input_state(c.input);
      const AttractorSpaces& s = c.regime == Regime::MaxKoenig ? maxs : mins;
      for (Parity p : {Parity::Even, Parity::Odd}) {
        const Mat closed = analytic_output_state(c.input, c.regime, p);
        CHECK(trace_distance(closed, asymptotic_project(rho, s, p)) < 1e-8);
      }
    }
  }
}

TEST_CASE("general-k closed forms agree with the attractor projection") {
  std::mt19937_64 rng(41);
  for (auto [k, n] : std::vector<std::pair<int, int>>{{2, 2}, {2, 3}}) {
    const AttractorSpaces maxs = numeric_attractor_basis(koenig(k, n), kCnotPhi);
    const AttractorSpaces mins = numeric_attractor_basis(complete_env(k, n), kCnotPhi);
    const std::uint64_t top = (std::uint64_t{1} << n) - 1;
    std::vector<InputStateSpec> inputs;
    for (std::uint64_t y : {std::uint64_t{0}, std::uint64_t{1}, top, top - 1}) {
      InputStateSpec in;
      in.k = k;
      in.n = n;
      in.s_amplitudes = testing_util::random_amplitudes(rng, k);
      in.registry = y;
      inputs.push_back(in);
    }
    InputStateSpec mm = inputs[0];
    mm.kind = EnvKind::MaximallyMixed;
    inputs.push_back(mm);
    for (const InputStateSpec& in : inputs) {
      const Mat rho = build_input_state(in);
      for (Regime r : {Regime::MaxKoenig, Regime::MinStrong}) {
        const auto label = analytic_case(in, r);
        REQUIRE(label.has_value());
        CAPTURE(*label);
        CAPTURE(in.registry);
        CAPTURE(k);
        CAPTURE(n);
        for (Parity p : {Parity::Even, Parity::Odd}) {
          const Mat closed = analytic_output_state(in, r, p);
          CHECK(trace_distance(closed, asymptotic_project(rho, r == Regime::MaxKoenig ? maxs : mins, p)) < 1e-8);
        }
      }
    }
  }
}

TEST_CASE("maximally mixed correlator block") {
  const int n = 3;
  InputStateSpec in = equal_amplitude_input(1, n, EnvKind::MaximallyMixed);
  in.s_amplitudes = {cplx(0.6, 0.0), cplx(0.0, 0.8)};
  const Mat out = analytic_output_state(in, Regime::MaxKoenig, Parity::Even);
  const Eigen::Index de = 1 << n;
  const Vec s1 = kron_power(Vec(symmetry_ket_plus(std::sqrt(0.5))), n);
  const Vec s2 = kron_power(Vec(symmetry_ket_minus(std::sqrt(0.5))), n);
  const Mat expected = in.s_amplitudes[0] * std::conj(in.s_amplitudes[1]) * std::pow(2.0, -n) * (projector(s1) + projector(s2));
  CHECK(max_abs(out.block(0, de, de, de) - expected) < 1e-14);
}

TEST_CASE("unsupported closed-form requests") {
  InputStateSpec in = equal_amplitude_input(1, 3, EnvKind::SuperpositionOfRegistries);
  in.superposition = {{cplx(std::sqrt(0.5)), 0}, {cplx(std::sqrt(0.5)), 7}};
  CHECK_FALSE(analytic_case(in, Regime::MaxKoenig).has_value());
  CHECK_THROWS_AS(analytic_output_state(in, Regime::MinStrong, Parity::Even), ValidationError);
  InputStateSpec tilted = equal_amplitude_input(1, 3, EnvKind::SymmetryEntangled);
  tilted.c1 = 0.8;
  CHECK_FALSE(analytic_case(tilted, Regime::MaxKoenig).has_value());
}
