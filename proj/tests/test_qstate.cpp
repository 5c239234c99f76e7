#include <doctest.h>

#include <cmath>

#include "darwin/qstate.hpp"
#include "helpers.hpp"

using namespace darwin;
using testing_util::random_state;

namespace {

Vec ket(std::initializer_list<cplx> xs) {
  Vec v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (cplx x : xs) v(i++) = x;
  return v;
}

}  // namespace

TEST_CASE("tensor product of basis projectors") {
  const Mat p0 = projector(basis_ket(2, 0));
  const Mat p1 = projector(basis_ket(2, 1));
  const Mat out = tensor_product(p0, p1);
  CHECK(max_abs(out - projector(basis_ket(4, 1))) == 0.0);
  const Mat half = Mat::Identity(2, 2) / 2.0;
  CHECK(max_abs(tensor_product(half, half) - Mat::Identity(4, 4) / 4.0) == 0.0);
  std::mt19937_64 rng(7);
  const Mat rho = random_state(rng, 4, 2);
  CHECK(std::abs(tensor_product(rho, half).trace() - cplx(1.0)) < 1e-14);
}

TEST_CASE("tensor product honours the qubit cap") {
  set_max_qubits(3);
  CHECK_THROWS_AS(tensor_product(Mat::Identity(4, 4), Mat::Identity(4, 4)), ValidationError);
  clear_max_qubits_override();
  CHECK_THROWS_AS(check_qubits(kDefaultMaxQubits + 1), ValidationError);
  CHECK_NOTHROW(check_qubits(kDefaultMaxQubits));
}

TEST_CASE("partial trace basics") {
  std::mt19937_64 rng(11);
  const Mat a = random_state(rng, 2, 2);
  const Mat b = random_state(rng, 4, 3);
  CHECK(max_abs(partial_trace(kron(a, b), 3, {0}) - a) < 1e-12);
  CHECK(max_abs(partial_trace(kron(a, b), 3, {1, 2}) - b) < 1e-12);

  const Vec bell = ket({1.0, 0.0, 0.0, 1.0}) / std::sqrt(2.0);
  CHECK(max_abs(partial_trace(projector(bell), 2, {0}) - Mat::Identity(2, 2) / 2.0) < 1e-15);

  const Mat rho = random_state(rng, 16, 3);
  CHECK(max_abs(partial_trace(rho, 4, {0, 1, 2, 3}) - rho) == 0.0);
  const Mat r1 = partial_trace(rho, 4, {0, 2}, {3, 1});
  const Mat r2 = partial_trace(rho, 4, {0, 2}, {1, 3});
  CHECK(max_abs(r1 - r2) < 1e-15);
  CHECK_THROWS_AS(partial_trace(rho, 4, {4}), ValidationError);
}

TEST_CASE("partial trace preserves trace, Hermiticity and positivity") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const Mat rho = random_state(rng, 32, 1 + trial % 4);
    const Mat r = partial_trace(rho, 5, {1, 3});
    CHECK(std::abs(r.trace() - cplx(1.0)) < 1e-13);
    CHECK(max_abs(r - Mat(r.adjoint())) < 1e-15);
    CHECK(testing_util::min_eigenvalue(r) > -1e-10);
  }
}

TEST_CASE("spectrum ordering and clamping") {
  const Vec v = ket({0.6, cplx(0.0, 0.8)});
  const RVec s = spectrum(projector(v));
  CHECK(s(0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(std::abs(s(1)) < 1e-15);
  const RVec m = spectrum(Mat::Identity(8, 8) / 8.0);
  for (Eigen::Index i = 0; i < 8; ++i) CHECK(m(i) == doctest::Approx(0.125).epsilon(1e-14));

  Mat bad = Mat::Identity(2, 2);
  bad(1, 1) = -0.5;
  CHECK_THROWS_AS(spectrum(bad), NumericalError);
  Mat tiny = Mat::Zero(2, 2);
  tiny(0, 0) = 1.0;
  tiny(1, 1) = -1e-12;
  CHECK(spectrum(tiny)(1) == 0.0);
}

TEST_CASE("von Neumann entropy") {
  std::mt19937_64 rng(5);
  CHECK(von_neumann_entropy(projector(testing_util::random_ket(rng, 8))) < 1e-12);
  CHECK(von_neumann_entropy(Mat::Identity(2, 2) / 2.0) == doctest::Approx(1.0).epsilon(1e-15));
  for (int trial = 0; trial < 10; ++trial) {
    const Mat a = random_state(rng, 4, 3);
    const Mat b = random_state(rng, 8, 2);
    CHECK(std::abs(von_neumann_entropy(kron(a, b)) - von_neumann_entropy(a) - von_neumann_entropy(b)) < 1e-9);
    const double h = von_neumann_entropy(a);
    CHECK(h >= 0.0);
    CHECK(h <= 2.0 + 1e-12);
  }
}

TEST_CASE("GHZ-branch state entropies") {
  const int n = 4;
  Vec psi = Vec::Zero(32);
  psi(0) = std::sqrt(0.5);
  psi(31) = std::sqrt(0.5);
  const Mat rho = projector(psi);
  CHECK(von_neumann_entropy(rho) < 1e-12);
  CHECK(von_neumann_entropy(partial_trace(rho, n + 1, {0})) == doctest::Approx(1.0).epsilon(1e-12));
  const RVec s = spectrum(partial_trace(rho, n + 1, {0, 1, 2}));
  CHECK(s(0) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(s(1) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(std::abs(s(2)) < 1e-12);
}

TEST_CASE("pointer Shannon entropy") {
  CHECK(pointer_shannon_entropy(Mat::Identity(2, 2) / 2.0) == doctest::Approx(1.0));
  CHECK(pointer_shannon_entropy(projector(basis_ket(2, 0))) == 0.0);
  for (int k = 1; k <= 4; ++k) {
    const Eigen::Index d = Eigen::Index{1} << k;
    const Mat plus = Mat::Constant(d, d, 1.0 / static_cast<double>(d));
    CHECK(pointer_shannon_entropy(plus) == doctest::Approx(static_cast<double>(k)).epsilon(1e-14));
  }
}

TEST_CASE("Hilbert-Schmidt inner product") {
  const Mat p0 = projector(basis_ket(2, 0));
  const Mat p1 = projector(basis_ket(2, 1));
  CHECK(hs_inner_product(p0, p0) == cplx(1.0));
  CHECK(hs_inner_product(p0, p1) == cplx(0.0));
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 10; ++trial) {
    const Mat x = Mat::Random(8, 8);
    const Mat y = Mat::Random(8, 8);
    CHECK(std::abs(hs_inner_product(x, y) - std::conj(hs_inner_product(y, x))) < 1e-13);
    CHECK(hs_inner_product(x, x).real() > 0.0);
  }
  CHECK_THROWS_AS(hs_inner_product(Mat::Identity(2, 2), Mat::Identity(4, 4)), ValidationError);
}

TEST_CASE("spectrum is invariant under qubit relabeling") {
  std::mt19937_64 rng(13);
  const Mat rho = random_state(rng, 8, 3);
  Mat perm = Mat::Zero(8, 8);
  for (int y = 0; y < 8; ++y) {
    const int b0 = (y >> 2) & 1, b1 = (y >> 1) & 1, b2 = y & 1;
    perm((b2 << 2) | (b0 << 1) | b1, y) = 1.0;
  }
  const RVec a = spectrum(rho);
  const RVec b = spectrum(perm * rho * perm.adjoint());
  CHECK((a - b).cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("density matrix validation") {
  DensityMatrix d{{1, 1}, Mat::Identity(4, 4) / 4.0};
  CHECK_NOTHROW(d.validate());
  d.rho(0, 1) = 0.1;
  CHECK_THROWS_AS(d.validate(), ValidationError);
  CHECK_THROWS_AS((RegisterLayout{0, 2}.validate()), ValidationError);
}
