#pragma once

#include <random>

#include "darwin/qstate.hpp"

namespace testing_util {

using darwin::cplx;
using darwin::Mat;
using darwin::Vec;

inline Vec random_ket(std::mt19937_64& rng, std::size_t dim) {
  std::normal_distribution<double> g;
  Vec v(static_cast<Eigen::Index>(dim));
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = cplx(g(rng), g(rng));
  return v / v.norm();
}

// Random density matrix of the given rank (Wishart style).
inline Mat random_state(std::mt19937_64& rng, std::size_t dim, int rank) {
  Mat rho = Mat::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  std::uniform_real_distribution<double> w(0.1, 1.0);
  double total = 0.0;
  for (int r = 0; r < rank; ++r) {
    const double p = w(rng);
    const Vec v = random_ket(rng, dim);
    rho += p * v * v.adjoint();
    total += p;
  }
  return rho / total;
}

inline std::vector<cplx> random_amplitudes(std::mt19937_64& rng, int k) {
  const Vec v = random_ket(rng, std::size_t{1} << k);
  return {v.data(), v.data() + v.size()};
}

inline double min_eigenvalue(const Mat& m) { return darwin::hermitian_eigenvalues(m).minCoeff(); }

}  // namespace testing_util
