#include "darwin/qstate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <optional>
#include <sstream>

#define lapack_complex_double std::complex<double>
#define lapack_complex_float std::complex<float>
#include <lapacke.h>

namespace darwin {

namespace {

std::optional<int> g_cap_override;

int cap_from_env() {
  const char* env = std::getenv("DARWIN_MAX_QUBITS");
  if (env == nullptr || *env == '\0') return kDefaultMaxQubits;
  char* end = nullptr;
  long v = std::strtol(env, &end, 10);
  if (end == env || *end != '\0' || v < 1 || v > 30)
    throw ValidationError("DARWIN_MAX_QUBITS must be an integer in [1, 30], got '" +
                          std::string(env) + "'");
  return static_cast<int>(v);
}

}  // namespace

int max_qubits() { return g_cap_override ? *g_cap_override : cap_from_env(); }

void set_max_qubits(int cap) {
  if (cap < 1 || cap > 30) throw ValidationError("max-qubits must be in [1, 30]");
  g_cap_override = cap;
}

void clear_max_qubits_override() { g_cap_override.reset(); }

void check_qubits(int nq) {
  int cap = max_qubits();
  if (nq > cap) {
    std::ostringstream os;
    os << "register of " << nq << " qubits exceeds the configured maximum of " << cap;
    throw ValidationError(os.str());
  }
}

void RegisterLayout::validate() const {
  if (k < 1) throw ValidationError("k must be >= 1");
  if (n < 0) throw ValidationError("n must be >= 0");
  check_qubits(k + n);
}

void DensityMatrix::validate(double tol) const {
  layout.validate();
  if (rho.rows() != static_cast<Eigen::Index>(layout.dim()) || rho.cols() != rho.rows())
    throw ValidationError("density matrix dimension does not match its layout");
  if (max_abs(rho - rho.adjoint()) > tol) throw ValidationError("density matrix is not Hermitian");
  if (std::abs(rho.trace() - cplx(1.0)) > tol) throw ValidationError("density matrix trace is not 1");
  if (hermitian_eigenvalues(rho)(0) < -tol) throw ValidationError("density matrix is not PSD");
}

int qubits_of(const Mat& m) {
  auto d = static_cast<std::uint64_t>(m.rows());
  if (m.rows() != m.cols() || d == 0 || (d & (d - 1)) != 0)
    throw ValidationError("operator dimension is not a power of two");
  int nq = 0;
  while ((std::uint64_t{1} << nq) < d) ++nq;
  return nq;
}

Vec basis_ket(std::size_t dim, std::size_t index) {
  if (index >= dim) throw ValidationError("basis index out of range");
  Vec v = Vec::Zero(static_cast<Eigen::Index>(dim));
  v(static_cast<Eigen::Index>(index)) = 1.0;
  return v;
}

Vec kron(const Vec& a, const Vec& b) {
  Vec out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Vec kron_power(const Vec& v, int times) {
  Vec out = Vec::Ones(1);
  for (int i = 0; i < times; ++i) out = kron(out, v);
  return out;
}

Mat kron_power(const Mat& m, int times) {
  Mat out = Mat::Identity(1, 1);
  for (int i = 0; i < times; ++i) out = kron(out, m);
  return out;
}

Mat outer(const Vec& ket, const Vec& bra) { return ket * bra.adjoint(); }

Mat projector(const Vec& v) { return outer(v, v); }

Mat tensor_product(const Mat& a, const Mat& b) {
  check_qubits(qubits_of(a) + qubits_of(b));
  return kron(a, b);
}

DensityMatrix tensor_product(const DensityMatrix& a, const DensityMatrix& b) {
  RegisterLayout layout{a.layout.k, a.layout.n + b.layout.k + b.layout.n};
  check_qubits(layout.qubits());
  return {layout, kron(a.rho, b.rho)};
}

Mat partial_trace(const Mat& rho, int nq, const std::vector<int>& keep,
                  const std::vector<int>& order) {
  if (rho.rows() != (Eigen::Index{1} << nq) || rho.cols() != rho.rows())
    throw ValidationError("partial_trace: operator dimension does not match qubit count");
  std::vector<char> kept(static_cast<std::size_t>(nq), 0);
  for (int q : keep) {
    if (q < 0 || q >= nq) throw ValidationError("partial_trace: keep index out of range");
    if (kept[static_cast<std::size_t>(q)]) throw ValidationError("partial_trace: duplicate keep index");
    kept[static_cast<std::size_t>(q)] = 1;
  }
  std::vector<int> kq, tq;
  for (int q = 0; q < nq; ++q) (kept[static_cast<std::size_t>(q)] ? kq : tq).push_back(q);
  if (!order.empty()) {
    std::vector<int> sorted = order;
    std::sort(sorted.begin(), sorted.end());
    if (sorted != tq) throw ValidationError("partial_trace: order is not a permutation of the traced qubits");
  }
  if (tq.empty()) return rho;

  auto scatter = [nq](const std::vector<int>& qs) {
    std::size_t count = std::size_t{1} << qs.size();
    std::vector<Eigen::Index> idx(count);
    int m = static_cast<int>(qs.size());
    for (std::size_t r = 0; r < count; ++r) {
      std::uint64_t full = 0;
      for (int b = 0; b < m; ++b)
        if ((r >> (m - 1 - b)) & 1U) full |= qubit_mask(qs[static_cast<std::size_t>(b)], nq);
      idx[r] = static_cast<Eigen::Index>(full);
    }
    return idx;
  };
  const auto kidx = scatter(kq);
  const auto tidx = scatter(tq);
  const auto dk = static_cast<Eigen::Index>(kidx.size());
  Mat out = Mat::Zero(dk, dk);
  for (Eigen::Index c = 0; c < dk; ++c) {
    for (Eigen::Index r = 0; r < dk; ++r) {
      cplx acc = 0.0;
      for (Eigen::Index t : tidx) acc += rho(kidx[static_cast<std::size_t>(r)] | t, kidx[static_cast<std::size_t>(c)] | t);
      out(r, c) = acc;
    }
  }
  return out;
}

RVec hermitian_eigenvalues(const Mat& m) {
  Mat a = hermitize(m);
  const auto n = static_cast<lapack_int>(a.rows());
  RVec w(n);
  if (n == 0) return w;
  lapack_int info = LAPACKE_zheevd(LAPACK_COL_MAJOR, 'N', 'L', n, a.data(), n, w.data());
  if (info != 0) throw NumericalError("zheevd failed with info=" + std::to_string(info));
  return w;
}

void hermitian_eigensystem(const Mat& m, RVec& values, Mat& vectors) {
  vectors = hermitize(m);
  const auto n = static_cast<lapack_int>(vectors.rows());
  values.resize(n);
  if (n == 0) return;
  lapack_int info = LAPACKE_zheevd(LAPACK_COL_MAJOR, 'V', 'L', n, vectors.data(), n, values.data());
  if (info != 0) throw NumericalError("zheevd failed with info=" + std::to_string(info));
}

RVec spectrum(const Mat& rho) {
  RVec w = hermitian_eigenvalues(rho);
  for (Eigen::Index i = 0; i < w.size(); ++i) {
    if (!std::isfinite(w(i))) throw NumericalError("spectrum: non-finite eigenvalue");
    if (w(i) < -1e-10) {
      std::ostringstream os;
      os << "spectrum: eigenvalue " << w(i) << " below -1e-10";
      throw NumericalError(os.str());
    }
    if (w(i) < 0.0) w(i) = 0.0;
  }
  std::reverse(w.data(), w.data() + w.size());
  return w;
}

double shannon_entropy(const RVec& p) {
  double h = 0.0;
  for (Eigen::Index i = 0; i < p.size(); ++i)
    if (p(i) > 0.0) h -= p(i) * std::log2(p(i));
  return h;
}

double von_neumann_entropy(const Mat& rho) { return shannon_entropy(spectrum(rho)); }

double pointer_shannon_entropy(const Mat& rho_s) {
  RVec p = rho_s.diagonal().real();
  for (Eigen::Index i = 0; i < p.size(); ++i) p(i) = std::max(p(i), 0.0);
  return shannon_entropy(p);
}

cplx hs_inner_product(const Mat& x, const Mat& y) {
  if (x.rows() != y.rows() || x.cols() != y.cols())
    throw ValidationError("hs_inner_product: dimension mismatch");
  return (x.array() * y.array().conjugate()).sum();
}

double trace_distance(const Mat& a, const Mat& b) {
  return 0.5 * hermitian_eigenvalues(a - b).cwiseAbs().sum();
}

double max_abs(const Mat& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

Mat hermitize(const Mat& m) { return 0.5 * (m + m.adjoint()); }

}  // namespace darwin
