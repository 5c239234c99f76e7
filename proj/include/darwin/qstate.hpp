#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace darwin {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using RVec = Eigen::VectorXd;

// Bad input or configuration; maps to CLI exit code 2.
struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Broken numerics (NaN, failed decomposition, negative spectrum); exit code 3.
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

constexpr int kDefaultMaxQubits = 14;

// Qubit cap: DARWIN_MAX_QUBITS if set, else kDefaultMaxQubits, unless overridden.
int max_qubits();
void set_max_qubits(int cap);
void clear_max_qubits_override();
void check_qubits(int nq);

// System qubits occupy the most significant positions, E_1..E_n follow.
// Qubit q of an nq-qubit register is bit (nq - 1 - q) of a basis index.
struct RegisterLayout {
  int k = 1;
  int n = 0;

  int qubits() const { return k + n; }
  std::size_t dim() const { return std::size_t{1} << qubits(); }
  void validate() const;
};

inline std::uint64_t qubit_mask(int q, int nq) { return std::uint64_t{1} << (nq - 1 - q); }

struct DensityMatrix {
  RegisterLayout layout;
  Mat rho;

  // Hermiticity, unit trace and PSD within tol; throws ValidationError.
  void validate(double tol = 1e-10) const;
};

int qubits_of(const Mat& m);

Vec basis_ket(std::size_t dim, std::size_t index);
Vec kron(const Vec& a, const Vec& b);
Mat kron(const Mat& a, const Mat& b);
Vec kron_power(const Vec& v, int times);
Mat kron_power(const Mat& m, int times);
Mat outer(const Vec& ket, const Vec& bra);
Mat projector(const Vec& v);

// Kronecker product with the qubit cap enforced.
Mat tensor_product(const Mat& a, const Mat& b);
DensityMatrix tensor_product(const DensityMatrix& a, const DensityMatrix& b);

// Reduced state on `keep` (kept qubits stay in register order). `order` lists
// the discarded qubits in tracing order; it does not change the result and is
// validated only.
Mat partial_trace(const Mat& rho, int nq, const std::vector<int>& keep,
                  const std::vector<int>& order = {});

// Raw eigenvalues of the Hermitian part, ascending.
RVec hermitian_eigenvalues(const Mat& m);

// Eigen decomposition of the Hermitian part: values ascending, vectors as columns.
void hermitian_eigensystem(const Mat& m, RVec& values, Mat& vectors);

// Density-matrix spectrum: descending, entries in [-1e-10, 0) clamped to 0,
// anything more negative throws NumericalError.
RVec spectrum(const Mat& rho);

double shannon_entropy(const RVec& p);
double von_neumann_entropy(const Mat& rho);
double pointer_shannon_entropy(const Mat& rho_s);

// Tr[X Y^dagger].
cplx hs_inner_product(const Mat& x, const Mat& y);

double trace_distance(const Mat& a, const Mat& b);
double max_abs(const Mat& m);
Mat hermitize(const Mat& m);

}  // namespace darwin
