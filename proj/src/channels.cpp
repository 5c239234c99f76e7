#include "darwin/channels.hpp"

#include <cmath>
#include <set>
#include <string>

namespace darwin {

namespace {

void check_gate(int i, int j, int nq, Eigen::Index dim) {
  if (i < 0 || j < 0 || i >= nq || j >= nq) throw ValidationError("gate index out of range");
  if (i == j) throw ValidationError("gate control and target coincide");
  if (dim != (Eigen::Index{1} << nq)) throw ValidationError("gate register does not match operator dimension");
}

// Calls f(y0, y1) for every basis pair with control bit 1 and target bits 0 / 1.
template <class F>
void for_each_pair(int i, int j, int nq, F&& f) {
  const auto ci = static_cast<Eigen::Index>(qubit_mask(i, nq));
  const auto tj = static_cast<Eigen::Index>(qubit_mask(j, nq));
  const Eigen::Index dim = Eigen::Index{1} << nq;
  for (Eigen::Index y = 0; y < dim; ++y)
    if ((y & ci) && !(y & tj)) f(y, y | tj);
}

bool is_cnot(double phi) { return std::abs(phi - kCnotPhi) < 1e-15; }

}  // namespace

void ChannelSpec::validate() const {
  graph.validate();
  if (!(phi >= 0.0 && phi <= kPi)) throw ValidationError("phi must lie in [0, pi]");
  if (N < 0) throw ValidationError("N must be nonnegative");
  if (rehermitize_every < 1) throw ValidationError("rehermitize_every must be >= 1");
}

Mat controlled_u(int i, int j, double phi, int nq) {
  check_gate(i, j, nq, Eigen::Index{1} << nq);
  Mat u = Mat::Identity(Eigen::Index{1} << nq, Eigen::Index{1} << nq);
  apply_gate_left(u, i, j, phi, nq);
  return u;
}

void apply_gate_left(Mat& x, int i, int j, double phi, int nq) {
  check_gate(i, j, nq, x.rows());
  if (is_cnot(phi)) {
    for_each_pair(i, j, nq, [&](Eigen::Index a, Eigen::Index b) { x.row(a).swap(x.row(b)); });
    return;
  }
  const double c = std::cos(phi), s = std::sin(phi);
  for_each_pair(i, j, nq, [&](Eigen::Index a, Eigen::Index b) {
    for (Eigen::Index col = 0; col < x.cols(); ++col) {
      cplx r0 = x(a, col), r1 = x(b, col);
      x(a, col) = c * r0 + s * r1;
      x(b, col) = s * r0 - c * r1;
    }
  });
}

void apply_gate_right(Mat& x, int i, int j, double phi, int nq) {
  check_gate(i, j, nq, x.cols());
  if (is_cnot(phi)) {
    for_each_pair(i, j, nq, [&](Eigen::Index a, Eigen::Index b) { x.col(a).swap(x.col(b)); });
    return;
  }
  const double c = std::cos(phi), s = std::sin(phi);
  for_each_pair(i, j, nq, [&](Eigen::Index a, Eigen::Index b) {
    for (Eigen::Index row = 0; row < x.rows(); ++row) {
      cplx r0 = x(row, a), r1 = x(row, b);
      x(row, a) = c * r0 + s * r1;
      x(row, b) = s * r0 - c * r1;
    }
  });
}

Mat conjugate_by_gate(const Mat& rho, int i, int j, double phi, int nq) {
  Mat out = rho;
  apply_gate_left(out, i, j, phi, nq);
  apply_gate_right(out, i, j, phi, nq);
  return out;
}

ZurekAssignment default_zurek_assignment(int k, int n) {
  if (k < 1 || n < k) throw ValidationError("Zurek partition needs n >= k >= 1");
  ZurekAssignment a(static_cast<std::size_t>(k));
  const int block = n / k;
  for (int s = 0; s < k; ++s) {
    int lo = s * block;
    int hi = (s == k - 1) ? n : lo + block;
    for (int e = lo; e < hi; ++e) a[static_cast<std::size_t>(s)].push_back(k + e);
  }
  return a;
}

void validate_zurek_assignment(const ZurekAssignment& a, const RegisterLayout& layout) {
  if (static_cast<int>(a.size()) != layout.k)
    throw ValidationError("Zurek assignment needs one E-subset per system qubit");
  std::set<int> used;
  for (const auto& subset : a)
    for (int e : subset) {
      if (e < layout.k || e >= layout.qubits())
        throw ValidationError("Zurek assignment refers to a non-environment qubit " + std::to_string(e));
      if (!used.insert(e).second)
        throw ValidationError("Zurek assignment subsets overlap at qubit " + std::to_string(e));
    }
  if (static_cast<int>(used.size()) != layout.n) throw ValidationError("Zurek assignment leaves E qubits uncovered");
}

Mat zurek_evolve(const Mat& rho, const RegisterLayout& layout, const ZurekAssignment& assignment, double phi) {
  validate_zurek_assignment(assignment, layout);
  const int nq = layout.qubits();
  Mat out = rho;
  for (int s = 0; s < layout.k; ++s)
    for (int e : assignment[static_cast<std::size_t>(s)]) {
      apply_gate_left(out, s, e, phi, nq);
      apply_gate_right(out, s, e, phi, nq);
    }
  return out;
}

Mat channel_step(const Mat& rho, const ChannelSpec& spec) {
  const int nq = spec.graph.layout.qubits();
  if (rho.rows() != (Eigen::Index{1} << nq)) throw ValidationError("channel_step: layout mismatch");
  Mat out = Mat::Zero(rho.rows(), rho.cols());
  Mat term;
  for (std::size_t e = 0; e < spec.graph.edges.size(); ++e) {
    term = rho;
    const Edge& ed = spec.graph.edges[e];
    apply_gate_left(term, ed.control, ed.target, spec.phi, nq);
    apply_gate_right(term, ed.control, ed.target, spec.phi, nq);
    out += spec.graph.probabilities[e] * term;
  }
  return out;
}

Mat iterate_channel(const Mat& rho, const ChannelSpec& spec, IterationDiagnostics* diag) {
  spec.validate();
  Mat cur = rho;
  for (long long step = 1; step <= spec.N; ++step) {
    Mat next = channel_step(cur, spec);
    if (step % spec.rehermitize_every == 0) next = hermitize(next);
    if (!next.allFinite()) throw NumericalError("non-finite entry after channel step " + std::to_string(step));
    if (diag != nullptr && diag->record) diag->step_distance.push_back(trace_distance(next, cur));
    cur = std::move(next);
  }
  return cur;
}

}  // namespace darwin
