#include "darwin/attractor.hpp"

#include <bit>
#include <cmath>
#include <sstream>
#include <string>
#include <utility>

#include <Eigen/Eigenvalues>

namespace darwin {

namespace {

using RMat = Eigen::MatrixXd;
using RVecd = Eigen::VectorXd;

RMat rkron(const RMat& a, const RMat& b) {
  RMat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

RVecd runit(Eigen::Index dim, Eigen::Index i) {
  RVecd v = RVecd::Zero(dim);
  v(i) = 1.0;
  return v;
}

RMat rentry(Eigen::Index dim, Eigen::Index r, Eigen::Index c) {
  RMat m = RMat::Zero(dim, dim);
  m(r, c) = 1.0;
  return m;
}

RVecd rpower(const RVecd& v, int times) {
  RVecd out = RVecd::Ones(1);
  for (int i = 0; i < times; ++i) {
    RVecd next(out.size() * v.size());
    for (Eigen::Index a = 0; a < out.size(); ++a) next.segment(a * v.size(), v.size()) = out(a) * v;
    out = std::move(next);
  }
  return out;
}

RMat real_gate(const Edge& e, double phi, int nq) { return controlled_u(e.control, e.target, phi, nq).real(); }

Eigen::Map<const RMat> as_operator(const RMat& q, Eigen::Index col, Eigen::Index d) {
  return Eigen::Map<const RMat>(q.col(col).data(), d, d);
}

void check_involution(const RMat& u, const Edge& e) {
  const double dev = (u * u - RMat::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff();
  if (dev > 1e-12) {
    std::ostringstream os;
    os << "gate on edge (" << e.control << "," << e.target
       << ") is not an involution; eigenvalues other than +1 and -1 would appear";
    throw NumericalError(os.str());
  }
}

// Keeps the part of span(q) on which X -> U X U acts as lambda.
void refine(RMat& q, const RMat& u, int lambda, const NumericAttractorOptions& opt, const Edge& e,
            std::vector<std::string>& notes) {
  const Eigen::Index m = q.cols();
  if (m == 0) return;
  const Eigen::Index d = u.rows();
  RMat y(q.rows(), m), tmp(d, d);
  for (Eigen::Index j = 0; j < m; ++j) {
    tmp.noalias() = u * as_operator(q, j, d);
    Eigen::Map<RMat>(y.col(j).data(), d, d).noalias() = tmp * u;
  }
  RMat s = q.transpose() * y;
  // Q^T (I - Pi) Q with Pi the projector onto the lambda eigenspace of X -> U X U.
  RMat comp = 0.5 * (RMat::Identity(m, m) - 0.5 * lambda * (s + s.transpose()));
  Eigen::SelfAdjointEigenSolver<RMat> es(comp);
  if (es.info() != Eigen::Success) throw NumericalError("eigen solver failed during attractor refinement");
  std::vector<Eigen::Index> keep;
  int in_band = 0;
  for (Eigen::Index i = 0; i < m; ++i) {
    const double ev = std::abs(es.eigenvalues()(i));
    if (ev >= opt.band_low && ev <= opt.band_high) ++in_band;
    if (es.eigenvalues()(i) <= opt.rank_threshold) keep.push_back(i);
  }
  if (in_band > 0) {
    std::ostringstream os;
    os << "conditioning warning: lambda=" << lambda << ", edge (" << e.control << "," << e.target << "): " << in_band
       << " value(s) in [" << opt.band_low << ", " << opt.band_high << "]";
    notes.push_back(os.str());
  }
  RMat v(m, static_cast<Eigen::Index>(keep.size()));
  for (std::size_t c = 0; c < keep.size(); ++c) v.col(static_cast<Eigen::Index>(c)) = es.eigenvectors().col(keep[c]);
  q = q * v;
}

// Classical Gram-Schmidt with one re-orthogonalization pass.
RMat orthonormalize(const std::vector<RMat>& gens, Eigen::Index d, const std::string& what,
                    bool skip_dependent = false) {
  const Eigen::Index d2 = d * d;
  RMat q(d2, static_cast<Eigen::Index>(gens.size()));
  Eigen::Index m = 0;
  for (const RMat& g : gens) {
    RVecd v = Eigen::Map<const RVecd>(g.data(), d2);
    const double n0 = v.norm();
    for (int pass = 0; pass < 2 && m > 0; ++pass) v -= q.leftCols(m) * (q.leftCols(m).transpose() * v);
    const double nv = v.norm();
    if (!(nv > 1e-10 * n0)) {
      if (skip_dependent) continue;
      throw NumericalError(what + ": generator list is linearly dependent");
    }
    q.col(m++) = v / nv;
  }
  return q.leftCols(m);
}

AttractorBasis make_basis(int lambda, RegisterLayout layout, RMat q, BasisProvenance p) {
  AttractorBasis b;
  b.lambda = lambda;
  b.layout = layout;
  b.q = std::move(q);
  b.provenance = p;
  return b;
}

void check_count(const AttractorBasis& b, long long expected, const std::string& what) {
  if (b.size() != expected) {
    std::ostringstream os;
    os << what << ": lambda=" << b.lambda << " generator count " << b.size() << " differs from the dimension formula "
       << expected;
    throw NumericalError(os.str());
  }
}

void check_analytic_args(int k, int n, double phi) {
  if (k < 1 || n < k) throw ValidationError("analytic attractor bases need n >= k >= 1");
  if (k + n > kAnalyticBasisMaxQubits)
    throw ValidationError("analytic attractor bases are dense; k+n must be <= " +
                          std::to_string(kAnalyticBasisMaxQubits));
  if (!(phi > 0.0 && phi < kPi)) throw ValidationError("phi must lie in (0, pi) for the analytic bases");
}

RVecd project_real(const RMat& q, const RVecd& v) {
  if (q.cols() == 0) return RVecd::Zero(v.size());
  return q * (q.transpose() * v);
}

}  // namespace

SymmetryStates SymmetryStates::from_phi(double phi) { return {std::cos(phi / 2.0), std::sin(phi / 2.0)}; }

Vec SymmetryStates::plus() const {
  Vec v(2);
  v << c1, c2;
  return v;
}

Vec SymmetryStates::minus() const {
  Vec v(2);
  v << c2, -c1;
  return v;
}

void SymmetryStates::validate(double phi) const {
  if (!(c1 > 0.0 && c2 > 0.0) || std::abs(c1 * c1 + c2 * c2 - 1.0) > 1e-12)
    throw ValidationError("symmetry states need c1, c2 > 0 with c1^2 + c2^2 = 1");
  Mat u(2, 2);
  u << std::cos(phi), std::sin(phi), std::sin(phi), -std::cos(phi);
  if ((u * plus() - plus()).norm() > 1e-12) throw ValidationError("|s_c1> is not a +1 eigenvector of u(phi)");
  if ((u * minus() + minus()).norm() > 1e-12) throw ValidationError("|s_c2> is not a -1 eigenvector of u(phi)");
  if (std::abs(plus().dot(minus())) > 1e-12) throw ValidationError("symmetry states are not orthogonal");
}

std::string to_string(BasisProvenance p) {
  switch (p) {
    case BasisProvenance::Numeric: return "numeric";
    case BasisProvenance::AnalyticMax: return "analytic_max";
    case BasisProvenance::AnalyticMin: return "analytic_min";
  }
  return "numeric";
}

std::string to_string(Regime r) { return r == Regime::MaxKoenig ? "max_koenig" : "min_strong"; }

std::string to_string(Parity p) { return p == Parity::Even ? "even" : "odd"; }

Mat AttractorBasis::state(Eigen::Index i) const {
  const auto d = static_cast<Eigen::Index>(layout.dim());
  return as_operator(q, i, d).cast<cplx>();
}

AttractorSpaces numeric_attractor_basis(const InteractionDigraph& g, double phi, const NumericAttractorOptions& opt) {
  g.validate();
  if (!(phi >= 0.0 && phi <= kPi)) throw ValidationError("phi must lie in [0, pi]");
  const int nq = g.layout.qubits();
  if (nq > opt.max_qubits)
    throw ValidationError("numeric attractor basis is limited to k+n <= " + std::to_string(opt.max_qubits) +
                          " (vectorized dimension 4^(k+n))");
  const auto d = static_cast<Eigen::Index>(g.layout.dim());

  std::vector<RMat> gates;
  for (const Edge& e : g.edges) {
    gates.push_back(real_gate(e, phi, nq));
    check_involution(gates.back(), e);
  }

  Eigen::SelfAdjointEigenSolver<RMat> es(gates.front());
  if (es.info() != Eigen::Success) throw NumericalError("eigen solver failed on the first gate");
  std::vector<Eigen::Index> pos, neg;
  for (Eigen::Index i = 0; i < d; ++i) (es.eigenvalues()(i) > 0.0 ? pos : neg).push_back(i);
  const RMat& v = es.eigenvectors();

  // Eigenoperators of the first edge: v_a v_b^T with sign(a) * sign(b) = lambda.
  auto seed = [&](const std::vector<Eigen::Index>& left, const std::vector<Eigen::Index>& right, RMat& q,
                  Eigen::Index& col) {
    for (Eigen::Index a : left)
      for (Eigen::Index b : right) {
        Eigen::Map<RMat>(q.col(col).data(), d, d).noalias() = v.col(a) * v.col(b).transpose();
        ++col;
      }
  };
  const auto np = static_cast<Eigen::Index>(pos.size());
  const auto nn = static_cast<Eigen::Index>(neg.size());
  RMat qp(d * d, np * np + nn * nn), qm(d * d, 2 * np * nn);
  Eigen::Index cp = 0, cm = 0;
  seed(pos, pos, qp, cp);
  seed(neg, neg, qp, cp);
  seed(pos, neg, qm, cm);
  seed(neg, pos, qm, cm);

  AttractorSpaces out;
  for (std::size_t e = 1; e < gates.size(); ++e) {
    refine(qp, gates[e], +1, opt, g.edges[e], out.notes);
    refine(qm, gates[e], -1, opt, g.edges[e], out.notes);
  }
  out.plus = make_basis(+1, g.layout, std::move(qp), BasisProvenance::Numeric);
  out.minus = make_basis(-1, g.layout, std::move(qm), BasisProvenance::Numeric);
  return out;
}

std::pair<long long, long long> dimension_formula(int k, int n, Regime regime) {
  if (k < 1 || n < 1) throw ValidationError("dimension formula needs k, n >= 1");
  if (k + n > 30) throw ValidationError("dimension formula limited to k+n <= 30");
  if (k > n) std::swap(k, n);
  const long long pk = 1LL << k, pn = 1LL << n;
  if (regime == Regime::MaxKoenig) {
    const long long plus = pn * pn + 3 * pn * (pk - 1) + (pk - 1) * (pk - 2);
    const long long minus = 3 * pn + 3 * pk - 6;
    return {plus, minus};
  }
  return {pk * pk + 3 * pk + 1, (k == 1 && n == 1) ? 1 : 0};
}

AttractorSpaces analytic_basis_max(int k, int n, double phi) {
  check_analytic_args(k, n, phi);
  const SymmetryStates sym = SymmetryStates::from_phi(phi);
  const Eigen::Index ds = Eigen::Index{1} << k, de = Eigen::Index{1} << n;
  const Eigen::Index kk = ds - 1;
  RVecd s1(2), s2(2);
  s1 << sym.c1, sym.c2;
  s2 << sym.c2, -sym.c1;
  const RVecd s1n = rpower(s1, n), s2n = rpower(s2, n);
  const RMat a0 = s1 * s1.transpose();
  const RMat a1 = RMat::Identity(2, 2) - a0;
  RMat b0(2, 2), b1(2, 2);
  b0 << 0.0, 1.0, -1.0, 0.0;
  b1 << -std::sin(phi), std::cos(phi), std::cos(phi), std::sin(phi);
  b0 /= std::sqrt(2.0);
  b1 /= std::sqrt(2.0);

  auto string_of = [&](Eigen::Index gamma, const RMat& g0, const RMat& g1) {
    RMat out = RMat::Identity(1, 1);
    for (int i = 0; i < n; ++i) out = rkron(out, ((gamma >> (n - 1 - i)) & 1) ? g1 : g0);
    return out;
  };

  std::vector<RMat> plus;
  for (Eigen::Index x = 1; x <= kk; ++x)
    for (Eigen::Index y = 0; y < de; ++y) plus.push_back(rkron(rentry(ds, 0, x), runit(de, y) * s1n.transpose()));
  for (Eigen::Index x = 1; x <= kk; ++x)
    for (Eigen::Index y = 0; y < de; ++y) plus.push_back(rkron(rentry(ds, x, 0), s1n * runit(de, y).transpose()));
  for (Eigen::Index y = 0; y < de; ++y)
    for (Eigen::Index z = 0; z < de; ++z) plus.push_back(rkron(rentry(ds, 0, 0), rentry(de, y, z)));
  for (Eigen::Index x = 1; x <= kk; ++x)
    for (Eigen::Index gamma = 0; gamma < de; ++gamma) plus.push_back(rkron(rentry(ds, x, x), string_of(gamma, a0, a1)));
  for (Eigen::Index x = 1; x <= kk; ++x)
    for (Eigen::Index w = 1; w <= kk; ++w)
      if (x != w) plus.push_back(rkron(rentry(ds, x, w), s1n * s1n.transpose()));

  std::vector<RMat> minus;
  for (Eigen::Index y = 0; y < de; ++y) minus.push_back(rkron(rentry(ds, 0, kk), runit(de, y) * s2n.transpose()));
  for (Eigen::Index y = 0; y < de; ++y) minus.push_back(rkron(rentry(ds, kk, 0), s2n * runit(de, y).transpose()));
  for (Eigen::Index gamma = 0; gamma < de; ++gamma) minus.push_back(rkron(rentry(ds, kk, kk), string_of(gamma, b0, b1)));
  // The diagonal |x><x| (x) |s2^n><s2^n| is a +1 state; the -1 state pairs x with its complement.
  for (Eigen::Index x = 1; x < kk; ++x) minus.push_back(rkron(rentry(ds, x, kk ^ x), s2n * s2n.transpose()));
  for (Eigen::Index x = 1; x < kk; ++x) {
    minus.push_back(rkron(rentry(ds, x, kk), s1n * s2n.transpose()));
    minus.push_back(rkron(rentry(ds, kk, x), s2n * s1n.transpose()));
  }

  const RegisterLayout layout{k, n};
  const Eigen::Index d = ds * de;
  AttractorSpaces out;
  out.plus = make_basis(+1, layout, orthonormalize(plus, d, "analytic_basis_max"), BasisProvenance::AnalyticMax);
  out.minus = make_basis(-1, layout, orthonormalize(minus, d, "analytic_basis_max"), BasisProvenance::AnalyticMax);
  const auto [dp, dm] = dimension_formula(k, n, Regime::MaxKoenig);
  check_count(out.plus, dp, "analytic_basis_max");
  check_count(out.minus, dm, "analytic_basis_max");
  return out;
}

AttractorSpaces analytic_basis_min(int k, int n, double phi) {
  check_analytic_args(k, n, phi);
  const SymmetryStates sym = SymmetryStates::from_phi(phi);
  const Eigen::Index ds = Eigen::Index{1} << k, de = Eigen::Index{1} << n;
  RVecd s1(2);
  s1 << sym.c1, sym.c2;
  const RVecd s1n = rpower(s1, n);
  const RVecd z0 = runit(de, 0);

  std::vector<RMat> plus;
  for (Eigen::Index x = 0; x < ds; ++x) plus.push_back(rkron(rentry(ds, x, x), RMat::Identity(de, de)));
  for (Eigen::Index x = 0; x < ds; ++x) plus.push_back(rkron(rentry(ds, 0, x), z0 * s1n.transpose()));
  for (Eigen::Index x = 0; x < ds; ++x) plus.push_back(rkron(rentry(ds, x, 0), s1n * z0.transpose()));
  for (Eigen::Index x = 0; x < ds; ++x)
    for (Eigen::Index y = 0; y < ds; ++y) plus.push_back(rkron(rentry(ds, x, y), s1n * s1n.transpose()));
  plus.push_back(rkron(rentry(ds, 0, 0), z0 * z0.transpose()));

  std::vector<RMat> minus;
  if (k == 1 && n == 1) {
    // The single -1 state of the two-qubit register.
    RMat x = RMat::Zero(4, 4);
    x(1, 3) = 1.0;
    x(2, 3) = -1.0;
    x(3, 1) = -1.0;
    x(3, 2) = 1.0;
    x(1, 2) = -1.0;
    x(2, 1) = 1.0;
    minus.push_back(x / std::sqrt(6.0));
  }

  const RegisterLayout layout{k, n};
  const Eigen::Index d = ds * de;
  AttractorSpaces out;
  // At n = 1 five generators share the |0><0| (x) (2x2) block, so the list has rank 10.
  const bool single = n == 1;
  out.plus = make_basis(+1, layout, orthonormalize(plus, d, "analytic_basis_min", single), BasisProvenance::AnalyticMin);
  out.minus = make_basis(-1, layout, minus.empty() ? RMat(d * d, 0) : orthonormalize(minus, d, "analytic_basis_min"),
                         BasisProvenance::AnalyticMin);
  const auto [dp, dm] = dimension_formula(k, n, Regime::MinStrong);
  if (single) {
    out.notes.push_back("n = 1: the generator list has rank " + std::to_string(out.plus.size()) +
                        ", the dimension formula gives " + std::to_string(dp));
  } else {
    check_count(out.plus, dp, "analytic_basis_min");
  }
  check_count(out.minus, dm, "analytic_basis_min");
  return out;
}

double eigen_residual(const AttractorBasis& b, const InteractionDigraph& g, double phi) {
  const int nq = g.layout.qubits();
  if (nq != b.layout.qubits()) throw ValidationError("eigen_residual: register mismatch");
  const auto d = static_cast<Eigen::Index>(g.layout.dim());
  double worst = 0.0;
  RMat tmp(d, d);
  for (const Edge& e : g.edges) {
    const RMat u = real_gate(e, phi, nq);
    for (Eigen::Index i = 0; i < b.size(); ++i) {
      const auto x = as_operator(b.q, i, d);
      tmp.noalias() = u * x * u;
      worst = std::max(worst, (tmp - b.lambda * x).norm());
    }
  }
  return worst;
}

double gram_deviation(const AttractorBasis& b) {
  if (b.size() == 0) return 0.0;
  return (b.q.transpose() * b.q - RMat::Identity(b.size(), b.size())).cwiseAbs().maxCoeff();
}

double span_residual(const AttractorBasis& a, const AttractorBasis& b) {
  if (a.q.rows() != b.q.rows()) throw ValidationError("span_residual: register mismatch");
  if (a.size() == 0) return 0.0;
  RMat r = b.size() == 0 ? a.q : RMat(a.q - b.q * (b.q.transpose() * a.q));
  return r.colwise().norm().maxCoeff();
}

Mat asymptotic_project(const Mat& rho, const AttractorSpaces& spaces, Parity parity) {
  const auto d = static_cast<Eigen::Index>(spaces.plus.layout.dim());
  if (rho.rows() != d || rho.cols() != d) throw ValidationError("asymptotic_project: state does not match the basis register");
  for (const AttractorBasis* b : {&spaces.plus, &spaces.minus}) {
    const double dev = gram_deviation(*b);
    if (dev > 1e-8) {
      std::ostringstream os;
      os << "asymptotic_project: lambda=" << b->lambda << " basis is not orthonormal (Gram deviation " << dev << ")";
      throw NumericalError(os.str());
    }
  }
  const double sign = parity == Parity::Even ? 1.0 : -1.0;
  Eigen::Map<const Vec> v(rho.data(), d * d);
  const RVecd re = v.real(), im = v.imag();
  const RVecd ore = project_real(spaces.plus.q, re) + sign * project_real(spaces.minus.q, re);
  const RVecd oim = project_real(spaces.plus.q, im) + sign * project_real(spaces.minus.q, im);
  Mat out(d, d);
  Eigen::Map<Vec> ov(out.data(), d * d);
  ov.real() = ore;
  ov.imag() = oim;
  out = hermitize(out);
  if (std::abs(out.trace() - rho.trace()) > 1e-9) throw NumericalError("asymptotic_project: trace not preserved");
  return out;
}

Mat time_averaged_project(const Mat& rho, const AttractorSpaces& spaces) {
  return 0.5 * (asymptotic_project(rho, spaces, Parity::Even) + asymptotic_project(rho, spaces, Parity::Odd));
}

namespace {

struct Ctx {
  int k = 1;
  int n = 1;
  Eigen::Index ds = 2;
  Eigen::Index de = 2;
  std::vector<cplx> a;
  Vec s1, s2;
  Mat ie;

  Vec es(Eigen::Index x) const { return basis_ket(static_cast<std::size_t>(ds), static_cast<std::size_t>(x)); }
  Vec ee(Eigen::Index y) const { return basis_ket(static_cast<std::size_t>(de), static_cast<std::size_t>(y)); }
  Mat sblock(Eigen::Index x, Eigen::Index y) const { return outer(es(x), es(y)); }
};

Ctx make_ctx(const InputStateSpec& in) {
  Ctx c;
  c.k = in.k;
  c.n = in.n;
  c.ds = Eigen::Index{1} << in.k;
  c.de = Eigen::Index{1} << in.n;
  c.a = in.s_amplitudes;
  const double h = 1.0 / std::sqrt(2.0);
  Vec p(2), m(2);
  p << h, h;
  m << h, -h;
  c.s1 = kron_power(p, in.n);
  c.s2 = kron_power(m, in.n);
  c.ie = Mat::Identity(c.de, c.de);
  return c;
}

Mat b1_string(int n) {
  Mat b(2, 2);
  b << -1.0, 0.0, 0.0, 1.0;
  return kron_power(Mat(b / std::sqrt(2.0)), n);
}

// Registry |z>, Koenig digraph, any k <= n.
Mat max_registry(const Ctx& c, std::uint64_t z, double sigma) {
  const Eigen::Index kk = c.ds - 1;
  const int mz = std::popcount(z);
  const double pz = (mz % 2 == 0) ? 1.0 : -1.0;
  const double g = std::pow(2.0, -0.5 * c.n), g2 = std::pow(2.0, -c.n);
  const Vec zz = c.ee(static_cast<Eigen::Index>(z));
  Vec psi = c.a[0] * kron(c.es(0), zz);
  for (Eigen::Index m = 1; m <= kk; ++m) psi += c.a[static_cast<std::size_t>(m)] * g * kron(c.es(m), c.s1);
  Mat r = projector(psi);
  const Mat rest = c.ie - projector(c.s1);
  for (Eigen::Index m = 1; m <= kk; ++m) r += g2 * std::norm(c.a[static_cast<std::size_t>(m)]) * kron(c.sblock(m, m), rest);

  const cplx ak = c.a[static_cast<std::size_t>(kk)];
  Mat t = g * pz * kron(c.sblock(0, kk), outer(zz, c.s2)) * (c.a[0] * std::conj(ak));
  for (Eigen::Index m = 1; m < kk; ++m) {
    t += g2 * c.a[static_cast<std::size_t>(m)] * std::conj(c.a[static_cast<std::size_t>(kk - m)]) *
         kron(c.sblock(m, kk - m), projector(c.s2)) * 0.5;
    t += g2 * pz * c.a[static_cast<std::size_t>(m)] * std::conj(ak) * kron(c.sblock(m, kk), outer(c.s1, c.s2));
  }
  const double pn = ((c.n + mz) % 2 == 0) ? 1.0 : -1.0;
  t = t + Mat(t.adjoint());
  t += pn * g * std::norm(ak) * kron(c.sblock(kk, kk), b1_string(c.n));
  return r + sigma * t;
}

// Mixture (|0_n><0_n| + |zb><zb|) / 2, Koenig, k = 1.
Mat max_mixture(const Ctx& c, Eigen::Index zb, double s2_sign, double b_coef, double sigma) {
  const cplx a0 = c.a[0], a1 = c.a[1];
  const Vec z0 = c.ee(0), z1 = c.ee(zb);
  const Mat re = 0.5 * (projector(z0) + projector(z1));
  const double q = std::pow(2.0, -0.5 * c.n - 1.0);
  Mat r = std::norm(a0) * kron(c.sblock(0, 0), re) + std::norm(a1) * kron(c.sblock(1, 1), c.ie / static_cast<double>(c.de));
  Mat x = q * a0 * std::conj(a1) * kron(c.sblock(0, 1), outer(z0, c.s1) + outer(z1, c.s1));
  Mat t = q * a0 * std::conj(a1) * kron(c.sblock(0, 1), outer(z0, c.s2) + s2_sign * outer(z1, c.s2));
  x = x + Mat(x.adjoint());
  t = t + Mat(t.adjoint());
  t += 0.5 * std::norm(a1) * std::pow(2.0, -0.5 * c.n) * b_coef * kron(c.sblock(1, 1), b1_string(c.n));
  return r + x + sigma * t;
}

// Maximally mixed environment, Koenig, any k <= n.
Mat max_maximally_mixed(const Ctx& c, double sigma) {
  const Eigen::Index kk = c.ds - 1;
  const double g2 = std::pow(2.0, -c.n);
  Mat out = Mat::Zero(c.ds * c.de, c.ds * c.de);
  const Mat p1 = projector(c.s1), p2 = projector(c.s2);
  for (Eigen::Index x = 0; x < c.ds; ++x)
    for (Eigen::Index y = 0; y < c.ds; ++y) {
      const cplx w = c.a[static_cast<std::size_t>(x)] * std::conj(c.a[static_cast<std::size_t>(y)]);
      if (x == y) {
        out += w * g2 * kron(c.sblock(x, x), c.ie);
      } else {
        Mat e = p1;
        if (y == (kk ^ x)) e += sigma * p2;
        out += w * g2 * kron(c.sblock(x, y), e);
      }
    }
  return out;
}

Mat symmetry_pure(const Ctx& c, double sigma) {
  Vec psi = c.a[0] * kron(c.es(0), c.s1) + sigma * c.a[1] * kron(c.es(1), c.s2);
  return projector(psi);
}

// Registry |0_n>, strongly connected environment, any k <= n.
Mat min_registry_ground(const Ctx& c) {
  const Eigen::Index kk = c.ds - 1;
  const double g = std::pow(2.0, -0.5 * c.n), g2 = std::pow(2.0, -c.n);
  Vec psi = c.a[0] * kron(c.es(0), c.ee(0));
  for (Eigen::Index m = 1; m <= kk; ++m) psi += c.a[static_cast<std::size_t>(m)] * g * kron(c.es(m), c.s1);
  Mat r = projector(psi);
  const Mat rest = c.ie - projector(c.s1);
  for (Eigen::Index m = 1; m <= kk; ++m) r += g2 * std::norm(c.a[static_cast<std::size_t>(m)]) * kron(c.sblock(m, m), rest);
  return r;
}

// Registry |z>, z != 0, strongly connected environment, any k <= n.
Mat min_registry_excited(const Ctx& c) {
  const double g = std::pow(2.0, -0.5 * c.n), g2 = std::pow(2.0, -c.n);
  const double q = 1.0 - g2;
  const Vec z0 = c.ee(0);
  const cplx a0 = c.a[0];
  Mat out = std::norm(a0) * g2 / q * kron(c.sblock(0, 0), Mat(g2 * c.ie - projector(z0)));
  Mat off = Mat::Zero(out.rows(), out.cols());
  const Mat p1 = projector(c.s1);
  for (Eigen::Index y = 0; y < c.ds; ++y) {
    const cplx ay = c.a[static_cast<std::size_t>(y)];
    out += g2 * std::norm(ay) * kron(c.sblock(y, y), c.ie);
    if (y == 0) continue;
    off += a0 * std::conj(ay) * kron(c.sblock(0, y), Mat(g2 / q * p1 - g2 * g / q * outer(z0, c.s1)));
    for (Eigen::Index x = 1; x < y; ++x)
      off += c.a[static_cast<std::size_t>(x)] * std::conj(ay) * g2 * kron(c.sblock(x, y), p1);
  }
  return out + off + Mat(off.adjoint());
}

// Mixture (|0_n><0_n| + |y><y|) / 2 with y != 0, strongly connected environment, k = 1.
Mat min_mixture(const Ctx& c) {
  const double g = std::pow(2.0, -0.5 * c.n), g2 = std::pow(2.0, -c.n);
  const double q = 1.0 - g2, q2 = 1.0 - 2.0 * g2;
  const cplx a0 = c.a[0], a1 = c.a[1];
  const Vec z0 = c.ee(0);
  const double w0 = (0.5 - 2.0 * g2 + 2.0 * g2 * g2) / q2;
  Mat out = std::norm(a0) / q * kron(c.sblock(0, 0), Mat(0.5 * g2 * c.ie + w0 * projector(z0)));
  out += std::norm(a1) * g2 * kron(c.sblock(1, 1), c.ie);
  Mat off = a0 * std::conj(a1) / (2.0 * q) * kron(c.sblock(0, 1), Mat(g * q2 * outer(z0, c.s1) + g2 * projector(c.s1)));
  return out + off + Mat(off.adjoint());
}

// Maximally mixed environment, strongly connected, any k <= n.
Mat min_maximally_mixed(const Ctx& c) {
  const double g2 = std::pow(2.0, -c.n);
  Mat out = Mat::Zero(c.ds * c.de, c.ds * c.de);
  const Mat p1 = projector(c.s1);
  for (Eigen::Index x = 0; x < c.ds; ++x)
    for (Eigen::Index y = 0; y < c.ds; ++y) {
      const cplx w = c.a[static_cast<std::size_t>(x)] * std::conj(c.a[static_cast<std::size_t>(y)]);
      out += w * g2 * kron(c.sblock(x, y), x == y ? c.ie : p1);
    }
  return out;
}

Mat min_symmetry(const Ctx& c) {
  const Mat p1 = projector(c.s1);
  return std::norm(c.a[0]) * kron(c.sblock(0, 0), p1) +
         std::norm(c.a[1]) / static_cast<double>(c.de - 1) * kron(c.sblock(1, 1), Mat(c.ie - p1));
}

bool is_half(double w) { return std::abs(w - 0.5) <= 1e-12; }

// Second registry of an equal-weight two-element mixture containing |0_n>, or nullopt.
std::optional<std::uint64_t> ground_pair_partner(const InputStateSpec& in) {
  if (in.kind != EnvKind::MixtureOfRegistries || in.mixture.size() != 2) return std::nullopt;
  const auto& [w0, y0] = in.mixture[0];
  const auto& [w1, y1] = in.mixture[1];
  if (!is_half(w0) || !is_half(w1)) return std::nullopt;
  if (y0 == 0 && y1 != 0) return y1;
  if (y1 == 0 && y0 != 0) return y0;
  return std::nullopt;
}

}  // namespace

std::optional<std::string> analytic_case(const InputStateSpec& input, Regime regime) {
  input.validate();
  const int k = input.k, n = input.n;
  if (n < k) return std::nullopt;
  const bool sym = input.kind == EnvKind::SymmetryEntangled && std::abs(input.c1 - std::sqrt(0.5)) <= 1e-12;
  if (regime == Regime::MaxKoenig) {
    switch (input.kind) {
      case EnvKind::Registry: return "max_registry";
      case EnvKind::MaximallyMixed: return "max_maximally_mixed";
      case EnvKind::SymmetryEntangled:
        if (sym) return "max_symmetry_entangled";
        return std::nullopt;
      case EnvKind::MixtureOfRegistries: {
        const auto y = ground_pair_partner(input);
        if (!y || k != 1) return std::nullopt;
        if (*y == (std::uint64_t{1} << n) - 1) return "max_mixture_ground_all_ones";
        if (*y == leading_ones(1, n)) return "max_mixture_ground_leading_one";
        return std::nullopt;
      }
      case EnvKind::SuperpositionOfRegistries: return std::nullopt;
    }
    return std::nullopt;
  }
  if (n < 2) return std::nullopt;
  switch (input.kind) {
    case EnvKind::Registry: return input.registry == 0 ? "min_registry_ground" : "min_registry_excited";
    case EnvKind::MaximallyMixed: return "min_maximally_mixed";
    case EnvKind::SymmetryEntangled:
      if (sym) return "min_symmetry_entangled";
      return std::nullopt;
    case EnvKind::MixtureOfRegistries:
      if (k == 1 && ground_pair_partner(input)) return "min_mixture_ground_pair";
      return std::nullopt;
    case EnvKind::SuperpositionOfRegistries: return std::nullopt;
  }
  return std::nullopt;
}

Mat analytic_output_state(const InputStateSpec& input, Regime regime, Parity parity) {
  const auto label = analytic_case(input, regime);
  if (!label)
    throw ValidationError("no closed-form output for input '" + to_string(input.kind) + "' in regime " +
                          to_string(regime));
  check_qubits(input.k + input.n);
  const Ctx c = make_ctx(input);
  const double sigma = parity == Parity::Even ? 1.0 : -1.0;
  const std::string& id = *label;
  if (id == "max_registry") return max_registry(c, input.registry, sigma);
  if (id == "max_maximally_mixed") return max_maximally_mixed(c, sigma);
  if (id == "max_symmetry_entangled") return symmetry_pure(c, sigma);
  if (id == "max_mixture_ground_all_ones") {
    const double pn = (c.n % 2 == 0) ? 1.0 : -1.0;
    return max_mixture(c, c.de - 1, pn, 1.0 + pn, sigma);
  }
  if (id == "max_mixture_ground_leading_one")
    return max_mixture(c, static_cast<Eigen::Index>(leading_ones(1, c.n)), -1.0, 0.0, sigma);
  if (id == "min_registry_ground") return min_registry_ground(c);
  if (id == "min_registry_excited") return min_registry_excited(c);
  if (id == "min_maximally_mixed") return min_maximally_mixed(c);
  if (id == "min_symmetry_entangled") return min_symmetry(c);
  return min_mixture(c);
}

}  // namespace darwin
