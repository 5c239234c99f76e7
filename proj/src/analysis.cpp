#include "darwin/analysis.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "darwin/channels.hpp"

namespace darwin {

namespace {

std::vector<int> system_positions(int k) {
  std::vector<int> s(static_cast<std::size_t>(k));
  std::iota(s.begin(), s.end(), 0);
  return s;
}

}  // namespace

TraceOrder TraceOrder::from_removal(std::vector<int> labels, int n) {
  TraceOrder t{std::move(labels)};
  t.validate(n);
  return t;
}

void TraceOrder::validate(int n) const {
  if (removal.empty()) return;
  if (static_cast<int>(removal.size()) != n)
    throw ValidationError("trace_order must list every E label 1..n exactly once");
  std::vector<int> sorted = removal;
  std::sort(sorted.begin(), sorted.end());
  for (int i = 0; i < n; ++i)
    if (sorted[static_cast<std::size_t>(i)] != i + 1)
      throw ValidationError("trace_order must be a permutation of the E labels 1..n");
}

std::vector<int> TraceOrder::kept(int L, int k, int n) const {
  if (L < 0 || L > n) throw ValidationError("fragment size L must lie in [0, n]");
  validate(n);
  std::vector<int> out;
  if (removal.empty()) {
    for (int e = 0; e < L; ++e) out.push_back(k + e);
    return out;
  }
  std::vector<char> gone(static_cast<std::size_t>(n), 0);
  for (int i = 0; i < n - L; ++i) gone[static_cast<std::size_t>(removal[static_cast<std::size_t>(i)] - 1)] = 1;
  for (int e = 0; e < n; ++e)
    if (!gone[static_cast<std::size_t>(e)]) out.push_back(k + e);
  return out;
}

std::string TraceOrder::describe() const {
  if (removal.empty()) return "right_to_left";
  std::ostringstream os;
  for (std::size_t i = 0; i < removal.size(); ++i) os << (i ? " " : "") << removal[i];
  return os.str();
}

double classical_entropy(const Mat& rho, RegisterLayout layout) {
  return pointer_shannon_entropy(partial_trace(rho, layout.qubits(), system_positions(layout.k)));
}

EntropyTriple mutual_information(const Mat& rho, RegisterLayout layout, int L, const TraceOrder& order) {
  layout.validate();
  if (L < 1 || L > layout.n) throw ValidationError("mutual_information: L must lie in [1, n]");
  const int nq = layout.qubits();
  const std::vector<int> e = order.kept(L, layout.k, layout.n);
  std::vector<int> se = system_positions(layout.k);
  se.insert(se.end(), e.begin(), e.end());
  EntropyTriple t;
  t.h_s = von_neumann_entropy(partial_trace(rho, nq, system_positions(layout.k)));
  t.h_e = von_neumann_entropy(partial_trace(rho, nq, e));
  t.h_se = von_neumann_entropy(partial_trace(rho, nq, se));
  t.mi = t.h_s + t.h_e - t.h_se;
  return t;
}

PipTable pip(const Mat& rho, RegisterLayout layout, const TraceOrder& order) {
  layout.validate();
  order.validate(layout.n);
  const int nq = layout.qubits();
  if (rho.rows() != static_cast<Eigen::Index>(layout.dim())) throw ValidationError("pip: state does not match k, n");
  PipTable t;
  t.layout = layout;
  t.trace_order = order.describe();
  const Mat rho_s = partial_trace(rho, nq, system_positions(layout.k));
  t.h_s_class = pointer_shannon_entropy(rho_s);
  t.ratio_defined = t.h_s_class > kClassicalEntropyFloor;
  const double h_s = von_neumann_entropy(rho_s);
  for (int L = 1; L <= layout.n; ++L) {
    const std::vector<int> e = order.kept(L, layout.k, layout.n);
    std::vector<int> se = system_positions(layout.k);
    se.insert(se.end(), e.begin(), e.end());
    PipRow r;
    r.L = L;
    r.f = static_cast<double>(L) / layout.n;
    r.h_s = h_s;
    r.h_e = von_neumann_entropy(partial_trace(rho, nq, e));
    r.h_se = von_neumann_entropy(partial_trace(rho, nq, se));
    r.mi = r.h_s + r.h_e - r.h_se;
    r.ratio = t.ratio_defined ? r.mi / t.h_s_class : std::numeric_limits<double>::quiet_NaN();
    t.rows.push_back(r);
  }
  return t;
}

RedundancyReport redundancy(const PipTable& t, double delta) {
  if (!(delta > 0.0 && delta < 0.5)) throw ValidationError("delta must lie in (0, 0.5)");
  RedundancyReport r;
  r.delta = delta;
  if (!t.ratio_defined) return r;
  for (const PipRow& row : t.rows) {
    if (row.mi >= (1.0 - delta) * t.h_s_class) {
      r.plateau_found = true;
      r.f_star = row.f;
      r.R = 1.0 / row.f;
      break;
    }
  }
  return r;
}

PlateauReport plateau_condition(const PipTable& t, int L_low, int L_high, double slack) {
  const int n = static_cast<int>(t.rows.size());
  if (L_low < 1 || L_high > n || L_low > L_high) throw ValidationError("plateau_condition: invalid L range");
  PlateauReport rep;
  rep.holds = t.ratio_defined;
  for (int L = L_low; L <= L_high; ++L) {
    const PipRow& row = t.rows[static_cast<std::size_t>(L - 1)];
    rep.margins.push_back({L, row.ratio, row.h_e - row.h_se});
    if (!(row.ratio >= 1.0 - slack)) rep.holds = false;
  }
  return rep;
}

double binary_entropy(double p) {
  RVec v(2);
  v << p, 1.0 - p;
  return shannon_entropy(v);
}

ZurekCatalogueEntry catalogue_zurek(int row, int n, cplx a, cplx b) {
  if (row < 1 || row > 6) throw ValidationError("catalogue row must lie in 1..6");
  if (n < 2) throw ValidationError("catalogue rows need n >= 2");
  ZurekCatalogueEntry z;
  z.row = row;
  InputStateSpec& in = z.input;
  in.k = 1;
  in.n = n;
  in.s_amplitudes = {a, b};
  const std::uint64_t all = (std::uint64_t{1} << n) - 1;
  switch (row) {
    case 1: in.kind = EnvKind::MixtureOfRegistries; in.mixture = {{0.5, 0}, {0.5, 1}}; break;
    case 2: in.kind = EnvKind::MixtureOfRegistries; in.mixture = {{0.5, 0}, {0.5, leading_ones(1, n)}}; break;
    case 3: in.kind = EnvKind::MixtureOfRegistries; in.mixture = {{0.5, 0}, {0.5, all}}; break;
    case 4: in.kind = EnvKind::MaximallyMixed; break;
    case 5: in.kind = EnvKind::MixtureOfRegistries; in.mixture = {{0.5, 0}, {0.5, all - 1}}; break;
    default:
      in.kind = EnvKind::SuperpositionOfRegistries;
      in.superposition = {{cplx(std::sqrt(0.5), 0.0), 0}, {cplx(std::sqrt(0.5), 0.0), all}};
      break;
  }
  in.validate();
  const double hc = binary_entropy(std::norm(a));
  z.h_s_class = hc;
  std::vector<double> pe, pse;
  for (int L = 1; L <= n; ++L) {
    const double d = L == n ? 1.0 : 0.0;
    double he = 0.0, hse = 0.0, hs = hc;
    switch (row) {
      case 1:
        hse = (1.0 - d) * hc + d;
        he = hc + d;
        pse.push_back(hc + d);
        pe.push_back((1.0 - d) * hc + d);
        break;
      case 2:
        hse = (1.0 - d) * hc + 1.0;
        he = L == 1 ? 1.0 : d * hc + hse;
        pse.push_back(hse);
        pe.push_back(L == 1 ? 1.0 : (1.0 - d) * hc + hse);
        break;
      case 3:
        he = 1.0;
        hse = (1.0 - d) * hc + 1.0;
        break;
      case 4:
        he = L;
        hse = (1.0 - d) * hc + L;
        break;
      case 5:
        he = 1.0 + d * hc;
        hse = 1.0 + (1.0 - d) * hc;
        break;
      default:
        hs = 0.0;
        he = 1.0 - d;
        hse = 1.0 - d;
        break;
    }
    z.h_s.push_back(hs);
    z.h_e.push_back(he);
    z.h_se.push_back(hse);
  }
  if (!pe.empty()) {
    z.printed_h_e = pe;
    z.printed_h_se = pse;
  }
  return z;
}

std::vector<SymmetryPoint> symmetry_sweep(const std::vector<double>& phi_grid, cplx a, cplx b) {
  if (std::abs(std::norm(a) + std::norm(b) - 1.0) > 1e-12) throw ValidationError("symmetry_sweep: |a|^2 + |b|^2 must be 1");
  std::vector<SymmetryPoint> out;
  for (double phi : phi_grid) {
    if (!(phi > 0.0 && phi < kPi)) throw ValidationError("symmetry_sweep: phi must lie in (0, pi)");
    Vec in = Vec::Zero(4);
    in(0) = a;
    in(2) = b;
    const Vec psi = controlled_u(0, 1, phi, 2) * in;
    Mat rec = projector(psi);
    // Dephase S in its pointer basis.
    rec.block(0, 2, 2, 2).setZero();
    rec.block(2, 0, 2, 2).setZero();
    SymmetryPoint p;
    p.phi = phi;
    p.h_e = von_neumann_entropy(partial_trace(rec, 2, {1}));
    p.h_se = von_neumann_entropy(rec);
    p.gap = p.h_se - p.h_e;
    out.push_back(p);
  }
  return out;
}

namespace {

int s_qubits_of(const std::vector<cplx>& a) {
  const auto size = a.size();
  if (size < 2 || !std::has_single_bit(size)) throw ValidationError("amplitude vector length must be 2^k with k >= 1");
  double norm = 0.0;
  for (const cplx& x : a) norm += std::norm(x);
  if (std::abs(norm - 1.0) > 1e-12) throw ValidationError("amplitudes are not normalized");
  return std::countr_zero(size);
}

std::pair<Vec, Vec> symmetry_strings(int L) {
  const double h = 1.0 / std::sqrt(2.0);
  Vec p(2), m(2);
  p << h, h;
  m << h, -h;
  return {kron_power(p, L), kron_power(m, L)};
}

}  // namespace

Mat symmetry_family_mixed(const std::vector<cplx>& a, int L) {
  const int k = s_qubits_of(a);
  check_qubits(k + L);
  const auto [s1, s2] = symmetry_strings(L);
  const auto ds = static_cast<Eigen::Index>(a.size());
  Mat out = Mat::Zero(ds * s1.size(), ds * s1.size());
  for (Eigen::Index i = 0; i < ds; ++i) {
    const Vec ei = basis_ket(static_cast<std::size_t>(ds), static_cast<std::size_t>(i));
    out += std::norm(a[static_cast<std::size_t>(i)]) * kron(projector(ei), projector(i < ds / 2 ? s1 : s2));
  }
  return out;
}

Mat symmetry_family_pure(const std::vector<cplx>& a, int L) {
  const int k = s_qubits_of(a);
  check_qubits(k + L);
  const auto [s1, s2] = symmetry_strings(L);
  const auto ds = static_cast<Eigen::Index>(a.size());
  Vec psi = Vec::Zero(ds * s1.size());
  for (Eigen::Index i = 0; i < ds; ++i) {
    const Vec ei = basis_ket(static_cast<std::size_t>(ds), static_cast<std::size_t>(i));
    psi += a[static_cast<std::size_t>(i)] * kron(ei, i < ds / 2 ? s1 : s2);
  }
  return projector(psi);
}

std::string to_string(LimitCase c) {
  switch (c) {
    case LimitCase::MaxRegistryGround: return "max_registry_ground";
    case LimitCase::MaxMixtureEnds: return "max_mixture_ends";
    case LimitCase::MaxMaximallyMixed: return "max_maximally_mixed";
    case LimitCase::MinRegistryExcited: return "min_registry_excited";
    case LimitCase::MinMixtureEnds: return "min_mixture_ends";
  }
  return "max_registry_ground";
}

namespace {

Regime regime_of(LimitCase c) {
  return (c == LimitCase::MinRegistryExcited || c == LimitCase::MinMixtureEnds) ? Regime::MinStrong : Regime::MaxKoenig;
}

double ratio_at_full(const Mat& rho, RegisterLayout layout) {
  const double hc = classical_entropy(rho, layout);
  if (!(hc > kClassicalEntropyFloor)) throw ValidationError("classical entropy vanishes; ratio undefined");
  return mutual_information(rho, layout, layout.n).mi / hc;
}

}  // namespace

InputStateSpec limit_case_input(LimitCase id, int k, int n) {
  const bool k1_only = id == LimitCase::MaxMixtureEnds || id == LimitCase::MinMixtureEnds;
  if (k1_only && k != 1) throw ValidationError("limit case " + to_string(id) + " is defined for k = 1");
  const std::uint64_t all = (std::uint64_t{1} << n) - 1;
  switch (id) {
    case LimitCase::MaxRegistryGround: return equal_amplitude_input(k, n, EnvKind::Registry, 0);
    case LimitCase::MaxMaximallyMixed: return equal_amplitude_input(k, n, EnvKind::MaximallyMixed);
    case LimitCase::MinRegistryExcited: return equal_amplitude_input(k, n, EnvKind::Registry, all);
    case LimitCase::MaxMixtureEnds:
    case LimitCase::MinMixtureEnds: {
      InputStateSpec in = equal_amplitude_input(k, n, EnvKind::MixtureOfRegistries);
      in.mixture = {{0.5, 0}, {0.5, all}};
      return in;
    }
  }
  throw ValidationError("unsupported limit case");
}

Mat limit_form(LimitCase id, const InputStateSpec& input) {
  input.validate();
  const auto ds = static_cast<Eigen::Index>(std::size_t{1} << input.k);
  const auto de = static_cast<Eigen::Index>(std::size_t{1} << input.n);
  const Mat ie = Mat::Identity(de, de);
  const Mat p0 = projector(basis_ket(static_cast<std::size_t>(de), 0));
  auto sdiag = [&](Eigen::Index x) {
    return Mat(std::norm(input.s_amplitudes[static_cast<std::size_t>(x)]) *
               projector(basis_ket(static_cast<std::size_t>(ds), static_cast<std::size_t>(x))));
  };
  Mat out = Mat::Zero(ds * de, ds * de);
  switch (id) {
    case LimitCase::MaxRegistryGround:
      out += kron(sdiag(0), p0);
      for (Eigen::Index m = 1; m < ds; ++m) out += kron(sdiag(m), Mat(ie / static_cast<double>(de)));
      return out;
    case LimitCase::MaxMixtureEnds:
      return kron(sdiag(0), environment_state(input)) + kron(sdiag(1), Mat(ie / static_cast<double>(de)));
    case LimitCase::MaxMaximallyMixed:
    case LimitCase::MinRegistryExcited:
      for (Eigen::Index m = 0; m < ds; ++m) out += kron(sdiag(m), Mat(ie / static_cast<double>(de)));
      return out;
    case LimitCase::MinMixtureEnds:
      return kron(sdiag(0), Mat(ie / (2.0 * de) + 0.5 * p0)) + kron(sdiag(1), Mat(ie / static_cast<double>(de)));
  }
  throw ValidationError("unsupported limit case");
}

LimitReport limit_form_check(LimitCase id, int k, int n, Parity parity) {
  const InputStateSpec in = limit_case_input(id, k, n);
  const Mat full = analytic_output_state(in, regime_of(id), parity);
  const Mat lim = limit_form(id, in);
  const RegisterLayout layout{k, n};
  LimitReport r;
  r.id = id;
  r.k = k;
  r.n = n;
  r.trace_distance = trace_distance(full, lim);
  r.ratio_full = ratio_at_full(full, layout);
  r.ratio_limit = ratio_at_full(lim, layout);
  return r;
}

CorrelationProbe ideal_correlation_probe(cplx a0, cplx a1, int n, cplx c) {
  if (std::abs(std::norm(a0) + std::norm(a1) - 1.0) > 1e-12) throw ValidationError("probe: |a0|^2 + |a1|^2 must be 1");
  if (n < 2) throw ValidationError("probe: n must be >= 2");
  check_qubits(n + 1);
  const auto de = static_cast<Eigen::Index>(std::size_t{1} << n);
  const Eigen::Index ones = de - 1;
  Mat rho = Mat::Zero(2 * de, 2 * de);
  rho(0, 0) = 0.5 * std::norm(a0);
  rho(ones, ones) += 0.5 * std::norm(a0);
  // |1><1| block: I/2^n plus the even-n string of (|1><1| - |0><0|)/sqrt(2).
  for (Eigen::Index y = 0; y < de; ++y) {
    const bool match = std::popcount(static_cast<std::uint64_t>(y)) % 2 == n % 2;
    double w = 1.0 / static_cast<double>(de);
    if (n % 2 == 0) w += (match ? 1.0 : -1.0) / static_cast<double>(de);
    rho(de + y, de + y) = std::norm(a1) * w;
  }
  // Row |0_n> couples to even-weight columns, row |1_n> to columns of weight n mod 2.
  for (Eigen::Index y = 0; y < de; ++y) {
    const int parity = std::popcount(static_cast<std::uint64_t>(y)) % 2;
    for (Eigen::Index r : {Eigen::Index{0}, ones}) {
      if (parity != (r == 0 ? 0 : n % 2)) continue;
      rho(r, de + y) = c;
      rho(de + y, r) = std::conj(c);
    }
  }
  const RVec ev = hermitian_eigenvalues(rho);
  if (ev(0) < -1e-12) {
    std::ostringstream os;
    os << "probe: PSD violation, minimum eigenvalue " << ev(0) << " for |c| = " << std::abs(c);
    throw ValidationError(os.str());
  }
  CorrelationProbe p;
  p.spectrum_se = spectrum(rho);
  const Mat rho_e = partial_trace(rho, n + 1, [&] {
    std::vector<int> e(static_cast<std::size_t>(n));
    std::iota(e.begin(), e.end(), 1);
    return e;
  }());
  p.spectrum_e = spectrum(rho_e);
  p.h_se = shannon_entropy(p.spectrum_se);
  p.h_e = shannon_entropy(p.spectrum_e);
  p.gap = p.h_se - p.h_e;
  return p;
}

}  // namespace darwin
