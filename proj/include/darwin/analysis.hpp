#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "darwin/attractor.hpp"
#include "darwin/input_state.hpp"
#include "darwin/qstate.hpp"

namespace darwin {

// Order in which E qubits are traced out. Labels are 1..n (E_1 is the first E qubit).
// Right-to-left removes E_n first, so the fragment of size L is E_1..E_L.
struct TraceOrder {
  std::vector<int> removal;  // empty means right-to-left

  static TraceOrder right_to_left() { return {}; }
  static TraceOrder from_removal(std::vector<int> labels, int n);

  void validate(int n) const;
  // Register positions of the E qubits kept in a fragment of size L.
  std::vector<int> kept(int L, int k, int n) const;
  std::string describe() const;
};

struct EntropyTriple {
  double h_s = 0.0;
  double h_e = 0.0;
  double h_se = 0.0;
  double mi = 0.0;
};

EntropyTriple mutual_information(const Mat& rho, RegisterLayout layout, int L, const TraceOrder& order = {});

// Shannon entropy of the diagonal of the S marginal.
double classical_entropy(const Mat& rho, RegisterLayout layout);

struct PipRow {
  int L = 0;
  double f = 0.0;
  double h_s = 0.0;
  double h_e = 0.0;
  double h_se = 0.0;
  double mi = 0.0;
  double ratio = 0.0;  // NaN when the classical entropy vanishes
};

struct PipTable {
  RegisterLayout layout;
  double h_s_class = 0.0;
  bool ratio_defined = false;
  std::string trace_order = "right_to_left";
  std::string parity;
  std::string model;
  std::vector<PipRow> rows;
};

constexpr double kClassicalEntropyFloor = 1e-12;

PipTable pip(const Mat& rho, RegisterLayout layout, const TraceOrder& order = {});

struct RedundancyReport {
  double delta = 0.01;
  double f_star = 0.0;
  double R = 0.0;
  bool plateau_found = false;
};

RedundancyReport redundancy(const PipTable& t, double delta = 0.01);

struct PlateauMargin {
  int L = 0;
  double ratio = 0.0;
  double margin = 0.0;  // H_E - H_SE
};

struct PlateauReport {
  bool holds = false;
  std::vector<PlateauMargin> margins;
};

PlateauReport plateau_condition(const PipTable& t, int L_low, int L_high, double slack = 1e-6);

// Six environment inputs for the CNOT (Zurek) model with k = 1 and their entropies.
struct ZurekCatalogueEntry {
  int row = 0;
  InputStateSpec input;
  double h_s_class = 0.0;
  std::vector<double> h_s;  // index L-1
  std::vector<double> h_e;
  std::vector<double> h_se;
  // Cells as printed in the source table where they differ from the values above.
  std::optional<std::vector<double>> printed_h_e;
  std::optional<std::vector<double>> printed_h_se;
};

ZurekCatalogueEntry catalogue_zurek(int row, int n, cplx a, cplx b);

double binary_entropy(double p);

struct SymmetryPoint {
  double phi = 0.0;
  double h_e = 0.0;
  double h_se = 0.0;
  double gap = 0.0;  // H_SE - H_E of the dephased record state
};

// One S qubit recording into one E qubit through u(phi); the gap vanishes only for the CNOT.
std::vector<SymmetryPoint> symmetry_sweep(const std::vector<double>& phi_grid, cplx a, cplx b);

// S amplitudes over 2^k values; the lower half records |s1^L>, the upper half |s2^L>.
Mat symmetry_family_mixed(const std::vector<cplx>& a, int L);
Mat symmetry_family_pure(const std::vector<cplx>& a, int L);

enum class LimitCase { MaxRegistryGround, MaxMixtureEnds, MaxMaximallyMixed, MinRegistryExcited, MinMixtureEnds };

std::string to_string(LimitCase c);

struct LimitReport {
  LimitCase id = LimitCase::MaxRegistryGround;
  int k = 1;
  int n = 1;
  double trace_distance = 0.0;
  double ratio_full = 0.0;   // MI / H(S_class) at L = n of the exact output
  double ratio_limit = 0.0;  // same for the large-n form
};

// Equal S amplitudes; registry |1_n> for the excited case, (|0_n> + |1_n>)/2 mixtures.
InputStateSpec limit_case_input(LimitCase id, int k, int n);
Mat limit_form(LimitCase id, const InputStateSpec& input);
LimitReport limit_form_check(LimitCase id, int k, int n, Parity parity = Parity::Even);

struct CorrelationProbe {
  double gap = 0.0;  // H_SE - H_E at L = n
  double h_se = 0.0;
  double h_e = 0.0;
  RVec spectrum_se;
  RVec spectrum_e;
};

// Mixture-of-ends output shape at even N with every nonzero S-off-diagonal entry set to c:
// row |0_n> meets the even-weight columns, row |1_n> the columns of weight n mod 2.
// Throws ValidationError if the result is not PSD.
CorrelationProbe ideal_correlation_probe(cplx a0, cplx a1, int n, cplx c);

}  // namespace darwin
