#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "darwin/channels.hpp"
#include "darwin/digraph.hpp"
#include "darwin/input_state.hpp"
#include "darwin/qstate.hpp"

namespace darwin {

// Eigenvectors of u(phi): u|s_c1> = |s_c1>, u|s_c2> = -|s_c2>.
struct SymmetryStates {
  double c1 = 0.70710678118654752440;
  double c2 = 0.70710678118654752440;

  static SymmetryStates from_phi(double phi);
  Vec plus() const;
  Vec minus() const;
  // Eigen relations within 1e-12 for the given phi; throws ValidationError.
  void validate(double phi) const;
};

enum class BasisProvenance { Numeric, AnalyticMax, AnalyticMin };
enum class Regime { MaxKoenig, MinStrong };
enum class Parity { Even, Odd };

std::string to_string(BasisProvenance p);
std::string to_string(Regime r);
std::string to_string(Parity p);

// Every gate in this family is real, so the attractor spaces have real bases.
// Column i of q is vec(X_i), column-major, for a 2^(k+n) square operator X_i.
struct AttractorBasis {
  int lambda = 1;
  RegisterLayout layout;
  Eigen::MatrixXd q;
  BasisProvenance provenance = BasisProvenance::Numeric;

  Eigen::Index size() const { return q.cols(); }
  Mat state(Eigen::Index i) const;
};

struct AttractorSpaces {
  AttractorBasis plus;
  AttractorBasis minus;
  std::vector<std::string> notes;  // conditioning warnings and similar
};

constexpr int kNumericAttractorMaxQubits = 6;

struct NumericAttractorOptions {
  double rank_threshold = 1e-9;
  double band_low = 1e-11;
  double band_high = 1e-7;
  int max_qubits = kNumericAttractorMaxQubits;
};

// Intersection of the lambda = +1 and -1 eigenspaces of X -> U_e X U_e over all edges.
AttractorSpaces numeric_attractor_basis(const InteractionDigraph& g, double phi,
                                        const NumericAttractorOptions& opt = {});

// (d^{+1}, d^{-1}); k > n swaps k and n.
std::pair<long long, long long> dimension_formula(int k, int n, Regime regime);

constexpr int kAnalyticBasisMaxQubits = 6;

// Generator lists for Koenig digraphs (n >= k), Gram-Schmidt orthonormalized.
AttractorSpaces analytic_basis_max(int k, int n, double phi);
// Generator lists for strongly connected environments (n >= k).
AttractorSpaces analytic_basis_min(int k, int n, double phi);

// max over states and edges of ||U_e X U_e - lambda X||_HS.
double eigen_residual(const AttractorBasis& b, const InteractionDigraph& g, double phi);
// max |Q^T Q - I|.
double gram_deviation(const AttractorBasis& b);
// max over columns of a of the norm left after projecting onto span(b).
double span_residual(const AttractorBasis& a, const AttractorBasis& b);

// sum_lambda lambda^N sum_i <rho, X_i> X_i with lambda^N fixed by parity.
Mat asymptotic_project(const Mat& rho, const AttractorSpaces& spaces, Parity parity);
// (Even + Odd) / 2: a convenience average, not a limit of the iteration.
Mat time_averaged_project(const Mat& rho, const AttractorSpaces& spaces);

// Label of the closed-form output that applies to (input, regime), if any.
std::optional<std::string> analytic_case(const InputStateSpec& input, Regime regime);

// Closed-form asymptotic output at phi = pi/2 for the supported cases; throws ValidationError otherwise.
Mat analytic_output_state(const InputStateSpec& input, Regime regime, Parity parity);

}  // namespace darwin
