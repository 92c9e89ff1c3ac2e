// Linearity analysis of the marriage mill.
//
// The mill's plane-basis rows define a linear map on two-photon product
// states. Its circular rows are independent claims about the same map, so for
// each circular product input the difference
//
//   (plane rows applied linearly)  -  (claimed circular-row output)
//
// must vanish if any one linear machine implements the whole table. Those
// differences are the residuals below; the set of amplitude tables with zero
// residual is the constraint family. Solving it reproduces, rather than
// assumes, the equalities A_H = A_V = A_R = A_L, A_M = A_N = A_E = A_F and
// the cross/same power ratio 1/2.
#pragma once

#include <array>
#include <complex>
#include <string>

#include "biphoton/channels.hpp"

namespace biphoton {

struct InputResidual {
  std::string input;  // "RR", "LL", "RL", "LR"
  std::array<std::complex<double>, 3> wed;  // over (|2H>, |s>, |2V>)
  std::complex<double> unwed;

  double norm() const;
};

struct ConstraintSummary {
  std::complex<double> a_same_mean;   // mean of a_h, a_v, a_r, a_l
  std::complex<double> a_cross_mean;  // mean of a_m, a_n, a_e, a_f
  double same_spread = 0.0;           // max deviation from the mean
  double cross_spread = 0.0;
  // |a_cross_mean|^2 / |a_same_mean|^2; NaN when the same amplitudes vanish.
  double power_ratio() const;
};

struct ResidualReport {
  std::array<InputResidual, 4> residuals;
  double norm = 0.0;  // Euclidean norm over all residual components
  ConstraintSummary summary;
};

ResidualReport build_residuals(const MarriageMillSpec& spec);

// The zero set of the residual map, found by elimination (SVD nullspace of
// the 16x9 linear system), then canonicalized at a_h = 1.
struct ConstraintFamily {
  int kernel_dimension = 0;        // 2: one wed scale, one free sink
  std::complex<double> a_same;     // 1 after canonicalization
  std::complex<double> a_cross;    // forced to a_same / sqrt2, phase included
  double power_ratio = 0.0;        // |a_cross|^2 / |a_same|^2 = 1/2
  double relative_phase = 0.0;     // arg(a_cross / a_same) = 0
  double max_equality_violation = 0.0;  // spread of same/cross amplitudes
  bool sink_unconstrained = false;      // a_z direction lies in the kernel
  double wed_deficit = 0.0;             // 1 - |a_cross|^2 at |a_same| = 1
};

ConstraintFamily solve_constraint_family(double tol = 1e-10);

// Unwed probability of an unlike pair under an on-manifold mill:
// 1 - |a_cross|^2, which is 1/2 when |a_same| = 1. Rejects specs whose
// residual norm exceeds tol.
double probability_deficit(const MarriageMillSpec& spec, double tol = 1e-10);

// Result of wedding consecutive photons of unpolarized one-light and keeping
// the wed branches.
struct FatLightCertificate {
  Ensemble wed_ensemble;      // renormalized wed branches
  double unwed_probability;   // weight lost to unwed branches
  DensityMatrix density;      // of wed_ensemble
  double residual_norm;       // of the audited mill spec
  bool on_manifold;           // residual_norm <= tolerance
  double diff_from_ordinary;  // max |density - density(PUP2 two-light)|
  bool ordinary_two_light;    // diff_from_ordinary <= 1e-12
};

// Weds one_light(source) pairwise with the given mill. For any on-manifold
// mill the surviving light is ordinary two-light (PUP2 statistics) whatever
// the source basis; an off-manifold mill is processed all the same so the
// fat-light counterfactual can be inspected.
FatLightCertificate certify_no_fat_light(const MarriageMillSpec& spec,
                                         Basis source,
                                         double tol = 1e-10);

}  // namespace biphoton
