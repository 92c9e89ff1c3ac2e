// Physical transformations on photons: Kraus channels, the optimal universal
// cloner, the marriage mill (pairwise photon-merging machine), and two-photon
// beamsplitter interference.
#pragma once

#include <complex>
#include <functional>
#include <variant>
#include <vector>

#include "biphoton/ensembles.hpp"
#include "biphoton/photonic.hpp"

namespace biphoton {

struct KrausChannel {
  std::vector<qmath::ComplexMatrix> ops;  // shared shape dout x din
};

enum class ChannelVerdict { Complete, TraceDecreasing, Invalid };

const char* to_string(ChannelVerdict v);

// Complete: sum K^dag K = I. TraceDecreasing: sum <= I but not complete.
// Invalid: the sum exceeds I in some direction.
ChannelVerdict validate_channel(const KrausChannel& ch,
                                double tol = qmath::kStructuralTol);

DensityMatrix apply_channel(const KrausChannel& ch, const DensityMatrix& rho);

using MatrixMap = std::function<qmath::ComplexMatrix(const qmath::ComplexMatrix&)>;

// Choi matrix sum_{ij} |i><j| (x) map(|i><j|), shape (din*dout)^2.
qmath::ComplexMatrix choi_matrix(const MatrixMap& map, std::size_t din,
                                 std::size_t dout);

// Kraus operators recovered from the eigendecomposition of the Choi matrix;
// branches below tol are dropped.
KrausChannel kraus_from_map(const MatrixMap& map, std::size_t din,
                            std::size_t dout, double tol = 1e-12);

// Optimal universal cloner: rho (2x2) -> (2/3) P S (rho (x) I) S P^dag, a 3x3
// biphoton density. For a pure input |Z> the output is (2/3)|ZZ><ZZ| +
// (1/3)|s_Z><s_Z|, so the wrong-polarization branch always carries 1/3.
DensityMatrix mandel_clone(const DensityMatrix& rho);

// Each one-light member replaced by its cloner output, split into biphoton
// eigenbranches; branches matching a named biphoton are tagged with its name.
Ensemble clone_ensemble(const Ensemble& light);

// Amplitude table of a marriage mill. Like rows wed into doubled biphotons
// (|2H>, |2V>, |2R>, |2L>), unlike rows into the symmetric biphoton of their
// basis plus an unwed leakage branch.
//
// A single sink amplitude a_z parameterizes all leakage: linearity of the
// mill fixes the relative sink phases across rows, and the only consistent
// single-sink pattern is (HV, VH, RL, LR) -> (a_z, -a_z, -i a_z, +i a_z).
// That pattern is built into the row table below.
struct MarriageMillSpec {
  std::complex<double> a_h, a_v;  // (H,H) -> |2H>, (V,V) -> |2V>
  std::complex<double> a_m, a_n;  // (H,V), (V,H) -> |s>
  std::complex<double> a_r, a_l;  // (R,R) -> |2R>, (L,L) -> |2L>
  std::complex<double> a_e, a_f;  // (R,L), (L,R) -> |RL>
  std::complex<double> a_z;       // unwed sink amplitude, see above

  // Largest row norm excess over 1; a physical spec keeps this <= 1e-10.
  double row_norm_excess() const;
  bool physical(double tol = qmath::kStructuralTol) const;

  // On-manifold mill with |a_s| = 1: wed amplitudes (1, 1/sqrt2) and a
  // trace-preserving sink |a_z| = 1/sqrt2.
  static MarriageMillSpec canonical();
  // All wed amplitudes 1 (off-manifold; violates linearity).
  static MarriageMillSpec perfect();
  // Member of the consistent family: same-kind amplitudes a_s, cross
  // amplitudes a_s/sqrt2, sink a_z.
  static MarriageMillSpec from_family(std::complex<double> a_s,
                                      std::complex<double> a_z);
};

// Output amplitudes of the mill's plane rows applied linearly to a two-photon
// product vector (HH, HV, VH, VV): three wed components over (|2H>, |s>,
// |2V>) plus the unwed sink component.
struct MillImage {
  std::array<std::complex<double>, 3> wed;
  std::complex<double> unwed;
};

MillImage mill_linear_extension(const MarriageMillSpec& spec,
                                const qmath::ComplexVector& pair);

struct UnwedTag {};

struct MillBranch {
  double probability;
  std::variant<Biphoton, UnwedTag> result;
};

// Branches of one wedding attempt. The unwed branch carries the probability
// not claimed by the wed amplitude, so the outcome always sums to 1; branches
// with probability 0 are dropped.
struct MillOutcome {
  std::vector<MillBranch> branches;

  double wed_probability() const;
};

// Wedding of two photons in definite polarizations of the same basis.
MillOutcome mill_apply(const MarriageMillSpec& spec, Polarization first,
                       Polarization second);

// Probability that two single photons meeting at a 50/50 beamsplitter exit
// through different ports: (1 - |<a|b>|^2) / 2.
double hom_coincidence(const PhotonState& a, const PhotonState& b);

}  // namespace biphoton
