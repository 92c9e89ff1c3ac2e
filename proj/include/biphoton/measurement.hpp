// Detection statistics: single-photon polarization measurements and the
// three-channel H/V beamsplitter test for biphotons, where both photons exit
// together ([HH] or [VV]) or split ([HV]).
#pragma once

#include <array>
#include <cstdint>
#include <optional>

#include "biphoton/ensembles.hpp"
#include "biphoton/photonic.hpp"
#include "biphoton/rng.hpp"

namespace biphoton {

struct OutcomeStats {
  double p_hh = 0.0;
  double p_vv = 0.0;
  double p_hv = 0.0;
  // (p_hh + p_vv) / p_hv; absent when p_hv = 0.
  std::optional<double> ratio_r;
};

// Assembles stats from channel probabilities, deriving the ratio.
OutcomeStats make_stats(double p_hh, double p_vv, double p_hv);

struct OutcomeCounts {
  std::uint64_t hh = 0;
  std::uint64_t vv = 0;
  std::uint64_t hv = 0;

  std::uint64_t total() const { return hh + vv + hv; }
  OutcomeStats normalized() const;
};

// Born probabilities (first, second) for a projective measurement of rho in
// the given basis: plane orders (H, V), circular orders (R, L).
std::array<double, 2> measurement_probabilities(const DensityMatrix& rho,
                                                Basis basis);

// One projective measurement; returns the outcome label and the collapsed
// state.
std::pair<Polarization, PhotonState> measure_single(const DensityMatrix& rho,
                                                    Basis basis, Rng& rng);
std::pair<Polarization, PhotonState> measure_single(const DensityMatrix& rho,
                                                    Basis basis,
                                                    std::uint64_t seed);

// H/V beamsplitter channel probabilities of a biphoton:
//   p_hh = |<2H|b>|^2, p_vv = |<2V|b>|^2, p_hv = |<s|b>|^2.
OutcomeStats hv_split_probs(const Biphoton& b);

// Weighted average of the member channel probabilities of a two-light
// ensemble.
OutcomeStats ensemble_stats(const Ensemble& e);

// n sampled beamsplitter events (member draw, then channel draw).
OutcomeCounts sample_stats(const Ensemble& e, std::size_t n,
                           std::uint64_t seed);

enum class SplitChannel { HH, VV, HV };

SplitChannel sample_channel(const Biphoton& b, Rng& rng);

// Smallest integer triple proportional to (p_hh, p_vv, p_hv), recovered from
// rationals with denominator at most max_denominator.
std::array<long, 3> smallest_integer_ratio(const OutcomeStats& stats,
                                           long max_denominator = 64);

}  // namespace biphoton
