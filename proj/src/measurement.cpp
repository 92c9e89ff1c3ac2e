#include "biphoton/measurement.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace biphoton {

using qmath::Complex;
using qmath::ComplexVector;

OutcomeStats make_stats(double p_hh, double p_vv, double p_hv) {
  OutcomeStats s;
  s.p_hh = p_hh;
  s.p_vv = p_vv;
  s.p_hv = p_hv;
  if (p_hv > 0.0) s.ratio_r = (p_hh + p_vv) / p_hv;
  return s;
}

OutcomeStats OutcomeCounts::normalized() const {
  const double n = static_cast<double>(total());
  if (n == 0.0) return OutcomeStats{};
  return make_stats(static_cast<double>(hh) / n, static_cast<double>(vv) / n,
                    static_cast<double>(hv) / n);
}

std::array<double, 2> measurement_probabilities(const DensityMatrix& rho,
                                                Basis basis) {
  if (rho.rows != 2 || rho.cols != 2)
    throw std::invalid_argument("measurement expects a 2x2 density matrix");
  const Polarization first =
      basis == Basis::Plane ? Polarization::H : Polarization::R;
  const Polarization second =
      basis == Basis::Plane ? Polarization::V : Polarization::L;
  const ComplexVector a = basis_state(first).amp;
  const ComplexVector b = basis_state(second).amp;
  const double p0 = std::real(qmath::inner(a, rho * a));
  const double p1 = std::real(qmath::inner(b, rho * b));
  return {p0, p1};
}

std::pair<Polarization, PhotonState> measure_single(const DensityMatrix& rho,
                                                    Basis basis, Rng& rng) {
  const std::array<double, 2> probs = measurement_probabilities(rho, basis);
  const std::size_t k = rng.pick(probs);
  Polarization outcome;
  if (basis == Basis::Plane)
    outcome = k == 0 ? Polarization::H : Polarization::V;
  else
    outcome = k == 0 ? Polarization::R : Polarization::L;
  return {outcome, basis_state(outcome)};
}

std::pair<Polarization, PhotonState> measure_single(const DensityMatrix& rho,
                                                    Basis basis,
                                                    std::uint64_t seed) {
  Rng rng(seed);
  return measure_single(rho, basis, rng);
}

OutcomeStats hv_split_probs(const Biphoton& b) {
  return make_stats(std::norm(b.amp[0]), std::norm(b.amp[2]),
                    std::norm(b.amp[1]));
}

OutcomeStats ensemble_stats(const Ensemble& e) {
  if (e.kind() != LightKind::Two)
    throw std::invalid_argument("ensemble_stats expects a two-light ensemble");
  double hh = 0.0, vv = 0.0, hv = 0.0;
  for (const EnsembleMember& m : e.members()) {
    const OutcomeStats s = hv_split_probs(std::get<Biphoton>(m.state));
    hh += m.weight * s.p_hh;
    vv += m.weight * s.p_vv;
    hv += m.weight * s.p_hv;
  }
  return make_stats(hh, vv, hv);
}

SplitChannel sample_channel(const Biphoton& b, Rng& rng) {
  const OutcomeStats s = hv_split_probs(b);
  const std::array<double, 3> probs = {s.p_hh, s.p_vv, s.p_hv};
  switch (rng.pick(probs)) {
    case 0: return SplitChannel::HH;
    case 1: return SplitChannel::VV;
    default: return SplitChannel::HV;
  }
}

OutcomeCounts sample_stats(const Ensemble& e, std::size_t n,
                           std::uint64_t seed) {
  if (e.kind() != LightKind::Two)
    throw std::invalid_argument("sample_stats expects a two-light ensemble");
  std::vector<double> weights;
  weights.reserve(e.size());
  for (const EnsembleMember& m : e.members()) weights.push_back(m.weight);
  Rng rng(seed);
  OutcomeCounts counts;
  for (std::size_t i = 0; i < n; ++i) {
    const EnsembleMember& m = e.members()[rng.pick(weights)];
    switch (sample_channel(std::get<Biphoton>(m.state), rng)) {
      case SplitChannel::HH: ++counts.hh; break;
      case SplitChannel::VV: ++counts.vv; break;
      case SplitChannel::HV: ++counts.hv; break;
    }
  }
  return counts;
}

namespace {

// Recovers p as n/d with the smallest denominator d <= max_denominator.
std::pair<long, long> to_rational(double p, long max_denominator) {
  for (long d = 1; d <= max_denominator; ++d) {
    const long n = std::lround(p * static_cast<double>(d));
    if (std::abs(p - static_cast<double>(n) / static_cast<double>(d)) < 1e-9)
      return {n, d};
  }
  throw std::invalid_argument("no small rational matches the probability");
}

}  // namespace

std::array<long, 3> smallest_integer_ratio(const OutcomeStats& stats,
                                           long max_denominator) {
  const std::array<double, 3> probs = {stats.p_hh, stats.p_vv, stats.p_hv};
  std::array<long, 3> nums{};
  long denom = 1;
  std::array<std::pair<long, long>, 3> fracs;
  for (std::size_t i = 0; i < 3; ++i) {
    fracs[i] = to_rational(probs[i], max_denominator);
    denom = std::lcm(denom, fracs[i].second);
  }
  for (std::size_t i = 0; i < 3; ++i)
    nums[i] = fracs[i].first * (denom / fracs[i].second);
  const long g = std::gcd(std::gcd(nums[0], nums[1]), nums[2]);
  if (g > 1)
    for (long& n : nums) n /= g;
  return nums;
}

}  // namespace biphoton
