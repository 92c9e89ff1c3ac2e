#include "biphoton/epr.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>

namespace biphoton {

using qmath::Complex;
using qmath::ComplexVector;

BobStrategy BobStrategy::direct() {
  return BobStrategy{StrategyKind::Direct, MarriageMillSpec{}};
}
BobStrategy BobStrategy::mandel_clone() {
  return BobStrategy{StrategyKind::MandelClone, MarriageMillSpec{}};
}
BobStrategy BobStrategy::wed_perfect() {
  return BobStrategy{StrategyKind::WedPerfect, MarriageMillSpec::perfect()};
}
BobStrategy BobStrategy::wed_constrained() {
  return BobStrategy{StrategyKind::WedConstrained,
                     MarriageMillSpec::canonical()};
}
BobStrategy BobStrategy::wed_custom(const MarriageMillSpec& spec) {
  return BobStrategy{StrategyKind::WedCustom, spec};
}

std::optional<BobStrategy> BobStrategy::from_name(const std::string& name) {
  if (name == "direct") return direct();
  if (name == "clone") return mandel_clone();
  if (name == "wed-perfect") return wed_perfect();
  if (name == "wed-constrained") return wed_constrained();
  return std::nullopt;
}

const char* BobStrategy::name() const {
  switch (kind) {
    case StrategyKind::Direct: return "direct";
    case StrategyKind::MandelClone: return "clone";
    case StrategyKind::WedPerfect: return "wed-perfect";
    case StrategyKind::WedConstrained: return "wed-constrained";
    case StrategyKind::WedCustom: return "wed-custom";
  }
  return "?";
}

bool BobStrategy::weds() const {
  return kind == StrategyKind::WedPerfect ||
         kind == StrategyKind::WedConstrained ||
         kind == StrategyKind::WedCustom;
}

std::pair<Polarization, PhotonState> alice_collapse(Basis basis, Rng& rng) {
  const std::array<Polarization, 2> labels =
      basis == Basis::Plane
          ? std::array<Polarization, 2>{Polarization::H, Polarization::V}
          : std::array<Polarization, 2>{Polarization::R, Polarization::L};
  const ComplexVector& pair = epr_state().amp;

  // Conditional (unnormalized) Bob amplitudes for each Alice outcome:
  // bob_j = sum_i conj(a_i) pair_(i,j).
  std::array<ComplexVector, 2> conditional;
  std::array<double, 2> probs{};
  for (std::size_t k = 0; k < 2; ++k) {
    const ComplexVector& a = basis_state(labels[k]).amp;
    ComplexVector bob(2);
    for (std::size_t j = 0; j < 2; ++j)
      bob[j] = std::conj(a[0]) * pair[j] + std::conj(a[1]) * pair[2 + j];
    probs[k] = bob.norm() * bob.norm();
    conditional[k] = std::move(bob);
  }

  const std::size_t k = rng.pick(probs);
  return {labels[k],
          PhotonState(canonical_phase(conditional[k].normalized()))};
}

WedEvents strategy_wedding(const MarriageMillSpec& mill,
                           std::span<const Polarization> photons, Rng& rng) {
  WedEvents out;
  out.attempts = photons.size() / 2;
  out.sequence.reserve(out.attempts);
  for (std::size_t t = 0; t < out.attempts; ++t) {
    const MillOutcome outcome =
        mill_apply(mill, photons[2 * t], photons[2 * t + 1]);
    std::vector<double> probs;
    probs.reserve(outcome.branches.size());
    for (const MillBranch& b : outcome.branches) probs.push_back(b.probability);
    const MillBranch& branch = outcome.branches[rng.pick(probs)];
    if (const auto* wed = std::get_if<Biphoton>(&branch.result)) {
      switch (sample_channel(*wed, rng)) {
        case SplitChannel::HH: ++out.counts.hh; out.sequence.push_back(0); break;
        case SplitChannel::VV: ++out.counts.vv; out.sequence.push_back(1); break;
        case SplitChannel::HV: ++out.counts.hv; out.sequence.push_back(2); break;
      }
    } else {
      ++out.no_wed;
      out.sequence.push_back(-1);
    }
  }
  return out;
}

double tv_distance(std::span<const double> p, std::span<const double> q) {
  if (p.size() != q.size())
    throw std::invalid_argument("tv_distance: length mismatch");
  double sp = 0.0, sq = 0.0;
  for (double x : p) sp += x;
  for (double x : q) sq += x;
  if (sp <= 0.0 || sq <= 0.0)
    throw std::invalid_argument("tv_distance: empty distribution");
  double tv = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i)
    tv += std::abs(p[i] / sp - q[i] / sq);
  return 0.5 * tv;
}

double mutual_information(const std::vector<std::vector<double>>& joint) {
  if (joint.empty() || joint.front().empty())
    throw std::invalid_argument("mutual_information: empty table");
  const std::size_t cols = joint.front().size();
  double total = 0.0;
  std::vector<double> row_sum(joint.size(), 0.0), col_sum(cols, 0.0);
  for (std::size_t r = 0; r < joint.size(); ++r) {
    if (joint[r].size() != cols)
      throw std::invalid_argument("mutual_information: ragged table");
    for (std::size_t c = 0; c < cols; ++c) {
      const double x = joint[r][c];
      if (x < 0.0 || !std::isfinite(x))
        throw std::invalid_argument("mutual_information: bad count");
      total += x;
      row_sum[r] += x;
      col_sum[c] += x;
    }
  }
  if (total <= 0.0)
    throw std::invalid_argument("mutual_information: zero table");
  double mi = 0.0;
  for (std::size_t r = 0; r < joint.size(); ++r)
    for (std::size_t c = 0; c < cols; ++c) {
      const double x = joint[r][c];
      if (x <= 0.0) continue;
      mi += (x / total) * std::log2(x * total / (row_sum[r] * col_sum[c]));
    }
  return mi;
}

NullBand tv_null_band(std::span<const double> pooled_probs, double m1,
                      double m2) {
  NullBand band;
  if (m1 <= 0.0 || m2 <= 0.0) return band;
  const double inv = 1.0 / m1 + 1.0 / m2;
  double var = 0.0;
  for (double p : pooled_probs) {
    const double v = p * (1.0 - p) * inv;
    band.expected_tv += 0.5 * std::sqrt(2.0 * v / std::numbers::pi);
    var += 0.25 * v * (1.0 - 2.0 / std::numbers::pi);
  }
  band.sigma_tv = std::sqrt(var);
  band.threshold = band.expected_tv + 3.0 * band.sigma_tv;
  return band;
}

namespace {

Polarization classify(const PhotonState& photon, Basis basis) {
  const std::array<Polarization, 2> labels =
      basis == Basis::Plane
          ? std::array<Polarization, 2>{Polarization::H, Polarization::V}
          : std::array<Polarization, 2>{Polarization::R, Polarization::L};
  for (Polarization label : labels) {
    if (std::abs(qmath::inner(basis_state(label).amp, photon.amp)) >
        1.0 - 1e-9)
      return label;
  }
  throw std::runtime_error("collapsed photon is not a basis state");
}

double split_half_tv(const std::vector<std::int8_t>& events,
                     std::size_t n_classes) {
  std::vector<std::int8_t> kept;
  kept.reserve(events.size());
  for (std::int8_t e : events)
    if (e >= 0) kept.push_back(e);
  if (kept.size() < 2) return 0.0;
  const std::size_t half = kept.size() / 2;
  std::vector<double> first(n_classes, 0.0), second(n_classes, 0.0);
  for (std::size_t i = 0; i < kept.size(); ++i)
    (i < half ? first : second)[static_cast<std::size_t>(kept[i])] += 1.0;
  return tv_distance(first, second);
}

ArmResult run_arm(const ProtocolConfig& config, Basis basis,
                  std::uint64_t seed) {
  ArmResult arm;
  arm.basis = basis;
  Rng rng(seed);

  std::vector<Polarization> bob_labels;
  bob_labels.reserve(config.n_pairs);
  for (std::uint64_t i = 0; i < config.n_pairs; ++i) {
    const auto [alice, bob] = alice_collapse(basis, rng);
    const std::array<Polarization, 2> labels =
        basis == Basis::Plane
            ? std::array<Polarization, 2>{Polarization::H, Polarization::V}
            : std::array<Polarization, 2>{Polarization::R, Polarization::L};
    ++arm.alice_counts[alice == labels[0] ? 0 : 1];
    bob_labels.push_back(classify(bob, basis));
  }

  std::vector<std::int8_t> events;
  switch (config.strategy.kind) {
    case StrategyKind::Direct: {
      arm.class_names = {"H", "V"};
      // Fixed plane-basis analyzer; outcome law per incoming label.
      std::map<Polarization, std::array<double, 2>> law;
      for (Polarization label : {Polarization::H, Polarization::V,
                                 Polarization::R, Polarization::L})
        law[label] = measurement_probabilities(
            qmath::outer(basis_state(label).amp, basis_state(label).amp),
            Basis::Plane);
      events.reserve(bob_labels.size());
      for (Polarization label : bob_labels)
        events.push_back(static_cast<std::int8_t>(rng.pick(law[label])));
      break;
    }
    case StrategyKind::MandelClone: {
      arm.class_names = {"HH", "VV", "HV"};
      // Beamsplitter law of the cloned photon, one table per incoming label.
      std::map<Polarization, std::array<double, 3>> law;
      for (Polarization label : {Polarization::H, Polarization::V,
                                 Polarization::R, Polarization::L}) {
        const DensityMatrix out = mandel_clone(
            qmath::outer(basis_state(label).amp, basis_state(label).amp));
        law[label] = {std::real(out.at(0, 0)), std::real(out.at(2, 2)),
                      std::real(out.at(1, 1))};
      }
      events.reserve(bob_labels.size());
      for (Polarization label : bob_labels)
        events.push_back(static_cast<std::int8_t>(rng.pick(law[label])));
      break;
    }
    default: {
      arm.class_names = {"HH", "VV", "HV"};
      const WedEvents wed =
          strategy_wedding(config.strategy.mill, bob_labels, rng);
      events = wed.sequence;
      arm.no_wed = wed.no_wed;
      arm.attempts = wed.attempts;
      break;
    }
  }

  arm.counts.assign(arm.class_names.size(), 0);
  for (std::int8_t e : events) {
    if (e < 0) continue;
    ++arm.counts[static_cast<std::size_t>(e)];
    ++arm.events;
  }
  arm.split_half_tv = split_half_tv(events, arm.class_names.size());
  return arm;
}

}  // namespace

ProtocolRecord run_protocol(const ProtocolConfig& config) {
  if (config.n_pairs == 0)
    throw std::invalid_argument("run_protocol: n_pairs must be positive");
  ProtocolRecord rec;
  rec.config = config;
  rec.plane = run_arm(config, Basis::Plane, derive_seed(config.seed, 0));
  rec.circular = run_arm(config, Basis::Circular, derive_seed(config.seed, 1));

  const std::size_t n_classes = rec.plane.class_names.size();
  std::vector<double> p(n_classes), q(n_classes), pooled(n_classes);
  const double m1 = static_cast<double>(rec.plane.events);
  const double m2 = static_cast<double>(rec.circular.events);
  for (std::size_t i = 0; i < n_classes; ++i) {
    p[i] = static_cast<double>(rec.plane.counts[i]);
    q[i] = static_cast<double>(rec.circular.counts[i]);
    pooled[i] = (p[i] + q[i]) / std::max(1.0, m1 + m2);
  }

  rec.tv_distance_bases = tv_distance(p, q);
  rec.mutual_information_bits = mutual_information({p, q});
  rec.null_band = tv_null_band(pooled, m1, m2);
  rec.signaling = rec.tv_distance_bases > rec.null_band.threshold;

  rec.control_tv =
      std::max(rec.plane.split_half_tv, rec.circular.split_half_tv);
  const NullBand control_plane = tv_null_band(pooled, m1 / 2.0, m1 / 2.0);
  const NullBand control_circ = tv_null_band(pooled, m2 / 2.0, m2 / 2.0);
  rec.control_threshold =
      std::max(control_plane.threshold, control_circ.threshold);

  if (config.strategy.weds()) {
    if (rec.plane.attempts > 0)
      rec.no_wed_fraction_plane = static_cast<double>(rec.plane.no_wed) /
                                  static_cast<double>(rec.plane.attempts);
    if (rec.circular.attempts > 0)
      rec.no_wed_fraction_circular =
          static_cast<double>(rec.circular.no_wed) /
          static_cast<double>(rec.circular.attempts);
  }
  return rec;
}

}  // namespace biphoton
