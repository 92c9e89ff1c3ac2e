// Two-arm signaling experiment on polarization-entangled pairs.
//
// One arm runs with Alice measuring in the plane basis, the other in the
// circular basis, with the same pair count and seed discipline. Bob applies a
// receiver strategy to his photon stream; if his outcome statistics differ
// between arms beyond the sampling null band, the strategy signals.
#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "biphoton/channels.hpp"
#include "biphoton/measurement.hpp"

namespace biphoton {

enum class StrategyKind { Direct, MandelClone, WedPerfect, WedConstrained, WedCustom };

struct BobStrategy {
  StrategyKind kind;
  MarriageMillSpec mill;  // used by the wedding strategies

  static BobStrategy direct();
  static BobStrategy mandel_clone();
  static BobStrategy wed_perfect();
  static BobStrategy wed_constrained();
  static BobStrategy wed_custom(const MarriageMillSpec& spec);

  // Parses "direct", "clone", "wed-perfect", "wed-constrained"; nullopt for
  // anything else (wed-custom needs an explicit mill spec).
  static std::optional<BobStrategy> from_name(const std::string& name);

  const char* name() const;
  bool weds() const;
};

struct ProtocolConfig {
  std::uint64_t n_pairs = 100000;
  BobStrategy strategy = BobStrategy::direct();
  std::uint64_t seed = 1;
};

// One Alice measurement on a fresh pair: the outcome label and Bob's
// collapsed photon, both derived from the pair state's amplitudes.
std::pair<Polarization, PhotonState> alice_collapse(Basis basis, Rng& rng);

// Pairwise wedding of a photon label stream. Event codes: 0 [HH], 1 [VV],
// 2 [HV], -1 unwed.
struct WedEvents {
  std::vector<std::int8_t> sequence;
  OutcomeCounts counts;
  std::uint64_t no_wed = 0;
  std::uint64_t attempts = 0;
};

WedEvents strategy_wedding(const MarriageMillSpec& mill,
                           std::span<const Polarization> photons, Rng& rng);

struct ArmResult {
  Basis basis = Basis::Plane;
  std::array<std::uint64_t, 2> alice_counts{};  // per basis label, in order
  std::vector<std::string> class_names;
  std::vector<std::uint64_t> counts;  // per outcome class
  std::uint64_t events = 0;
  std::uint64_t no_wed = 0;
  std::uint64_t attempts = 0;      // wedding attempts (wed strategies only)
  double split_half_tv = 0.0;      // same-basis control: tv between halves
};

// Gaussian estimate of the total-variation fluctuation between two empirical
// distributions of a common law: expected value plus 3 sigma gives the null
// threshold.
struct NullBand {
  double expected_tv = 0.0;
  double sigma_tv = 0.0;
  double threshold = 0.0;
};

NullBand tv_null_band(std::span<const double> pooled_probs, double m1,
                      double m2);

struct ProtocolRecord {
  ProtocolConfig config;
  ArmResult plane;
  ArmResult circular;
  double tv_distance_bases = 0.0;
  double mutual_information_bits = 0.0;
  NullBand null_band;
  bool signaling = false;
  double control_tv = 0.0;         // worst same-basis split-half tv
  double control_threshold = 0.0;  // null threshold for the half-size split
  std::optional<double> no_wed_fraction_plane;
  std::optional<double> no_wed_fraction_circular;
};

// Runs both arms with child seeds derived from config.seed and aggregates
// the comparison. Deterministic: identical configs give identical records.
ProtocolRecord run_protocol(const ProtocolConfig& config);

// Total variation distance between the normalized versions of two
// same-length count vectors.
double tv_distance(std::span<const double> p, std::span<const double> q);

// Plug-in mutual information in bits of a joint count table (rows: arm,
// columns: outcome class). Zero cells contribute zero.
double mutual_information(const std::vector<std::vector<double>>& joint);

}  // namespace biphoton
