// Classical mixtures of photon states (one-light) and biphotons (two-light).
//
// The four named two-light preparations:
//   PUP2  equal thirds of |2H>, |2V>, |s>        (plane source, cloned/wed)
//   CUP2  equal thirds of |2R>, |2L>, |RL>       (circular source)
//   FPUP  (1/4, 1/4, 1/2) on |2H>, |2V>, |s>     (plane source, perfect mill)
//   FCUP  (1/4, 1/4, 1/2) on |2R>, |2L>, |RL>    (circular source, perfect mill)
#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "biphoton/photonic.hpp"

namespace biphoton {

enum class LightKind { One, Two };
enum class TwoLightKind { PUP2, CUP2, FPUP, FCUP };

const char* to_string(TwoLightKind k);

struct EnsembleMember {
  double weight;
  std::variant<PhotonState, Biphoton> state;
  std::string tag;
};

class Ensemble {
 public:
  // Validates: at least one member, finite weights >= 0 summing to 1 within
  // 1e-12, and a uniform member kind.
  explicit Ensemble(std::vector<EnsembleMember> members);

  LightKind kind() const { return kind_; }
  const std::vector<EnsembleMember>& members() const { return members_; }
  std::size_t size() const { return members_.size(); }

  // Members whose states agree up to global phase merged into one (weights
  // summed, first tag kept).
  Ensemble merged(double tol = 1e-12) const;

 private:
  std::vector<EnsembleMember> members_;
  LightKind kind_;
};

// Unpolarized single-photon light: equal halves of the two basis states.
Ensemble one_light(Basis basis);

Ensemble two_light(TwoLightKind kind);

// 2x2 (one-light) or 3x3 (two-light, biphoton coordinates) density matrix.
DensityMatrix ensemble_density(const Ensemble& e);

// n independent member draws by weight; deterministic in the seed.
std::vector<std::size_t> sample_member_indices(const Ensemble& e,
                                               std::size_t n,
                                               std::uint64_t seed);

struct EnsembleDraw {
  std::variant<PhotonState, Biphoton> state;
  std::string tag;
};

std::vector<EnsembleDraw> sample_sequence(const Ensemble& e, std::size_t n,
                                          std::uint64_t seed);

}  // namespace biphoton
