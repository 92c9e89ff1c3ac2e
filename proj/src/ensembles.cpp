#include "biphoton/ensembles.hpp"

#include <cmath>
#include <stdexcept>

#include "biphoton/rng.hpp"

namespace biphoton {

using qmath::Complex;
using qmath::ComplexVector;

namespace {

const ComplexVector& member_amp(const EnsembleMember& m) {
  if (const auto* p = std::get_if<PhotonState>(&m.state)) return p->amp;
  return std::get<Biphoton>(m.state).amp;
}

}  // namespace

const char* to_string(TwoLightKind k) {
  switch (k) {
    case TwoLightKind::PUP2: return "PUP2";
    case TwoLightKind::CUP2: return "CUP2";
    case TwoLightKind::FPUP: return "FPUP";
    case TwoLightKind::FCUP: return "FCUP";
  }
  return "?";
}

Ensemble::Ensemble(std::vector<EnsembleMember> members)
    : members_(std::move(members)) {
  if (members_.empty()) throw std::invalid_argument("Ensemble: no members");
  double total = 0.0;
  for (const EnsembleMember& m : members_) {
    if (!std::isfinite(m.weight) || m.weight < 0.0)
      throw std::invalid_argument("Ensemble: invalid weight");
    total += m.weight;
  }
  if (std::abs(total - 1.0) > 1e-12)
    throw std::invalid_argument("Ensemble: weights do not sum to 1");
  const bool first_is_photon =
      std::holds_alternative<PhotonState>(members_.front().state);
  for (const EnsembleMember& m : members_) {
    if (std::holds_alternative<PhotonState>(m.state) != first_is_photon)
      throw std::invalid_argument("Ensemble: mixed member kinds");
  }
  kind_ = first_is_photon ? LightKind::One : LightKind::Two;
}

Ensemble Ensemble::merged(double tol) const {
  std::vector<EnsembleMember> out;
  for (const EnsembleMember& m : members_) {
    bool absorbed = false;
    for (EnsembleMember& o : out) {
      // Same state up to global phase: |<a|b>| = 1.
      const double overlap =
          std::abs(qmath::inner(member_amp(o), member_amp(m)));
      if (std::abs(overlap - 1.0) <= tol) {
        o.weight += m.weight;
        absorbed = true;
        break;
      }
    }
    if (!absorbed) out.push_back(m);
  }
  return Ensemble(std::move(out));
}

Ensemble one_light(Basis basis) {
  const Polarization first =
      basis == Basis::Plane ? Polarization::H : Polarization::R;
  const Polarization second =
      basis == Basis::Plane ? Polarization::V : Polarization::L;
  std::vector<EnsembleMember> members;
  members.push_back({0.5, basis_state(first), to_string(first)});
  members.push_back({0.5, basis_state(second), to_string(second)});
  return Ensemble(std::move(members));
}

Ensemble two_light(TwoLightKind kind) {
  const double third = 1.0 / 3.0;
  std::vector<EnsembleMember> members;
  switch (kind) {
    case TwoLightKind::PUP2:
      members.push_back({third, biphoton_2h(), "2H"});
      members.push_back({third, biphoton_2v(), "2V"});
      members.push_back({third, biphoton_sym(), "HV"});
      break;
    case TwoLightKind::CUP2:
      members.push_back({third, biphoton_2r(), "2R"});
      members.push_back({third, biphoton_2l(), "2L"});
      members.push_back({third, biphoton_sym_circular(), "RL"});
      break;
    case TwoLightKind::FPUP:
      // |HV> and |VH> both wed into the same symmetric biphoton, so |s>
      // carries half of the weight.
      members.push_back({0.25, biphoton_2h(), "2H"});
      members.push_back({0.25, biphoton_2v(), "2V"});
      members.push_back({0.5, biphoton_sym(), "HV"});
      break;
    case TwoLightKind::FCUP:
      members.push_back({0.25, biphoton_2r(), "2R"});
      members.push_back({0.25, biphoton_2l(), "2L"});
      members.push_back({0.5, biphoton_sym_circular(), "RL"});
      break;
  }
  return Ensemble(std::move(members));
}

DensityMatrix ensemble_density(const Ensemble& e) {
  const std::size_t dim = e.kind() == LightKind::One ? 2 : 3;
  DensityMatrix rho(dim, dim);
  for (const EnsembleMember& m : e.members()) {
    const ComplexVector& a = member_amp(m);
    rho = rho + Complex{m.weight} * qmath::outer(a, a);
  }
  return rho;
}

std::vector<std::size_t> sample_member_indices(const Ensemble& e,
                                               std::size_t n,
                                               std::uint64_t seed) {
  std::vector<double> weights;
  weights.reserve(e.size());
  for (const EnsembleMember& m : e.members()) weights.push_back(m.weight);
  Rng rng(seed);
  std::vector<std::size_t> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(rng.pick(weights));
  return out;
}

std::vector<EnsembleDraw> sample_sequence(const Ensemble& e, std::size_t n,
                                          std::uint64_t seed) {
  std::vector<EnsembleDraw> out;
  out.reserve(n);
  for (std::size_t idx : sample_member_indices(e, n, seed)) {
    const EnsembleMember& m = e.members()[idx];
    out.push_back({m.state, m.tag});
  }
  return out;
}

}  // namespace biphoton
