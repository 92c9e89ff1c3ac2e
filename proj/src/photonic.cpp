#include "biphoton/photonic.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace biphoton {

using qmath::Complex;
using qmath::ComplexMatrix;
using qmath::ComplexVector;

namespace {

constexpr double kNormTol = 1e-12;
const double kInvSqrt2 = 1.0 / std::numbers::sqrt2;

void require_unit(const ComplexVector& v, std::size_t dim, const char* what) {
  if (v.dim() != dim) throw std::invalid_argument(std::string(what) + ": wrong dimension");
  if (!qmath::is_finite(v))
    throw std::invalid_argument(std::string(what) + ": non-finite amplitude");
  if (std::abs(v.norm() - 1.0) > kNormTol)
    throw std::invalid_argument(std::string(what) + ": not normalized");
}

}  // namespace

Basis family(Polarization p) {
  return (p == Polarization::H || p == Polarization::V) ? Basis::Plane
                                                        : Basis::Circular;
}

const char* to_string(Polarization p) {
  switch (p) {
    case Polarization::H: return "H";
    case Polarization::V: return "V";
    case Polarization::R: return "R";
    case Polarization::L: return "L";
  }
  return "?";
}

const char* to_string(Basis b) {
  return b == Basis::Plane ? "plane" : "circular";
}

PhotonState::PhotonState(ComplexVector a) : amp(std::move(a)) {
  require_unit(amp, 2, "PhotonState");
}

EPRState::EPRState(ComplexVector a) : amp(std::move(a)) {
  require_unit(amp, 4, "EPRState");
}

Biphoton::Biphoton(ComplexVector a) : amp(std::move(a)) {
  require_unit(amp, 3, "Biphoton");
}

ComplexVector canonical_phase(const ComplexVector& v) {
  for (std::size_t i = 0; i < v.dim(); ++i) {
    const double mag = std::abs(v[i]);
    if (mag > 1e-12) {
      const Complex phase = std::conj(v[i]) / mag;
      return phase * v;
    }
  }
  return v;
}

PhotonState basis_state(Polarization p) {
  switch (p) {
    case Polarization::H: return PhotonState(ComplexVector{1.0, 0.0});
    case Polarization::V: return PhotonState(ComplexVector{0.0, 1.0});
    case Polarization::R:
      return PhotonState(ComplexVector{kInvSqrt2, Complex(0.0, kInvSqrt2)});
    case Polarization::L:
      return PhotonState(ComplexVector{kInvSqrt2, Complex(0.0, -kInvSqrt2)});
  }
  throw std::invalid_argument("unknown polarization");
}

PhotonState orthogonal_of(const PhotonState& psi) {
  ComplexVector v{-std::conj(psi.amp[1]), std::conj(psi.amp[0])};
  return PhotonState(canonical_phase(v));
}

EPRState epr_state() {
  return EPRState(ComplexVector{kInvSqrt2, 0.0, 0.0, -kInvSqrt2});
}

Biphoton biphoton_2h() { return Biphoton(ComplexVector{1.0, 0.0, 0.0}); }
Biphoton biphoton_sym() { return Biphoton(ComplexVector{0.0, 1.0, 0.0}); }
Biphoton biphoton_2v() { return Biphoton(ComplexVector{0.0, 0.0, 1.0}); }

Biphoton biphoton_2r() {
  return Biphoton(ComplexVector{0.5, Complex(0.0, kInvSqrt2), -0.5});
}

Biphoton biphoton_2l() {
  return Biphoton(ComplexVector{0.5, Complex(0.0, -kInvSqrt2), -0.5});
}

Biphoton biphoton_sym_circular() {
  return Biphoton(ComplexVector{kInvSqrt2, 0.0, kInvSqrt2});
}

SymmetrizedPair symmetrize_pair(const PhotonState& a, const PhotonState& b) {
  const ComplexVector pair = qmath::tensor(a.amp, b.amp);
  const ComplexVector coords = biphoton_projector() * pair;
  double weight = 0.0;
  for (std::size_t i = 0; i < coords.dim(); ++i) weight += std::norm(coords[i]);
  if (weight < 1e-14)
    throw std::invalid_argument("symmetrize_pair: no symmetric component");
  return SymmetrizedPair{Biphoton(coords.normalized()), weight};
}

qmath::ComplexVector biphoton_in_basis(const Biphoton& b, Basis basis) {
  if (basis == Basis::Plane) return b.amp;
  const ComplexMatrix rot = induced_biphoton_unitary(circular_change_of_basis());
  return rot.adjoint() * b.amp;
}

ComplexMatrix circular_change_of_basis() {
  ComplexMatrix u(2, 2);
  u.at(0, 0) = kInvSqrt2;
  u.at(1, 0) = Complex(0.0, kInvSqrt2);
  u.at(0, 1) = kInvSqrt2;
  u.at(1, 1) = Complex(0.0, -kInvSqrt2);
  return u;
}

ComplexMatrix biphoton_projector() {
  ComplexMatrix p(3, 4);
  p.at(0, 0) = 1.0;
  p.at(1, 1) = kInvSqrt2;
  p.at(1, 2) = kInvSqrt2;
  p.at(2, 3) = 1.0;
  return p;
}

ComplexVector embed_biphoton(const Biphoton& b) {
  return biphoton_projector().adjoint() * b.amp;
}

ComplexMatrix induced_biphoton_unitary(const ComplexMatrix& u) {
  if (u.rows != 2 || u.cols != 2)
    throw std::invalid_argument("induced_biphoton_unitary expects a 2x2 matrix");
  const ComplexMatrix p = biphoton_projector();
  return p * qmath::tensor(u, u) * p.adjoint();
}

std::optional<std::string> recognize_biphoton(const Biphoton& b, double tol) {
  const std::array<std::pair<const char*, Biphoton>, 6> named = {{
      {"2H", biphoton_2h()},
      {"HV", biphoton_sym()},
      {"2V", biphoton_2v()},
      {"2R", biphoton_2r()},
      {"RL", biphoton_sym_circular()},
      {"2L", biphoton_2l()},
  }};
  for (const auto& [name, state] : named) {
    if (std::abs(qmath::inner(state.amp, b.amp)) >= 1.0 - tol)
      return std::string(name);
  }
  return std::nullopt;
}

}  // namespace biphoton
