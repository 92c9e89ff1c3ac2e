// Polarization qubits and biphotons.
//
// Conventions fixed for the whole library:
//   plane basis      H = (1,0), V = (0,1)
//   circular basis   R = (H + iV)/sqrt2, L = (H - iV)/sqrt2
//   two-photon product order (HH, HV, VH, VV)
//   biphoton (symmetric two-photon) basis (|2H>, |s>, |2V>) with
//     |s> = (|HV> + |VH>)/sqrt2
//   global phases canonicalized so the first nonzero amplitude is real > 0
#pragma once

#include <optional>
#include <string>
#include <utility>

#include "biphoton/qmath.hpp"

namespace biphoton {

enum class Polarization { H, V, R, L };
enum class Basis { Plane, Circular };

Basis family(Polarization p);
const char* to_string(Polarization p);
const char* to_string(Basis b);

// Single photon polarization state; dim 2, unit norm.
struct PhotonState {
  qmath::ComplexVector amp;
  explicit PhotonState(qmath::ComplexVector a);
};

// Polarization-entangled photon pair (|HH> - |VV>)/sqrt2; dim 4, unit norm.
struct EPRState {
  qmath::ComplexVector amp;
  explicit EPRState(qmath::ComplexVector a);
};

// Two photons united in one mode; coordinates over (|2H>, |s>, |2V>).
struct Biphoton {
  qmath::ComplexVector amp;
  explicit Biphoton(qmath::ComplexVector a);
};

// Multiplies by a unit phase so the first amplitude above 1e-12 in magnitude
// is real and positive.
qmath::ComplexVector canonical_phase(const qmath::ComplexVector& v);

PhotonState basis_state(Polarization p);

// State orthogonal to psi, canonical phase. (cos t, sin t) -> (-sin t, cos t)
// up to the phase convention.
PhotonState orthogonal_of(const PhotonState& psi);

EPRState epr_state();

// Named biphoton basis states, in plane coordinates.
Biphoton biphoton_2h();
Biphoton biphoton_sym();  // |s>
Biphoton biphoton_2v();
Biphoton biphoton_2r();           // R (x) R
Biphoton biphoton_2l();           // L (x) L
Biphoton biphoton_sym_circular();  // (|RL> + |LR>)/sqrt2 = (|2H> + |2V>)/sqrt2

// Projection of a (x) b onto the symmetric subspace: the resulting biphoton
// and the squared norm kept by the projection.
struct SymmetrizedPair {
  Biphoton state;
  double weight;
};
SymmetrizedPair symmetrize_pair(const PhotonState& a, const PhotonState& b);

// Biphoton coordinates in the requested basis: plane returns the stored
// amplitudes, circular returns coordinates over (|2R>, |RL>, |2L>).
qmath::ComplexVector biphoton_in_basis(const Biphoton& b, Basis basis);

// 2x2 unitary whose columns are R, L expressed in the plane basis.
qmath::ComplexMatrix circular_change_of_basis();

// 3x4 map from product coordinates to biphoton coordinates; rows are the bras
// <2H|, <s|, <2V|.
qmath::ComplexMatrix biphoton_projector();

// Biphoton lifted back into product coordinates (dim 4).
qmath::ComplexVector embed_biphoton(const Biphoton& b);

// Action of u (x) u restricted to the symmetric subspace: the 3x3 biphoton
// rotation P (u (x) u) P^dagger.
qmath::ComplexMatrix induced_biphoton_unitary(const qmath::ComplexMatrix& u);

// Name of a biphoton basis state ("2H", "HV", "2V", "2R", "RL", "2L") when b
// matches one up to global phase; nullopt otherwise.
std::optional<std::string> recognize_biphoton(const Biphoton& b,
                                              double tol = 1e-9);

}  // namespace biphoton
