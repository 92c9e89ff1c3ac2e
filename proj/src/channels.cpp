#include "biphoton/channels.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace biphoton {

using qmath::Complex;
using qmath::ComplexMatrix;
using qmath::ComplexVector;

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

double clamp01(double p) { return std::min(1.0, std::max(0.0, p)); }

}  // namespace

const char* to_string(ChannelVerdict v) {
  switch (v) {
    case ChannelVerdict::Complete: return "complete";
    case ChannelVerdict::TraceDecreasing: return "trace-decreasing";
    case ChannelVerdict::Invalid: return "invalid";
  }
  return "?";
}

ChannelVerdict validate_channel(const KrausChannel& ch, double tol) {
  if (ch.ops.empty()) throw std::invalid_argument("channel has no operators");
  const std::size_t din = ch.ops.front().cols;
  ComplexMatrix sum(din, din);
  for (const ComplexMatrix& k : ch.ops) {
    if (k.cols != din || k.rows != ch.ops.front().rows)
      throw std::invalid_argument("channel operator shape mismatch");
    sum = sum + k.adjoint() * k;
  }
  // Spectrum of I - sum K^dag K decides the verdict.
  const ComplexMatrix gap = ComplexMatrix::identity(din) - sum;
  const std::vector<double> ev = qmath::hermitian_eigenvalues(gap);
  const double lo = ev.front();
  const double hi = ev.back();
  if (lo < -tol) return ChannelVerdict::Invalid;
  if (hi <= tol) return ChannelVerdict::Complete;
  return ChannelVerdict::TraceDecreasing;
}

DensityMatrix apply_channel(const KrausChannel& ch, const DensityMatrix& rho) {
  if (ch.ops.empty()) throw std::invalid_argument("channel has no operators");
  const std::size_t dout = ch.ops.front().rows;
  ComplexMatrix out(dout, dout);
  for (const ComplexMatrix& k : ch.ops) out = out + k * rho * k.adjoint();
  return out;
}

ComplexMatrix choi_matrix(const MatrixMap& map, std::size_t din,
                          std::size_t dout) {
  ComplexMatrix choi(din * dout, din * dout);
  for (std::size_t i = 0; i < din; ++i)
    for (std::size_t j = 0; j < din; ++j) {
      ComplexMatrix unit(din, din);
      unit.at(i, j) = 1.0;
      const ComplexMatrix block = map(unit);
      if (block.rows != dout || block.cols != dout)
        throw std::invalid_argument("choi_matrix: map output has wrong shape");
      for (std::size_t r = 0; r < dout; ++r)
        for (std::size_t c = 0; c < dout; ++c)
          choi.at(i * dout + r, j * dout + c) = block.at(r, c);
    }
  return choi;
}

KrausChannel kraus_from_map(const MatrixMap& map, std::size_t din,
                            std::size_t dout, double tol) {
  const ComplexMatrix choi = choi_matrix(map, din, dout);
  const qmath::EigenSystem es = qmath::hermitian_eigensystem(choi);
  KrausChannel ch;
  for (std::size_t k = 0; k < es.values.size(); ++k) {
    const double lambda = es.values[k];
    if (lambda < -1e-9)
      throw std::invalid_argument("kraus_from_map: map is not CP");
    if (lambda <= tol) continue;
    const double scale = std::sqrt(lambda);
    ComplexMatrix op(dout, din);
    for (std::size_t i = 0; i < din; ++i)
      for (std::size_t r = 0; r < dout; ++r)
        op.at(r, i) = scale * es.vectors.at(i * dout + r, k);
    ch.ops.push_back(std::move(op));
  }
  return ch;
}

DensityMatrix mandel_clone(const DensityMatrix& rho) {
  if (rho.rows != 2 || rho.cols != 2)
    throw std::invalid_argument("mandel_clone expects a 2x2 density matrix");
  if (!qmath::validate_density(rho).valid())
    throw std::invalid_argument("mandel_clone: input is not a density matrix");
  const ComplexMatrix s = qmath::symmetric_projector();
  const ComplexMatrix p = biphoton_projector();
  const ComplexMatrix grown =
      s * qmath::tensor(rho, ComplexMatrix::identity(2)) * s;
  return Complex{2.0 / 3.0} * (p * grown * p.adjoint());
}

Ensemble clone_ensemble(const Ensemble& light) {
  if (light.kind() != LightKind::One)
    throw std::invalid_argument("clone_ensemble expects a one-light ensemble");
  std::vector<EnsembleMember> out;
  for (const EnsembleMember& m : light.members()) {
    const PhotonState& photon = std::get<PhotonState>(m.state);
    const DensityMatrix cloned =
        mandel_clone(qmath::outer(photon.amp, photon.amp));
    const qmath::EigenSystem es = qmath::hermitian_eigensystem(cloned);
    for (std::size_t k = es.values.size(); k-- > 0;) {
      const double branch = es.values[k];
      if (branch <= 1e-12) continue;
      ComplexVector vec(3);
      for (std::size_t r = 0; r < 3; ++r) vec[r] = es.vectors.at(r, k);
      Biphoton state(canonical_phase(vec));
      std::string tag = recognize_biphoton(state).value_or(
          m.tag + "/" + std::to_string(es.values.size() - 1 - k));
      out.push_back({m.weight * branch, std::move(state), std::move(tag)});
    }
  }
  return Ensemble(std::move(out)).merged();
}

double MarriageMillSpec::row_norm_excess() const {
  const double sink = std::norm(a_z);
  double worst = 0.0;
  for (double like : {std::norm(a_h), std::norm(a_v), std::norm(a_r),
                      std::norm(a_l)})
    worst = std::max(worst, like - 1.0);
  for (double cross : {std::norm(a_m), std::norm(a_n), std::norm(a_e),
                       std::norm(a_f)})
    worst = std::max(worst, cross + sink - 1.0);
  return worst;
}

bool MarriageMillSpec::physical(double tol) const {
  return row_norm_excess() <= tol;
}

MarriageMillSpec MarriageMillSpec::canonical() {
  return from_family(1.0, kInvSqrt2);
}

MarriageMillSpec MarriageMillSpec::perfect() {
  return MarriageMillSpec{1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 0.0};
}

MarriageMillSpec MarriageMillSpec::from_family(Complex a_s, Complex a_z) {
  const Complex a_o = a_s * kInvSqrt2;
  return MarriageMillSpec{a_s, a_s, a_o, a_o, a_s, a_s, a_o, a_o, a_z};
}

MillImage mill_linear_extension(const MarriageMillSpec& spec,
                                const ComplexVector& pair) {
  if (pair.dim() != 4)
    throw std::invalid_argument(
        "mill_linear_extension expects a two-photon product vector");
  MillImage img;
  img.wed[0] = spec.a_h * pair[0];
  img.wed[1] = spec.a_m * pair[1] + spec.a_n * pair[2];
  img.wed[2] = spec.a_v * pair[3];
  img.unwed = spec.a_z * (pair[1] - pair[2]);
  return img;
}

double MillOutcome::wed_probability() const {
  double p = 0.0;
  for (const MillBranch& b : branches)
    if (std::holds_alternative<Biphoton>(b.result)) p += b.probability;
  return p;
}

MillOutcome mill_apply(const MarriageMillSpec& spec, Polarization first,
                       Polarization second) {
  if (family(first) != family(second))
    throw std::invalid_argument("mill_apply: photons from different bases");
  if (!spec.physical())
    throw std::invalid_argument("mill_apply: row norms exceed 1");

  Complex amp;
  Biphoton wed = biphoton_2h();
  using P = Polarization;
  if (first == P::H && second == P::H) {
    amp = spec.a_h;
  } else if (first == P::V && second == P::V) {
    amp = spec.a_v;
    wed = biphoton_2v();
  } else if (first == P::H && second == P::V) {
    amp = spec.a_m;
    wed = biphoton_sym();
  } else if (first == P::V && second == P::H) {
    amp = spec.a_n;
    wed = biphoton_sym();
  } else if (first == P::R && second == P::R) {
    amp = spec.a_r;
    wed = biphoton_2r();
  } else if (first == P::L && second == P::L) {
    amp = spec.a_l;
    wed = biphoton_2l();
  } else if (first == P::R && second == P::L) {
    amp = spec.a_e;
    wed = biphoton_sym_circular();
  } else {
    amp = spec.a_f;
    wed = biphoton_sym_circular();
  }

  const double p_wed = clamp01(std::norm(amp));
  const double p_unwed = 1.0 - p_wed;
  MillOutcome outcome;
  if (p_wed > 1e-15) outcome.branches.push_back({p_wed, wed});
  if (p_unwed > 1e-15) outcome.branches.push_back({p_unwed, UnwedTag{}});
  return outcome;
}

double hom_coincidence(const PhotonState& a, const PhotonState& b) {
  const double overlap = std::norm(qmath::inner(a.amp, b.amp));
  return clamp01((1.0 - overlap) / 2.0);
}

}  // namespace biphoton
