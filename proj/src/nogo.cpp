#include "biphoton/nogo.hpp"

#include <cmath>
#include <stdexcept>

namespace biphoton {

using qmath::Complex;
using qmath::ComplexMatrix;
using qmath::ComplexVector;

namespace {

struct CircularRow {
  const char* name;
  Polarization first, second;
  Complex MarriageMillSpec::* amplitude;
  Biphoton (*wed_state)();
  // Sink amplitude of the row as a multiple of a_z; fixed by the same
  // consistency pattern the plane rows use (see MarriageMillSpec).
  Complex sink_factor;
};

const std::array<CircularRow, 4>& circular_rows() {
  static const std::array<CircularRow, 4> rows = {{
      {"RR", Polarization::R, Polarization::R, &MarriageMillSpec::a_r,
       &biphoton_2r, Complex{0.0, 0.0}},
      {"LL", Polarization::L, Polarization::L, &MarriageMillSpec::a_l,
       &biphoton_2l, Complex{0.0, 0.0}},
      {"RL", Polarization::R, Polarization::L, &MarriageMillSpec::a_e,
       &biphoton_sym_circular, Complex{0.0, -1.0}},
      {"LR", Polarization::L, Polarization::R, &MarriageMillSpec::a_f,
       &biphoton_sym_circular, Complex{0.0, 1.0}},
  }};
  return rows;
}

ComplexVector product_pair(Polarization a, Polarization b) {
  return qmath::tensor(basis_state(a).amp, basis_state(b).amp);
}

MarriageMillSpec spec_from_array(const std::array<Complex, 9>& a) {
  return MarriageMillSpec{a[0], a[1], a[2], a[3], a[4], a[5], a[6], a[7], a[8]};
}

ConstraintSummary summarize(const MarriageMillSpec& s) {
  ConstraintSummary out;
  const std::array<Complex, 4> same = {s.a_h, s.a_v, s.a_r, s.a_l};
  const std::array<Complex, 4> cross = {s.a_m, s.a_n, s.a_e, s.a_f};
  for (const Complex& c : same) out.a_same_mean += 0.25 * c;
  for (const Complex& c : cross) out.a_cross_mean += 0.25 * c;
  for (const Complex& c : same)
    out.same_spread = std::max(out.same_spread, std::abs(c - out.a_same_mean));
  for (const Complex& c : cross)
    out.cross_spread =
        std::max(out.cross_spread, std::abs(c - out.a_cross_mean));
  return out;
}

}  // namespace

double InputResidual::norm() const {
  double s = std::norm(unwed);
  for (const Complex& c : wed) s += std::norm(c);
  return std::sqrt(s);
}

double ConstraintSummary::power_ratio() const {
  return std::norm(a_cross_mean) / std::norm(a_same_mean);
}

ResidualReport build_residuals(const MarriageMillSpec& spec) {
  ResidualReport report;
  double total = 0.0;
  for (std::size_t k = 0; k < 4; ++k) {
    const CircularRow& row = circular_rows()[k];
    const MillImage ext =
        mill_linear_extension(spec, product_pair(row.first, row.second));
    const Complex claimed_amp = spec.*(row.amplitude);
    const ComplexVector wed_claim = row.wed_state().amp;
    InputResidual r;
    r.input = row.name;
    for (std::size_t i = 0; i < 3; ++i)
      r.wed[i] = ext.wed[i] - claimed_amp * wed_claim[i];
    r.unwed = ext.unwed - row.sink_factor * spec.a_z;
    total += r.norm() * r.norm();
    report.residuals[k] = std::move(r);
  }
  report.norm = std::sqrt(total);
  report.summary = summarize(spec);
  return report;
}

ConstraintFamily solve_constraint_family(double tol) {
  // The residual map is linear in the nine amplitudes; assemble its 16x9
  // matrix column by column from unit specs.
  ComplexMatrix m(16, 9);
  for (std::size_t col = 0; col < 9; ++col) {
    std::array<Complex, 9> unit{};
    unit[col] = 1.0;
    const ResidualReport r = build_residuals(spec_from_array(unit));
    for (std::size_t k = 0; k < 4; ++k) {
      for (std::size_t i = 0; i < 3; ++i)
        m.at(4 * k + i, col) = r.residuals[k].wed[i];
      m.at(4 * k + 3, col) = r.residuals[k].unwed;
    }
  }

  const ComplexMatrix kernel = qmath::nullspace(m);
  ConstraintFamily family;
  family.kernel_dimension = static_cast<int>(kernel.cols);

  // Is the pure-sink direction e_z inside the kernel? Kernel columns are
  // orthonormal, so the projection is kernel * (kernel^dag e_z).
  ComplexVector e_z(9);
  e_z[8] = 1.0;
  ComplexVector proj(9);
  for (std::size_t c = 0; c < kernel.cols; ++c) {
    Complex coef = 0.0;
    for (std::size_t rr = 0; rr < 9; ++rr)
      coef += std::conj(kernel.at(rr, c)) * e_z[rr];
    for (std::size_t rr = 0; rr < 9; ++rr)
      proj[rr] += coef * kernel.at(rr, c);
  }
  family.sink_unconstrained = qmath::max_abs_diff(proj, e_z) <= tol;

  // Remove the sink coordinate from the kernel and keep the longest
  // remaining direction: the wed amplitude family.
  ComplexVector best(9);
  double best_norm = 0.0;
  for (std::size_t c = 0; c < kernel.cols; ++c) {
    ComplexVector v(9);
    for (std::size_t rr = 0; rr < 8; ++rr) v[rr] = kernel.at(rr, c);
    if (v.norm() > best_norm) {
      best_norm = v.norm();
      best = v;
    }
  }
  if (best_norm < tol)
    throw std::runtime_error("constraint family has no wed direction");
  if (std::abs(best[0]) < tol)
    throw std::runtime_error("constraint family is degenerate at a_h");
  const Complex scale = 1.0 / best[0];
  std::array<Complex, 9> canonical{};
  for (std::size_t rr = 0; rr < 9; ++rr) canonical[rr] = scale * best[rr];

  const ConstraintSummary s = summarize(spec_from_array(canonical));
  family.a_same = s.a_same_mean;
  family.a_cross = s.a_cross_mean;
  family.max_equality_violation = std::max(s.same_spread, s.cross_spread);
  family.power_ratio = s.power_ratio();
  family.relative_phase = std::arg(s.a_cross_mean / s.a_same_mean);
  family.wed_deficit = 1.0 - std::norm(s.a_cross_mean / s.a_same_mean);
  return family;
}

double probability_deficit(const MarriageMillSpec& spec, double tol) {
  const ResidualReport r = build_residuals(spec);
  if (r.norm > tol)
    throw std::invalid_argument(
        "probability_deficit: spec is off the constraint manifold");
  return 1.0 - std::norm(r.summary.a_cross_mean);
}

FatLightCertificate certify_no_fat_light(const MarriageMillSpec& spec,
                                         Basis source, double tol) {
  const ResidualReport residual = build_residuals(spec);

  const std::array<Polarization, 2> labels =
      source == Basis::Plane
          ? std::array<Polarization, 2>{Polarization::H, Polarization::V}
          : std::array<Polarization, 2>{Polarization::R, Polarization::L};

  // Consecutive photons of unpolarized one-light: four ordered label pairs,
  // each with probability 1/4.
  std::vector<EnsembleMember> wed;
  double unwed = 0.0;
  for (Polarization first : labels)
    for (Polarization second : labels) {
      const MillOutcome outcome = mill_apply(spec, first, second);
      for (const MillBranch& branch : outcome.branches) {
        if (const auto* b = std::get_if<Biphoton>(&branch.result)) {
          const std::string tag = recognize_biphoton(*b).value_or(
              std::string(to_string(first)) + to_string(second));
          wed.push_back({0.25 * branch.probability, *b, tag});
        } else {
          unwed += 0.25 * branch.probability;
        }
      }
    }

  const double wed_total = 1.0 - unwed;
  if (wed_total < 1e-12)
    throw std::invalid_argument("certify_no_fat_light: mill weds nothing");
  for (EnsembleMember& m : wed) m.weight /= wed_total;

  FatLightCertificate cert{
      Ensemble(std::move(wed)).merged(),
      unwed,
      DensityMatrix{},
      residual.norm,
      residual.norm <= tol,
      0.0,
      false,
  };
  cert.density = ensemble_density(cert.wed_ensemble);
  cert.diff_from_ordinary = qmath::max_abs_diff(
      cert.density, ensemble_density(two_light(TwoLightKind::PUP2)));
  cert.ordinary_two_light = cert.diff_from_ordinary <= qmath::kAnalyticTol;
  return cert;
}

}  // namespace biphoton
