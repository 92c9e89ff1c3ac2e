// Acceptance gate: one pass/fail line per headline result of the library.
// Exits nonzero if any criterion fails.
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <vector>

#include "biphoton/channels.hpp"
#include "biphoton/ensembles.hpp"
#include "biphoton/epr.hpp"
#include "biphoton/measurement.hpp"
#include "biphoton/nogo.hpp"
#include "biphoton/photonic.hpp"
#include "biphoton/qmath.hpp"
#include "biphoton/rng.hpp"
#include "testutil.hpp"

using namespace biphoton;
using qmath::Complex;
using qmath::ComplexMatrix;
using qmath::ComplexVector;

namespace {

bool near(double a, double b, double tol) { return std::abs(a - b) <= tol; }

ComplexMatrix scaled_identity(std::size_t n, double s) {
  return Complex(s, 0.0) * ComplexMatrix::identity(n);
}

// 1. The four named two-light ensembles give the exact beamsplitter table.
bool table_reproduction() {
  const struct {
    TwoLightKind kind;
    double hh, vv, hv, r;
    std::array<long, 3> ratio;
  } rows[] = {
      {TwoLightKind::PUP2, 1.0 / 3, 1.0 / 3, 1.0 / 3, 2.0, {1, 1, 1}},
      {TwoLightKind::CUP2, 1.0 / 3, 1.0 / 3, 1.0 / 3, 2.0, {1, 1, 1}},
      {TwoLightKind::FPUP, 0.25, 0.25, 0.5, 1.0, {1, 1, 2}},
      {TwoLightKind::FCUP, 0.375, 0.375, 0.25, 3.0, {3, 3, 2}},
  };
  bool ok = true;
  for (const auto& row : rows) {
    const OutcomeStats s = ensemble_stats(two_light(row.kind));
    ok = ok && near(s.p_hh, row.hh, 1e-12) && near(s.p_vv, row.vv, 1e-12) &&
         near(s.p_hv, row.hv, 1e-12);
    ok = ok && s.ratio_r.has_value() && near(*s.ratio_r, row.r, 1e-12);
    ok = ok && smallest_integer_ratio(s) == row.ratio;
  }
  return ok;
}

// 2. Plane and circular unpolarized light share one density, for single
// photons (I/2) and for photon pairs (I/3).
bool unpolarized_indistinguishability() {
  const ComplexMatrix half = scaled_identity(2, 0.5);
  const ComplexMatrix third = scaled_identity(3, 1.0 / 3);
  bool ok = true;
  ok = ok && qmath::max_abs_diff(ensemble_density(one_light(Basis::Plane)),
                                 half) <= 1e-12;
  ok = ok && qmath::max_abs_diff(ensemble_density(one_light(Basis::Circular)),
                                 half) <= 1e-12;
  ok = ok && qmath::max_abs_diff(ensemble_density(two_light(TwoLightKind::PUP2)),
                                 third) <= 1e-12;
  ok = ok && qmath::max_abs_diff(ensemble_density(two_light(TwoLightKind::CUP2)),
                                 third) <= 1e-12;
  return ok;
}

// 3. The optimal cloner misclones exactly 1/3 of the time for every pure
// input, reaches single-copy fidelity 5/6, and cannot tell the source basis
// of unpolarized light.
bool cloner_statistics() {
  bool ok = true;
  Rng rng(101);
  std::vector<PhotonState> inputs;
  for (Polarization p :
       {Polarization::H, Polarization::V, Polarization::R, Polarization::L})
    inputs.push_back(basis_state(p));
  for (int k = 0; k < 20; ++k)
    inputs.push_back(PhotonState(testutil::random_state(2, rng)));

  const ComplexMatrix proj = biphoton_projector();
  for (const PhotonState& z : inputs) {
    const DensityMatrix out = mandel_clone(qmath::outer(z.amp, z.amp));
    const Biphoton zz = symmetrize_pair(z, z).state;
    const double p_keep = std::real(qmath::inner(zz.amp, out * zz.amp));
    ok = ok && near(1.0 - p_keep, 1.0 / 3, 1e-12);

    const ComplexMatrix pair_rho = proj.adjoint() * out * proj;
    const ComplexMatrix one =
        qmath::partial_trace(pair_rho, qmath::Subsystem::Second);
    const double fidelity = std::real(qmath::inner(z.amp, one * z.amp));
    ok = ok && near(fidelity, 5.0 / 6, 1e-12);
  }

  const Ensemble plane = clone_ensemble(one_light(Basis::Plane));
  const Ensemble circ = clone_ensemble(one_light(Basis::Circular));
  const ComplexMatrix third = scaled_identity(3, 1.0 / 3);
  ok = ok && qmath::max_abs_diff(ensemble_density(plane),
                                 ensemble_density(circ)) <= 1e-12;
  ok = ok && qmath::max_abs_diff(ensemble_density(plane), third) <= 1e-12;
  return ok;
}

// 4. Linearity pins every pairwise wedding machine to one family: cross
// amplitudes at half the like-pair power, a lossless machine far off the
// family, random machines never accidentally on it, and the surviving family
// wedding only half of the unlike pairs.
bool nogo_certification() {
  const ConstraintFamily fam = solve_constraint_family();
  bool ok = fam.kernel_dimension == 2;
  ok = ok && near(fam.power_ratio, 0.5, 1e-10);
  ok = ok && fam.max_equality_violation <= 1e-10;
  ok = ok && std::abs(fam.relative_phase) <= 1e-10;
  ok = ok && fam.sink_unconstrained;

  ok = ok && build_residuals(MarriageMillSpec::perfect()).norm > 0.1;

  Rng rng(202);
  double least = 1e300;
  for (int k = 0; k < 10000; ++k) {
    MarriageMillSpec s;
    s.a_h = testutil::random_complex(rng);
    s.a_v = testutil::random_complex(rng);
    s.a_m = testutil::random_complex(rng);
    s.a_n = testutil::random_complex(rng);
    s.a_r = testutil::random_complex(rng);
    s.a_l = testutil::random_complex(rng);
    s.a_e = testutil::random_complex(rng);
    s.a_f = testutil::random_complex(rng);
    s.a_z = testutil::random_complex(rng);
    least = std::min(least, build_residuals(s).norm);
  }
  ok = ok && least > 1e-3;

  ok = ok && near(probability_deficit(MarriageMillSpec::canonical()), 0.5,
                  1e-12);
  return ok;
}

// 5. Post-selecting the wed output of the surviving family erases the
// difference between plane and circular sources (ordinary two-light, R = 2),
// while forcing the lossless machine would leave a visible difference.
bool fat_light_erasure() {
  const MarriageMillSpec canon = MarriageMillSpec::canonical();
  const FatLightCertificate plane = certify_no_fat_light(canon, Basis::Plane);
  const FatLightCertificate circ =
      certify_no_fat_light(canon, Basis::Circular);
  bool ok = plane.on_manifold && circ.on_manifold;
  ok = ok && plane.ordinary_two_light && circ.ordinary_two_light;
  ok = ok && qmath::max_abs_diff(plane.density, circ.density) <= 1e-12;
  for (const FatLightCertificate* cert : {&plane, &circ}) {
    const OutcomeStats s = ensemble_stats(cert->wed_ensemble);
    ok = ok && s.ratio_r.has_value() && near(*s.ratio_r, 2.0, 1e-12);
  }

  const MarriageMillSpec lossless = MarriageMillSpec::perfect();
  const FatLightCertificate fp = certify_no_fat_light(lossless, Basis::Plane);
  const FatLightCertificate fc =
      certify_no_fat_light(lossless, Basis::Circular);
  ok = ok && qmath::max_abs_diff(fp.density, fc.density) > 0.1;
  return ok;
}

// 6. Two-arm experiment: physical receivers show no basis dependence, the
// lossless wedding machine signals at tv = 1/4 with usable information, and
// the constrained machine hides the basis even in its no-wed rate.
bool epr_signaling() {
  const auto start = std::chrono::steady_clock::now();
  bool ok = true;

  ProtocolConfig config;
  config.n_pairs = 100000;
  config.seed = 1;

  config.strategy = BobStrategy::direct();
  const ProtocolRecord direct = run_protocol(config);
  ok = ok && !direct.signaling && direct.mutual_information_bits < 0.01;

  config.strategy = BobStrategy::mandel_clone();
  const ProtocolRecord clone = run_protocol(config);
  ok = ok && !clone.signaling && clone.mutual_information_bits < 0.01;

  config.strategy = BobStrategy::wed_perfect();
  const ProtocolRecord lossless = run_protocol(config);
  ok = ok && lossless.signaling;
  // The tv estimate concentrates on p_hv(plane) - p_hv(circular) = 1/4.
  const double m1 = static_cast<double>(lossless.plane.events);
  const double m2 = static_cast<double>(lossless.circular.events);
  const double sigma_tv = std::sqrt(0.5 * 0.5 / m1 + 0.25 * 0.75 / m2);
  ok = ok && m1 > 0 && m2 > 0 &&
       std::abs(lossless.tv_distance_bases - 0.25) <= 3.0 * sigma_tv;
  ok = ok && lossless.mutual_information_bits > 0.5 * 0.04879494069539851;

  config.strategy = BobStrategy::wed_constrained();
  const ProtocolRecord constrained = run_protocol(config);
  ok = ok && !constrained.signaling;
  ok = ok && constrained.no_wed_fraction_plane.has_value() &&
       constrained.no_wed_fraction_circular.has_value();
  if (ok) {
    const double sp =
        std::sqrt(0.25 * 0.75 / static_cast<double>(constrained.plane.attempts));
    const double sc = std::sqrt(
        0.25 * 0.75 / static_cast<double>(constrained.circular.attempts));
    ok = ok && std::abs(*constrained.no_wed_fraction_plane - 0.25) <= 3.0 * sp;
    ok = ok &&
         std::abs(*constrained.no_wed_fraction_circular - 0.25) <= 3.0 * sc;
  }

  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  ok = ok && seconds < 60.0;
  return ok;
}

// 7. Two-photon interference: identical photons never coincide, orthogonal
// ones coincide half the time, and the closed form matches the
// mode-operator computation on random pairs.
bool hom_interference() {
  bool ok = true;
  ok = ok && near(hom_coincidence(basis_state(Polarization::H),
                                  basis_state(Polarization::H)),
                  0.0, 1e-12);
  ok = ok && near(hom_coincidence(basis_state(Polarization::R),
                                  basis_state(Polarization::R)),
                  0.0, 1e-12);
  ok = ok && near(hom_coincidence(basis_state(Polarization::H),
                                  basis_state(Polarization::V)),
                  0.5, 1e-12);
  ok = ok && near(hom_coincidence(basis_state(Polarization::R),
                                  basis_state(Polarization::L)),
                  0.5, 1e-12);

  Rng rng(303);
  for (int k = 0; k < 50; ++k) {
    const PhotonState a(testutil::random_state(2, rng));
    const PhotonState b(testutil::random_state(2, rng));
    const double got = hom_coincidence(a, b);
    const double overlap = std::norm(qmath::inner(a.amp, b.amp));
    ok = ok && near(got, 0.5 * (1.0 - overlap), 1e-12);
    ok = ok && near(got, testutil::hom_coincidence_oracle(a, b), 1e-12);
  }
  return ok;
}

// 8. Structural properties: cloner linearity and rotation covariance, Bob's
// processed marginal independent of Alice's measurement choice, determinism
// of seeded sampling, and every constructed density well formed.
bool property_suites() {
  bool ok = true;
  Rng rng(404);

  for (int k = 0; k < 100; ++k) {
    const DensityMatrix r1 = testutil::random_density(2, rng);
    const DensityMatrix r2 = testutil::random_density(2, rng);
    const double w = rng.uniform();
    const DensityMatrix mix =
        Complex(w, 0.0) * r1 + Complex(1.0 - w, 0.0) * r2;
    const DensityMatrix split = Complex(w, 0.0) * mandel_clone(r1) +
                                Complex(1.0 - w, 0.0) * mandel_clone(r2);
    ok = ok && qmath::max_abs_diff(mandel_clone(mix), split) <= 1e-10;

    const ComplexMatrix u = testutil::haar_unitary(2, rng);
    const ComplexMatrix w3 = induced_biphoton_unitary(u);
    const DensityMatrix rotated = mandel_clone(u * r1 * u.adjoint());
    ok = ok && qmath::max_abs_diff(rotated,
                                   w3 * mandel_clone(r1) * w3.adjoint()) <=
                   1e-10;
  }

  // Any POVM on one photon of the shared pair, followed by any complete
  // channel on the other, leaves the distant marginal fixed at its average.
  const ComplexVector pair = epr_state().amp;
  const DensityMatrix rho_ab = qmath::outer(pair, pair);
  const ComplexMatrix eye2 = ComplexMatrix::identity(2);
  const ComplexMatrix half = scaled_identity(2, 0.5);
  for (int k = 0; k < 100; ++k) {
    const KrausChannel povm_source =
        testutil::random_channel(2, 2 + k % 3, rng);
    const KrausChannel lambda = testutil::random_channel(2, 2 + (k + 1) % 3, rng);
    ComplexMatrix marginal(2, 2);
    ComplexMatrix processed(2, 2);
    for (const ComplexMatrix& op : povm_source.ops) {
      const ComplexMatrix effect = op.adjoint() * op;
      const ComplexMatrix cond = qmath::partial_trace(
          qmath::tensor(effect, eye2) * rho_ab, qmath::Subsystem::First);
      marginal = marginal + cond;
      processed = processed + apply_channel(lambda, cond);
    }
    ok = ok && qmath::max_abs_diff(marginal, half) <= 1e-12;
    ok = ok &&
         qmath::max_abs_diff(processed, apply_channel(lambda, half)) <= 1e-12;
  }

  // Seeded operations replay exactly.
  const Ensemble fcup = two_light(TwoLightKind::FCUP);
  const OutcomeCounts c1 = sample_stats(fcup, 4000, 77);
  const OutcomeCounts c2 = sample_stats(fcup, 4000, 77);
  ok = ok && c1.hh == c2.hh && c1.vv == c2.vv && c1.hv == c2.hv;
  const auto m1 = measure_single(half, Basis::Circular, 99);
  const auto m2 = measure_single(half, Basis::Circular, 99);
  ok = ok && m1.first == m2.first &&
       qmath::max_abs_diff(m1.second.amp, m2.second.amp) == 0.0;
  ProtocolConfig config;
  config.n_pairs = 2000;
  config.strategy = BobStrategy::wed_constrained();
  config.seed = 5;
  const ProtocolRecord p1 = run_protocol(config);
  const ProtocolRecord p2 = run_protocol(config);
  ok = ok && p1.tv_distance_bases == p2.tv_distance_bases &&
       p1.plane.counts == p2.plane.counts &&
       p1.circular.counts == p2.circular.counts;

  // Every density the library constructs is a valid state.
  std::vector<DensityMatrix> densities{
      ensemble_density(one_light(Basis::Plane)),
      ensemble_density(one_light(Basis::Circular)),
      ensemble_density(two_light(TwoLightKind::PUP2)),
      ensemble_density(two_light(TwoLightKind::CUP2)),
      ensemble_density(two_light(TwoLightKind::FPUP)),
      ensemble_density(two_light(TwoLightKind::FCUP)),
      mandel_clone(qmath::outer(basis_state(Polarization::H).amp,
                                basis_state(Polarization::H).amp)),
      mandel_clone(testutil::random_density(2, rng)),
      certify_no_fat_light(MarriageMillSpec::canonical(), Basis::Plane)
          .density,
      certify_no_fat_light(MarriageMillSpec::perfect(), Basis::Circular)
          .density,
  };
  for (const DensityMatrix& rho : densities)
    ok = ok && qmath::validate_density(rho).valid();
  return ok;
}

struct Criterion {
  const char* label;
  bool (*check)();
};

}  // namespace

int main() {
  const Criterion criteria[] = {
      {"beamsplitter table of the four two-light ensembles", table_reproduction},
      {"plane and circular unpolarized light share one density",
       unpolarized_indistinguishability},
      {"cloner error rate 1/3, fidelity 5/6, source basis hidden",
       cloner_statistics},
      {"wedding machines obey the half-power linearity family",
       nogo_certification},
      {"surviving mill output is ordinary two-light in both bases",
       fat_light_erasure},
      {"two-arm experiment separates physical and lossless receivers",
       epr_signaling},
      {"two-photon coincidence law matches the mode-operator oracle",
       hom_interference},
      {"linearity, covariance, no-signaling and determinism properties",
       property_suites},
  };

  bool all_ok = true;
  for (const Criterion& c : criteria) {
    bool ok = false;
    try {
      ok = c.check();
    } catch (const std::exception& e) {
      std::printf("       (%s threw: %s)\n", c.label, e.what());
      ok = false;
    }
    std::printf("[%s] %s\n", ok ? "PASS" : "FAIL", c.label);
    if (!ok) all_ok = false;
  }
  return all_ok ? 0 : 1;
}
