#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>

#include "doctest.h"

#include "biphoton/nogo.hpp"
#include "testutil.hpp"

using namespace biphoton;
using qmath::Complex;
using qmath::max_abs_diff;

namespace {

const double kS = 1.0 / std::sqrt(2.0);
const Complex kI(0.0, 1.0);

// Residuals written out by hand from the row table. The plane rows applied
// linearly to the four circular product inputs give, over (|2H>, |s>, |2V>)
// plus sink:
//   R(x)R = (1,  i,  i, -1)/2   ->  (a_h/2,  i(a_m + a_n)/2, -a_v/2),  0
//   L(x)L = (1, -i, -i, -1)/2   ->  (a_h/2, -i(a_m + a_n)/2, -a_v/2),  0
//   R(x)L = (1, -i,  i,  1)/2   ->  (a_h/2,  i(a_n - a_m)/2,  a_v/2), -i a_z
//   L(x)R = (1,  i, -i,  1)/2   ->  (a_h/2,  i(a_m - a_n)/2,  a_v/2), +i a_z
// while the circular rows claim a_r |2R>, a_l |2L>, a_e |RL> - i a_z sink,
// a_f |RL> + i a_z sink. The sink contributions agree identically, the wed
// parts differ as below.
struct HandResidual {
  std::array<Complex, 3> wed;
  Complex unwed;
};

std::array<HandResidual, 4> hand_residuals(const MarriageMillSpec& s) {
  std::array<HandResidual, 4> out;
  // RR: linear image minus a_r (1/2, i/sqrt2, -1/2)
  out[0].wed = {0.5 * (s.a_h - s.a_r),
                0.5 * kI * (s.a_m + s.a_n) - kI * kS * s.a_r,
                -0.5 * (s.a_v - s.a_r)};
  out[0].unwed = Complex(0.0, 0.0);
  // LL: linear image minus a_l (1/2, -i/sqrt2, -1/2)
  out[1].wed = {0.5 * (s.a_h - s.a_l),
                -0.5 * kI * (s.a_m + s.a_n) + kI * kS * s.a_l,
                -0.5 * (s.a_v - s.a_l)};
  out[1].unwed = Complex(0.0, 0.0);
  // RL: linear image minus a_e (1/sqrt2, 0, 1/sqrt2)
  out[2].wed = {0.5 * s.a_h - kS * s.a_e, 0.5 * kI * (s.a_n - s.a_m),
                0.5 * s.a_v - kS * s.a_e};
  out[2].unwed = Complex(0.0, 0.0);
  // LR: linear image minus a_f (1/sqrt2, 0, 1/sqrt2)
  out[3].wed = {0.5 * s.a_h - kS * s.a_f, 0.5 * kI * (s.a_m - s.a_n),
                0.5 * s.a_v - kS * s.a_f};
  out[3].unwed = Complex(0.0, 0.0);
  return out;
}

MarriageMillSpec random_spec(biphoton::Rng& rng) {
  const auto z = [&rng] {
    return 0.5 * Complex(rng.gaussian(), rng.gaussian());
  };
  return MarriageMillSpec{z(), z(), z(), z(), z(), z(), z(), z(), z()};
}

}  // namespace

TEST_CASE("residuals match the hand-written formulas") {
  biphoton::Rng rng(41);
  for (int trial = 0; trial < 20; ++trial) {
    const MarriageMillSpec spec = random_spec(rng);
    const ResidualReport report = build_residuals(spec);
    const auto expected = hand_residuals(spec);

    double norm_sq = 0.0;
    for (std::size_t k = 0; k < 4; ++k) {
      for (std::size_t c = 0; c < 3; ++c) {
        CHECK(std::abs(report.residuals[k].wed[c] - expected[k].wed[c]) <
              1e-13);
        norm_sq += std::norm(expected[k].wed[c]);
      }
      // The single-sink pattern makes the unwed residual vanish identically,
      // so the sink amplitude is never constrained.
      CHECK(std::abs(report.residuals[k].unwed) < 1e-14);
    }
    CHECK(report.norm == doctest::Approx(std::sqrt(norm_sq)).epsilon(1e-10));
  }
}

TEST_CASE("residual input labels are the four circular pairs") {
  const ResidualReport report =
      build_residuals(MarriageMillSpec::canonical());
  CHECK(report.residuals[0].input == "RR");
  CHECK(report.residuals[1].input == "LL");
  CHECK(report.residuals[2].input == "RL");
  CHECK(report.residuals[3].input == "LR");
}

TEST_CASE("family members have zero residual") {
  biphoton::Rng rng(42);
  CHECK(build_residuals(MarriageMillSpec::canonical()).norm < 1e-12);
  CHECK(build_residuals(MarriageMillSpec::from_family(
                            Complex(0.0, 0.0), Complex(0.3, 0.1)))
            .norm < 1e-12);
  for (int trial = 0; trial < 100; ++trial) {
    const double mag = rng.uniform();
    const double phase = 6.283185307179586 * rng.uniform();
    const Complex a_s = mag * std::exp(kI * phase);
    const Complex a_z = 0.5 * Complex(rng.gaussian(), rng.gaussian());
    const MarriageMillSpec spec = MarriageMillSpec::from_family(a_s, a_z);
    CHECK(build_residuals(spec).norm < 1e-12);

    // Whatever the scale, phase, or sink, the cross amplitudes sit at half
    // the power of the same-kind amplitudes.
    if (mag > 1e-6) {
      const ConstraintSummary sum = build_residuals(spec).summary;
      CHECK(std::abs(sum.power_ratio() - 0.5) < 1e-12);
      CHECK(sum.same_spread < 1e-13);
      CHECK(sum.cross_spread < 1e-13);
    }
  }
}

TEST_CASE("the lossless mill is far from linear consistency") {
  const ResidualReport report = build_residuals(MarriageMillSpec::perfect());
  // Frozen value sqrt(6 - 4 sqrt2).
  CHECK(report.norm == doctest::Approx(0.5857864376269049).epsilon(1e-12));
  CHECK(report.norm > 0.1);
  CHECK(report.summary.power_ratio() == doctest::Approx(1.0));
}

TEST_CASE("off-family perturbations are detected") {
  MarriageMillSpec spec = MarriageMillSpec::canonical();
  spec.a_e *= 1.0 + 1e-3;
  CHECK(build_residuals(spec).norm > 1e-4);

  MarriageMillSpec phase = MarriageMillSpec::canonical();
  phase.a_e *= std::exp(kI * 1e-3);
  CHECK(build_residuals(phase).norm > 1e-4);

  MarriageMillSpec lop = MarriageMillSpec::canonical();
  lop.a_h += Complex(1e-3, 0.0);
  CHECK(build_residuals(lop).norm > 1e-4);
}

TEST_CASE("generic amplitude tables always leave a residual") {
  biphoton::Rng rng(43);
  double least = 1e9;
  for (int trial = 0; trial < 10000; ++trial) {
    const double norm = build_residuals(random_spec(rng)).norm;
    least = std::min(least, norm);
  }
  CHECK(least > 1e-3);
}

TEST_CASE("constraint family solved from the linear system") {
  const ConstraintFamily family = solve_constraint_family();
  CHECK(family.kernel_dimension == 2);
  CHECK(std::abs(family.a_same - Complex(1.0, 0.0)) < 1e-10);
  CHECK(std::abs(family.a_cross - Complex(kS, 0.0)) < 1e-10);
  CHECK(std::abs(family.power_ratio - 0.5) < 1e-10);
  CHECK(std::abs(family.relative_phase) < 1e-10);
  CHECK(family.max_equality_violation < 1e-10);
  CHECK(family.sink_unconstrained);
  CHECK(std::abs(family.wed_deficit - 0.5) < 1e-10);
}

TEST_CASE("probability deficit of on-manifold mills") {
  CHECK(probability_deficit(MarriageMillSpec::canonical()) ==
        doctest::Approx(0.5).epsilon(1e-12));

  // Half-power family member: cross amplitudes carry 1/4 of the light.
  const MarriageMillSpec half =
      MarriageMillSpec::from_family(Complex(kS, 0.0), Complex(0.0, 0.0));
  CHECK(probability_deficit(half) == doctest::Approx(0.75));

  const MarriageMillSpec dark =
      MarriageMillSpec::from_family(Complex(0.0, 0.0), Complex(0.5, 0.0));
  CHECK(probability_deficit(dark) == doctest::Approx(1.0));

  CHECK_THROWS_AS((void)probability_deficit(MarriageMillSpec::perfect()),
                  std::invalid_argument);
}

TEST_CASE("wed light from an on-manifold mill is ordinary") {
  for (Basis basis : {Basis::Plane, Basis::Circular}) {
    const FatLightCertificate cert =
        certify_no_fat_light(MarriageMillSpec::canonical(), basis);
    CHECK(cert.on_manifold);
    CHECK(cert.ordinary_two_light);
    CHECK(cert.unwed_probability == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(cert.diff_from_ordinary < 1e-12);
    CHECK(max_abs_diff(cert.density, Complex(1.0 / 3, 0.0) *
                                         qmath::ComplexMatrix::identity(3)) <
          1e-12);
    REQUIRE(cert.wed_ensemble.size() == 3);
    for (const EnsembleMember& m : cert.wed_ensemble.members())
      CHECK(m.weight == doctest::Approx(1.0 / 3).epsilon(1e-10));
  }

  // Tags follow the source basis.
  const FatLightCertificate plane =
      certify_no_fat_light(MarriageMillSpec::canonical(), Basis::Plane);
  for (const EnsembleMember& m : plane.wed_ensemble.members())
    CHECK((m.tag == "2H" || m.tag == "2V" || m.tag == "HV"));
  const FatLightCertificate circ =
      certify_no_fat_light(MarriageMillSpec::canonical(), Basis::Circular);
  for (const EnsembleMember& m : circ.wed_ensemble.members())
    CHECK((m.tag == "2R" || m.tag == "2L" || m.tag == "RL"));
}

TEST_CASE("the lossless mill would make distinguishable fat light") {
  const FatLightCertificate plane =
      certify_no_fat_light(MarriageMillSpec::perfect(), Basis::Plane);
  const FatLightCertificate circ =
      certify_no_fat_light(MarriageMillSpec::perfect(), Basis::Circular);

  CHECK_FALSE(plane.on_manifold);
  CHECK_FALSE(circ.on_manifold);
  CHECK(plane.unwed_probability == doctest::Approx(0.0));
  CHECK(circ.unwed_probability == doctest::Approx(0.0));

  // Plane weddings give the (1/4, 1/2, 1/4) mixture, not the flat one.
  CHECK(std::real(plane.density.at(1, 1)) == doctest::Approx(0.5));
  CHECK_FALSE(plane.ordinary_two_light);
  CHECK(plane.diff_from_ordinary == doctest::Approx(1.0 / 6).epsilon(1e-10));
  CHECK_FALSE(circ.ordinary_two_light);

  // And the two source bases now produce different light.
  CHECK(max_abs_diff(plane.density, circ.density) ==
        doctest::Approx(0.25).epsilon(1e-10));
}
