#include "cli_app.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "biphoton/epr.hpp"
#include "biphoton/nogo.hpp"
#include "biphoton/serialize.hpp"

namespace biphoton::cli {

namespace {

using nlohmann::json;
using qmath::Complex;

constexpr int kSchemaVersion = 1;

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return buf;
}

// Collects failed runtime checks so a command reports all of them at once.
struct Checker {
  std::vector<std::string> failures;

  void require(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }

  int finish(std::ostream& err) const {
    for (const std::string& f : failures) err << "check failed: " << f << "\n";
    return failures.empty() ? 0 : 1;
  }
};

struct TableRow {
  TwoLightKind kind;
  OutcomeStats expected;
  std::array<long, 3> ratio;
};

const std::array<TableRow, 4> kTable = {{
    {TwoLightKind::PUP2, make_stats(1.0 / 3, 1.0 / 3, 1.0 / 3), {1, 1, 1}},
    {TwoLightKind::CUP2, make_stats(1.0 / 3, 1.0 / 3, 1.0 / 3), {1, 1, 1}},
    {TwoLightKind::FPUP, make_stats(0.25, 0.25, 0.5), {1, 1, 2}},
    {TwoLightKind::FCUP, make_stats(0.375, 0.375, 0.25), {3, 3, 2}},
}};

int run_table(std::uint64_t trials, std::uint64_t seed,
              const std::string& format, std::ostream& out,
              std::ostream& err) {
  Checker check;
  json rows = json::array();
  std::vector<std::string> csv{stats_csv_header(trials > 0)};

  for (std::size_t i = 0; i < kTable.size(); ++i) {
    const TableRow& row = kTable[i];
    const Ensemble e = two_light(row.kind);
    const OutcomeStats stats = ensemble_stats(e);
    const std::array<long, 3> ratio = smallest_integer_ratio(stats);
    const std::string name = to_string(row.kind);

    check.require(std::abs(stats.p_hh - row.expected.p_hh) <= qmath::kAnalyticTol &&
                      std::abs(stats.p_vv - row.expected.p_vv) <= qmath::kAnalyticTol &&
                      std::abs(stats.p_hv - row.expected.p_hv) <= qmath::kAnalyticTol,
                  name + " channel probabilities");
    check.require(stats.ratio_r && row.expected.ratio_r &&
                      std::abs(*stats.ratio_r - *row.expected.ratio_r) <=
                          qmath::kAnalyticTol,
                  name + " ratio R");
    check.require(ratio == row.ratio, name + " integer ratio");

    json jrow{{"kind", name},
              {"stats", stats},
              {"ratio", ratio},
              {"r", stats.ratio_r ? json(*stats.ratio_r) : json(nullptr)}};
    if (trials > 0) {
      const OutcomeCounts counts = sample_stats(e, trials, derive_seed(seed, i));
      jrow["sampled"] = counts;
      const OutcomeStats hat = counts.normalized();
      jrow["sampled_r"] = hat.ratio_r ? json(*hat.ratio_r) : json(nullptr);
      csv.push_back(stats_csv_row(name, stats, ratio, counts));
    } else {
      csv.push_back(stats_csv_row(name, stats, ratio));
    }
    rows.push_back(std::move(jrow));
  }

  if (format == "json") {
    json doc{{"schema_version", kSchemaVersion},
             {"command", "table"},
             {"trials", trials},
             {"seed", seed},
             {"rows", rows}};
    out << doc.dump(2) << "\n";
  } else {
    for (const std::string& line : csv) out << line << "\n";
  }
  return check.finish(err);
}

double clone_fidelity(Polarization label) {
  const qmath::ComplexVector& z = basis_state(label).amp;
  const DensityMatrix rho3 = mandel_clone(qmath::outer(z, z));
  const qmath::ComplexMatrix p = biphoton_projector();
  const qmath::ComplexMatrix rho4 = p.adjoint() * rho3 * p;
  const qmath::ComplexMatrix one =
      qmath::partial_trace(rho4, qmath::Subsystem::Second);
  return std::real(qmath::inner(z, one * z));
}

int run_clone(const std::string& input, const std::string& format,
              std::ostream& out, std::ostream& err) {
  Checker check;
  const std::map<std::string, Polarization> by_name{
      {"H", Polarization::H},
      {"V", Polarization::V},
      {"R", Polarization::R},
      {"L", Polarization::L}};
  std::vector<Polarization> inputs;
  if (input.empty()) {
    inputs = {Polarization::H, Polarization::V, Polarization::R,
              Polarization::L};
  } else {
    inputs = {by_name.at(input)};
  }

  json jinputs = json::array();
  std::vector<std::string> csv{"input,p_keep,p_wrong,fidelity,branches"};

  for (Polarization label : inputs) {
    const std::string name = to_string(label);
    const Ensemble source({EnsembleMember{1.0, basis_state(label), name}});
    const Ensemble cloned = clone_ensemble(source);

    double p_keep = 0.0;
    std::string branches;
    json jbranches = json::array();
    for (const EnsembleMember& m : cloned.members()) {
      if (m.tag == "2" + name) p_keep += m.weight;
      if (!branches.empty()) branches += "|";
      branches += m.tag + ":" + fmt(m.weight);
      jbranches.push_back(json{{"tag", m.tag}, {"weight", m.weight}});
    }
    const double p_wrong = 1.0 - p_keep;
    const double fidelity = clone_fidelity(label);

    check.require(std::abs(p_wrong - 1.0 / 3) <= qmath::kAnalyticTol,
                  name + " wrong-polarization probability 1/3");
    check.require(std::abs(fidelity - 5.0 / 6) <= qmath::kAnalyticTol,
                  name + " single-copy fidelity 5/6");

    jinputs.push_back(json{{"input", name},
                           {"branches", jbranches},
                           {"p_keep", p_keep},
                           {"p_wrong", p_wrong},
                           {"fidelity", fidelity}});
    csv.push_back(name + "," + fmt(p_keep) + "," + fmt(p_wrong) + "," +
                  fmt(fidelity) + "," + branches);
  }

  // Cloning unpolarized light yields the maximally mixed biphoton whatever
  // the source basis.
  const DensityMatrix third =
      Complex(1.0 / 3, 0.0) * qmath::ComplexMatrix::identity(3);
  const Ensemble plane = clone_ensemble(one_light(Basis::Plane));
  const Ensemble circ = clone_ensemble(one_light(Basis::Circular));
  const double diff_plane = qmath::max_abs_diff(ensemble_density(plane), third);
  const double diff_circ = qmath::max_abs_diff(ensemble_density(circ), third);
  const double diff_bases =
      qmath::max_abs_diff(ensemble_density(plane), ensemble_density(circ));
  check.require(diff_plane <= qmath::kAnalyticTol,
                "cloned plane one-light is maximally mixed");
  check.require(diff_circ <= qmath::kAnalyticTol,
                "cloned circular one-light is maximally mixed");
  check.require(diff_bases <= qmath::kAnalyticTol,
                "cloned one-light density is basis independent");

  if (format == "json") {
    json doc{{"schema_version", kSchemaVersion},
             {"command", "clone"},
             {"inputs", jinputs},
             {"cloned_one_light",
              json{{"plane", plane},
                   {"circular", circ},
                   {"plane_stats", ensemble_stats(plane)},
                   {"circular_stats", ensemble_stats(circ)},
                   {"diff_from_maximally_mixed",
                    std::max(diff_plane, diff_circ)},
                   {"diff_between_bases", diff_bases}}}};
    out << doc.dump(2) << "\n";
  } else {
    for (const std::string& line : csv) out << line << "\n";
  }
  return check.finish(err);
}

int run_nogo(const std::string& mill_path, const std::string& format,
             std::ostream& out, std::ostream& err) {
  Checker check;
  const ConstraintFamily family = solve_constraint_family();
  const MarriageMillSpec spec = mill_path.empty()
                                    ? MarriageMillSpec::canonical()
                                    : load_mill_spec(mill_path);
  const ResidualReport report = build_residuals(spec);
  const bool on_manifold = report.norm <= qmath::kStructuralTol;
  const FatLightCertificate plane = certify_no_fat_light(spec, Basis::Plane);
  const FatLightCertificate circ =
      certify_no_fat_light(spec, Basis::Circular);

  const MarriageMillSpec perfect = MarriageMillSpec::perfect();
  const ResidualReport perfect_report = build_residuals(perfect);
  const FatLightCertificate perfect_plane =
      certify_no_fat_light(perfect, Basis::Plane);
  const FatLightCertificate perfect_circ =
      certify_no_fat_light(perfect, Basis::Circular);
  const double perfect_diff =
      qmath::max_abs_diff(perfect_plane.density, perfect_circ.density);

  check.require(family.kernel_dimension == 2,
                "consistent family has one wed scale and one free sink");
  check.require(std::abs(family.power_ratio - 0.5) <= qmath::kStructuralTol,
                "cross/same power ratio is 1/2");
  check.require(std::abs(family.relative_phase) <= qmath::kStructuralTol,
                "cross amplitudes carry no relative phase");
  check.require(family.max_equality_violation <= qmath::kStructuralTol,
                "same-kind and cross amplitudes are each equal");
  check.require(family.sink_unconstrained, "sink amplitude is unconstrained");
  check.require(!plane.on_manifold || plane.ordinary_two_light,
                "on-manifold wed light is ordinary (plane source)");
  check.require(!circ.on_manifold || circ.ordinary_two_light,
                "on-manifold wed light is ordinary (circular source)");
  check.require(perfect_report.norm > 0.1,
                "the lossless mill violates linearity");

  if (format == "json") {
    json doc{{"schema_version", kSchemaVersion},
             {"command", "nogo"},
             {"family", family},
             {"spec", spec},
             {"residual_report", report},
             {"probability_deficit",
              on_manifold ? json(probability_deficit(spec)) : json(nullptr)},
             {"certificates", json{{"plane", plane}, {"circular", circ}}},
             {"counterfactual_perfect",
              json{{"residual_norm", perfect_report.norm},
                   {"plane_stats", ensemble_stats(perfect_plane.wed_ensemble)},
                   {"circular_stats",
                    ensemble_stats(perfect_circ.wed_ensemble)},
                   {"plane_vs_circular_density_diff", perfect_diff}}}};
    out << doc.dump(2) << "\n";
  } else {
    out << "quantity,value\n";
    out << "kernel_dimension," << family.kernel_dimension << "\n";
    out << "power_ratio," << fmt(family.power_ratio) << "\n";
    out << "relative_phase," << fmt(family.relative_phase) << "\n";
    out << "wed_deficit," << fmt(family.wed_deficit) << "\n";
    out << "spec_residual_norm," << fmt(report.norm) << "\n";
    out << "probability_deficit,"
        << (on_manifold ? fmt(probability_deficit(spec)) : std::string())
        << "\n";
    out << "plane_unwed_probability," << fmt(plane.unwed_probability) << "\n";
    out << "plane_ordinary_two_light," << (plane.ordinary_two_light ? 1 : 0)
        << "\n";
    out << "circular_unwed_probability," << fmt(circ.unwed_probability)
        << "\n";
    out << "circular_ordinary_two_light," << (circ.ordinary_two_light ? 1 : 0)
        << "\n";
    out << "perfect_residual_norm," << fmt(perfect_report.norm) << "\n";
    out << "perfect_plane_vs_circular_diff," << fmt(perfect_diff) << "\n";
  }
  return check.finish(err);
}

int run_epr(const std::string& strategy, const std::string& mill_path,
            std::uint64_t trials, std::uint64_t seed,
            const std::string& format, std::ostream& out, std::ostream& err) {
  Checker check;
  BobStrategy strat = BobStrategy::direct();
  if (!mill_path.empty()) {
    strat = BobStrategy::wed_custom(load_mill_spec(mill_path));
  } else {
    const auto parsed = BobStrategy::from_name(strategy);
    if (!parsed) {
      err << "unknown strategy: " << strategy << "\n";
      return 2;
    }
    strat = *parsed;
  }

  const ProtocolConfig config{trials, strat, seed};
  const ProtocolRecord rec = run_protocol(config);

  check.require(rec.control_tv <= rec.control_threshold,
                "same-basis split-half control within the null band");

  if (format == "json") {
    json doc = rec;
    doc["schema_version"] = kSchemaVersion;
    doc["command"] = "epr";
    out << doc.dump(2) << "\n";
  } else {
    out << "strategy,n_pairs,seed,tv,threshold,signaling,mi_bits,control_tv,"
           "control_threshold,no_wed_plane,no_wed_circular\n";
    out << strat.name() << "," << trials << "," << seed << ","
        << fmt(rec.tv_distance_bases) << "," << fmt(rec.null_band.threshold)
        << "," << (rec.signaling ? 1 : 0) << ","
        << fmt(rec.mutual_information_bits) << "," << fmt(rec.control_tv)
        << "," << fmt(rec.control_threshold) << ","
        << (rec.no_wed_fraction_plane ? fmt(*rec.no_wed_fraction_plane)
                                      : std::string())
        << ","
        << (rec.no_wed_fraction_circular ? fmt(*rec.no_wed_fraction_circular)
                                         : std::string())
        << "\n";
  }
  return check.finish(err);
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"polarization quantum optics workbench"};
  app.require_subcommand(1);

  std::uint64_t table_trials = 0, table_seed = 1;
  std::string table_format = "csv";
  CLI::App* table = app.add_subcommand(
      "table", "beamsplitter statistics of the named two-light ensembles");
  table->add_option("--trials", table_trials,
                    "sampled events per ensemble (0: exact only)");
  table->add_option("--seed", table_seed, "sampling seed");
  table->add_option("--format", table_format, "output format")
      ->check(CLI::IsMember({"csv", "json"}));

  std::string clone_input, clone_format = "json";
  CLI::App* clone = app.add_subcommand(
      "clone", "optimal cloner branches, error rate and fidelity");
  clone->add_option("--input", clone_input, "input polarization")
      ->check(CLI::IsMember({"H", "V", "R", "L"}));
  clone->add_option("--format", clone_format, "output format")
      ->check(CLI::IsMember({"csv", "json"}));

  std::string nogo_mill, nogo_format = "json";
  CLI::App* nogo = app.add_subcommand(
      "nogo", "linearity constraints on any pairwise wedding machine");
  nogo->add_option("--mill-spec", nogo_mill,
                   "JSON file with mill amplitudes (default: canonical)")
      ->check(CLI::ExistingFile);
  nogo->add_option("--format", nogo_format, "output format")
      ->check(CLI::IsMember({"csv", "json"}));

  std::string epr_strategy = "direct", epr_mill, epr_format = "json";
  std::uint64_t epr_trials = 100000, epr_seed = 1;
  CLI::App* epr = app.add_subcommand(
      "epr", "two-arm signaling experiment on entangled pairs");
  CLI::Option* strat_opt =
      epr->add_option("--strategy", epr_strategy, "receiver strategy")
          ->check(CLI::IsMember(
              {"direct", "clone", "wed-perfect", "wed-constrained"}));
  CLI::Option* mill_opt =
      epr->add_option("--mill-spec", epr_mill,
                      "JSON mill amplitudes; runs the custom wedding strategy")
          ->check(CLI::ExistingFile);
  strat_opt->excludes(mill_opt);
  mill_opt->excludes(strat_opt);
  epr->add_option("--trials", epr_trials, "entangled pairs per arm");
  epr->add_option("--seed", epr_seed, "protocol seed");
  epr->add_option("--format", epr_format, "output format")
      ->check(CLI::IsMember({"csv", "json"}));

  std::vector<const char*> argv{"biphoton"};
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 2;
  }

  try {
    if (app.got_subcommand(table))
      return run_table(table_trials, table_seed, table_format, out, err);
    if (app.got_subcommand(clone))
      return run_clone(clone_input, clone_format, out, err);
    if (app.got_subcommand(nogo))
      return run_nogo(nogo_mill, nogo_format, out, err);
    if (app.got_subcommand(epr))
      return run_epr(epr_strategy, epr_mill, epr_trials, epr_seed, epr_format,
                     out, err);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  err << "no command selected\n";
  return 2;
}

}  // namespace biphoton::cli
