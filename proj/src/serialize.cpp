#include "biphoton/serialize.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace biphoton {

namespace {

using nlohmann::json;
using qmath::Complex;

json complex_json(Complex z) { return json::array({z.real(), z.imag()}); }

Complex complex_from(const json& j) {
  if (j.is_number()) return Complex(j.get<double>(), 0.0);
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return Complex(j[0].get<double>(), j[1].get<double>());
  throw std::runtime_error("expected a number or an [re, im] pair, got " +
                           j.dump());
}

Complex complex_field(const json& j, const char* key) {
  if (!j.contains(key)) return Complex(0.0, 0.0);
  return complex_from(j.at(key));
}

json matrix_json(const qmath::ComplexMatrix& m) {
  json rows = json::array();
  for (std::size_t r = 0; r < m.rows; ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < m.cols; ++c) row.push_back(complex_json(m.at(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return buf;
}

}  // namespace

void to_json(json& j, const MarriageMillSpec& spec) {
  j = json{{"a_h", complex_json(spec.a_h)}, {"a_v", complex_json(spec.a_v)},
           {"a_m", complex_json(spec.a_m)}, {"a_n", complex_json(spec.a_n)},
           {"a_r", complex_json(spec.a_r)}, {"a_l", complex_json(spec.a_l)},
           {"a_e", complex_json(spec.a_e)}, {"a_f", complex_json(spec.a_f)},
           {"a_z", complex_json(spec.a_z)}};
}

void from_json(const json& j, MarriageMillSpec& spec) {
  if (!j.is_object())
    throw std::runtime_error("mill spec must be a JSON object");
  static const char* const known[] = {"a_h", "a_v", "a_m", "a_n", "a_r",
                                      "a_l", "a_e", "a_f", "a_z"};
  for (const auto& item : j.items()) {
    bool ok = false;
    for (const char* k : known) ok = ok || item.key() == k;
    if (!ok)
      throw std::runtime_error("unknown mill spec key \"" + item.key() + "\"");
  }
  spec.a_h = complex_field(j, "a_h");
  spec.a_v = complex_field(j, "a_v");
  spec.a_m = complex_field(j, "a_m");
  spec.a_n = complex_field(j, "a_n");
  spec.a_r = complex_field(j, "a_r");
  spec.a_l = complex_field(j, "a_l");
  spec.a_e = complex_field(j, "a_e");
  spec.a_f = complex_field(j, "a_f");
  spec.a_z = complex_field(j, "a_z");
}

MarriageMillSpec load_mill_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open mill spec file: " + path);
  json j;
  try {
    in >> j;
    return j.get<MarriageMillSpec>();
  } catch (const std::exception& e) {
    throw std::runtime_error("bad mill spec file " + path + ": " + e.what());
  }
}

void to_json(json& j, const OutcomeStats& stats) {
  j = json{{"p_hh", stats.p_hh}, {"p_vv", stats.p_vv}, {"p_hv", stats.p_hv}};
  j["ratio_r"] = stats.ratio_r ? json(*stats.ratio_r) : json(nullptr);
}

void to_json(json& j, const OutcomeCounts& counts) {
  j = json{{"hh", counts.hh},
           {"vv", counts.vv},
           {"hv", counts.hv},
           {"total", counts.total()}};
}

void to_json(json& j, const InputResidual& r) {
  j = json{{"input", r.input},
           {"wed", json::array({complex_json(r.wed[0]), complex_json(r.wed[1]),
                                complex_json(r.wed[2])})},
           {"unwed", complex_json(r.unwed)},
           {"norm", r.norm()}};
}

void to_json(json& j, const ConstraintSummary& s) {
  j = json{{"a_same_mean", complex_json(s.a_same_mean)},
           {"a_cross_mean", complex_json(s.a_cross_mean)},
           {"same_spread", s.same_spread},
           {"cross_spread", s.cross_spread},
           {"power_ratio", s.power_ratio()}};
}

void to_json(json& j, const ResidualReport& r) {
  j = json{{"residuals", r.residuals}, {"norm", r.norm}, {"summary", r.summary}};
}

void to_json(json& j, const ConstraintFamily& f) {
  j = json{{"kernel_dimension", f.kernel_dimension},
           {"a_same", complex_json(f.a_same)},
           {"a_cross", complex_json(f.a_cross)},
           {"power_ratio", f.power_ratio},
           {"relative_phase", f.relative_phase},
           {"max_equality_violation", f.max_equality_violation},
           {"sink_unconstrained", f.sink_unconstrained},
           {"wed_deficit", f.wed_deficit}};
}

void to_json(json& j, const Ensemble& e) {
  j = json::array();
  for (const EnsembleMember& m : e.members())
    j.push_back(json{{"weight", m.weight}, {"tag", m.tag}});
}

void to_json(json& j, const FatLightCertificate& c) {
  j = json{{"wed_ensemble", c.wed_ensemble},
           {"unwed_probability", c.unwed_probability},
           {"density", matrix_json(c.density)},
           {"residual_norm", c.residual_norm},
           {"on_manifold", c.on_manifold},
           {"diff_from_ordinary", c.diff_from_ordinary},
           {"ordinary_two_light", c.ordinary_two_light}};
}

void to_json(json& j, const NullBand& band) {
  j = json{{"expected_tv", band.expected_tv},
           {"sigma_tv", band.sigma_tv},
           {"threshold", band.threshold}};
}

void to_json(json& j, const ArmResult& arm) {
  j = json{{"basis", to_string(arm.basis)},
           {"alice_counts", arm.alice_counts},
           {"class_names", arm.class_names},
           {"counts", arm.counts},
           {"events", arm.events},
           {"split_half_tv", arm.split_half_tv}};
  if (arm.attempts > 0) {
    j["no_wed"] = arm.no_wed;
    j["attempts"] = arm.attempts;
  }
}

void to_json(json& j, const ProtocolRecord& rec) {
  j = json{{"config",
            json{{"n_pairs", rec.config.n_pairs},
                 {"strategy", rec.config.strategy.name()},
                 {"seed", rec.config.seed}}},
           {"plane", rec.plane},
           {"circular", rec.circular},
           {"tv_distance_bases", rec.tv_distance_bases},
           {"mutual_information_bits", rec.mutual_information_bits},
           {"null_band", rec.null_band},
           {"signaling", rec.signaling},
           {"control_tv", rec.control_tv},
           {"control_threshold", rec.control_threshold}};
  if (rec.no_wed_fraction_plane)
    j["no_wed_fraction_plane"] = *rec.no_wed_fraction_plane;
  if (rec.no_wed_fraction_circular)
    j["no_wed_fraction_circular"] = *rec.no_wed_fraction_circular;
}

std::string stats_csv_header(bool with_counts) {
  std::string head = "kind,p_HH,p_VV,p_HV,R,ratio";
  if (with_counts) head += ",n,c_HH,c_VV,c_HV,R_hat";
  return head;
}

namespace {

std::string csv_prefix(const std::string& kind, const OutcomeStats& exact,
                       const std::array<long, 3>& ratio) {
  std::string r = exact.ratio_r ? fmt(*exact.ratio_r) : "";
  return kind + "," + fmt(exact.p_hh) + "," + fmt(exact.p_vv) + "," +
         fmt(exact.p_hv) + "," + r + "," + std::to_string(ratio[0]) + ":" +
         std::to_string(ratio[1]) + ":" + std::to_string(ratio[2]);
}

}  // namespace

std::string stats_csv_row(const std::string& kind, const OutcomeStats& exact,
                          const std::array<long, 3>& ratio) {
  return csv_prefix(kind, exact, ratio);
}

std::string stats_csv_row(const std::string& kind, const OutcomeStats& exact,
                          const std::array<long, 3>& ratio,
                          const OutcomeCounts& sampled) {
  const OutcomeStats hat = sampled.normalized();
  return csv_prefix(kind, exact, ratio) + "," +
         std::to_string(sampled.total()) + "," + std::to_string(sampled.hh) +
         "," + std::to_string(sampled.vv) + "," + std::to_string(sampled.hv) +
         "," + (hat.ratio_r ? fmt(*hat.ratio_r) : "");
}

}  // namespace biphoton
