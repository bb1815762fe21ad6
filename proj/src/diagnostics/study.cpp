#include <algorithm>
#include <cmath>
#include <nlohmann/json.hpp>

#include "exz/diagnostics/diagnostics.hpp"
#include "exz/error.hpp"
#include "exz/parallel.hpp"

namespace exz::diag {

namespace {

using nlohmann::json;

json complex_pair(std::complex<double> z) { return json::array({z.real(), z.imag()}); }

// Leja surrogate error on the unit disk, where U^{mu_E}(z) = -log|z| outside.
double leja_calibration(const StudyConfig& cfg) {
  const geom::Domain disk = geom::validate(geom::make_disk(0, 0, 1));
  const std::size_t mesh = cfg.leja_mesh ? cfg.leja_mesh : pot::default_leja_mesh(disk, cfg.leja_count);
  const MeasureCloud mu = pot::leja_points(disk, cfg.leja_count, mesh);
  double worst = 0;
  for (auto z : exterior_grid(disk, cfg.grid)) worst = std::max(worst, std::abs(pot::log_potential(mu, z) + std::log(std::abs(z))));
  return worst;
}

json mass_json(const Mass& m) { return std::to_string(m.numerator()) + "/" + std::to_string(m.denominator()); }

json report_json(const ConvergenceReport& r) {
  json m = json::array();
  for (auto z : r.moments_nu) m.push_back(complex_pair(z));
  return {{"moments", m},
          {"moment_distances", r.moment_distances},
          {"potential_sup", r.potential_sup_distance},
          {"tv", r.histogram_tv},
          {"hull_escape", r.hull_escape_fraction},
          {"verdict", r.verdict}};
}

}  // namespace

StudyReport sequence_study(const geom::Domain& d, const std::vector<int>& n_list, const num::PrecisionContext& ctx,
                           const StudyConfig& cfg) {
  if (n_list.empty()) throw Error(Errc::BadInput, "n_list is empty");
  for (std::size_t i = 0; i < n_list.size(); ++i)
    if (n_list[i] < 1 || (i > 0 && n_list[i] <= n_list[i - 1]))
      throw Error(Errc::BadInput, "n_list must be positive and increasing");
  if (cfg.balayage) cfg.wos.validate();

  StudyReport rep;
  rep.domain = d;
  rep.n_list = n_list;
  rep.theorem = geom::theorem_verdict(d);

  const std::size_t mesh = cfg.leja_mesh ? cfg.leja_mesh : pot::default_leja_mesh(d, cfg.leja_count);
  rep.leja = pot::leja_points(d, cfg.leja_count, mesh);
  rep.capacity = pot::capacity_leja(rep.leja);
  rep.eps_leja = leja_calibration(cfg);

  ScopedPrecision wp(ctx.precision_bits);
  const ortho::OrthoSequence seq = ortho::bergman_arnoldi(d, n_list.back(), ctx);
  rep.ortho_residual = seq.ortho_residual.to_double();

  const geom::Boundary bd(d);
  const auto circle = circle_points(0.0, cfg.balayage_circle, cfg.grid.circle_points);
  const auto grid = exterior_grid(d, cfg.grid);
  rep.per_n.resize(n_list.size());
  parallel_chunks(n_list.size(), [&](std::size_t i) {
    PerN& p = rep.per_n[i];
    p.n = n_list[i];
    p.zeros = ortho::zeros(seq, p.n);
    p.report = compare_measures(p.zeros, rep.leja, d, std::nullopt, cfg.grid, cfg.thresholds);
    std::size_t interior = 0;
    for (auto z : p.zeros.points) interior += bd.distance(z) > cfg.interior_distance;
    p.interior_fraction = static_cast<double>(interior) / static_cast<double>(p.zeros.size());
    {
      ScopedPrecision low(192);
      p.sup_norm_root = ortho::sup_norm_estimate(seq, p.n, cfg.sup_samples).nth_root.to_double();
    }
    if (cfg.balayage) {
      bal::WosConfig w = cfg.wos;
      w.samples_per_atom = static_cast<std::uint32_t>((cfg.wos_total_samples + p.n - 1) / p.n);
      const MeasureCloud b = bal::balayage_out(p.zeros, d, w);
      p.balayage_mass = b.total_mass();
      p.eps_stat = 3 / std::sqrt(static_cast<double>(w.samples_per_atom) * p.n);
      p.balayage_grid_sup = potential_sup(b, rep.leja, grid);
      p.balayage_circle_sup = potential_sup(b, rep.leja, circle);
      p.balayage_ok = p.balayage_grid_sup <= p.eps_stat + rep.eps_leja && p.balayage_mass == p.zeros.total_mass();
    }
  });

  const Frame f = frame_of(d);
  std::vector<double> radii;
  for (double r : cfg.ring_radii) radii.push_back(r * f.diam);
  for (const auto& c : geom::corner_scan(d)) {
    if (c.classification == geom::CornerClass::straight) continue;
    rep.corners.push_back({c, pot::corner_density_probe(rep.leja, d, c.location.to_std(), radii)});
  }

  std::vector<double> tv;
  for (const auto& p : rep.per_n) tv.push_back(p.report.histogram_tv);
  rep.tv_non_increasing = non_increasing(tv);
  rep.convergence_observed = rep.tv_non_increasing && tv.back() < cfg.thresholds.tv;
  rep.consistent = !rep.theorem.full_sequence_convergence_predicted || rep.convergence_observed;
  return rep;
}

json study_to_json(const StudyReport& r, const StudyConfig& cfg) {
  json per_n = json::array(), bal_n = json::array();
  for (const auto& p : r.per_n) {
    json e = report_json(p.report);
    e["n"] = p.n;
    e["interior_fraction"] = p.interior_fraction;
    e["sup_norm_root"] = p.sup_norm_root;
    per_n.push_back(e);
    if (cfg.balayage)
      bal_n.push_back({{"n", p.n},
                       {"samples_per_atom", (cfg.wos_total_samples + p.n - 1) / p.n},
                       {"mass", mass_json(p.balayage_mass)},
                       {"potential_sup_grid", p.balayage_grid_sup},
                       {"potential_sup_circle", p.balayage_circle_sup},
                       {"eps_stat", p.eps_stat},
                       {"pass", p.balayage_ok}});
  }
  json corners = json::array();
  for (const auto& c : r.corners)
    corners.push_back({{"location", complex_pair(c.corner.location.to_std())},
                       {"class", geom::to_string(c.corner.classification)},
                       {"r", c.probe.trace.r},
                       {"density", c.probe.trace.value},
                       {"slope", c.probe.slope},
                       {"trend", pot::to_string(c.probe.trend)}});
  json theorem = json::array();
  for (const auto& c : r.theorem.components) theorem.push_back({{"component", c.component}, {"ncs", c.has_ncs_point}});
  const bool bal_ok = std::all_of(r.per_n.begin(), r.per_n.end(), [](const PerN& p) { return p.balayage_ok; });
  return {
      {"domain", geom::domain_to_json(r.domain)},
      {"verdict",
       {{"full_sequence_convergence_predicted", r.theorem.full_sequence_convergence_predicted},
        {"tv_non_increasing", r.tv_non_increasing},
        {"convergence_observed", r.convergence_observed},
        {"consistent", r.consistent},
        {"balayage_check", cfg.balayage ? json(bal_ok) : json(nullptr)}}},
      {"theorem", {{"components", theorem}}},
      {"capacity", {{"value", r.capacity.value}, {"points", r.capacity.point_count}, {"method", pot::to_string(r.capacity.method)}}},
      {"ortho_residual", r.ortho_residual},
      {"per_n", per_n},
      {"balayage_check", {{"per_n", bal_n}, {"eps_leja", r.eps_leja}, {"circle_radius", cfg.balayage_circle}}},
      {"corner_density", corners},
      {"calibration",
       {{"note", "thresholds are engineering calibration, not claims of the theory"},
        {"tv_threshold", cfg.thresholds.tv},
        {"hull_escape_threshold", cfg.thresholds.hull_escape},
        {"interior_distance", cfg.interior_distance},
        {"histogram_bins", cfg.grid.bins},
        {"histogram_band", cfg.grid.band},
        {"leja_count", cfg.leja_count},
        {"wos_total_samples", cfg.wos_total_samples},
        {"wos_seed", cfg.wos.seed},
        {"shell_epsilon", cfg.wos.shell_epsilon},
        {"eps_leja", r.eps_leja}}},
  };
}

}  // namespace exz::diag
