#include "fraclab/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <limits>

#include "fraclab/cover.hpp"
#include "fraclab/dimension.hpp"
#include "fraclab/error.hpp"
#include "fraclab/geometry.hpp"
#include "fraclab/io.hpp"
#include "fraclab/maps.hpp"
#include "fraclab/ssc.hpp"
#include "fraclab/subsystem.hpp"

namespace fraclab {

using nlohmann::json;

namespace {

// Enforces only the thresholds declared in the config; every comparison is
// recorded in the report either way.
class Gate {
 public:
  explicit Gate(const json& config)
      : thresholds_(config.value("thresholds", json::object())) {}

  void ge(const std::string& key, double value) {
    json entry;
    entry["value"] = value;
    if (thresholds_.contains(key)) {
      const double t = parse_real(thresholds_.at(key));
      entry["threshold"] = t;
      entry["pass"] = value >= t;
      pass_ = pass_ && value >= t;
    }
    checks_[key] = entry;
  }

  void le(const std::string& key, double value) {
    json entry;
    entry["value"] = value;
    if (thresholds_.contains(key)) {
      const double t = parse_real(thresholds_.at(key));
      entry["threshold"] = t;
      entry["pass"] = value <= t;
      pass_ = pass_ && value <= t;
    }
    checks_[key] = entry;
  }

  void flag(const std::string& key, bool value) {
    json entry;
    entry["value"] = value;
    if (thresholds_.contains(key) && thresholds_.at(key).get<bool>()) {
      entry["pass"] = value;
      pass_ = pass_ && value;
    }
    checks_[key] = entry;
  }

  const json& checks() const { return checks_; }
  bool pass() const { return pass_; }

 private:
  json thresholds_;
  json checks_ = json::object();
  bool pass_ = true;
};

json base_report(const std::string& name, const json& config,
                 const RunOptions& opts) {
  json r;
  r["experiment"] = name;
  r["version"] = kVersion;
  r["config_hash"] = fnv1a_hex(config.dump());
  r["seed"] = opts.seed;
  r["caps_hit"] = json::array();
  return r;
}

Ifs config_ifs(const json& config) {
  if (!config.contains("ifs"))
    throw PreconditionError("config: missing 'ifs' (inline object or path)");
  const json& j = config.at("ifs");
  Ifs ifs = j.is_string() ? load_ifs(j.get<std::string>()) : ifs_from_json(j);
  if (config.contains("shift")) {
    Vec off = Vec::zero(ifs.ambient_dim);
    const auto& s = config.at("shift");
    for (int i = 0; i < ifs.ambient_dim; ++i)
      off[i] = parse_real(s.at(static_cast<std::size_t>(i)));
    ifs = translate_ifs(ifs, off);
  }
  return ifs;
}

Vec config_vec(const json& j) {
  Vec v = Vec::zero(static_cast<int>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i)
    v[static_cast<int>(i)] = parse_real(j[i]);
  return v;
}

// Cloud whose cells sit exactly at the given subdivision depth for
// homogeneous systems.
WeightedCloud cloud_at_depth(const Ifs& ifs, int depth, std::int64_t cap) {
  const Ball root = bounding_ball(ifs);
  double lambda = 0.0;
  for (const auto& m : ifs.maps) lambda = std::max(lambda, m.ratio);
  const double target =
      std::max(root.radius * std::pow(lambda, depth) * (1.0 + 1e-9), 1e-300);
  return sample_cloud(ifs, target, cap);
}

int auto_depth(const Ifs& ifs, int copies, std::int64_t cap) {
  const double per = std::log(static_cast<double>(cap)) /
                     (copies * std::log(static_cast<double>(ifs.size())));
  return std::max(1, static_cast<int>(std::floor(per)));
}

double max_ratio(const Ifs& ifs) {
  double lambda = 0.0;
  for (const auto& m : ifs.maps) lambda = std::max(lambda, m.ratio);
  return lambda;
}

void write_counts_csv(const std::string& path, const BoxCountResult& box) {
  std::vector<std::vector<std::string>> rows;
  for (std::size_t i = 0; i < box.scales.size(); ++i)
    rows.push_back({format_g(box.scales[i]),
                    std::to_string(box.counts[i]),
                    format_g(std::log10(1.0 / box.scales[i])),
                    format_g(std::log10(static_cast<double>(box.counts[i])))});
  rows.push_back({"slope", format_g(box.slope), "r2", format_g(box.r_squared)});
  write_csv(path, {"scale", "count", "log10_inv_scale", "log10_count"}, rows);
}

json box_to_json(const BoxCountResult& box) {
  json b;
  b["scales"] = box.scales;
  b["counts"] = box.counts;
  b["slope"] = box.slope;
  b["intercept"] = box.intercept;
  b["r_squared"] = box.r_squared;
  b["reliable"] = box.reliable;
  return b;
}

std::string out_path(const RunOptions& opts, const std::string& file) {
  std::filesystem::create_directories(opts.out_dir);
  return (std::filesystem::path(opts.out_dir) / file).string();
}

void finish(json& report, const std::string& name, const Gate& gate,
            const RunOptions& opts) {
  report["checks"] = gate.checks();
  report["pass"] = gate.pass();
  write_text_file(out_path(opts, name + "_report.json"), report.dump(2) + "\n");
}

BoxCountResult box_of_1d_cloud(const WeightedCloud& cloud, double base,
                               int decades, json& report) {
  std::vector<double> scales =
      adic_scales(base, decades + 1, 4.0 * cloud.resolution);
  if (scales.size() < static_cast<std::size_t>(decades + 1))
    report["caps_hit"].push_back("scale list clipped at 4x cloud resolution");
  if (scales.size() < 2)
    throw PreconditionError(
        "box estimate: fewer than two usable scales above the cloud "
        "resolution");
  return box_count(cloud, scales);
}

}  // namespace

const std::vector<std::string>& experiment_names() {
  static const std::vector<std::string> names = {
      "cprod2", "tprod", "tdistance", "cradproj",
      "ltech1", "overlap-demo", "sweep", "estimate"};
  return names;
}

json run_cprod2(const json& config, const RunOptions& opts) {
  json report = base_report("cprod2", config, opts);
  Gate gate(config);

  const Ifs ifs = config_ifs(config);
  if (ifs.ambient_dim != 1)
    throw PreconditionError("cprod2: one-dimensional system required");
  const double s = similarity_dimension(ifs);
  const double target = std::min(2.0 * s, 1.0);

  const int depth = config.value("depth", auto_depth(ifs, 2, opts.max_cells));
  const WeightedCloud factor = cloud_at_depth(ifs, depth, opts.max_cells);
  const WeightedCloud product =
      algebraic_product({factor, factor}, opts.max_cells);

  const int decades = config.value("decades", 10);
  const BoxCountResult box =
      box_of_1d_cloud(product, max_ratio(ifs), decades, report);

  report["similarity_dimension"] = s;
  report["two_s"] = 2.0 * s;
  report["target"] = target;
  report["estimate"] = box.slope;
  report["abs_error"] = std::abs(box.slope - target);
  report["factor_depth"] = depth;
  report["product_points"] = product.size();
  report["box"] = box_to_json(box);

  write_counts_csv(out_path(opts, "cprod2_counts.csv"), box);
  write_loglog_dat(out_path(opts, "cprod2_loglog.dat"), box);

  gate.ge("min_estimate", box.slope);
  gate.le("max_error", std::abs(box.slope - target));
  finish(report, "cprod2", gate, opts);
  return report;
}

json run_tprod(const json& config, const RunOptions& opts) {
  json report = base_report("tprod", config, opts);
  Gate gate(config);

  const Ifs ifs = config_ifs(config);
  if (ifs.ambient_dim != 1)
    throw PreconditionError("tprod: one-dimensional system required");
  const double s = similarity_dimension(ifs);
  const bool hypothesis = s > 1.0 / 3.0;

  const int depth = config.value("depth", auto_depth(ifs, 3, opts.max_cells));
  const WeightedCloud factor = cloud_at_depth(ifs, depth, opts.max_cells);
  const WeightedCloud product =
      algebraic_product({factor, factor, factor}, opts.max_cells);

  const int decades = config.value("decades", 8);
  const BoxCountResult box =
      box_of_1d_cloud(product, max_ratio(ifs), decades, report);

  // Gradient-field conditions for the triple-product map on the cubed system.
  const Ifs cube = product_ifs({ifs, ifs, ifs});
  const int check_depth = config.value("check_depth", 4);
  const WeightedCloud ccloud = cloud_at_depth(cube, check_depth, opts.max_cells);
  std::vector<double> ray_ts = {0.5, 1.0, 2.0};
  if (config.contains("ray_ts")) {
    ray_ts.clear();
    for (const auto& t : config.at("ray_ts")) ray_ts.push_back(parse_real(t));
  }
  Box3 domain = Box3::everything(3);
  if (config.contains("domain")) {
    domain.lo = config_vec(config.at("domain").at("lo"));
    domain.hi = config_vec(config.at("domain").at("hi"));
  }
  const GradientFieldReport cond = tmain_condition_check(
      SmoothMap::product3(), ccloud, ray_ts, domain,
      config.value("grad_tol", 1e-10), config.value("cross_tol", 1e-10),
      config.value("lmin_threshold", 1e-6), opts.max_cells);

  report["similarity_dimension"] = s;
  report["hypothesis_met"] = hypothesis;
  if (!hypothesis) report["note"] = "outside theorem hypothesis";
  report["target"] = 1.0;
  report["estimate"] = box.slope;
  report["abs_error"] = std::abs(box.slope - 1.0);
  report["factor_depth"] = depth;
  report["product_points"] = product.size();
  report["box"] = box_to_json(box);
  report["conditions"] = {{"min_gradient", cond.min_gradient},
                          {"max_cross_normalized", cond.max_cross_normalized},
                          {"lmin", cond.lmin},
                          {"lmax", cond.lmax},
                          {"pairs_tested", cond.pairs_tested},
                          {"skipped_ray_samples", cond.skipped_ray_samples},
                          {"pass", cond.pass()}};

  write_counts_csv(out_path(opts, "tprod_counts.csv"), box);
  write_loglog_dat(out_path(opts, "tprod_loglog.dat"), box);

  gate.ge("min_estimate", box.slope);
  gate.ge("min_gradient", cond.min_gradient);
  gate.le("max_cross", cond.max_cross_normalized);
  gate.ge("min_lmin", cond.lmin);
  finish(report, "tprod", gate, opts);
  return report;
}

json run_tdistance(const json& config, const RunOptions& opts) {
  json report = base_report("tdistance", config, opts);
  Gate gate(config);

  const Ifs ifs = config_ifs(config);
  if (ifs.ambient_dim != 3)
    throw PreconditionError("tdistance: R^3 system required");
  const double s = similarity_dimension(ifs);
  const int pin_symbol = config.value("pin_symbol", 1);
  if (pin_symbol < 1 || pin_symbol > ifs.size())
    throw PreconditionError("tdistance: pin_symbol out of range");
  const Vec pin =
      fixed_point(ifs.maps[static_cast<std::size_t>(pin_symbol - 1)]);

  // Pick a cylinder certifiably separated from the pin, refining as needed.
  const Ball root = bounding_ball(ifs);
  Word cyl_word;
  {
    std::vector<Word> frontier;
    for (int sym = 1; sym <= ifs.size(); ++sym) frontier.push_back(Word{{sym}});
    bool found = false;
    for (int refinement = 0; refinement < 8 && !found; ++refinement) {
      for (const auto& w : frontier) {
        const Similitude f = compose(ifs, w);
        const double gap =
            dist(pin, f(root.center)) - f.ratio * root.radius;
        if (gap > 1e-9 * root.radius) {
          cyl_word = w;
          found = true;
          break;
        }
      }
      if (!found) {
        std::vector<Word> next;
        for (const auto& w : frontier)
          for (int sym = 1; sym <= ifs.size(); ++sym) {
            Word c = w;
            c.symbols.push_back(sym);
            next.push_back(std::move(c));
          }
        frontier = std::move(next);
        report["caps_hit"].push_back("cylinder refined to depth " +
                                     std::to_string(refinement + 2));
      }
    }
    if (!found)
      throw PreconditionError(
          "tdistance: no cylinder separated from the pin found");
  }

  const Ifs cyl = cylinder_ifs(ifs, cyl_word);
  const int depth = config.value("depth", auto_depth(cyl, 1, opts.max_cells));
  const WeightedCloud cloud = cloud_at_depth(cyl, depth, opts.max_cells);
  const WeightedCloud distances =
      distance_set(cloud, &pin, opts.max_cells);

  const int decades = config.value("decades", 8);
  const BoxCountResult box =
      box_of_1d_cloud(distances, max_ratio(ifs), decades, report);

  const double target = std::min(1.0, s);
  report["similarity_dimension"] = s;
  report["target"] = target;
  report["estimate"] = box.slope;
  report["abs_error"] = std::abs(box.slope - target);
  report["pin"] = {pin.x(), pin.y(), pin.z()};
  report["cylinder_word"] = to_string(cyl_word);
  report["cloud_depth"] = depth;
  report["box"] = box_to_json(box);

  write_counts_csv(out_path(opts, "tdistance_counts.csv"), box);
  write_loglog_dat(out_path(opts, "tdistance_loglog.dat"), box);

  gate.ge("min_estimate", box.slope);
  gate.le("max_error", std::abs(box.slope - target));
  finish(report, "tdistance", gate, opts);
  return report;
}

json run_cradproj(const json& config, const RunOptions& opts) {
  json report = base_report("cradproj", config, opts);
  Gate gate(config);

  const Ifs ifs = config_ifs(config);
  if (ifs.ambient_dim != 2)
    throw PreconditionError("cradproj: planar system required");
  const double s = similarity_dimension(ifs);
  const double target = std::min(1.0, s);

  const int depth = config.value("depth", 10);
  const WeightedCloud cloud = cloud_at_depth(ifs, depth, opts.max_cells);
  const WeightedCloud circle =
      radial_project(cloud, config.value("exclusion_radius", 1e-9));
  const WeightedCloud angles = circle_angle(circle);

  const int decades = config.value("decades", 8);
  const BoxCountResult box =
      box_of_1d_cloud(angles, max_ratio(ifs), decades, report);

  report["similarity_dimension"] = s;
  report["target"] = target;
  report["estimate"] = box.slope;
  report["abs_error"] = std::abs(box.slope - target);
  report["cloud_depth"] = depth;
  report["box"] = box_to_json(box);

  write_counts_csv(out_path(opts, "cradproj_counts.csv"), box);
  write_loglog_dat(out_path(opts, "cradproj_loglog.dat"), box);

  gate.ge("min_estimate", box.slope);
  gate.le("max_error", std::abs(box.slope - target));
  finish(report, "cradproj", gate, opts);
  return report;
}

json run_ltech1(const json& config, const RunOptions& opts) {
  json report = base_report("ltech1", config, opts);
  Gate gate(config);

  const Ifs ifs = config_ifs(config);
  const int num_dirs = config.value("num_directions", 8);
  std::vector<Direction> dirs;
  for (int k = 0; k < num_dirs; ++k) {
    const double theta = M_PI * static_cast<double>(k) / num_dirs;
    dirs.push_back(Direction(Vec(std::cos(theta), std::sin(theta))));
  }

  std::vector<Vec> points;
  if (config.contains("test_points")) {
    for (const auto& p : config.at("test_points"))
      points.push_back(config_vec(p));
  } else {
    for (int i = 0; i < std::min(3, ifs.size()); ++i)
      points.push_back(fixed_point(ifs.maps[static_cast<std::size_t>(i)]));
  }

  int n_max = config.value("n_max", 0);
  const int feasible = ltech1_max_feasible_n(ifs, opts.max_cells);
  if (n_max <= 0) {
    n_max = feasible;
    report["caps_hit"].push_back("n_max auto-set to largest feasible " +
                                 std::to_string(n_max));
  }

  const Ltech1Certificate cert =
      ltech1_certificate(ifs, points, dirs, n_max, opts.max_cells);

  json jcert;
  jcert["kappa"] = cert.kappa;
  jcert["N"] = cert.big_n;
  jcert["p_min"] = cert.p_min;
  jcert["lambda"] = cert.lambda;
  jcert["support_diameter"] = cert.support_diameter;
  jcert["bound_c"] = cert.bound_c;
  jcert["triangle_maps"] = cert.triangle_maps;
  jcert["triangle"] = json::array();
  for (const auto& p : cert.triangle) jcert["triangle"].push_back({p.x(), p.y()});
  jcert["inequality_holds"] = cert.inequality_holds;
  jcert["records"] = json::array();
  std::vector<std::vector<std::string>> rows;
  for (const auto& rec : cert.records) {
    jcert["records"].push_back({{"dir", rec.dir_index},
                                {"theta", rec.theta},
                                {"point", rec.point_index},
                                {"n", rec.n},
                                {"z", rec.z},
                                {"bound", rec.bound}});
    rows.push_back({std::to_string(rec.n), format_g(rec.theta),
                    std::to_string(rec.point_index), format_g(rec.z),
                    format_g(rec.bound)});
  }
  report["certificate"] = jcert;
  report["n_max"] = n_max;
  write_csv(out_path(opts, "ltech1_z.csv"),
            {"n", "theta", "point", "z_n", "bound"}, rows);

  gate.flag("require_inequality", cert.inequality_holds);
  gate.ge("min_bound_c", cert.bound_c);
  finish(report, "ltech1", gate, opts);
  return report;
}

json run_overlap_demo(const json& config, const RunOptions& opts) {
  json report = base_report("overlap-demo", config, opts);
  Gate gate(config);

  const Ifs ifs = config_ifs(config);
  if (ifs.ambient_dim != 3)
    throw PreconditionError("overlap-demo: R^3 system required");
  Vec npi = Vec(0.0, 0.0, 1.0);
  if (config.contains("n_pi")) npi = config_vec(config.at("n_pi"));
  const int depth = config.value("depth", 2);

  const SeparationReport sep =
      separation_spectrum(ifs, Direction(npi), depth, opts.max_cells);
  const Direction pi2 =
      two_to_one_direction(ifs, Direction(npi), depth, opts.max_cells);
  const Ifs projected = project_ifs_plane(ifs, pi2);
  const auto overlaps =
      detect_exact_overlaps(projected, config.value("overlap_depth", 2),
                            config.value("overlap_tol", 1e-9), opts.max_cells);

  const int decades = config.value("decades", 5);
  const BoxCountResult dim3 =
      estimate_set_dimension(ifs, decades, opts.max_cells);
  const BoxCountResult dim2 =
      estimate_set_dimension(projected, decades, opts.max_cells);

  report["separation"] = {{"sin_lower", sep.sin_lower},
                          {"sin_upper", sep.sin_upper},
                          {"witness", {to_string(sep.witness.first),
                                       to_string(sep.witness.second)}},
                          {"reliable", sep.reliable}};
  report["pi2_direction"] = {pi2.n.x(), pi2.n.y(), pi2.n.z()};
  report["overlap_pairs"] = json::array();
  for (const auto& [a, b] : overlaps)
    report["overlap_pairs"].push_back({to_string(a), to_string(b)});
  report["dim_unprojected"] = dim3.slope;
  report["dim_projected"] = dim2.slope;

  std::vector<std::vector<std::string>> rows;
  for (const auto& [a, b] : overlaps) rows.push_back({to_string(a), to_string(b)});
  write_csv(out_path(opts, "overlap_pairs.csv"), {"word_a", "word_b"}, rows);

  gate.ge("min_overlap_pairs", static_cast<double>(overlaps.size()));
  gate.le("max_overlap_pairs", static_cast<double>(overlaps.size()));
  finish(report, "overlap-demo", gate, opts);
  return report;
}

json run_sweep(const json& config, const RunOptions& opts) {
  json report = base_report("sweep", config, opts);
  Gate gate(config);

  const Ifs ifs = config_ifs(config);
  const int num = config.value("num_directions", 100);
  const int decades = config.value("decades", 3);
  const auto rows =
      direction_sweep(ifs, num, decades, opts.max_cells, opts.threads);

  std::vector<std::vector<std::string>> csv;
  int low = 0;
  std::array<int, 24> hist{};
  for (const auto& r : rows) {
    csv.push_back({format_g(r.direction.x()), format_g(r.direction.y()),
                   format_g(r.direction.z()), format_g(r.slope),
                   format_g(r.r_squared)});
    if (r.slope < 0.9) ++low;
    const int bin = std::clamp(static_cast<int>(r.slope * 20.0), 0,
                               static_cast<int>(hist.size()) - 1);
    ++hist[static_cast<std::size_t>(bin)];
  }
  write_csv(out_path(opts, "sweep_directions.csv"),
            {"n_x", "n_y", "n_z", "slope", "r2"}, csv);

  std::vector<std::vector<std::string>> hist_rows;
  for (std::size_t b = 0; b < hist.size(); ++b)
    hist_rows.push_back({format_g(0.05 * static_cast<double>(b)),
                         format_g(0.05 * static_cast<double>(b + 1)),
                         std::to_string(hist[b])});
  write_csv(out_path(opts, "sweep_histogram.csv"),
            {"slope_lo", "slope_hi", "count"}, hist_rows);

  const double frac_low = static_cast<double>(low) / rows.size();
  report["num_directions"] = num;
  report["fraction_below_0.9"] = frac_low;

  gate.le("max_low_fraction", frac_low);
  finish(report, "sweep", gate, opts);
  return report;
}

json run_estimate(const json& config, const RunOptions& opts) {
  json report = base_report("estimate", config, opts);
  Gate gate(config);

  Ifs ifs = config_ifs(config);
  if (config.contains("ifs_ops")) {
    for (const auto& op : config.at("ifs_ops")) {
      const std::string kind = op.at("op").get<std::string>();
      if (kind == "product") {
        const int copies = op.value("copies", 2);
        std::vector<Ifs> factors(static_cast<std::size_t>(copies), ifs);
        ifs = product_ifs(factors);
      } else if (kind == "iterate") {
        ifs = iterate(ifs, op.at("n").get<int>(), opts.max_cells);
      } else if (kind == "translate") {
        ifs = translate_ifs(ifs, config_vec(op.at("offset")));
      } else if (kind == "cylinder") {
        std::vector<int> syms;
        for (const auto& s : op.at("word")) syms.push_back(s.get<int>());
        ifs = cylinder_ifs(ifs, Word{syms});
      } else if (kind == "project") {
        ifs = project_ifs(ifs, Direction(config_vec(op.at("n"))));
      } else if (kind == "project_plane") {
        ifs = project_ifs_plane(ifs, Direction(config_vec(op.at("normal"))));
      } else if (kind == "remove") {
        std::vector<Word> words;
        for (const auto& w : op.at("words")) {
          std::vector<int> syms;
          for (const auto& s : w) syms.push_back(s.get<int>());
          words.push_back(Word{syms});
        }
        ifs = remove_words(ifs, words);
      } else {
        throw PreconditionError("estimate: unknown ifs op '" + kind + "'");
      }
    }
  }

  WeightedCloud cloud;
  const std::string sampler = config.value("sampler", std::string("cylinder"));
  if (sampler == "chaos") {
    cloud = sample_chaos(ifs, config.value("points", 100000), opts.seed);
  } else {
    const int depth = config.value("depth", auto_depth(ifs, 1, opts.max_cells));
    cloud = cloud_at_depth(ifs, depth, opts.max_cells);
  }

  if (config.contains("pipeline")) {
    for (const auto& op : config.at("pipeline")) {
      const std::string kind = op.at("op").get<std::string>();
      if (kind == "project") {
        cloud = orthogonal_project_cloud(cloud, Direction(config_vec(op.at("n"))));
      } else if (kind == "radial") {
        cloud = radial_project(cloud, op.value("exclusion_radius", 1e-9));
      } else if (kind == "geodesic") {
        cloud = geodesic_project(cloud);
      } else if (kind == "angle") {
        cloud = circle_angle(cloud);
      } else if (kind == "map") {
        cloud = map_image(smooth_map_from_json(op.at("map")), cloud);
      } else if (kind == "distance") {
        if (op.contains("pin")) {
          const Vec pin = config_vec(op.at("pin"));
          cloud = distance_set(cloud, &pin,
                               op.value("max_pairs", opts.max_cells));
        } else {
          cloud = distance_set(cloud, nullptr,
                               op.value("max_pairs", opts.max_cells));
        }
      } else if (kind == "product") {
        const int copies = op.value("copies", 2);
        std::vector<WeightedCloud> factors(static_cast<std::size_t>(copies),
                                           cloud);
        cloud = algebraic_product(factors, op.value("cap", opts.max_cells));
      } else {
        throw PreconditionError("estimate: unknown pipeline op '" + kind + "'");
      }
    }
  }

  BoxCountResult box;
  if (config.contains("scales")) {
    std::vector<double> scales;
    for (const auto& s : config.at("scales")) scales.push_back(parse_real(s));
    box = box_count(cloud, scales);
  } else if (cloud.dim == 1) {
    box = box_of_1d_cloud(cloud,
                          config.contains("base")
                              ? parse_real(config.at("base"))
                              : max_ratio(ifs),
                          config.value("decades", 6), report);
  } else {
    const double base = config.contains("base") ? parse_real(config.at("base"))
                                                : max_ratio(ifs);
    std::vector<double> scales = adic_scales(
        base, config.value("decades", 6) + 1, 4.0 * cloud.resolution);
    if (scales.size() < 2)
      throw PreconditionError("estimate: no usable scales above resolution");
    box = box_count(cloud, scales);
  }

  report["points"] = cloud.size();
  report["estimate"] = box.slope;
  report["box"] = box_to_json(box);

  write_counts_csv(out_path(opts, "estimate_counts.csv"), box);
  write_loglog_dat(out_path(opts, "estimate_loglog.dat"), box);

  gate.ge("min_slope", box.slope);
  gate.le("max_slope", box.slope);
  finish(report, "estimate", gate, opts);
  return report;
}

json run_experiment(const std::string& name, const json& config,
                    const RunOptions& opts) {
  if (name == "cprod2") return run_cprod2(config, opts);
  if (name == "tprod") return run_tprod(config, opts);
  if (name == "tdistance") return run_tdistance(config, opts);
  if (name == "cradproj") return run_cradproj(config, opts);
  if (name == "ltech1") return run_ltech1(config, opts);
  if (name == "overlap-demo") return run_overlap_demo(config, opts);
  if (name == "sweep") return run_sweep(config, opts);
  if (name == "estimate") return run_estimate(config, opts);
  std::string names;
  for (const auto& n : experiment_names()) names += " " + n;
  throw NotFoundError("unknown experiment '" + name + "'; available:" + names);
}

}  // namespace fraclab
