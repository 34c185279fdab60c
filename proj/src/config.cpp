#include "tmscatter/config.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <set>
#include <sstream>

#include <json.hpp>

#include "tmscatter/closed_forms.hpp"
#include "tmscatter/csv.hpp"
#include "tmscatter/invisibility.hpp"
#include "tmscatter/oracles.hpp"

namespace tmscatter {

using nlohmann::json;

namespace {

constexpr double kDegToRad = std::numbers::pi / 180.0;

void expect_keys(const json& obj, const std::set<std::string>& allowed,
                 const std::string& ctx) {
  if (!obj.is_object()) throw ConfigError(ctx + ": expected an object");
  for (auto it = obj.begin(); it != obj.end(); ++it)
    if (!allowed.count(it.key()))
      throw ConfigError(ctx + ": unknown key \"" + it.key() + "\"");
}

double angle_field(const json& obj, const std::string& name, double fallback) {
  const std::string deg = name + "_deg";
  if (obj.contains(name) && obj.contains(deg))
    throw ConfigError("incidence: give either " + name + " or " + deg);
  if (obj.contains(name)) return obj.at(name).get<double>();
  if (obj.contains(deg)) return obj.at(deg).get<double>() * kDegToRad;
  return fallback;
}

Complex complex_field(const json& obj, const std::string& stem) {
  return Complex(obj.value(stem + "_re", 0.0), obj.value(stem + "_im", 0.0));
}

PotentialSpec parse_custom_table_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("custom_table: cannot open " + path);
  std::string line;
  std::vector<double> Ks, xs;
  std::vector<Complex> vals;
  bool have_header = false;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string cellstr;
    std::vector<std::string> cells;
    while (std::getline(ls, cellstr, ',')) cells.push_back(cellstr);
    if (!have_header) {
      if (cells.empty() || cells[0] != "K")
        throw ConfigError("custom_table: first data line must start with K");
      for (size_t i = 1; i < cells.size(); ++i)
        Ks.push_back(std::stod(cells[i]));
      have_header = true;
      continue;
    }
    if (cells.size() != 1 + 2 * Ks.size())
      throw ConfigError("custom_table: row width must be 1 + 2 * n_K");
    xs.push_back(std::stod(cells[0]));
    for (size_t i = 0; i < Ks.size(); ++i)
      vals.emplace_back(std::stod(cells[1 + 2 * i]),
                        std::stod(cells[2 + 2 * i]));
  }
  return PotentialSpec::custom_table(std::move(xs), std::move(Ks),
                                     std::move(vals));
}

void parse_potential(const json& p, RunConfig& cfg) {
  if (!p.contains("type")) throw ConfigError("potential: missing type");
  const std::string type = p.at("type").get<std::string>();
  if (type == "zero") {
    expect_keys(p, {"type"}, "potential");
    cfg.pot2 = PotentialSpec::zero();
  } else if (type == "delta_line") {
    expect_keys(p, {"type", "z_re", "z_im", "a", "x0"}, "potential");
    cfg.pot2 = PotentialSpec::delta_line(complex_field(p, "z"),
                                         p.value("a", 0.0), p.value("x0", 0.0));
  } else if (type == "multi_delta") {
    expect_keys(p, {"type", "terms", "x0"}, "potential");
    std::vector<DeltaTerm> terms;
    for (const auto& t : p.at("terms")) {
      expect_keys(t, {"z_re", "z_im", "a"}, "potential.terms");
      terms.push_back({complex_field(t, "z"), t.value("a", 0.0)});
    }
    cfg.pot2 = PotentialSpec::multi_delta(std::move(terms), p.value("x0", 0.0));
  } else if (type == "gaussian") {
    expect_keys(p, {"type", "amp_re", "amp_im", "sigma_x", "sigma_y",
                    "support_sigmas"},
                "potential");
    cfg.pot2 = PotentialSpec::gaussian(
        complex_field(p, "amp"), p.value("sigma_x", 0.5),
        p.value("sigma_y", 0.5), p.value("support_sigmas", 4.0));
  } else if (type == "band_limited") {
    expect_keys(p, {"type", "amp_re", "amp_im", "beta_lo", "beta_hi",
                    "a_minus", "a_plus", "q_mod"},
                "potential");
    cfg.pot2 = PotentialSpec::band_limited(
        complex_field(p, "amp"), p.at("beta_lo").get<double>(),
        p.at("beta_hi").get<double>(), p.value("a_minus", -1.0),
        p.value("a_plus", 1.0), p.value("q_mod", 0.0));
  } else if (type == "barrier") {
    expect_keys(p, {"type", "height_re", "height_im", "x_lo", "x_hi"},
                "potential");
    cfg.pot2 = PotentialSpec::barrier(complex_field(p, "height"),
                                      p.value("x_lo", 0.0),
                                      p.value("x_hi", 1.0));
  } else if (type == "custom_table") {
    expect_keys(p, {"type", "csv"}, "potential");
    cfg.pot2 = parse_custom_table_csv(p.at("csv").get<std::string>());
  } else if (type == "point_delta3") {
    expect_keys(p, {"type", "z_re", "z_im", "z0"}, "potential");
    cfg.pot3 =
        PotentialSpec3::point_delta(complex_field(p, "z"), p.value("z0", 0.0));
    cfg.is_3d = true;
  } else if (type == "gaussian3") {
    expect_keys(p, {"type", "amp_re", "amp_im", "sigma_x", "sigma_y",
                    "sigma_z", "support_sigmas"},
                "potential");
    cfg.pot3 = PotentialSpec3::gaussian(
        complex_field(p, "amp"), p.value("sigma_x", 0.5),
        p.value("sigma_y", 0.5), p.value("sigma_z", 0.5),
        p.value("support_sigmas", 4.0));
    cfg.is_3d = true;
  } else if (type == "band_limited_x3") {
    expect_keys(p, {"type", "amp_re", "amp_im", "beta_lo", "beta_hi",
                    "sigma_y", "z_minus", "z_plus"},
                "potential");
    cfg.pot3 = PotentialSpec3::band_limited_x(
        complex_field(p, "amp"), p.at("beta_lo").get<double>(),
        p.at("beta_hi").get<double>(), p.value("sigma_y", 1.0),
        p.value("z_minus", -1.0), p.value("z_plus", 1.0));
    cfg.is_3d = true;
  } else {
    throw ConfigError("potential: unknown type \"" + type + "\"");
  }
}

}  // namespace

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open " + path);
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: malformed JSON: ") + e.what());
  }

  expect_keys(doc,
              {"grid", "grid3", "potential", "incidence", "solver", "output",
               "certify", "scan", "compose_bench", "oracle"},
              "config");

  RunConfig cfg;
  if (doc.contains("grid")) {
    const json& g = doc["grid"];
    expect_keys(g, {"n_osc", "n_ev", "p_max_over_k"}, "grid");
    cfg.grid.n_osc = g.value("n_osc", cfg.grid.n_osc);
    cfg.grid.n_ev = g.value("n_ev", cfg.grid.n_ev);
    cfg.grid.p_max_over_k = g.value("p_max_over_k", cfg.grid.p_max_over_k);
  }
  if (doc.contains("grid3")) {
    const json& g = doc["grid3"];
    expect_keys(g, {"n_radial", "n_azimuthal", "p_max_over_k", "n_ev_radial"},
                "grid3");
    cfg.grid3.n_radial = g.value("n_radial", cfg.grid3.n_radial);
    cfg.grid3.n_azimuthal = g.value("n_azimuthal", cfg.grid3.n_azimuthal);
    cfg.grid3.p_max_over_k = g.value("p_max_over_k", cfg.grid3.p_max_over_k);
    cfg.grid3.n_ev_radial = g.value("n_ev_radial", cfg.grid3.n_ev_radial);
  }
  if (!doc.contains("potential")) throw ConfigError("config: missing potential");
  parse_potential(doc["potential"], cfg);

  if (doc.contains("incidence")) {
    const json& inc = doc["incidence"];
    expect_keys(inc,
                {"k", "theta0", "theta0_deg", "phi0", "phi0_deg", "side"},
                "incidence");
    cfg.incidence.k = inc.value("k", 1.0);
    cfg.incidence.theta0 = angle_field(inc, "theta0", 0.0);
    cfg.incidence.phi0 = angle_field(inc, "phi0", 0.0);
    cfg.incidence.side = inc.value("side", std::string("right"));
    if (cfg.incidence.side != "left" && cfg.incidence.side != "right")
      throw ConfigError("incidence: side must be left or right");
  }
  if (cfg.incidence.k <= 0.0) throw ConfigError("incidence: k must be > 0");

  if (doc.contains("solver")) {
    const json& s = doc["solver"];
    expect_keys(s,
                {"steps", "slices", "scheme", "n_theta", "n_phi",
                 "grazing_margin"},
                "solver");
    cfg.solver.steps = s.value("steps", cfg.solver.steps);
    cfg.solver.slices = s.value("slices", cfg.solver.slices);
    cfg.solver.scheme = s.value("scheme", cfg.solver.scheme);
    cfg.solver.n_theta = s.value("n_theta", cfg.solver.n_theta);
    cfg.solver.n_phi = s.value("n_phi", cfg.solver.n_phi);
    cfg.solver.grazing_margin =
        s.value("grazing_margin", cfg.solver.grazing_margin);
    if (cfg.solver.scheme != "magnus" && cfg.solver.scheme != "rk4")
      throw ConfigError("solver: scheme must be magnus or rk4");
  }
  if (!doc.contains("output") || !doc["output"].contains("path"))
    throw ConfigError("config: missing output.path");
  expect_keys(doc["output"], {"path"}, "output");
  cfg.output_path = doc["output"]["path"].get<std::string>();

  if (doc.contains("certify")) {
    const json& c = doc["certify"];
    expect_keys(c,
                {"alpha", "k_samples", "theta0_samples",
                 "theta0_samples_deg"},
                "certify");
    CertifyConfig cc;
    cc.alpha = c.at("alpha").get<double>();
    for (const auto& v : c.at("k_samples")) cc.k_samples.push_back(v);
    if (c.contains("theta0_samples"))
      for (const auto& v : c["theta0_samples"]) cc.theta0_samples.push_back(v);
    if (c.contains("theta0_samples_deg"))
      for (const auto& v : c["theta0_samples_deg"])
        cc.theta0_samples.push_back(v.get<double>() * kDegToRad);
    if (cc.theta0_samples.empty()) cc.theta0_samples = {0.0, 0.5, -0.5};
    cfg.certify = cc;
  }
  if (doc.contains("scan")) {
    const json& s = doc["scan"];
    expect_keys(s, {"k_lo", "k_hi", "n_k"}, "scan");
    ScanConfig sc;
    sc.k_lo = s.at("k_lo").get<double>();
    sc.k_hi = s.at("k_hi").get<double>();
    sc.n_k = s.at("n_k").get<int>();
    cfg.scan = sc;
  }
  if (doc.contains("compose_bench")) {
    const json& cb = doc["compose_bench"];
    expect_keys(cb, {"slice_counts"}, "compose_bench");
    ComposeBenchConfig cc;
    cc.slice_counts.clear();
    for (const auto& v : cb.at("slice_counts")) cc.slice_counts.push_back(v);
    cfg.compose_bench = cc;
  }
  if (doc.contains("oracle")) {
    const json& o = doc["oracle"];
    expect_keys(o, {"order", "cells", "angles"}, "oracle");
    OracleConfig oc;
    oc.order = o.value("order", 8);
    oc.cells = o.value("cells", 64);
    if (o.contains("angles"))
      for (const auto& v : o["angles"]) oc.angles.push_back(v);
    if (oc.angles.empty()) oc.angles = {0.3, 1.0, 2.2, 2.9, -0.8};
    cfg.oracle = oc;
  }

  cfg.config_hash = fnv1a_hex(doc.dump());
  return cfg;
}

namespace {

EngineOptions engine_options(const RunConfig& cfg) {
  EngineOptions opts;
  opts.steps = cfg.solver.steps;
  opts.slices = cfg.solver.slices;
  opts.scheme =
      cfg.solver.scheme == "rk4" ? Scheme::Rk4 : Scheme::MidpointMagnus;
  return opts;
}

void echo_common(CsvWriter& w, const RunConfig& cfg) {
  w.comment("config_hash", cfg.config_hash);
  w.comment_num("k", cfg.incidence.k);
  w.comment_num("theta0_rad", cfg.incidence.theta0);
  w.comment("side", cfg.incidence.side);
  if (cfg.is_3d) {
    w.comment_num("phi0_rad", cfg.incidence.phi0);
    w.comment_num("n_radial", cfg.grid3.n_radial);
    w.comment_num("n_azimuthal", cfg.grid3.n_azimuthal);
    w.comment_num("p_max_over_k", cfg.grid3.p_max_over_k);
    w.comment_num("n_ev_radial", cfg.grid3.n_ev_radial);
  } else {
    w.comment_num("n_osc", cfg.grid.n_osc);
    w.comment_num("n_ev", cfg.grid.n_ev);
    w.comment_num("p_max_over_k", cfg.grid.p_max_over_k);
  }
  w.comment_num("steps", cfg.solver.steps);
  w.comment_num("slices", cfg.solver.slices);
  w.comment("scheme", cfg.solver.scheme);
  w.comment_num("n_theta", cfg.solver.n_theta);
  w.comment_num("grazing_margin", cfg.solver.grazing_margin);
}

int run_amplitude_like(const RunConfig& cfg, bool cross_section_only) {
  CsvWriter w;
  echo_common(w, cfg);
  if (cfg.is_3d) {
    const DiskGrid grid = build_disk_grid(
        cfg.incidence.k, cfg.grid3.n_radial, cfg.grid3.n_azimuthal,
        cfg.grid3.p_max_over_k * cfg.incidence.k, cfg.grid3.n_ev_radial);
    const Side3 side =
        cfg.incidence.side == "left" ? Side3::Left : Side3::Right;
    const WaveCoefficients3 wc =
        solve_3d(cfg.pot3, grid, cfg.incidence.theta0, cfg.incidence.phi0,
                 side, engine_options(cfg));
    if (wc.near_singular) {
      std::cerr << "numerical failure: spectral-singularity candidate "
                   "(condition "
                << wc.condition << ")\n";
      return 3;
    }
    const auto samples =
        amplitude_3d(wc, grid, cfg.solver.n_theta, cfg.solver.n_phi,
                     cfg.solver.grazing_margin);
    if (cross_section_only) {
      w.columns({"theta_rad", "phi_rad", "abs2_f"});
      for (const auto& s : samples)
        w.row({s.theta, s.phi, std::norm(s.f)});
    } else {
      w.columns({"theta_rad", "phi_rad", "re_f", "im_f", "abs2_f"});
      for (const auto& s : samples)
        w.row({s.theta, s.phi, s.f.real(), s.f.imag(), std::norm(s.f)});
    }
  } else {
    const MomentumGrid grid = build_grid(
        cfg.incidence.k, cfg.grid.n_osc,
        cfg.grid.p_max_over_k * cfg.incidence.k, cfg.grid.n_ev);
    const Side side = cfg.incidence.side == "left" ? Side::Left : Side::Right;
    const double p0 = cfg.incidence.k * std::sin(cfg.incidence.theta0);
    const FundamentalSolve fs =
        fundamental_with_delta(cfg.pot2, grid, p0, engine_options(cfg));
    const WaveCoefficients wc = solve_incident(fs, cfg.incidence.theta0, side);
    if (wc.near_singular) {
      std::cerr << "numerical failure: spectral-singularity candidate "
                   "(condition "
                << wc.condition << ")\n";
      return 3;
    }
    const AmplitudeTable tab =
        amplitude(wc, cfg.solver.n_theta, cfg.solver.grazing_margin);
    if (cross_section_only) {
      w.columns({"theta_rad", "abs2_f"});
      for (const auto& [theta, sigma] : cross_section(tab)) w.row({theta, sigma});
    } else {
      w.columns({"theta_rad", "re_f", "im_f", "abs2_f"});
      for (const auto& s : tab.samples)
        w.row({s.theta, s.f.real(), s.f.imag(), std::norm(s.f)});
    }
  }
  w.write_atomic(cfg.output_path);
  return 0;
}

int run_certify(const RunConfig& cfg) {
  if (!cfg.certify) throw ConfigError("certify: missing certify section");
  const CertifyConfig& cc = *cfg.certify;
  std::string text;
  bool certified = false;
  if (cfg.is_3d) {
    DiskGridPolicyParams params;
    params.n_radial = cfg.grid3.n_radial;
    params.n_azimuthal = cfg.grid3.n_azimuthal;
    params.p_max_over_k = cfg.grid3.p_max_over_k;
    params.n_ev_radial = cfg.grid3.n_ev_radial;
    const Certificate3 cert = certify_invisibility_3d(
        cfg.pot3, cc.alpha, cc.k_samples, params, engine_options(cfg));
    std::ostringstream os;
    os << "{\n  \"alpha\": " << fmt17(cert.alpha)
       << ",\n  \"premise_max_abs\": " << fmt17(cert.premise_max_abs)
       << ",\n  \"worst_m_residual\": " << fmt17(cert.worst_m_residual)
       << ",\n  \"worst_f\": " << fmt17(cert.worst_f)
       << ",\n  \"tol\": " << fmt17(cert.tol) << ",\n  \"certified\": "
       << (cert.certified ? "true" : "false") << "\n}\n";
    text = os.str();
    certified = cert.certified;
  } else {
    const InvisibilityCertificate cert = certify_invisibility(
        cfg.pot2, cc.alpha, cc.k_samples, cc.theta0_samples, cfg.grid.n_osc,
        cfg.grid.p_max_over_k, cfg.grid.n_ev, engine_options(cfg));
    text = certificate_to_json(cert);
    certified = cert.certified;
  }
  const std::string tmp = cfg.output_path + ".tmp";
  {
    std::ofstream out(tmp);
    out << text;
  }
  if (std::rename(tmp.c_str(), cfg.output_path.c_str()) != 0)
    throw ConfigError("certify: cannot write " + cfg.output_path);
  return certified ? 0 : 3;
}

int run_born_exact(const RunConfig& cfg) {
  CsvWriter w;
  echo_common(w, cfg);
  if (cfg.is_3d) {
    DiskGridPolicyParams params;
    params.n_radial = cfg.grid3.n_radial;
    params.n_azimuthal = cfg.grid3.n_azimuthal;
    params.p_max_over_k = cfg.grid3.p_max_over_k;
    params.n_ev_radial = cfg.grid3.n_ev_radial;
    const BornReport3 rep =
        born_exactness_3d(cfg.pot3, cfg.incidence.k, cfg.incidence.theta0,
                          cfg.incidence.phi0, params, engine_options(cfg));
    w.comment_num("max_rel_diff", rep.max_rel_diff);
    w.comment_num("dyson1_residual", rep.dyson1_residual);
    w.columns({"max_rel_diff", "dyson1_residual"});
    w.row({rep.max_rel_diff, rep.dyson1_residual});
  } else {
    const MomentumGrid grid = build_grid(
        cfg.incidence.k, cfg.grid.n_osc,
        cfg.grid.p_max_over_k * cfg.incidence.k, cfg.grid.n_ev);
    const BornExactnessReport rep = born_exactness_report(
        cfg.pot2, cfg.incidence.k, cfg.incidence.theta0, cfg.solver.n_theta,
        grid, engine_options(cfg));
    w.comment_num("max_rel_diff", rep.max_rel_diff);
    w.comment_num("nilpotency_residual", rep.nilpotency_residual);
    w.columns({"theta_rad", "re_f_engine", "im_f_engine", "re_f_born",
               "im_f_born", "abs_diff"});
    for (size_t i = 0; i < rep.thetas.size(); ++i)
      w.row({rep.thetas[i], rep.f_engine[i].real(), rep.f_engine[i].imag(),
             rep.f_born[i].real(), rep.f_born[i].imag(),
             std::abs(rep.f_engine[i] - rep.f_born[i])});
  }
  w.write_atomic(cfg.output_path);
  return 0;
}

int run_scan_ss(const RunConfig& cfg) {
  if (!cfg.scan) throw ConfigError("scan-ss: missing scan section");
  if (cfg.is_3d) throw ConfigError("scan-ss: 2D potentials only");
  CsvWriter w;
  echo_common(w, cfg);
  ScanGridPolicy policy;
  policy.n_osc = cfg.grid.n_osc;
  policy.p_max_over_k = cfg.grid.p_max_over_k;
  policy.n_ev = cfg.grid.n_ev;
  const auto rows =
      spectral_singularity_scan(cfg.pot2, cfg.scan->k_lo, cfg.scan->k_hi,
                                cfg.scan->n_k, policy, engine_options(cfg));
  w.columns({"k", "sigma_min"});
  for (const auto& [k, s] : rows) w.row({k, s});
  w.write_atomic(cfg.output_path);
  return 0;
}

int run_compose_bench(const RunConfig& cfg) {
  if (!cfg.compose_bench)
    throw ConfigError("compose-bench: missing compose_bench section");
  if (cfg.is_3d) throw ConfigError("compose-bench: 2D potentials only");
  CsvWriter w;
  echo_common(w, cfg);
  const MomentumGrid grid =
      build_grid(cfg.incidence.k, cfg.grid.n_osc,
                 cfg.grid.p_max_over_k * cfg.incidence.k, cfg.grid.n_ev);
  w.columns({"slices", "max_diff_osc_vs_prev"});
  BlockOperator prev;
  bool first = true;
  for (int slices : cfg.compose_bench->slice_counts) {
    EngineOptions opts = engine_options(cfg);
    opts.slices = slices;
    const BlockOperator aux = auxiliary_tm(cfg.pot2, grid, opts);
    const BlockOperator osc = aux.osc_restriction();
    if (!first)
      w.row({static_cast<double>(slices), (osc - prev).max_abs()});
    else
      w.row({static_cast<double>(slices), 0.0});
    prev = osc;
    first = false;
  }
  w.write_atomic(cfg.output_path);
  return 0;
}

int run_oracle_compare(const RunConfig& cfg) {
  if (!cfg.oracle) throw ConfigError("oracle-compare: missing oracle section");
  if (cfg.is_3d) throw ConfigError("oracle-compare: 2D potentials only");
  CsvWriter w;
  echo_common(w, cfg);
  const MomentumGrid grid =
      build_grid(cfg.incidence.k, cfg.grid.n_osc,
                 cfg.grid.p_max_over_k * cfg.incidence.k, cfg.grid.n_ev);
  const double p0 = cfg.incidence.k * std::sin(cfg.incidence.theta0);
  const FundamentalSolve fs =
      fundamental_with_delta(cfg.pot2, grid, p0, engine_options(cfg));
  const Side side = cfg.incidence.side == "left" ? Side::Left : Side::Right;
  const WaveCoefficients wc = solve_incident(fs, cfg.incidence.theta0, side);

  std::vector<double> nodes(grid.osc_nodes.begin(), grid.osc_nodes.end());
  const VectorXd bw = barycentric_weights(nodes);
  const int no = grid.n_osc();
  auto engine_f = [&](double theta) {
    const bool forward = std::cos(theta) > 0.0;
    const VectorXcd vals = forward ? wc.a_plus.values.head(no)
                                   : wc.b_minus.values.head(no);
    const Complex v = barycentric_eval(nodes, bw, vals,
                                       cfg.incidence.k * std::sin(theta));
    return Complex(-I_UNIT / std::sqrt(2.0 * std::numbers::pi)) * v;
  };

  const BornSeriesResult oracle = born_series_greens_2d(
      cfg.pot2, cfg.incidence.k, cfg.incidence.theta0, cfg.oracle->angles,
      cfg.oracle->order, cfg.oracle->cells);
  w.comment_num("oracle_order", cfg.oracle->order);
  w.comment_num("oracle_cells", cfg.oracle->cells);
  w.comment_num("oracle_decay_ratio", oracle.decay_ratio);
  w.columns({"theta_rad", "re_f_engine", "im_f_engine", "re_f_oracle",
             "im_f_oracle", "abs_diff"});
  for (size_t i = 0; i < cfg.oracle->angles.size(); ++i) {
    const Complex fe = engine_f(cfg.oracle->angles[i]);
    const Complex fo = oracle.f[i];
    w.row({cfg.oracle->angles[i], fe.real(), fe.imag(), fo.real(), fo.imag(),
           std::abs(fe - fo)});
  }
  w.write_atomic(cfg.output_path);
  return 0;
}

}  // namespace

int run_subcommand(const std::string& subcommand,
                   const std::string& config_path) {
  try {
    const RunConfig cfg = load_config(config_path);
    if (subcommand == "amplitude") return run_amplitude_like(cfg, false);
    if (subcommand == "cross-section") return run_amplitude_like(cfg, true);
    if (subcommand == "certify") return run_certify(cfg);
    if (subcommand == "born-exact") return run_born_exact(cfg);
    if (subcommand == "scan-ss") return run_scan_ss(cfg);
    if (subcommand == "compose-bench") return run_compose_bench(cfg);
    if (subcommand == "oracle-compare") return run_oracle_compare(cfg);
    std::cerr << "unknown subcommand: " << subcommand << "\n";
    return 2;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const PremiseError& e) {
    std::cerr << "certificate premise failure: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace tmscatter
