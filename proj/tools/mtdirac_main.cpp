// Command-line front end: exact solve to CSV, invariant verification,
// boost checks, entanglement/contact-interaction diagnostics and the
// minimal-distance demonstration. JSON config with flag overrides; all
// randomness is seeded for byte-identical reruns.

#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>

#include "mtdirac/analysis.hpp"
#include "mtdirac/lorentz.hpp"
#include "mtdirac/verify.hpp"

using nlohmann::json;
namespace fs = std::filesystem;
using namespace mtdirac;

namespace {

constexpr double kPi = 3.14159265358979323846;

constexpr int kExitOk = 0;
constexpr int kExitViolation = 2;
constexpr int kExitInputError = 3;

std::string g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

struct RunConfig {
  int n = 2;
  std::vector<std::string> phi_args;  // "k=angle" (1-based k) or "angle"
  int smoothness = 6;
  std::string family = "bump";
  std::string initial_path;
  double boost = 0.0;
  std::vector<std::string> surfaces;
  int grid = 48;
  double tol = 1e-9;
  uint64_t seed = 12345;
  std::string out_dir = "out";
  std::string config_path;

  std::string save_initial_path;

  // entangle / delta / alpha extras
  std::string times = "0,0.8,1.8,2.2,2.6,4.0";
  double time_point = 2.0;
  double eps = 3e-4;
  double a1 = 1.0, b1 = 2.0, a2 = 5.0, b2 = 6.0, alpha_sq = 6.0;
  std::string alpha_g = "linear";
};

void apply_config_file(RunConfig& cfg) {
  if (cfg.config_path.empty()) return;
  std::ifstream in(cfg.config_path);
  if (!in) throw std::runtime_error("cannot open config file " + cfg.config_path);
  json j = json::parse(in);
  if (j.contains("n")) cfg.n = j["n"].get<int>();
  if (j.contains("phi")) {
    cfg.phi_args.clear();
    if (j["phi"].is_array()) {
      for (const auto& v : j["phi"]) cfg.phi_args.push_back(v.dump());
    } else {
      cfg.phi_args.push_back(j["phi"].dump());
    }
  }
  if (j.contains("smoothness")) cfg.smoothness = j["smoothness"].get<int>();
  if (j.contains("family")) cfg.family = j["family"].get<std::string>();
  if (j.contains("initial")) cfg.initial_path = j["initial"].get<std::string>();
  if (j.contains("boost")) cfg.boost = j["boost"].get<double>();
  if (j.contains("surfaces"))
    for (const auto& s : j["surfaces"]) cfg.surfaces.push_back(s.dump());
  if (j.contains("grid")) cfg.grid = j["grid"].get<int>();
  if (j.contains("tol")) cfg.tol = j["tol"].get<double>();
  if (j.contains("seed")) cfg.seed = j["seed"].get<uint64_t>();
  if (j.contains("out")) cfg.out_dir = j["out"].get<std::string>();
}

ModelParams make_params(const RunConfig& cfg) {
  std::vector<double> phases(static_cast<size_t>(cfg.n - 1), kPi);
  for (const std::string& arg : cfg.phi_args) {
    const auto eq = arg.find('=');
    if (eq == std::string::npos) {
      const double v = std::stod(arg);
      std::fill(phases.begin(), phases.end(), v);
    } else {
      const int k = std::stoi(arg.substr(0, eq));
      if (k < 1 || k > cfg.n - 1) throw std::runtime_error("--phi index out of range (1..N-1)");
      phases[static_cast<size_t>(k - 1)] = std::stod(arg.substr(eq + 1));
    }
  }
  return ModelParams(cfg.n, std::move(phases), cfg.smoothness);
}

Packet packet_from_json(const json& j) {
  Packet p;
  p.center = j.value("center", 0.0);
  p.width = j.value("width", 1.0);
  p.order = j.value("order", 6);
  if (j.contains("amp_minus"))
    p.amp_minus = complex(j["amp_minus"][0].get<double>(), j["amp_minus"][1].get<double>());
  if (j.contains("amp_plus"))
    p.amp_plus = complex(j["amp_plus"][0].get<double>(), j["amp_plus"][1].get<double>());
  p.wavenumber_minus = j.value("wavenumber_minus", 0.0);
  p.wavenumber_plus = j.value("wavenumber_plus", 0.0);
  return p;
}

InitialData make_data(const RunConfig& cfg, const ModelParams& params) {
  if (!cfg.initial_path.empty()) return load_initial_data(cfg.initial_path);

  const auto colon = cfg.family.find(':');
  const std::string name = cfg.family.substr(0, colon);
  json args = json::object();
  if (colon != std::string::npos) args = json::parse(cfg.family.substr(colon + 1));

  if (name == "bump" || name == "wedge") {
    if (args.contains("packets")) {
      std::vector<Packet> packets;
      for (const auto& pj : args["packets"]) packets.push_back(packet_from_json(pj));
      return wedge_family(packets);
    }
    return wedge_family(verify::standard_packets(params.n(), params.smoothness(),
                                                 args.value("modulated", false)));
  }
  if (name == "reflect") {
    return reflect_family(params, args.value("radius", 3.0), args.value("amp_factor", 1.0),
                          args.value("phase_offset", 0.0));
  }
  if (name == "product") {
    Packet right, left;
    right.center = args.value("right_center", 2.2);
    right.width = args.value("width", 0.8);
    right.order = params.smoothness();
    right.amp_plus = std::polar(0.9, 0.3);
    left.center = args.value("left_center", -2.2);
    left.width = args.value("width", 0.8);
    left.order = params.smoothness();
    left.amp_minus = std::polar(1.1, -0.5);
    if (args.contains("right")) right = packet_from_json(args["right"]);
    if (args.contains("left")) left = packet_from_json(args["left"]);
    return ProductFamily(right, left).to_initial_data();
  }
  throw std::runtime_error("unknown family '" + name + "' (use bump|wedge|reflect|product)");
}

Hypersurface surface_from_json(const json& j) {
  const std::string type = j.value("type", "flat");
  const json params = j.value("params", json::object());
  if (type == "flat") return Hypersurface::flat(params.value("t0", 0.0));
  if (type == "boost")
    return Hypersurface::tilted(params.value("t0", 0.0), params.value("beta", 0.0));
  if (type == "tanh") {
    std::vector<TanhTerm> terms;
    if (params.contains("terms")) {
      for (const auto& tj : params["terms"])
        terms.push_back(TanhTerm{tj.value("amplitude", 0.3), tj.value("rate", 0.8),
                                 tj.value("center", 0.0)});
    } else {
      terms.push_back(TanhTerm{params.value("amplitude", 0.3), params.value("rate", 0.8),
                               params.value("center", 0.0)});
    }
    return Hypersurface::tanh_profile(params.value("t0", 0.0), std::move(terms));
  }
  throw std::runtime_error("unknown surface type '" + type + "' (use flat|boost|tanh)");
}

Hypersurface surface_from_string(const std::string& s) {
  if (s == "flat" || s.empty()) return Hypersurface::flat(0.0);
  if (!s.empty() && s.front() == '{') return surface_from_json(json::parse(s));
  throw std::runtime_error("surface must be 'flat' or a JSON object");
}

json suite_to_json(const verify::SuiteResult& r) {
  json j{{"name", r.name},          {"pass", r.pass},
         {"statistic", r.statistic}, {"threshold", r.threshold},
         {"runtime_seconds", r.runtime_seconds}, {"detail", r.detail}};
  if (!r.values.empty()) {
    json vals = json::array();
    for (const auto& [label, value] : r.values)
      vals.push_back(json{{"label", label}, {"value", value}});
    j["values"] = vals;
  }
  return j;
}

json validation_to_json(const ValidationReport& report) {
  json entries = json::array();
  for (const auto& e : report.entries)
    entries.push_back(json{{"check", e.check},
                           {"stratum", e.stratum},
                           {"order", e.order},
                           {"violation", e.violation},
                           {"tolerance", e.tolerance},
                           {"pass", e.pass},
                           {"note", e.note}});
  return json{{"pass", report.pass()}, {"entries", entries}};
}

void write_json(const fs::path& path, const json& j) {
  std::ofstream out(path);
  out << j.dump(2) << "\n";
}

std::vector<double> parse_times(const std::string& s) {
  std::vector<double> out;
  std::string tok;
  std::istringstream is(s);
  while (std::getline(is, tok, ',')) out.push_back(std::stod(tok));
  return out;
}

// Ordered z-tuples over a uniform grid, passed to fn as a span.
void for_each_ordered_tuple(int n, double lo, double hi, int nodes,
                            const std::function<void(std::span<const double>)>& fn) {
  std::vector<int> idx(static_cast<size_t>(n), 0);
  std::vector<double> zs(static_cast<size_t>(n));
  for (;;) {
    for (int k = 0; k < n; ++k)
      zs[static_cast<size_t>(k)] =
          lo + (hi - lo) * static_cast<double>(idx[static_cast<size_t>(k)]) / (nodes - 1);
    fn(zs);
    int k = n - 1;
    while (k >= 0 && idx[static_cast<size_t>(k)] == nodes - 1) --k;
    if (k < 0) break;
    const int v = idx[static_cast<size_t>(k)] + 1;
    for (int l = k; l < n; ++l) idx[static_cast<size_t>(l)] = v;
  }
}

int cmd_solve(const RunConfig& cfg) {
  const ModelParams params = make_params(cfg);
  const WaveFunction psi(params, make_data(cfg, params));
  fs::create_directories(cfg.out_dir);
  if (!cfg.save_initial_path.empty())
    save_initial_data(psi.data(), cfg.save_initial_path, std::max(cfg.grid, 9));

  std::vector<std::string> surface_specs = cfg.surfaces;
  if (surface_specs.empty()) surface_specs.push_back("flat");

  const bool boosted = cfg.boost != 0.0;
  const BoostedWaveFunction bw = boost_wavefunction(Boost{cfg.boost}, psi);
  const FieldView field = boosted ? field_view(bw) : field_view(psi);

  const int nc = psi.n_components();
  std::vector<complex> buf(static_cast<size_t>(nc));
  for (size_t si = 0; si < surface_specs.size(); ++si) {
    const Hypersurface sigma = surface_from_string(surface_specs[si]);
    const double box = propagation_box(field.support_radius, sigma);
    const fs::path path = fs::path(cfg.out_dir) / ("solve_surface" + std::to_string(si) + ".csv");
    std::ofstream out(path);
    for (int k = 0; k < psi.n(); ++k) out << "t" << (k + 1) << ",z" << (k + 1) << ",";
    for (int c = 0; c < nc; ++c) out << "re" << (c + 1) << ",im" << (c + 1) << (c + 1 < nc ? "," : "");
    out << "\n";
    for_each_ordered_tuple(psi.n(), -box, box, cfg.grid, [&](std::span<const double> zs) {
      std::vector<Event> ev(static_cast<size_t>(psi.n()));
      for (int k = 0; k < psi.n(); ++k)
        ev[static_cast<size_t>(k)] = Event{sigma.time(zs[static_cast<size_t>(k)]), zs[static_cast<size_t>(k)]};
      const Configuration c(std::move(ev));
      field.eval_all(c, buf);
      for (int k = 0; k < psi.n(); ++k) out << g17(c[k].t) << ',' << g17(c[k].z) << ',';
      for (int i = 0; i < nc; ++i)
        out << g17(buf[static_cast<size_t>(i)].real()) << ',' << g17(buf[static_cast<size_t>(i)].imag())
            << (i + 1 < nc ? "," : "");
      out << "\n";
    });
    std::cout << "wrote " << path.string() << "\n";
  }
  return kExitOk;
}

int cmd_verify(const RunConfig& cfg) {
  const ModelParams params = make_params(cfg);
  const InitialData data = make_data(cfg, params);
  const WaveFunction psi(params, data);
  fs::create_directories(cfg.out_dir);

  const ValidationReport vrep =
      validate(data, params, GridSpec::covering(data, 65), cfg.tol);

  std::vector<verify::SuiteResult> suites;
  QuadratureSpec quad{24, 12, true};
  int n_surfaces = 8;
  if (psi.n() == 3) {
    quad = QuadratureSpec{12, 10, true};
  } else if (psi.n() >= 4) {
    quad = QuadratureSpec{7, 6, true};
    n_surfaces = 3;
  }
  suites.push_back(verify::conservation_suite(psi, n_surfaces, 0.7,
                                              psi.n() >= 4 ? 1e-4 : 1e-6, quad, cfg.seed));
  suites.push_back(verify::flux_suite_for(psi, cfg.tol, 40, cfg.seed + 1));
  suites.push_back(verify::lorentz_suite(psi, 4, 1e-9, 1e-6, quad, cfg.seed + 2));
  suites.push_back(verify::phase_suite(20000, std::max(psi.n(), 4), cfg.seed + 3));
  suites.push_back(verify::residual_suite(psi, 40, 1.7, 1e-10, cfg.seed + 4));
  suites.push_back(verify::antisymmetry_suite(psi, 5000, cfg.seed + 5));
  if (cfg.boost != 0.0)
    suites.push_back(verify::fixed_boost_suite(psi, cfg.boost, 1e-9, 1e-6, quad, cfg.seed + 6));

  bool pass = vrep.pass();
  json jsuites = json::array();
  for (const auto& s : suites) {
    pass = pass && s.pass;
    jsuites.push_back(suite_to_json(s));
    std::cout << (s.pass ? "PASS " : "FAIL ") << s.name << "  stat=" << s.statistic
              << " thr=" << s.threshold << "  (" << s.detail << ")\n";
  }
  std::cout << (vrep.pass() ? "PASS " : "FAIL ") << "initial-data validation\n";

  write_json(fs::path(cfg.out_dir) / "verify_report.json",
             json{{"pass", pass}, {"validation", validation_to_json(vrep)}, {"suites", jsuites}});
  return pass ? kExitOk : kExitViolation;
}

int cmd_boost(const RunConfig& cfg) {
  const ModelParams params = make_params(cfg);
  const WaveFunction psi(params, make_data(cfg, params));
  fs::create_directories(cfg.out_dir);

  const QuadratureSpec quad =
      psi.n() >= 3 ? QuadratureSpec{12, 10, true} : QuadratureSpec{24, 12, true};
  const verify::SuiteResult r =
      verify::fixed_boost_suite(psi, cfg.boost, 1e-9, 1e-6, quad, cfg.seed);
  const json j = suite_to_json(r);
  write_json(fs::path(cfg.out_dir) / "boost_report.json", j);
  std::cout << j.dump(2) << "\n";
  return r.pass ? kExitOk : kExitViolation;
}

int cmd_entangle(const RunConfig& cfg) {
  const ModelParams params = make_params(cfg);
  const WaveFunction psi(params, make_data(cfg, params));
  if (psi.n() != 2) throw std::runtime_error("entangle requires --n 2");
  fs::create_directories(cfg.out_dir);

  const std::vector<double> times = parse_times(cfg.times);
  double tmax = 0.0;
  for (double t : times) tmax = std::max(tmax, std::abs(t));
  const double reach = psi.data().support_radius() + tmax + 0.5;
  const GridSpec grid{-reach, reach, cfg.grid};

  json jtimes = json::array();
  std::ofstream sv(fs::path(cfg.out_dir) / "entangle_singular_values.csv");
  sv << "t,index,sigma\n";
  for (double t : times) {
    const SchmidtSpectrum spec = schmidt_spectrum(psi, t, grid);
    jtimes.push_back(json{{"t", t}, {"rank", spec.rank}});
    for (size_t i = 0; i < spec.singular_values.size(); ++i)
      sv << g17(t) << ',' << i << ',' << g17(spec.singular_values[i]) << "\n";
    std::cout << "t=" << t << " schmidt rank " << spec.rank << "\n";
  }
  write_json(fs::path(cfg.out_dir) / "entangle.json",
             json{{"grid_nodes", cfg.grid}, {"results", jtimes}});
  if (!times.empty()) {
    const SingleTimeState st = sample_single_time(psi, times.back(), grid);
    std::ofstream csv(fs::path(cfg.out_dir) / "chi_section.csv");
    csv << "z1,z2";
    for (int c = 1; c <= 4; ++c) csv << ",re" << c << ",im" << c;
    csv << "\n";
    for (int i = 0; i < grid.nodes; ++i)
      for (int j2 = 0; j2 < grid.nodes; ++j2) {
        csv << g17(grid.node(i)) << ',' << g17(grid.node(j2));
        for (int c = 0; c < 4; ++c) {
          const complex v = st.value(c, i, j2);
          csv << ',' << g17(v.real()) << ',' << g17(v.imag());
        }
        csv << "\n";
      }
  }
  return kExitOk;
}

int cmd_delta(const RunConfig& cfg) {
  const ModelParams params = make_params(cfg);
  const WaveFunction psi(params, make_data(cfg, params));
  if (psi.n() != 2) throw std::runtime_error("delta-check requires --n 2");
  fs::create_directories(cfg.out_dir);

  std::vector<double> v_samples;
  const double r = psi.data().support_radius();
  for (int i = 0; i <= 24; ++i) v_samples.push_back(-r + 2.0 * r * i / 24.0);
  const DeltaReport rep = delta_bc_check(psi, cfg.time_point, v_samples, cfg.eps);

  json entries = json::array();
  for (const auto& e : rep.entries)
    entries.push_back(json{{"v", e.v},
                           {"chi2_residual", e.chi2_residual},
                           {"chi3_residual", e.chi3_residual},
                           {"chi1_abs", e.chi1_abs},
                           {"chi4_abs", e.chi4_abs}});
  const json j{{"t", rep.t},
               {"eps", rep.eps},
               {"max_phase_jump_residual", rep.max_phase_jump_residual},
               {"max_equal_sign_abs", rep.max_equal_sign_abs},
               {"entries", entries}};
  write_json(fs::path(cfg.out_dir) / "delta_report.json", j);
  {
    std::ofstream csv(fs::path(cfg.out_dir) / "delta_report.csv");
    csv << "v,chi2_residual,chi3_residual,chi1_abs,chi4_abs\n";
    for (const auto& e : rep.entries)
      csv << g17(e.v) << ',' << g17(e.chi2_residual) << ',' << g17(e.chi3_residual) << ','
          << g17(e.chi1_abs) << ',' << g17(e.chi4_abs) << "\n";
  }
  std::cout << "max phase-jump residual " << rep.max_phase_jump_residual
            << ", equal-sign at line " << rep.max_equal_sign_abs << "\n";
  return kExitOk;
}

int cmd_alpha(const RunConfig& cfg) {
  fs::create_directories(cfg.out_dir);
  AlphaInstance inst;
  inst.a1 = cfg.a1;
  inst.b1 = cfg.b1;
  inst.a2 = cfg.a2;
  inst.b2 = cfg.b2;
  if (!(cfg.alpha_sq > 0.0)) throw std::runtime_error("--alpha-sq must be positive");
  inst.alpha = std::sqrt(cfg.alpha_sq);
  const AlphaInstance solved = alpha_points(inst);

  std::function<complex(double, double)> g;
  if (cfg.alpha_g == "linear") g = [](double z1, double) { return complex(z1, 0.0); };
  else if (cfg.alpha_g == "const") g = [](double, double) { return complex(1.0, 0.0); };
  else if (cfg.alpha_g == "zero") g = [](double, double) { return complex{}; };
  else throw std::runtime_error("--g must be linear|const|zero");
  const AlphaConflictReport conflict = alpha_contradiction_demo(g, solved, 0.6);

  const json j{{"instance",
                json{{"a1", inst.a1}, {"b1", inst.b1}, {"a2", inst.a2}, {"b2", inst.b2},
                     {"alpha_sq", cfg.alpha_sq}}},
               {"points",
                json{{"y1", solved.y1}, {"t1", solved.t1}, {"y2", solved.y2}, {"t2", solved.t2},
                     {"x1", solved.x1}, {"s1", solved.s1}, {"x2", solved.x2}, {"s2", solved.s2}}},
               {"xi", solved.xi},
               {"root_sign", solved.root_sign},
               {"max_constraint_residual", solved.max_residual},
               {"conflict",
                json{{"g", cfg.alpha_g},
                     {"boundary_chain", {conflict.boundary_chain.real(), conflict.boundary_chain.imag()}},
                     {"characteristic_chain",
                      {conflict.characteristic_chain.real(), conflict.characteristic_chain.imag()}},
                     {"magnitude", conflict.conflict}}},
               {"boundary_condition_note", alpha_bc_uniqueness_note()}};
  write_json(fs::path(cfg.out_dir) / "alpha_report.json", j);
  std::cout << j.dump(2) << "\n";
  return kExitOk;
}

void add_common(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--config", cfg.config_path, "JSON config file; flags override it");
  sub->add_option("--n", cfg.n, "particle count");
  sub->add_option("--phi", cfg.phi_args,
                  "boundary phase: '<angle>' for all strata or '<k>=<angle>' (1-based k)");
  sub->add_option("--smoothness", cfg.smoothness, "data smoothness order m");
  sub->add_option("--family", cfg.family, "bump|wedge[:json]|reflect[:json]|product[:json]");
  sub->add_option("--initial", cfg.initial_path, "tabulated initial-data file");
  sub->add_option("--boost", cfg.boost, "rapidity");
  sub->add_option("--surface", cfg.surfaces, "'flat' or surface JSON (repeatable)");
  sub->add_option("--grid", cfg.grid, "grid nodes per dimension");
  sub->add_option("--tol", cfg.tol, "validation/flux tolerance");
  sub->add_option("--seed", cfg.seed, "RNG seed");
  sub->add_option("--out", cfg.out_dir, "output directory");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"N-particle multi-time Dirac model with zero-range interaction: exact solver and verification tools"};
  app.require_subcommand(1);
  RunConfig cfg;

  CLI::App* solve = app.add_subcommand("solve", "evaluate all components on surface grids (CSV)");
  add_common(solve, cfg);
  solve->add_option("--save-initial", cfg.save_initial_path,
                    "also write the initial data in the tabulated-grid format");
  CLI::App* verify_cmd = app.add_subcommand("verify", "run invariant suites and emit a JSON report");
  add_common(verify_cmd, cfg);
  CLI::App* boost_cmd = app.add_subcommand("boost", "boost covariance checks at a fixed rapidity");
  add_common(boost_cmd, cfg);
  CLI::App* entangle = app.add_subcommand("entangle", "Schmidt rank across times (N=2)");
  add_common(entangle, cfg);
  entangle->add_option("--times", cfg.times, "comma-separated times");
  CLI::App* delta = app.add_subcommand("delta-check", "equal-time jump relation at the coincidence line");
  add_common(delta, cfg);
  delta->add_option("--time", cfg.time_point, "equal-time slice");
  delta->add_option("--eps", cfg.eps, "extrapolation offset");
  CLI::App* alpha = app.add_subcommand("alpha-demo", "minimal-distance non-existence construction");
  add_common(alpha, cfg);
  alpha->add_option("--a1", cfg.a1);
  alpha->add_option("--b1", cfg.b1);
  alpha->add_option("--a2", cfg.a2);
  alpha->add_option("--b2", cfg.b2);
  alpha->add_option("--alpha-sq", cfg.alpha_sq, "squared minimal distance");
  alpha->add_option("--g", cfg.alpha_g, "mixed-component data: linear|const|zero");

  CLI11_PARSE(app, argc, argv);

  try {
    apply_config_file(cfg);
    if (solve->parsed()) return cmd_solve(cfg);
    if (verify_cmd->parsed()) return cmd_verify(cfg);
    if (boost_cmd->parsed()) return cmd_boost(cfg);
    if (entangle->parsed()) return cmd_entangle(cfg);
    if (delta->parsed()) return cmd_delta(cfg);
    if (alpha->parsed()) return cmd_alpha(cfg);
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return kExitInputError;
  }
  return kExitInputError;
}
