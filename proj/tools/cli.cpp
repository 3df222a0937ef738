#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "quench/eigen.hpp"
#include "quench/errors.hpp"
#include "quench/observables.hpp"
#include "quench/propagate.hpp"
#include "quench/specfun.hpp"

namespace quench::cli {

namespace {

using cplx = std::complex<double>;

std::string num(double v) {
  if (v == 0.0) v = 0.0;  // no "-0"
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

std::string join(const std::vector<double>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) out += (i ? ";" : "") + num(values[i]);
  return out;
}

std::string quote(const std::string& arg) {
  if (!arg.empty() && arg.find_first_of(" \t'\"\\$;&|") == std::string::npos) return arg;
  std::string out = "'";
  for (char c : arg) out += c == '\'' ? std::string("'\\''") : std::string(1, c);
  return out + "'";
}

[[noreturn]] void usage(const std::string& message) { throw Error(ErrorKind::usage, message); }

std::vector<double> parse_list(const std::string& text, const std::string& flag) {
  std::vector<double> values;
  std::stringstream stream(text);
  std::string item;
  while (std::getline(stream, item, ',')) {
    const auto first = item.find_first_not_of(" \t");
    if (first == std::string::npos) {
      if (text.find_first_not_of(" \t,") == std::string::npos) continue;
      usage(flag + ": empty entry in list '" + text + "'");
    }
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      usage(flag + ": '" + item + "' is not a number");
    }
    if (item.find_first_not_of(" \t", used) != std::string::npos || !std::isfinite(v)) {
      usage(flag + ": '" + item + "' is not a number");
    }
    values.push_back(v);
  }
  return values;
}

// Grid for one time: user bounds where given, suggested extents otherwise.
SpaceGrid resolve_grid(const RunConfig& c, int n, double t) {
  const SpaceGrid suggested = suggest_grid(c.scenario, n, t, c.params);
  const double lo = c.x_min.value_or(suggested.x_min);
  const double hi = c.x_max.value_or(suggested.x_max());
  const double dx = c.dx.value_or(suggested.dx);
  if (!(hi > lo)) {
    std::ostringstream msg;
    msg << "--xmin/--xmax: empty window [" << lo << ", " << hi << "] at t = " << t;
    usage(msg.str());
  }
  return SpaceGrid::from_range(lo, hi, dx);
}

double stencil_step(const RunConfig& c) { return 1e-3 / c.params.alpha(); }

SpaceGrid shifted(SpaceGrid g, double offset) {
  g.x_min += offset;
  return g;
}

// Evolves whatever the config describes onto one grid.
class Evolver {
 public:
  explicit Evolver(const RunConfig& c) : c_(c) {
    direct_.source_dx = c.source_dx;
    if (c.mode == Mode::packet) coeffs_ = expand_packet(read_packet(), c.n_max, c.params);
  }

  WaveField field(int n, double t, const SpaceGrid& grid, EvolutionMethod method,
                  QuadratureReport* report) const {
    if (c_.mode == Mode::packet) {
      SuperpositionSettings settings;
      settings.method = method;
      settings.direct = direct_;
      if (report) {
        *report = QuadratureReport{method, "superposition", 0.0, static_cast<long>(coeffs_.values.size()), 0.0, 0.0};
      }
      return evolve_superposition(coeffs_, c_.scenario, t, grid, c_.params, settings);
    }
    if (method == EvolutionMethod::erfc) return evolve_erfc(c_.scenario, n, t, grid, c_.params, {}, report);
    return evolve_direct(c_.scenario, make_eigenstate(n, c_.params), t, grid, c_.params, direct_, report);
  }

  std::vector<cplx> at(int n, double t, const std::vector<double>& xs, QuadratureReport* report) const {
    if (c_.method == EvolutionMethod::erfc) return evolve_erfc_at(c_.scenario, n, t, xs, c_.params, {}, report);
    return evolve_direct_at(c_.scenario, make_eigenstate(n, c_.params), t, xs, c_.params, direct_, report);
  }

  // psi and j on the grid, j from local stencils of width stencil_step
  std::pair<WaveField, std::vector<double>> with_current(int n, double t, const SpaceGrid& grid,
                                                         QuadratureReport* report) const {
    WaveField centre = field(n, t, grid, c_.method, report);
    const double h = stencil_step(c_);
    const bool one_sided = c_.scenario == Scenario::C;
    const WaveField first = field(n, t, shifted(grid, one_sided ? h : -h), c_.method, nullptr);
    const WaveField second = field(n, t, shifted(grid, one_sided ? 2.0 * h : h), c_.method, nullptr);
    std::vector<double> j(grid.count);
    for (std::size_t i = 0; i < grid.count; ++i) {
      const cplx s[3] = {one_sided ? centre.values[i] : first.values[i],
                         one_sided ? first.values[i] : centre.values[i], second.values[i]};
      j[i] = current_from_stencil(s, one_sided, h, c_.params);
    }
    return {std::move(centre), std::move(j)};
  }

  const SpectralCoefficients& coefficients() const { return coeffs_; }

  WaveField read_packet() const {
    std::ifstream in(c_.packet_path);
    if (!in) usage("--packet: cannot read '" + c_.packet_path + "'");
    std::vector<double> xs;
    std::vector<cplx> values;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      const auto first = line.find_first_not_of(" \t\r");
      if (first == std::string::npos || line[first] == '#') continue;
      std::istringstream row(line);
      std::vector<double> cols;
      double v;
      while (row >> v) cols.push_back(v);
      if (!row.eof() || cols.size() < 2 || cols.size() > 3) {
        usage("--packet: line " + std::to_string(line_no) + " needs 2 or 3 numeric columns");
      }
      xs.push_back(cols[0]);
      values.emplace_back(cols[1], cols.size() == 3 ? cols[2] : 0.0);
    }
    if (xs.size() < 3) usage("--packet: need at least 3 samples");
    const double dx = (xs.back() - xs.front()) / static_cast<double>(xs.size() - 1);
    for (std::size_t i = 1; i < xs.size(); ++i) {
      if (std::fabs(xs[i] - xs[i - 1] - dx) > 1e-6 * std::fabs(dx)) {
        usage("--packet: x column must be uniformly spaced and increasing");
      }
    }
    if (!(dx > 0.0)) usage("--packet: x column must be increasing");
    SpaceGrid grid;
    grid.x_min = xs.front();
    grid.dx = dx;
    grid.count = xs.size();
    return WaveField{grid, 0.0, std::move(values)};
  }

 private:
  const RunConfig& c_;
  DirectSettings direct_;
  SpectralCoefficients coeffs_;
};

Error with_context(const Error& e, double t, Scenario s) {
  std::ostringstream msg;
  msg << "t = " << num(t) << ", scenario " << to_string(s) << ": " << e.what();
  return Error(e.kind(), msg.str());
}

void write_manifest_head(std::ostream& out, const RunConfig& c) {
  const PhysicalParams& p = c.params;
  out << "# quench " << c.command_line << "\n";
  out << "# params hbar=" << num(p.hbar()) << " mass=" << num(p.mass()) << " K=" << num(p.k_slope())
      << " alpha=" << num(p.alpha()) << "\n";
}

void run_eigen(const RunConfig& c, std::ostream& out) {
  write_manifest_head(out, c);
  std::vector<Eigenstate> states;
  for (int n = 1; n <= c.n; ++n) states.push_back(make_eigenstate(n, c.params));
  if (c.output_path.empty()) {
    out << "n,airy_zero,energy\n";
    for (const auto& s : states) out << s.n << "," << num(s.airy_zero) << "," << num(s.energy) << "\n";
    return;
  }
  for (const auto& s : states) {
    out << "# spectrum n=" << s.n << " airy_zero=" << num(s.airy_zero) << " energy=" << num(s.energy) << "\n";
  }
  const double lo = std::max(0.0, c.x_min.value_or(0.0));
  const double hi = c.x_max.value_or(eigenstate_support_end(states.back(), c.params));
  const SpaceGrid grid = SpaceGrid::from_range(lo, hi, c.dx.value_or(0.01));
  std::vector<WaveField> tables;
  for (const auto& s : states) tables.push_back(cutoff_state(s, c.params, grid));
  out << "x";
  for (const auto& s : states) out << ",phi_" << s.n;
  out << "\n";
  for (std::size_t i = 0; i < grid.count; ++i) {
    out << num(grid.x(i));
    for (const auto& f : tables) out << "," << num(f.values[i].real());
    out << "\n";
  }
}

std::string structure_line(const RealField& rho) {
  const StructureReport r = structure_report(rho);
  std::ostringstream line;
  line << "# structure t=" << num(rho.time) << " threshold=" << num(kDefaultNodeThreshold)
       << " nodes=" << r.node_positions.size() << " [" << join(r.node_positions) << "]"
       << " maxima=" << r.maxima_positions.size() << " [" << join(r.maxima_positions) << "]"
       << " asymmetry=" << num(r.asymmetry);
  return line.str();
}

void run_evolve(const RunConfig& c, std::ostream& out) {
  const Evolver evolver(c);
  std::ostringstream manifest, body;
  const char* mode = c.mode == Mode::packet ? "packet" : "state";
  manifest << "# scenario=" << to_string(c.scenario) << " mode=" << mode << " n="
           << (c.mode == Mode::packet ? c.n_max : c.n) << " method=" << to_string(c.method)
           << " current_stencil=" << num(stencil_step(c)) << "\n";
  if (c.mode == Mode::packet) {
    const auto& cs = evolver.coefficients();
    manifest << "# expansion n_max=" << c.n_max << " weight=" << num(cs.weight())
             << " residual=" << num(cs.reconstruction_residual) << "\n";
    if (c.emit.count("coefficients")) {
      for (std::size_t k = 0; k < cs.values.size(); ++k) {
        manifest << "# coefficient n=" << k + 1 << " re=" << num(cs.values[k].real())
                 << " im=" << num(cs.values[k].imag()) << "\n";
      }
    }
  }
  for (double t : c.times) {
    try {
      const SpaceGrid grid = resolve_grid(c, c.mode == Mode::packet ? c.n_max : c.n, t);
      QuadratureReport report;
      auto [psi, j] = evolver.with_current(c.n, t, grid, &report);
      const RealField rho = density(psi);
      manifest << "# time t=" << num(t) << " x_min=" << num(grid.x_min) << " dx=" << num(grid.dx)
               << " count=" << grid.count << " norm=" << num(trapezoid(rho.values, grid.dx)) << " "
               << report.describe();
      if (c.xcheck && t > 0.0) {
        const EvolutionMethod other =
            c.method == EvolutionMethod::direct ? EvolutionMethod::erfc : EvolutionMethod::direct;
        const WaveField check = evolver.field(c.n, t, grid, other, nullptr);
        double peak = 0.0, worst = 0.0;
        for (std::size_t i = 0; i < grid.count; ++i) {
          peak = std::max(peak, rho.values[i]);
          worst = std::max(worst, std::fabs(rho.values[i] - std::norm(check.values[i])));
        }
        manifest << " xcheck_max_density_deviation=" << num(peak > 0.0 ? worst / peak : worst);
      }
      manifest << "\n";
      if (c.emit.count("structure")) manifest << structure_line(rho) << "\n";
      for (std::size_t i = 0; i < grid.count; ++i) {
        body << num(grid.x(i)) << "," << num(t) << "," << num(psi.values[i].real()) << ","
             << num(psi.values[i].imag()) << "," << num(rho.values[i]) << "," << num(j[i]) << "\n";
      }
    } catch (const Error& e) {
      throw with_context(e, t, c.scenario);
    }
  }
  write_manifest_head(out, c);
  out << manifest.str() << "x,t,re_psi,im_psi,density,current\n" << body.str();
}

void run_fermi(const RunConfig& c, std::ostream& out) {
  const Evolver evolver(c);
  std::ostringstream manifest, body;
  manifest << "# scenario=" << to_string(c.scenario) << " mode=fermi N=" << c.n
           << " method=" << to_string(c.method) << " current_stencil=" << num(stencil_step(c)) << "\n";
  for (double t : c.times) {
    try {
      const SpaceGrid grid = resolve_grid(c, c.n, t);
      std::vector<WaveField> orbitals;
      std::vector<double> j(grid.count, 0.0);
      QuadratureReport report;
      for (int n = 1; n <= c.n; ++n) {
        auto [psi, jn] = evolver.with_current(n, t, grid, n == c.n ? &report : nullptr);
        orbitals.push_back(std::move(psi));
        for (std::size_t i = 0; i < grid.count; ++i) j[i] += jn[i];
      }
      const RealField rho = fermion_density(orbitals);
      manifest << "# time t=" << num(t) << " x_min=" << num(grid.x_min) << " dx=" << num(grid.dx)
               << " count=" << grid.count << " particles=" << num(trapezoid(rho.values, grid.dx))
               << " " << report.describe() << "\n";
      if (c.emit.count("structure")) manifest << structure_line(rho) << "\n";
      for (std::size_t i = 0; i < grid.count; ++i) {
        body << num(grid.x(i)) << "," << num(t) << "," << num(rho.values[i]) << "," << num(j[i]) << "\n";
      }
    } catch (const Error& e) {
      throw with_context(e, t, c.scenario);
    }
  }
  write_manifest_head(out, c);
  out << manifest.str() << "x,t,density,current\n" << body.str();
}

void run_current(const RunConfig& c, std::ostream& out) {
  const Evolver evolver(c);
  std::vector<double> probes = c.points;
  if (probes.empty()) {
    probes = c.scenario == Scenario::C ? std::vector<double>{0.0001, 1.0, 5.0, 20.0}
                                       : std::vector<double>{-0.0001, 0.0001, -5.0, 5.0, -20.0, 20.0};
  }
  const double h = stencil_step(c);
  const bool one_sided = c.scenario == Scenario::C;
  std::vector<double> xs;
  for (double x : probes) {
    if (one_sided) {
      xs.insert(xs.end(), {x, x + h, x + 2.0 * h});
    } else {
      xs.insert(xs.end(), {x - h, x, x + h});
    }
  }
  std::ostringstream manifest, body;
  manifest << "# scenario=" << to_string(c.scenario) << " mode=state n=" << c.n
           << " method=" << to_string(c.method) << " points=" << join(probes)
           << " current_stencil=" << num(h) << (one_sided ? " one-sided" : " central") << "\n";
  for (double t : c.times) {
    try {
      QuadratureReport report;
      const std::vector<cplx> psi = evolver.at(c.n, t, xs, &report);
      if (t > 0.0) manifest << "# time t=" << num(t) << " " << report.describe() << "\n";
      for (std::size_t k = 0; k < probes.size(); ++k) {
        body << num(t) << "," << num(probes[k]) << ","
             << num(current_from_stencil(&psi[3 * k], one_sided, h, c.params)) << "\n";
      }
    } catch (const Error& e) {
      throw with_context(e, t, c.scenario);
    }
  }
  write_manifest_head(out, c);
  out << manifest.str() << "t,x,current\n" << body.str();
}

void run_expand(const RunConfig& c, std::ostream& out) {
  const Evolver evolver(c);
  const auto& cs = evolver.coefficients();
  write_manifest_head(out, c);
  out << "# expansion n_max=" << c.n_max << " weight=" << num(cs.weight())
      << " residual=" << num(cs.reconstruction_residual) << "\n";
  out << "n,re_c,im_c,abs2\n";
  for (std::size_t k = 0; k < cs.values.size(); ++k) {
    out << k + 1 << "," << num(cs.values[k].real()) << "," << num(cs.values[k].imag()) << ","
        << num(std::norm(cs.values[k])) << "\n";
  }
}

void dispatch(const RunConfig& c, std::ostream& out) {
  switch (c.command) {
    case Command::eigen: run_eigen(c, out); break;
    case Command::evolve: run_evolve(c, out); break;
    case Command::current: run_current(c, out); break;
    case Command::fermi_density: run_fermi(c, out); break;
    case Command::expand: run_expand(c, out); break;
  }
}

}  // namespace

RunConfig parse_config(const std::vector<std::string>& args) {
  RunConfig config;
  for (std::size_t i = 0; i < args.size(); ++i) config.command_line += (i ? " " : "") + quote(args[i]);

  CLI::App app{"Quench dynamics of a particle released from a half-line linear potential", "quench"};
  app.set_help_flag("-h,--help", "Show help");
  auto* eigen = app.add_subcommand("eigen", "Spectrum, and eigenfunction tables with --out");
  auto* evolve = app.add_subcommand("evolve", "Evolve a state or packet on a grid (default)");
  auto* current = app.add_subcommand("current", "Current versus time at probe points");
  auto* fermi = app.add_subcommand("fermi-density", "Density of N free fermions");
  auto* expand = app.add_subcommand("expand", "Spectral coefficients of a packet file");
  for (auto* sub : {eigen, evolve, current, fermi, expand}) sub->fallthrough();
  app.require_subcommand(0, 1);

  std::string scenario = "b", method = "direct", times, points, emit;
  int state = 6, particles = 6;
  double hbar = 1.0, mass = 0.5, k_slope = 1.0, tmax = 50.0, dt = 0.25;
  double x_min = 0.0, x_max = 0.0, dx = 0.0;
  auto* o_scenario = app.add_option("--scenario", scenario, "a, b or c");
  auto* o_state = app.add_option("--state", state, "Eigenstate index n");
  auto* o_n = app.add_option("--N", particles, "Number of fermions");
  auto* o_times = app.add_option("--times", times, "Comma-separated times");
  auto* o_points = app.add_option("--points", points, "Comma-separated probe points");
  auto* o_tmax = app.add_option("--tmax", tmax, "Last time for current");
  auto* o_dt = app.add_option("--dt", dt, "Time step for current");
  auto* o_xmin = app.add_option("--xmin", x_min, "Grid start");
  auto* o_xmax = app.add_option("--xmax", x_max, "Grid end");
  auto* o_dx = app.add_option("--dx", dx, "Grid spacing");
  app.add_option("--hbar", hbar, "Planck constant");
  app.add_option("--mass", mass, "Particle mass");
  app.add_option("--K", k_slope, "Slope of the linear potential");
  auto* o_method = app.add_option("--method", method, "direct or erfc");
  app.add_flag("--xcheck", config.xcheck, "Also run the other method and report the deviation");
  app.add_option("--out", config.output_path, "Output file (default: standard output)");
  app.add_option("--emit", emit, "Extras: structure, coefficients");
  auto* o_packet = app.add_option("--packet", config.packet_path, "Initial packet file: x re [im]");
  auto* o_nmax = app.add_option("--nmax", config.n_max, "Expansion size for packets");
  app.add_option("--source-dx", config.source_dx, "Fixed source step for direct quadrature");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    config.show_help = true;
    config.help_text = app.help();
    return config;
  } catch (const CLI::ParseError& e) {
    usage(e.what());
  }

  if (eigen->parsed()) config.command = Command::eigen;
  if (current->parsed()) config.command = Command::current;
  if (fermi->parsed()) config.command = Command::fermi_density;
  if (expand->parsed()) config.command = Command::expand;

  if (o_state->count() && o_n->count()) throw Error(ErrorKind::conflict, "--state and --N are mutually exclusive");
  if (o_packet->count() && (o_state->count() || o_n->count())) {
    throw Error(ErrorKind::conflict, "--packet excludes --state and --N");
  }
  config.scenario = parse_scenario(scenario);
  if (o_method->count()) config.method = parse_method(method);
  if (o_scenario->count() == 0 && config.command == Command::eigen) config.scenario = Scenario::B;

  switch (config.command) {
    case Command::fermi_density:
      if (o_state->count()) throw Error(ErrorKind::conflict, "fermi-density takes --N, not --state");
      if (o_packet->count()) throw Error(ErrorKind::conflict, "fermi-density does not take --packet");
      config.mode = Mode::fermi_gas;
      config.n = particles;
      break;
    case Command::expand:
      if (!o_packet->count()) usage("expand needs --packet");
      config.mode = Mode::packet;
      break;
    case Command::current:
      if (o_n->count() || o_packet->count()) usage("current takes --state only");
      config.n = state;
      break;
    case Command::eigen:
      if (o_n->count() || o_packet->count()) usage("eigen takes --state only");
      config.n = state;
      break;
    case Command::evolve:
      if (o_n->count()) usage("evolve takes --state or --packet; use fermi-density for --N");
      config.mode = o_packet->count() ? Mode::packet : Mode::single_state;
      config.n = state;
      break;
  }
  if (config.n < 1 || config.n > kMaxAiryZeroIndex) {
    usage((config.mode == Mode::fermi_gas ? "--N" : "--state") + std::string(": must lie in 1..") +
          std::to_string(kMaxAiryZeroIndex));
  }
  if (config.n_max < 1 || config.n_max > kMaxAiryZeroIndex) {
    usage("--nmax: must lie in 1.." + std::to_string(kMaxAiryZeroIndex));
  }
  if (config.mode == Mode::packet && !o_nmax->count() && o_state->count()) config.n_max = state;

  if (o_times->count()) {
    config.times = parse_list(times, "--times");
  } else if (config.command == Command::current) {
    if (!(dt > 0.0) || !(tmax >= 0.0)) usage("--dt must be > 0 and --tmax >= 0");
    config.times.clear();
    const long steps = static_cast<long>(std::floor(tmax / dt + 1e-9));
    for (long k = 1; k <= steps; ++k) config.times.push_back(dt * static_cast<double>(k));
  }
  if (o_tmax->count() && o_times->count()) throw Error(ErrorKind::conflict, "--times and --tmax are mutually exclusive");
  if (o_dt->count() && o_times->count()) throw Error(ErrorKind::conflict, "--times and --dt are mutually exclusive");
  for (std::size_t i = 0; i < config.times.size(); ++i) {
    if (config.times[i] < 0.0) usage("--times: negative time " + num(config.times[i]));
    if (i && config.times[i] <= config.times[i - 1]) usage("--times: times must increase");
  }
  if (o_points->count()) config.points = parse_list(points, "--points");
  if (config.scenario == Scenario::C) {
    for (double x : config.points) {
      if (x < 0.0) usage("--points: scenario c lives on x >= 0, got " + num(x));
    }
  }

  if (o_xmin->count()) config.x_min = x_min;
  if (o_xmax->count()) config.x_max = x_max;
  if (o_dx->count()) {
    if (!(dx > 0.0)) usage("--dx: must be > 0");
    config.dx = dx;
  }
  if (config.x_min && config.x_max && !(*config.x_max > *config.x_min)) usage("--xmax: must exceed --xmin");
  if (config.scenario == Scenario::C && config.x_min && *config.x_min < 0.0) {
    usage("--xmin: scenario c lives on x >= 0, got " + num(*config.x_min));
  }
  if (config.source_dx < 0.0) usage("--source-dx: must be >= 0");
  if (!emit.empty()) {
    config.emit.clear();
    std::stringstream stream(emit);
    std::string item;
    while (std::getline(stream, item, ',')) {
      static const std::set<std::string> known{"density", "current", "structure", "fermi-density", "coefficients"};
      if (!known.count(item)) usage("--emit: unknown item '" + item + "'");
      config.emit.insert(item);
    }
  }
  config.params = PhysicalParams(hbar, mass, k_slope);
  if (config.params.k_slope() == 0.0 && config.command != Command::expand) {
    throw Error(ErrorKind::configuration, "--K: the initial state needs K > 0");
  }
  return config;
}

int exit_code_for(const std::exception& error) {
  if (const auto* e = dynamic_cast<const Error*>(&error)) {
    switch (e->kind()) {
      case ErrorKind::usage:
      case ErrorKind::conflict:
      case ErrorKind::configuration:
        return 1;
      default:
        return 2;
    }
  }
  return 2;
}

int run(const RunConfig& config, std::ostream& out) {
  if (config.show_help) {
    out << config.help_text;
    return 0;
  }
  const std::string partial = config.output_path + ".partial";
  try {
    if (config.output_path.empty()) {
      std::ostringstream buffer;
      dispatch(config, buffer);
      out << buffer.str();
      out.flush();
      return 0;
    }
    {
      std::ofstream file(partial, std::ios::binary | std::ios::trunc);
      if (!file) throw Error(ErrorKind::usage, "--out: cannot open '" + partial + "'");
      dispatch(config, file);
      file.flush();
      if (!file) throw std::runtime_error("write to '" + partial + "' failed");
    }
    std::filesystem::rename(partial, config.output_path);
    return 0;
  } catch (const std::exception& e) {
    if (!config.output_path.empty()) {
      std::error_code ignored;
      std::filesystem::remove(partial, ignored);
    }
    const auto* err = dynamic_cast<const Error*>(&e);
    std::cerr << "quench: " << (err ? to_string(err->kind()) : "error") << ": " << e.what() << "\n";
    return exit_code_for(e);
  }
}

}  // namespace quench::cli
