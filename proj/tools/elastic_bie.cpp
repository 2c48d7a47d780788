// elastic-bie: run elastic scattering experiments and write CSV tables.
//
//   elastic-bie <solve|convergence|rcip-sweep|asymptotics> [--config file]
//               [--geometry g] [--formulation f1,f2] [--omega w1,w2] [--N n1,n2]
//               [--nsub a:b:s] [--set key=value ...] [--out file.csv]
//
// Exit status: 0 success, 2 bad configuration or usage, 3 numerical failure.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "elastic/config.hpp"
#include "elastic/driver.hpp"

using namespace elastic;

namespace {

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.5e", v);
  return buf;
}

std::string fixed(double v, int digits) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::string num(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

void header(std::ostream& out, const RunConfig& rc) {
  for (const auto& [k, v] : rc.resolved()) out << "# " << k << " = " << v << "\n";
}

void report_row(std::ostream& out, const RunConfig& rc, const SolveReport& r) {
  out << r.geometry << "," << r.formulation << "," << r.panels << "," << r.n_sub << "," << num(r.omega) << ","
      << sci(r.error[0]) << "," << sci(r.error[1]);
  if (rc.timing) out << "," << fixed(r.seconds, 3);
  out << "\n";
}

void run_solve(std::ostream& out, const RunConfig& rc, bool sweep) {
  if (rc.incident != "point_source") {
    // Scattered field of a plane wave at the test point.
    ProblemConfig p = rc.problem;
    const Formulation f = formulation_from_name(p.formulation);
    const Vec2 z = p.test_point.value_or(default_test_point(f.exterior));
    const IncidentField field = parse_incident(rc.incident) == IncidentKind::ShearPlane
                                    ? IncidentField::shear(p.params, rc.incident_angle)
                                    : IncidentField::compressional(p.params, rc.incident_angle);
    const Vec2c u = scattered_field(p, field, {z})[0];
    out << "x,y,re_u1,im_u1,re_u2,im_u2\n";
    out << num(z.x()) << "," << num(z.y()) << "," << sci(u(0).real()) << "," << sci(u(0).imag()) << ","
        << sci(u(1).real()) << "," << sci(u(1).imag()) << "\n";
    return;
  }
  out << "geometry,formulation,N,n_sub,omega,err1,err2" << (rc.timing ? ",seconds" : "") << "\n";
  const std::vector<double> omegas = sweep ? rc.omega_list : std::vector<double>{rc.omega_list.front()};
  const std::vector<int> panels = sweep ? rc.panel_list : std::vector<int>{rc.panel_list.front()};
  const std::vector<int> nsubs = sweep ? rc.nsub_list : std::vector<int>{rc.nsub_list.front()};
  for (const auto& form : rc.formulations)
    for (double w : omegas)
      for (int n : panels)
        for (int ns : nsubs) {
          ProblemConfig p = rc.problem;
          p.formulation = form;
          p.params.omega = w;
          p.panels = n;
          p.n_sub = ns;
          report_row(out, rc, solve(p));
          out.flush();
        }
}

void run_rcip_sweep(std::ostream& out, const RunConfig& rc) {
  if (BoundaryGeometry::make(rc.problem.shape, rc.problem.shape_param).corners().empty())
    throw ConfigError("rcip-sweep needs a geometry with corners");
  out << "formulation,n_sub,err1,err2" << (rc.timing ? ",seconds" : "") << "\n";
  for (const auto& form : rc.formulations)
    for (int ns : rc.nsub_list) {
      ProblemConfig p = rc.problem;
      p.formulation = form;
      p.n_sub = ns;
      const SolveReport r = solve(p);
      out << form << "," << ns << "," << sci(r.error[0]) << "," << sci(r.error[1]);
      if (rc.timing) out << "," << fixed(r.seconds, 3);
      out << "\n";
      out.flush();
    }
}

void run_asymptotics(std::ostream& out, const RunConfig& rc) {
  if (BoundaryGeometry::make(rc.problem.shape, rc.problem.shape_param).corners().empty())
    throw ConfigError("asymptotics needs a geometry with corners");
  const ElasticParams& ep = rc.problem.params;
  const double xi = ep.lambda / (2.0 * (ep.lambda + ep.mu));
  out << "formulation,corner,angle,alpha,nu_rigid,nu_traction_free,points\n";
  for (const auto& form : rc.formulations) {
    ProblemConfig p = rc.problem;
    p.formulation = form;
    for (const CornerExponent& c : corner_exponents(p, rc.fit_first_level, rc.fit_skip_inner)) {
      // roots for the wedge exterior to the corner
      const double wedge = 2.0 * kPi - c.angle;
      out << form << "," << c.corner << "," << fixed(c.angle, 10) << "," << fixed(c.alpha, 6) << ","
          << fixed(wedge_root(WedgeCase::Rigid, wedge, xi), 14) << ","
          << fixed(wedge_root(WedgeCase::TractionFree, wedge, xi), 14) << "," << c.points << "\n";
      out.flush();
    }
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Elastic scattering by boundary integral equations"};
  std::string command, config_path, geometry, formulation, omega, panels, nsub, out_path;
  std::vector<std::string> sets;
  app.add_option("command", command, "solve | convergence | rcip-sweep | asymptotics")->required();
  app.add_option("--config", config_path, "key = value configuration file");
  app.add_option("--geometry", geometry, "circle | ellipse | droplet | sector");
  app.add_option("--formulation", formulation, "comma list of DND_ext, DND_int, SNN_ext, SNN_int, CDL_ext");
  app.add_option("--omega", omega, "comma list of angular frequencies");
  app.add_option("--N", panels, "panels per smooth component (list or a:b:s)");
  app.add_option("--nsub", nsub, "dyadic refinement levels (list or a:b:s)");
  app.add_option("--set", sets, "override any configuration key, key=value");
  app.add_option("--out", out_path, "CSV output file (default stdout)");
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    std::vector<KeyValues> layers;
    if (!config_path.empty()) layers.push_back(read_config_file(config_path));
    KeyValues cli;
    if (!geometry.empty()) cli["geometry"] = geometry;
    if (!formulation.empty()) cli["formulation"] = formulation;
    if (!omega.empty()) cli["omega"] = omega;
    if (!panels.empty()) cli["N"] = panels;
    if (!nsub.empty()) cli["nsub"] = nsub;
    if (!out_path.empty()) cli["out"] = out_path;
    for (const auto& s : sets) {
      const auto eq = s.find('=');
      if (eq == std::string::npos || eq == 0) throw ConfigError("--set expects key=value, got '" + s + "'");
      std::istringstream line(s.substr(0, eq) + " = " + s.substr(eq + 1));
      for (const auto& [k, v] : parse_key_values(line, "--set")) cli[k] = v;
    }
    layers.push_back(cli);
    const RunConfig rc = resolve_config(command, layers);

    std::ostringstream table;
    header(table, rc);
    if (rc.command == "solve") run_solve(table, rc, false);
    else if (rc.command == "convergence") run_solve(table, rc, true);
    else if (rc.command == "rcip-sweep") run_rcip_sweep(table, rc);
    else run_asymptotics(table, rc);

    if (rc.out.empty()) {
      std::cout << table.str();
    } else {
      std::ofstream f(rc.out, std::ios::binary);
      if (!(f << table.str())) {
        std::cerr << "error: cannot write " << rc.out << "\n";
        return 2;
      }
    }
    return 0;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  } catch (const std::domain_error& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  }
}
