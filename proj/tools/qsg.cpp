// qsg: tables and checks for the noncommutative-spacetime gravity model.
// Exit codes: 0 ok, 1 verification or grid failure, 2 IO/config error.
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "qsg/dispersion.hpp"
#include "qsg/effective.hpp"
#include "qsg/geometry.hpp"
#include "qsg/io.hpp"
#include "qsg/spectrum.hpp"
#include "qsg/verify.hpp"

namespace {

using namespace qsg;

struct IoFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Global {
  double lambda = 1, c = 1, hbar = 1, G = 1;
  bool si = false;
  std::string out;
  std::string format = "csv";

  effective::PlanckUnits units() const {
    effective::PlanckUnits u = si ? effective::si_units() : effective::PlanckUnits{lambda, c, hbar, G};
    u.validate();
    return u;
  }
  io::Format fmt() const { return format == "json" ? io::Format::Json : io::Format::Csv; }
};

void emit(const Global& g, const std::string& text) {
  if (g.out.empty() || g.out == "-") {
    std::cout << text;
    return;
  }
  std::ofstream os(g.out, std::ios::binary);
  if (!os) throw IoFailure("cannot open " + g.out + " for writing");
  os << text;
  if (!os.flush()) throw IoFailure("write to " + g.out + " failed");
}

std::string mu_nu_table(const geometry::MuNu& p, const std::vector<double>& grid, io::Format f) {
  const geometry::OdeResidual res = geometry::ode_residuals(p, grid);
  if (f == io::Format::Json) {
    nlohmann::json rows = nlohmann::json::array();
    for (double r : grid) {
      const auto b = p.beta(r), m = p.mu(r), n = p.nu(r);
      rows.push_back({{"r", r}, {"beta", {b.real(), b.imag()}}, {"mu", {m.real(), m.imag()}}, {"nu", {n.real(), n.imag()}}});
    }
    return nlohmann::json{{"rows", rows}, {"ode_residual_mu", res.mu}, {"ode_residual_nu", res.nu}}.dump(1) + "\n";
  }
  std::ostringstream os;
  os << "r,beta_re,beta_im,mu_re,mu_im,nu_re,nu_im\n";
  for (double r : grid) {
    const auto b = p.beta(r), m = p.mu(r), n = p.nu(r);
    os << io::fmt(r) << ',' << io::fmt(b.real()) << ',' << io::fmt(b.imag()) << ',' << io::fmt(m.real()) << ','
       << io::fmt(m.imag()) << ',' << io::fmt(n.real()) << ',' << io::fmt(n.imag()) << '\n';
  }
  return os.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Effective Newtonian limit of the bicrossproduct-spacetime Klein-Gordon equation"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand
  app.set_config("--config", "", "key=value file; command-line flags override it");
  app.allow_config_extras(false);

  Global g;
  app.add_option("--lambda", g.lambda, "deformation time scale λ")->check(CLI::PositiveNumber);
  app.add_option("--c", g.c, "speed of light")->check(CLI::PositiveNumber);
  app.add_option("--hbar", g.hbar, "reduced Planck constant")->check(CLI::PositiveNumber);
  app.add_option("--G", g.G, "Newton constant")->check(CLI::PositiveNumber);
  app.add_flag("--si", g.si, "SI constants with λ = Planck time (overrides the four above)");
  app.add_option("--out", g.out, "output path (default stdout)");
  app.add_option("--format", g.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

  auto* fig = app.add_subcommand("figure1", "effective masses and constant energy against x = m/m_p");
  double xmax = 10;
  std::size_t fig_n = 500;
  fig->add_option("--xmax", xmax)->check(CLI::PositiveNumber);
  fig->add_option("--n", fig_n)->check(CLI::PositiveNumber);

  auto* disp = app.add_subcommand("dispersion", "deformed mass shell: k(ω) and group velocity");
  double w_min = 0, w_max = 5, disp_m = 0;
  std::size_t disp_n = 50;
  bool negative = false;
  disp->add_option("--omega-min", w_min);
  disp->add_option("--omega-max", w_max);
  disp->add_option("--n", disp_n)->check(CLI::PositiveNumber);
  disp->add_option("--m", disp_m, "rest mass")->check(CLI::NonNegativeNumber);
  disp->add_flag("--allow-negative-frequency", negative);

  auto* spec = app.add_subcommand("spectrum", "bound states of the effective hydrogen-like problem");
  double x = 1e-3, M = 1, r_max = 0;
  int l = 0, n_states = 3;
  std::size_t nodes = 4000;
  bool classical = false;
  spec->add_option("--x", x, "test mass in Planck masses")->check(CLI::PositiveNumber);
  spec->add_option("--M", M, "central mass")->check(CLI::NonNegativeNumber);
  spec->add_option("--l", l)->check(CLI::NonNegativeNumber);
  spec->add_option("--n-states", n_states)->check(CLI::PositiveNumber);
  spec->add_option("--nodes", nodes)->check(CLI::Range(std::size_t{16}, std::size_t{1} << 22));
  spec->add_option("--rmax", r_max, "outer radius (0: from the Bohr radius)")->check(CLI::NonNegativeNumber);
  spec->add_flag("--classical", classical, "m_I = m_G = m, V₀ = 0");

  auto* munu = app.add_subcommand("mu-nu", "radial profiles μ, ν for β = r^−n or the Newtonian β");
  double power = 3, gamma = 0, r_min = 0.1, r_hi = 10, log_scale = 1;
  std::size_t points = 100;
  munu->add_option("--n", power, "β = r^−n");
  munu->add_option("--newton-gamma", gamma, "use β = −(1+γ/r)/c² instead")->check(CLI::PositiveNumber);
  munu->add_option("--log-scale", log_scale)->check(CLI::PositiveNumber);
  munu->add_option("--r-min", r_min)->check(CLI::PositiveNumber);
  munu->add_option("--r-max", r_hi)->check(CLI::PositiveNumber);
  munu->add_option("--points", points)->check(CLI::Range(std::size_t{2}, std::size_t{1} << 20));

  auto* dark = app.add_subcommand("dark-energy", "order-of-magnitude vacuum density from V₀ (SI inputs)");
  double m_U = 1e53, r_U = 1e26;
  dark->add_option("--mU", m_U, "mass of the universe [kg]")->check(CLI::NonNegativeNumber);
  dark->add_option("--rU", r_U, "radius of the universe [m]")->check(CLI::PositiveNumber);

  auto* ver = app.add_subcommand("verify", "run the invariant suite");
  bool full = false, fast = false;
  std::string tamper;
  long tamper_factor = 2;
  ver->add_flag("--full", full, "full sampling");
  ver->add_flag("--fast", fast, "reduced sampling (default)");
  ver->add_option("--tamper", tamper, "break one defining relation: x-t, dx-x, theta-t, x-dt, dt-t-theta, dt-t-dt");
  ver->add_option("--tamper-factor", tamper_factor);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (fig->parsed()) {
      g.units();
      emit(g, io::figure1_table(effective::figure1_data(xmax, fig_n), g.fmt()));
    } else if (disp->parsed()) {
      const effective::PlanckUnits u = g.units();
      const dispersion::Units du{u.lambda, u.c, u.hbar, negative};
      emit(g, io::dispersion_table(dispersion::sweep(w_min, w_max, disp_n, disp_m, du), g.fmt()));
    } else if (spec->parsed()) {
      const effective::PlanckUnits u = g.units();
      const double m = x * u.m_p();
      spectrum::HydrogenLike p = spectrum::from_effective(m, M, u);
      if (classical) {
        p.m_I = p.m_G = m;
        p.V0 = 0;
      }
      const spectrum::CheckedSpectrum cs = spectrum::solve_radial_checked(p, l, {r_max, nodes}, n_states);
      std::vector<io::SpectrumRow> rows;
      for (const auto& lv : cs.fine.spectrum.levels) {
        const double Eb = p.V0 - p.m_I * p.GMmG() * p.GMmG() / (2 * p.hbar * p.hbar * lv.n * lv.n);
        rows.push_back({lv.n, lv.l, lv.E, Eb, std::abs(lv.E - Eb) / std::abs(Eb - p.V0), p.V0});
      }
      emit(g, io::spectrum_table(rows, g.fmt()));
    } else if (munu->parsed()) {
      const effective::PlanckUnits u = g.units();
      const geometry::MuNu p = gamma > 0 ? geometry::mu_nu_newton(gamma, u.c) : geometry::mu_nu_closed(power, log_scale);
      emit(g, mu_nu_table(p, geometry::log_grid(r_min, r_hi, points), g.fmt()));
    } else if (dark->parsed()) {
      const effective::DarkEnergy d = effective::dark_energy_estimate(m_U, r_U);
      if (g.fmt() == io::Format::Json) {
        emit(g, nlohmann::json{{"m_U_kg", m_U},
                               {"r_U_m", r_U},
                               {"mass_density_kg_m3", d.mass_density_kg_m3},
                               {"mass_density_g_cm3", d.mass_density_g_cm3},
                               {"sign", d.sign},
                               {"caveat", d.caveat}}
                        .dump(1) + "\n");
      } else {
        emit(g, "m_U_kg,r_U_m,mass_density_kg_m3,mass_density_g_cm3,sign\n" + io::fmt(m_U) + "," + io::fmt(r_U) + "," +
                    io::fmt(d.mass_density_kg_m3) + "," + io::fmt(d.mass_density_g_cm3) + "," + std::to_string(d.sign) +
                    "\n");
        std::cerr << "note: " << d.caveat << "\n";
      }
    } else if (ver->parsed()) {
      if (full && fast) throw CLI::ValidationError("verify", "--fast and --full are exclusive");
      verify::Options opt;
      opt.level = full ? verify::Level::Full : verify::Level::Fast;
      opt.tamper = tamper;
      opt.tamper_factor = tamper_factor;
      if (!tamper.empty()) exactalg::Relations::tampered(tamper, tamper_factor);  // reject unknown names early
      const verify::Report rep = verify::run(opt);
      for (const auto& c : rep.checks)
        std::cerr << (c.pass ? "PASS " : "FAIL ") << c.name << "  measured=" << c.measured << " tol=" << c.tolerance
                  << (c.detail.empty() ? "" : "  [" + c.detail + "]") << "\n";
      std::cerr << rep.checks.size() << " invariants, " << rep.failures().size() << " failed, " << rep.seconds << " s\n";
      emit(g, rep.to_json().dump(1) + "\n");
      return rep.all_pass() ? 0 : 1;
    }
  } catch (const IoFailure& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const spectrum::GridError& e) {
    std::cerr << "grid failure: " << e.what() << "\n";
    return 1;
  } catch (const CLI::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const exactalg::AlgebraError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
