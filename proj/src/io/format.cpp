#include <cmath>
#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "qsg/io.hpp"

namespace qsg::io {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12e", v);
  return buf;
}

namespace {

// JSON has no NaN; evanescent rows carry null instead.
nlohmann::json num(double v) { return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr); }

}  // namespace

std::string figure1_table(const std::vector<effective::Figure1Row>& rows, Format f) {
  if (f == Format::Json) {
    nlohmann::json a = nlohmann::json::array();
    for (const auto& r : rows)
      a.push_back({{"x", r.x}, {"mI_over_mp", r.mI_over_mp}, {"mG_over_mp", r.mG_over_mp}, {"V0_over_mpc2", r.V0_over_mpc2}});
    return a.dump(1) + "\n";
  }
  std::ostringstream os;
  os << "x,mI_over_mp,mG_over_mp,V0_over_mpc2\n";
  for (const auto& r : rows)
    os << fmt(r.x) << ',' << fmt(r.mI_over_mp) << ',' << fmt(r.mG_over_mp) << ',' << fmt(r.V0_over_mpc2) << '\n';
  return os.str();
}

std::string dispersion_table(const std::vector<dispersion::DispersionPoint>& rows, Format f) {
  if (f == Format::Json) {
    nlohmann::json a = nlohmann::json::array();
    for (const auto& r : rows)
      a.push_back({{"omega", r.omega}, {"k", num(r.k)}, {"m", r.m}, {"vg", num(r.vg)}, {"residual", num(r.residual)},
                   {"regime", r.evanescent ? "evanescent" : "propagating"}});
    return a.dump(1) + "\n";
  }
  std::ostringstream os;
  os << "omega,k,m,vg,residual,regime\n";
  for (const auto& r : rows)
    os << fmt(r.omega) << ',' << fmt(r.k) << ',' << fmt(r.m) << ',' << fmt(r.vg) << ',' << fmt(r.residual) << ','
       << (r.evanescent ? "evanescent" : "propagating") << '\n';
  return os.str();
}

std::string spectrum_table(const std::vector<SpectrumRow>& rows, Format f) {
  if (f == Format::Json) {
    nlohmann::json a = nlohmann::json::array();
    for (const auto& r : rows)
      a.push_back({{"n", r.n}, {"l", r.l}, {"E_numeric", r.E_numeric}, {"E_bohr", r.E_bohr}, {"rel_err", r.rel_err},
                   {"V0", r.V0}});
    return a.dump(1) + "\n";
  }
  std::ostringstream os;
  os << "n,l,E_numeric,E_bohr,rel_err,V0\n";
  for (const auto& r : rows)
    os << r.n << ',' << r.l << ',' << fmt(r.E_numeric) << ',' << fmt(r.E_bohr) << ',' << fmt(r.rel_err) << ','
       << fmt(r.V0) << '\n';
  return os.str();
}

}  // namespace qsg::io
