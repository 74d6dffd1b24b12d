// Fixed number formatting and the table writers shared by the CLI and verify.
#pragma once

#include <string>
#include <vector>

#include "qsg/dispersion.hpp"
#include "qsg/effective.hpp"

namespace qsg::io {

/// "%.12e"; the only float format used in emitted tables.
std::string fmt(double v);

enum class Format { Csv, Json };

/// header x,mI_over_mp,mG_over_mp,V0_over_mpc2
std::string figure1_table(const std::vector<effective::Figure1Row>& rows, Format f);
/// header omega,k,m,vg,residual,regime
std::string dispersion_table(const std::vector<dispersion::DispersionPoint>& rows, Format f);

struct SpectrumRow {
  int n = 0;
  int l = 0;
  double E_numeric = 0;
  double E_bohr = 0;
  double rel_err = 0;  // |E_numeric − E_bohr| / |E_bohr − V₀|
  double V0 = 0;
};
/// header n,l,E_numeric,E_bohr,rel_err,V0
std::string spectrum_table(const std::vector<SpectrumRow>& rows, Format f);

}  // namespace qsg::io
