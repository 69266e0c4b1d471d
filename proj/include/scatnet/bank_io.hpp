#pragma once

#include "scatnet/filter_bank.hpp"

#include <iosfwd>
#include <string>

namespace scatnet {

// Self-describing columnar text format.  One header line:
//   # scatnet-bank v1 dim=<d> n=<n> omega_max=<w> filters=<spec>;<spec>;...
// where <spec> is label:role[:o=a,b,...] (role in {band,output}, orthant
// row-major).  Then one row per bin in ascending-frequency order: the dim
// frequency components followed by a re/im pair per filter (chi first).
// Signals use the tag scatnet-signal and a single spectral re/im pair.

void export_bank(std::ostream& os, const FilterBank& bank);
FilterBank import_bank(std::istream& is);

void export_signal(std::ostream& os, const Signal& f);
Signal import_signal(std::istream& is);

void export_bank_file(const std::string& path, const FilterBank& bank);
FilterBank import_bank_file(const std::string& path);
void export_signal_file(const std::string& path, const Signal& f);
Signal import_signal_file(const std::string& path);

}  // namespace scatnet
