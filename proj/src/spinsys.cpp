/* Copyright 2026 The NMRQC Authors. All Rights Reserved.
Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at
    http://www.apache.org/licenses/LICENSE-2.0
Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/
#include "nmrqc/spinsys.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "nmrqc/errors.hpp"

namespace nmrqc {

namespace {

// gamma/2pi in MHz/T, magnitudes. Function-local so lookups from other
// translation units' static initializers see a constructed table.
const std::vector<Isotope>& isotope_table() {
  static const std::vector<Isotope> table = {
      {"1H", 1, 42.577478518},
      {"2H", 2, 6.536},
      {"13C", 1, 10.7084},
      {"14N", 2, 3.077},
      {"15N", 1, 4.3173},
      {"19F", 1, 40.052},
      {"31P", 1, 17.235},
  };
  return table;
}

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_ws(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream iss(s);
  std::string tok;
  while (iss >> tok) out.push_back(tok);
  return out;
}

double parse_double(const std::string& s, int line_no) {
  try {
    std::size_t pos = 0;
    double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw Error("SyntaxError", "line " + std::to_string(line_no) +
                                   ": expected a number, got '" + s + "'");
  }
}

std::string format_double(double v) {
  std::ostringstream oss;
  oss.precision(15);
  oss << v;
  return oss.str();
}

}  // namespace

const Isotope& isotope_by_name(const std::string& name) {
  for (const auto& iso : isotope_table())
    if (iso.name == name) return iso;
  throw Error("UnknownIsotope", "unknown isotope '" + name + "'");
}

bool ValidationReport::has_errors() const {
  return std::any_of(issues.begin(), issues.end(),
                     [](const auto& i) { return i.first == Severity::Error; });
}

SpinSystem::SpinSystem(std::vector<Nucleus> nuclei,
                       std::vector<Coupling> couplings,
                       double proton_frequency_mhz)
    : nuclei_(std::move(nuclei)),
      couplings_(std::move(couplings)),
      proton_frequency_mhz_(proton_frequency_mhz) {
  for (std::size_t i = 0; i < nuclei_.size(); ++i) {
    auto [it, fresh] = index_.emplace(nuclei_[i].label, i);
    if (!fresh)
      throw Error("DuplicateLabel",
                  "duplicate nucleus label '" + nuclei_[i].label + "'");
  }
  std::set<std::pair<std::string, std::string>> seen;
  for (const auto& c : couplings_) {
    if (c.a == c.b)
      throw Error("SelfCoupling", "coupling of '" + c.a + "' with itself");
    if (!has_nucleus(c.a)) throw Error("UnknownLabel", "unknown label '" + c.a + "'");
    if (!has_nucleus(c.b)) throw Error("UnknownLabel", "unknown label '" + c.b + "'");
    auto key = std::minmax(c.a, c.b);
    if (!seen.insert(key).second)
      throw Error("DuplicateCoupling",
                  "duplicate coupling pair {" + c.a + "," + c.b + "}");
  }
}

bool SpinSystem::has_nucleus(const std::string& label) const {
  return index_.count(label) != 0;
}

const Nucleus& SpinSystem::nucleus(const std::string& label) const {
  return nuclei_[index_of(label)];
}

std::size_t SpinSystem::index_of(const std::string& label) const {
  auto it = index_.find(label);
  if (it == index_.end())
    throw Error("UnknownLabel", "unknown label '" + label + "'");
  return it->second;
}

double SpinSystem::j(const std::string& a, const std::string& b) const {
  for (const auto& c : couplings_)
    if ((c.a == a && c.b == b) || (c.a == b && c.b == a)) return c.j_hz;
  return 0.0;
}

double SpinSystem::isotope_frequency_mhz(const Isotope& iso) const {
  static const double h1_base = isotope_by_name("1H").base_frequency_per_tesla;
  return proton_frequency_mhz_ * iso.base_frequency_per_tesla / h1_base;
}

SpinSystem parse_spin_system(const std::string& text) {
  std::vector<Nucleus> nuclei;
  std::vector<Coupling> couplings;
  double proton_mhz = 500.0;

  std::istringstream iss(text);
  std::string raw;
  int line_no = 0;
  while (std::getline(iss, raw)) {
    ++line_no;
    auto hash = raw.find('#');
    if (hash != std::string::npos) raw = raw.substr(0, hash);
    std::string line = trim(raw);
    if (line.empty()) continue;
    auto toks = split_ws(line);
    const std::string& kw = toks[0];

    if (kw == "FIELD") {
      if (toks.size() != 2 || toks[1].rfind("proton_mhz=", 0) != 0)
        throw Error("SyntaxError", "line " + std::to_string(line_no) +
                                       ": expected FIELD proton_mhz=<float>");
      proton_mhz = parse_double(toks[1].substr(11), line_no);
      if (proton_mhz <= 0)
        throw Error("SyntaxError", "line " + std::to_string(line_no) +
                                       ": proton_mhz must be positive");
    } else if (kw == "NUCLEUS") {
      if (toks.size() < 3 || toks.size() > 4)
        throw Error("SyntaxError",
                    "line " + std::to_string(line_no) +
                        ": expected NUCLEUS <label> <isotope> [shift_ppm=<float>]");
      Nucleus n;
      n.label = toks[1];
      n.isotope = isotope_by_name(toks[2]);
      if (toks.size() == 4) {
        if (toks[3].rfind("shift_ppm=", 0) != 0)
          throw Error("SyntaxError", "line " + std::to_string(line_no) +
                                         ": expected shift_ppm=<float>");
        n.shift_ppm = parse_double(toks[3].substr(10), line_no);
      }
      nuclei.push_back(std::move(n));
    } else if (kw == "COUPLING") {
      if (toks.size() < 4 || toks.size() > 5)
        throw Error("SyntaxError",
                    "line " + std::to_string(line_no) +
                        ": expected COUPLING <label> <label> <J_hz> [bonds=<int>]");
      Coupling c;
      c.a = toks[1];
      c.b = toks[2];
      c.j_hz = parse_double(toks[3], line_no);
      if (toks.size() == 5) {
        if (toks[4].rfind("bonds=", 0) != 0)
          throw Error("SyntaxError", "line " + std::to_string(line_no) +
                                         ": expected bonds=<int>");
        int b = static_cast<int>(parse_double(toks[4].substr(6), line_no));
        if (b <= 0)
          throw Error("SyntaxError", "line " + std::to_string(line_no) +
                                         ": bonds must be positive");
        c.bonds = b;
      }
      couplings.push_back(std::move(c));
    } else {
      throw Error("SyntaxError", "line " + std::to_string(line_no) +
                                     ": unknown directive '" + kw + "'");
    }
  }

  // A repeated pair with the same J is tolerated as redundancy; a
  // conflicting J is an error. The constructor rejects exact duplicates,
  // so collapse consistent repeats here first.
  std::vector<Coupling> unique;
  for (const auto& c : couplings) {
    auto key = std::minmax(c.a, c.b);
    auto it = std::find_if(unique.begin(), unique.end(), [&](const Coupling& u) {
      return std::minmax(u.a, u.b) == key;
    });
    if (it == unique.end()) {
      unique.push_back(c);
    } else if (it->j_hz != c.j_hz) {
      throw Error("DuplicateCoupling",
                  "conflicting J for pair {" + c.a + "," + c.b + "}");
    }
  }
  return SpinSystem(std::move(nuclei), std::move(unique), proton_mhz);
}

std::string serialize_spin_system(const SpinSystem& sys) {
  std::ostringstream out;
  out << "FIELD proton_mhz=" << format_double(sys.proton_frequency_mhz())
      << "\n";
  for (const auto& n : sys.nuclei()) {
    out << "NUCLEUS " << n.label << " " << n.isotope.name;
    if (n.shift_ppm) out << " shift_ppm=" << format_double(*n.shift_ppm);
    out << "\n";
  }
  for (const auto& c : sys.couplings()) {
    out << "COUPLING " << c.a << " " << c.b << " " << format_double(c.j_hz);
    if (c.bonds) out << " bonds=" << *c.bonds;
    out << "\n";
  }
  return out.str();
}

ValidationReport validate(const SpinSystem& sys) {
  ValidationReport rep;
  rep.nucleus_count = static_cast<int>(sys.nuclei().size());
  rep.coupling_count = static_cast<int>(sys.couplings().size());
  if (sys.nuclei().empty()) {
    rep.issues.emplace_back(Severity::Info, "system is empty");
    return rep;
  }
  std::set<std::string> coupled;
  for (const auto& c : sys.couplings()) {
    coupled.insert(c.a);
    coupled.insert(c.b);
  }
  for (const auto& n : sys.nuclei()) {
    if (!n.isotope.is_spin_half())
      rep.issues.emplace_back(Severity::Error,
                              "quadrupolar isotope unsupported: " + n.label +
                                  " (" + n.isotope.name + ")");
    if (!n.shift_ppm)
      rep.issues.emplace_back(Severity::Warning,
                              "missing chemical shift on " + n.label);
    if (!coupled.count(n.label))
      rep.issues.emplace_back(Severity::Info,
                              "nucleus " + n.label + " has no couplings");
  }
  return rep;
}

std::map<std::string, double> offsets_hz(
    const SpinSystem& sys, const std::map<std::string, double>& carrier_ppm) {
  std::map<std::string, double> out;
  for (const auto& n : sys.nuclei()) {
    if (!n.shift_ppm)
      throw Error("MissingShift", "nucleus " + n.label + " has no chemical shift");
    auto it = carrier_ppm.find(n.isotope.name);
    if (it == carrier_ppm.end())
      throw Error("MissingCarrier",
                  "no carrier given for isotope " + n.isotope.name);
    out[n.label] =
        (*n.shift_ppm - it->second) * sys.isotope_frequency_mhz(n.isotope);
  }
  return out;
}

SpinSystem bundled_compound_ii() {
  std::vector<Nucleus> nuclei;
  const Isotope h1 = isotope_by_name("1H");
  const Isotope c13 = isotope_by_name("13C");
  for (const char* l : {"HA", "HB", "HX", "H3", "H4", "H5", "H6", "H7",
                        "Ho", "Hm", "Hp"})
    nuclei.push_back({l, h1, std::nullopt});
  for (const char* l : {"Cab", "Cx", "C3", "C4", "C5", "C6", "C7",
                        "Co", "Cm", "Cp"})
    nuclei.push_back({l, c13, std::nullopt});

  std::vector<Coupling> couplings = {
      // H-H
      {"HA", "HB", 1.22, 2},
      {"HX", "HA", 8.53, 3},
      {"HX", "HB", 15.5, 3},
      {"H6", "H7", 15.4, 3},
      {"H3", "H4", 3.6, 3},
      {"H5", "H4", 2.6, 3},
      {"Ho", "Hm", 6.9, 3},
      {"Hm", "Hp", 7.0, 3},
      {"H3", "H5", 1.0, 4},
      {"Ho", "Hp", 1.8, 4},
      {"H6", "H3", 0.6, 4},
      {"H7", "H5", 0.3, 6},
      {"HA", "H3", 0.35, 6},
      // one-bond C-H
      {"C3", "H3", 171.2, 1},
      {"C4", "H4", 174.0, 1},
      {"C5", "H5", 185.9, 1},
      {"Cx", "HX", 176.5, 1},
      {"Cab", "HA", 164.3, 1},
      {"Cab", "HB", 157.8, 1},
      {"C6", "H6", 153.3, 1},
      {"C7", "H7", 157.0, 1},
      {"Co", "Ho", 159.6, 1},
      {"Cm", "Hm", 161.1, 1},
      {"Cp", "Hp", 161.1, 1},
  };
  return SpinSystem(std::move(nuclei), std::move(couplings), 500.0);
}

}  // namespace nmrqc
