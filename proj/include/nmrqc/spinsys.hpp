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
#ifndef NMRQC_SPINSYS_HPP
#define NMRQC_SPINSYS_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace nmrqc {

/// An NMR-active isotope. Spin is stored as 2S so that half-integer
/// quantum numbers stay exact; base_frequency_per_tesla is gamma/2pi in MHz/T.
struct Isotope {
  std::string name;
  int twice_spin = 1;
  double base_frequency_per_tesla = 0.0;

  bool is_spin_half() const { return twice_spin == 1; }
  bool operator==(const Isotope& o) const { return name == o.name; }
  bool operator<(const Isotope& o) const { return name < o.name; }
};

/// Look up a known isotope ("1H", "13C", ...). Throws UnknownIsotope.
const Isotope& isotope_by_name(const std::string& name);

struct Nucleus {
  std::string label;
  Isotope isotope;
  std::optional<double> shift_ppm;
};

/// Scalar coupling J (or hyperfine a) between two nuclei, in Hz.
/// Stored once per unordered pair; queries are symmetric.
struct Coupling {
  std::string a;
  std::string b;
  double j_hz = 0.0;
  std::optional<int> bonds;
};

enum class Severity { Info, Warning, Error };

struct ValidationReport {
  int nucleus_count = 0;
  int coupling_count = 0;
  std::vector<std::pair<Severity, std::string>> issues;

  bool has_errors() const;
  bool accepted() const { return issues.empty(); }
};

class SpinSystem {
 public:
  SpinSystem() = default;
  SpinSystem(std::vector<Nucleus> nuclei, std::vector<Coupling> couplings,
             double proton_frequency_mhz = 500.0);

  const std::vector<Nucleus>& nuclei() const { return nuclei_; }
  const std::vector<Coupling>& couplings() const { return couplings_; }
  double proton_frequency_mhz() const { return proton_frequency_mhz_; }

  std::size_t size() const { return nuclei_.size(); }
  bool has_nucleus(const std::string& label) const;
  const Nucleus& nucleus(const std::string& label) const;
  std::size_t index_of(const std::string& label) const;

  /// Symmetric lookup: J(a,b) == J(b,a); 0 when the pair is uncoupled.
  double j(const std::string& a, const std::string& b) const;

  /// Spectrometer frequency for an isotope at this field, MHz.
  double isotope_frequency_mhz(const Isotope& iso) const;

 private:
  std::vector<Nucleus> nuclei_;
  std::vector<Coupling> couplings_;
  double proton_frequency_mhz_ = 500.0;
  std::map<std::string, std::size_t> index_;
};

/// Parse the line-oriented spin-system document format:
///   FIELD proton_mhz=<float>
///   NUCLEUS <label> <isotope> [shift_ppm=<float>]
///   COUPLING <label> <label> <J_hz> [bonds=<int>]
/// '#' starts a comment. Throws Error with a line number on bad input.
SpinSystem parse_spin_system(const std::string& text);

/// Deterministic inverse of parse_spin_system (input order preserved).
std::string serialize_spin_system(const SpinSystem& sys);

ValidationReport validate(const SpinSystem& sys);

/// Rotating-frame offsets in Hz: (shift - carrier) * isotope frequency.
/// Requires a shift on every nucleus and a carrier for every isotope present.
std::map<std::string, double> offsets_hz(
    const SpinSystem& sys, const std::map<std::string, double>& carrier_ppm);

/// The 21-spin / 24-coupling compound II dataset. Shifts are absent and
/// proton_frequency_mhz defaults to a synthetic 500.
SpinSystem bundled_compound_ii();

}  // namespace nmrqc

#endif
