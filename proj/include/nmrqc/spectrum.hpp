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
#ifndef NMRQC_SPECTRUM_HPP
#define NMRQC_SPECTRUM_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nmrqc/hamiltonian.hpp"
#include "nmrqc/spinsys.hpp"

namespace nmrqc {

struct Line {
  double frequency_hz = 0.0;
  double intensity = 0.0;
  std::string assignment;  // "i->f" eigenstate pair or a nucleus label
};

struct LineList {
  Isotope channel;
  std::vector<Line> lines;  // sorted ascending by frequency

  double total_intensity() const;
};

enum class PairStatus { Pass, Fail, Indeterminate };

struct FirstOrderEntry {
  std::string a;
  std::string b;
  std::optional<double> ratio;  // |J| / |nu_a - nu_b|; absent when shifts missing
  PairStatus status = PairStatus::Indeterminate;
};

struct FirstOrderReport {
  double threshold = 0.1;
  std::vector<FirstOrderEntry> entries;

  bool all_pass() const;
};

struct SpectrumTrace {
  std::vector<double> grid;       // uniform frequencies, Hz
  std::vector<double> amplitude;  // same length
  double fwhm_hz = 0.0;
};

/// Transition lines from exact diagonalization: intensity |<f|F+|i>|^2 over
/// the requested isotope channel at frequency E_f - E_i (rotating frame, so
/// possibly negative). Degenerate frequencies are merged; lines below 1e-9
/// of the strongest are dropped.
LineList exact_lines(const SpinSystem& sys,
                     const std::map<std::string, double>& carrier_ppm,
                     const Isotope& channel, CouplingMode mode,
                     int cap = kDefaultSizeCap);

/// First-order multiplets: each channel nucleus splits by +-J/2 per coupling
/// partner. No diagonalization, so no size cap.
LineList first_order_lines(const SpinSystem& sys,
                           const std::map<std::string, double>& carrier_ppm,
                           const Isotope& channel);

/// The first-order validity check |J| << |delta nu| per coupled homonuclear
/// pair. Heteronuclear pairs always pass; missing shifts give Indeterminate.
FirstOrderReport first_order_report(
    const SpinSystem& sys, const std::map<std::string, double>& carrier_ppm,
    double threshold = 0.1);

struct PruneResult {
  SpinSystem pruned;                     // couplings below j_min removed
  std::vector<SpinSystem> components;    // connected pieces of the pruned graph
};

PruneResult prune(const SpinSystem& sys, double j_min_hz);

/// Sum of unit-area Lorentzians on a uniform grid.
SpectrumTrace render_lineshape(const LineList& lines, double fwhm_hz,
                               double grid_min, double grid_max, int points);

std::string lines_to_csv(const LineList& lines);
std::string trace_to_csv(const SpectrumTrace& trace);
SpectrumTrace trace_from_csv(const std::string& text);

}  // namespace nmrqc

#endif
