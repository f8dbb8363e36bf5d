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
#ifndef NMRQC_REGISTERS_HPP
#define NMRQC_REGISTERS_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nmrqc/spinsys.hpp"

namespace nmrqc {

/// Thresholds deciding which couplings count as "nonzero" (chain edges)
/// and which count as "zero" (allowed cross-couplings), plus the shift
/// resolvability requirement when shifts are available.
struct RegisterCriteria {
  double j_chain_min_hz = 5.0;
  double j_cross_max_hz = 1.5;
  double min_resolvability = 3.0;   // require |dnu| >= this * max chain |J|
  bool strict_ordering = false;     // require descending chain J magnitudes
  std::uint64_t combination_cap = 5'000'000;
};

/// A k-spin chain candidate. Labels are in chain order; resolvability
/// margins are |dnu| / max chain |J| per in-register pair, or absent when
/// any shift is missing.
struct RegisterCandidate {
  std::vector<std::string> labels;
  std::vector<double> chain_js;  // |J| along consecutive pairs
  std::vector<double> cross_js;  // |J| between non-adjacent members
  std::optional<std::vector<double>> resolvability_margins;
  double score = 0.0;
};

double score_register(const RegisterCandidate& cand,
                      const RegisterCriteria& criteria);

/// All simple k-paths in the coupling graph whose edges clear j_chain_min
/// and whose chords stay under j_cross_max, ranked by score descending.
/// Works without shifts (resolvability then indeterminate).
std::vector<RegisterCandidate> find_chain_registers(
    const SpinSystem& sys, int k, const RegisterCriteria& criteria,
    const std::map<std::string, double>* carrier_ppm = nullptr);

/// The ABC spin-triple screen: k=3 chains.
std::vector<RegisterCandidate> find_toffoli_triples(
    const SpinSystem& sys, const RegisterCriteria& criteria,
    const std::map<std::string, double>* carrier_ppm = nullptr);

std::string candidates_to_csv(const std::vector<RegisterCandidate>& cands);

}  // namespace nmrqc

#endif
