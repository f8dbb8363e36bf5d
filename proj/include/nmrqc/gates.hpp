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
#ifndef NMRQC_GATES_HPP
#define NMRQC_GATES_HPP

#include <set>
#include <string>
#include <variant>
#include <vector>

#include "nmrqc/hamiltonian.hpp"
#include "nmrqc/spinsys.hpp"

namespace nmrqc {

enum class Axis { X, Y, Z };

/// Instantaneous, perfectly selective rotation exp(-i angle sum I_axis)
/// over the target spins.
struct IdealPulse {
  std::set<std::string> targets;
  Axis axis = Axis::X;
  double angle = 0.0;
};

/// Free evolution with ideal refocusing: only the listed offsets and
/// couplings (secular zz form) survive for the duration.
struct Delay {
  double t_seconds = 0.0;
  std::set<std::pair<std::string, std::string>> active_couplings;
  std::set<std::string> active_offsets;
};

using PulseElement = std::variant<IdealPulse, Delay>;

struct PulseSequence {
  std::vector<PulseElement> elements;
  std::vector<std::string> register_labels;

  double total_delay_s() const;
};

struct GateReport {
  OperatorMatrix compiled;
  OperatorMatrix ideal;
  double fidelity = 0.0;
  double total_delay_s = 0.0;
};

/// |Tr(U^dag V)| / dim; invariant under global phase.
double fidelity(const OperatorMatrix& u, const OperatorMatrix& v);

OperatorMatrix element_propagator(const SpinSystem& sys,
                                  const PulseElement& element,
                                  int cap = kDefaultSizeCap);

/// Ordered product, first element applied first.
OperatorMatrix sequence_propagator(const SpinSystem& sys,
                                   const PulseSequence& seq,
                                   int cap = kDefaultSizeCap);

/// Weak-coupling CNOT: z/xy pulses around a 1/(2|J|) zz delay.
PulseSequence compile_cnot(const SpinSystem& sys, const std::string& control,
                           const std::string& target);

/// Toffoli with controls a, b and target c via the standard CNOT + T-gate
/// decomposition; missing a-c (or a-b) couplings are routed through the
/// remaining spin with extra CNOTs.
PulseSequence compile_toffoli(const SpinSystem& sys, const std::string& a,
                              const std::string& b, const std::string& c);

/// Ideal gate unitaries in the system's full product basis, acting on the
/// named spins (controls first).
OperatorMatrix ideal_cnot(const SpinSystem& sys, const std::string& control,
                          const std::string& target);
OperatorMatrix ideal_toffoli(const SpinSystem& sys, const std::string& a,
                             const std::string& b, const std::string& c);

GateReport verify_gate(const SpinSystem& sys, const PulseSequence& seq,
                       const OperatorMatrix& ideal,
                       int cap = kDefaultSizeCap);

std::string sequence_to_text(const PulseSequence& seq);

}  // namespace nmrqc

#endif
