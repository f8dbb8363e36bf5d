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
#include "nmrqc/gates.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "nmrqc/errors.hpp"

namespace nmrqc {

namespace {

constexpr std::complex<double> kI{0.0, 1.0};

inline double z_of(Eigen::Index state, int n, int k) {
  return ((state >> (n - 1 - k)) & 1) ? -0.5 : 0.5;
}

char axis_char(Axis a) {
  switch (a) {
    case Axis::X: return 'x';
    case Axis::Y: return 'y';
    default: return 'z';
  }
}

void append(PulseSequence& seq, const PulseSequence& other) {
  seq.elements.insert(seq.elements.end(), other.elements.begin(),
                      other.elements.end());
}

void pulse(PulseSequence& seq, const std::string& target, Axis axis,
           double angle) {
  seq.elements.push_back(IdealPulse{{target}, axis, angle});
}

// Hadamard up to a global phase: Ry(pi/2) then Rx(pi).
void hadamard(PulseSequence& seq, const std::string& target) {
  pulse(seq, target, Axis::Y, M_PI / 2);
  pulse(seq, target, Axis::X, M_PI);
}

}  // namespace

double PulseSequence::total_delay_s() const {
  double t = 0.0;
  for (const auto& e : elements)
    if (const auto* d = std::get_if<Delay>(&e)) t += d->t_seconds;
  return t;
}

double fidelity(const OperatorMatrix& u, const OperatorMatrix& v) {
  if (u.rows() != v.rows() || u.cols() != v.cols())
    throw Error("DimensionMismatch", "fidelity of unequal-dimension unitaries");
  return std::abs((u.adjoint() * v).trace()) / static_cast<double>(u.rows());
}

OperatorMatrix element_propagator(const SpinSystem& sys,
                                  const PulseElement& element, int cap) {
  check_size_cap(sys.size(), cap);
  const int n = static_cast<int>(sys.size());
  const Eigen::Index dim = Eigen::Index(1) << n;

  if (const auto* p = std::get_if<IdealPulse>(&element)) {
    OperatorMatrix gen = OperatorMatrix::Zero(dim, dim);
    for (const auto& label : p->targets) {
      const int k = static_cast<int>(sys.index_of(label));
      const auto ops = spin_half_operators(n, k, cap);
      switch (p->axis) {
        case Axis::X: gen += ops.ix; break;
        case Axis::Y: gen += ops.iy; break;
        case Axis::Z: gen += ops.iz; break;
      }
    }
    if (p->angle == 0.0) return OperatorMatrix::Identity(dim, dim);
    return propagator(gen, p->angle / (2 * M_PI));
  }

  const auto& d = std::get<Delay>(element);
  if (d.t_seconds < 0) throw Error("NegativeTime", "delay must be >= 0");
  // The selective Hamiltonian is diagonal: active offsets plus active
  // couplings in the secular zz form.
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(dim);
  for (const auto& label : d.active_offsets) {
    const Nucleus& nuc = sys.nucleus(label);
    if (!nuc.shift_ppm)
      throw Error("MissingShift",
                  "nucleus " + label + " has no chemical shift");
    const double nu = *nuc.shift_ppm * sys.isotope_frequency_mhz(nuc.isotope);
    const int k = static_cast<int>(sys.index_of(label));
    for (Eigen::Index m = 0; m < dim; ++m) diag(m) += nu * z_of(m, n, k);
  }
  for (const auto& [a, b] : d.active_couplings) {
    const double j = sys.j(a, b);
    if (j == 0.0)
      throw Error("UnknownCoupling",
                  "active coupling {" + a + "," + b + "} is not in the system");
    const int i = static_cast<int>(sys.index_of(a));
    const int k = static_cast<int>(sys.index_of(b));
    for (Eigen::Index m = 0; m < dim; ++m)
      diag(m) += j * z_of(m, n, i) * z_of(m, n, k);
  }
  OperatorMatrix u = OperatorMatrix::Zero(dim, dim);
  for (Eigen::Index m = 0; m < dim; ++m)
    u(m, m) = std::exp(-kI * 2.0 * M_PI * diag(m) * d.t_seconds);
  return u;
}

OperatorMatrix sequence_propagator(const SpinSystem& sys,
                                   const PulseSequence& seq, int cap) {
  check_size_cap(sys.size(), cap);
  const Eigen::Index dim = Eigen::Index(1) << sys.size();
  OperatorMatrix u = OperatorMatrix::Identity(dim, dim);
  for (const auto& e : seq.elements) u = element_propagator(sys, e, cap) * u;
  return u;
}

PulseSequence compile_cnot(const SpinSystem& sys, const std::string& control,
                           const std::string& target) {
  const double j = sys.j(control, target);
  if (j == 0.0)
    throw Error("NoCoupling",
                "no coupling between " + control + " and " + target);

  // CNOT = H_t . CZ . H_t with CZ built from z rotations and a 1/(2|J|)
  // zz delay; the z-pulse sign follows the sign of J.
  const double zsign = (j > 0) ? -1.0 : 1.0;
  PulseSequence seq;
  seq.register_labels = {control, target};
  hadamard(seq, target);
  pulse(seq, control, Axis::Z, zsign * M_PI / 2);
  pulse(seq, target, Axis::Z, zsign * M_PI / 2);
  Delay d;
  d.t_seconds = 1.0 / (2.0 * std::abs(j));
  d.active_couplings.insert(std::minmax(control, target));
  seq.elements.push_back(d);
  hadamard(seq, target);
  return seq;
}

namespace {

// CNOT on a pair without a direct coupling, routed through a shared
// neighbor: CNOT(x,y) = C(m,y) C(x,m) C(m,y) C(x,m) applied left-first.
PulseSequence cnot_routed(const SpinSystem& sys, const std::string& x,
                          const std::string& y,
                          const std::vector<std::string>& candidates) {
  if (sys.j(x, y) != 0.0) return compile_cnot(sys, x, y);
  for (const auto& m : candidates) {
    if (m == x || m == y) continue;
    if (sys.j(x, m) != 0.0 && sys.j(m, y) != 0.0) {
      PulseSequence seq;
      append(seq, compile_cnot(sys, m, y));
      append(seq, compile_cnot(sys, x, m));
      append(seq, compile_cnot(sys, m, y));
      append(seq, compile_cnot(sys, x, m));
      return seq;
    }
  }
  throw Error("NoCouplingPath",
              "no coupling path between " + x + " and " + y);
}

}  // namespace

PulseSequence compile_toffoli(const SpinSystem& sys, const std::string& a,
                              const std::string& b, const std::string& c) {
  const std::vector<std::string> reg = {a, b, c};
  auto cnot = [&](const std::string& x, const std::string& y) {
    return cnot_routed(sys, x, y, reg);
  };
  auto t_gate = [&](PulseSequence& s, const std::string& q, double sign) {
    pulse(s, q, Axis::Z, sign * M_PI / 4);
  };

  // Standard CCNOT decomposition into CNOTs, T gates and Hadamards,
  // controls a and b, target c.
  PulseSequence seq;
  seq.register_labels = reg;
  hadamard(seq, c);
  append(seq, cnot(b, c));
  t_gate(seq, c, -1);
  append(seq, cnot(a, c));
  t_gate(seq, c, +1);
  append(seq, cnot(b, c));
  t_gate(seq, c, -1);
  append(seq, cnot(a, c));
  t_gate(seq, b, +1);
  t_gate(seq, c, +1);
  append(seq, cnot(a, b));
  hadamard(seq, c);
  t_gate(seq, a, +1);
  t_gate(seq, b, -1);
  append(seq, cnot(a, b));
  return seq;
}

namespace {

OperatorMatrix controlled_not(const SpinSystem& sys,
                              const std::vector<std::string>& controls,
                              const std::string& target) {
  const int n = static_cast<int>(sys.size());
  const Eigen::Index dim = Eigen::Index(1) << n;
  Eigen::Index tmask = Eigen::Index(1) << (n - 1 - sys.index_of(target));
  OperatorMatrix u = OperatorMatrix::Zero(dim, dim);
  for (Eigen::Index m = 0; m < dim; ++m) {
    bool all = true;
    for (const auto& ctl : controls)
      all = all && ((m >> (n - 1 - sys.index_of(ctl))) & 1);
    u(all ? (m ^ tmask) : m, m) = 1.0;
  }
  return u;
}

}  // namespace

OperatorMatrix ideal_cnot(const SpinSystem& sys, const std::string& control,
                          const std::string& target) {
  return controlled_not(sys, {control}, target);
}

OperatorMatrix ideal_toffoli(const SpinSystem& sys, const std::string& a,
                             const std::string& b, const std::string& c) {
  return controlled_not(sys, {a, b}, c);
}

GateReport verify_gate(const SpinSystem& sys, const PulseSequence& seq,
                       const OperatorMatrix& ideal, int cap) {
  GateReport rep;
  rep.compiled = sequence_propagator(sys, seq, cap);
  rep.ideal = ideal;
  rep.fidelity = fidelity(ideal, rep.compiled);
  rep.total_delay_s = seq.total_delay_s();
  return rep;
}

std::string sequence_to_text(const PulseSequence& seq) {
  std::ostringstream out;
  out.precision(12);
  for (const auto& e : seq.elements) {
    if (const auto* p = std::get_if<IdealPulse>(&e)) {
      out << "PULSE ";
      bool first = true;
      for (const auto& l : p->targets) {
        if (!first) out << "+";
        out << l;
        first = false;
      }
      out << " " << axis_char(p->axis) << " " << p->angle << "\n";
    } else {
      const auto& d = std::get<Delay>(e);
      out << "DELAY " << d.t_seconds << " couplings=";
      if (d.active_couplings.empty()) {
        out << "none";
      } else {
        bool first = true;
        for (const auto& [a, b] : d.active_couplings) {
          if (!first) out << ";";
          out << a << "-" << b;
          first = false;
        }
      }
      out << " offsets=";
      if (d.active_offsets.empty()) {
        out << "none";
      } else {
        bool first = true;
        for (const auto& l : d.active_offsets) {
          if (!first) out << ",";
          out << l;
          first = false;
        }
      }
      out << "\n";
    }
  }
  return out.str();
}

}  // namespace nmrqc
