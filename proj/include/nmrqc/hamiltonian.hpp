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
#ifndef NMRQC_HAMILTONIAN_HPP
#define NMRQC_HAMILTONIAN_HPP

#include <Eigen/Dense>
#include <complex>
#include <map>
#include <string>
#include <vector>

#include "nmrqc/spinsys.hpp"

namespace nmrqc {

using OperatorMatrix = Eigen::MatrixXcd;

/// Hard cap on spin count: dense matrices grow as 4^N.
inline constexpr int kDefaultSizeCap = 12;

/// How J couples a homonuclear pair. Heteronuclear pairs are always
/// truncated to the secular zz form regardless of the mode.
enum class CouplingMode { Isotropic, WeakZZ };

/// H = H_Z + H_J in the 2^N product basis, in Hz. Spin 0 is the most
/// significant bit of the basis index; bit 0 means Iz = +1/2.
struct Hamiltonian {
  OperatorMatrix matrix;
  std::vector<std::string> basis;  // nucleus labels, slot order
  std::map<std::string, double> frame;  // carrier_ppm used for the offsets
};

void check_size_cap(std::size_t n, int cap = kDefaultSizeCap);

/// n-fold tensor embedding of (Pauli/2) at slot k: returns (Ix, Iy, Iz).
struct SpinOperators {
  OperatorMatrix ix, iy, iz;
};
SpinOperators spin_half_operators(int n, int k, int cap = kDefaultSizeCap);

/// Total Fz = sum of Iz over all spins (diagonal).
OperatorMatrix total_fz(int n);

Hamiltonian build_hamiltonian(const SpinSystem& sys,
                              const std::map<std::string, double>& carrier_ppm,
                              CouplingMode mode,
                              int cap = kDefaultSizeCap);

/// U = exp(-i 2 pi H t), via eigendecomposition of the Hermitian matrix.
OperatorMatrix propagator(const Hamiltonian& h, double t_seconds);
OperatorMatrix propagator(const OperatorMatrix& h_hz, double t_seconds);

}  // namespace nmrqc

#endif
