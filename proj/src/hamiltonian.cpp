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
#include "nmrqc/hamiltonian.hpp"

#include <cmath>

#include "nmrqc/errors.hpp"

namespace nmrqc {

namespace {

constexpr std::complex<double> kI{0.0, 1.0};

// Spin k occupies bit (n-1-k) of the basis index; bit value 0 is |0> = +1/2.
inline double z_of(Eigen::Index state, int n, int k) {
  return ((state >> (n - 1 - k)) & 1) ? -0.5 : 0.5;
}

inline Eigen::Index flip(Eigen::Index state, int n, int k) {
  return state ^ (Eigen::Index(1) << (n - 1 - k));
}

}  // namespace

void check_size_cap(std::size_t n, int cap) {
  if (static_cast<int>(n) > cap)
    throw Error("SizeCapExceeded",
                "system of " + std::to_string(n) + " spins exceeds the cap of " +
                    std::to_string(cap) + " (2^N state space)",
                ErrorClass::Resource);
}

SpinOperators spin_half_operators(int n, int k, int cap) {
  if (k < 0 || k >= n) throw Error("BadSpinIndex", "spin index out of range");
  check_size_cap(static_cast<std::size_t>(n), cap);
  const Eigen::Index dim = Eigen::Index(1) << n;
  SpinOperators ops{OperatorMatrix::Zero(dim, dim),
                    OperatorMatrix::Zero(dim, dim),
                    OperatorMatrix::Zero(dim, dim)};
  for (Eigen::Index m = 0; m < dim; ++m) {
    ops.iz(m, m) = z_of(m, n, k);
    const Eigen::Index f = flip(m, n, k);
    ops.ix(m, f) = 0.5;
    // <up|Iy|down> = -i/2
    ops.iy(m, f) = (z_of(m, n, k) > 0) ? -0.5 * kI : 0.5 * kI;
  }
  return ops;
}

OperatorMatrix total_fz(int n) {
  const Eigen::Index dim = Eigen::Index(1) << n;
  OperatorMatrix fz = OperatorMatrix::Zero(dim, dim);
  for (Eigen::Index m = 0; m < dim; ++m)
    for (int k = 0; k < n; ++k) fz(m, m) += z_of(m, n, k);
  return fz;
}

Hamiltonian build_hamiltonian(const SpinSystem& sys,
                              const std::map<std::string, double>& carrier_ppm,
                              CouplingMode mode, int cap) {
  check_size_cap(sys.size(), cap);
  for (const auto& nuc : sys.nuclei())
    if (!nuc.isotope.is_spin_half())
      throw Error("QuadrupolarUnsupported",
                  "nucleus " + nuc.label + " has spin > 1/2 (" +
                      nuc.isotope.name + "); quadrupolar terms not modeled");

  const int n = static_cast<int>(sys.size());
  const Eigen::Index dim = Eigen::Index(1) << n;
  const auto offs = offsets_hz(sys, carrier_ppm);

  Hamiltonian h;
  h.matrix = OperatorMatrix::Zero(dim, dim);
  h.frame = carrier_ppm;
  for (const auto& nuc : sys.nuclei()) h.basis.push_back(nuc.label);

  for (Eigen::Index m = 0; m < dim; ++m) {
    double diag = 0.0;
    for (int k = 0; k < n; ++k)
      diag += offs.at(h.basis[k]) * z_of(m, n, k);
    h.matrix(m, m) += diag;
  }

  for (const auto& c : sys.couplings()) {
    const int i = static_cast<int>(sys.index_of(c.a));
    const int j = static_cast<int>(sys.index_of(c.b));
    const bool homonuclear =
        sys.nucleus(c.a).isotope == sys.nucleus(c.b).isotope;
    const bool isotropic = homonuclear && mode == CouplingMode::Isotropic;
    for (Eigen::Index m = 0; m < dim; ++m) {
      h.matrix(m, m) += c.j_hz * z_of(m, n, i) * z_of(m, n, j);
      if (isotropic && z_of(m, n, i) != z_of(m, n, j)) {
        // flip-flop: (I+I- + I-I+)/2 connects |01> and |10>
        h.matrix(flip(flip(m, n, i), n, j), m) += 0.5 * c.j_hz;
      }
    }
  }
  return h;
}

OperatorMatrix propagator(const OperatorMatrix& h_hz, double t_seconds) {
  if (t_seconds == 0.0)
    return OperatorMatrix::Identity(h_hz.rows(), h_hz.cols());
  Eigen::SelfAdjointEigenSolver<OperatorMatrix> es(h_hz);
  Eigen::VectorXcd phases =
      (-kI * 2.0 * M_PI * t_seconds * es.eigenvalues().array())
          .exp()
          .matrix();
  return es.eigenvectors() * phases.asDiagonal() *
         es.eigenvectors().adjoint();
}

OperatorMatrix propagator(const Hamiltonian& h, double t_seconds) {
  if (t_seconds < 0) throw Error("NegativeTime", "evolution time must be >= 0");
  return propagator(h.matrix, t_seconds);
}

}  // namespace nmrqc
