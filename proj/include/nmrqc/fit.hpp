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
#ifndef NMRQC_FIT_HPP
#define NMRQC_FIT_HPP

#include <map>
#include <string>
#include <vector>

#include "nmrqc/spectrum.hpp"
#include "nmrqc/spinsys.hpp"

namespace nmrqc {

enum class ParamKind { ShiftPpm, JHz };

struct Parameter {
  ParamKind kind = ParamKind::JHz;
  std::string label_a;
  std::string label_b;  // second label for JHz, empty for ShiftPpm
  double initial = 0.0;
  double lower = 0.0;
  double upper = 0.0;

  std::string name() const;
};

using ParameterSpec = std::vector<Parameter>;

struct FitSettings {
  std::map<std::string, double> carrier_ppm;
  Isotope channel;
  CouplingMode mode = CouplingMode::Isotropic;
  double fwhm_hz = 1.0;
  double grid_min = 0.0;
  double grid_max = 0.0;
  int grid_points = 0;
  double tol_x = 1e-4;
  double tol_f = 1e-12;
  int max_iterations = 5000;
  int restarts = 2;
  unsigned seed = 0;  // jitter seed for restarts
  int cap = kDefaultSizeCap;
};

struct FitResult {
  std::vector<double> values;     // per parameter, ParameterSpec order
  double initial_objective = 0.0;
  double final_objective = 0.0;
  int iterations = 0;
  bool converged = false;
};

/// Copy of the template system with the parameter values applied.
SpinSystem apply_parameters(const SpinSystem& templ, const ParameterSpec& spec,
                            const std::vector<double>& values);

/// exact_lines composed with render_lineshape.
SpectrumTrace forward_trace(const SpinSystem& sys,
                            const std::map<std::string, double>& carrier_ppm,
                            const Isotope& channel, CouplingMode mode,
                            double fwhm_hz, double grid_min, double grid_max,
                            int points, int cap = kDefaultSizeCap);

/// Sum of squared amplitude differences on the shared grid.
double objective(const SpinSystem& templ, const ParameterSpec& spec,
                 const std::vector<double>& values, const SpectrumTrace& target,
                 const FitSettings& settings);

/// Bounded Nelder-Mead descent on the objective, with deterministic
/// restart jitter. The reported objective never exceeds the initial one.
FitResult fit_parameters(const SpinSystem& templ, const ParameterSpec& spec,
                         const SpectrumTrace& target,
                         const FitSettings& settings);

std::string fit_report_text(const ParameterSpec& spec, const FitResult& result);

}  // namespace nmrqc

#endif
