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
#include "nmrqc/fit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <sstream>

#include "nmrqc/errors.hpp"

namespace nmrqc {

std::string Parameter::name() const {
  if (kind == ParamKind::ShiftPpm) return "shift:" + label_a;
  return "j:" + label_a + "+" + label_b;
}

namespace {

void validate_spec(const SpinSystem& templ, const ParameterSpec& spec) {
  if (spec.empty())
    throw Error("NoFreeParameters", "parameter spec is empty");
  for (const auto& p : spec) {
    if (!(p.lower <= p.initial && p.initial <= p.upper))
      throw Error("BadBounds",
                  p.name() + ": need lower <= initial <= upper");
    if (!templ.has_nucleus(p.label_a))
      throw Error("UnknownLabel", p.name() + ": unknown label " + p.label_a);
    if (p.kind == ParamKind::JHz) {
      bool found = false;
      for (const auto& c : templ.couplings())
        found = found || std::minmax(c.a, c.b) ==
                             std::minmax(p.label_a, p.label_b);
      if (!found)
        throw Error("UnknownCoupling",
                    p.name() + ": pair not present in the template system");
    }
  }
}

}  // namespace

SpinSystem apply_parameters(const SpinSystem& templ, const ParameterSpec& spec,
                            const std::vector<double>& values) {
  if (values.size() != spec.size())
    throw Error("BadParameterCount", "value count does not match the spec");
  std::vector<Nucleus> nuclei = templ.nuclei();
  std::vector<Coupling> couplings = templ.couplings();
  for (std::size_t i = 0; i < spec.size(); ++i) {
    const Parameter& p = spec[i];
    if (p.kind == ParamKind::ShiftPpm) {
      for (auto& n : nuclei)
        if (n.label == p.label_a) n.shift_ppm = values[i];
    } else {
      for (auto& c : couplings)
        if (std::minmax(c.a, c.b) == std::minmax(p.label_a, p.label_b))
          c.j_hz = values[i];
    }
  }
  return SpinSystem(std::move(nuclei), std::move(couplings),
                    templ.proton_frequency_mhz());
}

SpectrumTrace forward_trace(const SpinSystem& sys,
                            const std::map<std::string, double>& carrier_ppm,
                            const Isotope& channel, CouplingMode mode,
                            double fwhm_hz, double grid_min, double grid_max,
                            int points, int cap) {
  return render_lineshape(exact_lines(sys, carrier_ppm, channel, mode, cap),
                          fwhm_hz, grid_min, grid_max, points);
}

double objective(const SpinSystem& templ, const ParameterSpec& spec,
                 const std::vector<double>& values, const SpectrumTrace& target,
                 const FitSettings& settings) {
  if (static_cast<int>(target.grid.size()) != settings.grid_points ||
      target.grid.empty() ||
      std::abs(target.grid.front() - settings.grid_min) > 1e-9 ||
      std::abs(target.grid.back() - settings.grid_max) > 1e-9)
    throw Error("GridMismatch",
                "target grid differs from the simulation grid");
  const SpinSystem sys = apply_parameters(templ, spec, values);
  const SpectrumTrace sim =
      forward_trace(sys, settings.carrier_ppm, settings.channel, settings.mode,
                    settings.fwhm_hz, settings.grid_min, settings.grid_max,
                    settings.grid_points, settings.cap);
  double ssq = 0.0;
  for (std::size_t i = 0; i < sim.amplitude.size(); ++i) {
    const double d = sim.amplitude[i] - target.amplitude[i];
    ssq += d * d;
  }
  return ssq;
}

FitResult fit_parameters(const SpinSystem& templ, const ParameterSpec& spec,
                         const SpectrumTrace& target,
                         const FitSettings& settings) {
  validate_spec(templ, spec);
  const std::size_t n = spec.size();

  auto eval = [&](const std::vector<double>& x) {
    std::vector<double> clamped(n);
    for (std::size_t i = 0; i < n; ++i)
      clamped[i] = std::clamp(x[i], spec[i].lower, spec[i].upper);
    const double f = objective(templ, spec, clamped, target, settings);
    if (!std::isfinite(f)) {
      std::ostringstream oss;
      for (double v : clamped) oss << " " << v;
      throw Error("NonFiniteObjective",
                  "objective is not finite at" + oss.str(),
                  ErrorClass::Resource);
    }
    return f;
  };
  auto clamp_vec = [&](std::vector<double> x) {
    for (std::size_t i = 0; i < n; ++i)
      x[i] = std::clamp(x[i], spec[i].lower, spec[i].upper);
    return x;
  };

  FitResult result;
  std::vector<double> x0(n);
  for (std::size_t i = 0; i < n; ++i) x0[i] = spec[i].initial;
  result.initial_objective = eval(x0);

  std::vector<double> best_x = x0;
  double best_f = result.initial_objective;
  int total_iters = 0;
  bool converged = false;
  std::mt19937 rng(settings.seed);

  for (int run = 0; run <= settings.restarts; ++run) {
    // simplex around the current best point
    std::vector<std::vector<double>> vx(n + 1, best_x);
    for (std::size_t i = 0; i < n; ++i) {
      double step = 0.1 * (spec[i].upper - spec[i].lower);
      if (step == 0.0) step = 1e-3;
      if (run > 0) {
        std::uniform_real_distribution<double> jitter(-0.5, 0.5);
        step *= (1.0 + jitter(rng));
      }
      vx[i + 1] = clamp_vec([&] {
        auto v = best_x;
        v[i] = (v[i] + step <= spec[i].upper) ? v[i] + step : v[i] - step;
        return v;
      }());
    }
    std::vector<double> vf(n + 1);
    for (std::size_t i = 0; i <= n; ++i) vf[i] = eval(vx[i]);

    auto order = [&] {
      std::vector<std::size_t> idx(n + 1);
      std::iota(idx.begin(), idx.end(), 0);
      std::stable_sort(idx.begin(), idx.end(),
                       [&](std::size_t a, std::size_t b) { return vf[a] < vf[b]; });
      std::vector<std::vector<double>> nx;
      std::vector<double> nf;
      for (auto i : idx) {
        nx.push_back(vx[i]);
        nf.push_back(vf[i]);
      }
      vx = std::move(nx);
      vf = std::move(nf);
    };

    for (; total_iters < settings.max_iterations; ++total_iters) {
      order();
      // simplex diameter and objective spread across the vertices
      double diam = 0.0;
      for (std::size_t i = 1; i <= n; ++i)
        for (std::size_t d = 0; d < n; ++d)
          diam = std::max(diam, std::abs(vx[i][d] - vx[0][d]));
      if (diam < settings.tol_x || vf[n] - vf[0] < settings.tol_f) {
        converged = true;
        break;
      }

      std::vector<double> centroid(n, 0.0);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t d = 0; d < n; ++d) centroid[d] += vx[i][d] / n;

      auto blend = [&](double coeff) {
        std::vector<double> x(n);
        for (std::size_t d = 0; d < n; ++d)
          x[d] = centroid[d] + coeff * (centroid[d] - vx[n][d]);
        return clamp_vec(x);
      };

      const auto xr = blend(1.0);
      const double fr = eval(xr);
      if (fr < vf[0]) {
        const auto xe = blend(2.0);
        const double fe = eval(xe);
        if (fe < fr) {
          vx[n] = xe;
          vf[n] = fe;
        } else {
          vx[n] = xr;
          vf[n] = fr;
        }
      } else if (fr < vf[n - 1]) {
        vx[n] = xr;
        vf[n] = fr;
      } else {
        const auto xc = blend(fr < vf[n] ? 0.5 : -0.5);
        const double fc = eval(xc);
        if (fc < std::min(fr, vf[n])) {
          vx[n] = xc;
          vf[n] = fc;
        } else {
          for (std::size_t i = 1; i <= n; ++i) {
            for (std::size_t d = 0; d < n; ++d)
              vx[i][d] = vx[0][d] + 0.5 * (vx[i][d] - vx[0][d]);
            vf[i] = eval(vx[i]);
          }
        }
      }
    }
    order();
    if (vf[0] < best_f) {
      best_f = vf[0];
      best_x = vx[0];
    }
  }

  result.values = best_x;
  result.final_objective = best_f;
  result.iterations = total_iters;
  result.converged = converged;
  return result;
}

std::string fit_report_text(const ParameterSpec& spec, const FitResult& result) {
  std::ostringstream out;
  out.precision(10);
  for (std::size_t i = 0; i < spec.size(); ++i) {
    const Parameter& p = spec[i];
    out << "param=" << p.name() << " fitted=" << result.values[i]
        << " initial=" << p.initial
        << " at_lower=" << (result.values[i] <= p.lower ? 1 : 0)
        << " at_upper=" << (result.values[i] >= p.upper ? 1 : 0) << "\n";
  }
  out << "initial_objective=" << result.initial_objective << "\n";
  out << "final_objective=" << result.final_objective << "\n";
  out << "iterations=" << result.iterations << "\n";
  out << "converged=" << (result.converged ? 1 : 0) << "\n";
  return out.str();
}

}  // namespace nmrqc
