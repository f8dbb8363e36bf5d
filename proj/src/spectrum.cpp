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
#include "nmrqc/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <numeric>
#include <sstream>

#include "nmrqc/errors.hpp"

namespace nmrqc {

namespace {

constexpr double kLineMergeTolHz = 1e-6;
constexpr double kIntensityFloor = 1e-9;  // relative to the strongest line

// Raising operator summed over the channel nuclei, in the product basis.
OperatorMatrix channel_f_plus(const SpinSystem& sys, const Isotope& channel) {
  const int n = static_cast<int>(sys.size());
  const Eigen::Index dim = Eigen::Index(1) << n;
  OperatorMatrix fp = OperatorMatrix::Zero(dim, dim);
  for (int k = 0; k < n; ++k) {
    if (!(sys.nuclei()[k].isotope == channel)) continue;
    const Eigen::Index mask = Eigen::Index(1) << (n - 1 - k);
    for (Eigen::Index m = 0; m < dim; ++m)
      if (m & mask) fp(m ^ mask, m) += 1.0;  // I+ |down> = |up>
  }
  return fp;
}

void sort_lines(std::vector<Line>& lines) {
  std::stable_sort(lines.begin(), lines.end(),
                   [](const Line& a, const Line& b) {
                     return a.frequency_hz < b.frequency_hz;
                   });
}

}  // namespace

double LineList::total_intensity() const {
  return std::accumulate(lines.begin(), lines.end(), 0.0,
                         [](double s, const Line& l) { return s + l.intensity; });
}

bool FirstOrderReport::all_pass() const {
  return std::all_of(entries.begin(), entries.end(), [](const auto& e) {
    return e.status == PairStatus::Pass;
  });
}

LineList exact_lines(const SpinSystem& sys,
                     const std::map<std::string, double>& carrier_ppm,
                     const Isotope& channel, CouplingMode mode, int cap) {
  const bool populated =
      std::any_of(sys.nuclei().begin(), sys.nuclei().end(),
                  [&](const Nucleus& n) { return n.isotope == channel; });
  if (!populated)
    throw Error("EmptyChannel",
                "no nucleus of isotope " + channel.name + " in the system");

  Hamiltonian h = build_hamiltonian(sys, carrier_ppm, mode, cap);
  Eigen::SelfAdjointEigenSolver<OperatorMatrix> es(h.matrix);
  const Eigen::VectorXd& energies = es.eigenvalues();
  const OperatorMatrix fp_eig =
      es.eigenvectors().adjoint() * channel_f_plus(sys, channel) *
      es.eigenvectors();

  // F+ raises total Fz, so each physical transition appears for exactly one
  // ordered pair; rotating-frame frequencies E_f - E_i may be negative.
  std::vector<Line> raw;
  for (Eigen::Index i = 0; i < energies.size(); ++i)
    for (Eigen::Index f = 0; f < energies.size(); ++f) {
      const double inten = std::norm(fp_eig(f, i));
      if (inten <= 0.0) continue;
      raw.push_back({energies(f) - energies(i), inten,
                     std::to_string(i) + "->" + std::to_string(f)});
    }
  sort_lines(raw);

  // Coalesce degenerate transitions into single lines.
  std::vector<Line> merged;
  for (const Line& l : raw) {
    if (!merged.empty() &&
        l.frequency_hz - merged.back().frequency_hz <= kLineMergeTolHz) {
      // intensity-weighted position keeps merged peaks centered
      Line& m = merged.back();
      const double w = m.intensity + l.intensity;
      m.frequency_hz =
          (m.frequency_hz * m.intensity + l.frequency_hz * l.intensity) / w;
      m.intensity = w;
    } else {
      merged.push_back(l);
    }
  }

  double max_inten = 0.0;
  for (const Line& l : merged) max_inten = std::max(max_inten, l.intensity);
  LineList out{channel, {}};
  for (const Line& l : merged)
    if (l.intensity >= kIntensityFloor * max_inten) out.lines.push_back(l);
  return out;
}

LineList first_order_lines(const SpinSystem& sys,
                           const std::map<std::string, double>& carrier_ppm,
                           const Isotope& channel) {
  const auto offs = offsets_hz(sys, carrier_ppm);
  LineList out{channel, {}};
  for (const auto& nuc : sys.nuclei()) {
    if (!(nuc.isotope == channel)) continue;
    std::vector<Line> multiplet = {{offs.at(nuc.label), 1.0, nuc.label}};
    for (const auto& c : sys.couplings()) {
      if (c.a != nuc.label && c.b != nuc.label) continue;
      std::vector<Line> split;
      split.reserve(multiplet.size() * 2);
      for (const Line& l : multiplet) {
        split.push_back({l.frequency_hz - c.j_hz / 2, l.intensity / 2, l.assignment});
        split.push_back({l.frequency_hz + c.j_hz / 2, l.intensity / 2, l.assignment});
      }
      multiplet = std::move(split);
    }
    out.lines.insert(out.lines.end(), multiplet.begin(), multiplet.end());
  }
  sort_lines(out.lines);
  return out;
}

FirstOrderReport first_order_report(
    const SpinSystem& sys, const std::map<std::string, double>& carrier_ppm,
    double threshold) {
  FirstOrderReport rep;
  rep.threshold = threshold;
  for (const auto& c : sys.couplings()) {
    FirstOrderEntry e;
    e.a = c.a;
    e.b = c.b;
    const Nucleus& na = sys.nucleus(c.a);
    const Nucleus& nb = sys.nucleus(c.b);
    if (!(na.isotope == nb.isotope)) {
      // heteronuclear: the MHz-scale offset difference dwarfs any J
      e.ratio = 0.0;
      e.status = PairStatus::Pass;
    } else if (!na.shift_ppm || !nb.shift_ppm ||
               !carrier_ppm.count(na.isotope.name)) {
      e.status = PairStatus::Indeterminate;
    } else {
      const double f_mhz = sys.isotope_frequency_mhz(na.isotope);
      const double dv = std::abs((*na.shift_ppm - *nb.shift_ppm) * f_mhz);
      if (dv == 0.0 && c.j_hz != 0.0) {
        e.ratio = std::numeric_limits<double>::infinity();
        e.status = PairStatus::Fail;
      } else {
        e.ratio = (c.j_hz == 0.0) ? 0.0 : std::abs(c.j_hz) / dv;
        e.status = (*e.ratio <= threshold) ? PairStatus::Pass : PairStatus::Fail;
      }
    }
    rep.entries.push_back(std::move(e));
  }
  return rep;
}

PruneResult prune(const SpinSystem& sys, double j_min_hz) {
  if (j_min_hz < 0) throw Error("BadThreshold", "j_min_hz must be >= 0");
  std::vector<Coupling> kept;
  for (const auto& c : sys.couplings())
    if (std::abs(c.j_hz) >= j_min_hz) kept.push_back(c);

  // union-find over nucleus indices
  std::vector<std::size_t> parent(sys.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& c : kept)
    parent[find(sys.index_of(c.a))] = find(sys.index_of(c.b));

  std::map<std::size_t, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < sys.size(); ++i) groups[find(i)].push_back(i);

  PruneResult res{SpinSystem(sys.nuclei(), kept, sys.proton_frequency_mhz()),
                  {}};
  std::vector<std::vector<std::size_t>> ordered;
  for (auto& [root, members] : groups) ordered.push_back(members);
  std::sort(ordered.begin(), ordered.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  for (const auto& members : ordered) {
    std::vector<Nucleus> nuclei;
    std::vector<Coupling> couplings;
    for (std::size_t i : members) nuclei.push_back(sys.nuclei()[i]);
    for (const auto& c : kept) {
      auto in = [&](const std::string& l) {
        return std::any_of(nuclei.begin(), nuclei.end(),
                           [&](const Nucleus& n) { return n.label == l; });
      };
      if (in(c.a) && in(c.b)) couplings.push_back(c);
    }
    res.components.emplace_back(std::move(nuclei), std::move(couplings),
                                sys.proton_frequency_mhz());
  }
  return res;
}

SpectrumTrace render_lineshape(const LineList& lines, double fwhm_hz,
                               double grid_min, double grid_max, int points) {
  if (points < 2 || grid_min >= grid_max || fwhm_hz <= 0)
    throw Error("InvalidGrid",
                "need points >= 2, grid_min < grid_max, fwhm_hz > 0");
  SpectrumTrace tr;
  tr.fwhm_hz = fwhm_hz;
  tr.grid.resize(points);
  tr.amplitude.assign(points, 0.0);
  const double step = (grid_max - grid_min) / (points - 1);
  const double hw = fwhm_hz / 2.0;
  for (int i = 0; i < points; ++i) tr.grid[i] = grid_min + i * step;
  for (const Line& l : lines.lines)
    for (int i = 0; i < points; ++i) {
      const double x = tr.grid[i] - l.frequency_hz;
      tr.amplitude[i] += l.intensity * (hw / M_PI) / (x * x + hw * hw);
    }
  return tr;
}

std::string lines_to_csv(const LineList& lines) {
  std::ostringstream out;
  out << "frequency_hz,intensity\n" << std::fixed << std::setprecision(6);
  for (const Line& l : lines.lines)
    out << l.frequency_hz << "," << l.intensity << "\n";
  return out.str();
}

std::string trace_to_csv(const SpectrumTrace& trace) {
  std::ostringstream out;
  out << "frequency_hz,amplitude\n" << std::fixed << std::setprecision(6);
  for (std::size_t i = 0; i < trace.grid.size(); ++i)
    out << trace.grid[i] << "," << trace.amplitude[i] << "\n";
  return out.str();
}

SpectrumTrace trace_from_csv(const std::string& text) {
  SpectrumTrace tr;
  std::istringstream iss(text);
  std::string line;
  bool header = true;
  int line_no = 0;
  while (std::getline(iss, line)) {
    ++line_no;
    if (line.empty()) continue;
    if (header) {
      header = false;
      continue;
    }
    auto comma = line.find(',');
    if (comma == std::string::npos)
      throw Error("SyntaxError",
                  "trace CSV line " + std::to_string(line_no) + ": no comma");
    try {
      tr.grid.push_back(std::stod(line.substr(0, comma)));
      tr.amplitude.push_back(std::stod(line.substr(comma + 1)));
    } catch (const std::exception&) {
      throw Error("SyntaxError",
                  "trace CSV line " + std::to_string(line_no) + ": bad number");
    }
  }
  return tr;
}

}  // namespace nmrqc
