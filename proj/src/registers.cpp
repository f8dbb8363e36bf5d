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
#include "nmrqc/registers.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>

#include "nmrqc/errors.hpp"

namespace nmrqc {

namespace {

constexpr double kEps = 1e-9;

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    if (r > std::numeric_limits<std::uint64_t>::max() / (n - k + i)) return
        std::numeric_limits<std::uint64_t>::max();
    r = r * (n - k + i) / i;
  }
  return r;
}

// Orientation rule: chain J magnitudes read largest-first; ties fall back
// to the smaller first label. Makes every path report exactly once.
bool is_canonical(const std::vector<std::string>& labels,
                  const std::vector<double>& chain_js) {
  std::vector<double> rev(chain_js.rbegin(), chain_js.rend());
  if (chain_js != rev) return chain_js > rev;
  return labels.front() <= labels.back();
}

std::string joined(const std::vector<std::string>& labels) {
  std::string out;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (i) out += '+';
    out += labels[i];
  }
  return out;
}

}  // namespace

double score_register(const RegisterCandidate& cand,
                      const RegisterCriteria& criteria) {
  double s = std::numeric_limits<double>::infinity();
  double min_chain = std::numeric_limits<double>::infinity();
  for (double j : cand.chain_js) min_chain = std::min(min_chain, j);
  s = std::min(s, min_chain / criteria.j_chain_min_hz);
  if (!cand.cross_js.empty()) {
    double max_cross = kEps;
    for (double j : cand.cross_js) max_cross = std::max(max_cross, j);
    s = std::min(s, std::max(criteria.j_cross_max_hz, kEps) / max_cross);
  }
  if (cand.resolvability_margins && !cand.resolvability_margins->empty()) {
    double min_margin = std::numeric_limits<double>::infinity();
    for (double m : *cand.resolvability_margins)
      min_margin = std::min(min_margin, m);
    s = std::min(s, min_margin / criteria.min_resolvability);
  }
  return s;
}

std::vector<RegisterCandidate> find_chain_registers(
    const SpinSystem& sys, int k, const RegisterCriteria& criteria,
    const std::map<std::string, double>* carrier_ppm) {
  if (criteria.j_cross_max_hz >= criteria.j_chain_min_hz)
    throw Error("BadCriteria", "j_cross_max must be below j_chain_min");
  const int n = static_cast<int>(sys.size());
  if (k < 2 || k > n) return {};

  const std::uint64_t subsets = binomial(n, k);
  if (subsets > criteria.combination_cap)
    throw Error("CombinationCapExceeded",
                "enumeration needs " + std::to_string(subsets) +
                    " subsets, cap is " +
                    std::to_string(criteria.combination_cap),
                ErrorClass::Resource);

  // |J| matrix and chain adjacency
  std::vector<std::vector<double>> jmag(n, std::vector<double>(n, 0.0));
  for (const auto& c : sys.couplings()) {
    const auto i = sys.index_of(c.a);
    const auto j = sys.index_of(c.b);
    jmag[i][j] = jmag[j][i] = std::abs(c.j_hz);
  }

  // per-nucleus offsets when resolvability can be evaluated
  std::vector<std::optional<double>> offset(n);
  if (carrier_ppm) {
    for (int i = 0; i < n; ++i) {
      const Nucleus& nuc = sys.nuclei()[i];
      auto it = carrier_ppm->find(nuc.isotope.name);
      if (nuc.shift_ppm && it != carrier_ppm->end())
        offset[i] = (*nuc.shift_ppm - it->second) *
                    sys.isotope_frequency_mhz(nuc.isotope);
    }
  }

  std::vector<RegisterCandidate> out;
  std::vector<int> path;
  std::vector<bool> used(n, false);

  auto emit = [&](const std::vector<int>& p) {
    RegisterCandidate cand;
    for (int idx : p) cand.labels.push_back(sys.nuclei()[idx].label);
    for (std::size_t i = 0; i + 1 < p.size(); ++i)
      cand.chain_js.push_back(jmag[p[i]][p[i + 1]]);
    if (!is_canonical(cand.labels, cand.chain_js)) return;

    for (std::size_t i = 0; i < p.size(); ++i)
      for (std::size_t j = i + 2; j < p.size(); ++j) {
        const double cross = jmag[p[i]][p[j]];
        if (cross > criteria.j_cross_max_hz) return;
        cand.cross_js.push_back(cross);
      }
    if (criteria.strict_ordering)
      for (std::size_t i = 0; i + 1 < cand.chain_js.size(); ++i)
        if (!(cand.chain_js[i] > cand.chain_js[i + 1])) return;

    double max_chain = 0.0;
    for (double j : cand.chain_js) max_chain = std::max(max_chain, j);
    bool shifts_known = true;
    for (int idx : p) shifts_known = shifts_known && offset[idx].has_value();
    if (shifts_known && carrier_ppm) {
      std::vector<double> margins;
      for (std::size_t i = 0; i < p.size(); ++i)
        for (std::size_t j = i + 1; j < p.size(); ++j) {
          if (!(sys.nuclei()[p[i]].isotope == sys.nuclei()[p[j]].isotope))
            continue;  // heteronuclear pairs are always resolvable
          margins.push_back(std::abs(*offset[p[i]] - *offset[p[j]]) /
                            max_chain);
        }
      for (double m : margins)
        if (m < criteria.min_resolvability) return;
      cand.resolvability_margins = std::move(margins);
    }
    cand.score = score_register(cand, criteria);
    out.push_back(std::move(cand));
  };

  std::function<void(int)> dfs = [&](int last) {
    if (static_cast<int>(path.size()) == k) {
      emit(path);
      return;
    }
    for (int next = 0; next < n; ++next) {
      if (used[next] || jmag[last][next] < criteria.j_chain_min_hz) continue;
      used[next] = true;
      path.push_back(next);
      dfs(next);
      path.pop_back();
      used[next] = false;
    }
  };
  for (int start = 0; start < n; ++start) {
    used[start] = true;
    path.push_back(start);
    dfs(start);
    path.pop_back();
    used[start] = false;
  }

  std::sort(out.begin(), out.end(),
            [](const RegisterCandidate& a, const RegisterCandidate& b) {
              if (a.score != b.score) return a.score > b.score;
              return a.labels < b.labels;
            });
  return out;
}

std::vector<RegisterCandidate> find_toffoli_triples(
    const SpinSystem& sys, const RegisterCriteria& criteria,
    const std::map<std::string, double>* carrier_ppm) {
  return find_chain_registers(sys, 3, criteria, carrier_ppm);
}

std::string candidates_to_csv(const std::vector<RegisterCandidate>& cands) {
  std::ostringstream out;
  out << "labels,chain_js,cross_js,score\n";
  out.precision(10);
  for (const auto& c : cands) {
    out << joined(c.labels) << ",";
    for (std::size_t i = 0; i < c.chain_js.size(); ++i)
      out << (i ? ";" : "") << c.chain_js[i];
    out << ",";
    for (std::size_t i = 0; i < c.cross_js.size(); ++i)
      out << (i ? ";" : "") << c.cross_js[i];
    out << "," << c.score << "\n";
  }
  return out.str();
}

}  // namespace nmrqc
