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
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <functional>
#include <numeric>
#include <random>
#include <set>

#include "nmrqc/errors.hpp"
#include "nmrqc/registers.hpp"

using namespace nmrqc;

namespace {

const Isotope kH1 = isotope_by_name("1H");

// Brute-force oracle: check every ordered k-subset clause by clause and
// collect the qualifying label sets. Independent of the DFS path search.
std::set<std::set<std::string>> oracle_label_sets(
    const SpinSystem& sys, int k, const RegisterCriteria& criteria) {
  const int n = static_cast<int>(sys.size());
  std::set<std::set<std::string>> result;
  std::vector<int> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::vector<int> perm;

  std::function<void()> rec = [&] {
    if (static_cast<int>(perm.size()) == k) {
      bool ok = true;
      for (int i = 0; i + 1 < k && ok; ++i) {
        const double j = std::abs(sys.j(sys.nuclei()[perm[i]].label,
                                        sys.nuclei()[perm[i + 1]].label));
        ok = j >= criteria.j_chain_min_hz;
      }
      for (int i = 0; i < k && ok; ++i)
        for (int j = i + 2; j < k && ok; ++j) {
          const double cross = std::abs(sys.j(sys.nuclei()[perm[i]].label,
                                              sys.nuclei()[perm[j]].label));
          ok = cross <= criteria.j_cross_max_hz;
        }
      if (ok) {
        std::set<std::string> labels;
        for (int i : perm) labels.insert(sys.nuclei()[i].label);
        result.insert(labels);
      }
      return;
    }
    for (int i : idx) {
      if (std::find(perm.begin(), perm.end(), i) != perm.end()) continue;
      perm.push_back(i);
      rec();
      perm.pop_back();
    }
  };
  rec();
  return result;
}

SpinSystem random_graph(std::mt19937& rng, int n) {
  std::uniform_real_distribution<double> j(0.0, 20.0);
  std::uniform_real_distribution<double> pick(0.0, 1.0);
  std::vector<Nucleus> nuclei;
  std::vector<Coupling> couplings;
  for (int i = 0; i < n; ++i)
    nuclei.push_back({"S" + std::to_string(i), kH1, std::nullopt});
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      if (pick(rng) < 0.5)
        couplings.push_back(
            {"S" + std::to_string(a), "S" + std::to_string(b), j(rng)});
  return SpinSystem(std::move(nuclei), std::move(couplings), 500.0);
}

}  // namespace

TEST_CASE("compound II yields the HB-HX-HA vinyl chain") {
  RegisterCriteria crit;
  crit.j_chain_min_hz = 5.0;
  crit.j_cross_max_hz = 1.5;
  const auto cands = find_toffoli_triples(bundled_compound_ii(), crit);
  bool found = false;
  for (const auto& c : cands)
    if (c.labels == std::vector<std::string>{"HB", "HX", "HA"}) {
      found = true;
      CHECK(c.chain_js == std::vector<double>{15.5, 8.53});
      CHECK(c.cross_js == std::vector<double>{1.22});
      CHECK_FALSE(c.resolvability_margins.has_value());
      CHECK(c.score ==
            doctest::Approx(std::min(8.53 / 5.0, 1.5 / 1.22)));
    }
  CHECK(found);
}

TEST_CASE("a fully coupled triangle has no Toffoli triple") {
  SpinSystem sys({{"A", kH1, {}}, {"B", kH1, {}}, {"C", kH1, {}}},
                 {{"A", "B", 10}, {"B", "C", 10}, {"A", "C", 10}}, 500.0);
  RegisterCriteria crit;
  CHECK(find_toffoli_triples(sys, crit).empty());
}

TEST_CASE("a constructed chain with resolvable shifts gives one candidate") {
  // offsets 0/300/600 Hz at a 1 MHz field
  SpinSystem sys({{"S1", kH1, 0.0}, {"S2", kH1, 300.0}, {"S3", kH1, 600.0}},
                 {{"S1", "S2", 10}, {"S2", "S3", 7}}, 1.0);
  RegisterCriteria crit;
  crit.min_resolvability = 3.0;
  const std::map<std::string, double> carrier = {{"1H", 0.0}};
  const auto cands = find_toffoli_triples(sys, crit, &carrier);
  REQUIRE(cands.size() == 1);
  CHECK(cands[0].labels == std::vector<std::string>{"S1", "S2", "S3"});
  REQUIRE(cands[0].resolvability_margins.has_value());
  CHECK(cands[0].resolvability_margins->size() == 3);
}

TEST_CASE("an unresolvable chain is rejected when shifts are known") {
  SpinSystem sys({{"S1", kH1, 0.0}, {"S2", kH1, 20.0}, {"S3", kH1, 40.0}},
                 {{"S1", "S2", 10}, {"S2", "S3", 7}}, 1.0);
  RegisterCriteria crit;
  crit.min_resolvability = 3.0;  // needs 30 Hz separation, only 20 available
  const std::map<std::string, double> carrier = {{"1H", 0.0}};
  CHECK(find_toffoli_triples(sys, crit, &carrier).empty());
  // without shifts the same topology qualifies as indeterminate
  CHECK(find_toffoli_triples(sys, crit).size() == 1);
}

TEST_CASE("k=2 register on an AX pair") {
  SpinSystem sys({{"A", kH1, {}}, {"X", kH1, {}}}, {{"A", "X", 10}}, 500.0);
  RegisterCriteria crit;
  crit.j_chain_min_hz = 5.0;
  crit.j_cross_max_hz = 1.0;
  const auto cands = find_chain_registers(sys, 2, crit);
  REQUIRE(cands.size() == 1);
  CHECK(cands[0].cross_js.empty());
  CHECK(cands[0].score == doctest::Approx(10.0 / 5.0));
}

TEST_CASE("k beyond the nucleus count gives an empty result") {
  SpinSystem sys({{"A", kH1, {}}, {"X", kH1, {}}}, {{"A", "X", 10}}, 500.0);
  CHECK(find_chain_registers(sys, 3, RegisterCriteria{}).empty());
}

TEST_CASE("k=3 equals the toffoli screen") {
  RegisterCriteria crit;
  const auto sys = bundled_compound_ii();
  const auto a = find_toffoli_triples(sys, crit);
  const auto b = find_chain_registers(sys, 3, crit);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    CHECK(a[i].labels == b[i].labels);
}

TEST_CASE("score arithmetic and boundary") {
  RegisterCriteria crit;
  crit.j_chain_min_hz = 5.0;
  crit.j_cross_max_hz = 1.5;
  RegisterCandidate cand;
  cand.chain_js = {15.5, 8.53};
  cand.cross_js = {1.22};
  CHECK(score_register(cand, crit) ==
        doctest::Approx(std::min(8.53 / 5.0, 1.5 / 1.22)));

  RegisterCandidate boundary;
  boundary.chain_js = {5.0, 5.0};
  boundary.cross_js = {1.5};
  CHECK(score_register(boundary, crit) == doctest::Approx(1.0));
}

TEST_CASE("score is monotone in the chain couplings") {
  RegisterCriteria crit;
  RegisterCandidate a, b;
  a.chain_js = {6.0, 7.0};
  b.chain_js = {6.0, 9.0};
  a.cross_js = b.cross_js = {0.5};
  CHECK(score_register(b, crit) >= score_register(a, crit));
}

TEST_CASE("results equal the brute-force oracle on random graphs") {
  std::mt19937 rng(2024);
  RegisterCriteria crit;
  crit.j_chain_min_hz = 5.0;
  crit.j_cross_max_hz = 1.5;
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 4 + static_cast<int>(rng() % 5);  // up to 8
    const auto sys = random_graph(rng, n);
    const auto expected = oracle_label_sets(sys, 3, crit);
    const auto got = find_toffoli_triples(sys, crit);
    std::set<std::set<std::string>> got_sets;
    for (const auto& c : got)
      got_sets.insert({c.labels.begin(), c.labels.end()});
    CHECK(got_sets == expected);
    CHECK(got.size() == got_sets.size());  // each path reported once
  }
}

TEST_CASE("qualification and order are invariant under J rescaling") {
  std::mt19937 rng(5);
  const auto sys = random_graph(rng, 7);
  RegisterCriteria crit;
  crit.j_chain_min_hz = 5.0;
  crit.j_cross_max_hz = 1.5;
  const auto base = find_toffoli_triples(sys, crit);

  const double scale = 3.7;
  std::vector<Coupling> scaled = sys.couplings();
  for (auto& c : scaled) c.j_hz *= scale;
  SpinSystem sys2(sys.nuclei(), scaled, sys.proton_frequency_mhz());
  RegisterCriteria crit2 = crit;
  crit2.j_chain_min_hz *= scale;
  crit2.j_cross_max_hz *= scale;
  const auto rescaled = find_toffoli_triples(sys2, crit2);

  REQUIRE(base.size() == rescaled.size());
  for (std::size_t i = 0; i < base.size(); ++i)
    CHECK(base[i].labels == rescaled[i].labels);
}

TEST_CASE("enumeration is deterministic") {
  RegisterCriteria crit;
  const auto a = find_toffoli_triples(bundled_compound_ii(), crit);
  const auto b = find_toffoli_triples(bundled_compound_ii(), crit);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].labels == b[i].labels);
    CHECK(a[i].score == b[i].score);
  }
}

TEST_CASE("strict ordering keeps only descending chains") {
  RegisterCriteria crit;
  crit.strict_ordering = true;
  const auto cands = find_toffoli_triples(bundled_compound_ii(), crit);
  for (const auto& c : cands)
    for (std::size_t i = 0; i + 1 < c.chain_js.size(); ++i)
      CHECK(c.chain_js[i] > c.chain_js[i + 1]);
}

TEST_CASE("combination cap reports the required count") {
  std::vector<Nucleus> nuclei;
  for (int i = 0; i < 21; ++i)
    nuclei.push_back({"N" + std::to_string(i), kH1, std::nullopt});
  SpinSystem sys(nuclei, {}, 500.0);
  RegisterCriteria crit;
  crit.combination_cap = 100;
  try {
    find_chain_registers(sys, 5, crit);
    FAIL("expected the cap to fire");
  } catch (const Error& e) {
    CHECK(e.code() == "CombinationCapExceeded");
    CHECK(std::string(e.what()).find("100") != std::string::npos);
    CHECK(std::string(e.what()).find("20349") != std::string::npos);  // C(21,5)
  }
}

TEST_CASE("invalid criteria are rejected") {
  RegisterCriteria crit;
  crit.j_chain_min_hz = 1.0;
  crit.j_cross_max_hz = 2.0;
  CHECK_THROWS_AS(find_toffoli_triples(bundled_compound_ii(), crit), Error);
}
