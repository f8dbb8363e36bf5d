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

#include "nmrqc/errors.hpp"
#include "nmrqc/spinsys.hpp"

using namespace nmrqc;

TEST_CASE("minimal two-nucleus document parses") {
  const auto sys = parse_spin_system(
      "FIELD proton_mhz=400\n"
      "NUCLEUS A 1H shift_ppm=1.0\n"
      "NUCLEUS B 1H shift_ppm=2.0\n"
      "COUPLING A B 7.5 bonds=3\n");
  CHECK(sys.size() == 2);
  CHECK(sys.couplings().size() == 1);
  CHECK(sys.proton_frequency_mhz() == 400.0);
  CHECK(sys.j("A", "B") == 7.5);
  CHECK(sys.j("B", "A") == 7.5);
  CHECK(sys.couplings()[0].bonds == 3);
}

TEST_CASE("comments and blank lines are ignored") {
  const auto sys = parse_spin_system(
      "# a comment\n\nNUCLEUS A 1H  # trailing comment\n");
  CHECK(sys.size() == 1);
}

TEST_CASE("coupling to an undeclared label is rejected") {
  const std::string doc =
      "NUCLEUS A 1H\nCOUPLING A Z9 5.0\n";
  CHECK_THROWS_WITH_AS(parse_spin_system(doc),
                       doctest::Contains("Z9"), Error);
}

TEST_CASE("duplicate nucleus label is rejected") {
  CHECK_THROWS_AS(parse_spin_system("NUCLEUS A 1H\nNUCLEUS A 13C\n"), Error);
}

TEST_CASE("conflicting duplicate coupling is rejected, consistent tolerated") {
  const std::string base = "NUCLEUS A 1H\nNUCLEUS B 1H\n";
  CHECK_THROWS_AS(
      parse_spin_system(base + "COUPLING A B 5.0\nCOUPLING B A 6.0\n"), Error);
  const auto sys =
      parse_spin_system(base + "COUPLING A B 5.0\nCOUPLING B A 5.0\n");
  CHECK(sys.couplings().size() == 1);
}

TEST_CASE("syntax errors report the line number") {
  try {
    parse_spin_system("NUCLEUS A 1H\nBOGUS line here\n");
    FAIL("expected a syntax error");
  } catch (const Error& e) {
    CHECK(e.code() == "SyntaxError");
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
}

TEST_CASE("serialize then parse is the identity") {
  const auto sys = parse_spin_system(
      "FIELD proton_mhz=500\n"
      "NUCLEUS HA 1H shift_ppm=5.9\n"
      "NUCLEUS C1 13C\n"
      "COUPLING HA C1 160.25 bonds=1\n");
  const auto round = parse_spin_system(serialize_spin_system(sys));
  CHECK(serialize_spin_system(round) == serialize_spin_system(sys));
  CHECK(round.size() == sys.size());
  CHECK(round.j("HA", "C1") == 160.25);
}

TEST_CASE("round-trip over the bundled dataset") {
  const auto sys = bundled_compound_ii();
  const auto round = parse_spin_system(serialize_spin_system(sys));
  CHECK(round.size() == 21);
  CHECK(round.couplings().size() == 24);
  for (const auto& c : sys.couplings())
    CHECK(round.j(c.a, c.b) == c.j_hz);
}

TEST_CASE("compound II dataset matches the reference coupling table") {
  const auto sys = bundled_compound_ii();
  CHECK(sys.size() == 21);
  CHECK(sys.couplings().size() == 24);
  CHECK(sys.j("HA", "HB") == 1.22);
  CHECK(sys.j("HX", "HA") == 8.53);
  CHECK(sys.j("HX", "HB") == 15.5);
  CHECK(sys.j("H6", "H7") == 15.4);
  CHECK(sys.j("H3", "H4") == 3.6);
  CHECK(sys.j("H5", "H4") == 2.6);
  CHECK(sys.j("Ho", "Hm") == 6.9);
  CHECK(sys.j("Hm", "Hp") == 7.0);
  CHECK(sys.j("H3", "H5") == 1.0);
  CHECK(sys.j("Ho", "Hp") == 1.8);
  CHECK(sys.j("H6", "H3") == 0.6);
  CHECK(sys.j("H7", "H5") == 0.3);
  CHECK(sys.j("HA", "H3") == 0.35);
  CHECK(sys.j("C3", "H3") == 171.2);
  CHECK(sys.j("C4", "H4") == 174.0);
  CHECK(sys.j("C5", "H5") == 185.9);
  CHECK(sys.j("Cx", "HX") == 176.5);
  CHECK(sys.j("Cab", "HA") == 164.3);
  CHECK(sys.j("Cab", "HB") == 157.8);
  CHECK(sys.j("C6", "H6") == 153.3);
  CHECK(sys.j("C7", "H7") == 157.0);
  CHECK(sys.j("Co", "Ho") == 159.6);
  CHECK(sys.j("Cm", "Hm") == 161.1);
  CHECK(sys.j("Cp", "Hp") == 161.1);

  int protons = 0, carbons = 0;
  for (const auto& n : sys.nuclei())
    (n.isotope.name == "1H" ? protons : carbons)++;
  CHECK(protons == 11);
  CHECK(carbons == 10);
}

TEST_CASE("validate: compound II counts and missing-shift warnings") {
  const auto rep = validate(bundled_compound_ii());
  CHECK(rep.nucleus_count == 21);
  CHECK(rep.coupling_count == 24);
  CHECK_FALSE(rep.has_errors());
  int warnings = 0;
  for (const auto& [sev, msg] : rep.issues)
    if (sev == Severity::Warning) ++warnings;
  CHECK(warnings == 21);  // every shift is absent in the dataset
}

TEST_CASE("validate flags quadrupolar isotopes as errors") {
  SpinSystem sys({{"D", isotope_by_name("2H"), 1.0}}, {});
  const auto rep = validate(sys);
  CHECK(rep.has_errors());
}

TEST_CASE("validate on an empty system") {
  const auto rep = validate(SpinSystem({}, {}));
  CHECK(rep.nucleus_count == 0);
  REQUIRE(rep.issues.size() == 1);
  CHECK(rep.issues[0].first == Severity::Info);
}

TEST_CASE("offsets: ppm definition and carrier symmetry") {
  SpinSystem sys({{"A", isotope_by_name("1H"), 1.0}}, {}, 500.0);
  auto offs = offsets_hz(sys, {{"1H", 0.0}});
  CHECK(offs.at("A") == doctest::Approx(500.0).epsilon(1e-12));
  offs = offsets_hz(sys, {{"1H", 1.0}});
  CHECK(offs.at("A") == doctest::Approx(0.0));
}

TEST_CASE("offsets scale by the isotope frequency ratio") {
  SpinSystem sys({{"C", isotope_by_name("13C"), 10.0}}, {}, 500.0);
  const double c_mhz = sys.isotope_frequency_mhz(isotope_by_name("13C"));
  CHECK(c_mhz == doctest::Approx(500.0 * 10.7084 / 42.577478518));
  const auto offs = offsets_hz(sys, {{"13C", 0.0}});
  CHECK(offs.at("C") == doctest::Approx(10.0 * c_mhz));
}

TEST_CASE("offsets on the bundled dataset fail for missing shifts") {
  CHECK_THROWS_AS(offsets_hz(bundled_compound_ii(), {{"1H", 0.0}, {"13C", 0.0}}),
                  Error);
}
