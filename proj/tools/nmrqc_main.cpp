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
#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "nmrqc/errors.hpp"
#include "nmrqc/fit.hpp"
#include "nmrqc/gates.hpp"
#include "nmrqc/registers.hpp"
#include "nmrqc/spectrum.hpp"
#include "nmrqc/spinsys.hpp"

namespace {

using namespace nmrqc;

int size_cap() {
  if (const char* env = std::getenv("NMRQC_CAP")) {
    const int cap = std::atoi(env);
    if (cap > 0) return cap;
  }
  return kDefaultSizeCap;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("FileNotFound", "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// --carrier 1H=4.7 style options; isotopes without an entry default to 0.
std::map<std::string, double> carrier_map(
    const SpinSystem& sys, const std::vector<std::string>& specs) {
  std::map<std::string, double> carriers;
  for (const auto& n : sys.nuclei()) carriers[n.isotope.name] = 0.0;
  for (const auto& s : specs) {
    auto eq = s.find('=');
    if (eq == std::string::npos)
      throw Error("UsageError", "carrier must be <isotope>=<ppm>: " + s);
    carriers[s.substr(0, eq)] = std::stod(s.substr(eq + 1));
  }
  return carriers;
}

CouplingMode parse_mode(const std::string& mode) {
  if (mode == "isotropic") return CouplingMode::Isotropic;
  if (mode == "weakzz") return CouplingMode::WeakZZ;
  throw Error("UsageError", "mode must be isotropic or weakzz");
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string tok;
  std::istringstream iss(s);
  while (std::getline(iss, tok, sep)) out.push_back(tok);
  return out;
}

Parameter parse_free_param(const SpinSystem& sys, const std::string& s,
                           double j_window, double shift_window) {
  Parameter p;
  if (s.rfind("j:", 0) == 0) {
    auto labels = split(s.substr(2), '+');
    if (labels.size() != 2)
      throw Error("UsageError", "expected j:<label>+<label>, got " + s);
    p.kind = ParamKind::JHz;
    p.label_a = labels[0];
    p.label_b = labels[1];
    p.initial = sys.j(p.label_a, p.label_b);
    p.lower = p.initial - j_window;
    p.upper = p.initial + j_window;
  } else if (s.rfind("shift:", 0) == 0) {
    p.kind = ParamKind::ShiftPpm;
    p.label_a = s.substr(6);
    const Nucleus& n = sys.nucleus(p.label_a);
    if (!n.shift_ppm)
      throw Error("MissingShift",
                  "template has no shift for " + p.label_a +
                      "; cannot seed the fit");
    p.initial = *n.shift_ppm;
    p.lower = p.initial - shift_window;
    p.upper = p.initial + shift_window;
  } else {
    throw Error("UsageError",
                "free parameter must be j:<a>+<b> or shift:<label>: " + s);
  }
  return p;
}

int run(int argc, char** argv) {
  CLI::App app{"NMR spin-system simulation and qubit-register screening"};
  app.require_subcommand(1);

  // simulate
  auto* sim = app.add_subcommand("simulate", "exact spectrum of a system file");
  std::string sim_file, sim_channel = "1H", sim_mode = "isotropic",
              sim_lineshape;
  std::vector<std::string> sim_carriers;
  sim->add_option("file", sim_file)->required();
  sim->add_option("--channel", sim_channel, "isotope channel")
      ->capture_default_str();
  sim->add_option("--mode", sim_mode, "isotropic|weakzz")
      ->capture_default_str();
  sim->add_option("--carrier", sim_carriers, "<isotope>=<ppm> (default 0)");
  sim->add_option("--lineshape", sim_lineshape,
                  "fwhm,min,max,points: emit a broadened trace instead of lines");

  // check
  auto* chk = app.add_subcommand("check", "first-order validity report");
  std::string chk_file;
  double chk_threshold = 0.1;
  std::vector<std::string> chk_carriers;
  chk->add_option("file", chk_file)->required();
  chk->add_option("--threshold", chk_threshold, "|J|/|dnu| pass threshold")
      ->capture_default_str();
  chk->add_option("--carrier", chk_carriers, "<isotope>=<ppm> (default 0)");

  // registers
  auto* reg = app.add_subcommand("registers", "screen for qubit registers");
  std::string reg_file;
  int reg_k = 3;
  double reg_jmin = 5.0, reg_jcross = 1.5, reg_resolve = 3.0;
  reg->add_option("file", reg_file)->required();
  reg->add_option("--k", reg_k, "register size")->capture_default_str();
  reg->add_option("--jmin", reg_jmin, "minimum chain |J| (Hz)")
      ->capture_default_str();
  reg->add_option("--jcross", reg_jcross, "maximum cross |J| (Hz)")
      ->capture_default_str();
  reg->add_option("--resolve", reg_resolve, "minimum shift resolvability")
      ->capture_default_str();

  // gate
  auto* gat = app.add_subcommand("gate", "compile a CNOT or Toffoli sequence");
  std::string gat_file, gat_gate, gat_spins;
  bool gat_verify = false;
  gat->add_option("file", gat_file)->required();
  gat->add_option("--gate", gat_gate, "cnot|toffoli")->required();
  gat->add_option("--spins", gat_spins, "labels, '+'-separated")->required();
  gat->add_flag("--verify", gat_verify, "simulate and report fidelity");

  // fit
  auto* fit_cmd = app.add_subcommand("fit", "fit parameters to a target trace");
  std::string fit_file, fit_target, fit_channel = "1H", fit_mode = "isotropic";
  std::vector<std::string> fit_free, fit_carriers;
  double fit_tolx = 1e-4, fit_fwhm = 1.0, fit_jwin = 20.0, fit_swin = 2.0;
  unsigned fit_seed = 0;
  fit_cmd->add_option("file", fit_file)->required();
  fit_cmd->add_option("--target", fit_target, "target trace CSV")->required();
  fit_cmd->add_option("--free", fit_free, "j:<a>+<b> or shift:<label>")
      ->required();
  fit_cmd->add_option("--tolx", fit_tolx, "simplex diameter tolerance")
      ->capture_default_str();
  fit_cmd->add_option("--fwhm", fit_fwhm, "linewidth (Hz)")
      ->capture_default_str();
  fit_cmd->add_option("--channel", fit_channel)->capture_default_str();
  fit_cmd->add_option("--mode", fit_mode)->capture_default_str();
  fit_cmd->add_option("--carrier", fit_carriers, "<isotope>=<ppm> (default 0)");
  fit_cmd->add_option("--jwindow", fit_jwin, "J bound half-width (Hz)")
      ->capture_default_str();
  fit_cmd->add_option("--shiftwindow", fit_swin, "shift bound half-width (ppm)")
      ->capture_default_str();
  fit_cmd->add_option("--seed", fit_seed, "restart jitter seed")
      ->capture_default_str();

  // dataset
  auto* dat = app.add_subcommand("dataset", "write a bundled dataset");
  std::string dat_name;
  dat->add_option("name", dat_name, "dataset name (compound-ii)")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    std::cout << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    std::cout << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: UsageError: " << e.what() << "\n";
    return 1;
  }

  if (*sim) {
    const SpinSystem sys = parse_spin_system(read_file(sim_file));
    const auto carriers = carrier_map(sys, sim_carriers);
    const LineList lines =
        exact_lines(sys, carriers, isotope_by_name(sim_channel),
                    parse_mode(sim_mode), size_cap());
    if (!sim_lineshape.empty()) {
      auto parts = split(sim_lineshape, ',');
      if (parts.size() != 4)
        throw Error("UsageError", "--lineshape expects fwhm,min,max,points");
      std::cout << trace_to_csv(render_lineshape(
          lines, std::stod(parts[0]), std::stod(parts[1]), std::stod(parts[2]),
          std::stoi(parts[3])));
    } else {
      std::cout << lines_to_csv(lines);
    }
  } else if (*chk) {
    const SpinSystem sys = parse_spin_system(read_file(chk_file));
    const auto rep =
        first_order_report(sys, carrier_map(sys, chk_carriers), chk_threshold);
    std::cout << "a,b,ratio,status\n";
    for (const auto& e : rep.entries) {
      std::cout << e.a << "," << e.b << ",";
      if (e.ratio)
        std::cout << *e.ratio;
      else
        std::cout << "indeterminate";
      std::cout << ","
                << (e.status == PairStatus::Pass
                        ? "pass"
                        : e.status == PairStatus::Fail ? "fail"
                                                       : "indeterminate")
                << "\n";
    }
  } else if (*reg) {
    const SpinSystem sys = parse_spin_system(read_file(reg_file));
    RegisterCriteria criteria;
    criteria.j_chain_min_hz = reg_jmin;
    criteria.j_cross_max_hz = reg_jcross;
    criteria.min_resolvability = reg_resolve;
    std::map<std::string, double> carriers = carrier_map(sys, {});
    std::cout << candidates_to_csv(
        find_chain_registers(sys, reg_k, criteria, &carriers));
  } else if (*gat) {
    const SpinSystem sys = parse_spin_system(read_file(gat_file));
    const auto spins = split(gat_spins, '+');
    PulseSequence seq;
    OperatorMatrix ideal;
    if (gat_gate == "cnot") {
      if (spins.size() != 2)
        throw Error("UsageError", "cnot needs --spins <control>+<target>");
      seq = compile_cnot(sys, spins[0], spins[1]);
      if (gat_verify) ideal = ideal_cnot(sys, spins[0], spins[1]);
    } else if (gat_gate == "toffoli") {
      if (spins.size() != 3)
        throw Error("UsageError", "toffoli needs --spins <a>+<b>+<target>");
      seq = compile_toffoli(sys, spins[0], spins[1], spins[2]);
      if (gat_verify) ideal = ideal_toffoli(sys, spins[0], spins[1], spins[2]);
    } else {
      throw Error("UsageError", "--gate must be cnot or toffoli");
    }
    std::cout << sequence_to_text(seq);
    if (gat_verify) {
      const GateReport rep = verify_gate(sys, seq, ideal, size_cap());
      std::cout.precision(12);
      std::cout << "fidelity=" << rep.fidelity
                << " total_delay_s=" << rep.total_delay_s << "\n";
    }
  } else if (*fit_cmd) {
    const SpinSystem sys = parse_spin_system(read_file(fit_file));
    const SpectrumTrace target = trace_from_csv(read_file(fit_target));
    if (target.grid.size() < 2)
      throw Error("SyntaxError", "target trace has fewer than 2 points");
    FitSettings settings;
    settings.carrier_ppm = carrier_map(sys, fit_carriers);
    settings.channel = isotope_by_name(fit_channel);
    settings.mode = parse_mode(fit_mode);
    settings.fwhm_hz = fit_fwhm;
    settings.grid_min = target.grid.front();
    settings.grid_max = target.grid.back();
    settings.grid_points = static_cast<int>(target.grid.size());
    settings.tol_x = fit_tolx;
    settings.seed = fit_seed;
    settings.cap = size_cap();
    ParameterSpec spec;
    for (const auto& s : fit_free)
      spec.push_back(parse_free_param(sys, s, fit_jwin, fit_swin));
    const FitResult result = fit_parameters(sys, spec, target, settings);
    std::cout << fit_report_text(spec, result);
  } else if (*dat) {
    if (dat_name != "compound-ii")
      throw Error("UnknownDataset", "unknown dataset '" + dat_name + "'");
    std::cout << serialize_spin_system(bundled_compound_ii());
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const nmrqc::Error& e) {
    std::cerr << "error: " << e.code() << ": " << e.what() << "\n";
    return static_cast<int>(e.error_class());
  } catch (const std::exception& e) {
    std::cerr << "error: Internal: " << e.what() << "\n";
    return 2;
  }
}
