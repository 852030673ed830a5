// Copyright 2026 The squidsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cmath>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "squidsim/config.hpp"
#include "squidsim/device.hpp"
#include "squidsim/io.hpp"
#include "squidsim/rotation.hpp"
#include "squidsim/transfer.hpp"

namespace squidsim {

// Deterministic execution of one validated scenario: propagate, then emit
// trajectory.csv, summary.json and (optionally) plotdata.csv into out_dir.
// Returns the summary document.

namespace runner_detail {

inline Json warnings_json(const std::vector<std::string>& warnings) {
    Json arr = Json::array();
    for (const auto& w : warnings) arr.push_back(w);
    return arr;
}

inline StateVector parse_qubit_state(const Json& params) {
    Complex a0(1.0, 0.0);
    Complex a1(0.0, 0.0);
    if (params.contains("psi_i")) {
        const Json& p = params["psi_i"];
        if (!p.is_object()) throw ValidationError("psi_i: must be an object");
        a0 = config_detail::complex_field(p, "amp0", Complex(1.0, 0.0));
        a1 = config_detail::complex_field(p, "amp1", Complex(0.0, 0.0));
    }
    Eigen::VectorXcd amps(2);
    amps << a0, a1;
    if (!(amps.norm() > 0.0)) throw ValidationError("psi_i: must be a nonzero state");
    return StateVector::normalized(qubit_labels(), amps);
}

inline Json run_single_qubit(const ScenarioConfig& cfg, const std::filesystem::path& out) {
    const Json& p = cfg.params;
    if (!p.contains("model") || !p["model"].is_string()) {
        throw ValidationError("model: required string field ('rabi' or 'raman')");
    }
    const std::string model = p["model"].get<std::string>();
    const MixingAngles angles{config_detail::require_number(p, "phi"),
                              config_detail::require_number(p, "eta")};
    const StateVector psi_i = parse_qubit_state(p);

    PropagateOptions opts;
    opts.dt = cfg.dt;

    Json design_json;
    RotationRun run = [&]() {
        if (model == "rabi") {
            const int m = config_detail::integer_or(p, "m", 1);
            const double delta = config_detail::require_number(p, "delta");
            const double omega = cfg.unit_scale * config_detail::require_number(p, "Omega");
            const RabiDesign design = rabi_design(m, delta, omega);
            design_json = Json{{"Omega", design.Omega},
                               {"Delta", design.Delta},
                               {"T", design.T},
                               {"m", design.m}};
            return simulate_rotation(angles, design, psi_i, opts);
        }
        if (model == "raman") {
            if (!p.contains("pulse")) throw ValidationError("pulse: required field");
            const RamanConfig raman{parse_pulse(p["pulse"], cfg.unit_scale, "pulse"),
                                    cfg.unit_scale * config_detail::require_number(p, "Delta"),
                                    config_detail::require_number(p, "t_start"),
                                    config_detail::require_number(p, "t_end")};
            if (!(raman.t_end > raman.t_start)) {
                throw ValidationError("t_end: must exceed t_start");
            }
            return simulate_rotation(angles, raman, psi_i, opts);
        }
        throw ValidationError("model: unknown model '" + model + "'");
    }();

    const Trajectory& traj = run.trajectory;
    double max_pe = 0.0;
    for (std::size_t k = 0; k < traj.size(); ++k) max_pe = std::max(max_pe, traj.population(k, 2));

    if (cfg.emit_trajectory) {
        CsvWriter csv(out / "trajectory.csv",
                      {"t", "P_0", "P_1", "P_e", "re_0", "im_0", "re_1", "im_1", "re_e", "im_e"});
        for (std::size_t k = 0; k < traj.size(); ++k) {
            const auto& a = traj.amplitudes(k);
            csv.row({traj.time(k), std::norm(a[0]), std::norm(a[1]), std::norm(a[2]), a[0].real(),
                     a[0].imag(), a[1].real(), a[1].imag(), a[2].real(), a[2].imag()});
        }
    }
    if (cfg.emit_plotdata) {
        CsvWriter csv(out / "plotdata.csv", {"t", "P_0", "P_1", "P_e"});
        for (std::size_t k = 0; k < traj.size(); ++k) {
            csv.row({traj.time(k), traj.population(k, 0), traj.population(k, 1),
                     traj.population(k, 2)});
        }
    }

    Json summary;
    if (!design_json.is_null()) summary["design"] = design_json;
    summary["final_P0"] = run.psi_f.population(0);
    summary["final_P1"] = run.psi_f.population(1);
    summary["final_Pe"] = run.psi_f.population(2);
    summary["max_Pe"] = max_pe;
    summary["delta"] = run.delta;
    summary["fidelity_analytic"] = run.fidelity_analytic;
    summary["overlap_analytic"] = Json::array({run.overlap_analytic.real(),
                                               run.overlap_analytic.imag()});
    summary["residual_e_population"] = run.residual_e_population;
    summary["t_final"] = traj.final_time();
    summary["norm_drift"] = traj.norm_drift();
    summary["warnings"] = warnings_json(run.warnings);
    return summary;
}

inline CavitySystemParams parse_cavity_params(const ScenarioConfig& cfg, PulseEnvelope pulse_a,
                                              PulseEnvelope pulse_b) {
    const Json& p = cfg.params;
    CavitySystemParams out{cfg.unit_scale * config_detail::require_number(p, "g"),
                           cfg.unit_scale * config_detail::number_or(p, "delta_prime", 0.0),
                           std::move(pulse_a),
                           std::move(pulse_b),
                           config_detail::require_number(p, "t_start"),
                           config_detail::require_number(p, "t_end"),
                           CavitySpace::closed5,
                           config_detail::integer_or(p, "n_max", 2)};
    if (p.contains("space")) {
        if (!p["space"].is_string()) throw ValidationError("space: must be a string");
        const std::string space = p["space"].get<std::string>();
        if (space == "closed5") out.space = CavitySpace::closed5;
        else if (space == "full") out.space = CavitySpace::full;
        else throw ValidationError("space: must be 'closed5' or 'full'");
    }
    out.validate();
    return out;
}

inline void emit_transfer_files(const ScenarioConfig& cfg, const CavitySystemParams& params,
                                const TransferResult& res, const std::filesystem::path& out) {
    const Trajectory& traj = res.trajectory;
    const auto closed5_index = [&](const std::string& label) -> Eigen::Index {
        for (std::size_t j = 0; j < traj.labels().size(); ++j) {
            if (traj.labels()[j] == label) return static_cast<Eigen::Index>(j);
        }
        return -1;
    };
    std::vector<Eigen::Index> idx;
    for (const auto& l : closed5_labels()) idx.push_back(closed5_index(l));

    if (cfg.emit_trajectory) {
        CsvWriter csv(out / "trajectory.csv",
                      {"t", "P_010", "P_e10", "P_111", "P_1e0", "P_100", "abs_Omega_A",
                       "abs_Omega_B", "dark_overlap", "adiabaticity"});
        for (std::size_t k = 0; k < traj.size(); ++k) {
            const double t = traj.time(k);
            std::vector<double> row{t};
            for (const Eigen::Index i : idx) {
                row.push_back(i >= 0 ? traj.population(k, i) : 0.0);
            }
            row.push_back(std::abs(params.pulse_A.evaluate(t)));
            row.push_back(std::abs(params.pulse_B.evaluate(t)));
            row.push_back(res.dark_overlap[k]);
            row.push_back(res.adiabaticity[k]);
            csv.row(row);
        }
    }
    if (cfg.emit_plotdata) {
        CsvWriter csv(out / "plotdata.csv",
                      {"t", "abs_Omega_A", "abs_Omega_B", "P_010", "P_100", "P_111"});
        for (std::size_t k = 0; k < traj.size(); ++k) {
            const double t = traj.time(k);
            csv.row({t, std::abs(params.pulse_A.evaluate(t)), std::abs(params.pulse_B.evaluate(t)),
                     idx[0] >= 0 ? traj.population(k, idx[0]) : 0.0,
                     idx[4] >= 0 ? traj.population(k, idx[4]) : 0.0,
                     idx[2] >= 0 ? traj.population(k, idx[2]) : 0.0});
        }
    }
}

inline Json transfer_summary(const TransferResult& res) {
    Json summary;
    Json pops;
    for (const auto& [label, pop] : res.final_populations) pops["P_" + label] = pop;
    summary["final_populations"] = pops;
    summary["fidelity_target"] = res.fidelity_target;
    summary["concurrence"] = res.concurrence;
    summary["adiabaticity_max"] = res.adiabaticity_max;
    summary["dark_residual_max"] = res.dark_residual_max;
    summary["max_population_111"] = res.max_population_111;
    summary["norm_drift"] = res.trajectory.norm_drift();
    summary["warnings"] = warnings_json(res.warnings);
    return summary;
}

// First times the target population crosses 1% and 99%: the window over
// which the transfer actually happens.
inline void add_transfer_window(Json& summary, const Trajectory& traj,
                                const std::string& target_label) {
    Eigen::Index idx = -1;
    for (std::size_t j = 0; j < traj.labels().size(); ++j) {
        if (traj.labels()[j] == target_label) idx = static_cast<Eigen::Index>(j);
    }
    if (idx < 0) return;
    double t_begin = -1.0;
    double t_complete = -1.0;
    for (std::size_t k = 0; k < traj.size(); ++k) {
        const double pop = traj.population(k, idx);
        if (t_begin < 0.0 && pop >= 0.01) t_begin = traj.time(k);
        if (t_complete < 0.0 && pop >= 0.99) t_complete = traj.time(k);
    }
    summary["transfer_begin_ns"] = t_begin;
    summary["transfer_complete_ns"] = t_complete;
    summary["transfer_window_ns"] =
        (t_begin >= 0.0 && t_complete >= 0.0) ? Json(t_complete - t_begin) : Json();
}

inline Json run_two_qubit_transfer(const ScenarioConfig& cfg, const std::filesystem::path& out) {
    const Json& p = cfg.params;
    if (!p.contains("pulse_A")) throw ValidationError("pulse_A: required field");
    if (!p.contains("pulse_B")) throw ValidationError("pulse_B: required field");
    const CavitySystemParams params =
        parse_cavity_params(cfg, parse_pulse(p["pulse_A"], cfg.unit_scale, "pulse_A"),
                            parse_pulse(p["pulse_B"], cfg.unit_scale, "pulse_B"));
    const Complex c0 = config_detail::complex_field(p, "c0", Complex(1.0, 0.0));
    const Complex c1 = config_detail::complex_field(p, "c1", Complex(0.0, 0.0));

    PropagateOptions opts;
    opts.dt = cfg.dt;
    const TransferResult res = run_transfer(params, c0, c1, opts);

    emit_transfer_files(cfg, params, res, out);
    Json summary = transfer_summary(res);
    add_transfer_window(summary, res.trajectory, "100");
    return summary;
}

inline Json run_two_qubit_fstirap(const ScenarioConfig& cfg, const std::filesystem::path& out) {
    const Json& p = cfg.params;
    const double theta = config_detail::require_number(p, "theta");
    const double xi = config_detail::number_or(p, "xi", 0.0);

    PulseEnvelope pulse_a = [&]() {
        if (p.contains("pulse_A")) return parse_pulse(p["pulse_A"], cfg.unit_scale, "pulse_A");
        auto pair = fractional_stirap_pulses(
            cfg.unit_scale * config_detail::require_number(p, "Omega_bar"),
            config_detail::require_number(p, "tau_A"), config_detail::require_number(p, "tau_B"),
            config_detail::require_number(p, "tau_p"), theta, xi);
        return pair.first;
    }();
    PulseEnvelope pulse_b = [&]() {
        if (p.contains("pulse_B")) return parse_pulse(p["pulse_B"], cfg.unit_scale, "pulse_B");
        auto pair = fractional_stirap_pulses(
            cfg.unit_scale * config_detail::require_number(p, "Omega_bar"),
            config_detail::require_number(p, "tau_A"), config_detail::require_number(p, "tau_B"),
            config_detail::require_number(p, "tau_p"), theta, xi);
        return pair.second;
    }();

    const CavitySystemParams params =
        parse_cavity_params(cfg, std::move(pulse_a), std::move(pulse_b));

    PropagateOptions opts;
    opts.dt = cfg.dt;
    const TransferResult res = run_fractional_stirap(params, theta, xi, opts);

    emit_transfer_files(cfg, params, res, out);
    Json summary = transfer_summary(res);
    summary["theta"] = theta;
    summary["xi"] = xi;
    return summary;
}

inline Json run_device_spectrum(const ScenarioConfig& cfg, const std::filesystem::path& out) {
    const Json& p = cfg.params;
    if (!p.contains("device") || !p["device"].is_object()) {
        throw ValidationError("device: required object field");
    }
    const Json& d = p["device"];
    SquidParams params;
    params.inductance_pH = config_detail::number_or(d, "L_pH", 100.0);
    params.capacitance_fF = config_detail::number_or(d, "C_fF", 40.0);
    params.critical_current_uA = config_detail::number_or(d, "Ic_uA", 3.95);
    params.external_flux = config_detail::number_or(d, "Phi_x", -0.501);
    if (d.contains("grid")) {
        const Json& g = d["grid"];
        if (!g.is_object()) throw ValidationError("device.grid: must be an object");
        params.grid.n_points = config_detail::integer_or(g, "n_points", 2001);
        params.grid.phi_min = config_detail::number_or(g, "phi_min", 0.0);
        params.grid.phi_max = config_detail::number_or(g, "phi_max", 0.0);
    }
    const int n_levels = config_detail::integer_or(p, "n_levels", 8);
    params.validate();

    const DeviceSpectrum spec = stationary_states(params, n_levels);

    if (cfg.emit_trajectory) {  // grid data plays the trajectory role here
        CsvWriter csv(out / "potential.csv", {"phi", "U"});
        for (Eigen::Index i = 0; i < spec.phi.size(); ++i) {
            csv.row({spec.phi[i], potential(params, spec.phi[i])});
        }
        std::vector<std::string> cols{"phi"};
        for (int k = 0; k < spec.n_levels(); ++k) cols.push_back("psi_" + std::to_string(k));
        CsvWriter wf(out / "wavefunctions.csv", cols);
        for (Eigen::Index i = 0; i < spec.phi.size(); ++i) {
            std::vector<double> row{spec.phi[i]};
            for (int k = 0; k < spec.n_levels(); ++k) row.push_back(spec.wavefunctions(i, k));
            wf.row(row);
        }
    }

    Json summary;
    summary["beta_L"] = params.screening_parameter();
    summary["energies"] = Json::array();
    for (int k = 0; k < spec.n_levels(); ++k) summary["energies"].push_back(spec.energies[k]);
    summary["mean_flux"] = Json::array();
    for (double m : spec.mean_flux) summary["mean_flux"].push_back(m);
    summary["double_well"] = spec.double_well;
    summary["barrier_top"] = spec.barrier_top;
    summary["barrier_phi"] = spec.barrier_phi;

    Json cls_json;
    std::vector<std::string> warnings;
    try {
        const LevelClassification cls = classify_levels(spec);
        cls_json["idx0"] = cls.idx0;
        cls_json["idx1"] = cls.idx1;
        cls_json["idxE"] = cls.idxE;
        warnings = cls.warnings;
        cls_json["flux_element_01"] = flux_matrix_element(spec, cls.idx0, cls.idx1);
        cls_json["flux_element_0e"] = flux_matrix_element(spec, cls.idx0, cls.idxE);
        cls_json["flux_element_1e"] = flux_matrix_element(spec, cls.idx1, cls.idxE);
    } catch (const ValidationError& e) {
        cls_json["error"] = e.what();
    }
    summary["classification"] = cls_json;
    summary["warnings"] = warnings_json(warnings);
    return summary;
}

}  // namespace runner_detail

// Runs one scenario and writes its outputs under out_dir (created if absent).
// Returns the summary JSON that was (optionally) written to summary.json.
inline Json run_scenario(const ScenarioConfig& cfg, const std::filesystem::path& out_dir) {
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec && !std::filesystem::is_directory(out_dir)) {
        throw ValidationError("output directory '" + out_dir.string() + "' cannot be created");
    }

    Json summary;
    switch (cfg.type) {
        case ScenarioType::single_qubit:
            summary = runner_detail::run_single_qubit(cfg, out_dir);
            break;
        case ScenarioType::two_qubit_transfer:
            summary = runner_detail::run_two_qubit_transfer(cfg, out_dir);
            break;
        case ScenarioType::two_qubit_fstirap:
            summary = runner_detail::run_two_qubit_fstirap(cfg, out_dir);
            break;
        case ScenarioType::device_spectrum:
            summary = runner_detail::run_device_spectrum(cfg, out_dir);
            break;
    }

    summary["config"] = cfg.resolved;
    if (cfg.emit_summary) {
        write_text_file(out_dir / "summary.json", summary.dump(2) + "\n");
    }
    return summary;
}

inline Json run_scenario(const ScenarioConfig& cfg) {
    return run_scenario(cfg, cfg.output_directory);
}

inline Json run_scenario(const std::string& builtin_name, const std::filesystem::path& out_dir) {
    return run_scenario(builtin_scenario(builtin_name), out_dir);
}

}  // namespace squidsim
