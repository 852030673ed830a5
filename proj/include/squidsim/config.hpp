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

#include <json.hpp>

#include <complex>
#include <string>
#include <utility>
#include <vector>

#include "squidsim/errors.hpp"
#include "squidsim/pulse.hpp"

namespace squidsim {

using Json = nlohmann::ordered_json;

enum class ScenarioType { single_qubit, two_qubit_transfer, two_qubit_fstirap, device_spectrum };

inline std::string to_string(ScenarioType t) {
    switch (t) {
        case ScenarioType::single_qubit: return "single_qubit";
        case ScenarioType::two_qubit_transfer: return "two_qubit_transfer";
        case ScenarioType::two_qubit_fstirap: return "two_qubit_fstirap";
        case ScenarioType::device_spectrum: return "device_spectrum";
    }
    return "?";
}

// Validated scenario description. `resolved` is the config with all defaults
// applied, echoed verbatim into the summary for provenance; `params` is the
// scenario-specific remainder, interpreted by the runner.
struct ScenarioConfig {
    ScenarioType type = ScenarioType::single_qubit;
    double unit_scale = 1.0;  // multiplies every frequency-like input
    double dt = 1e-3;         // integrator step, ns
    std::string output_directory = ".";  // overridable from the command line
    bool emit_trajectory = true;
    bool emit_summary = true;
    bool emit_plotdata = false;
    Json params;
    Json resolved;
};

namespace config_detail {

inline double require_number(const Json& j, const std::string& field) {
    if (!j.contains(field) || !j[field].is_number()) {
        throw ValidationError(field + ": required numeric field");
    }
    return j[field].get<double>();
}

inline double number_or(const Json& j, const std::string& field, double fallback) {
    if (!j.contains(field)) return fallback;
    if (!j[field].is_number()) throw ValidationError(field + ": must be a number");
    return j[field].get<double>();
}

inline int integer_or(const Json& j, const std::string& field, int fallback) {
    if (!j.contains(field)) return fallback;
    if (!j[field].is_number_integer()) throw ValidationError(field + ": must be an integer");
    return j[field].get<int>();
}

// complex values are written as a number or as [re, im]
inline Complex complex_field(const Json& j, const std::string& field, Complex fallback,
                             bool required = false) {
    if (!j.contains(field)) {
        if (required) throw ValidationError(field + ": required field");
        return fallback;
    }
    const Json& v = j[field];
    if (v.is_number()) return Complex(v.get<double>(), 0.0);
    if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
        return Complex(v[0].get<double>(), v[1].get<double>());
    }
    throw ValidationError(field + ": must be a number or [re, im]");
}

inline Json complex_to_json(Complex c) {
    if (c.imag() == 0.0) return Json(c.real());
    return Json::array({c.real(), c.imag()});
}

}  // namespace config_detail

// Builds a PulseEnvelope from its JSON description. `scale` multiplies the
// amplitude (the unit-scale factor); `where` prefixes error messages.
inline PulseEnvelope parse_pulse(const Json& j, double scale, const std::string& where) {
    using config_detail::complex_field;
    if (!j.is_object() || !j.contains("shape") || !j["shape"].is_string()) {
        throw ValidationError(where + ".shape: required string field");
    }
    const std::string shape = j["shape"].get<std::string>();
    if (shape == "scaled_sum") {
        if (!j.contains("terms") || !j["terms"].is_array() || j["terms"].empty()) {
            throw ValidationError(where + ".terms: required non-empty array");
        }
        std::vector<std::pair<Complex, PulseEnvelope>> terms;
        int k = 0;
        for (const auto& term : j["terms"]) {
            const std::string sub = where + ".terms[" + std::to_string(k) + "]";
            if (!term.is_object() || !term.contains("pulse")) {
                throw ValidationError(sub + ".pulse: required field");
            }
            // the member amplitude carries the unit scale; the coefficient is a pure number
            terms.emplace_back(complex_field(term, "coeff", Complex(1.0, 0.0)),
                               parse_pulse(term["pulse"], scale, sub + ".pulse"));
            ++k;
        }
        return PulseEnvelope::scaled_sum(std::move(terms));
    }

    const auto num = [&](const char* field) {
        if (!j.contains(field) || !j[field].is_number()) {
            throw ValidationError(where + "." + field + ": required numeric field");
        }
        return j[field].get<double>();
    };
    const Complex amplitude =
        scale * complex_field(j, "amplitude", Complex(0.0, 0.0), /*required=*/true);
    const double center = num("center");
    if (shape == "rectangular") {
        const double duration = num("duration");
        if (!(duration > 0.0)) throw ValidationError(where + ".duration: must be positive");
        return PulseEnvelope::rectangular(amplitude, center, duration);
    }
    const double width = num("width");
    if (!(width > 0.0)) throw ValidationError(where + ".width: must be positive");
    if (shape == "gaussian") return PulseEnvelope::gaussian(amplitude, center, width);
    if (shape == "sech") return PulseEnvelope::sech(amplitude, center, width);
    throw ValidationError(where + ".shape: unknown shape '" + shape + "'");
}

// Parses and validates the common layer of a scenario configuration and
// echoes defaults into `resolved`.
inline ScenarioConfig parse_config(const Json& j) {
    if (!j.is_object()) throw ValidationError("config: root must be an object");
    if (!j.contains("scenario_type") || !j["scenario_type"].is_string()) {
        throw ValidationError("scenario_type: required string field");
    }
    ScenarioConfig cfg;
    const std::string type = j["scenario_type"].get<std::string>();
    if (type == "single_qubit") cfg.type = ScenarioType::single_qubit;
    else if (type == "two_qubit_transfer") cfg.type = ScenarioType::two_qubit_transfer;
    else if (type == "two_qubit_fstirap") cfg.type = ScenarioType::two_qubit_fstirap;
    else if (type == "device_spectrum") cfg.type = ScenarioType::device_spectrum;
    else throw ValidationError("scenario_type: unknown type '" + type + "'");

    cfg.unit_scale = config_detail::number_or(j, "unit_scale", 1.0);
    if (!(cfg.unit_scale > 0.0)) throw ValidationError("unit_scale: must be positive");

    if (j.contains("integrator")) {
        if (!j["integrator"].is_object()) throw ValidationError("integrator: must be an object");
        cfg.dt = config_detail::number_or(j["integrator"], "dt", 1e-3);
    }
    if (!(cfg.dt > 0.0)) throw ValidationError("integrator.dt: must be positive");

    if (j.contains("output")) {
        const Json& o = j["output"];
        if (!o.is_object()) throw ValidationError("output: must be an object");
        auto flag = [&](const char* name, bool fallback) {
            if (!o.contains(name)) return fallback;
            if (!o[name].is_boolean()) {
                throw ValidationError(std::string("output.") + name + ": must be a boolean");
            }
            return o[name].get<bool>();
        };
        cfg.emit_trajectory = flag("emit_trajectory", true);
        cfg.emit_summary = flag("emit_summary", true);
        cfg.emit_plotdata = flag("emit_plotdata", false);
        if (o.contains("directory")) {
            if (!o["directory"].is_string()) {
                throw ValidationError("output.directory: must be a string");
            }
            cfg.output_directory = o["directory"].get<std::string>();
            if (cfg.output_directory.empty()) {
                throw ValidationError("output.directory: must be non-empty");
            }
        }
    }

    cfg.params = j;
    cfg.params.erase("scenario_type");
    cfg.params.erase("unit_scale");
    cfg.params.erase("integrator");
    cfg.params.erase("output");

    cfg.resolved = Json::object();
    cfg.resolved["scenario_type"] = type;
    cfg.resolved["unit_scale"] = cfg.unit_scale;
    cfg.resolved["integrator"] = Json{{"dt", cfg.dt}};
    cfg.resolved["output"] = Json{{"directory", cfg.output_directory},
                                  {"emit_trajectory", cfg.emit_trajectory},
                                  {"emit_summary", cfg.emit_summary},
                                  {"emit_plotdata", cfg.emit_plotdata}};
    for (const auto& [key, value] : cfg.params.items()) cfg.resolved[key] = value;
    return cfg;
}

// ---- built-in scenarios ------------------------------------------------------

struct ScenarioInfo {
    std::string name;
    std::string description;
};

// Stable listing order.
inline const std::vector<ScenarioInfo>& list_scenarios() {
    static const std::vector<ScenarioInfo> entries{
        {"fig2", "three-level Rabi inversion |0> -> |1> (Omega=2, m=2, delta=pi)"},
        {"fig4", "cavity-mediated STIRAP transfer |0,1,0> -> |1,0,0> (g=3, Gaussian pulses)"},
        {"fig5", "fractional STIRAP entangling (|0,1,0>+|1,0,0>)/sqrt(2) (theta=pi/4)"},
        {"device", "rf-SQUID double-well spectrum and flux matrix elements"},
        {"raman-demo", "far-off-resonant Raman phase gate on the coupled state"},
    };
    return entries;
}

inline Json builtin_scenario_json(const std::string& name) {
    if (name == "fig2") {
        return Json::parse(R"({
            "scenario_type": "single_qubit",
            "model": "rabi",
            "phi": 3.9269908169872414,
            "eta": 3.141592653589793,
            "Omega": 2.0,
            "m": 2,
            "delta": 3.141592653589793,
            "psi_i": {"amp0": 1.0, "amp1": 0.0}
        })");
    }
    if (name == "fig4") {
        return Json::parse(R"({
            "scenario_type": "two_qubit_transfer",
            "g": 3.0,
            "delta_prime": 0.0,
            "pulse_A": {"shape": "gaussian", "amplitude": -2.0, "center": 23.0, "width": 6.5},
            "pulse_B": {"shape": "gaussian", "amplitude": -2.0, "center": 17.0, "width": 6.5},
            "t_start": 0.0,
            "t_end": 40.0,
            "c0": 1.0,
            "c1": 0.0,
            "space": "closed5"
        })");
    }
    if (name == "fig5") {
        return Json::parse(R"({
            "scenario_type": "two_qubit_fstirap",
            "g": 3.0,
            "delta_prime": 0.0,
            "Omega_bar": -2.0,
            "tau_A": 38.5,
            "tau_B": 25.0,
            "tau_p": 10.0,
            "theta": 0.7853981633974483,
            "xi": 0.0,
            "t_start": 0.0,
            "t_end": 60.0,
            "space": "closed5"
        })");
    }
    if (name == "device") {
        return Json::parse(R"({
            "scenario_type": "device_spectrum",
            "device": {
                "L_pH": 100.0,
                "C_fF": 40.0,
                "Ic_uA": 3.95,
                "Phi_x": -0.501,
                "grid": {"n_points": 2001}
            },
            "n_levels": 8
        })");
    }
    if (name == "raman-demo") {
        return Json::parse(R"({
            "scenario_type": "single_qubit",
            "model": "raman",
            "phi": 0.7853981633974483,
            "eta": 0.0,
            "pulse": {"shape": "gaussian", "amplitude": 1.0, "center": 0.0, "width": 5.0},
            "Delta": 10.0,
            "t_start": -40.0,
            "t_end": 40.0,
            "psi_i": {"amp0": 1.0, "amp1": 0.0}
        })");
    }
    throw ValidationError("unknown scenario '" + name + "'; run `squidsim list`");
}

inline ScenarioConfig builtin_scenario(const std::string& name) {
    return parse_config(builtin_scenario_json(name));
}

}  // namespace squidsim
