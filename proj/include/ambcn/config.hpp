// SPDX-License-Identifier: Apache-2.0
//
// ambcn: finite-blocklength BLER toolkit for AmBC-NOMA V2X links
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <array>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>

#include "ambcn/channel.hpp"

// Scenario description and its file format: flat `key = value` lines with
// `#` comments, no nesting. An empty file yields the default scenario.

namespace ambcn {

enum class DTermMode { derivation_consistent, as_printed };
enum class Theorem1Mode { composition, paper_literal };

enum class LinkId : int { RN = 0, RF = 1, RB = 2, BN = 3, BF = 4 };
inline constexpr std::array<LinkId, 5> all_links{LinkId::RN, LinkId::RF, LinkId::RB,
                                                 LinkId::BN, LinkId::BF};
inline const char* link_name(LinkId id) {
    switch (id) {
        case LinkId::RN: return "RN";
        case LinkId::RF: return "RF";
        case LinkId::RB: return "RB";
        case LinkId::BN: return "BN";
        case LinkId::BF: return "BF";
    }
    return "?";
}

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Power split between the paired users; the far user always gets more.
struct PowerAllocation {
    double a_n = 0.3;
    double a_f = 0.7;

    void validate() const {
        if (!(a_n > 0.0) || !(a_f > 0.0))
            throw ConfigError("power allocation: a_N and a_F must be > 0");
        if (a_n + a_f != 1.0)
            throw ConfigError("power allocation: a_N + a_F must equal 1 exactly (got " +
                              std::to_string(a_n + a_f) + ")");
        if (!(a_f > a_n))
            throw ConfigError("power allocation: a_F > a_N violated (a_N=" +
                              std::to_string(a_n) + ", a_F=" + std::to_string(a_f) + ")");
    }
};

/// Per-link variance inputs. The BD-to-RSU link RB is static: its error
/// terms are pinned to zero and its correlation to one.
struct LinkInput {
    double omega = 1.0;
    double omega_e = 0.0;
    double omega_eps = 0.0;
};

/// Rate/blocklength request for one stream.
struct PacketInput {
    double rate = 0.1;     // bit/s/Hz
    int blocklength = 500; // channel uses

    void validate(const std::string& name) const {
        if (!(rate > 0.0)) throw ConfigError(name + ": rate must be > 0");
        if (blocklength <= 100)
            throw ConfigError(name + ": blocklength must exceed 100 (got " +
                              std::to_string(blocklength) + ")");
    }
};

/// Full scenario. Default-constructed values reproduce the reference
/// simulation setup.
struct SystemConfig {
    PowerAllocation power{};
    MobilityProfile mobility{};  // 70 km/h, 5.9 GHz, 0.2 ms, t = 2
    std::array<LinkInput, 5> links{{
        {20.0, 0.001, 0.001},  // RN
        {5.0, 0.001, 0.001},   // RF
        {1.0, 0.0, 0.0},       // RB (static)
        {1.5, 0.001, 0.001},   // BN
        {0.5, 0.001, 0.001},   // BF
    }};
    double beta = 0.45;       // reflection efficiency
    double gamma_db = 15.0;   // transmit SNR
    PacketInput pkt_f{0.1, 500};
    PacketInput pkt_n{0.1, 500};
    PacketInput pkt_c{0.005, 500};
    DTermMode d_term_mode = DTermMode::derivation_consistent;
    Theorem1Mode theorem1_mode = Theorem1Mode::composition;
    bool strict = false;  // raise on out-of-range closed-form excursions

    const LinkInput& link(LinkId id) const { return links[static_cast<int>(id)]; }
    LinkInput& link(LinkId id) { return links[static_cast<int>(id)]; }

    double gamma_linear() const { return std::pow(10.0, gamma_db / 10.0); }

    /// Assembled second-order statistics for one link. Mobile links share
    /// the Jakes correlation of the vehicle; RB is static.
    LinkStat link_stat(LinkId id) const {
        const LinkInput& in = link(id);
        LinkStat s;
        s.omega = in.omega;
        if (id == LinkId::RB) {
            s.omega_e = 0.0;
            s.omega_eps = 0.0;
            s.rho = 1.0;
        } else {
            s.omega_e = in.omega_e;
            s.omega_eps = in.omega_eps;
            s.rho = correlation_rho(mobility);
        }
        return s;
    }

    void validate() const {
        power.validate();
        try {
            mobility.validate();
            for (LinkId id : all_links) link_stat(id).validate(link_name(id));
        } catch (const std::domain_error& e) {
            throw ConfigError(e.what());
        }
        if (!(beta >= 0.0 && beta <= 1.0))
            throw ConfigError("beta: reflection efficiency must lie in [0, 1] (got " +
                              std::to_string(beta) + ")");
        if (!std::isfinite(gamma_db)) throw ConfigError("gamma_db: must be finite");
        pkt_f.validate("L_sF/R_sF");
        pkt_n.validate("L_sN/R_sN");
        pkt_c.validate("L_sC/R_sC");
    }
};

namespace config_detail {

inline double parse_number(const std::string& v, const std::string& key, int line) {
    char* end = nullptr;
    const double x = std::strtod(v.c_str(), &end);
    if (end == v.c_str() || *end != '\0')
        throw ConfigError("parse error at line " + std::to_string(line) + ", key '" + key +
                          "': '" + v + "' is not a number");
    return x;
}

inline int parse_int(const std::string& v, const std::string& key, int line) {
    const double x = parse_number(v, key, line);
    const int i = static_cast<int>(x);
    if (static_cast<double>(i) != x)
        throw ConfigError("parse error at line " + std::to_string(line) + ", key '" + key +
                          "': expected an integer, got '" + v + "'");
    return i;
}

inline std::string_view trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

}  // namespace config_detail

/// Parses the flat key/value grammar. Unknown keys, duplicate keys, bad
/// numbers and invariant violations all raise ConfigError with a line
/// reference. Empty input returns the default scenario.
inline SystemConfig parse_config(std::string_view text) {
    using config_detail::parse_int;
    using config_detail::parse_number;
    using config_detail::trim;

    SystemConfig cfg;
    std::optional<double> a_n_in, a_f_in;
    std::map<std::string, int> seen;

    std::istringstream in{std::string(text)};
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        std::string_view s = raw;
        if (const auto hash = s.find('#'); hash != std::string_view::npos)
            s = s.substr(0, hash);
        s = trim(s);
        if (s.empty()) continue;
        const auto eq = s.find('=');
        if (eq == std::string_view::npos)
            throw ConfigError("parse error at line " + std::to_string(line) +
                              ", column " + std::to_string(s.size() + 1) +
                              ": expected 'key = value'");
        const std::string key{trim(s.substr(0, eq))};
        const std::string val{trim(s.substr(eq + 1))};
        if (key.empty())
            throw ConfigError("parse error at line " + std::to_string(line) +
                              ", column 1: empty key");
        if (val.empty())
            throw ConfigError("parse error at line " + std::to_string(line) + ", key '" +
                              key + "': empty value");
        if (auto [it, fresh] = seen.emplace(key, line); !fresh)
            throw ConfigError("duplicate key '" + key + "' at line " + std::to_string(line) +
                              " (first at line " + std::to_string(it->second) + ")");

        if (key == "a_N") a_n_in = parse_number(val, key, line);
        else if (key == "a_F") a_f_in = parse_number(val, key, line);
        else if (key == "t") cfg.mobility.time_instant = parse_int(val, key, line);
        else if (key == "f_c_hz") cfg.mobility.carrier_hz = parse_number(val, key, line);
        else if (key == "T_s_s") cfg.mobility.symbol_s = parse_number(val, key, line);
        else if (key == "v_kmh") cfg.mobility.speed_kmh = parse_number(val, key, line);
        else if (key == "beta") cfg.beta = parse_number(val, key, line);
        else if (key == "gamma_db") cfg.gamma_db = parse_number(val, key, line);
        else if (key == "omega_RN") cfg.link(LinkId::RN).omega = parse_number(val, key, line);
        else if (key == "omega_e_RN") cfg.link(LinkId::RN).omega_e = parse_number(val, key, line);
        else if (key == "omega_eps_RN") cfg.link(LinkId::RN).omega_eps = parse_number(val, key, line);
        else if (key == "omega_RF") cfg.link(LinkId::RF).omega = parse_number(val, key, line);
        else if (key == "omega_e_RF") cfg.link(LinkId::RF).omega_e = parse_number(val, key, line);
        else if (key == "omega_eps_RF") cfg.link(LinkId::RF).omega_eps = parse_number(val, key, line);
        else if (key == "omega_RB") cfg.link(LinkId::RB).omega = parse_number(val, key, line);
        else if (key == "omega_BN") cfg.link(LinkId::BN).omega = parse_number(val, key, line);
        else if (key == "omega_e_BN") cfg.link(LinkId::BN).omega_e = parse_number(val, key, line);
        else if (key == "omega_eps_BN") cfg.link(LinkId::BN).omega_eps = parse_number(val, key, line);
        else if (key == "omega_BF") cfg.link(LinkId::BF).omega = parse_number(val, key, line);
        else if (key == "omega_e_BF") cfg.link(LinkId::BF).omega_e = parse_number(val, key, line);
        else if (key == "omega_eps_BF") cfg.link(LinkId::BF).omega_eps = parse_number(val, key, line);
        else if (key == "R_sN") cfg.pkt_n.rate = parse_number(val, key, line);
        else if (key == "R_sF") cfg.pkt_f.rate = parse_number(val, key, line);
        else if (key == "R_sC") cfg.pkt_c.rate = parse_number(val, key, line);
        else if (key == "L_sN") cfg.pkt_n.blocklength = parse_int(val, key, line);
        else if (key == "L_sF") cfg.pkt_f.blocklength = parse_int(val, key, line);
        else if (key == "L_sC") cfg.pkt_c.blocklength = parse_int(val, key, line);
        else if (key == "d_term_mode") {
            if (val == "derivation-consistent") cfg.d_term_mode = DTermMode::derivation_consistent;
            else if (val == "as-printed") cfg.d_term_mode = DTermMode::as_printed;
            else throw ConfigError("line " + std::to_string(line) +
                                   ": d_term_mode must be 'derivation-consistent' or 'as-printed'");
        } else if (key == "theorem1_mode") {
            if (val == "composition") cfg.theorem1_mode = Theorem1Mode::composition;
            else if (val == "paper-literal") cfg.theorem1_mode = Theorem1Mode::paper_literal;
            else throw ConfigError("line " + std::to_string(line) +
                                   ": theorem1_mode must be 'composition' or 'paper-literal'");
        } else {
            throw ConfigError("unknown key '" + key + "' at line " + std::to_string(line));
        }
    }

    // a_N / a_F: either may be given alone; together they must be exact.
    if (a_n_in && a_f_in) {
        cfg.power.a_n = *a_n_in;
        cfg.power.a_f = *a_f_in;
    } else if (a_n_in) {
        cfg.power.a_n = *a_n_in;
        cfg.power.a_f = 1.0 - *a_n_in;
    } else if (a_f_in) {
        cfg.power.a_f = *a_f_in;
        cfg.power.a_n = 1.0 - *a_f_in;
    }

    cfg.validate();
    return cfg;
}

/// Loads and validates a config file.
inline SystemConfig load_config(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ConfigError("cannot open config file '" + path + "'");
    std::ostringstream buf;
    buf << f.rdbuf();
    return parse_config(buf.str());
}

}  // namespace ambcn
