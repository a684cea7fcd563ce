#include "qdmol/config.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "qdmol/errors.hpp"

namespace qdmol {

RunConfig default_config() {
    RunConfig cfg;
    cfg.B_grid = parse_grid("0:8:0.5");
    cfg.distance_grid = {30.0};
    cfg.Vb_grid = {30.0};
    return cfg;
}

std::vector<double> parse_grid(const std::string& text) {
    std::vector<double> out;
    if (text.find(':') != std::string::npos) {
        double a, b, c;
        char s1, s2;
        std::istringstream is(text);
        if (!(is >> a >> s1 >> b >> s2 >> c) || s1 != ':' || s2 != ':' ||
            c <= 0.0) {
            throw ConfigError("bad grid range '" + text + "'");
        }
        for (double v = a; v <= b + 1e-9 * std::max(1.0, std::abs(b)); v += c)
            out.push_back(v);
        return out;
    }
    std::istringstream is(text);
    std::string tok;
    while (std::getline(is, tok, ',')) {
        if (tok.empty()) continue;
        try {
            out.push_back(std::stod(tok));
        } catch (...) {
            throw ConfigError("bad grid value '" + tok + "'");
        }
    }
    if (out.empty()) throw ConfigError("empty grid '" + text + "'");
    return out;
}

namespace {

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    auto e = s.find_last_not_of(" \t\r");
    if (b == std::string::npos) return "";
    return s.substr(b, e - b + 1);
}

bool parse_bool(const std::string& v, int line) {
    if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
    if (v == "false" || v == "0" || v == "no" || v == "off") return false;
    throw ConfigError("line " + std::to_string(line) + ": bad boolean '" + v +
                      "'");
}

double parse_double(const std::string& v, int line) {
    try {
        std::size_t used = 0;
        const double d = std::stod(v, &used);
        if (used != v.size()) throw std::invalid_argument(v);
        return d;
    } catch (...) {
        throw ConfigError("line " + std::to_string(line) + ": bad number '" +
                          v + "'");
    }
}

long parse_long(const std::string& v, int line) {
    try {
        std::size_t used = 0;
        const long d = std::stol(v, &used);
        if (used != v.size()) throw std::invalid_argument(v);
        return d;
    } catch (...) {
        throw ConfigError("line " + std::to_string(line) + ": bad integer '" +
                          v + "'");
    }
}

} // namespace

RunConfig parse_config_text(const std::string& text) {
    RunConfig cfg = default_config();
    std::istringstream is(text);
    std::string raw;
    std::string section;
    int line = 0;

    using Setter = std::function<void(RunConfig&, const std::string&, int)>;
    const std::map<std::string, Setter> setters = {
        {"material.effective_mass_ratio",
         [](RunConfig& c, const std::string& v, int l) {
             c.mat.effective_mass_ratio = parse_double(v, l);
         }},
        {"material.dielectric_const",
         [](RunConfig& c, const std::string& v, int l) {
             c.mat.dielectric_const = parse_double(v, l);
         }},
        {"material.g_factor",
         [](RunConfig& c, const std::string& v, int l) {
             c.mat.g_factor = parse_double(v, l);
         }},
        {"material.interband_coupling_Ep_eV",
         [](RunConfig& c, const std::string& v, int l) {
             c.mat.interband_coupling_Ep = parse_double(v, l);
         }},
        {"material.band_gap_Eg_eV",
         [](RunConfig& c, const std::string& v, int l) {
             c.mat.band_gap_Eg = parse_double(v, l);
         }},
        {"material.so_splitting_Delta_eV",
         [](RunConfig& c, const std::string& v, int l) {
             c.mat.so_splitting_Delta = parse_double(v, l);
         }},
        {"potential.V0_meV",
         [](RunConfig& c, const std::string& v, int l) {
             c.pot.V0 = parse_double(v, l);
         }},
        {"potential.a_nm",
         [](RunConfig& c, const std::string& v, int l) {
             c.pot.a = parse_double(v, l);
         }},
        {"potential.Vb_meV",
         [](RunConfig& c, const std::string& v, int l) {
             c.pot.Vb = parse_double(v, l);
             c.Vb_grid = {c.pot.Vb};
         }},
        {"potential.lx_nm",
         [](RunConfig& c, const std::string& v, int l) {
             c.pot.lx = parse_double(v, l);
         }},
        {"potential.ly_nm",
         [](RunConfig& c, const std::string& v, int l) {
             c.pot.ly = parse_double(v, l);
         }},
        {"potential.lbx_nm",
         [](RunConfig& c, const std::string& v, int l) {
             c.pot.lbx = parse_double(v, l);
         }},
        {"potential.lby_nm",
         [](RunConfig& c, const std::string& v, int l) {
             c.pot.lby = parse_double(v, l);
         }},
        {"field.B_T",
         [](RunConfig& c, const std::string& v, int l) {
             c.field.B = parse_double(v, l);
         }},
        {"field.include_zeeman",
         [](RunConfig& c, const std::string& v, int l) {
             c.field.include_zeeman = parse_bool(v, l);
         }},
        {"field.gauge_center_x_nm",
         [](RunConfig& c, const std::string& v, int l) {
             c.field.gauge_center_x = parse_double(v, l);
         }},
        {"field.gauge_center_y_nm",
         [](RunConfig& c, const std::string& v, int l) {
             c.field.gauge_center_y = parse_double(v, l);
         }},
        {"run.B_grid",
         [](RunConfig& c, const std::string& v, int) {
             c.B_grid = parse_grid(v);
         }},
        {"run.distance_grid",
         [](RunConfig& c, const std::string& v, int) {
             c.distance_grid = parse_grid(v);
         }},
        {"run.Vb_grid",
         [](RunConfig& c, const std::string& v, int) {
             c.Vb_grid = parse_grid(v);
         }},
        {"run.barrier_targets",
         [](RunConfig& c, const std::string& v, int) {
             if (!trim(v).empty()) c.barrier_targets = parse_grid(v);
         }},
        {"run.basis_level",
         [](RunConfig& c, const std::string& v, int l) {
             if (v == "hl")
                 c.basis_level = BasisLevel::hl;
             else if (v == "hm")
                 c.basis_level = BasisLevel::hm;
             else if (v == "sp")
                 c.basis_level = BasisLevel::sp;
             else
                 throw ConfigError("line " + std::to_string(l) +
                                   ": basis_level must be hl|hm|sp");
         }},
        {"run.solver",
         [](RunConfig& c, const std::string& v, int l) {
             if (v == "mo")
                 c.solver = SolverKind::mo;
             else if (v == "uhf")
                 c.solver = SolverKind::uhf;
             else if (v == "hl")
                 c.solver = SolverKind::hl;
             else
                 throw ConfigError("line " + std::to_string(l) +
                                   ": solver must be mo|uhf|hl");
         }},
        {"run.use_parity",
         [](RunConfig& c, const std::string& v, int l) {
             c.use_parity = parse_bool(v, l);
         }},
        {"run.output_path",
         [](RunConfig& c, const std::string& v, int) { c.output_path = v; }},
        {"run.cache_dir",
         [](RunConfig& c, const std::string& v, int) { c.cache_dir = v; }},
        {"run.seed",
         [](RunConfig& c, const std::string& v, int l) {
             c.seed = parse_long(v, l);
         }},
        {"run.jobs",
         [](RunConfig& c, const std::string& v, int l) {
             c.jobs = int(parse_long(v, l));
         }},
        {"run.mesh_nx",
         [](RunConfig& c, const std::string& v, int l) {
             c.mesh_nx = int(parse_long(v, l));
         }},
        {"run.mesh_ny",
         [](RunConfig& c, const std::string& v, int l) {
             c.mesh_ny = int(parse_long(v, l));
         }},
    };

    while (std::getline(is, raw)) {
        ++line;
        std::string s = raw;
        const auto hash = s.find('#');
        if (hash != std::string::npos) s = s.substr(0, hash);
        s = trim(s);
        if (s.empty()) continue;
        if (s.front() == '[') {
            if (s.back() != ']') {
                throw ConfigError("line " + std::to_string(line) +
                                  ": malformed section header");
            }
            section = trim(s.substr(1, s.size() - 2));
            if (section != "material" && section != "potential" &&
                section != "field" && section != "run") {
                throw ConfigError("line " + std::to_string(line) +
                                  ": unknown section [" + section + "]");
            }
            continue;
        }
        const auto eq = s.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("line " + std::to_string(line) +
                              ": expected key = value");
        }
        const std::string key = trim(s.substr(0, eq));
        const std::string value = trim(s.substr(eq + 1));
        if (section.empty()) {
            throw ConfigError("line " + std::to_string(line) +
                              ": key outside a section");
        }
        const auto it = setters.find(section + "." + key);
        if (it == setters.end()) {
            throw ConfigError("line " + std::to_string(line) +
                              ": unknown key '" + key + "' in [" + section +
                              "]");
        }
        it->second(cfg, value, line);
    }

    if (cfg.solver == SolverKind::hl && cfg.basis_level != BasisLevel::hl) {
        throw ConfigError(
            "solver=hl requires basis_level=hl (s orbitals only)");
    }
    if (!cfg.barrier_targets.empty() &&
        cfg.barrier_targets.size() != cfg.Vb_grid.size()) {
        throw ConfigError("barrier_targets must match Vb_grid in length");
    }
    return cfg;
}

RunConfig parse_config_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ConfigError("cannot open config file '" + path + "'");
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_config_text(ss.str());
}

RunConfig apply_overrides(RunConfig cfg, const CliOverrides& ov,
                          std::vector<std::string>* warnings) {
    auto warn = [&](const std::string& what) {
        if (warnings) warnings->push_back("flag overrides config value for " + what);
    };
    if (ov.output_path) {
        if (cfg.output_path != *ov.output_path && cfg.output_path != "out")
            warn("output_path");
        cfg.output_path = *ov.output_path;
    }
    if (ov.cache_dir) {
        if (!cfg.cache_dir.empty() && cfg.cache_dir != *ov.cache_dir)
            warn("cache_dir");
        cfg.cache_dir = *ov.cache_dir;
    }
    if (ov.seed) {
        if (cfg.seed != *ov.seed && cfg.seed != 1) warn("seed");
        cfg.seed = *ov.seed;
    }
    if (ov.jobs) {
        if (cfg.jobs != *ov.jobs && cfg.jobs != 1) warn("jobs");
        cfg.jobs = *ov.jobs;
    }
    return cfg;
}

std::string basis_level_name(BasisLevel level) {
    switch (level) {
        case BasisLevel::hl: return "hl";
        case BasisLevel::hm: return "hm";
        case BasisLevel::sp: return "sp";
    }
    return "?";
}

std::string solver_name(SolverKind s) {
    switch (s) {
        case SolverKind::mo: return "mo";
        case SolverKind::uhf: return "uhf";
        case SolverKind::hl: return "hl";
    }
    return "?";
}

} // namespace qdmol
