#include "dgmg/config.hpp"

#include <fstream>
#include <sstream>

#include "dgmg/cases.hpp"

namespace dgmg
{

namespace
{

std::string trim(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v, int line)
{
    std::size_t pos = 0;
    double d = 0.0;
    try {
        d = std::stod(v, &pos);
    } catch (const std::exception&) {
        pos = 0;
    }
    if (pos == 0 || pos != v.size()) throw ConfigError(key + ": expected a number, got \"" + v + "\"", line);
    return d;
}

int to_int(const std::string& key, const std::string& v, int line)
{
    std::size_t pos = 0;
    int i = 0;
    try {
        i = std::stoi(v, &pos);
    } catch (const std::exception&) {
        pos = 0;
    }
    if (pos == 0 || pos != v.size()) throw ConfigError(key + ": expected an integer, got \"" + v + "\"", line);
    return i;
}

bool to_bool(const std::string& key, const std::string& v, int line)
{
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw ConfigError(key + ": expected true or false, got \"" + v + "\"", line);
}

}  // namespace

void RunConfig::validate() const
{
    try {
        (void)case_by_name(case_name);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    if (subgrid_depth(k) < 0) throw ConfigError("k+1 must be a power of two");
    if (dt < 0.0) throw ConfigError("dt must be positive");
    if (!(cfl > 0.0)) throw ConfigError("cfl must be positive");
    if (!(newton_tol > 0.0 && newton_tol < 1.0)) throw ConfigError("newton_tol must lie in (0,1)");
    if (newton_max_iters < 1 || gmres_restart < 1 || gmres_max_iters < 1)
        throw ConfigError("iteration limits must be >= 1");
    if (output_interval < 0.0) throw ConfigError("output_interval must be >= 0");
    if (log_format != "text" && log_format != "none") throw ConfigError("log_format must be text or none");
    if ((base_nx == 0) != (base_nz == 0)) throw ConfigError("base_nx and base_nz must be given together");
    if (base_nx < 0 || base_nz < 0) throw ConfigError("base grid dimensions must be positive");
    if (mg) {
        try {
            MgConfig m = *mg;
            m.pseudo_cfl = pseudo_cfl;
            m.smoother_stages = smoother_stages;
            m.validate();
        } catch (const std::invalid_argument& e) {
            throw ConfigError(e.what());
        }
    }
}

void apply_setting(RunConfig& cfg, const std::string& key, const std::string& value, int line)
{
    const std::string& v = value;
    if (key == "case")
        cfg.case_name = v;
    else if (key == "k")
        cfg.k = to_int(key, v, line);
    else if (key == "level")
        cfg.dg_level = to_int(key, v, line);
    else if (key == "base_nx")
        cfg.base_nx = to_int(key, v, line);
    else if (key == "base_nz")
        cfg.base_nz = to_int(key, v, line);
    else if (key == "dt")
        cfg.dt = to_double(key, v, line);
    else if (key == "t_final")
        cfg.t_final = to_double(key, v, line);
    else if (key == "cfl")
        cfg.cfl = to_double(key, v, line);
    else if (key == "integrator") {
        if (v == "implicit")
            cfg.integrator = Integrator::implicit;
        else if (v == "explicit")
            cfg.integrator = Integrator::explicit_ssp;
        else
            throw ConfigError("integrator: expected implicit or explicit, got \"" + v + "\"", line);
    } else if (key == "mg") {
        if (v == "none") {
            cfg.mg.reset();
        } else {
            try {
                cfg.mg = MgConfig::parse(v);
            } catch (const MgConfigError& e) {
                throw ConfigError(std::string(e.what()) + " at character " + std::to_string(e.position() + 1) +
                                      " of \"" + v + "\"",
                                  line);
            }
        }
    } else if (key == "transfer") {
        if (v == "interp")
            cfg.mass_fix = false;
        else if (v == "massfix")
            cfg.mass_fix = true;
        else
            throw ConfigError("transfer: expected interp or massfix, got \"" + v + "\"", line);
    } else if (key == "pseudo_cfl")
        cfg.pseudo_cfl = to_double(key, v, line);
    else if (key == "smoother_stages")
        cfg.smoother_stages = to_int(key, v, line);
    else if (key == "newton_tol")
        cfg.newton_tol = to_double(key, v, line);
    else if (key == "newton_max_iters")
        cfg.newton_max_iters = to_int(key, v, line);
    else if (key == "gmres_restart")
        cfg.gmres_restart = to_int(key, v, line);
    else if (key == "gmres_max_iters")
        cfg.gmres_max_iters = to_int(key, v, line);
    else if (key == "outdir")
        cfg.outdir = v;
    else if (key == "output_interval")
        cfg.output_interval = to_double(key, v, line);
    else if (key == "vtk")
        cfg.vtk = to_bool(key, v, line);
    else if (key == "zero_perturbation")
        cfg.zero_perturbation = to_bool(key, v, line);
    else if (key == "log_format")
        cfg.log_format = v;
    else
        throw ConfigError("unknown key \"" + key + "\"", line);
}

RunConfig parse_config_text(const std::string& text, const std::map<std::string, std::string>& overrides)
{
    RunConfig cfg;
    std::istringstream in(text);
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        const auto hash = raw.find('#');
        const std::string s = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
        if (s.empty()) continue;
        const auto eq = s.find('=');
        if (eq == std::string::npos) throw ConfigError("expected key = value", line);
        const std::string key = trim(s.substr(0, eq));
        const std::string value = trim(s.substr(eq + 1));
        if (key.empty()) throw ConfigError("missing key", line);
        apply_setting(cfg, key, value, line);
    }
    for (const auto& [k, v] : overrides) apply_setting(cfg, k, v, 0);
    cfg.validate();
    return cfg;
}

RunConfig parse_config(const std::string& path, const std::map<std::string, std::string>& overrides)
{
    std::ifstream f(path);
    if (!f) throw ConfigError("cannot read config file " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_config_text(ss.str(), overrides);
}

}  // namespace dgmg
