#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>

#include "dgmg/mgprecond.hpp"

namespace dgmg
{

class ConfigError : public std::runtime_error
{
  public:
    explicit ConfigError(const std::string& what, int line = 0) : std::runtime_error(what), line_(line) {}
    /// 1-based line in the config file, 0 when the error is not tied to a line.
    int line() const { return line_; }

  private:
    int line_;
};

enum class Integrator { implicit, explicit_ssp };

struct RunConfig
{
    std::string case_name = "rising-bubble";
    int k = 3;
    int dg_level = -1;  // negative: case default
    int base_nx = 0;    // zero: case default
    int base_nz = 0;
    double dt = 0.0;       // zero: case default (implicit) or CFL based (explicit)
    double t_final = -1.0; // negative: case default
    double cfl = 0.5;      // explicit step size when dt is not given
    Integrator integrator = Integrator::implicit;
    std::optional<MgConfig> mg = MgConfig::parse("mg001111V");  // empty: no preconditioner
    bool mass_fix = false;
    double pseudo_cfl = 1.0;
    int smoother_stages = 1;
    double newton_tol = 1e-3;
    int newton_max_iters = 30;
    int gmres_restart = 30;
    int gmres_max_iters = 400;
    std::string outdir = "output";
    double output_interval = 0.0;  // zero: initial and final snapshots only
    bool vtk = false;
    bool zero_perturbation = false;
    std::string log_format = "text";  // text | none

    void validate() const;
};

/// Applies one `key = value` assignment; throws ConfigError for unknown keys or bad values.
void apply_setting(RunConfig& cfg, const std::string& key, const std::string& value, int line = 0);

/// Reads a line-oriented `key = value` file ('#' starts a comment), then
/// applies `overrides` on top.
RunConfig parse_config(const std::string& path, const std::map<std::string, std::string>& overrides = {});

RunConfig parse_config_text(const std::string& text, const std::map<std::string, std::string>& overrides = {});

}  // namespace dgmg
