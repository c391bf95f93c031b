#pragma once

#include <string>

#include <json.hpp>

#include "renorm/julia.hpp"
#include "renorm/limitfit.hpp"
#include "renorm/sweep.hpp"

namespace renorm {

// JSON/CSV wire formats.  Series coefficients and solution scalars travel as
// exact decimal strings so round-trips lose nothing in either precision mode.
nlohmann::json series_to_json(const series_d& s);
nlohmann::json series_to_json(const series_dd& s);
series_dd series_from_json(const nlohmann::json& j);

nlohmann::json solution_to_json(const any_solution& s);
any_solution solution_from_json(const nlohmann::json& j);

std::string sweep_csv(const sweep_table& t);
std::string limit_diagnostics_csv(const std::vector<limit_fit_row>& rows);
nlohmann::json limit_estimate_to_json(const ew_limit_estimate& e);

nlohmann::json raster_sidecar(const flat_exp_map& m, const flat_fixed_points& fp,
                              const julia_raster& r);

void write_text_file(const std::string& path, const std::string& text);
std::string read_text_file(const std::string& path);

} // namespace renorm
