#include "renorm/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "renorm/decimal.hpp"

namespace renorm {

using nlohmann::json;

namespace {

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

} // namespace

json series_to_json(const series_d& s) {
    json j;
    j["domain"] = {s.lo, s.hi};
    json coeffs = json::array();
    for (double c : s.coeffs) coeffs.push_back(exact_decimal(c));
    j["coeffs"] = std::move(coeffs);
    return j;
}

json series_to_json(const series_dd& s) {
    json j;
    j["domain"] = {to_double(s.lo), to_double(s.hi)};
    json coeffs = json::array();
    for (const dd& c : s.coeffs) coeffs.push_back(exact_decimal(c));
    j["coeffs"] = std::move(coeffs);
    return j;
}

series_dd series_from_json(const json& j) {
    if (!j.contains("domain") || !j.contains("coeffs")) fail(errc::io, "missing series fields");
    series_dd s;
    s.lo = dd(j["domain"].at(0).get<double>());
    s.hi = dd(j["domain"].at(1).get<double>());
    for (const auto& c : j["coeffs"]) s.coeffs.push_back(dd_from_decimal(c.get<std::string>()));
    if (s.coeffs.empty()) fail(errc::io, "empty coefficient list");
    return s;
}

json solution_to_json(const any_solution& s) {
    json j;
    j["precision"] = precision_name(s.prec);
    j["order_type"] = s.d.type.perm;
    j["newton_iterations"] = s.d.newton_iterations;
    if (s.prec == precision_mode::double_double && s.x) {
        const solution_dd& x = *s.x;
        j["ell"] = exact_decimal(x.map.ell);
        j["alpha"] = exact_decimal(x.alpha);
        j["tau"] = exact_decimal(x.tau);
        j["x0"] = exact_decimal(x.map.x0);
        j["residual"] = exact_decimal(x.residual);
        j["E"] = series_to_json(x.map.E);
    } else {
        j["ell"] = exact_decimal(s.d.map.ell);
        j["alpha"] = exact_decimal(s.d.alpha);
        j["tau"] = exact_decimal(s.d.tau);
        j["x0"] = exact_decimal(s.d.map.x0);
        j["residual"] = exact_decimal(s.d.residual);
        j["E"] = series_to_json(s.d.map.E);
    }
    return j;
}

any_solution solution_from_json(const json& j) {
    any_solution out;
    std::string prec = j.value("precision", "double");
    out.prec = prec == "dd" ? precision_mode::double_double : precision_mode::hw_double;

    solution_dd x;
    x.map.E = series_from_json(j.at("E"));
    x.map.ell = dd_from_decimal(j.at("ell").get<std::string>());
    x.map.trust_rho = 1.5;
    x.map.x0 = invert_monotone(x.map.E, dd(0.0));
    validate_unimodal(x.map);
    x.alpha = dd_from_decimal(j.at("alpha").get<std::string>());
    x.tau = dd_from_decimal(j.at("tau").get<std::string>());
    x.residual = dd_from_decimal(j.at("residual").get<std::string>());
    x.newton_iterations = j.value("newton_iterations", 0);
    std::vector<int> perm = j.at("order_type").get<std::vector<int>>();
    x.type = canonicalize(perm);

    double stored_x0 = to_double(dd_from_decimal(j.at("x0").get<std::string>()));
    if (std::abs(stored_x0 - to_double(x.map.x0)) > 1e-9)
        fail(errc::io, "stored critical point disagrees with the series");
    dd tau_check = pow_abs(x.alpha, x.map.ell);
    if (std::abs(to_double(tau_check - x.tau)) > 1e-9 * to_double(x.tau))
        fail(errc::io, "stored tau disagrees with |alpha|^ell");

    out.x = x;
    out.d = to_double_solution(x);
    if (out.prec == precision_mode::hw_double) out.x.reset();
    return out;
}

std::string sweep_csv(const sweep_table& t) {
    std::ostringstream os;
    os << "ell,tau,alpha,residual,iters\n";
    for (const sweep_row& r : t.rows)
        os << fmt17(r.ell) << ',' << fmt17(r.tau) << ',' << fmt17(r.alpha) << ','
           << fmt17(r.residual) << ',' << r.iters << '\n';
    os << "tau_inf=" << fmt17(t.extrapolated_tau_inf) << '\n';
    return os.str();
}

std::string limit_diagnostics_csv(const std::vector<limit_fit_row>& rows) {
    std::ostringstream os;
    os << "ell,x0,tau,C0,C1,C2,mult_measured,mult_predicted\n";
    for (const limit_fit_row& r : rows)
        os << fmt17(r.ell) << ',' << fmt17(r.x0) << ',' << fmt17(r.tau) << ',' << fmt17(r.C0)
           << ',' << fmt17(r.C1) << ',' << fmt17(r.C2) << ',' << fmt17(r.mult_measured) << ','
           << fmt17(r.mult_predicted) << '\n';
    return os.str();
}

json limit_estimate_to_json(const ew_limit_estimate& e) {
    json j;
    j["x0"] = e.x0;
    j["tau"] = e.tau;
    j["C0"] = e.C0;
    j["C1"] = e.C1;
    j["C2"] = e.C2;
    j["epsilon"] = e.epsilon;
    j["fit_residual"] = e.fit_residual;
    j["source_ells"] = e.source_ells;
    return j;
}

json raster_sidecar(const flat_exp_map& m, const flat_fixed_points& fp,
                    const julia_raster& r) {
    json j;
    j["a"] = m.a;
    j["c"] = m.c;
    j["b_f"] = fp.b_f;
    j["z0"] = fp.z0;
    j["mult_b"] = fp.mult_b;
    j["mult_z0"] = fp.mult_z0;
    j["width"] = r.width;
    j["height"] = r.height;
    j["budget"] = r.budget;
    j["viewport"] = {r.vp.re_lo, r.vp.re_hi, r.vp.im_lo, r.vp.im_hi};
    j["unknown_fraction"] = r.unknown_fraction();
    j["cells"] = {{"fatou", r.n_fatou},
                  {"julia", r.n_julia},
                  {"unknown", r.n_unknown},
                  {"numeric_error", r.n_numeric}};
    return j;
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) fail(errc::io, "cannot open " + path + " for writing");
    f << text;
    if (!f) fail(errc::io, "short write to " + path);
}

std::string read_text_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) fail(errc::io, "cannot open " + path);
    std::ostringstream os;
    os << f.rdbuf();
    return os.str();
}

} // namespace renorm
