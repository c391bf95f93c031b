// renormlab: solve renormalization fixed points tau H^p(x) = H(tau x) for
// unimodal maps |E|^ell, sweep the criticality toward the flat limit, fit the
// limit structure, and render Julia sets of the flat-exponential model family.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "renorm/io.hpp"
#include "renorm/verify.hpp"

using namespace renorm;
using nlohmann::json;

namespace {

// exit-code contract: 0 ok / 2 numeric failure / 3 validation / 4 structure
int exit_code_for(const error& e) {
    switch (e.kind) {
        case errc::value:
        case errc::arity:
        case errc::unsupported:
        case errc::combinatorics:
        case errc::io:
            return 3;
        case errc::structure:
            return 4;
        default:
            return 2;
    }
}

void check_writable(const std::string& path) {
    namespace fs = std::filesystem;
    bool existed = fs::exists(path);
    std::FILE* f = std::fopen(path.c_str(), "ab");
    if (!f) fail(errc::io, "output path not writable: " + path);
    std::fclose(f);
    if (!existed) fs::remove(path);
}

struct common_config {
    std::string type_text = "pd";
    int degree = 40;
    double tol = 1e-11;
    std::string precision = "auto"; // auto | double | dd
};

void validate_common(const common_config& c) {
    if (c.degree < 16 || c.degree > 128)
        fail(errc::value, "degree must lie in [16, 128]");
    if (c.tol < 1e-14 || c.tol > 1e-6) fail(errc::value, "tol must lie in [1e-14, 1e-6]");
    if (c.precision != "auto" && c.precision != "double" && c.precision != "dd")
        fail(errc::value, "precision must be auto, double or dd");
}

std::optional<precision_mode> forced_precision(const std::string& text) {
    std::string p = text;
    if (const char* env = std::getenv("RENORM_PRECISION"); env && p == "auto") p = env;
    if (p == "double") return precision_mode::hw_double;
    if (p == "dd") return precision_mode::double_double;
    if (p == "auto" || p.empty()) return std::nullopt;
    fail(errc::value, "RENORM_PRECISION must be double or dd");
}

std::vector<double> parse_ell_list(const std::string& text) {
    std::vector<double> out;
    std::string cur;
    for (char ch : text + ",") {
        if (ch == ',') {
            if (!cur.empty()) {
                try {
                    out.push_back(std::stod(cur));
                } catch (...) {
                    fail(errc::value, "bad ell value: " + cur);
                }
                cur.clear();
            }
        } else {
            cur += ch;
        }
    }
    if (out.empty()) fail(errc::value, "empty ell list");
    return out;
}

// flat JSON config mirroring the flags; explicit flags win
json load_config(const std::string& path) {
    if (path.empty()) return json::object();
    json j = json::parse(read_text_file(path), nullptr, false);
    if (j.is_discarded() || !j.is_object()) fail(errc::io, "config is not a JSON object");
    return j;
}

template <class T>
void overlay(const CLI::Option* opt, const json& cfg, const char* key, T& value) {
    if (opt->count() > 0) return;
    if (cfg.contains(key)) value = cfg[key].get<T>();
}

any_solution solve_any(const order_type& t, double ell, int degree, double tol,
                       std::optional<precision_mode> forced) {
    bool use_dd = forced ? *forced == precision_mode::double_double : ell >= 64.0;
    any_solution out;
    if (use_dd) {
        solution_dd s = solve_fixed_point<dd>(dd(ell), t, degree, tol);
        out.prec = precision_mode::double_double;
        out.d = to_double_solution(s);
        out.x = std::move(s);
    } else {
        out.prec = precision_mode::hw_double;
        out.d = solve_fixed_point<double>(ell, t, degree, tol);
    }
    return out;
}

int run_solve(const common_config& cc, double ell, const std::string& out_path) {
    validate_common(cc);
    if (!(ell > 1.0)) fail(errc::value, "criticality ell must exceed 1");
    order_type t = parse_order_type(cc.type_text);
    if (!validate_admissible(t))
        fail(errc::combinatorics, "order type " + t.str() + " is not admissible");
    check_writable(out_path);
    try {
        any_solution s = solve_any(t, ell, cc.degree, cc.tol, forced_precision(cc.precision));
        write_text_file(out_path, solution_to_json(s).dump(2) + "\n");
        std::printf("solved ell=%.17g type=%s tau=%.17g alpha=%.17g residual=%.3e -> %s\n",
                    ell, t.str().c_str(), s.d.tau, s.d.alpha, s.d.residual,
                    out_path.c_str());
        return 0;
    } catch (const error& e) {
        if (e.kind != errc::no_convergence) throw;
        json diag;
        diag["converged"] = false;
        diag["error"] = e.what();
        diag["last_residual"] = e.residual;
        write_text_file(out_path, diag.dump(2) + "\n");
        std::fprintf(stderr, "no convergence: %s\n", e.what());
        return 2;
    }
}

int run_sweep(const common_config& cc, const std::string& ells_text,
              const std::string& out_path, const std::string& solutions_prefix) {
    validate_common(cc);
    std::vector<double> ells = parse_ell_list(ells_text);
    for (size_t i = 0; i + 1 < ells.size(); ++i)
        if (!(ells[i] < ells[i + 1]))
            fail(errc::value, "ell list must be strictly increasing");
    order_type t = parse_order_type(cc.type_text);
    if (!validate_admissible(t))
        fail(errc::combinatorics, "order type " + t.str() + " is not admissible");
    check_writable(out_path);

    sweep_options opt;
    opt.degree = cc.degree;
    opt.tol = cc.tol;
    opt.force = forced_precision(cc.precision);
    sweep_result sr = sweep(t, ells, opt);
    write_text_file(out_path, sweep_csv(sr.table));
    if (!solutions_prefix.empty()) {
        for (const any_solution& s : sr.solutions) {
            char name[64];
            std::snprintf(name, sizeof(name), "%sell%.17g.json", solutions_prefix.c_str(),
                          s.d.map.ell);
            write_text_file(name, solution_to_json(s).dump(2) + "\n");
        }
    }
    std::printf("%zu/%zu rows -> %s (tau_inf=%.17g)\n", sr.table.rows.size(), ells.size(),
                out_path.c_str(), sr.table.extrapolated_tau_inf);
    if (!sr.complete) {
        std::fprintf(stderr, "sweep incomplete: %s\n", sr.failure.c_str());
        return 2;
    }
    return 0;
}

int run_limit(const common_config& cc, const std::string& ells_text,
              const std::string& out_path, const std::string& diag_path) {
    validate_common(cc);
    std::vector<double> ells = parse_ell_list(ells_text);
    order_type t = parse_order_type(cc.type_text);
    if (!validate_admissible(t))
        fail(errc::combinatorics, "order type " + t.str() + " is not admissible");
    check_writable(out_path);
    if (!diag_path.empty()) check_writable(diag_path);

    sweep_options opt;
    opt.degree = cc.degree;
    opt.tol = cc.tol;
    opt.force = forced_precision(cc.precision);
    sweep_result sr = sweep(t, ells, opt);
    if (!sr.complete) {
        std::fprintf(stderr, "sweep incomplete: %s\n", sr.failure.c_str());
        return 2;
    }
    std::vector<limit_fit_row> rows = limit_diagnostics(sr);
    if (!diag_path.empty()) write_text_file(diag_path, limit_diagnostics_csv(rows));
    parabolic_result eps = epsilon_at_top(sr.solutions.back().d);
    ew_limit_estimate est = extrapolate_limit(rows, eps.epsilon);
    write_text_file(out_path, limit_estimate_to_json(est).dump(2) + "\n");
    std::printf("limit estimate: x0=%.12g tau=%.12g C0=%.6g epsilon=%.6g -> %s\n", est.x0,
                est.tau, est.C0, est.epsilon, out_path.c_str());
    return 0;
}

int run_julia(double a, double c, const std::string& vp_text, int width, int height,
              int budget, const std::string& out_path, const std::string& sidecar_path) {
    if (width <= 0 || height <= 0 || budget <= 0)
        fail(errc::value, "width, height and budget must be positive");
    check_writable(out_path);
    if (!sidecar_path.empty()) check_writable(sidecar_path);

    flat_exp_map m{a, c};
    viewport vp{a - 1.0, 1.5, -1.0, 1.0};
    if (!vp_text.empty()) {
        std::vector<double> v = parse_ell_list(vp_text);
        if (v.size() != 4) fail(errc::value, "viewport needs re_lo,re_hi,im_lo,im_hi");
        vp = viewport{v[0], v[1], v[2], v[3]};
        if (!(vp.re_lo < vp.re_hi && vp.im_lo < vp.im_hi))
            fail(errc::value, "viewport is empty");
    }
    classifier ctx = make_classifier(m);
    julia_raster r = render_julia(ctx, vp, width, height, budget);
    write_pgm(r, out_path);
    if (!sidecar_path.empty())
        write_text_file(sidecar_path, raster_sidecar(m, ctx.fixed, r).dump(2) + "\n");
    std::printf("raster %dx%d budget=%d unknown=%.4f%% -> %s\n", width, height, budget,
                100.0 * r.unknown_fraction(), out_path.c_str());
    return 0;
}

int run_verify(const std::string& solution_path) {
    json j = json::parse(read_text_file(solution_path), nullptr, false);
    if (j.is_discarded()) fail(errc::io, "solution file is not valid JSON");
    any_solution s = solution_from_json(j);
    std::vector<check_result> checks = verify_solution(s);
    for (const check_result& c : checks)
        std::printf("%-4s %s%s%s\n", c.ok ? "ok" : "FAIL", c.name.c_str(),
                    c.detail.empty() ? "" : "  ", c.detail.c_str());
    if (!all_ok(checks)) {
        std::fprintf(stderr, "verification failed\n");
        return 2;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Renormalization laboratory for unimodal maps of high criticality"};
    app.require_subcommand(1);

    common_config cc;
    std::string config_path;
    double ell = 2.0;
    std::string ells_text = "2,4,8,16,32,64,128";
    std::string out_path, diag_path, solutions_prefix, sidecar_path, vp_text, solution_path;
    double fe_a = 0.5, fe_c = 0.01;
    int width = 256, height = 256, budget = 2000;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--type", cc.type_text, "order type: pd or e.g. [2,3,1]");
        cmd->add_option("--degree", cc.degree, "Chebyshev degree (16..128)");
        cmd->add_option("--tol", cc.tol, "Newton tolerance (1e-14..1e-6)");
        cmd->add_option("--precision", cc.precision, "auto | double | dd");
        cmd->add_option("--config", config_path, "flat JSON config; flags override");
    };

    CLI::App* solve = app.add_subcommand("solve", "solve one fixed point");
    add_common(solve);
    auto* solve_ell = solve->add_option("--ell", ell, "criticality > 1");
    auto* solve_out = solve->add_option("--out", out_path, "solution JSON path");

    CLI::App* sweep_cmd = app.add_subcommand("sweep", "continuation sweep in ell");
    add_common(sweep_cmd);
    auto* sweep_ells = sweep_cmd->add_option("--ells", ells_text, "comma-separated ells");
    auto* sweep_out = sweep_cmd->add_option("--out", out_path, "CSV path");
    sweep_cmd->add_option("--solutions-prefix", solutions_prefix,
                          "also write per-ell solution JSONs");

    CLI::App* limit = app.add_subcommand("limit", "sweep and extrapolate the flat limit");
    add_common(limit);
    auto* limit_ells = limit->add_option("--ells", ells_text, "comma-separated ells");
    auto* limit_out = limit->add_option("--out", out_path, "limit-estimate JSON path");
    limit->add_option("--diagnostics", diag_path, "per-ell fit CSV path");

    CLI::App* julia = app.add_subcommand("julia", "render the flat-exponential Julia set");
    julia->add_option("--a", fe_a, "singular point a > 0");
    julia->add_option("--c", fe_c, "flatness c > 0");
    julia->add_option("--viewport", vp_text, "re_lo,re_hi,im_lo,im_hi");
    julia->add_option("--width", width, "pixels");
    julia->add_option("--height", height, "pixels");
    julia->add_option("--budget", budget, "max iterations per pixel");
    auto* julia_out = julia->add_option("--out", out_path, "PGM path");
    julia->add_option("--sidecar", sidecar_path, "JSON sidecar path");
    julia->add_option("--config", config_path, "flat JSON config; flags override");

    CLI::App* verify = app.add_subcommand("verify", "run the invariant suite on a solution");
    verify->add_option("--solution", solution_path, "solution JSON")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        json cfg = load_config(config_path);
        if (solve->parsed()) {
            overlay(solve_ell, cfg, "ell", ell);
            overlay(solve_out, cfg, "out", out_path);
            if (out_path.empty()) out_path = "solution.json";
            return run_solve(cc, ell, out_path);
        }
        if (sweep_cmd->parsed()) {
            overlay(sweep_ells, cfg, "ells", ells_text);
            overlay(sweep_out, cfg, "out", out_path);
            if (out_path.empty()) out_path = "sweep.csv";
            return run_sweep(cc, ells_text, out_path, solutions_prefix);
        }
        if (limit->parsed()) {
            overlay(limit_ells, cfg, "ells", ells_text);
            overlay(limit_out, cfg, "out", out_path);
            if (out_path.empty()) out_path = "limit.json";
            return run_limit(cc, ells_text, out_path, diag_path);
        }
        if (julia->parsed()) {
            overlay(julia_out, cfg, "out", out_path);
            if (out_path.empty()) out_path = "julia.pgm";
            return run_julia(fe_a, fe_c, vp_text, width, height, budget, out_path,
                             sidecar_path);
        }
        if (verify->parsed()) return run_verify(solution_path);
    } catch (const error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return exit_code_for(e);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 3;
}
