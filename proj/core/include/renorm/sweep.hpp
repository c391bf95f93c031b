#pragma once

#include <optional>
#include <string>
#include <vector>

#include "renorm/fixed_point.hpp"

namespace renorm {

struct sweep_row {
    double ell = 0;
    double tau = 0;
    double alpha = 0;
    double residual = 0;
    int iters = 0;
};

struct sweep_table {
    std::vector<sweep_row> rows;
    order_type type;
    double extrapolated_tau_inf = 0;
    double extrapolation_residual = 0;
};

// A solution in whichever precision it was solved, plus a double view.
struct any_solution {
    precision_mode prec = precision_mode::hw_double;
    solution_d d;
    std::optional<solution_dd> x;
};

struct sweep_result {
    sweep_table table;
    std::vector<any_solution> solutions;
    bool complete = true;
    std::string failure; // annotated with the failing ell when !complete
};

struct sweep_options {
    int degree = 64;
    double tol = 1e-11;
    // hardware double below the threshold, double-double at and above it;
    // force overrides the policy entirely
    double dd_threshold = 64.0;
    std::optional<precision_mode> force;
};

inline solution_dd to_dd_solution(const solution_d& s) {
    solution_dd out;
    out.map.E = to_dd_series(s.map.E);
    out.map.ell = dd(s.map.ell);
    out.map.x0 = dd(s.map.x0);
    out.map.trust_rho = s.map.trust_rho;
    out.alpha = dd(s.alpha);
    out.tau = pow_abs(out.alpha, out.map.ell);
    out.residual = dd(s.residual);
    out.newton_iterations = s.newton_iterations;
    out.type = s.type;
    return out;
}

// Least-squares fit tau(ell) ~ tau_inf + A/ell + B/ell^2 on the deepest rows,
// where the 1/ell expansion is actually in its asymptotic regime.
inline void fit_tau_inf(sweep_table& t) {
    size_t n = t.rows.size();
    if (n == 0) return;
    if (n == 1) {
        t.extrapolated_tau_inf = t.rows[0].tau;
        t.extrapolation_residual = 0;
        return;
    }
    size_t first = n > 4 ? n - 4 : 0;
    int terms = int(std::min<size_t>(3, n - first));
    std::vector<std::vector<double>> ata(terms, std::vector<double>(terms, 0.0));
    std::vector<double> atb(terms, 0.0);
    for (size_t k = first; k < n; ++k) {
        const sweep_row& r = t.rows[k];
        double b[3] = {1.0, 1.0 / r.ell, 1.0 / (r.ell * r.ell)};
        for (int i = 0; i < terms; ++i) {
            for (int j = 0; j < terms; ++j) ata[i][j] += b[i] * b[j];
            atb[i] += b[i] * r.tau;
        }
    }
    std::vector<double> c = solve_dense(ata, atb);
    t.extrapolated_tau_inf = c[0];
    double ss = 0;
    for (size_t k = first; k < n; ++k) {
        const sweep_row& r = t.rows[k];
        double b[3] = {1.0, 1.0 / r.ell, 1.0 / (r.ell * r.ell)};
        double fit = 0;
        for (int i = 0; i < terms; ++i) fit += c[i] * b[i];
        ss = std::max(ss, std::abs(fit - r.tau));
    }
    t.extrapolation_residual = ss;
}

// Continuation sweep over increasing ell values.
inline sweep_result sweep(const order_type& t, const std::vector<double>& ells,
                          const sweep_options& opt = {}) {
    if (ells.empty()) fail(errc::value, "empty ell list");
    for (size_t i = 0; i + 1 < ells.size(); ++i)
        if (!(ells[i] < ells[i + 1])) fail(errc::value, "ell list must be strictly increasing");
    if (!(ells.front() > 1.0)) fail(errc::value, "criticality must exceed 1");

    sweep_result out;
    out.table.type = t;

    auto wants_dd = [&](double ell) {
        if (opt.force) return *opt.force == precision_mode::double_double;
        return ell >= opt.dd_threshold;
    };

    std::optional<solution_d> prev_d, cur_d;
    std::optional<solution_dd> prev_dd, cur_dd;
    for (double ell : ells) {
        try {
            any_solution entry;
            if (!wants_dd(ell)) {
                solution_d s = cur_d
                                   ? continue_solve(*cur_d, ell, opt.degree, opt.tol, prev_d)
                                   : solve_fixed_point<double>(ell, t, opt.degree, opt.tol);
                prev_d = cur_d;
                cur_d = s;
                entry.prec = precision_mode::hw_double;
                entry.d = std::move(s);
            } else {
                if (!cur_dd && cur_d) {
                    cur_dd = to_dd_solution(*cur_d);
                    if (prev_d) prev_dd = to_dd_solution(*prev_d);
                }
                solution_dd s = cur_dd ? continue_solve(*cur_dd, dd(ell), opt.degree, opt.tol,
                                                        prev_dd)
                                       : solve_fixed_point<dd>(dd(ell), t, opt.degree, opt.tol);
                prev_dd = cur_dd;
                cur_dd = s;
                entry.prec = precision_mode::double_double;
                entry.d = to_double_solution(s);
                entry.x = std::move(s);
            }
            sweep_row row;
            row.ell = ell;
            row.tau = entry.d.tau;
            row.alpha = entry.d.alpha;
            row.residual = entry.d.residual;
            row.iters = entry.d.newton_iterations;
            out.table.rows.push_back(row);
            out.solutions.push_back(std::move(entry));
        } catch (const error& e) {
            out.complete = false;
            out.failure = "ell = " + std::to_string(ell) + ": " + e.what();
            break;
        }
    }
    fit_tau_inf(out.table);
    return out;
}

} // namespace renorm
