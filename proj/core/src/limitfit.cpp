#include "renorm/limitfit.hpp"

#include <cmath>

#include "renorm/linsolve.hpp"

namespace renorm {
namespace {

// least-squares y ~ y_inf + a/ell + b/ell^2 over the deepest rows
double richardson(const std::vector<double>& ells, const std::vector<double>& ys,
                  double* misfit = nullptr) {
    size_t n = ells.size();
    size_t first = n > 4 ? n - 4 : 0;
    int terms = int(std::min<size_t>(3, n - first));
    std::vector<std::vector<double>> ata(terms, std::vector<double>(terms, 0.0));
    std::vector<double> atb(terms, 0.0);
    for (size_t k = first; k < n; ++k) {
        double b[3] = {1.0, 1.0 / ells[k], 1.0 / (ells[k] * ells[k])};
        for (int i = 0; i < terms; ++i) {
            for (int j = 0; j < terms; ++j) ata[i][j] += b[i] * b[j];
            atb[i] += b[i] * ys[k];
        }
    }
    std::vector<double> c = solve_dense(ata, atb);
    if (misfit) {
        double worst = 0;
        for (size_t k = first; k < n; ++k) {
            double b[3] = {1.0, 1.0 / ells[k], 1.0 / (ells[k] * ells[k])};
            double fit = 0;
            for (int i = 0; i < terms; ++i) fit += c[i] * b[i];
            worst = std::max(worst, std::abs(fit - ys[k]));
        }
        *misfit = worst;
    }
    return c[0];
}

} // namespace

std::vector<limit_fit_row> limit_diagnostics(const sweep_result& sr) {
    std::vector<limit_fit_row> rows;
    for (const any_solution& s : sr.solutions) {
        limit_fit_row r;
        r.ell = s.d.map.ell;
        r.x0 = s.d.map.x0;
        r.tau = s.d.tau;
        fatou_coefficients fc = fatou_fit(s.d);
        r.C0 = fc.C0;
        r.C1 = fc.C1;
        r.C2 = fc.C2;
        multiplier_result mr = multiplier_check(s.d);
        r.mult_measured = mr.measured;
        r.mult_predicted = mr.predicted;
        rows.push_back(r);
    }
    return rows;
}

ew_limit_estimate extrapolate_limit(const std::vector<limit_fit_row>& rows, double epsilon) {
    if (rows.size() < 4) fail(errc::data, "need at least 4 criticalities to extrapolate");
    for (size_t i = 0; i + 1 < rows.size(); ++i) {
        if (!(rows[i].ell < rows[i + 1].ell))
            fail(errc::data, "criticalities must increase");
        if (!(rows[i].tau < rows[i + 1].tau))
            fail(errc::data, "tau values are not monotone along the sweep");
    }
    std::vector<double> ells, x0s, taus, c0s, c1s, c2s;
    for (const limit_fit_row& r : rows) {
        ells.push_back(r.ell);
        x0s.push_back(r.x0);
        taus.push_back(r.tau);
        c0s.push_back(r.C0);
        c1s.push_back(r.C1);
        c2s.push_back(r.C2);
    }
    ew_limit_estimate e;
    double mis_x0 = 0, mis_tau = 0;
    e.x0 = richardson(ells, x0s, &mis_x0);
    e.tau = richardson(ells, taus, &mis_tau);
    e.C0 = richardson(ells, c0s);
    e.C1 = richardson(ells, c1s);
    e.C2 = richardson(ells, c2s);
    e.epsilon = epsilon;
    e.source_ells = ells;
    e.fit_residual = std::max(mis_x0, mis_tau);
    if (!(e.C0 < 0)) fail(errc::data, "extrapolated C0 is not negative");
    if (!(e.epsilon > 0)) fail(errc::data, "epsilon is not positive");
    if (!(e.tau > 1)) fail(errc::data, "extrapolated tau <= 1");
    return e;
}

parabolic_result epsilon_at_top(const solution_d& deepest) {
    g_map g = build_G(deepest);
    double x0 = deepest.map.x0;
    return parabolic_fit([&](double x) { return g(g(x)); }, x0);
}

} // namespace renorm
