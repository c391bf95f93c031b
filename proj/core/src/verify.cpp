#include "renorm/verify.hpp"

#include <cmath>
#include <complex>

#include "renorm/gdyn.hpp"
#include "renorm/presentation.hpp"

namespace renorm {

bool all_ok(const std::vector<check_result>& checks) {
    for (const check_result& c : checks)
        if (!c.ok) return false;
    return true;
}

namespace {

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3e", v);
    return buf;
}

void push(std::vector<check_result>& out, const std::string& name, bool ok,
          const std::string& detail) {
    out.push_back({name, ok, detail});
}

} // namespace

std::vector<check_result> verify_solution(const any_solution& s) {
    std::vector<check_result> out;
    const solution_d& sol = s.d;
    int p = sol.type.period();
    double tol = std::max(sol.residual, 1e-13);

    // normalization and shape
    {
        double e0 = eval_unchecked(sol.map.E, 0.0);
        push(out, "normalization E(0)=1", std::abs(e0 - 1.0) <= 1e-12, num(e0 - 1.0));
    }
    {
        series_d d = derivative(sol.map.E);
        bool dec = true;
        for (int i = 0; i <= 256 && dec; ++i)
            dec = eval_unchecked(d, double(i) / 256.0) < 0.0;
        push(out, "E strictly decreasing", dec, "");
    }
    {
        // single slope sign change of H on a 1024-point grid
        int changes = 0;
        double prev = eval_H(sol.map, 0.0);
        double prev_slope = 0;
        bool have = false;
        for (int i = 1; i <= 1024; ++i) {
            double v = eval_H(sol.map, double(i) / 1024.0);
            double slope = v - prev;
            if (have && (slope > 0) != (prev_slope > 0)) ++changes;
            if (slope != 0) {
                prev_slope = slope;
                have = true;
            }
            prev = v;
        }
        push(out, "H unimodal on 1024-grid", changes == 1,
             std::to_string(changes) + " slope changes");
    }
    {
        bool ok = true;
        double worst = -1e300;
        for (int i = 1; i < 64; ++i) {
            double x = double(i) / 64.0;
            double sv = schwarzian(sol.map.E, x);
            worst = std::max(worst, sv);
            if (sv > 1e-8) ok = false;
        }
        push(out, "Schwarzian(E) <= 1e-8", ok, num(worst));
    }
    {
        std::complex<double> z(0.4, 0.05);
        std::complex<double> a = eval_H(sol.map, z);
        std::complex<double> b = eval_H(sol.map, std::conj(z));
        push(out, "conjugation symmetry", b == std::conj(a), "");
    }

    // scaling identities
    {
        double rel;
        if (s.x) {
            dd diff = s.x->tau - pow_abs(s.x->alpha, s.x->map.ell);
            rel = std::abs(to_double(diff)) / to_double(s.x->tau);
        } else {
            rel = std::abs(sol.tau - std::pow(std::abs(sol.alpha), sol.map.ell)) / sol.tau;
        }
        push(out, "tau = |alpha|^ell (1e-12 rel)", rel <= 1e-12, num(rel));
    }
    push(out, "tau > 1", sol.tau > 1.0, num(sol.tau));
    push(out, "|alpha| > 1", std::abs(sol.alpha) > 1.0, num(sol.alpha));
    {
        double h0 = eval_H(sol.map, 0.0);
        double hx0 = eval_H(sol.map, sol.map.x0);
        double y = 1.0;
        for (int i = 0; i < p - 1; ++i) y = eval_H(sol.map, y);
        bool ok = std::abs(h0 - 1.0) <= 10 * tol && std::abs(hx0) <= 10 * tol &&
                  std::abs(y - 1.0 / sol.tau) <= 10 * tol;
        push(out, "H(0)=1, H(x0)=0, H^{p-1}(1)=1/tau", ok, num(std::abs(y - 1.0 / sol.tau)));
    }
    {
        order_type t = critical_orbit_type(sol.map, p);
        push(out, "critical orbit realizes the stored order type", t == sol.type, t.str());
    }

    // defects of the functional equation
    {
        double r = s.x ? to_double(residual_sup(*s.x, 256)) : residual_sup(sol, 256);
        push(out, "residual_sup(256) <= 1e-10", r <= 1e-10, num(r));
    }
    {
        std::vector<cplx> grid;
        for (int i = 1; i <= 64; ++i)
            grid.push_back(sol.map.x0 + (1.0 - sol.map.x0) * double(i) / 65.0);
        double r = abel_residual(sol, grid);
        push(out, "abel_residual(64) <= 1e-9", r <= 1e-9, num(r));
    }

    // operator fixed point: renormalizing reproduces the map
    {
        double bound = std::max(10 * tol, 1e-9);
        double worst = 0;
        bool ok = true;
        try {
            unimodal_d rm = renormalize(sol.map, sol.type);
            for (size_t i = 0; i < sol.map.E.coeffs.size(); ++i)
                worst = std::max(worst,
                                 std::abs(rm.E.coeffs[i] - sol.map.E.coeffs[i]));
            ok = worst <= bound;
        } catch (const error&) {
            ok = false;
        }
        push(out, "renormalize reproduces the fixed point", ok, num(worst));
    }

    // return-map conjugacy H = Lambda_n^{-1} g^{p^n} Lambda_n, n = 1, 2
    for (int n = 1; n <= 2; ++n) {
        double worst = 0;
        bool ok = true;
        try {
            long reps = 1;
            for (int i = 0; i < n; ++i) reps *= p;
            double scale = std::pow(sol.tau, -n);
            for (int i = 1; i < 32; ++i) {
                double x = double(i) / 32.0;
                double y = eval_unchecked(sol.map.E, scale * x);
                for (long r = 0; r < reps; ++r)
                    y = eval_unchecked(sol.map.E, std::pow(std::abs(y), sol.map.ell));
                double lhs = invert_monotone(sol.map.E, y) / scale;
                worst = std::max(worst, std::abs(lhs - eval_H(sol.map, x)));
            }
            ok = worst <= std::max(1e-8, 100 * tol);
        } catch (const error&) {
            ok = false;
        }
        push(out, "return-map identity n=" + std::to_string(n), ok, num(worst));
    }

    // G dynamics
    {
        g_map g = build_G(sol);
        push(out, "G fixes x0", g.fixed_point_defect <= std::max(1e-9, 10 * tol),
             num(g.fixed_point_defect));
        push(out, "H/tau = H(G(.)) identity", g.identity_defect <= std::max(1e-9, 10 * tol),
             num(g.identity_defect));
        multiplier_result mr = multiplier_check(sol);
        push(out, "multiplier |G'(x0)| = tau^{-1/ell}",
             std::abs(mr.measured - mr.predicted) <= 1e-6,
             num(mr.measured - mr.predicted));
        push(out, "G attracting at x0", mr.measured < 1.0, num(mr.measured));
    }

    // boundary fixed point and presentation geometry
    {
        bool ok = true;
        std::string detail;
        try {
            boundary_fixed_point b = find_b0(sol);
            ok = b.b0 > 1.0 && b.derivative > 1.0;
            detail = "b0=" + num(b.b0) + " H'(b0)=" + num(b.derivative);
        } catch (const error& e) {
            ok = false;
            detail = e.what();
        }
        push(out, "repelling fixed point beyond 1", ok, detail);
    }
    if (p <= 3) {
        bool ok = true;
        std::string detail;
        try {
            build_presentation(sol);
        } catch (const error& e) {
            ok = false;
            detail = e.what();
        }
        push(out, "presentation intervals disjoint", ok, detail);
    }

    // inverse branches
    {
        double worst = 0;
        for (int i = 1; i <= 8; ++i) {
            double w = -double(i) * 0.4;
            cplx pw = inverse_branch_P(sol, +1, cplx(w, 0.0));
            worst = std::max(worst,
                             std::abs(eval_H(sol.map, pw.real()) - std::exp(w)));
        }
        push(out, "H(P+(w)) = e^w", worst <= 1e-10, num(worst));
    }
    return out;
}

} // namespace renorm
