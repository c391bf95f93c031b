#include "renorm/presentation.hpp"

#include <algorithm>
#include <cmath>

#include "renorm/gdyn.hpp"

namespace renorm {
namespace {

double h_ext(const solution_d& sol, double x) {
    return eval_H_ext(sol.map, sol.tau, sol.type.period(), x);
}

double bisect(const solution_d& sol, double a, double b, double target, bool decreasing) {
    for (int i = 0; i < 200; ++i) {
        double m = 0.5 * (a + b);
        if (m == a || m == b) break;
        double v = h_ext(sol, m);
        bool left = decreasing ? (v > target) : (v < target);
        if (left)
            a = m;
        else
            b = m;
    }
    return 0.5 * (a + b);
}

// inverse of the extended H on one monotone side of x0
double invert_side(const solution_d& sol, double y, bool left_branch, double lo_limit,
                   double hi_limit) {
    double x0 = sol.map.x0;
    if (left_branch) return bisect(sol, lo_limit, x0, y, true);
    return bisect(sol, x0, hi_limit, y, false);
}

} // namespace

boundary_fixed_point find_b0(const solution_d& sol) {
    double hi = 0.98 * sol.tau;
    double a = 1.0, b = -1.0;
    double fa = h_ext(sol, a) - a;
    for (int i = 1; i <= 512; ++i) {
        double x = 1.0 + (hi - 1.0) * double(i) / 512.0;
        double f = h_ext(sol, x) - x;
        if ((fa < 0) != (f < 0)) {
            b = x;
            break;
        }
        a = x;
        fa = f;
    }
    if (b < 0) fail(errc::geometry, "no fixed point of H beyond 1 before tau");
    for (int i = 0; i < 200; ++i) {
        double m = 0.5 * (a + b);
        if (m == a || m == b) break;
        if ((h_ext(sol, m) - m < 0) == (fa < 0))
            a = m;
        else
            b = m;
    }
    boundary_fixed_point r;
    r.b0 = 0.5 * (a + b);
    double h = 1e-6 * r.b0;
    r.derivative = (h_ext(sol, r.b0 + h) - h_ext(sol, r.b0 - h)) / (2 * h);
    return r;
}

presentation_intervals build_presentation(const solution_d& sol) {
    int p = sol.type.period();
    if (p < 2) fail(errc::value, "period must be >= 2");
    double tau = sol.tau;
    double x0 = sol.map.x0;

    presentation_intervals out;
    boundary_fixed_point bfp = find_b0(sol);
    out.b0 = bfp.b0;
    if (!(bfp.derivative > 1.0))
        fail(errc::geometry, "fixed point beyond 1 is not repelling");

    // b0' < 0 with H(b0') = b0
    {
        double a = 0.0, step = 1e-3;
        while (h_ext(sol, a - step) < out.b0) {
            a -= step;
            if (a < -1.0) fail(errc::geometry, "no left preimage of b0");
        }
        double lo = a - step, hi = a;
        for (int i = 0; i < 200; ++i) {
            double m = 0.5 * (lo + hi);
            if (m == lo || m == hi) break;
            if (h_ext(sol, m) > out.b0)
                lo = m;
            else
                hi = m;
        }
        out.b0_left = 0.5 * (lo + hi);
    }

    // I1 = G(I0) for I0 = (b0', b0): range over endpoints and the interior
    // critical values of G
    g_map G = build_G(sol);
    std::vector<double> candidates = {G(out.b0_left), G(out.b0)};
    {
        const int n = 4096;
        double prev_x = out.b0_left;
        double prev_s = 0;
        bool have = false;
        for (int i = 1; i <= n; ++i) {
            double x = out.b0_left + (out.b0 - out.b0_left) * double(i) / n;
            double s = G(x) - G(prev_x);
            if (have && (s < 0) != (prev_s < 0)) {
                // extremum inside (prev, x): refine by ternary-style bisection
                double a = prev_x - (out.b0 - out.b0_left) / n, b = x;
                for (int k = 0; k < 100; ++k) {
                    double m1 = a + (b - a) / 3, m2 = b - (b - a) / 3;
                    bool rising = prev_s > 0;
                    if ((G(m1) < G(m2)) == rising)
                        a = m1;
                    else
                        b = m2;
                }
                candidates.push_back(G(0.5 * (a + b)));
            }
            prev_s = s;
            prev_x = x;
            have = true;
        }
    }
    interval I1{*std::min_element(candidates.begin(), candidates.end()),
                *std::max_element(candidates.begin(), candidates.end())};

    out.J.assign(p, interval{});
    out.J[0] = interval{0.0, out.b0 / tau}; // J_1
    out.J[p - 1] = I1;                      // J_p

    // reference orbit points: xi_q tracks H^{q-1}(J_1)
    std::vector<double> ref(p + 1);
    ref[1] = 0.5 * out.b0 / tau;
    for (int q = 2; q <= p; ++q) ref[q] = h_ext(sol, ref[q - 1]);

    // J_q = the component of the H^{p-q}-preimage of J_p around ref[q]
    for (int q = 2; q < p; ++q) {
        // forward chain ref[q] -> ... -> ref[p] must land in J_p
        double probe = ref[q];
        std::vector<double> chain = {probe};
        for (int k = 0; k < p - q; ++k) {
            probe = h_ext(sol, probe);
            chain.push_back(probe);
        }
        if (probe < out.J[p - 1].lo - 1e-9 || probe > out.J[p - 1].hi + 1e-9)
            fail(errc::geometry, "return orbit misses J_p");
        interval K = out.J[p - 1];
        for (int k = p - q - 1; k >= 0; --k) {
            bool left = chain[k] < x0;
            double lo_lim = out.b0_left, hi_lim = out.b0;
            double a = invert_side(sol, K.lo, left, lo_lim, hi_lim);
            double b = invert_side(sol, K.hi, left, lo_lim, hi_lim);
            K = interval{std::min(a, b), std::max(a, b)};
            if (chain[k] < K.lo - 1e-9 || chain[k] > K.hi + 1e-9)
                fail(errc::geometry, "orbit point escaped its pullback interval");
        }
        out.J[q - 1] = K;
    }

    // R' between the intervals and b0
    double sup_ends = 1.0;
    for (const interval& j : out.J) sup_ends = std::max(sup_ends, j.hi);
    if (!(sup_ends < out.b0)) fail(errc::geometry, "J intervals reach past b0");
    out.Rprime = 0.5 * (sup_ends + out.b0);

    // shrunk system
    out.Jcal.assign(p, interval{});
    out.Jcal[0] = interval{0.0, out.Rprime / tau};
    {
        // preimage of Jcal_1 by H inside J_p: two-sided around x0
        double target = out.Rprime / tau;
        double a = invert_side(sol, target, true, out.J[p - 1].lo, out.J[p - 1].hi);
        double b = invert_side(sol, target, false, out.J[p - 1].lo, out.J[p - 1].hi);
        out.Jcal[p - 1] = interval{std::min(a, b), std::max(a, b)};
    }
    for (int q = 2; q < p; ++q) {
        interval K = out.Jcal[p - 1];
        std::vector<double> chain = {ref[q]};
        for (int k = 0; k < p - q; ++k) chain.push_back(h_ext(sol, chain.back()));
        for (int k = p - q - 1; k >= 0; --k) {
            bool left = chain[k] < x0;
            double a = invert_side(sol, K.lo, left, out.b0_left, out.b0);
            double b = invert_side(sol, K.hi, left, out.b0_left, out.b0);
            K = interval{std::min(a, b), std::max(a, b)};
        }
        out.Jcal[q - 1] = K;
    }

    // the shrunk intervals sit inside their parents, inside (0, R'), and are
    // pairwise disjoint
    const double tol = 1e-9;
    for (int q = 0; q < p; ++q) {
        if (!out.J[q].contains(out.Jcal[q], tol))
            fail(errc::geometry, "shrunk interval escapes its parent");
        if (out.Jcal[q].lo < -tol || out.Jcal[q].hi > out.Rprime + tol)
            fail(errc::geometry, "shrunk interval escapes (0, R')");
    }
    for (int a = 0; a < p; ++a)
        for (int b = a + 1; b < p; ++b)
            if (out.Jcal[a].lo < out.Jcal[b].hi - tol && out.Jcal[b].lo < out.Jcal[a].hi - tol)
                fail(errc::geometry, "shrunk intervals overlap");
    return out;
}

} // namespace renorm
