#pragma once

#include <optional>
#include <string>
#include <vector>

#include "renorm/linsolve.hpp"
#include "renorm/order_type.hpp"
#include "renorm/quadratic.hpp"
#include "renorm/unimodal.hpp"

namespace renorm {

// One solved renormalization fixed point tau H^p(x) = H(tau x).
template <class R>
struct fixed_point_solution {
    unimodal_map<R> map;      // E on [0,1], ell, x0
    R alpha{};                // even-form scaling, tau = |alpha|^ell
    R tau{};
    R residual{};             // final sup-norm collocation defect
    int newton_iterations = 0;
    order_type type;
};

using solution_d = fixed_point_solution<double>;
using solution_dd = fixed_point_solution<dd>;

inline solution_d to_double_solution(const solution_dd& s) {
    solution_d out;
    out.map.E = to_double_series(s.map.E);
    out.map.ell = to_double(s.map.ell);
    out.map.x0 = to_double(s.map.x0);
    out.map.trust_rho = s.map.trust_rho;
    out.alpha = to_double(s.alpha);
    out.tau = to_double(s.tau);
    out.residual = to_double(s.residual);
    out.newton_iterations = s.newton_iterations;
    out.type = s.type;
    return out;
}

// Real margin around the series domain on which direct evaluation keeps the
// rounding plateau of the trailing coefficients from being amplified: the
// Bernstein growth rho^degree stays below ~e^8.
template <class R>
double safe_eval_margin(const unimodal_map<R>& m) {
    double rho_trail = std::exp(8.0 / std::max(1, m.E.degree()));
    double rho = std::min(m.trust_rho, rho_trail);
    double half = 0.5 * (to_double(m.E.hi) - to_double(m.E.lo));
    return (0.5 * (rho + 1.0 / rho) - 1.0) * half;
}

// H extended along the real line by the functional equation itself:
// H(x) = tau * H^p(x/tau) wherever the series window ends.
template <class R>
R eval_H_ext(const unimodal_map<R>& m, const R& tau, int p, const R& x, int depth = 0) {
    if (depth > 64) fail(errc::escape, "functional-equation extension recursed too deep");
    double w = safe_eval_margin(m);
    double xd = to_double(x);
    if (xd >= to_double(m.E.lo) - w && xd <= to_double(m.E.hi) + w)
        return pow_abs(eval_unchecked(m.E, x), m.ell);
    R y = x / tau;
    for (int i = 0; i < p; ++i) y = eval_H_ext(m, tau, p, y, depth + 1);
    return tau * y;
}

// Orbit x0, H(x0), ..., H^{p-1}(x0); the first point is critical.
template <class R>
std::vector<R> critical_orbit(const unimodal_map<R>& m, int p) {
    std::vector<R> pts;
    pts.reserve(p);
    R x = m.x0;
    for (int i = 0; i < p; ++i) {
        pts.push_back(x);
        if (i + 1 < p) {
            try {
                x = eval_H(m, x);
            } catch (const error&) {
                fail(errc::escape, "critical orbit left the domain");
            }
        }
    }
    return pts;
}

template <class R>
order_type critical_orbit_type(const unimodal_map<R>& m, int p) {
    if (p < 2) fail(errc::value, "period must be >= 2");
    std::vector<R> orbit = critical_orbit(m, p);
    std::vector<double> pts(orbit.size());
    for (size_t i = 0; i < orbit.size(); ++i) pts[i] = to_double(orbit[i]);
    return order_type_of(pts);
}

// Rescaled p-fold return map in the E-coordinate:
//   E'(u) = alpha E(H^{p-1}(u/tau)),  alpha = 1/E(H^{p-1}(0)),  tau = |alpha|^ell.
template <class R>
unimodal_map<R> renormalize(const unimodal_map<R>& m, const order_type& t, R* alpha_out = nullptr) {
    int p = t.period();
    if (critical_orbit_type(m, p) != t)
        fail(errc::combinatorics, "map does not realize order type " + t.str());

    R end = R(0); // H^{p-1}(0)
    {
        R y = R(0);
        for (int i = 0; i < p - 1; ++i) y = eval_H(m, y);
        end = y;
    }
    R denom = eval_series_trusted(m, end);
    if (std::abs(to_double(denom)) < 1e-8)
        fail(errc::degeneracy,
             "renormalization scale degenerates (critical orbit nearly superstable)");
    R alpha = R(1) / denom;
    R tau = pow_abs(alpha, m.ell);
    if (!(to_double(tau) > 1.0)) fail(errc::escape, "rescaling factor tau <= 1");

    int deg = m.E.degree();
    std::vector<R> nodes = cheb_nodes(R(0), R(1), deg);
    std::vector<R> vals(nodes.size());
    for (size_t j = 0; j < nodes.size(); ++j) {
        R y = nodes[j] / tau;
        for (int i = 0; i < p - 1; ++i) y = eval_H(m, y);
        vals[j] = alpha * eval_series_trusted(m, y);
    }
    series<R> Enew = fit_at_nodes(R(0), R(1), vals);
    if (alpha_out) *alpha_out = alpha;
    try {
        return make_unimodal(Enew, m.ell, m.trust_rho);
    } catch (const error& e) {
        fail(errc::escape, std::string("renormalized map invalid: ") + e.what());
    }
}

// Independent defect: sup over a grid of |tau H^p(x) - H(tau x)| on [0, 1/tau].
template <class R>
R residual_sup(const fixed_point_solution<R>& sol, int grid_size) {
    if (grid_size < 64) fail(errc::value, "grid must have at least 64 points");
    int p = sol.type.period();
    R best(0);
    for (int i = 0; i <= grid_size; ++i) {
        R x = R(double(i) / grid_size) / sol.tau;
        R y = x;
        for (int k = 0; k < p; ++k) y = eval_H(sol.map, y);
        R d = abs(sol.tau * y - eval_H(sol.map, sol.tau * x));
        if (d > best) best = d;
    }
    return best;
}

namespace detail_solver {

template <class R>
struct colloc_problem {
    R ell;
    int p;
    int degree;

    // The discretized system has an exact degenerate root E == 1, alpha == 1;
    // genuine branches keep |alpha| > 1, so steps entering that zone are
    // rejected during damping.
    bool plausible(const std::vector<R>& v) const {
        return std::abs(to_double(v.back())) > 1.0;
    }

    // unknowns: coefficients of E on [0,1] then alpha
    std::vector<R> operator()(const std::vector<R>& v) const {
        series<R> E;
        E.lo = R(0);
        E.hi = R(1);
        E.coeffs.assign(v.begin(), v.end() - 1);
        R alpha = v.back();
        R tau = pow_abs(alpha, ell);
        std::vector<R> F(v.size());
        std::vector<R> nodes = cheb_nodes(R(0), R(1) / tau, degree);
        for (int j = 0; j <= degree; ++j) {
            R y = nodes[j];
            for (int i = 0; i < p - 1; ++i)
                y = pow_abs(eval_unchecked(E, y), ell);
            F[j] = alpha * eval_unchecked(E, y) - eval_unchecked(E, tau * nodes[j]);
        }
        F[degree + 1] = eval_unchecked(E, R(0)) - R(1);
        return F;
    }
};

template <class R>
double sup_norm(const std::vector<R>& v) {
    double m = 0;
    for (const R& x : v) m = std::max(m, std::abs(to_double(x)));
    return m;
}

// Damped Newton with forward-difference Jacobian (step 1e-7 * scale).
template <class R>
bool newton_solve(const colloc_problem<R>& prob, std::vector<R>& v, double tol,
                  int max_iter, double& final_res, int& iters) {
    const bool trace = std::getenv("RENORM_TRACE") != nullptr;
    std::vector<R> F = prob(v);
    double res = sup_norm(F);
    if (trace) std::fprintf(stderr, "newton ell=%g deg=%d res0=%.3e\n", to_double(prob.ell), prob.degree, res);
    iters = 0;
    for (int it = 0; it < max_iter; ++it) {
        if (!std::isfinite(res)) break;
        if (res <= tol) {
            final_res = res;
            iters = it;
            return true;
        }
        int n = int(v.size());
        std::vector<std::vector<R>> J(n, std::vector<R>(n));
        for (int c = 0; c < n; ++c) {
            R h = R(1e-7 * std::max(1.0, std::abs(to_double(v[c]))));
            std::vector<R> vp = v;
            vp[c] += h;
            std::vector<R> Fp = prob(vp);
            for (int r = 0; r < n; ++r) J[r][c] = (Fp[r] - F[r]) / h;
        }
        std::vector<R> rhs(n);
        for (int r = 0; r < n; ++r) rhs[r] = -F[r];
        std::vector<R> delta;
        try {
            delta = solve_dense(J, rhs);
        } catch (const error&) {
            break;
        }
        double s = 1.0;
        bool accepted = false;
        for (int half = 0; half < 20; ++half) {
            std::vector<R> vn = v;
            for (int c = 0; c < n; ++c) vn[c] += R(s) * delta[c];
            if (!prob.plausible(vn)) {
                s *= 0.5;
                continue;
            }
            std::vector<R> Fn;
            try {
                Fn = prob(vn);
            } catch (const error&) {
                s *= 0.5;
                continue;
            }
            double rn = sup_norm(Fn);
            if (std::isfinite(rn) && rn < res) {
                v = std::move(vn);
                F = std::move(Fn);
                res = rn;
                accepted = true;
                break;
            }
            s *= 0.5;
        }
        if (trace)
            std::fprintf(stderr, "  it=%d res=%.3e s=%.2e accepted=%d alpha=%.8f\n", it, res,
                         s, int(accepted), to_double(v.back()));
        if (!accepted) break;
        iters = it + 1;
    }
    final_res = res;
    return res <= tol;
}

} // namespace detail_solver

// Assemble and validate a solution from a converged unknown vector.
template <class R>
fixed_point_solution<R> finish_solution(const std::vector<R>& v, const R& ell,
                                        const order_type& t, double tol, double res,
                                        int iters) {
    series<R> E;
    E.lo = R(0);
    E.hi = R(1);
    E.coeffs.assign(v.begin(), v.end() - 1);
    fixed_point_solution<R> sol;
    sol.map = make_unimodal(E, ell);
    sol.alpha = v.back();
    sol.tau = pow_abs(sol.alpha, ell);
    sol.residual = R(res);
    sol.newton_iterations = iters;
    sol.type = t;

    if (!(std::abs(to_double(sol.alpha)) > 1.0))
        fail(errc::numeric, "scaling |alpha| <= 1");
    if (!(to_double(sol.tau) > 1.0)) fail(errc::numeric, "scaling tau <= 1");
    if (critical_orbit_type(sol.map, t.period()) != t)
        fail(errc::wrong_branch, "solver converged to combinatorics " +
                                     critical_orbit_type(sol.map, t.period()).str() +
                                     " instead of " + t.str());
    // closest return: H^{p-1}(1) = 1/tau
    R y = R(1);
    for (int i = 0; i < t.period() - 1; ++i) y = eval_H(sol.map, y);
    if (std::abs(to_double(y - R(1) / sol.tau)) > 10.0 * std::max(tol, 1e-13))
        fail(errc::numeric, "closest-return identity violated");
    // Epstein-class necessities reject spurious collocation branches:
    // E(1) in (-1,0) and non-positive Schwarzian along the interval
    double e1 = to_double(eval_unchecked(E, R(1)));
    if (!(e1 > -1.0 && e1 < 0.0))
        fail(errc::wrong_branch, "E(1) outside (-1,0)");
    for (int i = 1; i < 32; ++i) {
        R x = R(double(i) / 32.0);
        if (to_double(schwarzian(sol.map.E, x)) > 1e-6)
            fail(errc::wrong_branch, "positive Schwarzian: not an Epstein-class branch");
    }
    return sol;
}

// Initial guess: the quadratic family at the accumulation of the t-tuning
// cascade, E(y) = 1 - lambda_acc y, alpha = 1/E(H^{p-1}(0)).
template <class R>
std::vector<R> seed_vector(const order_type& t, int degree) {
    std::vector<double> cas = tuning_cascade(t, 4);
    double r = (cas[3] - cas[2]) / (cas[2] - cas[1]);
    double lam = cas[3] + (cas[3] - cas[2]) * r / (1.0 - r);
    double y = 0.0; // H^{p-1}(0) for H = (1 - lam x)^2
    for (int i = 0; i < t.period() - 1; ++i) {
        double e = 1.0 - lam * y;
        y = e * e;
    }
    std::vector<R> v(degree + 2, R(0));
    // Chebyshev coefficients of 1 - lam*y on [0,1]
    v[0] = R(1.0 - 0.5 * lam);
    v[1] = R(-0.5 * lam);
    v.back() = R(1.0 / (1.0 - lam * y));
    return v;
}

// Fallback seeding: push the quadratic-family seed toward the fixed point by
// iterating the operator itself, then hand over to Newton.
template <class R>
fixed_point_solution<R> solve_from_operator_iteration(const order_type& t, int degree,
                                                      double tol) {
    std::vector<R> v0 = seed_vector<R>(t, degree);
    series<R> E;
    E.lo = R(0);
    E.hi = R(1);
    E.coeffs.assign(v0.begin(), v0.end() - 1);
    unimodal_map<R> m = make_unimodal(E, R(2));
    error last(errc::no_convergence, "operator iteration never started");
    for (int k = 0; k < 10; ++k) {
        R alpha{};
        try {
            m = renormalize(m, t, &alpha);
            std::vector<R> v = m.E.coeffs;
            v.push_back(alpha);
            return solve_at(R(2), t, degree, tol, std::move(v));
        } catch (const error& e) {
            last = e;
        }
    }
    throw last;
}

template <class R>
fixed_point_solution<R> solve_at(const R& ell, const order_type& t, int degree, double tol,
                                 std::vector<R> v0) {
    detail_solver::colloc_problem<R> prob{ell, t.period(), degree};
    double res = 0;
    int iters = 0;
    if (!detail_solver::newton_solve(prob, v0, tol, 60, res, iters))
        throw error(errc::no_convergence,
                    "Newton did not converge (residual " + std::to_string(res) + ")", res);
    return finish_solution(v0, ell, t, tol, res, iters);
}

template <class R>
std::vector<R> unknowns_of(const fixed_point_solution<R>& s) {
    std::vector<R> v = s.map.E.coeffs;
    v.push_back(s.alpha);
    return v;
}

// Resample a solution's E onto a different polynomial degree.
template <class R>
std::vector<R> refit_unknowns(const fixed_point_solution<R>& s, int degree) {
    std::vector<R> nodes = cheb_nodes(R(0), R(1), degree);
    std::vector<R> vals(nodes.size());
    for (size_t i = 0; i < nodes.size(); ++i) vals[i] = eval_unchecked(s.map.E, nodes[i]);
    series<R> E = fit_at_nodes(R(0), R(1), vals);
    std::vector<R> v = E.coeffs;
    v.push_back(s.alpha);
    return v;
}

// Geometric continuation in ell from an existing solution, with linear
// coefficient prediction and step shrinking on divergence.
template <class R>
fixed_point_solution<R> continue_solve(fixed_point_solution<R> cur, const R& ell,
                                       int degree, double tol,
                                       std::optional<fixed_point_solution<R>> prev = {}) {
    if (cur.map.E.degree() != degree) {
        std::vector<R> v = refit_unknowns(cur, degree);
        cur = solve_at(cur.map.ell, cur.type, degree, tol, std::move(v));
        prev.reset();
    }
    if (prev && prev->map.E.degree() != degree) prev.reset();
    const order_type t = cur.type;
    double target = to_double(ell);
    double lcur = to_double(cur.map.ell);
    double factor = 2.0;
    const double min_factor = std::pow(2.0, 1.0 / 16.0);
    while (lcur != target) {
        double lnext;
        if (target > lcur)
            lnext = std::min(target, lcur * factor);
        else
            lnext = std::max(target, lcur / factor);

        // first guess: linear prediction along the path (weight clamped, large
        // extrapolations land in alien solution branches); fallback: plain
        // carry-over of the current coefficients
        std::vector<std::vector<R>> guesses;
        if (prev) {
            std::vector<R> v = unknowns_of(cur);
            std::vector<R> vp = unknowns_of(*prev);
            double lprev = to_double(prev->map.ell);
            double w = (lnext - lcur) / (lcur - lprev);
            w = std::clamp(w, -1.0, 1.0);
            for (size_t i = 0; i < v.size(); ++i) v[i] = v[i] + R(w) * (v[i] - vp[i]);
            guesses.push_back(std::move(v));
        }
        guesses.push_back(unknowns_of(cur));

        // The equation has non-principal solution branches; stay on the one
        // continued from ell = 2 by keeping tau inside a growth envelope
        // proportional to the step.
        auto on_branch = [&](double tau_next) {
            double q = tau_next / to_double(cur.tau);
            double r = lnext / lcur;
            double slack = lcur >= 4.0 ? 1.0 : 2.5;
            if (lnext > lcur) return q >= 1.0 - 1e-9 && q <= r * slack;
            return q <= 1.0 + 1e-9 && q >= r * r / slack;
        };

        bool advanced = false;
        for (std::vector<R>& guess : guesses) {
            try {
                fixed_point_solution<R> next = solve_at(lnext == target ? ell : R(lnext), t,
                                                        degree, tol, std::move(guess));
                if (!on_branch(to_double(next.tau)))
                    fail(errc::wrong_branch, "tau left the continuation envelope");
                prev = std::move(cur);
                cur = std::move(next);
                lcur = lnext;
                advanced = true;
                break;
            } catch (const error&) {
            }
        }
        if (!advanced) {
            factor = std::sqrt(factor);
            if (factor < min_factor)
                throw error(errc::no_convergence,
                            "continuation stalled near ell = " + std::to_string(lcur), 0.0);
        }
    }
    return cur;
}

// Newton solve with built-in continuation from ell = 2.
template <class R>
fixed_point_solution<R> solve_fixed_point(const R& ell, const order_type& t, int degree,
                                          double tol,
                                          const fixed_point_solution<R>* init = nullptr) {
    if (degree < 16) fail(errc::value, "degree must be >= 16");
    if (!(to_double(ell) > 1.0)) fail(errc::value, "criticality must exceed 1");
    if (!validate_admissible(t))
        fail(errc::combinatorics, "order type " + t.str() + " is not admissible");

    if (init) return continue_solve(*init, ell, degree, tol);

    fixed_point_solution<R> base;
    try {
        base = solve_at(R(2), t, degree, tol, seed_vector<R>(t, degree));
    } catch (const error&) {
        try {
            std::vector<R> v = seed_vector<R>(t, degree);
            v.back() = -v.back(); // try the opposite scaling sign
            base = solve_at(R(2), t, degree, tol, std::move(v));
        } catch (const error&) {
            base = solve_from_operator_iteration<R>(t, degree, tol);
        }
    }
    if (to_double(ell) == 2.0) return base;
    return continue_solve(std::move(base), ell, degree, tol);
}

} // namespace renorm
