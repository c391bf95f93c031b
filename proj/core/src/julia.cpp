#include "renorm/julia.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <thread>

namespace renorm {
namespace {

double sampled_sup_fprime(const flat_exp_map& m, cplx center, double r) {
    double sup = 0;
    for (int i = 0; i < 64; ++i) {
        double th = 6.283185307179586 * double(i) / 64.0;
        cplx z = center + r * cplx(std::cos(th), std::sin(th));
        sup = std::max(sup, std::abs(flat_exp_derivative(m, z)));
    }
    return sup;
}

} // namespace

std::vector<cplx> preimage_tree(const flat_exp_map& m, int depth, int branch_k) {
    std::vector<int> ks;
    for (int k = -branch_k; k <= branch_k; ++k) ks.push_back(k);
    std::vector<cplx> frontier = {cplx(m.a, 0.0)};
    std::vector<cplx> tree = frontier;
    for (int d = 0; d < depth; ++d) {
        std::vector<cplx> next;
        next.reserve(frontier.size() * ks.size() * 2);
        for (cplx v : frontier) {
            if (v == 0.0) continue;
            for (int k : ks) {
                cplx w = std::log(v) + cplx(0.0, 6.283185307179586476925286766559 * k);
                if (std::abs(w) < 1e-14) continue;
                cplx s = std::sqrt(-m.c / w);
                for (cplx cand : {m.a + s, m.a - s}) {
                    if (std::abs(flat_exp_eval(m, cand) - v) >
                        1e-10 * std::max(1.0, std::abs(v)))
                        fail(errc::numeric, "preimage verification failed");
                    next.push_back(cand);
                }
            }
        }
        tree.insert(tree.end(), next.begin(), next.end());
        frontier = std::move(next);
    }
    return tree;
}

classifier make_classifier(const flat_exp_map& m, int target_depth, int branch_k) {
    classifier ctx;
    ctx.map = m;
    ctx.fixed = find_fixed_points(m);
    double rmax = 0.2 * std::abs(1.0 - ctx.fixed.z0);
    cplx z0(ctx.fixed.z0, 0.0);
    // largest radius <= rmax whose sampled boundary keeps |f'| <= 0.9
    if (sampled_sup_fprime(m, z0, rmax) <= 0.9) {
        ctx.disk_radius = rmax;
    } else {
        double lo = 0, hi = rmax;
        for (int i = 0; i < 60; ++i) {
            double mid = 0.5 * (lo + hi);
            if (sampled_sup_fprime(m, z0, mid) <= 0.9)
                lo = mid;
            else
                hi = mid;
        }
        ctx.disk_radius = lo;
    }
    if (!(ctx.disk_radius > 0)) fail(errc::structure, "no contraction disk around z0");
    ctx.julia_targets = preimage_tree(m, target_depth, branch_k);
    std::sort(ctx.julia_targets.begin(), ctx.julia_targets.end(),
              [](cplx a, cplx b) { return a.real() < b.real(); });
    return ctx;
}

namespace {

bool near_julia_target(const classifier& ctx, cplx z, double tol) {
    auto lo = std::lower_bound(ctx.julia_targets.begin(), ctx.julia_targets.end(),
                               z.real() - tol,
                               [](cplx a, double b) { return a.real() < b; });
    for (auto it = lo; it != ctx.julia_targets.end() && it->real() <= z.real() + tol; ++it)
        if (std::abs(*it - z) <= tol) return true;
    return false;
}

} // namespace

classification classify_point(const classifier& ctx, cplx z, int budget) {
    const cplx z0(ctx.fixed.z0, 0.0);
    classification out;
    for (int k = 0; k <= budget; ++k) {
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
            out.numeric_error = true;
            out.tag = cell_tag::unknown;
            return out;
        }
        if (std::abs(z - z0) < ctx.disk_radius) {
            out.tag = cell_tag::fatou;
            out.steps = k;
            return out;
        }
        if (near_julia_target(ctx, z, 1e-14)) {
            out.tag = cell_tag::julia;
            return out;
        }
        if (k == budget) break;
        if (z.imag() == 0.0 && z.real() == ctx.map.a) {
            // the continuous real extension maps the singular point to 0
            z = cplx(0.0, 0.0);
        } else {
            z = flat_exp_eval(ctx.map, z);
        }
    }
    out.tag = cell_tag::unknown;
    return out;
}

julia_raster render_julia(const classifier& ctx, const viewport& vp, int width, int height,
                          int budget, int threads) {
    if (width <= 0 || height <= 0) fail(errc::value, "empty raster");
    julia_raster r;
    r.vp = vp;
    r.width = width;
    r.height = height;
    r.budget = budget;
    r.gray.assign(size_t(width) * height, 0);
    r.steps.assign(size_t(width) * height, -2);

    double dre = (vp.re_hi - vp.re_lo) / width;
    double dim = (vp.im_hi - vp.im_lo) / height;
    double rec = 0.5 * (vp.re_lo + vp.re_hi);
    double imc = 0.5 * (vp.im_lo + vp.im_hi);

    auto work = [&](int row_begin, int row_end) {
        for (int i = row_begin; i < row_end; ++i) {
            // centered pixel formula keeps conjugate rows bit-exact mirrors
            double y = imc + (i + 0.5 - 0.5 * height) * dim;
            for (int j = 0; j < width; ++j) {
                double x = rec + (j + 0.5 - 0.5 * width) * dre;
                classification c = classify_point(ctx, cplx(x, y), budget);
                size_t idx = size_t(i) * width + j;
                if (c.numeric_error) {
                    r.gray[idx] = 128;
                    r.steps[idx] = -3;
                } else if (c.tag == cell_tag::fatou) {
                    r.gray[idx] = uint8_t(255 - std::min(c.steps, 254));
                    r.steps[idx] = c.steps;
                } else if (c.tag == cell_tag::julia) {
                    r.gray[idx] = 0;
                    r.steps[idx] = -1;
                } else {
                    r.gray[idx] = 128;
                    r.steps[idx] = -2;
                }
            }
        }
    };

    int nthreads = threads > 0 ? threads : int(std::thread::hardware_concurrency());
    if (nthreads <= 1 || height < 8) {
        work(0, height);
    } else {
        std::vector<std::thread> pool;
        int chunk = (height + nthreads - 1) / nthreads;
        for (int t = 0; t < nthreads; ++t) {
            int b = t * chunk, e = std::min(height, b + chunk);
            if (b >= e) break;
            pool.emplace_back(work, b, e);
        }
        for (auto& th : pool) th.join();
    }

    for (int32_t s : r.steps) {
        if (s >= 0)
            ++r.n_fatou;
        else if (s == -1)
            ++r.n_julia;
        else if (s == -2)
            ++r.n_unknown;
        else
            ++r.n_numeric;
    }
    return r;
}

void write_pgm(const julia_raster& r, const std::string& path) {
    std::FILE* f = std::fopen(path.c_str(), "wb");
    if (!f) fail(errc::io, "cannot open " + path);
    std::fprintf(f, "P5\n%d %d\n255\n", r.width, r.height);
    std::fwrite(r.gray.data(), 1, r.gray.size(), f);
    std::fclose(f);
}

density_stats preimage_density_probe(const classifier& ctx, int depth, int samples,
                                     int budget, uint64_t seed) {
    if (depth < 1 || depth > 4) fail(errc::value, "probe depth must be in 1..4");
    if (samples < 100) fail(errc::value, "need at least 100 samples");

    std::vector<cplx> tree = preimage_tree(ctx.map, depth, 8);

    // near-Julia samples: random backward orbits (inverse iteration contracts
    // toward the Julia set), filtered by not being classified deep Fatou
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> kdist(-6, 6);
    std::uniform_real_distribution<double> udist(0.1, 1.9);
    std::vector<cplx> pts;
    while (int(pts.size()) < samples) {
        cplx z(udist(rng), udist(rng) - 1.0);
        bool ok = true;
        for (int i = 0; i < 14; ++i) {
            if (z == 0.0) {
                ok = false;
                break;
            }
            cplx w = std::log(z) + cplx(0.0, 6.283185307179586 * kdist(rng));
            if (std::abs(w) < 1e-12) {
                ok = false;
                break;
            }
            cplx s = std::sqrt(-ctx.map.c / w);
            z = (rng() & 1) ? ctx.map.a + s : ctx.map.a - s;
        }
        if (!ok) continue;
        classification c = classify_point(ctx, z, budget);
        if (c.tag == cell_tag::fatou && c.steps > 3) continue; // drifted off the boundary
        pts.push_back(z);
    }

    std::vector<double> dist;
    dist.reserve(pts.size());
    for (cplx z : pts) {
        double best = 1e300;
        for (cplx w : tree) best = std::min(best, std::abs(z - w));
        dist.push_back(best);
    }
    std::sort(dist.begin(), dist.end());
    density_stats s;
    s.depth = depth;
    s.sample_count = dist.size();
    s.max_dist = dist.back();
    s.median_dist = dist[dist.size() / 2];
    return s;
}

} // namespace renorm
