#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "renorm/flatexp.hpp"

namespace renorm {

struct viewport {
    double re_lo = -0.5, re_hi = 1.5;
    double im_lo = -1.0, im_hi = 1.0;
};

enum class cell_tag : uint8_t { unknown = 0, julia = 1, fatou = 2 };

struct classification {
    cell_tag tag = cell_tag::unknown;
    int steps = 0;             // disk-entry time for fatou cells
    bool numeric_error = false;
};

// Shared classification state: the certified-contraction entry disk around
// z0 and the finite preimage set of the singular point used as Julia markers.
struct classifier {
    flat_exp_map map;
    flat_fixed_points fixed;
    double disk_radius = 0;
    std::vector<cplx> julia_targets; // sorted by real part
};

classifier make_classifier(const flat_exp_map& m, int target_depth = 2, int branch_k = 8);

classification classify_point(const classifier& ctx, cplx z, int budget);

struct julia_raster {
    viewport vp;
    int width = 0, height = 0, budget = 0;
    std::vector<uint8_t> gray;   // width*height, row-major, PGM payload
    std::vector<int32_t> steps;  // >=0 fatou steps, -1 julia, -2 unknown, -3 numeric
    size_t n_fatou = 0, n_julia = 0, n_unknown = 0, n_numeric = 0;
    double unknown_fraction() const {
        return double(n_unknown + n_numeric) / double(width * height);
    }
};

julia_raster render_julia(const classifier& ctx, const viewport& vp, int width, int height,
                          int budget, int threads = 0);

void write_pgm(const julia_raster& r, const std::string& path);

// Iterated preimage tree of the singular point, every node verified to map
// back onto its parent.
std::vector<cplx> preimage_tree(const flat_exp_map& m, int depth, int branch_k);

struct density_stats {
    int depth = 0;
    size_t sample_count = 0;
    double max_dist = 0;
    double median_dist = 0;
};

// Distance statistics from near-Julia samples (backward orbits) to the
// depth-limited preimage tree.
density_stats preimage_density_probe(const classifier& ctx, int depth, int samples,
                                     int budget = 2000, uint64_t seed = 20240901);

} // namespace renorm
