#pragma once

#include <vector>

#include "renorm/errors.hpp"
#include "renorm/scalar.hpp"

namespace renorm {

// Dense LU with partial pivoting, generic over the scalar.  Systems here are
// small (collocation Jacobians, least-squares normal equations).
template <class R>
std::vector<R> solve_dense(std::vector<std::vector<R>> a, std::vector<R> b) {
    int n = int(b.size());
    for (int col = 0; col < n; ++col) {
        int piv = col;
        double best = std::abs(to_double(a[col][col]));
        for (int r = col + 1; r < n; ++r) {
            double v = std::abs(to_double(a[r][col]));
            if (v > best) {
                best = v;
                piv = r;
            }
        }
        if (best == 0.0) fail(errc::numeric, "singular linear system");
        if (piv != col) {
            std::swap(a[piv], a[col]);
            std::swap(b[piv], b[col]);
        }
        for (int r = col + 1; r < n; ++r) {
            R f = a[r][col] / a[col][col];
            if (to_double(f) == 0.0) continue;
            for (int c = col; c < n; ++c) a[r][c] -= f * a[col][c];
            b[r] -= f * b[col];
        }
    }
    std::vector<R> x(n, R(0));
    for (int r = n - 1; r >= 0; --r) {
        R acc = b[r];
        for (int c = r + 1; c < n; ++c) acc -= a[r][c] * x[c];
        x[r] = acc / a[r][r];
    }
    return x;
}

} // namespace renorm
