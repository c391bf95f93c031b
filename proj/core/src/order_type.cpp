#include "renorm/order_type.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>

namespace renorm {

std::string order_type::str() const {
    std::string s = "[";
    for (size_t i = 0; i < perm.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(perm[i]);
    }
    return s + "]";
}

order_type canonicalize(std::vector<int> perm) {
    int p = int(perm.size());
    if (p < 2) fail(errc::value, "order type needs period >= 2");
    std::vector<int> sorted = perm;
    std::sort(sorted.begin(), sorted.end());
    for (int i = 0; i < p; ++i)
        if (sorted[i] != i + 1) fail(errc::value, "not a permutation of 1..p");
    if (perm[1] < perm[0])
        for (int& v : perm) v = p + 1 - v;
    return order_type{std::move(perm)};
}

order_type order_type_of(const std::vector<double>& points) {
    int p = int(points.size());
    if (p < 2) fail(errc::value, "need at least two points");
    double lo = *std::min_element(points.begin(), points.end());
    double hi = *std::max_element(points.begin(), points.end());
    double tol = 1e-12 * std::max(1.0, hi - lo);
    std::vector<int> idx(p);
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(),
              [&](int a, int b) { return points[a] < points[b]; });
    for (int i = 0; i + 1 < p; ++i)
        if (points[idx[i + 1]] - points[idx[i]] <= tol)
            fail(errc::degeneracy, "coincident orbit points");
    std::vector<int> perm(p);
    for (int r = 0; r < p; ++r) perm[idx[r]] = r + 1;
    return canonicalize(std::move(perm));
}

order_type period_doubling() { return order_type{{1, 2}}; }

order_type parse_order_type(const std::string& text) {
    std::string t;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) t += c;
    if (t == "pd") return period_doubling();
    if (t.size() < 2 || t.front() != '[' || t.back() != ']')
        fail(errc::value, "order type must be \"pd\" or e.g. [2,3,1]");
    std::vector<int> perm;
    size_t i = 1;
    while (i < t.size() - 1) {
        size_t j = t.find(',', i);
        if (j == std::string::npos || j > t.size() - 1) j = t.size() - 1;
        try {
            perm.push_back(std::stoi(t.substr(i, j - i)));
        } catch (...) {
            fail(errc::value, "bad order type entry in " + text);
        }
        i = j + 1;
    }
    return canonicalize(std::move(perm));
}

} // namespace renorm
