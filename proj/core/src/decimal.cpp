#include "renorm/decimal.hpp"

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <cstdlib>
#include <vector>

#include "renorm/errors.hpp"

namespace renorm {
namespace {

// little-endian base-1e9 unsigned bignum; sizes stay ~O(100) limbs
using bigu = std::vector<uint32_t>;
constexpr uint32_t kBase = 1000000000u;

void trim(bigu& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

bigu from_u64(uint64_t v) {
    bigu a;
    while (v) {
        a.push_back(uint32_t(v % kBase));
        v /= kBase;
    }
    return a;
}

void mul_small(bigu& a, uint32_t m) {
    uint64_t carry = 0;
    for (auto& limb : a) {
        uint64_t cur = uint64_t(limb) * m + carry;
        limb = uint32_t(cur % kBase);
        carry = cur / kBase;
    }
    while (carry) {
        a.push_back(uint32_t(carry % kBase));
        carry /= kBase;
    }
}

void mul_pow2(bigu& a, int k) {
    while (k >= 20) {
        mul_small(a, 1u << 20);
        k -= 20;
    }
    if (k > 0) mul_small(a, 1u << k);
}

void mul_pow5(bigu& a, int k) {
    while (k >= 12) {
        mul_small(a, 244140625u); // 5^12
        k -= 12;
    }
    static const uint32_t p5[12] = {1,      5,      25,      125,     625,
                                    3125,   15625,  78125,   390625,  1953125,
                                    9765625, 48828125};
    if (k > 0) mul_small(a, p5[k]);
}

void mul_pow10(bigu& a, int k) {
    mul_pow2(a, k);
    mul_pow5(a, k);
}

int cmp(const bigu& a, const bigu& b) {
    if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
    for (size_t i = a.size(); i-- > 0;) {
        if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
    }
    return 0;
}

void add_into(bigu& a, const bigu& b) {
    if (a.size() < b.size()) a.resize(b.size(), 0);
    uint64_t carry = 0;
    for (size_t i = 0; i < a.size(); ++i) {
        uint64_t cur = uint64_t(a[i]) + (i < b.size() ? b[i] : 0) + carry;
        a[i] = uint32_t(cur % kBase);
        carry = cur / kBase;
    }
    if (carry) a.push_back(uint32_t(carry));
}

// a -= b, requires a >= b
void sub_into(bigu& a, const bigu& b) {
    int64_t borrow = 0;
    for (size_t i = 0; i < a.size(); ++i) {
        int64_t cur = int64_t(a[i]) - borrow - (i < b.size() ? int64_t(b[i]) : 0);
        if (cur < 0) {
            cur += kBase;
            borrow = 1;
        } else {
            borrow = 0;
        }
        a[i] = uint32_t(cur);
    }
    trim(a);
}

std::string digits_of(const bigu& a) {
    if (a.empty()) return "0";
    std::string s = std::to_string(a.back());
    char buf[16];
    for (size_t i = a.size() - 1; i-- > 0;) {
        std::snprintf(buf, sizeof(buf), "%09u", a[i]);
        s += buf;
    }
    return s;
}

// signed value N * 10^(-scale)
struct decval {
    bool neg = false;
    bigu mag;
    int scale = 0;
};

std::string render(const decval& v) {
    bigu m = v.mag;
    trim(m);
    if (m.empty()) return "0";
    std::string d = digits_of(m);
    std::string out = v.neg ? "-" : "";
    if (v.scale <= 0) {
        out += d;
        for (int i = 0; i < -v.scale; ++i) out += '0';
        return out;
    }
    if (int(d.size()) <= v.scale) {
        out += "0.";
        out += std::string(v.scale - d.size(), '0');
        out += d;
    } else {
        out += d.substr(0, d.size() - v.scale);
        out += '.';
        out += d.substr(d.size() - v.scale);
    }
    while (out.back() == '0') out.pop_back();
    if (out.back() == '.') out.pop_back();
    return out;
}

// exact (mantissa, exponent) with x = m * 2^e, m a 53-bit signed integer
void split_double(double x, int64_t& m, int& e) {
    int ee = 0;
    double f = std::frexp(x, &ee);
    m = int64_t(f * 9007199254740992.0); // f * 2^53 is exactly integral
    e = ee - 53;
}

decval decval_of_scaled(int64_t m, int e) {
    decval v;
    v.neg = m < 0;
    v.mag = from_u64(uint64_t(v.neg ? -m : m));
    if (e >= 0) {
        mul_pow2(v.mag, e);
        v.scale = 0;
    } else {
        mul_pow5(v.mag, -e);
        v.scale = -e;
    }
    return v;
}

decval signed_sum(decval a, decval b) {
    int s = std::max(a.scale, b.scale);
    mul_pow10(a.mag, s - a.scale);
    mul_pow10(b.mag, s - b.scale);
    decval r;
    r.scale = s;
    if (a.neg == b.neg) {
        r.neg = a.neg;
        r.mag = a.mag;
        add_into(r.mag, b.mag);
    } else {
        int c = cmp(a.mag, b.mag);
        if (c == 0) return r; // zero
        if (c > 0) {
            r.neg = a.neg;
            r.mag = a.mag;
            sub_into(r.mag, b.mag);
        } else {
            r.neg = b.neg;
            r.mag = b.mag;
            sub_into(r.mag, a.mag);
        }
    }
    return r;
}

decval parse_decimal(const std::string& s) {
    decval v;
    size_t i = 0;
    bool any = false;
    int exp10 = 0;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
        v.neg = s[i] == '-';
        ++i;
    }
    bool after_point = false;
    for (; i < s.size(); ++i) {
        char c = s[i];
        if (c == '.') {
            if (after_point) fail(errc::io, "malformed decimal: " + s);
            after_point = true;
        } else if (c >= '0' && c <= '9') {
            mul_small(v.mag, 10);
            if (c != '0') {
                bigu d = from_u64(uint64_t(c - '0'));
                add_into(v.mag, d);
            }
            if (after_point) ++v.scale;
            any = true;
        } else if (c == 'e' || c == 'E') {
            exp10 = std::atoi(s.c_str() + i + 1);
            break;
        } else {
            fail(errc::io, "malformed decimal: " + s);
        }
    }
    if (!any) fail(errc::io, "malformed decimal: " + s);
    if (exp10 > 0) {
        if (v.scale >= exp10)
            v.scale -= exp10;
        else {
            mul_pow10(v.mag, exp10 - v.scale);
            v.scale = 0;
        }
    } else if (exp10 < 0) {
        v.scale += -exp10;
    }
    trim(v.mag);
    return v;
}

} // namespace

std::string exact_decimal(double x) {
    if (!std::isfinite(x)) fail(errc::value, "non-finite value has no decimal form");
    if (x == 0.0) return "0";
    int64_t m;
    int e;
    split_double(x, m, e);
    return render(decval_of_scaled(m, e));
}

std::string exact_decimal(const dd& x) {
    if (!isfinite(x)) fail(errc::value, "non-finite value has no decimal form");
    if (x.lo == 0.0) return exact_decimal(x.hi);
    int64_t m1, m2;
    int e1, e2;
    split_double(x.hi, m1, e1);
    split_double(x.lo, m2, e2);
    return render(signed_sum(decval_of_scaled(m1, e1), decval_of_scaled(m2, e2)));
}

double double_from_decimal(const std::string& s) {
    char* end = nullptr;
    double v = std::strtod(s.c_str(), &end);
    if (end == s.c_str()) fail(errc::io, "malformed decimal: " + s);
    return v;
}

dd dd_from_decimal(const std::string& s) {
    double d0 = double_from_decimal(s);
    if (!std::isfinite(d0)) fail(errc::io, "decimal out of double range: " + s);
    if (d0 == 0.0 && s.find_first_of("123456789") == std::string::npos) return dd(0.0);
    decval input = parse_decimal(s);
    decval head = parse_decimal(exact_decimal(d0));
    head.neg = !head.neg;
    decval rem = signed_sum(input, head);
    double d1 = rem.mag.empty() ? 0.0 : double_from_decimal(render(rem));
    double err;
    double hi = detail::two_sum(d0, d1, err);
    return dd(hi, err);
}

} // namespace renorm
