#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <limits>
#include <stdexcept>
#include <string>

namespace uconv {

/// Thrown when an operation's stated precondition is violated. Maps to CLI exit 2.
struct precondition_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Thrown when a search or derivation exceeds its cap and the operation
/// treats that as failure (some operations report caps as data instead).
/// Maps to CLI exit 3.
struct cap_exceeded_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// I/O and parse failures. Maps to CLI exit 4.
struct io_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Extended real: a finite double or +inf. -inf and NaN are rejected at
/// construction; on finite supports every proper function is bounded below,
/// so -inf never arises.
struct ExtReal {
    double v = 0.0;

    ExtReal() = default;
    ExtReal(double x) : v(x) {
        if (std::isnan(x) || x == -kInf)
            throw precondition_error("ExtReal: value must be finite or +inf");
    }

    static ExtReal inf() { ExtReal e; e.v = kInf; return e; }
    bool finite() const { return std::isfinite(v); }
    bool is_inf() const { return v == kInf; }

    friend ExtReal operator+(ExtReal a, ExtReal b) { return ExtReal(a.v + b.v); }
    friend ExtReal operator*(double c, ExtReal a) {
        if (a.is_inf()) {
            if (c <= 0.0) throw precondition_error("ExtReal: c*inf needs c > 0");
            return ExtReal::inf();
        }
        return ExtReal(c * a.v);
    }
    friend bool operator==(ExtReal a, ExtReal b) { return a.v == b.v; }
    friend bool operator<(ExtReal a, ExtReal b) { return a.v < b.v; }
};

inline ExtReal min(ExtReal a, ExtReal b) { return a.v < b.v ? a : b; }
inline ExtReal avg(ExtReal a, ExtReal b) {
    if (a.is_inf() || b.is_inf()) return ExtReal::inf();
    return ExtReal(0.5 * (a.v + b.v));
}

/// Point in R^d, d <= 3. Unused coordinates stay 0 so exact comparison and
/// hashing work uniformly.
struct Vec {
    std::array<double, 3> c{0.0, 0.0, 0.0};
    int dim = 1;

    Vec() = default;
    Vec(double x) : c{x, 0, 0}, dim(1) {}
    Vec(double x, double y) : c{x, y, 0}, dim(2) {}
    Vec(double x, double y, double z) : c{x, y, z}, dim(3) {}

    double operator[](int i) const { return c[static_cast<size_t>(i)]; }
    double& operator[](int i) { return c[static_cast<size_t>(i)]; }

    friend Vec operator+(const Vec& a, const Vec& b) {
        Vec r = a;
        for (int i = 0; i < a.dim; ++i) r[i] += b[i];
        return r;
    }
    friend Vec operator-(const Vec& a, const Vec& b) {
        Vec r = a;
        for (int i = 0; i < a.dim; ++i) r[i] -= b[i];
        return r;
    }
    friend Vec operator*(double t, const Vec& a) {
        Vec r = a;
        for (int i = 0; i < a.dim; ++i) r[i] *= t;
        return r;
    }
    friend Vec operator-(const Vec& a) { return -1.0 * a; }
    friend bool operator==(const Vec& a, const Vec& b) {
        if (a.dim != b.dim) return false;
        for (int i = 0; i < a.dim; ++i)
            if (a[i] != b[i]) return false;
        return true;
    }
};

inline Vec midpoint(const Vec& a, const Vec& b) {
    Vec r = a;
    for (int i = 0; i < a.dim; ++i) r[i] = 0.5 * (a[i] + b[i]);
    return r;
}

inline double dot(const Vec& a, const Vec& b) {
    double s = 0.0;
    for (int i = 0; i < a.dim; ++i) s += a[i] * b[i];
    return s;
}

inline double norm2(const Vec& a) { return std::sqrt(dot(a, a)); }

/// Bit-exact hash key for point lookup tables.
struct VecKey {
    std::array<std::uint64_t, 3> bits{0, 0, 0};
    explicit VecKey(const Vec& v) {
        for (int i = 0; i < 3; ++i) {
            double x = v.c[static_cast<size_t>(i)] == 0.0 ? 0.0 : v.c[static_cast<size_t>(i)];
            std::memcpy(&bits[static_cast<size_t>(i)], &x, sizeof(double));
        }
    }
    friend bool operator==(const VecKey& a, const VecKey& b) { return a.bits == b.bits; }
};

struct VecKeyHash {
    size_t operator()(const VecKey& k) const {
        std::uint64_t h = 1469598103934665603ull;
        for (auto b : k.bits) {
            h ^= b;
            h *= 1099511628211ull;
        }
        return static_cast<size_t>(h);
    }
};

inline std::string fmt_vec(const Vec& v) {
    std::string s = "(";
    for (int i = 0; i < v.dim; ++i) {
        if (i) s += ", ";
        s += std::to_string(v[i]);
    }
    return s + ")";
}

}  // namespace uconv
