#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace bohemian {

using BigInt = mpz_class;
using cplx = std::complex<double>;

inline double to_double(const BigInt& x) { return x.get_d(); }
inline double to_double(std::int64_t x) { return static_cast<double>(x); }

struct ring_error : std::domain_error {
    using std::domain_error::domain_error;
};

struct overflow_error : std::overflow_error {
    using std::overflow_error::overflow_error;
};

/// Quadratic generator of the entry ring: none, i, or a primitive cube
/// root of unity (tau^2 = -tau - 1).
enum class Ring : std::uint8_t { Int = 0, Gauss = 1, Eisenstein = 2 };

inline const char* ring_name(Ring r) {
    switch (r) {
        case Ring::Int: return "INT";
        case Ring::Gauss: return "GAUSS";
        case Ring::Eisenstein: return "EISEN";
    }
    return "?";
}

inline Ring ring_from_name(const std::string& s) {
    if (s == "INT") return Ring::Int;
    if (s == "GAUSS") return Ring::Gauss;
    if (s == "EISEN") return Ring::Eisenstein;
    throw ring_error("unknown ring tag: " + s);
}

/// int64 with overflow-trapping arithmetic. The enumeration sweeps run ring
/// arithmetic in this type once a magnitude preflight has shown the values
/// fit; the traps turn any gap in that reasoning into a loud failure instead
/// of silent wraparound.
struct CheckedI64 {
    std::int64_t v = 0;

    CheckedI64() = default;
    CheckedI64(std::int64_t x) : v(x) {}

    friend CheckedI64 operator+(CheckedI64 l, CheckedI64 r) {
        std::int64_t out;
        if (__builtin_add_overflow(l.v, r.v, &out)) throw overflow_error("int64 add overflow");
        return {out};
    }
    friend CheckedI64 operator-(CheckedI64 l, CheckedI64 r) {
        std::int64_t out;
        if (__builtin_sub_overflow(l.v, r.v, &out)) throw overflow_error("int64 sub overflow");
        return {out};
    }
    friend CheckedI64 operator*(CheckedI64 l, CheckedI64 r) {
        std::int64_t out;
        if (__builtin_mul_overflow(l.v, r.v, &out)) throw overflow_error("int64 mul overflow");
        return {out};
    }
    CheckedI64 operator-() const {
        if (v == INT64_MIN) throw overflow_error("int64 negate overflow");
        return {-v};
    }
    friend bool operator==(CheckedI64 l, CheckedI64 r) { return l.v == r.v; }
    friend auto operator<=>(CheckedI64 l, CheckedI64 r) { return l.v <=> r.v; }
};

inline double to_double(CheckedI64 x) { return static_cast<double>(x.v); }

/// Magnitude-bound scalar: addition and subtraction both add, negation is the
/// identity, so running any subtraction-free-or-not ring algorithm over these
/// yields componentwise upper bounds on every intermediate value. The
/// constructor records a global high-water mark.
struct MagBound {
    double v = 0;
    static double& high_water() {
        thread_local double hw = 0;
        return hw;
    }
    static void reset_high_water() { high_water() = 0; }

    MagBound() = default;
    MagBound(double x) : v(x) {
        if (x > high_water()) high_water() = x;
    }
    MagBound(std::int64_t x) : MagBound(static_cast<double>(x)) {}

    friend MagBound operator+(MagBound l, MagBound r) { return MagBound(l.v + r.v); }
    friend MagBound operator-(MagBound l, MagBound r) { return MagBound(l.v + r.v); }
    friend MagBound operator*(MagBound l, MagBound r) { return MagBound(l.v * r.v); }
    MagBound operator-() const { return *this; }
    friend bool operator==(MagBound, MagBound) { return true; }
};

/// Exact ring element a + b*tau over the ring's generator. All arithmetic
/// stays inside one ring tag; mixing tags throws.
template <class I>
struct RingScalar {
    I a{};
    I b{};
    Ring ring = Ring::Int;

    RingScalar() = default;
    RingScalar(I a_, I b_, Ring r) : a(std::move(a_)), b(std::move(b_)), ring(r) {}

    static RingScalar zero(Ring r) { return {I(0), I(0), r}; }
    static RingScalar one(Ring r) { return {I(1), I(0), r}; }
    static RingScalar integer(I n, Ring r) { return {std::move(n), I(0), r}; }

    bool is_zero() const { return a == I(0) && b == I(0); }

    friend Ring common_ring(const RingScalar& l, const RingScalar& r) {
        if (l.ring != r.ring) throw ring_error("mixed-ring arithmetic");
        return l.ring;
    }

    friend RingScalar operator+(const RingScalar& l, const RingScalar& r) {
        return {l.a + r.a, l.b + r.b, common_ring(l, r)};
    }
    friend RingScalar operator-(const RingScalar& l, const RingScalar& r) {
        return {l.a - r.a, l.b - r.b, common_ring(l, r)};
    }
    RingScalar operator-() const { return {-a, -b, ring}; }

    friend RingScalar operator*(const RingScalar& l, const RingScalar& r) {
        Ring rg = common_ring(l, r);
        if (rg == Ring::Eisenstein) {
            // (a+bt)(c+dt) with t^2 = -t-1
            I bd = l.b * r.b;
            return {l.a * r.a - bd, l.a * r.b + l.b * r.a - bd, rg};
        }
        // Int (b components zero) and Gauss share the i-rule.
        return {l.a * r.a - l.b * r.b, l.a * r.b + l.b * r.a, rg};
    }

    RingScalar conj() const {
        if (ring == Ring::Eisenstein) return {a - b, -b, ring};  // conj(tau) = -1 - tau
        return {a, -b, ring};
    }

    /// conj(x)*x as a plain ring integer; nonnegative.
    I norm() const {
        if (ring == Ring::Eisenstein) return a * a - a * b + b * b;
        return a * a + b * b;
    }

    bool is_unit() const { return norm() == I(1); }

    friend bool operator==(const RingScalar& l, const RingScalar& r) {
        return l.ring == r.ring && l.a == r.a && l.b == r.b;
    }
};

using CyclotomicScalar = RingScalar<BigInt>;
using PackedScalar = RingScalar<CheckedI64>;

inline std::complex<double> to_complex(Ring ring, double a, double b) {
    switch (ring) {
        case Ring::Int: return {a, 0.0};
        case Ring::Gauss: return {a, b};
        case Ring::Eisenstein: {
            constexpr double half_sqrt3 = 0.86602540378443864676;
            return {a - 0.5 * b, half_sqrt3 * b};
        }
    }
    return {a, b};
}

template <class I>
std::complex<double> to_complex(const RingScalar<I>& x) {
    return to_complex(x.ring, to_double(x.a), to_double(x.b));
}

template <class I>
double abs2(const RingScalar<I>& x) {
    double a = to_double(x.a), b = to_double(x.b);
    switch (x.ring) {
        case Ring::Int: return a * a;
        case Ring::Gauss: return a * a + b * b;
        case Ring::Eisenstein: return a * a - a * b + b * b;
    }
    return a * a + b * b;
}

template <class I>
double modulus(const RingScalar<I>& x) {
    return std::sqrt(abs2(x));
}

inline CyclotomicScalar widen(const PackedScalar& x) {
    return {BigInt(static_cast<long>(x.a.v)), BigInt(static_cast<long>(x.b.v)), x.ring};
}

inline bool fits_i64(const BigInt& x) { return x.fits_slong_p(); }

inline PackedScalar pack(const CyclotomicScalar& x) {
    if (!fits_i64(x.a) || !fits_i64(x.b)) throw overflow_error("scalar too large to pack");
    return {CheckedI64(x.a.get_si()), CheckedI64(x.b.get_si()), x.ring};
}

// Convenience constructors used throughout tests and family definitions.
inline CyclotomicScalar cyc_int(long a) { return {BigInt(a), BigInt(0), Ring::Int}; }
inline CyclotomicScalar gauss(long a, long b) { return {BigInt(a), BigInt(b), Ring::Gauss}; }
inline CyclotomicScalar eisen(long a, long b) { return {BigInt(a), BigInt(b), Ring::Eisenstein}; }

}  // namespace bohemian
