#ifndef ZK_FIELDS_HPP
#define ZK_FIELDS_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace zk {

/// Runtime field selector used at API boundaries (CLI, serialization).
enum class FieldTag { GF2, GF3, GF5, Rational };

inline std::string field_name(FieldTag t) {
    switch (t) {
        case FieldTag::GF2: return "gf2";
        case FieldTag::GF3: return "gf3";
        case FieldTag::GF5: return "gf5";
        case FieldTag::Rational: return "q";
    }
    return "?";
}

inline FieldTag parse_field(const std::string& s) {
    if (s == "gf2") return FieldTag::GF2;
    if (s == "gf3") return FieldTag::GF3;
    if (s == "gf5") return FieldTag::GF5;
    if (s == "q" || s == "rational") return FieldTag::Rational;
    throw std::invalid_argument("unknown field '" + s + "' (expected gf2|gf3|gf5|q)");
}

/// Prime field GF(P). Arithmetic stays in [0, P).
template <unsigned P>
class GF {
    static_assert(P >= 2 && P < 256, "small primes only");

public:
    constexpr GF() : v_(0) {}
    constexpr GF(long long x) : v_(static_cast<unsigned>(((x % long{P}) + P) % P)) {}

    static constexpr GF zero() { return GF(); }
    static constexpr GF one() { return GF(1); }

    bool is_zero() const { return v_ == 0; }
    unsigned value() const { return v_; }

    GF operator+(GF o) const { return from_raw((v_ + o.v_) % P); }
    GF operator-(GF o) const { return from_raw((v_ + P - o.v_) % P); }
    GF operator*(GF o) const { return from_raw((v_ * o.v_) % P); }
    GF operator-() const { return from_raw(v_ == 0 ? 0 : P - v_); }
    GF& operator+=(GF o) { v_ = (v_ + o.v_) % P; return *this; }
    GF& operator-=(GF o) { v_ = (v_ + P - o.v_) % P; return *this; }
    GF& operator*=(GF o) { v_ = (v_ * o.v_) % P; return *this; }

    GF inverse() const {
        if (v_ == 0) throw std::domain_error("GF: inverse of zero");
        // Fermat: v^(P-2)
        unsigned long long r = 1, b = v_, e = P - 2;
        while (e) {
            if (e & 1) r = r * b % P;
            b = b * b % P;
            e >>= 1;
        }
        return from_raw(static_cast<unsigned>(r));
    }
    GF operator/(GF o) const { return *this * o.inverse(); }

    bool operator==(GF o) const { return v_ == o.v_; }
    bool operator!=(GF o) const { return v_ != o.v_; }

    friend std::string to_display(GF x) { return std::to_string(x.v_); }

private:
    static constexpr GF from_raw(unsigned v) {
        GF g;
        g.v_ = v;
        return g;
    }
    unsigned v_;
};

/// Exact rationals for characteristic-zero computations.
using Rational = boost::multiprecision::cpp_rational;

inline bool is_zero(const Rational& x) { return x == 0; }
template <unsigned P>
inline bool is_zero(GF<P> x) { return x.is_zero(); }

template <class F>
struct FieldTraits;

template <unsigned P>
struct FieldTraits<GF<P>> {
    static constexpr bool is_finite = true;
    static constexpr unsigned order = P;
    static GF<P> zero() { return GF<P>::zero(); }
    static GF<P> one() { return GF<P>::one(); }
    static FieldTag tag() {
        switch (P) {
            case 2: return FieldTag::GF2;
            case 3: return FieldTag::GF3;
            case 5: return FieldTag::GF5;
            default: throw std::logic_error("no tag for this prime");
        }
    }
};

template <>
struct FieldTraits<Rational> {
    static constexpr bool is_finite = false;
    static constexpr unsigned order = 0;
    static Rational zero() { return Rational(0); }
    static Rational one() { return Rational(1); }
    static FieldTag tag() { return FieldTag::Rational; }
};

/// Invoke fn.template operator()<F>() with F chosen by the runtime tag.
template <class Fn>
auto with_field(FieldTag tag, Fn&& fn) {
    switch (tag) {
        case FieldTag::GF2: return fn.template operator()<GF<2>>();
        case FieldTag::GF3: return fn.template operator()<GF<3>>();
        case FieldTag::GF5: return fn.template operator()<GF<5>>();
        case FieldTag::Rational: return fn.template operator()<Rational>();
    }
    throw std::logic_error("bad field tag");
}

}  // namespace zk

#endif
