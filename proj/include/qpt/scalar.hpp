#pragma once

#include <gmpxx.h>

#include <ostream>
#include <string>

namespace qpt {

using Rational = mpq_class;

/// Exact complex number a + i b with rational parts.
struct ComplexRational {
    Rational re{0};
    Rational im{0};

    ComplexRational() = default;
    ComplexRational(long value) : re(value), im(0) {}  // NOLINT(google-explicit-constructor)
    ComplexRational(Rational real) : re(std::move(real)), im(0) {}  // NOLINT
    ComplexRational(Rational real, Rational imag) : re(std::move(real)), im(std::move(imag)) {}

    static ComplexRational i() { return {Rational(0), Rational(1)}; }

    [[nodiscard]] bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
    [[nodiscard]] bool is_real() const { return sgn(im) == 0; }
    [[nodiscard]] ComplexRational conj() const { return {re, -im}; }

    ComplexRational& operator+=(const ComplexRational& o) {
        re += o.re;
        im += o.im;
        return *this;
    }
    ComplexRational& operator-=(const ComplexRational& o) {
        re -= o.re;
        im -= o.im;
        return *this;
    }
    ComplexRational& operator*=(const ComplexRational& o) {
        Rational r = re * o.re - im * o.im;
        Rational s = re * o.im + im * o.re;
        re = std::move(r);
        im = std::move(s);
        return *this;
    }

    friend ComplexRational operator+(ComplexRational a, const ComplexRational& b) { return a += b; }
    friend ComplexRational operator-(ComplexRational a, const ComplexRational& b) { return a -= b; }
    friend ComplexRational operator*(ComplexRational a, const ComplexRational& b) { return a *= b; }
    friend ComplexRational operator-(const ComplexRational& a) { return {-a.re, -a.im}; }
    friend bool operator==(const ComplexRational& a, const ComplexRational& b) {
        return a.re == b.re && a.im == b.im;
    }
    friend bool operator!=(const ComplexRational& a, const ComplexRational& b) { return !(a == b); }
};

inline bool is_zero(const ComplexRational& c) { return c.is_zero(); }

std::string to_string(const Rational& q);
std::string to_string(const ComplexRational& c);

inline std::ostream& operator<<(std::ostream& os, const ComplexRational& c) {
    return os << to_string(c);
}

}  // namespace qpt
