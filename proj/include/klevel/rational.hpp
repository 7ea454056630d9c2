#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <iosfwd>
#include <ostream>
#include <string>
#include <string_view>

#include "klevel/errors.hpp"

namespace klevel {

/// Exact rational number over arbitrary-precision integers.
///
/// Invariants: denominator strictly positive, fraction in lowest terms,
/// zero represented as 0/1. Every geometric predicate in this library
/// reduces to exact sign computations on these values; no tolerance
/// parameter exists anywhere.
class Rational {
public:
    Rational() : v_(0) {}
    Rational(int n) : v_(n) {}
    Rational(long n) : v_(static_cast<long>(n)) {}
    Rational(long long n) : v_(int64_to_mpz(n)) {}
    Rational(long num, long den) : v_(num, den) { canonicalize_checked(); }
    explicit Rational(mpq_class v) : v_(std::move(v)) { v_.canonicalize(); }

    /// Parses "p/q" or the integer shortcut "p" (optionally negative).
    static Rational parse(std::string_view text);

    /// Serializes as "p/q" in lowest terms, always including the denominator.
    std::string str() const {
        return v_.get_num().get_str() + "/" + v_.get_den().get_str();
    }

    /// Integer-style rendering: "p" when the denominator is 1, else "p/q".
    std::string str_short() const {
        if (v_.get_den() == 1) return v_.get_num().get_str();
        return str();
    }

    int sign() const { return sgn(v_); }
    bool is_zero() const { return sgn(v_) == 0; }
    bool is_integer() const { return v_.get_den() == 1; }

    const mpz_class& num() const { return v_.get_num(); }
    const mpz_class& den() const { return v_.get_den(); }

    /// Approximation for the reporting layer only. Never used in predicates.
    double to_double() const { return v_.get_d(); }

    Rational operator-() const { return Rational(mpq_class(-v_)); }
    friend Rational operator+(const Rational& a, const Rational& b) { return Rational(mpq_class(a.v_ + b.v_)); }
    friend Rational operator-(const Rational& a, const Rational& b) { return Rational(mpq_class(a.v_ - b.v_)); }
    friend Rational operator*(const Rational& a, const Rational& b) { return Rational(mpq_class(a.v_ * b.v_)); }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.is_zero()) throw Error("division by zero");
        return Rational(mpq_class(a.v_ / b.v_));
    }
    Rational& operator+=(const Rational& b) { return *this = *this + b; }
    Rational& operator-=(const Rational& b) { return *this = *this - b; }
    Rational& operator*=(const Rational& b) { return *this = *this * b; }
    Rational& operator/=(const Rational& b) { return *this = *this / b; }

    friend bool operator==(const Rational& a, const Rational& b) { return mpq_equal(a.v_.get_mpq_t(), b.v_.get_mpq_t()) != 0; }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) { return cmp(a.v_, b.v_) < 0; }
    friend bool operator>(const Rational& a, const Rational& b) { return cmp(a.v_, b.v_) > 0; }
    friend bool operator<=(const Rational& a, const Rational& b) { return cmp(a.v_, b.v_) <= 0; }
    friend bool operator>=(const Rational& a, const Rational& b) { return cmp(a.v_, b.v_) >= 0; }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str_short(); }

private:
    static mpz_class int64_to_mpz(long long n) {
        mpz_class z;
        bool neg = n < 0;
        unsigned long long mag = neg ? 0ULL - static_cast<unsigned long long>(n)
                                     : static_cast<unsigned long long>(n);
        mpz_import(z.get_mpz_t(), 1, 1, sizeof(mag), 0, 0, &mag);
        if (neg) z = -z;
        return z;
    }

    void canonicalize_checked() {
        if (v_.get_den() == 0) throw Error("zero denominator");
        v_.canonicalize();
    }

    mpq_class v_;
};

inline Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

inline Rational Rational::parse(std::string_view text) {
    auto parse_int = [](std::string_view s) -> mpz_class {
        if (s.empty()) throw Error("empty integer in rational literal");
        std::size_t pos = s[0] == '-' ? 1 : 0;
        if (pos == s.size()) throw Error("bare sign in rational literal");
        for (std::size_t i = pos; i < s.size(); ++i)
            if (s[i] < '0' || s[i] > '9') throw Error("bad rational literal: " + std::string(s));
        return mpz_class(std::string(s), 10);
    };
    auto slash = text.find('/');
    mpq_class q;
    if (slash == std::string_view::npos) {
        q = mpq_class(parse_int(text));
    } else {
        mpz_class num = parse_int(text.substr(0, slash));
        mpz_class den = parse_int(text.substr(slash + 1));
        if (den == 0) throw Error("zero denominator in rational literal");
        q = mpq_class(num) / mpq_class(den);
    }
    return Rational(std::move(q));
}

} // namespace klevel
