#pragma once

#include <cmath>
#include <map>
#include <sstream>
#include <string>

#include "meander/rational.hpp"

namespace meander {

// Finite sum of terms q * pi^k with exact rational q and integer k (possibly
// negative).  All constants in this project are of this shape, so equality
// tests are exact and no tolerances enter the core arithmetic.  Floating
// point appears only in evaluate()/to_decimal_string() for reporting.
class PiExpression {
public:
    PiExpression() = default;

    static PiExpression zero() { return PiExpression(); }

    static PiExpression term(Rational coeff, int pi_power) {
        PiExpression e;
        if (!coeff.is_zero()) e.terms_[pi_power] = std::move(coeff);
        return e;
    }

    static PiExpression integer(long long v) { return term(Rational(v), 0); }

    const std::map<int, Rational>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    // true when the expression is a single term q*pi^k (or zero)
    bool is_monomial() const { return terms_.size() <= 1; }

    PiExpression operator+(const PiExpression& o) const {
        PiExpression r = *this;
        for (const auto& [k, q] : o.terms_) r.add_term(k, q);
        return r;
    }
    PiExpression operator-(const PiExpression& o) const {
        PiExpression r = *this;
        for (const auto& [k, q] : o.terms_) r.add_term(k, -q);
        return r;
    }
    PiExpression operator*(const PiExpression& o) const {
        PiExpression r;
        for (const auto& [k1, q1] : terms_)
            for (const auto& [k2, q2] : o.terms_) r.add_term(k1 + k2, q1 * q2);
        return r;
    }
    PiExpression operator*(const Rational& q) const {
        PiExpression r;
        for (const auto& [k, c] : terms_) r.add_term(k, c * q);
        return r;
    }

    // Division is defined for monomial divisors, which covers every ratio in
    // this project (volumes are single pi-power terms).
    PiExpression operator/(const PiExpression& o) const {
        if (!o.is_monomial() || o.is_zero())
            throw std::domain_error("PiExpression: divisor must be a nonzero monomial");
        auto [k0, q0] = *o.terms_.begin();
        PiExpression r;
        for (const auto& [k, q] : terms_) r.add_term(k - k0, q / q0);
        return r;
    }
    PiExpression operator/(const Rational& q) const {
        return *this * (Rational(1) / q);
    }

    bool operator==(const PiExpression& o) const { return terms_ == o.terms_; }
    bool operator!=(const PiExpression& o) const { return !(*this == o); }

    // Canonical exact rendering: "q * pi^k" terms joined by " + ", powers
    // descending; "q" alone for k = 0; "0" for the zero expression.
    std::string to_exact_string() const {
        if (terms_.empty()) return "0";
        std::ostringstream out;
        bool first = true;
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            if (!first) out << " + ";
            first = false;
            out << it->second.to_string();
            if (it->first != 0) out << " * pi^" << it->first;
        }
        return out.str();
    }

    long double evaluate() const {
        const long double pi = 3.14159265358979323846264338327950288L;
        long double v = 0.0L;
        for (const auto& [k, q] : terms_)
            v += q.to_long_double() * std::pow(pi, static_cast<long double>(k));
        return v;
    }

    // Decimal rendering with the given number of significant digits.
    std::string to_decimal_string(int significant_digits = 12) const {
        std::ostringstream out;
        out.precision(significant_digits);
        out << static_cast<double>(evaluate());
        return out.str();
    }

private:
    std::map<int, Rational> terms_;

    void add_term(int k, const Rational& q) {
        if (q.is_zero()) return;
        auto it = terms_.find(k);
        if (it == terms_.end()) {
            terms_.emplace(k, q);
        } else {
            it->second += q;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }
};

}  // namespace meander
