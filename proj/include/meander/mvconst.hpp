#pragma once

#include <cmath>
#include <stdexcept>

#include "meander/partition.hpp"
#include "meander/pi_expression.hpp"
#include "meander/planetree.hpp"

namespace meander {

// f(d) = d!!/(d+1)!! * pi^d * (pi if d odd, 2 if d even), with 0!! = 1.
inline PiExpression volume_factor(int d) {
    if (d < 0) throw std::invalid_argument("volume factor needs d >= 0");
    Rational q(BigInt::double_factorial(d), BigInt::double_factorial(d + 1));
    if (d % 2 == 0) return PiExpression::term(q * Rational(2), d);
    return PiExpression::term(q, d + 1);
}

// Masur-Veech volume of Q(nu, -1^{|nu|+4}) in genus 0:
// 2 pi^2 * prod_d f(d)^{nu_d}.  Always a single rational multiple of a power
// of pi.
inline PiExpression volume(const GeneralizedPartition& nu) {
    PiExpression v = PiExpression::term(Rational(2), 2);
    for (int d = 0; d <= nu.max_entry(); ++d)
        for (int i = 0; i < nu.multiplicity(d); ++i) v = v * volume_factor(d);
    return v;
}

// cyl_1(Q(nu, -1^{|nu|+4})) = 2 * sum over subpartitions iota of nu of
// C(|nu|+4, |iota|+2) * prod_d C(nu_d, iota_d).  A positive even integer.
inline BigInt cyl1(const GeneralizedPartition& nu) {
    BigInt sum(0);
    unsigned top = static_cast<unsigned>(nu.poles());
    for (const auto& iota : nu.subpartitions()) {
        BigInt term = BigInt::binomial(top, iota.weight() + 2);
        for (int d = 0; d <= nu.max_entry(); ++d)
            term *= BigInt::binomial(static_cast<unsigned>(nu.multiplicity(d)),
                                     iota.multiplicity(d));
        sum += term;
    }
    return BigInt(2) * sum;
}

// Principal stratum shortcut via the Gould identity
// sum_i C(k,i) C(k+4,i+2) = C(2k+4, k+2):  cyl_1(Q(1^k, -1^{k+4})) = 2 C(2k+4, k+2).
inline BigInt cyl1_principal(int k) {
    if (k < 0) throw std::invalid_argument("cyl1_principal needs k >= 0");
    return BigInt(2) * BigInt::binomial(static_cast<unsigned>(2 * k + 4), k + 2);
}

// cyl_{1,1} = cyl_1^2 / Vol.
inline PiExpression cyl11(const GeneralizedPartition& nu) {
    BigInt c = cyl1(nu);
    return PiExpression::term(Rational(c * c), 0) / volume(nu);
}

// P_1 = cyl_1 / Vol; invariant under appending zero entries to nu.
inline PiExpression p1(const GeneralizedPartition& nu) {
    return PiExpression::term(Rational(cyl1(nu)), 0) / volume(nu);
}

// Leading asymptotic coefficient: count(N) = leading * N^exponent + o(N^exponent).
struct AsymptoticCoefficient {
    PiExpression leading;
    int exponent = 0;
    std::string description;
};

namespace detail {

inline PiExpression two_over_pi_sq_pow(int e) {
    // (2/pi^2)^e
    return PiExpression::term(Rational(BigInt::pow(BigInt(2), static_cast<unsigned>(e))),
                              -2 * e);
}

}  // namespace detail

// Meanders with p pimples and a rainbow, at most 2N crossings:
//   M+_p(N) ~ [2 / (p! (p-3)!)] (2/pi^2)^{p-2} C(2p-2, p-1)^2 * N^{2p-4} / (4p-8).
// Evaluated both from the closed form and through cyl_{1,1} of the stratum
// Q(1^{p-3}, -1^{p+1}); the two routes must agree exactly.
inline AsymptoticCoefficient mplus_coefficient(int p) {
    if (p < 3) throw std::invalid_argument("rainbow meanders need p >= 3");
    BigInt binom = BigInt::binomial(static_cast<unsigned>(2 * p - 2), p - 1);
    Rational front(BigInt(2), BigInt::factorial(static_cast<unsigned>(p)) *
                                  BigInt::factorial(static_cast<unsigned>(p - 3)));
    PiExpression closed = detail::two_over_pi_sq_pow(p - 2) *
                          (front * Rational(binom * binom) / Rational(4 * p - 8));

    PiExpression assembled =
        cyl11(GeneralizedPartition::principal(p - 3)) *
        (Rational(2 * (p + 1)) /
         Rational(BigInt::factorial(static_cast<unsigned>(p + 1)) *
                  BigInt::factorial(static_cast<unsigned>(p - 3))) /
         Rational(4 * p - 8));
    if (closed != assembled)
        throw std::logic_error("mplus coefficient: closed form and cyl11 route disagree");

    return {closed, 2 * p - 4, "meanders with " + std::to_string(p) + " pimples, rainbow"};
}

// Meanders with p pimples and no rainbow:
//   M-_p(N) ~ [4 / (p! (p-4)!)] (2/pi^2)^{p-3} C(2p-4, p-2)^2 * N^{2p-5} / (4p-10).
// Cross-checked against 2 * cyl_{1,1}(Q(1^{p-4}, 0, -1^p)) / (p! (p-4)!) with the
// marked-point doubling rule.
inline AsymptoticCoefficient mminus_coefficient(int p) {
    if (p < 4) throw std::invalid_argument("rainbowless meanders need p >= 4");
    BigInt binom = BigInt::binomial(static_cast<unsigned>(2 * p - 4), p - 2);
    Rational front(BigInt(4), BigInt::factorial(static_cast<unsigned>(p)) *
                                  BigInt::factorial(static_cast<unsigned>(p - 4)));
    PiExpression closed = detail::two_over_pi_sq_pow(p - 3) *
                          (front * Rational(binom * binom) / Rational(4 * p - 10));

    PiExpression marked = cyl11(GeneralizedPartition::principal(p - 4).with_extra_zeros(1));
    PiExpression assembled =
        marked * (Rational(2) /
                  Rational(BigInt::factorial(static_cast<unsigned>(p)) *
                           BigInt::factorial(static_cast<unsigned>(p - 4))) /
                  Rational(4 * p - 10));
    if (closed != assembled)
        throw std::logic_error("mminus coefficient: closed form and cyl11 route disagree");

    return {closed, 2 * p - 5, "meanders with " + std::to_string(p) + " pimples, no rainbow"};
}

// Stratum-refined versions: for nu with no zero entries,
//   M+_nu(N) ~ 2(|nu|+4) cyl11(nu) / ((|nu|+4)! prod nu_j!) * N^d / (2d),
//       d = ell(nu) + |nu| + 2;
//   M-_nu(N) ~ 2 cyl11(nu, 0) / ((|nu|+4)! prod nu_j!) * N^{d+1} / (2d+2),
// with cyl11(nu, 0) = 2 cyl11(nu).
inline Rational stratum_label_factor(const GeneralizedPartition& nu) {
    BigInt den = BigInt::factorial(static_cast<unsigned>(nu.poles()));
    for (int d = 1; d <= nu.max_entry(); ++d)
        den *= BigInt::factorial(static_cast<unsigned>(nu.multiplicity(d)));
    return Rational(BigInt(1), den);
}

inline AsymptoticCoefficient mplus_nu_coefficient(const GeneralizedPartition& nu) {
    if (nu.multiplicity(0) != 0)
        throw std::invalid_argument("stratum coefficients take nu without zero entries");
    int d = nu.length() + nu.weight() + 2;
    PiExpression leading = cyl11(nu) * (stratum_label_factor(nu) *
                                        Rational(2 * nu.poles()) / Rational(2 * d));
    return {leading, d, "meanders of type " + nu.to_string() + ", rainbow"};
}

inline AsymptoticCoefficient mminus_nu_coefficient(const GeneralizedPartition& nu) {
    if (nu.multiplicity(0) != 0)
        throw std::invalid_argument("stratum coefficients take nu without zero entries");
    int d = nu.length() + nu.weight() + 3;
    PiExpression marked = cyl11(nu.with_extra_zeros(1));
    PiExpression doubled = cyl11(nu) * Rational(2);
    if (marked != doubled)
        throw std::logic_error("marked-point doubling rule failed");
    PiExpression leading =
        marked * (stratum_label_factor(nu) * Rational(2) / Rational(2 * d));
    return {leading, d, "meanders of type " + nu.to_string() + ", no rainbow"};
}

// Contribution of one separatrix diagram D = {T(iota), T(nu-iota)}:
//   cyl_1(D) = 4/|Aut(D)| * (|nu|+4)! prod_d nu_d! /
//              ((|iota|+ell(iota))! (|nu-iota|+ell(nu-iota))!).
// Summing over all diagrams of a stratum recovers cyl1(nu).
inline Rational cyl1_diagram(const SeparatrixDiagram& diagram) {
    const GeneralizedPartition iota = diagram.first.profile();
    const GeneralizedPartition kappa = diagram.second.profile();
    GeneralizedPartition nu = iota + kappa;
    BigInt num = BigInt::factorial(static_cast<unsigned>(nu.poles()));
    for (int d = 0; d <= nu.max_entry(); ++d)
        num *= BigInt::factorial(static_cast<unsigned>(nu.multiplicity(d)));
    BigInt den = BigInt::factorial(static_cast<unsigned>(iota.weight() + iota.length())) *
                 BigInt::factorial(static_cast<unsigned>(kappa.weight() + kappa.length()));
    return Rational(BigInt(4) * num, BigInt(diagram.aut_order()) * den);
}

inline PiExpression p1_diagram(const SeparatrixDiagram& diagram) {
    return PiExpression::term(cyl1_diagram(diagram), 0) / volume(diagram.type());
}

// Exact zeta(2m) = (-1)^{m+1} B_{2m} (2 pi)^{2m} / (2 (2m)!), Bernoulli
// numbers by the defining recurrence.
inline PiExpression zeta_even(int two_m) {
    if (two_m < 2 || two_m % 2 != 0)
        throw std::invalid_argument("exact zeta values need a positive even argument");
    int m = two_m / 2;
    std::vector<Rational> bern(static_cast<size_t>(two_m + 1));
    bern[0] = Rational(1);
    for (int j = 1; j <= two_m; ++j) {
        Rational s(0);
        for (int k = 0; k < j; ++k)
            s += Rational(BigInt::binomial(static_cast<unsigned>(j + 1), k)) *
                 bern[static_cast<size_t>(k)];
        bern[static_cast<size_t>(j)] = -s / Rational(j + 1);
    }
    Rational coeff = bern[static_cast<size_t>(two_m)] *
                     Rational(BigInt::pow(BigInt(2), static_cast<unsigned>(two_m))) /
                     Rational(BigInt(2) * BigInt::factorial(static_cast<unsigned>(two_m)));
    if (m % 2 == 0) coeff = -coeff;  // (-1)^{m+1}
    return PiExpression::term(coeff, two_m);
}

// zeta(d) * cyl_1(D): the companion normalization without the height
// restriction.  Exact when the stratum dimension is even, floating point
// otherwise.
inline double c1_diagram_unrestricted(const SeparatrixDiagram& diagram) {
    GeneralizedPartition nu = diagram.type();
    int d = nu.length() + nu.weight() + 2;
    return std::riemann_zeta(static_cast<double>(d)) *
           static_cast<double>(cyl1_diagram(diagram).to_long_double());
}

inline PiExpression c1_diagram_unrestricted_exact(const SeparatrixDiagram& diagram) {
    GeneralizedPartition nu = diagram.type();
    int d = nu.length() + nu.weight() + 2;
    return zeta_even(d) * cyl1_diagram(diagram);
}

// P^labeled(N) = (prod_d nu_d!) (|nu|+4)! P(N).
inline Rational labeled_conversion(const GeneralizedPartition& nu,
                                   const Rational& unlabeled_weighted_count) {
    BigInt f = BigInt::factorial(static_cast<unsigned>(nu.poles()));
    for (int d = 0; d <= nu.max_entry(); ++d)
        f *= BigInt::factorial(static_cast<unsigned>(nu.multiplicity(d)));
    return unlabeled_weighted_count * Rational(f);
}

enum class CoefficientVariant { kPlus, kMinus };

// Large-p approximations of the leading meander-count coefficients:
//   plus:  pi^2/256 * (32 e^2 / (pi^2 p^2))^p
//   minus: pi^2 e^2 / (128 p) * (32 e^2 / (pi^2 p^2))^{p-1}
inline long double stirling_approx(int p, CoefficientVariant variant) {
    const long double pi = 3.14159265358979323846264338327950288L;
    long double base = 32.0L * std::exp(2.0L) / (pi * pi * static_cast<long double>(p) * p);
    if (variant == CoefficientVariant::kPlus)
        return pi * pi / 256.0L * std::pow(base, static_cast<long double>(p));
    return pi * pi * std::exp(2.0L) / (128.0L * p) *
           std::pow(base, static_cast<long double>(p - 1));
}

// log of the exact coefficient (for comparing with stirling_approx at p too
// large for exact evaluation in floating point)
inline long double log_exact_coefficient(int p, CoefficientVariant variant) {
    const long double pi = 3.14159265358979323846264338327950288L;
    auto lg = [](long double x) { return std::lgammal(x); };
    if (variant == CoefficientVariant::kPlus) {
        // 2/(p!(p-3)!) (2/pi^2)^{p-2} C(2p-2,p-1)^2 / (4p-8)
        return std::log(2.0L) - lg(p + 1.0L) - lg(p - 2.0L) +
               (p - 2) * std::log(2.0L / (pi * pi)) +
               2 * (lg(2.0L * p - 1.0L) - 2 * lg(static_cast<long double>(p))) -
               std::log(4.0L * p - 8.0L);
    }
    return std::log(4.0L) - lg(p + 1.0L) - lg(p - 3.0L) +
           (p - 3) * std::log(2.0L / (pi * pi)) +
           2 * (lg(2.0L * p - 3.0L) - 2 * lg(p - 1.0L)) -
           std::log(4.0L * p - 10.0L);
}

}  // namespace meander
