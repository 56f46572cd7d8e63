#pragma once

// Labels n(v^k) and exact Laurent polynomials over Z.

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>

namespace a2bill {

using BigInt = boost::multiprecision::cpp_int;

/// A label n(v^k).  n is a non-negative count, k the exponent of v.
struct Label {
    std::int64_t n = 0;
    std::int64_t k = 0;

    friend constexpr bool operator==(Label, Label) = default;
    friend constexpr auto operator<=>(Label, Label) = default;
};

/// "n(v^k)"
std::string to_string(Label l);

class PolynomialParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Finitely supported exponent -> coefficient map.  Zero coefficients are
/// never stored, so structural equality is polynomial equality.
class LaurentPolynomial {
public:
    using Terms = std::map<std::int64_t, BigInt>;

    LaurentPolynomial() = default;

    static LaurentPolynomial constant(const BigInt& c) { return monomial(c, 0); }
    static LaurentPolynomial monomial(const BigInt& c, std::int64_t e);

    /// Grammar: sum of terms `c`, `v`, `v^e`, `c*v^e`, `c*v`, signs + or -
    /// between terms, whitespace ignored.  `0` is the zero polynomial.
    static LaurentPolynomial parse(std::string_view text);

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    BigInt coefficient(std::int64_t e) const;
    std::int64_t min_exponent() const;
    std::int64_t max_exponent() const;

    /// Invariant under v -> v^{-1}.
    bool is_bar_invariant() const;
    LaurentPolynomial bar() const;

    LaurentPolynomial& operator+=(const LaurentPolynomial& o);
    LaurentPolynomial& operator-=(const LaurentPolynomial& o);
    LaurentPolynomial& operator*=(const BigInt& c);
    friend LaurentPolynomial operator+(LaurentPolynomial x, const LaurentPolynomial& y) { return x += y; }
    friend LaurentPolynomial operator-(LaurentPolynomial x, const LaurentPolynomial& y) { return x -= y; }
    friend LaurentPolynomial operator*(LaurentPolynomial x, const BigInt& c) { return x *= c; }
    friend LaurentPolynomial operator*(const LaurentPolynomial& x, const LaurentPolynomial& y);

    void add_term(std::int64_t e, const BigInt& c);

    friend bool operator==(const LaurentPolynomial&, const LaurentPolynomial&) = default;
    /// Total order used for canonical sorting (lexicographic on terms).
    friend bool operator<(const LaurentPolynomial& x, const LaurentPolynomial& y) { return x.terms_ < y.terms_; }

    /// Canonical text: ascending exponents, e.g. `v^-1+v`, `2+v^2`, `1-v^3`.
    std::string to_string() const;

private:
    Terms terms_;
};

/// Linear map v^0 -> 1, v^k -> v^k + v^-k (k > 0).  Rejects negative exponents.
LaurentPolynomial phi(const LaurentPolynomial& f);

/// phi of a single monomial v^k.
LaurentPolynomial phi_monomial(std::int64_t k);

/// Drops every term with a negative exponent.
LaurentPolynomial truncate_nonneg(const LaurentPolynomial& f);

} // namespace a2bill
