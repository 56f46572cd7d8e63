#pragma once

// Predicted elements zeta_i in Kazhdan-Lusztig coordinates, and the
// generation stabilisation predicate.

#include "a2bill/dynamics.hpp"
#include "a2bill/geometry.hpp"
#include "a2bill/labels.hpp"

#include <map>
#include <vector>

namespace a2bill {

/// Alcove (standing for the minimal coset representative x with x.A0 equal
/// to it) -> coefficient of b_x.  Zero coefficients are never stored.
using KLCombination = std::map<Alcove, LaurentPolynomial>;

/// Adds f at c, dropping the entry if it cancels to zero.
void accumulate(KLCombination& into, const Alcove& c, const LaurentPolynomial& f);

/// One summand of zeta_i: the point it came from and where it lands.
struct ZetaContribution {
    PointKey point;
    Alcove alcove;
    LaurentPolynomial coefficient;
};

/// Precomputed index of a Z~ multiset by label n, so that many zeta_i can
/// be evaluated cheaply.
class ZetaAssembler {
public:
    ZetaAssembler(const PointMultiset& ztilde, std::int64_t p);

    KLCombination zeta(std::size_t i) const;
    /// Summands of the sum part of zeta_i (the b_{x_i} term excluded).
    std::vector<ZetaContribution> contributions(std::size_t i) const;

    std::int64_t p() const { return p_; }

private:
    std::int64_t p_;
    std::map<std::int64_t, std::vector<std::pair<PointKey, BigInt>>> by_n_;
};

/// zeta_0 = b_{x_0}; for i > 0 the points of Z~ with n in {i, i-1, i-2}
/// contribute phi(v^k) b_{x_mu^s}, s the right descent of x_i.  Throws
/// DomainError if a contributing mu is not strictly dominant.
KLCombination zeta(std::size_t i, const PointMultiset& ztilde, std::int64_t p);

/// <theta, x ._p 0 + rho> <= p^(n+1).
bool stabilized(const AffineElement& x, std::int64_t p, std::int64_t n);

/// 2p(p+1): the bound below which zeta_i is predicted to equal the p-KL element.
std::int64_t conjecture_window(std::int64_t p);

} // namespace a2bill
