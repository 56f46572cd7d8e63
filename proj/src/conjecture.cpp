#include "a2bill/conjecture.hpp"

namespace a2bill {

void accumulate(KLCombination& into, const Alcove& c, const LaurentPolynomial& f)
{
    if (f.is_zero()) return;
    auto& slot = into[c];
    slot += f;
    if (slot.is_zero()) into.erase(c);
}

ZetaAssembler::ZetaAssembler(const PointMultiset& ztilde, std::int64_t p) : p_(p)
{
    if (p < 2) throw DomainError("p must be at least 2");
    for (const auto& [key, entry] : ztilde.entries()) by_n_[key.label.n].emplace_back(key, entry.multiplicity());
}

std::vector<ZetaContribution> ZetaAssembler::contributions(std::size_t i) const
{
    std::vector<ZetaContribution> out;
    if (i == 0) return out;
    const Reflection s = x_sequence_descent(i);
    const auto n_max = static_cast<std::int64_t>(i);
    for (std::int64_t n = std::max<std::int64_t>(0, n_max - 2); n <= n_max; ++n) {
        auto it = by_n_.find(n);
        if (it == by_n_.end()) continue;
        for (const auto& [key, mult] : it->second) {
            if (!is_strictly_dominant(key.weight)) {
                throw DomainError("zeta_" + std::to_string(i) + ": contributing point " + to_string(key) +
                                  " is not strictly dominant");
            }
            out.push_back({key, x_mu_s_alcove(key.weight, s), phi_monomial(key.label.k) * mult});
        }
    }
    return out;
}

KLCombination ZetaAssembler::zeta(std::size_t i) const
{
    KLCombination out;
    accumulate(out, x_sequence(i).alcove(), LaurentPolynomial::constant(1));
    for (const auto& c : contributions(i)) accumulate(out, c.alcove, c.coefficient);
    return out;
}

KLCombination zeta(std::size_t i, const PointMultiset& ztilde, std::int64_t p)
{
    return ZetaAssembler(ztilde, p).zeta(i);
}

bool stabilized(const AffineElement& x, std::int64_t p, std::int64_t n)
{
    if (p < 2) throw DomainError("p must be at least 2");
    if (n < 0) throw DomainError("generation index must be non-negative");
    const BigInt level = pairing(dot_p(x, {0, 0}, p) + kRho, Coroot::theta);
    return level <= boost::multiprecision::pow(BigInt(p), static_cast<unsigned>(n + 1));
}

std::int64_t conjecture_window(std::int64_t p) { return 2 * p * (p + 1); }

} // namespace a2bill
