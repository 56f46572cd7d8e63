#pragma once

// Extension of the wall multiset Y into alcove interiors, and the passage
// from Z to Z~ = Z minus the X-seeds.

#include "a2bill/dynamics.hpp"

#include <memory>
#include <string>
#include <vector>

namespace a2bill {

class Step3Strategy {
public:
    virtual ~Step3Strategy() = default;
    virtual std::string name() const = 0;
    /// False when the strategy is known to produce only part of Z.
    virtual bool complete() const = 0;
    virtual PointMultiset extend(const PointMultiset& y, std::int64_t ell) const = 0;
};

/// Returns Y unchanged.  Marked partial.
class WallOnlyStrategy final : public Step3Strategy {
public:
    std::string name() const override { return "wall-only"; }
    bool complete() const override { return false; }
    PointMultiset extend(const PointMultiset& y, std::int64_t) const override { return y; }
};

/// Registered strategy names, sorted.
std::vector<std::string> step3_strategy_names();

/// Throws DomainError for unknown names.
std::unique_ptr<Step3Strategy> make_step3_strategy(const std::string& name);

struct Step3Result {
    PointMultiset z;
    std::string strategy;
    bool partial = true;
};

/// Runs the strategy and checks that the result contains Y as a multiset.
Step3Result extend_step3(const PointMultiset& y, std::int64_t ell, const Step3Strategy& strategy);
Step3Result extend_step3(const PointMultiset& y, std::int64_t ell, const std::string& strategy);

/// Z~: drops every point (k ell w1, 2k ell (v^0)).
PointMultiset remove_x_seeds(const PointMultiset& z, std::int64_t ell);

} // namespace a2bill
