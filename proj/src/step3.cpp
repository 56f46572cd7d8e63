#include "a2bill/step3.hpp"

namespace a2bill {

std::vector<std::string> step3_strategy_names() { return {"wall-only"}; }

std::unique_ptr<Step3Strategy> make_step3_strategy(const std::string& name)
{
    if (name == "wall-only") return std::make_unique<WallOnlyStrategy>();
    std::string known;
    for (const auto& n : step3_strategy_names()) known += (known.empty() ? "" : ", ") + n;
    throw DomainError("unknown step-3 strategy '" + name + "' (known: " + known + ")");
}

Step3Result extend_step3(const PointMultiset& y, std::int64_t ell, const Step3Strategy& strategy)
{
    Step3Result out{strategy.extend(y, ell), strategy.name(), !strategy.complete()};
    for (const auto& [key, entry] : y.entries()) {
        if (out.z.multiplicity(key) < entry.multiplicity()) {
            throw GeometryError("step-3 strategy '" + strategy.name() + "' lost " + to_string(key));
        }
    }
    return out;
}

Step3Result extend_step3(const PointMultiset& y, std::int64_t ell, const std::string& strategy)
{
    return extend_step3(y, ell, *make_step3_strategy(strategy));
}

PointMultiset remove_x_seeds(const PointMultiset& z, std::int64_t ell)
{
    PointMultiset out;
    for (const auto& [key, entry] : z.entries()) {
        if (is_x_seed(key, ell)) continue;
        for (const auto& r : entry.records) out.add(key, r);
    }
    return out;
}

} // namespace a2bill
