#include "a2bill/invariants.hpp"

#include "a2bill/parallel.hpp"

#include <set>
#include <sstream>

namespace a2bill {

namespace {

constexpr std::size_t kMaxWitnesses = 5;

std::int64_t floor_mod(std::int64_t x, std::int64_t m)
{
    const std::int64_t r = x % m;
    return r < 0 ? r + m : r;
}

class Checker {
public:
    explicit Checker(std::string name) { result_.name = std::move(name); }

    void expect(bool ok, const std::string& witness)
    {
        ++result_.checked;
        if (ok) return;
        result_.status = CheckStatus::fail;
        if (result_.witnesses.size() < kMaxWitnesses) result_.witnesses.push_back(witness);
    }

    CheckResult done(bool failure_expected = false)
    {
        if (failure_expected && result_.status == CheckStatus::fail) result_.status = CheckStatus::expected_fail;
        return std::move(result_);
    }

private:
    CheckResult result_;
};

std::string where(const DynamicsRun& r, const PointKey& key)
{
    return "k=" + std::to_string(r.seed_k) + " " + to_string(key);
}

} // namespace

std::string to_string(CheckStatus s)
{
    switch (s) {
    case CheckStatus::pass: return "pass";
    case CheckStatus::fail: return "FAIL";
    case CheckStatus::expected_fail: return "expected-fail";
    }
    return "?";
}

Operation expected_operation(int j, std::int64_t ell)
{
    if (j == 1) return Operation::resting_once;
    if ((j - 1) % (ell - 1) == 0) return Operation::resting_twice;
    return Operation::giant_leap;
}

std::int64_t expected_seed_exponent(int j, std::int64_t ell) { return j + (j - 1) / (ell - 1); }

std::map<PointKey, BigInt> shift_run(const PointMultiset& y, std::int64_t shift_k, std::int64_t ell)
{
    std::map<PointKey, BigInt> out;
    for (const auto& [key, entry] : y.entries()) {
        PointKey moved{{key.weight.a + shift_k * ell, key.weight.b}, {key.label.n + 2 * shift_k * ell, key.label.k}};
        out[moved] += entry.multiplicity();
    }
    return out;
}

bool CheckReport::ok() const
{
    for (const auto& r : results) {
        if (r.status == CheckStatus::fail) return false;
    }
    return true;
}

const CheckResult* CheckReport::find(const std::string& name) const
{
    for (const auto& r : results) {
        if (r.name == name) return &r;
    }
    return nullptr;
}

std::string CheckReport::to_text() const
{
    std::ostringstream os;
    os << "ell=" << ell << " seeds=";
    for (std::size_t i = 0; i < seed_ks.size(); ++i) os << (i ? "," : "") << seed_ks[i];
    os << " iterations=" << iterations << " mode=" << to_string(mode) << "\n";
    for (const auto& r : results) {
        os << to_string(r.status) << "\t" << r.name << "\t(" << r.checked << " checked)\n";
        for (const auto& w : r.witnesses) os << "\t  " << w << "\n";
    }
    os << (ok() ? "OK" : "VIOLATIONS") << "\n";
    return os.str();
}

CheckReport check_runs(const std::vector<DynamicsRun>& runs)
{
    CheckReport report;
    if (runs.empty()) return report;
    const std::int64_t ell = runs.front().ell;
    const bool legacy = runs.front().mode == Mode::legacy;
    report.ell = ell;
    report.iterations = runs.front().iterations;
    report.mode = runs.front().mode;
    for (const auto& r : runs) report.seed_ks.push_back(r.seed_k);

    {
        Checker c("seed-congruence");
        for (const auto& r : runs) {
            for (const auto& [key, entry] : r.y.entries()) {
                if (!entry.seed()) continue;
                c.expect(floor_mod(key.label.n - key.label.k, ell) == 0, where(r, key));
            }
        }
        report.results.push_back(c.done());
    }
    {
        Checker c("no-seed-exponent-in-ell-Z+");
        for (const auto& r : runs) {
            for (const auto& [key, entry] : r.y.entries()) {
                if (!entry.seed()) continue;
                c.expect(key.label.k < 1 || key.label.k % ell != 0, where(r, key));
            }
        }
        report.results.push_back(c.done());
    }
    {
        Checker c("seed-exponent-formula");
        for (const auto& r : runs) {
            for (std::size_t q = 0; q < r.q_trace.size(); ++q) {
                const int j = static_cast<int>(q) + 1;
                const std::int64_t want = expected_seed_exponent(j, ell);
                for (const auto& [key, entry] : r.q_trace[q].entries()) {
                    if (!entry.seed()) continue;
                    c.expect(key.label.k == want,
                             "Q_" + std::to_string(j) + " " + where(r, key) + " expected exponent " + std::to_string(want));
                }
            }
        }
        report.results.push_back(c.done());
    }
    {
        Checker c("operation-pattern");
        for (const auto& r : runs) {
            for (std::size_t q = 0; q < r.q_trace.size(); ++q) {
                const int j = static_cast<int>(q) + 1;
                const Operation want = expected_operation(j, ell);
                for (const auto& [key, entry] : r.q_trace[q].entries()) {
                    for (const auto& rec : entry.records) {
                        c.expect(rec.provenance.operation == want, "Q_" + std::to_string(j) + " " + where(r, key) + " " +
                                                                       to_string(rec.provenance.operation) + " expected " +
                                                                       to_string(want));
                    }
                }
            }
        }
        report.results.push_back(c.done());
    }
    {
        Checker c("disjointness");
        for (std::size_t x = 0; x < runs.size(); ++x) {
            for (std::size_t y = x + 1; y < runs.size(); ++y) {
                for (const auto& [key, entry] : runs[x].y.entries()) {
                    c.expect(!runs[y].y.contains(key), to_string(key) + " in Y_" + std::to_string(runs[x].seed_k) +
                                                           " and Y_" + std::to_string(runs[y].seed_k));
                }
            }
        }
        report.results.push_back(c.done(legacy));
    }
    {
        Checker c("self-similarity");
        for (std::size_t x = 0; x < runs.size(); ++x) {
            for (std::size_t y = 0; y < runs.size(); ++y) {
                const std::int64_t shift = runs[y].seed_k - runs[x].seed_k;
                if (shift <= 0) continue;
                const auto image = shift_run(runs[x].y, shift, ell);
                std::map<PointKey, BigInt> target;
                for (const auto& [key, entry] : runs[y].y.entries()) {
                    if (key.weight.a > shift * ell) target[key] = entry.multiplicity();
                }
                const std::string pair =
                    "Y_" + std::to_string(runs[x].seed_k) + "->Y_" + std::to_string(runs[y].seed_k) + " ";
                for (const auto& [key, m] : image) {
                    auto it = target.find(key);
                    c.expect(it != target.end() && it->second == m, pair + "image point " + to_string(key) + " missing");
                }
                for (const auto& [key, m] : target) {
                    c.expect(image.count(key) != 0, pair + to_string(key) + " has no preimage");
                }
            }
        }
        report.results.push_back(c.done(legacy));
    }
    {
        Checker c("column-confinement");
        for (const auto& r : runs) {
            for (const auto& [key, entry] : r.y.entries()) {
                const Weight w = key.weight;
                c.expect(w.a > 0 && w.a <= r.seed_k * ell && w.b > 0, where(r, key));
            }
        }
        report.results.push_back(c.done(legacy));
    }
    {
        Checker c("multiplicity-one");
        for (const auto& r : runs) {
            for (const auto& [key, entry] : r.y.entries()) {
                c.expect(entry.multiplicity() == 1,
                         where(r, key) + " multiplicity " + entry.multiplicity().str());
            }
        }
        report.results.push_back(c.done(legacy));
    }
    {
        Checker c("merge-kinds");
        for (const auto& r : runs) {
            for (const auto& ev : r.events) {
                std::set<PointKey> sources;
                for (const auto& in : ev.inputs) sources.insert(in.key());
                const std::size_t want = ev.kind == MergeKind::type_ii ? 1 : 3;
                const std::size_t leaps = ev.kind == MergeKind::type_ii ? 2 : 3;
                c.expect(ev.kept.size() == want && sources.size() == leaps,
                         "k=" + std::to_string(r.seed_k) + " " + to_string(ev.kind) + " at " + to_string(ev.corner) +
                             " kept " + std::to_string(ev.kept.size()) + " from " + std::to_string(sources.size()) +
                             " leaps");
            }
        }
        report.results.push_back(c.done());
    }
    return report;
}

CheckReport run_invariant_suite(std::int64_t ell, const std::vector<std::int64_t>& seed_ks, int iterations,
                                Mode mode, unsigned jobs)
{
    require_ell(ell);
    std::vector<DynamicsRun> runs(seed_ks.size());
    parallel_for(seed_ks.size(), jobs, [&](std::size_t i) { runs[i] = run_dynamics(seed_ks[i], ell, iterations, mode); });
    return check_runs(runs);
}

} // namespace a2bill
