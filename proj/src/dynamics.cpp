#include "a2bill/dynamics.hpp"

#include "a2bill/parallel.hpp"

#include <algorithm>
#include <set>
#include <tuple>

namespace a2bill {

std::string to_string(Move m)
{
    switch (m) {
    case Move::initial: return "initial";
    case Move::rest: return "rest";
    case Move::small_step: return "small";
    case Move::giant_leap: return "leap";
    }
    return "?";
}

std::string to_string(Operation op)
{
    switch (op) {
    case Operation::initial: return "initial";
    case Operation::resting_once: return "resting-once";
    case Operation::resting_twice: return "resting-twice";
    case Operation::giant_leap: return "giant-leap";
    }
    return "?";
}

std::string to_string(MergeKind k)
{
    switch (k) {
    case MergeKind::none: return "none";
    case MergeKind::type_ii: return "II";
    case MergeKind::type_iii: return "III";
    }
    return "?";
}

std::string to_string(Mode m) { return m == Mode::corrected ? "corrected" : "legacy"; }

std::string to_string(const PointKey& key) { return to_string(key.label) + "@" + to_string(key.weight); }

// ---------------------------------------------------------------------------
// PointMultiset

BigInt PointMultiset::Entry::multiplicity() const
{
    BigInt m = 0;
    for (const auto& r : records) m += r.count;
    return m;
}

BigInt PointMultiset::Entry::seed_multiplicity() const
{
    BigInt m = 0;
    for (const auto& r : records) {
        if (r.seed) m += r.count;
    }
    return m;
}

bool PointMultiset::Entry::seed() const
{
    return std::any_of(records.begin(), records.end(), [](const Record& r) { return r.seed; });
}

const PointMultiset::Record& PointMultiset::Entry::primary() const
{
    for (const auto& r : records) {
        if (r.seed) return r;
    }
    return records.front();
}

MergeKind PointMultiset::Entry::merge() const
{
    for (const auto& r : records) {
        if (r.provenance.merge != MergeKind::none) return r.provenance.merge;
    }
    return MergeKind::none;
}

void PointMultiset::add(const PointKey& key, const Record& record)
{
    if (record.count <= 0) return;
    auto& recs = entries_[key].records;
    for (auto& r : recs) {
        if (r.seed == record.seed && r.provenance == record.provenance) {
            r.count += record.count;
            return;
        }
    }
    recs.push_back(record);
}

void PointMultiset::add(const LabelledPoint& p, const BigInt& count)
{
    add(p.key(), Record{p.seed, p.provenance, count});
}

void PointMultiset::add(const PointMultiset& other)
{
    for (const auto& [key, entry] : other.entries_) {
        for (const auto& r : entry.records) add(key, r);
    }
}

void PointMultiset::erase(const PointKey& key) { entries_.erase(key); }

BigInt PointMultiset::total() const
{
    BigInt t = 0;
    for (const auto& [key, entry] : entries_) t += entry.multiplicity();
    return t;
}

BigInt PointMultiset::multiplicity(const PointKey& key) const
{
    auto it = entries_.find(key);
    return it == entries_.end() ? BigInt(0) : it->second.multiplicity();
}

std::vector<std::pair<LabelledPoint, BigInt>> PointMultiset::seeds() const
{
    std::vector<std::pair<LabelledPoint, BigInt>> out;
    for (const auto& [key, entry] : entries_) {
        BigInt m = entry.seed_multiplicity();
        if (m == 0) continue;
        const Record& r = entry.primary();
        out.emplace_back(LabelledPoint{key.weight, key.label, true, r.provenance}, m);
    }
    return out;
}

std::map<PointKey, BigInt> PointMultiset::counts() const
{
    std::map<PointKey, BigInt> out;
    for (const auto& [key, entry] : entries_) out.emplace(key, entry.multiplicity());
    return out;
}

// ---------------------------------------------------------------------------
// Elementary moves

namespace {

Direction unique_direction(Weight w, std::int64_t ell)
{
    const auto dirs = wall_out_edges(w, ell);
    if (dirs.size() != 1) {
        throw GeometryError(to_string(w) + " has " + std::to_string(dirs.size()) +
                            " outgoing wall edges, expected exactly one");
    }
    return dirs.front();
}

bool has_edge(Weight w, Direction d, std::int64_t ell)
{
    const auto dirs = wall_out_edges(w, ell);
    return std::find(dirs.begin(), dirs.end(), d) != dirs.end();
}

LabelledPoint derived(const LabelledPoint& from, Weight w, Label l, Move m)
{
    LabelledPoint out;
    out.weight = w;
    out.label = l;
    out.provenance.move = m;
    out.provenance.iteration = from.provenance.iteration;
    out.provenance.parents = {from.key()};
    return out;
}

} // namespace

LabelledPoint rest(const LabelledPoint& pt, std::int64_t ell)
{
    require_ell(ell);
    return derived(pt, pt.weight, {pt.label.n + 3, pt.label.k + 1}, Move::rest);
}

LabelledPoint small_step(const LabelledPoint& pt, std::int64_t ell)
{
    const Direction d = unique_direction(pt.weight, ell);
    return derived(pt, pt.weight + step(d), {pt.label.n + 2, pt.label.k}, Move::small_step);
}

GiantLeap giant_leap(const LabelledPoint& pt, std::int64_t ell)
{
    if (is_corner(pt.weight, ell) || is_almost_corner(pt.weight, ell)) {
        throw DomainError("giant_leap: " + to_string(pt.weight) + " is a corner or an almost corner");
    }
    const Direction d = unique_direction(pt.weight, ell);

    Weight here = pt.weight;
    std::int64_t j = 0;
    while (!is_corner(here, ell)) {
        if (j == ell - 2) {
            throw GeometryError("giant_leap: no corner within " + std::to_string(ell - 2) + " steps of " +
                                to_string(pt.weight));
        }
        if (!has_edge(here, d, ell)) {
            throw GeometryError("giant_leap: wall path from " + to_string(pt.weight) + " is interrupted");
        }
        here = here + step(d);
        ++j;
    }
    const Weight corner = here;
    const Label label{pt.label.n + 2 * ell + 1, pt.label.k + 1};

    GiantLeap leap{corner, {}};
    for (Direction e : wall_out_edges(corner, ell)) {
        if (e == d) continue;
        Weight w = corner;
        for (std::int64_t s = 0; s < ell - 1 - j; ++s) {
            if (!has_edge(w, e, ell)) {
                throw GeometryError("giant_leap: wall path from corner " + to_string(corner) + " is interrupted");
            }
            w = w + step(e);
        }
        LabelledPoint out = derived(pt, w, label, Move::giant_leap);
        out.seed = true;
        out.provenance.leap_corner = corner;
        leap.outputs.push_back(std::move(out));
    }
    return leap;
}

Operation classify_seed(Weight w, std::int64_t ell)
{
    if (is_corner(w, ell)) return Operation::resting_once;
    if (is_almost_corner(w, ell)) return Operation::resting_twice;
    return Operation::giant_leap;
}

std::vector<LabelledPoint> iterate_seed(const LabelledPoint& seed, std::int64_t ell, int iteration)
{
    require_ell(ell);
    if (!in_wall_graph(seed.weight, ell)) {
        throw DomainError("iterate_seed: " + to_string(seed.weight) + " is not a wall-graph vertex");
    }
    const Operation op = classify_seed(seed.weight, ell);
    std::vector<LabelledPoint> out;

    if (op == Operation::giant_leap) {
        out = giant_leap(seed, ell).outputs;
    } else {
        // Resting once: ell-1 small steps then a rest.  Resting twice: a
        // rest, ell-2 small steps, a rest.  Only the last point is a seed.
        LabelledPoint cur = seed;
        const std::int64_t steps = op == Operation::resting_once ? ell - 1 : ell - 2;
        if (op == Operation::resting_twice) {
            cur = rest(cur, ell);
            out.push_back(cur);
        }
        for (std::int64_t i = 0; i < steps; ++i) {
            cur = small_step(cur, ell);
            out.push_back(cur);
        }
        cur = rest(cur, ell);
        cur.seed = true;
        out.push_back(cur);
    }

    for (auto& p : out) {
        p.provenance.iteration = iteration;
        p.provenance.operation = op;
        p.provenance.parents = {seed.key()};
    }
    return out;
}

// ---------------------------------------------------------------------------
// Merge rule

namespace {

bool leaps_towards(const PointMultiset::Record& r, Weight corner)
{
    return r.provenance.move == Move::giant_leap && r.provenance.leap_corner == corner;
}

} // namespace

MergeResult merge_pass(const PointMultiset& outputs, Mode mode, int iteration, std::int64_t seed_k)
{
    MergeResult result{outputs, {}};
    if (mode == Mode::legacy) return result;

    // corner -> keys reached by leaps towards it, and the distinct leap sources
    std::map<Weight, std::set<PointKey>> keys_by_corner;
    std::map<Weight, std::set<PointKey>> sources_by_corner;
    for (const auto& [key, entry] : outputs.entries()) {
        for (const auto& r : entry.records) {
            if (r.provenance.move != Move::giant_leap || !r.provenance.leap_corner) continue;
            const Weight corner = *r.provenance.leap_corner;
            keys_by_corner[corner].insert(key);
            sources_by_corner[corner].insert(r.provenance.parents.begin(), r.provenance.parents.end());
        }
    }

    for (const auto& [corner, sources] : sources_by_corner) {
        if (sources.size() >= 4) {
            throw GeometryError(std::to_string(sources.size()) + " giant leaps towards corner " + to_string(corner));
        }
        if (sources.size() < 2) continue;

        std::vector<PointKey> superposed;
        std::vector<PointKey> lone;
        for (const PointKey& key : keys_by_corner[corner]) {
            std::set<PointKey> parents;
            for (const auto& r : outputs.entries().at(key).records) {
                if (leaps_towards(r, corner)) parents.insert(r.provenance.parents.begin(), r.provenance.parents.end());
            }
            (parents.size() >= 2 ? superposed : lone).push_back(key);
        }
        if (superposed.empty()) continue;

        MergeEvent ev;
        ev.corner = corner;
        ev.kind = sources.size() == 2 ? MergeKind::type_ii : MergeKind::type_iii;
        ev.iteration = iteration;
        ev.seed_k = seed_k;
        for (const PointKey& src : sources) {
            LabelledPoint in{src.weight, src.label, true, {}};
            in.provenance.iteration = iteration - 1;
            ev.inputs.push_back(in);
        }

        const std::size_t expected_kept = ev.kind == MergeKind::type_ii ? 1 : 3;
        if (superposed.size() != expected_kept) {
            throw GeometryError("merge of type " + to_string(ev.kind) + " at " + to_string(corner) + " keeps " +
                                std::to_string(superposed.size()) + " points");
        }

        PointMultiset& pts = result.points;
        auto strip = [&](const PointKey& key) {
            if (!pts.contains(key)) return;
            auto entry = pts.entries().at(key);
            pts.erase(key);
            for (const auto& r : entry.records) {
                if (!leaps_towards(r, corner)) pts.add(key, r);
            }
        };

        for (const PointKey& key : superposed) {
            strip(key);
            LabelledPoint kept{key.weight, key.label, true, {}};
            kept.provenance.move = Move::giant_leap;
            kept.provenance.operation = Operation::giant_leap;
            kept.provenance.iteration = iteration;
            kept.provenance.merge = ev.kind;
            kept.provenance.leap_corner = corner;
            for (const auto& r : outputs.entries().at(key).records) {
                if (!leaps_towards(r, corner)) continue;
                kept.provenance.parents.insert(kept.provenance.parents.end(), r.provenance.parents.begin(),
                                               r.provenance.parents.end());
            }
            std::sort(kept.provenance.parents.begin(), kept.provenance.parents.end());
            kept.provenance.parents.erase(
                std::unique(kept.provenance.parents.begin(), kept.provenance.parents.end()),
                kept.provenance.parents.end());
            pts.add(kept, 1);
            ev.kept.push_back(kept);
        }
        for (const PointKey& key : lone) {
            const auto& entry = outputs.entries().at(key);
            for (const auto& r : entry.records) {
                if (!leaps_towards(r, corner)) continue;
                ev.discarded.push_back(LabelledPoint{key.weight, key.label, r.seed, r.provenance});
            }
            strip(key);
        }
        result.events.push_back(std::move(ev));
    }
    return result;
}

// ---------------------------------------------------------------------------
// Runs

LabelledPoint x_seed(std::int64_t k, std::int64_t ell)
{
    LabelledPoint p;
    p.weight = {k * ell, 0};
    p.label = {2 * k * ell, 0};
    p.seed = true;
    return p;
}

bool is_x_seed(const PointKey& key, std::int64_t ell)
{
    if (key.weight.b != 0 || key.weight.a <= 0 || key.weight.a % ell != 0) return false;
    return key.label == Label{2 * key.weight.a, 0};
}

MergeResult dynamics_round(const PointMultiset& previous, std::int64_t ell, int iteration, Mode mode,
                           std::int64_t seed_k)
{
    PointMultiset raw;
    for (const auto& [seed, mult] : previous.seeds()) {
        for (const auto& out : iterate_seed(seed, ell, iteration)) raw.add(out, mult);
    }
    return merge_pass(raw, mode, iteration, seed_k);
}

DynamicsRun run_dynamics(std::int64_t seed_k, std::int64_t ell, int iterations, Mode mode)
{
    require_ell(ell);
    if (seed_k < 1) throw DomainError("seed index must be at least 1");
    if (iterations < 1) throw DomainError("iterations must be at least 1");

    DynamicsRun run;
    run.ell = ell;
    run.seed_k = seed_k;
    run.iterations = iterations;
    run.mode = mode;

    PointMultiset q;
    q.add(x_seed(seed_k, ell));
    for (int i = 1; i <= iterations; ++i) {
        MergeResult r = dynamics_round(q, ell, i, mode, seed_k);
        q = std::move(r.points);
        run.y.add(q);
        run.q_trace.push_back(q);
        for (auto& ev : r.events) run.events.push_back(std::move(ev));
    }
    return run;
}

Assembly assemble(std::int64_t ell, const std::vector<std::int64_t>& seed_ks, int iterations, Mode mode,
                  unsigned jobs)
{
    require_ell(ell);
    Assembly out;
    out.runs.resize(seed_ks.size());
    parallel_for(seed_ks.size(), jobs,
                 [&](std::size_t i) { out.runs[i] = run_dynamics(seed_ks[i], ell, iterations, mode); });
    for (std::size_t i = 0; i < seed_ks.size(); ++i) {
        out.y.add(x_seed(seed_ks[i], ell));
        out.y.add(out.runs[i].y);
    }
    return out;
}

PointMultiset assemble_Y(std::int64_t ell, std::int64_t k_max, int iterations, Mode mode, unsigned jobs)
{
    std::vector<std::int64_t> ks;
    for (std::int64_t k = 1; k <= k_max; ++k) ks.push_back(k);
    return assemble(ell, ks, iterations, mode, jobs).y;
}

std::vector<MergeEvent> collect_events(const std::vector<DynamicsRun>& runs)
{
    std::vector<MergeEvent> out;
    for (const auto& r : runs) out.insert(out.end(), r.events.begin(), r.events.end());
    std::stable_sort(out.begin(), out.end(), [](const MergeEvent& x, const MergeEvent& y) {
        const Label lx = x.kept.empty() ? Label{} : x.kept.front().label;
        const Label ly = y.kept.empty() ? Label{} : y.kept.front().label;
        return std::tie(x.corner, lx, x.kind) < std::tie(y.corner, ly, y.kind);
    });
    return out;
}

std::vector<MergeEvent> merge_catalog(std::int64_t ell, std::int64_t i_max, Mode mode, unsigned jobs)
{
    require_ell(ell);
    // Every iteration raises the seed labels by at least 2 ell + 1.
    std::vector<std::int64_t> ks;
    std::vector<int> rounds;
    for (std::int64_t k = 1; 2 * k * ell <= i_max; ++k) {
        ks.push_back(k);
        rounds.push_back(static_cast<int>((i_max - 2 * k * ell) / (2 * ell + 1)) + 1);
    }
    std::vector<DynamicsRun> runs(ks.size());
    parallel_for(ks.size(), jobs, [&](std::size_t i) { runs[i] = run_dynamics(ks[i], ell, rounds[i], mode); });

    std::vector<MergeEvent> out;
    for (auto& ev : collect_events(runs)) {
        if (!ev.kept.empty() && ev.kept.front().label.n <= i_max) out.push_back(std::move(ev));
    }
    return out;
}

} // namespace a2bill
