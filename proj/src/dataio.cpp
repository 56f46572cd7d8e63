#include "a2bill/dataio.hpp"

#include <algorithm>
#include <array>
#include <sstream>

namespace a2bill {

// ---------------------------------------------------------------------------
// Pictures

std::size_t entry_count(const Picture& pic)
{
    std::size_t n = 0;
    for (const auto& [c, entries] : pic) n += entries.size();
    return n;
}

Picture combined_picture(const PKLDataset& ds)
{
    Picture pic;
    for (const auto& [j, comb] : ds.records) {
        for (const auto& [c, f] : comb) {
            LaurentPolynomial bar = truncate_nonneg(f);
            if (bar.is_zero()) continue;
            pic[c].insert({j, std::move(bar)});
        }
    }
    return pic;
}

namespace {

bool take(Picture& pic, const Alcove& c, const PictureEntry& e)
{
    auto slot = pic.find(c);
    if (slot == pic.end()) return false;
    auto it = slot->second.find(e);
    if (it == slot->second.end()) return false;
    slot->second.erase(it);
    if (slot->second.empty()) pic.erase(slot);
    return true;
}

bool has(const Picture& pic, const Alcove& c, const PictureEntry& e)
{
    auto slot = pic.find(c);
    return slot != pic.end() && slot->second.count(e) != 0;
}

/// First matching triple in scan order, as (box, entry at the lower alcove).
std::optional<std::pair<Weight, PictureEntry>> find_triple(const Picture& pic)
{
    for (const auto& [c, entries] : pic) {
        if (c.half != Half::lower || !is_strictly_dominant(c.box)) continue;
        const Alcove upper{c.box, Half::upper};
        for (const auto& e : entries) {
            if (has(pic, c, {e.i + 2, e.f}) && has(pic, upper, {e.i + 1, e.f})) return std::pair{c.box, e};
        }
    }
    return std::nullopt;
}

} // namespace

Picture collapse_triples(Picture pic, std::size_t* collapsed)
{
    std::size_t count = 0;
    while (auto hit = find_triple(pic)) {
        const auto& [box, e] = *hit;
        take(pic, {box, Half::lower}, {e.i + 2, e.f});
        take(pic, {box, Half::upper}, {e.i + 1, e.f});
        ++count;
    }
    if (collapsed) *collapsed = count;
    return pic;
}

std::string to_string(const Picture& pic)
{
    std::ostringstream os;
    for (const auto& [c, entries] : pic) {
        for (const auto& e : entries) os << to_string(c) << " : " << e.i << " : " << e.f.to_string() << "\n";
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// Rank one fixture

namespace {

struct FigureCell {
    int tag;
    int x;
    int y;
};

// Shaded cells of the p = 3 generation chart: tag, column m - 1, row n - 1.
// Tag t is generation t + 1; the black diagonal is generation 1.
constexpr std::array<FigureCell, 76> kFigureCells{{
    {1, 1, 3},   {1, 0, 4},   {1, 4, 6},   {1, 3, 7},   {1, 7, 9},   {1, 6, 10},  {2, 5, 11},  {2, 4, 12},
    {2, 6, 12},  {2, 3, 13},  {2, 7, 13},  {2, 2, 14},  {2, 1, 15},  {2, 3, 15},  {2, 0, 16},  {2, 4, 16},
    {1, 10, 12}, {1, 9, 13},  {1, 13, 15}, {1, 12, 16}, {1, 16, 18}, {1, 15, 19}, {2, 14, 20}, {2, 13, 21},
    {2, 15, 21}, {2, 12, 22}, {2, 16, 22}, {2, 11, 23}, {2, 10, 24}, {2, 12, 24}, {2, 9, 25},  {2, 13, 25},
    {1, 19, 21}, {1, 18, 22}, {1, 22, 24}, {1, 21, 25}, {1, 25, 27}, {1, 24, 28}, {2, 23, 29}, {2, 22, 30},
    {2, 24, 30}, {2, 21, 31}, {2, 25, 31}, {2, 20, 32}, {2, 19, 33}, {2, 21, 33}, {2, 18, 34}, {2, 22, 34},
    {3, 17, 35}, {3, 16, 36}, {3, 18, 36}, {3, 15, 37}, {3, 19, 37}, {3, 14, 38}, {3, 20, 38}, {3, 13, 39},
    {3, 15, 39}, {3, 19, 39}, {3, 21, 39}, {1, 28, 30}, {1, 27, 31}, {1, 31, 33}, {1, 30, 34}, {1, 34, 36},
    {1, 33, 37}, {2, 32, 38}, {2, 31, 39}, {2, 33, 39}, {1, 37, 39}, {3, 12, 40}, {3, 16, 40}, {3, 18, 40},
    {3, 22, 40}, {2, 30, 40}, {2, 34, 40}, {1, 36, 40}
}};

constexpr int kFigureRows = 41;

SL2Fixture build_p3()
{
    SL2Fixture fx;
    fx.p = 3;
    fx.max_n = kFigureRows;
    for (int n = 1; n <= kFigureRows; ++n) fx.pairs.insert({n, n, 1});
    for (const auto& cell : kFigureCells) fx.pairs.insert({cell.x + 1, cell.y + 1, cell.tag + 1});
    return fx;
}

} // namespace

const SL2Fixture& sl2_fixture_p3()
{
    static const SL2Fixture fx = build_p3();
    return fx;
}

SL2Fixture parse_sl2_fixture(std::istream& in, const std::string& source)
{
    SL2Fixture fx;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream is(line);
        std::string first;
        if (!(is >> first) || first[0] == '#') continue;
        std::string rest;
        if (first == "p" || first == "max") {
            std::int64_t v = 0;
            if (!(is >> v) || (is >> rest)) throw ParseError(source, lineno, "expected '" + first + " <int>'");
            (first == "p" ? fx.p : fx.max_n) = v;
            continue;
        }
        SL2Pair pair;
        std::istringstream row(line);
        if (!(row >> pair.m >> pair.n >> pair.generation) || (row >> rest)) {
            throw ParseError(source, lineno, "expected 'm n generation'");
        }
        if (pair.m < 1 || pair.m > pair.n || pair.generation < 1) {
            throw ParseError(source, lineno, "need 1 <= m <= n and generation >= 1");
        }
        fx.pairs.insert(pair);
    }
    if (fx.p < 2 || fx.max_n < 1) throw ParseError(source, lineno, "missing p or max header");
    return fx;
}

std::set<SL2Support> sl2_support(std::int64_t n, std::int64_t p, const SL2Fixture& fixture)
{
    if (p != fixture.p) {
        throw UncoveredError("rank one fixture is for p=" + std::to_string(fixture.p) + ", not p=" + std::to_string(p));
    }
    if (n < 1 || n > fixture.max_n) {
        throw UncoveredError("length " + std::to_string(n) + " is not covered by the rank one fixture (1.." +
                             std::to_string(fixture.max_n) + ")");
    }
    std::set<SL2Support> out;
    for (const auto& pair : fixture.pairs) {
        if (pair.n == n) out.insert({pair.m, pair.generation});
    }
    return out;
}

// ---------------------------------------------------------------------------
// Heuristic

RestrictionRule default_restriction_rule()
{
    return [](const PointKey& key) -> std::optional<std::pair<std::int64_t, std::int64_t>> {
        const std::int64_t m = key.weight.b;
        const std::int64_t n = key.label.n / 2;
        if (n < 1 || m < 1 || m > n) return std::nullopt;
        return std::pair{m, n};
    };
}

PointMultiset heuristic_filter(const PointMultiset& ztilde, std::int64_t p, const SL2Fixture& fixture,
                               const RestrictionRule& rule)
{
    std::set<PointKey> removed;
    for (const auto& [key, entry] : ztilde.entries()) {
        const auto mn = rule(key);
        if (!mn) continue;
        for (const auto& s : sl2_support(mn->second, p, fixture)) {
            if (s.m == mn->first && s.generation >= 3) removed.insert(key);
        }
    }

    auto induced = [&](const PointMultiset::Record& r) {
        return std::any_of(r.provenance.parents.begin(), r.provenance.parents.end(),
                           [&](const PointKey& k) { return removed.count(k) != 0; });
    };
    for (bool changed = true; changed;) {
        changed = false;
        for (const auto& [key, entry] : ztilde.entries()) {
            if (removed.count(key)) continue;
            if (std::all_of(entry.records.begin(), entry.records.end(), induced)) {
                removed.insert(key);
                changed = true;
            }
        }
    }

    PointMultiset out;
    for (const auto& [key, entry] : ztilde.entries()) {
        if (removed.count(key)) continue;
        for (const auto& r : entry.records) {
            if (!induced(r)) out.add(key, r);
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Diffs

std::string to_string(DiffKind k)
{
    switch (k) {
    case DiffKind::missing_in_prediction: return "missing-in-prediction";
    case DiffKind::missing_in_actual: return "missing-in-actual";
    case DiffKind::value_mismatch: return "value-mismatch";
    }
    return "?";
}

std::size_t DiffReport::failures() const
{
    return static_cast<std::size_t>(
        std::count_if(entries.begin(), entries.end(), [](const DiffEntry& e) { return !e.informational; }));
}

std::string DiffReport::to_text() const
{
    std::ostringstream os;
    for (const auto& e : entries) {
        os << (e.informational ? "info" : "FAIL") << "\t" << to_string(e.kind) << "\tx " << e.i << " : "
           << to_string(e.alcove) << " : predicted " << (e.predicted ? e.predicted->to_string() : "-") << " actual "
           << (e.actual ? e.actual->to_string() : "-") << "\n";
    }
    auto list = [&](const char* what, const std::vector<std::size_t>& v) {
        if (v.empty()) return;
        os << "# indices only in " << what << ":";
        for (auto i : v) os << " " << i;
        os << "\n";
    };
    list("prediction", only_in_prediction);
    list("actual", only_in_actual);
    os << "# " << failures() << " failures, " << entries.size() - failures() << " informational"
       << (partial ? " (partial prediction)" : "") << "\n";
    return os.str();
}

DiffReport diff_report(const PKLDataset& prediction, const PKLDataset& actual)
{
    if (prediction.p != actual.p) {
        throw DomainError("p mismatch: prediction has p=" + std::to_string(prediction.p) + ", data has p=" +
                          std::to_string(actual.p));
    }
    DiffReport report;
    report.partial = prediction.partial.value_or(false);
    for (const auto& [i, comb] : prediction.records) {
        if (!actual.records.count(i)) report.only_in_prediction.push_back(i);
    }
    for (const auto& [i, real] : actual.records) {
        auto pit = prediction.records.find(i);
        if (pit == prediction.records.end()) {
            report.only_in_actual.push_back(i);
            continue;
        }
        const KLCombination& pred = pit->second;
        std::set<Alcove> keys;
        for (const auto& [c, f] : pred) keys.insert(c);
        for (const auto& [c, f] : real) keys.insert(c);
        for (const Alcove& c : keys) {
            auto p = pred.find(c);
            auto a = real.find(c);
            DiffEntry e;
            e.i = i;
            e.alcove = c;
            if (p != pred.end()) e.predicted = p->second;
            if (a != real.end()) e.actual = a->second;
            if (p == pred.end()) {
                e.kind = DiffKind::missing_in_prediction;
                e.informational = report.partial;
            } else if (a == real.end()) {
                e.kind = DiffKind::missing_in_actual;
            } else if (p->second != a->second) {
                e.kind = DiffKind::value_mismatch;
            } else {
                continue;
            }
            report.entries.push_back(std::move(e));
        }
    }
    return report;
}

} // namespace a2bill
