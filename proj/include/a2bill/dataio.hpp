#pragma once

// Preparation of p-Kazhdan-Lusztig data for comparison with predictions:
// combined pictures, triple collapsing, the rank one generation fixture,
// the third generation heuristic and coefficient diffs.

#include "a2bill/dynamics.hpp"
#include "a2bill/pkl.hpp"

#include <functional>
#include <istream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace a2bill {

// ---------------------------------------------------------------------------
// Pictures

struct PictureEntry {
    std::size_t i = 0;
    LaurentPolynomial f;

    friend bool operator==(const PictureEntry&, const PictureEntry&) = default;
    friend bool operator<(const PictureEntry& x, const PictureEntry& y)
    {
        if (x.i != y.i) return x.i < y.i;
        return x.f < y.f;
    }
};

/// Alcove -> multiset of entries i(f).
using Picture = std::map<Alcove, std::multiset<PictureEntry>>;

std::size_t entry_count(const Picture& pic);

/// For every coefficient f of b_y in the element indexed by x_j, writes
/// j(truncate_nonneg(f)) at the alcove of y.  Truncations that vanish are
/// skipped.
Picture combined_picture(const PKLDataset& ds);

/// Replaces every triple {lower: i(f), (i+2)(f); upper: (i+1)(f)} over a
/// strictly dominant box by a single i(f) in the lower alcove, scanning
/// boxes and then i in ascending order until nothing matches.
Picture collapse_triples(Picture pic, std::size_t* collapsed = nullptr);

/// One line per entry: "box <a> <b> <L|U> : <i> : <f>".
std::string to_string(const Picture& pic);

// ---------------------------------------------------------------------------
// Rank one fixture

class UncoveredError : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

struct SL2Pair {
    std::int64_t m = 0;
    std::int64_t n = 0;
    int generation = 1;

    friend auto operator<=>(const SL2Pair&, const SL2Pair&) = default;
};

/// For each length n in [1, max_n]: the lengths m such that b at length m
/// occurs in the p-canonical element at length n, each with its generation.
struct SL2Fixture {
    std::int64_t p = 0;
    std::int64_t max_n = 0;
    std::set<SL2Pair> pairs;
};

/// Built-in data for p = 3, lengths 1 .. 41.
const SL2Fixture& sl2_fixture_p3();

/// Lines "m n generation"; a header line "p <int>" and "max <int>".
SL2Fixture parse_sl2_fixture(std::istream& in, const std::string& source = "<input>");

struct SL2Support {
    std::int64_t m = 0;
    int generation = 1;

    friend auto operator<=>(const SL2Support&, const SL2Support&) = default;
};

/// Throws UncoveredError outside 1 .. max_n or for a different p.
std::set<SL2Support> sl2_support(std::int64_t n, std::int64_t p, const SL2Fixture& fixture);

// ---------------------------------------------------------------------------
// Third generation heuristic

/// Maps a labelled point to rank one lengths (m, n) to look up, or nothing
/// when the point has no rank one shadow.
using RestrictionRule = std::function<std::optional<std::pair<std::int64_t, std::int64_t>>(const PointKey&)>;

/// Provisional default: (m, n) = (b, floor(label n / 2)), nothing if m > n
/// or n < 1.
RestrictionRule default_restriction_rule();

/// Removes every point whose restriction has generation >= 3, and every
/// point produced only from removed points.
PointMultiset heuristic_filter(const PointMultiset& ztilde, std::int64_t p, const SL2Fixture& fixture,
                               const RestrictionRule& rule = default_restriction_rule());

// ---------------------------------------------------------------------------
// Diffs

enum class DiffKind { missing_in_prediction, missing_in_actual, value_mismatch };

std::string to_string(DiffKind k);

struct DiffEntry {
    DiffKind kind = DiffKind::value_mismatch;
    std::size_t i = 0;
    Alcove alcove;
    std::optional<LaurentPolynomial> predicted;
    std::optional<LaurentPolynomial> actual;
    /// Missing coefficients of a partial prediction are not failures.
    bool informational = false;
};

struct DiffReport {
    bool partial = false;
    std::vector<DiffEntry> entries;
    /// Indices present in only one of the two datasets; not compared.
    std::vector<std::size_t> only_in_prediction;
    std::vector<std::size_t> only_in_actual;

    std::size_t failures() const;
    bool empty() const { return entries.empty(); }
    std::string to_text() const;
};

/// Compares every index present in both datasets.  Throws DomainError on
/// a p mismatch.
DiffReport diff_report(const PKLDataset& prediction, const PKLDataset& actual);

} // namespace a2bill
