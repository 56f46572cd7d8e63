#pragma once

// Billiard dynamics on the ell-walls of the dominant cone: the three
// elementary moves, the per-seed iteration, the geometric merge rule and
// the assembly of the multisets Y_k and Y.

#include "a2bill/geometry.hpp"
#include "a2bill/labels.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace a2bill {

/// Elementary move that produced a labelled point.
enum class Move { initial, rest, small_step, giant_leap };

/// Iteration-level operation that a seed went through.
enum class Operation { initial, resting_once, resting_twice, giant_leap };

enum class MergeKind { none, type_ii, type_iii };

enum class Mode { corrected, legacy };

std::string to_string(Move m);
std::string to_string(Operation op);
std::string to_string(MergeKind k);
std::string to_string(Mode m);

/// Multiset key: a weight together with a label.  Ordered by (a, b, n, k).
struct PointKey {
    Weight weight;
    Label label;

    friend bool operator==(const PointKey&, const PointKey&) = default;
    friend auto operator<=>(const PointKey&, const PointKey&) = default;
};

std::string to_string(const PointKey& key);

struct Provenance {
    Move move = Move::initial;
    Operation operation = Operation::initial;
    int iteration = 0;
    MergeKind merge = MergeKind::none;
    /// Seeds this point was produced from (several after a merge).
    std::vector<PointKey> parents;
    /// Corner the producing giant leap went through.
    std::optional<Weight> leap_corner;

    friend bool operator==(const Provenance&, const Provenance&) = default;
};

struct LabelledPoint {
    Weight weight;
    Label label;
    bool seed = false;
    Provenance provenance;

    PointKey key() const { return {weight, label}; }
};

/// Multiset of labelled points keyed on (weight, label).  Each key keeps a
/// list of provenance records with their own counts; the multiplicity of
/// a key is the sum of those counts.
class PointMultiset {
public:
    struct Record {
        bool seed = false;
        Provenance provenance;
        BigInt count;
    };

    struct Entry {
        std::vector<Record> records;

        BigInt multiplicity() const;
        BigInt seed_multiplicity() const;
        bool seed() const;
        /// The record used when a single provenance has to be shown: the
        /// first seed record, otherwise the first record.
        const Record& primary() const;
        MergeKind merge() const;
    };

    using Map = std::map<PointKey, Entry>;

    void add(const LabelledPoint& p, const BigInt& count = 1);
    void add(const PointKey& key, const Record& record);
    void add(const PointMultiset& other);

    /// Removes every record of `key`.
    void erase(const PointKey& key);

    const Map& entries() const { return entries_; }
    bool empty() const { return entries_.empty(); }
    /// Number of distinct keys.
    std::size_t distinct() const { return entries_.size(); }
    /// Sum of all multiplicities.
    BigInt total() const;
    bool contains(const PointKey& key) const { return entries_.count(key) != 0; }
    BigInt multiplicity(const PointKey& key) const;

    /// Seeds in canonical order, one LabelledPoint per key, with their
    /// seed multiplicities.
    std::vector<std::pair<LabelledPoint, BigInt>> seeds() const;

    /// Key -> multiplicity view, used for multiset comparisons.
    std::map<PointKey, BigInt> counts() const;

private:
    Map entries_;
};

// ---------------------------------------------------------------------------
// Elementary moves

/// Same weight, label (n+3)(v^{k+1}).  The weight is not checked against
/// the wall graph.
LabelledPoint rest(const LabelledPoint& pt, std::int64_t ell);

/// Moves along the unique outgoing wall edge, label (n+2)(v^k).  Throws
/// GeometryError when the out-degree is not one.
LabelledPoint small_step(const LabelledPoint& pt, std::int64_t ell);

struct GiantLeap {
    Weight corner;
    std::vector<LabelledPoint> outputs;
};

/// Walks to the next corner in the direction of the unique outgoing edge,
/// then fans out in every other available direction; the total path length
/// is ell - 1.  Outputs are labelled (n + 2 ell + 1)(v^{k+1}).
GiantLeap giant_leap(const LabelledPoint& pt, std::int64_t ell);

/// One iteration applied to a single seed: resting once from a corner,
/// resting twice from an almost corner, a giant leap otherwise.  Outputs
/// carry `iteration` and the seed as parent.
std::vector<LabelledPoint> iterate_seed(const LabelledPoint& seed, std::int64_t ell, int iteration = 1);

/// Operation iterate_seed will apply to a seed at `w`.
Operation classify_seed(Weight w, std::int64_t ell);

// ---------------------------------------------------------------------------
// Merge rule

struct MergeEvent {
    Weight corner;
    MergeKind kind = MergeKind::none;
    int iteration = 0;
    std::int64_t seed_k = 0;
    std::vector<LabelledPoint> inputs;
    std::vector<LabelledPoint> kept;
    std::vector<LabelledPoint> discarded;
};

struct MergeResult {
    PointMultiset points;
    std::vector<MergeEvent> events;
};

/// Applies the geometric merge rule to the outputs of one round.  For
/// every corner reached by two or three distinct giant leaps whose outputs
/// superpose, only the superposed points survive, at multiplicity one.
/// Legacy mode returns the input unchanged.
MergeResult merge_pass(const PointMultiset& outputs, Mode mode, int iteration = 0, std::int64_t seed_k = 0);

// ---------------------------------------------------------------------------
// Runs

/// The seed (k ell w1, 2k ell (v^0)).
LabelledPoint x_seed(std::int64_t k, std::int64_t ell);
bool is_x_seed(const PointKey& key, std::int64_t ell);

struct DynamicsRun {
    std::int64_t ell = 0;
    std::int64_t seed_k = 0;
    int iterations = 0;
    Mode mode = Mode::corrected;
    /// Q_1 ... Q_N (q_trace[0] is Q_1).
    std::vector<PointMultiset> q_trace;
    /// Union of q_trace.
    PointMultiset y;
    std::vector<MergeEvent> events;
};

DynamicsRun run_dynamics(std::int64_t seed_k, std::int64_t ell, int iterations, Mode mode);

/// One round: iterate every seed of `previous`, then apply the merge rule.
MergeResult dynamics_round(const PointMultiset& previous, std::int64_t ell, int iteration, Mode mode,
                           std::int64_t seed_k = 0);

struct Assembly {
    PointMultiset y;
    std::vector<DynamicsRun> runs;
};

/// Y = X-seeds plus Y_k for every k in `seed_ks`.  Runs for distinct k are
/// independent and are spread over `jobs` workers; the result does not
/// depend on `jobs`.
Assembly assemble(std::int64_t ell, const std::vector<std::int64_t>& seed_ks, int iterations, Mode mode,
                  unsigned jobs = 1);

/// assemble() for k = 1 .. k_max.
PointMultiset assemble_Y(std::int64_t ell, std::int64_t k_max, int iterations, Mode mode, unsigned jobs = 1);

/// Merge events of all runs in canonical order (corner, kept label, kind).
std::vector<MergeEvent> collect_events(const std::vector<DynamicsRun>& runs);

/// Every merge event whose kept label n is at most i_max.  Seeds k with
/// 2 k ell <= i_max are run until their seed labels exceed i_max.
std::vector<MergeEvent> merge_catalog(std::int64_t ell, std::int64_t i_max, Mode mode = Mode::corrected,
                                      unsigned jobs = 1);

} // namespace a2bill
