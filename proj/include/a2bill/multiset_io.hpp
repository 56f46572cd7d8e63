#pragma once

// JSON and TSV serialisation of labelled point multisets, and the merge
// event listing.

#include "a2bill/dynamics.hpp"

#include <istream>
#include <ostream>
#include <string>
#include <vector>

namespace a2bill {

enum class MultisetFormat { json, tsv };

MultisetFormat parse_multiset_format(const std::string& name);

struct MultisetMeta {
    std::int64_t ell = 0;
    std::vector<std::int64_t> seeds;
    int iterations = 0;
    Mode mode = Mode::corrected;
};

struct MultisetFile {
    MultisetMeta meta;
    PointMultiset points;
};

/// Points in canonical order; one row per key using its primary record.
void write_multiset(std::ostream& out, const MultisetFile& file, MultisetFormat format);
std::string to_string(const MultisetFile& file, MultisetFormat format);

/// Detects the format from the first character ('{' means JSON).  Each key
/// comes back with a single record carrying the stored provenance.
MultisetFile read_multiset(std::istream& in, const std::string& source = "<input>");
MultisetFile read_multiset_file(const std::string& path);

/// "ell corner_a corner_b type n(v^k)..." per event.
void write_events(std::ostream& out, std::int64_t ell, const std::vector<MergeEvent>& events);

} // namespace a2bill
