#pragma once

// Line-based interchange format for p-Kazhdan-Lusztig data and predictions.
//
//   p 5
//   # partial true
//   x 0 : box 0 0 L : 1
//   x 4 : box 1 1 U : v^-1+v
//
// Blank lines and other '#' lines are ignored.

#include "a2bill/conjecture.hpp"

#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>

namespace a2bill {

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& source, std::size_t line, const std::string& what);
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

struct PKLDataset {
    std::int64_t p = 0;
    /// Present on prediction files.
    std::optional<bool> partial;
    /// i -> expansion of the element indexed by x_i in the b-basis.
    std::map<std::size_t, KLCombination> records;

    friend bool operator==(const PKLDataset&, const PKLDataset&) = default;
};

PKLDataset parse_pkl(std::istream& in, const std::string& source = "<input>");
PKLDataset parse_pkl_file(const std::string& path);
PKLDataset parse_pkl_string(const std::string& text);

/// Canonical form: header, records sorted by i then alcove.
void write_pkl(std::ostream& out, const PKLDataset& ds);
std::string to_string(const PKLDataset& ds);

/// Indices whose record lacks its own alcove x_i.A0 or whose coefficient
/// there has constant term below 1.
std::vector<std::size_t> leading_term_violations(const PKLDataset& ds);

/// zeta_0 .. zeta_{i_max} as a dataset.
PKLDataset export_prediction(std::size_t i_max, const PointMultiset& ztilde, std::int64_t p, bool partial,
                             unsigned jobs = 1);

} // namespace a2bill
