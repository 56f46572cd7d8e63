#include "a2bill/pkl.hpp"

#include "a2bill/parallel.hpp"

#include <fstream>
#include <sstream>

namespace a2bill {

ParseError::ParseError(const std::string& source, std::size_t line, const std::string& what)
    : std::runtime_error(source + ":" + std::to_string(line) + ": " + what), line_(line)
{
}

namespace {

std::string trim(const std::string& s)
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::vector<std::string> split(const std::string& s, char sep)
{
    std::vector<std::string> parts;
    std::string cur;
    std::istringstream is(s);
    while (std::getline(is, cur, sep)) parts.push_back(trim(cur));
    if (!s.empty() && s.back() == sep) parts.emplace_back();
    return parts;
}

std::optional<std::int64_t> to_int(const std::string& s)
{
    if (s.empty()) return std::nullopt;
    std::size_t used = 0;
    try {
        const long long v = std::stoll(s, &used);
        if (used != s.size()) return std::nullopt;
        return v;
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

} // namespace

PKLDataset parse_pkl(std::istream& in, const std::string& source)
{
    PKLDataset ds;
    bool have_p = false;
    std::string raw;
    std::size_t lineno = 0;
    auto fail = [&](const std::string& why) { throw ParseError(source, lineno, why); };

    while (std::getline(in, raw)) {
        ++lineno;
        const std::string line = trim(raw);
        if (line.empty()) continue;
        if (line[0] == '#') {
            std::istringstream is(line.substr(1));
            std::string word, value, rest;
            is >> word >> value;
            if (word == "partial") {
                if (value != "true" && value != "false") fail("partial flag must be true or false");
                if (is >> rest) fail("trailing text after partial flag");
                ds.partial = value == "true";
            }
            continue;
        }
        if (line[0] == 'p' && (line.size() == 1 || line[1] == ' ' || line[1] == '\t')) {
            if (have_p) fail("duplicate p header");
            if (!ds.records.empty()) fail("p header after records");
            auto v = to_int(trim(line.substr(1)));
            if (!v || *v < 2) fail("p header needs an integer >= 2");
            ds.p = *v;
            have_p = true;
            continue;
        }
        if (line[0] != 'x') fail("expected 'p', 'x' or '#'");
        if (!have_p) fail("record before p header");
        const auto parts = split(line, ':');
        if (parts.size() != 3) fail("record needs the form 'x <i> : box <a> <b> <L|U> : <poly>'");
        auto idx = to_int(trim(parts[0].substr(1)));
        if (!idx || *idx < 0) fail("bad index '" + trim(parts[0].substr(1)) + "'");
        Alcove c;
        try {
            c = parse_alcove(parts[1]);
        } catch (const std::exception& e) {
            fail(e.what());
        }
        if (!is_dominant(c)) fail("alcove " + to_string(c) + " is not dominant");
        LaurentPolynomial f;
        try {
            f = LaurentPolynomial::parse(parts[2]);
        } catch (const PolynomialParseError& e) {
            fail(e.what());
        }
        if (f.is_zero()) fail("zero coefficient");
        auto& rec = ds.records[static_cast<std::size_t>(*idx)];
        if (rec.count(c)) fail("duplicate record for x " + std::to_string(*idx) + " at " + to_string(c));
        rec.emplace(c, std::move(f));
    }
    if (!have_p) throw ParseError(source, lineno, "missing p header");
    return ds;
}

PKLDataset parse_pkl_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return parse_pkl(in, path);
}

PKLDataset parse_pkl_string(const std::string& text)
{
    std::istringstream in(text);
    return parse_pkl(in);
}

void write_pkl(std::ostream& out, const PKLDataset& ds)
{
    out << "p " << ds.p << "\n";
    if (ds.partial) out << "# partial " << (*ds.partial ? "true" : "false") << "\n";
    for (const auto& [i, comb] : ds.records) {
        for (const auto& [c, f] : comb) out << "x " << i << " : " << to_string(c) << " : " << f.to_string() << "\n";
    }
}

std::string to_string(const PKLDataset& ds)
{
    std::ostringstream os;
    write_pkl(os, ds);
    return os.str();
}

std::vector<std::size_t> leading_term_violations(const PKLDataset& ds)
{
    std::vector<std::size_t> bad;
    for (const auto& [i, comb] : ds.records) {
        auto it = comb.find(x_sequence(i).alcove());
        if (it == comb.end() || it->second.coefficient(0) < 1) bad.push_back(i);
    }
    return bad;
}

PKLDataset export_prediction(std::size_t i_max, const PointMultiset& ztilde, std::int64_t p, bool partial,
                             unsigned jobs)
{
    const ZetaAssembler assembler(ztilde, p);
    std::vector<KLCombination> zetas(i_max + 1);
    parallel_for(zetas.size(), jobs, [&](std::size_t i) { zetas[i] = assembler.zeta(i); });
    PKLDataset ds;
    ds.p = p;
    ds.partial = partial;
    for (std::size_t i = 0; i <= i_max; ++i) ds.records.emplace(i, std::move(zetas[i]));
    return ds;
}

} // namespace a2bill
