#include "a2bill/multiset_io.hpp"

#include "a2bill/pkl.hpp"

#include <json.hpp>

#include <cctype>
#include <fstream>
#include <limits>
#include <sstream>

namespace a2bill {

using Json = nlohmann::ordered_json;

namespace {

Move parse_move(const std::string& s)
{
    for (Move m : {Move::initial, Move::rest, Move::small_step, Move::giant_leap}) {
        if (to_string(m) == s) return m;
    }
    throw DomainError("unknown op '" + s + "'");
}

MergeKind parse_merge(const std::string& s)
{
    for (MergeKind k : {MergeKind::none, MergeKind::type_ii, MergeKind::type_iii}) {
        if (to_string(k) == s) return k;
    }
    throw DomainError("unknown merge kind '" + s + "'");
}

Mode parse_mode(const std::string& s)
{
    if (s == "corrected") return Mode::corrected;
    if (s == "legacy") return Mode::legacy;
    throw DomainError("unknown mode '" + s + "'");
}

std::int64_t seed_k_of(const MultisetMeta& m) { return m.seeds.empty() ? 0 : m.seeds.back(); }

void add_row(PointMultiset& ps, Weight w, Label l, bool seed, int iteration, Move op, MergeKind merge,
             const BigInt& mult)
{
    if (mult < 1) throw DomainError("multiplicity must be positive");
    PointMultiset::Record r;
    r.seed = seed;
    r.provenance.move = op;
    r.provenance.iteration = iteration;
    r.provenance.merge = merge;
    r.count = mult;
    ps.add(PointKey{w, l}, r);
}

MultisetFile read_json(std::istream& in, const std::string& source)
{
    Json j;
    try {
        in >> j;
    } catch (const Json::parse_error& e) {
        throw ParseError(source, 0, e.what());
    }
    MultisetFile f;
    try {
        f.meta.ell = j.at("ell").get<std::int64_t>();
        f.meta.iterations = j.at("iterations").get<int>();
        f.meta.mode = parse_mode(j.at("mode").get<std::string>());
        if (j.contains("seeds")) {
            f.meta.seeds = j.at("seeds").get<std::vector<std::int64_t>>();
        } else {
            f.meta.seeds = {j.at("seed_k").get<std::int64_t>()};
        }
        for (const auto& p : j.at("points")) {
            const auto w = p.at("weight").get<std::vector<std::int64_t>>();
            if (w.size() != 2) throw DomainError("weight must have two entries");
            BigInt mult = p.at("multiplicity").is_string() ? BigInt(p.at("multiplicity").get<std::string>())
                                                           : BigInt(p.at("multiplicity").get<std::int64_t>());
            add_row(f.points, {w[0], w[1]}, {p.at("n").get<std::int64_t>(), p.at("k").get<std::int64_t>()},
                    p.at("seed").get<bool>(), p.at("iteration").get<int>(),
                    parse_move(p.at("op").get<std::string>()), parse_merge(p.at("merge").get<std::string>()), mult);
        }
    } catch (const Json::exception& e) {
        throw ParseError(source, 0, e.what());
    } catch (const DomainError& e) {
        throw ParseError(source, 0, e.what());
    }
    return f;
}

constexpr const char* kTsvColumns = "a\tb\tn\tk\tseed\titeration\top\tmerge\tmultiplicity";

MultisetFile read_tsv(std::istream& in, const std::string& source)
{
    MultisetFile f;
    std::string line;
    std::size_t lineno = 0;
    bool header = false;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line[0] == '#') {
            std::istringstream is(line.substr(1));
            std::string key;
            is >> key;
            if (key == "ell") is >> f.meta.ell;
            if (key == "iterations") is >> f.meta.iterations;
            if (key == "mode") {
                std::string m;
                is >> m;
                f.meta.mode = parse_mode(m);
            }
            if (key == "seeds") {
                std::int64_t k;
                while (is >> k) f.meta.seeds.push_back(k);
            }
            continue;
        }
        if (!header) {
            if (line != kTsvColumns) throw ParseError(source, lineno, "unexpected column header");
            header = true;
            continue;
        }
        std::istringstream is(line);
        std::int64_t a, b, n, k;
        int seed, iteration;
        std::string op, merge, mult, rest;
        if (!(is >> a >> b >> n >> k >> seed >> iteration >> op >> merge >> mult) || (is >> rest)) {
            throw ParseError(source, lineno, "expected 9 columns");
        }
        try {
            add_row(f.points, {a, b}, {n, k}, seed != 0, iteration, parse_move(op), parse_merge(merge), BigInt(mult));
        } catch (const std::exception& e) {
            throw ParseError(source, lineno, e.what());
        }
    }
    if (!header) throw ParseError(source, lineno, "missing column header");
    return f;
}

} // namespace

MultisetFormat parse_multiset_format(const std::string& name)
{
    if (name == "json") return MultisetFormat::json;
    if (name == "tsv") return MultisetFormat::tsv;
    throw DomainError("unknown format '" + name + "' (json or tsv)");
}

void write_multiset(std::ostream& out, const MultisetFile& file, MultisetFormat format)
{
    const auto& meta = file.meta;
    if (format == MultisetFormat::json) {
        Json j;
        j["ell"] = meta.ell;
        j["seed_k"] = seed_k_of(meta);
        j["seeds"] = meta.seeds;
        j["iterations"] = meta.iterations;
        j["mode"] = to_string(meta.mode);
        Json points = Json::array();
        for (const auto& [key, entry] : file.points.entries()) {
            const auto& rec = entry.primary();
            const BigInt mult = entry.multiplicity();
            Json p;
            p["weight"] = {key.weight.a, key.weight.b};
            p["n"] = key.label.n;
            p["k"] = key.label.k;
            p["seed"] = entry.seed();
            p["iteration"] = rec.provenance.iteration;
            p["op"] = to_string(rec.provenance.move);
            p["merge"] = to_string(entry.merge());
            if (mult <= BigInt(std::numeric_limits<std::int64_t>::max())) {
                p["multiplicity"] = mult.convert_to<std::int64_t>();
            } else {
                p["multiplicity"] = mult.str();
            }
            points.push_back(std::move(p));
        }
        j["points"] = std::move(points);
        out << j.dump(1) << "\n";
        return;
    }
    out << "# ell " << meta.ell << "\n# seeds";
    for (auto k : meta.seeds) out << " " << k;
    out << "\n# iterations " << meta.iterations << "\n# mode " << to_string(meta.mode) << "\n";
    out << kTsvColumns << "\n";
    for (const auto& [key, entry] : file.points.entries()) {
        const auto& rec = entry.primary();
        out << key.weight.a << "\t" << key.weight.b << "\t" << key.label.n << "\t" << key.label.k << "\t"
            << (entry.seed() ? 1 : 0) << "\t" << rec.provenance.iteration << "\t" << to_string(rec.provenance.move)
            << "\t" << to_string(entry.merge()) << "\t" << entry.multiplicity().str() << "\n";
    }
}

std::string to_string(const MultisetFile& file, MultisetFormat format)
{
    std::ostringstream os;
    write_multiset(os, file, format);
    return os.str();
}

MultisetFile read_multiset(std::istream& in, const std::string& source)
{
    char first = 0;
    while (in.get(first) && std::isspace(static_cast<unsigned char>(first))) {
    }
    if (!in) throw ParseError(source, 0, "empty input");
    in.unget();
    return first == '{' ? read_json(in, source) : read_tsv(in, source);
}

MultisetFile read_multiset_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return read_multiset(in, path);
}

void write_events(std::ostream& out, std::int64_t ell, const std::vector<MergeEvent>& events)
{
    for (const auto& ev : events) {
        out << ell << " " << ev.corner.a << " " << ev.corner.b << " " << to_string(ev.kind);
        for (const auto& p : ev.kept) out << " " << to_string(p.label);
        out << "\n";
    }
}

} // namespace a2bill
