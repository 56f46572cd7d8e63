#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "a2bill/dataio.hpp"
#include "a2bill/multiset_io.hpp"
#include "a2bill/render.hpp"
#include "a2bill/step3.hpp"

#include <random>
#include <sstream>
#include <tuple>

using namespace a2bill;

namespace {

LaurentPolynomial P(const char* s) { return LaurentPolynomial::parse(s); }

Alcove L(std::int64_t a, std::int64_t b) { return {{a, b}, Half::lower}; }
Alcove U(std::int64_t a, std::int64_t b) { return {{a, b}, Half::upper}; }

// Flat brute-force triple matcher.
using Flat = std::vector<std::tuple<Alcove, std::size_t, LaurentPolynomial>>;

Flat flatten(const Picture& pic)
{
    Flat out;
    for (const auto& [c, es] : pic) {
        for (const auto& e : es) out.emplace_back(c, e.i, e.f);
    }
    return out;
}

Flat oracle_collapse(Flat v)
{
    auto find = [&](const Alcove& c, std::size_t i, const LaurentPolynomial& f) {
        for (std::size_t k = 0; k < v.size(); ++k) {
            if (std::get<0>(v[k]) == c && std::get<1>(v[k]) == i && std::get<2>(v[k]) == f) return k;
        }
        return v.size();
    };
    for (;;) {
        std::sort(v.begin(), v.end(), [](const auto& x, const auto& y) {
            if (std::get<0>(x) != std::get<0>(y)) return std::get<0>(x) < std::get<0>(y);
            if (std::get<1>(x) != std::get<1>(y)) return std::get<1>(x) < std::get<1>(y);
            return std::get<2>(x) < std::get<2>(y);
        });
        bool hit = false;
        for (const auto& [c, i, f] : v) {
            if (c.half != Half::lower || !is_strictly_dominant(c.box)) continue;
            const std::size_t two = find(c, i + 2, f);
            const std::size_t one = find({c.box, Half::upper}, i + 1, f);
            if (two == v.size() || one == v.size()) continue;
            v.erase(v.begin() + std::max(one, two));
            v.erase(v.begin() + std::min(one, two));
            hit = true;
            break;
        }
        if (!hit) return v;
    }
}

} // namespace

TEST_CASE("p-KL files")
{
    const std::string text = "# data\np 5\n\nx 0 : box 0 0 L : 1\nx 4 :  box 1 1 U :  v + v^-1 \nx 4 : box 0 2 L : 1\n";
    const PKLDataset ds = parse_pkl_string(text);
    CHECK(ds.p == 5);
    CHECK_FALSE(ds.partial.has_value());
    CHECK(ds.records.size() == 2);
    CHECK(ds.records.at(4).at(U(1, 1)) == P("v^-1+v"));
    const std::string canon = to_string(ds);
    CHECK(canon == "p 5\nx 0 : box 0 0 L : 1\nx 4 : box 0 2 L : 1\nx 4 : box 1 1 U : v^-1+v\n");
    CHECK(to_string(parse_pkl_string(canon)) == canon);
    CHECK(leading_term_violations(ds).empty());
    CHECK(leading_term_violations(parse_pkl_string("p 3\nx 2 : box 0 0 L : 1\n")) == std::vector<std::size_t>{2});

    const PKLDataset pred = parse_pkl_string("p 7\n# partial false\nx 0 : box 0 0 L : 1\n");
    CHECK(pred.partial == false);

    struct Bad {
        const char* text;
        std::size_t line;
    };
    for (const Bad& b : {Bad{"x 0 : box 0 0 L : 1\n", 1}, Bad{"p 5\nx 0 : box 0 0 L : 1\nx 0 : box 0 0 L : v\n", 3},
                         Bad{"p 5\nx 0 : box 0 0 Q : 1\n", 2}, Bad{"p 5\nx 0 : box 0 0 L : 2v\n", 2},
                         Bad{"p 5\n\nx a : box 0 0 L : 1\n", 3}, Bad{"p 5\nx 0 : box -1 0 L : 1\n", 2},
                         Bad{"p 5\np 5\n", 2}, Bad{"p 5\nx 0 : box 0 0 L\n", 2}, Bad{"p 5\nx 1 : box 0 0 L : 0\n", 2},
                         Bad{"p 5\n# partial maybe\n", 2}, Bad{"q 5\n", 1}, Bad{"", 0}}) {
        CAPTURE(b.text);
        try {
            parse_pkl_string(b.text);
            FAIL("accepted");
        } catch (const ParseError& e) {
            CHECK(e.line() == b.line);
        }
    }
}

TEST_CASE("combined pictures")
{
    PKLDataset ds;
    ds.p = 5;
    ds.records[0][L(0, 0)] = P("1");
    CHECK(combined_picture(ds) == Picture{{L(0, 0), {{0, P("1")}}}});

    ds.records[4][U(1, 1)] = P("v^-1+v");
    ds.records[5][U(1, 1)] = P("v^-1+v");
    ds.records[6][U(1, 1)] = P("v^-2");
    const Picture pic = combined_picture(ds);
    CHECK(pic.at(U(1, 1)) == std::multiset<PictureEntry>{{4, P("v")}, {5, P("v")}});
    CHECK(entry_count(pic) == 3);
    CHECK(to_string(pic) == "box 0 0 L : 0 : 1\nbox 1 1 U : 4 : v\nbox 1 1 U : 5 : v\n");
}

TEST_CASE("triple collapsing")
{
    const LaurentPolynomial f = P("v"), g = P("1+v^2");
    Picture pic;
    pic[L(2, 3)] = {{7, f}, {9, f}};
    pic[U(2, 3)] = {{8, f}};
    std::size_t n = 0;
    CHECK(collapse_triples(pic, &n) == Picture{{L(2, 3), {{7, f}}}});
    CHECK(n == 1);

    Picture none;
    none[L(2, 3)] = {{7, f}, {9, g}};
    none[U(2, 3)] = {{8, f}};
    none[L(0, 3)] = {{1, f}, {3, f}};
    none[U(0, 3)] = {{2, f}};
    CHECK(collapse_triples(none, &n) == none);
    CHECK(n == 0);

    Picture twice;
    twice[L(1, 1)] = {{0, f}, {2, f}, {2, f}, {4, f}};
    twice[U(1, 1)] = {{1, f}, {3, f}};
    const Picture out = collapse_triples(twice, &n);
    CHECK(n == 2);
    CHECK(out == Picture{{L(1, 1), {{0, f}, {2, f}}}});
    CHECK(flatten(out) == oracle_collapse(flatten(twice)));

    std::mt19937 rng(3);
    const LaurentPolynomial polys[2] = {f, g};
    for (int trial = 0; trial < 300; ++trial) {
        Picture r;
        const int entries = std::uniform_int_distribution<int>(0, 14)(rng);
        for (int e = 0; e < entries; ++e) {
            const std::int64_t a = std::uniform_int_distribution<int>(0, 2)(rng);
            const std::int64_t b = std::uniform_int_distribution<int>(1, 2)(rng);
            const Half h = std::uniform_int_distribution<int>(0, 1)(rng) ? Half::upper : Half::lower;
            r[{{a, b}, h}].insert({static_cast<std::size_t>(std::uniform_int_distribution<int>(0, 6)(rng)),
                                   polys[std::uniform_int_distribution<int>(0, 1)(rng)]});
        }
        const Picture c = collapse_triples(r, &n);
        CHECK(flatten(c) == oracle_collapse(flatten(r)));
        CHECK(entry_count(c) + 2 * n == entry_count(r));
    }
}

TEST_CASE("rank one fixture against the explicit table")
{
    const SL2Fixture& fx = sl2_fixture_p3();
    auto lengths = [&](std::int64_t n) {
        std::set<std::int64_t> out;
        for (const auto& s : sl2_support(n, 3, fx)) out.insert(s.m);
        return out;
    };
    using S = std::set<std::int64_t>;
    CHECK(lengths(1) == S{1});
    CHECK(lengths(2) == S{2});
    CHECK(lengths(3) == S{3});
    CHECK(lengths(4) == S{2, 4});
    CHECK(lengths(5) == S{1, 5});
    CHECK(lengths(6) == S{6});
    CHECK(lengths(7) == S{5, 7});
    CHECK(lengths(8) == S{4, 8});
    CHECK(sl2_support(4, 3, fx) == std::set<SL2Support>{{2, 2}, {4, 1}});
    CHECK(sl2_support(41, 3, fx).count({37, 2}));
    CHECK(sl2_support(36, 3, fx).count({18, 4}));
    for (std::int64_t n = 1; n <= 41; ++n) {
        CHECK(sl2_support(n, 3, fx).count({n, 1}));
        for (const auto& s : sl2_support(n, 3, fx)) CHECK(s.m <= n);
    }
    CHECK_THROWS_AS(sl2_support(42, 3, fx), UncoveredError);
    CHECK_THROWS_AS(sl2_support(0, 3, fx), UncoveredError);
    CHECK_THROWS_AS(sl2_support(4, 5, fx), UncoveredError);

    std::istringstream in("p 3\nmax 4\n2 4 2\n4 4 1\n");
    const SL2Fixture small = parse_sl2_fixture(in);
    CHECK(sl2_support(4, 3, small) == sl2_support(4, 3, fx));
    std::istringstream bad("p 3\nmax 4\n5 4 1\n");
    CHECK_THROWS_AS(parse_sl2_fixture(bad), ParseError);
}

TEST_CASE("third generation heuristic")
{
    const SL2Fixture& fx = sl2_fixture_p3();
    CHECK(heuristic_filter({}, 3, fx).empty());

    const PointMultiset y = remove_x_seeds(assemble_Y(3, 2, 6, Mode::corrected), 3);
    // rule tagging every point as (18, 36), a generation 4 cell
    auto all_third = [](const PointKey&) { return std::optional<std::pair<std::int64_t, std::int64_t>>{{18, 36}}; };
    CHECK(heuristic_filter(y, 3, fx, all_third).empty());
    auto none = [](const PointKey&) { return std::optional<std::pair<std::int64_t, std::int64_t>>{}; };
    CHECK(heuristic_filter(y, 3, fx, none).counts() == y.counts());
    auto first_gen = [](const PointKey&) { return std::optional<std::pair<std::int64_t, std::int64_t>>{{4, 4}}; };
    CHECK(heuristic_filter(y, 3, fx, first_gen).counts() == y.counts());

    // removing one seed removes what it induced
    const PointKey victim = y.seeds().front().first.key();
    auto one = [&](const PointKey& k) {
        return k == victim ? std::optional<std::pair<std::int64_t, std::int64_t>>{{32, 40}} : std::nullopt;
    };
    const PointMultiset f = heuristic_filter(y, 3, fx, one);
    CHECK_FALSE(f.contains(victim));
    for (const auto& [key, entry] : f.entries()) {
        for (const auto& r : entry.records) {
            for (const auto& parent : r.provenance.parents) CHECK(parent != victim);
        }
    }
    CHECK(f.distinct() < y.distinct() - 1);
    CHECK(heuristic_filter(f, 3, fx, one).counts() == f.counts());

    const PointMultiset d = heuristic_filter(y, 3, fx);
    CHECK(heuristic_filter(d, 3, fx).counts() == d.counts());
    CHECK(default_restriction_rule()({{2, 3}, {9, 1}}) == std::pair<std::int64_t, std::int64_t>{3, 4});
    CHECK_FALSE(default_restriction_rule()({{2, 5}, {9, 1}}).has_value());
}

TEST_CASE("diff reports")
{
    const PKLDataset actual = parse_pkl_string("p 5\nx 0 : box 0 0 L : 1\nx 4 : box 0 2 L : 1\nx 4 : box 1 1 U : v\n");
    CHECK(diff_report(actual, actual).empty());

    PKLDataset pred = actual;
    pred.records[4].erase(U(1, 1));
    DiffReport r = diff_report(pred, actual);
    REQUIRE(r.entries.size() == 1);
    CHECK(r.entries[0].kind == DiffKind::missing_in_prediction);
    CHECK(r.failures() == 1);
    pred.partial = true;
    r = diff_report(pred, actual);
    CHECK(r.entries.size() == 1);
    CHECK(r.entries[0].informational);
    CHECK(r.failures() == 0);

    pred = actual;
    pred.records[4][U(1, 1)] = P("v^2");
    r = diff_report(pred, actual);
    REQUIRE(r.entries.size() == 1);
    CHECK(r.entries[0].kind == DiffKind::value_mismatch);
    CHECK(*r.entries[0].predicted == P("v^2"));
    CHECK(*r.entries[0].actual == P("v"));

    pred = actual;
    pred.records[4][U(2, 2)] = P("1");
    pred.records[9][L(0, 4)] = P("1");
    r = diff_report(pred, actual);
    REQUIRE(r.entries.size() == 1);
    CHECK(r.entries[0].kind == DiffKind::missing_in_actual);
    CHECK(r.only_in_prediction == std::vector<std::size_t>{9});
    CHECK(r.to_text().find("missing-in-actual") != std::string::npos);

    pred.p = 7;
    CHECK_THROWS_AS(diff_report(pred, actual), DomainError);
}

TEST_CASE("multiset files")
{
    const Assembly as = assemble(5, {1, 2}, 10, Mode::corrected);
    const MultisetFile file{{5, {1, 2}, 10, Mode::corrected}, as.y};
    for (MultisetFormat fmt : {MultisetFormat::json, MultisetFormat::tsv}) {
        const std::string text = to_string(file, fmt);
        std::istringstream in(text);
        const MultisetFile back = read_multiset(in);
        CHECK(back.meta.ell == 5);
        CHECK(back.meta.seeds == std::vector<std::int64_t>{1, 2});
        CHECK(back.meta.iterations == 10);
        CHECK(back.points.counts() == as.y.counts());
        CHECK(to_string(back, fmt) == text);
    }
    const std::string json = to_string(file, MultisetFormat::json);
    CHECK(json.find("\"merge\": \"III\"") != std::string::npos);
    CHECK(json.find("\"op\": \"leap\"") != std::string::npos);

    std::istringstream bad("# ell 5\na\tb\n");
    CHECK_THROWS_AS(read_multiset(bad), ParseError);
    std::istringstream badjson("{\"ell\": 5}");
    CHECK_THROWS_AS(read_multiset(badjson), ParseError);
    CHECK_THROWS_AS(parse_multiset_format("xml"), DomainError);

    std::ostringstream ev;
    write_events(ev, 5, merge_catalog(5, 88));
    CHECK(ev.str() == "5 5 5 III 87(v^7) 87(v^7) 87(v^7)\n5 5 5 II 88(v^8)\n");
}

TEST_CASE("rendering")
{
    RenderOptions svg;
    const std::string empty = render(PointMultiset{}, svg);
    CHECK(empty.find("<svg") == 0);
    CHECK(empty.find("<text") == std::string::npos);
    CHECK(empty.find("<line") != std::string::npos);

    const PointMultiset y = assemble_Y(5, 1, 10, Mode::corrected);
    svg.show_seeds = true;
    svg.color_merges = true;
    const std::string doc = render(y, svg);
    CHECK(doc == render(y, svg));
    CHECK(doc.find(">88(v^8)</text>") != std::string::npos);
    CHECK(doc.find("fill=\"blue\" text-decoration=\"underline\">88(v^8)") != std::string::npos);
    CHECK(doc.find("fill=\"red\"") == std::string::npos);
    // 10(v^0) at (5,0): x = 5, y = 0, unit 40, margin 40
    CHECK(doc.find("<text x=\"240.000\" y=\"") != std::string::npos);

    RenderOptions tikz;
    tikz.format = RenderFormat::tikz;
    tikz.show_seeds = true;
    tikz.color_merges = true;
    const std::string tex = render(assemble_Y(5, 2, 10, Mode::corrected), tikz);
    CHECK(tex.find("\\begin{tikzpicture}") == 0);
    CHECK(tex.find("text=red] at (6.000,6.928) {\\tiny $\\underline{87(v^{7})}$}") != std::string::npos);

    Picture pic;
    pic[U(1, 1)] = {{4, P("v+v^10")}};
    const std::string ptex = render(pic, tikz);
    CHECK(ptex.find("4(v+v^{10})") != std::string::npos);
    CHECK(render(pic, svg).find("4(v+v^10)") != std::string::npos);
}
