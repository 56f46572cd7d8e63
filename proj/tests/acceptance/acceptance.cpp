// One line per acceptance criterion, with wall-clock timings.  Exit status
// is nonzero when any criterion fails.

#include "a2bill/conjecture.hpp"
#include "a2bill/dataio.hpp"
#include "a2bill/dynamics.hpp"
#include "a2bill/invariants.hpp"
#include "a2bill/pkl.hpp"
#include "a2bill/step3.hpp"

#include <array>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <tuple>
#include <vector>

using namespace a2bill;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

struct Cli {
    int code = -1;
    std::string out;
};

Cli cli(const std::string& args)
{
    const std::string cmd = std::string(A2BILL_CLI) + " " + args + " 2>&1";
    Cli r;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return r;
    std::array<char, 4096> buf{};
    std::size_t got = 0;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
    const int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

// (a, b, n, k, seed, merge)
using Row = std::tuple<std::int64_t, std::int64_t, std::int64_t, std::int64_t, int, std::string>;

std::multiset<Row> read_fixture(const std::string& name)
{
    std::ifstream in(std::string(A2BILL_FIXTURES) + "/" + name);
    std::multiset<Row> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream is(line);
        Row r;
        is >> std::get<0>(r) >> std::get<1>(r) >> std::get<2>(r) >> std::get<3>(r) >> std::get<4>(r) >> std::get<5>(r);
        rows.insert(r);
    }
    return rows;
}

// Rows of a `simulate --format tsv` document, repeated by multiplicity.
std::multiset<Row> read_simulation(const std::string& tsv)
{
    std::istringstream in(tsv);
    std::multiset<Row> rows;
    std::string line;
    bool header = false;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (!header) {
            header = true;
            continue;
        }
        std::istringstream is(line);
        Row r;
        int iteration = 0, mult = 0;
        std::string op;
        is >> std::get<0>(r) >> std::get<1>(r) >> std::get<2>(r) >> std::get<3>(r) >> std::get<4>(r) >> iteration >> op >>
            std::get<5>(r) >> mult;
        for (int m = 0; m < mult; ++m) rows.insert(r);
    }
    return rows;
}

std::string show(const Row& r)
{
    return std::to_string(std::get<2>(r)) + "(v^" + std::to_string(std::get<3>(r)) + ")@(" +
           std::to_string(std::get<0>(r)) + "," + std::to_string(std::get<1>(r)) + ")" +
           (std::get<4>(r) ? " seed" : "") + (std::get<5>(r) == "none" ? "" : " " + std::get<5>(r));
}

Outcome figure_replay(int seed, const std::string& fixture)
{
    const Cli r = cli("simulate --ell 5 --seed " + std::to_string(seed) + " --iterations 10 --format tsv");
    if (r.code != 0) return {false, "simulate exited " + std::to_string(r.code)};
    const auto fig = read_fixture(fixture);
    const auto sim = read_simulation(r.out);
    std::vector<Row> only_fig, only_sim;
    std::set_difference(fig.begin(), fig.end(), sim.begin(), sim.end(), std::back_inserter(only_fig));
    std::set_difference(sim.begin(), sim.end(), fig.begin(), fig.end(), std::back_inserter(only_sim));
    std::string detail = std::to_string(sim.size()) + " simulated, " + std::to_string(fig.size()) + " drawn";
    for (const Row& x : only_fig) detail += "; drawn only: " + show(x);
    for (const Row& x : only_sim) detail += "; simulated only: " + show(x);
    return {only_fig.empty() && only_sim.empty(), detail};
}

std::set<std::string> lines_of(const std::string& text)
{
    std::set<std::string> out;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) {
        if (!line.empty()) out.insert(line);
    }
    return out;
}

Outcome merge_catalog_events()
{
    struct Window {
        int ell;
        int i_max;
        std::set<std::string> want;
    };
    const std::vector<Window> windows{
        {5, 88, {"5 5 5 III 87(v^7) 87(v^7) 87(v^7)", "5 5 5 II 88(v^8)"}},
        {7, 118,
         {"7 7 7 III 103(v^5) 103(v^5) 103(v^5)", "7 7 7 II 104(v^6)", "7 14 7 III 117(v^5) 117(v^5) 117(v^5)",
          "7 14 7 II 118(v^6)"}},
        {11, 182,
         {"11 11 11 III 159(v^5) 159(v^5) 159(v^5)", "11 11 11 II 160(v^6)",
          "11 22 11 III 181(v^5) 181(v^5) 181(v^5)", "11 22 11 II 182(v^6)"}},
    };
    std::size_t events = 0;
    std::string detail;
    bool pass = true;
    for (const Window& w : windows) {
        const Cli r = cli("merge-events --ell " + std::to_string(w.ell) + " --i-max " + std::to_string(w.i_max));
        const auto got = lines_of(r.out);
        events += got.size();
        if (r.code != 0 || got != w.want) {
            pass = false;
            detail += "ell=" + std::to_string(w.ell) + " mismatch: " + r.out;
        }
    }
    if (pass) detail = std::to_string(events) + " events in windows 88/118/182";
    return {pass && events == 10, detail};
}

Outcome invariant_suite()
{
    static const std::vector<std::string> names{"seed-congruence",      "no-seed-exponent-in-ell-Z+", "seed-exponent-formula",
                                                "operation-pattern",    "disjointness",               "self-similarity",
                                                "column-confinement",   "multiplicity-one"};
    std::size_t checked = 0;
    for (std::int64_t ell : {3, 5, 7, 11}) {
        const CheckReport rep = run_invariant_suite(ell, {1, 2, 3}, 30, Mode::corrected, 4);
        for (const std::string& name : names) {
            const CheckResult* c = rep.find(name);
            if (!c) return {false, "ell=" + std::to_string(ell) + ": no check " + name};
            if (c->status != CheckStatus::pass) {
                return {false, "ell=" + std::to_string(ell) + " " + name + ": " + to_string(c->status) +
                                   (c->witnesses.empty() ? "" : " " + c->witnesses.front())};
            }
            checked += c->checked;
        }
    }
    return {true, "8 checks x 4 values of ell, " + std::to_string(checked) + " items"};
}

Outcome correction_witness()
{
    const DynamicsRun corrected = run_dynamics(1, 5, 8, Mode::corrected);
    const DynamicsRun legacy = run_dynamics(1, 5, 8, Mode::legacy);
    std::set<Weight> corners;
    for (const auto& ev : corrected.events) corners.insert(ev.corner);

    const auto want = corrected.y.counts();
    std::set<PointKey> extra;
    for (const auto& [key, m] : legacy.y.counts()) {
        auto it = want.find(key);
        if (it == want.end() || it->second < m) extra.insert(key);
    }
    std::set<PointKey> missing;
    for (const auto& [key, m] : want) {
        if (legacy.y.multiplicity(key) < m) missing.insert(key);
    }
    if (extra.empty()) return {false, "legacy and corrected agree"};
    if (!missing.empty()) return {false, "legacy lacks " + to_string(*missing.begin())};

    for (const PointKey& key : extra) {
        bool explained = false;
        for (const auto& r : legacy.y.entries().at(key).records) {
            if (r.provenance.move != Move::giant_leap) continue;
            const bool toward_merge = r.provenance.leap_corner && corners.count(*r.provenance.leap_corner);
            const bool inherited = std::any_of(r.provenance.parents.begin(), r.provenance.parents.end(),
                                               [&](const PointKey& p) { return extra.count(p) != 0; });
            if (toward_merge || inherited) explained = true;
        }
        if (!explained) return {false, "unexplained extra " + to_string(key)};
    }
    const bool dropped = extra.count({{7, 5}, {88, 8}}) && extra.count({{5, 3}, {88, 8}});
    return {dropped, std::to_string(extra.size()) + " extra keys, merge corners " + std::to_string(corners.size())};
}

Outcome sl2_fixture()
{
    const SL2Fixture& fx = sl2_fixture_p3();
    // lengths m with b_m in pb_n, read off the explicit p = 3 table
    const std::vector<std::pair<std::int64_t, std::set<std::int64_t>>> table{
        {1, {1}}, {2, {2}}, {3, {3}}, {4, {2, 4}}, {5, {1, 5}}, {6, {6}}, {7, {5, 7}}, {8, {4, 8}}};
    for (const auto& [n, ms] : table) {
        std::set<std::int64_t> got;
        for (const auto& s : sl2_support(n, 3, fx)) got.insert(s.m);
        if (got != ms) return {false, "table line n=" + std::to_string(n)};
    }

    std::set<std::pair<std::int64_t, std::int64_t>> drawn;
    std::ifstream in(std::string(A2BILL_FIXTURES) + "/sl2_p3_cells.txt");
    std::string line;
    std::size_t cells = 0;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream is(line);
        std::int64_t tag = 0, x = 0, y = 0;
        is >> tag >> x >> y;
        ++cells;
        drawn.insert({x + 1, y + 1});
        const auto sup = sl2_support(y + 1, 3, fx);
        if (!sup.count({x + 1, static_cast<int>(tag + 1)})) return {false, "figure cell " + line + " not reproduced"};
    }
    if (cells != 76) return {false, "figure fixture has " + std::to_string(cells) + " cells"};
    for (std::int64_t n = 1; n <= 40; ++n) {
        for (const auto& s : sl2_support(n, 3, fx)) {
            if (s.m != n && !drawn.count({s.m, n})) return {false, "undrawn support cell"};
        }
    }
    return {true, "8 table lines, " + std::to_string(cells) + " figure cells, rows 1..40"};
}

Outcome conjecture_plumbing()
{
    const std::int64_t p = 5;
    const PointMultiset y = assemble_Y(p, 3, 30, Mode::corrected);
    const Step3Result z = extend_step3(y, p, "wall-only");
    const PointMultiset ztilde = remove_x_seeds(z.z, p);
    const ZetaAssembler za(ztilde, p);

    std::int64_t top = 0;
    for (const auto& [key, e] : ztilde.entries()) top = std::max(top, key.label.n);
    std::map<PointKey, std::set<std::size_t>> hits;
    for (std::size_t i = 1; i <= static_cast<std::size_t>(top + 3); ++i) {
        for (const auto& c : za.contributions(i)) hits[c.point].insert(i);
    }
    for (const auto& [key, e] : ztilde.entries()) {
        const auto n = static_cast<std::size_t>(key.label.n);
        if (hits[key] != std::set<std::size_t>{n, n + 1, n + 2}) return {false, "triple window broken at " + to_string(key)};
    }

    const std::size_t i_max = static_cast<std::size_t>(conjecture_window(p) - 1);
    const PKLDataset ds = export_prediction(i_max, ztilde, p, z.partial);
    const auto path = std::filesystem::temp_directory_path() / "a2bill_acceptance.pkl";
    std::ofstream(path) << to_string(ds);
    const PKLDataset back = parse_pkl_file(path.string());
    std::filesystem::remove(path);
    if (!(back == ds)) return {false, "export/parse round trip differs"};
    if (!diff_report(back, ds).empty() || !diff_report(ds, back).empty()) return {false, "nonempty self diff"};
    if (ds.records.size() != i_max + 1) return {false, "wrong number of records"};
    return {true, std::to_string(ztilde.distinct()) + " points, zeta_0..zeta_" + std::to_string(i_max) + " round-trip"};
}

Outcome determinism()
{
    const std::string args = "simulate --ell 11 --seeds-up-to 3 --iterations 40 --jobs ";
    const auto t0 = std::chrono::steady_clock::now();
    const Cli one = cli(args + "1");
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const Cli eight = cli(args + "8");
    if (one.code != 0 || eight.code != 0) return {false, "simulate failed"};
    if (one.out != eight.out) return {false, "outputs differ between 1 and 8 workers"};
    char buf[96];
    std::snprintf(buf, sizeof buf, "%zu bytes identical, single worker %.3f s", one.out.size(), secs);
    return {secs < 10.0, buf};
}

} // namespace

int main()
{
    struct Criterion {
        const char* name;
        double limit;
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria{
        {"figure replay, ell=5 seed 1", 1.0, [] { return figure_replay(1, "ell5_seed1.tsv"); }},
        {"figure replay, ell=5 seed 2", 1.0, [] { return figure_replay(2, "ell5_seed2.tsv"); }},
        {"merge catalog", 10.0, merge_catalog_events},
        {"invariant suite", 60.0, invariant_suite},
        {"correction witness", 0.0, correction_witness},
        {"rank one fixture", 0.0, sl2_fixture},
        {"conjecture plumbing", 0.0, conjecture_plumbing},
        {"determinism and performance", 0.0, determinism},
    };

    int failed = 0;
    for (const auto& c : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (c.limit > 0 && secs >= c.limit) {
            o.pass = false;
            o.detail += "; over the time limit";
        }
        if (!o.pass) ++failed;
        std::printf("%s  %-30s %8.3f s  %s\n", o.pass ? "PASS" : "FAIL", c.name, secs, o.detail.c_str());
    }
    std::printf("%zu criteria, %d failed\n", criteria.size(), failed);
    return failed == 0 ? 0 : 1;
}
