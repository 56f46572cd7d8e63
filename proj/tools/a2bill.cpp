// Command-line front end for the wall dynamics and the prediction tools.

#include "a2bill/dataio.hpp"
#include "a2bill/dynamics.hpp"
#include "a2bill/invariants.hpp"
#include "a2bill/multiset_io.hpp"
#include "a2bill/pkl.hpp"
#include "a2bill/render.hpp"
#include "a2bill/step3.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

using namespace a2bill;

namespace {

constexpr int kOk = 0;
constexpr int kViolation = 1;
constexpr int kUsage = 2;

struct RunConfig {
    std::int64_t ell = 0;
    std::vector<std::int64_t> seeds;
    std::int64_t seeds_up_to = 0;
    int iterations = 0;
    bool legacy = false;
    unsigned jobs = 1;
    std::string output;

    Mode mode() const { return legacy ? Mode::legacy : Mode::corrected; }

    std::vector<std::int64_t> seed_list() const
    {
        std::set<std::int64_t> ks(seeds.begin(), seeds.end());
        for (std::int64_t k = 1; k <= seeds_up_to; ++k) ks.insert(k);
        for (auto k : ks) {
            if (k < 1) throw DomainError("seed indices must be at least 1");
        }
        if (ks.empty()) throw DomainError("give --seed or --seeds-up-to");
        return {ks.begin(), ks.end()};
    }

    void validate() const
    {
        require_ell(ell);
        if (iterations < 1) throw DomainError("--iterations must be at least 1");
        if (jobs < 1) throw DomainError("--jobs must be at least 1");
    }
};

void add_run_options(CLI::App* cmd, RunConfig& cfg, bool need_run = true)
{
    auto* ell = cmd->add_option("--ell", cfg.ell, "ell (equal to p for predictions)");
    cmd->add_option("--seed", cfg.seeds, "seed index k (repeatable)");
    cmd->add_option("--seeds-up-to", cfg.seeds_up_to, "use seeds 1..K");
    auto* it = cmd->add_option("--iterations", cfg.iterations, "number of iterations N");
    cmd->add_flag("--legacy", cfg.legacy, "disable the merge rule");
    cmd->add_option("--jobs", cfg.jobs, "worker threads")->capture_default_str();
    cmd->add_option("--output,-o", cfg.output, "output file (default stdout)");
    if (need_run) {
        ell->required();
        it->required();
    }
}

void emit(const std::string& path, const std::string& text)
{
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
}

std::string slurp(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

bool looks_like_pkl(const std::string& text)
{
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) {
        const auto pos = line.find_first_not_of(" \t\r");
        if (pos == std::string::npos || line[pos] == '#') continue;
        return line[pos] == 'p' && (pos + 1 == line.size() || line[pos + 1] == ' ' || line[pos + 1] == '\t');
    }
    return false;
}

MultisetFile simulate(const RunConfig& cfg)
{
    cfg.validate();
    const auto ks = cfg.seed_list();
    Assembly as = assemble(cfg.ell, ks, cfg.iterations, cfg.mode(), cfg.jobs);
    return {{cfg.ell, ks, cfg.iterations, cfg.mode()}, std::move(as.y)};
}

int cmd_simulate(const RunConfig& cfg, const std::string& format)
{
    const auto fmt = parse_multiset_format(format);
    emit(cfg.output, to_string(simulate(cfg), fmt));
    return kOk;
}

int cmd_merge_events(const RunConfig& cfg, std::int64_t i_max)
{
    std::vector<MergeEvent> events;
    if (i_max > 0) {
        require_ell(cfg.ell);
        events = merge_catalog(cfg.ell, i_max, cfg.mode(), cfg.jobs);
    } else {
        cfg.validate();
        events = collect_events(assemble(cfg.ell, cfg.seed_list(), cfg.iterations, cfg.mode(), cfg.jobs).runs);
    }
    std::ostringstream os;
    write_events(os, cfg.ell, events);
    emit(cfg.output, os.str());
    return kOk;
}

int cmd_check(const RunConfig& cfg)
{
    cfg.validate();
    const CheckReport report = run_invariant_suite(cfg.ell, cfg.seed_list(), cfg.iterations, cfg.mode(), cfg.jobs);
    emit(cfg.output, report.to_text());
    return report.ok() ? kOk : kViolation;
}

int cmd_predict(const RunConfig& cfg, const std::string& input, const std::string& strategy, std::int64_t i_max,
                bool heuristic)
{
    MultisetFile y = input.empty() ? simulate(cfg) : read_multiset_file(input);
    const std::int64_t p = y.meta.ell;
    require_ell(p);
    const Step3Result z = extend_step3(y.points, p, strategy);
    PointMultiset ztilde = remove_x_seeds(z.z, p);
    if (heuristic) ztilde = heuristic_filter(ztilde, p, sl2_fixture_p3());
    if (i_max < 0) i_max = conjecture_window(p) - 1;
    const PKLDataset ds = export_prediction(static_cast<std::size_t>(i_max), ztilde, p, z.partial, cfg.jobs);
    emit(cfg.output, to_string(ds));
    return kOk;
}

int cmd_compare(const std::string& prediction, const std::string& actual, const std::string& output)
{
    const DiffReport report = diff_report(parse_pkl_file(prediction), parse_pkl_file(actual));
    emit(output, report.to_text());
    return report.failures() == 0 ? kOk : kViolation;
}

int cmd_render(const RunConfig& cfg, const std::string& input, const RenderOptions& opts, bool collapse)
{
    std::string doc;
    if (!input.empty()) {
        const std::string text = slurp(input);
        std::istringstream is(text);
        if (looks_like_pkl(text)) {
            Picture pic = combined_picture(parse_pkl(is, input));
            if (collapse) pic = collapse_triples(std::move(pic));
            doc = render(pic, opts);
        } else {
            doc = render(read_multiset(is, input).points, opts);
        }
    } else {
        doc = render(simulate(cfg).points, opts);
    }
    emit(cfg.output, doc);
    return kOk;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Wall dynamics on the dominant cone of affine A2, with prediction and comparison tools"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string format = "json";
    std::int64_t i_max = -1;
    std::string input, strategy = "wall-only", prediction, actual;
    bool heuristic = false, collapse = false;
    std::string render_format = "svg";
    RenderOptions ropts;

    auto* sim = app.add_subcommand("simulate", "run the dynamics and write the multiset Y");
    add_run_options(sim, cfg);
    sim->add_option("--format", format, "json or tsv")->capture_default_str();

    auto* ev = app.add_subcommand("merge-events", "list merge events");
    add_run_options(ev, cfg, false);
    ev->add_option("--i-max", i_max, "catalog window: events whose kept label n is at most this");

    auto* chk = app.add_subcommand("check", "run the invariant suite");
    add_run_options(chk, cfg);

    auto* pred = app.add_subcommand("predict", "write zeta_0 .. zeta_imax in p-KL format");
    add_run_options(pred, cfg, false);
    pred->add_option("--input", input, "multiset file from simulate (instead of running)");
    pred->add_option("--strategy", strategy, "step-3 strategy")->capture_default_str();
    pred->add_option("--i-max", i_max, "last index (default 2p(p+1) - 1)");
    pred->add_flag("--heuristic", heuristic, "apply the third generation heuristic (provisional rule)");

    auto* cmp = app.add_subcommand("compare", "diff a prediction against p-KL data");
    cmp->add_option("--prediction", prediction, "prediction file")->required();
    cmp->add_option("--actual", actual, "p-KL dataset")->required();
    cmp->add_option("--output,-o", cfg.output, "output file (default stdout)");

    auto* ren = app.add_subcommand("render", "draw a multiset or a p-KL picture");
    add_run_options(ren, cfg, false);
    ren->add_option("--input", input, "multiset (json/tsv) or p-KL dataset; otherwise simulate");
    ren->add_option("--format", render_format, "svg or tikz")->capture_default_str();
    ren->add_flag("--show-seeds", ropts.show_seeds, "underline seeds");
    ren->add_flag("--color-merges", ropts.color_merges, "type III red, type II blue");
    ren->add_flag("--collapse", collapse, "collapse triples in p-KL pictures");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (*sim) return cmd_simulate(cfg, format);
        if (*ev) {
            if (i_max <= 0 && (cfg.ell == 0 || cfg.iterations == 0)) {
                throw DomainError("merge-events needs --ell and either --i-max or --iterations with seeds");
            }
            return cmd_merge_events(cfg, i_max);
        }
        if (*chk) return cmd_check(cfg);
        if (*pred) return cmd_predict(cfg, input, strategy, i_max, heuristic);
        if (*cmp) return cmd_compare(prediction, actual, cfg.output);
        if (*ren) {
            ropts.format = parse_render_format(render_format);
            return cmd_render(cfg, input, ropts, collapse);
        }
    } catch (const GeometryError& e) {
        std::cerr << "a2bill: internal assertion: " << e.what() << "\n";
        return kViolation;
    } catch (const std::exception& e) {
        std::cerr << "a2bill: " << e.what() << "\n";
        return kUsage;
    }
    return kUsage;
}
