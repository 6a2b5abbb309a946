// tspgap command-line front end. Every run prints one JSON report to stdout
// (or --report FILE). Exit codes: 0 ok, 1 other failure, 2 parse or invalid
// input, 3 infeasible construction, 4 size cap.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "tspgap.hpp"

namespace
{

using nlohmann::json;
using namespace tspgap;
namespace fs = std::filesystem;

enum Exit : int { kOk = 0, kFailure = 1, kParse = 2, kInfeasible = 3, kSizeCap = 4 };

class UsageError : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

int worker_count()
{
    if (const char* env = std::getenv("TSPGAP_THREADS")) {
        try {
            const int t = std::stoi(env);
            if (t >= 1) return t;
        } catch (const std::exception&) {
        }
        throw UsageError(std::string("TSPGAP_THREADS must be a positive integer, got '") + env + "'");
    }
    return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

/// Runs fn(k) for k in [0, count) on the worker pool; results land by index.
template <typename Fn>
void parallel_for(std::size_t count, Fn fn)
{
    const auto workers = std::min<std::size_t>(static_cast<std::size_t>(worker_count()), std::max<std::size_t>(count, 1));
    if (workers <= 1) {
        for (std::size_t k = 0; k < count; ++k) fn(k);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr err;
    std::mutex mu;
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                const auto k = next.fetch_add(1);
                if (k >= count) return;
                try {
                    fn(k);
                } catch (...) {
                    const std::lock_guard lock(mu);
                    if (!err) err = std::current_exception();
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (err) std::rethrow_exception(err);
}

json instance_summary(const Instance& inst)
{
    return {{"n", inst.size()}, {"d", inst.dim()}, {"p", inst.norm().p}};
}

json tour_json(const Instance& inst, const Tour& t)
{
    json a = json::array();
    for (int v : t.order()) a.push_back(inst.label(v));
    return a;
}

Instance load_instance(const std::string& path) { return io::read_native(io::read_file(path)); }

struct Ctx {
    std::vector<std::string> argv;
    std::string report_path;
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
};

void emit(const Ctx& ctx, json report)
{
    report["command"] = ctx.argv;
    report["wall_time_s"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - ctx.start).count();
    const std::string text = report.dump(2) + "\n";
    if (ctx.report_path.empty()) {
        std::cout << text;
    } else {
        io::write_file_atomic(ctx.report_path, text);
    }
}

// ---------------------------------------------------------------- families

struct FamilyArgs {
    std::string family;
    int i = 0, j = 0, k = 0;
    int a = 1, b = 1;
    int rows = 1, cols = 1;
    std::string spec;
    double eps = 1e-9;
};

families::SubdividedGraphSpec read_spec(const std::string& path)
{
    json j;
    try {
        j = json::parse(io::read_file(path));
    } catch (const json::parse_error& e) {
        throw io::ParseError(0, std::string("spec file: ") + e.what());
    }
    families::SubdividedGraphSpec s;
    try {
        for (const auto& v : j.at("vertices")) s.vertices.push_back({v.at(0).get<double>(), v.at(1).get<double>()});
        for (const auto& e : j.at("edges")) s.edges.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
        s.counts = j.at("counts").get<std::vector<int>>();
        if (j.contains("names")) s.names = j.at("names").get<std::vector<std::string>>();
    } catch (const json::exception& e) {
        throw io::ParseError(0, std::string("spec file: ") + e.what());
    }
    return s;
}

struct Generated {
    Instance instance;
    std::string name;
    json extra = json::object();
};

Generated generate(const FamilyArgs& fa)
{
    const std::string f = fa.family;
    if (f == "i2" || f == "i3") {
        const families::IJK p{fa.i, fa.j, fa.k};
        const std::string name = f + "_" + std::to_string(p.i) + "_" + std::to_string(p.j) + "_" + std::to_string(p.k);
        if (f == "i2") {
            return {families::gen_I2(p), name,
                    {{"closed_form", {{"opt", families::closed_form_opt_I2(p)}, {"lp", families::closed_form_lp_I2(p)},
                                      {"ratio", families::closed_form_ratio_I2(p)}}}}};
        }
        return {families::gen_I3(p), name,
                {{"closed_form", {{"opt_lower_bound", families::closed_form_opt_I3(p)},
                                  {"lp", families::closed_form_lp_I3(p)},
                                  {"ratio", families::closed_form_ratio_metric(p)}}}}};
    }
    if (f == "tetrahedron" || f == "hexagon" || f == "subdivided") {
        families::SubdividedGraphSpec s;
        std::string name;
        if (f == "tetrahedron") {
            s = families::tetrahedron_spec(fa.a, fa.b);
            name = "tetrahedron_" + std::to_string(fa.a) + "_" + std::to_string(fa.b);
        } else if (f == "hexagon") {
            s = families::hexagon_spec(fa.rows, fa.cols, fa.k);
            name = "hexagon_" + std::to_string(fa.rows) + "_" + std::to_string(fa.cols) + "_" + std::to_string(fa.k);
        } else {
            if (fa.spec.empty()) throw UsageError("subdivided needs --spec FILE");
            s = read_spec(fa.spec);
            name = fs::path(fa.spec).stem().string();
        }
        Generated g{families::gen_subdivided(s), name};
        try {
            const auto tb = families::tjoin_bound_details(s);
            g.extra["tjoin_bound"] = {{"edge_cost", tb.edge_cost}, {"tjoin_cost", tb.tjoin_cost},
                                      {"odd_vertices", tb.odd_vertices.size()}, {"ratio_bound", tb.ratio}};
        } catch (const SizeCapError& e) {
            g.extra["tjoin_bound"] = {{"skipped", e.what()}};
        }
        return g;
    }
    if (f == "ellipse") {
        const auto r = ellipse::ellipse_construct(fa.i, fa.j, fa.eps);
        Generated g{r.instance, "ellipse_" + std::to_string(fa.i) + "_" + std::to_string(fa.j)};
        g.extra["ellipse"] = {{"b", r.params.b},
                              {"e", r.params.e},
                              {"f", r.params.f},
                              {"ratio", r.ratio},
                              {"tour_length", r.tour_length},
                              {"lp_cost", r.lp_cost},
                              {"residual_inner", r.residual_inner},
                              {"residual_outer", r.residual_outer}};
        return g;
    }
    throw UsageError("unknown family '" + f + "'");
}

void add_family_options(CLI::App* c, FamilyArgs& fa)
{
    c->add_option("--i", fa.i, "i (i2, i3, ellipse)")->check(CLI::NonNegativeNumber);
    c->add_option("--j", fa.j, "j (i2, i3, ellipse)")->check(CLI::NonNegativeNumber);
    c->add_option("--k", fa.k, "k (i2, i3) or hexagon subdivision count")->check(CLI::NonNegativeNumber);
    c->add_option("--a", fa.a, "tetrahedron side subdivision")->check(CLI::NonNegativeNumber);
    c->add_option("--b", fa.b, "tetrahedron spoke subdivision")->check(CLI::NonNegativeNumber);
    c->add_option("--rows", fa.rows, "hexagon rows")->check(CLI::PositiveNumber);
    c->add_option("--cols", fa.cols, "hexagon columns")->check(CLI::PositiveNumber);
    c->add_option("--spec", fa.spec, "subdivided graph JSON file");
    c->add_option("--eps", fa.eps, "ellipse accuracy")->check(CLI::PositiveNumber);
}

// ---------------------------------------------------------------- ratio

json ratio_report(const Instance& inst)
{
    json r;
    r["instance"] = instance_summary(inst);
    const auto lp = lp::solve_subtour_lp(inst);
    r["lp_cost"] = lp.cost;
    r["lp_cuts"] = lp.cuts.size();
    if (inst.size() > kHeldKarpMax) {
        r["opt_length"] = nullptr;
        r["opt_certified"] = false;
        r["ratio"] = nullptr;
        return r;
    }
    const auto opt = held_karp(inst);
    r["opt_length"] = opt.length;
    r["opt_certified"] = true;
    r["opt_tour"] = tour_json(inst, opt.tour);
    r["ratio"] = opt.length / lp.cost;
    return r;
}

// ---------------------------------------------------------------- sweep

json sweep_row(const std::string& family, int n, double eps)
{
    json row{{"n", n}, {"family", family}};
    if (family == "rectilinear" || family == "metric") {
        const auto f = family == "rectilinear" ? families::Family::rectilinear : families::Family::metric;
        const auto p = families::best_partition(n, f);
        row["i"] = p.i;
        row["j"] = p.j;
        row["k"] = p.k;
        row["ratio"] = families::closed_form_ratio(p, f);
        return row;
    }
    // ellipse: best over i with 2i + j + 6 = n
    double best = -1.0;
    for (int i = 0; 2 * i + 6 <= n; ++i) {
        const int j = n - 6 - 2 * i;
        try {
            const auto r = ellipse::ellipse_construct(i, j, eps);
            if (r.ratio > best) {
                best = r.ratio;
                row["i"] = i;
                row["j"] = j;
                row["k"] = i;
                row["ratio"] = r.ratio;
            }
        } catch (const ellipse::InfeasibleError&) {
        }
    }
    if (best < 0) row["ratio"] = nullptr;
    return row;
}

// ---------------------------------------------------------------- plot helpers

Tour parse_tour(const Instance& inst, const std::string& spec)
{
    std::vector<int> order;
    std::stringstream ss(spec);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (const auto v = inst.find_label(tok)) {
            order.push_back(*v);
            continue;
        }
        try {
            std::size_t used = 0;
            const int v = std::stoi(tok, &used);
            if (used == tok.size() && v >= 0 && v < inst.size()) {
                order.push_back(v);
                continue;
            }
        } catch (const std::exception&) {
        }
        throw io::ParseError(0, "unknown vertex '" + tok + "' in tour");
    }
    if (static_cast<int>(order.size()) != inst.size()) throw io::ParseError(0, "tour must list every vertex once");
    try {
        return Tour(order);
    } catch (const std::invalid_argument& e) {
        throw io::ParseError(0, e.what());
    }
}

std::string default_path(const std::string& name, const std::string& ext) { return name + ext; }

} // namespace

int main(int argc, char** argv)
{
    Ctx ctx;
    ctx.argv.assign(argv, argv + argc);

    CLI::App app{"tspgap: integrality ratio experiments for the subtour LP"};
    app.require_subcommand(1);
    app.add_option("--report", ctx.report_path, "write the JSON report here instead of stdout");

    // gen
    FamilyArgs gen_fa;
    std::string gen_out;
    std::string gen_tsplib;
    bool gen_export = false;
    auto* gen = app.add_subcommand("gen", "generate an instance file");
    gen->add_option("family", gen_fa.family, "i2 | i3 | tetrahedron | hexagon | subdivided | ellipse")->required();
    add_family_options(gen, gen_fa);
    gen->add_option("-o,--out", gen_out, "instance file (default <name>.inst)");
    gen->add_flag("--export-tsplib", gen_export, "also write a TSPLIB file next to the instance");
    gen->add_option("--tsplib", gen_tsplib, "TSPLIB output path (implies --export-tsplib)");

    // ratio
    std::string ratio_file;
    FamilyArgs ratio_fa;
    auto* ratio = app.add_subcommand("ratio", "LP cost, optimal tour and integrality ratio of an instance file");
    ratio->add_option("file", ratio_file, "native instance file")->required();
    ratio->add_option("--family", ratio_fa.family, "i2 | i3: add closed-form columns");
    ratio->add_option("--i", ratio_fa.i)->check(CLI::NonNegativeNumber);
    ratio->add_option("--j", ratio_fa.j)->check(CLI::NonNegativeNumber);
    ratio->add_option("--k", ratio_fa.k)->check(CLI::NonNegativeNumber);

    // sweep
    std::string sweep_family = "all";
    int sweep_from = 6, sweep_to = 12;
    double sweep_eps = 1e-9;
    std::string sweep_csv;
    auto* sweep = app.add_subcommand("sweep", "best ratios per n for the rectilinear, metric and ellipse families");
    sweep->add_option("--family", sweep_family, "rectilinear | metric | ellipse | all")
        ->check(CLI::IsMember({"rectilinear", "metric", "ellipse", "all"}));
    sweep->add_option("--from", sweep_from, "smallest n")->check(CLI::Range(6, 1000));
    sweep->add_option("--to", sweep_to, "largest n")->check(CLI::Range(6, 1000));
    sweep->add_option("--eps", sweep_eps, "ellipse accuracy")->check(CLI::PositiveNumber);
    sweep->add_option("--csv", sweep_csv, "also write a CSV table");

    // localsearch
    localsearch::LocalSearchParams ls_prm;
    int ls_n = 6;
    std::string ls_out, ls_trace, ls_start;
    auto* lsc = app.add_subcommand("localsearch", "gradient local search for instances with a high ratio");
    lsc->add_option("--n", ls_n, "number of points")->check(CLI::Range(3, kHeldKarpMax));
    lsc->add_option("--seed", ls_prm.rng_seed, "random seed");
    lsc->add_option("--p", ls_prm.p, "norm exponent (> 1)");
    lsc->add_option("--dim", ls_prm.dim, "dimension")->check(CLI::PositiveNumber);
    lsc->add_option("--max-iters", ls_prm.max_iters, "iteration cap")->check(CLI::PositiveNumber);
    lsc->add_option("--max-restarts", ls_prm.max_restarts, "random seeds tried")->check(CLI::PositiveNumber);
    lsc->add_option("--eps0", ls_prm.epsilon0, "seed ratio floor above 1")->check(CLI::NonNegativeNumber);
    lsc->add_option("--start", ls_start, "start from this instance file instead of random seeds");
    lsc->add_option("-o,--out", ls_out, "final instance file");
    lsc->add_option("--trace", ls_trace, "iteration trace CSV");

    // ellipse
    int el_i = 0, el_j = 0;
    double el_eps = 1e-9;
    bool el_verify = false;
    std::string el_out;
    auto* elc = app.add_subcommand("ellipse", "ellipse construction for x_{i,j,i}");
    elc->add_option("--i", el_i)->check(CLI::NonNegativeNumber);
    elc->add_option("--j", el_j)->check(CLI::NonNegativeNumber);
    elc->add_option("--eps", el_eps)->check(CLI::PositiveNumber);
    elc->add_flag("--verify", el_verify, "confirm with Held-Karp and the subtour LP (n <= 20)");
    elc->add_option("-o,--out", el_out, "instance file");

    // certify
    int ce_i = 0, ce_j = 0, ce_k = 0;
    bool ce_solve = false;
    auto* cert = app.add_subcommand("certify", "convex-combination certificate for x_{i,j,k}");
    cert->add_option("--i", ce_i)->check(CLI::NonNegativeNumber);
    cert->add_option("--j", ce_j)->check(CLI::NonNegativeNumber);
    cert->add_option("--k", ce_k)->check(CLI::NonNegativeNumber);
    cert->add_flag("--solve", ce_solve, "also solve the I2 and I3 instances exactly (n <= 20)");

    // plot
    std::string pl_file, pl_out, pl_tour;
    bool pl_opt = false, pl_lp = false, pl_nolabels = false;
    std::vector<int> pl_x;
    auto* plot = app.add_subcommand("plot", "SVG drawing of an instance with optional overlays");
    plot->add_option("file", pl_file, "native instance file")->required();
    plot->add_option("-o,--out", pl_out, "SVG file")->required();
    plot->add_option("--tour", pl_tour, "comma-separated tour by label or index");
    plot->add_flag("--optimal", pl_opt, "overlay an optimal tour");
    plot->add_flag("--lp", pl_lp, "overlay the optimal subtour LP solution");
    plot->add_option("--xijk", pl_x, "overlay x_{i,j,k}: three integers")->expected(3);
    plot->add_flag("--no-labels", pl_nolabels);

    // export
    std::string ex_file, ex_out, ex_name;
    auto* exp = app.add_subcommand("export", "TSPLIB full-matrix export (costs floor(1000 d))");
    exp->add_option("file", ex_file, "native instance file")->required();
    exp->add_option("-o,--out", ex_out, "TSPLIB file")->required();
    exp->add_option("--name", ex_name, "NAME field (default: file stem)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kParse;
    }

    try {
        if (*gen) {
            auto g = generate(gen_fa);
            const std::string out = gen_out.empty() ? default_path(g.name, ".inst") : gen_out;
            io::write_file_atomic(out, io::write_native(g.instance));
            json r = g.extra;
            r["family"] = gen_fa.family;
            r["instance"] = instance_summary(g.instance);
            r["instance_file"] = out;
            if (gen_export || !gen_tsplib.empty()) {
                const std::string tp = gen_tsplib.empty() ? fs::path(out).replace_extension(".tsp").string() : gen_tsplib;
                io::write_file_atomic(tp, io::write_tsplib(g.instance, g.name, "costs are floor(1000 * distance)"));
                r["tsplib_file"] = tp;
            }
            emit(ctx, r);
        } else if (*ratio) {
            const Instance inst = load_instance(ratio_file);
            json r = ratio_report(inst);
            r["instance_file"] = ratio_file;
            if (!ratio_fa.family.empty()) {
                if (ratio_fa.family != "i2" && ratio_fa.family != "i3") throw UsageError("--family must be i2 or i3");
                const auto g = generate(ratio_fa);
                r.update(g.extra);
                if (r["opt_length"].is_null()) {
                    // Past the exact cap the I2 value is the proved closed form; for I3 it is a lower bound.
                    if (ratio_fa.family == "i2") {
                        r["opt_length"] = g.extra["closed_form"]["opt"];
                        r["opt_source"] = "closed_form";
                    } else {
                        r["opt_length"] = g.extra["closed_form"]["opt_lower_bound"];
                        r["opt_source"] = "lower_bound";
                    }
                    r["ratio"] = r["opt_length"].get<double>() / r["lp_cost"].get<double>();
                }
            }
            emit(ctx, r);
            if (!r["opt_certified"].get<bool>() && !r.contains("opt_source")) return kSizeCap;
        } else if (*sweep) {
            if (sweep_to < sweep_from) throw UsageError("--to must be at least --from");
            std::vector<std::string> fams;
            if (sweep_family == "all") {
                fams = {"rectilinear", "metric", "ellipse"};
            } else {
                fams = {sweep_family};
            }
            std::vector<std::pair<std::string, int>> jobs;
            for (const auto& f : fams) {
                for (int n = sweep_from; n <= sweep_to; ++n) jobs.emplace_back(f, n);
            }
            std::vector<json> rows(jobs.size());
            parallel_for(jobs.size(), [&](std::size_t k) { rows[k] = sweep_row(jobs[k].first, jobs[k].second, sweep_eps); });
            json r;
            r["rows"] = rows;
            r["workers"] = worker_count();
            if (!sweep_csv.empty()) {
                std::string csv = "family,n,i,j,k,ratio\n";
                for (const auto& row : rows) {
                    csv += row["family"].get<std::string>() + "," + std::to_string(row["n"].get<int>()) + ",";
                    if (row["ratio"].is_null()) {
                        csv += ",,,\n";
                        continue;
                    }
                    csv += std::to_string(row["i"].get<int>()) + "," + std::to_string(row["j"].get<int>()) + "," +
                           std::to_string(row["k"].get<int>()) + "," + io::format_double(row["ratio"].get<double>()) + "\n";
                }
                io::write_file_atomic(sweep_csv, csv);
                r["csv_file"] = sweep_csv;
            }
            emit(ctx, r);
        } else if (*lsc) {
            ls_prm.dim = ls_start.empty() ? ls_prm.dim : load_instance(ls_start).dim();
            const auto res = ls_start.empty() ? localsearch::local_search(ls_n, ls_prm)
                                              : localsearch::local_search_from(load_instance(ls_start), ls_prm);
            json r;
            r["instance"] = instance_summary(res.instance);
            r["ratio"] = res.ratio;
            r["certificate"] = res.certificate;
            r["stop"] = localsearch::stop_reason_name(res.stop);
            r["iterations"] = res.trace.size();
            r["restarts"] = res.restarts;
            r["seed"] = ls_prm.rng_seed;
            r["pool_size"] = res.pool.tours.size();
            const auto ev = localsearch::evaluate(res.instance);
            r["lp_cost"] = ev.lp.cost;
            r["opt_length"] = ev.opt.length;
            if (!ls_out.empty()) {
                io::write_file_atomic(ls_out, io::write_native(res.instance));
                r["instance_file"] = ls_out;
            }
            if (!ls_trace.empty()) {
                std::string csv = "iteration,ratio,delta,eta,pool_size\n";
                for (const auto& t : res.trace) {
                    csv += std::to_string(t.iteration) + "," + io::format_double(t.ratio) + "," + io::format_double(t.delta) +
                           "," + io::format_double(t.eta) + "," + std::to_string(t.pool_size) + "\n";
                }
                io::write_file_atomic(ls_trace, csv);
                r["trace_file"] = ls_trace;
            }
            emit(ctx, r);
        } else if (*elc) {
            const auto c = ellipse::ellipse_construct(el_i, el_j, el_eps);
            json r;
            r["instance"] = instance_summary(c.instance);
            r["i"] = el_i;
            r["j"] = el_j;
            r["params"] = {{"b", c.params.b}, {"e", c.params.e}, {"f", c.params.f}};
            r["ratio"] = c.ratio;
            r["tour_length"] = c.tour_length;
            r["lp_cost"] = c.lp_cost;
            r["shortcut_spread"] = c.shortcut_spread;
            r["residual_inner"] = c.residual_inner;
            r["residual_outer"] = c.residual_outer;
            if (el_verify) {
                if (c.instance.size() > kHeldKarpMax) throw SizeCapError("--verify needs n <= 20");
                const auto rr = integrality_ratio_details(c.instance);
                r["verify"] = {{"opt_length", rr.tour.length},
                               {"lp_cost", rr.lp.cost},
                               {"ratio", rr.ratio},
                               {"opt_matches_shortcut", std::abs(rr.tour.length - c.tour_length) <= 1e-6},
                               {"lp_matches_x", std::abs(rr.lp.cost - c.lp_cost) <= 1e-6}};
            }
            if (!el_out.empty()) {
                io::write_file_atomic(el_out, io::write_native(c.instance));
                r["instance_file"] = el_out;
            }
            emit(ctx, r);
        } else if (*cert) {
            const families::IJK p{ce_i, ce_j, ce_k};
            const auto c = families::lambda_certificate(p);
            json tours = json::array();
            for (std::size_t t = 0; t < c.tours.size(); ++t) tours.push_back({{"tour", c.tours[t].tag()}, {"lambda", c.lambda[t]}});
            json r{{"i", p.i},
                   {"j", p.j},
                   {"k", p.k},
                   {"rho", c.rho},
                   {"sum_lambda", c.sum_lambda},
                   {"max_residual", c.max_residual},
                   {"passed", true},
                   {"pseudo_tours", tours}};
            if (ce_solve) {
                if (p.n() > kHeldKarpMax) throw SizeCapError("--solve needs n <= 20");
                for (const char* fam : {"i2", "i3"}) {
                    const Instance inst = std::string(fam) == "i2" ? families::gen_I2(p) : families::gen_I3(p);
                    const auto rr = integrality_ratio_details(inst);
                    const double cf = std::string(fam) == "i2" ? families::closed_form_ratio_I2(p)
                                                               : families::closed_form_ratio_metric(p);
                    r[fam] = {{"opt_length", rr.tour.length}, {"lp_cost", rr.lp.cost}, {"ratio", rr.ratio}, {"closed_form_ratio", cf}};
                }
            }
            emit(ctx, r);
        } else if (*plot) {
            const Instance inst = load_instance(pl_file);
            std::optional<Tour> tour;
            std::optional<EdgeWeightVector> x;
            if (!pl_tour.empty()) tour = parse_tour(inst, pl_tour);
            if (pl_opt) tour = held_karp(inst).tour;
            if (pl_lp) x = lp::solve_subtour_lp(inst).x;
            if (!pl_x.empty()) {
                const families::IJK p{pl_x[0], pl_x[1], pl_x[2]};
                if (p.n() != inst.size()) throw UsageError("--xijk size differs from the instance");
                x = families::fractional_xijk(p);
            }
            io::SvgOptions so;
            so.labels = !pl_nolabels;
            io::write_file_atomic(pl_out, io::render_svg(inst, tour, x, so));
            json r{{"instance", instance_summary(inst)}, {"svg_file", pl_out}};
            if (tour) r["tour"] = tour_json(inst, *tour);
            emit(ctx, r);
        } else if (*exp) {
            const Instance inst = load_instance(ex_file);
            const std::string name = ex_name.empty() ? fs::path(ex_file).stem().string() : ex_name;
            io::write_file_atomic(ex_out, io::write_tsplib(inst, name, "costs are floor(1000 * distance)"));
            emit(ctx, {{"instance", instance_summary(inst)}, {"tsplib_file", ex_out}});
        }
    } catch (const io::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kParse;
    } catch (const ellipse::InfeasibleError& e) {
        std::cerr << "infeasible: " << e.what() << "\n";
        return kInfeasible;
    } catch (const SizeCapError& e) {
        std::cerr << "size cap: " << e.what() << "\n";
        return kSizeCap;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return kParse;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kFailure;
    }
    return kOk;
}
