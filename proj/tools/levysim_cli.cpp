#include "levysim_cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "levysim/error_model.hpp"
#include "levysim/errors.hpp"
#include "levysim/gaussian_source.hpp"
#include "levysim/levy_sim.hpp"
#include "levysim/parallel.hpp"
#include "levysim/sde_demo.hpp"
#include "levysim/validation.hpp"

namespace levysim::cli {

namespace {

using json = nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

constexpr std::uint64_t kDefaultSeed = 20210121;

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<json>> rows;
};

std::string csv_cell(const json& v) {
    if (v.is_number_float()) return num(v.get<double>());
    if (v.is_number()) return v.dump();
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    if (v.is_null()) return "";
    const std::string s = v.get<std::string>();
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string quoted = "\"";
    for (char ch : s) {
        if (ch == '"') quoted += '"';
        quoted += ch;
    }
    return quoted + "\"";
}

void write_csv(std::ostream& os, const Table& t) {
    for (std::size_t c = 0; c < t.columns.size(); ++c) os << (c ? "," : "") << t.columns[c];
    os << '\n';
    for (const auto& row : t.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) os << (c ? "," : "") << csv_cell(row[c]);
        os << '\n';
    }
}

json table_json(const Table& t) {
    json rows = json::array();
    for (const auto& row : t.rows) rows.push_back(json(row));
    return {{"columns", t.columns}, {"rows", std::move(rows)}};
}

// Options shared by every command.
struct Common {
    std::uint64_t seed = kDefaultSeed;
    std::string format = "csv";
    std::string out;
};

void add_common(CLI::App* cmd, Common& c) {
    cmd->add_option("--seed", c.seed, "Master seed")->capture_default_str();
    cmd->add_option("--format", c.format, "Payload format")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
    cmd->add_option("--out", c.out, "Payload file; a <out>.manifest.json sidecar is written next to it");
}

// Everything a command produces. The summary is printed as one JSON line on
// stdout in CSV mode and embedded in the payload in JSON mode.
struct Outcome {
    Table table;
    json parameters = json::object();
    std::optional<json> summary;
    bool passed = true;
};

void emit(const std::string& command, const std::vector<std::string>& args, const Common& common,
          const Outcome& result, double seconds, std::ostream& out) {
    std::ostringstream payload;
    if (common.format == "json") {
        json doc = table_json(result.table);
        if (result.summary) doc["summary"] = *result.summary;
        payload << doc.dump(2) << '\n';
    } else {
        write_csv(payload, result.table);
    }

    if (common.out.empty()) {
        out << payload.str();
    } else {
        std::ofstream file(common.out, std::ios::binary);
        if (!file) throw std::runtime_error("cannot open output file " + common.out);
        file << payload.str();
        if (!file) throw std::runtime_error("failed writing " + common.out);

        json manifest{{"command", command},
                      {"args", args},
                      {"parameters", result.parameters},
                      {"seed", common.seed},
                      {"tool_version", LEVYSIM_VERSION},
                      {"wall_time_seconds", seconds}};
        if (result.summary) manifest["summary"] = *result.summary;
        std::ofstream side(common.out + ".manifest.json", std::ios::binary);
        if (!side) throw std::runtime_error("cannot open manifest " + common.out + ".manifest.json");
        side << manifest.dump(2) << '\n';
    }
    if (common.format == "csv" && result.summary) out << result.summary->dump() << '\n';
}

Algorithm parse_algo(const std::string& s) { return s == "fs" ? Algorithm::fs : Algorithm::ia; }

// ---- simulate ---------------------------------------------------------------

struct SimulateOpts {
    std::size_t m = 2;
    double h = 1.0;
    std::optional<double> eps;
    std::optional<std::size_t> n;
    double p = 2.0;
    std::string algo = "ia";
    std::string calculus = "ito";
    std::size_t batch = 1;
};

Outcome cmd_simulate(const SimulateOpts& o, std::uint64_t seed) {
    if (o.eps.has_value() == o.n.has_value()) throw UsageError("simulate: give exactly one of --eps or --n");
    if (o.m < 1) throw UsageError("simulate: --m must be at least 1");
    const Algorithm algo = parse_algo(o.algo);
    std::size_t n = 0;
    if (o.n) {
        n = *o.n;
    } else if (algo == Algorithm::fs) {
        n = choose_n_fs(o.p, o.h, *o.eps);
    } else {
        n = o.m >= 2 ? choose_n(o.m, o.p, o.h, *o.eps) : 1;
    }
    if (n < 1) throw UsageError("simulate: --n must be at least 1");
    const Calculus calculus = o.calculus == "strat" ? Calculus::stratonovich : Calculus::ito;

    Outcome res;
    const std::size_t m = o.m;
    res.table.columns.push_back("realization");
    for (std::size_t i = 1; i <= m; ++i) res.table.columns.push_back("dW" + std::to_string(i));
    for (std::size_t i = 1; i <= m; ++i)
        for (std::size_t j = 1; j <= m; ++j)
            res.table.columns.push_back("I_" + std::to_string(i) + "_" + std::to_string(j));

    const std::size_t width = m + m * m;
    const auto chunks = map_chunks<std::vector<double>>(o.batch, 256, [&](std::size_t begin, std::size_t end) {
        std::vector<double> vals;
        vals.reserve((end - begin) * width);
        for (std::size_t r = begin; r < end; ++r) {
            NormalStream stream({seed, r});
            Simulation sim = algo == Algorithm::fs ? simulate_fs(m, o.h, n, stream) : simulate_ia(m, o.h, n, stream);
            const IntegralMatrix mat = convert(sim.integrals, calculus);
            vals.insert(vals.end(), sim.increment.dw.begin(), sim.increment.dw.end());
            for (std::size_t i = 0; i < m; ++i)
                for (std::size_t j = 0; j < m; ++j) vals.push_back(mat(i, j));
        }
        return vals;
    });
    std::size_t r = 0;
    for (const auto& vals : chunks)
        for (std::size_t off = 0; off < vals.size(); off += width, ++r) {
            std::vector<json> row{r};
            for (std::size_t c = 0; c < width; ++c) row.emplace_back(vals[off + c]);
            res.table.rows.push_back(std::move(row));
        }

    res.parameters = {{"m", m},
                      {"h", o.h},
                      {"eps", o.eps ? json(*o.eps) : json(nullptr)},
                      {"p", o.p},
                      {"n", n},
                      {"algo", o.algo},
                      {"calculus", o.calculus},
                      {"batch", o.batch}};
    return res;
}

// ---- validate ---------------------------------------------------------------

struct ValidateOpts {
    std::string suite;
    std::optional<std::size_t> N;
    std::optional<std::size_t> K;
    std::vector<std::size_t> n_list;
    std::vector<std::size_t> m_list;
    std::vector<double> p_list;
    double h = 1.0;
    std::size_t m = 3;
    std::size_t n = 4;
    std::string algo = "ia";
    std::size_t samples = 100;
    std::size_t q = 5;
    std::size_t trials = 1000;
    double sigma = 1.0;
    double c = 2.0;
    bool h_set = false;
};

std::size_t max_of(const std::vector<std::size_t>& v) { return *std::max_element(v.begin(), v.end()); }

std::vector<McReport> run_suite(const ValidateOpts& o, std::uint64_t seed, json& params) {
    std::vector<McReport> reports;
    auto add = [&](std::vector<McReport> more) {
        for (auto& r : more) reports.push_back(std::move(r));
    };
    params["suite"] = o.suite;

    if (o.suite == "moments") {
        const double h = o.h_set ? o.h : 0.25;
        const std::size_t N = o.N.value_or(1000000);
        params.update({{"algo", o.algo}, {"m", o.m}, {"h", h}, {"n", o.n}, {"N", N}});
        add(moment_suite(parse_algo(o.algo), o.m, h, o.n, N, seed));
    } else if (o.suite == "fs-error") {
        const auto ns = o.n_list.empty() ? std::vector<std::size_t>{1, 2, 5, 10} : o.n_list;
        const std::size_t K = o.K.value_or(default_tail_cutoff(max_of(ns)));
        const std::size_t N = o.N.value_or(100000);
        params.update({{"h", o.h}, {"n_list", ns}, {"K", K}, {"N", N}});
        add(coupled_fs_error_grid(o.h, ns, K, N, seed));
    } else if (o.suite == "ia-error") {
        const auto ns = o.n_list.empty() ? std::vector<std::size_t>{2, 4, 8, 16} : o.n_list;
        const auto ms = o.m_list.empty() ? std::vector<std::size_t>{2, 3, 5} : o.m_list;
        const std::size_t K = o.K.value_or(default_tail_cutoff(max_of(ns)));
        const std::size_t N = o.N.value_or(10000);
        params.update({{"h", o.h}, {"m_list", ms}, {"n_list", ns}, {"K", K}, {"N", N}});
        for (std::size_t mi = 0; mi < ms.size(); ++mi) {
            const auto grid = coupled_ia_error_grid(ms[mi], o.h, ns, K, N, seed + mi);
            std::vector<double> xs;
            std::vector<double> ys;
            for (std::size_t l = 0; l < grid.size(); ++l) {
                reports.push_back(grid[l].max_entry);
                reports.push_back(grid[l].frobenius);
                xs.push_back(static_cast<double>(ns[l]));
                ys.push_back(grid[l].max_entry.estimate);
            }
            if (ns.size() >= 3)
                reports.push_back(in_interval("ia_max_entry_slope_m" + std::to_string(ms[mi]), fit_slope(xs, ys),
                                              -1.15, -0.85));
        }
    } else if (o.suite == "cov") {
        std::vector<std::size_t> ms = o.m_list;
        if (ms.empty())
            for (std::size_t m = 2; m <= 8; ++m) ms.push_back(m);
        const std::size_t N = o.N.value_or(100000);
        params.update({{"m_list", ms}, {"samples", o.samples}, {"N", N}});
        for (std::size_t mi = 0; mi < ms.size(); ++mi) add(cond_cov_suite(ms[mi], o.samples, N, seed + mi));
    } else if (o.suite == "lemma43") {
        params.update({{"q", o.q}, {"trials", o.trials}});
        reports.push_back(sqrt_lipschitz_check(o.q, o.trials, seed));
    } else if (o.suite == "sigma2") {
        const std::size_t N = o.N.value_or(10000);
        struct Point {
            std::size_t m, n;
        };
        std::vector<Point> grid{{2, 1}, {3, 2}};
        if (!o.m_list.empty() || !o.n_list.empty()) {
            if (o.m_list.size() != o.n_list.size()) throw UsageError("sigma2: --m-list and --n-list must pair up");
            grid.clear();
            for (std::size_t g = 0; g < o.m_list.size(); ++g) grid.push_back({o.m_list[g], o.n_list[g]});
        }
        json pts = json::array();
        for (std::size_t g = 0; g < grid.size(); ++g) {
            const std::size_t K = o.K.value_or(default_tail_cutoff(grid[g].n));
            pts.push_back({{"m", grid[g].m}, {"n", grid[g].n}, {"K", K}});
            const Sigma2Stats s = sigma2_stats(grid[g].m, o.h, grid[g].n, K, N, seed + g);
            reports.push_back(s.row);
            reports.push_back(s.frobenius);
        }
        params.update({{"h", o.h}, {"grid", pts}, {"N", N}});
    } else if (o.suite == "abs-moments") {
        const auto ps = o.p_list.empty() ? std::vector<double>{1.0, 2.5, 4.0} : o.p_list;
        const std::size_t N = o.N.value_or(1000000);
        params.update({{"p_list", ps}, {"sigma", o.sigma}, {"c", o.c}, {"N", N}});
        for (std::size_t pi = 0; pi < ps.size(); ++pi) add(abs_moment_check(ps[pi], o.sigma, o.c, N, seed + pi));
    } else {
        throw UsageError("validate: unknown suite " + o.suite);
    }
    return reports;
}

Outcome cmd_validate(const ValidateOpts& o, std::uint64_t seed, std::ostream& err) {
    Outcome res;
    const std::vector<McReport> reports = run_suite(o, seed, res.parameters);
    res.table.columns = {"statistic", "estimate", "std_error", "target", "rule", "pass"};
    std::size_t failed = 0;
    for (const McReport& r : reports) {
        res.table.rows.push_back({r.statistic, r.estimate, r.std_error, r.target, r.rule_text(), r.pass});
        if (!r.pass) ++failed;
        if (!r.note.empty()) err << "note: " << r.statistic << ": " << r.note << '\n';
    }
    res.passed = failed == 0;
    res.summary = json{{"suite", o.suite}, {"reports", reports.size()}, {"failed", failed}};
    return res;
}

// ---- cost -------------------------------------------------------------------

struct CostOpts {
    std::size_t m = 2;
    double h = 1.0;
    double eps = 0.01;
    double p = 2.0;
};

Outcome cmd_cost(const CostOpts& o) {
    Outcome res;
    res.table.columns = {"algorithm", "n", "draws", "ratio_to_ia"};
    const CostReport ia = cost(Algorithm::ia, o.m, o.p, o.h, o.eps);
    const double base = static_cast<double>(ia.draws);
    auto row = [&](const CostReport& c) {
        res.table.rows.push_back(
            {std::string(to_string(c.algo)), c.n, c.draws, static_cast<double>(c.draws) / base});
    };
    row(ia);
    if (o.p == 2.0) {
        row(cost(Algorithm::wik, o.m, o.p, o.h, o.eps));
    } else {
        res.table.rows.push_back({"WIK", "n/a (L² schedule only)", nullptr, nullptr});
    }
    row(cost(Algorithm::fs, o.m, o.p, o.h, o.eps));
    res.parameters = {{"m", o.m}, {"h", o.h}, {"eps", o.eps}, {"p", o.p}};
    return res;
}

// ---- convergence ------------------------------------------------------------

struct ConvergenceOpts {
    std::string algo = "ia";
    std::vector<std::size_t> n_list{2, 4, 8, 16};
    std::size_t m = 2;
    double h = 1.0;
    std::size_t paths = 10000;
    std::optional<std::size_t> K;
};

Outcome cmd_convergence(const ConvergenceOpts& o, std::uint64_t seed) {
    if (o.n_list.size() < 3) throw UsageError("convergence: --n-list needs at least 3 levels");
    const std::size_t K = o.K.value_or(default_tail_cutoff(max_of(o.n_list)));
    Outcome res;
    res.table.columns = {"n", "statistic", "estimate", "std_error", "closed_form", "pass"};
    std::vector<double> xs;
    std::vector<double> est;
    std::vector<double> closed;
    auto push = [&](std::size_t n, const McReport& r) {
        res.table.rows.push_back({n, r.statistic, r.estimate, r.std_error, r.target, r.pass});
        res.passed = res.passed && r.pass;
    };

    if (o.algo == "fs") {
        if (o.m != 2) throw UsageError("convergence: the fs study measures pair (1,2) with --m 2");
        const auto reps = coupled_fs_error_grid(o.h, o.n_list, K, o.paths, seed);
        for (std::size_t l = 0; l < reps.size(); ++l) {
            push(o.n_list[l], reps[l]);
            est.push_back(reps[l].estimate);
            closed.push_back(reps[l].target);
        }
    } else {
        const auto reps = coupled_ia_error_grid(o.m, o.h, o.n_list, K, o.paths, seed);
        for (std::size_t l = 0; l < reps.size(); ++l) {
            push(o.n_list[l], reps[l].max_entry);
            push(o.n_list[l], reps[l].frobenius);
            est.push_back(reps[l].max_entry.estimate);
            closed.push_back(reps[l].max_entry.target);
        }
    }
    for (std::size_t n : o.n_list) xs.push_back(static_cast<double>(n));

    res.parameters = {{"algo", o.algo}, {"n_list", o.n_list}, {"m", o.m}, {"h", o.h}, {"paths", o.paths}, {"K", K}};
    res.summary = json{{"algo", o.algo}, {"slope", fit_slope(xs, est)}, {"closed_form_slope", fit_slope(xs, closed)}};
    return res;
}

// ---- demo -------------------------------------------------------------------

struct DemoOpts {
    DemoConfig cfg;
    std::optional<std::size_t> fixed_n;
};

Outcome cmd_demo(DemoOpts o, std::uint64_t seed) {
    if (o.cfg.h_list.size() < 3) throw UsageError("demo: --h-list needs at least 3 step sizes");
    o.cfg.seed = seed;
    o.cfg.fixed_n = o.fixed_n;
    const DemoResult r = run_demo(o.cfg);
    Outcome res;
    res.table.columns = {"h", "n", "rmse_milstein_ia", "rmse_milstein_fs", "rmse_euler"};
    for (const DemoRow& row : r.rows)
        res.table.rows.push_back({row.h, row.n, row.rmse_milstein_ia, row.rmse_milstein_fs, row.rmse_euler});
    res.parameters = {{"T", o.cfg.T},
                      {"h_list", o.cfg.h_list},
                      {"paths", o.cfg.paths},
                      {"K", o.cfg.K},
                      {"n", o.fixed_n ? json(*o.fixed_n) : json("h^1.5 schedule")}};
    res.summary = json{{"slope_milstein_ia", r.slope_milstein_ia},
                       {"slope_milstein_fs", r.slope_milstein_fs},
                       {"slope_euler", r.slope_euler}};
    return res;
}

// ---- replay -----------------------------------------------------------------

std::vector<std::string> replay_args(const std::string& manifest_path, const std::string& out_path) {
    std::ifstream in(manifest_path);
    if (!in) throw UsageError("replay: cannot open " + manifest_path);
    json manifest;
    try {
        manifest = json::parse(in);
    } catch (const json::exception& e) {
        throw UsageError("replay: malformed manifest: " + std::string(e.what()));
    }
    if (!manifest.contains("args") || !manifest["args"].is_array())
        throw UsageError("replay: manifest has no argument list");
    const auto recorded = manifest["args"].get<std::vector<std::string>>();
    std::vector<std::string> args;
    for (std::size_t k = 0; k < recorded.size(); ++k) {
        if (recorded[k] == "--out") {
            ++k;
            continue;
        }
        if (recorded[k].rfind("--out=", 0) == 0) continue;
        args.push_back(recorded[k]);
    }
    if (!out_path.empty()) {
        args.push_back("--out");
        args.push_back(out_path);
    }
    return args;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Lévy area and iterated Itô integral simulation", "levysim"};
    app.set_help_flag("--help", "Print this help message and exit");  // -h is taken by the step size
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(LEVYSIM_VERSION));

    Common common;

    SimulateOpts so;
    double eps_value = 0.0;
    std::size_t n_value = 0;
    auto* sim = app.add_subcommand("simulate", "Draw (dW, I) realizations");
    sim->add_option("--m", so.m, "Brownian dimension")->required();
    sim->add_option("--h", so.h, "Step size")->required();
    auto* eps_opt = sim->add_option("--eps", eps_value, "Target L^p accuracy; selects n");
    auto* n_opt = sim->add_option("--n", n_value, "Truncation level");
    sim->add_option("--p", so.p, "Order of the L^p accuracy")->capture_default_str();
    sim->add_option("--algo", so.algo)->check(CLI::IsMember({"ia", "fs"}))->capture_default_str();
    sim->add_option("--calculus", so.calculus)->check(CLI::IsMember({"ito", "strat"}))->capture_default_str();
    sim->add_option("--batch", so.batch, "Number of realizations")->capture_default_str();
    add_common(sim, common);

    ValidateOpts vo;
    std::size_t v_N = 0;
    std::size_t v_K = 0;
    auto* val = app.add_subcommand("validate", "Run a Monte Carlo validation suite");
    val->add_option("--suite", vo.suite, "moments|fs-error|ia-error|cov|lemma43|sigma2|abs-moments")->required();
    auto* vN = val->add_option("--N", v_N, "Realizations");
    auto* vK = val->add_option("--K", v_K, "Modes of the reference series");
    val->add_option("--n-list", vo.n_list)->delimiter(',');
    val->add_option("--m-list", vo.m_list)->delimiter(',');
    val->add_option("--p-list", vo.p_list)->delimiter(',');
    auto* vh = val->add_option("--h", vo.h);
    val->add_option("--m", vo.m);
    val->add_option("--n", vo.n);
    val->add_option("--algo", vo.algo)->check(CLI::IsMember({"ia", "fs"}));
    val->add_option("--samples", vo.samples);
    val->add_option("--q", vo.q);
    val->add_option("--trials", vo.trials);
    val->add_option("--sigma", vo.sigma);
    val->add_option("--c", vo.c);
    add_common(val, common);

    CostOpts co;
    auto* cst = app.add_subcommand("cost", "Gaussian draw counts per realization");
    cst->add_option("--m", co.m)->required();
    cst->add_option("--h", co.h)->required();
    cst->add_option("--eps", co.eps)->required();
    cst->add_option("--p", co.p)->capture_default_str();
    add_common(cst, common);

    ConvergenceOpts cvo;
    std::size_t c_K = 0;
    auto* conv = app.add_subcommand("convergence", "Coupled error against truncation level");
    conv->add_option("--algo", cvo.algo)->check(CLI::IsMember({"ia", "fs"}))->capture_default_str();
    conv->add_option("--n-list", cvo.n_list)->delimiter(',');
    conv->add_option("--m", cvo.m)->capture_default_str();
    conv->add_option("--h", cvo.h)->capture_default_str();
    conv->add_option("--paths", cvo.paths)->capture_default_str();
    auto* cK = conv->add_option("--K", c_K);
    add_common(conv, common);

    DemoOpts dmo;
    std::size_t d_n = 0;
    auto* demo = app.add_subcommand("demo", "Milstein and Euler strong error study");
    demo->add_option("--T", dmo.cfg.T)->capture_default_str();
    demo->add_option("--h-list", dmo.cfg.h_list)->delimiter(',');
    demo->add_option("--paths", dmo.cfg.paths)->capture_default_str();
    demo->add_option("--K", dmo.cfg.K)->capture_default_str();
    auto* dn = demo->add_option("--n", d_n, "Fixed truncation level");
    add_common(demo, common);

    std::string manifest_path;
    std::string replay_out;
    auto* rep = app.add_subcommand("replay", "Rerun the command recorded in a manifest");
    rep->add_option("manifest", manifest_path)->required();
    rep->add_option("--out", replay_out);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::CallForVersion&) {
        out << LEVYSIM_VERSION << '\n';
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "levysim: " << e.what() << '\n';
        return 2;
    }

    try {
        if (rep->parsed()) return run(replay_args(manifest_path, replay_out), out, err);

        const auto start = Clock::now();
        Outcome result;
        std::string command;
        if (sim->parsed()) {
            command = "simulate";
            if (*eps_opt) so.eps = eps_value;
            if (*n_opt) so.n = n_value;
            result = cmd_simulate(so, common.seed);
        } else if (val->parsed()) {
            command = "validate";
            if (*vN) vo.N = v_N;
            if (*vK) vo.K = v_K;
            vo.h_set = vh->count() > 0;
            result = cmd_validate(vo, common.seed, err);
        } else if (cst->parsed()) {
            command = "cost";
            result = cmd_cost(co);
        } else if (conv->parsed()) {
            command = "convergence";
            if (*cK) cvo.K = c_K;
            result = cmd_convergence(cvo, common.seed);
        } else {
            command = "demo";
            if (*dn) dmo.fixed_n = d_n;
            result = cmd_demo(dmo, common.seed);
        }
        const double seconds = std::chrono::duration<double>(Clock::now() - start).count();
        emit(command, args, common, result, seconds, out);
        return result.passed ? 0 : 1;
    } catch (const std::exception& e) {  // usage, parameter and I/O errors alike
        err << "levysim: " << e.what() << '\n';
        return 2;
    }
}

}  // namespace levysim::cli
