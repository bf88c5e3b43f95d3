// Command-line front end: resolves a configuration, runs one experiment, writes CSV/JSON
// results and a manifest. Exit code 0 when every check passes, 2 when one fails, 1 on error.

#include "dlab/coeff_io.hpp"
#include "dlab/config.hpp"
#include "dlab/inflation.hpp"
#include "dlab/kernel_decay.hpp"
#include "dlab/lemma_check.hpp"
#include "dlab/littlewood_paley.hpp"
#include "dlab/mollifier_check.hpp"
#include "dlab/output.hpp"
#include "dlab/pseudo_product.hpp"
#include "dlab/solver.hpp"
#include "dlab/strichartz.hpp"
#include "dlab/trilinear.hpp"

#include <CLI11.hpp>
#include <omp.h>

#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <iostream>
#include <numeric>

using namespace dlab;
namespace fs = std::filesystem;

namespace {

constexpr const char* tool_version = "dlab 1.0.0";

std::string utc_now()
{
    const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

struct Run {
    const Config& cfg;
    fs::path out_dir;
    Json summary;
    Json checks = Json::object();
    Json outputs = Json::object();
    bool all_pass = true;

    void write(const std::string& name, const std::string& text)
    {
        const fs::path path = out_dir / name;
        write_text_file(path.string(), text);
        outputs[name] = hex64(fnv1a64(text));
    }
    void write_binary(const std::string& name)
    {
        outputs[name] = file_digest((out_dir / name).string());
    }
    void check(const std::string& name, bool pass, Json detail)
    {
        detail["pass"] = pass;
        checks[name] = std::move(detail);
        all_pass = all_pass && pass;
    }
    DispersionParams p() const { return DispersionParams(cfg.real("alpha")); }
    std::uint64_t seed() const { return std::uint64_t(cfg.integer("seed")); }
};

Json fit_json(const SweepResult& r) { return sweep_summary(r); }

bool no_flags(const SweepResult& r) { return r.flags.empty(); }

void run_simulate(Run& run)
{
    const Config& c = run.cfg;
    const Grid2D g(std::size_t(c.integer("grid.nx")), std::size_t(c.integer("grid.ny")), c.real("grid.lx"),
                   c.real("grid.ly"));
    SimConfig sc{g, run.p()};
    sc.dt = c.real("time.dt");
    sc.t_end = c.real("time.t_end");
    sc.monitor_stride = int(c.integer("time.monitor_stride"));
    sc.dealias = c.boolean("solver.dealias");
    sc.nonlinear = c.boolean("solver.nonlinear");
    sc.store_states = c.boolean("output.trajectory");
    sc.initial = make_initial(c.text("data.preset"), g, c.real("data.amplitude"), c.real("data.width"), run.seed());
    const Trajectory tr = simulate(sc);

    std::vector<std::string> header{"t", "M", "H"};
    for (double s : tr.monitor_s) header.push_back("es_" + format_real(s));
    std::vector<std::vector<std::string>> rows;
    for (const auto& m : tr.monitors) {
        std::vector<std::string> row{format_real(m.t), format_real(m.M), format_real(m.H)};
        for (double e : m.es) row.push_back(format_real(e));
        rows.push_back(row);
    }
    run.write("monitor.csv", csv_text(header, rows));
    if (sc.store_states) {
        write_trajectory((run.out_dir / "trajectory.bin").string(), tr.states, sc.p);
        run.write_binary("trajectory.bin");
    }
    const auto& m0 = tr.monitors.front();
    const auto& m1 = tr.monitors.back();
    run.summary["mass_drift"] = std::abs(m1.M - m0.M) / std::max(std::abs(m0.M), 1e-300);
    run.summary["hamiltonian_drift"] = std::abs(m1.H - m0.H) / std::max(std::abs(m0.H), 1e-300);
    run.summary["frames"] = tr.monitors.size();
}

void run_strichartz(Run& run)
{
    const Config& c = run.cfg;
    const DispersionParams p = run.p();
    StrichartzOptions o;
    o.mode = c.text("mode") == "global" ? StrichartzMode::global : StrichartzMode::localized;
    o.epsilon = c.real("epsilon");
    o.delta = c.real("delta");
    const double theta_in = c.real("theta");
    const bool default_point = theta_in < 0.0;
    o.theta = default_point ? (o.mode == StrichartzMode::localized ? l4_theta(o.epsilon) : 0.5) : theta_in;
    o.Ns = c.real_list("Ns");
    o.trials = int(c.integer("trials"));
    o.seed = run.seed();
    o.window = c.real("window");
    o.samples = int(c.integer("samples"));
    o.nx = std::size_t(c.integer("grid.nx"));
    o.ny = std::size_t(c.integer("grid.ny"));
    const SweepResult r = strichartz_sweep(p, o);
    run.write("strichartz.csv", sweep_csv(r));

    const double a = p.alpha();
    double claimed;
    if (o.mode == StrichartzMode::global) claimed = -(o.theta / 6.0) * (a - 0.5);
    else if (default_point) claimed = -a / 8.0;
    else claimed = o.theta * (o.epsilon * (a + 1.0) - a / 4.0);
    run.summary = fit_json(r);
    run.summary["theta"] = o.theta;
    run.summary["claimed_slope"] = claimed;
    if (o.theta == 0.0) {
        double dev = 0.0;
        for (const auto& pt : r.points) dev = std::max(dev, std::abs(pt.measured - 1.0));
        run.check("unitarity", dev <= 1e-12, {{"max_deviation", dev}, {"tolerance", 1e-12}});
    } else {
        const double tol = c.real("check.slope_tolerance"), r2 = c.real("check.min_r2");
        run.check("slope", r.fit.slope <= claimed + tol && r.fit.r2 >= r2,
                  {{"slope", r.fit.slope}, {"limit", claimed + tol}, {"r2", r.fit.r2}, {"min_r2", r2}});
    }
}

void run_kernel(Run& run)
{
    const Config& c = run.cfg;
    const DispersionParams p = run.p();
    const double a = p.alpha(), N = c.real("N");
    KernelSweepOptions o;
    o.delta = c.real("delta");
    o.doubling_tolerance = c.real("check.doubling_tolerance");
    o.doubling_tau_limit = c.real("check.doubling_tau_limit");

    std::vector<double> times;
    for (double tau : c.real_list("taus")) times.push_back(tau / std::pow(N, a + 1.0));
    const SweepResult rt = kernel_decay_t_sweep(N, times, p, o);
    const std::vector<double> Ns = c.real_list("n_sweep.Ns");
    const double t_n = c.real("n_sweep.tau_max") / std::pow(*std::max_element(Ns.begin(), Ns.end()), a + 1.0);
    const SweepResult rn = kernel_decay_n_sweep(Ns, t_n, p, o);
    std::vector<double> small;
    for (double tau : c.real_list("small.taus")) small.push_back(tau / std::pow(N, a + 1.0));
    const SweepResult rs = kernel_small_time_sweep(N, small, p, o);
    run.write("kernel_t.csv", sweep_csv(rt));
    run.write("kernel_n.csv", sweep_csv(rn));
    run.write("kernel_small_time.csv", sweep_csv(rs));

    run.summary["t_sweep"] = fit_json(rt);
    run.summary["n_sweep"] = fit_json(rn);
    run.summary["small_time"] = fit_json(rs);
    double cmax = 0.0;
    for (const auto& pt : rs.points) cmax = std::max(cmax, pt.ratio);
    run.summary["small_time"]["C"] = cmax;
    const double lo = c.real("check.t_slope_lo"), hi = c.real("check.t_slope_hi");
    run.check("t_slope", rt.fit.slope >= lo && rt.fit.slope <= hi && no_flags(rt),
              {{"slope", rt.fit.slope}, {"window", {lo, hi}}, {"flags", rt.flags.size()}});
    const double nlim = -a / 2.0 + c.real("check.n_slope_tolerance");
    run.check("n_slope", rn.fit.slope <= nlim && no_flags(rn),
              {{"slope", rn.fit.slope}, {"limit", nlim}, {"flags", rn.flags.size()}});
    run.check("small_time", no_flags(rs), {{"C", cmax}, {"flags", rs.flags.size()}});
}

void run_inflation(Run& run)
{
    const Config& c = run.cfg;
    const DispersionParams p = run.p();
    const double a = p.alpha(), eps = c.real("epsilon"), del = c.real("delta"), s = c.real("s");
    PicardOptions q;
    q.nodes = int(c.integer("quadrature.nodes"));
    q.phase_per_panel = c.real("quadrature.phase_per_panel");
    const SweepResult r = inflation_sweep(a, s, eps, del, c.real_list("Ns"), c.real("t"), q);
    run.write("inflation.csv", sweep_csv(r));

    const IllposedParams ip(c.real("time_check.N"), eps, del, s, p);
    const double tmax = c.real("time_check.phase_max") / ip.phase_scale();
    const SweepResult rt = inflation_time_sweep(ip, {tmax / 10.0, tmax / std::sqrt(10.0), tmax}, q);
    run.write("inflation_time.csv", sweep_csv(rt));

    const double pred = inflation_exponent(a, eps, del);
    run.summary["sweep"] = fit_json(r);
    run.summary["sweep"]["predicted_exponent"] = pred;
    run.summary["time_check"] = fit_json(rt);
    double lo = INFINITY, hi = 0.0;
    for (std::size_t i = 0; i < r.points.size(); ++i) {
        lo = std::min(lo, r.param(i, "omega_min_rel"));
        hi = std::max(hi, r.param(i, "omega_max_rel"));
    }
    const double tol = c.real("check.slope_tolerance"), r2 = c.real("check.min_r2");
    run.check("growth_slope", std::abs(r.fit.slope - pred) <= tol && r.fit.r2 >= r2 && no_flags(r),
              {{"slope", r.fit.slope}, {"predicted", pred}, {"tolerance", tol}, {"r2", r.fit.r2}, {"min_r2", r2}});
    const double band = c.real("check.band_ratio");
    run.check("phase_band", lo > 0.0 && hi / lo <= band, {{"c", lo}, {"C", hi}, {"max_ratio", band}});
    const double ttol = c.real("check.time_slope_tolerance");
    run.check("time_linearity", std::abs(rt.fit.slope - 1.0) <= ttol && no_flags(rt),
              {{"slope", rt.fit.slope}, {"tolerance", ttol}});
}

std::array<Dyadic, 3> dyadic_triple(const std::vector<double>& v, const char* key)
{
    if (v.size() != 3) throw ConfigError(std::string(key) + " needs three entries");
    return {Dyadic::from_value(v[0]), Dyadic::from_value(v[1]), Dyadic::from_value(v[2])};
}

void run_trilinear(Run& run)
{
    const Config& c = run.cfg;
    const DispersionParams p = run.p();
    TrilinearSweepOptions o;
    const std::string name = c.text("case");
    o.which = name == "c1" ? TrilinearCase::c1 : name == "c2a" ? TrilinearCase::c2a
            : name == "c2b" ? TrilinearCase::c2b : TrilinearCase::c3;
    o.base.H = dyadic_triple(c.real_list("H"), "H");
    o.base.L = dyadic_triple(c.real_list("L"), "L");
    if (!c.real_list("N").empty()) o.base.N = dyadic_triple(c.real_list("N"), "N");
    o.lambdas = c.real_list("lambdas");
    o.trials = int(c.integer("trials"));
    o.seed = run.seed();
    o.n_half = long(c.integer("lattice.n_half"));
    o.n_theta = int(c.integer("lattice.n_theta"));
    check_trilinear_hypotheses(o.which, o.base);
    const SweepResult r = trilinear_scaling_sweep(p, o);
    run.write("trilinear.csv", sweep_csv(r));
    run.summary = fit_json(r);
    run.summary["case"] = name;
    const double tol = c.real("check.slope_tolerance");
    run.check("no_growth", std::abs(r.fit.slope) <= tol, {{"slope", r.fit.slope}, {"tolerance", tol}});
}

void run_lemma(Run& run)
{
    const Config& c = run.cfg;
    const LemmaSampling mode = c.text("sampling") == "paired" ? LemmaSampling::paired : LemmaSampling::independent;
    const LemmaReport r = lemma_tech_check(c.real("delta"), run.p(), std::uint64_t(c.integer("samples")), run.seed(), mode);
    run.write("tech_lemma.csv",
              csv_text({"alpha", "delta", "g", "f1", "f2", "f3", "f", "samples", "violations", "mirror_mismatches",
                        "max_slack"},
                       {{format_real(r.alpha), format_real(r.delta), format_real(r.c.g), format_real(r.c.f1),
                         format_real(r.c.f2), format_real(r.c.f3), format_real(r.c.f()), std::to_string(r.samples),
                         std::to_string(r.violations), std::to_string(r.mirror_mismatches),
                         format_real(r.max_slack)}}));
    run.summary = {{"f", r.c.f()}, {"samples", r.samples}, {"max_slack", r.max_slack}, {"sampling", c.text("sampling")}};
    run.check("no_violations", r.violations == 0 && r.mirror_mismatches == 0,
              {{"violations", r.violations}, {"mirror_mismatches", r.mirror_mismatches}});
}

void run_energy(Run& run)
{
    const Config& c = run.cfg;
    const DispersionParams p = run.p();
    const std::size_t n = std::size_t(c.integer("grid.n"));
    const Grid2D g(n, n, c.real("grid.l"), c.real("grid.l"));
    SimConfig sc{g, p};
    sc.dt = c.real("time.dt");
    sc.t_end = c.real("time.t_end");
    sc.monitor_stride = int(c.integer("time.monitor_stride"));
    SpectralField2D u0 = make_initial("random", g, 1.0, c.real("data.width"), run.seed());
    u0 = (c.real("data.b0_norm") / bs_norm_trajectory({u0}, 0.0, p)) * u0;
    sc.initial = u0;
    const Trajectory tr = simulate(sc);
    const CoercivityReport r = coercivity_report(tr.states, tr.states, c.real("s"), p);

    std::vector<std::vector<std::string>> rows;
    for (const auto& sh : r.shells)
        rows.push_back({std::to_string(sh.log2H), std::to_string(sh.time_index), format_real(sh.shell_l2sq),
                        format_real(sh.correction), format_real(sh.ratio)});
    run.write("energy_shells.csv", csv_text({"log2H", "time_index", "shell_l2sq", "correction", "ratio"}, rows));
    run.summary = {{"b0_norm_u", r.b0_norm_u}, {"bs_norm_v", r.bs_norm_v}, {"energy_sum", r.energy_sum},
                   {"min_ratio", r.min_ratio}, {"max_ratio", r.max_ratio}, {"frames", tr.states.size()}};
    const double lo = c.real("check.ratio_lo"), hi = c.real("check.ratio_hi");
    run.check("coercivity", r.min_ratio >= lo && r.max_ratio <= hi,
              {{"min_ratio", r.min_ratio}, {"max_ratio", r.max_ratio}, {"window", {lo, hi}}});
    const double b0_max = c.real("check.b0_max");
    run.check("small_data", r.b0_norm_u <= b0_max, {{"b0_norm_u", r.b0_norm_u}, {"limit", b0_max}});
}

void run_scaling(Run& run)
{
    const Config& c = run.cfg;
    const DispersionParams p = run.p();
    const std::size_t n = std::size_t(c.integer("grid.n"));
    const Grid2D g(n, n, c.real("grid.l"), c.real("grid.l"));
    SimConfig sc{g, p};
    sc.dt = c.real("time.dt");
    sc.t_end = c.real("time.t_end");
    sc.monitor_stride = int(std::lround(sc.t_end / sc.dt));
    sc.initial = make_initial("gaussian", g, c.real("data.amplitude"), c.real("data.width"), run.seed());
    const double tol = c.real("check.discrepancy"), slack = c.real("check.ratio_slack");
    std::vector<std::vector<std::string>> rows;
    double worst_disc = 0.0, worst_ratio = 0.0;
    for (double lambda : c.real_list("lambdas")) {
        const ScalingReport r = scaled_solution_check(sc, lambda, c.real_list("s_values"));
        worst_disc = std::max(worst_disc, r.discrepancy);
        for (std::size_t i = 0; i < r.s_values.size(); ++i) {
            worst_ratio = std::max(worst_ratio, r.norm_ratio[i] / r.bound[i]);
            rows.push_back({format_real(lambda), format_real(r.s_values[i]), format_real(r.norm_ratio[i]),
                            format_real(r.bound[i]), format_real(r.discrepancy)});
        }
    }
    run.write("scaling.csv", csv_text({"lambda", "s", "norm_ratio", "bound", "discrepancy"}, rows));
    run.summary = {{"max_discrepancy", worst_disc}, {"max_ratio_over_bound", worst_ratio}};
    run.check("matched_time", worst_disc <= tol, {{"discrepancy", worst_disc}, {"tolerance", tol}});
    run.check("norm_bound", worst_ratio <= slack, {{"max_ratio_over_bound", worst_ratio}, {"slack", slack}});
}

void run_mollifier(Run& run)
{
    const Config& c = run.cfg;
    MollifierOptions o;
    o.s = c.real("s");
    o.delta = c.real("delta");
    o.lambdas = c.real_list("lambdas");
    o.trials = int(c.integer("trials"));
    o.seed = run.seed();
    o.n = std::size_t(c.integer("grid.n"));
    o.decay = c.real("data.decay");
    const MollifierReport r = mollifier_check(run.p(), o);
    run.write("mollifier_gain.csv", sweep_csv(r.gain));
    run.write("mollifier_defect.csv", sweep_csv(r.defect));
    run.summary["gain"] = fit_json(r.gain);
    run.summary["defect"] = fit_json(r.defect);
    const double lim = -o.delta - c.real("check.slope_tolerance");
    run.check("gain_slope", r.gain.fit.slope >= lim, {{"slope", r.gain.fit.slope}, {"limit", lim}});
    run.check("defect_decreasing", r.defect_ratio_decreasing, Json::object());
}

int execute(const std::string& sub, const std::string& config_path, const std::vector<std::string>& overrides,
            const std::string& out_dir, std::optional<std::uint64_t> seed, int threads)
{
    Config cfg(sub);
    if (!config_path.empty()) cfg.merge_file(config_path);
    for (const auto& o : overrides) cfg.apply_override(o);
    if (seed) cfg.set("seed", std::to_string(*seed));
    if (threads > 0) omp_set_num_threads(threads);

    fs::create_directories(out_dir);
    Json manifest;
    manifest["tool"] = tool_version;
    manifest["subcommand"] = sub;
    manifest["start"] = utc_now();
    Run run{cfg, fs::path(out_dir), Json::object()};
    static const std::map<std::string, void (*)(Run&)> handlers{
        {"simulate", run_simulate},   {"strichartz", run_strichartz}, {"kernel-decay", run_kernel},
        {"inflation", run_inflation}, {"trilinear", run_trilinear},   {"tech-lemma", run_lemma},
        {"energy", run_energy},       {"scaling", run_scaling},       {"mollifier", run_mollifier},
    };
    handlers.at(sub)(run);

    Json summary;
    summary["subcommand"] = sub;
    summary["config"] = cfg.values();
    summary["results"] = run.summary;
    summary["checks"] = run.checks;
    summary["pass"] = run.all_pass;
    const std::string summary_name = "summary.json";
    run.write(summary_name, summary.dump(2) + "\n");

    manifest["end"] = utc_now();
    manifest["config"] = cfg.values();
    manifest["seed"] = cfg.integer("seed");
    manifest["threads"] = omp_get_max_threads();
    Json inputs = Json::object();
    if (!config_path.empty()) inputs[config_path] = file_digest(config_path);
    manifest["inputs"] = inputs;
    manifest["outputs"] = run.outputs;
    manifest["checks"] = run.checks;
    manifest["pass"] = run.all_pass;
    write_json_file((fs::path(out_dir) / "manifest.json").string(), manifest);

    for (const auto& [name, detail] : run.checks.items())
        std::cout << (detail["pass"].get<bool>() ? "PASS " : "FAIL ") << sub << "." << name << " "
                  << detail.dump() << "\n";
    return run.all_pass ? 0 : 2;
}

void print_keys(const std::string& sub)
{
    for (const auto& k : config_schema(sub))
        std::cout << k.name << " = " << k.fallback << "    # " << k.doc << "\n";
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Desk-scale laboratory for u_t - D_x^alpha u_x + u_xyy = u u_x"};
    app.require_subcommand(1);

    auto* run_cmd = app.add_subcommand("run", "run one experiment");
    std::string sub, config_path, out_dir = "dlab_out";
    std::vector<std::string> rest;
    std::optional<std::uint64_t> seed;
    int threads = 0;
    run_cmd->add_option("subcommand", sub, "experiment name")->required();
    run_cmd->add_option("args", rest, "optional config file followed by key=value overrides");
    run_cmd->add_option("--config", config_path, "configuration file");
    run_cmd->add_option("--out-dir", out_dir, "output directory");
    run_cmd->add_option("--seed", seed, "random seed (overrides the configuration)");
    run_cmd->add_option("--threads", threads, "OpenMP threads (0 keeps the runtime default)");

    auto* keys_cmd = app.add_subcommand("keys", "list the configuration keys of an experiment with their defaults");
    std::string keys_sub;
    keys_cmd->add_option("subcommand", keys_sub, "experiment name")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (*keys_cmd) {
            print_keys(keys_sub);
            return 0;
        }
        std::vector<std::string> overrides;
        for (const auto& a : rest) {
            if (a.find('=') == std::string::npos) {
                if (!config_path.empty()) throw ConfigError("more than one config file given: " + a);
                config_path = a;
            } else {
                overrides.push_back(a);
            }
        }
        return execute(sub, config_path, overrides, out_dir, seed, threads);
    } catch (const SimulationAborted& e) {
        std::cerr << "error: " << e.what() << " (last valid time " << e.last_valid_time << ")\n";
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
    }
    return 1;
}
