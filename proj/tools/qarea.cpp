// Command-line front end: closed-form evaluators, path construction,
// transform evaluation, Monte Carlo estimators, and the validation battery.
#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "qarea/acceptance.hpp"
#include "qarea/asymptotics.hpp"
#include "qarea/harness.hpp"
#include "qarea/io.hpp"
#include "qarea/laplace.hpp"
#include "qarea/model.hpp"
#include "qarea/simulate.hpp"
#include "qarea/variational.hpp"

namespace {

using nlohmann::ordered_json;

constexpr std::uint64_t kDefaultSeed = 20260815;

void print_json(const ordered_json& j) { std::cout << qarea::dump_json(j) << "\n"; }

std::ofstream open_out(const std::string& path) {
    std::ofstream os(path);
    if (!os) throw qarea::DomainError("cannot open for writing: " + path);
    return os;
}

struct SimOpts {
    double h = 1e-3;
    std::uint64_t seed = kDefaultSeed;
    std::uint64_t stream = 0;
    unsigned threads = 0;
};

void add_sim_opts(CLI::App* sub, SimOpts& o) {
    sub->add_option("--step", o.h, "time step h of the simulation grid")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    sub->add_option("--seed", o.seed, "base seed; identical seeds reproduce results exactly")
        ->capture_default_str();
    sub->add_option("--stream", o.stream, "first RNG stream index")->capture_default_str();
    sub->add_option("--threads", o.threads, "worker threads (0 = all cores)")
        ->capture_default_str();
}

qarea::SimConfig make_sim(const SimOpts& o, double horizon) {
    qarea::SimConfig sim;
    sim.h = o.h;
    sim.horizon = horizon;
    sim.seed = o.seed;
    sim.stream_index = o.stream;
    return sim;
}

// --- asym -------------------------------------------------------------------

struct AsymOpts {
    double c = 1.0;
    double T = 0.0;
    double M = 0.0;
    double u = 0.0;
    std::string batch;
    std::string out;
};

void setup_asym(CLI::App& app) {
    auto opts = std::make_shared<AsymOpts>();
    auto* sub = app.add_subcommand(
        "asym", "Closed-form window tail values and area decay rates");
    sub->add_option("--c", opts->c, "drain rate")->check(CLI::PositiveNumber);
    auto* t_opt = sub->add_option("--T", opts->T, "window length");
    auto* m_opt = sub->add_option("--M", opts->M, "area slope (rate mode)");
    auto* u_opt = sub->add_option("--u", opts->u, "area threshold (tail mode)");
    sub->add_option("--batch", opts->batch,
                    "CSV of (u,T) or (T,M) rows to evaluate in bulk")
        ->check(CLI::ExistingFile);
    auto* out_opt = sub->add_option("--out", opts->out, "output CSV for --batch");
    sub->callback([opts, t_opt, m_opt, u_opt, out_opt]() {
        const qarea::QueueParams params(opts->c);
        if (!opts->batch.empty()) {
            if (out_opt->count() == 0)
                throw qarea::DomainError("asym --batch requires --out");
            std::ifstream in(opts->batch);
            if (!in) throw qarea::DomainError("cannot open: " + opts->batch);
            auto os = open_out(opts->out);
            qarea::batch_evaluate_csv(in, os, params);
            return;
        }
        if (t_opt->count() == 0)
            throw qarea::DomainError("asym needs --T (with --M or --u) or --batch");
        if (m_opt->count() > 0) {
            print_json(qarea::rate_to_json(qarea::window_rate(opts->T, opts->M, params)));
        } else if (u_opt->count() > 0) {
            ordered_json j;
            j["u"] = opts->u;
            j["T"] = opts->T;
            j["asymptotic"] =
                qarea::short_window_tail_asymptotic(opts->u, opts->T, params);
            j["exact"] = qarea::short_window_tail_exact(opts->u, opts->T, params);
            print_json(j);
        } else {
            throw qarea::DomainError("asym needs --M (rate) or --u (tail) with --T");
        }
    });
}

// --- mlp --------------------------------------------------------------------

struct MlpOpts {
    double c = 1.0;
    double T = 1.0;
    double M = 1.0;
    std::size_t n = 1001;
    std::string out;
};

void setup_mlp(CLI::App& app) {
    auto opts = std::make_shared<MlpOpts>();
    auto* sub = app.add_subcommand(
        "mlp", "Cheapest driving path for the windowed area event");
    sub->add_option("--c", opts->c, "drain rate")->check(CLI::PositiveNumber);
    sub->add_option("--T", opts->T, "window length")
        ->required()
        ->check(CLI::PositiveNumber);
    sub->add_option("--M", opts->M, "area slope")->required()->check(CLI::PositiveNumber);
    sub->add_option("--n", opts->n, "grid points")->capture_default_str();
    sub->add_option("--out", opts->out, "CSV of r,f_star,q");
    sub->callback([opts]() {
        const qarea::QueueParams params(opts->c);
        const auto path = qarea::most_likely_path(opts->T, opts->M, params, opts->n);
        const auto workload = qarea::skorokhod_map(path.grid, params, path.a_star);
        if (!opts->out.empty()) {
            auto os = open_out(opts->out);
            qarea::write_path_csv(os, path, workload);
        }
        const auto rate = qarea::window_rate(opts->T, opts->M, params);
        ordered_json j;
        j["T"] = opts->T;
        j["M"] = opts->M;
        j["scenario"] = qarea::scenario_name(path.scenario);
        j["a_star"] = path.a_star;
        j["s_star"] = rate.s_star;
        j["phi"] = rate.value;
        j["path_cost"] =
            qarea::rate_functional(path.grid) + 2.0 * path.a_star * params.c();
        j["swept_area"] = qarea::trapezoid_area(workload);
        print_json(j);
    });
}

// --- laplace ------------------------------------------------------------------

struct LaplaceOpts {
    double c = 1.0;
    double gamma = 1.0;
    std::string mode = "stationary";
    double x = 1.0;
    std::vector<double> grid;
    std::string out;
};

void setup_laplace(CLI::App& app) {
    auto opts = std::make_shared<LaplaceOpts>();
    auto* sub = app.add_subcommand(
        "laplace", "Transforms of the busy-period area (fixed or stationary start)");
    sub->add_option("--c", opts->c, "drain rate")->check(CLI::PositiveNumber);
    sub->add_option("--gamma", opts->gamma, "transform argument")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    sub->add_option("--mode", opts->mode, "stationary or transient")
        ->check(CLI::IsMember({"stationary", "transient"}))
        ->capture_default_str();
    auto* x_opt = sub->add_option("--x", opts->x, "start level (transient mode)");
    sub->add_option("--grid", opts->grid, "gamma grid for CSV output")
        ->delimiter(',');
    auto* out_opt = sub->add_option("--out", opts->out, "output CSV for --grid");
    sub->callback([opts, x_opt, out_opt]() {
        const qarea::QueueParams params(opts->c);
        const bool transient = opts->mode == "transient";
        if (transient && x_opt->count() == 0)
            throw qarea::DomainError("laplace --mode transient requires --x");
        auto eval = [&](double gamma) {
            return transient ? qarea::transient_lt(gamma, opts->x, params)
                             : qarea::stationary_lt(gamma, params);
        };
        if (!opts->grid.empty()) {
            if (out_opt->count() == 0)
                throw qarea::DomainError("laplace --grid requires --out");
            std::vector<qarea::TransformPoint> points;
            points.reserve(opts->grid.size());
            for (const double g : opts->grid) points.push_back({g, eval(g)});
            auto os = open_out(opts->out);
            qarea::write_transform_csv(os, points);
            return;
        }
        ordered_json j;
        j["mode"] = opts->mode;
        j["gamma"] = opts->gamma;
        if (transient) j["x"] = opts->x;
        j["value"] = eval(opts->gamma);
        j["mean_area"] = transient ? qarea::mean_transient_area(opts->x, params)
                                   : qarea::mean_stationary_area(params);
        print_json(j);
    });
}

// --- sim-tail -------------------------------------------------------------------

struct SimTailOpts {
    double c = 1.0;
    double u = 1.0;
    double coeff = 1.0;
    double power = 0.0;
    std::uint64_t n = 100000;
    SimOpts sim;
};

void setup_sim_tail(CLI::App& app) {
    auto opts = std::make_shared<SimTailOpts>();
    auto* sub = app.add_subcommand(
        "sim-tail", "Monte Carlo tail of the area over the window [0, coeff*u^power]");
    sub->add_option("--c", opts->c, "drain rate")->check(CLI::PositiveNumber);
    sub->add_option("--u", opts->u, "area threshold")
        ->required()
        ->check(CLI::NonNegativeNumber);
    sub->add_option("--coeff", opts->coeff, "window coefficient")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    sub->add_option("--power", opts->power, "window exponent")->capture_default_str();
    sub->add_option("--n", opts->n, "replications")->capture_default_str();
    add_sim_opts(sub, opts->sim);
    sub->callback([opts]() {
        const qarea::QueueParams params(opts->c);
        const qarea::HorizonSpec horizon{opts->coeff, opts->power};
        const auto sim = make_sim(opts->sim, 1.0);  // estimate_pi sets the window
        const auto report = qarea::estimate_pi(params, horizon, opts->u, sim, opts->n,
                                               opts->sim.threads);
        ordered_json j;
        j["u"] = opts->u;
        j["window"] = std::max(horizon.at(opts->u), sim.h);
        j["report"] = qarea::report_to_json(report);
        print_json(j);
    });
}

// --- sim-busy ---------------------------------------------------------------------

struct SimBusyOpts {
    double c = 1.0;
    std::uint64_t n = 10000;
    double horizon = 0.0;  // 0 -> 1e4 / c
    std::vector<double> x_grid{0.5, 1.0, 2.0};
    std::vector<double> gamma_grid{0.5, 1.0, 2.0};
    SimOpts sim;
};

void setup_sim_busy(CLI::App& app) {
    auto opts = std::make_shared<SimBusyOpts>();
    auto* sub = app.add_subcommand(
        "sim-busy", "Busy-period area battery checked against the transforms");
    sub->add_option("--c", opts->c, "drain rate")->check(CLI::PositiveNumber);
    sub->add_option("--n", opts->n, "replications per batch")->capture_default_str();
    sub->add_option("--horizon", opts->horizon, "per-path time cap (0 = 1e4/c)");
    sub->add_option("--x", opts->x_grid, "fixed start levels")->delimiter(',');
    sub->add_option("--gamma", opts->gamma_grid, "transform arguments")->delimiter(',');
    opts->sim.h = 1e-4;
    add_sim_opts(sub, opts->sim);
    sub->callback([opts]() {
        const qarea::QueueParams params(opts->c);
        const double horizon =
            opts->horizon > 0.0 ? opts->horizon : 1e4 / params.c();
        const auto sim = make_sim(opts->sim, horizon);
        const auto report =
            qarea::busy_period_suite(params, sim, opts->n, opts->x_grid,
                                     opts->gamma_grid, opts->sim.threads);
        print_json(qarea::busy_suite_to_json(report));
    });
}

// --- scaling ---------------------------------------------------------------------

struct ScalingOpts {
    double c = 1.0;
    double T = 1.0;
    double M = 0.5;
    unsigned k = 2;
    std::uint64_t n = 100000;
    SimOpts sim;
};

void setup_scaling(CLI::App& app) {
    auto opts = std::make_shared<ScalingOpts>();
    auto* sub = app.add_subcommand(
        "scaling", "Averaged-superposition identity checked by two estimators");
    sub->add_option("--c", opts->c, "drain rate")->check(CLI::PositiveNumber);
    sub->add_option("--T", opts->T, "window length")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    sub->add_option("--M", opts->M, "area threshold")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    sub->add_option("--k", opts->k, "number of averaged drivers")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    sub->add_option("--n", opts->n, "replications per side")->capture_default_str();
    add_sim_opts(sub, opts->sim);
    sub->callback([opts]() {
        const qarea::QueueParams params(opts->c);
        const auto sim = make_sim(opts->sim, opts->T);
        const auto check = qarea::scaling_check(params, opts->T, opts->M, opts->k, sim,
                                                opts->n, opts->sim.threads);
        print_json(qarea::scaling_to_json(check));
    });
}

// --- regime ----------------------------------------------------------------------

struct RegimeOpts {
    std::string config;
    std::string out_json;
    std::string out_csv;
    unsigned threads = 0;
};

void setup_regime(CLI::App& app) {
    auto opts = std::make_shared<RegimeOpts>();
    auto* sub = app.add_subcommand(
        "regime", "Tail-rate trend study driven by a JSON experiment file");
    sub->add_option("--config", opts->config, "experiment JSON")
        ->required()
        ->check(CLI::ExistingFile);
    sub->add_option("--out", opts->out_json, "write the JSON table here");
    sub->add_option("--csv", opts->out_csv, "write the per-u CSV here");
    sub->add_option("--threads", opts->threads, "worker threads (0 = all cores)")
        ->capture_default_str();
    sub->callback([opts]() {
        const auto experiment =
            qarea::experiment_from_json(qarea::parse_json_file(opts->config));
        const auto table = qarea::run_experiment(experiment, opts->threads);
        const auto j = qarea::regime_table_to_json(table);
        if (!opts->out_csv.empty()) {
            auto os = open_out(opts->out_csv);
            qarea::write_regime_csv(os, table);
        }
        if (!opts->out_json.empty()) {
            qarea::write_text_file(opts->out_json, qarea::dump_json(j) + "\n");
        } else {
            print_json(j);
        }
    });
}

// --- validate --------------------------------------------------------------------

struct ValidateOpts {
    bool quick = false;
    int only = 0;
    std::uint64_t seed = kDefaultSeed;
    unsigned threads = 0;
};

void setup_validate(CLI::App& app, int& rc) {
    auto opts = std::make_shared<ValidateOpts>();
    auto* sub = app.add_subcommand(
        "validate", "Run the acceptance battery (one pass/fail line per check)");
    sub->add_flag("--quick", opts->quick, "reduced battery, a few minutes total");
    auto* only_opt =
        sub->add_option("--only", opts->only, "run a single check by number")
            ->check(CLI::Range(1, 12));
    sub->add_option("--seed", opts->seed, "base seed")->capture_default_str();
    sub->add_option("--threads", opts->threads, "worker threads (0 = all cores)")
        ->capture_default_str();
    sub->callback([opts, only_opt, &rc]() {
        qarea::AcceptanceOptions options;
        options.quick = opts->quick;
        options.seed = opts->seed;
        options.threads = opts->threads;
        if (only_opt->count() > 0) options.only = opts->only;
        const auto results = qarea::run_acceptance(options, std::cout);
        rc = qarea::all_passed(results) ? 0 : 1;
    });
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Workload-area tail toolkit: exact laws, decay rates, most likely "
                 "paths, transforms, and Monte Carlo estimators for a reflected "
                 "Brownian queue"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "qarea 1.0.0");

    int rc = 0;
    setup_asym(app);
    setup_mlp(app);
    setup_laplace(app);
    setup_sim_tail(app);
    setup_sim_busy(app);
    setup_scaling(app);
    setup_regime(app);
    setup_validate(app, rc);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const qarea::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return rc;
}
