#include "cli.hpp"

#include "output.hpp"
#include "pipeline.hpp"

#include "qcf/config.hpp"
#include "qcf/optimizer.hpp"
#include "qcf/oracle.hpp"
#include "qcf/simulator.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace qcf::cli {

namespace {

using nlohmann::json;

struct Options {
    // common
    std::optional<std::string> params_file;
    std::optional<std::string> format;
    std::optional<std::string> out;
    // channel overrides
    std::optional<double> k_loss, beta, length_km, eta, dark_count, noise;
    // protocol / run
    std::optional<long> k;
    std::optional<double> mu, a, abort_target, mu_min, mu_max;
    std::optional<long> k_max, runs, threads;
    std::optional<std::uint64_t> seed;
    // sweep
    int figure = 2;
    std::optional<std::string> lengths;
    double h_min = 0.008, h_max = 0.02, h_step = 0.001;
    // verify
    double grid_step = 0.01;
    double bound_step = 0.02;
    int resolution = 200;
    // reproduce
    std::string out_dir = "reproduce_out";
};

struct Resolved {
    ChannelParams channel;
    std::string format = "structured";
    std::optional<std::string> out;
    std::optional<long> k;
    std::optional<double> mu, a, abort_target;
    long k_max = 15000;
    double mu_min = 1e-4, mu_max = 2.0;
    long runs = 100000;
    std::uint64_t seed = 1;
    std::optional<int> threads;
};

template <typename T>
void overlay(std::optional<T>& slot, const std::optional<T>& value) {
    if (value) slot = value;
}

Resolved resolve(const Options& opt, const std::string& default_format) {
    FileConfig file;
    if (opt.params_file) file = load_config_file(*opt.params_file);

    Resolved r;
    // defaults < config file < flags, field by field
    auto pick_double = [](double fallback, const std::optional<double>& from_file,
                          const std::optional<double>& from_flag) {
        return from_flag ? *from_flag : (from_file ? *from_file : fallback);
    };
    r.channel.k_loss = pick_double(r.channel.k_loss, file.k_loss, opt.k_loss);
    r.channel.beta = pick_double(r.channel.beta, file.beta, opt.beta);
    r.channel.length_km = pick_double(r.channel.length_km, file.length_km, opt.length_km);
    r.channel.eta = pick_double(r.channel.eta, file.eta, opt.eta);
    r.channel.dark_count = pick_double(r.channel.dark_count, file.dark_count, opt.dark_count);
    r.channel.noise = pick_double(r.channel.noise, file.noise, opt.noise);

    r.k = file.k;
    overlay(r.k, opt.k);
    r.mu = file.mu;
    overlay(r.mu, opt.mu);
    r.a = file.a;
    overlay(r.a, opt.a);
    r.abort_target = file.abort_target;
    overlay(r.abort_target, opt.abort_target);

    if (file.k_max) r.k_max = *file.k_max;
    if (opt.k_max) r.k_max = *opt.k_max;
    r.mu_min = pick_double(r.mu_min, file.mu_min, opt.mu_min);
    r.mu_max = pick_double(r.mu_max, file.mu_max, opt.mu_max);
    if (file.runs) r.runs = *file.runs;
    if (opt.runs) r.runs = *opt.runs;
    if (file.seed) r.seed = *file.seed;
    if (opt.seed) r.seed = *opt.seed;
    if (file.threads) r.threads = static_cast<int>(*file.threads);
    if (opt.threads) r.threads = static_cast<int>(*opt.threads);

    r.format = default_format;
    if (file.format) r.format = *file.format;
    if (opt.format) r.format = *opt.format;
    if (r.format != "structured" && r.format != "tabular") {
        throw ConfigError("format must be 'structured' or 'tabular', got '" + r.format + "'");
    }
    r.out = opt.out;
    return r;
}

long require_long(const std::optional<long>& v, const char* flag) {
    if (!v) throw ConfigError(std::string("missing required option ") + flag);
    return *v;
}

double require_double(const std::optional<double>& v, const char* flag) {
    if (!v) throw ConfigError(std::string("missing required option ") + flag);
    return *v;
}

void emit(const Resolved& r, const json& doc, const std::string& csv) {
    const std::string text = r.format == "structured" ? doc.dump(2) + "\n" : csv;
    if (r.out) {
        write_text_file(*r.out, text);
    } else {
        std::cout << text;
    }
}

json config_echo(const Resolved& r) {
    json cfg{{"channel", channel_to_json(r.channel)},
             {"k_max", r.k_max},
             {"mu_min", r.mu_min},
             {"mu_max", r.mu_max},
             {"runs", r.runs},
             {"seed", r.seed},
             {"threads", r.threads.value_or(1)},
             {"format", r.format}};
    if (r.k) cfg["k"] = *r.k;
    if (r.mu) cfg["mu"] = *r.mu;
    if (r.a) cfg["a"] = *r.a;
    if (r.abort_target) cfg["abort_target"] = *r.abort_target;
    return cfg;
}

std::vector<double> parse_lengths(const std::string& csv) {
    std::vector<double> lengths;
    std::stringstream in(csv);
    std::string token;
    while (std::getline(in, token, ',')) {
        try {
            lengths.push_back(std::stod(token));
        } catch (const std::exception&) {
            throw ConfigError("bad --lengths entry '" + token + "'");
        }
    }
    if (lengths.empty()) throw ConfigError("--lengths must name at least one channel length");
    return lengths;
}

int run_analyze(const Options& opt) {
    const Resolved r = resolve(opt, "structured");
    const long k = require_long(r.k, "--k");
    const double mu = require_double(r.mu, "--mu");
    const double a = require_double(r.a, "--a");

    const ProtocolParams params{k, SourceParams{mu}, StateCoefficient(a)};
    const double h = honest_abort(params, r.channel);
    const AbortBreakdown b = honest_abort_breakdown(params, r.channel);
    const EventProbs ev = event_probs(k, params.source);

    json results{
        {"honest_abort", h},
        {"abort_breakdown",
         {{"no_click", b.no_click},
          {"dark_first", b.dark_first},
          {"signal_first", b.signal_first},
          {"abort_no_click", b.abort_no_click()},
          {"abort_dark", b.abort_dark()},
          {"abort_noise", b.abort_noise(r.channel.noise)}}},
        {"alice_cheat", alice_cheat(params.a)},
        {"bob_cheat_bound", bob_cheat_bound(params)},
        {"classical_bound", classical_bound(h)},
        {"event_probs",
         {{"a1", ev.a1}, {"a2", ev.a2}, {"a3", ev.a3}, {"a4", ev.a4}, {"rest", ev.rest}}}};
    const json doc{{"command", "analyze"}, {"config", config_echo(r)}, {"results", results}};
    emit(r, doc, analyze_to_csv(results));
    return kExitOk;
}

int run_simulate(const Options& opt) {
    Resolved r = resolve(opt, "structured");
    if (!r.threads) r.threads = 1;
    const long k = require_long(r.k, "--k");
    if (!r.mu && !r.abort_target) {
        throw ConfigError("simulate needs --mu or --abort-target");
    }
    if (!r.mu) {
        r.mu = solve_mu_for_abort(k, r.channel, *r.abort_target, r.mu_min, r.mu_max).mu;
    }
    const ProtocolParams params{k, SourceParams{*r.mu}, StateCoefficient(r.a.value_or(0.9))};
    const SimulationReport report =
        estimate_honest_abort(params, r.channel, r.runs, r.seed, *r.threads);
    const double analytic = honest_abort(params, r.channel);
    const AbortBreakdown b = honest_abort_breakdown(params, r.channel);

    json results = report_to_json(report);
    results["analytic_honest_abort"] = analytic;
    results["analytic_causes"] = {{"abort_no_click", b.abort_no_click()},
                                  {"abort_dark", b.abort_dark()},
                                  {"abort_noise", b.abort_noise(r.channel.noise)}};
    const json doc{{"command", "simulate"}, {"config", config_echo(r)}, {"results", results}};
    emit(r, doc, simulate_to_csv(report, analytic));
    return kExitOk;
}

int run_optimize(const Options& opt) {
    const Resolved r = resolve(opt, "structured");
    const double target = require_double(r.abort_target, "--abort-target");
    OptimizeOptions oo;
    oo.k_max = r.k_max;
    oo.mu_min = r.mu_min;
    oo.mu_max = r.mu_max;
    const FairPoint fp = optimize(r.channel, target, oo);
    const json doc{{"command", "optimize"},
                   {"config", config_echo(r)},
                   {"results", fair_point_to_json(fp)}};
    emit(r, doc, fair_point_to_csv(r.channel.length_km, target, fp));
    return kExitOk;
}

int run_sweep(const Options& opt) {
    const Resolved r = resolve(opt, "tabular");
    if (opt.figure < 1 || opt.figure > 3) throw ConfigError("--figure must be 1, 2 or 3");
    const std::vector<double> lengths =
        opt.lengths ? parse_lengths(*opt.lengths) : default_figure_lengths(opt.figure);
    if (!(opt.h_step > 0.0 && opt.h_min <= opt.h_max)) {
        throw ConfigError("bad abort-target grid: need h_min <= h_max and h_step > 0");
    }
    const std::vector<double> h_grid = make_grid(opt.h_min, opt.h_max, opt.h_step);

    OptimizeOptions oo;
    oo.k_max = r.k_max;
    oo.mu_min = r.mu_min;
    oo.mu_max = r.mu_max;
    const SweepDataset dataset = sweep_figure(opt.figure, r.channel, lengths, h_grid, oo);

    json doc{{"command", "sweep"},
             {"figure", dataset.figure_id},
             {"config", config_echo(r)},
             {"rows", sweep_rows_to_json(dataset)}};
    doc["config"]["lengths"] = lengths;
    doc["config"]["h_grid"] = h_grid;

    if (r.out) {
        std::filesystem::path base(*r.out);
        if (base.extension() == ".csv" || base.extension() == ".json") base.replace_extension();
        const std::string csv_path = base.string() + ".csv";
        const std::string json_path = base.string() + ".json";
        write_text_file(csv_path, sweep_to_csv(dataset));
        write_json_file(json_path, doc);
        std::cout << "wrote " << csv_path << " and " << json_path << "\n";
    } else if (r.format == "tabular") {
        std::cout << sweep_to_csv(dataset);
    } else {
        std::cout << doc.dump(2) << "\n";
    }
    return kExitOk;
}

int run_verify(const Options& opt) {
    const Resolved r = resolve(opt, "structured");
    if (!(opt.grid_step > 0.0 && opt.bound_step > 0.0)) {
        throw ConfigError("verification grid steps must be positive");
    }
    const auto helstrom_grid = make_grid(0.5, 1.0, opt.grid_step);
    const auto bound_grid = make_grid(0.5, 1.0, opt.bound_step);

    const DeviationReport single = verify_single_photon_helstrom(helstrom_grid);
    const DeviationReport two = verify_two_photon_helstrom(helstrom_grid);
    const ConclusiveBoundReport conclusive = verify_conclusive_bound(bound_grid, opt.resolution);
    const bool pass = single.pass && two.pass && conclusive.pass;

    auto deviation_json = [](const DeviationReport& rep) {
        return json{{"max_deviation", rep.max_deviation},
                    {"worst_a", rep.worst_a},
                    {"points", rep.points},
                    {"tolerance", rep.tolerance},
                    {"pass", rep.pass}};
    };
    json conclusive_bound_rows = json::array();
    for (const ConclusiveBoundRow& row : conclusive.rows) {
        conclusive_bound_rows.push_back({{"a", row.a},
                            {"best_value", row.best_value},
                            {"floor", row.floor},
                            {"bound", row.bound},
                            {"gap", row.gap}});
    }
    json doc{{"command", "verify"},
             {"config", config_echo(r)},
             {"results",
              {{"single_photon", deviation_json(single)},
               {"two_photon", deviation_json(two)},
               {"conclusive_bound",
                {{"pass", conclusive.pass},
                 {"max_bound_excess", conclusive.max_bound_excess},
                 {"max_floor_deficit", conclusive.max_floor_deficit},
                 {"rows", conclusive_bound_rows}}},
               {"pass", pass}}}};
    doc["config"]["grid_step"] = opt.grid_step;
    doc["config"]["bound_step"] = opt.bound_step;
    doc["config"]["resolution"] = opt.resolution;

    std::ostringstream csv;
    csv << "check,pass,max_deviation,tolerance\n"
        << "single_photon," << (single.pass ? "true" : "false") << ','
        << format_number(single.max_deviation) << ',' << format_number(single.tolerance) << '\n'
        << "two_photon," << (two.pass ? "true" : "false") << ','
        << format_number(two.max_deviation) << ',' << format_number(two.tolerance) << '\n'
        << "conclusive_bound," << (conclusive.pass ? "true" : "false") << ','
        << format_number(std::max(conclusive.max_bound_excess, conclusive.max_floor_deficit)) << ','
        << format_number(1e-9) << '\n';
    emit(r, doc, csv.str());
    return pass ? kExitOk : kExitCheckFailed;
}

int run_reproduce(const Options& opt) {
    Resolved r = resolve(opt, "structured");
    if (!r.threads) r.threads = 4;
    const std::filesystem::path dir(opt.out_dir);
    std::filesystem::create_directories(dir);

    pipeline::PipelineOptions popts;
    popts.channel = r.channel;
    popts.k_max = r.k_max;
    popts.mc_runs = r.runs;
    popts.seed = r.seed;
    popts.threads = *r.threads;

    std::vector<pipeline::CheckResult> results;
    auto record = [&](pipeline::CheckResult res) {
        std::cout << pipeline::format_result_line(res) << "\n";
        results.push_back(std::move(res));
    };

    // Discrimination oracles first; their reports land next to the figures.
    record(pipeline::check_helstrom_oracles(popts));
    record(pipeline::check_conclusive_bound(popts));
    {
        const auto grid = make_grid(0.5, 1.0, 0.02);
        const ConclusiveBoundReport conclusive = verify_conclusive_bound(grid, 200);
        json rows = json::array();
        for (const ConclusiveBoundRow& row : conclusive.rows) {
            rows.push_back({{"a", row.a},
                            {"best_value", row.best_value},
                            {"bound", row.bound},
                            {"gap", row.gap}});
        }
        write_json_file((dir / "verification.json").string(),
                        json{{"command", "reproduce/verify"},
                             {"config", config_echo(r)},
                             {"conclusive_bound_rows", rows}});
    }

    // Advantage grid with the headline cell, pulse-count bound included.
    std::vector<pipeline::AdvantageCell> cells;
    record(pipeline::check_headline(popts));
    record(pipeline::check_advantage_region(popts, &cells));
    record(pipeline::check_k_bound(popts, &cells));
    {
        SweepDataset grid_ds;
        grid_ds.figure_id = 2;
        json cell_rows = json::array();
        for (const pipeline::AdvantageCell& cell : cells) {
            grid_ds.rows.push_back(cell.row);
            json c{{"length_km", cell.length_km},
                   {"h_target", cell.h_target},
                   {"expected_advantage", cell.expected_advantage},
                   {"pass", cell.pass},
                   {"solved", cell.row.solved}};
            if (cell.row.solved) {
                c["k"] = cell.row.k;
                c["mu"] = cell.row.mu;
                c["a"] = cell.row.a;
                c["p_cheat"] = cell.row.p_cheat;
                c["classical"] = cell.row.classical;
                c["advantage"] = cell.row.advantage;
            } else {
                c["error"] = cell.row.error;
            }
            cell_rows.push_back(std::move(c));
        }
        write_text_file((dir / "advantage_grid.csv").string(), sweep_to_csv(grid_ds));
        write_json_file((dir / "advantage_grid.json").string(),
                        json{{"command", "reproduce/advantage"},
                             {"config", config_echo(r)},
                             {"cells", cell_rows}});
    }

    // Monte Carlo validation at three spot points.
    {
        std::vector<pipeline::McCell> mc_cells;
        const auto grid = pipeline::reproduce_mc_grid();
        record(pipeline::check_simulation_agreement(popts, grid, &mc_cells));
        json rows = json::array();
        for (const pipeline::McCell& cell : mc_cells) {
            rows.push_back({{"length_km", cell.length_km},
                            {"h_target", cell.h_target},
                            {"fallback", cell.fallback},
                            {"k", cell.k},
                            {"mu", cell.mu},
                            {"analytic_h", cell.analytic_h},
                            {"empirical", cell.empirical},
                            {"std_error", cell.std_error},
                            {"expected_cause", cell.expected_cause},
                            {"observed_cause", cell.observed_cause},
                            {"pass", cell.pass},
                            {"note", cell.note}});
        }
        write_json_file((dir / "simulation_validation.json").string(),
                        json{{"command", "reproduce/simulation"},
                             {"config", config_echo(r)},
                             {"cells", rows}});
    }

    // Figure datasets.
    OptimizeOptions oo;
    oo.k_max = r.k_max;
    for (int figure = 1; figure <= 3; ++figure) {
        const auto lengths = default_figure_lengths(figure);
        const auto h_grid = default_figure_h_grid(figure);
        const SweepDataset ds = sweep_figure(figure, r.channel, lengths, h_grid, oo);
        const std::string base = (dir / ("figure" + std::to_string(figure))).string();
        write_text_file(base + ".csv", sweep_to_csv(ds));
        json doc{{"command", "reproduce/sweep"},
                 {"figure", figure},
                 {"config", config_echo(r)},
                 {"rows", sweep_rows_to_json(ds)}};
        write_json_file(base + ".json", doc);
        std::cout << "wrote " << base << ".csv\n";
    }

    record(pipeline::check_event_oracle(popts));
    record(pipeline::check_property_suite(popts));

    bool all_pass = true;
    json summary_rows = json::array();
    for (const pipeline::CheckResult& res : results) {
        all_pass = all_pass && res.pass;
        summary_rows.push_back({{"criterion", res.criterion},
                                {"name", res.name},
                                {"pass", res.pass},
                                {"seconds", res.seconds},
                                {"detail", res.detail}});
    }
    write_json_file((dir / "summary.json").string(),
                    json{{"command", "reproduce"},
                         {"config", config_echo(r)},
                         {"pass", all_pass},
                         {"checks", summary_rows}});
    std::cout << (all_pass ? "reproduce: all checks passed\n"
                           : "reproduce: some checks FAILED (see summary)\n");
    return all_pass ? kExitOk : kExitCheckFailed;
}

}  // namespace

int run(int argc, const char* const* argv) {
    Options opt;
    CLI::App app{"Quantum coin flipping over lossy channels: closed-form security analytics, "
                 "a protocol Monte Carlo, discrimination oracles and a fairness optimizer"};
    app.require_subcommand(1);

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--params-file", opt.params_file, "JSON key-value configuration file");
        sub->add_option("--format", opt.format, "output format: structured|tabular");
        sub->add_option("--out", opt.out, "write output to this path");
        sub->add_option("--length-km", opt.length_km, "channel length [km] (default 21)");
        sub->add_option("--k-loss", opt.k_loss, "receiver constant loss [dB] (default 1)");
        sub->add_option("--beta", opt.beta, "absorption coefficient [dB/km] (default 0.2)");
        sub->add_option("--eta", opt.eta, "detector quantum efficiency (default 0.2)");
        sub->add_option("--dark-count", opt.dark_count, "dark count probability per slot (default 1e-5)");
        sub->add_option("--noise", opt.noise, "signal error rate (default 0.01)");
    };

    CLI::App* analyze = app.add_subcommand("analyze", "closed-form report for explicit (K, mu, a)");
    add_common(analyze);
    analyze->add_option("--k", opt.k, "number of pulses K");
    analyze->add_option("--mu", opt.mu, "mean photon number");
    analyze->add_option("--a", opt.a, "state coefficient in [0.5, 1]");

    CLI::App* simulate = app.add_subcommand("simulate", "Monte Carlo of the honest protocol");
    add_common(simulate);
    simulate->add_option("--k", opt.k, "number of pulses K");
    simulate->add_option("--mu", opt.mu, "mean photon number (or use --abort-target)");
    simulate->add_option("--a", opt.a, "state coefficient (does not affect honest runs)");
    simulate->add_option("--abort-target", opt.abort_target, "solve mu from this abort level");
    simulate->add_option("--runs", opt.runs, "number of Monte Carlo runs (default 100000)");
    simulate->add_option("--seed", opt.seed, "random seed (default 1)");
    simulate->add_option("--threads", opt.threads, "worker threads (default 1)");

    CLI::App* optimize_cmd = app.add_subcommand("optimize", "fair operating point at an abort target");
    add_common(optimize_cmd);
    optimize_cmd->add_option("--abort-target", opt.abort_target, "honest abort target H");
    optimize_cmd->add_option("--k-max", opt.k_max, "largest pulse count to scan (default 15000)");
    optimize_cmd->add_option("--mu-min", opt.mu_min, "lower mu bracket (default 1e-4)");
    optimize_cmd->add_option("--mu-max", opt.mu_max, "upper mu bracket (default 2)");

    CLI::App* sweep = app.add_subcommand("sweep", "figure datasets over (length, abort) grids");
    add_common(sweep);
    sweep->add_option("--figure", opt.figure, "figure id: 1, 2 or 3 (default 2)");
    sweep->add_option("--lengths", opt.lengths, "comma-separated channel lengths [km]");
    sweep->add_option("--h-min", opt.h_min, "smallest abort target (default 0.008)");
    sweep->add_option("--h-max", opt.h_max, "largest abort target (default 0.02)");
    sweep->add_option("--h-step", opt.h_step, "abort target step (default 0.001)");
    sweep->add_option("--k-max", opt.k_max, "largest pulse count to scan (default 15000)");

    CLI::App* verify = app.add_subcommand("verify", "run the discrimination oracles");
    add_common(verify);
    verify->add_option("--grid-step", opt.grid_step, "a-grid step for the measurement checks (default 0.01)");
    verify->add_option("--bound-step", opt.bound_step, "a-grid step for the bound check (default 0.02)");
    verify->add_option("--resolution", opt.resolution, "strategy search resolution (default 200)");

    CLI::App* reproduce = app.add_subcommand("reproduce", "full verification and figure pipeline");
    add_common(reproduce);
    reproduce->add_option("--out-dir", opt.out_dir, "output directory (default reproduce_out)");
    reproduce->add_option("--runs", opt.runs, "Monte Carlo runs per validation point (default 100000)");
    reproduce->add_option("--seed", opt.seed, "random seed (default 1)");
    reproduce->add_option("--threads", opt.threads, "worker threads (default 4)");
    reproduce->add_option("--k-max", opt.k_max, "largest pulse count to scan (default 15000)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (app.got_subcommand(analyze)) return run_analyze(opt);
        if (app.got_subcommand(simulate)) return run_simulate(opt);
        if (app.got_subcommand(optimize_cmd)) return run_optimize(opt);
        if (app.got_subcommand(sweep)) return run_sweep(opt);
        if (app.got_subcommand(verify)) return run_verify(opt);
        if (app.got_subcommand(reproduce)) return run_reproduce(opt);
    } catch (const TargetUnreachableError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUnreachable;
    } catch (const NoFairPointError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUnreachable;
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return kExitUsage;
}

}  // namespace qcf::cli
