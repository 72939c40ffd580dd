// Copyright 2026 The ddlrd Authors
// SPDX-License-Identifier: Apache-2.0

#include "ddlrd/cli.hpp"

#include "ddlrd/generators.hpp"
#include "ddlrd/mc_harness.hpp"

#include "CLI11.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>

namespace ddlrd {

namespace {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Raw flag values; only those the user actually passed override the config.
struct Flags {
    std::string process;
    double d = 0.0;
    std::int64_t n = 0;
    std::int64_t reps = 0;
    std::uint64_t seed = 0;
    std::string out;
    int workers = 0;
    std::string grid;
    std::vector<std::int64_t> lags;
    std::int64_t gph_m = 0;
    std::int64_t gph_trim = 0;
    bool mean_correct = false;
    std::string ad_variant;
    std::string noise;
    std::string config_file;
    std::vector<double> s_grid;
    std::vector<double> x_grid;
    bool sweep = false;
};

struct Subcommand {
    CLI::App* app = nullptr;
    std::map<std::string, CLI::Option*> opts;

    bool given(const std::string& name) const
    {
        auto it = opts.find(name);
        return it != opts.end() && it->second->count() > 0;
    }
};

void add_common(Subcommand& sc, Flags& f, bool study)
{
    CLI::App* a = sc.app;
    sc.opts["process"] = a->add_option("--process", f.process, "taqqu-levy or parke");
    sc.opts["d"] = a->add_option("--d", f.d, "memory parameter in (0, 0.5)");
    sc.opts["n"] = a->add_option("--n", f.n, "path length (default 10000)");
    sc.opts["seed"] = a->add_option("--seed", f.seed, "master seed");
    sc.opts["out"] = a->add_option("--out", f.out, "output file or directory");
    sc.opts["noise"] = a->add_option("--noise", f.noise, "gaussian, t:<dof>, uniform, rademacher");
    sc.opts["config"] = a->add_option("--config", f.config_file, "JSON config; flags override it");
    if (!study) {
        return;
    }
    sc.opts["reps"] = a->add_option("--reps", f.reps, "replications (default 500)");
    sc.opts["workers"] = a->add_option("--workers", f.workers, "worker threads (env DDLRD_WORKERS)");
    sc.opts["grid"] = a->add_option("--grid", f.grid, "frequency grid: paper, none, or list");
    sc.opts["lags"] = a->add_option("--lags", f.lags, "ACF lags")->delimiter(',');
    sc.opts["gph-m"] = a->add_option("--gph-m", f.gph_m, "GPH bandwidth (default floor(sqrt n))");
    sc.opts["gph-trim"] = a->add_option("--gph-trim", f.gph_trim, "GPH low-frequency trim");
    sc.opts["mean-correct"] = a->add_flag("--mean-correct", f.mean_correct, "demean before the DFT");
    sc.opts["ad-variant"] = a->add_option("--ad-variant", f.ad_variant, "composite or simple");
}

StudyConfig build_config(const Subcommand& sc, const Flags& f, StudyConfig c)
{
    if (sc.given("config")) {
        std::ifstream in(f.config_file);
        if (!in) {
            throw ConfigError("cannot open config file " + f.config_file);
        }
        nlohmann::json j;
        try {
            in >> j;
        } catch (const nlohmann::json::exception& e) {
            throw ConfigError(std::string("config file is not valid JSON: ") + e.what());
        }
        merge_json(c, j);
    }
    c.workers = workers_from_env(c.workers);
    if (sc.given("process")) c.process = parse_process_kind(f.process);
    if (sc.given("d")) c.d = f.d;
    if (sc.given("n")) c.n = f.n;
    if (sc.given("reps")) c.replications = f.reps;
    if (sc.given("seed")) c.master_seed = f.seed;
    if (sc.given("out")) c.output_dir = f.out;
    if (sc.given("workers")) c.workers = f.workers;
    if (sc.given("grid")) c.grid = f.grid;
    if (sc.given("lags")) c.lags = f.lags;
    if (sc.given("gph-m")) c.gph_m = f.gph_m;
    if (sc.given("gph-trim")) c.gph_trim = f.gph_trim;
    if (sc.given("mean-correct")) c.mean_correct = f.mean_correct;
    if (sc.given("noise")) c.noise = f.noise;
    if (sc.given("ad-variant")) {
        if (f.ad_variant != "composite" && f.ad_variant != "simple") {
            throw ConfigError("--ad-variant must be composite or simple");
        }
        c.ad_variant = f.ad_variant == "composite" ? AdVariant::composite : AdVariant::simple;
    }
    if (sc.given("s")) c.partial_sum_grid = f.s_grid;
    if (sc.given("x")) c.ecdf_grid = f.x_grid;
    if (sc.given("sweep")) c.keep_sweep = f.sweep;
    try {
        c.validate();
    } catch (const std::exception& e) {
        throw ConfigError(e.what());
    }
    return c;
}

std::string fmt(double v, int digits = 4)
{
    std::ostringstream s;
    s << std::setprecision(digits) << v;
    return s.str();
}

void print_summary(const McStudy& study, const StudySummary& s, std::ostream& out)
{
    const StudyConfig& c = study.config;
    out << to_string(c.process) << " d=" << c.d << " n=" << c.n << " reps=" << c.replications
        << " kept=" << s.kept << " discarded=" << s.discard_total << '\n';
    for (const auto& w : study.warnings) {
        out << "warning: " << w << '\n';
    }
    for (const auto& f : s.frequencies) {
        out << "  j=" << std::setw(5) << f.j << " (" << f.label << ")  var(a_norm)=" << fmt(f.variance_a)
            << "  CI=[" << fmt(f.ci.lower) << ", " << fmt(f.ci.upper) << "]"
            << (f.ci.reject_half ? "*" : "") << "  AD p=" << fmt(f.ad_a.p_value, 3)
            << "  median I/f=" << fmt(f.median_i_norm) << '\n';
    }
    for (std::size_t i = 0; i < s.lags.size(); ++i) {
        const auto& l = s.lags[i];
        out << "  lag " << l.lag << "  gamma=" << fmt(l.true_gamma, 6)
            << "  mean gamma_hat=" << fmt(l.mean_gamma_hat, 6) << "  median dev=" << fmt(l.median_deviation)
            << "  AD p=" << fmt(l.ad_deviation.p_value, 3) << '\n';
    }
    for (std::size_t i = 0; i < s.lags.size(); ++i) {
        for (std::size_t k = i + 1; k < s.lags.size(); ++k) {
            out << "  corr(lag " << s.lags[i].lag << ", lag " << s.lags[k].lag
                << ")  pearson=" << fmt(s.pearson[i][k]) << "  spearman=" << fmt(s.spearman[i][k]) << '\n';
        }
    }
    if (c.compute_gph) {
        out << "  GPH m=" << s.gph_m << " trim=" << c.gph_trim << "  median d_hat=" << fmt(s.gph_median)
            << "  mean=" << fmt(s.gph_mean) << "  sd=" << fmt(s.gph_sd)
            << "  (untrimmed median " << fmt(s.gph_median_untrimmed) << ")\n";
    }
    if (!c.partial_sum_grid.empty()) {
        for (std::size_t p = 0; p < c.partial_sum_grid.size(); ++p) {
            const auto v = study.partial_sum(p);
            out << "  S(" << c.partial_sum_grid[p] << ")  median=" << fmt(median(v))
                << "  iqr=" << fmt(quantile(v, 0.75) - quantile(v, 0.25)) << '\n';
        }
    }
    if (!c.ecdf_grid.empty()) {
        for (std::size_t p = 0; p < c.ecdf_grid.size(); ++p) {
            const auto v = study.ecdf_deviation(p);
            out << "  ecdf dev at " << c.ecdf_grid[p] << " sigma_W  median=" << fmt(median(v))
                << "  iqr=" << fmt(quantile(v, 0.75) - quantile(v, 0.25)) << '\n';
        }
    }
}

int run_and_write(const StudyConfig& c, const std::string& default_dir)
{
    const McStudy study = run_study(c);
    const StudySummary summary = summarize(study);
    const std::string dir = c.output_dir.empty() ? default_dir : c.output_dir;
    write_study(study, summary, dir);
    print_summary(study, summary, std::cout);
    std::cout << "wrote " << dir << '\n';
    return exit_ok;
}

}  // namespace

int cli_main(int argc, char** argv)
{
    CLI::App app{"Simulation and verification lab for duration-driven long memory"};
    app.require_subcommand(1);
    Flags f;

    Subcommand simulate{app.add_subcommand("simulate", "emit one sample path as CSV"), {}};
    add_common(simulate, f, false);

    Subcommand dft{app.add_subcommand("dft-study", "normalized DFT coefficients on a frequency grid"), {}};
    add_common(dft, f, true);

    Subcommand acf{app.add_subcommand("acf-study", "standardized sample autocovariance deviations"), {}};
    add_common(acf, f, true);

    Subcommand gph_cmd{app.add_subcommand("gph", "log-periodogram regression across replications"), {}};
    add_common(gph_cmd, f, true);
    gph_cmd.opts["sweep"] = gph_cmd.app->add_flag("--sweep", f.sweep, "also average the full log periodogram");

    Subcommand psum{app.add_subcommand("partial-sums", "standardized partial sums S([ns])"), {}};
    add_common(psum, f, true);
    psum.opts["s"] = psum.app->add_option("--s", f.s_grid, "grid of s in [0,1]")->delimiter(',');

    Subcommand ecdf{app.add_subcommand("ecdf-study", "empirical distribution deviations (Taqqu-Levy)"), {}};
    add_common(ecdf, f, true);
    ecdf.opts["x"] = ecdf.app->add_option("--x", f.x_grid, "points in units of sigma_W")->delimiter(',');

    Subcommand tables{app.add_subcommand("reproduce-tables", "variance tables for both processes"), {}};
    tables.opts["reps"] = tables.app->add_option("--reps", f.reps, "replications (default 500)");
    tables.opts["seed"] = tables.app->add_option("--seed", f.seed, "master seed");
    tables.opts["n"] = tables.app->add_option("--n", f.n, "path length (default 10000)");
    tables.opts["workers"] = tables.app->add_option("--workers", f.workers, "worker threads");
    tables.opts["out"] = tables.app->add_option("--out", f.out, "output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n\n" << app.help();
        return exit_config_error;
    }

    try {
        if (simulate.app->parsed()) {
            StudyConfig base;
            base.n = 10000;
            const StudyConfig c = build_config(simulate, f, base);
            const ModelParams params = convert_params(c.d, c.process);
            const NoiseDist noise = NoiseDist::parse(c.noise);
            const std::uint64_t seed = replication_seed(c.master_seed, 0);
            const SamplePath path = c.process == ProcessKind::taqqu_levy
                                        ? generate_taqqu_levy(TaqquLevyModel(params, noise), c.n, seed)
                                        : generate_parke(ParkeModel(params, noise, c.j_truncation), c.n, seed);
            if (c.output_dir.empty() || c.output_dir == "-") {
                write_path_csv(std::cout, path, params);
            } else {
                std::ofstream out(c.output_dir);
                if (!out) {
                    throw ConfigError("cannot write " + c.output_dir);
                }
                write_path_csv(out, path, params);
            }
            return exit_ok;
        }
        if (dft.app->parsed()) {
            StudyConfig base;
            base.lags = {};
            base.compute_gph = false;
            return run_and_write(build_config(dft, f, base), "dft_study");
        }
        if (acf.app->parsed()) {
            StudyConfig base;
            base.grid = "none";
            base.compute_gph = false;
            return run_and_write(build_config(acf, f, base), "acf_study");
        }
        if (gph_cmd.app->parsed()) {
            StudyConfig base;
            base.grid = "none";
            base.lags = {};
            return run_and_write(build_config(gph_cmd, f, base), "gph_study");
        }
        if (psum.app->parsed()) {
            StudyConfig base;
            base.grid = "none";
            base.lags = {};
            base.compute_gph = false;
            base.partial_sum_grid = {0.25, 0.5, 0.75, 1.0};
            return run_and_write(build_config(psum, f, base), "partial_sums");
        }
        if (ecdf.app->parsed()) {
            StudyConfig base;
            base.grid = "none";
            base.lags = {};
            base.compute_gph = false;
            base.ecdf_grid = {-1.0, 0.0, 1.0};
            return run_and_write(build_config(ecdf, f, base), "ecdf_study");
        }
        if (tables.app->parsed()) {
            StudyConfig base;
            const StudyConfig c = build_config(tables, f, base);
            const std::string dir = c.output_dir.empty() ? "tables" : c.output_dir;
            const TableSet t = reproduce_tables(c.replications, c.master_seed, c.n, c.workers, dir);
            write_table_text(std::cout, "Taqqu-Levy", t.taqqu_levy);
            std::cout << '\n';
            write_table_text(std::cout, "Parke", t.parke);
            std::cout << "\nTaqqu-Levy d=0.4 discarded constant realizations: "
                      << t.discard_total_taqqu_levy_d04 << "\nwrote " << dir << '\n';
            return exit_ok;
        }
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return exit_config_error;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return exit_config_error;
    } catch (const std::domain_error& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return exit_config_error;
    } catch (const StudyFailure& e) {
        std::cerr << "study failed: " << e.what() << '\n';
        return exit_study_failure;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_study_failure;
    }
    return exit_config_error;
}

}  // namespace ddlrd
