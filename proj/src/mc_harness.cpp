// Copyright 2026 The ddlrd Authors
// SPDX-License-Identifier: Apache-2.0

#include "ddlrd/mc_harness.hpp"

#include "ddlrd/generators.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <limits>
#include <optional>
#include <sstream>
#include <thread>

namespace ddlrd {

namespace fs = std::filesystem;

void StudyConfig::validate() const
{
    validate_memory(d);
    if (n < 16) {
        throw std::invalid_argument("study length n must be at least 16");
    }
    if (replications < 1) {
        throw std::invalid_argument("replications must be at least 1");
    }
    if (workers < 1) {
        throw std::invalid_argument("workers must be at least 1");
    }
    for (std::int64_t k : lags) {
        if (k < 0 || k >= n) {
            throw std::invalid_argument("lag out of range: " + std::to_string(k));
        }
    }
    for (double s : partial_sum_grid) {
        if (!(s >= 0.0 && s <= 1.0)) {
            throw std::invalid_argument("partial sum grid values must lie in [0, 1]");
        }
    }
    if (!ecdf_grid.empty() && process != ProcessKind::taqqu_levy) {
        throw std::invalid_argument("ecdf study is defined for the Taqqu-Levy process only");
    }
    if (compute_gph) {
        const std::int64_t m = gph_m == 0 ? default_gph_bandwidth(n) : gph_m;
        if (gph_trim < 0 || m - gph_trim < 3 || m > max_fourier_index(n)) {
            throw std::invalid_argument("GPH bandwidth/trim out of range");
        }
    }
    if (j_truncation < 1) {
        throw std::invalid_argument("J truncation must be at least 1");
    }
    (void)parse_grid(n, grid);
    (void)NoiseDist::parse(noise);
}

nlohmann::json to_json(const StudyConfig& c)
{
    return nlohmann::json{
        {"process", std::string(to_string(c.process))},
        {"d", c.d},
        {"n", c.n},
        {"reps", c.replications},
        {"seed", c.master_seed},
        {"grid", c.grid},
        {"lags", c.lags},
        {"mean_correct", c.mean_correct},
        {"ad_variant", c.ad_variant == AdVariant::composite ? "composite" : "simple"},
        {"gph", c.compute_gph},
        {"gph_m", c.gph_m},
        {"gph_trim", c.gph_trim},
        {"keep_sweep", c.keep_sweep},
        {"partial_sum_grid", c.partial_sum_grid},
        {"ecdf_grid", c.ecdf_grid},
        {"noise", c.noise},
        {"j_truncation", c.j_truncation},
    };
}

void merge_json(StudyConfig& c, const nlohmann::json& j)
{
    if (!j.is_object()) {
        throw std::invalid_argument("study config must be a JSON object");
    }
    static const std::vector<std::string> known = {
        "process", "d", "n", "reps", "seed", "grid", "lags", "mean_correct", "ad_variant", "gph",
        "gph_m", "gph_trim", "keep_sweep", "partial_sum_grid", "ecdf_grid", "noise",
        "j_truncation", "workers", "out"};
    for (const auto& item : j.items()) {
        if (std::find(known.begin(), known.end(), item.key()) == known.end()) {
            throw std::invalid_argument("unknown config key: " + item.key());
        }
    }
    try {
        if (j.contains("process")) c.process = parse_process_kind(j.at("process").get<std::string>());
        if (j.contains("d")) c.d = j.at("d").get<double>();
        if (j.contains("n")) c.n = j.at("n").get<std::int64_t>();
        if (j.contains("reps")) c.replications = j.at("reps").get<std::int64_t>();
        if (j.contains("seed")) c.master_seed = j.at("seed").get<std::uint64_t>();
        if (j.contains("grid")) c.grid = j.at("grid").get<std::string>();
        if (j.contains("lags")) c.lags = j.at("lags").get<std::vector<std::int64_t>>();
        if (j.contains("mean_correct")) c.mean_correct = j.at("mean_correct").get<bool>();
        if (j.contains("ad_variant")) {
            const auto v = j.at("ad_variant").get<std::string>();
            if (v != "composite" && v != "simple") {
                throw std::invalid_argument("ad_variant must be composite or simple");
            }
            c.ad_variant = v == "composite" ? AdVariant::composite : AdVariant::simple;
        }
        if (j.contains("gph")) c.compute_gph = j.at("gph").get<bool>();
        if (j.contains("gph_m")) c.gph_m = j.at("gph_m").get<std::int64_t>();
        if (j.contains("gph_trim")) c.gph_trim = j.at("gph_trim").get<std::int64_t>();
        if (j.contains("keep_sweep")) c.keep_sweep = j.at("keep_sweep").get<bool>();
        if (j.contains("partial_sum_grid")) c.partial_sum_grid = j.at("partial_sum_grid").get<std::vector<double>>();
        if (j.contains("ecdf_grid")) c.ecdf_grid = j.at("ecdf_grid").get<std::vector<double>>();
        if (j.contains("noise")) c.noise = j.at("noise").get<std::string>();
        if (j.contains("j_truncation")) c.j_truncation = j.at("j_truncation").get<std::int64_t>();
        if (j.contains("workers")) c.workers = j.at("workers").get<int>();
        if (j.contains("out")) c.output_dir = j.at("out").get<std::string>();
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("bad config value: ") + e.what());
    }
}

std::uint64_t replication_seed(std::uint64_t master_seed, std::int64_t replication)
{
    return substream_seed(master_seed, static_cast<std::uint64_t>(replication), StreamRole::path);
}

int workers_from_env(int fallback)
{
    if (const char* env = std::getenv("DDLRD_WORKERS"); env != nullptr && *env != '\0') {
        try {
            const int w = std::stoi(env);
            if (w >= 1) {
                return w;
            }
        } catch (const std::exception&) {
        }
    }
    return fallback;
}

namespace {

// Everything a worker needs, built once per study and shared read-only.
struct StudyContext {
    StudyConfig config;
    ModelParams params;
    NoiseDist noise;
    FrequencyGrid grid;
    AcvSequence acv;
    NormalizingSeq norm;
    std::optional<TaqquLevyModel> taqqu_levy;
    std::optional<ParkeModel> parke;
    std::int64_t gph_m = 0;

    explicit StudyContext(const StudyConfig& c)
        : config(c),
          params(convert_params(c.d, c.process)),
          noise(NoiseDist::parse(c.noise)),
          grid(parse_grid(c.n, c.grid)),
          acv(params, std::max<std::int64_t>(
                          c.lags.empty() ? 0 : *std::max_element(c.lags.begin(), c.lags.end()), 1)),
          norm(normalizer(params, c.n, duration_curve(params))),
          gph_m(c.gph_m == 0 ? default_gph_bandwidth(c.n) : c.gph_m)
    {
        if (c.process == ProcessKind::taqqu_levy) {
            taqqu_levy.emplace(params, noise);
        } else {
            parke.emplace(params, noise, c.j_truncation);
        }
    }
};

ReplicationResult replicate(const StudyContext& ctx, std::int64_t r)
{
    const StudyConfig& c = ctx.config;
    ReplicationResult out;
    try {
        const std::uint64_t seed = replication_seed(c.master_seed, r);
        const SamplePath path = c.process == ProcessKind::taqqu_levy
                                    ? generate_taqqu_levy(*ctx.taqqu_levy, c.n, seed)
                                    : generate_parke(*ctx.parke, c.n, seed);
        out.discards = path.meta.discard_count;
        out.j = path.meta.j;
        out.live_high_water = path.meta.live_high_water;

        const DftOptions opts{c.mean_correct};
        for (std::int64_t j : ctx.grid.indices) {
            out.dft.push_back(dft_at(path.values, j, ctx.params, opts));
        }
        if (!c.lags.empty()) {
            const AcfEstimate acf = sample_acf_at(path.values, c.lags);
            out.gamma_hat = acf.gamma_hat;
            out.acf_deviation = standardized_acf_deviation(acf, ctx.acv, ctx.norm);
        }
        {
            std::vector<double> grid = c.partial_sum_grid;
            if (grid.empty()) {
                grid.push_back(1.0);
            }
            out.partial_sums = partial_sum_path(path.values, grid, ctx.norm);
        }
        if (!c.ecdf_grid.empty()) {
            std::vector<double> xs;
            const double sigma_w = std::sqrt(ctx.params.sigma_w_sq);
            for (double z : c.ecdf_grid) {
                xs.push_back(z * sigma_w);
            }
            out.ecdf_deviation = ecdf_deviation(path, xs, ctx.params.sigma_w_sq, ctx.norm);
        }
        if (c.compute_gph || c.keep_sweep) {
            const auto sweep = full_periodogram(path.values, ctx.params, opts);
            if (c.compute_gph) {
                out.gph_d = gph(sweep, ctx.gph_m, c.gph_trim).d_hat;
                out.gph_d_untrimmed = gph(sweep, ctx.gph_m, 0).d_hat;
            }
            if (c.keep_sweep) {
                out.sweep_log_i.reserve(sweep.size());
                for (const auto& rec : sweep) {
                    out.sweep_log_i.push_back(std::log(rec.i));
                }
            }
        }
    } catch (const std::exception& e) {
        out = ReplicationResult{};
        out.failed = true;
        out.error = e.what();
    }
    return out;
}

template <class F>
std::vector<double> collect(const McStudy& s, F&& f)
{
    std::vector<double> v;
    v.reserve(s.replications.size());
    for (const auto& r : s.replications) {
        if (!r.failed) {
            v.push_back(f(r));
        }
    }
    return v;
}

}  // namespace

std::vector<double> McStudy::a_norm(std::size_t p) const
{
    return collect(*this, [p](const ReplicationResult& r) { return r.dft.at(p).a_norm; });
}
std::vector<double> McStudy::b_norm(std::size_t p) const
{
    return collect(*this, [p](const ReplicationResult& r) { return r.dft.at(p).b_norm; });
}
std::vector<double> McStudy::i_norm(std::size_t p) const
{
    return collect(*this, [p](const ReplicationResult& r) { return r.dft.at(p).i_norm; });
}
std::vector<double> McStudy::gamma_hat(std::size_t p) const
{
    return collect(*this, [p](const ReplicationResult& r) { return r.gamma_hat.at(p); });
}
std::vector<double> McStudy::acf_deviation(std::size_t p) const
{
    return collect(*this, [p](const ReplicationResult& r) { return r.acf_deviation.at(p); });
}
std::vector<double> McStudy::partial_sum(std::size_t p) const
{
    return collect(*this, [p](const ReplicationResult& r) { return r.partial_sums.at(p); });
}
std::vector<double> McStudy::ecdf_deviation(std::size_t p) const
{
    return collect(*this, [p](const ReplicationResult& r) { return r.ecdf_deviation.at(p); });
}
std::vector<double> McStudy::gph_d() const
{
    return collect(*this, [](const ReplicationResult& r) { return r.gph_d; });
}
std::vector<double> McStudy::gph_d_untrimmed() const
{
    return collect(*this, [](const ReplicationResult& r) { return r.gph_d_untrimmed; });
}

ReplicationResult run_replication(const StudyConfig& config, std::int64_t replication)
{
    config.validate();
    return replicate(StudyContext(config), replication);
}

void enforce_failure_budget(McStudy& study)
{
    study.discard_total = 0;
    study.failures = 0;
    for (const auto& r : study.replications) {
        study.discard_total += r.discards;
        study.failures += r.failed ? 1 : 0;
    }
    const auto total = static_cast<std::int64_t>(study.replications.size());
    if (study.failures * 100 > total) {
        std::string first;
        for (const auto& r : study.replications) {
            if (r.failed) {
                first = r.error;
                break;
            }
        }
        throw StudyFailure(std::to_string(study.failures) + " of " + std::to_string(total) +
                           " replications failed; first error: " + first);
    }
}

McStudy run_study(const StudyConfig& config)
{
    config.validate();
    const StudyContext ctx(config);

    McStudy study;
    study.config = config;
    study.params = ctx.params;
    study.grid = ctx.grid;
    study.norm = ctx.norm;
    study.replications.resize(static_cast<std::size_t>(config.replications));

    const double q = 2.0 * ctx.params.alpha + 1e-9;
    if (!ctx.noise.has_moment(q)) {
        study.warnings.push_back("noise '" + ctx.noise.describe() +
                                 "' has no finite moment of order > 2 alpha; the sample ACF limit "
                                 "theory does not apply");
    }

    std::atomic<std::int64_t> next{0};
    auto work = [&]() {
        for (;;) {
            const std::int64_t r = next.fetch_add(1);
            if (r >= config.replications) {
                return;
            }
            study.replications[static_cast<std::size_t>(r)] = replicate(ctx, r);
        }
    };
    const int workers =
        static_cast<int>(std::min<std::int64_t>(config.workers, config.replications));
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (int w = 0; w < workers; ++w) {
            pool.emplace_back(work);
        }
    }

    enforce_failure_budget(study);
    return study;
}

StudySummary summarize(const McStudy& study)
{
    const StudyConfig& c = study.config;
    StudySummary s;
    s.discard_total = study.discard_total;
    s.kept = static_cast<std::int64_t>(study.replications.size()) - study.failures;
    s.degenerate = s.kept < 2;
    const double nan = std::numeric_limits<double>::quiet_NaN();

    auto ad_or_nan = [&](const std::vector<double>& x) {
        AdResult r;
        r.n = x.size();
        r.statistic = r.modified = r.p_value = nan;
        if (x.size() >= 8) {
            try {
                return anderson_darling(x, c.ad_variant, 0.0, 0.5);
            } catch (const std::exception&) {
            }
        }
        return r;
    };

    for (std::size_t p = 0; p < study.grid.indices.size(); ++p) {
        FrequencySummary f;
        f.j = study.grid.indices[p];
        f.label = study.grid.labels[p];
        const auto a = study.a_norm(p);
        const auto inorm = study.i_norm(p);
        f.variance_a = sample_variance(a);
        f.ci.s2 = f.variance_a;
        f.ci.n = a.size();
        f.ci.lower = f.ci.upper = nan;
        if (!s.degenerate && f.variance_a > 0.0) {
            f.ci = variance_ci(f.variance_a, a.size());
        }
        f.ad_a = ad_or_nan(a);
        f.ad_b = ad_or_nan(study.b_norm(p));
        f.median_i_norm = median(inorm);
        double acc = 0.0;
        for (double v : inorm) {
            acc += std::log(v);
        }
        f.mean_log_i_norm = inorm.empty() ? nan : acc / static_cast<double>(inorm.size());
        s.frequencies.push_back(f);
    }

    const AcvSequence acv(study.params, 1);
    std::vector<std::vector<double>> devs;
    for (std::size_t p = 0; p < c.lags.size(); ++p) {
        LagSummary l;
        l.lag = c.lags[p];
        l.true_gamma = acv(l.lag);
        const auto g = study.gamma_hat(p);
        l.mean_gamma_hat = sample_mean(g);
        l.se_gamma_hat = std::sqrt(sample_variance(g) / static_cast<double>(g.size()));
        auto dv = study.acf_deviation(p);
        l.median_deviation = median(dv);
        l.iqr_deviation = quantile(dv, 0.75) - quantile(dv, 0.25);
        l.ad_deviation = ad_or_nan(dv);
        if (c.ad_variant == AdVariant::simple && dv.size() >= 8) {
            // the simple null only makes sense for the DFT coefficients
            try {
                l.ad_deviation = anderson_darling(dv);
            } catch (const std::exception&) {
            }
        }
        s.lags.push_back(l);
        devs.push_back(std::move(dv));
    }
    const std::size_t q = devs.size();
    s.pearson.assign(q, std::vector<double>(q, 1.0));
    s.spearman.assign(q, std::vector<double>(q, 1.0));
    for (std::size_t i = 0; i < q; ++i) {
        for (std::size_t k = i + 1; k < q; ++k) {
            s.pearson[i][k] = s.pearson[k][i] = pearson_correlation(devs[i], devs[k]);
            s.spearman[i][k] = s.spearman[k][i] = spearman_correlation(devs[i], devs[k]);
        }
    }

    s.gph_m = c.gph_m == 0 ? default_gph_bandwidth(c.n) : c.gph_m;
    if (c.compute_gph) {
        const auto g = study.gph_d();
        s.gph_median = median(g);
        s.gph_mean = sample_mean(g);
        s.gph_sd = std::sqrt(sample_variance(g));
        s.gph_median_untrimmed = median(study.gph_d_untrimmed());
    } else {
        s.gph_median = s.gph_mean = s.gph_sd = s.gph_median_untrimmed = nan;
    }
    return s;
}

namespace {

std::uint64_t fnv1a(const std::string& bytes)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : bytes) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    return h;
}

class OutputDir {
public:
    explicit OutputDir(fs::path root) : root_(std::move(root)) { fs::create_directories(root_); }

    void write(const std::string& rel, const std::string& content)
    {
        const fs::path p = root_ / rel;
        fs::create_directories(p.parent_path());
        std::ofstream f(p, std::ios::binary);
        if (!f) {
            throw std::runtime_error("cannot write " + p.string());
        }
        f << content;
        std::ostringstream line;
        line << rel << ' ' << content.size() << ' ' << std::hex << std::setw(16)
             << std::setfill('0') << fnv1a(content) << '\n';
        manifest_ += line.str();
    }

    void finish() { write_raw("MANIFEST", manifest_); }

private:
    void write_raw(const std::string& rel, const std::string& content)
    {
        std::ofstream f(root_ / rel, std::ios::binary);
        f << content;
    }

    fs::path root_;
    std::string manifest_;
};

std::ostringstream csv_stream()
{
    std::ostringstream s;
    s << std::setprecision(17);
    return s;
}

nlohmann::json ad_json(const std::string& name, const AdResult& r)
{
    const bool ok = std::isfinite(r.p_value);
    return {{"test", name},
            {"statistic", ok ? nlohmann::json(r.modified) : nlohmann::json(nullptr)},
            {"p_value", ok ? nlohmann::json(r.p_value) : nlohmann::json(nullptr)},
            {"reject", ok && r.p_value < 0.05}};
}

}  // namespace

void write_study(const McStudy& study, const StudySummary& summary, const fs::path& dir)
{
    const StudyConfig& c = study.config;
    OutputDir out(dir);
    out.write("config.json", to_json(c).dump(2) + "\n");

    {
        auto s = csv_stream();
        s << "rep,j,label,a,b,i,f,a_norm,b_norm,i_norm\n";
        for (std::size_t r = 0; r < study.replications.size(); ++r) {
            const auto& rep = study.replications[r];
            for (std::size_t p = 0; p < rep.dft.size(); ++p) {
                const auto& d = rep.dft[p];
                s << r << ',' << d.j << ',' << study.grid.labels[p] << ',' << d.a << ',' << d.b
                  << ',' << d.i << ',' << d.f << ',' << d.a_norm << ',' << d.b_norm << ','
                  << d.i_norm << '\n';
            }
        }
        out.write("cells/dft.csv", s.str());
    }
    {
        auto s = csv_stream();
        s << "rep,lag,gamma_hat,value\n";
        for (std::size_t r = 0; r < study.replications.size(); ++r) {
            const auto& rep = study.replications[r];
            for (std::size_t p = 0; p < rep.acf_deviation.size(); ++p) {
                s << r << ',' << c.lags[p] << ',' << rep.gamma_hat[p] << ','
                  << rep.acf_deviation[p] << '\n';
            }
        }
        out.write("cells/acf_deviation.csv", s.str());
    }
    {
        std::vector<double> grid = c.partial_sum_grid;
        if (grid.empty()) {
            grid.push_back(1.0);
        }
        auto s = csv_stream();
        s << "rep,s,value\n";
        for (std::size_t r = 0; r < study.replications.size(); ++r) {
            const auto& rep = study.replications[r];
            for (std::size_t p = 0; p < rep.partial_sums.size(); ++p) {
                s << r << ',' << grid[p] << ',' << rep.partial_sums[p] << '\n';
            }
        }
        out.write("cells/partial_sums.csv", s.str());
    }
    if (!c.ecdf_grid.empty()) {
        auto s = csv_stream();
        s << "rep,x_over_sigma_w,value\n";
        for (std::size_t r = 0; r < study.replications.size(); ++r) {
            const auto& rep = study.replications[r];
            for (std::size_t p = 0; p < rep.ecdf_deviation.size(); ++p) {
                s << r << ',' << c.ecdf_grid[p] << ',' << rep.ecdf_deviation[p] << '\n';
            }
        }
        out.write("cells/ecdf_deviation.csv", s.str());
    }
    if (c.compute_gph) {
        auto s = csv_stream();
        s << "rep,d_hat,d_hat_untrimmed\n";
        for (std::size_t r = 0; r < study.replications.size(); ++r) {
            const auto& rep = study.replications[r];
            if (!rep.failed) {
                s << r << ',' << rep.gph_d << ',' << rep.gph_d_untrimmed << '\n';
            }
        }
        out.write("cells/gph.csv", s.str());
    }
    if (c.keep_sweep) {
        // Average log periodogram and log normalized periodogram per frequency.
        const std::int64_t top = max_fourier_index(c.n);
        std::vector<double> acc(static_cast<std::size_t>(top), 0.0);
        std::int64_t used = 0;
        for (const auto& rep : study.replications) {
            if (rep.failed) {
                continue;
            }
            ++used;
            for (std::size_t k = 0; k < acc.size(); ++k) {
                acc[k] += rep.sweep_log_i[k];
            }
        }
        auto s = csv_stream();
        s << "j,x_j,log_2sin,mean_log_i,mean_log_i_norm\n";
        for (std::int64_t j = 1; j <= top; ++j) {
            const double x = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(c.n);
            const double m = acc[static_cast<std::size_t>(j - 1)] / static_cast<double>(used);
            s << j << ',' << x << ',' << log_two_sin(x) << ',' << m << ','
              << m - std::log(spectral_density(study.params, x)) << '\n';
        }
        out.write("summaries/log_periodogram.csv", s.str());
    }
    for (std::size_t p = 0; p < study.grid.indices.size() && summary.kept >= 2; ++p) {
        auto s = csv_stream();
        s << "theoretical,a_norm\n";
        for (const auto& [th, v] : qq_data(study.a_norm(p))) {
            s << th << ',' << v << '\n';
        }
        out.write("cells/qq_j" + std::to_string(study.grid.indices[p]) + ".csv", s.str());
    }

    {
        auto s = csv_stream();
        s << "j,label,variance,ci_low,ci_high,reject_half,ad_a2,ad_p,ad_b_p,median_i_norm,mean_log_i_norm\n";
        for (const auto& f : summary.frequencies) {
            s << f.j << ',' << f.label << ',' << f.variance_a << ',' << f.ci.lower << ','
              << f.ci.upper << ',' << (f.ci.reject_half ? 1 : 0) << ',' << f.ad_a.modified << ','
              << f.ad_a.p_value << ',' << f.ad_b.p_value << ',' << f.median_i_norm << ','
              << f.mean_log_i_norm << '\n';
        }
        out.write("summaries/frequencies.csv", s.str());
    }
    {
        auto s = csv_stream();
        s << "lag,true_gamma,mean_gamma_hat,se_gamma_hat,median_deviation,iqr_deviation,ad_p\n";
        for (const auto& l : summary.lags) {
            s << l.lag << ',' << l.true_gamma << ',' << l.mean_gamma_hat << ',' << l.se_gamma_hat
              << ',' << l.median_deviation << ',' << l.iqr_deviation << ','
              << l.ad_deviation.p_value << '\n';
        }
        s << "\nlag_i,lag_k,pearson,spearman\n";
        for (std::size_t i = 0; i < summary.lags.size(); ++i) {
            for (std::size_t k = i + 1; k < summary.lags.size(); ++k) {
                s << summary.lags[i].lag << ',' << summary.lags[k].lag << ','
                  << summary.pearson[i][k] << ',' << summary.spearman[i][k] << '\n';
            }
        }
        out.write("summaries/lags.csv", s.str());
    }
    {
        nlohmann::json tests = nlohmann::json::array();
        for (const auto& f : summary.frequencies) {
            tests.push_back(ad_json("anderson_darling_a_norm_j" + std::to_string(f.j), f.ad_a));
            tests.push_back(ad_json("anderson_darling_b_norm_j" + std::to_string(f.j), f.ad_b));
            if (std::isfinite(f.ci.lower)) {
                tests.push_back({{"test", "variance_half_j" + std::to_string(f.j)},
                                 {"statistic", f.variance_a},
                                 {"p_value", nullptr},
                                 {"reject", f.ci.reject_half}});
            }
        }
        for (const auto& l : summary.lags) {
            tests.push_back(ad_json("anderson_darling_acf_deviation_lag" + std::to_string(l.lag),
                                    l.ad_deviation));
        }
        nlohmann::json doc = {
            {"process", std::string(to_string(c.process))},
            {"d", c.d},
            {"n", c.n},
            {"replications", c.replications},
            {"kept", summary.kept},
            {"failures", study.failures},
            {"discard_total", summary.discard_total},
            {"ell_n", study.norm.ell_n},
            {"duration_quantile", study.norm.quantile},
            {"warnings", study.warnings},
            {"tests", tests},
        };
        if (c.compute_gph) {
            doc["gph"] = {{"m", summary.gph_m},
                          {"trim", c.gph_trim},
                          {"median", summary.gph_median},
                          {"mean", summary.gph_mean},
                          {"sd", summary.gph_sd},
                          {"median_untrimmed", summary.gph_median_untrimmed}};
        }
        out.write("summaries/summary.json", doc.dump(2) + "\n");
    }
    out.finish();
}

void write_table_csv(std::ostream& out, const std::vector<TableRow>& rows)
{
    out << "d,frequency,j,variance,ci_low,ci_high,reject\n" << std::setprecision(17);
    for (const auto& r : rows) {
        out << r.d << ',' << r.label << ',' << r.j << ',' << r.ci.s2 << ',' << r.ci.lower << ','
            << r.ci.upper << ',' << (r.ci.reject_half ? 1 : 0) << '\n';
    }
}

void write_table_text(std::ostream& out, const std::string& title, const std::vector<TableRow>& rows)
{
    out << title << '\n' << "  d    x_j     Variance  Confidence Interval\n" << std::fixed
        << std::setprecision(2);
    for (const auto& r : rows) {
        out << "  " << std::setprecision(1) << r.d << "  " << std::left << std::setw(7) << r.label
            << std::right << std::setprecision(2) << "  " << r.ci.s2 << "      " << r.ci.lower
            << "  " << r.ci.upper << (r.ci.reject_half ? "*" : "") << '\n';
    }
    out << std::defaultfloat;
}

TableSet reproduce_tables(std::int64_t replications,
                          std::uint64_t master_seed,
                          std::int64_t n,
                          int workers,
                          const fs::path& out_dir)
{
    TableSet tables;
    const std::vector<std::string> labels = {"n^0.2", "n^0.4", "n^0.6", "n^0.8", "n/2-2", "n/2-1"};
    std::string grid;
    for (const auto& l : labels) {
        grid += (grid.empty() ? "" : ",") + l;
    }
    std::uint64_t study_index = 0;
    for (ProcessKind kind : {ProcessKind::taqqu_levy, ProcessKind::parke}) {
        for (double d : {0.1, 0.4}) {
            StudyConfig c;
            c.process = kind;
            c.d = d;
            c.n = n;
            c.replications = replications;
            c.master_seed = substream_seed(master_seed, study_index++, StreamRole::user);
            c.grid = grid;
            c.lags = {};
            c.compute_gph = false;
            c.workers = workers;
            const McStudy study = run_study(c);
            const StudySummary summary = summarize(study);
            auto& rows = kind == ProcessKind::taqqu_levy ? tables.taqqu_levy : tables.parke;
            for (const auto& f : summary.frequencies) {
                rows.push_back({d, f.label, f.j, f.ci});
            }
            if (kind == ProcessKind::taqqu_levy && d == 0.4) {
                tables.discard_total_taqqu_levy_d04 = study.discard_total;
            }
        }
    }
    if (!out_dir.empty()) {
        fs::create_directories(out_dir);
        {
            std::ofstream f(out_dir / "table1_taqqu_levy.csv");
            write_table_csv(f, tables.taqqu_levy);
        }
        {
            std::ofstream f(out_dir / "table2_parke.csv");
            write_table_csv(f, tables.parke);
        }
        std::ofstream f(out_dir / "tables.txt");
        write_table_text(f, "Taqqu-Levy: normalized DFT cosine coefficient variances", tables.taqqu_levy);
        f << '\n';
        write_table_text(f, "Parke: normalized DFT cosine coefficient variances", tables.parke);
        f << "\nTaqqu-Levy d=0.4 discarded constant realizations: "
          << tables.discard_total_taqqu_levy_d04 << '\n';
    }
    return tables;
}

}  // namespace ddlrd
