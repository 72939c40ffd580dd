// Copyright 2026 The ddlrd Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef DDLRD_MC_HARNESS_HPP
#define DDLRD_MC_HARNESS_HPP

#include "ddlrd/arfima_model.hpp"
#include "ddlrd/limit_diagnostics.hpp"
#include "ddlrd/sample_statistics.hpp"
#include "ddlrd/spectral_analysis.hpp"

#include "json.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace ddlrd {

struct StudyConfig {
    ProcessKind process = ProcessKind::taqqu_levy;
    double d = 0.1;
    std::int64_t n = 10000;
    std::int64_t replications = 500;
    std::uint64_t master_seed = 1;
    std::string grid = "paper";
    std::vector<std::int64_t> lags = {0, 1, 5};
    std::string output_dir;
    bool mean_correct = false;
    AdVariant ad_variant = AdVariant::composite;
    std::int64_t gph_m = 0;  // 0 selects floor(sqrt(n))
    std::int64_t gph_trim = 0;
    bool compute_gph = true;
    bool keep_sweep = false;  // keep log periodogram at every j for averaging
    std::vector<double> partial_sum_grid;  // empty: only s = 1
    std::vector<double> ecdf_grid;         // in units of sigma_W; Taqqu-Levy only
    std::string noise = "gaussian";
    std::int64_t j_truncation = default_j_truncation;
    int workers = 1;

    /// Throws std::invalid_argument on any out-of-range field.
    void validate() const;
};

nlohmann::json to_json(const StudyConfig& config);
/// Fields missing from `j` keep the values already in `config`.
void merge_json(StudyConfig& config, const nlohmann::json& j);

struct ReplicationResult {
    std::vector<DftRecord> dft;          // one per grid index
    std::vector<double> gamma_hat;       // one per lag
    std::vector<double> acf_deviation;   // standardized, one per lag
    std::vector<double> partial_sums;    // standardized, one per partial_sum_grid point
    std::vector<double> ecdf_deviation;  // one per ecdf_grid point
    std::vector<double> sweep_log_i;     // log I_j for j = 1..n/2-1 when keep_sweep
    double gph_d = 0.0;
    double gph_d_untrimmed = 0.0;
    std::int64_t discards = 0;
    std::int64_t j = 0;
    std::int64_t live_high_water = 0;
    bool failed = false;
    std::string error;
};

struct McStudy {
    StudyConfig config;
    ModelParams params;
    FrequencyGrid grid;
    NormalizingSeq norm;
    std::vector<ReplicationResult> replications;
    std::int64_t discard_total = 0;
    std::int64_t failures = 0;
    std::vector<std::string> warnings;

    /// Values of one statistic across successful replications, in order.
    std::vector<double> a_norm(std::size_t grid_pos) const;
    std::vector<double> b_norm(std::size_t grid_pos) const;
    std::vector<double> i_norm(std::size_t grid_pos) const;
    std::vector<double> gamma_hat(std::size_t lag_pos) const;
    std::vector<double> acf_deviation(std::size_t lag_pos) const;
    std::vector<double> partial_sum(std::size_t grid_pos) const;
    std::vector<double> ecdf_deviation(std::size_t grid_pos) const;
    std::vector<double> gph_d() const;
    std::vector<double> gph_d_untrimmed() const;
};

struct FrequencySummary {
    std::int64_t j = 0;
    std::string label;
    double variance_a = 0.0;
    VarianceCi ci;  // chi-square interval for the variance of a_norm
    AdResult ad_a;
    AdResult ad_b;
    double median_i_norm = 0.0;
    double mean_log_i_norm = 0.0;
};

struct LagSummary {
    std::int64_t lag = 0;
    double true_gamma = 0.0;
    double mean_gamma_hat = 0.0;
    double se_gamma_hat = 0.0;
    double median_deviation = 0.0;
    double iqr_deviation = 0.0;
    AdResult ad_deviation;
};

struct StudySummary {
    std::vector<FrequencySummary> frequencies;
    std::vector<LagSummary> lags;
    std::vector<std::vector<double>> pearson;
    std::vector<std::vector<double>> spearman;
    double gph_median = 0.0;
    double gph_mean = 0.0;
    double gph_sd = 0.0;
    double gph_median_untrimmed = 0.0;
    std::int64_t gph_m = 0;
    std::int64_t kept = 0;
    std::int64_t discard_total = 0;
    bool degenerate = false;  // fewer than 2 replications, dispersion summaries are NaN
};

/// Raised when more than 1% of replications fail.
class StudyFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Per-replication seed: pure function of (master_seed, replication).
std::uint64_t replication_seed(std::uint64_t master_seed, std::int64_t replication);

/// Run one replication in isolation (what a worker does for index r).
ReplicationResult run_replication(const StudyConfig& config, std::int64_t replication);

McStudy run_study(const StudyConfig& config);

/// Recounts failures and discards; throws StudyFailure above 1% failures.
void enforce_failure_budget(McStudy& study);
StudySummary summarize(const McStudy& study);

/// Writes config.json, cells/, summaries/ and MANIFEST under `dir`.
void write_study(const McStudy& study, const StudySummary& summary, const std::filesystem::path& dir);

struct TableRow {
    double d = 0.0;
    std::string label;
    std::int64_t j = 0;
    VarianceCi ci;
};

struct TableSet {
    std::vector<TableRow> taqqu_levy;
    std::vector<TableRow> parke;
    std::int64_t discard_total_taqqu_levy_d04 = 0;
};

/// The six table frequencies n^0.2 .. n/2-1 for d in {0.1, 0.4}, both processes.
TableSet reproduce_tables(std::int64_t replications,
                          std::uint64_t master_seed,
                          std::int64_t n = 10000,
                          int workers = 1,
                          const std::filesystem::path& out_dir = {});

void write_table_csv(std::ostream& out, const std::vector<TableRow>& rows);
void write_table_text(std::ostream& out, const std::string& title, const std::vector<TableRow>& rows);

/// Worker count from the DDLRD_WORKERS environment variable, or `fallback`.
int workers_from_env(int fallback);

}  // namespace ddlrd

#endif
