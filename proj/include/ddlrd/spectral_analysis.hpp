// Copyright 2026 The ddlrd Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef DDLRD_SPECTRAL_ANALYSIS_HPP
#define DDLRD_SPECTRAL_ANALYSIS_HPP

#include "ddlrd/arfima_model.hpp"

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace ddlrd {

/// DFT coefficients of one path at Fourier frequency x_j = 2 pi j / n.
///
/// a = (2 pi n)^{-1/2} sum_t x_t cos(x_j t), b likewise with sin, summed over
/// t = 0..n-1. The periodogram is i = a^2 + b^2 and the normalized fields
/// divide by the ARFIMA spectral density f(x_j).
struct DftRecord {
    std::int64_t j = 0;
    double x = 0.0;
    double a = 0.0;
    double b = 0.0;
    double i = 0.0;
    double f = 0.0;
    double a_norm = 0.0;
    double b_norm = 0.0;
    double i_norm = 0.0;
};

struct FrequencyGrid {
    std::int64_t n = 0;
    std::vector<std::int64_t> indices;
    std::vector<std::string> labels;  // "1", "n^0.2", "n/2-1", ...
};

struct DftOptions {
    bool mean_correct = false;
};

/// Largest admissible Fourier index, floor(n/2) - 1.
std::int64_t max_fourier_index(std::int64_t n);

/// floor(n^{m/5}) computed exactly in integer arithmetic.
std::int64_t floor_fifth_power(std::int64_t n, int m);

/// {1, 2, n^0.2, n^0.4, n^0.6, n^0.8, n/2-2, n/2-1} floored, deduplicated, sorted.
FrequencyGrid paper_grid(std::int64_t n);

/// Grid from a comma list of indices or labels ("paper", "none", "1,2,n^0.8,n/2-1").
FrequencyGrid parse_grid(std::int64_t n, const std::string& spec);

/// Direct summation at a single index with a re-synchronized trig recurrence.
DftRecord dft_at(std::span<const double> values,
                 std::int64_t j,
                 const ModelParams& params,
                 DftOptions options = {});

/// Records for j = 1 .. floor(n/2) - 1 from one real FFT.
std::vector<DftRecord> full_periodogram(std::span<const double> values,
                                        const ModelParams& params,
                                        DftOptions options = {});

/// Columns j, x_j, a_j, b_j, i_j, f_j, a_norm, b_norm, i_norm, log_i, log_2sin.
void write_sweep_csv(std::ostream& out, std::span<const DftRecord> records);

/// log|2 sin(x/2)|
double log_two_sin(double x);

}  // namespace ddlrd

#endif
