#pragma once

#include <span>
#include <string>
#include <vector>

#include "ward/annealer.hpp"

namespace ward {

struct SeriesStats {
    std::vector<double> mean;
    std::vector<double> std;  // population
};

struct AggregatedHistory {
    SeriesStats current;
    SeriesStats best;
};

/// Per-iteration mean and spread across runs of equal length.
AggregatedHistory aggregate_histories(std::span<const RunHistory> histories);

std::string aggregated_csv(const AggregatedHistory& agg);

struct KsResult {
    double statistic = 0.0;  // sup |F_a - F_b|
    double p_value = 1.0;    // asymptotic
};

/// Two-sample Kolmogorov-Smirnov test with the asymptotic Kolmogorov distribution.
KsResult ks_two_sample(std::span<const double> a, std::span<const double> b);

/// Survival function of the Kolmogorov distribution, 2 * sum (-1)^(j-1) exp(-2 j^2 lambda^2).
double kolmogorov_q(double lambda);

/// One number per line; blank lines and lines starting with '#' are skipped.
std::vector<double> parse_samples(const std::string& text);

}  // namespace ward
