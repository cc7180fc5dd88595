#include "ward/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace ward {

namespace {

SeriesStats column_stats(std::span<const std::vector<double>> series) {
    SeriesStats s;
    const std::size_t len = series.front().size();
    const double n = static_cast<double>(series.size());
    s.mean.resize(len);
    s.std.resize(len);
    for (std::size_t i = 0; i < len; ++i) {
        double sum = 0.0;
        for (const auto& run : series) sum += run[i];
        const double mean = sum / n;
        double sq = 0.0;
        for (const auto& run : series) sq += (run[i] - mean) * (run[i] - mean);
        s.mean[i] = mean;
        s.std[i] = std::sqrt(sq / n);
    }
    return s;
}

}  // namespace

AggregatedHistory aggregate_histories(std::span<const RunHistory> histories) {
    if (histories.empty()) throw std::invalid_argument("no histories to aggregate");
    const std::size_t len = histories.front().records.size();
    std::vector<std::vector<double>> current, best;
    for (const RunHistory& h : histories) {
        if (h.records.size() != len) throw std::invalid_argument("histories differ in length");
        current.push_back(h.current_series());
        best.push_back(h.best_series());
    }
    return {column_stats(current), column_stats(best)};
}

std::string aggregated_csv(const AggregatedHistory& agg) {
    std::ostringstream os;
    os << "iteration,current_mean,current_std,best_mean,best_std\n";
    char buf[160];
    for (std::size_t i = 0; i < agg.current.mean.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%zu,%.17g,%.17g,%.17g,%.17g\n", i, agg.current.mean[i], agg.current.std[i],
                      agg.best.mean[i], agg.best.std[i]);
        os << buf;
    }
    return os.str();
}

double kolmogorov_q(double lambda) {
    if (lambda < 1e-3) return 1.0;
    double sum = 0.0;
    double sign = 1.0;
    double prev_term = 0.0;
    for (int j = 1; j <= 100; ++j) {
        const double term = sign * 2.0 * std::exp(-2.0 * j * j * lambda * lambda);
        sum += term;
        if (std::abs(term) <= 1e-12 * std::abs(sum) || std::abs(term) <= 1e-300) return std::clamp(sum, 0.0, 1.0);
        if (j > 1 && std::abs(term) >= std::abs(prev_term) && lambda < 0.2) return 1.0;  // series not converging
        prev_term = term;
        sign = -sign;
    }
    return 1.0;
}

KsResult ks_two_sample(std::span<const double> a, std::span<const double> b) {
    if (a.empty() || b.empty()) throw std::invalid_argument("K-S test needs two non-empty samples");
    std::vector<double> x(a.begin(), a.end()), y(b.begin(), b.end());
    std::sort(x.begin(), x.end());
    std::sort(y.begin(), y.end());
    const double n = static_cast<double>(x.size());
    const double m = static_cast<double>(y.size());
    std::size_t i = 0, j = 0;
    double d = 0.0;
    while (i < x.size() && j < y.size()) {
        const double v = std::min(x[i], y[j]);
        while (i < x.size() && x[i] <= v) ++i;
        while (j < y.size() && y[j] <= v) ++j;
        d = std::max(d, std::abs(static_cast<double>(i) / n - static_cast<double>(j) / m));
    }
    const double ne = std::sqrt(n * m / (n + m));
    return {d, kolmogorov_q((ne + 0.12 + 0.11 / ne) * d)};
}

std::vector<double> parse_samples(const std::string& text) {
    std::vector<double> out;
    std::istringstream is(text);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(is, line)) {
        ++line_no;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(line.substr(first), &used);
        } catch (const std::exception&) {
            throw std::runtime_error("line " + std::to_string(line_no) + ": not a number");
        }
        const auto rest = line.find_first_not_of(" \t\r", first + used);
        if (rest != std::string::npos) throw std::runtime_error("line " + std::to_string(line_no) + ": trailing text");
        out.push_back(v);
    }
    return out;
}

}  // namespace ward
