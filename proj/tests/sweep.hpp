#pragma once

// Randomized oracle sweeps shared by the unit and acceptance suites: every
// indicator over many random series against the brute-force oracles, plus the
// exact algebraic identities.

#include <cmath>
#include <cstdint>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "newscorr/indicators.hpp"
#include "oracle.hpp"

namespace sweep {

using newscorr::IndicatorParams;
using newscorr::IndicatorSeries;
using newscorr::PriceSeries;

struct Stats {
    std::size_t series_count = 0;
    std::size_t comparisons = 0;
    std::size_t failures = 0;
    double max_err = 0.0;  // |actual - oracle| / max(1, |values|)
    std::string first_failure;

    void check(double actual, double expect, double tol, const std::string& what) {
        ++comparisons;
        const double scale = std::max({1.0, std::fabs(actual), std::fabs(expect)});
        const double err = std::fabs(actual - expect) / scale;
        max_err = std::max(max_err, err);
        if (err > tol) {
            ++failures;
            if (first_failure.empty()) {
                std::ostringstream os;
                os << what << ": got " << actual << ", oracle " << expect;
                first_failure = os.str();
            }
        }
    }

    void expect_true(bool ok, const std::string& what) {
        ++comparisons;
        if (!ok) {
            ++failures;
            if (first_failure.empty()) first_failure = what;
        }
    }
};

// Checks that a series is the exact suffix of trading dates from
// `first_defined` on, then compares each value against the oracle callback.
template <typename OracleFn>
void check_series(Stats& stats, const PriceSeries& prices, const IndicatorSeries& series,
                  std::size_t first_defined, double tol, const std::string& what,
                  OracleFn&& oracle_at) {
    const std::size_t expect_size =
        prices.size() > first_defined ? prices.size() - first_defined : 0;
    stats.expect_true(series.size() == expect_size, what + ": defined-count mismatch");
    if (series.size() != expect_size) return;
    for (std::size_t j = 0; j < series.size(); ++j) {
        const std::size_t pos = first_defined + j;
        stats.expect_true(series.dates[j] == prices[pos].date, what + ": date misalignment");
        stats.check(series.values[j], oracle_at(pos), tol, what);
    }
}

// One full pass over every indicator for one random series; window parameters
// drawn per series.
inline void sweep_one(Stats& stats, std::mt19937_64& rng, double tol) {
    std::uniform_int_distribution<std::size_t> len_dist(8, 64);
    const std::size_t len = len_dist(rng);
    const std::vector<double> closes = oracle::random_closes(rng, len);
    const PriceSeries prices = oracle::series_from_closes(closes);
    ++stats.series_count;

    auto window = [&](std::size_t lo, std::size_t hi) {
        return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
    };

    const std::size_t n = window(1, std::min<std::size_t>(12, len));
    check_series(stats, prices, newscorr::sma_series(prices, n), n - 1, tol, "sma",
                 [&](std::size_t pos) { return *oracle::sma(closes, n, pos); });
    check_series(stats, prices, newscorr::wma_series(prices, n), n - 1, tol, "wma",
                 [&](std::size_t pos) { return *oracle::wma(closes, n, pos); });

    const double alpha = oracle::default_alpha(n);
    check_series(stats, prices, newscorr::ema_series(prices, n, alpha), n - 1, tol, "ema",
                 [&](std::size_t pos) { return *oracle::ema(closes, n, alpha, pos); });

    IndicatorParams mp;
    mp.short_window = window(1, 6);
    mp.long_window = mp.short_window + window(1, 10);
    mp.signal_window = window(1, 5);
    const std::size_t lw = mp.long_window, sn = mp.signal_window;
    check_series(stats, prices, newscorr::macd_line(prices, mp), lw - 1, tol, "macd",
                 [&](std::size_t pos) {
                     return *oracle::macd(closes, mp.short_window, lw, std::nullopt, pos);
                 });
    check_series(stats, prices, newscorr::macd_signal(newscorr::macd_line(prices, mp), sn),
                 lw - 1 + sn - 1, tol, "macd_signal", [&](std::size_t pos) {
                     return *oracle::macd_signal(closes, mp.short_window, lw, sn, std::nullopt,
                                                 pos);
                 });
    check_series(stats, prices, newscorr::histogram(prices, mp), lw - 1 + sn - 1, tol,
                 "histogram", [&](std::size_t pos) {
                     return *oracle::histogram(closes, mp.short_window, lw, sn, std::nullopt,
                                               pos);
                 });

    const std::size_t rn = window(1, std::min<std::size_t>(10, len - 1));
    const double ralpha = oracle::default_alpha(rn);
    check_series(stats, prices, newscorr::rsi_series(prices, rn), rn, tol, "rsi",
                 [&](std::size_t pos) { return *oracle::rsi(closes, rn, ralpha, pos); });

    const std::size_t mn = window(1, std::min<std::size_t>(10, len - 1));
    check_series(stats, prices, newscorr::momentum_series(prices, mn), mn, tol, "momentum",
                 [&](std::size_t pos) { return *oracle::momentum(closes, mn, pos); });
    check_series(stats, prices, newscorr::roc_series(prices, mn), mn, tol, "roc",
                 [&](std::size_t pos) { return *oracle::roc(closes, mn, pos); });

    const std::size_t bn = window(1, std::min<std::size_t>(10, len));
    for (auto band : {newscorr::BollingerBand::middle, newscorr::BollingerBand::upper,
                      newscorr::BollingerBand::lower}) {
        check_series(stats, prices, newscorr::bollinger_series(prices, bn, 2.0, band), bn - 1,
                     tol, "bollinger", [&](std::size_t pos) {
                         auto b = *oracle::bollinger(closes, bn, 2.0, pos);
                         return band == newscorr::BollingerBand::middle ? b.middle
                                : band == newscorr::BollingerBand::upper ? b.upper
                                                                         : b.lower;
                     });
    }

    const std::size_t period = window(1, len + 2);
    check_series(stats, prices, newscorr::periodic_average(prices, period), 0, tol,
                 "periodic_average",
                 [&](std::size_t pos) { return oracle::periodic_average(closes, period, pos); });

    for (std::size_t walk : {std::size_t{1}, std::size_t{2}}) {
        if (walk >= len) continue;
        check_series(stats, prices, newscorr::random_walk_series(prices, walk), walk, tol,
                     "random_walk",
                     [&](std::size_t pos) { return *oracle::momentum(closes, walk, pos); });
    }
}

inline Stats run_indicator_sweep(std::uint64_t seed, std::size_t n_series, double tol = 1e-9) {
    Stats stats;
    std::mt19937_64 rng(seed);
    for (std::size_t i = 0; i < n_series; ++i) sweep_one(stats, rng, tol);
    return stats;
}

struct IdentityStats {
    std::size_t series_count = 0;
    double max_hist_dev = 0.0;  // |(histogram + signal) - macd|
    double max_acc_dev = 0.0;   // |acceleration - signal|
    double max_roc_dev = 0.0;   // |roc - momentum / lagged close|
    double max_rsi = -1.0;      // range check across the sweep
    double min_rsi = 101.0;
};

inline IdentityStats run_identity_sweep(std::uint64_t seed, std::size_t n_series) {
    IdentityStats out;
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> len_dist(8, 64);
    for (std::size_t s = 0; s < n_series; ++s) {
        const std::size_t len = len_dist(rng);
        const std::vector<double> closes = oracle::random_closes(rng, len);
        const PriceSeries prices = oracle::series_from_closes(closes);
        ++out.series_count;

        IndicatorParams mp;
        mp.short_window = std::uniform_int_distribution<std::size_t>(1, 6)(rng);
        mp.long_window =
            mp.short_window + std::uniform_int_distribution<std::size_t>(1, 10)(rng);
        mp.signal_window = std::uniform_int_distribution<std::size_t>(1, 5)(rng);

        const IndicatorSeries line = newscorr::macd_line(prices, mp);
        const IndicatorSeries signal = newscorr::macd_signal(line, mp.signal_window);
        const IndicatorSeries hist = newscorr::histogram(prices, mp);
        const IndicatorSeries acc = newscorr::acceleration(prices, mp);
        for (std::size_t j = 0; j < hist.size(); ++j) {
            const double l = *line.value_at(hist.dates[j]);
            const double sg = *signal.value_at(hist.dates[j]);
            out.max_hist_dev =
                std::max(out.max_hist_dev, std::fabs(hist.values[j] + sg - l));
            out.max_acc_dev = std::max(out.max_acc_dev, std::fabs(acc.values[j] - sg));
        }

        const std::size_t n = std::uniform_int_distribution<std::size_t>(1, len - 1)(rng);
        const IndicatorSeries mom = newscorr::momentum_series(prices, n);
        const IndicatorSeries rc = newscorr::roc_series(prices, n);
        for (std::size_t j = 0; j < rc.size(); ++j) {
            const double lag = *prices.lag_close(rc.dates[j], n);
            out.max_roc_dev =
                std::max(out.max_roc_dev, std::fabs(rc.values[j] - mom.values[j] / lag));
        }

        const std::size_t rn =
            std::uniform_int_distribution<std::size_t>(1, std::min<std::size_t>(10, len - 1))(
                rng);
        const IndicatorSeries rs = newscorr::rsi_series(prices, rn);
        for (double v : rs.values) {
            out.max_rsi = std::max(out.max_rsi, v);
            out.min_rsi = std::min(out.min_rsi, v);
        }
    }
    return out;
}

// Smooth accelerating trend plus a mild sinusoid at an index-like scale;
// the shape that makes acceleration labels collapse onto one class.
inline std::vector<double> smooth_closes(std::size_t len = 500) {
    std::vector<double> c(len);
    for (std::size_t t = 0; t < len; ++t) {
        const double tt = static_cast<double>(t);
        c[t] = 60000.0 + 1.2 * tt * tt +
               80.0 * std::sin(2.0 * 3.141592653589793 * tt / 60.0);
    }
    return c;
}

}  // namespace sweep
