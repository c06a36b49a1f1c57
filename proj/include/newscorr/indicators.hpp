#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "newscorr/prices.hpp"

namespace newscorr {

/// Three-class movement label. `none` covers every degenerate case the same
/// way: closed-market dates, warm-up dates without an indicator value, and
/// exact ties.
enum class Label : int { down = -1, none = 0, up = 1 };

constexpr int label_code(Label l) { return static_cast<int>(l); }

constexpr Label sign_label(double diff) {
    if (diff > 0.0) return Label::up;
    if (diff < 0.0) return Label::down;
    return Label::none;
}

inline Label label_from_code(int code) {
    switch (code) {
        case 1: return Label::up;
        case -1: return Label::down;
        case 0: return Label::none;
        default: throw std::invalid_argument("label code must be -1, 0 or +1");
    }
}

/// Parameter record shared by all indicator constructions. Window lengths are
/// trading days. `alpha` overrides the EMA decay for every window when set;
/// unset means 2/(w+1) for a window of length w.
struct IndicatorParams {
    std::size_t n = 20;
    std::size_t short_window = 12;
    std::size_t long_window = 26;
    std::size_t signal_window = 9;
    std::optional<double> alpha;
    double band_k = 2.0;
    std::size_t period = 5;
    std::size_t walk_length = 1;

    double alpha_for(std::size_t window) const {
        return alpha ? *alpha : 2.0 / (static_cast<double>(window) + 1.0);
    }
};

/// Date-aligned real-valued transform of a PriceSeries. Dates are a subset of
/// the source trading dates with the warm-up prefix absent; strictly
/// increasing, so lookups binary-search.
struct IndicatorSeries {
    std::string method;
    IndicatorParams params;
    std::vector<Date> dates;
    std::vector<double> values;

    std::size_t size() const { return dates.size(); }

    std::optional<std::size_t> index_of(Date d) const {
        auto it = std::lower_bound(dates.begin(), dates.end(), d);
        if (it == dates.end() || *it != d) return std::nullopt;
        return static_cast<std::size_t>(it - dates.begin());
    }

    std::optional<double> value_at(Date d) const {
        auto i = index_of(d);
        if (!i) return std::nullopt;
        return values[*i];
    }
};

namespace detail {

inline void check_window(std::size_t n) {
    if (n == 0) throw std::invalid_argument("window length must be >= 1");
}

inline void check_alpha(double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::invalid_argument("ema alpha must lie in (0,1)");
}

// Truncated-kernel exponential mean of the n values ending at pos inclusive:
// weights (1-alpha)^age with age 0 at pos, renormalized to sum to 1.
inline double ema_window(std::span<const double> values, std::size_t n, double alpha,
                         std::size_t pos) {
    const double decay = 1.0 - alpha;
    double num = 0.0, den = 0.0, w = 1.0;
    for (std::size_t age = 0; age < n; ++age) {
        num += w * values[pos - age];
        den += w;
        w *= decay;
    }
    return num / den;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Point operations. Position-based `*_at` variants index trading days
// directly; date-based wrappers resolve the date first. An empty optional
// means the value is warm-up-undefined (or the date is non-trading).
// ---------------------------------------------------------------------------

/// Arithmetic mean of the n most recent closes ending at position `pos`.
/// Defined iff pos >= n-1.
inline std::optional<double> sma_at(const PriceSeries& s, std::size_t n, std::size_t pos) {
    detail::check_window(n);
    if (pos >= s.size() || pos + 1 < n) return std::nullopt;
    double sum = 0.0;
    for (std::size_t i = pos + 1 - n; i <= pos; ++i) sum += s.close(i);
    return sum / static_cast<double>(n);
}

inline std::optional<double> sma(const PriceSeries& s, std::size_t n, Date t) {
    auto p = s.index_of(t);
    if (!p) {
        detail::check_window(n);
        return std::nullopt;
    }
    return sma_at(s, n, *p);
}

/// Linearly weighted mean: weights 1..n oldest to newest, normalized by
/// n(n+1)/2 so a constant series maps to that constant.
inline std::optional<double> wma_at(const PriceSeries& s, std::size_t n, std::size_t pos) {
    detail::check_window(n);
    if (pos >= s.size() || pos + 1 < n) return std::nullopt;
    double num = 0.0;
    for (std::size_t j = 0; j < n; ++j)
        num += static_cast<double>(j + 1) * s.close(pos + 1 - n + j);
    return num / (static_cast<double>(n) * static_cast<double>(n + 1) / 2.0);
}

inline std::optional<double> wma(const PriceSeries& s, std::size_t n, Date t) {
    auto p = s.index_of(t);
    if (!p) {
        detail::check_window(n);
        return std::nullopt;
    }
    return wma_at(s, n, *p);
}

/// Exponentially weighted mean over a truncated n-point window, kernel
/// (1-alpha)^age renormalized to sum to 1. Defined iff pos >= n-1.
inline std::optional<double> ema_at(const PriceSeries& s, std::size_t n, double alpha,
                                    std::size_t pos) {
    detail::check_window(n);
    detail::check_alpha(alpha);
    if (pos >= s.size() || pos + 1 < n) return std::nullopt;
    double num = 0.0, den = 0.0, w = 1.0;
    const double decay = 1.0 - alpha;
    for (std::size_t age = 0; age < n; ++age) {
        num += w * s.close(pos - age);
        den += w;
        w *= decay;
    }
    return num / den;
}

inline std::optional<double> ema(const PriceSeries& s, std::size_t n, double alpha, Date t) {
    detail::check_window(n);
    detail::check_alpha(alpha);
    auto p = s.index_of(t);
    if (!p) return std::nullopt;
    return ema_at(s, n, alpha, *p);
}

/// n-day price change C_pos − C_{pos−n}. Defined iff pos >= n.
inline std::optional<double> momentum_at(const PriceSeries& s, std::size_t n, std::size_t pos) {
    detail::check_window(n);
    if (pos >= s.size() || pos < n) return std::nullopt;
    return s.close(pos) - s.close(pos - n);
}

inline std::optional<double> momentum(const PriceSeries& s, std::size_t n, Date t) {
    auto p = s.index_of(t);
    if (!p) {
        detail::check_window(n);
        return std::nullopt;
    }
    return momentum_at(s, n, *p);
}

/// Momentum as a fraction of the lagged close. The positive-close invariant
/// guarantees the denominator.
inline std::optional<double> roc_at(const PriceSeries& s, std::size_t n, std::size_t pos) {
    detail::check_window(n);
    if (pos >= s.size() || pos < n) return std::nullopt;
    return (s.close(pos) - s.close(pos - n)) / s.close(pos - n);
}

inline std::optional<double> roc(const PriceSeries& s, std::size_t n, Date t) {
    auto p = s.index_of(t);
    if (!p) {
        detail::check_window(n);
        return std::nullopt;
    }
    return roc_at(s, n, *p);
}

/// Relative strength index in [0,100] from exponential means of the up-move
/// and down-move series. Needs n+1 closes, so defined iff pos >= n.
/// Edge rules: all-down window -> 0, all-up -> 100, both means zero -> 50.
inline std::optional<double> rsi_at(const PriceSeries& s, std::size_t n, double alpha,
                                    std::size_t pos) {
    detail::check_window(n);
    detail::check_alpha(alpha);
    if (pos >= s.size() || pos < n) return std::nullopt;
    // Up/down series over the n most recent close-to-close moves.
    std::vector<double> ups(n), downs(n);
    for (std::size_t j = 0; j < n; ++j) {
        const std::size_t i = pos - n + 1 + j;
        const double diff = s.close(i) - s.close(i - 1);
        ups[j] = diff > 0.0 ? diff : 0.0;
        downs[j] = diff < 0.0 ? -diff : 0.0;
    }
    const double ema_u = detail::ema_window(ups, n, alpha, n - 1);
    const double ema_d = detail::ema_window(downs, n, alpha, n - 1);
    if (ema_d == 0.0 && ema_u == 0.0) return 50.0;
    if (ema_d == 0.0) return 100.0;
    if (ema_u == 0.0) return 0.0;
    const double rs = ema_u / ema_d;
    return 100.0 - 100.0 / (1.0 + rs);
}

inline std::optional<double> rsi(const PriceSeries& s, std::size_t n, double alpha, Date t) {
    detail::check_window(n);
    detail::check_alpha(alpha);
    auto p = s.index_of(t);
    if (!p) return std::nullopt;
    return rsi_at(s, n, alpha, *p);
}

struct BollingerBands {
    double middle = 0.0;
    double upper = 0.0;
    double lower = 0.0;
};

/// Standard Bollinger channel: SMA_n plus/minus K population standard
/// deviations of the same window.
inline std::optional<BollingerBands> bollinger_at(const PriceSeries& s, std::size_t n, double k,
                                                  std::size_t pos) {
    detail::check_window(n);
    if (!(k > 0.0)) throw std::invalid_argument("bollinger K must be > 0");
    auto mid = sma_at(s, n, pos);
    if (!mid) return std::nullopt;
    double ss = 0.0;
    for (std::size_t i = pos + 1 - n; i <= pos; ++i) {
        const double d = s.close(i) - *mid;
        ss += d * d;
    }
    const double sigma = std::sqrt(ss / static_cast<double>(n));
    return BollingerBands{*mid, *mid + k * sigma, *mid - k * sigma};
}

inline std::optional<BollingerBands> bollinger(const PriceSeries& s, std::size_t n, double k,
                                               Date t) {
    auto p = s.index_of(t);
    if (!p) {
        detail::check_window(n);
        if (!(k > 0.0)) throw std::invalid_argument("bollinger K must be > 0");
        return std::nullopt;
    }
    return bollinger_at(s, n, k, *p);
}

// ---------------------------------------------------------------------------
// Whole-series constructions.
// ---------------------------------------------------------------------------

namespace detail {

template <typename PointFn>
IndicatorSeries build_series(const PriceSeries& s, std::string method, IndicatorParams params,
                             PointFn&& fn) {
    IndicatorSeries out;
    out.method = std::move(method);
    out.params = params;
    for (std::size_t pos = 0; pos < s.size(); ++pos) {
        if (auto v = fn(pos)) {
            out.dates.push_back(s[pos].date);
            out.values.push_back(*v);
        }
    }
    return out;
}

}  // namespace detail

inline IndicatorSeries sma_series(const PriceSeries& s, std::size_t n) {
    IndicatorParams p;
    p.n = n;
    return detail::build_series(s, "sma", p, [&](std::size_t pos) { return sma_at(s, n, pos); });
}

inline IndicatorSeries wma_series(const PriceSeries& s, std::size_t n) {
    IndicatorParams p;
    p.n = n;
    return detail::build_series(s, "wma", p, [&](std::size_t pos) { return wma_at(s, n, pos); });
}

inline IndicatorSeries ema_series(const PriceSeries& s, std::size_t n, double alpha) {
    IndicatorParams p;
    p.n = n;
    p.alpha = alpha;
    return detail::build_series(s, "ema", p,
                                [&](std::size_t pos) { return ema_at(s, n, alpha, pos); });
}

/// MACD line: EMA(short) − EMA(long) per date, defined where both are. Each
/// EMA uses its own decay (2/(w+1) unless `params.alpha` overrides).
inline IndicatorSeries macd_line(const PriceSeries& s, const IndicatorParams& params) {
    const std::size_t sw = params.short_window, lw = params.long_window;
    if (sw < 1 || lw <= sw)
        throw std::invalid_argument("macd requires long > short >= 1");
    const double a_short = params.alpha_for(sw);
    const double a_long = params.alpha_for(lw);
    detail::check_alpha(a_short);
    detail::check_alpha(a_long);
    return detail::build_series(s, "macd", params, [&](std::size_t pos) -> std::optional<double> {
        auto e_long = ema_at(s, lw, a_long, pos);
        if (!e_long) return std::nullopt;
        auto e_short = ema_at(s, sw, a_short, pos);
        return *e_short - *e_long;
    });
}

/// Signal line: EMA of the MACD line over `signal_n` points, same truncated
/// kernel as `ema`. Empty when the MACD line is shorter than the window.
inline IndicatorSeries macd_signal(const IndicatorSeries& macd, std::size_t signal_n,
                                   std::optional<double> alpha = std::nullopt) {
    detail::check_window(signal_n);
    const double a = alpha ? *alpha : 2.0 / (static_cast<double>(signal_n) + 1.0);
    detail::check_alpha(a);
    IndicatorSeries out;
    out.method = "macd_signal";
    out.params = macd.params;
    out.params.signal_window = signal_n;
    if (macd.size() < signal_n) return out;
    for (std::size_t pos = signal_n - 1; pos < macd.size(); ++pos) {
        out.dates.push_back(macd.dates[pos]);
        out.values.push_back(detail::ema_window(macd.values, signal_n, a, pos));
    }
    return out;
}

/// MACD histogram: line minus signal, day by day where both are defined.
inline IndicatorSeries histogram(const PriceSeries& s, const IndicatorParams& params) {
    const IndicatorSeries macd = macd_line(s, params);
    const IndicatorSeries signal =
        macd_signal(macd, params.signal_window, params.alpha);
    IndicatorSeries out;
    out.method = "histogram";
    out.params = params;
    for (std::size_t i = 0; i < signal.size(); ++i) {
        auto line = macd.value_at(signal.dates[i]);
        out.dates.push_back(signal.dates[i]);
        out.values.push_back(*line - signal.values[i]);
    }
    return out;
}

/// The "difference" analysis is the MACD histogram under another name.
inline IndicatorSeries difference(const PriceSeries& s, const IndicatorParams& params) {
    IndicatorSeries out = histogram(s, params);
    out.method = "difference";
    return out;
}

/// Acceleration: MACD line minus histogram, which collapses to the signal
/// line. It hovers near zero relative to the price scale, which is what makes
/// its labels degenerate on smooth series.
inline IndicatorSeries acceleration(const PriceSeries& s, const IndicatorParams& params) {
    const IndicatorSeries macd = macd_line(s, params);
    const IndicatorSeries hist = histogram(s, params);
    IndicatorSeries out;
    out.method = "acceleration";
    out.params = params;
    for (std::size_t i = 0; i < hist.size(); ++i) {
        auto line = macd.value_at(hist.dates[i]);
        out.dates.push_back(hist.dates[i]);
        out.values.push_back(*line - hist.values[i]);
    }
    return out;
}

inline IndicatorSeries rsi_series(const PriceSeries& s, std::size_t n,
                                  std::optional<double> alpha = std::nullopt) {
    IndicatorParams p;
    p.n = n;
    p.alpha = alpha;
    const double a = p.alpha_for(n);
    return detail::build_series(s, "rsi", p,
                                [&](std::size_t pos) { return rsi_at(s, n, a, pos); });
}

inline IndicatorSeries momentum_series(const PriceSeries& s, std::size_t n) {
    IndicatorParams p;
    p.n = n;
    return detail::build_series(s, "momentum", p,
                                [&](std::size_t pos) { return momentum_at(s, n, pos); });
}

inline IndicatorSeries roc_series(const PriceSeries& s, std::size_t n) {
    IndicatorParams p;
    p.n = n;
    return detail::build_series(s, "roc", p, [&](std::size_t pos) { return roc_at(s, n, pos); });
}

enum class BollingerBand { middle, upper, lower };

inline IndicatorSeries bollinger_series(const PriceSeries& s, std::size_t n, double k,
                                        BollingerBand band) {
    IndicatorParams p;
    p.n = n;
    p.band_k = k;
    const char* name = band == BollingerBand::middle ? "bollinger_middle"
                       : band == BollingerBand::upper ? "bollinger_upper"
                                                      : "bollinger_lower";
    return detail::build_series(s, name, p, [&](std::size_t pos) -> std::optional<double> {
        auto bb = bollinger_at(s, n, k, pos);
        if (!bb) return std::nullopt;
        switch (band) {
            case BollingerBand::upper: return bb->upper;
            case BollingerBand::lower: return bb->lower;
            default: return bb->middle;
        }
    });
}

/// Partitions trading dates into consecutive blocks of `period` days (last
/// block may be shorter); every date in a block carries the block's mean
/// close. No warm-up prefix.
inline IndicatorSeries periodic_average(const PriceSeries& s, std::size_t period) {
    if (period == 0) throw std::invalid_argument("periodic average: period must be >= 1");
    IndicatorParams p;
    p.period = period;
    IndicatorSeries out;
    out.method = "periodic_average";
    out.params = p;
    for (std::size_t start = 0; start < s.size(); start += period) {
        const std::size_t end = std::min(start + period, s.size());
        double sum = 0.0;
        for (std::size_t i = start; i < end; ++i) sum += s.close(i);
        const double mean = sum / static_cast<double>(end - start);
        for (std::size_t i = start; i < end; ++i) {
            out.dates.push_back(s[i].date);
            out.values.push_back(mean);
        }
    }
    return out;
}

/// The L-step walk feature C_t − C_{t−L}, emitted as a series for plotting.
/// Its sign is the random-walk label.
inline IndicatorSeries random_walk_series(const PriceSeries& s, std::size_t walk_length) {
    detail::check_window(walk_length);
    IndicatorParams p;
    p.walk_length = walk_length;
    return detail::build_series(
        s, "random_walk", p, [&](std::size_t pos) -> std::optional<double> {
            if (pos < walk_length) return std::nullopt;
            return s.close(pos) - s.close(pos - walk_length);
        });
}

// ---------------------------------------------------------------------------
// Labeling.
// ---------------------------------------------------------------------------

/// Sign of the L-step close change at `date`. Non-trading dates, dates with
/// fewer than L predecessors, and exact ties all map to `none`.
inline Label random_walk_label(const PriceSeries& s, Date date, std::size_t walk_length) {
    auto c = s.lag_close(date, walk_length);  // validates walk_length >= 1
    if (!c) return Label::none;
    auto now = s.close_at(date);
    return sign_label(*now - *c);
}

/// Sign of the indicator change from the previous date with a defined value.
/// Undefined endpoints (warm-up, non-trading dates) and zero change map to
/// `none`. Invariant under positive-affine transforms of the series.
inline Label indicator_label(const IndicatorSeries& ind, Date date) {
    auto i = ind.index_of(date);
    if (!i || *i == 0) return Label::none;
    return sign_label(ind.values[*i] - ind.values[*i - 1]);
}

}  // namespace newscorr
