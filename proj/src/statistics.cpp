#include "thermint/statistics.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <limits>
#include <numbers>

#include "thermint/error.hpp"

namespace thermint {

double combined_std_error(const CorrelationEstimate& a, const CorrelationEstimate& b) {
    return std::hypot(a.std_error, b.std_error);
}

double separation(const CorrelationEstimate& a, const CorrelationEstimate& b) {
    const double diff = std::abs(a.mean - b.mean);
    if (diff == 0.0) return 0.0;
    const double err = combined_std_error(a, b);
    return err > 0.0 ? diff / err : std::numeric_limits<double>::infinity();
}

// ---------------------------------------------------------------------------
// ExactSum

namespace {

// a*b == hi + lo exactly (barring overflow/underflow).
inline void two_product(double a, double b, double& hi, double& lo) {
    hi = a * b;
#ifdef FP_FAST_FMA
    lo = std::fma(a, b, -hi);
#else
    constexpr double kSplit = 134217729.0;  // 2^27 + 1
    const double ca = kSplit * a;
    const double a_hi = ca - (ca - a);
    const double a_lo = a - a_hi;
    const double cb = kSplit * b;
    const double b_hi = cb - (cb - b);
    const double b_lo = b - b_hi;
    lo = ((a_hi * b_hi - hi) + a_hi * b_lo + a_lo * b_hi) + a_lo * b_lo;
#endif
}

}  // namespace

void ExactSum::add(double x) {
    std::size_t i = 0;
    for (std::size_t j = 0; j < size_; ++j) {
        double y = partials_[j];
        if (std::abs(x) < std::abs(y)) std::swap(x, y);
        const double hi = x + y;
        const double lo = y - (hi - x);
        if (lo != 0.0) partials_[i++] = lo;
        x = hi;
    }
    partials_[i] = x;
    size_ = i + 1;
}

void ExactSum::add_product(double a, double b) {
    double hi, lo;
    two_product(a, b, hi, lo);
    add(hi);
    if (lo != 0.0) add(lo);
}

void ExactSum::add_product(const ExactSum& a, const ExactSum& b) {
    // Copies: a or b may alias *this.
    const ExactSum x = a, y = b;
    for (std::size_t i = 0; i < x.size_; ++i) {
        for (std::size_t j = 0; j < y.size_; ++j) add_product(x.partials_[i], y.partials_[j]);
    }
}

void ExactSum::subtract(const ExactSum& other) {
    const ExactSum copy = other;
    for (std::size_t i = 0; i < copy.size_; ++i) add(-copy.partials_[i]);
}

double ExactSum::value() const {
    // Round-half-even correction from CPython's math.fsum.
    std::size_t n = size_;
    if (n == 0) return 0.0;
    double hi = partials_[--n];
    double lo = 0.0;
    while (n > 0) {
        const double x = hi;
        const double y = partials_[--n];
        hi = x + y;
        const double yr = hi - x;
        lo = y - yr;
        if (lo != 0.0) break;
    }
    if (n > 0 && ((lo < 0.0 && partials_[n - 1] < 0.0) || (lo > 0.0 && partials_[n - 1] > 0.0))) {
        const double y = lo * 2.0;
        const double x = hi + y;
        const double yr = x - hi;
        if (y == yr) hi = x;
    }
    return hi;
}

// ---------------------------------------------------------------------------
// Estimators

namespace {

double exact_mean(std::span<const double> xs) {
    ExactSum sum;
    for (double x : xs) sum.add(x);
    return sum.value() / static_cast<double>(xs.size());
}

void require_paired(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) throw EstimationError("paired samples differ in length");
}

struct BatchStats {
    double mean = 0.0;
    double std_error = 0.0;
};

BatchStats batch_spread(const std::vector<double>& values) {
    const double mean = exact_mean(values);
    double ss = 0.0;
    for (double v : values) ss += (v - mean) * (v - mean);
    const double b = static_cast<double>(values.size());
    return {mean, std::sqrt(ss / (b - 1.0) / b)};
}

}  // namespace

CorrelationEstimate mean_estimate(std::span<const double> samples) {
    if (samples.size() < 2) throw EstimationError("need at least two samples");
    const double mean = exact_mean(samples);
    double ss = 0.0;
    for (double x : samples) ss += (x - mean) * (x - mean);
    const double n = static_cast<double>(samples.size());
    return {mean, std::sqrt(ss / (n - 1.0) / n), samples.size()};
}

double sample_covariance(std::span<const double> a, std::span<const double> b) {
    require_paired(a, b);
    if (a.size() < 2) throw EstimationError("covariance needs at least two samples");
    const double ma = exact_mean(a);
    const double mb = exact_mean(b);
    ExactSum sum;
    for (std::size_t i = 0; i < a.size(); ++i) sum.add((a[i] - ma) * (b[i] - mb));
    return sum.value() / static_cast<double>(a.size() - 1);
}

std::vector<std::size_t> batch_edges(std::size_t n_samples, std::size_t batches) {
    if (batches < 2) throw EstimationError("batch means need at least two batches");
    if (n_samples < batches) throw EstimationError("fewer samples than batches");
    std::vector<std::size_t> edges(batches + 1);
    for (std::size_t b = 0; b <= batches; ++b) edges[b] = b * n_samples / batches;
    return edges;
}

CorrelationEstimate covariance_estimate(std::span<const double> a, std::span<const double> b,
                                        std::size_t batches) {
    require_paired(a, b);
    const auto edges = batch_edges(a.size(), batches);
    std::vector<double> per_batch(batches);
    for (std::size_t k = 0; k < batches; ++k) {
        const std::size_t lo = edges[k], len = edges[k + 1] - edges[k];
        if (len < 2) throw EstimationError("batch too small for a covariance");
        per_batch[k] = sample_covariance(a.subspan(lo, len), b.subspan(lo, len));
    }
    return {sample_covariance(a, b), batch_spread(per_batch).std_error, a.size()};
}

CorrelationEstimate normalized_correlation_estimate(std::span<const double> a,
                                                    std::span<const double> b,
                                                    std::size_t batches) {
    require_paired(a, b);
    const auto edges = batch_edges(a.size(), batches);
    auto ratio = [](std::span<const double> x, std::span<const double> y) {
        ExactSum sx, sy, sxy;
        for (std::size_t i = 0; i < x.size(); ++i) {
            sx.add(x[i]);
            sy.add(y[i]);
            sxy.add_product(x[i], y[i]);
        }
        const double n = static_cast<double>(x.size());
        const double denom = (sx.value() / n) * (sy.value() / n);
        return denom > 0.0 ? (sxy.value() / n) / denom : 0.0;
    };
    std::vector<double> per_batch(batches);
    for (std::size_t k = 0; k < batches; ++k) {
        const std::size_t lo = edges[k], len = edges[k + 1] - edges[k];
        per_batch[k] = ratio(a.subspan(lo, len), b.subspan(lo, len));
    }
    return {ratio(a, b), batch_spread(per_batch).std_error, a.size()};
}

Visibility visibility_from_extremes(const CorrelationEstimate& max, const CorrelationEstimate& min) {
    const double sum = max.mean + min.mean;
    if (sum == 0.0) return {0.0, 0.0};
    const double value = (max.mean - min.mean) / sum;
    const double d_max = 2.0 * min.mean / (sum * sum);
    const double d_min = -2.0 * max.mean / (sum * sum);
    return {value, std::hypot(d_max * max.std_error, d_min * min.std_error)};
}

Visibility scan_visibility(std::span<const CorrelationEstimate> points) {
    if (points.empty()) return {};
    auto by_mean = [](const CorrelationEstimate& x, const CorrelationEstimate& y) {
        return x.mean < y.mean;
    };
    const auto [lo, hi] = std::minmax_element(points.begin(), points.end(), by_mean);
    return visibility_from_extremes(*hi, *lo);
}

CosineFit fit_cosine(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 3) {
        throw EstimationError("cosine fit needs at least three paired points");
    }
    // Normal equations for the basis (1, cos x, sin x).
    double m[3][4] = {};
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double basis[3] = {1.0, std::cos(x[i]), std::sin(x[i])};
        for (int r = 0; r < 3; ++r) {
            for (int c = 0; c < 3; ++c) m[r][c] += basis[r] * basis[c];
            m[r][3] += basis[r] * y[i];
        }
    }
    for (int col = 0; col < 3; ++col) {
        int pivot = col;
        for (int r = col + 1; r < 3; ++r) {
            if (std::abs(m[r][col]) > std::abs(m[pivot][col])) pivot = r;
        }
        if (std::abs(m[pivot][col]) < 1e-300) throw EstimationError("cosine fit is degenerate");
        for (int c = 0; c < 4; ++c) std::swap(m[col][c], m[pivot][c]);
        for (int r = 0; r < 3; ++r) {
            if (r == col) continue;
            const double f = m[r][col] / m[col][col];
            for (int c = col; c < 4; ++c) m[r][c] -= f * m[col][c];
        }
    }
    CosineFit fit;
    fit.offset = m[0][3] / m[0][0];
    fit.cos_coeff = m[1][3] / m[1][1];
    fit.sin_coeff = m[2][3] / m[2][2];
    fit.amplitude = std::hypot(fit.cos_coeff, fit.sin_coeff);
    double ss = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double r = y[i] - (fit.offset + fit.cos_coeff * std::cos(x[i]) +
                                 fit.sin_coeff * std::sin(x[i]));
        ss += r * r;
    }
    fit.rms_residual = std::sqrt(ss / static_cast<double>(x.size()));
    return fit;
}

double fit_scale(std::span<const double> y, std::span<const double> model) {
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < y.size() && i < model.size(); ++i) {
        num += y[i] * model[i];
        den += model[i] * model[i];
    }
    return den > 0.0 ? num / den : 0.0;
}

double relative_residual(std::span<const double> y, std::span<const double> fit) {
    double ss_res = 0.0, ss_y = 0.0;
    for (std::size_t i = 0; i < y.size() && i < fit.size(); ++i) {
        ss_res += (y[i] - fit[i]) * (y[i] - fit[i]);
        ss_y += y[i] * y[i];
    }
    return ss_y > 0.0 ? std::sqrt(ss_res / ss_y) : 0.0;
}

}  // namespace thermint
