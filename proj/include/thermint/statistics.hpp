#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

namespace thermint {

/// Monte Carlo estimate of an ensemble average.
struct CorrelationEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    std::size_t n_samples = 0;
};

double combined_std_error(const CorrelationEstimate& a, const CorrelationEstimate& b);

/// |a.mean - b.mean| in units of the combined standard error. Returns 0
/// when both means agree exactly, +inf when they differ with zero error.
double separation(const CorrelationEstimate& a, const CorrelationEstimate& b);

/// Exactly rounded sum of doubles.
///
/// Keeps a list of non-overlapping partial sums (Shewchuk's algorithm, as in
/// Python's math.fsum), so the rounded result does not depend on the order
/// of additions.
class ExactSum {
public:
    void add(double x);
    /// Adds a*b without rounding the product.
    void add_product(double a, double b);
    /// Adds (sum of this accumulator) * (sum of other) without rounding.
    void add_product(const ExactSum& a, const ExactSum& b);
    void subtract(const ExactSum& other);
    void clear() { size_ = 0; }
    double value() const;
    std::span<const double> partials() const { return {partials_.data(), size_}; }

private:
    // Non-overlapping partials of finite doubles never exceed ~40 entries
    // (2098 bits of exponent range / 53 bits each).
    static constexpr std::size_t kCapacity = 64;
    std::array<double, kCapacity> partials_{};
    std::size_t size_ = 0;
};

/// Plain mean with i.i.d. standard error. Throws EstimationError for fewer
/// than two samples.
CorrelationEstimate mean_estimate(std::span<const double> samples);

/// Unbiased sample covariance of paired samples.
double sample_covariance(std::span<const double> a, std::span<const double> b);

inline constexpr std::size_t kDefaultBatches = 32;

/// Contiguous batch boundaries: batch b covers [edges[b], edges[b+1]).
std::vector<std::size_t> batch_edges(std::size_t n_samples, std::size_t batches);

/// Full-sample unbiased covariance with a batch-means standard error.
/// Throws EstimationError unless every batch holds at least two samples.
CorrelationEstimate covariance_estimate(std::span<const double> a,
                                        std::span<const double> b,
                                        std::size_t batches = kDefaultBatches);

/// mean(a*b) / (mean(a) mean(b)) with a batch-means standard error.
CorrelationEstimate normalized_correlation_estimate(std::span<const double> a,
                                                    std::span<const double> b,
                                                    std::size_t batches = kDefaultBatches);

/// Visibility (max - min)/(max + min) of two fringe extremes, with the
/// uncertainty propagated from their standard errors.
struct Visibility {
    double value = 0.0;
    double std_error = 0.0;
};

Visibility visibility_from_extremes(const CorrelationEstimate& max,
                                    const CorrelationEstimate& min);

/// Visibility of a scan: picks the largest and smallest means.
Visibility scan_visibility(std::span<const CorrelationEstimate> points);

/// Least-squares fit y ~ offset + a cos(x) + b sin(x).
struct CosineFit {
    double offset = 0.0;
    double cos_coeff = 0.0;
    double sin_coeff = 0.0;
    double amplitude = 0.0;     ///< hypot(cos_coeff, sin_coeff)
    double rms_residual = 0.0;
};

CosineFit fit_cosine(std::span<const double> x, std::span<const double> y);

/// Least-squares scale s for y ~ s * model. Returns 0 if the model is all zero.
double fit_scale(std::span<const double> y, std::span<const double> model);

/// ||y - fit|| / ||y|| (Euclidean norms).
double relative_residual(std::span<const double> y, std::span<const double> fit);

}  // namespace thermint
