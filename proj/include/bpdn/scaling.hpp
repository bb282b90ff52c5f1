#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "bpdn/asymptotics.hpp"
#include "bpdn/fista.hpp"
#include "bpdn/gibbs.hpp"

namespace bpdn {

/// A chain state in the zero-temperature coordinates: x_i / T on I0 \ dI0
/// ("fast") and (x_i - x*_i) / sqrt(T) on S u dI0 ("slow"). Each vector is
/// ordered like the matching index list of the partition.
struct RescaledSample {
    std::vector<double> fast;
    std::vector<double> slow;
};

/// Partition of dI0 into coordinates whose sign opposes the certificate (k1)
/// and coordinates whose sign agrees with it (k2).
struct SignEvent {
    std::vector<std::size_t> k1;
    std::vector<std::size_t> k2;
};

std::vector<RescaledSample> rescale_samples(const ChainResult& chain,
                                            const PlseSolution& solution, double temperature);

/// Unnormalized limit density of the rescaled vector. Zero whenever a dI0
/// coordinate fails sgn(x_i) xi_i = 1 (sgn(0) fails). Requires a certified
/// unique solution.
double limit_density_nd(const Problem& problem, const PlseSolution& solution,
                        std::span<const double> fast, std::span<const double> slow);

/// Fraction of states with sgn(x_i) sgn(xi_i) = -1 on k1 and = +1 on k2.
/// The certificate enters through its sign since |xi_i| is only 1 up to the
/// solver tolerance on dI0.
double sign_event_frequency(const ChainResult& chain, const PlseSolution& solution,
                            const SignEvent& event);

/// E[h(X_T)] under the 1D Gibbs density exp(-F(x, y, t) / T) by adaptive
/// quadrature on [x* - 60 sqrt(tT) - 60 T, x* + 60 sqrt(tT) + 60 T].
double gibbs_expectation_1d(double y, double t, double temperature,
                            const std::function<double(double)>& h);

/// Moment of order k in {0, 1, 2} of the 1D Gibbs measure (k = 0 gives 1).
double brute_force_gibbs_1d(double y, double t, double temperature, int k);

/// P(X_T < 0) under the 1D Gibbs measure.
double gibbs_negative_probability_1d(double y, double t, double temperature);

/// Smallest lag at which the sample autocorrelation drops below `threshold`.
std::size_t thinning_for(std::span<const double> series, double threshold = 0.1,
                         std::size_t max_lag = 5000);
double autocorrelation(std::span<const double> series, std::size_t lag);

/// Standard error of a chain average by non-overlapping batch means.
double batch_means_standard_error(std::span<const double> series, std::size_t batches = 50);

struct ScalingOptions {
    /// Proposal variance; defaults to (2.4 * s)^2 with s the limit-law scale
    /// (T sqrt(m2(u)) for interior, sqrt(t T) otherwise).
    std::optional<double> proposal_sigma2;
    /// Pilot chain used to pick the thinning; defaults to 20000 steps in 1D and
    /// 1e6 steps for verify_limit_density, whose slow coordinates mix over
    /// about 1 / T steps.
    std::optional<std::size_t> pilot_length;
    double autocorrelation_threshold = 0.1;
    unsigned threads = 1;
};

struct ScalingRow {
    double temperature = 0.0;
    Regime regime = Regime::interior;
    double ks = 0.0;
    std::size_t samples = 0;  ///< thinned samples entering the KS statistic
    std::size_t thinning = 1;
    double acceptance_rate = 0.0;
    /// Empirical P(sgn(X) sgn(xi) = -1): only meaningful on the boundary.
    double negative_event_frequency = 0.0;
    double positive_event_frequency = 0.0;
};

/// For each temperature: run a long MH chain started at soft(y, t), thin it so
/// the lag-1 autocorrelation stays below the threshold, rescale per regime and
/// compute the KS distance to the limit CDF. At the boundary the KS statistic
/// uses the positive samples against |N(0, t)|.
std::vector<ScalingRow> verify_scaling_1d(double y, double t,
                                          const std::vector<double>& temperatures,
                                          std::size_t n_samples, std::uint64_t seed,
                                          const ScalingOptions& opts = {});

struct ChiSquareResult {
    double statistic = 0.0;
    std::size_t dof = 0;
    double p_value = 0.0;
    std::size_t samples_used = 0;
};

/// Chi-square goodness of fit of rescaled samples against limit_density_nd.
/// Each axis is cut into `bins_per_axis` cells of equal probability under an
/// approximate marginal (the exact 1D law on fast axes, a Gaussian with the
/// limit covariance on slow axes). Cell probabilities come from a midpoint
/// rule with `refine` sub-points per axis, normalized over the grid. Cells
/// with expected count below 5 are pooled.
ChiSquareResult limit_chi_square(const Problem& problem, const PlseSolution& solution,
                                 const std::vector<RescaledSample>& samples,
                                 std::size_t bins_per_axis = 8, std::size_t refine = 16);

struct LimitDensityCheck {
    PlseSolution solution;
    ChiSquareResult chi_square;
    std::size_t thinning = 1;
    double acceptance_rate = 0.0;
    double proposal_sigma2 = 0.0;
};

/// Solves the problem, runs MH at `temperature` from x*, thins the chain so
/// every coordinate's autocorrelation drops below the threshold, and applies
/// limit_chi_square to `n_samples` rescaled states. The default proposal scale
/// follows the fast coordinates (order T) when I0 \ dI0 is non-empty and the
/// slow ones (order sqrt(t T)) otherwise.
LimitDensityCheck verify_limit_density(const Problem& problem, double temperature,
                                       std::size_t n_samples, std::uint64_t seed,
                                       const ScalingOptions& opts = {},
                                       std::size_t bins_per_axis = 8, std::size_t refine = 16);

}  // namespace bpdn
