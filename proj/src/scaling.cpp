#include "bpdn/scaling.hpp"

#include <algorithm>
#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/normal.hpp>
#include <cmath>
#include <numeric>

#include "bpdn/error.hpp"
#include "bpdn/parallel.hpp"
#include "bpdn/quadrature.hpp"
#include "bpdn/rng.hpp"

namespace bpdn {

using detail::require;

namespace {

double sign_of(double v) { return v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0); }

std::vector<std::size_t> sorted_copy(std::vector<std::size_t> v) {
    std::sort(v.begin(), v.end());
    return v;
}

}  // namespace

std::vector<RescaledSample> rescale_samples(const ChainResult& chain,
                                            const PlseSolution& solution, double temperature) {
    require(temperature > 0.0, "temperature must be positive");
    require(chain.dim() == static_cast<std::size_t>(solution.x_star.size()),
            "chain dimension does not match the solution partition");
    const auto fast_idx = solution.partition.interior_zero_set();
    const auto slow_idx = solution.partition.certificate_set();
    require(fast_idx.size() + slow_idx.size() == chain.dim(),
            "support partition does not cover every coordinate");
    const double root_t = std::sqrt(temperature);

    std::vector<RescaledSample> out(chain.size());
    for (std::size_t k = 0; k < chain.size(); ++k) {
        const auto x = chain.state(k);
        auto& r = out[k];
        r.fast.reserve(fast_idx.size());
        r.slow.reserve(slow_idx.size());
        for (auto i : fast_idx) r.fast.push_back(x[i] / temperature);
        for (auto j : slow_idx)
            r.slow.push_back((x[j] - solution.x_star(static_cast<Eigen::Index>(j))) / root_t);
    }
    return out;
}

double limit_density_nd(const Problem& problem, const PlseSolution& solution,
                        std::span<const double> fast, std::span<const double> slow) {
    require(solution.unique, "limit density needs a certified unique solution");
    const auto fast_idx = solution.partition.interior_zero_set();
    const auto slow_idx = solution.partition.certificate_set();
    require(fast.size() == fast_idx.size() && slow.size() == slow_idx.size(),
            "rescaled coordinates do not match the support partition");

    const auto& part = solution.partition;
    for (std::size_t k = 0; k < slow_idx.size(); ++k) {
        const auto j = slow_idx[k];
        if (std::binary_search(part.boundary.begin(), part.boundary.end(), j) &&
            sign_of(slow[k]) * sign_of(solution.xi(static_cast<Eigen::Index>(j))) != 1.0)
            return 0.0;
    }

    double exponent = 0.0;
    for (std::size_t k = 0; k < fast_idx.size(); ++k) {
        const double z = fast[k];
        const double xi = solution.xi(static_cast<Eigen::Index>(fast_idx[k]));
        exponent += std::abs(z) * (1.0 - sign_of(z) * xi);
    }
    Vector combo = Vector::Zero(problem.rows());
    for (std::size_t k = 0; k < slow_idx.size(); ++k)
        combo += slow[k] * problem.a().col(static_cast<Eigen::Index>(slow_idx[k]));
    exponent += combo.squaredNorm() / (2.0 * problem.t());
    return std::exp(-exponent);
}

double sign_event_frequency(const ChainResult& chain, const PlseSolution& solution,
                            const SignEvent& event) {
    const auto k1 = sorted_copy(event.k1);
    const auto k2 = sorted_copy(event.k2);
    std::vector<std::size_t> both;
    std::set_intersection(k1.begin(), k1.end(), k2.begin(), k2.end(), std::back_inserter(both));
    require(both.empty(), "sign event sets must be disjoint");
    std::vector<std::size_t> all;
    std::set_union(k1.begin(), k1.end(), k2.begin(), k2.end(), std::back_inserter(all));
    require(all == solution.partition.boundary, "sign event sets must partition dI0");
    require(chain.dim() == static_cast<std::size_t>(solution.x_star.size()),
            "chain dimension does not match the solution");
    if (chain.size() == 0) return 0.0;

    std::size_t hits = 0;
    for (std::size_t n = 0; n < chain.size(); ++n) {
        const auto x = chain.state(n);
        const auto signed_match = [&](std::size_t i) {
            return sign_of(x[i]) * sign_of(solution.xi(static_cast<Eigen::Index>(i)));
        };
        const bool in_k1 = std::all_of(k1.begin(), k1.end(),
                                       [&](std::size_t i) { return signed_match(i) == -1.0; });
        const bool in_k2 = std::all_of(k2.begin(), k2.end(),
                                       [&](std::size_t i) { return signed_match(i) == 1.0; });
        if (in_k1 && in_k2) ++hits;
    }
    return static_cast<double>(hits) / static_cast<double>(chain.size());
}

double gibbs_expectation_1d(double y, double t, double temperature,
                            const std::function<double(double)>& h) {
    require(t > 0.0 && temperature > 0.0, "t and T must be positive");
    const double x_star = soft_threshold(y, t);
    // F(x) - F(x*) in factored form: no cancellation near x*.
    const auto excess = [&](double x) {
        return std::abs(x) - std::abs(x_star) + (x - x_star) * (x + x_star - 2.0 * y) / (2.0 * t);
    };
    const double half_width = 60.0 * std::sqrt(t * temperature) + 60.0 * temperature;
    const double lo = x_star - half_width;
    const double hi = x_star + half_width;
    const auto weight = [&](double x) { return std::exp(-excess(x) / temperature); };
    // Breakpoints at both mass scales (T near a kink, sqrt(tT) around x*).
    std::vector<double> kinks{0.0, x_star};
    for (double scale : {temperature, std::sqrt(t * temperature)})
        for (double k : {1.0, 10.0})
            for (double c : {0.0, x_star})
                if (std::abs(c - x_star) + k * scale < half_width) {
                    kinks.push_back(c - k * scale);
                    kinks.push_back(c + k * scale);
                }
    const double z = integrate(weight, lo, hi, kinks, 1e-10).value;
    const double num = integrate([&](double x) { return h(x) * weight(x); }, lo, hi, kinks, 1e-10)
                           .value;
    return num / z;
}

double brute_force_gibbs_1d(double y, double t, double temperature, int k) {
    require(k >= 0 && k <= 2, "moment order must be 0, 1 or 2");
    if (k == 0) return gibbs_expectation_1d(y, t, temperature, [](double) { return 1.0; });
    if (k == 1) return gibbs_expectation_1d(y, t, temperature, [](double x) { return x; });
    return gibbs_expectation_1d(y, t, temperature, [](double x) { return x * x; });
}

double gibbs_negative_probability_1d(double y, double t, double temperature) {
    return gibbs_expectation_1d(y, t, temperature, [](double x) { return x < 0.0 ? 1.0 : 0.0; });
}

double autocorrelation(std::span<const double> series, std::size_t lag) {
    const std::size_t n = series.size();
    require(n > lag + 1, "series too short for the requested lag");
    const double mean = std::accumulate(series.begin(), series.end(), 0.0) / static_cast<double>(n);
    double var = 0.0;
    for (double v : series) var += (v - mean) * (v - mean);
    if (var == 0.0) return 1.0;
    double cov = 0.0;
    for (std::size_t i = 0; i + lag < n; ++i) cov += (series[i] - mean) * (series[i + lag] - mean);
    return cov / var;
}

std::size_t thinning_for(std::span<const double> series, double threshold, std::size_t max_lag) {
    require(series.size() > 2, "series too short to estimate autocorrelation");
    const std::size_t limit = std::min(max_lag, series.size() / 4);
    for (std::size_t lag = 1; lag <= limit; ++lag)
        if (autocorrelation(series, lag) < threshold) return lag;
    throw NumericalError("chain autocorrelation does not decay within the pilot run");
}

double batch_means_standard_error(std::span<const double> series, std::size_t batches) {
    require(batches >= 2 && series.size() >= batches, "not enough samples for batch means");
    const std::size_t len = series.size() / batches;
    std::vector<double> means(batches);
    for (std::size_t b = 0; b < batches; ++b) {
        const auto first = series.begin() + static_cast<std::ptrdiff_t>(b * len);
        means[b] = std::accumulate(first, first + static_cast<std::ptrdiff_t>(len), 0.0) /
                   static_cast<double>(len);
    }
    const double grand = std::accumulate(means.begin(), means.end(), 0.0) / static_cast<double>(batches);
    double ss = 0.0;
    for (double m : means) ss += (m - grand) * (m - grand);
    return std::sqrt(ss / static_cast<double>(batches - 1) / static_cast<double>(batches));
}

std::vector<ScalingRow> verify_scaling_1d(double y, double t,
                                          const std::vector<double>& temperatures,
                                          std::size_t n_samples, std::uint64_t seed,
                                          const ScalingOptions& opts) {
    require(t > 0.0, "t must be positive");
    require(!temperatures.empty(), "need at least one temperature");
    require(n_samples > 0, "need at least one sample");
    const Regime regime = classify_regime(y, t);
    // Work with |y| and reflect the chain: X_T(-y, t) has the law of -X_T(y, t).
    const double reflect = y < 0.0 ? -1.0 : 1.0;
    const double ay = std::abs(y);
    const double x_star = soft_threshold(ay, t);
    const auto law = LimitLaw1D::for_data(ay, t);

    std::vector<ScalingRow> rows(temperatures.size());
    parallel_for(temperatures.size(), opts.threads, [&](std::size_t idx) {
        const double temp = temperatures[idx];
        require(temp > 0.0, "temperatures must be positive");
        const double scale = regime == Regime::interior ? temp * std::sqrt(m2(ay / t))
                                                        : std::sqrt(t * temp);
        const double sigma2 = opts.proposal_sigma2.value_or(2.4 * 2.4 * scale * scale);
        const std::uint64_t chain_seed = derive_seed(seed, idx);

        MhConfig pilot;
        pilot.temperature = temp;
        pilot.proposal_sigma2 = sigma2;
        pilot.chain_length = opts.pilot_length.value_or(20000);
        pilot.burn_in = pilot.chain_length / 10;
        pilot.seed = derive_seed(chain_seed, streams::pilot);
        pilot.initial_state = Vector::Constant(1, reflect * x_star);
        const auto pilot_samples = mh_chain_1d(y, t, pilot);
        const std::size_t thin = thinning_for(pilot_samples, opts.autocorrelation_threshold);

        MhConfig run = pilot;
        const std::size_t kept = n_samples * thin;
        run.burn_in = std::max<std::size_t>(kept / 9, 1);
        run.chain_length = run.burn_in + kept;
        run.seed = chain_seed;
        double acceptance = 0.0;
        const auto samples = mh_chain_1d(y, t, run, &acceptance);

        ScalingRow row;
        row.temperature = temp;
        row.regime = regime;
        row.thinning = thin;
        row.acceptance_rate = acceptance;
        std::vector<double> rescaled;
        rescaled.reserve(n_samples);
        std::size_t negative = 0;
        std::size_t positive = 0;
        for (std::size_t k = thin - 1; k < samples.size(); k += thin) {
            const double x = reflect * samples[k];
            if (x < 0.0) ++negative;
            if (x > 0.0) ++positive;
            switch (regime) {
                case Regime::interior: rescaled.push_back(x / temp); break;
                case Regime::boundary:
                    if (x > 0.0) rescaled.push_back(x / std::sqrt(temp));
                    break;
                case Regime::exterior: rescaled.push_back((x - x_star) / std::sqrt(temp)); break;
            }
        }
        const double thinned = static_cast<double>(negative + positive);
        row.negative_event_frequency = thinned > 0 ? static_cast<double>(negative) / thinned : 0.0;
        row.positive_event_frequency = thinned > 0 ? static_cast<double>(positive) / thinned : 0.0;
        if (rescaled.empty()) throw NumericalError("no samples in the rescaled branch");
        std::sort(rescaled.begin(), rescaled.end());
        row.samples = rescaled.size();
        row.ks = ks_statistic(rescaled, [&](double v) { return law.cdf(v); });
        rows[idx] = row;
    });
    return rows;
}

namespace {

struct Axis {
    std::vector<double> edges;  // bins + 1 increasing values
};

double interior_quantile(double u, double p) {
    // u may be negative: X(-u) = -X(u)
    if (u < 0.0) return -interior_quantile(-u, 1.0 - p);
    const double left_mass = 0.5 * (1.0 - u);
    if (p < left_mass) return std::log(p / left_mass) / (1.0 + u);
    return -std::log((1.0 - p) / (0.5 * (1.0 + u))) / (1.0 - u);
}

Axis fast_axis(double xi, std::size_t bins) {
    Axis axis;
    axis.edges.push_back(interior_quantile(xi, 1e-7));
    for (std::size_t k = 1; k < bins; ++k)
        axis.edges.push_back(interior_quantile(xi, static_cast<double>(k) / static_cast<double>(bins)));
    axis.edges.push_back(interior_quantile(xi, 1.0 - 1e-7));
    return axis;
}

Axis slow_axis(double sd, std::size_t bins, double half_line_sign) {
    boost::math::normal_distribution<double> normal(0.0, sd);
    Axis axis;
    if (half_line_sign == 0.0) {
        axis.edges.push_back(-5.5 * sd);
        for (std::size_t k = 1; k < bins; ++k)
            axis.edges.push_back(
                boost::math::quantile(normal, static_cast<double>(k) / static_cast<double>(bins)));
        axis.edges.push_back(5.5 * sd);
        return axis;
    }
    std::vector<double> mags{0.0};
    for (std::size_t k = 1; k < bins; ++k)
        mags.push_back(boost::math::quantile(
            normal, 0.5 + 0.5 * static_cast<double>(k) / static_cast<double>(bins)));
    mags.push_back(5.5 * sd);
    for (double m : mags) axis.edges.push_back(half_line_sign * m);
    std::sort(axis.edges.begin(), axis.edges.end());
    return axis;
}

}  // namespace

ChiSquareResult limit_chi_square(const Problem& problem, const PlseSolution& solution,
                                 const std::vector<RescaledSample>& samples,
                                 std::size_t bins_per_axis, std::size_t refine) {
    require(solution.unique, "chi-square test needs a certified unique solution");
    require(bins_per_axis >= 2 && refine >= 1, "need at least two bins and one sub-point");
    const auto fast_idx = solution.partition.interior_zero_set();
    const auto slow_idx = solution.partition.certificate_set();
    const auto& boundary = solution.partition.boundary;
    const std::size_t dims = fast_idx.size() + slow_idx.size();

    std::vector<Axis> axes;
    for (auto i : fast_idx) axes.push_back(fast_axis(solution.xi(static_cast<Eigen::Index>(i)), bins_per_axis));
    if (!slow_idx.empty()) {
        Matrix sub(problem.rows(), static_cast<Eigen::Index>(slow_idx.size()));
        for (std::size_t k = 0; k < slow_idx.size(); ++k)
            sub.col(static_cast<Eigen::Index>(k)) = problem.a().col(static_cast<Eigen::Index>(slow_idx[k]));
        const Matrix cov = problem.t() * (sub.transpose() * sub).inverse();
        for (std::size_t k = 0; k < slow_idx.size(); ++k) {
            const auto j = slow_idx[k];
            const bool on_boundary = std::binary_search(boundary.begin(), boundary.end(), j);
            const double side = on_boundary ? sign_of(solution.xi(static_cast<Eigen::Index>(j))) : 0.0;
            axes.push_back(slow_axis(std::sqrt(cov(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k))),
                                     bins_per_axis, side));
        }
    }

    std::size_t cells = 1;
    for (std::size_t d = 0; d < dims; ++d) cells *= bins_per_axis;

    // Expected cell masses by a product midpoint rule.
    std::vector<double> expected(cells, 0.0);
    std::vector<std::size_t> cell_digit(dims);
    std::vector<std::size_t> sub_digit(dims);
    std::vector<double> fast(fast_idx.size());
    std::vector<double> slow(slow_idx.size());
    std::size_t sub_points = 1;
    for (std::size_t d = 0; d < dims; ++d) sub_points *= refine;
    for (std::size_t c = 0; c < cells; ++c) {
        std::size_t rem = c;
        double volume = 1.0;
        for (std::size_t d = 0; d < dims; ++d) {
            cell_digit[d] = rem % bins_per_axis;
            rem /= bins_per_axis;
            volume *= (axes[d].edges[cell_digit[d] + 1] - axes[d].edges[cell_digit[d]]) /
                      static_cast<double>(refine);
        }
        double mass = 0.0;
        for (std::size_t s = 0; s < sub_points; ++s) {
            std::size_t srem = s;
            for (std::size_t d = 0; d < dims; ++d) {
                sub_digit[d] = srem % refine;
                srem /= refine;
                const double lo = axes[d].edges[cell_digit[d]];
                const double hi = axes[d].edges[cell_digit[d] + 1];
                const double v = lo + (hi - lo) * (static_cast<double>(sub_digit[d]) + 0.5) /
                                          static_cast<double>(refine);
                if (d < fast.size())
                    fast[d] = v;
                else
                    slow[d - fast.size()] = v;
            }
            mass += limit_density_nd(problem, solution, fast, slow);
        }
        expected[c] = mass * volume;
    }
    const double total = std::accumulate(expected.begin(), expected.end(), 0.0);
    if (!(total > 0.0)) throw NumericalError("limit density vanishes on the histogram grid");

    std::vector<double> observed(cells, 0.0);
    std::size_t used = 0;
    for (const auto& s : samples) {
        require(s.fast.size() == fast_idx.size() && s.slow.size() == slow_idx.size(),
                "rescaled sample does not match the partition");
        std::size_t c = 0;
        std::size_t stride = 1;
        bool inside = true;
        for (std::size_t d = 0; d < dims && inside; ++d) {
            const double v = d < fast.size() ? s.fast[d] : s.slow[d - fast.size()];
            const auto& e = axes[d].edges;
            if (v < e.front() || v >= e.back()) {
                inside = false;
                break;
            }
            const auto bin = static_cast<std::size_t>(std::upper_bound(e.begin(), e.end(), v) - e.begin()) - 1;
            c += bin * stride;
            stride *= bins_per_axis;
        }
        if (!inside) continue;
        observed[c] += 1.0;
        ++used;
    }
    require(used > 0, "no samples fall inside the histogram grid");

    const double n = static_cast<double>(used);
    std::vector<std::pair<double, double>> kept;  // (expected count, observed count)
    double pool_e = 0.0;
    double pool_o = 0.0;
    for (std::size_t c = 0; c < cells; ++c) {
        const double e = expected[c] / total * n;
        if (e < 5.0) {
            pool_e += e;
            pool_o += observed[c];
        } else {
            kept.emplace_back(e, observed[c]);
        }
    }
    if (pool_e >= 5.0) {
        kept.emplace_back(pool_e, pool_o);
    } else if (pool_e > 0.0 && !kept.empty()) {
        auto smallest = std::min_element(kept.begin(), kept.end());
        smallest->first += pool_e;
        smallest->second += pool_o;
    }
    require(kept.size() >= 2, "too few populated cells for a chi-square test");

    ChiSquareResult out;
    for (const auto& [e, o] : kept) out.statistic += (o - e) * (o - e) / e;
    out.dof = kept.size() - 1;
    out.samples_used = used;
    boost::math::chi_squared_distribution<double> dist(static_cast<double>(out.dof));
    out.p_value = boost::math::cdf(boost::math::complement(dist, out.statistic));
    return out;
}

}  // namespace bpdn

namespace bpdn {

LimitDensityCheck verify_limit_density(const Problem& problem, double temperature,
                                       std::size_t n_samples, std::uint64_t seed,
                                       const ScalingOptions& opts, std::size_t bins_per_axis,
                                       std::size_t refine) {
    require(temperature > 0.0, "temperature must be positive");
    require(n_samples > 0, "need at least one sample");
    LimitDensityCheck out;
    out.solution = solve(problem);
    const auto& sol = out.solution;
    require(sol.unique, "limit density check needs a certified unique solution");

    const auto fast_idx = sol.partition.interior_zero_set();
    const double dim = static_cast<double>(problem.cols());
    double scale = 0.0;
    if (!fast_idx.empty()) {
        for (auto i : fast_idx)
            scale = std::max(scale, temperature *
                                        std::sqrt(m2(std::abs(sol.xi(static_cast<Eigen::Index>(i))))));
    } else {
        scale = std::sqrt(problem.t() * temperature) / std::sqrt(gram_spectral_norm(problem.a()));
    }
    out.proposal_sigma2 = opts.proposal_sigma2.value_or(2.4 * 2.4 * scale * scale / dim);

    MhConfig pilot;
    pilot.temperature = temperature;
    pilot.proposal_sigma2 = out.proposal_sigma2;
    pilot.chain_length = opts.pilot_length.value_or(1000000);
    pilot.burn_in = pilot.chain_length / 10;
    pilot.seed = derive_seed(seed, streams::pilot);
    pilot.initial_state = sol.x_star;
    const auto pilot_chain = mh_chain(problem, pilot);
    std::size_t thin = 1;
    for (std::size_t i = 0; i < pilot_chain.dim(); ++i)
        thin = std::max(thin,
                        thinning_for(pilot_chain.component(i), opts.autocorrelation_threshold));
    out.thinning = thin;

    MhConfig run = pilot;
    const std::size_t kept = n_samples * thin;
    run.burn_in = std::max<std::size_t>(kept / 9, 1);
    run.chain_length = run.burn_in + kept;
    run.seed = seed;
    const auto chain = mh_chain(problem, run);
    out.acceptance_rate = chain.acceptance_rate();

    const auto all = rescale_samples(chain, sol, temperature);
    std::vector<RescaledSample> thinned;
    thinned.reserve(n_samples);
    for (std::size_t k = thin - 1; k < all.size(); k += thin) thinned.push_back(all[k]);
    out.chi_square = limit_chi_square(problem, sol, thinned, bins_per_axis, refine);
    return out;
}

}  // namespace bpdn
