#include "bpdn/criteria.hpp"

#include <algorithm>
#include <boost/math/special_functions/beta.hpp>
#include <cmath>
#include <numbers>
#include <numeric>
#include <set>

#include "bpdn/error.hpp"
#include "bpdn/parallel.hpp"

namespace bpdn {

using detail::require;

DesignDistribution DesignDistribution::beta(double alpha, double beta) {
    require(alpha > 0.0 && beta > 0.0, "Beta parameters must be positive");
    return {Kind::beta, alpha, beta};
}

DesignDistribution DesignDistribution::pareto(double alpha, double scale) {
    require(alpha > 0.0 && scale > 0.0, "Pareto parameters must be positive");
    return {Kind::pareto, alpha, scale};
}

double DesignDistribution::sample(Rng& rng) const {
    const double v = rng.uniform();
    if (kind == Kind::pareto) return second * std::pow(v, -1.0 / alpha);
    if (alpha == 1.0) return 1.0 - std::pow(1.0 - v, 1.0 / second);
    if (second == 1.0) return std::pow(v, 1.0 / alpha);
    return boost::math::ibeta_inv(alpha, second, v);
}

void CriterionRun::validate() const {
    require(t > 0.0, "t must be positive");
    require(temperature > 0.0, "temperature must be positive");
    require(chain_length > 0, "chain length must be positive");
    require(replicates > 0, "replicate count must be positive");
    require(burn_in < chain_length, "burn-in must be shorter than the chain");
}

DesignDistribution CriterionRun::interior_design_or_default() const {
    return interior_design.value_or(DesignDistribution::beta(1.0, 3.0));
}

DesignDistribution CriterionRun::exterior_design_or_default() const {
    return exterior_design.value_or(DesignDistribution::pareto(3.0, t));
}

const char* to_string(ChainStart s) noexcept {
    switch (s) {
        case ChainStart::zero: return "zero";
        case ChainStart::data: return "data";
        case ChainStart::solution: return "solution";
    }
    return "?";
}

ChainStart parse_chain_start(const std::string& name) {
    if (name == "zero") return ChainStart::zero;
    if (name == "data") return ChainStart::data;
    if (name == "solution") return ChainStart::solution;
    throw InvalidArgument("unknown chain start: " + name);
}

ChainSampler mh_sampler() {
    return [](double y, double sigma2, const CriterionRun& run, std::uint64_t chain_seed) {
        MhConfig cfg;
        cfg.temperature = run.temperature;
        cfg.proposal_sigma2 = sigma2;
        cfg.chain_length = run.chain_length;
        cfg.burn_in = run.burn_in;
        cfg.seed = chain_seed;
        cfg.proposal = run.proposal;
        if (run.start == ChainStart::data)
            cfg.initial_state = Vector::Constant(1, y);
        else if (run.start == ChainStart::solution)
            cfg.initial_state = Vector::Constant(1, soft_threshold(y, run.t));
        return mh_chain_1d(y, run.t, cfg);
    };
}

ChainSampler limit_law_sampler() {
    return [](double y, double, const CriterionRun& run, std::uint64_t chain_seed) {
        Rng rng(chain_seed);
        const double temp = run.temperature;
        const double sign = y < 0.0 ? -1.0 : 1.0;
        const auto law = LimitLaw1D::for_data(std::abs(y), run.t);
        const double shift = soft_threshold(std::abs(y), run.t);
        const double scale = law.regime() == Regime::interior ? temp : std::sqrt(temp);
        std::vector<double> out(run.chain_length - run.burn_in);
        for (auto& v : out) v = sign * (shift + scale * law.sample(rng));
        return out;
    };
}

namespace {

double mean_of(const std::vector<double>& v, double center = 0.0) {
    double s = 0.0;
    for (double x : v) s += x - center;
    return s / static_cast<double>(v.size());
}

double mean_square_of(const std::vector<double>& v, double center = 0.0) {
    double s = 0.0;
    for (double x : v) s += (x - center) * (x - center);
    return s / static_cast<double>(v.size());
}

/// Design points for the paired design: drawn once per (master seed, regime).
std::vector<double> design_points(const DesignDistribution& design, std::size_t count,
                                  std::uint64_t master) {
    Rng rng(derive_seed(master, streams::design));
    std::vector<double> out(count);
    for (auto& v : out) v = design.sample(rng);
    return out;
}

std::vector<double> checked_chain(const ChainSampler& sampler, double y, double sigma2,
                                  const CriterionRun& run, std::uint64_t seed) {
    auto chain = sampler(y, sigma2, run, seed);
    if (chain.empty()) throw NumericalError("chain sampler returned no states");
    return chain;
}

}  // namespace

double boundary_bias_term(const std::vector<double>& chain, double t, double temperature) {
    double sum = 0.0;
    std::size_t count = 0;
    for (double x : chain) {
        if (x > 0.0) {
            sum += x;
            ++count;
        }
    }
    if (count == 0) throw NumericalError("boundary chain has no positive states");
    return std::abs(sum / static_cast<double>(count) -
                    std::sqrt(2.0 * temperature * t / std::numbers::pi));
}

CriterionValue evaluate_criteria(Regime regime, double sigma2, const CriterionRun& run,
                                 const ChainSampler& sampler) {
    run.validate();
    require(sigma2 > 0.0, "proposal variance must be positive");
    const std::size_t m = run.replicates;
    const double temp = run.temperature;
    const double t = run.t;

    std::vector<double> points;
    if (regime == Regime::interior)
        points = design_points(run.interior_design_or_default(), m, run.seed);
    else if (regime == Regime::exterior)
        points = design_points(run.exterior_design_or_default(), m, run.seed);

    std::vector<CriterionValue> terms(m);
    parallel_for(m, run.threads, [&](std::size_t i) {
        const std::uint64_t seed = derive_seed(run.seed, i);
        switch (regime) {
            case Regime::interior: {
                // points[i] is u = y / t
                const double u = points[i];
                const auto chain = checked_chain(sampler, t * u, sigma2, run, seed);
                terms[i].f1 = std::abs(mean_of(chain) - temp * m1(u));
                terms[i].f2 = std::abs(mean_square_of(chain) - temp * temp * m2(u));
                break;
            }
            case Regime::boundary: {
                const auto chain = checked_chain(sampler, t, sigma2, run, seed);
                terms[i].f1 = boundary_bias_term(chain, t, temp);
                terms[i].f2 = std::abs(mean_square_of(chain) - temp * t);
                break;
            }
            case Regime::exterior: {
                const double y = points[i];
                const auto chain = checked_chain(sampler, y, sigma2, run, seed);
                const double center = y - t;
                terms[i].f1 = std::abs(mean_of(chain, center));
                terms[i].f2 = std::abs(mean_square_of(chain, center) - temp * t);
                break;
            }
        }
    });

    CriterionValue out;
    for (const auto& v : terms) {
        out.f1 += v.f1;
        out.f2 += v.f2;
    }
    out.f1 /= static_cast<double>(m);
    out.f2 /= static_cast<double>(m);
    return out;
}

double f1_interior(double sigma2, const CriterionRun& run, const ChainSampler& s) {
    return evaluate_criteria(Regime::interior, sigma2, run, s).f1;
}
double f2_interior(double sigma2, const CriterionRun& run, const ChainSampler& s) {
    return evaluate_criteria(Regime::interior, sigma2, run, s).f2;
}
double f1_boundary(double sigma2, const CriterionRun& run, const ChainSampler& s) {
    return evaluate_criteria(Regime::boundary, sigma2, run, s).f1;
}
double f2_boundary(double sigma2, const CriterionRun& run, const ChainSampler& s) {
    return evaluate_criteria(Regime::boundary, sigma2, run, s).f2;
}
double f1_exterior(double sigma2, const CriterionRun& run, const ChainSampler& s) {
    return evaluate_criteria(Regime::exterior, sigma2, run, s).f1;
}
double f2_exterior(double sigma2, const CriterionRun& run, const ChainSampler& s) {
    return evaluate_criteria(Regime::exterior, sigma2, run, s).f2;
}

void ProposalFamily::validate() const {
    require(!variances.empty(), "proposal family is empty");
    require(std::all_of(variances.begin(), variances.end(), [](double v) { return v > 0.0; }),
            "proposal variances must be positive");
    require(std::set<double>(variances.begin(), variances.end()).size() == variances.size(),
            "proposal variances must be distinct");
}

CriterionReport rank_proposals(const ProposalFamily& family, Regime regime,
                               const CriterionRun& run, const ChainSampler& sampler) {
    family.validate();
    CriterionReport report;
    report.regime = regime;
    report.run = run;
    for (double s2 : family.variances) {
        const auto v = evaluate_criteria(regime, s2, run, sampler);
        report.rows.push_back({s2, v.f1, v.f2});
    }
    const auto best = std::min_element(
        report.rows.begin(), report.rows.end(), [](const CriterionRow& a, const CriterionRow& b) {
            return a.sum() < b.sum() || (a.sum() == b.sum() && a.sigma2 < b.sigma2);
        });
    report.best_sigma2 = best->sigma2;
    return report;
}

}  // namespace bpdn
