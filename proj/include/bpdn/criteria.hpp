#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "bpdn/asymptotics.hpp"
#include "bpdn/gibbs.hpp"

namespace bpdn {

/// Distribution of the data points y fed to the criteria.
///   Beta(alpha, beta)    draws u = y / t in (0, 1)
///   Pareto(alpha, scale) draws y >= scale, density alpha scale^alpha / y^(alpha + 1)
struct DesignDistribution {
    enum class Kind { beta, pareto };
    Kind kind = Kind::beta;
    double alpha = 1.0;
    double second = 3.0;  ///< beta for Beta, scale for Pareto

    static DesignDistribution beta(double alpha, double beta);
    static DesignDistribution pareto(double alpha, double scale);

    /// Inverse-CDF sampling when closed forms exist (Beta(1, b), Beta(a, 1),
    /// Pareto); other Beta parameters fall back to boost's inverse
    /// incomplete beta function.
    double sample(Rng& rng) const;
};

/// Where criterion chains start: the origin, the data point y, or soft(y, t).
enum class ChainStart { zero, data, solution };

const char* to_string(ChainStart s) noexcept;
ChainStart parse_chain_start(const std::string& name);

/// Run parameters shared by every criterion (Tables 1-3 use t = 1, T = 0.1,
/// N = 5000, M = 600).
struct CriterionRun {
    double t = 1.0;
    double temperature = 0.1;
    std::size_t chain_length = 5000;
    std::size_t replicates = 600;
    std::size_t burn_in = 0;
    std::uint64_t seed = 1;
    ProposalKind proposal = ProposalKind::random_walk;
    ChainStart start = ChainStart::solution;
    unsigned threads = 1;
    /// Design for the interior (Beta(1,3)) and exterior (Pareto(3, t)) regimes.
    std::optional<DesignDistribution> interior_design;
    std::optional<DesignDistribution> exterior_design;

    void validate() const;
    DesignDistribution interior_design_or_default() const;
    DesignDistribution exterior_design_or_default() const;
};

/// Produces the chain theta^(1..N) targeting the 1D Gibbs measure at data y.
/// Replaceable so tests can plug exact samplers in place of MH.
using ChainSampler = std::function<std::vector<double>(
    double y, double sigma2, const CriterionRun& run, std::uint64_t chain_seed)>;

/// Random-walk (or independence) MH as configured by `run`.
ChainSampler mh_sampler();

/// Draws N independent samples from the limit-law approximation of X_T(y, t):
/// T X(y, t) (interior), sqrt(T) |N(0, t)| (boundary), y - t + sqrt(T) N(0, t)
/// (exterior).
ChainSampler limit_law_sampler();

struct CriterionValue {
    double f1 = 0.0;
    double f2 = 0.0;
};

/// Both criteria for one proposal variance, from the same chains.
/// Interior and exterior average over `replicates` design points; the boundary
/// criteria average |.| over `replicates` chains at y = t.
CriterionValue evaluate_criteria(Regime regime, double sigma2, const CriterionRun& run,
                                 const ChainSampler& sampler = mh_sampler());

double f1_interior(double sigma2, const CriterionRun& run, const ChainSampler& s = mh_sampler());
double f2_interior(double sigma2, const CriterionRun& run, const ChainSampler& s = mh_sampler());
double f1_boundary(double sigma2, const CriterionRun& run, const ChainSampler& s = mh_sampler());
double f2_boundary(double sigma2, const CriterionRun& run, const ChainSampler& s = mh_sampler());
double f1_exterior(double sigma2, const CriterionRun& run, const ChainSampler& s = mh_sampler());
double f2_exterior(double sigma2, const CriterionRun& run, const ChainSampler& s = mh_sampler());

/// Per-chain terms, exposed for tests.
double boundary_bias_term(const std::vector<double>& chain, double t, double temperature);

struct ProposalFamily {
    std::vector<double> variances;
    void validate() const;
};

struct CriterionRow {
    double sigma2;
    double f1;
    double f2;
    double sum() const { return f1 + f2; }
};

struct CriterionReport {
    Regime regime = Regime::interior;
    std::vector<CriterionRow> rows;
    double best_sigma2 = 0.0;
    CriterionRun run;
};

/// f1, f2 per variance; best = argmin(f1 + f2), ties toward the smaller variance.
/// All variances see the same design points and chain seeds (paired design).
CriterionReport rank_proposals(const ProposalFamily& family, Regime regime,
                               const CriterionRun& run, const ChainSampler& sampler = mh_sampler());

}  // namespace bpdn
