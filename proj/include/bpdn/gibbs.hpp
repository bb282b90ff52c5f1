#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <variant>
#include <vector>

#include "bpdn/problem.hpp"

namespace bpdn {

/// How candidate states are generated.
///   random_walk:  x' = x + N(0, sigma2 I); Hastings ratio exp(-(F(x') - F(x)) / T).
///   independence: x' ~ N(0, sigma2 I) regardless of x; the ratio carries the
///                 proposal density correction.
enum class ProposalKind { random_walk, independence };

const char* to_string(ProposalKind kind) noexcept;
ProposalKind parse_proposal_kind(const std::string& name);

/// Metropolis-Hastings run targeting exp(-F(x) / T).
struct MhConfig {
    double temperature = 1.0;
    double proposal_sigma2 = 1.0;
    std::size_t chain_length = 1000;
    std::size_t burn_in = 0;
    std::uint64_t seed = 0;
    Vector initial_state;  ///< empty means the zero vector
    ProposalKind proposal = ProposalKind::random_walk;

    void validate(Eigen::Index dim) const;
};

/// Simulated annealing with geometric tempering beta_n = beta0 q^n, T_n = 1 / beta_n.
struct AnnealConfig {
    double beta0 = 1.0;
    double q = 1.001;
    std::size_t chain_length = 1000;
    double proposal_sigma2 = 1.0;
    std::uint64_t seed = 0;
    Vector initial_state;
    ProposalKind proposal = ProposalKind::random_walk;

    void validate(Eigen::Index dim) const;
};

/// States of a chain, stored row-major: state k occupies values[k*dim, (k+1)*dim).
class ChainResult {
public:
    ChainResult(std::size_t dim, std::variant<MhConfig, AnnealConfig> config);

    std::size_t dim() const noexcept { return dim_; }
    std::size_t size() const noexcept { return dim_ ? values_.size() / dim_ : 0; }
    std::span<const double> state(std::size_t k) const;
    /// Component i across all states (copied).
    std::vector<double> component(std::size_t i) const;
    const std::vector<double>& values() const noexcept { return values_; }
    /// Temperature attached to each stored state; T constant for MH chains.
    const std::vector<double>& temperatures() const noexcept { return temperatures_; }

    std::size_t accepted() const noexcept { return accepted_; }
    std::size_t proposed() const noexcept { return proposed_; }
    /// accepted / proposed over the whole run (burn-in included).
    double acceptance_rate() const noexcept;
    std::uint64_t seed() const noexcept;
    const std::variant<MhConfig, AnnealConfig>& config() const noexcept { return config_; }

private:
    friend class ChainBuilder;

    std::size_t dim_;
    std::vector<double> values_;
    std::vector<double> temperatures_;
    std::size_t accepted_ = 0;
    std::size_t proposed_ = 0;
    std::variant<MhConfig, AnnealConfig> config_;
};

/// Random-walk (or independence) Metropolis-Hastings at fixed temperature.
/// Records the state after each of the chain_length transitions and returns
/// those with index >= burn_in. Deterministic given the seed.
ChainResult mh_chain(const Problem& problem, const MhConfig& config);

/// Same kernel with temperature T_n = 1 / (beta0 q^n) at transition n = 1..N.
/// Returns the full trajectory together with the temperature of each step.
ChainResult sa_chain(const Problem& problem, const AnnealConfig& config);

/// T_n = 1 / (beta0 q^n).
double anneal_temperature(double beta0, double q, std::size_t n);

/// Number of geometric steps from t0 down to t_target: ceil(ln(t0 / t_target) / ln q).
/// Returns 0 (with a warning on stderr) when t_target == t0.
std::size_t sa_iterations(double t0, double t_target, double q);

/// Faster path used by the 1D experiments; identical output to mh_chain on
/// scalar_problem(y, t) with the same config, but returns the raw samples.
std::vector<double> mh_chain_1d(double y, double t, const MhConfig& config,
                                double* acceptance_rate = nullptr);

}  // namespace bpdn
