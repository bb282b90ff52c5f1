#include "bpdn/gibbs.hpp"

#include <cmath>
#include <iostream>
#include <sstream>

#include "bpdn/error.hpp"
#include "bpdn/rng.hpp"

namespace bpdn {

using detail::require;

const char* to_string(ProposalKind kind) noexcept {
    return kind == ProposalKind::random_walk ? "random-walk" : "independence";
}

ProposalKind parse_proposal_kind(const std::string& name) {
    if (name == "random-walk" || name == "rw") return ProposalKind::random_walk;
    if (name == "independence" || name == "indep") return ProposalKind::independence;
    throw InvalidArgument("unknown proposal kind: " + name);
}

void MhConfig::validate(Eigen::Index dim) const {
    require(std::isfinite(temperature) && temperature > 0.0, "temperature must be positive");
    require(std::isfinite(proposal_sigma2) && proposal_sigma2 > 0.0,
            "proposal variance must be positive");
    require(chain_length > 0, "chain length must be positive");
    require(burn_in < chain_length, "burn-in must be shorter than the chain");
    require(initial_state.size() == 0 || initial_state.size() == dim,
            "initial state has wrong dimension");
}

void AnnealConfig::validate(Eigen::Index dim) const {
    require(std::isfinite(beta0) && beta0 > 0.0, "beta0 must be positive");
    require(std::isfinite(q) && q > 1.0, "tempering ratio q must exceed 1");
    require(std::isfinite(proposal_sigma2) && proposal_sigma2 > 0.0,
            "proposal variance must be positive");
    require(chain_length > 0, "chain length must be positive");
    require(initial_state.size() == 0 || initial_state.size() == dim,
            "initial state has wrong dimension");
}

ChainResult::ChainResult(std::size_t dim, std::variant<MhConfig, AnnealConfig> config)
    : dim_(dim), config_(std::move(config)) {}

std::span<const double> ChainResult::state(std::size_t k) const {
    require(k < size(), "chain state index out of range");
    return {values_.data() + k * dim_, dim_};
}

std::vector<double> ChainResult::component(std::size_t i) const {
    require(i < dim_, "chain component index out of range");
    std::vector<double> out(size());
    for (std::size_t k = 0; k < out.size(); ++k) out[k] = values_[k * dim_ + i];
    return out;
}

double ChainResult::acceptance_rate() const noexcept {
    return proposed_ ? static_cast<double>(accepted_) / static_cast<double>(proposed_) : 0.0;
}

std::uint64_t ChainResult::seed() const noexcept {
    return std::visit([](const auto& c) { return c.seed; }, config_);
}

class ChainBuilder {
public:
    static std::vector<double>& values(ChainResult& r) { return r.values_; }
    static std::vector<double>& temperatures(ChainResult& r) { return r.temperatures_; }
    static void counts(ChainResult& r, std::size_t accepted, std::size_t proposed) {
        r.accepted_ = accepted;
        r.proposed_ = proposed;
    }
};

namespace {

[[noreturn]] void throw_non_finite(const Vector& state) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "objective is not finite at state (";
    for (Eigen::Index i = 0; i < state.size(); ++i) msg << (i ? ", " : "") << state(i);
    msg << ")";
    throw NumericalError(msg.str());
}

/// Shared Metropolis-Hastings loop. `temperature_at(n)` gives T for the n-th
/// transition (n = 1..length); `record(k, state, T)` stores post-transition
/// states. Per step the RNG supplies dim normals, then one uniform.
template <class Objective, class TemperatureAt, class Record>
void run_kernel(const Objective& energy, Vector state, std::size_t length, double sigma2,
                ProposalKind kind, std::uint64_t seed, const TemperatureAt& temperature_at,
                const Record& record, std::size_t& accepted) {
    Rng rng(seed);
    const double sigma = std::sqrt(sigma2);
    const Eigen::Index dim = state.size();
    Vector candidate(dim);
    double energy_now = energy(state);
    if (!std::isfinite(energy_now)) throw_non_finite(state);
    accepted = 0;
    for (std::size_t n = 1; n <= length; ++n) {
        for (Eigen::Index i = 0; i < dim; ++i) {
            const double z = sigma * rng.normal();
            candidate(i) = kind == ProposalKind::random_walk ? state(i) + z : z;
        }
        const double energy_next = energy(candidate);
        if (!std::isfinite(energy_next)) throw_non_finite(candidate);
        const double temp = temperature_at(n);
        double log_ratio = -(energy_next - energy_now) / temp;
        if (kind == ProposalKind::independence)
            log_ratio += (candidate.squaredNorm() - state.squaredNorm()) / (2.0 * sigma2);
        const double u = rng.uniform();
        if (log_ratio >= 0.0 || std::log(u) < log_ratio) {
            state.swap(candidate);
            energy_now = energy_next;
            ++accepted;
        }
        record(n - 1, state, temp);
    }
}

Vector initial_or_zero(const Vector& init, Eigen::Index dim) {
    return init.size() == 0 ? Vector::Zero(dim) : init;
}

}  // namespace

ChainResult mh_chain(const Problem& problem, const MhConfig& config) {
    const auto dim = problem.cols();
    config.validate(dim);
    ChainResult result(static_cast<std::size_t>(dim), config);
    auto& values = ChainBuilder::values(result);
    values.reserve((config.chain_length - config.burn_in) * static_cast<std::size_t>(dim));

    Vector residual(problem.rows());
    const auto energy = [&](const Vector& x) {
        residual.noalias() = problem.a() * x;
        residual -= problem.y();
        return x.lpNorm<1>() + residual.squaredNorm() / (2.0 * problem.t());
    };
    const auto record = [&](std::size_t k, const Vector& x, double) {
        if (k >= config.burn_in) values.insert(values.end(), x.data(), x.data() + x.size());
    };
    std::size_t accepted = 0;
    run_kernel(energy, initial_or_zero(config.initial_state, dim), config.chain_length,
               config.proposal_sigma2, config.proposal, config.seed,
               [&](std::size_t) { return config.temperature; }, record, accepted);
    ChainBuilder::temperatures(result).assign(result.size(), config.temperature);
    ChainBuilder::counts(result, accepted, config.chain_length);
    return result;
}

ChainResult sa_chain(const Problem& problem, const AnnealConfig& config) {
    const auto dim = problem.cols();
    config.validate(dim);
    ChainResult result(static_cast<std::size_t>(dim), config);
    auto& values = ChainBuilder::values(result);
    auto& temps = ChainBuilder::temperatures(result);
    values.reserve(config.chain_length * static_cast<std::size_t>(dim));
    temps.reserve(config.chain_length);

    Vector residual(problem.rows());
    const auto energy = [&](const Vector& x) {
        residual.noalias() = problem.a() * x;
        residual -= problem.y();
        return x.lpNorm<1>() + residual.squaredNorm() / (2.0 * problem.t());
    };
    const auto record = [&](std::size_t, const Vector& x, double temp) {
        values.insert(values.end(), x.data(), x.data() + x.size());
        temps.push_back(temp);
    };
    std::size_t accepted = 0;
    run_kernel(energy, initial_or_zero(config.initial_state, dim), config.chain_length,
               config.proposal_sigma2, config.proposal, config.seed,
               [&](std::size_t n) { return anneal_temperature(config.beta0, config.q, n); },
               record, accepted);
    ChainBuilder::counts(result, accepted, config.chain_length);
    return result;
}

std::vector<double> mh_chain_1d(double y, double t, const MhConfig& config,
                                double* acceptance_rate) {
    require(t > 0.0, "t must be positive");
    config.validate(1);
    std::vector<double> samples;
    samples.reserve(config.chain_length - config.burn_in);
    const double two_t = 2.0 * t;
    const auto energy = [&](const Vector& x) {
        const double r = x(0) - y;
        return std::abs(x(0)) + r * r / two_t;
    };
    const auto record = [&](std::size_t k, const Vector& x, double) {
        if (k >= config.burn_in) samples.push_back(x(0));
    };
    std::size_t accepted = 0;
    run_kernel(energy, initial_or_zero(config.initial_state, 1), config.chain_length,
               config.proposal_sigma2, config.proposal, config.seed,
               [&](std::size_t) { return config.temperature; }, record, accepted);
    if (acceptance_rate)
        *acceptance_rate = static_cast<double>(accepted) / static_cast<double>(config.chain_length);
    return samples;
}

double anneal_temperature(double beta0, double q, std::size_t n) {
    return 1.0 / (beta0 * std::pow(q, static_cast<double>(n)));
}

std::size_t sa_iterations(double t0, double t_target, double q) {
    require(t0 > 0.0 && t_target > 0.0, "temperatures must be positive");
    require(q > 1.0, "tempering ratio q must exceed 1");
    require(t_target <= t0, "target temperature must not exceed the initial temperature");
    if (t_target == t0) {
        std::clog << "warning: target temperature equals the initial temperature; "
                     "no annealing steps needed\n";
        return 0;
    }
    return static_cast<std::size_t>(std::ceil(std::log(t0 / t_target) / std::log(q)));
}

}  // namespace bpdn
