#include "bpdn/fista.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace bpdn {

using detail::require;

void SolverOptions::validate() const {
    require(max_iterations > 0, "max_iterations must be positive");
    require(gradient_tolerance > 0.0, "gradient_tolerance must be positive");
    require(support_tolerance > 0.0, "support_tolerance must be positive");
    require(certificate_tolerance > 0.0, "certificate_tolerance must be positive");
}

const char* to_string(Membership m) noexcept {
    switch (m) {
        case Membership::support: return "S";
        case Membership::zero: return "I0";
        case Membership::boundary: return "dI0";
    }
    return "?";
}

Membership SupportPartition::membership(std::size_t i) const {
    if (std::binary_search(support.begin(), support.end(), i)) return Membership::support;
    if (std::binary_search(boundary.begin(), boundary.end(), i)) return Membership::boundary;
    if (std::binary_search(zero_set.begin(), zero_set.end(), i)) return Membership::zero;
    throw InvalidArgument("index outside the support partition");
}

std::vector<std::size_t> SupportPartition::interior_zero_set() const {
    std::vector<std::size_t> out;
    std::set_difference(zero_set.begin(), zero_set.end(), boundary.begin(), boundary.end(),
                        std::back_inserter(out));
    return out;
}

std::vector<std::size_t> SupportPartition::certificate_set() const {
    std::vector<std::size_t> out;
    std::set_union(support.begin(), support.end(), boundary.begin(), boundary.end(),
                   std::back_inserter(out));
    return out;
}

double gram_spectral_norm(const Matrix& a) {
    Vector v = Vector::Ones(a.cols()).normalized();
    double lambda = 0.0;
    for (int k = 0; k < 50; ++k) {
        Vector w = a.transpose() * (a * v);
        const double next = v.dot(w);
        const double norm = w.norm();
        if (norm == 0.0) {
            // v landed in the null space; restart from a generic direction.
            v = Vector::LinSpaced(a.cols(), 1.0, 2.0).normalized();
            continue;
        }
        v = w / norm;
        const bool converged = k > 0 && std::abs(next - lambda) <= 1e-10 * std::abs(next);
        lambda = next;
        if (converged) break;
    }
    // Rayleigh quotient of the final direction.
    return std::max(lambda, (a * v).squaredNorm());
}

Vector dual_vector(const Problem& problem, const VectorRef& x) {
    require(x.size() == problem.cols(), "dual_vector: dimension of x must equal p");
    return problem.a().transpose() * (problem.y() - problem.a() * x) / problem.t();
}

SupportPartition classify_support(const VectorRef& x_star, const VectorRef& xi,
                                  const SolverOptions& opts) {
    require(x_star.size() == xi.size(), "classify_support: dimension mismatch");
    SupportPartition part;
    for (Eigen::Index i = 0; i < x_star.size(); ++i) {
        const auto idx = static_cast<std::size_t>(i);
        if (std::abs(x_star(i)) > opts.support_tolerance) {
            part.support.push_back(idx);
        } else {
            part.zero_set.push_back(idx);
            if (std::abs(xi(i)) >= 1.0 - opts.certificate_tolerance) part.boundary.push_back(idx);
        }
    }
    return part;
}

bool uniqueness_certificate(const Problem& problem, const SupportPartition& partition) {
    const auto cols = partition.certificate_set();
    if (cols.empty()) return true;
    Matrix sub(problem.rows(), static_cast<Eigen::Index>(cols.size()));
    for (std::size_t k = 0; k < cols.size(); ++k)
        sub.col(static_cast<Eigen::Index>(k)) = problem.a().col(static_cast<Eigen::Index>(cols[k]));
    const Matrix gram = sub.transpose() * sub;
    Eigen::JacobiSVD<Matrix> svd(gram);
    const auto& s = svd.singularValues();
    const double largest = s(0);
    const double smallest = s(s.size() - 1);
    if (largest == 0.0) return false;
    const double p = static_cast<double>(problem.cols());
    return smallest > p * std::numeric_limits<double>::epsilon() * largest;
}

bool uniqueness_certificate(const Problem& problem, const PlseSolution& solution) {
    return uniqueness_certificate(problem, solution.partition);
}

double objective_gap(const Problem& problem, const PlseSolution& solution, const VectorRef& x) {
    return objective_gap(problem, solution.x_star, solution.xi, x);
}

namespace {

void soft_threshold_inplace(Vector& v, double threshold) {
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        const double z = v(i);
        v(i) = z > threshold ? z - threshold : (z < -threshold ? z + threshold : 0.0);
    }
}

}  // namespace

PlseSolution solve(const Problem& problem, const SolverOptions& opts,
                   const std::optional<Vector>& start) {
    opts.validate();
    const auto p = problem.cols();
    const Matrix& a = problem.a();
    const Vector aty = a.transpose() * problem.y();
    const Matrix gram = a.transpose() * a;
    const double t = problem.t();

    const double lipschitz = gram_spectral_norm(a) / t;
    const double step = 1.0 / lipschitz;

    Vector x = Vector::Zero(p);
    if (start) {
        require(start->size() == p, "solve: start point has wrong dimension");
        x = *start;
    }
    Vector x_prev = x;
    Vector extrapolated = x;
    Vector candidate(p);
    double momentum = 1.0;
    double mapping_norm = std::numeric_limits<double>::infinity();

    std::size_t iter = 0;
    for (; iter < opts.max_iterations; ++iter) {
        // gradient of ||A z - y||^2 / (2t) at the extrapolated point
        candidate = extrapolated - step * ((gram * extrapolated - aty) / t);
        soft_threshold_inplace(candidate, step);
        mapping_norm = (extrapolated - candidate).norm() * lipschitz;
        if (!std::isfinite(mapping_norm))
            throw SolveError("FISTA diverged (non-finite iterate)", candidate, mapping_norm);

        x_prev.swap(x);
        x = candidate;
        if (mapping_norm <= opts.gradient_tolerance) break;

        const double next_momentum = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * momentum * momentum));
        extrapolated = x + ((momentum - 1.0) / next_momentum) * (x - x_prev);
        momentum = next_momentum;
    }
    if (iter == opts.max_iterations)
        throw SolveError("FISTA did not reach the gradient tolerance within max_iterations", x,
                         mapping_norm);

    PlseSolution sol;
    sol.x_star = x;
    for (Eigen::Index i = 0; i < p; ++i)
        if (std::abs(sol.x_star(i)) <= opts.support_tolerance) sol.x_star(i) = 0.0;
    sol.xi = dual_vector(problem, sol.x_star);
    sol.m = objective(problem, sol.x_star);
    sol.partition = classify_support(sol.x_star, sol.xi, opts);
    sol.unique = uniqueness_certificate(problem, sol.partition);
    sol.tolerance_used = opts.certificate_tolerance;
    sol.iterations = iter + 1;
    sol.gradient_mapping_norm = mapping_norm;
    return sol;
}

}  // namespace bpdn
