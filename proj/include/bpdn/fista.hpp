#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "bpdn/error.hpp"
#include "bpdn/problem.hpp"

namespace bpdn {

struct SolverOptions {
    std::size_t max_iterations = 100000;
    /// Stop when ||G(x)|| <= gradient_tolerance, G the composite gradient mapping.
    double gradient_tolerance = 1e-10;
    /// |x_i| <= support_tolerance counts as zero.
    double support_tolerance = 1e-7;
    /// |xi_i| >= 1 - certificate_tolerance counts as saturated.
    double certificate_tolerance = 1e-6;

    void validate() const;
};

/// Which block of the support partition a coordinate belongs to.
enum class Membership { support, zero, boundary };

const char* to_string(Membership m) noexcept;

/// S (nonzero coordinates), I0 (zero coordinates) and dI0 (zero coordinates
/// whose certificate is saturated, a subset of I0). Indices are 0-based and
/// sorted.
struct SupportPartition {
    std::vector<std::size_t> support;
    std::vector<std::size_t> zero_set;
    std::vector<std::size_t> boundary;

    Membership membership(std::size_t i) const;
    /// I0 \ dI0.
    std::vector<std::size_t> interior_zero_set() const;
    /// S u dI0, sorted.
    std::vector<std::size_t> certificate_set() const;
};

struct PlseSolution {
    Vector x_star;
    Vector xi;   ///< A^T (y - A x_star) / t
    double m = 0.0;  ///< F(x_star)
    SupportPartition partition;
    bool unique = false;  ///< certified by the Gram test; false means "not certified"
    double tolerance_used = 0.0;  ///< certificate tolerance used to build dI0
    std::size_t iterations = 0;
    double gradient_mapping_norm = 0.0;
};

/// Thrown when FISTA hits max_iterations before reaching the tolerance.
class SolveError : public NumericalError {
public:
    SolveError(const std::string& what, Vector last_iterate, double residual)
        : NumericalError(what), last_iterate_(std::move(last_iterate)), residual_(residual) {}

    const Vector& last_iterate() const noexcept { return last_iterate_; }
    double residual() const noexcept { return residual_; }

private:
    Vector last_iterate_;
    double residual_;
};

/// Largest eigenvalue of A^T A by power iteration (at most 50 sweeps, stops on
/// relative change below 1e-10).
double gram_spectral_norm(const Matrix& a);

/// FISTA with constant step 1/L, L = lambda_max(A^T A) / t. The optional start
/// point defaults to zero.
PlseSolution solve(const Problem& problem, const SolverOptions& opts = {},
                   const std::optional<Vector>& start = std::nullopt);

/// A^T (y - A x) / t.
Vector dual_vector(const Problem& problem, const VectorRef& x);

SupportPartition classify_support(const VectorRef& x_star, const VectorRef& xi,
                                  const SolverOptions& opts = {});

/// True when the Gram matrix of the columns in S u dI0 is numerically
/// invertible: sigma_min > p * eps * sigma_max. Vacuously true for an empty set.
bool uniqueness_certificate(const Problem& problem, const SupportPartition& partition);
bool uniqueness_certificate(const Problem& problem, const PlseSolution& solution);

/// Decomposition of F(x) - m using the solution's certificate.
double objective_gap(const Problem& problem, const PlseSolution& solution, const VectorRef& x);

}  // namespace bpdn
