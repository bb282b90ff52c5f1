#pragma once

#include <Eigen/Dense>
#include <iosfwd>
#include <string>

namespace bpdn {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using VectorRef = Eigen::Ref<const Eigen::VectorXd>;

/// Basis pursuit denoising data: minimize ||x||_1 + ||A x - y||^2 / (2 t).
///
/// Immutable once constructed. The constructor validates shapes, t > 0, finite
/// entries, and that A has at least one nonzero column.
class Problem {
public:
    Problem(Matrix a, Vector y, double t);

    const Matrix& a() const noexcept { return a_; }
    const Vector& y() const noexcept { return y_; }
    double t() const noexcept { return t_; }

    Eigen::Index rows() const noexcept { return a_.rows(); }
    Eigen::Index cols() const noexcept { return a_.cols(); }

private:
    Matrix a_;
    Vector y_;
    double t_;
};

/// The one-dimensional problem A = [1]: F(x) = |x| + (x - y)^2 / (2 t).
Problem scalar_problem(double y, double t);

/// Reads "n p t", then n rows of p entries of A, then n entries of y.
Problem read_problem(std::istream& in);
Problem load_problem(const std::string& path);
void write_problem(std::ostream& out, const Problem& problem);

/// F(x) = ||x||_1 + ||A x - y||^2 / (2 t).
double objective(const Problem& problem, const VectorRef& x);

/// F(x) - m expanded around a minimizer x_star with dual certificate xi:
///   sum_i |x_i| (1 - sgn(x_i) xi_i) + ||A (x - x_star)||^2 / (2 t).
/// sgn is never evaluated at zero since the |x_i| factor vanishes there.
double objective_gap(const Problem& problem, const VectorRef& x_star, const VectorRef& xi,
                     const VectorRef& x);

/// Proximal map of |.| with weight t: the 1D minimizer of |x| + (x - y)^2 / (2 t).
double soft_threshold(double y, double t);

}  // namespace bpdn
