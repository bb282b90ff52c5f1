#include "bpdn/problem.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>

#include "bpdn/error.hpp"

namespace bpdn {

using detail::require;

Problem::Problem(Matrix a, Vector y, double t) : a_(std::move(a)), y_(std::move(y)), t_(t) {
    require(a_.rows() >= 1 && a_.cols() >= 1, "measurement matrix must be at least 1x1");
    require(y_.size() == a_.rows(), "data vector length must equal the number of rows of A");
    require(std::isfinite(t_) && t_ > 0.0, "smoothing parameter t must be positive");
    require(a_.allFinite() && y_.allFinite(), "problem data must be finite");
    require((a_.cwiseAbs().colwise().maxCoeff().array() > 0.0).any(),
            "measurement matrix must have at least one nonzero column");
}

Problem scalar_problem(double y, double t) {
    return Problem(Matrix::Ones(1, 1), Vector::Constant(1, y), t);
}

Problem read_problem(std::istream& in) {
    long n = 0;
    long p = 0;
    double t = 0.0;
    if (!(in >> n >> p >> t)) throw InvalidArgument("problem file: expected header 'n p t'");
    require(n >= 1 && p >= 1, "problem file: n and p must be positive");
    Matrix a(n, p);
    for (long i = 0; i < n; ++i)
        for (long j = 0; j < p; ++j)
            if (!(in >> a(i, j))) throw InvalidArgument("problem file: truncated matrix A");
    Vector y(n);
    for (long i = 0; i < n; ++i)
        if (!(in >> y(i))) throw InvalidArgument("problem file: truncated data vector y");
    return Problem(std::move(a), std::move(y), t);
}

Problem load_problem(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidArgument("cannot open problem file: " + path);
    return read_problem(in);
}

void write_problem(std::ostream& out, const Problem& problem) {
    const auto old_precision = out.precision(17);
    out << problem.rows() << ' ' << problem.cols() << ' ' << problem.t() << '\n';
    for (Eigen::Index i = 0; i < problem.rows(); ++i) {
        for (Eigen::Index j = 0; j < problem.cols(); ++j) out << (j ? " " : "") << problem.a()(i, j);
        out << '\n';
    }
    for (Eigen::Index i = 0; i < problem.rows(); ++i) out << (i ? " " : "") << problem.y()(i);
    out << '\n';
    out.precision(old_precision);
}

double objective(const Problem& problem, const VectorRef& x) {
    require(x.size() == problem.cols(), "objective: dimension of x must equal p");
    return x.lpNorm<1>() + (problem.a() * x - problem.y()).squaredNorm() / (2.0 * problem.t());
}

double objective_gap(const Problem& problem, const VectorRef& x_star, const VectorRef& xi,
                     const VectorRef& x) {
    const auto p = problem.cols();
    require(x.size() == p && x_star.size() == p && xi.size() == p,
            "objective_gap: dimension mismatch");
    double l1_part = 0.0;
    for (Eigen::Index i = 0; i < p; ++i) {
        if (x(i) > 0.0)
            l1_part += x(i) * (1.0 - xi(i));
        else if (x(i) < 0.0)
            l1_part += -x(i) * (1.0 + xi(i));
    }
    return l1_part + (problem.a() * (x - x_star)).squaredNorm() / (2.0 * problem.t());
}

double soft_threshold(double y, double t) {
    require(t > 0.0, "soft_threshold: t must be positive");
    if (y > t) return y - t;
    if (y < -t) return y + t;
    return 0.0;
}

}  // namespace bpdn
