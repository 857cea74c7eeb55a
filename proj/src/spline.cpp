#include "fdrest/spline.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>

namespace fdrest {

namespace {

// Reinsch form: penalty matrix K = D^T W^{-1} D, where D holds scaled
// second differences ((n-2) x n) and W is the tridiagonal Gram matrix of
// the natural-spline second-derivative basis.
void reinsch_matrices(const std::vector<double>& x, Eigen::MatrixXd& D,
                      Eigen::MatrixXd& W) {
    const auto n = static_cast<Eigen::Index>(x.size());
    D = Eigen::MatrixXd::Zero(n - 2, n);
    W = Eigen::MatrixXd::Zero(n - 2, n - 2);
    for (Eigen::Index i = 0; i < n - 2; ++i) {
        const double h0 = x[i + 1] - x[i];
        const double h1 = x[i + 2] - x[i + 1];
        D(i, i) = 1.0 / h0;
        D(i, i + 1) = -1.0 / h0 - 1.0 / h1;
        D(i, i + 2) = 1.0 / h1;
        W(i, i) = (h0 + h1) / 3.0;
        if (i + 1 < n - 2) {
            W(i, i + 1) = h1 / 6.0;
            W(i + 1, i) = h1 / 6.0;
        }
    }
}

double smoother_trace(const Eigen::MatrixXd& K, double lambda) {
    const auto n = K.rows();
    Eigen::MatrixXd A = Eigen::MatrixXd::Identity(n, n) + lambda * K;
    return A.llt().solve(Eigen::MatrixXd::Identity(n, n)).trace();
}

}  // namespace

SmoothingSpline SmoothingSpline::fit(const std::vector<double>& x,
                                     const std::vector<double>& y,
                                     double target_df, double df_tol) {
    const std::size_t n = x.size();
    if (n < 4) throw std::invalid_argument("smoothing spline needs at least 4 points");
    if (y.size() != n) throw std::invalid_argument("x and y length mismatch");
    for (std::size_t i = 1; i < n; ++i) {
        if (!(x[i] > x[i - 1])) {
            throw std::invalid_argument("spline knots must be strictly ascending");
        }
    }
    if (!(target_df > 2.0) || !(target_df < static_cast<double>(n))) {
        throw std::invalid_argument("target df must lie in (2, n)");
    }

    Eigen::MatrixXd D, W;
    reinsch_matrices(x, D, W);
    const Eigen::MatrixXd WinvD = W.llt().solve(D);
    const Eigen::MatrixXd K = D.transpose() * WinvD;

    // trace is n at lambda -> 0 and 2 at lambda -> inf; bisect in log space
    double lo = 1e-14, hi = 1e14, lambda = 1.0, trace = 0.0;
    for (int it = 0; it < 200; ++it) {
        lambda = std::sqrt(lo * hi);
        trace = smoother_trace(K, lambda);
        if (std::fabs(trace - target_df) <= 0.1 * df_tol) break;
        if (trace > target_df) {
            lo = lambda;
        } else {
            hi = lambda;
        }
    }
    if (std::fabs(trace - target_df) > df_tol) {
        throw std::runtime_error("spline df tuning did not converge");
    }

    const auto ni = static_cast<Eigen::Index>(n);
    Eigen::VectorXd yv(ni);
    for (std::size_t i = 0; i < n; ++i) yv[static_cast<Eigen::Index>(i)] = y[i];

    Eigen::MatrixXd A = Eigen::MatrixXd::Identity(ni, ni) + lambda * K;
    Eigen::VectorXd g = A.llt().solve(yv);
    Eigen::VectorXd gamma_int = W.llt().solve(D * g);  // interior 2nd derivatives

    SmoothingSpline s;
    s.x_ = x;
    s.g_.assign(g.data(), g.data() + ni);
    s.gamma_.assign(n, 0.0);
    for (Eigen::Index i = 0; i < ni - 2; ++i) {
        s.gamma_[static_cast<std::size_t>(i) + 1] = gamma_int[i];
    }
    s.df_ = trace;
    s.lambda_ = lambda;
    return s;
}

double SmoothingSpline::operator()(double t) const {
    const std::size_t n = x_.size();
    if (t <= x_.front()) {
        const double h = x_[1] - x_[0];
        const double slope = (g_[1] - g_[0]) / h - h * gamma_[1] / 6.0;
        return g_[0] + slope * (t - x_[0]);
    }
    if (t >= x_.back()) {
        const double h = x_[n - 1] - x_[n - 2];
        const double slope = (g_[n - 1] - g_[n - 2]) / h + h * gamma_[n - 2] / 6.0;
        return g_[n - 1] + slope * (t - x_[n - 1]);
    }
    std::size_t j = 0;
    while (j + 2 < n && x_[j + 1] < t) ++j;
    const double h = x_[j + 1] - x_[j];
    const double a = (x_[j + 1] - t) / h;
    const double b = (t - x_[j]) / h;
    return a * g_[j] + b * g_[j + 1] +
           ((a * a * a - a) * gamma_[j] + (b * b * b - b) * gamma_[j + 1]) *
               (h * h) / 6.0;
}

}  // namespace fdrest
