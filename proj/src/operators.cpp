#include "linstats/operators.hpp"

#include <cmath>
#include <iostream>
#include <stdexcept>

namespace linstats {

namespace {
void check_same_grid(const QuadratureGrid* a, const QuadratureGrid* b,
                     const char* op) {
    if (a == nullptr || b == nullptr || a != b)
        throw std::invalid_argument(std::string(op) + ": grid mismatch");
}
} // namespace

GridFunction apply_eps(const GridFunction& g) {
    Eigen::VectorXd cum = g.grid->cumulative(g.values);
    const double total = g.grid->integrate(g.values);
    return GridFunction(*g.grid, cum.array() - 0.5 * total);
}

GridFunction apply_deriv(const GridFunction& g) {
    return GridFunction(*g.grid, g.grid->derivative(g.values));
}

KernelMatrix eps_kernel(const QuadratureGrid& g) {
    const int n = g.size();
    Eigen::MatrixXd m(n, n);
    for (int i = 0; i < n; ++i) {
        m(i, i) = 0.0;
        for (int j = 0; j < i; ++j) {
            m(i, j) = 0.5;   // x_i > x_j
            m(j, i) = -0.5;
        }
    }
    return KernelMatrix(g, std::move(m));
}

KernelMatrix rank_one(const GridFunction& u, const GridFunction& v) {
    check_same_grid(u.grid, v.grid, "rank_one");
    return KernelMatrix(*u.grid, u.values * v.values.transpose());
}

KernelMatrix compose(const KernelMatrix& a, const KernelMatrix& b) {
    check_same_grid(a.grid, b.grid, "compose");
    return KernelMatrix(*a.grid,
                        a.k * a.grid->weights().asDiagonal() * b.k);
}

KernelMatrix mult_right(const KernelMatrix& a, const Eigen::VectorXd& f) {
    return KernelMatrix(*a.grid, a.k * f.asDiagonal());
}

KernelMatrix mult_left(const Eigen::VectorXd& f, const KernelMatrix& a) {
    return KernelMatrix(*a.grid, f.asDiagonal() * a.k);
}

GridFunction apply(const KernelMatrix& a, const GridFunction& g) {
    check_same_grid(a.grid, g.grid, "apply");
    return GridFunction(*a.grid,
                        a.k * g.grid->weights().cwiseProduct(g.values));
}

double trace_op(const KernelMatrix& a) {
    return a.k.diagonal().dot(a.grid->weights());
}

double trace_prod(const KernelMatrix& a, const KernelMatrix& b) {
    check_same_grid(a.grid, b.grid, "trace_prod");
    const auto& w = a.grid->weights();
    // sum_ij A_ij w_j B_ji w_i
    return ((a.k * w.asDiagonal()).cwiseProduct(
                (b.k * w.asDiagonal()).transpose()))
        .sum();
}

double fredholm_det(const KernelMatrix& t) {
    const int n = t.grid->size();
    Eigen::MatrixXd m = Eigen::MatrixXd::Identity(n, n) +
                        t.k * t.grid->weights().asDiagonal();
    const double det = Eigen::PartialPivLU<Eigen::MatrixXd>(m).determinant();
    if (std::abs(det) < 1e-300)
        std::cerr << "fredholm_det: determinant below working precision ("
                  << det << ")\n";
    return det;
}

std::pair<double, double> logdet_coefficients(const KernelMatrix& t1,
                                              const KernelMatrix& t2) {
    const double c1 = trace_op(t1);
    const double c2 = trace_op(t2) - 0.5 * trace_prod(t1, t1);
    return {c1, c2};
}

} // namespace linstats
