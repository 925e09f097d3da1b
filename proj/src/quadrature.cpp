#include "linstats/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace linstats {

namespace {

// Nodes as eigenvalues of the symmetric Jacobi matrix; weights from
// w_i = 1 / sum_k p_k(x_i)^2 with p_k orthonormal for the measure.
Eigen::VectorXd jacobi_eigenvalues(const Eigen::VectorXd& diag,
                                   const Eigen::VectorXd& off) {
    const int n = static_cast<int>(diag.size());
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        J(i, i) = diag[i];
        if (i + 1 < n) J(i, i + 1) = J(i + 1, i) = off[i];
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J, Eigen::EigenvaluesOnly);
    return es.eigenvalues();
}

} // namespace

GaussRule legendre_rule(int n) {
    if (n < 1) throw std::invalid_argument("legendre_rule: n >= 1");
    Eigen::VectorXd d = Eigen::VectorXd::Zero(n), e(std::max(n - 1, 0));
    for (int k = 1; k < n; ++k)
        e[k - 1] = k / std::sqrt(4.0 * k * k - 1.0);
    GaussRule r;
    r.nodes = jacobi_eigenvalues(d, e);
    r.weights.resize(n);
    for (int i = 0; i < n; ++i) {
        const double x = r.nodes[i];
        // orthonormal Legendre: p_0 = 1/sqrt(2), p_{k+1} via recurrence
        double pm = 0.0, p = 1.0 / std::sqrt(2.0), s = p * p;
        for (int k = 0; k < n - 1; ++k) {
            const double bk = (k + 1) / std::sqrt(4.0 * (k + 1.0) * (k + 1.0) - 1.0);
            const double bkm = k > 0 ? k / std::sqrt(4.0 * k * k - 1.0) : 0.0;
            const double pn = (x * p - bkm * pm) / bk;
            pm = p; p = pn;
            s += p * p;
        }
        r.weights[i] = 1.0 / s;
    }
    return r;
}

GaussRule hermite_rule(int n) {
    if (n < 1) throw std::invalid_argument("hermite_rule: n >= 1");
    Eigen::VectorXd d = Eigen::VectorXd::Zero(n), e(std::max(n - 1, 0));
    for (int k = 1; k < n; ++k)
        e[k - 1] = std::sqrt(0.5 * k);
    GaussRule r;
    r.nodes = jacobi_eigenvalues(d, e);
    r.weights.resize(n);
    const double p0 = std::pow(M_PI, -0.25);
    for (int i = 0; i < n; ++i) {
        const double x = r.nodes[i];
        // weighted orthonormal functions phi_k = H_k/c_k e^{-x^2/2};
        // plain-measure weight is 1 / sum phi_k^2 (the e^{x^2} folded in).
        double pm = 0.0, p = p0 * std::exp(-0.5 * x * x), s = p * p;
        for (int k = 0; k < n - 1; ++k) {
            const double pn = std::sqrt(2.0 / (k + 1.0)) * x * p -
                              std::sqrt(k / (k + 1.0)) * pm;
            pm = p; p = pn;
            s += p * p;
        }
        r.weights[i] = 1.0 / s;
    }
    return r;
}

GaussRule laguerre_rule(int n, double a) {
    if (n < 1) throw std::invalid_argument("laguerre_rule: n >= 1");
    if (a <= -1.0) throw std::invalid_argument("laguerre_rule: a > -1 required");
    Eigen::VectorXd d(n), e(std::max(n - 1, 0));
    for (int k = 0; k < n; ++k) d[k] = 2.0 * k + a + 1.0;
    for (int k = 1; k < n; ++k) e[k - 1] = std::sqrt(k * (k + a));
    GaussRule r;
    r.nodes = jacobi_eigenvalues(d, e);
    r.weights.resize(n);
    for (int i = 0; i < n; ++i) {
        const double x = r.nodes[i];
        // ell_k(x) x^{a/2} e^{-x/2}, orthonormal in the plain measure
        double pm = 0.0;
        double p = std::exp(0.5 * a * std::log(x) - 0.5 * x - 0.5 * std::lgamma(a + 1.0));
        double s = p * p;
        for (int k = 0; k < n - 1; ++k) {
            const double pn = ((2.0 * k + a + 1.0 - x) * p -
                               std::sqrt(k * (k + a)) * pm) /
                              std::sqrt((k + 1.0) * (k + 1.0 + a));
            pm = p; p = pn;
            s += p * p;
        }
        // far-tail nodes where the weighted functions underflow get w = 0;
        // anything integrated there is below working precision anyway
        r.weights[i] = s > 0.0 && std::isfinite(s) ? 1.0 / s : 0.0;
    }
    return r;
}

GaussRule hermite_rule_classical(int n) {
    GaussRule r = hermite_rule(n);
    for (int i = 0; i < n; ++i) {
        const double x = r.nodes[i];
        // w_classical = 1 / sum p_k(x)^2, orthonormal Hermite polynomials
        double pm = 0.0, p = std::pow(M_PI, -0.25), s = p * p;
        for (int k = 0; k < n - 1; ++k) {
            const double pn = std::sqrt(2.0 / (k + 1.0)) * x * p -
                              std::sqrt(k / (k + 1.0)) * pm;
            pm = p; p = pn;
            s += p * p;
        }
        r.weights[i] = std::isfinite(s) ? 1.0 / s : 0.0;
    }
    return r;
}

GaussRule laguerre_rule_classical(int n, double a) {
    GaussRule r = laguerre_rule(n, a);
    for (int i = 0; i < n; ++i) {
        const double x = r.nodes[i];
        double pm = 0.0, p = std::exp(-0.5 * std::lgamma(a + 1.0)), s = p * p;
        for (int k = 0; k < n - 1; ++k) {
            const double pn = ((2.0 * k + a + 1.0 - x) * p -
                               std::sqrt(k * (k + a)) * pm) /
                              std::sqrt((k + 1.0) * (k + 1.0 + a));
            pm = p; p = pn;
            s += p * p;
        }
        r.weights[i] = std::isfinite(s) ? 1.0 / s : 0.0;
    }
    return r;
}

namespace {

// reference q x q matrices on [-1,1]: partial integrals of the Lagrange
// basis, int_{-1}^{t_i} ell_j, and the barycentric differentiation matrix
void reference_matrices(const Eigen::VectorXd& t, const Eigen::VectorXd& w,
                        Eigen::MatrixXd& cumint, Eigen::MatrixXd& deriv) {
    const int q = static_cast<int>(t.size());
    Eigen::VectorXd lam(q);  // barycentric weights
    for (int i = 0; i < q; ++i) {
        double v = 1.0;
        for (int j = 0; j < q; ++j)
            if (j != i) v /= (t[i] - t[j]);
        lam[i] = v;
    }
    deriv.resize(q, q);
    for (int i = 0; i < q; ++i) {
        double rowsum = 0.0;
        for (int j = 0; j < q; ++j) {
            if (i == j) continue;
            deriv(i, j) = (lam[j] / lam[i]) / (t[i] - t[j]);
            rowsum += deriv(i, j);
        }
        deriv(i, i) = -rowsum;
    }
    // exact integrals of the degree-(q-1) Lagrange polynomials over
    // [-1, t_i], by a q-point Gauss rule on each subinterval
    cumint.resize(q, q);
    for (int i = 0; i < q; ++i) {
        const double a = -1.0, b = t[i];
        const double m = 0.5 * (a + b), h = 0.5 * (b - a);
        for (int j = 0; j < q; ++j) {
            double acc = 0.0;
            for (int g = 0; g < q; ++g) {
                const double s = m + h * t[g];
                double ell = 1.0;
                for (int k = 0; k < q; ++k)
                    if (k != j) ell *= (s - t[k]) / (t[j] - t[k]);
                acc += w[g] * ell;
            }
            cumint(i, j) = h * acc;
        }
    }
}

} // namespace

QuadratureGrid QuadratureGrid::composite(const std::vector<double>& edges, int q) {
    QuadratureGrid g;
    g.q_ = q;
    g.edges_ = edges;
    g.scheme_ = GridScheme::Legendre;
    g.lower_ = edges.front();
    g.upper_ = edges.back();
    const int P = static_cast<int>(edges.size()) - 1;
    GaussRule ref = legendre_rule(q);
    g.ref_cumint_ = std::make_shared<Eigen::MatrixXd>();
    g.ref_deriv_ = std::make_shared<Eigen::MatrixXd>();
    reference_matrices(ref.nodes, ref.weights, *g.ref_cumint_, *g.ref_deriv_);
    g.nodes_.resize(P * q);
    g.weights_.resize(P * q);
    for (int p = 0; p < P; ++p) {
        const double m = 0.5 * (edges[p] + edges[p + 1]);
        const double h = 0.5 * (edges[p + 1] - edges[p]);
        for (int i = 0; i < q; ++i) {
            g.nodes_[p * q + i] = m + h * ref.nodes[i];
            g.weights_[p * q + i] = h * ref.weights[i];
        }
    }
    g.unodes_ = g.nodes_;
    g.uweights_ = g.weights_;
    g.jac_ = Eigen::VectorXd::Ones(P * q);
    return g;
}

QuadratureGrid QuadratureGrid::real_line(double R, int n_nodes) {
    if (R <= 0 || n_nodes < 2)
        throw std::invalid_argument("real_line: need R > 0, n_nodes >= 2");
    const int q = std::min(16, std::max(2, n_nodes));
    const int P = std::max(1, (n_nodes + q - 1) / q);
    std::vector<double> edges(P + 1);
    for (int k = 0; k <= P; ++k)
        edges[k] = -R + 2.0 * R * k / P;
    return composite(edges, q);
}

QuadratureGrid QuadratureGrid::half_line(double R, int n_nodes, double grading) {
    if (R <= 0 || n_nodes < 2 || grading < 1.0)
        throw std::invalid_argument("half_line: need R > 0, n_nodes >= 2, grading >= 1");
    const int q = std::min(16, std::max(2, n_nodes));
    const int P = std::max(8, (n_nodes + q - 1) / q);
    std::vector<double> edges(P + 1);
    for (int k = 0; k <= P; ++k)
        edges[k] = R * std::pow(static_cast<double>(k) / P, grading);
    return composite(edges, q);
}

QuadratureGrid QuadratureGrid::interval(double a, double b, int n_nodes) {
    if (!(a < b) || n_nodes < 2)
        throw std::invalid_argument("interval: need a < b, n_nodes >= 2");
    const int q = std::min(16, std::max(2, n_nodes));
    const int P = std::max(1, (n_nodes + q - 1) / q);
    std::vector<double> edges(P + 1);
    for (int k = 0; k <= P; ++k)
        edges[k] = a + (b - a) * k / P;
    return composite(edges, q);
}

QuadratureGrid QuadratureGrid::gauss_hermite(int n) {
    GaussRule r = hermite_rule(n);
    QuadratureGrid g;
    g.nodes_ = r.nodes;
    g.weights_ = r.weights;
    g.lower_ = r.nodes[0];
    g.upper_ = r.nodes[n - 1];
    g.scheme_ = GridScheme::GaussHermite;
    return g;
}

QuadratureGrid QuadratureGrid::gauss_laguerre(int n, double a) {
    GaussRule r = laguerre_rule(n, a);
    QuadratureGrid g;
    g.nodes_ = r.nodes;
    g.weights_ = r.weights;
    g.lower_ = 0.0;
    g.upper_ = r.nodes[n - 1];
    g.scheme_ = GridScheme::GaussLaguerre;
    return g;
}

QuadratureGrid QuadratureGrid::mapped(QuadratureGrid base,
                                      const std::function<double(double)>& map,
                                      const std::function<double(double)>& dmap) {
    base.require_panels("mapped");
    QuadratureGrid g = std::move(base);
    const int n = g.size();
    for (int i = 0; i < n; ++i) {
        const double u = g.unodes_[i];
        const double J = dmap(u);
        if (!(J > 0))
            throw std::invalid_argument("mapped: map must be increasing");
        g.jac_[i] = J;
        g.nodes_[i] = map(u);
        g.weights_[i] = g.uweights_[i] * J;
    }
    g.lower_ = map(g.edges_.front());
    g.upper_ = map(g.edges_.back());
    g.scheme_ = GridScheme::Mapped;
    return g;
}

double QuadratureGrid::integrate(const Eigen::VectorXd& g) const {
    return weights_.dot(g);
}

void QuadratureGrid::require_panels(const char* op) const {
    if (q_ == 0)
        throw std::logic_error(std::string(op) + ": grid has no panel structure");
}

Eigen::VectorXd QuadratureGrid::cumulative(const Eigen::VectorXd& g) const {
    require_panels("cumulative");
    // int_a^{x_i} g dx = int over u of g * jac
    const int P = static_cast<int>(edges_.size()) - 1;
    Eigen::VectorXd gj = g.cwiseProduct(jac_);
    Eigen::VectorXd out(g.size());
    double acc = 0.0;
    for (int p = 0; p < P; ++p) {
        const double h = 0.5 * (edges_[p + 1] - edges_[p]);
        Eigen::VectorXd seg = gj.segment(p * q_, q_);
        out.segment(p * q_, q_) =
            Eigen::VectorXd::Constant(q_, acc) + h * ((*ref_cumint_) * seg);
        acc += uweights_.segment(p * q_, q_).dot(seg);
    }
    return out;
}

Eigen::VectorXd QuadratureGrid::derivative(const Eigen::VectorXd& g) const {
    require_panels("derivative");
    const int P = static_cast<int>(edges_.size()) - 1;
    Eigen::VectorXd out(g.size());
    for (int p = 0; p < P; ++p) {
        const double h = 0.5 * (edges_[p + 1] - edges_[p]);
        out.segment(p * q_, q_) = ((*ref_deriv_) * g.segment(p * q_, q_)) / h;
    }
    return out.cwiseQuotient(jac_);
}

} // namespace linstats
