#ifndef LINSTATS_QUADRATURE_HPP
#define LINSTATS_QUADRATURE_HPP

#include <Eigen/Dense>
#include <functional>
#include <memory>
#include <vector>

// Quadrature grids for the operator calculus.  The workhorse is a
// composite Gauss-Legendre grid (q nodes per panel) that supports, besides
// plain integration, spectrally accurate cumulative integrals and
// derivatives -- both exact for the per-panel interpolant.  Grids can be
// mapped through a smooth monotone change of variables; the mapped grid
// carries the Jacobian so that all calculus happens in the target measure.
// Gauss-Hermite / generalized Gauss-Laguerre grids (plain Lebesgue-measure
// weights) are provided for orthogonality checks and tensor oracles.

namespace linstats {

struct GaussRule {
    Eigen::VectorXd nodes;
    Eigen::VectorXd weights;
};

// n-point rules via Golub-Welsch (nodes) + orthonormal-polynomial sums
// (weights).  hermite/laguerre return plain-measure weights, i.e.
// sum w_i f(x_i) ~ int f(x) dx for f decaying like the classical weight.
GaussRule legendre_rule(int n);                    // on [-1, 1], weight 1
GaussRule hermite_rule(int n);                     // for  e^{-x^2}-type decay
GaussRule laguerre_rule(int n, double a);          // for  x^a e^{-x}-type decay

// classical (measure-inclusive) rules: sum w_i p(x_i) ~ int p(x) dmu for
// polynomials p.  Far-tail weights below working precision clamp to 0.
GaussRule hermite_rule_classical(int n);           // dmu = e^{-x^2} dx
GaussRule laguerre_rule_classical(int n, double a);// dmu = x^a e^{-x} dx

enum class GridScheme { Legendre, GaussHermite, GaussLaguerre, Mapped };

class QuadratureGrid {
public:
    // whole line truncated to [-R, R], uniform panels
    static QuadratureGrid real_line(double R, int n_nodes);
    // half line (0, R], panels graded toward 0 as (k/P)^grading
    static QuadratureGrid half_line(double R, int n_nodes, double grading = 6.0);
    static QuadratureGrid interval(double a, double b, int n_nodes);
    static QuadratureGrid gauss_hermite(int n);
    static QuadratureGrid gauss_laguerre(int n, double a);
    // image of a composite grid under a smooth increasing map x(u)
    static QuadratureGrid mapped(QuadratureGrid base,
                                 const std::function<double(double)>& map,
                                 const std::function<double(double)>& dmap);

    int size() const { return static_cast<int>(nodes_.size()); }
    const Eigen::VectorXd& nodes() const { return nodes_; }
    const Eigen::VectorXd& weights() const { return weights_; }
    double lower() const { return lower_; }
    double upper() const { return upper_; }
    GridScheme scheme() const { return scheme_; }
    bool has_panels() const { return q_ > 0; }

    double integrate(const Eigen::VectorXd& g) const;

    // int_{lower}^{x_i} g  (panel-spectral; composite/mapped grids only)
    Eigen::VectorXd cumulative(const Eigen::VectorXd& g) const;
    // dg/dx at the nodes (per-panel differentiation matrix)
    Eigen::VectorXd derivative(const Eigen::VectorXd& g) const;

private:
    QuadratureGrid() = default;
    static QuadratureGrid composite(const std::vector<double>& edges, int q);
    void require_panels(const char* op) const;

    Eigen::VectorXd nodes_, weights_;
    double lower_ = 0, upper_ = 0;
    GridScheme scheme_ = GridScheme::Legendre;

    // panel data (empty for native Gauss rules)
    int q_ = 0;
    std::vector<double> edges_;
    Eigen::VectorXd unodes_, uweights_;   // pre-map nodes/weights
    Eigen::VectorXd jac_;                 // dx/du at nodes (1 if unmapped)
    std::shared_ptr<Eigen::MatrixXd> ref_cumint_;  // q x q, on [-1,1]
    std::shared_ptr<Eigen::MatrixXd> ref_deriv_;
};

} // namespace linstats

#endif
