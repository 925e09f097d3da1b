#include "linstats/asympt.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

#include "linstats/orthopoly.hpp"
#include "linstats/quadrature.hpp"
#include "linstats/specfun.hpp"

namespace linstats {

namespace {

// ----- bulk (whole-line) workspace: tensor grid, sinc and Si matrices

struct BulkWs {
    QuadratureGrid grid;
    Eigen::VectorXd x, w, F, Fp;
    Eigen::MatrixXd sinc;  // sin(x-y)/(x-y)
    Eigen::MatrixXd Si;    // Si(x-y)

    BulkWs(const TestFunction& f, int n_nodes, bool need_si)
        : grid(QuadratureGrid::real_line(f.truncation_radius(1e-13),
                                          n_nodes > 0 ? n_nodes
                                                      : grid_size(f))) {
        const int n = grid.size();
        x = grid.nodes();
        w = grid.weights();
        F.resize(n);
        Fp.resize(n);
        for (int i = 0; i < n; ++i) {
            F[i] = f.value(x[i]);
            Fp[i] = f.deriv(x[i]);
        }
        sinc.resize(n, n);
        if (need_si) Si.resize(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                const double t = x[i] - x[j];
                sinc(i, j) = std::abs(t) < 1e-10 ? 1.0 : std::sin(t) / t;
                if (need_si) Si(i, j) = sine_integral(t);
            }
    }

    static int grid_size(const TestFunction& f) {
        // >= 10 nodes per unit length over [-L, L]
        const double L = f.truncation_radius(1e-13);
        return std::max(240, static_cast<int>(22.0 * L));
    }

    double int1(const Eigen::VectorXd& g) const { return w.dot(g); }
    double int2(const Eigen::MatrixXd& k, const Eigen::VectorXd& gx,
                const Eigen::VectorXd& gy) const {
        return (w.cwiseProduct(gx)).transpose() * k * (w.cwiseProduct(gy));
    }
};

std::pair<double, double> gue_from_ws(const BulkWs& ws) {
    const double mean = ws.int1(ws.F) / M_PI;
    const double var =
        ws.int1(ws.F.cwiseProduct(ws.F)) / M_PI -
        ws.int2(ws.sinc.cwiseProduct(ws.sinc), ws.F, ws.F) / (M_PI * M_PI);
    return {mean, var};
}

// ----- hard-edge workspace: Bessel kernel matrix, IJ, one-sided integrals

struct EdgeWs {
    QuadratureGrid grid;
    double a;                   // Bessel order
    Eigen::VectorXd x, w, F, Fp;
    Eigen::VectorXd J;          // J_a(x_i)
    Eigen::VectorXd IJ;         // int_0^x J_a
    Eigen::MatrixXd B;          // B^(a)(x_i, x_j)
    Eigen::MatrixXd Bcum;       // Bcum(i,j) = int_0^{x_j} B(x_i, z) dz
    Eigen::VectorXd Btot;       // int_0^L B(x_i, z) dz

    EdgeWs(const TestFunction& f, double order, int n_nodes)
        : grid(QuadratureGrid::half_line(edge_L(f),
                                          n_nodes > 0 ? n_nodes : grid_size(f),
                                          2.0)),
          a(order) {
        const int n = grid.size();
        x = grid.nodes();
        w = grid.weights();
        F.resize(n);
        Fp.resize(n);
        J.resize(n);
        Eigen::VectorXd Jm(n), Jp1(n), Jd(n);
        for (int i = 0; i < n; ++i) {
            F[i] = f.value(x[i]);
            Fp[i] = f.deriv(x[i]);
            J[i] = bessel_j(a, x[i]);
            Jm[i] = bessel_j(a - 1.0, x[i]);
            Jp1[i] = bessel_j(a + 1.0, x[i]);
            Jd[i] = 0.5 * (Jm[i] - Jp1[i]);
        }
        IJ = grid.cumulative(J);
        B.resize(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                if (i == j) {
                    B(i, j) = 0.5 * (J[i] * J[i] - Jm[i] * Jp1[i]) * x[i];
                } else {
                    B(i, j) = (J[i] * x[j] * Jd[j] - J[j] * x[i] * Jd[i]) /
                              (x[i] * x[i] - x[j] * x[j]) * x[i];
                }
            }
        Bcum.resize(n, n);
        Btot.resize(n);
        for (int i = 0; i < n; ++i) {
            Eigen::VectorXd row = B.row(i).transpose();
            Bcum.row(i) = grid.cumulative(row).transpose();
            Btot[i] = w.dot(row);
        }
    }

    static double edge_L(const TestFunction& f) {
        return std::max(8.0, f.truncation_radius(1e-13));
    }
    static int grid_size(const TestFunction& f) {
        return std::max(280, static_cast<int>(24.0 * edge_L(f)));
    }

    // [int_x^L - int_0^x] B(x_i, z) dz  at x = x_j
    double onesided(int i, int j) const { return Btot[i] - 2.0 * Bcum(i, j); }

    double int1(const Eigen::VectorXd& g) const { return w.dot(g); }
    double int2(const Eigen::MatrixXd& k, const Eigen::VectorXd& gx,
                const Eigen::VectorXd& gy) const {
        return (w.cwiseProduct(gx)).transpose() * k * (w.cwiseProduct(gy));
    }
};

std::pair<double, double> lue_from_ws(const EdgeWs& ws) {
    const double mean = ws.int1(ws.B.diagonal().cwiseProduct(ws.F));
    const double var = ws.int1(ws.B.diagonal().cwiseProduct(
                           ws.F.cwiseProduct(ws.F))) -
                       ws.int2(ws.B.cwiseProduct(ws.B.transpose()), ws.F, ws.F);
    return {mean, var};
}

void finalize(AsymptoticReport& r) {
    r.mean = 0.0;
    for (const auto& t : r.mean_terms) r.mean += t.second;
    r.variance = 0.0;
    for (const auto& t : r.variance_terms) r.variance += t.second;
    r.variance_negative = r.variance < 0.0;
}

} // namespace

std::pair<double, double> gue_limits(const TestFunction& F, int n_nodes) {
    BulkWs ws(F, n_nodes, false);
    return gue_from_ws(ws);
}

std::pair<double, double> lue_limits(const TestFunction& F, double alpha,
                                     int n_nodes) {
    if (!(alpha > -1.0))
        throw std::invalid_argument("lue_limits: alpha > -1");
    EdgeWs ws(F, alpha, n_nodes);
    return lue_from_ws(ws);
}

AsymptoticReport gse_expansion(const TestFunction& F, int N, int n_nodes) {
    if (N < 1) throw std::invalid_argument("gse_expansion: N >= 1");
    BulkWs ws(F, n_nodes, true);
    auto [mg, vg] = gue_from_ws(ws);
    const double sgn = N % 2 == 0 ? 1.0 : -1.0;
    const double osc = sgn / (4.0 * std::sqrt(2.0 * M_PI * N));

    Eigen::VectorXd cosx = ws.x.array().cos();
    AsymptoticReport r;
    r.ensemble = "GSE";
    r.N = N;
    r.mean_terms = {
        {"half-gue-mean", 0.5 * mg},
        {"oscillatory cos-integral (N^-1/2)",
         -osc * ws.int1(cosx.cwiseProduct(ws.F))}};
    const double si_term =
        ws.int2(ws.sinc.cwiseProduct(ws.Si), ws.Fp, ws.F) /
        (4.0 * M_PI * M_PI * std::sqrt(static_cast<double>(N)));
    const double osc_var =
        ws.int1(cosx.cwiseProduct(ws.F.cwiseProduct(ws.F))) -
        2.0 / M_PI * ws.int2(ws.sinc, cosx.cwiseProduct(ws.F), ws.F);
    r.variance_terms = {{"half-gue-variance", 0.5 * vg},
                        {"sinc-Si cross term (N^-1/2)", -si_term},
                        {"oscillatory term (N^-1/2)", -osc * osc_var}};
    finalize(r);
    return r;
}

AsymptoticReport goe_expansion(const TestFunction& F, int N, int n_nodes) {
    if (N < 2 || N % 2 != 0)
        throw std::invalid_argument("goe_expansion: even N >= 2 required");
    BulkWs ws(F, n_nodes, true);
    auto [mg, vg] = gue_from_ws(ws);
    const double sgn = (N / 2) % 2 == 0 ? 1.0 : -1.0;

    Eigen::VectorXd sinx = ws.x.array().sin();
    Eigen::VectorXd sin2 = sinx.cwiseProduct(sinx);
    AsymptoticReport r;
    r.ensemble = "GOE";
    r.N = N;
    r.mean_terms = {
        {"gue-mean", mg},
        {"sin^2 term (1/N)",
         -ws.int1(sin2.cwiseProduct(ws.F)) / (2.0 * M_PI * N)},
        {"oscillatory sin-F' term (1/N)",
         -sgn * ws.int1(sinx.cwiseProduct(ws.Fp)) /
             (4.0 * std::sqrt(2.0 * M_PI) * N)}};

    // int [ int_x^inf sinc(x-y) F(y) dy - int_-inf^x ... ] F'(x) dx
    const int n = ws.grid.size();
    Eigen::VectorXd onesided(n);
    for (int i = 0; i < n; ++i) {
        Eigen::VectorXd row =
            ws.sinc.row(i).transpose().cwiseProduct(ws.F);
        Eigen::VectorXd cum = ws.grid.cumulative(row);
        onesided[i] = ws.w.dot(row) - 2.0 * cum[i];
    }
    const double t2 = ws.int1(onesided.cwiseProduct(ws.Fp)) /
                      (2.0 * M_PI * std::sqrt(2.0 * N));
    const double t3 = 2.0 * ws.int2(ws.sinc.cwiseProduct(ws.Si), ws.Fp, ws.F) /
                      (M_PI * M_PI * std::sqrt(2.0 * N));
    r.variance_terms = {{"twice-gue-variance", 2.0 * vg},
                        {"one-sided sinc term (N^-1/2)", -t2},
                        {"sinc-Si cross term (N^-1/2)", -t3}};
    finalize(r);
    return r;
}

AsymptoticReport lse_expansion(const TestFunction& F, double alpha, int N,
                               int n_nodes) {
    if (!(alpha > 0.0))
        throw std::invalid_argument("lse_expansion: alpha > 0");
    if (N < 1) throw std::invalid_argument("lse_expansion: N >= 1");
    EdgeWs ws(F, alpha - 1.0, n_nodes);
    auto [ml, vl] = lue_from_ws(ws);
    const int n = ws.grid.size();

    Eigen::VectorXd xFp = ws.x.cwiseProduct(ws.Fp);
    Eigen::VectorXd IJm1 = ws.IJ.array() - 1.0;
    Eigen::VectorXd ob(n);
    for (int i = 0; i < n; ++i) ob[i] = ws.onesided(i, i);

    AsymptoticReport r;
    r.ensemble = "LSE";
    r.N = N;
    r.mean_terms = {
        {"half-lue-mean(alpha-1)", 0.5 * ml},
        {"IJ J F term", -0.25 * ws.int1(ws.IJ.cwiseProduct(ws.J).cwiseProduct(ws.F))},
        {"one-sided B term (1/N)", -ws.int1(ob.cwiseProduct(xFp)) / (32.0 * N)},
        {"IJ(IJ-1) term (1/N)",
         -ws.int1(ws.IJ.cwiseProduct(IJm1).cwiseProduct(xFp)) / (32.0 * N)}};

    Eigen::VectorXd F2 = ws.F.cwiseProduct(ws.F);
    Eigen::VectorXd xFFp = ws.x.cwiseProduct(ws.F).cwiseProduct(ws.Fp);

    // v7/v9 inner object: [int_x^L - int_0^x] B(y, z) dz as a matrix in (x,y)
    // = Btot[y] - 2 Bcum(y, x)
    Eigen::MatrixXd OB(n, n);  // OB(i_x, j_y)
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) OB(i, j) = ws.onesided(j, i);

    const double v7 =
        ws.int2(ws.B.cwiseProduct(OB), xFp, ws.F) / (16.0 * N);
    const double v8 =
        ws.int2(ws.B, IJm1.cwiseProduct(xFp), ws.IJ.cwiseProduct(ws.F)) /
        (16.0 * N);
    const double v9 = ws.int2(OB, ws.IJ.cwiseProduct(xFp),
                              ws.J.cwiseProduct(ws.F)) /
                      (32.0 * N);
    const double v10 = ws.int1(ws.IJ.cwiseProduct(IJm1).cwiseProduct(xFp)) *
                       ws.int1(ws.IJ.cwiseProduct(ws.J).cwiseProduct(ws.F)) /
                       (32.0 * N);

    r.variance_terms = {
        {"half-lue-variance(alpha-1)", 0.5 * vl},
        {"IJ J F^2 term",
         -0.25 * ws.int1(ws.IJ.cwiseProduct(ws.J).cwiseProduct(F2))},
        {"B J IJ cross term",
         0.5 * ws.int2(ws.B, ws.J.cwiseProduct(ws.F), ws.IJ.cwiseProduct(ws.F))},
        {"(IJ J F)^2 term",
         -0.125 * std::pow(ws.int1(ws.IJ.cwiseProduct(ws.J).cwiseProduct(ws.F)), 2)},
        {"one-sided B term (1/N)", -ws.int1(ob.cwiseProduct(xFFp)) / (16.0 * N)},
        {"IJ(IJ-1) term (1/N)",
         -ws.int1(ws.IJ.cwiseProduct(IJm1).cwiseProduct(xFFp)) / (16.0 * N)},
        {"B one-sided cross (1/N)", v7},
        {"B (IJ-1) IJ cross (1/N)", v8},
        {"one-sided IJ J cross (1/N)", -v9},
        {"IJ IJ (IJ-1) J cross (1/N)", -v10}};
    finalize(r);
    return r;
}

AsymptoticReport loe_expansion(const TestFunction& F, double alpha, int N,
                               int n_nodes) {
    if (!(alpha > -2.0))
        throw std::invalid_argument("loe_expansion: alpha > -2");
    if (N < 2 || N % 2 != 0)
        throw std::invalid_argument("loe_expansion: even N >= 2 required");
    EdgeWs ws(F, alpha + 1.0, n_nodes);
    auto [ml, vl] = lue_from_ws(ws);
    const int n = ws.grid.size();

    Eigen::VectorXd IJm1 = ws.IJ.array() - 1.0;
    Eigen::VectorXd xFp = ws.x.cwiseProduct(ws.Fp);
    Eigen::VectorXd xFFp = ws.x.cwiseProduct(ws.F).cwiseProduct(ws.Fp);
    Eigen::VectorXd F2 = ws.F.cwiseProduct(ws.F);
    Eigen::VectorXd ob(n);
    for (int i = 0; i < n; ++i) ob[i] = ws.onesided(i, i);

    AsymptoticReport r;
    r.ensemble = "LOE";
    r.N = N;
    r.mean_terms = {
        {"lue-mean(alpha+1)", ml},
        {"(IJ-1) J F term",
         -0.5 * ws.int1(IJm1.cwiseProduct(ws.J).cwiseProduct(ws.F))},
        {"one-sided B term (1/N)", -ws.int1(ob.cwiseProduct(xFp)) / (8.0 * N)},
        {"(IJ-1) IJ term (1/N)",
         -ws.int1(IJm1.cwiseProduct(ws.IJ).cwiseProduct(xFp)) / (8.0 * N)}};

    // one-sided with F weight: [int_x^L - int_0^x] B(x,y) F(y) dy at y-row x
    Eigen::VectorXd obF(n);
    for (int i = 0; i < n; ++i) {
        Eigen::VectorXd row = ws.B.row(i).transpose().cwiseProduct(ws.F);
        Eigen::VectorXd cum = ws.grid.cumulative(row);
        obF[i] = ws.w.dot(row) - 2.0 * cum[i];
    }
    // int_0^x J F - int_x^L J F
    Eigen::VectorXd JF = ws.J.cwiseProduct(ws.F);
    Eigen::VectorXd cumJF = ws.grid.cumulative(JF);
    Eigen::VectorXd osJF = 2.0 * cumJF - Eigen::VectorXd::Constant(n, ws.w.dot(JF));

    Eigen::MatrixXd OB(n, n);  // [int_x^L - int_0^x] B(y,z) dz at (i_x, j_y)
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) OB(i, j) = ws.onesided(j, i);

    const double v9 = ws.int2(ws.B.cwiseProduct(OB), xFp, ws.F) / (2.0 * N);
    const double v10 =
        ws.int2(ws.B, ws.IJ.cwiseProduct(xFp), IJm1.cwiseProduct(ws.F)) /
        (2.0 * N);
    const double v11 = ws.int2(OB, IJm1.cwiseProduct(xFp),
                               ws.J.cwiseProduct(ws.F)) /
                       (4.0 * N);
    const double v12 = ws.int1(IJm1.cwiseProduct(ws.IJ).cwiseProduct(xFp)) *
                       ws.int1(IJm1.cwiseProduct(ws.J).cwiseProduct(ws.F)) /
                       (4.0 * N);

    r.variance_terms = {
        {"twice-lue-variance(alpha+1)", 2.0 * vl},
        {"(IJ-1) J F^2 term",
         -ws.int1(IJm1.cwiseProduct(ws.J).cwiseProduct(F2))},
        {"B J (IJ-1) cross term",
         2.0 * ws.int2(ws.B, ws.J.cwiseProduct(ws.F), IJm1.cwiseProduct(ws.F))},
        {"((IJ-1) J F)^2 term",
         -0.5 * std::pow(ws.int1(IJm1.cwiseProduct(ws.J).cwiseProduct(ws.F)), 2)},
        {"one-sided B term (1/N)", -ws.int1(ob.cwiseProduct(xFFp)) / (4.0 * N)},
        {"one-sided B-F term (1/N)", -ws.int1(obF.cwiseProduct(xFp)) / (4.0 * N)},
        {"(IJ-1) IJ term (1/N)",
         -ws.int1(IJm1.cwiseProduct(ws.IJ).cwiseProduct(xFFp)) / (4.0 * N)},
        {"(IJ-1) JF-one-sided term (1/N)",
         -ws.int1(IJm1.cwiseProduct(osJF).cwiseProduct(xFp)) / (8.0 * N)},
        {"B one-sided cross (1/N)", v9},
        {"B IJ (IJ-1) cross (1/N)", v10},
        {"one-sided (IJ-1) J cross (1/N)", -v11},
        {"(IJ-1)^2 IJ J cross (1/N)", -v12}};
    finalize(r);
    return r;
}

} // namespace linstats
