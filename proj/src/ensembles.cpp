#include "linstats/ensembles.hpp"

#include <cmath>
#include <memory>
#include <stdexcept>

namespace linstats {

// ------------------------------------------------------------ EnsembleSpec

void EnsembleSpec::validate() const {
    if (N < 1)
        throw std::invalid_argument("EnsembleSpec: N >= 1 required");
    if (beta != 1 && beta != 2 && beta != 4)
        throw std::invalid_argument("EnsembleSpec: beta must be 1, 2 or 4");
    if (family == Family::Laguerre) {
        if (beta == 4 && !(alpha > 0.0))
            throw std::invalid_argument("EnsembleSpec: LSE requires alpha > 0");
        if (beta == 1 && !(alpha > -2.0))
            throw std::invalid_argument("EnsembleSpec: LOE requires alpha > -2");
        if (beta == 2 && !(alpha > -1.0))
            throw std::invalid_argument("EnsembleSpec: LUE requires alpha > -1");
    }
}

std::string EnsembleSpec::name() const {
    const char* b = beta == 1 ? "OE" : beta == 2 ? "UE" : "SE";
    return (family == Family::Gaussian ? std::string("G") : std::string("L")) + b;
}

double EnsembleSpec::weight(double x) const {
    if (family == Family::Gaussian)
        return beta == 1 ? std::exp(-0.5 * x * x) : std::exp(-x * x);
    if (x <= 0.0)
        return 0.0;
    if (beta == 1)
        return std::exp(0.5 * alpha * std::log(x) - 0.5 * x);
    return std::exp(alpha * std::log(x) - x);
}

double EnsembleSpec::laguerre_parameter() const {
    if (family != Family::Laguerre)
        throw std::logic_error("laguerre_parameter: Gaussian spec");
    return beta == 4 ? alpha - 1.0 : beta == 1 ? alpha + 1.0 : alpha;
}

ScalingRule EnsembleSpec::scaling() const {
    if (family == Family::Gaussian)
        return {beta == 4 ? ScalingRule::BulkSqrt4N : ScalingRule::BulkSqrt2N, N};
    return {beta == 4 ? ScalingRule::EdgeSqrt8Nx : ScalingRule::EdgeSqrt4Nx, N};
}

namespace {
// the determinant machinery takes beta=1 only with even N
void require_even_beta1(const EnsembleSpec& spec, const char* who) {
    if (spec.beta == 1 && spec.N % 2 != 0)
        throw std::invalid_argument(std::string(who) +
                                    ": beta=1 requires even N");
}
} // namespace

// --------------------------------------------------------------- PsiBasis

PsiBasis build_psi(const EnsembleSpec& spec) {
    spec.validate();
    require_even_beta1(spec, "build_psi");
    if (spec.beta == 2)
        throw std::invalid_argument("build_psi: only beta = 1, 4");

    PsiBasis basis;
    if (spec.family == Family::Gaussian) {
        const int maxdeg = spec.beta == 4 ? 2 * spec.N + 2 : spec.N + 2;
        auto sys = std::make_shared<HermiteSystem>(maxdeg);
        if (spec.beta == 4) {
            basis.count = 2 * spec.N;
            const double r = 1.0 / std::sqrt(2.0);
            // psi_{2j+1} = phi_{2j+1}/sqrt2, psi_{2j} = -eps phi_{2j+1}/sqrt2
            basis.psi = [sys, r](int j, double x) {
                return j % 2 == 1 ? r * sys->phi(j, x)
                                  : -r * sys->eps_phi(j + 1, x);
            };
            basis.psi_deriv = [sys, r](int j, double x) {
                return j % 2 == 1 ? r * sys->phi_deriv(j, x)
                                  : -r * sys->phi(j + 1, x);
            };
        } else {
            basis.count = spec.N;
            // psi_{2n} = phi_{2n}, psi_{2n+1} = phi_{2n}'
            basis.psi = [sys](int j, double x) {
                return j % 2 == 0 ? sys->phi(j, x) : sys->phi_deriv(j - 1, x);
            };
            basis.eps_psi = [sys](int j, double x) {
                return j % 2 == 0 ? sys->eps_phi(j, x) : sys->phi(j - 1, x);
            };
        }
    } else {
        const double a = spec.laguerre_parameter();
        const int maxdeg = spec.beta == 4 ? 2 * spec.N + 2 : spec.N + 2;
        auto sys = std::make_shared<LaguerreSystem>(a, maxdeg);
        if (spec.beta == 4) {
            basis.count = 2 * spec.N;
            const double r = 1.0 / std::sqrt(2.0);
            // psi_{2j+1} = phi_{2j+1}/sqrt2, psi_{2j} = -eps phit_{2j+1}/sqrt2
            basis.psi = [sys, r](int j, double x) {
                return j % 2 == 1 ? r * sys->phi(j, x)
                                  : -r * sys->eps_phi_tilde(j + 1, x);
            };
            basis.psi_deriv = [sys, r](int j, double x) {
                return j % 2 == 1 ? r * sys->phi_deriv(j, x)
                                  : -r * sys->phi_tilde(j + 1, x);
            };
        } else {
            basis.count = spec.N;
            // psi_{2n} = phit_{2n}, psi_{2n+1} = phi_{2n}'
            basis.psi = [sys](int j, double x) {
                return j % 2 == 0 ? sys->phi_tilde(j, x)
                                  : sys->phi_deriv(j - 1, x);
            };
            basis.eps_psi = [sys](int j, double x) {
                return j % 2 == 0 ? sys->eps_phi_tilde(j, x)
                                  : sys->phi(j - 1, x);
            };
        }
    }
    return basis;
}

// ---------------------------------------------------------------- build_M

Eigen::MatrixXd build_M(const EnsembleSpec& spec) {
    spec.validate();
    require_even_beta1(spec, "build_M");
    PsiBasis basis = build_psi(spec);
    const int m = basis.count;

    // quadrature matched to the integrands: poly x e^{-x^2} (Gaussian) and
    // poly x x^{a} e^{-x} (LSE) are integrated exactly by the classical
    // rules; LOE needs a graded composite grid (eps phit is not weight x poly)
    Eigen::VectorXd nodes, weights;
    if (spec.family == Family::Gaussian) {
        GaussRule r = hermite_rule(4 * m + 16);
        nodes = r.nodes;
        weights = r.weights;
        if (spec.beta == 1) {
            // GOE integrand carries e^{-x^2/2} squared weights with erf
            // factors; a wide graded-free composite grid is simpler and
            // exact enough.  Parity kills the erf entries anyway.
        }
    } else if (spec.beta == 4) {
        GaussRule r = laguerre_rule(4 * m + 16, spec.alpha - 1.0);
        nodes = r.nodes;
        weights = r.weights;
    } else {
        const double R = 4.0 * (m + 2) + 60.0;
        QuadratureGrid g = QuadratureGrid::half_line(R, 960);
        nodes = g.nodes();
        weights = g.weights();
    }

    const int n = static_cast<int>(nodes.size());
    Eigen::MatrixXd M(m, m);
    if (spec.beta == 4) {
        Eigen::MatrixXd P(n, m), D(n, m);
        for (int j = 0; j < m; ++j)
            for (int i = 0; i < n; ++i) {
                P(i, j) = basis.psi(j, nodes[i]);
                D(i, j) = basis.psi_deriv(j, nodes[i]);
            }
        M = P.transpose() * weights.asDiagonal() * D -
            D.transpose() * weights.asDiagonal() * P;
    } else {
        Eigen::MatrixXd P(n, m), E(n, m);
        for (int j = 0; j < m; ++j)
            for (int i = 0; i < n; ++i) {
                P(i, j) = basis.psi(j, nodes[i]);
                E(i, j) = basis.eps_psi(j, nodes[i]);
            }
        M = P.transpose() * weights.asDiagonal() * E;
    }
    return M;
}

// ------------------------------------------------------- kernel closures

namespace {

struct CDData {
    // S(x,y) = c (A(x) B(y) - At(y) Bt(x)) / (x-y);  the numerator vanishes
    // at y = x, so the diagonal is the L'Hopital value -c (A Bd - Atd Bt).
    std::function<double(double)> A, B, At, Bt, Bd, Atd;
    double c;
};

KernelClosure make_cd(const CDData& d, const std::string& label) {
    KernelClosure k;
    k.label = label;
    k.at = [d](double x, double y) {
        return d.c * (d.A(x) * d.B(y) - d.At(y) * d.Bt(x)) / (x - y);
    };
    k.diag = [d](double x) {
        return -d.c * (d.A(x) * d.Bd(x) - d.Atd(x) * d.Bt(x));
    };
    return k;
}

} // namespace

KernelClosure cd_kernel(const EnsembleSpec& spec) {
    spec.validate();
    require_even_beta1(spec, "cd_kernel");
    const int K = spec.top_degree() + 1;  // number of terms in the sum
    if (spec.family == Family::Gaussian) {
        auto sys = std::make_shared<HermiteSystem>(K + 2);
        CDData d;
        d.c = std::sqrt(0.5 * K);
        d.A = [sys, K](double x) { return sys->phi(K, x); };
        d.B = [sys, K](double x) { return sys->phi(K - 1, x); };
        d.At = d.A;
        d.Bt = d.B;
        d.Bd = [sys, K](double x) { return sys->phi_deriv(K - 1, x); };
        d.Atd = [sys, K](double x) { return sys->phi_deriv(K, x); };
        return make_cd(d, "S_N " + spec.name());
    }
    const double a = spec.laguerre_parameter();
    auto sys = std::make_shared<LaguerreSystem>(a, K + 2);
    CDData d;
    d.c = -std::sqrt(K * (K + a));
    if (spec.beta == 2) {
        d.A = [sys, K](double x) { return sys->phi_sym(K, x); };
        d.B = [sys, K](double x) { return sys->phi_sym(K - 1, x); };
        d.At = d.A;
        d.Bt = d.B;
        d.Bd = [sys, K](double x) { return sys->phi_sym_deriv(K - 1, x); };
        d.Atd = [sys, K](double x) { return sys->phi_sym_deriv(K, x); };
    } else {
        d.A = [sys, K](double x) { return sys->phi(K, x); };
        d.B = [sys, K](double x) { return sys->phi_tilde(K - 1, x); };
        d.At = [sys, K](double x) { return sys->phi_tilde(K, x); };
        d.Bt = [sys, K](double x) { return sys->phi(K - 1, x); };
        d.Bd = [sys, K](double x) { return sys->phi_tilde_deriv(K - 1, x); };
        d.Atd = [sys, K](double x) { return sys->phi_tilde_deriv(K, x); };
    }
    return make_cd(d, "S_N " + spec.name());
}

K22 k22_kernel(const EnsembleSpec& spec) {
    spec.validate();
    require_even_beta1(spec, "k22_kernel");
    if (spec.beta == 2)
        throw std::invalid_argument("k22_kernel: only beta = 1, 4");
    K22 out;
    out.S = cd_kernel(spec);
    const int N = spec.N;
    if (spec.family == Family::Gaussian) {
        auto sys = std::make_shared<HermiteSystem>(2 * N + 2);
        if (spec.beta == 4) {
            out.s_factor = 0.5;
            out.coeff = 0.5 * std::sqrt(N + 0.5);
            out.u = [sys, N](double x) { return sys->eps_phi(2 * N + 1, x); };
            out.v = [sys, N](double x) { return sys->phi(2 * N, x); };
        } else {
            out.s_factor = 1.0;
            out.coeff = std::sqrt(0.5 * N);
            out.u = [sys, N](double x) { return sys->eps_phi(N, x); };
            out.v = [sys, N](double x) { return sys->phi(N - 1, x); };
        }
    } else {
        const double a = spec.laguerre_parameter();
        auto sys = std::make_shared<LaguerreSystem>(a, 2 * N + 2);
        if (spec.beta == 4) {
            out.s_factor = 0.5;
            out.coeff = -0.5 * std::sqrt((N + 0.5) * (N + 0.5 * spec.alpha));
            out.u = [sys, N](double x) { return sys->eps_phi_tilde(2 * N + 1, x); };
            out.v = [sys, N](double x) { return sys->phi_tilde(2 * N, x); };
        } else {
            out.s_factor = 1.0;
            out.coeff = -0.5 * std::sqrt(N * (N + spec.alpha + 1.0));
            out.u = [sys, N](double x) { return sys->eps_phi_tilde(N, x); };
            out.v = [sys, N](double x) { return sys->phi_tilde(N - 1, x); };
        }
    }
    return out;
}

// ------------------------------------------------------------ DetOperand

DetOperand build_operand(const EnsembleSpec& spec, const QuadratureGrid& grid) {
    spec.validate();
    require_even_beta1(spec, "build_operand");
    DetOperand op;
    op.grid = &grid;
    op.spec = spec;
    const int n = grid.size();
    const int K = spec.top_degree() + 1;
    const auto& x = grid.nodes();

    Eigen::MatrixXd Phi(n, K), PhiHat(n, K), EpsHat(n, K);
    Eigen::VectorXd topA(n), topAt(n), topB(n), topBt(n), topAd(n), topBd(n),
        topAtd(n);
    op.u.resize(n);
    op.v.resize(n);
    op.ev.resize(n);

    if (spec.family == Family::Gaussian) {
        HermiteSystem sys(K + 2);
        for (int i = 0; i < n; ++i) {
            Eigen::VectorXd ph = sys.phi_all(x[i]);
            Eigen::VectorXd ep = sys.eps_phi_all(x[i]);
            Phi.row(i) = ph.head(K).transpose();
            PhiHat.row(i) = ph.head(K).transpose();
            EpsHat.row(i) = ep.head(K).transpose();
            topA[i] = ph[K];      // phi_top
            topB[i] = ph[K - 1];  // phi_top-1
            op.u[i] = ep[K];
            op.v[i] = ph[K - 1];
            op.ev[i] = ep[K - 1];
            // phi_j' = sqrt(j/2) phi_{j-1} - sqrt((j+1)/2) phi_{j+1}
            topAd[i] = std::sqrt(0.5 * K) * ph[K - 1] -
                       std::sqrt(0.5 * (K + 1.0)) * ph[K + 1];
            topBd[i] = std::sqrt(0.5 * (K - 1.0)) * (K >= 2 ? ph[K - 2] : 0.0) -
                       std::sqrt(0.5 * K) * ph[K];
        }
        op.c = spec.beta == 4 ? std::sqrt(spec.N + 0.5) : std::sqrt(0.5 * spec.N);
        const double c_cd = std::sqrt(0.5 * K);
        op.S.resize(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                op.S(i, j) = i == j
                                 ? c_cd * (topAd[i] * topB[i] - topA[i] * topBd[i])
                                 : c_cd * (topA[i] * topB[j] - topA[j] * topB[i]) /
                                       (x[i] - x[j]);
    } else {
        const double a = spec.laguerre_parameter();
        LaguerreSystem sys(a, K + 2);
        for (int i = 0; i < n; ++i) {
            const double xi = x[i];
            Eigen::VectorXd ph = sys.phi_all(xi);
            Eigen::VectorXd pt = ph / xi;
            Eigen::VectorXd ep = sys.eps_phi_tilde_all(xi);
            Phi.row(i) = ph.head(K).transpose();
            PhiHat.row(i) = pt.head(K).transpose();
            EpsHat.row(i) = ep.head(K).transpose();
            topA[i] = ph[K];
            topAt[i] = pt[K];
            topB[i] = pt[K - 1];
            topBt[i] = ph[K - 1];
            op.u[i] = ep[K];
            op.v[i] = pt[K - 1];
            op.ev[i] = ep[K - 1];
            // phit_j' = phi_j'/x - phi_j/x^2, with
            // phi_j' = 1/2 sqrt((j+1)(j+a+1)) phit_{j+1} - 1/2 sqrt(j(j+a)) phit_{j-1}
            auto phid = [&](int j) {
                const double lo = j >= 1 ? pt[j - 1] : 0.0;
                return 0.5 * std::sqrt((j + 1.0) * (j + a + 1.0)) * pt[j + 1] -
                       0.5 * std::sqrt(j * (j + a)) * lo;
            };
            topBd[i] = phid(K - 1) / xi - ph[K - 1] / (xi * xi);
            topAtd[i] = phid(K) / xi - ph[K] / (xi * xi);
        }
        op.c = spec.beta == 4
                   ? -std::sqrt((spec.N + 0.5) * (spec.N + 0.5 * spec.alpha))
                   : -0.5 * std::sqrt(spec.N * (spec.N + spec.alpha + 1.0));
        const double c_cd = -std::sqrt(K * (K + a));
        op.S.resize(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                op.S(i, j) =
                    i == j ? -c_cd * (topA[i] * topBd[i] - topAtd[i] * topBt[i])
                           : c_cd * (topA[i] * topB[j] - topAt[j] * topBt[i]) /
                                 (x[i] - x[j]);
        if (spec.beta == 1) {
            // half-line boundary data: (K 1) = sum_{even j<N} (int phit_j) phi_j,
            // eps phit_N(0) = -1/2 int phit_N
            op.has_boundary = true;
            op.u_at0 = -0.5 * sys.tilde_total(K);
            op.K1 = Eigen::VectorXd::Zero(n);
            for (int j = 0; j < K; j += 2)
                op.K1 += sys.tilde_total(j) * Phi.col(j);
        }
    }

    // (S eps)(x, y) = -sum_j phi_j(x) eps phihat_j(y)
    op.Seps = -Phi * EpsHat.transpose();
    op.Phi = std::move(Phi);
    op.PhiHat = std::move(PhiHat);
    return op;
}

GridStatistic sample_statistic(const QuadratureGrid& grid, const TestFunction& F,
                               const ScalingRule& rule) {
    GridStatistic st;
    const int n = grid.size();
    st.F.resize(n);
    st.Fp.resize(n);
    for (int i = 0; i < n; ++i) {
        const double x = grid.nodes()[i];
        const double u = rule.apply(x);
        st.F[i] = F.value(u);
        double du_dx = 1.0;
        switch (rule.kind) {
            case ScalingRule::BulkSqrt2N: du_dx = std::sqrt(2.0 * rule.N); break;
            case ScalingRule::BulkSqrt4N: du_dx = std::sqrt(4.0 * rule.N); break;
            case ScalingRule::EdgeSqrt4Nx: du_dx = 2.0 * rule.N / u; break;
            case ScalingRule::EdgeSqrt8Nx: du_dx = 4.0 * rule.N / u; break;
            case ScalingRule::None: break;
        }
        st.Fp[i] = F.deriv(u) * du_dx;
    }
    st.F_at0 = F.value(rule.kind == ScalingRule::None ? 0.0 : rule.apply(0.0));
    return st;
}

namespace {

Eigen::VectorXd eps_of(const QuadratureGrid& g, const Eigen::VectorXd& vals) {
    return g.cumulative(vals).array() - 0.5 * g.weights().dot(vals);
}

} // namespace

KernelMatrix assemble_T(const DetOperand& op, const Eigen::VectorXd& f,
                        const Eigen::VectorXd& fp) {
    const auto& g = *op.grid;
    const int beta = op.spec.beta;
    if (beta == 2)
        return KernelMatrix(g, op.S * f.asDiagonal());

    if (beta == 4) {
        // T = S f - 1/2 S eps f' + c u (x) (v f) + (c/2) (u (x) ev) f'
        Eigen::MatrixXd T = op.S * f.asDiagonal();
        T.noalias() -= 0.5 * op.Seps * fp.asDiagonal();
        T.noalias() += op.c * op.u * (op.v.cwiseProduct(f)).transpose();
        T.noalias() += 0.5 * op.c * op.u * (op.ev.cwiseProduct(fp)).transpose();
        return KernelMatrix(g, std::move(T));
    }

    // beta = 1:
    // T = S h - S eps f' - S f eps f' + c u (x) (v h)
    //     + c (u (x) ev) f' + c (u (x) eps(v f)) f',   h = f^2 + 2f
    Eigen::VectorXd h = f.cwiseProduct(f) + 2.0 * f;
    Eigen::MatrixXd T = op.S * h.asDiagonal();
    T.noalias() -= op.Seps * fp.asDiagonal();
    // -(S f eps) f' = sum_j phi_j (x) [eps(phihat_j f) . f']
    const int K = static_cast<int>(op.Phi.cols());
    Eigen::MatrixXd E(g.size(), K);
    for (int j = 0; j < K; ++j)
        E.col(j) = eps_of(g, op.PhiHat.col(j).cwiseProduct(f)).cwiseProduct(fp);
    T.noalias() += op.Phi * E.transpose();
    T.noalias() += op.c * op.u * (op.v.cwiseProduct(h)).transpose();
    T.noalias() += op.c * op.u * (op.ev.cwiseProduct(fp)).transpose();
    T.noalias() +=
        op.c * op.u * (eps_of(g, op.v.cwiseProduct(f)).cwiseProduct(fp)).transpose();
    return KernelMatrix(g, std::move(T));
}

std::pair<KernelMatrix, KernelMatrix> assemble_orders(const DetOperand& op,
                                                      const GridStatistic& st) {
    const auto& g = *op.grid;
    const int beta = op.spec.beta;
    const Eigen::VectorXd& F = st.F;
    const Eigen::VectorXd& Fp = st.Fp;

    if (beta == 2) {
        KernelMatrix t1(g, op.S * (-F).asDiagonal());
        KernelMatrix t2(g, op.S * (0.5 * F.cwiseProduct(F)).asDiagonal());
        return {std::move(t1), std::move(t2)};
    }

    if (beta == 4) {
        auto lin = [&](const Eigen::VectorXd& af, const Eigen::VectorXd& afp) {
            Eigen::MatrixXd T = op.S * af.asDiagonal();
            T.noalias() -= 0.5 * op.Seps * afp.asDiagonal();
            T.noalias() += op.c * op.u * (op.v.cwiseProduct(af)).transpose();
            T.noalias() += 0.5 * op.c * op.u * (op.ev.cwiseProduct(afp)).transpose();
            return T;
        };
        KernelMatrix t1(g, lin(-F, -Fp));
        KernelMatrix t2(g, lin(0.5 * F.cwiseProduct(F), F.cwiseProduct(Fp)));
        return {std::move(t1), std::move(t2)};
    }

    // beta = 1:  f = -lF + l^2 F^2/2,  f' = -lF' + l^2 F F',
    //            f^2 + 2f = -2lF + 2 l^2 F^2,  f eps f' = l^2 F eps F'
    Eigen::MatrixXd T1 = -2.0 * op.S * F.asDiagonal();
    T1.noalias() += op.Seps * Fp.asDiagonal();
    T1.noalias() -= 2.0 * op.c * op.u * (op.v.cwiseProduct(F)).transpose();
    T1.noalias() -= op.c * op.u * (op.ev.cwiseProduct(Fp)).transpose();

    Eigen::MatrixXd T2 = 2.0 * op.S * (F.cwiseProduct(F)).asDiagonal();
    T2.noalias() -= op.Seps * (F.cwiseProduct(Fp)).asDiagonal();
    const int K = static_cast<int>(op.Phi.cols());
    for (int j = 0; j < K; ++j) {
        Eigen::VectorXd e = eps_of(g, op.PhiHat.col(j).cwiseProduct(F));
        T2.noalias() += op.Phi.col(j) * (e.cwiseProduct(Fp)).transpose();
    }
    T2.noalias() += 2.0 * op.c * op.u * (op.v.cwiseProduct(F.cwiseProduct(F))).transpose();
    T2.noalias() += op.c * op.u * (op.ev.cwiseProduct(F.cwiseProduct(Fp))).transpose();
    T2.noalias() +=
        op.c * op.u * (eps_of(g, op.v.cwiseProduct(F)).cwiseProduct(Fp)).transpose();

    return {KernelMatrix(g, std::move(T1)), KernelMatrix(g, std::move(T2))};
}

// ----------------------------------------------------------------- grids

QuadratureGrid default_grid(const EnsembleSpec& spec, int n_nodes) {
    spec.validate();
    const int maxdeg = spec.top_degree() + 2;
    if (n_nodes <= 0) n_nodes = 400;
    if (spec.family == Family::Gaussian) {
        const double R = std::max(10.0, std::sqrt(2.0 * maxdeg) + 6.0);
        return QuadratureGrid::real_line(R, n_nodes);
    }
    const double R = 4.0 * maxdeg + 40.0;
    return QuadratureGrid::half_line(R, n_nodes);
}

QuadratureGrid scaled_grid(const EnsembleSpec& spec, double L, int n_nodes) {
    spec.validate();
    if (n_nodes <= 0) n_nodes = 480;
    if (spec.family == Family::Gaussian) {
        const double s = spec.beta == 4 ? std::sqrt(4.0 * spec.N)
                                        : std::sqrt(2.0 * spec.N);
        QuadratureGrid base = QuadratureGrid::real_line(L, n_nodes);
        return QuadratureGrid::mapped(
            std::move(base), [s](double u) { return u / s; },
            [s](double) { return 1.0 / s; });
    }
    const double cN = spec.beta == 4 ? 8.0 * spec.N : 4.0 * spec.N;
    QuadratureGrid base = QuadratureGrid::half_line(L, n_nodes, 2.0);
    return QuadratureGrid::mapped(
        std::move(base), [cN](double u) { return u * u / cN; },
        [cN](double u) { return 2.0 * u / cN; });
}

// ------------------------------------------------------------------ MGFs

namespace {

// boundary factor for the half-line beta=1 determinant:
// [G]^2 = det(I+T) * (1 - 1/2 f(0) v(0)), (I+T)v = (K 1) + (K f)
double boundary_factor(const DetOperand& op, const Eigen::VectorXd& f,
                       const Eigen::VectorXd& fp, const Eigen::MatrixXd& A,
                       double f_at0) {
    const auto& g = *op.grid;
    const auto& w = g.weights();
    // K = S + c u (x) v
    Eigen::VectorXd Kf = op.S * w.cwiseProduct(f) +
                         op.c * op.u * op.v.dot(w.cwiseProduct(f));
    Eigen::VectorXd rhs = op.K1 + Kf;
    Eigen::VectorXd vsol = Eigen::PartialPivLU<Eigen::MatrixXd>(A).solve(rhs);
    // Nystrom extension to x = 0: rows there keep only the rank-one data
    // (phi_j(0) = 0), with u(0) = eps phit_N(0)
    Eigen::VectorXd h = f.cwiseProduct(f) + 2.0 * f;
    Eigen::VectorXd evf = eps_of(g, op.v.cwiseProduct(f));
    Eigen::VectorXd T0 = op.c * op.u_at0 *
                         (op.v.cwiseProduct(h) + op.ev.cwiseProduct(fp) +
                          evf.cwiseProduct(fp));
    const double u_at0 = op.c * op.u_at0 * op.v.dot(w.cwiseProduct(f));
    const double v0 = u_at0 - T0.cwiseProduct(w).dot(vsol);
    const double f0 = f_at0;
    return 1.0 - 0.5 * f0 * v0;
}

} // namespace

double mgf_squared(const EnsembleSpec& spec, const TestFunction& stat,
                   double lambda, const QuadratureGrid& grid,
                   const ScalingRule& rule) {
    spec.validate();
    if (spec.beta == 2)
        throw std::invalid_argument("mgf_squared: use mgf_beta2 for beta = 2");
    DetOperand op = build_operand(spec, grid);
    GridStatistic st = sample_statistic(grid, stat, rule);
    Eigen::VectorXd f(grid.size()), fp(grid.size());
    for (int i = 0; i < grid.size(); ++i) {
        const double e = std::exp(-lambda * st.F[i]);
        f[i] = e - 1.0;
        fp[i] = -lambda * st.Fp[i] * e;
    }
    KernelMatrix T = assemble_T(op, f, fp);
    double det = fredholm_det(T);
    if (op.has_boundary) {
        Eigen::MatrixXd A = Eigen::MatrixXd::Identity(grid.size(), grid.size()) +
                            T.k * grid.weights().asDiagonal();
        const double f0 = std::exp(-lambda * st.F_at0) - 1.0;
        det *= boundary_factor(op, f, fp, A, f0);
    }
    return det;
}

double mgf_squared(const EnsembleSpec& spec, const TestFunction& stat,
                   double lambda) {
    QuadratureGrid g = default_grid(spec);
    return mgf_squared(spec, stat, lambda, g);
}

double mgf_beta2(const EnsembleSpec& spec, const TestFunction& stat,
                 double lambda, const QuadratureGrid& grid,
                 const ScalingRule& rule) {
    spec.validate();
    if (spec.beta != 2)
        throw std::invalid_argument("mgf_beta2: beta = 2 only");
    DetOperand op = build_operand(spec, grid);
    GridStatistic st = sample_statistic(grid, stat, rule);
    Eigen::VectorXd f(grid.size());
    for (int i = 0; i < grid.size(); ++i)
        f[i] = std::exp(-lambda * st.F[i]) - 1.0;
    return fredholm_det(KernelMatrix(grid, op.S * f.asDiagonal()));
}

double mgf_beta2(const EnsembleSpec& spec, const TestFunction& stat,
                 double lambda) {
    QuadratureGrid g = default_grid(spec);
    return mgf_beta2(spec, stat, lambda, g);
}

double mgf(const EnsembleSpec& spec, const TestFunction& stat, double lambda) {
    if (spec.beta == 2)
        return mgf_beta2(spec, stat, lambda);
    // G(0) = 1 and G is a positive continuous expectation: take +sqrt
    return std::sqrt(mgf_squared(spec, stat, lambda));
}

// ----------------------------------------------------------- mgf_direct

namespace {

double vandermonde_pow(const std::vector<double>& x, int beta) {
    double v = 1.0;
    for (size_t j = 0; j < x.size(); ++j)
        for (size_t k = j + 1; k < x.size(); ++k)
            v *= std::pow(std::abs(x[j] - x[k]), beta);
    return v;
}

// tensor-product rule for beta = 2, 4 (|Delta|^beta is a polynomial)
double direct_tensor(const EnsembleSpec& spec, const TestFunction& stat,
                     double lambda, int n) {
    GaussRule r = spec.family == Family::Gaussian
                      ? hermite_rule_classical(n)
                      : laguerre_rule_classical(n, spec.alpha);
    // map to the paper's weight: GOE-style scaling not needed here
    // (beta = 2,4 weights are exactly e^{-x^2} / x^alpha e^{-x})
    const int N = spec.N;
    double num = 0.0, den = 0.0;
    std::vector<int> idx(N, 0);
    std::vector<double> pt(N);
    while (true) {
        double w = 1.0, h = 1.0;
        for (int d = 0; d < N; ++d) {
            pt[d] = r.nodes[idx[d]];
            w *= r.weights[idx[d]];
            h *= 1.0 + (std::exp(-lambda * stat.value(pt[d])) - 1.0);
        }
        if (w != 0.0) {
            const double vdm = vandermonde_pow(pt, spec.beta);
            num += w * vdm * h;
            den += w * vdm;
        }
        int d = 0;
        while (d < N && ++idx[d] == n) idx[d++] = 0;
        if (d == N) break;
    }
    return num / den;
}

struct Panelized {
    Eigen::VectorXd x, w;
};

Panelized nested_rule(const EnsembleSpec& spec, double lo, double hi, int n) {
    if (spec.family == Family::Laguerre && lo == 0.0) {
        QuadratureGrid g = QuadratureGrid::half_line(hi, n);
        return {g.nodes(), g.weights()};
    }
    QuadratureGrid g = QuadratureGrid::interval(lo, hi, n);
    return {g.nodes(), g.weights()};
}

// ordered-region nested quadrature for beta = 1 (kinked |Delta|)
double direct_ordered(const EnsembleSpec& spec, const TestFunction& stat,
                      double lambda, int n) {
    const int N = spec.N;
    double lo, hi;
    if (spec.family == Family::Gaussian) {
        hi = std::sqrt(2.0 * (N + 4)) + 9.0;
        lo = -hi;
    } else {
        lo = 0.0;
        hi = 4.0 * (N + 4) + 40.0;
    }
    auto hfun = [&](double t) {
        return std::exp(-lambda * stat.value(t));
    };
    double num = 0.0, den = 0.0;
    Panelized outer = nested_rule(spec, lo, hi, n);
    if (N == 2) {
        for (int i = 0; i < outer.x.size(); ++i) {
            const double y = outer.x[i];
            Panelized inner = nested_rule(spec, lo, y, (2 * n) / 3);
            double sn = 0.0, sd = 0.0;
            for (int j = 0; j < inner.x.size(); ++j) {
                const double xx = inner.x[j];
                const double core =
                    inner.w[j] * (y - xx) * spec.weight(xx) * spec.weight(y);
                sd += core;
                sn += core * hfun(xx) * hfun(y);
            }
            num += outer.w[i] * sn;
            den += outer.w[i] * sd;
        }
    } else if (N == 3) {
        for (int i = 0; i < outer.x.size(); ++i) {
            const double z = outer.x[i];
            Panelized mid = nested_rule(spec, lo, z, (2 * n) / 3);
            for (int j = 0; j < mid.x.size(); ++j) {
                const double y = mid.x[j];
                Panelized inner = nested_rule(spec, lo, y, n / 2);
                double sn = 0.0, sd = 0.0;
                for (int k = 0; k < inner.x.size(); ++k) {
                    const double xx = inner.x[k];
                    const double core = inner.w[k] * (y - xx) * (z - xx) *
                                        (z - y) * spec.weight(xx) *
                                        spec.weight(y) * spec.weight(z);
                    sd += core;
                    sn += core * hfun(xx) * hfun(y) * hfun(z);
                }
                num += outer.w[i] * mid.w[j] * sn;
                den += outer.w[i] * mid.w[j] * sd;
            }
        }
    } else {
        throw std::invalid_argument("mgf_direct: beta=1 supports N = 2, 3");
    }
    return num / den;
}

} // namespace

double mgf_direct(const EnsembleSpec& spec, const TestFunction& stat,
                  double lambda, int n_per_dim) {
    spec.validate();
    if (spec.N > 3)
        throw std::invalid_argument("mgf_direct: N <= 3 (cost grows as grid^N)");
    if (spec.N == 1) {
        // no Vandermonde factor: ratio of 1-d integrals int w e^{-lambda F} / int w
        const int n = n_per_dim > 0 ? n_per_dim : 400;
        QuadratureGrid g =
            spec.family == Family::Gaussian
                ? QuadratureGrid::real_line(std::sqrt(2.0 * 6) + 9.0, n)
                : QuadratureGrid::half_line(60.0, n);
        double num = 0.0, den = 0.0;
        for (int i = 0; i < g.size(); ++i) {
            const double x = g.nodes()[i];
            const double c = g.weights()[i] * spec.weight(x);
            den += c;
            num += c * std::exp(-lambda * stat.value(x));
        }
        return num / den;
    }
    if (spec.beta == 1) {
        const int n = n_per_dim > 0 ? n_per_dim : (spec.N == 2 ? 320 : 160);
        return direct_ordered(spec, stat, lambda, n);
    }
    const int n = n_per_dim > 0 ? n_per_dim : (spec.N == 2 ? 120 : 80);
    return direct_tensor(spec, stat, lambda, n);
}

// ------------------------------------------------------------- cumulants

std::pair<double, double> finite_n_cumulants(const EnsembleSpec& spec,
                                             const TestFunction& stat,
                                             bool scaled, int n_nodes) {
    spec.validate();
    QuadratureGrid grid =
        scaled ? scaled_grid(spec, stat.truncation_radius(1e-12), n_nodes)
               : default_grid(spec, n_nodes);
    ScalingRule rule = scaled ? spec.scaling() : ScalingRule{};
    DetOperand op = build_operand(spec, grid);
    GridStatistic st = sample_statistic(grid, stat, rule);
    auto [t1, t2] = assemble_orders(op, st);
    auto [c1, c2] = logdet_coefficients(t1, t2);

    double mean, var;
    if (spec.beta == 2) {
        mean = -c1;
        var = 2.0 * c2;
    } else {
        mean = -0.5 * c1;
        var = c2;
    }

    if (op.has_boundary) {
        // boundary shift: mean unchanged ((K 1)(0) = 0 since int phit_odd = 0);
        // variance gains  1/2 F(0) vdot(0),  vdot = -T1 (K 1) - K F,
        // extended to x = 0 where only the rank-one rows survive:
        // T1(0,y) = c u0 [-2 v(y) F(y) - ev(y) F'(y)]
        const auto& w = grid.weights();
        Eigen::VectorXd T1row0 =
            op.c * op.u_at0 *
            (-2.0 * op.v.cwiseProduct(st.F) - op.ev.cwiseProduct(st.Fp));
        const double KF_at0 = op.c * op.u_at0 * op.v.dot(w.cwiseProduct(st.F));
        const double vdot0 = -T1row0.cwiseProduct(w).dot(op.K1) - KF_at0;
        var += 0.5 * st.F_at0 * vdot0;
    }
    return {mean, var};
}

// --------------------------------------------------------------- checks

std::pair<double, double> vandermonde4_det_check(const std::vector<double>& points) {
    const int N = static_cast<int>(points.size());
    if (N < 1 || N > 6)
        throw std::invalid_argument("vandermonde4_det_check: 1 <= N <= 6");
    const int m = 2 * N;
    Eigen::MatrixXd A(m, m);
    for (int j = 0; j < m; ++j)
        for (int k = 0; k < N; ++k) {
            A(j, 2 * k) = std::pow(points[k], j);
            A(j, 2 * k + 1) = j == 0 ? 0.0 : j * std::pow(points[k], j - 1);
        }
    const double lhs = Eigen::FullPivLU<Eigen::MatrixXd>(A).determinant();
    double rhs = 1.0;
    for (int j = 0; j < N; ++j)
        for (int k = j + 1; k < N; ++k)
            rhs *= std::pow(points[j] - points[k], 4);
    return {lhs, rhs};
}

std::pair<double, double> debruijn_check(
    DeBruijnKind kind, int N,
    const std::vector<std::function<double(double)>>& p,
    const std::vector<std::function<double(double)>>& q, double a, double b,
    int n_nodes) {
    if (N < 1 || N > 2)
        throw std::invalid_argument("debruijn_check: N <= 2");
    QuadratureGrid g = QuadratureGrid::interval(a, b, n_nodes);
    const int n = g.size();

    if (kind == DeBruijnKind::Quaternion) {
        const int m = 2 * N;
        if (static_cast<int>(p.size()) != m || static_cast<int>(q.size()) != m)
            throw std::invalid_argument("debruijn_check: need 2N p's and q's");
        Eigen::MatrixXd P(n, m), Q(n, m);
        for (int j = 0; j < m; ++j)
            for (int i = 0; i < n; ++i) {
                P(i, j) = p[j](g.nodes()[i]);
                Q(i, j) = q[j](g.nodes()[i]);
            }
        // lhs
        double integral = 0.0;
        if (N == 1) {
            for (int i = 0; i < n; ++i)
                integral += g.weights()[i] *
                            (P(i, 0) * Q(i, 1) - P(i, 1) * Q(i, 0));
        } else {
            Eigen::Matrix4d D;
            for (int i1 = 0; i1 < n; ++i1)
                for (int i2 = 0; i2 < n; ++i2) {
                    for (int j = 0; j < 4; ++j) {
                        D(j, 0) = P(i1, j);
                        D(j, 1) = Q(i1, j);
                        D(j, 2) = P(i2, j);
                        D(j, 3) = Q(i2, j);
                    }
                    integral += g.weights()[i1] * g.weights()[i2] * D.determinant();
                }
        }
        const double lhs = integral * integral;
        Eigen::MatrixXd M(m, m);
        for (int j = 0; j < m; ++j)
            for (int k = 0; k < m; ++k) {
                double s = 0.0;
                for (int i = 0; i < n; ++i)
                    s += g.weights()[i] * (P(i, j) * Q(i, k) - P(i, k) * Q(i, j));
                M(j, k) = s;
            }
        double fact = 1.0;
        for (int i = 2; i <= N; ++i) fact *= i;
        const double rhs = fact * fact * M.determinant();
        return {lhs, rhs};
    }

    // orthogonal kind, N = 2 (even)
    if (N != 2)
        throw std::invalid_argument("debruijn_check: orthogonal kind needs N = 2");
    if (static_cast<int>(p.size()) != N)
        throw std::invalid_argument("debruijn_check: need N p's");
    // lhs: ordered-region integral of det(p_j(x_k))
    double integral = 0.0;
    for (int i = 0; i < n; ++i) {
        const double y = g.nodes()[i];
        QuadratureGrid gi = QuadratureGrid::interval(a, y, 2 * n_nodes / 3);
        double s = 0.0;
        for (int k = 0; k < gi.size(); ++k) {
            const double x = gi.nodes()[k];
            s += gi.weights()[k] * (p[0](x) * p[1](y) - p[1](x) * p[0](y));
        }
        integral += g.weights()[i] * s;
    }
    const double lhs = integral * integral;
    // rhs: det of m_jk = iint sgn(y-x) p_j(x) p_k(y) = 2 int (eps p_j) p_k
    Eigen::MatrixXd M(N, N);
    std::vector<GridFunction> pf;
    for (int j = 0; j < N; ++j)
        pf.push_back(GridFunction::sample(g, p[j]));
    for (int j = 0; j < N; ++j) {
        GridFunction ep = apply_eps(pf[j]);
        for (int k = 0; k < N; ++k)
            M(j, k) = 2.0 * g.integrate(ep.values.cwiseProduct(pf[k].values));
    }
    return {lhs, M.determinant()};
}

} // namespace linstats
