#include "anisolp/dilation.hpp"

#include <atomic>
#include <cmath>

#include <unsupported/Eigen/MatrixFunctions>

#include "anisolp/philox.hpp"

namespace anisolp {

namespace {

std::atomic<std::uint64_t> g_next_group_id{1};

}  // namespace

DilationGroup::Exp DilationGroup::build_exp(const MatrixN& P) {
    Exp e;
    e.exponent = P;
    Eigen::EigenSolver<MatrixN> es(P);
    if (es.info() == Eigen::Success) {
        const Eigen::MatrixXcd V = es.eigenvectors();
        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(V);
        const Real smin = svd.singularValues().minCoeff();
        const Real smax = svd.singularValues().maxCoeff();
        if (smin > 0 && smax / smin < 1e8) {
            e.spectral = true;
            e.vecs = V;
            e.vecs_inv = V.inverse();
            e.eigs = es.eigenvalues();
        }
    }
    return e;
}

MatrixN DilationGroup::Exp::matrix(Real t) const {
    const Real logt = std::log(t);
    if (spectral) {
        Eigen::VectorXcd scale(eigs.size());
        for (Index i = 0; i < eigs.size(); ++i) scale[i] = std::exp(logt * eigs[i]);
        return (vecs * scale.asDiagonal() * vecs_inv).real();
    }
    return (logt * exponent).exp();
}

DilationGroup::DilationGroup(MatrixN P) : exponent_(std::move(P)) {
    gamma_ = exponent_.trace();
    const Index n = exponent_.rows();
    diagonal_ = ((exponent_ - MatrixN(exponent_.diagonal().asDiagonal())).cwiseAbs().maxCoeff() < 1e-14);
    isotropic_ = ((exponent_ - MatrixN::Identity(n, n)).cwiseAbs().maxCoeff() < 1e-12);
    forward_ = build_exp(exponent_);
    adjoint_ = build_exp(exponent_.transpose());
    id_ = g_next_group_id.fetch_add(1);
}

DilationGroup make_dilation_group(const MatrixN& P) {
    if (P.rows() != P.cols() || P.rows() < 1) throw ShapeError("dilation exponent must be square, n >= 1");
    if (!P.allFinite()) throw DomainError("dilation exponent has non-finite entries");
    const MatrixN sym = 0.5 * (P + P.transpose());
    Eigen::SelfAdjointEigenSolver<MatrixN> es(sym);
    if (es.info() != Eigen::Success) throw AdmissibilityError("eigenvalue solve failed for symmetric part");
    const Real min_eig = es.eigenvalues().minCoeff();
    if (min_eig < 1.0 - 1e-9) {
        throw AdmissibilityError("symmetric part of P has eigenvalue " + std::to_string(min_eig) +
                                 " < 1; <Px,x> >= <x,x> fails");
    }
    return DilationGroup(P);
}

MatrixN DilationGroup::dilation_matrix(Real t, bool adjoint) const {
    if (!(t > 0.0)) throw DomainError("dilation parameter t must be positive");
    return (adjoint ? adjoint_ : forward_).matrix(t);
}

VectorN DilationGroup::apply(Real t, const VectorN& x, bool adjoint) const {
    if (!(t > 0.0)) throw DomainError("dilation parameter t must be positive");
    if (x.size() != dim()) throw ShapeError("vector dimension does not match the group");
    if (diagonal_) {
        VectorN y(x.size());
        for (Index i = 0; i < x.size(); ++i) y[i] = std::pow(t, exponent_(i, i)) * x[i];
        return y;
    }
    return (adjoint ? adjoint_ : forward_).matrix(t) * x;
}

QuasiNormResult DilationGroup::quasi_norm(const VectorN& x, bool dual, int max_iterations) const {
    if (x.size() != dim()) throw ShapeError("vector dimension does not match the group");
    if (!x.allFinite()) throw DomainError("quasi-norm argument has non-finite entries");
    QuasiNormResult out;
    const Real norm = x.norm();
    if (norm < 1e-300) return out;  // rho(0) = 0; avoids underflow in the log-domain bracket

    const Exp& rep = dual ? adjoint_ : forward_;
    const MatrixN P = dual ? exponent_.transpose() : exponent_;
    const Index n = dim();

    // y(t) = delta_{1/t} x; h(t) = |y(t)| is strictly decreasing, h(rho) = 1.
    VectorN y(n);
    const auto eval = [&](Real t) {
        if (diagonal_) {
            for (Index i = 0; i < n; ++i) y[i] = std::pow(t, -exponent_(i, i)) * x[i];
        } else {
            y.noalias() = rep.matrix(1.0 / t) * x;
        }
        return y.norm();
    };

    // Properties (a)/(b) give the global bracket [min(|x|,1), max(|x|,1)].
    Real lo = std::min(norm, 1.0), hi = std::max(norm, 1.0);
    int iter = 0;

    // Bisect in log t until the bracket is relatively tight.
    while (hi / lo > 1.0 + 1e-3 && iter < max_iterations) {
        const Real mid = std::sqrt(lo * hi);
        (eval(mid) >= 1.0 ? lo : hi) = mid;
        ++iter;
    }

    // Newton on phi(t) = |delta_{1/t} x|^2 - 1, with
    // phi'(t) = -(2/t) <P y, y>. Admissibility bounds phi'(t) <= -2/t near
    // the root, so the iteration is well conditioned.
    Real t = std::sqrt(lo * hi);
    Real h = eval(t);
    Real residual = std::abs(h - 1.0);
    while (residual > 1e-13 && iter < max_iterations) {
        const Real phi = h * h - 1.0;
        const Real dphi = -(2.0 / t) * y.dot(P * y);
        Real next = t - phi / dphi;
        if (!(next > lo) || !(next < hi)) next = std::sqrt(lo * hi);  // safeguard: fall back to bisection
        h = eval(next);
        (h >= 1.0 ? lo : hi) = next;
        t = next;
        residual = std::abs(h - 1.0);
        ++iter;
    }
    if (residual > 1e-12 * std::max(1.0, t)) {
        throw ConvergenceError("quasi-norm iteration did not converge (residual " +
                               std::to_string(residual) + ")");
    }
    out.value = t;
    out.iterations = iter;
    out.residual = residual;
    return out;
}

Real DilationGroup::unit_ball_volume() const {
    std::call_once(volume_once_, [this] {
        const Index n = dim();
        if (n <= 2) {
            // deterministic tensor-grid midpoint count over [-1,1]^n
            const Index res = 512;
            const Real h = 2.0 / res;
            Index inside = 0;
            VectorN p(n);
            if (n == 1) {
                for (Index i = 0; i < res; ++i) {
                    p[0] = -1.0 + (i + 0.5) * h;
                    if (quasi_norm(p).value < 1.0) ++inside;
                }
                unit_volume_ = inside * h;
            } else {
                for (Index i = 0; i < res; ++i)
                    for (Index j = 0; j < res; ++j) {
                        p[0] = -1.0 + (i + 0.5) * h;
                        p[1] = -1.0 + (j + 0.5) * h;
                        if (quasi_norm(p).value < 1.0) ++inside;
                    }
                unit_volume_ = inside * h * h;
            }
        } else {
            // quasi-random (Philox-driven) sampling, >= 1e6 points
            const Index samples = 1 << 20;
            Index inside = 0;
            VectorN p(n);
            for (Index s = 0; s < samples; ++s) {
                const auto w = Philox4x64::block({static_cast<std::uint64_t>(s), 0, 0, 0}, {id_, 0x62616c6cull});
                for (Index a = 0; a < n; ++a) p[a] = 2.0 * uniform_from_bits(w[a % 4] + (a / 4)) - 1.0;
                if (quasi_norm(p).value < 1.0) ++inside;
            }
            unit_volume_ = std::pow(2.0, static_cast<Real>(n)) * static_cast<Real>(inside) / samples;
        }
    });
    return unit_volume_;
}

Real DilationGroup::ball_volume(Real t) const {
    if (!(t > 0.0)) throw DomainError("ball radius must be positive");
    return std::pow(t, gamma_) * unit_ball_volume();
}

VectorN apply_dilation(const DilationGroup& G, Real t, const VectorN& x, bool adjoint) {
    return G.apply(t, x, adjoint);
}

QuasiNormResult quasi_norm(const DilationGroup& G, const VectorN& x, bool dual) {
    return G.quasi_norm(x, dual);
}

Real ball_volume(const DilationGroup& G, Real t) { return G.ball_volume(t); }

Real diag12_closed_form_rho(Real x1, Real x2) {
    return std::sqrt(0.5 * (x1 * x1 + std::sqrt(x1 * x1 * x1 * x1 + 4.0 * x2 * x2)));
}

}  // namespace anisolp
