#pragma once

#include <memory>
#include <mutex>

#include <Eigen/Dense>

#include "anisolp/common.hpp"

namespace anisolp {

/// Result of solving | delta_{1/t} x | = 1 for t.
struct QuasiNormResult {
    Real value = 0.0;      ///< the quasi-norm rho(x)
    int iterations = 0;    ///< bisection + Newton steps used
    Real residual = 0.0;   ///< | |delta_{1/t} x| - 1 | at the returned t
};

/// One-parameter dilation group delta_t = t^P = exp((log t) P) together with
/// its adjoint group, the associated quasi-norms rho / rho*, and homogeneity
/// data (gamma = trace P, unit ball volume).
///
/// Admissibility requires <Px,x> >= <x,x>, i.e. the symmetric part of P has
/// all eigenvalues >= 1. Under that condition |delta_t x| is strictly
/// increasing in t for x != 0, which makes the quasi-norm well defined.
///
/// Immutable after construction; safe for concurrent reads. The unit ball
/// volume is estimated lazily on first use with single-assignment semantics.
class DilationGroup {
public:
    Index dim() const { return exponent_.rows(); }
    Real gamma() const { return gamma_; }
    const MatrixN& exponent() const { return exponent_; }

    /// True when P is diagonal within 1e-14 (enables fast paths elsewhere).
    bool diagonal() const { return diagonal_; }
    /// True when P == I within 1e-12.
    bool isotropic() const { return isotropic_; }

    /// Dense matrix of delta_t (or delta_t^* when adjoint) for one t.
    MatrixN dilation_matrix(Real t, bool adjoint = false) const;

    /// delta_t x, or delta_t^* x when adjoint is set.
    VectorN apply(Real t, const VectorN& x, bool adjoint = false) const;

    /// Solve for the quasi-norm; dual selects rho* (the adjoint group).
    QuasiNormResult quasi_norm(const VectorN& x, bool dual = false,
                               int max_iterations = 200) const;

    Real rho(const VectorN& x) const { return quasi_norm(x, false).value; }
    Real rho_star(const VectorN& x) const { return quasi_norm(x, true).value; }

    /// |B(0,1)|, estimated once by quadrature (n<=2) or quasi-random
    /// sampling (n>=3) over {rho < 1} and cached.
    Real unit_ball_volume() const;

    /// |B(0,t)| = t^gamma |B(0,1)|.
    Real ball_volume(Real t) const;

    /// Monotonically increasing id; groups are immutable so the id together
    /// with a grid key identifies cached lattice norm tables.
    std::uint64_t id() const { return id_; }

    friend DilationGroup make_dilation_group(const MatrixN& P);

private:
    explicit DilationGroup(MatrixN P);

    // Spectral representation of one of P / P^T for fast t^P application.
    struct Exp {
        bool spectral = false;          // eigendecomposition usable
        Eigen::MatrixXcd vecs, vecs_inv;
        Eigen::VectorXcd eigs;
        MatrixN exponent;               // fallback path: Pade exp((log t) P)
        MatrixN matrix(Real t) const;
    };

    static Exp build_exp(const MatrixN& P);

    MatrixN exponent_;
    Real gamma_ = 0.0;
    bool diagonal_ = false;
    bool isotropic_ = false;
    Exp forward_, adjoint_;
    std::uint64_t id_ = 0;

    mutable std::once_flag volume_once_;
    mutable Real unit_volume_ = 0.0;
};

/// Validates admissibility (min eigenvalue of (P+P^T)/2 >= 1 - 1e-9) and
/// builds the group. Throws AdmissibilityError otherwise.
DilationGroup make_dilation_group(const MatrixN& P);

/// Free-function forms mirroring the member operations.
VectorN apply_dilation(const DilationGroup& G, Real t, const VectorN& x, bool adjoint = false);
QuasiNormResult quasi_norm(const DilationGroup& G, const VectorN& x, bool dual = false);
Real ball_volume(const DilationGroup& G, Real t);

/// The diag(1,2) parabolic example has the closed-form quasi-norm
/// rho(x1,x2) = sqrt((x1^2 + sqrt(x1^4 + 4 x2^2)) / 2), with rho* = rho.
Real diag12_closed_form_rho(Real x1, Real x2);

}  // namespace anisolp
