#pragma once

#include "anisolp/common.hpp"
#include "anisolp/dilation.hpp"
#include "anisolp/fields.hpp"
#include "anisolp/grid.hpp"
#include "anisolp/kernels.hpp"
#include "anisolp/quadrature.hpp"

namespace anisolp {

/// Output of a square function: a nonnegative real field, the quadrature
/// used, and the estimated relative mass lost to scale truncation.
struct SquareFunctionResult {
    SpatialField field;
    TQuadrature quadrature;
    Real truncation_note = 0.0;
};

/// Littlewood-Paley g_psi(f)(x) = (int |f * psi_t(x)|^2 dt/t)^{1/2},
/// evaluated spectrally per node: F(f * psi_t)(xi) = f_hat(xi)
/// psi_hat(delta_t^* xi). QuadratureCoverageError when the estimated tail
/// mass exceeds 1e-6 of the total.
SquareFunctionResult g_psi(const SpatialField& f, const LPProfile& psi, const DilationGroup& G,
                           const TQuadrature& quad);

/// Vector variant: l2 over components inside the scale integral.
SquareFunctionResult g_vector(const SpatialField& f, const std::vector<LPProfile>& profiles,
                              const DilationGroup& G, const TQuadrature& quad);

/// G_alpha (B_alpha when Phi = chi_0):
/// (int |f - Phi_t * f|^2 dt/t^{1+2 alpha})^{1/2}.
SquareFunctionResult avg_square(const SpatialField& f, const AveragingKernel& kernel, Real alpha,
                                const DilationGroup& G, const TQuadrature& quad);

/// H_alpha (C_alpha when Phi = chi_0): avg_square applied to I_alpha f;
/// coincides with g_psi for the potential profile psi^(alpha).
SquareFunctionResult potential_square(const SpatialField& f, const AveragingKernel& kernel,
                                      Real alpha, const DilationGroup& G, const TQuadrature& quad);

enum class IteratedRoute { ClosedForm, BinomialSum };

/// E_alpha^(k): (int |(I - Lambda_t)^k f|^2 dt/t^{1+2 alpha})^{1/2} with the
/// node symbol (1 - Phi_hat(delta_t^* xi))^k; the binomial route evaluates
/// 1 - sum_j (-1)^{j+1} C(k,j) Phi_hat^j instead (the K^(k) kernel path).
SquareFunctionResult iterated_square(const SpatialField& f, const AveragingKernel& kernel, Real alpha,
                                     int k, const DilationGroup& G, const TQuadrature& quad,
                                     IteratedRoute route = IteratedRoute::ClosedForm);

/// U_alpha^(k): iterated_square applied to I_alpha f; 0 < alpha < min(2k, gamma).
SquareFunctionResult iterated_potential_square(const SpatialField& f, const AveragingKernel& kernel,
                                               Real alpha, int k, const DilationGroup& G,
                                               const TQuadrature& quad,
                                               IteratedRoute route = IteratedRoute::ClosedForm);

enum class MarcinkiewiczVariant { Mu, Nu };

/// 1-D Marcinkiewicz functions on the primitive F (F_hat = f_hat/(2 pi i xi)):
///   mu: second differences |F(x+t) + F(x-t) - 2 F(x)|^2 dt/t^3,
///   nu: |F - F * Phi_t|^2 dt/t^3 with Phi = (1/2) chi_[-1,1].
/// DomainError unless the field is one-dimensional.
SquareFunctionResult marcinkiewicz(const SpatialField& f, MarcinkiewiczVariant variant,
                                   const TQuadrature& quad);

/// Export: the field as .fld plus a JSON sidecar carrying
/// {profile, alpha, k, quadrature{t_min, t_max, nodes}, truncation_note}.
void save_square_result(const std::filesystem::path& field_path,
                        const std::filesystem::path& meta_path, const SquareFunctionResult& result,
                        const std::string& profile_tag, Real alpha, int k);

}  // namespace anisolp
