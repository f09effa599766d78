#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "anisolp/common.hpp"
#include "anisolp/dilation.hpp"
#include "anisolp/fields.hpp"
#include "anisolp/grid.hpp"
#include "anisolp/kernels.hpp"

namespace anisolp {

/// ||f||_{p,alpha,w} = ||f||_{p,w} + ||I_{-alpha} f||_{p,w}.
Real sobolev_norm(const SpatialField& f, const DilationGroup& G, Real alpha, Real p,
                  const Weight& w);

/// The norm equivalences under empirical test. Each tag pairs a left- and a
/// right-hand norm whose ratio the corresponding theorem bounds above and
/// below:
///   T1_2: ||I_{-alpha} f||   vs ||B_alpha f||        (alpha in (0,2), Phi = chi_0)
///   T1_3: ||C_alpha f||      vs ||f||                (alpha in (0,2), Phi = chi_0)
///   T1_4: ||H_alpha f||      vs ||f||                (alpha in (0,gamma))
///   T1_5: ||I_{-alpha} f||   vs ||G_alpha f||        (alpha in (0,gamma))
///   T4_1: ||U_alpha^(k) f||  vs ||f||                (alpha in (0,min(2k,gamma)))
///   T4_2: ||I_{-alpha} f||   vs ||E_alpha^(k) f||    (alpha in (0,min(2k,gamma)))
///   T5_1: ||I_{-2} f||       vs ||d1^2 f|| + ||d2 f|| (diag(1,2) only)
enum class TheoremTag { T1_2, T1_3, T1_4, T1_5, T4_1, T4_2, T5_1 };

std::string to_string(TheoremTag tag);
TheoremTag theorem_tag_from_string(const std::string& name);

/// Square-function flavour for the tags that admit a choice.
enum class StudyProfile { BallKernel, BumpKernel, RadialShell };

std::string to_string(StudyProfile profile);

struct FamilySpec {
    Index seeds = 32;
    Real eps = 0.125;
    GridSpec grid;
    std::uint64_t seed_base = 1000;
};

struct StudyParams {
    Real alpha = 1.0;
    Real p = 2.0;
    Real beta = 0.0;   // power-weight exponent; 0 means w == 1
    int k = 2;          // iteration order for T4_x
    StudyProfile profile = StudyProfile::BallKernel;
    int nodes_per_octave = 8;
    Real core_octaves = 6.0;
};

struct EquivalenceReport {
    TheoremTag tag = TheoremTag::T1_4;
    StudyParams params;
    FamilySpec family;
    std::vector<std::uint64_t> seeds;
    std::vector<Real> lhs, rhs, ratios;
    Real c_min = 0.0, c_max = 0.0, spread = 1.0;
    Real refinement_drift = 0.0;  // relative change of spread at doubled grid
};

/// Validates the parameter ranges for a tag (RangeError outside them).
void validate_study_range(TheoremTag tag, const DilationGroup& G, Real alpha, int k);

/// Runs both sides of the tagged equivalence over the seeded band-limited
/// family, once on the family grid and once spectrally refined (doubled
/// points), and collects ratio statistics.
EquivalenceReport equivalence_study(TheoremTag tag, const FamilySpec& family,
                                    const StudyParams& params, const DilationGroup& G);

/// Norm flavour of one study cell; the square-function fields are shared
/// across all pairs, so sweeping (p, beta) costs little beyond one pair.
struct NormPair {
    Real p = 2.0;
    Real beta = 0.0;
};

std::vector<EquivalenceReport> equivalence_studies(TheoremTag tag, const FamilySpec& family,
                                                   const StudyParams& base,
                                                   const std::vector<NormPair>& norms,
                                                   const DilationGroup& G);

struct Diag12Result {
    Real lhs = 0.0;                  // ||I_{-2} f||_{p,w}
    Real rhs = 0.0;                  // ||d1^2 f||_{p,w} + ||d2 f||_{p,w}
    Real norm_ratio = 0.0;           // lhs / rhs
    Real reconstruction_error = 0.0; // max |I_{-2} f - T_{N~^{-1}}(Theta + Xi)|
};

/// The diag(1,2) derivative characterization: second x1- and first
/// x2-derivative norms against the Riesz norm, plus the spectral
/// reconstruction identity I_{-2} f = T_{N~^{-1}}(Theta + Xi).
Diag12Result diag12_derivative_check(const SpatialField& f, Real p, const Weight& w,
                                     const DilationGroup& G);

/// CSV rows (tag, alpha, p, beta, k, seed, lhs, rhs, ratio), RFC 4180.
void write_report_csv(const std::filesystem::path& path,
                      const std::vector<EquivalenceReport>& reports);

/// JSON summary per report: {c_min, c_max, spread, refinement_drift}.
void write_report_summary(const std::filesystem::path& path,
                          const std::vector<EquivalenceReport>& reports);

}  // namespace anisolp
