#include "anisolp/sobolev.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

#include <nlohmann/json.hpp>

#include "anisolp/cutoff.hpp"
#include "anisolp/operators.hpp"
#include "anisolp/quadrature.hpp"
#include "anisolp/squares.hpp"

namespace anisolp {

Real sobolev_norm(const SpatialField& f, const DilationGroup& G, Real alpha, Real p,
                  const Weight& w) {
    if (!(alpha > 0.0)) throw DomainError("sobolev_norm needs alpha > 0");
    const SpatialField g = riesz_potential(f, G, -alpha);
    return weighted_lp_norm(f, p, w) + weighted_lp_norm(g, p, w);
}

std::string to_string(TheoremTag tag) {
    switch (tag) {
        case TheoremTag::T1_2: return "T1.2";
        case TheoremTag::T1_3: return "T1.3";
        case TheoremTag::T1_4: return "T1.4";
        case TheoremTag::T1_5: return "T1.5";
        case TheoremTag::T4_1: return "T4.1";
        case TheoremTag::T4_2: return "T4.2";
        case TheoremTag::T5_1: return "T5.1";
    }
    return "?";
}

TheoremTag theorem_tag_from_string(const std::string& name) {
    if (name == "T1.2") return TheoremTag::T1_2;
    if (name == "T1.3") return TheoremTag::T1_3;
    if (name == "T1.4") return TheoremTag::T1_4;
    if (name == "T1.5") return TheoremTag::T1_5;
    if (name == "T4.1") return TheoremTag::T4_1;
    if (name == "T4.2") return TheoremTag::T4_2;
    if (name == "T5.1") return TheoremTag::T5_1;
    throw RangeError("unknown theorem tag '" + name + "'");
}

std::string to_string(StudyProfile profile) {
    switch (profile) {
        case StudyProfile::BallKernel: return "ball";
        case StudyProfile::BumpKernel: return "bump";
        case StudyProfile::RadialShell: return "radial";
    }
    return "?";
}

void validate_study_range(TheoremTag tag, const DilationGroup& G, Real alpha, int k) {
    const Real gamma = G.gamma();
    Real hi = 0.0;
    switch (tag) {
        case TheoremTag::T1_2:
        case TheoremTag::T1_3: hi = 2.0; break;
        case TheoremTag::T1_4:
        case TheoremTag::T1_5: hi = gamma; break;
        case TheoremTag::T4_1:
        case TheoremTag::T4_2:
            if (k < 1) throw RangeError("T4.x needs k >= 1");
            hi = std::min(2.0 * k, gamma);
            break;
        case TheoremTag::T5_1:
            return;  // alpha is fixed at 2 by the statement
    }
    if (!(alpha > 0.0) || !(alpha < hi))
        throw RangeError("alpha = " + std::to_string(alpha) + " outside (0, " + std::to_string(hi) +
                         ") for " + to_string(tag));
}

namespace {

// Left- and right-hand fields of the tagged equivalence for one input;
// the ratio uses ||lhs||_{p,w} over the sum of the rhs norms.
struct StudyFields {
    SpatialField lhs;
    std::vector<SpatialField> rhs;
};

StudyFields study_fields(TheoremTag tag, const SpatialField& f, const DilationGroup& G,
                         const StudyParams& prm, const AveragingKernel* kernel) {
    const auto [a, b] = spectral_band(f, G);
    const auto weighted_quad = [&](int k) {
        return TQuadrature::for_band_weighted(a, b, prm.alpha, k, prm.nodes_per_octave,
                                              prm.core_octaves);
    };
    StudyFields out;
    switch (tag) {
        case TheoremTag::T1_2:
            out.lhs = riesz_potential(f, G, -prm.alpha);
            out.rhs.push_back(avg_square(f, *kernel, prm.alpha, G, weighted_quad(1)).field);
            break;
        case TheoremTag::T1_3:
            out.lhs = potential_square(f, *kernel, prm.alpha, G, weighted_quad(1)).field;
            out.rhs.push_back(f);
            break;
        case TheoremTag::T1_4:
            if (prm.profile == StudyProfile::RadialShell) {
                const TQuadrature q = TQuadrature::log_uniform(0.5 / b, 4.0 / a, 16);
                out.lhs = g_psi(f, radial_profile(ScaleBump::normalized()), G, q).field;
            } else {
                out.lhs = potential_square(f, *kernel, prm.alpha, G, weighted_quad(1)).field;
            }
            out.rhs.push_back(f);
            break;
        case TheoremTag::T1_5:
            out.lhs = riesz_potential(f, G, -prm.alpha);
            out.rhs.push_back(avg_square(f, *kernel, prm.alpha, G, weighted_quad(1)).field);
            break;
        case TheoremTag::T4_1:
            out.lhs = iterated_potential_square(f, *kernel, prm.alpha, prm.k, G,
                                                weighted_quad(prm.k))
                          .field;
            out.rhs.push_back(f);
            break;
        case TheoremTag::T4_2:
            out.lhs = riesz_potential(f, G, -prm.alpha);
            out.rhs.push_back(
                iterated_square(f, *kernel, prm.alpha, prm.k, G, weighted_quad(prm.k)).field);
            break;
        case TheoremTag::T5_1:
            out.lhs = riesz_potential(f, G, -2.0);
            out.rhs.push_back(spatial_derivative(f, {2, 0}));
            out.rhs.push_back(spatial_derivative(f, {0, 1}));
            break;
    }
    return out;
}

Real side_ratio(const StudyFields& fields, Real p, const Weight& w) {
    Real denom = 0.0;
    for (const SpatialField& r : fields.rhs) denom += weighted_lp_norm(r, p, w);
    return weighted_lp_norm(fields.lhs, p, w) / denom;
}

const AveragingKernel* study_kernel(TheoremTag tag, const StudyParams& params,
                                    const DilationGroup& G) {
    // B_alpha / C_alpha are defined with chi_0; the other tags choose
    if (tag == TheoremTag::T1_2 || tag == TheoremTag::T1_3) return &shared_ball_kernel(G);
    if (tag == TheoremTag::T5_1 ||
        (tag == TheoremTag::T1_4 && params.profile == StudyProfile::RadialShell))
        return nullptr;
    return params.profile == StudyProfile::BumpKernel ? &shared_bump_kernel(G)
                                                      : &shared_ball_kernel(G);
}

}  // namespace

std::vector<EquivalenceReport> equivalence_studies(TheoremTag tag, const FamilySpec& family,
                                                   const StudyParams& base,
                                                   const std::vector<NormPair>& norms,
                                                   const DilationGroup& G) {
    validate_study_range(tag, G, base.alpha, base.k);
    if (family.seeds < 1) throw DomainError("family needs at least one seed");
    if (norms.empty()) throw DomainError("need at least one (p, beta) pair");
    for (const NormPair& n : norms)
        if (!(n.p > 1.0)) throw RangeError("p must exceed 1");

    const AveragingKernel* kernel = study_kernel(tag, base, G);
    const Real offset = 0.25 * std::pow(family.grid.cell_volume(), 1.0 / family.grid.dim());

    std::vector<Weight> weights;
    std::vector<EquivalenceReport> reports(norms.size());
    for (std::size_t c = 0; c < norms.size(); ++c) {
        weights.push_back(norms[c].beta == 0.0 ? constant_weight(G)
                                               : power_weight(G, norms[c].beta, offset));
        reports[c].tag = tag;
        reports[c].params = base;
        reports[c].params.p = norms[c].p;
        reports[c].params.beta = norms[c].beta;
        reports[c].family = family;
    }

    std::vector<Real> fine_min(norms.size(), std::numeric_limits<Real>::infinity());
    std::vector<Real> fine_max(norms.size(), 0.0);

    for (Index s = 0; s < family.seeds; ++s) {
        const std::uint64_t seed = family.seed_base + static_cast<std::uint64_t>(s);
        const SpatialField f = random_test_function(seed, G, family.grid, family.eps);
        const StudyFields coarse = study_fields(tag, f, G, base, kernel);
        const SpatialField fine_f = refine_field(f);
        const StudyFields fine = study_fields(tag, fine_f, G, base, kernel);

        for (std::size_t c = 0; c < norms.size(); ++c) {
            EquivalenceReport& rep = reports[c];
            const Real ratio = side_ratio(coarse, norms[c].p, weights[c]);
            rep.seeds.push_back(seed);
            Real denom = 0.0;
            for (const SpatialField& r : coarse.rhs) denom += weighted_lp_norm(r, norms[c].p, weights[c]);
            rep.lhs.push_back(weighted_lp_norm(coarse.lhs, norms[c].p, weights[c]));
            rep.rhs.push_back(denom);
            rep.ratios.push_back(ratio);

            const Real fine_ratio = side_ratio(fine, norms[c].p, weights[c]);
            fine_min[c] = std::min(fine_min[c], fine_ratio);
            fine_max[c] = std::max(fine_max[c], fine_ratio);
        }
    }

    for (std::size_t c = 0; c < norms.size(); ++c) {
        EquivalenceReport& rep = reports[c];
        rep.c_min = *std::min_element(rep.ratios.begin(), rep.ratios.end());
        rep.c_max = *std::max_element(rep.ratios.begin(), rep.ratios.end());
        rep.spread = rep.c_max / rep.c_min;
        const Real fine_spread = fine_max[c] / fine_min[c];
        rep.refinement_drift = std::abs(fine_spread - rep.spread) / rep.spread;
    }
    return reports;
}

EquivalenceReport equivalence_study(TheoremTag tag, const FamilySpec& family,
                                    const StudyParams& params, const DilationGroup& G) {
    return equivalence_studies(tag, family, params, {{params.p, params.beta}}, G).front();
}

Diag12Result diag12_derivative_check(const SpatialField& f, Real p, const Weight& w,
                                     const DilationGroup& G) {
    MatrixN expected(2, 2);
    expected << 1.0, 0.0, 0.0, 2.0;
    if (G.dim() != 2 || (G.exponent() - expected).cwiseAbs().maxCoeff() > 1e-12)
        throw DomainError("diag12_derivative_check requires the diag(1,2) group");

    const SpatialField riesz = riesz_potential(f, G, -2.0);       // I_{-2} f
    const SpatialField theta = spatial_derivative(f, {2, 0});     // d1^2 f
    const SpatialField xi = spatial_derivative(f, {0, 1});        // d2 f

    Diag12Result out;
    out.lhs = weighted_lp_norm(riesz, p, w);
    out.rhs = weighted_lp_norm(theta, p, w) + weighted_lp_norm(xi, p, w);
    out.norm_ratio = out.lhs / out.rhs;

    // reconstruction: I_{-2} f = T_{N~^{-1}}(Theta + Xi),
    // N(xi) = (k(xi) - l(xi)) / rho*(xi)^2, N~(xi) = N(-xi)
    MultiplierSymbol n_tilde_inv(
        [](const VectorN& xi_v, Real rho_star) -> Complex {
            const Complex k{-4.0 * kPi * kPi * xi_v[0] * xi_v[0], 0.0};
            const Complex l{0.0, kTwoPi * xi_v[1]};
            // N(-xi) = (k + l)/rho*^2 since k is even and l is odd
            return (rho_star * rho_star) / (k + l);
        },
        true, Complex{0.0, 0.0}, "diag12-ntilde-inverse");
    SpatialField sum(f.grid(), theta.samples() + xi.samples());
    const SpatialField reconstructed = apply_multiplier(n_tilde_inv, sum, G);

    const Real scale = riesz.samples().abs().maxCoeff();
    out.reconstruction_error =
        (reconstructed.samples() - riesz.samples()).abs().maxCoeff() / std::max(scale, 1e-300);
    return out;
}

namespace {

std::string format_real(Real v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

void write_report_csv(const std::filesystem::path& path,
                      const std::vector<EquivalenceReport>& reports) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw Error("cannot open " + path.string());
    os << "tag,alpha,p,beta,k,seed,lhs,rhs,ratio\r\n";
    for (const auto& r : reports) {
        for (std::size_t i = 0; i < r.ratios.size(); ++i) {
            os << to_string(r.tag) << ',' << format_real(r.params.alpha) << ','
               << format_real(r.params.p) << ',' << format_real(r.params.beta) << ',' << r.params.k
               << ',' << r.seeds[i] << ',' << format_real(r.lhs[i]) << ',' << format_real(r.rhs[i])
               << ',' << format_real(r.ratios[i]) << "\r\n";
        }
    }
}

void write_report_summary(const std::filesystem::path& path,
                          const std::vector<EquivalenceReport>& reports) {
    nlohmann::ordered_json root;
    root["schema_version"] = 1;
    auto& arr = root["studies"];
    for (const auto& r : reports) {
        nlohmann::ordered_json j;
        j["tag"] = to_string(r.tag);
        j["alpha"] = r.params.alpha;
        j["p"] = r.params.p;
        j["beta"] = r.params.beta;
        j["k"] = r.params.k;
        j["profile"] = to_string(r.params.profile);
        j["seeds"] = r.seeds.size();
        j["c_min"] = r.c_min;
        j["c_max"] = r.c_max;
        j["spread"] = r.spread;
        j["refinement_drift"] = r.refinement_drift;
        arr.push_back(std::move(j));
    }
    std::ofstream os(path, std::ios::binary);
    if (!os) throw Error("cannot open " + path.string());
    os << root.dump(2) << '\n';
}

}  // namespace anisolp
