#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "anisolp/common.hpp"
#include "anisolp/sobolev.hpp"

namespace anisolp {

/// Declarative experiment description, read from a flat JSON file. Every
/// field has a default; unknown keys are rejected. Range validation happens
/// at parse time so a bad configuration never starts computing.
struct ExperimentConfig {
    MatrixN group_exponent;            // default diag(1,2)
    Real grid_extent = 16.0;
    Index grid_points = 256;
    Index family_seeds = 8;
    Real family_eps = 0.125;
    std::vector<Real> sweep_alphas{0.5, 1.0, 1.5};
    std::vector<Real> sweep_ps{1.5, 2.0, 3.0};
    std::vector<Real> sweep_betas{0.0};
    bool sweep_weighted_beta = true;   // adds beta = 0.3 gamma (p-1) per p
    int sweep_k = 2;
    std::vector<TheoremTag> suites{TheoremTag::T1_2, TheoremTag::T1_3, TheoremTag::T1_4,
                                   TheoremTag::T1_5, TheoremTag::T4_1, TheoremTag::T4_2};
    std::filesystem::path output_dir = "out";
    std::uint64_t master_seed = 1000;
    int threads = 0;  // 0 = resolve from environment

    ExperimentConfig();

    static ExperimentConfig from_file(const std::filesystem::path& path);
    static ExperimentConfig from_json_text(const std::string& text);

    /// Cross-field validation (tag/alpha ranges, grid sanity). Throws
    /// RangeError / DomainError with a diagnostic.
    void validate() const;
};

}  // namespace anisolp
