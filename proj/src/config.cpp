#include "anisolp/config.hpp"

#include <fstream>
#include <set>

#include <nlohmann/json.hpp>

#include "anisolp/dilation.hpp"

namespace anisolp {

namespace {

using nlohmann::json;

void reject_unknown(const json& j, const std::set<std::string>& known, const std::string& where) {
    for (const auto& [key, _] : j.items()) {
        if (!known.contains(key))
            throw DomainError("unknown key '" + key + "' in " + where);
    }
}

}  // namespace

ExperimentConfig::ExperimentConfig() {
    group_exponent.resize(2, 2);
    group_exponent << 1.0, 0.0, 0.0, 2.0;
}

ExperimentConfig ExperimentConfig::from_file(const std::filesystem::path& path) {
    std::ifstream is(path);
    if (!is) throw Error("cannot open config " + path.string());
    std::string text((std::istreambuf_iterator<char>(is)), std::istreambuf_iterator<char>());
    return from_json_text(text);
}

ExperimentConfig ExperimentConfig::from_json_text(const std::string& text) {
    const json root = json::parse(text);
    if (!root.is_object()) throw DomainError("config must be a JSON object");
    reject_unknown(root, {"group", "grid", "family", "sweep", "suites", "output_dir", "master_seed",
                          "threads"},
                   "config");

    ExperimentConfig cfg;
    if (root.contains("group")) {
        const json& g = root["group"];
        reject_unknown(g, {"P"}, "group");
        if (g.contains("P")) {
            const auto rows = g["P"].get<std::vector<std::vector<Real>>>();
            const Index n = static_cast<Index>(rows.size());
            cfg.group_exponent.resize(n, n);
            for (Index i = 0; i < n; ++i) {
                if (static_cast<Index>(rows[i].size()) != n)
                    throw ShapeError("group.P must be a square matrix");
                for (Index j = 0; j < n; ++j) cfg.group_exponent(i, j) = rows[i][j];
            }
        }
    }
    if (root.contains("grid")) {
        const json& g = root["grid"];
        reject_unknown(g, {"extent", "points"}, "grid");
        if (g.contains("extent")) cfg.grid_extent = g["extent"].get<Real>();
        if (g.contains("points")) cfg.grid_points = g["points"].get<Index>();
    }
    if (root.contains("family")) {
        const json& g = root["family"];
        reject_unknown(g, {"seeds", "eps"}, "family");
        if (g.contains("seeds")) cfg.family_seeds = g["seeds"].get<Index>();
        if (g.contains("eps")) cfg.family_eps = g["eps"].get<Real>();
    }
    if (root.contains("sweep")) {
        const json& g = root["sweep"];
        reject_unknown(g, {"alphas", "ps", "betas", "weighted_beta", "k"}, "sweep");
        if (g.contains("alphas")) cfg.sweep_alphas = g["alphas"].get<std::vector<Real>>();
        if (g.contains("ps")) cfg.sweep_ps = g["ps"].get<std::vector<Real>>();
        if (g.contains("betas")) cfg.sweep_betas = g["betas"].get<std::vector<Real>>();
        if (g.contains("weighted_beta")) cfg.sweep_weighted_beta = g["weighted_beta"].get<bool>();
        if (g.contains("k")) cfg.sweep_k = g["k"].get<int>();
    }
    if (root.contains("suites")) {
        cfg.suites.clear();
        for (const auto& name : root["suites"].get<std::vector<std::string>>())
            cfg.suites.push_back(theorem_tag_from_string(name));
    }
    if (root.contains("output_dir")) cfg.output_dir = root["output_dir"].get<std::string>();
    if (root.contains("master_seed")) cfg.master_seed = root["master_seed"].get<std::uint64_t>();
    if (root.contains("threads")) cfg.threads = root["threads"].get<int>();

    cfg.validate();
    return cfg;
}

void ExperimentConfig::validate() const {
    const DilationGroup G = make_dilation_group(group_exponent);  // admissibility check
    GridSpec::cube(G.dim(), grid_extent, grid_points);            // grid sanity
    if (family_seeds < 1) throw DomainError("family.seeds must be >= 1");
    if (!(family_eps > 0.0) || !(family_eps < 0.5)) throw DomainError("family.eps must lie in (0, 1/2)");
    for (Real p : sweep_ps)
        if (!(p > 1.0)) throw RangeError("sweep p values must exceed 1");
    for (TheoremTag tag : suites)
        for (Real alpha : sweep_alphas)
            if (tag != TheoremTag::T5_1) validate_study_range(tag, G, alpha, sweep_k);
}

}  // namespace anisolp
