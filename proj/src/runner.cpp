#include "anisolp/runner.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>

#include <nlohmann/json.hpp>

#include "anisolp/cutoff.hpp"
#include "anisolp/operators.hpp"
#include "anisolp/parallel.hpp"
#include "anisolp/philox.hpp"
#include "anisolp/quadrature.hpp"
#include "anisolp/squares.hpp"
#include "anisolp/weights.hpp"

namespace anisolp {

namespace {

Real rel_diff(const Eigen::ArrayXcd& a, const Eigen::ArrayXcd& b) {
    const Real scale = std::max(a.abs().maxCoeff(), b.abs().maxCoeff());
    if (scale == 0.0) return 0.0;
    return (a - b).abs().maxCoeff() / scale;
}

Real rel_l2_diff(const Eigen::ArrayXcd& a, const Eigen::ArrayXcd& b) {
    const Real scale = std::sqrt(std::max(a.abs2().sum(), b.abs2().sum()));
    if (scale == 0.0) return 0.0;
    return std::sqrt((a - b).abs2().sum()) / scale;
}

VectorN random_point(std::uint64_t seed, std::uint64_t n, Index dim, Real span) {
    const auto w = Philox4x64::block({n, 0, 0, 1}, {seed, 0x706f696e74ull});
    VectorN x(dim);
    for (Index a = 0; a < dim; ++a) x[a] = span * (2.0 * uniform_from_bits(w[a % 4] + a / 4) - 1.0);
    return x;
}

void emit(std::vector<CheckResult>& out, const std::string& name, Real value, Real tolerance,
          bool larger_is_failure = true) {
    CheckResult r;
    r.name = name;
    r.value = value;
    r.tolerance = tolerance;
    r.passed = larger_is_failure ? (value <= tolerance) : (value >= tolerance);
    out.push_back(r);
}

void write_checks_json(const std::filesystem::path& path, const std::vector<CheckResult>& checks) {
    nlohmann::ordered_json root;
    root["schema_version"] = 1;
    auto& arr = root["checks"];
    for (const auto& c : checks) {
        nlohmann::ordered_json j;
        j["name"] = c.name;
        j["passed"] = c.passed;
        j["value"] = c.value;
        j["tolerance"] = c.tolerance;
        arr.push_back(std::move(j));
    }
    std::ofstream os(path, std::ios::binary);
    if (!os) throw Error("cannot open " + path.string());
    os << root.dump(2) << '\n';
}

}  // namespace

std::vector<CheckResult> run_verify(const ExperimentConfig& cfg) {
    std::vector<CheckResult> checks;
    const DilationGroup G = make_dilation_group(cfg.group_exponent);
    const Index n = G.dim();
    const GridSpec grid = GridSpec::cube(n, cfg.grid_extent, cfg.grid_points);
    const std::uint64_t seed = cfg.master_seed;

    // --- dilation ---
    {
        Real worst = 0.0;
        for (int i = 0; i < 200; ++i) {
            const VectorN x = random_point(seed, i, n, 4.0);
            const Real s = std::exp2(4.0 * (2.0 * uniform_from_bits(i * 2654435761u + 1) - 1.0));
            const Real t = std::exp2(4.0 * (2.0 * uniform_from_bits(i * 2654435761u + 7) - 1.0));
            const VectorN lhs = G.apply(s, G.apply(t, x));
            const VectorN rhs = G.apply(s * t, x);
            worst = std::max(worst, (lhs - rhs).norm() / std::max(1.0, rhs.norm()));
        }
        emit(checks, "dilation.group_law", worst, 1e-12);
    }
    {
        Real worst = 0.0, worst_sym = 0.0, worst_tri = 0.0;
        for (int i = 0; i < 500; ++i) {
            const VectorN x = random_point(seed, 1000 + i, n, 8.0);
            const VectorN y = random_point(seed, 2000 + i, n, 8.0);
            const Real t = std::exp2(6.0 * (2.0 * uniform_from_bits(i * 40503u + 3) - 1.0));
            const Real r = G.rho(x);
            if (r > 0.0)
                worst = std::max(worst, std::abs(G.rho(G.apply(t, x)) - t * r) / (t * r));
            worst_sym = std::max(worst_sym, std::abs(G.rho(-x) - r) / std::max(1.0, r));
            worst_tri = std::max(worst_tri, G.rho(x + y) - G.rho(x) - G.rho(y));
        }
        emit(checks, "dilation.homogeneity", worst, 1e-9);
        emit(checks, "dilation.symmetry", worst_sym, 1e-12);
        emit(checks, "dilation.triangle", worst_tri, 1e-9);
    }
    {
        Real worst = 0.0;
        for (int i = 0; i < 500; ++i) {
            VectorN x = random_point(seed, 3000 + i, n, 1.0);
            const Real r = G.rho(x), e = x.norm();
            if ((e <= 1.0 && r > 1.0 + 1e-9) || (e > 1.0 && r <= 1.0 - 1e-9))
                worst = std::max(worst, std::abs(r - 1.0));
            if (e <= 1.0) worst = std::max(worst, e - 1e-9 > r ? e - r : 0.0);  // rho >= |x| inside
        }
        emit(checks, "dilation.unit_ball_compat", worst, 1e-9);
        emit(checks, "dilation.ball_scaling",
             std::abs(G.ball_volume(2.0) / G.ball_volume(1.0) - std::exp2(G.gamma())), 1e-9);
    }

    // --- fields ---
    {
        const SpatialField f = random_test_function(seed + 1, G, grid, cfg.family_eps);
        const SpatialField back = from_spectrum(to_spectrum(f));
        emit(checks, "fields.round_trip", rel_diff(f.samples(), back.samples()), 1e-12);
        emit(checks, "fields.parseval",
             std::abs(l2_norm(f) - spectral_l2_norm(to_spectrum(f))) / l2_norm(f), 1e-10);

        const SpatialField once = band_limit(f, G, cfg.family_eps);
        const SpatialField twice = band_limit(once, G, cfg.family_eps / 2.0);
        emit(checks, "fields.band_limit_idempotent", rel_diff(once.samples(), twice.samples()), 1e-12);

        const SpatialField f2 = random_test_function(seed + 1, G, grid, cfg.family_eps);
        emit(checks, "fields.deterministic_seed", (f.samples() - f2.samples()).abs().maxCoeff(), 0.0);
        emit(checks, "fields.zero_mean", std::abs(to_spectrum(f).coeffs()[0]), 1e-12);
    }

    // --- kernels ---
    const AveragingKernel& ball = shared_ball_kernel(G);
    {
        const MomentCheck mc = check_moment_class(ball, 1.5);
        emit(checks, "kernels.ball_mass", std::abs(mc.mass - 1.0), 1e-9);
        Real worst_first = 0.0;
        for (const auto& e : mc.residuals)
            worst_first = std::max(worst_first, std::abs(e.value));
        emit(checks, "kernels.ball_first_moments", worst_first, 1e-8);
        emit(checks, "kernels.ball_dc", std::abs(ball.fourier(VectorN::Zero(n)) - 1.0), 1e-9);

        Real worst_routes = 0.0, worst_dc = 0.0;
        for (int k = 1; k <= 4; ++k) {
            const IteratedSymbol sym = iterated_symbol(ball, k);
            worst_dc = std::max(worst_dc, std::abs(sym(VectorN::Zero(n)) - 1.0));
            for (int i = 0; i < 64; ++i) {
                const VectorN xi = random_point(seed, 4000 + 64 * k + i, n, 8.0);
                worst_routes = std::max(worst_routes, std::abs(sym(xi) - sym.binomial(xi)));
            }
        }
        emit(checks, "kernels.iterated_symbol_routes", worst_routes, 1e-12);
        emit(checks, "kernels.iterated_symbol_dc", worst_dc, 1e-12);
    }

    // --- operators + squares ---
    {
        const SpatialField f = random_test_function(seed + 2, G, grid, cfg.family_eps);
        Real worst = 0.0;
        for (Real alpha : {0.5, 1.0, 1.7}) {
            const SpatialField round = riesz_potential(riesz_potential(f, G, alpha), G, -alpha);
            worst = std::max(worst, (round.samples() - f.samples()).abs().maxCoeff() /
                                        f.samples().abs().maxCoeff());
        }
        emit(checks, "operators.riesz_round_trip", worst, 1e-10);

        const auto [a, b] = spectral_band(f, G);
        const LPProfile radial = radial_profile(ScaleBump::normalized());
        const TQuadrature rq = TQuadrature::log_uniform(0.5 / b, 4.0 / a, 16);
        // the 1e-6 unit-symbol bound needs 32 nodes/octave (the bump's
        // trapezoid error at 16/octave is ~3e-6)
        const TQuadrature rq32 = TQuadrature::log_uniform(0.5 / b, 4.0 / a, 32);
        Real worst_m = 0.0;
        const MultiplierSymbol m = lp_symbol(radial, G, rq32);
        for (int i = 0; i < 32; ++i) {
            VectorN xi = random_point(seed, 6000 + i, n, 4.0);
            const Real r = G.rho_star(xi);
            // eta(t r) is supported on t in [1/r, 2/r]; skip arguments whose
            // support pokes outside the quadrature range
            if (r <= 0.0 || 1.0 / r < rq.t_min || 2.0 / r > rq.t_max) continue;
            worst_m = std::max(worst_m, std::abs(m(xi, r).real() - 1.0));
        }
        emit(checks, "operators.radial_symbol_unit", worst_m, 1e-6);

        const SquareFunctionResult iso = g_psi(f, radial, G, rq);
        emit(checks, "squares.l2_isometry", std::abs(l2_norm(iso.field) / l2_norm(f) - 1.0), 1e-5);

        // Plancherel consistency against the same quadrature
        const MultiplierSymbol m16 = lp_symbol(radial, G, rq);
        const SpectralField F = to_spectrum(f);
        const auto rho = rho_star_lattice(G, grid);
        Real quadratic = 0.0;
        for (Index i = 0; i < grid.size(); ++i)
            quadratic += m16(grid.frequency(i), (*rho)[i]).real() * std::norm(F.coeffs()[i]);
        quadratic /= grid.domain_volume();
        const Real lhs2 = l2_norm(iso.field) * l2_norm(iso.field);
        emit(checks, "squares.plancherel_consistency", std::abs(lhs2 - quadratic) / quadratic, 1e-8);

        // route equivalences on one field
        const Real alpha = 0.8;
        const TQuadrature wq = TQuadrature::for_band_weighted(a, b, alpha, 1);
        const SquareFunctionResult h = potential_square(f, ball, alpha, G, wq);
        const SquareFunctionResult gp = g_psi(f, potential_profile(G, alpha, ball), G, wq);
        emit(checks, "squares.potential_equals_gpsi",
             rel_diff(h.field.samples(), gp.field.samples()), 1e-10);

        const SpatialField g_minus = riesz_potential(f, G, -alpha);
        const SquareFunctionResult ga = avg_square(f, ball, alpha, G, wq);
        const SquareFunctionResult ha = potential_square(g_minus, ball, alpha, G, wq);
        emit(checks, "squares.avg_equals_potential_of_riesz",
             rel_diff(ga.field.samples(), ha.field.samples()), 1e-9);

        const TQuadrature kq = TQuadrature::for_band_weighted(a, b, alpha, 2);
        const SquareFunctionResult e1 =
            iterated_square(f, ball, alpha, 2, G, kq, IteratedRoute::ClosedForm);
        const SquareFunctionResult e2 =
            iterated_square(f, ball, alpha, 2, G, kq, IteratedRoute::BinomialSum);
        emit(checks, "squares.iterated_routes", rel_diff(e1.field.samples(), e2.field.samples()),
             1e-10);
    }

    // --- weights ---
    {
        const Weight one = constant_weight(G);
        const ApEstimate ap = estimate_ap_constant(one, 2.0, grid, 256, seed);
        emit(checks, "weights.ap_constant_one", std::abs(ap.lower_bound - 1.0), 1e-12);

        SpatialField c(grid, Eigen::ArrayXcd::Constant(grid.size(), Complex(0.7, 0.0)));
        const SpatialField mf = maximal_function(c, G, default_maximal_radii(grid));
        emit(checks, "weights.maximal_constant",
             (mf.samples().real() - 0.7).abs().maxCoeff(), 1e-3);
    }

    // --- sobolev ---
    if (n == 2) {
        MatrixN d12(2, 2);
        d12 << 1.0, 0.0, 0.0, 2.0;
        if ((cfg.group_exponent - d12).cwiseAbs().maxCoeff() < 1e-12) {
            const SpatialField f = random_test_function(seed + 3, G, grid, cfg.family_eps);
            const Diag12Result r = diag12_derivative_check(f, 2.0, constant_weight(G), G);
            emit(checks, "sobolev.diag12_reconstruction", r.reconstruction_error, 1e-10);
        }
    }

    std::filesystem::create_directories(cfg.output_dir);
    write_checks_json(cfg.output_dir / "verify_summary.json", checks);
    return checks;
}

std::vector<EquivalenceReport> run_sweep(const ExperimentConfig& cfg) {
    const DilationGroup G = make_dilation_group(cfg.group_exponent);
    FamilySpec family;
    family.seeds = cfg.family_seeds;
    family.eps = cfg.family_eps;
    family.grid = GridSpec::cube(G.dim(), cfg.grid_extent, cfg.grid_points);
    family.seed_base = cfg.master_seed;

    std::vector<NormPair> norms;
    for (Real p : cfg.sweep_ps) {
        for (Real beta : cfg.sweep_betas) norms.push_back({p, beta});
        if (cfg.sweep_weighted_beta) norms.push_back({p, 0.3 * G.gamma() * (p - 1.0)});
    }

    struct Cell {
        TheoremTag tag;
        StudyParams params;
    };
    std::vector<Cell> cells;
    for (TheoremTag tag : cfg.suites) {
        for (Real alpha : cfg.sweep_alphas) {
            StudyParams prm;
            prm.alpha = alpha;
            prm.k = cfg.sweep_k;
            cells.push_back({tag, prm});
            if (tag == TheoremTag::T5_1) break;  // alpha is fixed by the statement
        }
        if (tag == TheoremTag::T1_4) {
            StudyParams prm;  // the exactly-computable normalized-profile cell
            prm.profile = StudyProfile::RadialShell;
            cells.push_back({tag, prm});
        }
    }

    std::vector<std::vector<EquivalenceReport>> grouped(cells.size());
    parallel_for_index(static_cast<Index>(cells.size()), cfg.threads, [&](Index i) {
        grouped[i] = equivalence_studies(cells[i].tag, family, cells[i].params, norms, G);
    });

    std::vector<EquivalenceReport> reports;
    for (auto& g : grouped)
        for (auto& r : g) reports.push_back(std::move(r));

    std::filesystem::create_directories(cfg.output_dir);
    write_report_csv(cfg.output_dir / "sweep.csv", reports);
    write_report_summary(cfg.output_dir / "sweep_summary.json", reports);
    return reports;
}

std::vector<CheckResult> run_demo(const ExperimentConfig& cfg) {
    std::vector<CheckResult> checks;
    std::filesystem::create_directories(cfg.output_dir);

    // diag(1,2) derivative characterization
    {
        MatrixN d12(2, 2);
        d12 << 1.0, 0.0, 0.0, 2.0;
        const DilationGroup G = make_dilation_group(d12);
        const GridSpec grid = GridSpec::cube(2, cfg.grid_extent, cfg.grid_points);
        std::ofstream csv(cfg.output_dir / "demo_diag12.csv", std::ios::binary);
        csv << "seed,lhs,rhs,ratio,reconstruction_error\r\n";
        Real worst_rec = 0.0, rmin = std::numeric_limits<Real>::infinity(), rmax = 0.0;
        for (Index s = 0; s < cfg.family_seeds; ++s) {
            const SpatialField f =
                random_test_function(cfg.master_seed + s, G, grid, cfg.family_eps);
            const Diag12Result r = diag12_derivative_check(f, 2.0, constant_weight(G), G);
            worst_rec = std::max(worst_rec, r.reconstruction_error);
            rmin = std::min(rmin, r.norm_ratio);
            rmax = std::max(rmax, r.norm_ratio);
            char buf[160];
            std::snprintf(buf, sizeof(buf), "%llu,%.17g,%.17g,%.17g,%.17g\r\n",
                          static_cast<unsigned long long>(cfg.master_seed + s), r.lhs, r.rhs,
                          r.norm_ratio, r.reconstruction_error);
            csv << buf;
        }
        emit(checks, "demo.diag12_reconstruction", worst_rec, 1e-10);
        emit(checks, "demo.diag12_ratio_spread", rmax / rmin, 20.0);
    }

    // Poisson-gradient showcase (isotropic group)
    {
        const DilationGroup iso = make_dilation_group(MatrixN::Identity(2, 2));
        const GridSpec grid = GridSpec::cube(2, cfg.grid_extent, cfg.grid_points);
        const auto family = poisson_gradient_family(iso);

        Real worst_sup = 0.0;
        std::ofstream csv(cfg.output_dir / "demo_poisson_symbol.csv", std::ios::binary);
        csv << "t,magnitude\r\n";
        VectorN xi(2);
        xi << 0.75, -0.5;
        const Real r = xi.norm();
        for (Index j = 0; j < 128; ++j) {
            const Real t = std::exp2(-6.0 + 12.0 * j / 127.0);
            Real mag2 = 0.0;
            for (const auto& psi : family) mag2 += std::norm(psi.symbol(t * xi, t * r));
            char buf[80];
            std::snprintf(buf, sizeof(buf), "%.17g,%.17g\r\n", t, std::sqrt(mag2));
            csv << buf;
        }
        // sup_t |F(Psi_t)(xi)| via the vector-magnitude profile
        LPProfile vector_magnitude(
            [&family](const VectorN& p, Real rho) -> Complex {
                Real mag2 = 0.0;
                for (const auto& psi : family) mag2 += std::norm(psi.symbol(p, rho));
                return {std::sqrt(mag2), 0.0};
            },
            "poisson-vector");
        for (int i = 0; i < 16; ++i) {
            VectorN dir = random_point(cfg.master_seed, 9000 + i, 2, 4.0);
            if (dir.norm() < 1e-6) continue;
            const Real sup = scale_sup(vector_magnitude, iso, dir);
            worst_sup = std::max(worst_sup, std::abs(sup - std::exp(-1.0)));
        }
        emit(checks, "demo.poisson_sup", worst_sup, 1e-6);

        Real worst_ratio = 0.0;
        for (Index s = 0; s < std::min<Index>(cfg.family_seeds, 4); ++s) {
            const SpatialField f =
                random_test_function(cfg.master_seed + 100 + s, iso, grid, cfg.family_eps);
            const auto [a, b] = spectral_band(f, iso);
            // quadratic small-scale decay needs the deeper lower end
            const TQuadrature q =
                TQuadrature::log_uniform(std::exp2(-16.0) / b, std::exp2(8.0) / a, 16);
            const SquareFunctionResult gv = g_vector(f, family, iso, q);
            worst_ratio = std::max(worst_ratio, std::abs(l2_norm(gv.field) / l2_norm(f) - 0.5));
        }
        emit(checks, "demo.poisson_gvector_half", worst_ratio, 1e-5);
    }

    // Marcinkiewicz showcase (1-D)
    {
        const DilationGroup line = make_dilation_group(MatrixN::Identity(1, 1));
        const GridSpec grid = GridSpec::cube(1, cfg.grid_extent, std::max<Index>(cfg.grid_points, 512));
        Real worst_mu = 0.0, worst_nu = 0.0;
        std::ofstream csv(cfg.output_dir / "demo_marcinkiewicz.csv", std::ios::binary);
        csv << "seed,mu_vs_gpsi,nu_vs_gpsi0\r\n";
        for (Index s = 0; s < std::min<Index>(cfg.family_seeds, 4); ++s) {
            const SpatialField f =
                random_test_function(cfg.master_seed + 200 + s, line, grid, cfg.family_eps);
            const auto [a, b] = spectral_band(f, line);
            const TQuadrature q = TQuadrature::for_band_marcinkiewicz(a, b);
            const Real mu_diff =
                rel_l2_diff(marcinkiewicz(f, MarcinkiewiczVariant::Mu, q).field.samples(),
                            g_psi(f, marcinkiewicz_profile(), line, q).field.samples());
            const Real nu_diff =
                rel_l2_diff(marcinkiewicz(f, MarcinkiewiczVariant::Nu, q).field.samples(),
                            g_psi(f, marcinkiewicz_zero_profile(), line, q).field.samples());
            worst_mu = std::max(worst_mu, mu_diff);
            worst_nu = std::max(worst_nu, nu_diff);
            char buf[120];
            std::snprintf(buf, sizeof(buf), "%llu,%.17g,%.17g\r\n",
                          static_cast<unsigned long long>(cfg.master_seed + 200 + s), mu_diff,
                          nu_diff);
            csv << buf;
        }
        emit(checks, "demo.marcinkiewicz_mu_identity", worst_mu, 1e-4);
        emit(checks, "demo.marcinkiewicz_nu_identity", worst_nu, 1e-4);
    }

    write_checks_json(cfg.output_dir / "demo_summary.json", checks);
    return checks;
}

int run_subcommand(const std::string& name, const ExperimentConfig& cfg) {
    if (name == "verify") {
        const auto checks = run_verify(cfg);
        bool ok = true;
        for (const auto& c : checks) {
            std::printf("[%s] %s  value=%.3e tol=%.3e\n", c.passed ? "PASS" : "FAIL",
                        c.name.c_str(), c.value, c.tolerance);
            ok &= c.passed;
        }
        return ok ? 0 : 1;
    }
    if (name == "sweep") {
        const auto reports = run_sweep(cfg);
        bool ok = true;
        for (const auto& r : reports) {
            const bool exact_cell = r.params.profile == StudyProfile::RadialShell &&
                                    r.params.p == 2.0 && r.params.beta == 0.0;
            const Real spread_bound = exact_cell ? 1.0 + 1e-5 : 50.0;
            const bool pass = r.spread <= spread_bound && r.refinement_drift <= 0.05;
            std::printf("[%s] %s alpha=%g p=%g beta=%g profile=%s  spread=%.6g drift=%.3g\n",
                        pass ? "PASS" : "FAIL", to_string(r.tag).c_str(), r.params.alpha,
                        r.params.p, r.params.beta, to_string(r.params.profile).c_str(), r.spread,
                        r.refinement_drift);
            ok &= pass;
        }
        return ok ? 0 : 1;
    }
    if (name == "demo") {
        const auto checks = run_demo(cfg);
        bool ok = true;
        for (const auto& c : checks) {
            std::printf("[%s] %s  value=%.3e tol=%.3e\n", c.passed ? "PASS" : "FAIL",
                        c.name.c_str(), c.value, c.tolerance);
            ok &= c.passed;
        }
        return ok ? 0 : 1;
    }
    std::fprintf(stderr, "unknown subcommand '%s'\n", name.c_str());
    return 2;
}

}  // namespace anisolp
