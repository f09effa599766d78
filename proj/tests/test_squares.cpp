#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "anisolp/cutoff.hpp"
#include "anisolp/operators.hpp"
#include "anisolp/squares.hpp"

using namespace anisolp;

namespace {

const DilationGroup& diag12() {
    static const DilationGroup G = [] {
        MatrixN P(2, 2);
        P << 1.0, 0.0, 0.0, 2.0;
        return make_dilation_group(P);
    }();
    return G;
}

const GridSpec& grid64() {
    static const GridSpec g = GridSpec::cube(2, 16.0, 64);
    return g;
}

SpatialField test_field(std::uint64_t seed) {
    return random_test_function(seed, diag12(), grid64(), 0.125);
}

Real rel_max_diff(const Eigen::ArrayXcd& a, const Eigen::ArrayXcd& b) {
    const Real scale = std::max(a.abs().maxCoeff(), b.abs().maxCoeff());
    return scale == 0.0 ? 0.0 : (a - b).abs().maxCoeff() / scale;
}

}  // namespace

TEST_CASE("g_psi basics") {
    const DilationGroup& G = diag12();
    const SpatialField f = test_field(1);
    const auto [a, b] = spectral_band(f, G);

    // zero profile -> zero field
    LPProfile zero([](const VectorN&, Real) { return Complex{0.0, 0.0}; }, "zero");
    const TQuadrature q = TQuadrature::log_uniform(0.5 / b, 4.0 / a, 16);
    CHECK(g_psi(f, zero, G, q).field.samples().abs().maxCoeff() == 0.0);

    // radial profile: exact L2 isometry up to quadrature error
    const LPProfile radial = radial_profile(ScaleBump::normalized());
    const SquareFunctionResult r = g_psi(f, radial, G, q);
    CHECK(std::abs(l2_norm(r.field) / l2_norm(f) - 1.0) < 1e-5);
    CHECK(r.truncation_note <= 1e-6);
    CHECK((r.field.samples().real() >= 0.0).all());
    CHECK((r.field.samples().imag() == 0.0).all());

    // single mode: the square function is constant m(xi0)^{1/2}
    SpectralField M = SpectralField::zero(grid64());
    Index idx[2] = {3, 2};
    M.coeffs()[grid64().flatten(idx)] = Complex(0.0, 2.0);
    const SpatialField mode = from_spectrum(M);
    const SquareFunctionResult rm = g_psi(mode, radial, G, q);
    const Real expected_m = lp_symbol(radial, G, q)(grid64().frequency(grid64().flatten(idx)),
                                                    G.rho_star(grid64().frequency(grid64().flatten(idx))))
                                 .real();
    const Real amplitude = std::abs(mode.samples()[0]);
    Real worst = 0.0;
    for (Index i = 0; i < grid64().size(); ++i)
        worst = std::max(worst,
                         std::abs(rm.field.samples()[i].real() - std::sqrt(expected_m) * amplitude));
    CHECK(worst < 1e-10);
}

TEST_CASE("g_psi properties: sublinearity and homogeneity") {
    const DilationGroup& G = diag12();
    const LPProfile radial = radial_profile(ScaleBump::normalized());
    const SpatialField f = test_field(2), g = test_field(3);
    const auto [a, b] = spectral_band(f, G);
    const TQuadrature q = TQuadrature::log_uniform(0.5 / b, 4.0 / a, 16);

    const Eigen::ArrayXd gf = g_psi(f, radial, G, q).field.samples().real();
    const Eigen::ArrayXd gg = g_psi(g, radial, G, q).field.samples().real();
    SpatialField sum(f.grid(), f.samples() + g.samples());
    const Eigen::ArrayXd gs = g_psi(sum, radial, G, q).field.samples().real();
    CHECK((gs - gf - gg).maxCoeff() <= 1e-10);

    SpatialField scaled(f.grid(), Complex(-2.5, 0.0) * f.samples());
    const Eigen::ArrayXd gsc = g_psi(scaled, radial, G, q).field.samples().real();
    CHECK((gsc - 2.5 * gf).abs().maxCoeff() <= 1e-12 * gsc.maxCoeff());
}

TEST_CASE("plancherel consistency ties squares to lp_symbol") {
    const DilationGroup& G = diag12();
    const AveragingKernel& ball = shared_ball_kernel(G);
    const SpatialField f = test_field(4);
    const auto [a, b] = spectral_band(f, G);
    const TQuadrature q = TQuadrature::for_band_weighted(a, b, 0.9, 1, 8, 6.0);

    const LPProfile psi = potential_profile(G, 0.9, ball);
    const SquareFunctionResult r = g_psi(f, psi, G, q);
    const MultiplierSymbol m = lp_symbol(psi, G, q);

    const SpectralField F = to_spectrum(f);
    const auto rho = rho_star_lattice(G, f.grid());
    Real quadratic = 0.0;
    for (Index i = 0; i < f.grid().size(); ++i)
        quadratic += m(f.grid().frequency(i), (*rho)[i]).real() * std::norm(F.coeffs()[i]);
    quadratic /= f.grid().domain_volume();
    const Real lhs = l2_norm(r.field);
    CHECK(std::abs(lhs * lhs - quadratic) / quadratic < 1e-8);
}

TEST_CASE("g_vector") {
    const DilationGroup iso = make_dilation_group(MatrixN::Identity(2, 2));
    const GridSpec grid = GridSpec::cube(2, 16.0, 64);
    const SpatialField f = random_test_function(9, iso, grid, 0.125);
    const auto [a, b] = spectral_band(f, iso);
    // the Poisson integrand decays only like u^2 at small scales, so the
    // lower end must go deeper than the plain band default for the 1e-6 gate
    const TQuadrature q = TQuadrature::log_uniform(std::exp2(-16.0) / b, std::exp2(8.0) / a, 16);
    const auto family = poisson_gradient_family(iso);

    // singleton list reduces to g_psi bitwise
    const std::vector<LPProfile> one{family[0]};
    CHECK((g_vector(f, one, iso, q).field.samples() -
           g_psi(f, family[0], iso, q).field.samples())
              .abs()
              .maxCoeff() == 0.0);

    // component permutation changes nothing
    const std::vector<LPProfile> swapped{family[1], family[0]};
    CHECK((g_vector(f, family, iso, q).field.samples() -
           g_vector(f, swapped, iso, q).field.samples())
              .abs()
              .maxCoeff() < 1e-15);

    // Poisson family: ||g_Psi(f)||_2 = (1/2) ||f||_2
    CHECK(std::abs(l2_norm(g_vector(f, family, iso, q).field) / l2_norm(f) - 0.5) < 1e-5);

    CHECK_THROWS_AS(g_vector(f, {}, iso, q), DomainError);
}

TEST_CASE("avg_square") {
    const DilationGroup& G = diag12();
    const AveragingKernel& ball = shared_ball_kernel(G);
    const SpatialField f = test_field(5);
    const auto [a, b] = spectral_band(f, G);
    const Real alpha = 0.8;
    const TQuadrature q = TQuadrature::for_band_weighted(a, b, alpha, 1);

    // constant field: averages reproduce constants
    SpatialField c(f.grid(), Eigen::ArrayXcd::Constant(f.grid().size(), Complex(2.0, 0.0)));
    CHECK(avg_square(c, ball, alpha, G, q).field.samples().abs().maxCoeff() < 1e-12);

    // G_alpha(f) = H_alpha(I_{-alpha} f) pointwise
    const SpatialField sharp = riesz_potential(f, G, -alpha);
    CHECK(rel_max_diff(avg_square(f, ball, alpha, G, q).field.samples(),
                       potential_square(sharp, ball, alpha, G, q).field.samples()) < 1e-9);

    // single mode: 1-D quadrature oracle over the same nodes
    SpectralField M = SpectralField::zero(grid64());
    Index idx[2] = {1, 3};
    const Index flat = grid64().flatten(idx);
    M.coeffs()[flat] = Complex(1.0, -1.0);
    const SpatialField mode = from_spectrum(M);
    const SquareFunctionResult rm = avg_square(mode, ball, alpha, G, q);
    const VectorN xi0 = grid64().frequency(flat);
    const Real r0 = G.rho_star(xi0);
    Real oracle2 = 0.0;
    for (Index j = 0; j < q.count(); ++j) {
        const Complex one_minus = Complex(1.0, 0.0) - ball.fourier(G.apply(q.nodes[j], xi0, true));
        oracle2 += q.weights[j] * std::pow(q.nodes[j], -2.0 * alpha) * std::norm(one_minus);
    }
    oracle2 += std::pow(q.t_max, -2.0 * alpha) / (2.0 * alpha);  // analytic completion
    (void)r0;
    const Real amplitude = std::abs(mode.samples()[0]);
    Real worst = 0.0;
    for (Index i = 0; i < grid64().size(); ++i)
        worst = std::max(worst, std::abs(rm.field.samples()[i].real() -
                                         std::sqrt(oracle2) * amplitude));
    CHECK(worst <= 1e-9 * std::sqrt(oracle2) * amplitude);
}

TEST_CASE("potential_square equals g_psi of the potential profile") {
    const DilationGroup& G = diag12();
    const AveragingKernel& ball = shared_ball_kernel(G);
    for (std::uint64_t seed : {11, 12}) {
        const SpatialField f = test_field(seed);
        const auto [a, b] = spectral_band(f, G);
        const Real alpha = 1.1;
        const TQuadrature q = TQuadrature::for_band_weighted(a, b, alpha, 1, 8, 6.0);
        CHECK(rel_max_diff(potential_square(f, ball, alpha, G, q).field.samples(),
                           g_psi(f, potential_profile(G, alpha, ball), G, q).field.samples()) <
              1e-10);
    }
    const SpatialField z = SpatialField::zero(grid64());
    const TQuadrature q = TQuadrature::for_band_weighted(1.0, 1.0, 1.0, 1);
    CHECK(potential_square(z, ball, 1.0, G, q).field.samples().abs().maxCoeff() == 0.0);
    CHECK_THROWS_AS(potential_square(test_field(1), ball, 3.5, G, q), DomainError);
}

TEST_CASE("iterated squares") {
    const DilationGroup& G = diag12();
    const AveragingKernel& ball = shared_ball_kernel(G);
    const SpatialField f = test_field(6);
    const auto [a, b] = spectral_band(f, G);
    const Real alpha = 1.3;
    const int k = 2;
    const TQuadrature q = TQuadrature::for_band_weighted(a, b, alpha, k, 8, 6.0);

    // k = 1 equals avg_square bitwise
    const TQuadrature q1 = TQuadrature::for_band_weighted(a, b, 0.8, 1, 8, 6.0);
    CHECK((iterated_square(f, ball, 0.8, 1, G, q1).field.samples() -
           avg_square(f, ball, 0.8, G, q1).field.samples())
              .abs()
              .maxCoeff() == 0.0);

    // the two evaluation routes agree
    CHECK(rel_max_diff(iterated_square(f, ball, alpha, k, G, q, IteratedRoute::ClosedForm)
                           .field.samples(),
                       iterated_square(f, ball, alpha, k, G, q, IteratedRoute::BinomialSum)
                           .field.samples()) < 1e-10);

    // U^(k) = E^(k) of the potential
    CHECK(rel_max_diff(
              iterated_potential_square(f, ball, alpha, k, G, q).field.samples(),
              iterated_square(riesz_potential(f, G, alpha), ball, alpha, k, G, q).field.samples()) <
          1e-9);

    // constant in, zero out
    SpatialField c(f.grid(), Eigen::ArrayXcd::Constant(f.grid().size(), Complex(-1.0, 0.5)));
    CHECK(iterated_square(c, ball, alpha, k, G, q).field.samples().abs().maxCoeff() < 1e-12);

    CHECK_THROWS_AS(iterated_potential_square(f, ball, 3.5, 2, G, q), DomainError);
    CHECK_THROWS_AS(iterated_square(f, ball, 1.0, 0, G, q), DomainError);
}

TEST_CASE("marcinkiewicz functions") {
    const DilationGroup line = make_dilation_group(MatrixN::Identity(1, 1));
    const GridSpec grid = GridSpec::cube(1, 16.0, 512);
    const SpatialField f = random_test_function(21, line, grid, 0.125);
    const auto [a, b] = spectral_band(f, line);
    const TQuadrature q = TQuadrature::for_band_marcinkiewicz(a, b);

    const SpatialField z = SpatialField::zero(grid);
    CHECK(marcinkiewicz(z, MarcinkiewiczVariant::Mu, q).field.samples().abs().maxCoeff() == 0.0);

    // mu(f) = g_psi(f) with psi = sgn chi_[-1,1]
    const Eigen::ArrayXcd mu = marcinkiewicz(f, MarcinkiewiczVariant::Mu, q).field.samples();
    const Eigen::ArrayXcd via_g = g_psi(f, marcinkiewicz_profile(), line, q).field.samples();
    const Real mu_l2 = std::sqrt(mu.abs2().sum());
    CHECK(std::sqrt((mu - via_g).abs2().sum()) / mu_l2 < 1e-4);

    // nu(f) = g_{psi^(0)}(f)
    const Eigen::ArrayXcd nu = marcinkiewicz(f, MarcinkiewiczVariant::Nu, q).field.samples();
    const Eigen::ArrayXcd via_g0 = g_psi(f, marcinkiewicz_zero_profile(), line, q).field.samples();
    CHECK(std::sqrt((nu - via_g0).abs2().sum()) / std::sqrt(nu.abs2().sum()) < 1e-4);

    // 2-D input rejected
    const SpatialField f2 = test_field(1);
    CHECK_THROWS_AS(marcinkiewicz(f2, MarcinkiewiczVariant::Mu, q), DomainError);
}

TEST_CASE("quadrature weights reproduce the log measure") {
    const TQuadrature a = TQuadrature::log_uniform(0.25, 64.0, 16);
    CHECK(std::abs(a.weights.sum() - std::log(a.t_max / a.t_min)) < 1e-12);
    const TQuadrature b = TQuadrature::for_band_weighted(0.125, 8.0, 1.5, 1);
    CHECK(std::abs(b.weights.sum() - std::log(b.t_max / b.t_min)) < 1e-12);
    const TQuadrature c = TQuadrature::for_band_marcinkiewicz(0.5, 4.0);
    CHECK(std::abs(c.weights.sum() - std::log(c.t_max / c.t_min)) < 1e-12);
}

TEST_CASE("square results export with metadata") {
    const DilationGroup& G = diag12();
    const AveragingKernel& ball = shared_ball_kernel(G);
    const SpatialField f = test_field(17);
    const auto [a, b] = spectral_band(f, G);
    const TQuadrature q = TQuadrature::for_band_weighted(a, b, 1.0, 1, 8, 6.0);
    const SquareFunctionResult r = avg_square(f, ball, 1.0, G, q);

    const auto dir = std::filesystem::temp_directory_path() / "anisolp_square";
    std::filesystem::create_directories(dir);
    save_square_result(dir / "b1.fld", dir / "b1.json", r, ball.tag(), 1.0, 1);
    const SpatialField back = load_spatial_field(dir / "b1.fld");
    CHECK((back.samples() - r.field.samples()).abs().maxCoeff() == 0.0);
    std::ifstream meta(dir / "b1.json");
    std::string text((std::istreambuf_iterator<char>(meta)), std::istreambuf_iterator<char>());
    CHECK(text.find("\"profile\"") != std::string::npos);
    CHECK(text.find("\"t_min\"") != std::string::npos);
}

TEST_CASE("coverage gate rejects a truncated quadrature") {
    const DilationGroup& G = diag12();
    const AveragingKernel& ball = shared_ball_kernel(G);
    const SpatialField f = test_field(7);
    // a window cutting straight through the rising part of the integrand
    const TQuadrature bad = TQuadrature::log_uniform(std::exp2(-3.0), std::exp2(-1.0), 8);
    CHECK_THROWS_AS(avg_square(f, ball, 1.5, G, bad), QuadratureCoverageError);
}
