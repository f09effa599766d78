#include <doctest.h>

#include <unsupported/Eigen/MatrixFunctions>

#include "anisolp/dilation.hpp"
#include "anisolp/philox.hpp"

using namespace anisolp;

namespace {

MatrixN diag12() {
    MatrixN P(2, 2);
    P << 1.0, 0.0, 0.0, 2.0;
    return P;
}

VectorN rand_vec(std::uint64_t i, Index n, Real span) {
    const auto w = Philox4x64::block({i, 0, 0, 0}, {77, 0});
    VectorN x(n);
    for (Index a = 0; a < n; ++a) x[a] = span * (2.0 * uniform_from_bits(w[a % 4] + a / 4) - 1.0);
    return x;
}

}  // namespace

TEST_CASE("construction and homogeneous dimension") {
    CHECK(make_dilation_group(MatrixN::Identity(2, 2)).gamma() == doctest::Approx(2.0));
    CHECK(make_dilation_group(diag12()).gamma() == doctest::Approx(3.0));

    MatrixN bad(2, 2);
    bad << 0.5, 0.0, 0.0, 1.0;
    CHECK_THROWS_AS(make_dilation_group(bad), AdmissibilityError);

    // rotation part is fine as long as the symmetric part clears 1
    MatrixN skew(2, 2);
    skew << 1.5, 0.3, -0.2, 1.2;
    const DilationGroup G = make_dilation_group(skew);
    CHECK(G.gamma() == doctest::Approx(2.7));
}

TEST_CASE("apply_dilation against the matrix-exponential oracle") {
    MatrixN skew(2, 2);
    skew << 1.5, 0.3, -0.2, 1.2;
    const DilationGroup G = make_dilation_group(skew);

    const VectorN x = rand_vec(3, 2, 2.0);
    CHECK((G.apply(1.0, x) - x).norm() < 1e-14);

    for (int i = 0; i < 50; ++i) {
        const VectorN y = rand_vec(100 + i, 2, 4.0);
        const Real t = std::exp2(6.0 * (2.0 * uniform_from_bits(i * 7919 + 1) - 1.0));
        const MatrixN oracle = (std::log(t) * skew).exp();  // Pade route, independent of the
                                                             // spectral path the group picked
        CHECK((G.apply(t, y) - oracle * y).norm() <= 1e-12 * std::max(1.0, (oracle * y).norm()));
    }
    CHECK_THROWS_AS(G.apply(0.0, x), DomainError);
    CHECK_THROWS_AS(G.apply(-2.0, x), DomainError);
}

TEST_CASE("group law holds for random scales") {
    const DilationGroup G = make_dilation_group(diag12());
    for (int i = 0; i < 100; ++i) {
        const VectorN x = rand_vec(200 + i, 2, 8.0);
        const Real s = std::exp2(5.0 * (2.0 * uniform_from_bits(i * 131 + 5) - 1.0));
        const Real t = std::exp2(5.0 * (2.0 * uniform_from_bits(i * 131 + 9) - 1.0));
        const VectorN a = G.apply(s, G.apply(t, x));
        const VectorN b = G.apply(s * t, x);
        CHECK((a - b).norm() <= 1e-12 * std::max(1.0, b.norm()));
    }
    // diag(1,2): delta_t (x1,x2) = (t x1, t^2 x2)
    VectorN x(2);
    x << 3.0, -5.0;
    const VectorN y = G.apply(2.0, x);
    CHECK(y[0] == doctest::Approx(6.0).epsilon(1e-14));
    CHECK(y[1] == doctest::Approx(-20.0).epsilon(1e-14));
}

TEST_CASE("quasi-norm basics") {
    const DilationGroup iso = make_dilation_group(MatrixN::Identity(2, 2));
    for (int i = 0; i < 50; ++i) {
        const VectorN x = rand_vec(300 + i, 2, 10.0);
        CHECK(iso.rho(x) == doctest::Approx(x.norm()).epsilon(1e-12));
    }

    const DilationGroup G = make_dilation_group(diag12());
    VectorN e2(2);
    e2 << 0.0, 1.0;
    CHECK(G.rho(e2) == doctest::Approx(1.0).epsilon(1e-12));
    e2 << 0.0, 4.0;
    CHECK(G.rho(e2) == doctest::Approx(2.0).epsilon(1e-12));

    // closed form over a spread of points
    for (int i = 0; i < 200; ++i) {
        const VectorN x = rand_vec(400 + i, 2, 20.0);
        const Real expected = diag12_closed_form_rho(x[0], x[1]);
        if (expected == 0.0) continue;
        CHECK(std::abs(G.rho(x) - expected) / expected < 1e-9);
    }

    CHECK(G.rho(VectorN::Zero(2)) == 0.0);
    VectorN tiny = VectorN::Constant(2, 1e-305);
    CHECK(G.rho(tiny) == 0.0);

    const QuasiNormResult qr = G.quasi_norm(rand_vec(1, 2, 3.0));
    CHECK(qr.residual <= 1e-12 * std::max(1.0, qr.value));
    CHECK(qr.iterations > 0);

    VectorN far(2);
    far << 1e6, -2e7;
    CHECK_THROWS_AS(G.quasi_norm(far, false, 2), ConvergenceError);
}

TEST_CASE("quasi-norm properties hold on samples (primal and dual)") {
    MatrixN skew(2, 2);
    skew << 1.5, 0.3, -0.2, 1.2;
    const DilationGroup G = make_dilation_group(skew);
    for (bool dual : {false, true}) {
        for (int i = 0; i < 500; ++i) {
            const VectorN x = rand_vec(7000 + i, 2, 6.0);
            const VectorN y = rand_vec(8000 + i, 2, 6.0);
            const Real rx = G.quasi_norm(x, dual).value;
            const Real ry = G.quasi_norm(y, dual).value;

            CHECK(G.quasi_norm(-x, dual).value == doctest::Approx(rx).epsilon(1e-12));
            CHECK(G.quasi_norm(x + y, dual).value <= rx + ry + 1e-9);

            const Real t = std::exp2(6.0 * (2.0 * uniform_from_bits(i * 271 + 3) - 1.0));
            const VectorN tx = G.apply(t, x, dual);
            if (rx > 0.0)
                CHECK(std::abs(G.quasi_norm(tx, dual).value - t * rx) / (t * rx) < 1e-9);

            // comparison bounds (4)/(5) and unit-ball compatibility (3)
            const Real e = x.norm();
            if (e <= 1.0) {
                CHECK(rx <= 1.0 + 1e-9);
                CHECK(e <= rx + 1e-9);
            } else {
                CHECK(rx >= 1.0 - 1e-9);
                CHECK(rx <= e + 1e-9);
            }
        }
    }
}

TEST_CASE("ball volumes") {
    const DilationGroup iso = make_dilation_group(MatrixN::Identity(2, 2));
    CHECK(std::abs(iso.ball_volume(1.0) - kPi) < 1e-3);
    CHECK(iso.ball_volume(2.0) / iso.ball_volume(1.0) == doctest::Approx(std::exp2(2.0)));

    const DilationGroup G = make_dilation_group(diag12());
    CHECK(G.ball_volume(2.0) / G.ball_volume(1.0) == doctest::Approx(std::exp2(3.0)));

    // Monte-Carlo oracle vs the group's tensor-grid estimate
    const Real tensor = G.unit_ball_volume();
    Index inside = 0;
    const Index samples = 1 << 19;
    for (Index s = 0; s < samples; ++s) {
        const auto w = Philox4x64::block({static_cast<std::uint64_t>(s), 1, 2, 3}, {99, 0});
        VectorN p(2);
        p << 2.0 * uniform_from_bits(w[0]) - 1.0, 2.0 * uniform_from_bits(w[1]) - 1.0;
        if (G.rho(p) < 1.0) ++inside;
    }
    const Real mc = 4.0 * static_cast<Real>(inside) / samples;
    CHECK(std::abs(mc - tensor) / tensor < 0.005);

    CHECK_THROWS_AS(G.ball_volume(0.0), DomainError);
}
