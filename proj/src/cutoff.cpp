#include "anisolp/cutoff.hpp"

#include <cmath>

namespace anisolp {

namespace {

constexpr Index kSamples = 4096;

Real transition(Real s) {
    // g(2-s) / (g(2-s) + g(s-1)) with g(u) = e^{-1/u}
    const auto g = [](Real u) { return u > 0.0 ? std::exp(-1.0 / u) : 0.0; };
    const Real a = g(2.0 - s), b = g(s - 1.0);
    return a / (a + b);
}

}  // namespace

SmoothCutoff::SmoothCutoff() {
    values_.resize(kSamples + 1);
    slopes_.resize(kSamples + 1);
    h_ = 1.0 / kSamples;
    for (Index i = 0; i <= kSamples; ++i) values_[i] = transition(1.0 + i * h_);

    // Fritsch-Carlson monotone slopes
    Eigen::ArrayXd d(kSamples);
    for (Index i = 0; i < kSamples; ++i) d[i] = (values_[i + 1] - values_[i]) / h_;
    slopes_[0] = d[0];
    slopes_[kSamples] = d[kSamples - 1];
    for (Index i = 1; i < kSamples; ++i) {
        slopes_[i] = (d[i - 1] * d[i] <= 0.0) ? 0.0 : 0.5 * (d[i - 1] + d[i]);
    }
    for (Index i = 0; i < kSamples; ++i) {
        if (d[i] == 0.0) {
            slopes_[i] = slopes_[i + 1] = 0.0;
            continue;
        }
        const Real a = slopes_[i] / d[i], b = slopes_[i + 1] / d[i];
        const Real r = a * a + b * b;
        if (r > 9.0) {
            const Real s = 3.0 / std::sqrt(r);
            slopes_[i] = s * a * d[i];
            slopes_[i + 1] = s * b * d[i];
        }
    }
}

Real SmoothCutoff::operator()(Real s) const {
    if (s <= 1.0) return 1.0;
    if (s >= 2.0) return 0.0;
    const Real u = (s - 1.0) / h_;
    const Index i = std::min(static_cast<Index>(u), kSamples - 1);
    const Real x = u - i;
    const Real y0 = values_[i], y1 = values_[i + 1];
    const Real m0 = slopes_[i] * h_, m1 = slopes_[i + 1] * h_;
    const Real x2 = x * x, x3 = x2 * x;
    return (2 * x3 - 3 * x2 + 1) * y0 + (x3 - 2 * x2 + x) * m0 + (-2 * x3 + 3 * x2) * y1 +
           (x3 - x2) * m1;
}

const SmoothCutoff& SmoothCutoff::standard() {
    static const SmoothCutoff instance;
    return instance;
}

Real ScaleBump::operator()(Real t) const {
    if (t <= 1.0 || t >= 2.0) return 0.0;
    return amplitude * std::exp(-1.0 / ((t - 1.0) * (2.0 - t)));
}

ScaleBump ScaleBump::normalized() {
    // dense log-trapezoid reference for \int eta0^2 dt/t, far below 1e-8 error
    ScaleBump raw{1.0};
    const Index n = 1 << 17;
    const Real h = std::log(2.0) / n;
    Real sum = 0.0;
    for (Index i = 0; i <= n; ++i) {
        const Real t = std::exp(i * h);
        const Real v = raw(t);
        sum += (i == 0 || i == n ? 0.5 : 1.0) * v * v * h;
    }
    return ScaleBump{1.0 / std::sqrt(sum)};
}

}  // namespace anisolp
