#include "anisolp/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace anisolp {

TQuadrature TQuadrature::log_uniform(Real t_min, Real t_max, int nodes_per_octave) {
    if (!(t_min > 0.0) || !(t_max > t_min)) throw DomainError("quadrature range must satisfy 0 < t_min < t_max");
    if (nodes_per_octave < 1) throw DomainError("need at least one node per octave");
    const Real octaves = std::log2(t_max / t_min);
    const Index intervals = static_cast<Index>(std::ceil(octaves * nodes_per_octave - 1e-9));
    const Real h = std::log(2.0) / nodes_per_octave;

    TQuadrature q;
    q.nodes.resize(intervals + 1);
    q.weights.resize(intervals + 1);
    for (Index j = 0; j <= intervals; ++j) {
        q.nodes[j] = t_min * std::exp2(static_cast<Real>(j) / nodes_per_octave);
        q.weights[j] = (j == 0 || j == intervals) ? 0.5 * h : h;
    }
    q.t_min = q.nodes[0];
    q.t_max = q.nodes[intervals];
    return q;
}

TQuadrature TQuadrature::from_nodes(Eigen::ArrayXd nodes) {
    const Index n = nodes.size();
    if (n < 2) throw DomainError("quadrature needs at least two nodes");
    for (Index j = 0; j + 1 < n; ++j)
        if (!(nodes[j] > 0.0) || !(nodes[j + 1] > nodes[j]))
            throw DomainError("quadrature nodes must be positive and ascending");
    TQuadrature q;
    q.weights.resize(n);
    q.weights[0] = 0.5 * std::log(nodes[1] / nodes[0]);
    q.weights[n - 1] = 0.5 * std::log(nodes[n - 1] / nodes[n - 2]);
    for (Index j = 1; j + 1 < n; ++j) q.weights[j] = 0.5 * std::log(nodes[j + 1] / nodes[j - 1]);
    q.t_min = nodes[0];
    q.t_max = nodes[n - 1];
    q.nodes = std::move(nodes);
    return q;
}

TQuadrature TQuadrature::for_band(Real a, Real b, int nodes_per_octave) {
    if (!(a > 0.0) || !(b >= a)) throw DomainError("band must satisfy 0 < a <= b");
    return log_uniform(std::exp2(-8.0) / b, std::exp2(8.0) / a, nodes_per_octave);
}

namespace {

void append_log_range(std::vector<Real>& nodes, Real lo, Real hi, Real per_octave) {
    const Real octaves = std::log2(hi / lo);
    const Index steps = std::max<Index>(1, static_cast<Index>(std::ceil(octaves * per_octave - 1e-9)));
    for (Index j = 0; j <= steps; ++j) nodes.push_back(lo * std::exp2(octaves * j / steps));
}

}  // namespace

TQuadrature TQuadrature::for_band_weighted(Real a, Real b, Real alpha, int k,
                                           int nodes_per_octave, Real core_octaves) {
    if (!(a > 0.0) || !(b >= a)) throw DomainError("band must satisfy 0 < a <= b");
    if (!(alpha > 0.0) || k < 1) throw DomainError("for_band_weighted needs alpha > 0, k >= 1");
    const Real p = 4.0 * k - 2.0 * alpha;  // small-t integrand exponent
    if (!(p > 0.0)) throw DomainError("alpha must lie below 2k");

    const Real core_lo = std::exp2(-core_octaves) / b;
    const Real core_hi = std::exp2(core_octaves) / a;
    // residual ~ 30 (t b)^p; push it below 1e-8, capped at 100 extra octaves
    const Real extra = std::min(100.0, std::max(0.0, std::ceil(31.5 / p - core_octaves)));

    std::vector<Real> nodes;
    if (extra > 0.0) append_log_range(nodes, core_lo * std::exp2(-extra), core_lo, 2.0);
    append_log_range(nodes, core_lo, core_hi, nodes_per_octave);
    std::sort(nodes.begin(), nodes.end());
    nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
    return from_nodes(Eigen::Map<const Eigen::ArrayXd>(nodes.data(), nodes.size()));
}

TQuadrature TQuadrature::for_band_marcinkiewicz(Real a, Real b, int nodes_per_octave) {
    if (!(a > 0.0) || !(b >= a)) throw DomainError("band must satisfy 0 < a <= b");
    std::vector<Real> nodes;
    // both tails decay like t^{+-2} (with an oscillating factor on top), so
    // carry coarse extensions well past the dense core on each side
    append_log_range(nodes, std::exp2(-16.0) / b, std::exp2(-8.0) / b, 4.0);
    append_log_range(nodes, std::exp2(-8.0) / b, std::exp2(8.0) / a, nodes_per_octave);
    append_log_range(nodes, std::exp2(8.0) / a, std::exp2(16.0) / a, 4.0);
    std::sort(nodes.begin(), nodes.end());
    nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
    return from_nodes(Eigen::Map<const Eigen::ArrayXd>(nodes.data(), nodes.size()));
}

}  // namespace anisolp
