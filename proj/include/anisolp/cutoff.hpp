#pragma once

#include <Eigen/Core>

#include "anisolp/common.hpp"

namespace anisolp {

/// C-infinity transition phi0: 1 on [0,1], 0 on [2,inf), strictly monotone
/// on (1,2) via the exp(-1/u) construction. Precomputed on 4096 samples of
/// [1,2] and evaluated with monotone cubic (Fritsch-Carlson) interpolation.
class SmoothCutoff {
public:
    SmoothCutoff();
    Real operator()(Real s) const;

    /// Shared instance; the profile is fixed so one table serves everyone.
    static const SmoothCutoff& standard();

private:
    Eigen::ArrayXd values_, slopes_;
    Real h_ = 0.0;
};

/// Scale bump eta on [1,2]: smooth, nonnegative, normalized so that
/// \int_0^infty eta(t)^2 dt/t = 1 (the Littlewood-Paley generator profile).
struct ScaleBump {
    Real amplitude = 1.0;
    Real operator()(Real t) const;

    static ScaleBump normalized();
};

}  // namespace anisolp
