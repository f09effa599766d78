#pragma once

#include <array>
#include <cstdint>

#include "anisolp/common.hpp"

namespace anisolp {

/// Philox4x64-10 counter-based generator (Salmon et al., SC'11).
///
/// Stateless: each (key, counter) pair maps to four independent 64-bit words.
/// Used for all randomness in the library so that values attached to a grid
/// index depend only on (seed, index), never on evaluation order or lattice
/// size.
struct Philox4x64 {
    using Counter = std::array<std::uint64_t, 4>;
    using Key = std::array<std::uint64_t, 2>;

    static Counter block(Counter ctr, Key key);
};

/// Two uniforms in (0,1) from one 64-bit word each (53-bit mantissa path).
Real uniform_from_bits(std::uint64_t bits);

/// Standard normal pair via Box-Muller from two 64-bit words.
std::array<Real, 2> gaussian_pair(std::uint64_t w0, std::uint64_t w1);

/// Zig-zag encoding of a signed lattice index into an unsigned counter word.
inline std::uint64_t zigzag(std::int64_t v) {
    return v >= 0 ? 2ull * static_cast<std::uint64_t>(v)
                  : 2ull * static_cast<std::uint64_t>(-(v + 1)) + 1ull;
}

}  // namespace anisolp
