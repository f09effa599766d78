#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "anisolp/common.hpp"

namespace anisolp {

/// Periodic lattice covering [-L_i/2, L_i/2) per axis with N_i points.
///
/// Samples and coefficients are stored row-major in FFT-natural order per
/// axis: index j maps to coordinate j*h for j < N/2 and (j-N)*h otherwise,
/// and to frequency j/L resp. (j-N)/L. With that layout the forward DFT
/// needs no phase corrections to match the e^{-2 pi i <x,xi>} convention.
struct GridSpec {
    Eigen::ArrayXd extent;   // L_i (length units)
    Eigen::ArrayXi points;   // N_i, power of two, >= 8

    static GridSpec cube(Index dim, Real L, Index N);

    Index dim() const { return extent.size(); }
    Index size() const;
    Real cell_volume() const;
    Real domain_volume() const;

    /// Flat index <-> per-axis integer indices (row-major).
    void unflatten(Index flat, Index* idx) const;
    Index flatten(const Index* idx) const;

    /// Signed per-axis mode number k in [-N/2, N/2) for a storage index.
    Index mode(Index axis, Index idx) const;

    VectorN coordinate(Index flat) const;
    VectorN frequency(Index flat) const;

    bool operator==(const GridSpec& o) const;
    bool operator!=(const GridSpec& o) const { return !(*this == o); }

    void validate() const;
};

/// Samples of a function on the grid lattice.
class SpatialField {
public:
    SpatialField() = default;
    SpatialField(GridSpec grid, Eigen::ArrayXcd samples);
    static SpatialField zero(const GridSpec& grid);

    const GridSpec& grid() const { return grid_; }
    const Eigen::ArrayXcd& samples() const { return samples_; }
    Eigen::ArrayXcd& samples() { return samples_; }

private:
    GridSpec grid_;
    Eigen::ArrayXcd samples_;
};

/// Discrete Fourier coefficients scaled to approximate the continuous
/// transform: coeffs[k] ~ f_hat(xi_k).
class SpectralField {
public:
    SpectralField() = default;
    SpectralField(GridSpec grid, Eigen::ArrayXcd coeffs);
    static SpectralField zero(const GridSpec& grid);

    const GridSpec& grid() const { return grid_; }
    const Eigen::ArrayXcd& coeffs() const { return coeffs_; }
    Eigen::ArrayXcd& coeffs() { return coeffs_; }

private:
    GridSpec grid_;
    Eigen::ArrayXcd coeffs_;
};

/// Forward transform: coeffs = cell_volume * DFT(samples).
SpectralField to_spectrum(const SpatialField& f);

/// Inverse transform: samples = (1/prod L) * IDFT(coeffs); exact round trip.
SpatialField from_spectrum(const SpectralField& F);

/// L2 norms on both sides of Parseval.
Real l2_norm(const SpatialField& f);
Real spectral_l2_norm(const SpectralField& F);

/// Unscaled in-place DFT/IDFT along every axis (the raw transforms behind
/// to_spectrum/from_spectrum; exposed for operators that batch many of them).
void unscaled_dft_inplace(const GridSpec& g, Eigen::ArrayXcd& data);
void unscaled_idft_inplace(const GridSpec& g, Eigen::ArrayXcd& data);

void assert_same_grid(const GridSpec& a, const GridSpec& b, const char* what);

/// Embed the spectrum into a grid with double the points per axis (same
/// extent). The result samples the identical band-limited function.
SpatialField refine_field(const SpatialField& f);

/// Self-describing field container: one-line JSON header
/// {dim, extent, points, kind} + '\n' + row-major little-endian doubles,
/// interleaved re/im. Extension .fld.
void save_field(const std::filesystem::path& path, const SpatialField& f);
void save_field(const std::filesystem::path& path, const SpectralField& F);
SpatialField load_spatial_field(const std::filesystem::path& path);
SpectralField load_spectral_field(const std::filesystem::path& path);

}  // namespace anisolp
