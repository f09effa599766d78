#include "anisolp/grid.hpp"

#include <bit>
#include <fstream>

#include <unsupported/Eigen/FFT>

#include <nlohmann/json.hpp>

namespace anisolp {

static_assert(std::endian::native == std::endian::little,
              "field files are little-endian; big-endian hosts unsupported");

GridSpec GridSpec::cube(Index dim, Real L, Index N) {
    GridSpec g;
    g.extent = Eigen::ArrayXd::Constant(dim, L);
    g.points = Eigen::ArrayXi::Constant(dim, static_cast<int>(N));
    g.validate();
    return g;
}

void GridSpec::validate() const {
    if (dim() < 1 || dim() > 8 || points.size() != extent.size())
        throw ShapeError("grid spec has inconsistent axes (1 <= dim <= 8)");
    for (Index a = 0; a < dim(); ++a) {
        const Index n = points[a];
        if (n < 8 || (n & (n - 1)) != 0) throw DomainError("grid points per axis must be a power of two >= 8");
        if (!(extent[a] > 0.0)) throw DomainError("grid extent must be positive");
    }
}

Index GridSpec::size() const {
    Index s = 1;
    for (Index a = 0; a < dim(); ++a) s *= points[a];
    return s;
}

Real GridSpec::cell_volume() const {
    Real v = 1.0;
    for (Index a = 0; a < dim(); ++a) v *= extent[a] / points[a];
    return v;
}

Real GridSpec::domain_volume() const { return extent.prod(); }

void GridSpec::unflatten(Index flat, Index* idx) const {
    for (Index a = dim() - 1; a >= 0; --a) {
        idx[a] = flat % points[a];
        flat /= points[a];
    }
}

Index GridSpec::flatten(const Index* idx) const {
    Index flat = 0;
    for (Index a = 0; a < dim(); ++a) flat = flat * points[a] + idx[a];
    return flat;
}

Index GridSpec::mode(Index axis, Index idx) const {
    const Index n = points[axis];
    return idx < n / 2 ? idx : idx - n;
}

VectorN GridSpec::coordinate(Index flat) const {
    Index idx[8];
    unflatten(flat, idx);
    VectorN x(dim());
    for (Index a = 0; a < dim(); ++a) x[a] = mode(a, idx[a]) * (extent[a] / points[a]);
    return x;
}

VectorN GridSpec::frequency(Index flat) const {
    Index idx[8];
    unflatten(flat, idx);
    VectorN xi(dim());
    for (Index a = 0; a < dim(); ++a) xi[a] = mode(a, idx[a]) / extent[a];
    return xi;
}

bool GridSpec::operator==(const GridSpec& o) const {
    return dim() == o.dim() && (points == o.points).all() && (extent == o.extent).all();
}

SpatialField::SpatialField(GridSpec grid, Eigen::ArrayXcd samples)
    : grid_(std::move(grid)), samples_(std::move(samples)) {
    grid_.validate();
    if (samples_.size() != grid_.size()) throw ShapeError("sample count does not match the grid");
}

SpatialField SpatialField::zero(const GridSpec& grid) {
    return SpatialField(grid, Eigen::ArrayXcd::Zero(grid.size()));
}

SpectralField::SpectralField(GridSpec grid, Eigen::ArrayXcd coeffs)
    : grid_(std::move(grid)), coeffs_(std::move(coeffs)) {
    grid_.validate();
    if (coeffs_.size() != grid_.size()) throw ShapeError("coefficient count does not match the grid");
}

SpectralField SpectralField::zero(const GridSpec& grid) {
    return SpectralField(grid, Eigen::ArrayXcd::Zero(grid.size()));
}

void assert_same_grid(const GridSpec& a, const GridSpec& b, const char* what) {
    if (a != b) throw ShapeError(std::string("grid mismatch in ") + what);
}

namespace {

// In-place unscaled DFT along every axis; sign=+1 forward (e^{-2 pi i jk/N}).
void dft_all_axes(const GridSpec& g, Eigen::ArrayXcd& data, bool forward) {
    Eigen::FFT<Real> fft;
    fft.SetFlag(Eigen::FFT<Real>::Unscaled);
    const Index nd = g.dim();
    std::vector<Complex> line, out;
    Index stride_after = 1;  // product of sizes of axes after the current one
    for (Index a = nd - 1; a >= 0; --a) {
        const Index n = g.points[a];
        line.resize(n);
        out.resize(n);
        const Index block = stride_after * n;
        const Index nblocks = g.size() / block;
        for (Index b = 0; b < nblocks; ++b) {
            for (Index s = 0; s < stride_after; ++s) {
                const Index base = b * block + s;
                for (Index i = 0; i < n; ++i) line[i] = data[base + i * stride_after];
                if (forward) {
                    fft.fwd(out, line);
                } else {
                    fft.inv(out, line);
                }
                for (Index i = 0; i < n; ++i) data[base + i * stride_after] = out[i];
            }
        }
        stride_after *= n;
    }
}

}  // namespace

void unscaled_dft_inplace(const GridSpec& g, Eigen::ArrayXcd& data) {
    if (data.size() != g.size()) throw ShapeError("transform buffer does not match the grid");
    dft_all_axes(g, data, true);
}

void unscaled_idft_inplace(const GridSpec& g, Eigen::ArrayXcd& data) {
    if (data.size() != g.size()) throw ShapeError("transform buffer does not match the grid");
    dft_all_axes(g, data, false);
}

SpectralField to_spectrum(const SpatialField& f) {
    Eigen::ArrayXcd c = f.samples();
    dft_all_axes(f.grid(), c, true);
    c *= f.grid().cell_volume();
    return SpectralField(f.grid(), std::move(c));
}

SpatialField from_spectrum(const SpectralField& F) {
    Eigen::ArrayXcd s = F.coeffs();
    dft_all_axes(F.grid(), s, false);
    s *= 1.0 / F.grid().domain_volume();
    return SpatialField(F.grid(), std::move(s));
}

Real l2_norm(const SpatialField& f) {
    return std::sqrt(f.samples().abs2().sum() * f.grid().cell_volume());
}

Real spectral_l2_norm(const SpectralField& F) {
    return std::sqrt(F.coeffs().abs2().sum() / F.grid().domain_volume());
}

SpatialField refine_field(const SpatialField& f) {
    const GridSpec& g = f.grid();
    GridSpec fine = g;
    fine.points = g.points * 2;
    const SpectralField F = to_spectrum(f);
    SpectralField G = SpectralField::zero(fine);
    Index idx[8];
    for (Index i = 0; i < g.size(); ++i) {
        g.unflatten(i, idx);
        Index jdx[8];
        for (Index a = 0; a < g.dim(); ++a) {
            const Index m = g.mode(a, idx[a]);
            jdx[a] = m >= 0 ? m : m + fine.points[a];
        }
        G.coeffs()[fine.flatten(jdx)] = F.coeffs()[i];
    }
    return from_spectrum(G);
}

namespace {

nlohmann::ordered_json field_header(const GridSpec& g, const char* kind) {
    nlohmann::ordered_json h;
    h["dim"] = g.dim();
    h["extent"] = std::vector<Real>(g.extent.data(), g.extent.data() + g.dim());
    h["points"] = std::vector<int>(g.points.data(), g.points.data() + g.dim());
    h["kind"] = kind;
    return h;
}

void write_fld(const std::filesystem::path& path, const GridSpec& g, const char* kind,
               const Eigen::ArrayXcd& data) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw Error("cannot open " + path.string() + " for writing");
    os << field_header(g, kind).dump() << '\n';
    os.write(reinterpret_cast<const char*>(data.data()),
             static_cast<std::streamsize>(sizeof(Complex) * data.size()));
    if (!os) throw Error("short write to " + path.string());
}

std::pair<GridSpec, Eigen::ArrayXcd> read_fld(const std::filesystem::path& path,
                                              const std::string& expected_kind) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw Error("cannot open " + path.string());
    std::string header_line;
    std::getline(is, header_line);
    const auto h = nlohmann::json::parse(header_line);
    GridSpec g;
    const auto ext = h.at("extent").get<std::vector<Real>>();
    const auto pts = h.at("points").get<std::vector<int>>();
    if (h.at("dim").get<Index>() != static_cast<Index>(ext.size()) || ext.size() != pts.size())
        throw ShapeError("inconsistent field header in " + path.string());
    g.extent = Eigen::Map<const Eigen::ArrayXd>(ext.data(), ext.size());
    g.points = Eigen::Map<const Eigen::ArrayXi>(pts.data(), pts.size());
    g.validate();
    if (h.at("kind").get<std::string>() != expected_kind)
        throw ShapeError("field kind mismatch in " + path.string());
    Eigen::ArrayXcd data(g.size());
    is.read(reinterpret_cast<char*>(data.data()),
            static_cast<std::streamsize>(sizeof(Complex) * data.size()));
    if (!is) throw Error("short read from " + path.string());
    if (!data.real().isFinite().all() || !data.imag().isFinite().all())
        throw DomainError("field file contains non-finite values");
    return {std::move(g), std::move(data)};
}

}  // namespace

void save_field(const std::filesystem::path& path, const SpatialField& f) {
    write_fld(path, f.grid(), "spatial", f.samples());
}

void save_field(const std::filesystem::path& path, const SpectralField& F) {
    write_fld(path, F.grid(), "spectral", F.coeffs());
}

SpatialField load_spatial_field(const std::filesystem::path& path) {
    auto [g, data] = read_fld(path, "spatial");
    return SpatialField(std::move(g), std::move(data));
}

SpectralField load_spectral_field(const std::filesystem::path& path) {
    auto [g, data] = read_fld(path, "spectral");
    return SpectralField(std::move(g), std::move(data));
}

}  // namespace anisolp
