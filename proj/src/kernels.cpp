#include "anisolp/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>

#include <nlohmann/json.hpp>

#include "anisolp/cutoff.hpp"

namespace anisolp {

namespace {

// Reference rasterization grids per dimension: fine enough that the table
// interpolation, not the rasterization, limits accuracy.
GridSpec reference_grid(Index dim) {
    switch (dim) {
        case 1: return GridSpec::cube(1, 64.0, 8192);
        case 2: return GridSpec::cube(2, 32.0, 2048);
        case 3: return GridSpec::cube(3, 8.0, 256);
        default: throw DomainError("averaging kernels support dimensions 1..3");
    }
}

void quintic_weights(Real frac, Real* w) {
    // 6-point Lagrange stencil at offsets -2..3
    for (int i = 0; i < 6; ++i) {
        Real num = 1.0, den = 1.0;
        const int oi = i - 2;
        for (int j = 0; j < 6; ++j) {
            if (j == i) continue;
            const int oj = j - 2;
            num *= frac - oj;
            den *= oi - oj;
        }
        w[i] = num / den;
    }
}

}  // namespace

FourierTable FourierTable::from_rasterization(const SpatialField& spatial) {
    const GridSpec& g = spatial.grid();
    FourierTable t;
    t.dim_ = g.dim();
    t.per_axis_ = g.points[0];
    t.spacing_ = 1.0 / g.extent[0];
    t.extent_ = t.per_axis_ / 2 * t.spacing_;

    SpectralField F = to_spectrum(spatial);

    // shift to monotone frequency order: slot m <-> mode m - M/2
    const Index M = t.per_axis_;
    const Index total = g.size();
    Eigen::ArrayXcd shifted(total);
    Index idx[8], jdx[8];
    for (Index i = 0; i < total; ++i) {
        g.unflatten(i, idx);
        for (Index a = 0; a < t.dim_; ++a) jdx[a] = g.mode(a, idx[a]) + M / 2;
        Index flat = 0;
        for (Index a = 0; a < t.dim_; ++a) flat = flat * M + jdx[a];
        shifted[flat] = F.coeffs()[i];
    }

    const Real max_imag = shifted.imag().abs().maxCoeff();
    t.re_ = shifted.real();
    if (max_imag > 1e-12) t.im_ = shifted.imag();

    // record the largest modulus on the outermost shell as the tail bound
    Real edge = 0.0;
    for (Index i = 0; i < total; ++i) {
        Index rem = i;
        bool boundary = false;
        for (Index a = t.dim_ - 1; a >= 0; --a) {
            const Index c = rem % M;
            rem /= M;
            if (c == 0 || c == M - 1) boundary = true;
        }
        if (boundary) edge = std::max(edge, std::abs(shifted[i]));
    }
    t.edge_bound_ = edge;
    return t;
}

bool FourierTable::covers(const VectorN& xi) const {
    const Real usable = extent_ - 3.5 * spacing_;
    for (Index a = 0; a < dim_; ++a)
        if (std::abs(xi[a]) > usable) return false;
    return true;
}

Complex FourierTable::operator()(const VectorN& xi) const {
    if (dim_ == 0) throw Error("empty Fourier table");
    if (!covers(xi)) return {0.0, 0.0};

    Index base[3];
    Real w[3][6];
    for (Index a = 0; a < dim_; ++a) {
        const Real u = xi[a] / spacing_ + per_axis_ / 2;
        const Real fl = std::floor(u);
        base[a] = static_cast<Index>(fl);
        quintic_weights(u - fl, w[a]);
    }

    Real re = 0.0, im = 0.0;
    const bool has_im = im_.size() > 0;
    if (dim_ == 1) {
        for (int i = 0; i < 6; ++i) {
            const Index k = base[0] + i - 2;
            re += w[0][i] * re_[k];
            if (has_im) im += w[0][i] * im_[k];
        }
    } else if (dim_ == 2) {
        for (int i = 0; i < 6; ++i) {
            const Index row = (base[0] + i - 2) * per_axis_;
            Real acc_re = 0.0, acc_im = 0.0;
            for (int j = 0; j < 6; ++j) {
                const Index k = row + base[1] + j - 2;
                acc_re += w[1][j] * re_[k];
                if (has_im) acc_im += w[1][j] * im_[k];
            }
            re += w[0][i] * acc_re;
            im += w[0][i] * acc_im;
        }
    } else {
        for (int i = 0; i < 6; ++i)
            for (int j = 0; j < 6; ++j) {
                const Index row = ((base[0] + i - 2) * per_axis_ + base[1] + j - 2) * per_axis_;
                const Real wij = w[0][i] * w[1][j];
                for (int k = 0; k < 6; ++k) {
                    const Index q = row + base[2] + k - 2;
                    re += wij * w[2][k] * re_[q];
                    if (has_im) im += wij * w[2][k] * im_[q];
                }
            }
    }
    return {re, im};
}

AveragingKernel::AveragingKernel(SpatialField spatial, Real claimed_order, VectorN support_lo,
                                 VectorN support_hi, std::string tag)
    : spatial_(std::move(spatial)),
      claimed_order_(claimed_order),
      support_lo_(std::move(support_lo)),
      support_hi_(std::move(support_hi)),
      tag_(std::move(tag)) {
    if (claimed_order_ < 0.0) throw DomainError("moment-class order must be nonnegative");
    const Index n = spatial_.grid().dim();
    if (n > 3) throw DomainError("averaging kernels support dimensions 1..3");
    table_ = FourierTable::from_rasterization(spatial_);
    const Real mass = moment(std::vector<int>(n, 0));
    if (std::abs(mass - 1.0) > 1e-9)
        throw NormalizationError("averaging kernel mass " + std::to_string(mass) + " != 1");

    // Taylor model of Phi_hat around 0 from the discrete moments, orders
    // 1..6: remainder ~ (2 pi |xi|)^7 / 7! stays below the table's
    // interpolation error inside the handover box
    std::vector<int> a(n, 0);
    std::array<Index, 3> top{};
    const std::function<void(Index, int)> walk = [&](Index axis, int remaining) {
        if (axis == n) {
            const int total = std::accumulate(a.begin(), a.end(), 0);
            if (total < 1) return;
            Real factorial = 1.0;
            for (Index d = 0; d < n; ++d)
                for (int v = 2; v <= a[d]; ++v) factorial *= v;
            TaylorTerm term;
            term.index = {0, 0, 0};
            for (Index d = 0; d < n; ++d) term.index[d] = a[d];
            term.coeff = cpow_int(Complex(0.0, -kTwoPi), total) * moment(a) / factorial;
            taylor_.push_back(term);
            return;
        }
        for (int v = 0; v <= remaining; ++v) {
            a[axis] = v;
            walk(axis + 1, remaining - v);
        }
        a[axis] = 0;
    };
    (void)top;
    walk(0, 6);
}

Complex AveragingKernel::fourier(const VectorN& xi) const {
    const Index n = spatial_.grid().dim();
    bool near = true;
    for (Index d = 0; d < n; ++d) near &= std::abs(xi[d]) < taylor_radius_;
    if (!near) return table_(xi);
    return Complex(1.0, 0.0) - one_minus_fourier(xi);
}

Complex AveragingKernel::one_minus_fourier(const VectorN& xi) const {
    const Index n = spatial_.grid().dim();
    bool near = true;
    for (Index d = 0; d < n; ++d) near &= std::abs(xi[d]) < taylor_radius_;
    if (!near) return Complex(1.0, 0.0) - table_(xi);
    Complex sum{0.0, 0.0};
    for (const TaylorTerm& term : taylor_) {
        Real mono = 1.0;
        for (Index d = 0; d < n; ++d)
            for (int rep = 0; rep < term.index[d]; ++rep) mono *= xi[d];
        sum += term.coeff * mono;
    }
    return -sum;
}

Complex AveragingKernel::fourier_direct(const VectorN& xi) const {
    const GridSpec& g = spatial_.grid();
    Complex sum{0.0, 0.0};
    for (Index i = 0; i < g.size(); ++i) {
        const Complex v = spatial_.samples()[i];
        if (v == Complex{0.0, 0.0}) continue;
        const Real phase = -kTwoPi * g.coordinate(i).dot(xi);
        sum += v * Complex(std::cos(phase), std::sin(phase));
    }
    return sum * g.cell_volume();
}

Real AveragingKernel::moment(const std::vector<int>& a) const {
    const GridSpec& g = spatial_.grid();
    if (static_cast<Index>(a.size()) != g.dim()) throw ShapeError("moment multi-index dimension mismatch");
    Real sum = 0.0;
    for (Index i = 0; i < g.size(); ++i) {
        const Real v = spatial_.samples()[i].real();
        if (v == 0.0) continue;
        const VectorN x = g.coordinate(i);
        Real mono = 1.0;
        for (Index d = 0; d < g.dim(); ++d)
            for (int rep = 0; rep < a[d]; ++rep) mono *= x[d];
        sum += v * mono;
    }
    return sum * g.cell_volume();
}

namespace {

SpatialField normalize_mass(SpatialField f) {
    const Real mass = f.samples().real().sum() * f.grid().cell_volume();
    f.samples() /= mass;
    return f;
}

}  // namespace

AveragingKernel ball_averaging_kernel(const DilationGroup& G) {
    const GridSpec g = reference_grid(G.dim());
    const Index n = g.dim();
    const Real h = g.extent[0] / g.points[0];
    const Real margin = 0.5 * h * std::sqrt(static_cast<Real>(n));
    Eigen::ArrayXcd samples = Eigen::ArrayXcd::Zero(g.size());

    // property (3): the unit rho-ball equals the Euclidean unit ball, so the
    // indicator test is |x| < 1 regardless of P
    const int sub = 16;
    VectorN p(n);
    for (Index i = 0; i < g.size(); ++i) {
        const VectorN c = g.coordinate(i);
        const Real r = c.norm();
        if (r + margin < 1.0) {
            samples[i] = 1.0;
        } else if (r - margin <= 1.0) {
            Index inside = 0, total = 1;
            for (Index d = 0; d < n; ++d) total *= sub;
            for (Index s = 0; s < total; ++s) {
                Index rem = s;
                for (Index d = 0; d < n; ++d) {
                    const Index q = rem % sub;
                    rem /= sub;
                    p[d] = c[d] + ((q + 0.5) / sub - 0.5) * h;
                }
                if (p.norm() < 1.0) ++inside;
            }
            samples[i] = static_cast<Real>(inside) / total;
        }
    }
    SpatialField f = normalize_mass(SpatialField(g, std::move(samples)));
    return AveragingKernel(std::move(f), 1.0, VectorN::Constant(n, -1.0), VectorN::Constant(n, 1.0),
                           "ball");
}

AveragingKernel smooth_bump_kernel(const DilationGroup& G) {
    const GridSpec g = reference_grid(G.dim());
    const Index n = g.dim();
    Eigen::ArrayXcd samples = Eigen::ArrayXcd::Zero(g.size());
    for (Index i = 0; i < g.size(); ++i) {
        const Real r2 = g.coordinate(i).squaredNorm();
        if (r2 < 1.0) samples[i] = std::exp(-1.0 / (1.0 - r2));
    }
    SpatialField f = normalize_mass(SpatialField(g, std::move(samples)));
    return AveragingKernel(std::move(f), 1.0, VectorN::Constant(n, -1.0), VectorN::Constant(n, 1.0),
                           "bump");
}

AveragingKernel import_kernel(const std::filesystem::path& field_path,
                              const std::filesystem::path& sidecar_path) {
    SpatialField f = load_spatial_field(field_path);
    std::ifstream is(sidecar_path);
    if (!is) throw Error("cannot open " + sidecar_path.string());
    const auto meta = nlohmann::json::parse(is);
    const Real order = meta.at("claimed_order").get<Real>();
    const auto box = meta.at("support_box").get<std::vector<std::vector<Real>>>();
    if (box.size() != 2 || static_cast<Index>(box[0].size()) != f.grid().dim())
        throw ShapeError("support_box must be [[lo...],[hi...]] matching the field dimension");
    VectorN lo = Eigen::Map<const VectorN>(box[0].data(), box[0].size());
    VectorN hi = Eigen::Map<const VectorN>(box[1].data(), box[1].size());
    return AveragingKernel(std::move(f), order, std::move(lo), std::move(hi), "imported");
}

const AveragingKernel& shared_ball_kernel(const DilationGroup& G) {
    static std::mutex mu;
    static std::map<std::uint64_t, std::unique_ptr<AveragingKernel>> cache;
    std::lock_guard lock(mu);
    auto& slot = cache[G.id()];
    if (!slot) slot = std::make_unique<AveragingKernel>(ball_averaging_kernel(G));
    return *slot;
}

const AveragingKernel& shared_bump_kernel(const DilationGroup& G) {
    static std::mutex mu;
    static std::map<std::uint64_t, std::unique_ptr<AveragingKernel>> cache;
    std::lock_guard lock(mu);
    auto& slot = cache[G.id()];
    if (!slot) slot = std::make_unique<AveragingKernel>(smooth_bump_kernel(G));
    return *slot;
}

MomentCheck check_moment_class(const AveragingKernel& kernel, Real alpha, Real tolerance) {
    if (alpha < 0.0) throw DomainError("moment class order must be nonnegative");
    const Index n = kernel.spatial().grid().dim();
    MomentCheck out;
    out.mass = kernel.moment(std::vector<int>(n, 0));
    out.pass = std::abs(out.mass - 1.0) <= 1e-9;

    const int top = static_cast<int>(std::floor(alpha));
    std::vector<int> a(n, 0);
    // enumerate all multi-indices with 1 <= |a| <= floor(alpha)
    const std::function<void(Index, int)> walk = [&](Index axis, int remaining) {
        if (axis == n) {
            const int total = std::accumulate(a.begin(), a.end(), 0);
            if (total >= 1) {
                const Real m = kernel.moment(a);
                out.residuals.push_back({a, m});
                if (std::abs(m) > tolerance) out.pass = false;
            }
            return;
        }
        for (int v = 0; v <= remaining; ++v) {
            a[axis] = v;
            walk(axis + 1, remaining - v);
        }
        a[axis] = 0;
    };
    if (alpha >= 1.0) walk(0, top);
    return out;
}

Complex IteratedSymbol::operator()(const VectorN& xi) const {
    return 1.0 - cpow_int(kernel->one_minus_fourier(xi), order);
}

Complex IteratedSymbol::binomial(const VectorN& xi) const {
    const Complex phi = kernel->fourier(xi);
    Complex sum{0.0, 0.0};
    Real binom = 1.0;
    Complex power{1.0, 0.0};
    for (int j = 1; j <= order; ++j) {
        binom *= static_cast<Real>(order - j + 1) / j;
        power *= phi;
        sum += (j % 2 == 1 ? 1.0 : -1.0) * binom * power;
    }
    return sum;
}

IteratedSymbol iterated_symbol(const AveragingKernel& kernel, int k) {
    if (k < 1) throw DomainError("iterated symbol needs k >= 1");
    return IteratedSymbol{&kernel, k};
}

SpatialField iterated_kernel_spatial(const AveragingKernel& kernel, int k) {
    if (k < 1) throw DomainError("iterated kernel needs k >= 1");
    SpectralField F = to_spectrum(kernel.spatial());
    for (Index i = 0; i < F.coeffs().size(); ++i) {
        const Complex phi = F.coeffs()[i];
        F.coeffs()[i] = 1.0 - cpow_int(Complex(1.0, 0.0) - phi, k);
    }
    return from_spectrum(F);
}

LPProfile::LPProfile(Symbol symbol, std::string tag) : symbol_(std::move(symbol)), tag_(std::move(tag)) {}

LPProfile::LPProfile(Symbol symbol, std::string tag, ScaleTail tail)
    : symbol_(std::move(symbol)), tag_(std::move(tag)), tail_(std::move(tail)) {}

LPProfile potential_profile(const DilationGroup& G, Real alpha, const AveragingKernel& kernel) {
    if (!(alpha > 0.0) || !(alpha < G.gamma()))
        throw DomainError("potential profile needs alpha in (0, gamma)");
    const AveragingKernel* k = &kernel;
    // once delta_t^* xi leaves the Phi_hat table, psi_hat = (t rho*)^{-alpha}
    LPProfile::ScaleTail tail{alpha, [alpha](Real rho) { return std::pow(rho, -alpha); }};
    LPProfile psi(
        [k, alpha](const VectorN& xi, Real rho_star) -> Complex {
            if (rho_star <= 0.0) return {0.0, 0.0};
            return std::pow(rho_star, -alpha) * k->one_minus_fourier(xi);
        },
        "potential:" + kernel.tag(), std::move(tail));

    // non-degeneracy scan: sup_t |psi_hat(delta_t^* xi)| > 0 per direction
    for (const VectorN& u : shell_directions(G.dim(), 64)) {
        Real best = 0.0;
        for (Index j = 0; j < 256; ++j) {
            const Real t = std::exp2(-8.0 + 16.0 * j / 255.0);
            const VectorN eta = G.apply(t, u, true);
            best = std::max(best, std::abs(psi.symbol(eta, t)));
        }
        if (!(best > 0.0)) throw DegenerateSymbolError("potential profile degenerates on a ray");
    }
    return psi;
}

LPProfile radial_profile(const ScaleBump& eta) {
    // normalization check: \int eta^2 dt/t = 1 within 1e-8
    const Index n = 1 << 15;
    const Real h = std::log(2.0) / n;
    Real sum = 0.0;
    for (Index i = 0; i <= n; ++i) {
        const Real v = eta(std::exp(i * h));
        sum += (i == 0 || i == n ? 0.5 : 1.0) * v * v * h;
    }
    if (std::abs(sum - 1.0) > 1e-8)
        throw NormalizationError("scale bump has \\int eta^2 dt/t = " + std::to_string(sum));
    return LPProfile([eta](const VectorN&, Real rho_star) -> Complex { return {eta(rho_star), 0.0}; },
                     "radial");
}

std::vector<LPProfile> poisson_gradient_family(const DilationGroup& G) {
    if (!G.isotropic()) throw DomainError("the Poisson-gradient family requires P = I");
    std::vector<LPProfile> out;
    for (Index j = 0; j < G.dim(); ++j) {
        out.emplace_back(
            [j](const VectorN& xi, Real) -> Complex {
                const Real r = xi.norm();
                return Complex(0.0, kTwoPi * xi[j]) * std::exp(-kTwoPi * r);
            },
            "poisson:" + std::to_string(j));
    }
    return out;
}

namespace {

// psi_hat for sgn chi_[-1,1]: -i (1 - cos(2 pi u)) / (pi u)
Complex marcinkiewicz_symbol(Real u) {
    const Real a = kTwoPi * u;
    if (std::abs(a) < 1e-4) {
        // (1 - cos a)/(pi u) = 2 pi u (1 - a^2/12 + a^4/360)
        return {0.0, -kTwoPi * u * (1.0 - a * a / 12.0 + a * a * a * a / 360.0)};
    }
    return {0.0, -(1.0 - std::cos(a)) / (kPi * u)};
}

// psi_hat for x chi_[-1,1]: -i (sin(2 pi u) - 2 pi u cos(2 pi u)) / (2 pi^2 u^2)
Complex marcinkiewicz_first_symbol(Real u) {
    const Real a = kTwoPi * u;
    if (std::abs(a) < 1e-4) {
        // (sin a - a cos a)/(2 pi^2 u^2) = (4 pi u / 3)(1 - a^2/10 + a^4/280)
        return {0.0, -(4.0 * kPi * u / 3.0) * (1.0 - a * a / 10.0 + a * a * a * a / 280.0)};
    }
    return {0.0, -(std::sin(a) - a * std::cos(a)) / (2.0 * kPi * kPi * u * u)};
}

}  // namespace

LPProfile marcinkiewicz_profile() {
    return LPProfile([](const VectorN& xi, Real) { return marcinkiewicz_symbol(xi[0]); }, "marcinkiewicz:mu");
}

LPProfile marcinkiewicz_first_moment_profile() {
    return LPProfile([](const VectorN& xi, Real) { return marcinkiewicz_first_symbol(xi[0]); },
                     "marcinkiewicz:first");
}

LPProfile marcinkiewicz_zero_profile() {
    return LPProfile(
        [](const VectorN& xi, Real) {
            return 0.5 * (marcinkiewicz_symbol(xi[0]) - marcinkiewicz_first_symbol(xi[0]));
        },
        "marcinkiewicz:nu");
}

std::vector<VectorN> shell_directions(Index dim, Index count) {
    std::vector<VectorN> out;
    if (dim == 1) {
        out.push_back(VectorN::Constant(1, 1.0));
        out.push_back(VectorN::Constant(1, -1.0));
    } else if (dim == 2) {
        for (Index i = 0; i < count; ++i) {
            const Real th = kTwoPi * i / count;
            VectorN u(2);
            u << std::cos(th), std::sin(th);
            out.push_back(u);
        }
    } else {
        // Fibonacci sphere
        const Real golden = (1.0 + std::sqrt(5.0)) / 2.0;
        for (Index i = 0; i < count; ++i) {
            const Real z = 1.0 - 2.0 * (i + 0.5) / count;
            const Real r = std::sqrt(std::max(0.0, 1.0 - z * z));
            const Real th = kTwoPi * i / golden;
            VectorN u(dim);
            u.setZero();
            u[0] = r * std::cos(th);
            u[1] = r * std::sin(th);
            u[2] = z;
            out.push_back(u);
        }
    }
    return out;
}

Real scale_sup(const LPProfile& psi, const DilationGroup& G, const VectorN& xi) {
    const Real rho = G.rho_star(xi);
    if (rho <= 0.0) return 0.0;
    const auto value = [&](Real t) { return std::abs(psi.symbol(G.apply(t, xi, true), t * rho)); };

    Real best_t = 1.0, best = 0.0;
    const Index nscan = 512;
    for (Index j = 0; j < nscan; ++j) {
        const Real t = std::exp2(-10.0 + 20.0 * j / (nscan - 1));
        const Real v = value(t);
        if (v > best) {
            best = v;
            best_t = t;
        }
    }
    // golden-section refinement in log t around the best node
    const Real gr = (std::sqrt(5.0) - 1.0) / 2.0;
    Real a = std::log(best_t) - 20.0 * std::log(2.0) / nscan;
    Real b = std::log(best_t) + 20.0 * std::log(2.0) / nscan;
    Real c = b - gr * (b - a), d = a + gr * (b - a);
    Real fc = value(std::exp(c)), fd = value(std::exp(d));
    for (int it = 0; it < 80 && (b - a) > 1e-12; ++it) {
        if (fc > fd) {
            b = d; d = c; fd = fc;
            c = b - gr * (b - a);
            fc = value(std::exp(c));
        } else {
            a = c; c = d; fc = fd;
            d = a + gr * (b - a);
            fd = value(std::exp(d));
        }
    }
    return std::max(best, std::max(fc, fd));
}

AdmissibilitySeminorms profile_admissibility(const SpatialField& psi, const DilationGroup& G,
                                             Real eps, Real u) {
    if (!(eps > 0.0)) throw DomainError("B_eps needs eps > 0");
    if (!(u > 1.0)) throw DomainError("D_u needs u > 1");
    const GridSpec& g = psi.grid();
    const Real cell = g.cell_volume();
    const auto rho = rho_lattice(G, g);

    AdmissibilitySeminorms out;
    Real du_sum = 0.0;
    for (Index i = 0; i < g.size(); ++i) {
        const Real mag = std::abs(psi.samples()[i]);
        const Real r = g.coordinate(i).norm();
        if (r > 1.0)
            out.b_eps += mag * std::pow(r, eps) * cell;
        else
            du_sum += std::pow(mag, u) * cell;
    }
    out.d_u = std::pow(du_sum, 1.0 / u);

    // H_psi(x) = sup_{rho(y) >= rho(x)} |psi(y)| via suffix maxima in rho order
    std::vector<Index> order(g.size());
    std::iota(order.begin(), order.end(), Index{0});
    std::sort(order.begin(), order.end(), [&](Index a, Index b) { return (*rho)[a] < (*rho)[b]; });
    Real running = 0.0, h1 = 0.0;
    for (Index j = g.size() - 1; j >= 0; --j) {
        running = std::max(running, std::abs(psi.samples()[order[j]]));
        h1 += running * cell;
    }
    out.h_norm = h1;
    return out;
}

SpatialField spatialize_profile(const LPProfile& psi, const DilationGroup& G, const GridSpec& base) {
    GridSpec padded = base;
    padded.extent = base.extent * 4.0;
    padded.points = base.points * 4;  // same cell size, 4x the box
    const auto rho = rho_star_lattice(G, padded);
    SpectralField F = SpectralField::zero(padded);
    for (Index i = 0; i < padded.size(); ++i)
        F.coeffs()[i] = psi.symbol(padded.frequency(i), (*rho)[i]);
    return from_spectrum(F);
}

}  // namespace anisolp
