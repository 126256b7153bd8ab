#ifndef NLEVY_GRID_HPP
#define NLEVY_GRID_HPP

#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "common.hpp"
#include "measure.hpp"

namespace nlevy {

// ---------------------------------------------------------------------------
// Real scalar fields on the uniform periodic grid over [0, 2pi)^d, d <= 3,
// with n (a power of two) points per axis. Row-major layout, axis 0 slowest.
// Fourier conventions: forward u_hat(k) = sum_j u(x_j) e^{-i k.x_j} with
// integer frequencies k in {-n/2, ..., n/2 - 1}; inverse divides by n^d.
// ---------------------------------------------------------------------------

struct GridField {
    int dim = 1;
    int n = 0;
    std::vector<double> values;  // size n^dim

    GridField() = default;
    GridField(int dim_, int n_) : dim(dim_), n(n_) {
        if (dim < 1 || dim > 3) throw std::invalid_argument("GridField: dim in {1,2,3}");
        if (n < 2 || (n & (n - 1)) != 0) throw std::invalid_argument("GridField: n power of two");
        values.assign(size(), 0.0);
    }
    size_t size() const {
        size_t s = 1;
        for (int a = 0; a < dim; ++a) s *= n;
        return s;
    }
    double spacing() const { return 2.0 * pi / n; }

    /// Coordinate of grid node `idx` along axis `axis` (index decomposition).
    double coord(size_t flat, int axis) const {
        size_t stride = 1;
        for (int a = dim - 1; a > axis; --a) stride *= n;
        return spacing() * ((flat / stride) % n);
    }
};

/// Frequency of the a-th index along one axis.
inline int lattice_freq(int idx, int n) { return idx <= n / 2 - 1 ? idx : idx - n; }

namespace detail {

inline void fft_radix2(std::vector<cdouble>& a, bool inverse) {
    const size_t n = a.size();
    if (n == 0 || (n & (n - 1)) != 0) throw std::invalid_argument("fft_radix2: power of two");
    for (size_t i = 1, j = 0; i < n; ++i) {
        size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (size_t len = 2; len <= n; len <<= 1) {
        const double ang = 2.0 * pi / double(len) * (inverse ? 1.0 : -1.0);
        const cdouble wl = std::polar(1.0, ang);
        for (size_t i = 0; i < n; i += len) {
            cdouble w{1.0, 0.0};
            for (size_t j = 0; j < len / 2; ++j) {
                const cdouble u = a[i + j];
                const cdouble v = a[i + j + len / 2] * w;
                a[i + j] = u + v;
                a[i + j + len / 2] = u - v;
                w *= wl;
            }
        }
    }
    if (inverse)
        for (auto& x : a) x /= double(n);
}

/// Applies the 1-d transform along `axis` of a dim-dimensional row-major array.
inline void fft_axis(std::vector<cdouble>& a, int dim, int n, int axis, bool inverse) {
    size_t stride = 1;
    for (int ax = dim - 1; ax > axis; --ax) stride *= n;
    const size_t total = a.size();
    const size_t block = stride * n;
    std::vector<cdouble> line(n);
    for (size_t base = 0; base < total; base += block)
        for (size_t off = 0; off < stride; ++off) {
            for (int k = 0; k < n; ++k) line[k] = a[base + off + k * stride];
            fft_radix2(line, inverse);
            for (int k = 0; k < n; ++k) a[base + off + k * stride] = line[k];
        }
}

}  // namespace detail

inline std::vector<cdouble> forward_transform(const GridField& u) {
    std::vector<cdouble> a(u.values.begin(), u.values.end());
    for (int axis = 0; axis < u.dim; ++axis) detail::fft_axis(a, u.dim, u.n, axis, false);
    return a;
}

/// Inverse transform that must land on a real field; the residual imaginary
/// part is how non-Hermitian multipliers are caught.
inline GridField inverse_transform_real(int dim, int n, std::vector<cdouble> spec,
                                        double imag_tol = 1e-9) {
    for (int axis = 0; axis < dim; ++axis) detail::fft_axis(spec, dim, n, axis, true);
    GridField out(dim, n);
    double max_im = 0.0, max_re = 0.0;
    for (size_t i = 0; i < spec.size(); ++i) {
        out.values[i] = spec[i].real();
        max_im = std::max(max_im, std::abs(spec[i].imag()));
        max_re = std::max(max_re, std::abs(spec[i].real()));
    }
    if (max_im > imag_tol * std::max(1.0, max_re))
        throw std::invalid_argument("inverse_transform_real: output is not real "
                                    "(non-Hermitian multiplier?)");
    return out;
}

/// Integer frequency vector of a flat spectral index.
inline Vec lattice_freq_vec(size_t flat, int dim, int n) {
    Vec f{};
    size_t rem = flat;
    for (int a = dim - 1; a >= 0; --a) {
        f[a] = lattice_freq(int(rem % n), n);
        rem /= n;
    }
    return f;
}

/// Applies a Fourier multiplier xi -> mult(xi) on the integer lattice.
template <class Mult>
GridField apply_multiplier(const GridField& u, Mult&& mult) {
    std::vector<cdouble> spec = forward_transform(u);
    for (size_t i = 0; i < spec.size(); ++i)
        spec[i] *= mult(lattice_freq_vec(i, u.dim, u.n));
    return inverse_transform_real(u.dim, u.n, std::move(spec));
}

/// (-Delta)^{sigma/2} u, or (1 - Delta)^{sigma/2} u when shifted.
inline GridField fractional_laplacian(const GridField& u, double sigma, bool shifted = false) {
    if (!(sigma > 0.0 && sigma < 2.0)) throw std::invalid_argument("fractional_laplacian: sigma in (0,2)");
    return apply_multiplier(u, [sigma, shifted, dim = u.dim](const Vec& f) -> cdouble {
        const double q = dot(f, f, dim);
        return shifted ? std::pow(1.0 + q, 0.5 * sigma) : std::pow(q, 0.5 * sigma);
    });
}

/// Spectral partial derivative along `axis`.
inline GridField spectral_derivative(const GridField& u, int axis) {
    return apply_multiplier(u, [axis](const Vec& f) { return cdouble{0.0, f[axis]}; });
}

// ---------------------------------------------------------------------------
// trigonometric interpolation (direct summation; deliberately avoids the FFT
// inverse path so the nonlocal operator below has an independent route)
// ---------------------------------------------------------------------------

/// Evaluates the interpolating trigonometric polynomial at an arbitrary point.
inline double value_at(const std::vector<cdouble>& spec, int dim, int n, const Vec& x) {
    cdouble acc{0.0, 0.0};
    for (size_t i = 0; i < spec.size(); ++i) {
        if (spec[i] == cdouble{0.0, 0.0}) continue;
        const Vec f = lattice_freq_vec(i, dim, n);
        acc += spec[i] * std::polar(1.0, dot(f, x, dim));
    }
    double N = 1.0;
    for (int a = 0; a < dim; ++a) N *= n;
    return acc.real() / N;
}

/// Field of u(. + shift) by per-axis direct inverse sums at shifted nodes.
inline GridField shifted_field(const std::vector<cdouble>& spec, int dim, int n, const Vec& shift) {
    std::vector<cdouble> a = spec;
    std::vector<cdouble> line(n), out_line(n);
    for (int axis = 0; axis < dim; ++axis) {
        size_t stride = 1;
        for (int ax = dim - 1; ax > axis; --ax) stride *= n;
        const size_t block = stride * size_t(n);
        // phase table e^{i k (x_j + shift)} = e^{i k shift} w^{k j}
        std::vector<cdouble> ph(n), omega(n);
        for (int idx = 0; idx < n; ++idx) {
            const int k = lattice_freq(idx, n);
            ph[idx] = std::polar(1.0 / n, k * shift[axis]);
        }
        for (int mpow = 0; mpow < n; ++mpow) omega[mpow] = std::polar(1.0, 2.0 * pi * mpow / n);
        for (size_t base = 0; base < a.size(); base += block)
            for (size_t off = 0; off < stride; ++off) {
                for (int k = 0; k < n; ++k) line[k] = a[base + off + k * stride];
                for (int j = 0; j < n; ++j) {
                    cdouble acc{0.0, 0.0};
                    for (int idx = 0; idx < n; ++idx) {
                        if (line[idx] == cdouble{0.0, 0.0}) continue;
                        const int k = lattice_freq(idx, n);
                        const int mpow = ((k * j) % n + n) % n;
                        acc += line[idx] * ph[idx] * omega[mpow];
                    }
                    out_line[j] = acc;
                }
                for (int j = 0; j < n; ++j) a[base + off + j * stride] = out_line[j];
            }
    }
    GridField out(dim, n);
    for (size_t i = 0; i < a.size(); ++i) out.values[i] = a[i].real();
    return out;
}

/// True when some atom shift exceeds the half-period, i.e. periodization
/// aliases the measure on this domain.
inline bool atoms_alias_domain(const LevyMeasure& m, int dim) {
    for (const auto& a : enumerate_atoms(m))
        if (norm(a.y, dim) > pi) return true;
    return false;
}

/// Direct application of the nonlocal operator for atomic measures:
///   sum_j w_j ( u(x + y_j) - u(x) - grad u(x) . y_j^{(sigma)} ),
/// with off-grid shifts x + y_j through trigonometric interpolation.
/// Density measures are rejected; use apply_multiplier with the symbol.
inline GridField apply_levy_direct(const GridField& u, const LevyMeasure& m) {
    if (!is_atomic(m))
        throw std::invalid_argument("apply_levy_direct: measure has a density component; "
                                    "use apply_multiplier");
    if (m.sigma == 1.0 && !is_symmetric(m))
        throw std::invalid_argument("apply_levy_direct: sigma = 1 requires a symmetric atom set");
    const std::vector<Atom> atoms = enumerate_atoms(m);
    const std::vector<cdouble> spec = forward_transform(u);

    GridField out(u.dim, u.n);
    double wsum = 0.0;
    Vec drift{};
    for (const auto& a : atoms) {
        const GridField sh = shifted_field(spec, u.dim, u.n, a.y);
        for (size_t i = 0; i < out.values.size(); ++i) out.values[i] += a.w * sh.values[i];
        wsum += a.w;
        if (m.sigma > 1.0) drift = add(drift, scale(a.y, a.w));
        if (m.sigma == 1.0 && norm(a.y, u.dim) <= 1.0) drift = add(drift, scale(a.y, a.w));
    }
    for (size_t i = 0; i < out.values.size(); ++i) out.values[i] -= wsum * u.values[i];
    if (norm(drift, u.dim) > 0.0)
        for (int axis = 0; axis < u.dim; ++axis) {
            if (drift[axis] == 0.0) continue;
            const GridField du = spectral_derivative(u, axis);
            for (size_t i = 0; i < out.values.size(); ++i)
                out.values[i] -= drift[axis] * du.values[i];
        }
    return out;
}

// ---------------------------------------------------------------------------
// random fields and serialization
// ---------------------------------------------------------------------------

/// Mean-zero real field with i.i.d. Gaussian spectral coefficients on modes
/// with |k_a| <= max_mode, normalized to unit discrete L2 norm.
inline GridField random_band_limited(int dim, int n, int max_mode, std::mt19937_64& rng) {
    if (max_mode >= n / 2) throw std::invalid_argument("random_band_limited: max_mode < n/2");
    std::normal_distribution<double> gauss(0.0, 1.0);
    GridField u(dim, n);
    std::vector<cdouble> spec(u.size(), cdouble{0.0, 0.0});
    size_t strides[3] = {0, 0, 0};
    {
        size_t s = 1;
        for (int a = dim - 1; a >= 0; --a) {
            strides[a] = s;
            s *= n;
        }
    }
    // walk the band-limited box once; assign conjugate pairs together
    std::array<int, 3> k{0, 0, 0};
    auto flat_of = [&](const std::array<int, 3>& kk) {
        size_t f = 0;
        for (int a = 0; a < dim; ++a) f += size_t((kk[a] + n) % n) * strides[a];
        return f;
    };
    auto walk = [&](auto&& self, int axis) -> void {
        if (axis == dim) {
            if (k[0] == 0 && k[1] == 0 && k[2] == 0) return;  // mean-zero
            std::array<int, 3> neg{};
            for (int a = 0; a < dim; ++a) neg[a] = -k[a];
            const size_t f = flat_of(k), g = flat_of(neg);
            if (spec[f] != cdouble{0.0, 0.0}) return;  // already set as a conjugate
            if (f == g) {
                spec[f] = cdouble{gauss(rng), 0.0};
            } else {
                const cdouble z{gauss(rng), gauss(rng)};
                spec[f] = z;
                spec[g] = std::conj(z);
            }
            return;
        }
        for (k[axis] = -max_mode; k[axis] <= max_mode; ++k[axis]) self(self, axis + 1);
        k[axis] = 0;
    };
    walk(walk, 0);
    GridField out = inverse_transform_real(dim, n, std::move(spec));
    double l2 = 0.0;
    for (double v : out.values) l2 += v * v;
    l2 = std::sqrt(l2 * std::pow(out.spacing(), dim));
    if (l2 > 0.0)
        for (auto& v : out.values) v /= l2;
    return out;
}

/// Re-samples a band-limited field on a finer (or equal) grid by spectrum
/// embedding; represents the same trigonometric polynomial.
inline GridField resample(const GridField& u, int n2) {
    if (n2 == u.n) return u;
    if (n2 < u.n) throw std::invalid_argument("resample: refinement only");
    const std::vector<cdouble> spec = forward_transform(u);
    std::vector<cdouble> spec2(size_t(std::pow(n2, u.dim)), cdouble{0.0, 0.0});
    double ratio = 1.0;
    for (int a = 0; a < u.dim; ++a) ratio *= double(n2) / u.n;
    size_t strides2[3] = {0, 0, 0};
    {
        size_t s = 1;
        for (int a = u.dim - 1; a >= 0; --a) {
            strides2[a] = s;
            s *= n2;
        }
    }
    for (size_t i = 0; i < spec.size(); ++i) {
        if (spec[i] == cdouble{0.0, 0.0}) continue;
        const Vec f = lattice_freq_vec(i, u.dim, u.n);
        size_t flat = 0;
        for (int a = 0; a < u.dim; ++a)
            flat += size_t((int(f[a]) + n2) % n2) * strides2[a];
        spec2[flat] = spec[i] * ratio;
    }
    return inverse_transform_real(u.dim, n2, std::move(spec2));
}

inline void write_field_binary(const GridField& u, const std::string& path) {
    std::FILE* f = std::fopen(path.c_str(), "wb");
    if (!f) throw std::runtime_error("write_field_binary: cannot open " + path);
    const int32_t d = u.dim, n = u.n;
    std::fwrite(&d, sizeof d, 1, f);
    std::fwrite(&n, sizeof n, 1, f);
    std::fwrite(u.values.data(), sizeof(double), u.values.size(), f);
    std::fclose(f);
}

inline GridField read_field_binary(const std::string& path) {
    std::FILE* f = std::fopen(path.c_str(), "rb");
    if (!f) throw std::runtime_error("read_field_binary: cannot open " + path);
    int32_t d = 0, n = 0;
    if (std::fread(&d, sizeof d, 1, f) != 1 || std::fread(&n, sizeof n, 1, f) != 1) {
        std::fclose(f);
        throw std::runtime_error("read_field_binary: bad header");
    }
    GridField u(d, n);
    const size_t got = std::fread(u.values.data(), sizeof(double), u.values.size(), f);
    std::fclose(f);
    if (got != u.values.size()) throw std::runtime_error("read_field_binary: short read");
    return u;
}

inline void write_field_csv(const GridField& u, const std::string& path) {
    if (u.dim != 1) throw std::invalid_argument("write_field_csv: dim = 1 only");
    std::FILE* f = std::fopen(path.c_str(), "wb");
    if (!f) throw std::runtime_error("write_field_csv: cannot open " + path);
    std::fprintf(f, "x,value\n");
    for (int j = 0; j < u.n; ++j)
        std::fprintf(f, "%.17g,%.17g\n", u.spacing() * j, u.values[j]);
    std::fclose(f);
}

}  // namespace nlevy

#endif
