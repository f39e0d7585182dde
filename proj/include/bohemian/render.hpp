#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "bohemian/palettes.hpp"
#include "bohemian/scalar.hpp"

namespace bohemian {

struct Window {
    double re_min = -1, re_max = 1, im_min = -1, im_max = 1;

    void validate() const {
        if (!(re_min < re_max) || !(im_min < im_max))
            throw std::invalid_argument("window must have positive extent");
    }
    friend bool operator==(const Window&, const Window&) = default;
};

/// Windowed pixel count grid over the complex plane. Counts are weight units
/// of 2^-32 points stored in uint64 (integer binning adds a full 2^32 per
/// point), so merging shards is exact integer addition and splatted grids
/// stay bit-reproducible under any sharding.
struct DensityGrid {
    static constexpr std::uint64_t kUnit = 1ull << 32;

    int width = 0, height = 0;
    Window window;
    std::vector<std::uint64_t> counts;  // row-major, x + y*width; y grows with Im
    BigInt total_in = 0, total_out = 0;

    DensityGrid() = default;
    DensityGrid(int w, int h, Window win) : width(w), height(h), window(win) {
        if (w <= 0 || h <= 0) throw std::invalid_argument("grid must have positive size");
        window.validate();
        counts.assign(static_cast<std::size_t>(w) * h, 0);
    }

    double dre() const { return (window.re_max - window.re_min) / width; }
    double dim() const { return (window.im_max - window.im_min) / height; }

    std::uint64_t units_at(int x, int y) const {
        return counts[static_cast<std::size_t>(y) * width + x];
    }
    /// Count in points (weight) at a cell.
    double weight_at(int x, int y) const {
        return static_cast<double>(units_at(x, y)) / static_cast<double>(kUnit);
    }

    /// Half-open binning: re_max / im_max fall outside.
    bool bin(std::complex<double> p, int& x, int& y) const {
        double fx = std::floor((p.real() - window.re_min) / dre());
        double fy = std::floor((p.imag() - window.im_min) / dim());
        if (fx < 0 || fx >= width || fy < 0 || fy >= height) return false;
        x = static_cast<int>(fx);
        y = static_cast<int>(fy);
        return true;
    }

    void accumulate(std::span<const std::complex<double>> points) {
        for (auto p : points) {
            int x, y;
            if (bin(p, x, y)) {
                counts[static_cast<std::size_t>(y) * width + x] += kUnit;
                total_in += 1ul;
            } else {
                total_out += 1ul;
            }
        }
    }

    /// Bilinear splat to the 4 nearest cell centers. The fourth weight is the
    /// complement of the other three, so each in-window point deposits
    /// exactly 2^32 units; off-grid corners clamp to the border cell.
    void accumulate_splat(std::span<const std::complex<double>> points) {
        for (auto p : points) {
            int bx, by;
            if (!bin(p, bx, by)) {
                total_out += 1ul;
                continue;
            }
            total_in += 1ul;
            double gx = (p.real() - window.re_min) / dre() - 0.5;
            double gy = (p.imag() - window.im_min) / dim() - 0.5;
            int x0 = static_cast<int>(std::floor(gx));
            int y0 = static_cast<int>(std::floor(gy));
            double fx = gx - x0, fy = gy - y0;
            auto q00 = static_cast<std::uint64_t>((1.0 - fx) * (1.0 - fy) * kUnit);
            auto q10 = static_cast<std::uint64_t>(fx * (1.0 - fy) * kUnit);
            auto q01 = static_cast<std::uint64_t>((1.0 - fx) * fy * kUnit);
            std::uint64_t q11 = kUnit - q00 - q10 - q01;
            auto deposit = [&](int x, int y, std::uint64_t q) {
                x = std::clamp(x, 0, width - 1);
                y = std::clamp(y, 0, height - 1);
                counts[static_cast<std::size_t>(y) * width + x] += q;
            };
            deposit(x0, y0, q00);
            deposit(x0 + 1, y0, q10);
            deposit(x0, y0 + 1, q01);
            deposit(x0 + 1, y0 + 1, q11);
        }
    }

    void merge(const DensityGrid& other) {
        if (width != other.width || height != other.height || !(window == other.window))
            throw std::invalid_argument("grid merge: incompatible grids");
        for (std::size_t i = 0; i < counts.size(); ++i) counts[i] += other.counts[i];
        total_in += other.total_in;
        total_out += other.total_out;
    }
};

/// Maps each point to (Re, |Im|); for families closed under conjugation the
/// upper half-plane carries all the information.
inline std::vector<std::complex<double>> fold_conjugate(
    std::span<const std::complex<double>> points) {
    std::vector<std::complex<double>> out;
    out.reserve(points.size());
    for (auto p : points) out.emplace_back(p.real(), std::abs(p.imag()));
    return out;
}

/// Cumulative-frequency equalization: zero cells map to index 0, nonzero
/// cells to 1..255 by their empirical CDF rank. Monotone in the count;
/// strictly monotone over distinct counts whenever 255 indices suffice.
inline std::vector<std::uint8_t> equalize(const DensityGrid& grid) {
    std::vector<std::uint64_t> nonzero;
    nonzero.reserve(grid.counts.size());
    for (auto c : grid.counts)
        if (c != 0) nonzero.push_back(c);
    std::vector<std::uint8_t> out(grid.counts.size(), 0);
    if (nonzero.empty()) return out;
    std::sort(nonzero.begin(), nonzero.end());
    nonzero.erase(std::unique(nonzero.begin(), nonzero.end()), nonzero.end());

    // CDF over nonzero cells per distinct value
    std::vector<std::uint64_t> cum(nonzero.size(), 0);
    {
        std::vector<std::uint64_t> cnt(nonzero.size(), 0);
        for (auto c : grid.counts)
            if (c != 0) {
                auto k = static_cast<std::size_t>(
                    std::lower_bound(nonzero.begin(), nonzero.end(), c) - nonzero.begin());
                ++cnt[k];
            }
        std::uint64_t run = 0;
        for (std::size_t k = 0; k < nonzero.size(); ++k) {
            run += cnt[k];
            cum[k] = run;
        }
    }
    const double total = static_cast<double>(cum.back());
    std::vector<int> index(nonzero.size());
    for (std::size_t k = 0; k < nonzero.size(); ++k)
        index[k] = 1 + static_cast<int>(std::floor(254.0 * (static_cast<double>(cum[k]) / total)));
    if (nonzero.size() <= 255) {
        // enforce strict monotonicity from the top down; the largest value
        // always lands on 255 (its CDF is 1), so the smallest stays >= 1
        index.back() = std::min(index.back(), 255);
        for (std::size_t k = nonzero.size() - 1; k-- > 0;)
            index[k] = std::min(index[k], index[k + 1] - 1);
    } else {
        for (auto& v : index) v = std::min(v, 255);
    }

    for (std::size_t i = 0; i < grid.counts.size(); ++i) {
        if (grid.counts[i] == 0) continue;
        auto k = static_cast<std::size_t>(
            std::lower_bound(nonzero.begin(), nonzero.end(), grid.counts[i]) - nonzero.begin());
        out[i] = static_cast<std::uint8_t>(index[k]);
    }
    return out;
}

/// Binary P6, maxval 255, rows written top-to-bottom as decreasing Im.
inline void write_ppm(const std::vector<std::uint8_t>& index_grid, int width, int height,
                      const Palette& palette, std::ostream& os) {
    if (index_grid.size() != static_cast<std::size_t>(width) * height)
        throw std::invalid_argument("index grid size mismatch");
    os << "P6\n" << width << " " << height << "\n255\n";
    for (int y = height - 1; y >= 0; --y)
        for (int x = 0; x < width; ++x) {
            const auto& rgb = palette.table[index_grid[static_cast<std::size_t>(y) * width + x]];
            os.write(reinterpret_cast<const char*>(rgb.data()), 3);
        }
}

inline void write_ppm(const std::vector<std::uint8_t>& index_grid, int width, int height,
                      const Palette& palette, const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + path);
    write_ppm(index_grid, width, height, palette, f);
}

namespace detail {

inline void put_u32(std::ostream& os, std::uint32_t v) {
    char b[4] = {static_cast<char>(v), static_cast<char>(v >> 8), static_cast<char>(v >> 16),
                 static_cast<char>(v >> 24)};
    os.write(b, 4);
}

inline void put_u64(std::ostream& os, std::uint64_t v) {
    put_u32(os, static_cast<std::uint32_t>(v));
    put_u32(os, static_cast<std::uint32_t>(v >> 32));
}

inline void put_f64(std::ostream& os, double d) {
    std::uint64_t v;
    static_assert(sizeof(v) == sizeof(d));
    std::memcpy(&v, &d, 8);
    put_u64(os, v);
}

inline std::uint32_t get_u32(std::istream& is) {
    unsigned char b[4];
    is.read(reinterpret_cast<char*>(b), 4);
    return static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
           (static_cast<std::uint32_t>(b[2]) << 16) | (static_cast<std::uint32_t>(b[3]) << 24);
}

inline std::uint64_t get_u64(std::istream& is) {
    std::uint64_t lo = get_u32(is);
    std::uint64_t hi = get_u32(is);
    return lo | (hi << 32);
}

inline double get_f64(std::istream& is) {
    std::uint64_t v = get_u64(is);
    double d;
    std::memcpy(&d, &v, 8);
    return d;
}

}  // namespace detail

/// Little-endian grid dump: magic, width, height, window, totals, raw 64-bit
/// counts. The shard exchange format; merging dumps equals merging grids.
inline void dump_grid(const DensityGrid& g, std::ostream& os) {
    os.write("BOHMGRD1", 8);
    detail::put_u32(os, static_cast<std::uint32_t>(g.width));
    detail::put_u32(os, static_cast<std::uint32_t>(g.height));
    detail::put_f64(os, g.window.re_min);
    detail::put_f64(os, g.window.re_max);
    detail::put_f64(os, g.window.im_min);
    detail::put_f64(os, g.window.im_max);
    if (!g.total_in.fits_ulong_p() || !g.total_out.fits_ulong_p())
        throw std::runtime_error("grid totals too large for dump format");
    detail::put_u64(os, g.total_in.get_ui());
    detail::put_u64(os, g.total_out.get_ui());
    for (auto c : g.counts) detail::put_u64(os, c);
}

inline void dump_grid(const DensityGrid& g, const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + path);
    dump_grid(g, f);
}

inline DensityGrid load_grid(std::istream& is) {
    char magic[8];
    is.read(magic, 8);
    if (!is || std::string(magic, 8) != "BOHMGRD1")
        throw std::runtime_error("not a grid dump");
    int w = static_cast<int>(detail::get_u32(is));
    int h = static_cast<int>(detail::get_u32(is));
    Window win;
    win.re_min = detail::get_f64(is);
    win.re_max = detail::get_f64(is);
    win.im_min = detail::get_f64(is);
    win.im_max = detail::get_f64(is);
    DensityGrid g(w, h, win);
    g.total_in = detail::get_u64(is);
    g.total_out = detail::get_u64(is);
    for (auto& c : g.counts) c = detail::get_u64(is);
    if (!is) throw std::runtime_error("truncated grid dump");
    return g;
}

inline DensityGrid load_grid(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + path);
    return load_grid(f);
}

}  // namespace bohemian
