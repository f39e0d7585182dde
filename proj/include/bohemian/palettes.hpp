#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace bohemian {

struct Palette {
    std::string name;
    std::array<std::array<std::uint8_t, 3>, 256> table;
};

namespace detail {

inline std::uint8_t to_byte(double x) {
    return static_cast<std::uint8_t>(std::lround(std::clamp(x, 0.0, 1.0) * 255.0));
}

inline Palette make_greyscale() {
    Palette p{"greyscale", {}};
    for (int i = 0; i < 256; ++i)
        p.table[i] = {static_cast<std::uint8_t>(i), static_cast<std::uint8_t>(i),
                      static_cast<std::uint8_t>(i)};
    return p;
}

/// Degree-6 polynomial fit of the viridis ramp.
inline Palette make_viridis_like() {
    static const double c[7][3] = {
        {0.2777273272234177, 0.005407344544966578, 0.3340998053353061},
        {0.1050930431085774, 1.404613529898575, 1.384590162594685},
        {-0.3308618287255563, 0.214847559468213, 0.09509516302823659},
        {-4.634230498983486, -5.799100973351585, -19.33244095627987},
        {6.228269936347081, 14.17993336680509, 56.69055260068105},
        {4.776384997670288, -13.74514537774601, -65.35303263337234},
        {-5.435455855934631, 4.645852612178535, 26.3124352495832}};
    Palette p{"viridis", {}};
    for (int i = 0; i < 256; ++i) {
        double t = i / 255.0;
        for (int ch = 0; ch < 3; ++ch) {
            double v = c[6][ch];
            for (int d = 5; d >= 0; --d) v = v * t + c[d][ch];
            p.table[i][ch] = to_byte(v);
        }
    }
    return p;
}

/// Piecewise-linear blue-to-yellow ramp in the cividis style.
inline Palette make_cividis_like() {
    static const double anchors[9][3] = {
        {0.000, 0.135, 0.304}, {0.086, 0.179, 0.345}, {0.235, 0.255, 0.345},
        {0.331, 0.327, 0.373}, {0.424, 0.399, 0.388}, {0.525, 0.475, 0.372},
        {0.647, 0.562, 0.326}, {0.794, 0.664, 0.240}, {0.995, 0.790, 0.098}};
    Palette p{"cividis", {}};
    for (int i = 0; i < 256; ++i) {
        double t = i / 255.0 * 8.0;
        int k = std::min(7, static_cast<int>(t));
        double f = t - k;
        for (int ch = 0; ch < 3; ++ch)
            p.table[i][ch] = to_byte(anchors[k][ch] * (1 - f) + anchors[k + 1][ch] * f);
    }
    return p;
}

inline Palette make_copper_like() {
    Palette p{"copper", {}};
    for (int i = 0; i < 256; ++i) {
        double t = i / 255.0;
        p.table[i] = {to_byte(std::min(1.0, 1.25 * t)), to_byte(0.7812 * t), to_byte(0.4975 * t)};
    }
    return p;
}

}  // namespace detail

inline const Palette& palette_by_name(const std::string& name) {
    static const Palette grey = detail::make_greyscale();
    static const Palette viridis = detail::make_viridis_like();
    static const Palette cividis = detail::make_cividis_like();
    static const Palette copper = detail::make_copper_like();
    if (name == "greyscale" || name == "grey" || name == "gray") return grey;
    if (name == "viridis") return viridis;
    if (name == "cividis") return cividis;
    if (name == "copper") return copper;
    throw std::invalid_argument("unknown palette: " + name);
}

}  // namespace bohemian
