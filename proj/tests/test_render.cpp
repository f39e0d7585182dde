#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "bohemian/render.hpp"
#include "bohemian/rng.hpp"

using namespace bohemian;

TEST_CASE("binning conventions") {
    DensityGrid g(2, 2, {0.0, 2.0, 0.0, 2.0});
    SECTION("window center of a 2x2 grid lands in cell (1,1)") {
        g.accumulate(std::vector<cplx>{{1.0, 1.0}});
        REQUIRE(g.weight_at(1, 1) == 1.0);
        REQUIRE(g.total_in == 1);
    }
    SECTION("re_max boundary is out of window") {
        g.accumulate(std::vector<cplx>{{2.0, 1.0}});
        REQUIRE(g.total_in == 0);
        REQUIRE(g.total_out == 1);
    }
    SECTION("accumulate(A) then accumulate(B) equals accumulate(A||B)") {
        std::vector<cplx> a{{0.3, 0.4}, {1.7, 0.2}}, b{{0.3, 0.4}, {1.1, 1.9}};
        DensityGrid g1(2, 2, g.window), g2(2, 2, g.window);
        g1.accumulate(a);
        g1.accumulate(b);
        std::vector<cplx> ab = a;
        ab.insert(ab.end(), b.begin(), b.end());
        g2.accumulate(ab);
        REQUIRE(g1.counts == g2.counts);
        REQUIRE(g1.total_in == g2.total_in);
    }
}

TEST_CASE("splat conventions") {
    DensityGrid g(4, 4, {0.0, 4.0, 0.0, 4.0});
    SECTION("point at a cell center deposits weight 1 there") {
        g.accumulate_splat(std::vector<cplx>{{1.5, 2.5}});
        REQUIRE(g.weight_at(1, 2) == 1.0);
    }
    SECTION("point at a 4-cell corner deposits 0.25 each") {
        g.accumulate_splat(std::vector<cplx>{{2.0, 2.0}});
        REQUIRE(g.weight_at(1, 1) == Catch::Approx(0.25).margin(1e-9));
        REQUIRE(g.weight_at(2, 1) == Catch::Approx(0.25).margin(1e-9));
        REQUIRE(g.weight_at(1, 2) == Catch::Approx(0.25).margin(1e-9));
        REQUIRE(g.weight_at(2, 2) == Catch::Approx(0.25).margin(1e-9));
    }
    SECTION("mass conservation holds exactly per in-window point") {
        SplitMix64 rng(55);
        std::vector<cplx> pts;
        for (int k = 0; k < 5000; ++k)
            pts.push_back({4.0 * rng.uniform01(), 4.0 * rng.uniform01()});
        g.accumulate_splat(pts);
        std::uint64_t sum = 0;
        for (auto c : g.counts) sum += c;
        REQUIRE(sum == g.total_in.get_ui() * DensityGrid::kUnit);
    }
    SECTION("splat and binning agree after a 2x2 box blur on dense data") {
        const int n = 32;
        DensityGrid bin(n, n, {0.0, 1.0, 0.0, 1.0}), spl(n, n, {0.0, 1.0, 0.0, 1.0});
        SplitMix64 rng(77);
        std::vector<cplx> pts;
        for (int k = 0; k < 400000; ++k) {
            double x = rng.uniform01(), y = rng.uniform01();
            pts.push_back({x * x, y});  // nonuniform but dense
        }
        bin.accumulate(pts);
        spl.accumulate_splat(pts);
        auto blur = [&](const DensityGrid& g2, int x, int y) {
            double s = 0;
            for (int dx = 0; dx < 2; ++dx)
                for (int dy = 0; dy < 2; ++dy)
                    if (x + dx < n && y + dy < n) s += g2.weight_at(x + dx, y + dy);
            return s;
        };
        for (int x = 1; x + 2 < n; ++x)
            for (int y = 1; y + 2 < n; ++y) {
                double b = blur(bin, x, y);
                if (b < 400) continue;  // only dense regions
                REQUIRE(blur(spl, x, y) == Catch::Approx(b).epsilon(0.20));
            }
    }
}

TEST_CASE("grid merge is associative and tracks totals") {
    Window w{-1, 1, -1, 1};
    SplitMix64 rng(9);
    auto rnd = [&](int n) {
        std::vector<cplx> v;
        for (int k = 0; k < n; ++k)
            v.push_back({3 * (rng.uniform01() - 0.5), 3 * (rng.uniform01() - 0.5)});
        return v;
    };
    auto a = rnd(100), b = rnd(100), c = rnd(100);
    DensityGrid ga(8, 8, w), gb(8, 8, w), gc(8, 8, w);
    ga.accumulate(a);
    gb.accumulate(b);
    gc.accumulate(c);
    DensityGrid left = ga;
    left.merge(gb);
    left.merge(gc);
    DensityGrid right = gc;
    right.merge(gb);
    right.merge(ga);
    REQUIRE(left.counts == right.counts);
    REQUIRE(left.total_in == right.total_in);
    BigInt presented = left.total_in + left.total_out;
    REQUIRE(presented == 300);

    DensityGrid other(9, 8, w);
    REQUIRE_THROWS_AS(left.merge(other), std::invalid_argument);
}

TEST_CASE("equalize") {
    SECTION("all equal nonzero counts map to 255, zero stays 0") {
        DensityGrid g(2, 2, {0, 2, 0, 2});
        g.accumulate(std::vector<cplx>{{0.5, 0.5}, {1.5, 1.5}});
        auto idx = equalize(g);
        int zeros = 0, full = 0;
        for (auto v : idx) {
            if (v == 0) ++zeros;
            if (v == 255) ++full;
        }
        REQUIRE(zeros == 2);
        REQUIRE(full == 2);
    }
    SECTION("two count levels keep strict order") {
        DensityGrid g(2, 1, {0, 2, 0, 1});
        std::vector<cplx> pts(100, cplx{0.5, 0.5});
        pts.push_back({1.5, 0.5});
        g.accumulate(pts);
        auto idx = equalize(g);
        REQUIRE(idx[1] < idx[0]);
        REQUIRE(idx[0] == 255);
        REQUIRE(idx[1] >= 1);
    }
    SECTION("invariant under count-preserving permutations") {
        SplitMix64 rng(1234);
        DensityGrid g(8, 8, {0, 1, 0, 1});
        for (auto& c : g.counts) c = rng.bounded(5) * DensityGrid::kUnit;
        auto idx = equalize(g);
        // permute cells with a fixed pseudorandom shuffle
        std::vector<std::size_t> perm(g.counts.size());
        for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
        for (std::size_t i = perm.size(); i > 1; --i)
            std::swap(perm[i - 1], perm[rng.bounded(i)]);
        DensityGrid h = g;
        for (std::size_t i = 0; i < perm.size(); ++i) h.counts[perm[i]] = g.counts[i];
        auto hidx = equalize(h);
        for (std::size_t i = 0; i < perm.size(); ++i) REQUIRE(hidx[perm[i]] == idx[i]);
    }
    SECTION("monotone: larger counts never get smaller indices") {
        SplitMix64 rng(4321);
        for (int trial = 0; trial < 20; ++trial) {
            DensityGrid g(16, 16, {0, 1, 0, 1});
            for (auto& c : g.counts) c = rng.bounded(1000);
            auto idx = equalize(g);
            for (std::size_t i = 0; i < g.counts.size(); ++i)
                for (std::size_t j = 0; j < g.counts.size(); ++j)
                    if (g.counts[i] < g.counts[j]) REQUIRE(idx[i] <= idx[j]);
        }
    }
}

TEST_CASE("ppm output bytes") {
    const auto& grey = palette_by_name("greyscale");
    SECTION("1x1 black and white") {
        std::ostringstream b0, b255;
        write_ppm({0}, 1, 1, grey, b0);
        REQUIRE(b0.str() == std::string("P6\n1 1\n255\n") + std::string(3, '\0'));
        write_ppm({255}, 1, 1, grey, b255);
        REQUIRE(b255.str() == std::string("P6\n1 1\n255\n") + std::string(3, '\xff'));
    }
    SECTION("rows are written top-to-bottom as decreasing Im") {
        // 1x2 grid: cell y=1 (upper half) bright, y=0 dark
        std::ostringstream os;
        write_ppm({10, 200}, 1, 2, grey, os);
        auto s = os.str();
        auto body = s.substr(s.size() - 6);
        REQUIRE(static_cast<unsigned char>(body[0]) == 200);  // first row = top = y=1
        REQUIRE(static_cast<unsigned char>(body[3]) == 10);
    }
}

TEST_CASE("palettes") {
    for (const char* name : {"greyscale", "viridis", "cividis", "copper"}) {
        const auto& p = palette_by_name(name);
        REQUIRE(p.table.size() == 256);
    }
    const auto& grey = palette_by_name("greyscale");
    for (int i = 1; i < 256; ++i) {
        auto luma = [&](int k) {
            return 0.2126 * grey.table[k][0] + 0.7152 * grey.table[k][1] + 0.0722 * grey.table[k][2];
        };
        REQUIRE(luma(i) > luma(i - 1));
    }
    REQUIRE_THROWS_AS(palette_by_name("nope"), std::invalid_argument);
}

TEST_CASE("fold_conjugate") {
    auto folded = fold_conjugate(std::vector<cplx>{{0, 1}, {0, -1}, {2, -3}});
    REQUIRE(folded[0] == cplx(0, 1));
    REQUIRE(folded[1] == cplx(0, 1));
    REQUIRE(folded[2] == cplx(2, 3));

    // density of folded real-matrix spectra: counts of a conjugate-closed
    // cloud land entirely in the upper half-grid
    DensityGrid g(4, 4, {-2, 2, -2, 2});
    std::vector<cplx> cloud{{0.5, 1.0}, {0.5, -1.0}, {-1.0, 0.5}, {-1.0, -0.5}};
    g.accumulate(fold_conjugate(cloud));
    for (int y = 0; y < 2; ++y)
        for (int x = 0; x < 4; ++x) REQUIRE(g.units_at(x, y) == 0);
    REQUIRE(g.total_in == 4);
}

TEST_CASE("grid dump round-trip") {
    DensityGrid g(3, 2, {-1, 1, 0, 1});
    g.accumulate_splat(std::vector<cplx>{{0.1, 0.4}, {-0.9, 0.9}, {0.99, 0.01}});
    std::stringstream buf;
    dump_grid(g, buf);
    auto back = load_grid(buf);
    REQUIRE(back.counts == g.counts);
    REQUIRE(back.total_in == g.total_in);
    REQUIRE(back.total_out == g.total_out);
    REQUIRE(back.window == g.window);
}
