#pragma once

#include <charconv>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "bohemian/bounds.hpp"
#include "bohemian/census.hpp"
#include "bohemian/census_io.hpp"
#include "bohemian/eigen.hpp"
#include "bohemian/family.hpp"
#include "bohemian/family_io.hpp"
#include "bohemian/parallel.hpp"
#include "bohemian/rayleigh.hpp"
#include "bohemian/render.hpp"
#include "bohemian/toeplitz.hpp"

namespace bohemian {

/// Shortest round-trip decimal for doubles; the one float format every CSV
/// uses, so reruns are byte-identical.
inline std::string fmt_double(double v) {
    char buf[40];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

enum class Task {
    Size,
    Eigs,
    Density,
    Census,
    Stability,
    BoundsCheck,
    SchmidtSpitzer,
    Convergence,
    RayleighDensity,
    EdgeStudy,
};

inline const char* task_name(Task t) {
    switch (t) {
        case Task::Size: return "size";
        case Task::Eigs: return "eigs";
        case Task::Density: return "density";
        case Task::Census: return "census";
        case Task::Stability: return "stability";
        case Task::BoundsCheck: return "bounds-check";
        case Task::SchmidtSpitzer: return "schmidt-spitzer";
        case Task::Convergence: return "convergence";
        case Task::RayleighDensity: return "rayleigh-density";
        case Task::EdgeStudy: return "edge-study";
    }
    return "?";
}

inline Task task_from_name(const std::string& s) {
    if (s == "size") return Task::Size;
    if (s == "eigs") return Task::Eigs;
    if (s == "density") return Task::Density;
    if (s == "census") return Task::Census;
    if (s == "stability") return Task::Stability;
    if (s == "bounds-check") return Task::BoundsCheck;
    if (s == "schmidt-spitzer") return Task::SchmidtSpitzer;
    if (s == "convergence") return Task::Convergence;
    if (s == "rayleigh-density") return Task::RayleighDensity;
    if (s == "edge-study") return Task::EdgeStudy;
    throw std::invalid_argument("unknown task: " + s);
}

struct ShardSpec {
    unsigned index = 0;
    unsigned of = 1;
};

struct JobConfig {
    Task task = Task::Size;
    std::optional<FamilySpec> family;
    bool sampled = false;
    std::uint64_t seed = 0;
    std::uint64_t count = 0;
    Window window{-4.0, 4.0, -4.0, 4.0};
    int grid_w = 512, grid_h = 512;
    std::string palette = "viridis";
    bool splat = false;
    bool fold = false;
    double rho = 0.0;  // 0: use 1 + sqrt(B)
    int phi_count = 201;
    int psi_count = 720;
    ShardSpec shard;
    std::string out_dir = ".";
    unsigned workers = 1;
    std::uint64_t budget = 1ull << 24;
    std::string region = "strip";
    std::vector<cplx> symbol_t;
    bool csv_index = false;
    double tol = 1e-9;

    const FamilySpec& need_family() const {
        if (!family) throw std::invalid_argument("this task needs --family");
        return *family;
    }
};

struct RunSummary {
    std::vector<std::pair<std::string, std::string>> fields;

    void add(const std::string& k, const std::string& v) { fields.emplace_back(k, v); }
    void add(const std::string& k, std::uint64_t v) { add(k, std::to_string(v)); }
    void add(const std::string& k, double v) { add(k, fmt_double(v)); }

    std::string get(const std::string& k) const {
        for (const auto& [key, val] : fields)
            if (key == k) return val;
        return "";
    }

    std::string to_text() const {
        std::ostringstream os;
        for (const auto& [k, v] : fields) os << k << "=" << v << "\n";
        return os.str();
    }
};

namespace detail {

struct ShardRange {
    std::uint64_t begin = 0, end = 0;
};

inline ShardRange shard_range(std::uint64_t total, const ShardSpec& s) {
    if (s.of == 0 || s.index >= s.of) throw std::invalid_argument("invalid shard spec");
    return {total * s.index / s.of, total * (s.index + 1) / s.of};
}

inline std::string shard_suffix(const ShardSpec& s) {
    if (s.of <= 1) return "";
    return ".shard" + std::to_string(s.index) + "of" + std::to_string(s.of);
}

inline std::uint64_t exhaustive_total(const FamilySpec& spec, std::uint64_t budget) {
    BigInt n = family_size(spec);
    if (n > budget) throw budget_error("family size exceeds budget; use sampling or raise --budget");
    return n.get_ui();
}

/// Runs `per_matrix(worker, index, matrix)` over the job's matrix stream
/// (exhaustive shard range or sampled offsets), in parallel over workers.
template <class F>
std::uint64_t for_each_matrix(const JobConfig& cfg, F&& per_matrix) {
    const auto& spec = cfg.need_family();
    auto slot_vals =
        embedded_slot_values<cplx>(spec, [](const CyclotomicScalar& x) { return to_complex(x); });
    const cplx zero = 0.0, subdiag = to_complex(spec.subdiagonal_value);
    if (cfg.sampled) {
        auto r = shard_range(cfg.count, cfg.shard);
        parallel_shards(r.end - r.begin, cfg.workers, [&](unsigned w, std::uint64_t lo, std::uint64_t hi) {
            auto slots = free_slots(spec);
            std::vector<cplx> values(slots.size());
            SquareMatrix<cplx> mat(spec.m);
            for (std::uint64_t k = lo; k < hi; ++k) {
                std::uint64_t offset = r.begin + k;
                auto rng = stream_rng(cfg.seed, offset);
                for (std::size_t s = 0; s < slots.size(); ++s)
                    values[s] = slot_vals[s][rng.bounded(slot_vals[s].size())];
                fill_matrix(spec, slots, values, zero, subdiag, mat);
                per_matrix(w, offset, mat);
            }
        });
        return r.end - r.begin;
    }
    auto total = exhaustive_total(spec, cfg.budget);
    auto r = shard_range(total, cfg.shard);
    parallel_shards(r.end - r.begin, cfg.workers, [&](unsigned w, std::uint64_t lo, std::uint64_t hi) {
        enumerate_embedded<cplx>(spec, r.begin + lo, r.begin + hi, slot_vals, zero, subdiag,
                                 [&](std::uint64_t idx, const SquareMatrix<cplx>& mat) {
                                     per_matrix(w, idx, mat);
                                 });
    });
    return r.end - r.begin;
}

inline void write_text(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + path);
    f << text;
}

}  // namespace detail

inline RunSummary run(const JobConfig& cfg) {
    namespace fs = std::filesystem;
    fs::create_directories(cfg.out_dir);
    auto out = [&](const std::string& base, const std::string& ext) {
        return (fs::path(cfg.out_dir) / (base + detail::shard_suffix(cfg.shard) + ext)).string();
    };
    auto t0 = std::chrono::steady_clock::now();
    RunSummary sum;
    sum.add("task", std::string(task_name(cfg.task)));

    const unsigned workers = std::max(1u, cfg.workers);

    switch (cfg.task) {
        case Task::Size: {
            sum.add("family_size", family_size(cfg.need_family()).get_str());
            break;
        }

        case Task::Eigs:
        case Task::Density:
        case Task::RayleighDensity: {
            const bool rayleigh = cfg.task == Task::RayleighDensity;
            const bool want_csv = cfg.task == Task::Eigs;
            std::vector<std::string> csv(workers);
            std::vector<DensityGrid> grids;
            for (unsigned w = 0; w < workers; ++w)
                grids.emplace_back(cfg.grid_w, cfg.grid_h, cfg.window);
            std::vector<std::uint64_t> failures(workers, 0), singular(workers, 0);

            std::vector<std::vector<cplx>> vals(workers), bufs(workers);
            std::vector<std::vector<cplx>> pts(workers);
            auto total = detail::for_each_matrix(
                cfg, [&](unsigned w, std::uint64_t idx, const SquareMatrix<cplx>& mat) {
                    auto& points = pts[w];
                    points.clear();
                    if (rayleigh) {
                        auto c = inverse_corner(mat);
                        if (!c) {
                            ++singular[w];
                            return;
                        }
                        points.push_back(*c);
                    } else {
                        bufs[w] = mat.e;
                        try {
                            eigenvalues_inplace(bufs[w], mat.n, vals[w]);
                        } catch (const convergence_error&) {
                            ++failures[w];
                            return;
                        }
                        points = vals[w];
                        std::sort(points.begin(), points.end(), [](cplx a, cplx b) {
                            return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
                        });
                    }
                    if (cfg.fold) points = fold_conjugate(points);
                    if (want_csv) {
                        auto& s = csv[w];
                        for (auto v : points) {
                            if (cfg.csv_index) {
                                s += std::to_string(idx);
                                s += ',';
                            }
                            s += fmt_double(v.real());
                            s += ',';
                            s += fmt_double(v.imag());
                            s += '\n';
                        }
                    } else {
                        if (cfg.splat)
                            grids[w].accumulate_splat(points);
                        else
                            grids[w].accumulate(points);
                    }
                });

            std::uint64_t fail_total = 0, sing_total = 0;
            for (unsigned w = 0; w < workers; ++w) {
                fail_total += failures[w];
                sing_total += singular[w];
            }
            sum.add("matrices", total);
            if (fail_total) sum.add("eig_failures", fail_total);
            if (rayleigh) sum.add("singular_skipped", sing_total);

            if (want_csv) {
                std::string all;
                for (auto& s : csv) all += s;
                detail::write_text(out("eigenvalues", ".csv"), all);
            } else {
                DensityGrid grid = std::move(grids[0]);
                for (unsigned w = 1; w < workers; ++w) grid.merge(grids[w]);
                sum.add("points_in", grid.total_in.get_str());
                sum.add("points_out", grid.total_out.get_str());
                dump_grid(grid, out("density", ".grid"));
                auto idxg = equalize(grid);
                write_ppm(idxg, grid.width, grid.height, palette_by_name(cfg.palette),
                          out("density", ".ppm"));
            }
            break;
        }

        case Task::Census:
        case Task::Stability: {
            const auto& spec = cfg.need_family();
            auto total = detail::exhaustive_total(spec, cfg.budget);
            auto r = detail::shard_range(total, cfg.shard);
            CensusResult res = census_range(spec, r.begin, r.end, workers);
            if (cfg.task == Task::Stability) classify_stability(res, workers);
            sum.add("matrices", res.total_matrices.get_str());
            sum.add("distinct", static_cast<std::uint64_t>(res.entries.size()));
            if (res.stability_computed) {
                sum.add("stable_polys", res.stable_polys);
                sum.add("stable_matrices", res.stable_matrices.get_str());
                if (!std::isnan(res.max_stable_real_part))
                    sum.add("max_stable_real_part", res.max_stable_real_part);
            }
            export_census_json(res, out("census", ".json"));
            std::ostringstream csv;
            export_census_csv(res, csv);
            detail::write_text(out("census", ".csv"), csv.str());
            break;
        }

        case Task::BoundsCheck: {
            const auto& spec = cfg.need_family();
            RegionBound region;
            if (cfg.region == "strip")
                region = symmetric_strip(spec.m);
            else if (cfg.region == "square")
                region = square_bound();
            else if (cfg.region == "diamond")
                region = diamond_bound();
            else if (cfg.region == "radius")
                region = hessenberg_radius(spec.population.magnitude_bound);
            else
                throw std::invalid_argument("unknown region: " + cfg.region);
            auto mode = cfg.sampled ? VerifyMode::Sampled(cfg.seed, cfg.count)
                                    : VerifyMode::Exhaustive();
            auto rep = verify_region(spec, region, mode, cfg.tol, cfg.budget);
            sum.add("region", cfg.region);
            sum.add("checked", rep.checked.get_str());
            sum.add("violations", rep.violations);
            sum.add("worst_margin", rep.worst_margin);
            detail::write_text(out("bounds_report", ".txt"), rep.to_text() + "\n");
            break;
        }

        case Task::SchmidtSpitzer: {
            if (cfg.symbol_t.empty()) throw std::invalid_argument("schmidt-spitzer needs --symbol-t");
            double B = 0;
            for (auto t : cfg.symbol_t) B = std::max(B, std::abs(t));
            double rho = cfg.rho > 0 ? cfg.rho : default_rho(B);
            LaurentSymbol sym(cfg.symbol_t, rho);
            auto curve = schmidt_spitzer_points(sym, cfg.phi_count);
            std::string csv = "phi,re,im,accepted\n";
            for (const auto& c : curve.candidates) {
                csv += fmt_double(c.phi);
                csv += ',';
                csv += fmt_double(c.lambda.real());
                csv += ',';
                csv += fmt_double(c.lambda.imag());
                csv += ',';
                csv += c.accepted ? '1' : '0';
                csv += '\n';
            }
            detail::write_text(out("curve", ".csv"), csv);
            auto env = symbol_image(sym, cfg.psi_count);
            std::string ecsv = "re,im\n";
            for (auto p : env) {
                ecsv += fmt_double(p.real());
                ecsv += ',';
                ecsv += fmt_double(p.imag());
                ecsv += '\n';
            }
            detail::write_text(out("envelope", ".csv"), ecsv);
            sum.add("rho", rho);
            sum.add("accepted", static_cast<std::uint64_t>(curve.points.size()));
            sum.add("rejected", curve.rejected);
            sum.add("failed_phi", curve.failed_phi);
            break;
        }

        case Task::Convergence: {
            if (cfg.symbol_t.size() < 2)
                throw std::invalid_argument("convergence needs --symbol-t with at least 2 entries");
            double B = 0;
            for (auto t : cfg.symbol_t) B = std::max(B, std::abs(t));
            double rho = cfg.rho > 0 ? cfg.rho : default_rho(B);
            std::vector<int> mrange;
            for (int m = 2; m <= static_cast<int>(cfg.symbol_t.size()) + 1; ++m) mrange.push_back(m);
            auto steps = convergence_study(cfg.symbol_t, mrange, rho, cfg.phi_count);
            std::string csv = "m,hausdorff_prev,eig_one_sided\n";
            for (const auto& s : steps) {
                csv += std::to_string(s.m);
                csv += ',';
                csv += fmt_double(s.dist_prev);
                csv += ',';
                csv += fmt_double(s.eig_dist);
                csv += '\n';
            }
            detail::write_text(out("convergence", ".csv"), csv);
            sum.add("steps", static_cast<std::uint64_t>(steps.size()));
            break;
        }

        case Task::EdgeStudy: {
            if (cfg.symbol_t.empty()) throw std::invalid_argument("edge-study needs --symbol-t");
            const auto& spec = cfg.need_family();
            // prefix entries are exact ring coordinates a+b*tau of the family ring
            std::vector<CyclotomicScalar> prefix;
            const Ring rg = spec.ring();
            for (auto t : cfg.symbol_t) {
                long a = std::lround(t.real()), b = std::lround(t.imag());
                if (std::abs(t.real() - a) > 1e-9 || std::abs(t.imag() - b) > 1e-9)
                    throw std::invalid_argument(
                        "edge-study --symbol-t entries must be integer ring coordinate pairs");
                if (rg == Ring::Int && b != 0)
                    throw std::invalid_argument("integer-ring family cannot take complex prefix entries");
                prefix.push_back(CyclotomicScalar{BigInt(a), BigInt(b), rg});
            }
            auto res = edge_perturbation_study(prefix, spec.population);
            std::string csv = "element_a,element_b,root_re,root_im\n";
            for (const auto& [elem, roots] : res.roots_per_element)
                for (auto r : roots) {
                    csv += elem.a.get_str();
                    csv += ',';
                    csv += elem.b.get_str();
                    csv += ',';
                    csv += fmt_double(r.real());
                    csv += ',';
                    csv += fmt_double(r.imag());
                    csv += '\n';
                }
            detail::write_text(out("edge_roots", ".csv"), csv);
            sum.add("elements", static_cast<std::uint64_t>(res.roots_per_element.size()));
            break;
        }
    }

    auto t1 = std::chrono::steady_clock::now();
    double secs = std::chrono::duration<double>(t1 - t0).count();
    // summary.txt carries timings and is the one output allowed to differ
    // between reruns
    std::string text = sum.to_text();
    detail::write_text(out("summary", ".txt"),
                       text + "elapsed_seconds=" + fmt_double(secs) + "\n");
    return sum;
}

/// Merges shard outputs into combined outputs: .grid dumps add cell-wise,
/// census .json files merge by polynomial, eigenvalue .csv files concatenate
/// in input order. Exactly equal to the unsharded run.
inline void merge_outputs(const std::vector<std::string>& inputs, const std::string& out_dir,
                          const std::string& palette = "viridis") {
    namespace fs = std::filesystem;
    if (inputs.empty()) throw std::invalid_argument("merge needs input files");
    fs::create_directories(out_dir);
    auto ext = fs::path(inputs.front()).extension().string();
    for (const auto& p : inputs)
        if (fs::path(p).extension().string() != ext)
            throw std::invalid_argument("merge inputs must share a file type");

    if (ext == ".grid") {
        DensityGrid grid = load_grid(inputs.front());
        for (std::size_t i = 1; i < inputs.size(); ++i) grid.merge(load_grid(inputs[i]));
        dump_grid(grid, (fs::path(out_dir) / "density.grid").string());
        auto idx = equalize(grid);
        write_ppm(idx, grid.width, grid.height, palette_by_name(palette),
                  (fs::path(out_dir) / "density.ppm").string());
    } else if (ext == ".json") {
        std::vector<CensusResult> parts;
        parts.reserve(inputs.size());
        for (const auto& p : inputs) parts.push_back(import_census_json(p));
        auto merged = merge_census(std::move(parts));
        export_census_json(merged, (fs::path(out_dir) / "census.json").string());
        std::ostringstream csv;
        export_census_csv(merged, csv);
        detail::write_text((fs::path(out_dir) / "census.csv").string(), csv.str());
    } else if (ext == ".csv") {
        std::string all;
        for (const auto& p : inputs) {
            std::ifstream f(p, std::ios::binary);
            if (!f) throw std::runtime_error("cannot open " + p);
            std::ostringstream ss;
            ss << f.rdbuf();
            all += ss.str();
        }
        detail::write_text((fs::path(out_dir) / "eigenvalues.csv").string(), all);
    } else {
        throw std::invalid_argument("cannot merge files of type " + ext);
    }
}

}  // namespace bohemian
