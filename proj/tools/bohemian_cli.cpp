// Command-line front end: wires family documents to sweeps, censuses,
// curves, and images.

#include <complex>
#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bohemian/jobs.hpp"

namespace {

using bohemian::cplx;

// "1", "-1", "i", "-i", "2+3i", "1.5-0.25i"
cplx parse_complex(const std::string& s) {
    if (s.empty()) throw CLI::ValidationError("empty complex literal");
    std::string body = s;
    double re = 0, im = 0;
    auto fail = [&]() -> void { throw CLI::ValidationError("bad complex literal: " + s); };
    if (body.back() == 'i' || body.back() == 'I') {
        body.pop_back();
        // split trailing imaginary term from an optional real part
        std::size_t split = std::string::npos;
        for (std::size_t k = body.size(); k-- > 1;) {
            if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
                split = k;
                break;
            }
        }
        std::string im_str = split == std::string::npos ? body : body.substr(split);
        std::string re_str = split == std::string::npos ? "" : body.substr(0, split);
        if (im_str.empty() || im_str == "+")
            im = 1;
        else if (im_str == "-")
            im = -1;
        else {
            try {
                im = std::stod(im_str);
            } catch (...) {
                fail();
            }
        }
        if (!re_str.empty()) {
            try {
                re = std::stod(re_str);
            } catch (...) {
                fail();
            }
        }
    } else {
        try {
            re = std::stod(body);
        } catch (...) {
            fail();
        }
    }
    return {re, im};
}

std::vector<cplx> parse_complex_list(const std::string& s) {
    std::vector<cplx> out;
    std::string cur;
    for (char ch : s + ",") {
        if (ch == ',') {
            if (!cur.empty()) out.push_back(parse_complex(cur));
            cur.clear();
        } else if (!isspace(static_cast<unsigned char>(ch))) {
            cur += ch;
        }
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Bohemian matrix family explorer"};

    std::string family_path, task = "size", window_str, grid_str = "512x512";
    std::string shard_str = "0/1", out_dir = ".", region = "strip", palette = "viridis";
    std::string symbol_t_str;
    std::vector<std::string> merge_inputs;
    std::uint64_t seed = 0, count = 0, budget = 1ull << 24;
    bool have_count = false, splat = false, fold = false, csv_index = false;
    double rho = 0, tol = 1e-9;
    int phi_count = 201, psi_count = 720;
    unsigned workers = 1;

    app.add_option("--family", family_path, "family document (JSON)");
    app.add_option("--task", task,
                   "size|eigs|density|census|stability|bounds-check|schmidt-spitzer|"
                   "convergence|rayleigh-density|edge-study|merge");
    app.add_option("--seed", seed, "sampling seed");
    auto* count_opt = app.add_option("--count", count, "sample count (enables sampled mode)");
    app.add_option("--window", window_str, "re_min,re_max,im_min,im_max");
    app.add_option("--grid", grid_str, "WxH pixels");
    app.add_option("--palette", palette, "greyscale|viridis|cividis|copper");
    app.add_option("--rho", rho, "symbol scale (default 1+sqrt(B))");
    app.add_option("--phi-count", phi_count, "phi grid size for Schmidt-Spitzer");
    app.add_option("--psi-count", psi_count, "psi grid size for the symbol image");
    app.add_option("--shard", shard_str, "i/n: run shard i of n");
    app.add_option("--out", out_dir, "output directory");
    app.add_option("--workers", workers, "worker threads");
    app.add_option("--budget", budget, "exhaustive sweep budget");
    app.add_option("--region", region, "bounds-check region: strip|square|diamond|radius");
    app.add_option("--symbol-t", symbol_t_str, "comma-separated complex entries, e.g. 1,-1,1,0,1");
    app.add_option("--inputs", merge_inputs, "shard outputs to merge");
    app.add_flag("--splat", splat, "bilinear splatting instead of integer binning");
    app.add_flag("--fold", fold, "fold points to the upper half-plane");
    app.add_flag("--with-index", csv_index, "matrix index column in eigenvalue CSV");
    app.add_option("--tol", tol, "region membership tolerance");

    CLI11_PARSE(app, argc, argv);
    have_count = count_opt->count() > 0;

    try {
        if (task == "merge") {
            bohemian::merge_outputs(merge_inputs, out_dir, palette);
            std::cout << "merged " << merge_inputs.size() << " inputs into " << out_dir << "\n";
            return 0;
        }

        bohemian::JobConfig cfg;
        cfg.task = bohemian::task_from_name(task);
        if (!family_path.empty()) cfg.family = bohemian::load_family(family_path);
        cfg.sampled = have_count;
        cfg.seed = seed;
        cfg.count = count;
        if (!window_str.empty()) {
            auto parts = parse_complex_list(window_str);
            if (parts.size() != 4) throw CLI::ValidationError("--window needs 4 numbers");
            cfg.window = {parts[0].real(), parts[1].real(), parts[2].real(), parts[3].real()};
        }
        if (std::sscanf(grid_str.c_str(), "%dx%d", &cfg.grid_w, &cfg.grid_h) != 2)
            throw CLI::ValidationError("--grid must look like 800x800");
        unsigned si = 0, sn = 1;
        if (std::sscanf(shard_str.c_str(), "%u/%u", &si, &sn) != 2)
            throw CLI::ValidationError("--shard must look like 0/4");
        cfg.shard = {si, sn};
        cfg.palette = palette;
        cfg.splat = splat;
        cfg.fold = fold;
        cfg.rho = rho;
        cfg.phi_count = phi_count;
        cfg.psi_count = psi_count;
        cfg.out_dir = out_dir;
        cfg.workers = workers;
        cfg.budget = budget;
        cfg.region = region;
        cfg.csv_index = csv_index;
        cfg.tol = tol;
        if (!symbol_t_str.empty()) cfg.symbol_t = parse_complex_list(symbol_t_str);

        auto sum = bohemian::run(cfg);
        std::cout << sum.to_text();
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
