// Command-line front end: instance generation, solving, parameter sweeps,
// the built-in worked example, and volume diagnostics.

#include "mmo/experiments.hpp"
#include "mmo/worked_example.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

namespace {

using namespace mmo;

std::vector<BigInt> parse_points(const std::string& csv) {
    std::vector<BigInt> out;
    std::size_t start = 0;
    while (start <= csv.size()) {
        std::size_t comma = csv.find(',', start);
        std::string tok = csv.substr(start, comma == std::string::npos ? comma : comma - start);
        if (!tok.empty()) out.emplace_back(tok, 10);
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    if (out.empty()) throw CLI::ValidationError("--points", "no points given");
    return out;
}

std::vector<unsigned> parse_grid(const std::string& csv) {
    std::vector<unsigned> out;
    std::size_t start = 0;
    while (start <= csv.size()) {
        std::size_t comma = csv.find(',', start);
        std::string tok = csv.substr(start, comma == std::string::npos ? comma : comma - start);
        if (!tok.empty()) out.push_back(static_cast<unsigned>(std::stoul(tok)));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return out;
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text << '\n';
}

int cmd_gen(const MmoParams& params, const std::string& prefix) {
    auto [inst, obs] = generate(params);
    const std::string ipath = prefix + ".instance.json";
    const std::string opath = prefix + ".observations.json";
    save_instance(inst, ipath);
    save_observations(obs, opath);
    std::cout << "p = " << inst.p << "\nq = " << inst.q << "\nwrote " << ipath << "\nwrote "
              << opath << "\n";
    return 0;
}

void print_outcome(const SolverOutcome& out, std::size_t c) {
    std::size_t matched = 0;
    for (bool b : out.match_mask) matched += b ? 1 : 0;
    std::cout << "matched observations: " << matched << "/" << c << "\n"
              << "full match:           " << (out.full_match ? "yes" : "no") << "\n"
              << "residual < p*q:       " << (out.residual_within_threshold ? "yes" : "no")
              << "\n";
    if (out.truth_match)
        std::cout << "ground truth match:   " << (*out.truth_match ? "yes" : "no") << "\n";
    if (out.uniqueness != Uniqueness::not_checked)
        std::cout << "uniqueness:           " << to_string(out.uniqueness) << "\n";
    std::cout << "refine nodes:         " << out.refine_nodes << " ("
              << (out.refine_status == CvpStatus::proved_within_budget ? "complete"
                                                                       : "budget exhausted")
              << ")\n";
}

int cmd_solve(const std::string& obs_path, const std::string& inst_path,
              const SolveOptions& opts, const std::string& out_path,
              const std::string& dump_path) {
    ObservationSet obs = load_observations(obs_path);
    if (!dump_path.empty()) dump_system(build_system(obs), dump_path);

    MmoInstance inst;
    const MmoInstance* truth = nullptr;
    if (!inst_path.empty()) {
        inst = load_instance(inst_path);
        truth = &inst;
    }
    SolverOutcome out = solve(obs, opts, truth);
    print_outcome(out, obs.c());
    if (!out_path.empty()) {
        write_text(out_path, outcome_to_json(out));
        std::cout << "wrote " << out_path << "\n";
    }
    return out.full_match ? 0 : 1;
}

int cmd_sweep(const SweepSpec& spec, const std::string& out_path) {
    SweepReport report = run_sweep(spec);
    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot write " + out_path);
    write_csv(report, out);
    std::cout << "wrote " << out_path << "\n";
    for (const auto& cell : report.cells)
        std::cout << "bits=" << cell.bits << " alpha=" << cell.alpha << " c=" << cell.c
                  << " K=" << cell.K << ": truth " << cell.truth_matches << "/" << cell.trials
                  << ", J-match " << cell.j_matches << "/" << cell.trials << "\n";
    return 0;
}

int cmd_example(bool verify_only, bool skip_scan, const SolveOptions& opts,
                const std::string& scan_path, const std::string& out_path) {
    const MmoInstance& inst = worked_example_instance();
    const ObservationSet& obs = worked_example_observations();

    std::size_t ok = 0;
    for (const auto& pt : obs.points)
        ok += mmo_eval(inst.f, inst.g, inst.p, inst.q, pt.x) == pt.h ? 1 : 0;
    std::cout << "reference table: " << ok << "/" << obs.c() << " rows reproduced\n";
    if (ok != obs.c()) return 1;
    if (verify_only) return 0;

    SolverOutcome out = solve(obs, opts, &inst);
    print_outcome(out, obs.c());
    if (!out_path.empty()) {
        write_text(out_path, outcome_to_json(out));
        std::cout << "wrote " << out_path << "\n";
    }

    if (!skip_scan) {
        std::ofstream scan(scan_path);
        if (!scan) throw std::runtime_error("cannot write " + scan_path);
        scan << "x,h,h_tilde,diff\n";
        ErrorScanSummary summary = interpolation_error(
            inst, out.f, out.g, BigInt(1) << 16, 1,
            [&scan](const BigInt& x, const BigInt& h, const BigInt& ht) {
                scan << x << ',' << h << ',' << ht << ',' << BigInt(ht - h) << '\n';
            });
        std::cout << "error scan: " << summary.zero << "/" << summary.total
                  << " exact, distinct error values: " << summary.distinct_errors.size() << "\n"
                  << "wrote " << scan_path << "\n";
    }
    return 0;
}

int cmd_volume(const BigInt& p, const BigInt& q, unsigned alpha, unsigned c, bool affine,
               const std::string& points_csv, unsigned K) {
    const unsigned block = alpha + (affine ? 1 : 0);
    BigRat vol = volume_closed_form(p, q, block, c);
    const unsigned d = 2 * block + c;
    RootBracket mink = minkowski_bound(vol, d);
    std::cout << "volume (closed form):  " << vol << "\n"
              << "dimension:             " << d << "\n"
              << "minkowski bound:       [" << mink.lo << ", " << mink.hi << "] ~ " << mink.approx
              << "\n"
              << "gaussian uniqueness:   "
              << (gaussian_uniqueness_predicate(p, q, block, c) ? "likely unique"
                                                                : "not indicated")
              << "\n";

    if (!points_csv.empty()) {
        std::vector<BigInt> points = parse_points(points_csv);
        if (points.size() != c)
            std::cout << "note: using c = " << points.size() << " from --points\n";
        ObservationSet obs;
        obs.p = p;
        obs.q = q;
        obs.alpha = alpha;
        obs.affine = affine;
        for (const auto& x : points) obs.points.push_back({x, BigInt(0)});
        LatticeSystem sys = build_system(obs);
        BigRat det = det_rational(sys.lattice);
        std::cout << "|det| of square basis: " << abs(det) << "\n"
                  << "matches closed form:   " << (abs(det) == vol ? "yes" : "NO") << "\n";
        const BigInt& mx = p > q ? p : q;
        try {
            ProjectedVolume pv = projected_volume(points, alpha, mx, K);
            std::cout << "projected volume^2:    " << pv.vol_sq << "\n"
                      << "projected vol (log2):  " << pv.approx_log2 << "\n"
                      << "K(c-alpha)   heuristic: " << (pv.heuristic_c_minus_alpha ? "holds" : "fails")
                      << "\n"
                      << "K(c-alpha-1) heuristic: "
                      << (pv.heuristic_c_minus_alpha_1 ? "holds" : "fails") << "\n";
        } catch (const std::exception& e) {
            std::cout << "projected volume:      unavailable (" << e.what() << ")\n";
        }
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact lattice solver for sums of two reduced polynomial evaluations"};
    app.require_subcommand(1);

    // gen
    auto* gen = app.add_subcommand("gen", "Generate a random instance and its observations");
    MmoParams params;
    std::string gen_out = "mmo";
    gen->add_option("--alpha", params.alpha, "Degree bound")->capture_default_str();
    gen->add_option("--bits", params.bits, "Bit length of the moduli")->capture_default_str();
    gen->add_option("--c", params.c, "Number of observation points")->capture_default_str();
    gen->add_option("--K", params.K, "Interval exponent: points from [1, min(p,q)^(1/K)]")
        ->capture_default_str();
    gen->add_flag("--affine", params.affine, "Include constant coefficients");
    gen->add_flag("--composite", params.composite_moduli,
                  "Coprime odd composites instead of primes");
    gen->add_flag("--from-zero", params.points_from_zero, "Sample points from [0, w) instead of [1, w]");
    gen->add_option("--seed", params.seed, "64-bit seed")->capture_default_str();
    gen->add_option("--out", gen_out, "Output path prefix")->capture_default_str();

    // solve
    auto* slv = app.add_subcommand("solve", "Solve an observation file");
    std::string obs_path, inst_path, out_path, dump_path;
    SolveOptions sopts;
    std::uint64_t budget = sopts.refine_budget;
    std::string cap = "0";
    slv->add_option("--obs", obs_path, "Observation file")->required();
    slv->add_option("--instance", inst_path, "Instance file with ground truth (optional)");
    slv->add_option("--budget", budget, "Refinement node budget")->capture_default_str();
    slv->add_option("--cap", cap, "Per-coordinate refinement cap (0 = none)")
        ->capture_default_str();
    bool do_uniq = false;
    slv->add_flag("--uniqueness", do_uniq, "Run the shortest-vector uniqueness probe");
    slv->add_option("--svp-dim", sopts.svp_exact_dim_limit,
                    "Exact shortest-vector enumeration up to this dimension")
        ->capture_default_str();
    slv->add_option("--out", out_path, "Write the outcome as JSON");
    slv->add_option("--dump-system", dump_path, "Dump the lattice system as JSON");

    // sweep
    auto* swp = app.add_subcommand("sweep", "Run a seeded parameter sweep and write a CSV report");
    std::string bits_csv = "48", alpha_csv = "1", c_csv, k_csv = "1", sweep_out = "sweep.csv";
    SweepSpec spec;
    swp->add_option("--bits", bits_csv, "Comma list of bit lengths")->capture_default_str();
    swp->add_option("--alpha", alpha_csv, "Comma list of degree bounds")->capture_default_str();
    swp->add_option("--c", c_csv, "Comma list of point counts (default 2*alpha)");
    swp->add_option("--K", k_csv, "Comma list of interval exponents")->capture_default_str();
    swp->add_option("--trials", spec.trials, "Trials per cell")->capture_default_str();
    swp->add_option("--seed", spec.seed_base, "Seed base; trial i uses seed+i")
        ->capture_default_str();
    swp->add_option("--budget", spec.refine_budget, "Refinement node budget")
        ->capture_default_str();
    swp->add_flag("--affine", spec.affine, "Instances with constant coefficients");
    swp->add_flag("--uniqueness", spec.check_uniqueness, "Probe uniqueness per trial");
    swp->add_option("--jobs", spec.jobs, "Parallel trial runners")->capture_default_str();
    swp->add_flag("--timings", spec.with_timings, "Add a timing column (breaks rerun identity)");
    swp->add_option("--out", sweep_out, "CSV output path")->capture_default_str();

    // example-sec4
    auto* ex = app.add_subcommand("example-sec4",
                                  "Verify and solve the built-in worked example, then scan the "
                                  "interpolation error");
    bool verify_only = false, skip_scan = false;
    std::string scan_out = "error_scan.csv", ex_out;
    SolveOptions ex_opts;
    std::uint64_t ex_budget = ex_opts.refine_budget;
    ex->add_flag("--verify-table", verify_only, "Only verify the reference table");
    ex->add_flag("--skip-scan", skip_scan, "Skip the error scan CSV");
    ex->add_option("--budget", ex_budget, "Refinement node budget")->capture_default_str();
    ex->add_option("--scan-out", scan_out, "Error scan CSV path")->capture_default_str();
    ex->add_option("--out", ex_out, "Write the outcome as JSON");

    // volume
    auto* vol = app.add_subcommand("volume", "Volume diagnostics for given parameters");
    std::string p_str, q_str, points_csv;
    unsigned v_alpha = 1, v_c = 2, v_K = 1;
    bool v_affine = false;
    vol->add_option("--p", p_str, "Modulus p")->required();
    vol->add_option("--q", q_str, "Modulus q")->required();
    vol->add_option("--alpha", v_alpha, "Degree bound")->capture_default_str();
    vol->add_option("--c", v_c, "Number of points")->capture_default_str();
    vol->add_flag("--affine", v_affine, "Affine block size (alpha+1)");
    vol->add_option("--points", points_csv, "Comma list of points for the determinant check");
    vol->add_option("--K", v_K, "Interval exponent for the projected volume")
        ->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*gen) return cmd_gen(params, gen_out);
        if (*slv) {
            sopts.refine_budget = budget;
            sopts.coord_cap = BigInt(cap, 10);
            sopts.check_uniqueness = do_uniq;
            return cmd_solve(obs_path, inst_path, sopts, out_path, dump_path);
        }
        if (*swp) {
            spec.bits_grid = parse_grid(bits_csv);
            spec.alpha_grid = parse_grid(alpha_csv);
            spec.c_grid = parse_grid(c_csv);
            spec.K_grid = parse_grid(k_csv);
            if (spec.bits_grid.empty() || spec.alpha_grid.empty() || spec.K_grid.empty())
                throw CLI::ValidationError("sweep", "empty grid");
            return cmd_sweep(spec, sweep_out);
        }
        if (*ex) {
            ex_opts.refine_budget = ex_budget;
            return cmd_example(verify_only, skip_scan, ex_opts, scan_out, ex_out);
        }
        if (*vol) return cmd_volume(BigInt(p_str, 10), BigInt(q_str, 10), v_alpha, v_c, v_affine,
                                    points_csv, v_K);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
