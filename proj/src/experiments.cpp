#include "mmo/experiments.hpp"

#include <atomic>
#include <chrono>
#include <ostream>
#include <sstream>
#include <thread>

namespace mmo {

namespace {

struct Trial {
    std::size_t cell = 0;
    MmoParams params;
};

struct TrialResult {
    bool truth_match = false;
    bool j_match = false;
    bool within = false;
    Uniqueness uniq = Uniqueness::not_checked;
    std::vector<bool> degree_ok;
    double ms = 0.0;
};

TrialResult run_trial(const Trial& t, const SweepSpec& spec) {
    auto [inst, obs] = generate(t.params);
    SolveOptions opts;
    opts.refine_budget = spec.refine_budget;
    opts.check_uniqueness = spec.check_uniqueness;

    auto t0 = std::chrono::steady_clock::now();
    SolverOutcome out = solve(obs, opts, &inst);
    TrialResult r;
    r.ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
               .count();
    r.truth_match = out.truth_match.value_or(false);
    r.j_match = out.full_match;
    r.within = out.residual_within_threshold;
    r.uniq = out.uniqueness;
    r.degree_ok.resize(t.params.alpha);
    for (unsigned k = 1; k <= t.params.alpha; ++k)
        r.degree_ok[k - 1] = mod_reduce(out.f.coeff(k) - inst.f.coeff(k), inst.p) == 0 &&
                             mod_reduce(out.g.coeff(k) - inst.g.coeff(k), inst.q) == 0;
    return r;
}

}  // namespace

SweepReport run_sweep(const SweepSpec& spec) {
    if (spec.trials < 1) throw std::invalid_argument("run_sweep: trials must be >= 1");

    SweepReport report;
    report.spec = spec;

    std::vector<Trial> tasks;
    std::uint64_t trial_index = 0;
    for (unsigned bits : spec.bits_grid)
        for (unsigned alpha : spec.alpha_grid)
            for (unsigned K : spec.K_grid) {
                std::vector<unsigned> cs =
                    spec.c_grid.empty() ? std::vector<unsigned>{2 * alpha} : spec.c_grid;
                for (unsigned c : cs) {
                    SweepCell cell;
                    cell.bits = bits;
                    cell.alpha = alpha;
                    cell.c = c;
                    cell.K = K;
                    cell.trials = spec.trials;
                    cell.degree_recovered.assign(alpha, 0);
                    const std::size_t cell_idx = report.cells.size();
                    report.cells.push_back(cell);
                    for (unsigned t = 0; t < spec.trials; ++t) {
                        Trial task;
                        task.cell = cell_idx;
                        task.params.alpha = alpha;
                        task.params.bits = bits;
                        task.params.K = K;
                        task.params.c = c;
                        task.params.affine = spec.affine;
                        task.params.seed = spec.seed_base + trial_index;
                        ++trial_index;
                        tasks.push_back(std::move(task));
                    }
                }
            }

    std::vector<TrialResult> results(tasks.size());
    const unsigned jobs = std::max(1u, spec.jobs);
    if (jobs == 1) {
        for (std::size_t i = 0; i < tasks.size(); ++i) results[i] = run_trial(tasks[i], spec);
    } else {
        std::atomic<std::size_t> next{0};
        auto worker = [&] {
            for (;;) {
                std::size_t i = next.fetch_add(1);
                if (i >= tasks.size()) return;
                results[i] = run_trial(tasks[i], spec);
            }
        };
        std::vector<std::thread> pool;
        for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    for (std::size_t i = 0; i < tasks.size(); ++i) {
        SweepCell& cell = report.cells[tasks[i].cell];
        const TrialResult& r = results[i];
        cell.truth_matches += r.truth_match ? 1 : 0;
        cell.j_matches += r.j_match ? 1 : 0;
        cell.within_threshold += r.within ? 1 : 0;
        switch (r.uniq) {
            case Uniqueness::unique: ++cell.uniq_unique; break;
            case Uniqueness::unknown: ++cell.uniq_unknown; break;
            case Uniqueness::not_unique: ++cell.uniq_not_unique; break;
            case Uniqueness::not_checked: ++cell.uniq_not_checked; break;
        }
        for (std::size_t k = 0; k < r.degree_ok.size(); ++k)
            if (r.degree_ok[k]) ++cell.degree_recovered[k];
        cell.mean_solve_ms += r.ms;
    }
    for (auto& cell : report.cells)
        if (cell.trials > 0) cell.mean_solve_ms /= cell.trials;
    return report;
}

void write_csv(const SweepReport& report, std::ostream& out) {
    out << "bits,alpha,c,K,trials,truth_match_rate,j_match_rate,within_threshold_rate,"
           "uniq_unique,uniq_unknown,uniq_not_unique,uniq_not_checked,per_degree_recovery";
    if (report.spec.with_timings) out << ",mean_solve_ms";
    out << '\n';

    auto rate = [](unsigned count, unsigned total) {
        std::ostringstream ss;
        ss << count << '/' << total;
        return ss.str();
    };
    for (const auto& cell : report.cells) {
        out << cell.bits << ',' << cell.alpha << ',' << cell.c << ',' << cell.K << ','
            << cell.trials << ',' << rate(cell.truth_matches, cell.trials) << ','
            << rate(cell.j_matches, cell.trials) << ','
            << rate(cell.within_threshold, cell.trials) << ',' << cell.uniq_unique << ','
            << cell.uniq_unknown << ',' << cell.uniq_not_unique << ',' << cell.uniq_not_checked
            << ',';
        for (std::size_t k = 0; k < cell.degree_recovered.size(); ++k) {
            if (k) out << ';';
            out << "deg" << (k + 1) << ':' << cell.degree_recovered[k] << '/' << cell.trials;
        }
        if (report.spec.with_timings) out << ',' << cell.mean_solve_ms;
        out << '\n';
    }
}

}  // namespace mmo
