#include "mmo/solver.hpp"

#include <json.hpp>

#include <chrono>
#include <map>
#include <set>

namespace mmo {

namespace {

double ms_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
        .count();
}

Poly extract_poly(const IntVec& solution, std::size_t offset, unsigned alpha, bool affine,
                  const BigInt& m) {
    IntVec coeffs(alpha + 1, BigInt(0));
    if (affine) {
        for (unsigned k = 0; k <= alpha; ++k) coeffs[k] = centered(solution[offset + k], m);
    } else {
        for (unsigned k = 1; k <= alpha; ++k) coeffs[k] = centered(solution[offset + k - 1], m);
    }
    return Poly(std::move(coeffs));
}

bool coeffs_match_mod(const Poly& a, const Poly& b, const BigInt& m, unsigned from_deg,
                      unsigned alpha) {
    for (unsigned k = from_deg; k <= alpha; ++k)
        if (mod_reduce(a.coeff(k) - b.coeff(k), m) != 0) return false;
    return true;
}

bool matches_truth(const SolverOutcome& out, const MmoInstance& truth, unsigned alpha) {
    if (!truth.affine)
        return coeffs_match_mod(out.f, truth.f, truth.p, 1, alpha) &&
               coeffs_match_mod(out.g, truth.g, truth.q, 1, alpha);
    if (!coeffs_match_mod(out.f, truth.f, truth.p, 1, alpha) ||
        !coeffs_match_mod(out.g, truth.g, truth.q, 1, alpha))
        return false;
    // constant terms are recoverable only up to a shared shift; normalize by
    // the shift that makes the candidate's f(0) agree with the truth
    BigInt shift = centered(truth.f.coeff(0) - out.f.coeff(0), truth.p);
    return mod_reduce(out.g.coeff(0) - shift - truth.g.coeff(0), truth.q) == 0;
}

}  // namespace

const char* to_string(Uniqueness u) {
    switch (u) {
        case Uniqueness::unique: return "unique";
        case Uniqueness::unknown: return "unknown";
        case Uniqueness::not_unique: return "not-unique";
        case Uniqueness::not_checked: return "not-checked";
    }
    return "?";
}

Uniqueness uniqueness_from_probe(const SvProbe& probe, const BigInt& scale) {
    if (probe.exact) return probe.length >= scale ? Uniqueness::unique : Uniqueness::not_unique;
    // the bound is realized by an actual lattice vector, so below the
    // threshold it is a definite witness; above it certifies nothing
    return probe.length < scale ? Uniqueness::not_unique : Uniqueness::unknown;
}

Uniqueness uniqueness_check(const LatticeSystem& sys, const SolveOptions& opts) {
    ReducedBasis rb = lll(sys.basis_scaled_full, opts.eps);
    return uniqueness_from_probe(shortest_vector_probe(rb, opts.svp_exact_dim_limit), sys.scale);
}

SolverOutcome solve(const ObservationSet& J, const SolveOptions& opts, const MmoInstance* truth) {
    LatticeSystem sys = build_system(J);

    auto t0 = std::chrono::steady_clock::now();
    ReducedBasis rb = lll(sys.basis_scaled_full, opts.eps);
    SolverOutcome out;
    out.lll_ms = ms_since(t0);

    t0 = std::chrono::steady_clock::now();
    RatVec target = to_rat(sys.target_scaled_full);
    CvpResult cvp = babai_nearest_plane(rb, target);
    if (cvp.residual_inf != 0 && opts.refine_budget > 0) {
        RefineOptions ro;
        ro.node_budget = opts.refine_budget;
        ro.coord_cap = opts.coord_cap;
        cvp = cvp_infinity_refine(rb, target, cvp, ro);
    }
    out.cvp_ms = ms_since(t0);
    out.refine_nodes = cvp.nodes;
    out.refine_status = cvp.status;

    // map coefficients back: reduced rows = transform * scaled basis rows,
    // and the scaled basis rows correspond one-to-one to kernel rows
    IntVec w_orig = mul_vec(cvp.coeffs, rb.transform);
    IntVec x = mul_vec(w_orig, sys.kernel);
    for (std::size_t i = 0; i < x.size(); ++i) x[i] += sys.particular[i];

    out.f = extract_poly(x, 0, sys.alpha, sys.affine, sys.p);
    out.g = extract_poly(x, sys.block, sys.alpha, sys.affine, sys.q);

    out.residual_inf_scaled = cvp.residual_inf.get_num();  // integral for scaled systems
    const BigInt pq = sys.p * sys.q;
    out.residual_within_threshold = cvp.residual_inf < BigRat(pq);

    out.match_mask.reserve(J.c());
    bool all = true;
    for (const auto& pt : J.points) {
        bool ok = mmo_eval(out.f, out.g, sys.p, sys.q, pt.x) == pt.h;
        out.match_mask.push_back(ok);
        all = all && ok;
    }
    out.full_match = all;

    if (truth) out.truth_match = matches_truth(out, *truth, sys.alpha);
    if (opts.check_uniqueness)
        out.uniqueness =
            uniqueness_from_probe(shortest_vector_probe(rb, opts.svp_exact_dim_limit), sys.scale);
    return out;
}

ErrorScanSummary interpolation_error(
    const MmoInstance& inst, const Poly& f_hat, const Poly& g_hat, const BigInt& range_end,
    const BigInt& stride,
    const std::function<void(const BigInt&, const BigInt&, const BigInt&)>& sink) {
    if (stride < 1) throw std::invalid_argument("interpolation_error: stride must be >= 1");
    constexpr std::size_t kMaxDistinct = 4096;

    ErrorScanSummary s;
    std::set<BigInt> distinct;
    for (BigInt x = 0; x < range_end; x += stride) {
        BigInt h = mmo_eval(inst.f, inst.g, inst.p, inst.q, x);
        BigInt ht = mmo_eval(f_hat, g_hat, inst.p, inst.q, x);
        ++s.total;
        if (ht == h)
            ++s.zero;
        else if (distinct.size() < kMaxDistinct)
            distinct.insert(ht - h);
        else if (!distinct.count(ht - h))
            s.distinct_overflow = true;
        if (sink) sink(x, h, ht);
    }
    if (s.zero > 0) distinct.insert(0);
    s.distinct_errors.assign(distinct.begin(), distinct.end());
    return s;
}

BigRat expected_collisions_bruteforce(const BigInt& p, const BigInt& q, unsigned alpha,
                                      const std::vector<BigInt>& points) {
    if (alpha < 1) throw std::invalid_argument("expected_collisions: alpha must be >= 1");
    BigInt pairs;
    mpz_pow_ui(pairs.get_mpz_t(), BigInt(p * q).get_mpz_t(), alpha);
    if (pairs > 10'000'000) throw std::invalid_argument("expected_collisions: enumeration too large");

    const std::size_t c = points.size();
    const unsigned long up = p.get_ui(), uq = q.get_ui();

    // residues of the point powers, k = 1..alpha
    auto powers = [&](const BigInt& m) {
        std::vector<std::vector<unsigned long>> pw(c, std::vector<unsigned long>(alpha + 1, 1));
        for (std::size_t i = 0; i < c; ++i) {
            BigInt x = mod_reduce(points[i], m);
            for (unsigned k = 1; k <= alpha; ++k)
                pw[i][k] = mod_reduce(BigInt(pw[i][k - 1]) * x, m).get_ui();
        }
        return pw;
    };
    const auto xp = powers(p), xq = powers(q);

    // evaluation vectors of every polynomial with zero constant term
    auto table = [&](unsigned long m, const std::vector<std::vector<unsigned long>>& pw) {
        std::vector<std::vector<unsigned long>> vals;
        std::vector<unsigned long> coeff(alpha + 1, 0);
        for (;;) {
            std::vector<unsigned long> v(c, 0);
            for (std::size_t i = 0; i < c; ++i) {
                unsigned long acc = 0;
                for (unsigned k = 1; k <= alpha; ++k) acc = (acc + coeff[k] * pw[i][k]) % m;
                v[i] = acc;
            }
            vals.push_back(std::move(v));
            unsigned k = 1;
            while (k <= alpha && ++coeff[k] == m) coeff[k++] = 0;
            if (k > alpha) break;
        }
        return vals;
    };
    const auto fv = table(up, xp), gv = table(uq, xq);

    std::map<std::vector<unsigned long>, BigInt> tally;
    std::vector<unsigned long> y(c);
    for (const auto& a : fv)
        for (const auto& b : gv) {
            for (std::size_t i = 0; i < c; ++i) y[i] = a[i] + b[i];
            tally[y] += 1;
        }

    BigInt sum_sq = 0;
    for (const auto& [_, n] : tally) sum_sq += n * n;
    BigRat e = make_rat(sum_sq, pairs);

    BigInt denom;
    mpz_pow_ui(denom.get_mpz_t(), BigInt(p + q - 1).get_mpz_t(), c);
    if (e < make_rat(pairs, denom))
        throw std::logic_error("expected_collisions: Cauchy-Schwarz bound violated");
    return e;
}

std::string outcome_to_json(const SolverOutcome& outcome) {
    using nlohmann::json;
    json j;
    auto coeffs = [](const Poly& p) {
        json arr = json::array();
        for (const auto& ck : p.coeffs) arr.push_back(ck.get_str());
        return arr;
    };
    j["f"] = coeffs(outcome.f);
    j["g"] = coeffs(outcome.g);
    json mask = json::array();
    for (bool b : outcome.match_mask) mask.push_back(b ? 1 : 0);
    j["match_mask"] = mask;
    j["full_match"] = outcome.full_match;
    j["residual_within_threshold"] = outcome.residual_within_threshold;
    if (outcome.truth_match)
        j["truth_match"] = *outcome.truth_match;
    else
        j["truth_match"] = nullptr;
    j["uniqueness"] = to_string(outcome.uniqueness);
    j["residual_inf_scaled"] = outcome.residual_inf_scaled.get_str();
    j["refine_nodes"] = outcome.refine_nodes;
    j["refine_status"] = outcome.refine_status == CvpStatus::proved_within_budget
                             ? "proved-within-budget"
                             : "budget-exhausted";
    j["lll_ms"] = outcome.lll_ms;
    j["cvp_ms"] = outcome.cvp_ms;
    return j.dump(2);
}

}  // namespace mmo
