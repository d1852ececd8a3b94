#include "mmo/instance.hpp"

#include "mmo/rng.hpp"

#include <json.hpp>

#include <fstream>
#include <set>
#include <sstream>

namespace mmo {

namespace {

using nlohmann::json;

BigInt factorial(unsigned k) {
    BigInt f = 1;
    for (unsigned i = 2; i <= k; ++i) f *= i;
    return f;
}

BigInt random_modulus(SeededRng& rng, const MmoParams& params, const BigInt& fact,
                      const BigInt& other) {
    const BigInt lo = BigInt(1) << (params.bits - 1);
    const BigInt hi = (BigInt(1) << params.bits) - 1;
    for (;;) {
        BigInt n = rng.in_range(lo, hi);
        if (params.composite_moduli) {
            if (mpz_even_p(n.get_mpz_t())) n += 1;  // odd, so centered reps stay strict
            if (n > hi) continue;
        } else {
            n = next_probable_prime(n);
            if (n > hi) continue;
        }
        if (n == other) continue;
        if (other != 0 && gcd(n, other) != 1) continue;
        if (gcd(n, fact) != 1) continue;
        return n;
    }
}

Poly random_poly(SeededRng& rng, const BigInt& m, unsigned alpha, bool affine) {
    IntVec coeffs(alpha + 1, BigInt(0));
    if (affine) coeffs[0] = rng.below(m);  // constant kept as a standard residue
    for (unsigned k = 1; k <= alpha; ++k) coeffs[k] = centered(rng.below(m), m);
    return Poly(std::move(coeffs));
}

[[noreturn]] void fail(const std::string& what) { throw std::runtime_error(what); }

const json& field(const json& j, const char* name, const std::string& ctx) {
    auto it = j.find(name);
    if (it == j.end()) fail(ctx + ": missing field '" + name + "'");
    return *it;
}

BigInt big_field(const json& j, const char* name, const std::string& ctx) {
    const json& v = field(j, name, ctx);
    if (!v.is_string()) fail(ctx + ": field '" + std::string(name) + "' must be a decimal string");
    try {
        return BigInt(v.get<std::string>(), 10);
    } catch (const std::invalid_argument&) {
        fail(ctx + ": field '" + std::string(name) + "' is not a valid decimal integer");
    }
}

IntVec big_array(const json& j, const char* name, const std::string& ctx) {
    const json& v = field(j, name, ctx);
    if (!v.is_array()) fail(ctx + ": field '" + std::string(name) + "' must be an array");
    IntVec out;
    out.reserve(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (!v[i].is_string())
            fail(ctx + ": " + name + "[" + std::to_string(i) + "] must be a decimal string");
        try {
            out.emplace_back(v[i].get<std::string>(), 10);
        } catch (const std::invalid_argument&) {
            fail(ctx + ": " + name + "[" + std::to_string(i) + "] is not a valid decimal integer");
        }
    }
    return out;
}

json coeffs_to_json(const Poly& p) {
    json arr = json::array();
    for (const auto& c : p.coeffs) arr.push_back(c.get_str());
    return arr;
}

void validate_moduli(const BigInt& p, const BigInt& q, const std::string& ctx) {
    if (p < 2 || q < 2) fail(ctx + ": moduli must be >= 2");
    if (p == q) fail(ctx + ": moduli must be distinct");
    if (gcd(p, q) != 1) fail(ctx + ": moduli must be coprime");
}

json parse(const std::string& text, const std::string& ctx) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        fail(ctx + ": " + e.what());
    }
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void spill(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) fail("cannot write " + path);
    out << text << '\n';
}

}  // namespace

std::pair<MmoInstance, ObservationSet> generate(const MmoParams& params) {
    if (params.alpha < 1) throw std::invalid_argument("generate: alpha must be >= 1");
    if (params.c < 1) throw std::invalid_argument("generate: c must be >= 1");
    if (params.K < 1) throw std::invalid_argument("generate: K must be >= 1");
    if (params.bits < 4) throw std::invalid_argument("generate: bit length must be >= 4");

    SeededRng rng(params.seed);
    const BigInt fact = factorial(params.K);

    MmoInstance inst;
    inst.affine = params.affine;
    inst.p = random_modulus(rng, params, fact, 0);
    inst.q = random_modulus(rng, params, fact, inst.p);
    inst.f = random_poly(rng, inst.p, params.alpha, params.affine);
    inst.g = random_poly(rng, inst.q, params.alpha, params.affine);

    const BigInt& m = inst.p < inst.q ? inst.p : inst.q;
    BigInt w;
    mpz_root(w.get_mpz_t(), m.get_mpz_t(), params.K);
    const BigInt lo = params.points_from_zero ? 0 : 1;
    const BigInt hi = params.points_from_zero ? w - 1 : w;
    if (hi - lo + 1 < params.c)
        throw std::invalid_argument("generate: interval [" + lo.get_str() + ", " + hi.get_str() +
                                    "] cannot supply " + std::to_string(params.c) +
                                    " distinct points");

    std::set<BigInt> seen;
    std::vector<BigInt> points;
    while (points.size() < params.c) {
        BigInt x = rng.in_range(lo, hi);
        if (seen.insert(x).second) points.push_back(x);
    }
    return {inst, observe(inst, points)};
}

ObservationSet observe(const MmoInstance& inst, const std::vector<BigInt>& points) {
    std::set<BigInt> seen(points.begin(), points.end());
    if (seen.size() != points.size())
        throw std::invalid_argument("observe: points must be pairwise distinct");

    ObservationSet obs;
    obs.p = inst.p;
    obs.q = inst.q;
    obs.alpha = inst.alpha();
    obs.affine = inst.affine;
    obs.points.reserve(points.size());
    for (const auto& x : points)
        obs.points.push_back({x, mmo_eval(inst.f, inst.g, inst.p, inst.q, x)});
    return obs;
}

std::string instance_to_json(const MmoInstance& inst) {
    json j;
    j["p"] = inst.p.get_str();
    j["q"] = inst.q.get_str();
    j["alpha"] = inst.alpha();
    j["affine"] = inst.affine;
    j["f"] = coeffs_to_json(inst.f);
    j["g"] = coeffs_to_json(inst.g);
    return j.dump(2);
}

MmoInstance instance_from_json(const std::string& text) {
    const std::string ctx = "instance";
    json j = parse(text, ctx);
    MmoInstance inst;
    inst.p = big_field(j, "p", ctx);
    inst.q = big_field(j, "q", ctx);
    validate_moduli(inst.p, inst.q, ctx);
    const json& a = field(j, "alpha", ctx);
    if (!a.is_number_unsigned()) fail(ctx + ": field 'alpha' must be a nonnegative integer");
    const unsigned alpha = a.get<unsigned>();
    inst.affine = field(j, "affine", ctx).get<bool>();
    inst.f = Poly(big_array(j, "f", ctx));
    inst.g = Poly(big_array(j, "g", ctx));
    if (inst.f.coeffs.size() > alpha + 1 || inst.g.coeffs.size() > alpha + 1)
        fail(ctx + ": more than alpha+1 coefficients");
    if (!inst.affine && (inst.f.coeff(0) != 0 || inst.g.coeff(0) != 0))
        fail(ctx + ": non-affine instance must have zero constant terms");
    for (const auto& ck : inst.f.coeffs)
        if (abs(ck) >= inst.p) fail(ctx + ": f coefficient out of range [-p, p]");
    for (const auto& ck : inst.g.coeffs)
        if (abs(ck) >= inst.q) fail(ctx + ": g coefficient out of range [-q, q]");
    return inst;
}

std::string observations_to_json(const ObservationSet& obs) {
    json j;
    j["p"] = obs.p.get_str();
    j["q"] = obs.q.get_str();
    j["alpha"] = obs.alpha;
    j["affine"] = obs.affine;
    json pts = json::array();
    for (const auto& pt : obs.points) pts.push_back({{"x", pt.x.get_str()}, {"h", pt.h.get_str()}});
    j["points"] = pts;
    return j.dump(2);
}

ObservationSet observations_from_json(const std::string& text) {
    const std::string ctx = "observations";
    json j = parse(text, ctx);
    ObservationSet obs;
    obs.p = big_field(j, "p", ctx);
    obs.q = big_field(j, "q", ctx);
    validate_moduli(obs.p, obs.q, ctx);
    const json& a = field(j, "alpha", ctx);
    if (!a.is_number_unsigned() || a.get<unsigned>() < 1)
        fail(ctx + ": field 'alpha' must be a positive integer");
    obs.alpha = a.get<unsigned>();
    obs.affine = field(j, "affine", ctx).get<bool>();
    const json& pts = field(j, "points", ctx);
    if (!pts.is_array()) fail(ctx + ": field 'points' must be an array");
    const BigInt hmax = obs.p + obs.q - 2;
    std::set<BigInt> seen;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const std::string pctx = ctx + ": points[" + std::to_string(i) + "]";
        Observation pt{big_field(pts[i], "x", pctx), big_field(pts[i], "h", pctx)};
        if (pt.h < 0 || pt.h > hmax) fail(pctx + ": h outside [0, p+q-2]");
        if (!seen.insert(pt.x).second) fail(pctx + ": duplicate x");
        obs.points.push_back(std::move(pt));
    }
    return obs;
}

void save_instance(const MmoInstance& inst, const std::string& path) {
    spill(path, instance_to_json(inst));
}

MmoInstance load_instance(const std::string& path) {
    try {
        return instance_from_json(slurp(path));
    } catch (const std::exception& e) {
        fail(path + ": " + e.what());
    }
}

void save_observations(const ObservationSet& obs, const std::string& path) {
    spill(path, observations_to_json(obs));
}

ObservationSet load_observations(const std::string& path) {
    try {
        return observations_from_json(slurp(path));
    } catch (const std::exception& e) {
        fail(path + ": " + e.what());
    }
}

}  // namespace mmo
