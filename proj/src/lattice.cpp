#include "mmo/lattice.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <limits>
#include <set>

namespace mmo {

namespace {

void set_block(RatMatrix& m, std::size_t r0, std::size_t c0, const RatMatrix& b) {
    for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) m(r0 + i, c0 + j) = b(i, j);
}

void set_block(IntMatrix& m, std::size_t r0, std::size_t c0, const IntMatrix& b,
               const BigInt& factor = 1) {
    for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) m(r0 + i, c0 + j) = factor * b(i, j);
}

RatMatrix scaled_identity(std::size_t n, const BigRat& s) {
    RatMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = s;
    return m;
}

RatMatrix scaled_rat(const IntMatrix& a, const BigRat& s) {
    RatMatrix m(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = s * BigRat(a(i, j));
    return m;
}

BigInt rat_to_int(const BigRat& x, const char* what) {
    if (x.get_den() != 1) throw std::logic_error(std::string(what) + ": entry not integral");
    return x.get_num();
}

double log2_rat(const BigRat& x) {
    if (x <= 0) return -std::numeric_limits<double>::infinity();
    mpf_class f(0, 256);
    mpf_set_q(f.get_mpf_t(), x.get_mpq_t());
    long exp = 0;
    double mant = mpf_get_d_2exp(&exp, f.get_mpf_t());
    return std::log2(std::fabs(mant)) + static_cast<double>(exp);
}

}  // namespace

IntMatrix vandermonde(const std::vector<BigInt>& points, unsigned alpha, bool affine) {
    std::set<BigInt> seen(points.begin(), points.end());
    if (seen.size() != points.size())
        throw std::invalid_argument("vandermonde: points must be pairwise distinct");

    const std::size_t c = points.size();
    const std::size_t rows = alpha + (affine ? 1 : 0);
    IntMatrix v(rows, c);
    for (std::size_t i = 0; i < c; ++i) {
        BigInt pw = affine ? BigInt(1) : points[i];
        for (std::size_t r = 0; r < rows; ++r) {
            v(r, i) = pw;
            pw *= points[i];
        }
    }
    return v;
}

LatticeSystem build_system(const ObservationSet& J) {
    if (J.points.empty()) throw std::invalid_argument("build_system: no observation points");
    if (J.alpha < 1) throw std::invalid_argument("build_system: alpha must be >= 1");
    if (J.p == J.q || gcd(J.p, J.q) != 1)
        throw std::invalid_argument("build_system: moduli must be distinct and coprime");

    LatticeSystem sys;
    sys.p = J.p;
    sys.q = J.q;
    sys.alpha = J.alpha;
    sys.affine = J.affine;
    sys.c = J.c();
    sys.block = J.alpha + (J.affine ? 1 : 0);

    const std::size_t a = sys.block;
    const std::size_t c = sys.c;
    const std::size_t n = 2 * (a + c);

    std::vector<BigInt> xs;
    xs.reserve(c);
    sys.h.reserve(c);
    for (const auto& pt : J.points) {
        xs.push_back(pt.x);
        sys.h.push_back(pt.h);
    }
    sys.powers = vandermonde(xs, J.alpha, J.affine);

    Bezout bez = ext_gcd(sys.p, sys.q);
    sys.mu1 = bez.u;
    sys.mu2 = bez.v;

    // constraint = [V; V; p I_c; q I_c], so h = (r, t, -l1, -l2) * constraint
    sys.constraint = IntMatrix(n, c);
    set_block(sys.constraint, 0, 0, sys.powers);
    set_block(sys.constraint, a, 0, sys.powers);
    set_block(sys.constraint, 2 * a, 0, IntMatrix::identity(c), sys.p);
    set_block(sys.constraint, 2 * a + c, 0, IntMatrix::identity(c), sys.q);

    // embedding: block-diagonal normalization turning the coefficient bounds
    // and both rounding constraints into one infinity-norm inequality
    const BigRat inv_p = make_rat(1, sys.p);
    const BigRat inv_q = make_rat(1, sys.q);
    sys.embedding = RatMatrix(n, n);
    set_block(sys.embedding, 0, 0, scaled_identity(a, inv_p));
    set_block(sys.embedding, a, a, scaled_identity(a, inv_q));
    set_block(sys.embedding, 0, 2 * a, scaled_rat(sys.powers, inv_p));
    set_block(sys.embedding, a, 2 * a + c, scaled_rat(sys.powers, inv_q));
    set_block(sys.embedding, 2 * a, 2 * a, scaled_identity(c, BigRat(1)));
    set_block(sys.embedding, 2 * a + c, 2 * a + c, scaled_identity(c, BigRat(1)));

    // kernel rows span { y : y * constraint = 0 }
    sys.kernel = IntMatrix(2 * a + c, n);
    set_block(sys.kernel, 0, 0, IntMatrix::identity(a));
    set_block(sys.kernel, 0, a, IntMatrix::identity(a), -1);
    set_block(sys.kernel, a, a, IntMatrix::identity(a));
    set_block(sys.kernel, a, 2 * a, sys.powers, -sys.mu1);
    set_block(sys.kernel, a, 2 * a + c, sys.powers, -sys.mu2);
    set_block(sys.kernel, 2 * a, 2 * a, IntMatrix::identity(c), sys.q);
    set_block(sys.kernel, 2 * a, 2 * a + c, IntMatrix::identity(c), -sys.p);

    sys.lattice_full = mul(to_rat(sys.kernel), sys.embedding);

    // x0 = (0,...,0, mu1*h, mu2*h) solves h = x0 * constraint
    sys.particular.assign(n, BigInt(0));
    for (std::size_t i = 0; i < c; ++i) {
        sys.particular[2 * a + i] = sys.mu1 * sys.h[i];
        sys.particular[2 * a + c + i] = sys.mu2 * sys.h[i];
    }

    sys.offset.assign(n, BigRat(0));
    const BigRat off_p = make_rat(sys.p - 1, 2 * sys.p);
    const BigRat off_q = make_rat(sys.q - 1, 2 * sys.q);
    for (std::size_t i = 0; i < c; ++i) {
        sys.offset[2 * a + i] = off_p;
        sys.offset[2 * a + c + i] = off_q;
    }

    RatVec x0b = mul_vec(to_rat(sys.particular), sys.embedding);
    sys.target_full.resize(n);
    for (std::size_t i = 0; i < n; ++i) sys.target_full[i] = sys.offset[i] - x0b[i];

    // the fourth column block equals -p/q times the third; drop whichever
    // has the smaller entries
    sys.deleted = sys.p < sys.q ? DeletedBlock::fourth : DeletedBlock::third;
    const std::size_t del = sys.deleted_start();
    const std::size_t d = sys.dim();

    sys.lattice = RatMatrix(d, d);
    sys.target.resize(d);
    for (std::size_t j = 0, out = 0; j < n; ++j) {
        if (j >= del && j < del + c) continue;
        for (std::size_t i = 0; i < d; ++i) sys.lattice(i, out) = sys.lattice_full(i, j);
        sys.target[out] = sys.target_full[j];
        ++out;
    }

    sys.scale = 2 * sys.p * sys.q;
    sys.basis_scaled_full = IntMatrix(d, n);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < n; ++j)
            sys.basis_scaled_full(i, j) =
                rat_to_int(sys.lattice_full(i, j) * sys.scale, "scaled basis");
    sys.target_scaled_full.resize(n);
    for (std::size_t j = 0; j < n; ++j)
        sys.target_scaled_full[j] = rat_to_int(sys.target_full[j] * sys.scale, "scaled target");

    sys.basis_scaled_square = IntMatrix(d, d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
            sys.basis_scaled_square(i, j) =
                rat_to_int(sys.lattice(i, j) * sys.scale, "scaled basis");
    sys.target_scaled_square.resize(d);
    for (std::size_t j = 0; j < d; ++j)
        sys.target_scaled_square[j] = rat_to_int(sys.target[j] * sys.scale, "scaled target");

    return sys;
}

BigRat volume_closed_form(const BigInt& p, const BigInt& q, unsigned alpha, std::size_t c) {
    if (p < 2 || q < 2) throw std::invalid_argument("volume_closed_form: moduli must be >= 2");
    const BigInt& mx = p > q ? p : q;
    BigInt num, den;
    mpz_pow_ui(num.get_mpz_t(), mx.get_mpz_t(), c);
    BigInt pq = p * q;
    mpz_pow_ui(den.get_mpz_t(), pq.get_mpz_t(), alpha);
    return make_rat(num, den);
}

RootBracket minkowski_bound(const BigRat& vol, unsigned d) {
    if (vol <= 0) throw std::invalid_argument("minkowski_bound: volume must be positive");
    if (d < 1) throw std::invalid_argument("minkowski_bound: dimension must be >= 1");

    const BigInt& num = vol.get_num();
    const BigInt& den = vol.get_den();
    // largest r with r^d * den <= num
    BigInt hi = 1;
    auto fits = [&](const BigInt& r) {
        BigInt rp;
        mpz_pow_ui(rp.get_mpz_t(), r.get_mpz_t(), d);
        return rp * den <= num;
    };
    while (fits(hi)) hi <<= 1;
    BigInt lo = hi / 2;  // fits(lo) true unless vol < 1
    if (lo == 0 || !fits(lo)) lo = 0;
    while (hi - lo > 1) {
        BigInt mid = (lo + hi) / 2;
        if (fits(mid))
            lo = mid;
        else
            hi = mid;
    }

    RootBracket out;
    out.lo = lo;
    BigInt lp;
    mpz_pow_ui(lp.get_mpz_t(), lo.get_mpz_t(), d);
    out.hi = (lp * den == num) ? lo : lo + 1;
    out.approx = std::exp2(log2_rat(vol) / d);
    return out;
}

bool gaussian_uniqueness_predicate(const BigInt& p, const BigInt& q, unsigned alpha,
                                   std::size_t c) {
    BigRat vol = volume_closed_form(p, q, alpha, c);
    BigRat threshold(BigInt(1) << (2 * alpha + c));
    return vol > threshold;
}

ProjectedVolume projected_volume(const std::vector<BigInt>& points, unsigned alpha,
                                 const BigInt& q, unsigned K) {
    const std::size_t c = points.size();
    if (c < alpha + 1) throw std::invalid_argument("projected_volume: need c >= alpha+1");
    IntMatrix b(alpha + 1, c);
    for (std::size_t i = 0; i < c; ++i)
        for (unsigned k = 0; k <= alpha; ++k) b(k, i) = binomial(points[i], k);
    BigInt det_gram = det_bareiss(mul(b, b.transposed()));
    if (det_gram == 0)
        throw std::invalid_argument("projected_volume: binomial matrix is rank deficient");

    ProjectedVolume out;
    BigInt num;
    mpz_pow_ui(num.get_mpz_t(), q.get_mpz_t(), 2 * (c - alpha - 1));
    out.vol_sq = make_rat(num, det_gram);
    out.approx_log2 = log2_rat(out.vol_sq) / 2;
    const long lc = static_cast<long>(c), la = static_cast<long>(alpha), lk = static_cast<long>(K);
    out.heuristic_c_minus_alpha = 2 * lk * (lc - la) > la * (la + 1);
    out.heuristic_c_minus_alpha_1 = 2 * lk * (lc - la - 1) > la * (la + 1);
    return out;
}

void dump_system(const LatticeSystem& sys, const std::string& path) {
    using nlohmann::json;
    auto int_mat = [](const IntMatrix& m) {
        json rows = json::array();
        for (std::size_t i = 0; i < m.rows(); ++i) {
            json r = json::array();
            for (std::size_t j = 0; j < m.cols(); ++j) r.push_back(m(i, j).get_str());
            rows.push_back(std::move(r));
        }
        return rows;
    };
    auto rat_mat = [](const RatMatrix& m) {
        json rows = json::array();
        for (std::size_t i = 0; i < m.rows(); ++i) {
            json r = json::array();
            for (std::size_t j = 0; j < m.cols(); ++j) r.push_back(m(i, j).get_str());
            rows.push_back(std::move(r));
        }
        return rows;
    };
    auto int_vec = [](const IntVec& v) {
        json r = json::array();
        for (const auto& x : v) r.push_back(x.get_str());
        return r;
    };
    auto rat_vec = [](const RatVec& v) {
        json r = json::array();
        for (const auto& x : v) r.push_back(x.get_str());
        return r;
    };

    json j;
    j["p"] = sys.p.get_str();
    j["q"] = sys.q.get_str();
    j["mu1"] = sys.mu1.get_str();
    j["mu2"] = sys.mu2.get_str();
    j["alpha"] = sys.alpha;
    j["affine"] = sys.affine;
    j["c"] = sys.c;
    j["deleted_block"] = sys.deleted == DeletedBlock::third ? "third" : "fourth";
    j["scale"] = sys.scale.get_str();
    j["powers"] = int_mat(sys.powers);
    j["constraint"] = int_mat(sys.constraint);
    j["embedding"] = rat_mat(sys.embedding);
    j["kernel"] = int_mat(sys.kernel);
    j["lattice_full"] = rat_mat(sys.lattice_full);
    j["lattice"] = rat_mat(sys.lattice);
    j["particular"] = int_vec(sys.particular);
    j["offset"] = rat_vec(sys.offset);
    j["target_full"] = rat_vec(sys.target_full);
    j["target"] = rat_vec(sys.target);
    j["basis_scaled_full"] = int_mat(sys.basis_scaled_full);
    j["target_scaled_full"] = int_vec(sys.target_scaled_full);
    j["basis_scaled_square"] = int_mat(sys.basis_scaled_square);
    j["target_scaled_square"] = int_vec(sys.target_scaled_square);

    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << j.dump(1) << '\n';
}

}  // namespace mmo
