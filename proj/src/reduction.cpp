#include "mmo/reduction.hpp"

namespace mmo {

namespace {

// All-integer LLL state (Gram determinants d_i and lambda_{ij} = d_j mu_{ij}),
// 1-based like the classical presentation. Every division below is exact.
struct LllState {
    std::vector<IntVec> b;  // basis rows
    std::vector<IntVec> u;  // transform rows
    std::vector<BigInt> d;  // d[0] = 1, d[i] = det Gram(b_1..b_i)
    std::vector<std::vector<BigInt>> lam;
    std::size_t n;

    explicit LllState(const IntMatrix& input)
        : d(input.rows() + 1), lam(input.rows() + 1, std::vector<BigInt>(input.rows() + 1)),
          n(input.rows()) {
        b.resize(n + 1);
        u.resize(n + 1);
        for (std::size_t i = 1; i <= n; ++i) {
            b[i] = input.row(i - 1);
            u[i].assign(n, BigInt(0));
            u[i][i - 1] = 1;
        }
        d[0] = 1;
    }

    void sub_row(std::size_t k, std::size_t l, const BigInt& r) {
        for (std::size_t t = 0; t < b[k].size(); ++t) b[k][t] -= r * b[l][t];
        for (std::size_t t = 0; t < n; ++t) u[k][t] -= r * u[l][t];
    }

    void size_reduce(std::size_t k, std::size_t l) {
        BigInt two_lam = 2 * lam[k][l];
        if (mpz_cmpabs(two_lam.get_mpz_t(), d[l].get_mpz_t()) <= 0) return;
        BigInt num = 2 * lam[k][l] + d[l];
        BigInt den = 2 * d[l];
        BigInt r;
        mpz_fdiv_q(r.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());  // round half up
        sub_row(k, l, r);
        for (std::size_t j = 1; j < l; ++j) lam[k][j] -= r * lam[l][j];
        lam[k][l] -= r * d[l];
    }

    void swap_rows(std::size_t k, std::size_t kmax) {
        std::swap(b[k], b[k - 1]);
        std::swap(u[k], u[k - 1]);
        for (std::size_t j = 1; j + 1 < k; ++j) std::swap(lam[k][j], lam[k - 1][j]);
        const BigInt l = lam[k][k - 1];
        const BigInt bnew = divexact(d[k - 2] * d[k] + l * l, d[k - 1]);
        for (std::size_t i = k + 1; i <= kmax; ++i) {
            const BigInt t = lam[i][k];
            lam[i][k] = divexact(d[k] * lam[i][k - 1] - l * t, d[k - 1]);
            lam[i][k - 1] = divexact(bnew * t + l * lam[i][k], d[k]);
        }
        d[k - 1] = bnew;
    }
};

}  // namespace

ReducedBasis lll(const IntMatrix& input, const BigRat& eps) {
    if (!(eps > BigRat(1, 4) && eps < 1))
        throw std::invalid_argument("lll: eps must lie in (1/4, 1)");
    const std::size_t n = input.rows();

    ReducedBasis out;
    out.eps = eps;
    if (n == 0) {
        out.basis = input;
        return out;
    }

    LllState st(input);
    st.d[1] = dot(st.b[1], st.b[1]);
    if (st.d[1] == 0) throw std::invalid_argument("lll: rows are linearly dependent");

    const BigInt en = eps.get_num();
    const BigInt ed = eps.get_den();

    std::size_t k = 2, kmax = 1;
    while (k <= n) {
        if (k > kmax) {
            for (std::size_t j = 1; j <= k; ++j) {
                BigInt v = dot(st.b[k], st.b[j]);
                for (std::size_t i = 1; i < j; ++i)
                    v = divexact(st.d[i] * v - st.lam[k][i] * st.lam[j][i], st.d[i - 1]);
                if (j < k)
                    st.lam[k][j] = v;
                else {
                    if (v <= 0) throw std::invalid_argument("lll: rows are linearly dependent");
                    st.d[k] = v;
                }
            }
            kmax = k;
        }
        st.size_reduce(k, k - 1);
        // Lovasz: swap unless d_k d_{k-2} >= eps d_{k-1}^2 - lambda^2
        const BigInt& l = st.lam[k][k - 1];
        if (ed * (st.d[k] * st.d[k - 2] + l * l) < en * st.d[k - 1] * st.d[k - 1]) {
            st.swap_rows(k, kmax);
            k = k > 2 ? k - 1 : 2;
        } else {
            for (std::size_t j = k - 1; j-- > 1;) st.size_reduce(k, j);
            ++k;
        }
    }

    out.basis = IntMatrix(n, input.cols());
    out.transform = IntMatrix(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < input.cols(); ++j) out.basis(i, j) = st.b[i + 1][j];
        for (std::size_t j = 0; j < n; ++j) out.transform(i, j) = st.u[i + 1][j];
    }
    out.mu = RatMatrix(n, n);
    out.gs_norm_sq.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        out.gs_norm_sq[i] = make_rat(st.d[i + 1], st.d[i]);
        for (std::size_t j = 0; j < i; ++j)
            out.mu(i, j) = make_rat(st.lam[i + 1][j + 1], st.d[j + 1]);
    }
    return out;
}

namespace {

// Exact Gram-Schmidt rows of the reduced basis, from the stored mu.
RatMatrix gram_schmidt_rows(const ReducedBasis& rb) {
    const std::size_t n = rb.dim(), s = rb.ambient();
    RatMatrix bs(n, s);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t t = 0; t < s; ++t) bs(i, t) = BigRat(rb.basis(i, t));
        for (std::size_t j = 0; j < i; ++j) {
            if (rb.mu(i, j) == 0) continue;
            for (std::size_t t = 0; t < s; ++t) bs(i, t) -= rb.mu(i, j) * bs(j, t);
        }
    }
    return bs;
}

void fill_norms(CvpResult& r) {
    r.residual_inf = inf_norm(r.residual);
    r.residual_l2_sq = l2_norm_sq(r.residual);
}

// Depth-first enumeration of sum_i a_i b_i near a fixed residual, pruned by
// the exact partial Euclidean norm in the Gram-Schmidt frame: any candidate
// whose final infinity norm beats `best` satisfies l2^2 < s * best^2.
struct Enumerator {
    const ReducedBasis& rb;
    RatVec centers0;             // <rho0, b*_k> / ||b*_k||^2
    const RatVec* rho0;          // null: enumerate around the origin
    std::vector<BigInt> box;     // empty: unbounded
    bool forbid_zero = false;    // skip the all-zero assignment
    bool sign_restrict = false;  // first nonzero (from the top) coefficient > 0
    std::uint64_t budget = 0;

    IntVec a;
    IntVec evec;
    BigRat prune_bound;
    BigRat best_inf;
    BigRat s_rat;
    bool improved = false;
    IntVec best_a, best_vec;
    std::uint64_t nodes = 0;
    bool aborted = false;

    Enumerator(const ReducedBasis& rb_in, const BigRat& initial_best)
        : rb(rb_in), a(rb_in.dim(), BigInt(0)), evec(rb_in.ambient(), BigInt(0)),
          best_inf(initial_best), s_rat(static_cast<long>(rb_in.ambient())) {
        prune_bound = s_rat * best_inf * best_inf;
    }

    void apply(std::size_t k, const BigInt& v, int sign) {
        if (v == 0) return;
        for (std::size_t t = 0; t < evec.size(); ++t) {
            if (sign > 0)
                evec[t] += v * rb.basis(k, t);
            else
                evec[t] -= v * rb.basis(k, t);
        }
    }

    void leaf(bool all_zero) {
        if (forbid_zero && all_zero) return;
        BigRat inf = 0;
        for (std::size_t t = 0; t < evec.size(); ++t) {
            BigRat d = rho0 ? (*rho0)[t] - evec[t] : BigRat(evec[t]);
            BigRat ad = abs(d);
            if (ad > inf) inf = ad;
            if (inf >= best_inf) return;  // cannot improve
        }
        best_inf = inf;
        best_a = a;
        best_vec = evec;
        improved = true;
        prune_bound = s_rat * best_inf * best_inf;
    }

    void descend(long k, const BigRat& partial, bool all_zero) {
        if (aborted) return;
        if (k < 0) {
            leaf(all_zero);
            return;
        }
        const std::size_t ku = static_cast<std::size_t>(k);
        BigRat center = centers0.empty() ? BigRat(0) : centers0[ku];
        for (std::size_t i = ku + 1; i < rb.dim(); ++i)
            if (a[i] != 0) center -= BigRat(a[i]) * rb.mu(i, ku);

        BigInt first = round_half_up(center);
        bool up_alive = true, down_alive = true;
        if (!box.empty()) {
            if (first > box[ku]) {
                first = box[ku];
                up_alive = false;
            } else if (first < -box[ku]) {
                first = -box[ku];
                down_alive = false;
            }
        }
        if (sign_restrict && all_zero && first < 0) first = 0;

        auto try_value = [&](const BigInt& v, bool& dir_alive) {
            BigRat g = center - v;
            BigRat newpartial = partial + g * g * rb.gs_norm_sq[ku];
            if (newpartial >= prune_bound) {
                dir_alive = false;
                return;
            }
            if (++nodes > budget) {
                aborted = true;
                return;
            }
            a[ku] = v;
            apply(ku, v, +1);
            descend(k - 1, newpartial, all_zero && v == 0);
            apply(ku, v, -1);
            a[ku] = 0;
        };

        // first candidate has the smallest |center - v|; if it prunes, both
        // directions are exhausted
        {
            bool both = true;
            try_value(first, both);
            if (!both || aborted) return;
        }
        BigInt up = first + 1, down = first - 1;
        if (sign_restrict && all_zero) down_alive = false;
        while ((up_alive || down_alive) && !aborted) {
            bool pick_up;
            if (!down_alive)
                pick_up = true;
            else if (!up_alive)
                pick_up = false;
            else
                pick_up = abs(center - BigRat(up)) <= abs(center - BigRat(down));
            if (pick_up) {
                if (!box.empty() && up > box[ku]) {
                    up_alive = false;
                    continue;
                }
                try_value(up, up_alive);
                ++up;
            } else {
                if ((!box.empty() && down < -box[ku]) || (sign_restrict && all_zero && down < 0)) {
                    down_alive = false;
                    continue;
                }
                try_value(down, down_alive);
                --down;
            }
        }
    }

    void run() { descend(static_cast<long>(rb.dim()) - 1, BigRat(0), true); }
};

RatVec residual_centers(const ReducedBasis& rb, const RatMatrix& bstar, const RatVec& rho) {
    RatVec t(rb.dim());
    for (std::size_t j = 0; j < rb.dim(); ++j) {
        BigRat num = 0;
        for (std::size_t c = 0; c < rb.ambient(); ++c) num += rho[c] * bstar(j, c);
        t[j] = num / rb.gs_norm_sq[j];
    }
    return t;
}

}  // namespace

CvpResult babai_nearest_plane(const ReducedBasis& rb, const RatVec& target) {
    if (target.size() != rb.ambient())
        throw std::invalid_argument("babai_nearest_plane: dimension mismatch");
    const std::size_t n = rb.dim(), s = rb.ambient();
    RatMatrix bstar = gram_schmidt_rows(rb);

    CvpResult out;
    out.coeffs.assign(n, BigInt(0));
    out.lattice_vec.assign(s, BigInt(0));
    out.residual = target;
    for (std::size_t j = n; j-- > 0;) {
        BigRat proj = 0;
        for (std::size_t t = 0; t < s; ++t) proj += out.residual[t] * bstar(j, t);
        BigInt cj = round_half_up(proj / rb.gs_norm_sq[j]);
        out.coeffs[j] = cj;
        if (cj == 0) continue;
        for (std::size_t t = 0; t < s; ++t) {
            BigInt step = cj * rb.basis(j, t);
            out.lattice_vec[t] += step;
            out.residual[t] -= step;
        }
    }
    fill_norms(out);
    out.nodes = 0;
    out.status = CvpStatus::budget_exhausted;  // no enumeration attempted
    return out;
}

CvpResult cvp_infinity_refine(const ReducedBasis& rb, const RatVec& target,
                              const CvpResult& start, const RefineOptions& opts) {
    if (target.size() != rb.ambient())
        throw std::invalid_argument("cvp_infinity_refine: dimension mismatch");
    const std::size_t n = rb.dim();
    if (n == 0) return start;

    RatMatrix bstar = gram_schmidt_rows(rb);

    Enumerator en(rb, start.residual_inf);
    en.rho0 = &start.residual;
    en.centers0 = residual_centers(rb, bstar, start.residual);
    en.budget = opts.node_budget;
    if (opts.use_coordinate_box) {
        en.box.resize(n);
        for (std::size_t i = 0; i < n; ++i) {
            // ceil(sqrt(d * 2^i)) = ceil(sqrt(d) * 2^(i/2)) for 0-based i
            BigInt v = BigInt(static_cast<unsigned long>(n)) << i;
            BigInt root, rem;
            mpz_sqrtrem(root.get_mpz_t(), rem.get_mpz_t(), v.get_mpz_t());
            if (rem != 0) root += 1;
            en.box[i] = (opts.coord_cap > 0 && opts.coord_cap < root) ? opts.coord_cap : root;
        }
    }
    en.run();

    CvpResult out;
    if (en.improved) {
        out.coeffs.resize(n);
        for (std::size_t i = 0; i < n; ++i) out.coeffs[i] = start.coeffs[i] + en.best_a[i];
        out.lattice_vec.resize(rb.ambient());
        out.residual.resize(rb.ambient());
        for (std::size_t t = 0; t < rb.ambient(); ++t) {
            out.lattice_vec[t] = start.lattice_vec[t] + en.best_vec[t];
            out.residual[t] = target[t] - out.lattice_vec[t];
        }
        fill_norms(out);
    } else {
        out = start;
    }
    out.nodes = en.nodes;
    out.status = en.aborted ? CvpStatus::budget_exhausted : CvpStatus::proved_within_budget;
    return out;
}

SvProbe shortest_vector_probe(const ReducedBasis& rb, std::size_t exact_dim_limit) {
    const std::size_t n = rb.dim();
    if (n == 0) throw std::invalid_argument("shortest_vector_probe: empty basis");

    SvProbe out;
    out.witness = rb.basis.row(0);
    BigInt best = inf_norm(out.witness);
    for (std::size_t i = 1; i < n; ++i) {
        IntVec row = rb.basis.row(i);
        BigInt v = inf_norm(row);
        if (v < best) {
            best = v;
            out.witness = std::move(row);
        }
    }
    out.length = BigRat(best);
    out.exact = false;
    if (n > exact_dim_limit) return out;

    Enumerator en(rb, out.length);
    en.rho0 = nullptr;
    en.forbid_zero = true;
    en.sign_restrict = true;
    en.budget = 30'000'000;  // guard; exactness is reported honestly below
    en.run();
    if (en.improved) {
        out.length = en.best_inf;
        out.witness = en.best_vec;
    }
    out.exact = !en.aborted;
    return out;
}

}  // namespace mmo
