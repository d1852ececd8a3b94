#pragma once

// Test-only oracles, kept independent of the library's reduction internals:
// reference Gram-Schmidt from scratch, exact matrix inverse, and exhaustive
// closest/shortest vector search over provably sufficient coefficient boxes.

#include "mmo/instance.hpp"
#include "mmo/lattice.hpp"
#include "mmo/matrix.hpp"
#include "mmo/rng.hpp"

#include <stdexcept>
#include <vector>

namespace mmo::testing {

struct GsoRef {
    RatMatrix bstar;
    RatMatrix mu;     // mu(i,j) for j < i
    RatVec norms_sq;  // ||b*_i||^2
};

inline GsoRef gso_reference(const IntMatrix& basis) {
    const std::size_t n = basis.rows(), s = basis.cols();
    GsoRef g{RatMatrix(n, s), RatMatrix(n, n), RatVec(n)};
    for (std::size_t i = 0; i < n; ++i) {
        RatVec row(s);
        for (std::size_t t = 0; t < s; ++t) row[t] = BigRat(basis(i, t));
        for (std::size_t j = 0; j < i; ++j) {
            BigRat num = 0;
            for (std::size_t t = 0; t < s; ++t) num += BigRat(basis(i, t)) * g.bstar(j, t);
            BigRat m = num / g.norms_sq[j];
            g.mu(i, j) = m;
            for (std::size_t t = 0; t < s; ++t) row[t] -= m * g.bstar(j, t);
        }
        BigRat nsq = 0;
        for (std::size_t t = 0; t < s; ++t) nsq += row[t] * row[t];
        g.norms_sq[i] = nsq;
        for (std::size_t t = 0; t < s; ++t) g.bstar(i, t) = row[t];
    }
    return g;
}

// Gauss-Jordan inverse; throws on singular input.
inline RatMatrix rat_inverse(RatMatrix m) {
    const std::size_t n = m.rows();
    if (m.cols() != n) throw std::invalid_argument("rat_inverse: not square");
    RatMatrix inv = RatMatrix(n, n);
    for (std::size_t i = 0; i < n; ++i) inv(i, i) = 1;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && m(piv, col) == 0) ++piv;
        if (piv == n) throw std::invalid_argument("rat_inverse: singular");
        if (piv != col)
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(m(piv, j), m(col, j));
                std::swap(inv(piv, j), inv(col, j));
            }
        BigRat d = m(col, col);
        for (std::size_t j = 0; j < n; ++j) {
            m(col, j) /= d;
            inv(col, j) /= d;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == col || m(i, col) == 0) continue;
            BigRat f = m(i, col);
            for (std::size_t j = 0; j < n; ++j) {
                m(i, j) -= f * m(col, j);
                inv(i, j) -= f * inv(col, j);
            }
        }
    }
    return inv;
}

inline BigInt ceil_sqrt(const BigRat& x) {
    if (x <= 0) return 0;
    BigInt q = x.get_num() / x.get_den() + 1;
    BigInt r, rem;
    mpz_sqrtrem(r.get_mpz_t(), rem.get_mpz_t(), q.get_mpz_t());
    while (BigRat(r * r) < x) r += 1;
    while (r > 0 && BigRat((r - 1) * (r - 1)) >= x) r -= 1;
    return r;
}

struct BruteCvp {
    IntVec best_l2_vec, best_inf_vec;
    BigRat best_l2_sq{-1}, best_inf{-1};
    std::uint64_t visited = 0;
};

// Exhaustive CVP over a full-rank square basis. radius_l2_sq must bound the
// squared Euclidean distance of the optima being sought; every lattice vector
// within that distance lies inside the enumerated coefficient box:
// |c_j - c*_j| = |((v - target) B^-1)_j| <= ||v - target||_2 * ||col_j(B^-1)||_2.
inline BruteCvp brute_force_cvp(const IntMatrix& basis, const RatVec& target,
                                const BigRat& radius_l2_sq, std::uint64_t guard = 80'000'000) {
    const std::size_t n = basis.rows();
    if (basis.cols() != n) throw std::invalid_argument("brute_force_cvp: basis must be square");

    RatMatrix binv = rat_inverse(to_rat(basis));
    RatVec cstar(n, BigRat(0));
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i) cstar[j] += target[i] * binv(i, j);

    std::vector<BigInt> lo(n), hi(n);
    BigInt volume = 1;
    for (std::size_t j = 0; j < n; ++j) {
        BigRat colsq = 0;
        for (std::size_t i = 0; i < n; ++i) colsq += binv(i, j) * binv(i, j);
        BigInt w = ceil_sqrt(radius_l2_sq * colsq);
        lo[j] = floor_rat(cstar[j]) - w;
        hi[j] = floor_rat(cstar[j]) + 1 + w;
        volume *= hi[j] - lo[j] + 1;
        if (volume > guard) throw std::invalid_argument("brute_force_cvp: box too large");
    }

    BruteCvp out;
    IntVec coeff = IntVec(lo.begin(), lo.end());
    for (;;) {
        IntVec v(n, BigInt(0));
        for (std::size_t j = 0; j < n; ++j) {
            if (coeff[j] == 0) continue;
            for (std::size_t t = 0; t < n; ++t) v[t] += coeff[j] * basis(j, t);
        }
        BigRat l2 = 0, inf = 0;
        for (std::size_t t = 0; t < n; ++t) {
            BigRat d = target[t] - BigRat(v[t]);
            l2 += d * d;
            BigRat a = abs(d);
            if (a > inf) inf = a;
        }
        ++out.visited;
        if (out.best_l2_sq < 0 || l2 < out.best_l2_sq) {
            out.best_l2_sq = l2;
            out.best_l2_vec = v;
        }
        if (out.best_inf < 0 || inf < out.best_inf) {
            out.best_inf = inf;
            out.best_inf_vec = v;
        }
        std::size_t j = 0;
        while (j < n) {
            coeff[j] += 1;
            if (coeff[j] <= hi[j]) break;
            coeff[j] = lo[j];
            ++j;
        }
        if (j >= n) break;
    }
    return out;
}

// Exact infinity-norm shortest nonzero vector, radius seeded from a known
// lattice vector length.
inline BigRat brute_force_svp_inf(const IntMatrix& basis, const BigRat& known_inf) {
    const std::size_t n = basis.rows();
    RatMatrix binv = rat_inverse(to_rat(basis));
    // any candidate with ||v||_inf <= known has ||v||_2^2 <= s*known^2
    BigRat radius = BigRat(static_cast<long>(basis.cols())) * known_inf * known_inf;
    std::vector<BigInt> width(n);
    BigInt volume = 1;
    for (std::size_t j = 0; j < n; ++j) {
        BigRat colsq = 0;
        for (std::size_t i = 0; i < n; ++i) colsq += binv(i, j) * binv(i, j);
        width[j] = ceil_sqrt(radius * colsq);
        volume *= 2 * width[j] + 1;
        if (volume > 80'000'000) throw std::invalid_argument("brute_force_svp: box too large");
    }
    IntVec coeff(n);
    for (std::size_t j = 0; j < n; ++j) coeff[j] = -width[j];
    BigRat best = known_inf;
    for (;;) {
        bool zerov = true;
        for (std::size_t j = 0; j < n; ++j)
            if (coeff[j] != 0) {
                zerov = false;
                break;
            }
        if (!zerov) {
            BigRat inf = 0;
            for (std::size_t t = 0; t < basis.cols(); ++t) {
                BigInt acc = 0;
                for (std::size_t j = 0; j < n; ++j) acc += coeff[j] * basis(j, t);
                BigRat a = abs(BigRat(acc));
                if (a > inf) inf = a;
            }
            if (inf < best) best = inf;
        }
        std::size_t j = 0;
        while (j < n) {
            coeff[j] += 1;
            if (coeff[j] <= width[j]) break;
            coeff[j] = -width[j];
            ++j;
        }
        if (j >= n) break;
    }
    return best;
}

// Ground-truth lattice embedding (r, t, -l1, -l2) of an instance, with
// centered coefficients.
inline IntVec truth_vector(const LatticeSystem& sys, const MmoInstance& inst) {
    const std::size_t a = sys.block, c = sys.c;
    Poly fc = centered_coeffs(inst.f, inst.p);
    Poly gc = centered_coeffs(inst.g, inst.q);
    IntVec x(2 * (a + c), BigInt(0));
    for (std::size_t k = 0; k < a; ++k) {
        unsigned deg = sys.affine ? static_cast<unsigned>(k) : static_cast<unsigned>(k) + 1;
        x[k] = fc.coeff(deg);
        x[a + k] = gc.coeff(deg);
    }
    for (std::size_t i = 0; i < c; ++i) {
        BigInt fx = 0, gx = 0;
        for (std::size_t k = 0; k < a; ++k) {
            fx += x[k] * sys.powers(k, i);
            gx += x[a + k] * sys.powers(k, i);
        }
        x[2 * a + i] = -floor_div(fx, sys.p);
        x[2 * a + c + i] = -floor_div(gx, sys.q);
    }
    return x;
}

inline IntMatrix random_basis(SeededRng& rng, std::size_t n, const BigInt& bound) {
    for (;;) {
        IntMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) m(i, j) = rng.in_range(-bound, bound);
        if (det_bareiss(m) != 0) return m;
    }
}

}  // namespace mmo::testing
