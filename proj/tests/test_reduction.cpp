#include "mmo/reduction.hpp"
#include "support.hpp"

#include <doctest.h>

using namespace mmo;
using namespace mmo::testing;

namespace {

IntMatrix from_rows(const std::vector<IntVec>& rows) {
    IntMatrix m(rows.size(), rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
    return m;
}

// All LLL output invariants, checked against a from-scratch Gram-Schmidt.
void check_reduced(const IntMatrix& input, const ReducedBasis& rb) {
    const std::size_t n = rb.dim();
    // transform is unimodular and maps input to output
    CHECK(abs(det_bareiss(rb.transform)) == 1);
    IntMatrix mapped = mul(rb.transform, input);
    CHECK(mapped == rb.basis);

    GsoRef ref = gso_reference(rb.basis);
    for (std::size_t i = 0; i < n; ++i) {
        CHECK(rb.gs_norm_sq[i] == ref.norms_sq[i]);
        for (std::size_t j = 0; j < i; ++j) {
            CHECK(rb.mu(i, j) == ref.mu(i, j));
            CHECK(2 * abs(ref.mu(i, j)) <= 1);
        }
    }
    for (std::size_t i = 1; i < n; ++i) {
        BigRat lhs = ref.norms_sq[i] + ref.mu(i, i - 1) * ref.mu(i, i - 1) * ref.norms_sq[i - 1];
        CHECK(lhs >= rb.eps * ref.norms_sq[i - 1]);
    }
}

}  // namespace

TEST_SUITE_BEGIN("reduction");

TEST_CASE("lll on the 2x2 example finds the shortest vector") {
    IntMatrix basis = from_rows({{5, 0}, {4, 1}});
    ReducedBasis rb = lll(basis);
    check_reduced(basis, rb);
    IntVec first = rb.basis.row(0);
    CHECK(l2_norm_sq(first) == 2);  // +-(-1, 1)
    // brute-force shortest vector over the coefficient box |a|,|b| <= 6
    BigInt best = l2_norm_sq(first);
    for (int a = -6; a <= 6; ++a)
        for (int b = -6; b <= 6; ++b) {
            if (a == 0 && b == 0) continue;
            IntVec v{5 * a + 4 * b, BigInt(b)};
            if (l2_norm_sq(v) < best) best = l2_norm_sq(v);
        }
    CHECK(l2_norm_sq(first) == best);
}

TEST_CASE("lll leaves reduced bases unchanged") {
    IntMatrix id = IntMatrix::identity(4);
    ReducedBasis rb = lll(id);
    CHECK(rb.basis == id);
    CHECK(rb.transform == id);

    IntMatrix scaled(2, 2);
    scaled(0, 0) = 1'000'000;
    scaled(1, 1) = 1'000'000;
    CHECK(lll(scaled).basis == scaled);
}

TEST_CASE("lll rejects dependent rows and bad eps") {
    IntMatrix dep = from_rows({{1, 2}, {2, 4}});
    CHECK_THROWS_AS(lll(dep), std::invalid_argument);
    IntMatrix zero = from_rows({{0, 0}, {0, 1}});
    CHECK_THROWS_AS(lll(zero), std::invalid_argument);
    IntMatrix ok = IntMatrix::identity(2);
    CHECK_THROWS_AS(lll(ok, BigRat(1)), std::invalid_argument);
    CHECK_THROWS_AS(lll(ok, make_rat(1, 4)), std::invalid_argument);
}

TEST_CASE("lll invariants on random bases") {
    SeededRng rng(2024);
    for (int t = 0; t < 30; ++t) {
        std::size_t n = 2 + static_cast<std::size_t>(rng.next_u64() % 5);
        IntMatrix basis = random_basis(rng, n, BigInt(1) << 20);
        ReducedBasis rb = lll(basis);
        check_reduced(basis, rb);
    }
}

TEST_CASE("lll determinism") {
    SeededRng rng(8);
    IntMatrix basis = random_basis(rng, 5, 1 << 16);
    ReducedBasis a = lll(basis), b = lll(basis);
    CHECK(a.basis == b.basis);
    CHECK(a.transform == b.transform);
}

TEST_CASE("lll first vector within 2^((d-1)/2) of the shortest (small d oracle)") {
    SeededRng rng(55);
    for (int t = 0; t < 8; ++t) {
        std::size_t n = 2 + static_cast<std::size_t>(rng.next_u64() % 2);
        IntMatrix basis = random_basis(rng, n, 40);
        ReducedBasis rb = lll(basis);
        BigRat len = BigRat(l2_norm_sq(rb.basis.row(0)));
        BigRat shortest_inf = brute_force_svp_inf(basis, BigRat(inf_norm(rb.basis.row(0))));
        // ||b1||_2^2 <= 2^(n-1) lambda_2^2 and lambda_2^2 <= n lambda_inf^2
        BigRat bound = BigRat(BigInt(1) << (n - 1)) * BigRat(static_cast<long>(n)) *
                       shortest_inf * shortest_inf;
        CHECK(len <= bound);
    }
}

TEST_CASE("babai on trivial lattices") {
    ReducedBasis rb = lll(IntMatrix::identity(2));
    CvpResult r = babai_nearest_plane(rb, {make_rat(2, 5), make_rat(3, 5)});
    CHECK(r.lattice_vec == IntVec{0, 1});
    CHECK(r.residual_inf == make_rat(2, 5));

    // a target equal to a lattice point has zero residual
    CvpResult exact = babai_nearest_plane(rb, {BigRat(3), BigRat(-2)});
    CHECK(exact.residual_inf == 0);
    CHECK(exact.lattice_vec == IntVec{3, -2});

    CHECK_THROWS_AS(babai_nearest_plane(rb, RatVec(3, BigRat(0))), std::invalid_argument);
}

TEST_CASE("babai residual has Gram-Schmidt coordinates in [-1/2, 1/2]") {
    SeededRng rng(91);
    for (int t = 0; t < 15; ++t) {
        std::size_t n = 2 + static_cast<std::size_t>(rng.next_u64() % 4);
        IntMatrix basis = random_basis(rng, n, 500);
        ReducedBasis rb = lll(basis);
        RatVec target(n);
        for (auto& x : target) x = make_rat(rng.in_range(-4000, 4000), rng.in_range(1, 9));
        CvpResult r = babai_nearest_plane(rb, target);
        GsoRef ref = gso_reference(rb.basis);
        for (std::size_t j = 0; j < n; ++j) {
            BigRat num = 0;
            for (std::size_t c = 0; c < n; ++c) num += r.residual[c] * ref.bstar(j, c);
            BigRat coord = num / ref.norms_sq[j];
            CHECK(2 * abs(coord) <= 1);
        }
        // reported norms match the residual
        CHECK(r.residual_inf == inf_norm(r.residual));
        CHECK(r.residual_l2_sq == l2_norm_sq(r.residual));
        // coefficients reproduce the vector
        IntVec v = mul_vec(r.coeffs, rb.basis);
        CHECK(v == r.lattice_vec);
    }
}

TEST_CASE("babai within 2^(d/2) of exhaustive CVP") {
    SeededRng rng(123);
    for (int t = 0; t < 10; ++t) {
        std::size_t n = 2 + static_cast<std::size_t>(rng.next_u64() % 3);
        IntMatrix basis = random_basis(rng, n, 60);
        ReducedBasis rb = lll(basis);
        RatVec target(n);
        for (auto& x : target) x = make_rat(rng.in_range(-500, 500), rng.in_range(1, 7));
        CvpResult r = babai_nearest_plane(rb, target);
        BruteCvp brute = brute_force_cvp(basis, target, r.residual_l2_sq);
        CHECK(r.residual_l2_sq <= BigRat(BigInt(1) << n) * brute.best_l2_sq);
    }
}

TEST_CASE("refinement examples") {
    // start already exact: unchanged
    ReducedBasis rb = lll(IntMatrix::identity(3));
    RatVec target{BigRat(4), BigRat(-1), BigRat(7)};
    CvpResult start = babai_nearest_plane(rb, target);
    CHECK(start.residual_inf == 0);
    CvpResult refined = cvp_infinity_refine(rb, target, start);
    CHECK(refined.residual_inf == 0);
    CHECK(refined.lattice_vec == start.lattice_vec);
    CHECK(refined.status == CvpStatus::proved_within_budget);

    // 2-dim lattice (2,0),(0,2), target (1, 0.9): best infinity distance is 1
    IntMatrix two(2, 2);
    two(0, 0) = 2;
    two(1, 1) = 2;
    ReducedBasis rb2 = lll(two);
    RatVec t2{BigRat(1), make_rat(9, 10)};
    CvpResult s2 = babai_nearest_plane(rb2, t2);
    CvpResult r2 = cvp_infinity_refine(rb2, t2, s2);
    CHECK(r2.residual_inf == 1);
    CHECK(r2.residual_inf <= s2.residual_inf);
}

TEST_CASE("refinement matches exhaustive infinity-norm CVP when complete") {
    SeededRng rng(321);
    for (int t = 0; t < 12; ++t) {
        std::size_t n = 2 + static_cast<std::size_t>(rng.next_u64() % 4);  // up to 5
        IntMatrix basis = random_basis(rng, n, 50);
        ReducedBasis rb = lll(basis);
        RatVec target(n);
        for (auto& x : target) x = make_rat(rng.in_range(-400, 400), rng.in_range(1, 5));
        CvpResult start = babai_nearest_plane(rb, target);
        CvpResult refined = cvp_infinity_refine(rb, target, start);
        CHECK(refined.residual_inf <= start.residual_inf);
        if (refined.status == CvpStatus::proved_within_budget) {
            BigRat radius = BigRat(static_cast<long>(n)) * start.residual_inf *
                            start.residual_inf;
            BruteCvp brute = brute_force_cvp(basis, target, radius);
            CHECK(refined.residual_inf == brute.best_inf);
        }
    }
}

TEST_CASE("refinement respects the node budget") {
    SeededRng rng(77);
    IntMatrix basis = random_basis(rng, 5, 1000);
    ReducedBasis rb = lll(basis);
    RatVec target(5);
    for (auto& x : target) x = make_rat(rng.in_range(-100000, 100000), 7);
    CvpResult start = babai_nearest_plane(rb, target);
    RefineOptions opts;
    opts.node_budget = 3;
    CvpResult r = cvp_infinity_refine(rb, target, start, opts);
    CHECK(r.status == CvpStatus::budget_exhausted);
    CHECK(r.residual_inf <= start.residual_inf);
    CHECK(r.nodes <= 4);
}

TEST_CASE("shortest vector probe exact cases") {
    IntMatrix three = IntMatrix::identity(3);
    for (std::size_t i = 0; i < 3; ++i) three(i, i) = 3;
    SvProbe p = shortest_vector_probe(lll(three));
    CHECK(p.length == 3);
    CHECK(p.exact);

    SvProbe unit = shortest_vector_probe(lll(IntMatrix::identity(2)));
    CHECK(unit.length == 1);
    CHECK(unit.exact);
}

TEST_CASE("shortest vector probe equals brute force on random bases") {
    SeededRng rng(444);
    for (int t = 0; t < 10; ++t) {
        std::size_t n = 2 + static_cast<std::size_t>(rng.next_u64() % 3);
        IntMatrix basis = random_basis(rng, n, 30);
        ReducedBasis rb = lll(basis);
        SvProbe p = shortest_vector_probe(rb);
        REQUIRE(p.exact);
        CHECK(p.length == brute_force_svp_inf(basis, p.length + 1));
        CHECK(inf_norm(p.witness) == p.length);
    }
}

TEST_CASE("shortest vector probe falls back to a row bound in high dimension") {
    SeededRng rng(7);
    IntMatrix basis = random_basis(rng, 4, 50);
    ReducedBasis rb = lll(basis);
    SvProbe p = shortest_vector_probe(rb, 2);  // limit below the dimension
    CHECK(!p.exact);
    BigRat best_row = BigRat(inf_norm(rb.basis.row(0)));
    for (std::size_t i = 1; i < 4; ++i) {
        BigRat v = BigRat(inf_norm(rb.basis.row(i)));
        if (v < best_row) best_row = v;
    }
    CHECK(p.length == best_row);
}

TEST_SUITE_END();
