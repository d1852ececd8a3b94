#include "mmo/matrix.hpp"

namespace mmo {

BigInt det_bareiss(IntMatrix m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("det: matrix not square");
    const std::size_t n = m.rows();
    if (n == 0) return 1;

    BigInt prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m(k, k) == 0) {
            std::size_t r = k + 1;
            while (r < n && m(r, k) == 0) ++r;
            if (r == n) return 0;
            for (std::size_t j = 0; j < n; ++j) swap(m(k, j), m(r, j));
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                BigInt t = m(i, j) * m(k, k) - m(i, k) * m(k, j);
                m(i, j) = divexact(t, prev);
            }
            m(i, k) = 0;
        }
        prev = m(k, k);
    }
    return sign < 0 ? BigInt(-m(n - 1, n - 1)) : m(n - 1, n - 1);
}

BigRat det_rational(const RatMatrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("det: matrix not square");
    const std::size_t n = m.rows();
    IntMatrix scaled(n, n);
    BigInt denom = 1;
    for (std::size_t i = 0; i < n; ++i) {
        BigInt l = 1;
        for (std::size_t j = 0; j < n; ++j)
            mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(i, j).get_den().get_mpz_t());
        for (std::size_t j = 0; j < n; ++j) {
            BigRat e = m(i, j) * l;
            scaled(i, j) = e.get_num();  // denominator is 1 after scaling by the row lcm
        }
        denom *= l;
    }
    return make_rat(det_bareiss(std::move(scaled)), denom);
}

}  // namespace mmo
