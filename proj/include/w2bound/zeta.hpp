#pragma once

// L-polynomial of a genus-3 curve over GF(p) from point counts over
// GF(p), GF(p^2), GF(p^3), via Newton's identities on the power sums
// P_k = p^k + 1 - n_k. The Jacobian order over GF(p) is L(1).

#include "curve.hpp"

#include <cmath>

namespace w2bound {

struct ZetaData {
    u64 n1 = 0, n2 = 0, n3 = 0;       // |C(GF(p^k))|
    std::array<i64, 7> l_coeffs{};    // L(T) coefficients, constant first
    u64 jacobian_order = 0;           // L(1) = |J(GF(p))|
};

inline ZetaData zeta_data(const CurveModP& C) {
    u64 p = C.p();
    ZetaData z;
    z.n1 = C.count_points(1);
    z.n2 = C.count_points(2);
    z.n3 = C.count_points(3);

    auto hasse_weil_check = [&](u64 nk, int k) {
        i64 pk = 1;
        for (int i = 0; i < k; ++i) pk *= i64(p);
        double bound = 6.0 * std::pow(double(p), k / 2.0);
        if (std::llabs(i64(nk) - pk - 1) > i64(std::floor(bound)) + 1)
            throw std::logic_error("internal consistency error: point count violates the Weil bound");
    };
    hasse_weil_check(z.n1, 1);
    hasse_weil_check(z.n2, 2);
    hasse_weil_check(z.n3, 3);

    i64 P1 = i64(p) + 1 - i64(z.n1);
    i64 P2 = i64(p) * i64(p) + 1 - i64(z.n2);
    i64 P3 = i64(p) * i64(p) * i64(p) + 1 - i64(z.n3);

    // Newton's identities for e_1, e_2, e_3 of the Frobenius eigenvalues.
    i64 e1 = P1;
    i64 num2 = e1 * P1 - P2;
    if (num2 % 2 != 0) throw std::logic_error("internal consistency error: e2 not integral");
    i64 e2 = num2 / 2;
    i64 num3 = P3 - e1 * P2 + e2 * P1;
    if (num3 % 3 != 0) throw std::logic_error("internal consistency error: e3 not integral");
    i64 e3 = num3 / 3;

    // L(T) = 1 - e1 T + e2 T^2 - e3 T^3 + p e2 T^4 - p^2 e1 T^5 + p^3 T^6
    // (functional equation fills in the top half).
    z.l_coeffs = {1, -e1, e2, -e3, i64(p) * e2, -i64(p) * i64(p) * e1,
                  i64(p) * i64(p) * i64(p)};

    i64 l1 = 0;
    for (i64 c : z.l_coeffs) l1 += c;
    if (l1 <= 0) throw std::logic_error("internal consistency error: nonpositive Jacobian order");
    z.jacobian_order = u64(l1);
    return z;
}

} // namespace w2bound
