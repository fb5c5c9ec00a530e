#include "equilattice/hnf.hpp"

namespace eql {

namespace {

void negate_col(BMat& m, int j) {
    for (int i = 0; i < m.rows; ++i) m(i, j) = -m(i, j);
}

// col_j -= q * col_k
void axpy_col(BMat& m, int j, int k, const BigInt& q) {
    if (q == 0) return;
    for (int i = 0; i < m.rows; ++i) m(i, j) -= q * m(i, k);
}

void swap_cols(BMat& m, int j, int k) {
    for (int i = 0; i < m.rows; ++i) std::swap(m(i, j), m(i, k));
}

BigInt floor_div(const BigInt& a, const BigInt& b) {
    BigInt q = a / b, r = a % b;
    if (r != 0 && ((r < 0) != (b < 0))) --q;
    return q;
}

}  // namespace

BMat column_hnf(const BMat& A) {
    BMat m = A;
    int d = m.rows, r = m.cols;
    int col = 0;
    for (int row = 0; row < d && col < r; ++row) {
        // gcd-eliminate entries of this row in columns col..r-1 into column col
        for (;;) {
            int p = -1;
            BigInt best = 0;
            for (int j = col; j < r; ++j) {
                if (m(row, j) == 0) continue;
                BigInt v = abs(m(row, j));
                if (p < 0 || v < best) {
                    p = j;
                    best = v;
                }
            }
            if (p < 0) break;  // row is zero on the working columns
            if (p != col) swap_cols(m, col, p);
            if (m(row, col) < 0) negate_col(m, col);
            bool clean = true;
            for (int j = col + 1; j < r; ++j) {
                if (m(row, j) == 0) continue;
                BigInt q = floor_div(m(row, j), m(row, col));
                axpy_col(m, j, col, q);
                if (m(row, j) != 0) clean = false;
            }
            if (clean) break;
        }
        if (m(row, col) == 0) continue;  // no pivot in this row
        // reduce earlier columns at the pivot row into [0, pivot)
        for (int j = 0; j < col; ++j) {
            BigInt q = floor_div(m(row, j), m(row, col));
            axpy_col(m, j, col, q);
        }
        ++col;
    }
    if (col != r) throw std::invalid_argument("column_hnf: matrix not of full column rank");
    return m;
}

IMat column_hnf(const IMat& A) { return to_int_checked(column_hnf(to_big(A))); }

SmithResult smith_normal_form(const BMat& A) {
    int d = A.rows, r = A.cols;
    BMat S = A;
    BMat U = BMat::identity(d);  // row ops accumulate inverse-style: A = U S V
    BMat V = BMat::identity(r);

    auto row_axpy = [&](BMat& m, int i, int k, const BigInt& q) {
        if (q == 0) return;
        for (int j = 0; j < m.cols; ++j) m(i, j) -= q * m(k, j);
    };
    auto row_swap = [&](BMat& m, int i, int k) {
        for (int j = 0; j < m.cols; ++j) std::swap(m(i, j), m(k, j));
    };

    int lim = std::min(d, r);
    int rank = 0;
    int start = 0;
    for (;;) {
        int t = start;
        while (t < lim) {
            // find a nonzero pivot in the working block
            int pi = -1, pj = -1;
            BigInt best = 0;
            for (int i = t; i < d; ++i)
                for (int j = t; j < r; ++j) {
                    if (S(i, j) == 0) continue;
                    BigInt v = abs(S(i, j));
                    if (pi < 0 || v < best) {
                        pi = i;
                        pj = j;
                        best = v;
                    }
                }
            if (pi < 0) break;
            if (pi != t) {
                row_swap(S, pi, t);
                // A = U S V stays valid when we swap columns pi,t of U
                swap_cols(U, pi, t);
            }
            if (pj != t) {
                swap_cols(S, pj, t);
                row_swap(V, pj, t);
            }
            bool again = false;
            for (int i = t + 1; i < d; ++i) {
                if (S(i, t) == 0) continue;
                BigInt q = floor_div(S(i, t), S(t, t));
                row_axpy(S, i, t, q);
                for (int k = 0; k < d; ++k) U(k, t) += q * U(k, i);
                if (S(i, t) != 0) again = true;
            }
            for (int j = t + 1; j < r; ++j) {
                if (S(t, j) == 0) continue;
                BigInt q = floor_div(S(t, j), S(t, t));
                axpy_col(S, j, t, q);
                for (int k = 0; k < r; ++k) V(t, k) += q * V(j, k);
                if (S(t, j) != 0) again = true;
            }
            if (again) continue;
            if (S(t, t) < 0) {
                for (int j = 0; j < r; ++j) S(t, j) = -S(t, j);
                negate_col(U, t);
            }
            ++t;
        }
        rank = t;
        // enforce the divisibility chain; a violation sends the offender back
        // into the elimination block
        int viol = -1;
        for (int i = 0; i + 1 < rank && viol < 0; ++i)
            if (S(i + 1, i + 1) % S(i, i) != 0) viol = i;
        if (viol < 0) break;
        // col_viol += col_{viol+1}, then re-eliminate from position viol
        for (int i = 0; i < d; ++i) S(i, viol) += S(i, viol + 1);
        for (int k = 0; k < r; ++k) V(viol + 1, k) -= V(viol, k);
        start = viol;
    }
    SmithResult res;
    int t = rank;
    res.diag.resize(t);
    for (int i = 0; i < t; ++i) res.diag[i] = S(i, i);
    res.U = U;
    res.V = V;
    return res;
}

SublatticeHNF make_sublattice(const QuadraticLattice& L, const IMat& generators) {
    if (generators.rows != L.dim) throw std::invalid_argument("sublattice: dimension mismatch");
    IMat h = column_hnf(generators);
    SublatticeHNF s;
    s.basis = h;
    VectorTuple t{h};
    s.disc = discriminant(L, t);
    auto [sat, idx] = primitive_closure(L, s);
    s.primitive = (idx == 1);
    s.index_in_saturation = idx;
    return s;
}

std::pair<SublatticeHNF, BigInt> primitive_closure(const QuadraticLattice& L,
                                                   const SublatticeHNF& s) {
    int r = s.basis.cols;
    SmithResult sm = smith_normal_form(to_big(s.basis));
    if (static_cast<int>(sm.diag.size()) != r)
        throw std::invalid_argument("primitive_closure: basis not of full rank");
    BigInt index = 1;
    for (auto& v : sm.diag) index *= v;
    // saturation is spanned by the first r columns of U
    BMat satb(s.basis.rows, r);
    for (int i = 0; i < s.basis.rows; ++i)
        for (int j = 0; j < r; ++j) satb(i, j) = sm.U(i, j);
    IMat sat_hnf = to_int_checked(column_hnf(satb));
    SublatticeHNF sat;
    sat.basis = sat_hnf;
    sat.disc = discriminant(L, VectorTuple{sat_hnf});
    sat.primitive = true;
    sat.index_in_saturation = 1;
    return {sat, index};
}

}  // namespace eql
