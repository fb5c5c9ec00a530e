#include "equilattice/lattice.hpp"

#include <sstream>

#include "json.hpp"

namespace eql {

// defined in enumerate.cpp
BigInt min_nonzero_value(const GramMatrix& M, Int radius);

BigInt det_big(BMat m) {
    if (m.rows != m.cols) throw std::invalid_argument("det of non-square matrix");
    int n = m.rows;
    if (n == 0) return 1;
    // Bareiss fraction-free elimination with row pivoting
    BigInt prev = 1;
    int sign = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (m(k, k) == 0) {
            int p = -1;
            for (int i = k + 1; i < n; ++i)
                if (m(i, k) != 0) {
                    p = i;
                    break;
                }
            if (p < 0) return 0;
            for (int j = 0; j < n; ++j) std::swap(m(k, j), m(p, j));
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i) {
            for (int j = k + 1; j < n; ++j) {
                m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
            }
            m(i, k) = 0;
        }
        prev = m(k, k);
    }
    return sign > 0 ? m(n - 1, n - 1) : -m(n - 1, n - 1);
}

namespace {

// 64-bit Bareiss; throws overflow_error if intermediates do not fit
BigInt det_i64(IMat m) {
    int n = m.rows;
    if (n == 0) return 1;
    Int prev = 1;
    int sign = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (m(k, k) == 0) {
            int p = -1;
            for (int i = k + 1; i < n; ++i)
                if (m(i, k) != 0) {
                    p = i;
                    break;
                }
            if (p < 0) return 0;
            for (int j = 0; j < n; ++j) std::swap(m(k, j), m(p, j));
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i) {
            for (int j = k + 1; j < n; ++j) {
                Int num = checked_sub(checked_mul(m(i, j), m(k, k)), checked_mul(m(i, k), m(k, j)));
                m(i, j) = num / prev;
            }
            m(i, k) = 0;
        }
        prev = m(k, k);
    }
    return sign > 0 ? BigInt(m(n - 1, n - 1)) : BigInt(-m(n - 1, n - 1));
}

}  // namespace

BigInt det_exact(const IMat& m) {
    try {
        return det_i64(m);
    } catch (const overflow_error&) {
        return det_big(to_big(m));
    }
}

Inertia inertia(const IMat& sym) {
    if (!is_symmetric(sym)) throw std::invalid_argument("inertia: matrix not symmetric");
    int n = sym.rows;
    Mat<Rat> m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = Rat(sym(i, j));

    Inertia res;
    std::vector<bool> done(n, false);
    for (int step = 0; step < n; ++step) {
        // pick a remaining index with nonzero diagonal, fixing one up if needed
        int p = -1;
        for (int i = 0; i < n; ++i)
            if (!done[i] && m(i, i) != 0) {
                p = i;
                break;
            }
        if (p < 0) {
            // all remaining diagonal entries vanish; look for an off-diagonal
            int a = -1, b = -1;
            for (int i = 0; i < n && a < 0; ++i)
                for (int j = i + 1; j < n; ++j)
                    if (!done[i] && !done[j] && m(i, j) != 0) {
                        a = i;
                        b = j;
                        break;
                    }
            if (a < 0) {
                for (int i = 0; i < n; ++i)
                    if (!done[i]) ++res.zero;
                return res;
            }
            // replace e_a by e_a + e_b: new diagonal entry 2 m(a,b) != 0
            for (int j = 0; j < n; ++j) m(a, j) += m(b, j);
            for (int i = 0; i < n; ++i) m(i, a) += m(i, b);
            p = a;
        }
        Rat piv = m(p, p);
        if (piv > 0)
            ++res.pos;
        else
            ++res.neg;
        done[p] = true;
        // clear row/column p against the rest
        for (int i = 0; i < n; ++i) {
            if (done[i] || m(i, p) == 0) continue;
            Rat f = m(i, p) / piv;
            for (int j = 0; j < n; ++j) m(i, j) -= f * m(p, j);
            for (int j = 0; j < n; ++j) m(j, i) -= f * m(j, p);
        }
    }
    return res;
}

bool is_symmetric(const IMat& m) {
    if (m.rows != m.cols) return false;
    for (int i = 0; i < m.rows; ++i)
        for (int j = i + 1; j < m.cols; ++j)
            if (m(i, j) != m(j, i)) return false;
    return true;
}

bool is_positive_definite(const IMat& sym) {
    Inertia in = inertia(sym);
    return in.neg == 0 && in.zero == 0;
}

bool is_positive_semidefinite(const IMat& sym) {
    Inertia in = inertia(sym);
    return in.neg == 0;
}

QuadraticLattice QuadraticLattice::from_gram(IMat gram, std::string name) {
    if (!is_symmetric(gram)) throw std::invalid_argument("gram matrix not symmetric");
    if (det_exact(gram) == 0) throw std::invalid_argument("gram matrix degenerate");
    Inertia in = inertia(gram);
    QuadraticLattice L;
    L.dim = gram.rows;
    L.gram = std::move(gram);
    L.sig_pos = in.pos;
    L.sig_neg = in.neg;
    L.name = std::move(name);
    return L;
}

BigInt QuadraticLattice::bilinear(const std::vector<Int>& u, const std::vector<Int>& v) const {
    if (static_cast<int>(u.size()) != dim || static_cast<int>(v.size()) != dim)
        throw std::invalid_argument("bilinear: vector length != lattice dimension");
    try {
        Int acc = 0;
        for (int i = 0; i < dim; ++i) {
            if (u[i] == 0) continue;
            Int row = 0;
            for (int j = 0; j < dim; ++j) row = checked_add(row, checked_mul(gram(i, j), v[j]));
            acc = checked_add(acc, checked_mul(u[i], row));
        }
        return acc;
    } catch (const overflow_error&) {
        BigInt acc = 0;
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j) acc += BigInt(u[i]) * gram(i, j) * v[j];
        return acc;
    }
}

QuadraticLattice lattice_zn(int d) {
    return QuadraticLattice::from_gram(IMat::identity(d), "Z" + std::to_string(d));
}

QuadraticLattice lattice_a2() {
    return QuadraticLattice::from_gram(IMat(2, 2, {2, 1, 1, 2}), "A2");
}

QuadraticLattice lattice_hyperbolic() {
    return QuadraticLattice::from_gram(IMat(2, 2, {0, 1, 1, 0}), "U");
}

QuadraticLattice lattice_minkowski(int p, int q) {
    IMat g(p + q, p + q);
    for (int i = 0; i < p; ++i) g(i, i) = 1;
    for (int i = p; i < p + q; ++i) g(i, i) = -1;
    return QuadraticLattice::from_gram(std::move(g),
                                       "I" + std::to_string(p) + "," + std::to_string(q));
}

QuadraticLattice direct_sum(const QuadraticLattice& a, const QuadraticLattice& b) {
    IMat g(a.dim + b.dim, a.dim + b.dim);
    for (int i = 0; i < a.dim; ++i)
        for (int j = 0; j < a.dim; ++j) g(i, j) = a.gram(i, j);
    for (int i = 0; i < b.dim; ++i)
        for (int j = 0; j < b.dim; ++j) g(a.dim + i, a.dim + j) = b.gram(i, j);
    return QuadraticLattice::from_gram(std::move(g), a.name + "+" + b.name);
}

std::string lattice_to_json(const QuadraticLattice& L) {
    nlohmann::json j;
    auto rows = nlohmann::json::array();
    for (int i = 0; i < L.dim; ++i) {
        auto row = nlohmann::json::array();
        for (int k = 0; k < L.dim; ++k) row.push_back(L.gram(i, k));
        rows.push_back(row);
    }
    j["gram"] = rows;
    j["name"] = L.name;
    return j.dump();
}

QuadraticLattice lattice_from_json(const std::string& text) {
    auto j = nlohmann::json::parse(text);
    auto rows = j.at("gram");
    int d = static_cast<int>(rows.size());
    IMat g(d, d);
    for (int i = 0; i < d; ++i) {
        if (static_cast<int>(rows[i].size()) != d)
            throw std::invalid_argument("gram matrix not square");
        for (int k = 0; k < d; ++k) g(i, k) = rows[i][k].get<Int>();
    }
    return QuadraticLattice::from_gram(std::move(g), j.value("name", ""));
}

GramMatrix gram_of_tuple(const QuadraticLattice& L, const VectorTuple& t) {
    if (t.cols.rows != L.dim) throw std::invalid_argument("tuple dimension mismatch");
    int r = t.rank();
    IMat g(r, r);
    for (int i = 0; i < r; ++i) {
        auto vi = t.vec(i);
        for (int j = i; j < r; ++j) {
            BigInt b = L.bilinear(vi, t.vec(j));
            if (b > std::numeric_limits<Int>::max() || b < std::numeric_limits<Int>::min())
                throw overflow_error{};
            g(i, j) = static_cast<Int>(b);
            g(j, i) = g(i, j);
        }
    }
    return g;
}

BigInt discriminant(const QuadraticLattice& L, const VectorTuple& t) {
    return det_exact(gram_of_tuple(L, t));
}

bool in_positive_cone(const QuadraticLattice& L, const VectorTuple& t) {
    return is_positive_definite(gram_of_tuple(L, t));
}

BigInt mu1_squared(const GramMatrix& M) {
    if (!is_positive_definite(M)) throw std::invalid_argument("mu1: M not positive definite");
    // e_i represents M_ii, so the minimum is reached inside that radius
    Int bound = M(0, 0);
    for (int i = 1; i < M.rows; ++i) bound = std::min(bound, M(i, i));
    return min_nonzero_value(M, bound);
}

double mu1(const GramMatrix& M) {
    return std::sqrt(static_cast<double>(mu1_squared(M)));
}

}  // namespace eql
