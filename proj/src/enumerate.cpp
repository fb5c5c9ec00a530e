#include "equilattice/enumerate.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace eql {

namespace {

// Exact rational Cholesky-type decomposition of a positive definite form:
// Q(x) = sum_i D_i (x_i + sum_{j>i} R_ij x_j)^2.
struct RationalCholesky {
    int n;
    std::vector<Rat> D;             // positive
    std::vector<std::vector<Rat>> R;  // unit upper triangular, R[i][j] for j > i

    explicit RationalCholesky(const IMat& M) : n(M.rows), D(n), R(n, std::vector<Rat>(n, Rat(0))) {
        std::vector<std::vector<Rat>> q(n, std::vector<Rat>(n));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) q[i][j] = Rat(M(i, j));
        for (int i = 0; i < n; ++i) {
            D[i] = q[i][i];
            if (D[i] <= 0) throw std::invalid_argument("form not positive definite");
            for (int j = i + 1; j < n; ++j) R[i][j] = q[i][j] / D[i];
            for (int k = i + 1; k < n; ++k)
                for (int l = k; l < n; ++l) {
                    q[k][l] -= D[i] * R[i][k] * R[i][l];
                    q[l][k] = q[k][l];
                }
        }
    }
};

// integer range [lo, hi] with D (x - c)^2 <= T, exact
void level_range(const Rat& D, const Rat& c, const Rat& T, Int& lo, Int& hi) {
    if (T < 0) {
        lo = 0;
        hi = -1;
        return;
    }
    double cd = static_cast<double>(c);
    double sd = std::sqrt(std::max(0.0, static_cast<double>(T / D)));
    lo = static_cast<Int>(std::ceil(cd - sd)) - 2;
    hi = static_cast<Int>(std::floor(cd + sd)) + 2;
    auto ok = [&](Int x) {
        Rat dx = Rat(x) - c;
        return D * dx * dx <= T;
    };
    while (lo <= hi && !ok(lo)) ++lo;
    while (lo <= hi && !ok(hi)) --hi;
    // the approximate start can only be off by the slack used above
    while (ok(lo - 1)) --lo;
    while (ok(hi + 1)) ++hi;
}

// Generic Fincke-Pohst over the exact decomposition. Visits every x with
// Q(x) <= bound, including x = 0; the caller filters.
struct FpExact {
    const RationalCholesky& ch;
    Rat bound;
    std::vector<Int> x;
    std::vector<Rat> center;  // c_i at the current partial assignment
    const std::function<void(const std::vector<Int>&, const Rat&)>& emit;

    FpExact(const RationalCholesky& c, Rat b,
            const std::function<void(const std::vector<Int>&, const Rat&)>& e)
        : ch(c), bound(std::move(b)), x(c.n, 0), center(c.n, Rat(0)), emit(e) {}

    void run() { descend(ch.n - 1, bound); }

    void descend(int i, const Rat& budget) {
        Rat c = 0;
        for (int j = i + 1; j < ch.n; ++j) c -= ch.R[i][j] * x[j];
        Int lo, hi;
        level_range(ch.D[i], c, budget, lo, hi);
        for (Int v = lo; v <= hi; ++v) {
            x[i] = v;
            Rat dx = Rat(v) - c;
            Rat used = ch.D[i] * dx * dx;
            if (i == 0)
                emit(x, bound - (budget - used));
            else
                descend(i - 1, budget - used);
        }
        x[i] = 0;
    }
};

bool is_diagonal(const IMat& m) {
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j)
            if (i != j && m(i, j) != 0) return false;
    return true;
}

// Sylvester test by exact leading minors; cheaper than the full inertia
// computation in enumeration loops
bool leading_minors_positive(const IMat& g) {
    for (int k = 1; k <= g.rows; ++k) {
        IMat sub(k, k);
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j) sub(i, j) = g(i, j);
        if (det_exact(sub) <= 0) return false;
    }
    return true;
}

// Fast path for diagonal positive Gram matrices (covers Z^d): pure int64.
void enumerate_diagonal(const IMat& g, Int n, const VectorVisitor& fn) {
    int d = g.rows;
    std::vector<Int> diag(d);
    for (int i = 0; i < d; ++i) diag[i] = g(i, i);
    std::vector<Int> v(d, 0);
    // recursion from the last coordinate down, norm accumulated exactly
    std::function<void(int, Int)> rec = [&](int i, Int rem) {
        if (i < 0) {
            bool zero = std::all_of(v.begin(), v.end(), [](Int a) { return a == 0; });
            if (!zero) fn(v, n - rem);
            return;
        }
        Int c = diag[i];
        Int m = isqrt_floor(rem / c);
        while (c * (m + 1) * (m + 1) <= rem) ++m;
        while (m > 0 && c * m * m > rem) --m;
        for (Int t = -m; t <= m; ++t) {
            v[i] = t;
            rec(i - 1, rem - c * t * t);
        }
        v[i] = 0;
    };
    rec(d - 1, n);
}

}  // namespace

void enumerate_vectors_norm_leq(const QuadraticLattice& L, Int n, const VectorVisitor& fn) {
    if (n < 0) throw std::invalid_argument("enumerate_vectors_norm_leq: n < 0");
    if (!L.positive_definite())
        throw std::invalid_argument("enumerate_vectors_norm_leq: lattice not positive definite");
    if (n == 0) return;
    if (is_diagonal(L.gram)) {
        enumerate_diagonal(L.gram, n, fn);
        return;
    }
    RationalCholesky ch(L.gram);
    std::function<void(const std::vector<Int>&, const Rat&)> emit =
        [&](const std::vector<Int>& x, const Rat& q) {
            bool zero = std::all_of(x.begin(), x.end(), [](Int a) { return a == 0; });
            if (zero) return;
            fn(x, static_cast<Int>(numerator(q)));  // q is an integer for integer input
        };
    FpExact fp(ch, Rat(n), emit);
    fp.run();
}

std::vector<std::vector<Int>> enumerate_vectors_norm_leq(const QuadraticLattice& L, Int n) {
    std::vector<std::vector<Int>> out;
    enumerate_vectors_norm_leq(L, n, [&](const std::vector<Int>& v, Int) { out.push_back(v); });
    std::sort(out.begin(), out.end());
    return out;
}

BigInt min_nonzero_value(const GramMatrix& M, Int radius) {
    QuadraticLattice L = QuadraticLattice::from_gram(M);
    BigInt best = 0;
    enumerate_vectors_norm_leq(L, radius, [&](const std::vector<Int>&, Int norm) {
        if (norm > 0 && (best == 0 || norm < best)) best = norm;
    });
    if (best == 0) throw std::logic_error("min_nonzero_value: empty ball");
    return best;
}

std::vector<VectorTuple> enumerate_tuples_disc_leq(const QuadraticLattice& L, int r, Int n) {
    if (r < 1 || r > L.dim) throw std::invalid_argument("enumerate_tuples: r out of range");
    if (n < 1) throw std::invalid_argument("enumerate_tuples: n < 1");
    auto vecs = enumerate_vectors_norm_leq(L, n);
    std::vector<VectorTuple> out;
    IMat cur(L.dim, r);
    std::function<void(int)> rec = [&](int k) {
        if (k == r) {
            VectorTuple t{cur};
            GramMatrix g = gram_of_tuple(L, t);
            BigInt dd = det_exact(g);
            if (dd <= 0 || dd > n) return;
            if (!leading_minors_positive(g)) return;
            out.push_back(t);
            return;
        }
        for (const auto& v : vecs) {
            for (int i = 0; i < L.dim; ++i) cur(i, k) = v[i];
            rec(k + 1);
        }
    };
    rec(0);
    return out;
}

namespace {

std::string basis_key(const IMat& b) {
    std::string s;
    s.reserve(b.a.size() * 3);
    for (Int v : b.a) {
        s += std::to_string(v);
        s += ',';
    }
    return s;
}

// Hermite constants gamma_r^r for r = 1..4 as rationals
Rat hermite_pow(int r) {
    switch (r) {
        case 1: return Rat(1);
        case 2: return Rat(4, 3);
        case 3: return Rat(2);
        case 4: return Rat(4);
        default: return Rat(1) * big_pow(BigInt(2), static_cast<unsigned>(r));  // crude
    }
}

}  // namespace

std::vector<SublatticeHNF> enumerate_sublattices_disc_leq(const QuadraticLattice& L, int r,
                                                          Int n) {
    if (r < 1 || r > L.dim) throw std::invalid_argument("enumerate_sublattices: r out of range");
    if (n < 0) throw std::invalid_argument("enumerate_sublattices: n < 0");
    if (!L.positive_definite())
        throw std::invalid_argument("enumerate_sublattices: lattice not positive definite");
    std::vector<SublatticeHNF> out;
    if (n == 0) return out;  // discriminants are >= 1 on the cone

    if (r == 1) {
        // rank-1 sublattices are +-v pairs; the HNF representative has a
        // positive first nonzero entry, and the saturation index is the
        // content of the vector
        std::vector<std::pair<IMat, Int>> reps;
        enumerate_vectors_norm_leq(L, n, [&](const std::vector<Int>& v, Int norm) {
            for (Int c : v) {
                if (c > 0) break;
                if (c < 0) return;
            }
            IMat b(L.dim, 1);
            for (int i = 0; i < L.dim; ++i) b(i, 0) = v[i];
            reps.emplace_back(std::move(b), norm);
        });
        std::sort(reps.begin(), reps.end(),
                  [](const auto& a, const auto& b) { return a.first.a < b.first.a; });
        out.reserve(reps.size());
        for (auto& [b, norm] : reps) {
            Int content = 0;
            for (int i = 0; i < L.dim; ++i) content = std::gcd(content, b(i, 0));
            SublatticeHNF s;
            s.basis = b;
            s.disc = norm;
            s.index_in_saturation = content;
            s.primitive = (content == 1);
            out.push_back(std::move(s));
        }
        return out;
    }

    // Every rank-r sublattice of discriminant <= n has a Minkowski-reduced
    // basis with |v_1|^2 <= ... <= |v_r|^2 and prod |v_i|^2 <= gamma_r^r n,
    // so scanning such tuples and canonicalizing reaches every sublattice.
    Rat prod_bound = hermite_pow(r) * n;
    Int vec_bound = static_cast<Int>(numerator(prod_bound) / denominator(prod_bound));
    std::vector<std::pair<std::vector<Int>, Int>> vecs;
    enumerate_vectors_norm_leq(L, vec_bound, [&](const std::vector<Int>& v, Int norm) {
        // one of +-v suffices for a basis scan
        for (Int c : v) {
            if (c > 0) break;
            if (c < 0) return;
        }
        vecs.emplace_back(v, norm);
    });
    std::sort(vecs.begin(), vecs.end(),
              [](const auto& a, const auto& b) { return a.second < b.second; });

    std::set<std::string> seen;
    IMat cur(L.dim, r);
    std::vector<Int> norms(r);
    std::function<void(int, size_t, Rat)> rec = [&](int k, size_t from, Rat prod) {
        if (k == r) {
            VectorTuple t{cur};
            GramMatrix g = gram_of_tuple(L, t);
            BigInt dd = det_exact(g);
            if (dd <= 0 || dd > n) return;
            if (!leading_minors_positive(g)) return;
            IMat h = column_hnf(cur);
            auto key = basis_key(h);
            if (seen.insert(key).second) {
                SublatticeHNF s = make_sublattice(L, h);
                out.push_back(std::move(s));
            }
            return;
        }
        for (size_t idx = from; idx < vecs.size(); ++idx) {
            Int norm = vecs[idx].second;
            Rat p2 = prod * norm;
            if (p2 > prod_bound) break;  // norms ascend
            const auto& v = vecs[idx].first;
            for (int i = 0; i < L.dim; ++i) cur(i, k) = v[i];
            // for rank 2, a Gauss-reduced pair also has |B(v1,v2)| <= |v1|^2/2
            if (r == 2 && k == 1) {
                BigInt ip = L.bilinear(cur.col(0), cur.col(1));
                if (2 * abs(ip) > norms[0]) continue;
            }
            norms[k] = norm;
            rec(k + 1, idx, p2);
        }
    };
    rec(0, 0, Rat(1));
    std::sort(out.begin(), out.end(),
              [](const SublatticeHNF& a, const SublatticeHNF& b) { return a.basis.a < b.basis.a; });
    return out;
}

std::vector<SublatticeHNF> enumerate_primitive_planes(const QuadraticLattice& L, int r, Int n) {
    auto subs = enumerate_sublattices_disc_leq(L, r, n);
    std::vector<SublatticeHNF> out;
    for (auto& s : subs)
        if (s.primitive) out.push_back(s);
    return out;
}

std::vector<VectorTuple> enumerate_representations(const QuadraticLattice& L,
                                                   const GramMatrix& M) {
    if (!is_positive_semidefinite(M))
        throw std::invalid_argument("enumerate_representations: M not positive semidefinite");
    if (!L.positive_definite())
        throw std::invalid_argument("enumerate_representations: lattice not positive definite");
    int r = M.rows;
    Int maxnorm = 0;
    for (int i = 0; i < r; ++i) maxnorm = std::max(maxnorm, M(i, i));
    // bucket candidate vectors by exact norm; norm 0 forces the zero vector
    // (M may be semidefinite)
    std::map<Int, std::vector<std::vector<Int>>> by_norm;
    by_norm[0].push_back(std::vector<Int>(static_cast<size_t>(L.dim), 0));
    enumerate_vectors_norm_leq(L, maxnorm, [&](const std::vector<Int>& v, Int norm) {
        by_norm[norm].push_back(v);
    });
    for (auto& [k, vs] : by_norm) std::sort(vs.begin(), vs.end());

    std::vector<VectorTuple> out;
    IMat cur(L.dim, r);
    std::function<void(int)> rec = [&](int k) {
        if (k == r) {
            out.push_back(VectorTuple{cur});
            return;
        }
        auto it = by_norm.find(M(k, k));
        if (it == by_norm.end()) return;
        for (const auto& v : it->second) {
            bool ok = true;
            for (int j = 0; j < k && ok; ++j) {
                BigInt ip = L.bilinear(cur.col(j), v);
                if (ip != M(j, k)) ok = false;
            }
            if (!ok) continue;
            for (int i = 0; i < L.dim; ++i) cur(i, k) = v[i];
            rec(k + 1);
        }
    };
    rec(0);
    return out;
}

EnumWindow EnumWindow::majorant_ball(IMat A, Rat rho2) {
    EnumWindow w;
    w.majorant = std::move(A);
    w.rho2 = std::move(rho2);
    return w;
}

IMat default_majorant(const QuadraticLattice& L) {
    IMat A(L.dim, L.dim);
    for (int i = 0; i < L.dim; ++i)
        for (int j = 0; j < L.dim; ++j) A(i, j) = std::abs(L.gram(i, j)) + (i == j ? 1 : 0);
    if (is_positive_definite(A)) return A;
    IMat D(L.dim, L.dim);
    for (int i = 0; i < L.dim; ++i) {
        Int s = 1;
        for (int j = 0; j < L.dim; ++j) s += std::abs(L.gram(i, j));
        D(i, i) = s;
    }
    return D;
}

std::vector<VectorTuple> enumerate_tuples_in_window(const QuadraticLattice& L, int r, Int n,
                                                    const EnumWindow& window) {
    if (r < 1 || r > L.dim) throw std::invalid_argument("windowed enumeration: r out of range");
    if (L.sig_pos < r)
        throw std::invalid_argument("windowed enumeration: signature has p < r");
    if (window.majorant.rows != L.dim || window.rho2 <= 0)
        throw std::invalid_argument("windowed enumeration: window unbounded");
    QuadraticLattice A = QuadraticLattice::from_gram(window.majorant, "majorant");
    if (!A.positive_definite())
        throw std::invalid_argument("windowed enumeration: majorant not positive definite");

    // A(pr_i, pr_i) <= rho2 and h(v) <= n give A(v_i, v_i) <= rho2 * n^{1/r};
    // enumerate in that majorant ball and filter exactly.
    double cap = static_cast<double>(window.rho2) * std::pow(static_cast<double>(n), 1.0 / r);
    Int capi = static_cast<Int>(std::floor(cap)) + 1;
    auto vecs = enumerate_vectors_norm_leq(A, capi);

    std::vector<VectorTuple> out;
    IMat cur(L.dim, r);
    std::vector<BigInt> anorm(r);
    std::function<void(int)> rec = [&](int k) {
        if (k == r) {
            VectorTuple t{cur};
            GramMatrix g = gram_of_tuple(L, t);
            if (!is_positive_definite(g)) return;
            BigInt h = det_exact(g);
            if (h <= 0 || h > n) return;
            // exact window test: A(v_i,v_i)^r <= rho2^r * h
            for (int i = 0; i < r; ++i) {
                Rat lhs = Rat(big_pow(anorm[i], static_cast<unsigned>(r)));
                Rat rho_pow = window.rho2;
                for (int j = 1; j < r; ++j) rho_pow *= window.rho2;
                if (lhs > rho_pow * Rat(h)) return;
            }
            if (!window.coord_box.empty()) {
                double hs = std::pow(static_cast<double>(h), -0.5 / r);
                for (int i = 0; i < r; ++i)
                    for (int c = 0; c < L.dim; ++c) {
                        size_t slot = static_cast<size_t>(i) * L.dim + c;
                        if (slot >= window.coord_box.size()) break;
                        double x = hs * static_cast<double>(cur(c, i));
                        auto [lo, hi] = window.coord_box[slot];
                        if (x < lo || x > hi) return;
                    }
            }
            out.push_back(t);
            return;
        }
        for (const auto& v : vecs) {
            for (int i = 0; i < L.dim; ++i) cur(i, k) = v[i];
            anorm[k] = A.bilinear(v, v);
            rec(k + 1);
        }
    };
    rec(0);
    return out;
}

}  // namespace eql
