#include "equilattice/local_density.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>

namespace eql {

namespace {

bool is_prime(Int a) {
    if (a < 2) return false;
    for (Int p = 2; p * p <= a; ++p)
        if (a % p == 0) return false;
    return true;
}

Int pow_int(Int a, int e) {
    Int r = 1;
    while (e-- > 0) r = checked_mul(r, a);
    return r;
}

Int mod_norm(Int v, Int q) {
    v %= q;
    return v < 0 ? v + q : v;
}

// I(lambda) mod q for lambda given as d x r column entries
void gram_mod(const IMat& B, const std::vector<Int>& lam, int d, int r, Int q,
              std::vector<Int>& out) {
    // out is the packed upper triangle (i <= j), row-major
    int t = 0;
    for (int i = 0; i < r; ++i)
        for (int j = i; j < r; ++j) {
            Int acc = 0;
            for (int k = 0; k < d; ++k) {
                Int bk = 0;
                for (int l = 0; l < d; ++l)
                    bk = (bk + mod_norm(B(k, l), q) * lam[static_cast<size_t>(j) * d + l]) % q;
                acc = (acc + lam[static_cast<size_t>(i) * d + k] * bk) % q;
            }
            out[t++] = mod_norm(acc, q);
        }
}

std::vector<Int> pack_target(const GramMatrix& M, Int q) {
    int r = M.rows;
    std::vector<Int> t;
    t.reserve(static_cast<size_t>(r) * (r + 1) / 2);
    for (int i = 0; i < r; ++i)
        for (int j = i; j < r; ++j) t.push_back(mod_norm(M(i, j), q));
    return t;
}

// modular inverse for odd prime powers (unit u)
Int inv_mod(Int u, Int q) {
    Int t = 0, nt = 1, r = q, nr = mod_norm(u, q);
    while (nr != 0) {
        Int quot = r / nr;
        std::swap(t -= quot * nt, nt);
        std::swap(r -= quot * nr, nr);
    }
    if (r != 1) throw std::invalid_argument("inv_mod: not a unit");
    return mod_norm(t, q);
}

}  // namespace

BigInt count_solutions_mod_fullscan(const QuadraticLattice& L, int r, const GramMatrix& M, Int a,
                                    int s) {
    Int q = pow_int(a, s);
    int d = L.dim;
    int vars = d * r;
    double total = std::pow(static_cast<double>(q), vars);
    if (total > 4e7) throw std::invalid_argument("full scan too large");
    std::vector<Int> lam(vars, 0), g(static_cast<size_t>(r) * (r + 1) / 2);
    auto target = pack_target(M, q);
    BigInt count = 0;
    for (;;) {
        gram_mod(L.gram, lam, d, r, q, g);
        if (g == target) ++count;
        int i = 0;
        while (i < vars && ++lam[i] == q) lam[i++] = 0;
        if (i == vars) break;
    }
    return count;
}

namespace {

// ---- convolution counting (a odd, a coprime to det B) ---------------------

// diagonalize B mod q = a^s by unimodular congruence, returning the diagonal
std::vector<Int> diagonalize_mod(const IMat& B, Int a, Int q) {
    int d = B.rows;
    std::vector<std::vector<Int>> m(d, std::vector<Int>(d));
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) m[i][j] = mod_norm(B(i, j), q);
    std::vector<Int> diag(d);
    std::vector<int> left(d);
    std::iota(left.begin(), left.end(), 0);
    for (int step = 0; step < d; ++step) {
        // find a remaining index with unit diagonal entry
        int pi = -1;
        for (int idx : left)
            if (idx >= 0 && m[idx][idx] % a != 0) {
                pi = idx;
                break;
            }
        if (pi < 0) {
            // all diagonal entries divisible by a: find unit off-diagonal and
            // fold it in (a odd makes 2 m_ij a unit)
            int ai = -1, aj = -1;
            for (int i : left) {
                if (i < 0) continue;
                for (int j : left) {
                    if (j < 0 || j == i) continue;
                    if (m[i][j] % a != 0) {
                        ai = i;
                        aj = j;
                        break;
                    }
                }
                if (ai >= 0) break;
            }
            if (ai < 0) throw std::invalid_argument("diagonalize_mod: form degenerate mod a");
            for (int k = 0; k < d; ++k) m[ai][k] = (m[ai][k] + m[aj][k]) % q;
            for (int k = 0; k < d; ++k) m[k][ai] = (m[k][ai] + m[k][aj]) % q;
            pi = ai;
        }
        Int piv = m[pi][pi];
        Int pinv = inv_mod(piv, q);
        for (int j : left) {
            if (j < 0 || j == pi) continue;
            Int f = mod_norm(m[j][pi] * pinv % q, q);
            if (f == 0) continue;
            for (int k = 0; k < d; ++k) m[j][k] = mod_norm(m[j][k] - f * m[pi][k] % q, q);
            for (int k = 0; k < d; ++k) m[k][j] = mod_norm(m[k][j] - f * m[k][pi] % q, q);
        }
        diag[step] = piv;
        for (auto& idx : left)
            if (idx == pi) idx = -1;
    }
    return diag;
}

using u128 = unsigned __int128;

BigInt count_by_convolution(const QuadraticLattice& L, int r, const GramMatrix& M, Int a, int s) {
    Int q = pow_int(a, s);
    int d = L.dim;
    int m = r * (r + 1) / 2;
    double states_d = std::pow(static_cast<double>(q), m);
    double trans_d = std::pow(static_cast<double>(q), r);
    if (states_d > 2e7 || states_d * trans_d > 6e9)
        throw std::invalid_argument("convolution state space too large");
    // counts fit in u128 when q^{dr} < 2^120
    if (static_cast<double>(d) * r * s * std::log2(static_cast<double>(a)) > 120)
        throw std::invalid_argument("convolution count would overflow");

    auto diag = diagonalize_mod(L.gram, a, q);

    size_t states = 1;
    for (int i = 0; i < m; ++i) states *= static_cast<size_t>(q);
    size_t trans = 1;
    for (int i = 0; i < r; ++i) trans *= static_cast<size_t>(q);

    std::vector<u128> dist(states, 0), next(states, 0);
    dist[0] = 1;
    std::vector<Int> x(r), entry(m), sym(m);
    for (int t = 0; t < d; ++t) {
        std::fill(next.begin(), next.end(), u128(0));
        Int c = mod_norm(diag[t], q);
        // precompute packed offsets of c * x x^T for all x
        for (size_t xi = 0; xi < trans; ++xi) {
            size_t tmp = xi;
            for (int i = 0; i < r; ++i) {
                x[i] = static_cast<Int>(tmp % static_cast<size_t>(q));
                tmp /= static_cast<size_t>(q);
            }
            int e = 0;
            for (int i = 0; i < r; ++i)
                for (int j = i; j < r; ++j) sym[e++] = mod_norm(c * x[i] % q * x[j] % q, q);
            for (size_t st = 0; st < states; ++st) {
                if (dist[st] == 0) continue;
                size_t stmp = st, nst = 0, mul = 1;
                for (int i = 0; i < m; ++i) {
                    Int ei = static_cast<Int>(stmp % static_cast<size_t>(q));
                    stmp /= static_cast<size_t>(q);
                    Int ne = ei + sym[i];
                    if (ne >= q) ne -= q;
                    nst += static_cast<size_t>(ne) * mul;
                    mul *= static_cast<size_t>(q);
                }
                next[nst] += dist[st];
            }
        }
        dist.swap(next);
    }
    auto target = pack_target(M, q);
    size_t ti = 0, mul = 1;
    for (int i = 0; i < m; ++i) {
        ti += static_cast<size_t>(target[i]) * mul;
        mul *= static_cast<size_t>(q);
    }
    u128 c = dist[ti];
    BigInt out = static_cast<std::uint64_t>(c >> 64);
    out <<= 64;
    out += static_cast<std::uint64_t>(c);
    return out;
}

// ---- Hensel lifting of solution lists --------------------------------------

constexpr size_t kListCap = 10000000;

std::vector<std::vector<Int>> solutions_level1(const QuadraticLattice& L, int r,
                                               const GramMatrix& M, Int a) {
    int d = L.dim;
    int vars = d * r;
    double total = std::pow(static_cast<double>(a), vars);
    if (total > 4e7) throw std::invalid_argument("Hensel level-1 scan too large");
    std::vector<std::vector<Int>> sols;
    std::vector<Int> lam(vars, 0), g(static_cast<size_t>(r) * (r + 1) / 2);
    auto target = pack_target(M, a);
    for (;;) {
        gram_mod(L.gram, lam, d, r, a, g);
        if (g == target) {
            sols.push_back(lam);
            if (sols.size() > kListCap) throw std::invalid_argument("Hensel list too large");
        }
        int i = 0;
        while (i < vars && ++lam[i] == a) lam[i++] = 0;
        if (i == vars) break;
    }
    return sols;
}

// all solutions delta of the F_a linear system S(lambda, delta) == R
void solve_linear_mod(const std::vector<std::vector<Int>>& rows, const std::vector<Int>& rhs,
                      Int a, int vars, std::vector<std::vector<Int>>& out) {
    int eqs = static_cast<int>(rows.size());
    std::vector<std::vector<Int>> aug(eqs, std::vector<Int>(vars + 1));
    for (int i = 0; i < eqs; ++i) {
        for (int j = 0; j < vars; ++j) aug[i][j] = mod_norm(rows[i][j], a);
        aug[i][vars] = mod_norm(rhs[i], a);
    }
    std::vector<int> pivot_col;
    int row = 0;
    for (int col = 0; col < vars && row < eqs; ++col) {
        int p = -1;
        for (int i = row; i < eqs; ++i)
            if (aug[i][col] != 0) {
                p = i;
                break;
            }
        if (p < 0) continue;
        std::swap(aug[p], aug[row]);
        Int inv = inv_mod(aug[row][col], a);
        for (int j = col; j <= vars; ++j) aug[row][j] = aug[row][j] * inv % a;
        for (int i = 0; i < eqs; ++i) {
            if (i == row || aug[i][col] == 0) continue;
            Int f = aug[i][col];
            for (int j = col; j <= vars; ++j)
                aug[i][j] = mod_norm(aug[i][j] - f * aug[row][j] % a, a);
        }
        pivot_col.push_back(col);
        ++row;
    }
    for (int i = row; i < eqs; ++i)
        if (aug[i][vars] != 0) return;  // inconsistent: no lift

    std::vector<int> free_cols;
    {
        std::vector<bool> is_pivot(vars, false);
        for (int c : pivot_col) is_pivot[c] = true;
        for (int c = 0; c < vars; ++c)
            if (!is_pivot[c]) free_cols.push_back(c);
    }
    // enumerate all assignments of the free variables
    std::vector<Int> freev(free_cols.size(), 0), delta(vars, 0);
    for (;;) {
        for (int c = 0; c < vars; ++c) delta[c] = 0;
        for (size_t i = 0; i < free_cols.size(); ++i) delta[free_cols[i]] = freev[i];
        for (size_t i = 0; i < pivot_col.size(); ++i) {
            Int v = aug[i][vars];
            for (size_t f = 0; f < free_cols.size(); ++f)
                v = mod_norm(v - aug[i][free_cols[f]] * freev[f] % a, a);
            delta[pivot_col[i]] = v;
        }
        out.push_back(delta);
        if (out.size() > kListCap) throw std::invalid_argument("Hensel list too large");
        size_t i = 0;
        while (i < freev.size() && ++freev[i] == a) freev[i++] = 0;
        if (i == freev.size()) break;
    }
}

std::vector<std::vector<Int>> lift_solutions(const QuadraticLattice& L, int r,
                                             const GramMatrix& M, Int a, int s,
                                             const std::vector<std::vector<Int>>& prev) {
    // prev holds solutions mod a^{s-1}; returns solutions mod a^s
    int d = L.dim;
    Int qprev = pow_int(a, s - 1);
    Int q = qprev * a;
    int m = r * (r + 1) / 2;
    std::vector<std::vector<Int>> out;
    std::vector<Int> g(m);
    auto targ = pack_target(M, q);
    for (const auto& lam : prev) {
        gram_mod(L.gram, lam, d, r, q, g);
        // residual R = (M - I(lambda)) / a^{s-1} mod a
        std::vector<Int> rhs(m);
        bool liftable = true;
        for (int i = 0; i < m && liftable; ++i) {
            Int diff = mod_norm(targ[i] - g[i], q);
            if (diff % qprev != 0) liftable = false;
            else rhs[i] = (diff / qprev) % a;
        }
        if (!liftable) continue;  // cannot happen for genuine level-(s-1) solutions
        // linear map delta -> S(lambda, delta) over F_a, rows indexed by (i <= j)
        std::vector<std::vector<Int>> rows(m, std::vector<Int>(d * r, 0));
        int e = 0;
        for (int i = 0; i < r; ++i)
            for (int j = i; j < r; ++j) {
                // coefficient of delta_j: B(lambda_i, .), of delta_i: B(., lambda_j)
                for (int k = 0; k < d; ++k) {
                    Int ci = 0, cj = 0;
                    for (int l = 0; l < d; ++l) {
                        ci = (ci + mod_norm(L.gram(k, l), a) *
                                       (lam[static_cast<size_t>(i) * d + l] % a)) % a;
                        cj = (cj + mod_norm(L.gram(k, l), a) *
                                       (lam[static_cast<size_t>(j) * d + l] % a)) % a;
                    }
                    rows[e][static_cast<size_t>(j) * d + k] =
                        mod_norm(rows[e][static_cast<size_t>(j) * d + k] + ci, a);
                    rows[e][static_cast<size_t>(i) * d + k] =
                        mod_norm(rows[e][static_cast<size_t>(i) * d + k] + cj, a);
                }
                ++e;
            }
        std::vector<std::vector<Int>> deltas;
        solve_linear_mod(rows, rhs, a, d * r, deltas);
        for (const auto& del : deltas) {
            std::vector<Int> lifted(lam);
            for (int v = 0; v < d * r; ++v) lifted[v] = lam[v] + qprev * del[v];
            out.push_back(std::move(lifted));
            if (out.size() > kListCap) throw std::invalid_argument("Hensel list too large");
        }
    }
    return out;
}

BigInt count_by_hensel(const QuadraticLattice& L, int r, const GramMatrix& M, Int a, int s) {
    auto sols = solutions_level1(L, r, M, a);
    for (int level = 2; level <= s; ++level) sols = lift_solutions(L, r, M, a, level, sols);
    return static_cast<Int>(sols.size());
}

}  // namespace

BigInt count_solutions_mod(const QuadraticLattice& L, int r, const GramMatrix& M, Int a, int s) {
    if (!is_prime(a)) throw std::invalid_argument("count_solutions_mod: a not prime");
    if (s < 1) throw std::invalid_argument("count_solutions_mod: s < 1");
    if (M.rows != r || M.cols != r) throw std::invalid_argument("count_solutions_mod: M size");
    int vars = L.dim * r;
    double fullsz = std::pow(static_cast<double>(pow_int(a, s)), vars);
    if (fullsz <= 2e6) return count_solutions_mod_fullscan(L, r, M, a, s);
    if (a % 2 != 0 && det_exact(L.gram) % a != 0) {
        try {
            return count_by_convolution(L, r, M, a, s);
        } catch (const std::invalid_argument&) {
            // fall through to Hensel
        }
    }
    return count_by_hensel(L, r, M, a, s);
}

LocalDensityResult local_density(const QuadraticLattice& L, int r, const GramMatrix& M, Int a,
                                 int s_max) {
    if (s_max < 2) throw std::invalid_argument("local_density: s_max >= 2 required");
    LocalDensityResult res;
    res.prime = a;
    res.s_max = s_max;
    int m = r * (r + 1) / 2;
    int norm_exp = L.dim * r - m;  // dr - r(r+1)/2 per level
    for (int s = 1; s <= s_max; ++s) {
        BigInt raw = count_solutions_mod(L, r, M, a, s);
        res.raw.push_back(raw);
        Rat norm = Rat(raw) / Rat(big_pow(BigInt(a), static_cast<unsigned>(s * norm_exp)));
        res.normalized.push_back(norm);
        if (s >= 2 && !res.stabilized && res.normalized[s - 1] == res.normalized[s - 2]) {
            res.stabilized = true;
            res.s0 = s - 1;
            res.value = res.normalized[s - 1];
        }
        if (res.stabilized) break;
    }
    return res;
}

RelativeVolume siegel_weil_relative(const QuadraticLattice& L, const GramMatrix& M, Int cutoff,
                                    int s_max) {
    int d = L.dim, r = M.rows;
    if (r >= d) throw std::invalid_argument("siegel_weil_relative: requires r < d");
    if (!is_positive_definite(M))
        throw std::invalid_argument("siegel_weil_relative: M not positive definite");
    RelativeVolume rv;
    rv.det_M = det_exact(M);
    rv.exponent_num = d - r - 1;
    BigInt bad = 2 * rv.det_M * det_exact(L.gram);
    if (bad < 0) bad = -bad;
    std::vector<Int> primes;
    for (Int p = 2; p <= cutoff; ++p)
        if (is_prime(p)) primes.push_back(p);
    for (BigInt p = 2; p * p <= bad; ++p) {
        if (bad % p != 0) continue;
        Int pi = static_cast<Int>(p);
        if (std::find(primes.begin(), primes.end(), pi) == primes.end()) primes.push_back(pi);
        while (bad % p == 0) bad /= p;
    }
    if (bad > 1) {
        Int pi = static_cast<Int>(bad);
        if (std::find(primes.begin(), primes.end(), pi) == primes.end()) primes.push_back(pi);
    }
    std::sort(primes.begin(), primes.end());

    double value = std::pow(static_cast<double>(rv.det_M), 0.5 * rv.exponent_num);
    for (Int p : primes) {
        auto ld = local_density(L, r, M, p, s_max);
        if (!ld.stabilized) {
            rv.all_stabilized = false;
            throw std::runtime_error("siegel_weil_relative: local density unresolved at prime " +
                                     std::to_string(p));
        }
        rv.local_factors.emplace_back(p, ld.value);
        value *= static_cast<double>(ld.value);
    }
    rv.value = value;
    return rv;
}

GrowthReport growth_exponent_check(const QuadraticLattice& L, const std::vector<GramMatrix>& Ms,
                                   Int prime_cutoff, int s_max) {
    int d = L.dim;
    if (Ms.empty()) throw std::invalid_argument("growth check: empty sequence");
    int r = Ms.front().rows;
    if (2 * r > d - 3)
        throw std::invalid_argument("growth check: requires r <= (d-3)/2");
    if (Ms.size() < 4) throw std::invalid_argument("growth check: sequence too short (< 4)");
    GrowthReport rep;
    rep.expected_slope = 0.5 * (d - r - 1);
    for (auto& M : Ms) {
        auto rv = siegel_weil_relative(L, M, prime_cutoff, s_max);
        GrowthPoint p;
        p.det_M = rv.det_M;
        p.log_det = std::log(static_cast<double>(rv.det_M));
        p.log_volume = std::log(rv.value);
        rep.points.push_back(p);
    }
    // least squares
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    double n = static_cast<double>(rep.points.size());
    for (auto& p : rep.points) {
        sx += p.log_det;
        sy += p.log_volume;
        sxx += p.log_det * p.log_det;
        sxy += p.log_det * p.log_volume;
    }
    double denom = n * sxx - sx * sx;
    if (std::abs(denom) < 1e-12) throw std::invalid_argument("growth check: degenerate sequence");
    rep.slope = (n * sxy - sx * sy) / denom;
    rep.intercept = (sy - rep.slope * sx) / n;
    for (auto& p : rep.points)
        rep.max_residual =
            std::max(rep.max_residual,
                     std::abs(p.log_volume - (rep.slope * p.log_det + rep.intercept)));
    return rep;
}

std::string local_density_csv(const std::vector<LocalDensityResult>& rows) {
    std::string out = "prime,s,raw_count,normalized,stabilized\n";
    for (auto& r : rows) {
        for (size_t i = 0; i < r.raw.size(); ++i) {
            out += std::to_string(r.prime);
            out += ',';
            out += std::to_string(i + 1);
            out += ',';
            out += r.raw[i].str();
            out += ',';
            out += numerator(r.normalized[i]).str() + "/" + denominator(r.normalized[i]).str();
            out += ',';
            out += (r.stabilized && static_cast<int>(i + 1) >= r.s0) ? "1" : "0";
            out += '\n';
        }
    }
    return out;
}

}  // namespace eql
