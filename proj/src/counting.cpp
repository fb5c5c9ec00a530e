#include "equilattice/counting.hpp"

#include <cmath>
#include <functional>
#include <map>

#include "equilattice/parallel.hpp"

namespace eql {

std::vector<Int> norm_counts_zd(int d, Int n) {
    std::vector<Int> cur(n + 1, 0);
    // r_1
    cur[0] = 1;
    for (Int x = 1; x * x <= n; ++x) cur[x * x] = 2;
    for (int k = 2; k <= d; ++k) {
        std::vector<Int> next(n + 1, 0);
        for (Int m = 0; m <= n; ++m) {
            if (cur[m] == 0) continue;
            next[m] += cur[m];  // x_k = 0
            for (Int x = 1; m + x * x <= n; ++x) next[m + x * x] += 2 * cur[m];
        }
        cur.swap(next);
    }
    return cur;
}

std::vector<Int> primitive_norm_counts_zd(int d, Int n) {
    auto r = norm_counts_zd(d, n);
    // moebius
    std::vector<int> mu(static_cast<size_t>(isqrt_floor(n)) + 2, 1);
    {
        Int m = static_cast<Int>(mu.size()) - 1;
        std::vector<bool> comp(m + 1, false);
        std::vector<Int> primes;
        std::vector<int> mmu(m + 1, 1);
        for (Int i = 2; i <= m; ++i) {
            if (!comp[i]) {
                primes.push_back(i);
                mmu[i] = -1;
            }
            for (Int p : primes) {
                if (i * p > m) break;
                comp[i * p] = true;
                if (i % p == 0) {
                    mmu[i * p] = 0;
                    break;
                }
                mmu[i * p] = -mmu[i];
            }
        }
        for (size_t i = 0; i < mu.size() && i <= static_cast<size_t>(m); ++i) mu[i] = mmu[i];
    }
    std::vector<Int> p(n + 1, 0);
    for (Int m = 1; m <= n; ++m) {
        Int acc = 0;
        for (Int k = 1; k * k <= m; ++k) {
            if (m % (k * k) != 0 || mu[k] == 0) continue;
            acc += mu[k] * r[m / (k * k)];
        }
        p[m] = acc;
    }
    return p;
}

namespace {

using i128 = __int128;

// integer solutions x of A x^2 + B x + C <= 0, A > 0
long long quadratic_interval_count(i128 A, i128 B, i128 C) {
    i128 disc = B * B - 4 * A * C;
    if (disc < 0) return 0;
    double sd = std::sqrt(static_cast<double>(disc));
    double lo = (-static_cast<double>(B) - sd) / (2.0 * static_cast<double>(A));
    double hi = (-static_cast<double>(B) + sd) / (2.0 * static_cast<double>(A));
    long long L = static_cast<long long>(std::ceil(lo)) - 2;
    long long H = static_cast<long long>(std::floor(hi)) + 2;
    auto ok = [&](long long x) { return A * x * x + B * x + C <= 0; };
    while (L <= H && !ok(L)) ++L;
    while (L <= H && !ok(H)) --H;
    while (L <= H && ok(L - 1)) --L;
    while (L <= H && ok(H + 1)) ++H;
    return L > H ? 0 : H - L + 1;
}

// contribution to the rank-2 HNF count from one pivot pair (i1 < i2),
// one outer value of the first pivot a, summed over everything else.
//
// HNF columns: v1 = (0...,a,...,x_j...), v2 = (0,...,b at i2, y_j...),
// 0 <= c < b at row i2 of column 1. With B the standard dot product,
// disc = sum of squared 2x2 minors:
//   (ab)^2 + sum_{j>i2} (a y_j)^2 + sum_{i1<j<i2} x_j^2 (b^2 + sum y^2)
//   + sum_{j>i2} (c y_j - b x_j)^2 + sum_{j<j' after} (x_j y_j' - x_j' y_j)^2
long long count_pivot_block_for_a(int d, Int n, int i1, int i2, long long a) {
    int nb = i2 - i1 - 1;           // between rows (x, 0)
    int na = d - 1 - i2;            // after rows (x, y)
    long long total = 0;
    long long ab2max = n;
    for (long long b = 1; a * a * b * b <= ab2max; ++b) {
        long long rem_ab = n - a * a * b * b;
        for (long long c = 0; c < b; ++c) {
            // iterate the y's of the after rows
            std::vector<long long> y(na, 0), xa(na, 0);
            std::function<void(int, long long)> rec_y = [&](int j, long long rem) {
                if (j == na) {
                    long long w = b * b;  // between-x quadratic coefficient
                    for (int t = 0; t < na; ++t) w += y[t] * y[t];
                    // iterate between x's; the last free variable overall is
                    // closed-form, so stop one short when there are no after rows
                    std::function<void(int, long long)> rec_xb = [&](int jb, long long rem2) {
                        if (na == 0 && jb == nb - 1 && nb > 0) {
                            // closed form for the final between x
                            total += quadratic_interval_count(w, 0, -static_cast<i128>(rem2));
                            return;
                        }
                        if (jb == nb) {
                            // after-row x's
                            if (na == 0) {
                                ++total;
                                return;
                            }
                            std::function<void(int, long long)> rec_xa = [&](int ja,
                                                                             long long rem3) {
                                if (ja == na - 1) {
                                    // final x: quadratic coefficient collects the
                                    // pivot column term and all earlier cross terms
                                    i128 A = static_cast<i128>(b) * b;
                                    i128 Bq = 0, Cq = -static_cast<i128>(rem3);
                                    long long yf = y[ja];
                                    A += [&] {
                                        i128 s = 0;
                                        for (int t = 0; t < ja; ++t) s += static_cast<i128>(y[t]) * y[t];
                                        return s;
                                    }();
                                    i128 dotxy = static_cast<i128>(b) * c;
                                    for (int t = 0; t < ja; ++t)
                                        dotxy += static_cast<i128>(xa[t]) * y[t];
                                    Bq = -2 * static_cast<i128>(yf) * dotxy;
                                    i128 sumx2 = static_cast<i128>(c) * c;
                                    for (int t = 0; t < ja; ++t)
                                        sumx2 += static_cast<i128>(xa[t]) * xa[t];
                                    Cq += static_cast<i128>(yf) * yf * sumx2;
                                    total += quadratic_interval_count(A, Bq, Cq);
                                    return;
                                }
                                // iterate x_ja over the range allowed by its own
                                // pivot-column term, apply the exact partial cost
                                long long yj = y[ja];
                                double s = std::sqrt(static_cast<double>(rem3));
                                long long lo = static_cast<long long>(
                                                   std::ceil((c * static_cast<double>(yj) - s) / b)) -
                                               1;
                                long long hi = static_cast<long long>(
                                                   std::floor((c * static_cast<double>(yj) + s) / b)) +
                                               1;
                                for (long long x = lo; x <= hi; ++x) {
                                    i128 cost = static_cast<i128>(c) * yj - static_cast<i128>(b) * x;
                                    cost = cost * cost;
                                    for (int t = 0; t < ja; ++t) {
                                        i128 m = static_cast<i128>(xa[t]) * yj -
                                                 static_cast<i128>(x) * y[t];
                                        cost += m * m;
                                    }
                                    if (cost > rem3) continue;
                                    xa[ja] = x;
                                    rec_xa(ja + 1, rem3 - static_cast<long long>(cost));
                                }
                            };
                            rec_xa(0, rem2);
                            return;
                        }
                        // between x (not the final variable)
                        long long m = static_cast<long long>(
                            std::sqrt(static_cast<double>(rem2) / static_cast<double>(w)));
                        while (w * (m + 1) * (m + 1) <= rem2) ++m;
                        while (m > 0 && w * m * m > rem2) --m;
                        for (long long x = -m; x <= m; ++x)
                            rec_xb(jb + 1, rem2 - w * x * x);
                    };
                    rec_xb(0, rem);
                    return;
                }
                long long m = static_cast<long long>(std::sqrt(static_cast<double>(rem))) / a;
                while (a * a * (m + 1) * (m + 1) <= rem) ++m;
                while (m > 0 && a * a * m * m > rem) --m;
                for (long long v = -m; v <= m; ++v) {
                    y[j] = v;
                    rec_y(j + 1, rem - a * a * v * v);
                }
            };
            rec_y(0, rem_ab);
        }
    }
    return total;
}

}  // namespace

BigInt count_sublattices_zd(int d, int r, Int n) {
    if (n < 1) return 0;
    if (r == 1) {
        auto rc = norm_counts_zd(d, n);
        BigInt acc = 0;
        for (Int m = 1; m <= n; ++m) acc += rc[m];
        return acc / 2;
    }
    if (r != 2) throw std::invalid_argument("count_sublattices_zd: only r = 1, 2");
    BigInt total = 0;
    Int amax = isqrt_floor(n);
    for (int i1 = 0; i1 < d; ++i1)
        for (int i2 = i1 + 1; i2 < d; ++i2) {
            std::vector<long long> partial(static_cast<size_t>(amax), 0);
            parallel_chunks(amax, static_cast<int>(amax), [&](int chunk, long long lo, long long hi) {
                for (long long a = lo + 1; a <= hi; ++a)
                    partial[static_cast<size_t>(chunk)] +=
                        count_pivot_block_for_a(d, n, i1, i2, a);
            });
            for (long long p : partial) total += p;
        }
    return total;
}

namespace {

// b_k for rank 2 is sigma_1(k)
std::vector<Int> sigma1_table(Int K) {
    std::vector<Int> s(K + 1, 0);
    for (Int d = 1; d <= K; ++d)
        for (Int m = d; m <= K; m += d) s[m] += d;
    return s;
}

}  // namespace

BigInt count_primitive_sublattices_zd(int d, int r, Int n) {
    return sublattice_totals_zd(d, r, n).nu_prime;
}

SublatticeTotals sublattice_totals_zd(int d, int r, Int n) {
    SublatticeTotals t{0, 0};
    if (n < 1) return t;
    if (r == 1) {
        auto rc = norm_counts_zd(d, n);
        auto pc = primitive_norm_counts_zd(d, n);
        for (Int m = 1; m <= n; ++m) {
            t.nu += rc[m];
            t.nu_prime += pc[m];
        }
        t.nu /= 2;
        t.nu_prime /= 2;
        return t;
    }
    if (r != 2) throw std::invalid_argument("sublattice_totals_zd: only r = 1, 2");
    auto bk = sigma1_table(isqrt_floor(n) + 1);
    std::map<Int, BigInt> nu_memo;
    auto nu_at = [&](Int m) -> BigInt {
        auto it = nu_memo.find(m);
        if (it != nu_memo.end()) return it->second;
        BigInt v = count_sublattices_zd(d, 2, m);
        nu_memo[m] = v;
        return v;
    };
    std::map<Int, BigInt> nup_memo;
    std::function<BigInt(Int)> nup = [&](Int m) -> BigInt {
        if (m < 1) return 0;
        auto it = nup_memo.find(m);
        if (it != nup_memo.end()) return it->second;
        BigInt v = nu_at(m);
        for (Int k = 2; k * k <= m; ++k) v -= bk[k] * nup(m / (k * k));
        nup_memo[m] = v;
        return v;
    };
    t.nu_prime = nup(n);
    t.nu = nu_at(n);
    return t;
}

}  // namespace eql
