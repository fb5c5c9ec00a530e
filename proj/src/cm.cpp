#include "equilattice/cm.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>

namespace eql {

std::vector<HeckeMatrix> hecke_coset_reps(Int N) {
    if (N < 1) throw std::invalid_argument("hecke_coset_reps: N < 1");
    std::vector<HeckeMatrix> reps;
    for (Int a = 1; a <= N; ++a) {
        if (N % a != 0) continue;
        Int d = N / a;
        for (Int b = 0; b < d; ++b) reps.push_back(HeckeMatrix{a, b, 0, d});
    }
    return reps;
}

Int sigma1(Int N) {
    Int s = 0;
    for (Int d = 1; d <= N; ++d)
        if (N % d == 0) s += d;
    return s;
}

UHPoint fixed_point(const HeckeMatrix& m) {
    if (!m.elliptic())
        throw std::invalid_argument("fixed_point: matrix not elliptic (no regular fixed point)");
    HeckeMatrix g = m;
    if (g.c == 0) {
        // conjugate by S = [[0,-1],[1,0]]: g -> S g S^{-1} swaps the roles
        // of b and c up to sign; elliptic matrices with b = c = 0 are
        // impossible since (a+d)^2 < 4ad forces (a-d)^2 < 0
        g = HeckeMatrix{g.d, -g.c, -g.b, g.a};
    }
    if (g.c == 0) throw std::logic_error("fixed_point: degenerate matrix");
    if (g.c < 0) g = HeckeMatrix{-g.a, -g.b, -g.c, -g.d};
    double t = static_cast<double>(g.trace());
    double N4 = 4.0 * static_cast<double>(g.det());
    UHPoint z;
    z.x = static_cast<double>(g.a - g.d) / (2.0 * g.c);
    z.y = std::sqrt(N4 - t * t) / (2.0 * g.c);
    if (m.c == 0) {
        // undo the conjugation: the original fixed point is S^{-1} z = -1/z
        double n2 = z.x * z.x + z.y * z.y;
        z = UHPoint{-z.x / n2, z.y / n2};
    }
    return z;
}

UHPoint moebius_apply(const HeckeMatrix& m, const UHPoint& z) {
    double cr = m.c * z.x + m.d, ci = m.c * z.y;
    double nr = m.a * z.x + m.b, ni = m.a * z.y;
    double den = cr * cr + ci * ci;
    return UHPoint{(nr * cr + ni * ci) / den, (ni * cr - nr * ci) / den};
}

ReductionResult reduce_to_fundamental_domain(UHPoint z) {
    if (z.y <= 0) throw std::invalid_argument("reduce: point not in the upper half-plane");
    std::string word;
    for (int iter = 0; iter < 10000; ++iter) {
        double k = std::round(z.x);
        if (k != 0.0) {
            z.x -= k;
            char buf[32];
            std::snprintf(buf, sizeof buf, "T^%d ", static_cast<int>(-k));
            word += buf;
        }
        double n2 = z.x * z.x + z.y * z.y;
        if (n2 < 1.0 - 1e-15) {
            z = UHPoint{-z.x / n2, z.y / n2};
            word += "S ";
            continue;
        }
        // boundary conventions: Re = +1/2 goes to -1/2, the right unit arc
        // goes to the left one
        if (z.x > 0.5 - 1e-15) {
            z.x -= 1.0;
            word += "T^-1 ";
            continue;
        }
        if (std::abs(n2 - 1.0) <= 1e-15 && z.x > 1e-15) {
            z = UHPoint{-z.x / n2, z.y / n2};
            word += "S ";
            continue;
        }
        return ReductionResult{z, word};
    }
    throw std::logic_error("reduce: did not terminate");
}

bool in_fundamental_domain(const UHPoint& z, double tol) {
    if (z.y <= 0) return false;
    if (std::abs(z.x) > 0.5 + tol) return false;
    return z.x * z.x + z.y * z.y >= 1.0 - tol;
}

BinaryForm reduce_form(BinaryForm f) {
    if (f.a <= 0 || f.disc() >= 0)
        throw std::invalid_argument("reduce_form: form not positive definite");
    for (int iter = 0; iter < 100000; ++iter) {
        // translate: b into (-a, a]
        if (f.b > f.a || f.b <= -f.a) {
            // b' = b - 2ka with k = round(b / 2a)
            Int twoa = 2 * f.a;
            Int k = static_cast<Int>(std::llround(static_cast<double>(f.b) /
                                                  static_cast<double>(twoa)));
            Int b2 = f.b - k * twoa;
            while (b2 > f.a) {
                b2 -= twoa;
                ++k;
            }
            while (b2 <= -f.a) {
                b2 += twoa;
                --k;
            }
            Int c2 = f.c - k * f.b + k * k * f.a;
            f.b = b2;
            f.c = c2;
        }
        if (f.a > f.c) {
            // swap via (x, y) -> (-y, x)
            f = BinaryForm{f.c, -f.b, f.a};
            continue;
        }
        if (f.a == f.c && f.b < 0) {
            f.b = -f.b;
            continue;
        }
        return f;
    }
    throw std::logic_error("reduce_form: did not terminate");
}

std::vector<WeightedForm> reduced_forms(Int D) {
    if (D >= 0 || ((D % 4 + 4) % 4 != 0 && ((D % 4) + 4) % 4 != 1))
        throw std::invalid_argument("reduced_forms: D must be negative, 0 or 1 mod 4");
    std::vector<WeightedForm> out;
    // reduced: -a < b <= a <= c, b >= 0 if a == c
    for (Int a = 1; a * a * 3 <= -D; ++a) {
        for (Int b = -a + 1; b <= a; ++b) {
            Int num = b * b - D;
            if (num % (4 * a) != 0) continue;
            Int c = num / (4 * a);
            if (c < a) continue;
            if (a == c && b < 0) continue;
            WeightedForm wf;
            wf.form = BinaryForm{a, b, c};
            wf.weight = 1.0;
            if (b == 0 && a == c) wf.weight = 0.5;          // class of x^2 + y^2
            else if (a == b && b == c) wf.weight = 1.0 / 3;  // class of x^2 + xy + y^2
            // a == c with b == a is the hexagonal class too
            else if (a == c && b == a) wf.weight = 1.0 / 3;
            out.push_back(wf);
        }
    }
    return out;
}

double hurwitz_weighted_count(Int D) {
    double s = 0;
    for (auto& wf : reduced_forms(D)) s += wf.weight;
    return s;
}

namespace {

double orbifold_weight(const BinaryForm& reduced) {
    if (reduced.b == 0 && reduced.a == reduced.c) return 0.5;
    if (reduced.a == reduced.b && reduced.b == reduced.c) return 1.0 / 3;
    return 1.0;
}

}  // namespace

std::vector<FixedPointRecord> elliptic_fixed_points(Int N) {
    if (N < 1) throw std::invalid_argument("elliptic_fixed_points: N < 1");
    // Search route: scan integral matrices gamma = [[(t-B)/2, -C], [A, (t+B)/2]]
    // of determinant N over a box strictly containing the reduced domain,
    // canonicalize each class by reducing the fixed-point form (c, d-a, -b),
    // and deduplicate. The reduced-form enumeration is the separate oracle.
    std::vector<FixedPointRecord> out;
    Int tmax = isqrt_floor(std::max<Int>(0, 4 * N - 1));
    for (Int t = -tmax; t <= tmax; ++t) {
        if (t * t >= 4 * N) continue;
        Int D = t * t - 4 * N;
        std::map<BinaryForm, FixedPointRecord> classes;
        Int abound = isqrt_floor(-D) + 1;  // larger than the reduced bound sqrt(|D|/3)
        for (Int A = 1; A <= abound; ++A) {
            for (Int B = -2 * A; B <= 2 * A; ++B) {
                Int num = B * B - D;
                if (num % (4 * A) != 0) continue;
                Int C = num / (4 * A);
                if (C <= 0) continue;
                if ((t - B) % 2 != 0) continue;  // cannot happen: B = t mod 2
                HeckeMatrix gamma{(t - B) / 2, -C, A, (t + B) / 2};
                if (gamma.det() != N || gamma.trace() != t || !gamma.elliptic()) continue;
                BinaryForm f{gamma.c, gamma.d - gamma.a, -gamma.b};
                BinaryForm red = reduce_form(f);
                if (classes.count(red)) continue;
                FixedPointRecord rec;
                rec.trace = t;
                rec.disc = D;
                rec.form = red;
                rec.weight = orbifold_weight(red);
                rec.z = reduce_to_fundamental_domain(fixed_point(gamma)).z;
                classes.emplace(red, rec);
            }
        }
        for (auto& [f, rec] : classes) out.push_back(rec);
    }
    std::sort(out.begin(), out.end(), [](const FixedPointRecord& p, const FixedPointRecord& q) {
        return std::tie(p.trace, p.form.a, p.form.b, p.form.c) <
               std::tie(q.trace, q.form.a, q.form.b, q.form.c);
    });
    return out;
}

CMReport cm_equidistribution_report(const std::vector<Int>& N_set,
                                    const std::vector<FDRegion>& regions) {
    CMReport rep;
    std::map<std::string, CMRegionRow> agg;
    for (auto& rg : regions) {
        CMRegionRow row;
        row.N = 0;
        row.region_id = rg.id;
        row.area = rg.area();
        agg[rg.id] = row;
    }
    for (Int N : N_set) {
        // Classes come from the direct reduced-form enumeration here; the
        // search route of elliptic_fixed_points produces the same classes
        // (that equality is what the class-count tests pin down) but would
        // be needlessly slow over thousands of N.
        Int tmax = isqrt_floor(std::max<Int>(0, 4 * N - 1));
        for (auto& rg : regions) {
            CMRegionRow row;
            row.N = N;
            row.region_id = rg.id;
            row.area = rg.area();
            rep.rows.push_back(row);
        }
        size_t base = rep.rows.size() - regions.size();
        for (Int t = -tmax; t <= tmax; ++t) {
            if (t * t >= 4 * N) continue;
            for (auto& wf : reduced_forms(t * t - 4 * N)) {
                double A = static_cast<double>(wf.form.a);
                double B = static_cast<double>(wf.form.b);
                UHPoint z{-B / (2 * A),
                          std::sqrt(static_cast<double>(4 * N - t * t)) / (2 * A)};
                for (size_t g = 0; g < regions.size(); ++g)
                    if (regions[g].contains(z)) rep.rows[base + g].count += wf.weight;
            }
        }
        for (size_t g = 0; g < regions.size(); ++g) {
            CMRegionRow& row = rep.rows[base + g];
            row.ratio = row.count / row.area;
            agg[row.region_id].count += row.count;
        }
    }
    for (auto& rg : regions) {
        CMRegionRow& row = agg[rg.id];
        row.ratio = row.count / row.area;
        rep.aggregated.push_back(row);
    }
    for (size_t i = 0; i < rep.aggregated.size(); ++i)
        for (size_t j = i + 1; j < rep.aggregated.size(); ++j) {
            double a = rep.aggregated[i].ratio, b = rep.aggregated[j].ratio;
            double dev = std::abs(a - b) / std::max(std::abs(a), std::abs(b));
            rep.max_pairwise_ratio_deviation = std::max(rep.max_pairwise_ratio_deviation, dev);
        }
    return rep;
}

std::string cm_points_csv(Int N, const std::vector<FixedPointRecord>& records) {
    std::string out = "N,t,D,x,y,weight\n";
    char buf[160];
    for (auto& r : records) {
        std::snprintf(buf, sizeof buf, "%lld,%lld,%lld,%.12g,%.12g,%.12g\n",
                      static_cast<long long>(N), static_cast<long long>(r.trace),
                      static_cast<long long>(r.disc), r.z.x, r.z.y, r.weight);
        out += buf;
    }
    return out;
}

std::string cm_regions_csv(const CMReport& report) {
    std::string out = "N,region_id,count,area,ratio\n";
    char buf[160];
    for (auto& r : report.rows) {
        std::snprintf(buf, sizeof buf, "%lld,%s,%.12g,%.12g,%.12g\n",
                      static_cast<long long>(r.N), r.region_id.c_str(), r.count, r.area, r.ratio);
        out += buf;
    }
    return out;
}

}  // namespace eql
