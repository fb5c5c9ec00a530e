#include "equilattice/multiplicity.hpp"

#include <sstream>

#include "json.hpp"

namespace eql {

MultiplicitySeries multiplicity_series(int r, Int K) {
    if (r < 1 || K < 1) throw std::invalid_argument("multiplicity_series: bad arguments");
    std::vector<BigInt> b(K + 1, 1);
    b[0] = 0;
    // repeatedly convolve with the coefficients of zeta(s - i), i.e. k^i
    for (int i = 1; i < r; ++i) {
        std::vector<BigInt> next(K + 1, 0);
        for (Int d = 1; d <= K; ++d) {
            BigInt di = big_pow(BigInt(d), static_cast<unsigned>(i));
            for (Int m = d; m <= K; m += d) next[m] += b[m / d] * di;
        }
        b.swap(next);
    }
    MultiplicitySeries s;
    s.rank = r;
    s.K = K;
    s.b = std::move(b);
    return s;
}

namespace {

// structural count over HNF pivot chains: the column-HNF of an index-k
// sublattice of Z^r has positive pivots d_1 ... d_r with product k and
// d_i^(i-1) choices of reduced entries in pivot row i
BigInt hnf_count_rec(int r, Int k) {
    if (r == 1) return 1;
    BigInt total = 0;
    for (Int d = 1; d <= k; ++d) {
        if (k % d != 0) continue;
        total += big_pow(BigInt(d), static_cast<unsigned>(r - 1)) * hnf_count_rec(r - 1, k / d);
    }
    return total;
}

}  // namespace

SublatticeIndexCount count_sublattices_of_index(int r, Int k) {
    if (r < 1 || k < 1) throw std::invalid_argument("count_sublattices_of_index: bad arguments");
    SublatticeIndexCount c;
    c.hnf_count = hnf_count_rec(r, k);
    c.dirichlet_coeff = multiplicity_series(r, k).at(k);
    if (c.hnf_count != c.dirichlet_coeff)
        throw std::logic_error("sublattice index count: HNF and Dirichlet routes disagree");
    return c;
}

AlphaEstimate alpha_constant(int r, int d, Int K) {
    if (d <= r + 1) throw std::invalid_argument("alpha_constant: requires d >= r + 2");
    if (K < 1) throw std::invalid_argument("alpha_constant: K < 1");
    auto series = multiplicity_series(r, K);
    AlphaEstimate a;
    a.rank = r;
    a.dim = d;
    a.K = K;
    a.partial = 0;
    for (Int k = 1; k <= K; ++k)
        a.partial += Rat(series.at(k)) / Rat(big_pow(BigInt(k), static_cast<unsigned>(d)));
    // b_k <= k^r gives sum_{k>K} k^{r-d} <= K^{r-d+1} / (d-r-1)
    a.tail = Rat(1) / Rat(big_pow(BigInt(K), static_cast<unsigned>(d - r - 1)) * (d - r - 1));
    return a;
}

MultiplicityRelationReport verify_multiplicity_relation(const QuadraticLattice& L, int r, Int n) {
    MultiplicityRelationReport rep;
    rep.n = n;
    rep.rank = r;

    auto subs = enumerate_sublattices_disc_leq(L, r, n);
    rep.nu_total = static_cast<Int>(subs.size());

    Int kmax = isqrt_floor(n);
    auto series = multiplicity_series(r, std::max<Int>(1, kmax));

    // primitive planes up to n, keyed by basis
    auto planes = enumerate_primitive_planes(L, r, n);
    std::map<std::string, size_t> plane_slot;
    auto key_of = [](const IMat& b) {
        std::string s;
        for (Int v : b.a) {
            s += std::to_string(v);
            s += ',';
        }
        return s;
    };
    rep.rows.reserve(planes.size());
    for (auto& p : planes) {
        PlaneRelationRow row;
        row.plane = p;
        row.plane_disc = p.disc;
        row.observed_count = 0;
        BigInt expected = 0;
        for (Int k = 1; k <= kmax; ++k) {
            if (p.disc * k * k <= n) expected += series.at(k);
        }
        row.expected_count = expected;
        plane_slot[key_of(p.basis)] = rep.rows.size();
        rep.rows.push_back(std::move(row));
    }

    // attribute each sublattice to its saturation (primitive ones are their
    // own saturation, no Smith form needed)
    for (auto& s : subs) {
        std::string key;
        if (s.primitive) {
            key = key_of(s.basis);
        } else {
            auto [sat, idx] = primitive_closure(L, s);
            key = key_of(sat.basis);
        }
        auto it = plane_slot.find(key);
        if (it == plane_slot.end())
            throw std::logic_error("relation check: saturation not among primitive planes");
        rep.rows[it->second].observed_count += 1;
    }

    // nu' at the truncated levels, and the summed right-hand side
    rep.nu_sum_side = 0;
    rep.nu_prime_truncated.assign(static_cast<size_t>(kmax) + 1, 0);
    for (Int k = 1; k <= kmax; ++k) {
        Int m = n / (k * k);
        BigInt cnt = 0;
        for (auto& row : rep.rows)
            if (row.plane_disc <= m) ++cnt;
        rep.nu_prime_truncated[static_cast<size_t>(k)] = cnt;
        rep.nu_sum_side += series.at(k) * cnt;
    }

    rep.total_equal = (rep.nu_total == rep.nu_sum_side);
    rep.all_planes_equal = true;
    for (auto& row : rep.rows) {
        row.equal = (row.observed_count == row.expected_count);
        if (!row.equal) rep.all_planes_equal = false;
    }
    return rep;
}

std::string relation_report_to_json(const MultiplicityRelationReport& rep) {
    nlohmann::json j;
    j["n"] = rep.n;
    j["rank"] = rep.rank;
    j["nu_total"] = rep.nu_total.str();
    j["nu_sum_side"] = rep.nu_sum_side.str();
    j["total_equal"] = rep.total_equal;
    j["all_planes_equal"] = rep.all_planes_equal;
    auto rows = nlohmann::json::array();
    for (auto& row : rep.rows) {
        nlohmann::json rj;
        rj["plane_disc"] = row.plane_disc.str();
        rj["observed"] = row.observed_count.str();
        rj["expected"] = row.expected_count.str();
        rj["equal"] = row.equal;
        rows.push_back(rj);
    }
    j["planes"] = rows;
    return j.dump(2);
}

}  // namespace eql
