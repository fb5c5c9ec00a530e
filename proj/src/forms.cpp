#include "equilattice/forms.hpp"

#include <map>
#include <mutex>

namespace eql {

const SubsetTable& SubsetTable::get(int n) {
    static std::mutex mu;
    static std::map<int, SubsetTable> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    if (n < 0 || n > 14) throw std::invalid_argument("SubsetTable: dimension out of range");
    SubsetTable t;
    t.n = n;
    t.masks.resize(n + 1);
    t.rank.assign(1u << n, -1);
    for (std::uint32_t m = 0; m < (1u << n); ++m)
        t.masks[__builtin_popcount(m)].push_back(static_cast<std::uint16_t>(m));
    for (int k = 0; k <= n; ++k)
        for (size_t i = 0; i < t.masks[k].size(); ++i) t.rank[t.masks[k][i]] = static_cast<int>(i);
    return cache.emplace(n, std::move(t)).first->second;
}

int merge_sign(std::uint16_t a, std::uint16_t b) {
    // (-1)^{#{(x,y) : x in a, y in b, x > y}}
    int inv = 0;
    std::uint16_t bb = b;
    while (bb) {
        int y = __builtin_ctz(bb);
        bb = static_cast<std::uint16_t>(bb & (bb - 1));
        std::uint32_t above = a & ~((1u << (y + 1)) - 1u);
        inv += __builtin_popcount(above);
    }
    return (inv & 1) ? -1 : 1;
}

AlternatingForm::AlternatingForm(int n_, int degree_) : n(n_), degree(degree_) {
    coef.assign(SubsetTable::get(n).masks[degree].size(), cplx(0, 0));
}

AlternatingForm AlternatingForm::zero(int n, int degree) { return AlternatingForm(n, degree); }

AlternatingForm AlternatingForm::covector(const Eigen::VectorXd& phi) {
    AlternatingForm f(static_cast<int>(phi.size()), 1);
    for (int i = 0; i < phi.size(); ++i) f.coef[i] = phi(i);
    return f;
}

cplx& AlternatingForm::at(std::uint16_t mask) {
    return coef[SubsetTable::get(n).rank[mask]];
}
cplx AlternatingForm::at(std::uint16_t mask) const {
    return coef[SubsetTable::get(n).rank[mask]];
}

AlternatingForm AlternatingForm::operator+(const AlternatingForm& o) const {
    AlternatingForm r = *this;
    r += o;
    return r;
}
AlternatingForm AlternatingForm::operator-(const AlternatingForm& o) const {
    AlternatingForm r = *this;
    for (size_t i = 0; i < coef.size(); ++i) r.coef[i] -= o.coef[i];
    return r;
}
AlternatingForm AlternatingForm::operator*(cplx s) const {
    AlternatingForm r = *this;
    r *= s;
    return r;
}
AlternatingForm& AlternatingForm::operator+=(const AlternatingForm& o) {
    if (n != o.n || degree != o.degree) throw std::invalid_argument("form shape mismatch");
    for (size_t i = 0; i < coef.size(); ++i) coef[i] += o.coef[i];
    return *this;
}
AlternatingForm& AlternatingForm::operator*=(cplx s) {
    for (auto& c : coef) c *= s;
    return *this;
}

double AlternatingForm::norm() const {
    double s = 0;
    for (auto& c : coef) s += std::norm(c);
    return std::sqrt(s);
}
double AlternatingForm::max_abs() const {
    double s = 0;
    for (auto& c : coef) s = std::max(s, std::abs(c));
    return s;
}
bool AlternatingForm::is_real(double tol) const {
    for (auto& c : coef)
        if (std::abs(c.imag()) > tol) return false;
    return true;
}

cplx AlternatingForm::eval(const Eigen::MatrixXcd& vectors) const {
    if (vectors.cols() != degree || vectors.rows() != n)
        throw std::invalid_argument("eval: shape mismatch");
    const auto& tbl = SubsetTable::get(n);
    cplx acc(0, 0);
    Eigen::MatrixXcd sub(degree, degree);
    for (size_t idx = 0; idx < coef.size(); ++idx) {
        if (coef[idx] == cplx(0, 0)) continue;
        std::uint16_t mask = tbl.masks[degree][idx];
        int row = 0;
        std::uint16_t mm = mask;
        while (mm) {
            int i = __builtin_ctz(mm);
            mm = static_cast<std::uint16_t>(mm & (mm - 1));
            sub.row(row++) = vectors.row(i);
        }
        acc += coef[idx] * sub.determinant();
    }
    return acc;
}

double AlternatingForm::eval_real(const Eigen::MatrixXd& vectors) const {
    return eval(vectors.cast<cplx>()).real();
}

AlternatingForm wedge(const AlternatingForm& a, const AlternatingForm& b) {
    if (a.n != b.n) throw std::invalid_argument("wedge: ambient mismatch");
    AlternatingForm r(a.n, a.degree + b.degree);
    const auto& tbl = SubsetTable::get(a.n);
    const auto& am = tbl.masks[a.degree];
    const auto& bm = tbl.masks[b.degree];
    for (size_t i = 0; i < am.size(); ++i) {
        if (a.coef[i] == cplx(0, 0)) continue;
        for (size_t j = 0; j < bm.size(); ++j) {
            if (b.coef[j] == cplx(0, 0)) continue;
            if (am[i] & bm[j]) continue;
            int s = merge_sign(am[i], bm[j]);
            r.coef[tbl.rank[am[i] | bm[j]]] += static_cast<double>(s) * a.coef[i] * b.coef[j];
        }
    }
    return r;
}

MultiVector::MultiVector(int n_, int degree_) : n(n_), degree(degree_) {
    coef.assign(SubsetTable::get(n).masks[degree].size(), 0.0);
}

MultiVector MultiVector::wedge_of(const Eigen::MatrixXd& vectors) {
    MultiVector u(static_cast<int>(vectors.rows()), static_cast<int>(vectors.cols()));
    const auto& tbl = SubsetTable::get(u.n);
    Eigen::MatrixXd sub(u.degree, u.degree);
    for (size_t idx = 0; idx < u.coef.size(); ++idx) {
        std::uint16_t mask = tbl.masks[u.degree][idx];
        int row = 0;
        std::uint16_t mm = mask;
        while (mm) {
            int i = __builtin_ctz(mm);
            mm = static_cast<std::uint16_t>(mm & (mm - 1));
            sub.row(row++) = vectors.row(i);
        }
        u.coef[idx] = sub.determinant();
    }
    return u;
}

AlternatingForm contract(const AlternatingForm& alpha, const MultiVector& u) {
    if (alpha.n != u.n) throw std::invalid_argument("contract: ambient mismatch");
    if (u.degree > alpha.degree) throw std::invalid_argument("contract: degree mismatch");
    AlternatingForm r(alpha.n, alpha.degree - u.degree);
    const auto& tbl = SubsetTable::get(alpha.n);
    const auto& um = tbl.masks[u.degree];
    const auto& rm = tbl.masks[r.degree];
    for (size_t j = 0; j < rm.size(); ++j) {
        cplx acc(0, 0);
        for (size_t i = 0; i < um.size(); ++i) {
            if (u.coef[i] == 0.0) continue;
            if (um[i] & rm[j]) continue;
            int s = merge_sign(um[i], rm[j]);
            acc += static_cast<double>(s) * u.coef[i] * alpha.coef[tbl.rank[um[i] | rm[j]]];
        }
        r.coef[j] = acc;
    }
    return r;
}

namespace {

AlternatingForm transform(const AlternatingForm& alpha, const Eigen::MatrixXd& A, int m) {
    // coefficients of the pulled-back form on R^m: sum_S alpha_S det(A[S, T])
    AlternatingForm r(m, alpha.degree);
    if (alpha.degree == 0) {
        r.coef = alpha.coef;
        return r;
    }
    const auto& tbl_from = SubsetTable::get(alpha.n);
    const auto& tbl_to = SubsetTable::get(m);
    const auto& sm = tbl_from.masks[alpha.degree];
    const auto& tm = tbl_to.masks[alpha.degree];
    int p = alpha.degree;
    Eigen::MatrixXd sub(p, p);
    std::vector<int> srows(p), tcols(p);
    for (size_t ti = 0; ti < tm.size(); ++ti) {
        std::uint16_t tmask = tm[ti];
        int c = 0;
        std::uint16_t mm = tmask;
        while (mm) {
            tcols[c++] = __builtin_ctz(mm);
            mm = static_cast<std::uint16_t>(mm & (mm - 1));
        }
        cplx acc(0, 0);
        for (size_t si = 0; si < sm.size(); ++si) {
            if (alpha.coef[si] == cplx(0, 0)) continue;
            std::uint16_t smask = sm[si];
            int rr = 0;
            std::uint16_t ss = smask;
            while (ss) {
                srows[rr++] = __builtin_ctz(ss);
                ss = static_cast<std::uint16_t>(ss & (ss - 1));
            }
            for (int i = 0; i < p; ++i)
                for (int j = 0; j < p; ++j) sub(i, j) = A(srows[i], tcols[j]);
            acc += alpha.coef[si] * sub.determinant();
        }
        r.coef[ti] = acc;
    }
    return r;
}

}  // namespace

AlternatingForm pullback(const AlternatingForm& alpha, const Eigen::MatrixXd& A) {
    if (A.rows() != alpha.n || A.cols() != alpha.n)
        throw std::invalid_argument("pullback: matrix shape mismatch");
    return transform(alpha, A, alpha.n);
}

AlternatingForm restrict_to(const AlternatingForm& alpha, const Eigen::MatrixXd& inj) {
    if (inj.rows() != alpha.n) throw std::invalid_argument("restrict_to: shape mismatch");
    return transform(alpha, inj, static_cast<int>(inj.cols()));
}

}  // namespace eql
