#include "equilattice/chern.hpp"

namespace eql {

CurvatureForm curvature_form(const LieConfiguration& cfg, const std::string& block_name) {
    auto it = cfg.blocks.find(block_name);
    if (it == cfg.blocks.end())
        throw std::invalid_argument("curvature_form: unknown block " + block_name);
    const CurvatureBlock& blk = it->second;
    int bdim = static_cast<int>(blk.indices.size());
    if (blk.rep.size() != blk.indices.size())
        throw std::invalid_argument("curvature_form: representation size mismatch");
    int h = static_cast<int>(blk.rep[0].rows());

    // block must be an ideal of k
    Eigen::MatrixXd bb(cfg.n, bdim);
    for (int j = 0; j < bdim; ++j) bb.col(j) = Eigen::VectorXd::Unit(cfg.n, blk.indices[j]);
    {
        Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(bb);
        for (int i = 0; i < cfg.k_basis.cols(); ++i)
            for (int j = 0; j < bdim; ++j) {
                Eigen::VectorXd br = cfg.bracket(cfg.k_basis.col(i), bb.col(j));
                if ((bb * qr.solve(br) - br).norm() > 1e-8)
                    throw std::invalid_argument("curvature_form: block not an ideal of k");
            }
    }

    // Killing-orthogonal projection onto the block
    Eigen::MatrixXd gb = bb.transpose() * cfg.killing * bb;
    Eigen::FullPivLU<Eigen::MatrixXd> gblu(gb);
    auto project_block = [&](const Eigen::VectorXd& v) -> Eigen::VectorXd {
        return gblu.solve(bb.transpose() * cfg.killing * v);  // block coordinates
    };

    // Killing-orthogonal projection of g onto k_perp (to evaluate on lifts)
    Eigen::MatrixXd gk = cfg.k_basis.transpose() * cfg.killing * cfg.k_basis;
    Eigen::FullPivLU<Eigen::MatrixXd> gklu(gk);
    auto to_kperp = [&](const Eigen::VectorXd& v) -> Eigen::VectorXd {
        if (cfg.k_basis.cols() == 0) return v;
        return v - cfg.k_basis * gklu.solve(cfg.k_basis.transpose() * cfg.killing * v);
    };

    CurvatureForm F;
    F.block_size = h;
    F.entries.assign(h, std::vector<AlternatingForm>(h, AlternatingForm(cfg.n, 2)));

    const auto& tbl = SubsetTable::get(cfg.n);
    for (std::uint16_t mask : tbl.masks[2]) {
        int a = __builtin_ctz(mask);
        int b = __builtin_ctz(mask & (mask - 1));
        if (b < a) std::swap(a, b);
        Eigen::VectorXd u = to_kperp(Eigen::VectorXd::Unit(cfg.n, a));
        Eigen::VectorXd v = to_kperp(Eigen::VectorXd::Unit(cfg.n, b));
        // F(u,v) = proj([u,v]) - [proj u, proj v]; the projections of
        // k-orthogonal lifts vanish, so only the first term survives
        Eigen::VectorXd br = cfg.bracket(u, v);
        Eigen::VectorXd bc = project_block(br);
        Eigen::VectorXd pu = project_block(u), pv = project_block(v);
        F.block_residual = std::max(F.block_residual, std::max(pu.norm(), pv.norm()));
        Eigen::MatrixXcd val = Eigen::MatrixXcd::Zero(h, h);
        for (int t = 0; t < bdim; ++t) val += bc(t) * blk.rep[t];
        // commutator term for generality (zero here since proj(lift) = 0)
        Eigen::MatrixXcd rep_u = Eigen::MatrixXcd::Zero(h, h), rep_v = rep_u;
        for (int t = 0; t < bdim; ++t) {
            rep_u += pu(t) * blk.rep[t];
            rep_v += pv(t) * blk.rep[t];
        }
        val -= rep_u * rep_v - rep_v * rep_u;
        for (int i = 0; i < h; ++i)
            for (int j = 0; j < h; ++j) F.entries[i][j].at(mask) = val(i, j);
    }

    // antisymmetry is structural; values must stay anti-Hermitian (the
    // compact block), which is what the residual below measures
    for (std::uint16_t mask : tbl.masks[2]) {
        Eigen::MatrixXcd val(h, h);
        for (int i = 0; i < h; ++i)
            for (int j = 0; j < h; ++j) val(i, j) = F.entries[i][j].at(mask);
        F.antisymmetry_residual =
            std::max(F.antisymmetry_residual, (val + val.adjoint()).norm());
    }
    return F;
}

AlternatingForm chern_form(const CurvatureForm& curv, int level) {
    int h = curv.block_size;
    if (level < 0 || level > h) throw std::invalid_argument("chern_form: level out of range");
    int n = level > 0 ? curv.entries[0][0].n : (curv.entries.empty() ? 1 : curv.entries[0][0].n);
    if (level == 0) {
        AlternatingForm one(n, 0);
        one.coef[0] = 1.0;
        return one;
    }
    // sum over size-level subsets S and permutations sigma of S of
    // sgn(sigma) Theta_{s sigma(s)} wedge ...
    AlternatingForm acc(n, 2 * level);
    std::vector<int> subset(level);
    std::function<void(int, int)> choose = [&](int start, int depth) {
        if (depth == level) {
            std::vector<int> perm(subset);
            std::sort(perm.begin(), perm.end());
            do {
                // permutation sign
                int inv = 0;
                for (int i = 0; i < level; ++i)
                    for (int j = i + 1; j < level; ++j)
                        if (perm[i] > perm[j]) ++inv;
                AlternatingForm term(n, 0);
                term.coef[0] = (inv % 2) ? -1.0 : 1.0;
                for (int i = 0; i < level; ++i)
                    term = wedge(term, curv.entries[subset[i]][perm[i]]);
                acc += term;
            } while (std::next_permutation(perm.begin(), perm.end()));
            return;
        }
        for (int s = start; s < h; ++s) {
            subset[depth] = s;
            choose(s + 1, depth + 1);
        }
    };
    choose(0, 0);
    cplx factor = std::pow(cplx(0, 1) / (2 * M_PI), level);
    acc *= factor;
    return acc;
}

Proportionality proportionality_test(const AlternatingForm& f1, const AlternatingForm& f2,
                                     const Eigen::MatrixXd& W) {
    if (f1.degree != f2.degree) throw std::invalid_argument("proportionality: degree mismatch");
    AlternatingForm r1 = restrict_to(f1, W);
    AlternatingForm r2 = restrict_to(f2, W);
    double n2 = 0;
    cplx dot(0, 0);
    for (size_t i = 0; i < r2.coef.size(); ++i) {
        n2 += std::norm(r2.coef[i]);
        dot += std::conj(r2.coef[i]) * r1.coef[i];
    }
    if (n2 < 1e-24) throw std::invalid_argument("proportionality: reference restricts to zero");
    Proportionality p;
    p.scalar = dot.real() / n2;
    double diff = 0, n1 = 0;
    for (size_t i = 0; i < r1.coef.size(); ++i) {
        diff += std::norm(r1.coef[i] - p.scalar * r2.coef[i]);
        n1 += std::norm(r1.coef[i]);
    }
    p.residual = n1 > 0 ? std::sqrt(diff / n1) : std::sqrt(diff);
    return p;
}

}  // namespace eql
