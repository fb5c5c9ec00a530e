#include "equilattice/pullpush.hpp"

#include <unsupported/Eigen/MatrixFunctions>

namespace eql {

AlternatingForm volume_form_of_complement(const LieConfiguration& cfg,
                                          const Eigen::MatrixXd& onb, double sign) {
    int m = static_cast<int>(onb.cols());
    AlternatingForm omega(cfg.n, 0);
    omega.coef[0] = sign;
    for (int j = 0; j < m; ++j) {
        Eigen::VectorXd b = onb.col(j);
        double q = cfg.killing_of(b, b);
        Eigen::VectorXd phi = (cfg.killing * b) / q;  // phi(b) = 1, phi(subspace) = 0
        omega = wedge(omega, AlternatingForm::covector(phi));
    }
    return omega;
}

MultiVector fiber_multivector(const LieConfiguration& cfg) {
    if (cfg.kl.cols() == 0) {
        MultiVector u(cfg.n, 0);
        u.coef[0] = 1.0;
        return u;
    }
    MultiVector u = MultiVector::wedge_of(cfg.kl);
    for (auto& v : u.coef) v *= cfg.u_sign;
    return u;
}

AlternatingForm adjoint_pullback(const LieConfiguration& cfg, const AlternatingForm& alpha,
                                 const Eigen::MatrixXd& ad_matrix) {
    (void)cfg;
    return pullback(alpha, ad_matrix);
}

PullPushResult pull_push(const LieConfiguration& cfg, int nodes) {
    if (cfg.fiber_period <= 0) throw std::invalid_argument("pull_push: fiber period not set");
    PullPushResult res;
    res.nodes = nodes;

    AlternatingForm omega_gh =
        volume_form_of_complement(cfg, cfg.h_perp, cfg.omega_gh_sign);
    MultiVector u = fiber_multivector(cfg);
    AlternatingForm iota = contract(omega_gh, u);

    // speed of the coset circle under the |Killing| metric
    Eigen::VectorXd X = cfg.fiber_gen;
    double speed = std::sqrt(std::abs(cfg.killing_of(X, X)));
    double T = cfg.fiber_period;
    double weight = T * speed / nodes;
    res.fiber_volume = T * speed;
    if (cfg.kl.cols() == 0) {
        // K = L: nothing to average
        res.form = iota;
        res.fiber_volume = 1.0;
        return res;
    }

    Eigen::MatrixXd adX = cfg.ad(X);
    AlternatingForm acc(cfg.n, iota.degree);
    for (int j = 0; j < nodes; ++j) {
        double theta = T * (j + 0.5) / nodes;
        Eigen::MatrixXd Ad = (theta * adX).exp();
        acc += pullback(iota, Ad) * cplx(weight, 0);
    }
    res.form = acc;

    // kernel check: insert each k-direction
    for (int kc = 0; kc < cfg.k_basis.cols(); ++kc) {
        Eigen::VectorXd kv = cfg.k_basis.col(kc);
        MultiVector mv(cfg.n, 1);
        for (int i = 0; i < cfg.n; ++i) mv.coef[i] = kv(i);
        AlternatingForm c = contract(res.form, mv);
        res.kernel_residual = std::max(res.kernel_residual, c.max_abs());
    }

    // invariance check: Ad of a few net elements must fix the form
    for (int j = 1; j <= 8; ++j) {
        double theta = T * j / 8.3;
        Eigen::MatrixXd Ad = (theta * adX).exp();
        AlternatingForm moved = pullback(res.form, Ad);
        res.invariance_residual =
            std::max(res.invariance_residual, (moved - res.form).max_abs());
    }
    return res;
}

std::optional<VanishingWitness> vanishing_criterion_check(const LieConfiguration& cfg,
                                                          int nodes) {
    if (cfg.hl.cols() == 0) return std::nullopt;
    Eigen::MatrixXd adX = cfg.ad(cfg.fiber_gen);
    double T = cfg.fiber_period;
    int mh = static_cast<int>(cfg.hl.cols());

    // solve [hl l] * C = Ad * hl: the top block is the induced map on h/l
    Eigen::MatrixXd hl_l(cfg.n, mh + cfg.l_basis.cols());
    hl_l << cfg.hl, cfg.l_basis;
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(hl_l);

    for (int j = 0; j < nodes; ++j) {
        double theta = T * j / nodes;
        Eigen::MatrixXd Ad = (theta * adX).exp();
        Eigen::MatrixXd img = Ad * cfg.hl;
        Eigen::MatrixXd C = qr.solve(img);
        double resid = (hl_l * C - img).norm();
        if (resid > 1e-8) continue;  // does not preserve h/l
        Eigen::MatrixXd induced = C.topRows(mh);
        double det = induced.determinant();
        if (det < -1e-6) {
            VanishingWitness w;
            w.theta = theta;
            w.det_on_hl = det;
            w.adjoint = Ad;
            return w;
        }
    }
    return std::nullopt;
}

NonvanishingReport complex_nonvanishing_check(const LieConfiguration& cfg, int nodes) {
    if (!cfg.J) throw std::invalid_argument("nonvanishing check: no complex structure");
    const Eigen::MatrixXd& J = *cfg.J;
    NonvanishingReport rep;

    // J must commute with the fiber action
    Eigen::MatrixXd adX = cfg.ad(cfg.fiber_gen);
    for (int j = 0; j < nodes; ++j) {
        double theta = cfg.fiber_period * j / nodes;
        Eigen::MatrixXd Ad = (theta * adX).exp();
        // compare on g/k only
        Eigen::MatrixXd diff = (Ad * J - J * Ad) * cfg.k_perp;
        rep.j_invariance_residual = std::max(rep.j_invariance_residual, diff.norm());
    }

    // image of h/l inside g/k, then a J-stable complement
    Eigen::MatrixXd img(cfg.n, cfg.hl.cols());
    for (int j2 = 0; j2 < cfg.hl.cols(); ++j2) {
        // Killing-orthoproject onto k_perp
        Eigen::VectorXd v = cfg.hl.col(j2);
        Eigen::MatrixXd g = cfg.k_basis.transpose() * cfg.killing * cfg.k_basis;
        Eigen::VectorXd coef =
            g.fullPivLu().solve(cfg.k_basis.transpose() * cfg.killing * v);
        img.col(j2) = v - cfg.k_basis * coef;
    }
    // h/l must be J-stable
    {
        Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(img);
        Eigen::MatrixXd jimg = J * img;
        if ((img * qr.solve(jimg) - jimg).norm() > 1e-8)
            throw std::invalid_argument("nonvanishing check: h/l not J-stable");
    }

    // greedy complex complement of img inside k_perp
    std::vector<Eigen::VectorXd> comp;
    Eigen::MatrixXd span = img;
    auto in_span = [&](const Eigen::VectorXd& v, const Eigen::MatrixXd& S) {
        if (S.cols() == 0) return false;
        Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(S);
        return (S * qr.solve(v) - v).norm() < 1e-8;
    };
    for (int j2 = 0; j2 < cfg.k_perp.cols(); ++j2) {
        Eigen::VectorXd w = cfg.k_perp.col(j2);
        if (in_span(w, span)) continue;
        Eigen::MatrixXd span2(cfg.n, span.cols() + 2);
        span2 << span, w, J * w;
        comp.push_back(w);
        comp.push_back(J * w);
        span = span2;
        if (span.cols() >= cfg.k_perp.cols() + 0) break;
    }
    auto pp = pull_push(cfg);
    if (static_cast<int>(comp.size()) != pp.form.degree)
        throw std::logic_error("nonvanishing check: complement dimension mismatch");
    Eigen::MatrixXd W(cfg.n, static_cast<int>(comp.size()));
    for (size_t i = 0; i < comp.size(); ++i) W.col(static_cast<int>(i)) = comp[i];
    rep.value = pp.form.eval_real(W);
    rep.positive = rep.value > 0;
    return rep;
}

}  // namespace eql
