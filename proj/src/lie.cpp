#include "equilattice/lie.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include "json.hpp"

namespace eql {

Eigen::MatrixXd LieConfiguration::ad(int i) const {
    Eigen::MatrixXd m(n, n);
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) m(k, j) = structure(i, j, k);
    return m;
}

Eigen::MatrixXd LieConfiguration::ad(const Eigen::VectorXd& x) const {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i)
        if (x(i) != 0.0) m += x(i) * ad(i);
    return m;
}

Eigen::VectorXd LieConfiguration::bracket(const Eigen::VectorXd& x,
                                          const Eigen::VectorXd& y) const {
    return ad(x) * y;
}

Eigen::MatrixXd LieConfiguration::Ad_exp(const Eigen::VectorXd& x) const {
    Eigen::MatrixXd a = ad(x);
    return a.exp();
}

namespace {

constexpr double kStructTol = 1e-10;

Eigen::MatrixXd basis_from_indices(int n, const std::vector<int>& idx) {
    Eigen::MatrixXd b = Eigen::MatrixXd::Zero(n, static_cast<int>(idx.size()));
    for (size_t j = 0; j < idx.size(); ++j) b(idx[j], static_cast<int>(j)) = 1.0;
    return b;
}

// Killing-orthogonal projection of v off the subspace spanned by S
Eigen::VectorXd project_off(const LieConfiguration& cfg, const Eigen::MatrixXd& S,
                            const Eigen::VectorXd& v) {
    if (S.cols() == 0) return v;
    Eigen::MatrixXd g = S.transpose() * cfg.killing * S;
    Eigen::VectorXd rhs = S.transpose() * cfg.killing * v;
    Eigen::VectorXd coef = g.fullPivLu().solve(rhs);
    return v - S * coef;
}

// pseudo-orthonormalize the columns of R against the Killing form, keeping
// the given order (orientation); pivots must stay away from zero
Eigen::MatrixXd pseudo_orthonormalize(const LieConfiguration& cfg, Eigen::MatrixXd R) {
    for (int j = 0; j < R.cols(); ++j) {
        Eigen::VectorXd v = R.col(j);
        for (int i = 0; i < j; ++i) {
            double d = cfg.killing_of(R.col(i), R.col(i));
            double p = cfg.killing_of(R.col(i), v) / d;
            v -= p * R.col(i);
        }
        double q = cfg.killing_of(v, v);
        if (std::abs(q) < 1e-8)
            throw std::invalid_argument("pseudo_orthonormalize: isotropic pivot; reorder the "
                                        "reference basis");
        R.col(j) = v / std::sqrt(std::abs(q));
    }
    return R;
}

bool subspace_closed(const LieConfiguration& cfg, const Eigen::MatrixXd& S) {
    if (S.cols() == 0) return true;
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(S);
    for (int i = 0; i < S.cols(); ++i)
        for (int j = i + 1; j < S.cols(); ++j) {
            Eigen::VectorXd br = cfg.bracket(S.col(i), S.col(j));
            Eigen::VectorXd resid = br - S * qr.solve(br);
            if (resid.norm() > 1e-8) return false;
        }
    return true;
}

int subspace_rank(const Eigen::MatrixXd& A) {
    if (A.cols() == 0) return 0;
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(A);
    qr.setThreshold(1e-9);
    return static_cast<int>(qr.rank());
}

}  // namespace

LieConfiguration build_lie_configuration(const LieConfigurationInput& in) {
    LieConfiguration cfg;
    cfg.name = in.name;
    cfg.description = in.description;
    cfg.n = in.n;
    cfg.c = in.c;
    if (static_cast<int>(cfg.c.size()) != in.n * in.n * in.n)
        throw std::invalid_argument("structure constants: wrong size");

    // antisymmetry and Jacobi
    const int n = cfg.n;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                if (std::abs(cfg.structure(i, j, k) + cfg.structure(j, i, k)) > kStructTol)
                    throw std::invalid_argument("structure constants not antisymmetric");
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            for (int k = j + 1; k < n; ++k) {
                Eigen::VectorXd ei = Eigen::VectorXd::Unit(n, i);
                Eigen::VectorXd ej = Eigen::VectorXd::Unit(n, j);
                Eigen::VectorXd ek = Eigen::VectorXd::Unit(n, k);
                Eigen::VectorXd jac = cfg.bracket(cfg.bracket(ei, ej), ek) +
                                      cfg.bracket(cfg.bracket(ej, ek), ei) +
                                      cfg.bracket(cfg.bracket(ek, ei), ej);
                if (jac.norm() > kStructTol)
                    throw std::invalid_argument("Jacobi identity fails");
            }

    // Killing form
    cfg.killing.resize(n, n);
    for (int i = 0; i < n; ++i) {
        Eigen::MatrixXd adi = cfg.ad(i);
        for (int j = 0; j <= i; ++j) {
            double v = (adi * cfg.ad(j)).trace();
            cfg.killing(i, j) = v;
            cfg.killing(j, i) = v;
        }
    }
    {
        Eigen::FullPivLU<Eigen::MatrixXd> lu(cfg.killing);
        lu.setThreshold(1e-9);
        if (lu.rank() < n)
            throw std::invalid_argument("Killing form degenerate on g");
    }

    cfg.h_idx = in.h_idx;
    cfg.k_idx = in.k_idx;
    cfg.l_idx = in.l_idx;
    cfg.h_basis = basis_from_indices(n, in.h_idx);
    cfg.k_basis = basis_from_indices(n, in.k_idx);
    cfg.l_basis = basis_from_indices(n, in.l_idx);

    if (!subspace_closed(cfg, cfg.h_basis)) throw std::invalid_argument("h not a subalgebra");
    if (!subspace_closed(cfg, cfg.k_basis)) throw std::invalid_argument("k not a subalgebra");
    if (!subspace_closed(cfg, cfg.l_basis)) throw std::invalid_argument("l not a subalgebra");

    // l = h cap k, as dimension counts on index sets
    {
        Eigen::MatrixXd hk(n, cfg.h_basis.cols() + cfg.k_basis.cols());
        hk << cfg.h_basis, cfg.k_basis;
        int dim_sum = subspace_rank(hk);
        int dim_cap = static_cast<int>(cfg.h_basis.cols() + cfg.k_basis.cols()) - dim_sum;
        if (dim_cap != static_cast<int>(cfg.l_idx.size()))
            throw std::invalid_argument("l is not h cap k");
        for (int li : cfg.l_idx) {
            bool in_h = std::find(cfg.h_idx.begin(), cfg.h_idx.end(), li) != cfg.h_idx.end();
            bool in_k = std::find(cfg.k_idx.begin(), cfg.k_idx.end(), li) != cfg.k_idx.end();
            if (!in_h || !in_k) throw std::invalid_argument("l not contained in h cap k");
        }
    }

    // Killing non-degeneracy on the subalgebras
    auto check_nondeg = [&](const Eigen::MatrixXd& S, const char* what) {
        if (S.cols() == 0) return;
        Eigen::MatrixXd g = S.transpose() * cfg.killing * S;
        Eigen::FullPivLU<Eigen::MatrixXd> lu(g);
        lu.setThreshold(1e-9);
        if (lu.rank() < S.cols())
            throw std::invalid_argument(std::string("Killing form degenerate on ") + what);
    };
    check_nondeg(cfg.h_basis, "h");
    check_nondeg(cfg.k_basis, "k");
    check_nondeg(cfg.l_basis, "l");

    // complement realizations from the reference bases
    auto realize = [&](const Eigen::MatrixXd& sub, const Eigen::MatrixXd& ref,
                       int expect) -> Eigen::MatrixXd {
        if (ref.cols() != expect)
            throw std::invalid_argument("reference complement has wrong dimension");
        Eigen::MatrixXd R(n, expect);
        for (int j = 0; j < expect; ++j) R.col(j) = project_off(cfg, sub, ref.col(j));
        if (subspace_rank(R) < expect)
            throw std::invalid_argument("reference complement degenerate after projection");
        return pseudo_orthonormalize(cfg, R);
    };
    cfg.h_perp = realize(cfg.h_basis, in.h_perp_ref, n - static_cast<int>(cfg.h_idx.size()));
    cfg.k_perp = realize(cfg.k_basis, in.k_perp_ref, n - static_cast<int>(cfg.k_idx.size()));
    cfg.l_perp = realize(cfg.l_basis, in.l_perp_ref, n - static_cast<int>(cfg.l_idx.size()));

    auto realize_in = [&](const Eigen::MatrixXd& amb, const Eigen::MatrixXd& sub,
                          const Eigen::MatrixXd& ref, int expect) -> Eigen::MatrixXd {
        if (ref.cols() != expect)
            throw std::invalid_argument("reference fiber basis has wrong dimension");
        Eigen::MatrixXd R(n, expect);
        for (int j = 0; j < expect; ++j) {
            // project the reference vector into amb, then off sub
            Eigen::VectorXd v = ref.col(j);
            R.col(j) = project_off(cfg, sub, v);
        }
        if (subspace_rank(R) < expect)
            throw std::invalid_argument("fiber basis degenerate after projection");
        (void)amb;
        return pseudo_orthonormalize(cfg, R);
    };
    cfg.kl = realize_in(cfg.k_basis, cfg.l_basis, in.kl_ref,
                        static_cast<int>(cfg.k_idx.size() - cfg.l_idx.size()));
    cfg.hl = realize_in(cfg.h_basis, cfg.l_basis, in.hl_ref,
                        static_cast<int>(cfg.h_idx.size() - cfg.l_idx.size()));

    cfg.fiber_gen = in.fiber_gen;
    cfg.fiber_period = in.fiber_period;
    cfg.J = in.J;
    cfg.blocks = in.blocks;
    cfg.omega_gh_sign = in.omega_gh_sign;
    cfg.u_sign = in.u_sign;

    if (cfg.J) {
        const Eigen::MatrixXd& J = *cfg.J;
        Eigen::MatrixXd JJ = J * J;
        // J^2 = -1 on k_perp
        Eigen::MatrixXd resid = JJ * cfg.k_perp + cfg.k_perp;
        if (resid.norm() > 1e-8)
            throw std::invalid_argument("complex structure: J^2 != -1 on g/k");
    }
    return cfg;
}

std::vector<double> structure_constants_from_generators(
    const std::vector<Eigen::MatrixXcd>& gens) {
    int n = static_cast<int>(gens.size());
    if (n == 0) throw std::invalid_argument("no generators");
    int d = static_cast<int>(gens[0].rows());
    int vecdim = 2 * d * d;
    Eigen::MatrixXd G(vecdim, n);
    auto vec_of = [&](const Eigen::MatrixXcd& m) {
        Eigen::VectorXd v(vecdim);
        int t = 0;
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) {
                v(t++) = m(i, j).real();
                v(t++) = m(i, j).imag();
            }
        return v;
    };
    for (int i = 0; i < n; ++i) G.col(i) = vec_of(gens[i]);
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(G);
    if (qr.rank() < n) throw std::invalid_argument("generators not linearly independent");
    std::vector<double> c(static_cast<size_t>(n) * n * n, 0.0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Eigen::MatrixXcd br = gens[i] * gens[j] - gens[j] * gens[i];
            Eigen::VectorXd coef = qr.solve(vec_of(br));
            Eigen::VectorXd resid = G * coef - vec_of(br);
            if (resid.norm() > 1e-9)
                throw std::invalid_argument("generators do not close under bracket");
            for (int k = 0; k < n; ++k) c[(static_cast<size_t>(i) * n + j) * n + k] = coef(k);
        }
    return c;
}

// ---- presets ---------------------------------------------------------------

namespace {

Eigen::MatrixXd cols(int n, std::initializer_list<std::initializer_list<double>> vs) {
    Eigen::MatrixXd m(n, static_cast<int>(vs.size()));
    int j = 0;
    for (auto& v : vs) {
        int i = 0;
        for (double x : v) m(i++, j) = x;
        ++j;
    }
    return m;
}

Eigen::VectorXd unit(int n, int i) { return Eigen::VectorXd::Unit(n, i); }

// ad matrix of basis element i, read off raw structure constants
Eigen::MatrixXd ad_of_input(const LieConfigurationInput& in, int i, double scale) {
    Eigen::MatrixXd m(in.n, in.n);
    for (int j = 0; j < in.n; ++j)
        for (int k = 0; k < in.n; ++k)
            m(k, j) = scale * in.c[(static_cast<size_t>(i) * in.n + j) * in.n + k];
    return m;
}

// sl(2,R) basis used by the rank-one presets:
//   Z = [[0,1],[-1,0]] (compact), H = [[1,0],[0,-1]], Y = [[0,1],[1,0]]
// brackets: [Z,H] = -2Y, [Z,Y] = 2H, [H,Y] = 2Z
std::vector<Eigen::MatrixXcd> sl2_basis() {
    Eigen::MatrixXcd Z(2, 2), H(2, 2), Y(2, 2);
    Z << 0, 1, -1, 0;
    H << 1, 0, 0, -1;
    Y << 0, 1, 1, 0;
    return {Z, H, Y};
}

}  // namespace

LieConfiguration preset_so21_geodesic() {
    LieConfigurationInput in;
    in.name = "so21-geodesic";
    in.description =
        "G = PSL(2,R) acting on the hyperbolic plane, K = SO(2), H the "
        "one-parameter group translating along a geodesic, L trivial. The "
        "rotation by pi reverses the geodesic, so the averaged form vanishes.";
    in.n = 3;
    in.c = structure_constants_from_generators(sl2_basis());
    // basis order (Z, H, Y)
    in.k_idx = {0};
    in.h_idx = {1};
    in.l_idx = {};
    in.h_perp_ref = cols(3, {{1, 0, 0}, {0, 0, 1}});  // (Z, Y)
    in.k_perp_ref = cols(3, {{0, 1, 0}, {0, 0, 1}});  // (H, Y)
    in.l_perp_ref = Eigen::MatrixXd::Identity(3, 3);
    in.kl_ref = cols(3, {{1, 0, 0}});
    in.hl_ref = cols(3, {{0, 1, 0}});
    in.fiber_gen = unit(3, 0);
    in.fiber_period = M_PI;  // Ad-period of exp(theta Z) (adjoint group)
    return build_lie_configuration(in);
}

LieConfiguration preset_sl2xsl2_diagonal() {
    LieConfigurationInput in;
    in.name = "sl2xsl2-diagonal";
    in.description =
        "G = PSL(2,R) x PSL(2,R), H the diagonal, K = SO(2) x SO(2), L the "
        "diagonal circle. The average restricted to the diagonal surface is "
        "a positive multiple of the hyperbolic area form.";
    // basis (dZ, dH, dY, aZ, aH, aY): d = diagonal, a = antidiagonal
    auto b = sl2_basis();
    std::vector<Eigen::MatrixXcd> gens;
    for (int anti = 0; anti < 2; ++anti)
        for (int t = 0; t < 3; ++t) {
            Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(4, 4);
            m.block(0, 0, 2, 2) = b[t];
            m.block(2, 2, 2, 2) = anti ? (-b[t]).eval() : b[t];
            gens.push_back(m);
        }
    in.n = 6;
    in.c = structure_constants_from_generators(gens);
    in.h_idx = {0, 1, 2};  // diagonal copy
    in.k_idx = {0, 3};     // dZ, aZ
    in.l_idx = {0};        // dZ
    // g/h = antidiagonal (aH, aY, aZ); g/k = (dH, dY, aH, aY); fiber = aZ
    in.h_perp_ref = cols(6, {{0, 0, 0, 0, 1, 0}, {0, 0, 0, 0, 0, 1}, {0, 0, 0, 1, 0, 0}});
    in.k_perp_ref = cols(6, {{0, 1, 0, 0, 0, 0}, {0, 0, 1, 0, 0, 0},
                             {0, 0, 0, 0, 1, 0}, {0, 0, 0, 0, 0, 1}});
    in.l_perp_ref = cols(6, {{0, 1, 0, 0, 0, 0}, {0, 0, 1, 0, 0, 0}, {0, 0, 0, 1, 0, 0},
                             {0, 0, 0, 0, 1, 0}, {0, 0, 0, 0, 0, 1}});
    in.kl_ref = cols(6, {{0, 0, 0, 1, 0, 0}});
    in.hl_ref = cols(6, {{0, 1, 0, 0, 0, 0}, {0, 0, 1, 0, 0, 0}});
    in.fiber_gen = unit(6, 3);
    // first return of exp(theta aZ) into the diagonal circle (adjoint group)
    in.fiber_period = M_PI / 2;
    // complex structure: ad(dZ)/2 rotates (dH, dY) and (aH, aY)
    in.J = ad_of_input(in, 0, 0.5);
    // orient omega_{G/H} so the average is positive on complex orientations
    in.omega_gh_sign = -1.0;
    return build_lie_configuration(in);
}

LieConfiguration preset_so22_weight2() {
    LieConfigurationInput in;
    in.name = "so22-weight2";
    in.description =
        "G = SO(2,2) on a signature (2,2) form, K = SO(2) x SO(2) the "
        "stabilizer of the negative definite plane, H = SO(1,2) fixing a "
        "positive vector, L = SO(2). The average is a Kaehler-type (1,1) "
        "form proportional to the first Chern form of the weight-2 line "
        "block.";
    // V = R^4 with B = diag(1,1,-1,-1); basis of so(2,2):
    //   R12 (rotation of the positive plane), R34 (rotation of the negative
    //   plane), B13, B14, B23, B24 (boosts)
    int d = 4;
    auto E = [&](int i, int j) {
        Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(d, d);
        m(i, j) = 1;
        return m;
    };
    std::vector<Eigen::MatrixXcd> gens;
    gens.push_back(E(1, 0) - E(0, 1));  // R12
    gens.push_back(E(3, 2) - E(2, 3));  // R34
    gens.push_back(E(0, 2) + E(2, 0));  // B13
    gens.push_back(E(0, 3) + E(3, 0));  // B14
    gens.push_back(E(1, 2) + E(2, 1));  // B23
    gens.push_back(E(1, 3) + E(3, 1));  // B24
    in.n = 6;
    in.c = structure_constants_from_generators(gens);
    in.h_idx = {1, 4, 5};  // R34, B23, B24: so(1,2) on span(e2; e3, e4)
    in.k_idx = {0, 1};     // R12, R34
    in.l_idx = {1};        // R34
    in.h_perp_ref = cols(6, {{1, 0, 0, 0, 0, 0}, {0, 0, 1, 0, 0, 0}, {0, 0, 0, 1, 0, 0}});
    in.k_perp_ref = cols(6, {{0, 0, 1, 0, 0, 0}, {0, 0, 0, 1, 0, 0},
                             {0, 0, 0, 0, 1, 0}, {0, 0, 0, 0, 0, 1}});
    in.l_perp_ref = cols(6, {{1, 0, 0, 0, 0, 0}, {0, 0, 1, 0, 0, 0}, {0, 0, 0, 1, 0, 0},
                             {0, 0, 0, 0, 1, 0}, {0, 0, 0, 0, 0, 1}});
    in.kl_ref = cols(6, {{1, 0, 0, 0, 0, 0}});
    in.hl_ref = cols(6, {{0, 0, 0, 0, 1, 0}, {0, 0, 0, 0, 0, 1}});
    in.fiber_gen = unit(6, 0);
    in.fiber_period = 2 * M_PI;
    // complex structure: ad(R34) rotates (B13, B14) and (B23, B24), which
    // keeps the H-orbit directions (B23, B24) complex
    in.J = ad_of_input(in, 1, 1.0);
    // the rotation of the negative plane acts on the weight-2 line block by
    // +i (line spanned by e3 - i e4, matching the J orientation above)
    CurvatureBlock blk;
    blk.indices = {1};
    Eigen::MatrixXcd rho(1, 1);
    rho(0, 0) = cplx(0, 1);
    blk.rep = {rho};
    in.blocks["2,0"] = blk;
    return build_lie_configuration(in);
}

LieConfiguration preset_su11_disc() {
    LieConfigurationInput in;
    in.name = "su11-disc";
    in.description =
        "G = SU(1,1) on the unit disc, K = U(1); curvature of the "
        "associated line block equals the area form times the generator.";
    Eigen::MatrixXcd Z(2, 2), X(2, 2), Y(2, 2);
    Z << cplx(0, 1), 0, 0, cplx(0, -1);
    X << 0, 1, 1, 0;
    Y << 0, cplx(0, 1), cplx(0, -1), 0;
    in.n = 3;
    in.c = structure_constants_from_generators({Z, X, Y});
    in.k_idx = {0};
    in.h_idx = {0};
    in.l_idx = {0};
    in.h_perp_ref = cols(3, {{0, 1, 0}, {0, 0, 1}});
    in.k_perp_ref = cols(3, {{0, 1, 0}, {0, 0, 1}});
    in.l_perp_ref = cols(3, {{0, 1, 0}, {0, 0, 1}});
    in.kl_ref = Eigen::MatrixXd(3, 0);
    in.hl_ref = Eigen::MatrixXd(3, 0);
    in.fiber_gen = unit(3, 0);
    in.fiber_period = M_PI;
    CurvatureBlock blk;
    blk.indices = {0};
    Eigen::MatrixXcd rho(1, 1);
    rho(0, 0) = cplx(0, 1);
    blk.rep = {rho};
    in.blocks["1,0"] = blk;
    return build_lie_configuration(in);
}

std::vector<PresetInfo> list_lie_presets() {
    return {
        {"so21-geodesic", preset_so21_geodesic().description},
        {"so22-weight2", preset_so22_weight2().description},
        {"sl2xsl2-diagonal", preset_sl2xsl2_diagonal().description},
        {"su11-disc", preset_su11_disc().description},
    };
}

LieConfiguration lie_preset_by_name(const std::string& name) {
    if (name == "so21-geodesic") return preset_so21_geodesic();
    if (name == "so22-weight2") return preset_so22_weight2();
    if (name == "sl2xsl2-diagonal") return preset_sl2xsl2_diagonal();
    if (name == "su11-disc") return preset_su11_disc();
    throw std::invalid_argument("unknown Lie preset: " + name);
}

LieConfiguration lie_configuration_from_json(const std::string& text) {
    auto j = nlohmann::json::parse(text);
    LieConfigurationInput in;
    in.n = j.at("n").get<int>();
    in.name = j.value("name", "custom");
    in.description = j.value("description", "");
    in.c.assign(static_cast<size_t>(in.n) * in.n * in.n, 0.0);
    for (auto& e : j.at("structure")) {
        int i = e[0].get<int>(), jj = e[1].get<int>(), k = e[2].get<int>();
        double v = e[3].get<double>();
        in.c[(static_cast<size_t>(i) * in.n + jj) * in.n + k] = v;
        in.c[(static_cast<size_t>(jj) * in.n + i) * in.n + k] = -v;
    }
    in.h_idx = j.at("h").get<std::vector<int>>();
    in.k_idx = j.at("k").get<std::vector<int>>();
    in.l_idx = j.at("l").get<std::vector<int>>();
    auto mat_of = [&](const nlohmann::json& arr) {
        Eigen::MatrixXd m(in.n, static_cast<int>(arr.size()));
        for (int c2 = 0; c2 < m.cols(); ++c2)
            for (int r = 0; r < in.n; ++r) m(r, c2) = arr[c2][r].get<double>();
        return m;
    };
    in.h_perp_ref = mat_of(j.at("h_perp"));
    in.k_perp_ref = mat_of(j.at("k_perp"));
    in.l_perp_ref = mat_of(j.at("l_perp"));
    in.kl_ref = j.contains("kl") ? mat_of(j.at("kl")) : Eigen::MatrixXd(in.n, 0);
    in.hl_ref = j.contains("hl") ? mat_of(j.at("hl")) : Eigen::MatrixXd(in.n, 0);
    auto fg = j.at("fiber_gen").get<std::vector<double>>();
    in.fiber_gen.resize(in.n);
    for (int i = 0; i < in.n; ++i) in.fiber_gen(i) = fg[static_cast<size_t>(i)];
    in.fiber_period = j.at("fiber_period").get<double>();
    in.omega_gh_sign = j.value("omega_gh_sign", 1.0);
    in.u_sign = j.value("u_sign", 1.0);
    return build_lie_configuration(in);
}

}  // namespace eql
