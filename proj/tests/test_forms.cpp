#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "equilattice/chern.hpp"
#include "equilattice/pullpush.hpp"
#include "equilattice/rng.hpp"

using namespace eql;

TEST_CASE("exterior algebra basics") {
    // iota_{e1}(e1* ^ e2*) = e2*
    AlternatingForm f(3, 2);
    f.at(0b011) = 1.0;  // e1* ^ e2* on indices {0,1}
    MultiVector e1(3, 1);
    e1.coef[0] = 1.0;
    auto c = contract(f, e1);
    CHECK(c.at(0b010).real() == doctest::Approx(1.0));
    CHECK(std::abs(c.at(0b001)) < 1e-15);
    CHECK(std::abs(c.at(0b100)) < 1e-15);
    // iota_{e1^e2}(e1*^e2*^e3*) = e3*
    AlternatingForm vol(3, 3);
    vol.at(0b111) = 1.0;
    MultiVector e12(3, 2);
    e12.coef[SubsetTable::get(3).rank[0b011]] = 1.0;
    auto c2 = contract(vol, e12);
    CHECK(c2.at(0b100).real() == doctest::Approx(1.0));
    // contraction with support in the kernel gives zero
    AlternatingForm g(3, 1);
    g.at(0b100) = 1.0;  // e3*
    MultiVector u(3, 1);
    u.coef[0] = 1.0;  // e1
    CHECK(contract(g, u).max_abs() < 1e-15);
}

TEST_CASE("wedge and eval") {
    AlternatingForm a = AlternatingForm::covector(Eigen::Vector3d(1, 0, 0));
    AlternatingForm b = AlternatingForm::covector(Eigen::Vector3d(0, 1, 0));
    auto w = wedge(a, b);
    Eigen::MatrixXd V(3, 2);
    V << 1, 0, 0, 1, 0, 0;
    CHECK(w.eval_real(V) == doctest::Approx(1.0));
    Eigen::MatrixXd V2(3, 2);
    V2 << 0, 1, 1, 0, 0, 0;
    CHECK(w.eval_real(V2) == doctest::Approx(-1.0));
    // antisymmetry of the product
    auto w2 = wedge(b, a);
    CHECK((w + w2).max_abs() < 1e-15);
}

TEST_CASE("pullback functoriality") {
    Rng rng(5);
    AlternatingForm f(4, 2);
    for (auto& c : f.coef) c = rng.uniform() - 0.5;
    Eigen::MatrixXd A = Eigen::MatrixXd::Random(4, 4);
    Eigen::MatrixXd B = Eigen::MatrixXd::Random(4, 4);
    // (AB)^* = B^* A^*: pullback(f, AB) = pullback(pullback(f, A), B)
    auto lhs = pullback(f, A * B);
    auto rhs = pullback(pullback(f, A), B);
    CHECK((lhs - rhs).max_abs() < 1e-10);
    // identity pullback fixes the form
    CHECK((pullback(f, Eigen::MatrixXd::Identity(4, 4)) - f).max_abs() < 1e-15);
}

TEST_CASE("configuration validation") {
    // abelian algebra: Killing form vanishes, rejected
    LieConfigurationInput in;
    in.n = 2;
    in.c.assign(8, 0.0);
    in.h_idx = {0};
    in.k_idx = {0};
    in.l_idx = {0};
    in.h_perp_ref = Eigen::MatrixXd::Identity(2, 2).leftCols(1);
    in.k_perp_ref = in.h_perp_ref;
    in.l_perp_ref = in.h_perp_ref;
    in.kl_ref = Eigen::MatrixXd(2, 0);
    in.hl_ref = Eigen::MatrixXd(2, 0);
    in.fiber_gen = Eigen::VectorXd::Unit(2, 0);
    in.fiber_period = 1.0;
    CHECK_THROWS(build_lie_configuration(in));
    // so(3) has Killing -2 I
    Eigen::MatrixXcd E1 = Eigen::MatrixXcd::Zero(3, 3), E2 = E1, E3 = E1;
    E1(2, 1) = 1; E1(1, 2) = -1;
    E2(0, 2) = 1; E2(2, 0) = -1;
    E3(1, 0) = 1; E3(0, 1) = -1;
    auto c = structure_constants_from_generators({E1, E2, E3});
    LieConfigurationInput so3;
    so3.n = 3;
    so3.c = c;
    so3.h_idx = {0, 1, 2};
    so3.k_idx = {0, 1, 2};
    so3.l_idx = {0, 1, 2};
    so3.h_perp_ref = Eigen::MatrixXd(3, 0);
    so3.k_perp_ref = Eigen::MatrixXd(3, 0);
    so3.l_perp_ref = Eigen::MatrixXd(3, 0);
    so3.kl_ref = Eigen::MatrixXd(3, 0);
    so3.hl_ref = Eigen::MatrixXd(3, 0);
    so3.fiber_gen = Eigen::VectorXd::Unit(3, 0);
    so3.fiber_period = 2 * M_PI;
    auto cfg = build_lie_configuration(so3);
    CHECK((cfg.killing + 2 * Eigen::MatrixXd::Identity(3, 3)).norm() < 1e-12);
    // dimension counts on the diagonal preset
    auto dia = preset_sl2xsl2_diagonal();
    CHECK(dia.l_perp.cols() == 5);
    CHECK(dia.kl.cols() == 1);
    CHECK(dia.hl.cols() == 2);
}

TEST_CASE("adjoint pullback invariances") {
    auto geo = preset_so21_geodesic();
    AlternatingForm omega = volume_form_of_complement(geo, geo.h_perp, 1.0);
    // identity element
    auto id = adjoint_pullback(geo, omega, Eigen::MatrixXd::Identity(3, 3));
    CHECK((id - omega).max_abs() < 1e-14);
    // composition = reversed pullbacks
    Eigen::MatrixXd A1 = geo.Ad_exp(0.3 * geo.fiber_gen);
    Eigen::MatrixXd A2 = geo.Ad_exp(0.8 * geo.fiber_gen);
    auto lhs = adjoint_pullback(geo, omega, A1 * A2);
    auto rhs = adjoint_pullback(geo, adjoint_pullback(geo, omega, A1), A2);
    CHECK((lhs - rhs).max_abs() < 1e-12);
    // elements of L fix the L-invariant contracted form on the diagonal preset
    auto dia = preset_sl2xsl2_diagonal();
    AlternatingForm om = volume_form_of_complement(dia, dia.h_perp, 1.0);
    auto iota = contract(om, fiber_multivector(dia));
    Eigen::VectorXd dZ = Eigen::VectorXd::Unit(6, 0);  // generator of L
    auto moved = adjoint_pullback(dia, iota, dia.Ad_exp(0.77 * dZ));
    CHECK((moved - iota).max_abs() < 1e-10);
}

TEST_CASE("pull-push on the geodesic preset vanishes with a witness") {
    auto geo = preset_so21_geodesic();
    auto pp = pull_push(geo, 64);
    CHECK(pp.form.norm() < 1e-8);
    CHECK(pp.kernel_residual < 1e-10);
    auto w = vanishing_criterion_check(geo, 720);
    REQUIRE(w.has_value());
    CHECK(w->det_on_hl == doctest::Approx(-1.0).epsilon(1e-6));
}

TEST_CASE("pull-push on the diagonal preset") {
    auto dia = preset_sl2xsl2_diagonal();
    // the fiber direction is Killing-orthogonal to h/l here, the unit-scale
    // case of the averaging formula
    for (int i = 0; i < dia.kl.cols(); ++i)
        for (int j = 0; j < dia.hl.cols(); ++j)
            CHECK(std::abs(dia.killing_of(dia.kl.col(i), dia.hl.col(j))) < 1e-10);
    auto pp = pull_push(dia, 64);
    CHECK(pp.form.norm() > 1.0);
    CHECK(pp.kernel_residual < 1e-10);
    CHECK(pp.invariance_residual < 1e-10);
    // no orientation-reversing witness
    CHECK(!vanishing_criterion_check(dia, 360).has_value());
    // restriction to the diagonal tangent is a positive multiple of the
    // complex-oriented area form
    Eigen::VectorXd e = dia.k_perp.col(0);
    Eigen::VectorXd Je = (*dia.J) * e;
    Eigen::MatrixXd basis(6, 2);
    basis << e, Je;
    auto area = volume_form_of_complement(dia, basis, 1.0);
    auto prop = proportionality_test(pp.form, area, dia.k_perp.leftCols(2));
    CHECK(prop.scalar > 0);
    CHECK(prop.residual < 1e-6);
    // K-invariance under random net elements
    Rng rng(9);
    for (int i = 0; i < 20; ++i) {
        double theta = rng.uniform() * dia.fiber_period;
        auto moved = pullback(pp.form, dia.Ad_exp(theta * dia.fiber_gen));
        CHECK((moved - pp.form).max_abs() < 1e-9);
    }
    // nonvanishing on the complex complement
    auto nv = complex_nonvanishing_check(dia);
    CHECK(nv.value > 0);
    CHECK(nv.j_invariance_residual < 1e-10);
    // semi-positivity on complex pairs that meet h/l
    Eigen::VectorXd h0 = dia.hl.col(0);
    Eigen::MatrixXd pair(6, 2);
    pair << h0, (*dia.J) * h0;
    CHECK(pp.form.eval_real(pair) > -1e-10);
    // the averaged form is real: conjugate input, conjugate output
    Eigen::MatrixXcd zvecs = Eigen::MatrixXcd::Random(6, 2);
    cplx v1 = pp.form.eval(zvecs);
    cplx v2 = pp.form.eval(zvecs.conjugate());
    CHECK(std::abs(v2 - std::conj(v1)) < 1e-10);
}

TEST_CASE("pull-push scale covariance") {
    auto dia = preset_sl2xsl2_diagonal();
    auto pp = pull_push(dia, 48);
    // scaling omega_{G/H} by c scales the output by c exactly
    for (double c : {-1.0, 2.5, 0.125}) {
        LieConfiguration scaled = dia;
        scaled.omega_gh_sign = c * dia.omega_gh_sign;
        auto pp2 = pull_push(scaled, 48);
        CHECK((pp2.form - pp.form * cplx(c, 0)).max_abs() < 1e-12);
    }
}

TEST_CASE("validation rejects broken inputs") {
    // Jacobi failure
    auto geo = preset_so21_geodesic();
    LieConfigurationInput bad;
    bad.n = 3;
    bad.c.assign(27, 0.0);
    // antisymmetric but non-Jacobi: [e0,e1] = e2 and [e1,e2] = e1 leave
    // a dangling -e2 in the cyclic sum
    auto set = [&](int i, int j, int k, double v) {
        bad.c[(static_cast<size_t>(i) * 3 + j) * 3 + k] = v;
        bad.c[(static_cast<size_t>(j) * 3 + i) * 3 + k] = -v;
    };
    set(0, 1, 2, 1.0);
    set(1, 2, 1, 1.0);
    bad.h_idx = {0};
    bad.k_idx = {0};
    bad.l_idx = {0};
    bad.h_perp_ref = Eigen::MatrixXd::Identity(3, 3).rightCols(2);
    bad.k_perp_ref = bad.h_perp_ref;
    bad.l_perp_ref = bad.h_perp_ref;
    bad.kl_ref = Eigen::MatrixXd(3, 0);
    bad.hl_ref = Eigen::MatrixXd(3, 0);
    bad.fiber_gen = Eigen::VectorXd::Unit(3, 0);
    bad.fiber_period = 1.0;
    CHECK_THROWS(build_lie_configuration(bad));
    // l not equal to h cap k on the geodesic preset data
    LieConfigurationInput wrong;
    wrong.n = 3;
    wrong.c = geo.c;
    wrong.h_idx = {1};
    wrong.k_idx = {0};
    wrong.l_idx = {0};  // l must be empty: h cap k = 0
    wrong.h_perp_ref = Eigen::MatrixXd::Identity(3, 3).rightCols(2);
    wrong.k_perp_ref = wrong.h_perp_ref;
    wrong.l_perp_ref = wrong.h_perp_ref;
    wrong.kl_ref = Eigen::MatrixXd(3, 0);
    wrong.hl_ref = Eigen::MatrixXd(3, 0);
    wrong.fiber_gen = Eigen::VectorXd::Unit(3, 0);
    wrong.fiber_period = 1.0;
    CHECK_THROWS(build_lie_configuration(wrong));
}

TEST_CASE("configurations load from json") {
    // the geodesic preset expressed as raw structure constants
    auto geo = preset_so21_geodesic();
    std::string text = R"({
      "n": 3, "name": "json-geodesic",
      "structure": [[0,1,2,-2],[0,2,1,2],[1,2,0,2]],
      "h": [1], "k": [0], "l": [],
      "h_perp": [[1,0,0],[0,0,1]],
      "k_perp": [[0,1,0],[0,0,1]],
      "l_perp": [[1,0,0],[0,1,0],[0,0,1]],
      "kl": [[1,0,0]], "hl": [[0,1,0]],
      "fiber_gen": [1,0,0], "fiber_period": 3.14159265358979323846
    })";
    auto cfg = lie_configuration_from_json(text);
    CHECK(cfg.n == 3);
    CHECK((cfg.killing - geo.killing).norm() < 1e-9);
    auto pp = pull_push(cfg, 64);
    CHECK(pp.form.norm() < 1e-8);  // same vanishing as the preset
}

TEST_CASE("trivial fiber returns the contracted form unchanged") {
    auto su = preset_su11_disc();
    auto pp = pull_push(su, 8);
    AlternatingForm om = volume_form_of_complement(su, su.h_perp, 1.0);
    CHECK((pp.form - om).max_abs() < 1e-14);
}

TEST_CASE("weight-2 preset: curvature, chern, proportionality") {
    auto w2 = preset_so22_weight2();
    auto pp = pull_push(w2, 64);
    CHECK(pp.form.norm() > 1.0);
    CHECK(pp.kernel_residual < 1e-10);
    auto curv = curvature_form(w2, "2,0");
    CHECK(curv.antisymmetry_residual < 1e-10);
    CHECK(curv.block_residual < 1e-10);
    auto c1 = chern_form(curv, 1);
    CHECK(c1.is_real(1e-12));
    auto prop = proportionality_test(pp.form, c1, w2.k_perp);
    CHECK(prop.scalar > 0);
    CHECK(prop.residual < 1e-6);
    auto nv = complex_nonvanishing_check(w2);
    CHECK(nv.value > 0);
    CHECK(!vanishing_criterion_check(w2, 360).has_value());
}

TEST_CASE("chern form small cases") {
    auto w2 = preset_so22_weight2();
    auto curv = curvature_form(w2, "2,0");
    // level 0 is the constant 1
    auto c0 = chern_form(curv, 0);
    CHECK(c0.coef[0].real() == doctest::Approx(1.0));
    // 1x1 block: c1 = (i/2pi) Theta
    auto c1 = chern_form(curv, 1);
    auto expect = curv.entries[0][0] * (cplx(0, 1) / (2 * M_PI));
    CHECK((c1 - expect).max_abs() < 1e-14);
    CHECK_THROWS(chern_form(curv, 2));  // level > block size
}

TEST_CASE("chern of a block-diagonal curvature follows the product rule") {
    // assemble a fake 2x2 block-diagonal curvature from two copies of the
    // su(1,1) block and compare c_1 with the sum of the blocks
    auto su = preset_su11_disc();
    auto c = curvature_form(su, "1,0");
    CurvatureForm two;
    two.block_size = 2;
    two.entries.assign(2, std::vector<AlternatingForm>(2, AlternatingForm(su.n, 2)));
    two.entries[0][0] = c.entries[0][0];
    two.entries[1][1] = c.entries[0][0];
    auto c1_two = chern_form(two, 1);
    auto c1_one = chern_form(c, 1);
    CHECK((c1_two - (c1_one + c1_one)).max_abs() < 1e-14);
    // c_2 of the block-diagonal equals c1 ^ c1 of the blocks (Whitney)
    auto c2 = chern_form(two, 2);
    auto whitney = wedge(c1_one, c1_one);
    CHECK((c2 - whitney).max_abs() < 1e-14);
}

TEST_CASE("2x2 chern matches the determinant expansion by hand") {
    // populate a 2x2 curvature with distinct 2-forms and compare c_2 with
    // (i/2pi)^2 (T11 ^ T22 - T12 ^ T21)
    int n = 5;
    auto two_form = [&](int a, int b, cplx v) {
        AlternatingForm f(n, 2);
        f.at(static_cast<std::uint16_t>((1u << a) | (1u << b))) = v;
        return f;
    };
    CurvatureForm curv;
    curv.block_size = 2;
    curv.entries = {{two_form(0, 1, {1, 0.3}), two_form(0, 2, {0, 1})},
                    {two_form(1, 2, {0, -1}), two_form(3, 4, {2, 0})}};
    auto c2 = chern_form(curv, 2);
    cplx factor = std::pow(cplx(0, 1) / (2 * M_PI), 2);
    auto byhand = (wedge(curv.entries[0][0], curv.entries[1][1]) -
                   wedge(curv.entries[0][1], curv.entries[1][0])) *
                  factor;
    CHECK((c2 - byhand).max_abs() < 1e-14);
    auto c1 = chern_form(curv, 1);
    auto trace = (curv.entries[0][0] + curv.entries[1][1]) * (cplx(0, 1) / (2 * M_PI));
    CHECK((c1 - trace).max_abs() < 1e-14);
}

TEST_CASE("su(1,1) curvature is the area form times the generator") {
    auto su = preset_su11_disc();
    auto curv = curvature_form(su, "1,0");
    // F(X, Y) must be a purely imaginary multiple of the identity; the
    // (X,Y) coefficient doubles as the area normalization
    cplx v = curv.entries[0][0].at(0b110);
    CHECK(std::abs(v.real()) < 1e-12);
    CHECK(std::abs(v.imag()) > 0.1);
    // the block is u(1)-valued, so the first Chern form (real) must be
    // proportional to the unique invariant area form
    AlternatingForm area = volume_form_of_complement(su, su.k_perp, 1.0);
    auto c1 = chern_form(curv, 1);
    auto prop = proportionality_test(c1, area, su.k_perp);
    CHECK(prop.residual < 1e-10);
}

TEST_CASE("proportionality test basics") {
    auto dia = preset_sl2xsl2_diagonal();
    auto pp = pull_push(dia, 32);
    auto three = pp.form * cplx(3.0, 0);
    auto prop = proportionality_test(three, pp.form, dia.k_perp);
    CHECK(prop.scalar == doctest::Approx(3.0));
    CHECK(prop.residual < 1e-12);
    AlternatingForm zero(pp.form.n, pp.form.degree);
    CHECK_THROWS(proportionality_test(pp.form, zero, dia.k_perp));
}

TEST_CASE("pull-push independent of the complement realization") {
    // perturbing the reference complement (same span, different order of
    // projections) must not change the averaged form
    auto dia = preset_sl2xsl2_diagonal();
    Eigen::MatrixXd R = dia.h_perp;
    auto omega1 = volume_form_of_complement(dia, dia.h_perp, dia.omega_gh_sign);
    // a second pseudo-orthonormal basis of the same space with det +1 mixing
    Eigen::MatrixXd R2 = R;
    R2.col(0) = std::cos(0.4) * R.col(0) + std::sin(0.4) * R.col(1);
    R2.col(1) = -std::sin(0.4) * R.col(0) + std::cos(0.4) * R.col(1);
    // renormalize against the Killing form
    for (int j = 0; j < 2; ++j) {
        double q = R2.col(j).dot(dia.killing * R2.col(j));
        R2.col(j) /= std::sqrt(std::abs(q));
    }
    auto omega2 = volume_form_of_complement(dia, R2, dia.omega_gh_sign);
    CHECK((omega1 - omega2).max_abs() < 1e-9);
}
