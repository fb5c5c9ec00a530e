#pragma once

// Lie algebra configurations: structure constants, Killing form, a chain
// of subalgebras l = h cap k inside g, Killing-orthogonal realizations of
// the quotients, orientation conventions, and the circle parametrization
// of the fiber K/L used by the quadrature.

#include <Eigen/Dense>
#include <map>
#include <optional>
#include <string>

#include "equilattice/forms.hpp"

namespace eql {

// a K-representation block inside k with its matrices, for curvature forms
struct CurvatureBlock {
    std::vector<int> indices;             // basis indices spanning the block
    std::vector<Eigen::MatrixXcd> rep;    // one matrix per block generator
};

struct LieConfiguration {
    std::string name;
    std::string description;
    int n = 0;
    std::vector<double> c;  // structure constants, [(i*n + j)*n + k]
    Eigen::MatrixXd killing;

    std::vector<int> h_idx, k_idx, l_idx;
    Eigen::MatrixXd h_basis, k_basis, l_basis;  // columns

    // Killing-orthogonal realizations (columns, pseudo-orthonormalized
    // following the preset's reference order; the order fixes orientation)
    Eigen::MatrixXd h_perp;  // g/h
    Eigen::MatrixXd k_perp;  // g/k
    Eigen::MatrixXd l_perp;  // g/l
    Eigen::MatrixXd kl;      // k/l = k cap l_perp
    Eigen::MatrixXd hl;      // h/l = h cap l_perp

    // fiber circle: K/L parametrized by exp(theta X), theta in [0, period)
    Eigen::VectorXd fiber_gen;
    double fiber_period = 0.0;

    // invariant complex structure on g/k (zero on k), optional
    std::optional<Eigen::MatrixXd> J;

    std::map<std::string, CurvatureBlock> blocks;

    double omega_gh_sign = 1.0;  // orientation sign of omega_{G/H}
    double u_sign = 1.0;         // orientation sign of the fiber multivector

    // ---- linear algebra helpers ----
    double structure(int i, int j, int k) const { return c[(static_cast<size_t>(i) * n + j) * n + k]; }
    Eigen::MatrixXd ad(int i) const;
    Eigen::MatrixXd ad(const Eigen::VectorXd& x) const;
    Eigen::VectorXd bracket(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const;
    Eigen::MatrixXd Ad_exp(const Eigen::VectorXd& x) const;  // exp(ad x)

    double killing_of(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const {
        return x.dot(killing * y);
    }
};

// raw input for building a configuration
struct LieConfigurationInput {
    std::string name, description;
    int n = 0;
    std::vector<double> c;
    std::vector<int> h_idx, k_idx, l_idx;
    // reference complement bases (columns as coefficient vectors); order
    // fixes the orientation of each quotient
    Eigen::MatrixXd h_perp_ref, k_perp_ref, l_perp_ref, kl_ref, hl_ref;
    Eigen::VectorXd fiber_gen;
    double fiber_period = 0.0;
    std::optional<Eigen::MatrixXd> J;
    std::map<std::string, CurvatureBlock> blocks;
    double omega_gh_sign = 1.0;
    double u_sign = 1.0;
};

// validates Jacobi, closure of h and k, l = h cap k, non-degeneracy of the
// Killing form on g/h/k/l, and builds the quotient realizations
LieConfiguration build_lie_configuration(const LieConfigurationInput& in);

// structure constants from matrix generators (real part and imaginary part
// handled together; the Lie algebra must be real with these generators as
// a basis)
std::vector<double> structure_constants_from_generators(
    const std::vector<Eigen::MatrixXcd>& gens);

// presets
LieConfiguration preset_so21_geodesic();
LieConfiguration preset_so22_weight2();
LieConfiguration preset_sl2xsl2_diagonal();
LieConfiguration preset_su11_disc();

struct PresetInfo {
    std::string name;
    std::string description;
};
std::vector<PresetInfo> list_lie_presets();
LieConfiguration lie_preset_by_name(const std::string& name);

// JSON load: {"n":, "structure":[[i,j,k,v],...], "h":[...], "k":[...],
// "l":[...], "fiber_gen":[...], "fiber_period": x, ...}
LieConfiguration lie_configuration_from_json(const std::string& text);

}  // namespace eql
