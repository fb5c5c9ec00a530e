#pragma once

// Curvature of an invariant block connection at the Lie algebra level,
// F(u,v) = proj([u,v]) - [proj(u), proj(v)], its Chern forms through the
// determinant expansion, and least-squares proportionality of forms on a
// designated subspace.

#include "equilattice/lie.hpp"

namespace eql {

struct CurvatureForm {
    int block_size = 0;  // h^{p,q}
    // entries[i][j] is a complex-valued 2-form on g (kernel contains k)
    std::vector<std::vector<AlternatingForm>> entries;

    double antisymmetry_residual = 0.0;  // |F(u,v) + F(v,u)|
    double block_residual = 0.0;         // distance of values from the block
};

CurvatureForm curvature_form(const LieConfiguration& cfg, const std::string& block_name);

// degree-2l coefficient of det(I + (i/2pi) Theta); real within tolerance
AlternatingForm chern_form(const CurvatureForm& curv, int level);

struct Proportionality {
    double scalar = 0.0;
    double residual = 0.0;  // relative, |f1 - s f2| / |f1| on the subspace
};

// restrict both forms to the column span of W and fit f1 ~ s f2
Proportionality proportionality_test(const AlternatingForm& f1, const AlternatingForm& f2,
                                     const Eigen::MatrixXd& W);

}  // namespace eql
