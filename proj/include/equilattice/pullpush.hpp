#pragma once

// The averaged form: contract the pulled-back invariant volume of G/H with
// the unit fiber multivector and average the result over the adjoint
// action of the fiber circle. Includes the orientation-reversal vanishing
// test and the complex-structure non-vanishing test.

#include "equilattice/lie.hpp"

namespace eql {

// invariant volume form of the subspace complement (columns already
// pseudo-orthonormal): the wedge of the Killing-dual covectors, so the
// form is 1 on the oriented basis and kills the Killing-orthocomplement
AlternatingForm volume_form_of_complement(const LieConfiguration& cfg,
                                          const Eigen::MatrixXd& onb, double sign);

// the fiber multivector u with omega_{K/L}(u) = 1
MultiVector fiber_multivector(const LieConfiguration& cfg);

struct PullPushResult {
    AlternatingForm form;          // on g, kernel contains k
    double kernel_residual = 0.0;  // max |form(... k-vector ...)|
    double invariance_residual = 0.0;  // max coefficient change under Ad_K samples
    double fiber_volume = 0.0;         // integrated measure of K/L
    int nodes = 0;
};

// quadrature over the fiber circle; uniform nodes are exact for the
// trigonometric-polynomial integrands arising from compact circles
PullPushResult pull_push(const LieConfiguration& cfg, int nodes = 64);

struct VanishingWitness {
    double theta = 0.0;
    double det_on_hl = 0.0;        // determinant of the induced map on h/l
    Eigen::MatrixXd adjoint;       // the Ad matrix
};

// searches the quadrature net of K for an element preserving h/l with
// orientation-reversing determinant
std::optional<VanishingWitness> vanishing_criterion_check(const LieConfiguration& cfg,
                                                          int nodes = 720);

struct NonvanishingReport {
    double value = 0.0;   // pull-push on a complex complement multivector
    bool positive = false;
    double j_invariance_residual = 0.0;  // max |Ad_k J - J Ad_k| over the net
};

NonvanishingReport complex_nonvanishing_check(const LieConfiguration& cfg, int nodes = 64);

// pull back a form on g by the adjoint action of exp(x)
AlternatingForm adjoint_pullback(const LieConfiguration& cfg, const AlternatingForm& alpha,
                                 const Eigen::MatrixXd& ad_matrix);

}  // namespace eql
