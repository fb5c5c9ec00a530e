#pragma once

// Lattice point enumeration. Positive definite forms go through a
// Fincke-Pohst recursion over an exact rational Cholesky decomposition;
// indefinite forms only support windowed enumeration through a positive
// definite majorant. A plain box scan lives in the tests as the oracle.

#include <functional>
#include <optional>

#include "equilattice/hnf.hpp"
#include "equilattice/lattice.hpp"

namespace eql {

using VectorVisitor = std::function<void(const std::vector<Int>&, Int norm)>;

// All nonzero v with B(v,v) <= n, each exactly once, via the visitor.
// Iteration order is deterministic (last coordinate outermost).
void enumerate_vectors_norm_leq(const QuadraticLattice& L, Int n, const VectorVisitor& fn);

// Materialized variant in lexicographic order.
std::vector<std::vector<Int>> enumerate_vectors_norm_leq(const QuadraticLattice& L, Int n);

// smallest nonzero value of x^T M x over the ball x^T M x <= radius
BigInt min_nonzero_value(const GramMatrix& M, Int radius);

// Tuples with positive definite Gram matrix and discriminant <= n, with
// every vector restricted to the ball B(v,v) <= n. For r = 1 this is
// exactly the set of tuples of discriminant <= n; for r >= 2 the ball
// restriction is what keeps the set finite (shearing a tuple preserves
// its discriminant, so the unrestricted set is infinite).
std::vector<VectorTuple> enumerate_tuples_disc_leq(const QuadraticLattice& L, int r, Int n);

// One canonical HNF representative per positive definite rank-r sublattice
// of discriminant <= n.
std::vector<SublatticeHNF> enumerate_sublattices_disc_leq(const QuadraticLattice& L, int r,
                                                          Int n);

// One representative per rational r-plane W with disc(W cap Z^d) <= n,
// i.e. the saturated sublattices of discriminant <= n.
std::vector<SublatticeHNF> enumerate_primitive_planes(const QuadraticLattice& L, int r, Int n);

// All tuples with gram_of_tuple == M (finite when L is positive definite).
std::vector<VectorTuple> enumerate_representations(const QuadraticLattice& L,
                                                   const GramMatrix& M);

// Compact window for indefinite enumeration: a positive definite majorant
// form A and a radius bound on the projected tuple, A(pr_i, pr_i) <= rho2
// per vector, plus optional coordinate boxes on pr entries.
struct EnumWindow {
    IMat majorant;  // positive definite
    Rat rho2;       // bound on the majorant norm of each projected vector
    std::vector<std::pair<double, double>> coord_box;  // optional, per coordinate

    static EnumWindow majorant_ball(IMat A, Rat rho2);
};

// Default majorant: entrywise |B| plus identity when positive definite,
// otherwise the diagonal dominance bound diag(1 + sum_j |B_ij|).
IMat default_majorant(const QuadraticLattice& L);

// Tuples v in Q_n whose projection pr(v) lies in the window. Works for
// indefinite L (signature (p, 2q), p >= r); for positive definite L it
// agrees with enumerate_tuples_disc_leq filtered by the window.
std::vector<VectorTuple> enumerate_tuples_in_window(const QuadraticLattice& L, int r, Int n,
                                                    const EnumWindow& window);

}  // namespace eql
