#pragma once

// Column Hermite normal form and Smith normal form over Z, plus the
// saturation (primitive closure) of a sublattice.
//
// Column HNF convention for a d x r matrix of full column rank: pivot rows
// i_1 < ... < i_r, one per column, pivot entries positive, zeros above each
// pivot in its column, and in pivot row i_k the entries of earlier columns
// reduced into [0, pivot). This is the unique representative of the
// GL(r,Z) column-operation orbit, i.e. one matrix per sublattice.

#include <utility>

#include "equilattice/lattice.hpp"

namespace eql {

BMat column_hnf(const BMat& A);
IMat column_hnf(const IMat& A);

struct SmithResult {
    std::vector<BigInt> diag;  // s_1 | s_2 | ... (non-negative)
    BMat U;                    // d x d unimodular, A = U * S * V
    BMat V;                    // r x r unimodular
};
SmithResult smith_normal_form(const BMat& A);

// Canonical SublatticeHNF from any generating matrix of full column rank.
SublatticeHNF make_sublattice(const QuadraticLattice& L, const IMat& generators);

// Saturation of s: the intersection of its Q-span with Z^d, in HNF, plus
// the index [saturation : s].
std::pair<SublatticeHNF, BigInt> primitive_closure(const QuadraticLattice& L,
                                                   const SublatticeHNF& s);

}  // namespace eql
