#pragma once

// Integral quadratic lattices: Gram matrices, tuples of lattice vectors,
// discriminants, exact signatures, and Hermite-canonical sublattices.

#include <optional>
#include <string>
#include <utility>

#include "equilattice/ints.hpp"

namespace eql {

// (positive, negative, zero) inertia of a symmetric integer matrix,
// computed by exact symmetric reduction over the rationals.
struct Inertia {
    int pos = 0, neg = 0, zero = 0;
};
Inertia inertia(const IMat& sym);

struct QuadraticLattice {
    int dim = 0;
    IMat gram;  // symmetric, det != 0
    int sig_pos = 0, sig_neg = 0;
    std::string name;

    static QuadraticLattice from_gram(IMat gram, std::string name = "");

    bool positive_definite() const { return sig_neg == 0; }

    // B(u, v), exact with overflow escalation
    BigInt bilinear(const std::vector<Int>& u, const std::vector<Int>& v) const;
};

// standard lattices used throughout the experiments
QuadraticLattice lattice_zn(int d);
QuadraticLattice lattice_a2();
QuadraticLattice lattice_hyperbolic();
QuadraticLattice lattice_minkowski(int p, int q);  // diag(+1 x p, -1 x q)
QuadraticLattice direct_sum(const QuadraticLattice& a, const QuadraticLattice& b);

// JSON round trip: {"gram": [[...]], "name": "..."}
std::string lattice_to_json(const QuadraticLattice& L);
QuadraticLattice lattice_from_json(const std::string& text);

// An r-tuple of lattice vectors, stored as the d x r matrix of columns.
struct VectorTuple {
    IMat cols;  // d x r

    int rank() const { return cols.cols; }
    std::vector<Int> vec(int i) const { return cols.col(i); }
};

// r x r symmetric integer intersection matrix
using GramMatrix = IMat;

GramMatrix gram_of_tuple(const QuadraticLattice& L, const VectorTuple& t);
BigInt discriminant(const QuadraticLattice& L, const VectorTuple& t);

bool is_symmetric(const IMat& m);
bool is_positive_definite(const IMat& sym);       // exact
bool is_positive_semidefinite(const IMat& sym);   // exact

// membership in the cone of tuples spanning a positive definite subspace
bool in_positive_cone(const QuadraticLattice& L, const VectorTuple& t);

// sqrt of the smallest nonzero integer represented by a positive definite M
double mu1(const GramMatrix& M);
BigInt mu1_squared(const GramMatrix& M);

// A rank-r sublattice in column Hermite canonical form.
struct SublatticeHNF {
    IMat basis;      // d x r, canonical
    BigInt disc;     // det of the basis Gram matrix
    bool primitive = false;
    BigInt index_in_saturation = 1;

    bool operator==(const SublatticeHNF& o) const { return basis == o.basis; }
};

}  // namespace eql
