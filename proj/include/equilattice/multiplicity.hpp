#pragma once

// Sublattice-index multiplicities b_k = #{sublattices of Z^r of index k},
// the zeta-product identity behind them, the constant alpha = sum b_k/k^d,
// and the exact relation between the sublattice-counting measure nu_n and
// the plane-counting measure nu'_n.

#include <map>

#include "equilattice/enumerate.hpp"

namespace eql {

struct MultiplicitySeries {
    int rank = 0;
    Int K = 0;
    std::vector<BigInt> b;  // b[1..K]; b[0] unused

    const BigInt& at(Int k) const { return b.at(static_cast<size_t>(k)); }
};

// b_1..b_K by Dirichlet convolution of the coefficients of
// prod_{i=0}^{r-1} zeta(s - i)
MultiplicitySeries multiplicity_series(int r, Int K);

struct SublatticeIndexCount {
    BigInt hnf_count;        // structural count of HNF matrices of determinant k
    BigInt dirichlet_coeff;  // convolution coefficient
};
// both routes, asserted equal
SublatticeIndexCount count_sublattices_of_index(int r, Int k);

struct AlphaEstimate {
    int rank = 0;
    int dim = 0;
    Int K = 0;
    Rat partial;  // sum_{k<=K} b_k / k^d
    Rat tail;     // bound on the rest from b_k <= k^r

    double midpoint() const { return static_cast<double>(partial + tail / 2); }
    double lower() const { return static_cast<double>(partial); }
    double upper() const { return static_cast<double>(partial + tail); }
};
AlphaEstimate alpha_constant(int r, int d, Int K);

struct PlaneRelationRow {
    SublatticeHNF plane;      // saturated representative
    BigInt plane_disc;        // h(W)
    BigInt observed_count;    // sublattices with this saturation and disc <= n
    BigInt expected_count;    // sum of b_k over h(W) k^2 <= n
    bool equal = false;
};

struct MultiplicityRelationReport {
    Int n = 0;
    int rank = 0;
    BigInt nu_total;        // sublattices of disc <= n
    BigInt nu_sum_side;     // sum_{k <= sqrt n} b_k nu'_{floor(n/k^2)}
    bool total_equal = false;
    bool all_planes_equal = false;
    std::vector<PlaneRelationRow> rows;
    std::vector<BigInt> nu_prime_truncated;  // nu'_{floor(n/k^2)} for k = 1..sqrt(n)
};

// Verifies nu_n = sum_{k <= sqrt n} b_k nu'_{floor(n/k^2)} exactly, both in
// total and plane by plane, by full enumeration.
MultiplicityRelationReport verify_multiplicity_relation(const QuadraticLattice& L, int r, Int n);

std::string relation_report_to_json(const MultiplicityRelationReport& rep);

}  // namespace eql
