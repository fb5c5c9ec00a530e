#pragma once

// Fast exact counting of sublattices of Z^d by discriminant, used where
// geometric enumeration would have to touch ~n^{d/2} objects. Rank 1 goes
// through a representation-number sieve, rank 2 counts canonical HNF
// matrices directly via the Cauchy-Binet expansion of the discriminant.

#include "equilattice/ints.hpp"

namespace eql {

// r_d(m) = #{v in Z^d : |v|^2 = m} for m = 0..n
std::vector<Int> norm_counts_zd(int d, Int n);

// #{v primitive : |v|^2 = m} via Moebius inversion over square divisors
std::vector<Int> primitive_norm_counts_zd(int d, Int n);

// number of rank-r sublattices of Z^d with disc <= n (r = 1 or 2)
BigInt count_sublattices_zd(int d, int r, Int n);

// number of primitive (saturated) rank-r sublattices of Z^d with disc <= n.
// Rank 1 is a direct sieve; rank 2 inverts the multiplicity identity
// nu_n = sum_{k <= sqrt(n)} b_k nu'_{floor(n/k^2)}.
BigInt count_primitive_sublattices_zd(int d, int r, Int n);

// both totals in one pass (shares the rank-2 memo table)
struct SublatticeTotals {
    BigInt nu;
    BigInt nu_prime;
};
SublatticeTotals sublattice_totals_zd(int d, int r, Int n);

}  // namespace eql
