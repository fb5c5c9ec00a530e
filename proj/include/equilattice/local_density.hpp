#pragma once

// Local densities of a quadratic lattice: exact counts of tuple
// representations modulo prime powers, their stabilized normalized values
// beta_a(M), and the relative Siegel-Weil volume
// det(M)^{(d-r-1)/2} * prod_a beta_a(M). The archimedean constant is not
// computed; all volume statements are relative along sequences.

#include "equilattice/lattice.hpp"

namespace eql {

// |{lambda in (Z/a^s)^{d x r} : lambda^T B lambda == M mod a^s}|, exact.
// Dispatches between a full residue scan, coordinate-convolution counting
// (a odd, a coprime to det B), and Hensel lifting of solution lists.
BigInt count_solutions_mod(const QuadraticLattice& L, int r, const GramMatrix& M, Int a, int s);

// full scan only; the oracle the other paths are checked against
BigInt count_solutions_mod_fullscan(const QuadraticLattice& L, int r, const GramMatrix& M, Int a,
                                    int s);

struct LocalDensityResult {
    Int prime = 0;
    int s_max = 0;
    std::vector<BigInt> raw;     // raw counts at s = 1..s_max
    std::vector<Rat> normalized;  // count * a^{-s(dr - r(r+1)/2)}
    bool stabilized = false;
    int s0 = 0;        // first level with normalized[s0] == normalized[s0+1]
    Rat value;         // the stabilized density, if any
};

LocalDensityResult local_density(const QuadraticLattice& L, int r, const GramMatrix& M, Int a,
                                 int s_max);

struct RelativeVolume {
    BigInt det_M;
    int exponent_num = 0;  // (d - r - 1), the exponent is exponent_num / 2
    std::vector<std::pair<Int, Rat>> local_factors;  // (prime, beta_a)
    double value = 0.0;  // det(M)^{(d-r-1)/2} * prod beta_a
    bool all_stabilized = true;
};

// primes up to cutoff plus every prime dividing 2 det(M) det(L)
RelativeVolume siegel_weil_relative(const QuadraticLattice& L, const GramMatrix& M, Int cutoff,
                                    int s_max = 4);

struct GrowthPoint {
    BigInt det_M;
    double log_det = 0.0;
    double log_volume = 0.0;
};

struct GrowthReport {
    std::vector<GrowthPoint> points;
    double slope = 0.0;
    double intercept = 0.0;
    double max_residual = 0.0;
    double expected_slope = 0.0;  // (d - r - 1)/2
};

// least-squares slope of log(relative volume) against log det(M) along a
// sequence of represented Gram matrices
GrowthReport growth_exponent_check(const QuadraticLattice& L, const std::vector<GramMatrix>& Ms,
                                   Int prime_cutoff, int s_max = 4);

std::string local_density_csv(const std::vector<LocalDensityResult>& rows);

}  // namespace eql
