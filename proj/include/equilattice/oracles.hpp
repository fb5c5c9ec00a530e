#pragma once

// Independent limit-measure oracles: Lebesgue mass of the unit-discriminant
// body by Monte Carlo (covolume-1 normalization), and the invariant measure
// of the compact Grassmannian by Gaussian-QR frame sampling. Both are
// deterministic given the seed and independent of the thread count.

#include "equilattice/measures.hpp"

namespace eql {

struct OracleEstimate {
    double estimate = 0.0;
    double standard_error = 0.0;
};

// Monte-Carlo estimate of Leb{v in Omega_{<=1} : pr(v) in window}, with the
// Lebesgue measure normalized so Z^{d r} has covolume 1. Supported for
// r = 1 (the body is an ellipsoid for positive definite L); indefinite
// lattices need a windowed region bounded by a positive definite majorant.
OracleEstimate oracle_limit_measure(const QuadraticLattice& L, int r, const WindowFunction& window,
                                    long long samples, std::uint64_t seed);

// Same quantity for an indefinite binary-style setup: bounds the sampling
// region by majorant(v) <= rho2 (the window of the windowed enumeration).
OracleEstimate oracle_limit_measure_windowed(const QuadraticLattice& L, const IMat& majorant,
                                             double rho2, long long samples, std::uint64_t seed);

// Haar mass of the window on the Grassmannian Gr(r, d)
OracleEstimate grassmann_haar_oracle(int d, int r, const WindowFunction& window,
                                     long long samples, std::uint64_t seed);

// closed-form volume of the Euclidean unit ball in R^d
double unit_ball_volume(int d);

}  // namespace eql
