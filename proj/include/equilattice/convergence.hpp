#pragma once

// Convergence tables: scaled empirical window masses of mu_n, nu_n, nu'_n
// along a grid of n, next to the independent oracles. Convergence is
// reported, never asserted; acceptance thresholds live in the test suite.

#include <limits>

#include "equilattice/counting.hpp"
#include "equilattice/measures.hpp"
#include "equilattice/multiplicity.hpp"
#include "equilattice/oracles.hpp"

namespace eql {

struct ConvergenceRow {
    std::string window_id;
    Int n = 0;
    double mu_scaled = std::numeric_limits<double>::quiet_NaN();  // n^{-d/2} mu_n(window), r=1
    double nu = std::numeric_limits<double>::quiet_NaN();
    double nu_prime = std::numeric_limits<double>::quiet_NaN();
    double ratio = std::numeric_limits<double>::quiet_NaN();  // nu'/nu
    // r = 1: oracle for lim n^{-d/2} mu_n(window) (Lebesgue mass);
    // r >= 2: oracle for lim nu'_n(window)/nu'_n(total) (Haar fraction)
    double oracle = std::numeric_limits<double>::quiet_NaN();
    double oracle_stderr = std::numeric_limits<double>::quiet_NaN();
};

struct ConvergenceOptions {
    long long oracle_samples = 400000;
    std::uint64_t seed = 1;
    Int enumeration_limit = 2000;  // build nu/nu' by enumeration up to this n
};

std::vector<ConvergenceRow> convergence_report(const QuadraticLattice& L, int r,
                                               const std::vector<WindowFunction>& windows,
                                               const std::vector<Int>& n_grid,
                                               const ConvergenceOptions& opt = {});

std::string convergence_csv(const std::vector<ConvergenceRow>& rows);

}  // namespace eql
