#pragma once

// Empirical measures built from enumerations, projected to the unit
// discriminant surface and the Grassmannian of r-planes, plus the window
// functions the convergence experiments integrate against.

#include <Eigen/Dense>
#include <functional>
#include <string>

#include "equilattice/lattice.hpp"

namespace eql {

enum class TargetSpace { UnitSurface, Grassmannian, FundamentalDomain };

// r vectors spanning a plane, scaled so the tuple has unit discriminant
struct UnitDiscriminantPoint {
    Eigen::MatrixXd cols;  // d x r, real
};

// canonical orthogonal projector onto the spanned plane (auxiliary
// Euclidean metric), unique per plane
struct GrassmannPoint {
    Eigen::MatrixXd proj;  // d x d, symmetric idempotent, trace r
};

UnitDiscriminantPoint project_to_unit_discriminant(const QuadraticLattice& L,
                                                   const VectorTuple& t);

// lambda -> lambda . sqrt(M)^{-1}: an orthonormal frame of the spanned
// plane (Gram becomes the identity)
UnitDiscriminantPoint project_to_sqrtM_frame(const QuadraticLattice& L, const VectorTuple& t,
                                             const GramMatrix& M);

GrassmannPoint project_to_grassmannian(const VectorTuple& t);
GrassmannPoint project_to_grassmannian(const SublatticeHNF& s);

// Window functions evaluated on Grassmann projectors. Caps are balls in
// tr(P P0); boxes constrain individual projector entries; smooth caps are
// bump-weighted versions of the cap.
struct WindowFunction {
    enum class Kind { All, Cap, ProjectorBox, SmoothCap, HalfSpace } kind = Kind::All;
    std::string id = "all";
    Eigen::MatrixXd center;                              // Cap / SmoothCap: projector P0
    Eigen::VectorXd axis;                                // unit axis when the cap is rank 1
    double threshold = 0.0;                              // Cap: tr(P P0) >= threshold
    double sharpness = 1.0;                              // SmoothCap
    std::vector<std::tuple<int, int, double, double>> box;  // (i, j, lo, hi)
    int half_coord = 0;                                  // HalfSpace: P(h,h) >= threshold

    double eval(const Eigen::MatrixXd& P) const;

    static WindowFunction all();
    // cap of lines/planes around the span of u (columns), tr(P P0) >= tau
    static WindowFunction cap(std::string id, const Eigen::MatrixXd& axis_cols, double tau);
    static WindowFunction smooth_cap(std::string id, const Eigen::MatrixXd& axis_cols, double tau,
                                     double sharpness);
    static WindowFunction projector_box(std::string id,
                                        std::vector<std::tuple<int, int, double, double>> box);
};

struct EmpiricalMeasure {
    TargetSpace target = TargetSpace::Grassmannian;
    std::vector<std::pair<Eigen::MatrixXd, double>> atoms;  // (point payload, weight)

    double total_mass() const;
};

// sum of w_i f(x_i); the measure must live on the Grassmannian
double integrate(const EmpiricalMeasure& mu, const WindowFunction& f);

// builders
EmpiricalMeasure measure_mu_n(const QuadraticLattice& L, int r, Int n);        // tuples
EmpiricalMeasure measure_nu_n(const QuadraticLattice& L, int r, Int n);        // sublattices
EmpiricalMeasure measure_nu_prime_n(const QuadraticLattice& L, int r, Int n);  // planes

// Streaming window masses of mu_n for r = 1 without materializing atoms;
// returns one mass per window. Exact count of lattice points per window.
std::vector<double> mu_window_masses_rank1(const QuadraticLattice& L, Int n,
                                           const std::vector<WindowFunction>& windows);

// boundary-shell diagnostic for indicator windows: sampled Haar mass of
// the shell |tr(P P0) - tau| <= eps (should be small for admissible caps)
double window_boundary_shell_mass(const WindowFunction& w, int d, int r, double eps, int samples,
                                  std::uint64_t seed);

}  // namespace eql
