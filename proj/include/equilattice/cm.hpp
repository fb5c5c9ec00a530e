#pragma once

// The genus-1 Hecke fixed-point laboratory: elliptic fixed points of the
// degree-N correspondence on the modular curve, exact class bookkeeping
// through reduced binary quadratic forms, and equidistribution reports
// against hyperbolic measure on the fundamental domain.

#include <optional>
#include <string>

#include "equilattice/ints.hpp"

namespace eql {

struct HeckeMatrix {
    Int a = 0, b = 0, c = 0, d = 0;

    Int det() const { return a * d - b * c; }
    Int trace() const { return a + d; }
    bool elliptic() const { return trace() * trace() < 4 * det(); }
};

struct UHPoint {
    double x = 0.0;
    double y = 0.0;  // > 0
};

// upper-triangular coset representatives [[a,b],[0,d]], ad = N, 0 <= b < d;
// their number is sigma_1(N)
std::vector<HeckeMatrix> hecke_coset_reps(Int N);

Int sigma1(Int N);

// unique fixed point of an elliptic matrix in the upper half-plane
UHPoint fixed_point(const HeckeMatrix& m);

UHPoint moebius_apply(const HeckeMatrix& m, const UHPoint& z);

struct ReductionResult {
    UHPoint z;
    std::string word;  // applied generators, e.g. "T^-2 S T ..."
};

// standard SL(2,Z) reduction to |Re| <= 1/2, |z| >= 1 with the boundary
// convention Re = +1/2 and the right unit arc excluded
ReductionResult reduce_to_fundamental_domain(UHPoint z);

bool in_fundamental_domain(const UHPoint& z, double tol = 1e-9);

// positive definite integral binary quadratic form a x^2 + b x y + c y^2
struct BinaryForm {
    Int a = 0, b = 0, c = 0;

    Int disc() const { return b * b - 4 * a * c; }
    bool operator==(const BinaryForm& o) const { return a == o.a && b == o.b && c == o.c; }
    bool operator<(const BinaryForm& o) const {
        return std::tie(a, b, c) < std::tie(o.a, o.b, o.c);
    }
};

// Gauss reduction of a positive definite form
BinaryForm reduce_form(BinaryForm f);

// all reduced positive definite forms of discriminant D < 0 (including
// imprimitive ones), with the orbifold weight of each class
struct WeightedForm {
    BinaryForm form;
    double weight = 1.0;  // 1/2 on the square class, 1/3 on the hexagonal class
};
std::vector<WeightedForm> reduced_forms(Int D);

// Hurwitz-weighted class count of discriminant D
double hurwitz_weighted_count(Int D);

struct FixedPointRecord {
    UHPoint z;          // reduced representative
    Int trace = 0;
    Int disc = 0;       // t^2 - 4N < 0
    BinaryForm form;    // reduced class representative (c, d-a, -b)
    double weight = 1.0;
};

// one record per Gamma-class of elliptic integral matrices of determinant N
std::vector<FixedPointRecord> elliptic_fixed_points(Int N);

// axis-aligned region inside the fundamental domain with closed-form
// hyperbolic area (x0,x1) x (y0,y1), area = (x1-x0)(1/y0 - 1/y1)
struct FDRegion {
    std::string id;
    double x0, x1, y0, y1;

    double area() const { return (x1 - x0) * (1.0 / y0 - 1.0 / y1); }
    bool contains(const UHPoint& z) const {
        return z.x >= x0 && z.x < x1 && z.y >= y0 && z.y < y1;
    }
};

struct CMRegionRow {
    Int N;
    std::string region_id;
    double count = 0.0;  // weighted
    double area = 0.0;
    double ratio = 0.0;  // count / area
};

struct CMReport {
    std::vector<CMRegionRow> rows;                 // one per (N, region)
    std::vector<CMRegionRow> aggregated;           // summed over N per region
    double max_pairwise_ratio_deviation = 0.0;     // on aggregated rows
};

CMReport cm_equidistribution_report(const std::vector<Int>& N_set,
                                    const std::vector<FDRegion>& regions);

std::string cm_points_csv(Int N, const std::vector<FixedPointRecord>& records);
std::string cm_regions_csv(const CMReport& report);

}  // namespace eql
