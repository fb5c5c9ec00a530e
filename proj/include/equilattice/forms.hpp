#pragma once

// Dense exterior algebra over a small real vector space (dim <= 12):
// alternating forms with complex coefficients indexed by sorted basis
// subsets, multivectors, wedge, interior product, pullback, evaluation.

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <vector>

#include "equilattice/ints.hpp"

namespace eql {

using cplx = std::complex<double>;

// subset bookkeeping for a fixed ambient dimension
struct SubsetTable {
    int n = 0;
    std::vector<std::vector<std::uint16_t>> masks;  // masks[k] sorted ascending
    std::vector<int> rank;                          // mask -> index within its degree

    static const SubsetTable& get(int n);
};

// parity of the merge of two disjoint masks (a placed before b)
int merge_sign(std::uint16_t a, std::uint16_t b);

struct AlternatingForm {
    int n = 0;       // ambient dimension
    int degree = 0;  // 0..n
    std::vector<cplx> coef;  // indexed by SubsetTable::masks[degree]

    AlternatingForm() = default;
    AlternatingForm(int n_, int degree_);

    static AlternatingForm zero(int n, int degree);
    // dual covector with given coefficients phi(e_i)
    static AlternatingForm covector(const Eigen::VectorXd& phi);

    cplx& at(std::uint16_t mask);
    cplx at(std::uint16_t mask) const;

    AlternatingForm operator+(const AlternatingForm& o) const;
    AlternatingForm operator-(const AlternatingForm& o) const;
    AlternatingForm operator*(cplx s) const;
    AlternatingForm& operator+=(const AlternatingForm& o);
    AlternatingForm& operator*=(cplx s);

    double norm() const;      // l2 of coefficients
    double max_abs() const;
    bool is_real(double tol = 1e-9) const;

    // evaluate on degree many complex vectors (columns)
    cplx eval(const Eigen::MatrixXcd& vectors) const;
    double eval_real(const Eigen::MatrixXd& vectors) const;
};

AlternatingForm wedge(const AlternatingForm& a, const AlternatingForm& b);

struct MultiVector {
    int n = 0;
    int degree = 0;
    std::vector<double> coef;

    MultiVector() = default;
    MultiVector(int n_, int degree_);
    // wedge of the given vectors (columns)
    static MultiVector wedge_of(const Eigen::MatrixXd& vectors);
};

// interior product: (contract(alpha, u))(v...) = alpha(u..., v...)
AlternatingForm contract(const AlternatingForm& alpha, const MultiVector& u);

// pull-back along the linear map A (n_from columns of length n_to is not
// supported; A maps the form's space to itself, or restricts via an
// n x m injection matrix giving a form on R^m)
AlternatingForm pullback(const AlternatingForm& alpha, const Eigen::MatrixXd& A);
AlternatingForm restrict_to(const AlternatingForm& alpha, const Eigen::MatrixXd& inj);

}  // namespace eql
