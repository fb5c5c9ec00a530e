#include "equilattice/measures.hpp"

#include "equilattice/enumerate.hpp"
#include "equilattice/rng.hpp"

namespace eql {

namespace {

Eigen::MatrixXd tuple_to_real(const IMat& cols) {
    Eigen::MatrixXd m(cols.rows, cols.cols);
    for (int i = 0; i < cols.rows; ++i)
        for (int j = 0; j < cols.cols; ++j) m(i, j) = static_cast<double>(cols(i, j));
    return m;
}

Eigen::MatrixXd gram_real(const QuadraticLattice& L) {
    Eigen::MatrixXd B(L.dim, L.dim);
    for (int i = 0; i < L.dim; ++i)
        for (int j = 0; j < L.dim; ++j) B(i, j) = static_cast<double>(L.gram(i, j));
    return B;
}

Eigen::MatrixXd projector_of(const Eigen::MatrixXd& V) {
    // Euclidean orthoprojector with a QR factor for numerical stability
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(V);
    Eigen::MatrixXd Q = qr.householderQ() * Eigen::MatrixXd::Identity(V.rows(), V.cols());
    return Q * Q.transpose();
}

}  // namespace

UnitDiscriminantPoint project_to_unit_discriminant(const QuadraticLattice& L,
                                                   const VectorTuple& t) {
    GramMatrix g = gram_of_tuple(L, t);
    if (!is_positive_definite(g))
        throw std::invalid_argument("project_to_unit_discriminant: tuple not in the cone");
    double h = static_cast<double>(det_exact(g));
    int r = t.rank();
    double scale = std::pow(h, -0.5 / r);
    UnitDiscriminantPoint p;
    p.cols = scale * tuple_to_real(t.cols);
    return p;
}

UnitDiscriminantPoint project_to_sqrtM_frame(const QuadraticLattice& L, const VectorTuple& t,
                                             const GramMatrix& M) {
    GramMatrix g = gram_of_tuple(L, t);
    if (!(g == M)) throw std::invalid_argument("project_to_sqrtM_frame: Gram mismatch");
    if (!is_positive_definite(M))
        throw std::invalid_argument("project_to_sqrtM_frame: M not positive definite");
    int r = M.rows;
    Eigen::MatrixXd Md(r, r);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) Md(i, j) = static_cast<double>(M(i, j));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(Md);
    Eigen::MatrixXd inv_sqrt = es.operatorInverseSqrt();
    UnitDiscriminantPoint p;
    p.cols = tuple_to_real(t.cols) * inv_sqrt;
    return p;
}

GrassmannPoint project_to_grassmannian(const VectorTuple& t) {
    Eigen::MatrixXd V = tuple_to_real(t.cols);
    if (V.colPivHouseholderQr().rank() < t.rank())
        throw std::invalid_argument("project_to_grassmannian: degenerate tuple");
    return GrassmannPoint{projector_of(V)};
}

GrassmannPoint project_to_grassmannian(const SublatticeHNF& s) {
    return project_to_grassmannian(VectorTuple{s.basis});
}

double WindowFunction::eval(const Eigen::MatrixXd& P) const {
    switch (kind) {
        case Kind::All:
            return 1.0;
        case Kind::Cap:
            return (P.cwiseProduct(center).sum() >= threshold) ? 1.0 : 0.0;
        case Kind::SmoothCap: {
            double t = P.cwiseProduct(center).sum() - threshold;
            return 1.0 / (1.0 + std::exp(-sharpness * t));
        }
        case Kind::ProjectorBox: {
            for (auto& [i, j, lo, hi] : box) {
                double v = P(i, j);
                if (v < lo || v > hi) return 0.0;
            }
            return 1.0;
        }
        case Kind::HalfSpace:
            return (P(half_coord, half_coord) >= threshold) ? 1.0 : 0.0;
    }
    return 0.0;
}

WindowFunction WindowFunction::all() { return WindowFunction{}; }

WindowFunction WindowFunction::cap(std::string id, const Eigen::MatrixXd& axis_cols, double tau) {
    WindowFunction w;
    w.kind = Kind::Cap;
    w.id = std::move(id);
    w.center = projector_of(axis_cols);
    if (axis_cols.cols() == 1) w.axis = axis_cols.col(0).normalized();
    w.threshold = tau;
    return w;
}

WindowFunction WindowFunction::smooth_cap(std::string id, const Eigen::MatrixXd& axis_cols,
                                          double tau, double sharpness) {
    WindowFunction w = cap(std::move(id), axis_cols, tau);
    w.kind = Kind::SmoothCap;
    w.sharpness = sharpness;
    return w;
}

WindowFunction WindowFunction::projector_box(
    std::string id, std::vector<std::tuple<int, int, double, double>> box) {
    WindowFunction w;
    w.kind = Kind::ProjectorBox;
    w.id = std::move(id);
    w.box = std::move(box);
    return w;
}

double EmpiricalMeasure::total_mass() const {
    double s = 0;
    for (auto& [p, w] : atoms) s += w;
    return s;
}

double integrate(const EmpiricalMeasure& mu, const WindowFunction& f) {
    if (mu.target != TargetSpace::Grassmannian)
        throw std::invalid_argument("integrate: window functions live on the Grassmannian");
    double s = 0;
    for (auto& [p, w] : mu.atoms) s += w * f.eval(p);
    return s;
}

EmpiricalMeasure measure_mu_n(const QuadraticLattice& L, int r, Int n) {
    EmpiricalMeasure mu;
    mu.target = TargetSpace::Grassmannian;
    for (auto& t : enumerate_tuples_disc_leq(L, r, n))
        mu.atoms.emplace_back(project_to_grassmannian(t).proj, 1.0);
    return mu;
}

EmpiricalMeasure measure_nu_n(const QuadraticLattice& L, int r, Int n) {
    EmpiricalMeasure mu;
    mu.target = TargetSpace::Grassmannian;
    for (auto& s : enumerate_sublattices_disc_leq(L, r, n))
        mu.atoms.emplace_back(project_to_grassmannian(s).proj, 1.0);
    return mu;
}

EmpiricalMeasure measure_nu_prime_n(const QuadraticLattice& L, int r, Int n) {
    EmpiricalMeasure mu;
    mu.target = TargetSpace::Grassmannian;
    for (auto& s : enumerate_primitive_planes(L, r, n))
        mu.atoms.emplace_back(project_to_grassmannian(s).proj, 1.0);
    return mu;
}

std::vector<double> mu_window_masses_rank1(const QuadraticLattice& L, Int n,
                                           const std::vector<WindowFunction>& windows) {
    // for r = 1 the projector of span(v) is v v^T / |v|^2; window functions
    // are evaluated without materializing the matrix where possible
    std::vector<double> mass(windows.size(), 0.0);
    int d = L.dim;
    Eigen::VectorXd v(d);
    size_t nw = windows.size();
    enumerate_vectors_norm_leq(L, n, [&](const std::vector<Int>& vi, Int) {
        for (int i = 0; i < d; ++i) v(i) = static_cast<double>(vi[i]);
        double n2 = v.squaredNorm();
        for (size_t k = 0; k < nw; ++k) {
            const WindowFunction& w = windows[k];
            switch (w.kind) {
                case WindowFunction::Kind::All:
                    mass[k] += 1.0;
                    break;
                case WindowFunction::Kind::Cap: {
                    if (w.axis.size() == d) {
                        double dot = w.axis.dot(v);
                        if (dot * dot >= w.threshold * n2) mass[k] += 1.0;
                    } else if (v.dot(w.center * v) >= w.threshold * n2) {
                        mass[k] += 1.0;
                    }
                    break;
                }
                case WindowFunction::Kind::SmoothCap: {
                    double t = v.dot(w.center * v) / n2 - w.threshold;
                    mass[k] += 1.0 / (1.0 + std::exp(-w.sharpness * t));
                    break;
                }
                default: {
                    Eigen::MatrixXd P = v * v.transpose() / n2;
                    mass[k] += w.eval(P);
                }
            }
        }
    });
    return mass;
}

double window_boundary_shell_mass(const WindowFunction& w, int d, int r, double eps, int samples,
                                  std::uint64_t seed) {
    if (w.kind != WindowFunction::Kind::Cap) return 0.0;
    Rng rng(seed);
    int hits = 0;
    for (int s = 0; s < samples; ++s) {
        Eigen::MatrixXd G(d, r);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < r; ++j) G(i, j) = rng.gaussian();
        Eigen::HouseholderQR<Eigen::MatrixXd> qr(G);
        Eigen::MatrixXd Q = qr.householderQ() * Eigen::MatrixXd::Identity(d, r);
        Eigen::MatrixXd P = Q * Q.transpose();
        double t = P.cwiseProduct(w.center).sum();
        if (std::abs(t - w.threshold) <= eps) ++hits;
    }
    return static_cast<double>(hits) / samples;
}

}  // namespace eql
