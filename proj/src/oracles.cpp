#include "equilattice/oracles.hpp"

#include "equilattice/parallel.hpp"
#include "equilattice/rng.hpp"

namespace eql {

double unit_ball_volume(int d) {
    return std::pow(M_PI, d / 2.0) / std::tgamma(d / 2.0 + 1.0);
}

namespace {

constexpr int kOracleBlocks = 256;  // fixed block count keeps results thread-independent

struct Accum {
    double sum = 0, sumsq = 0;
    long long count = 0;
};

OracleEstimate reduce_blocks(const std::vector<Accum>& blocks, double scale) {
    double sum = 0, sumsq = 0;
    long long n = 0;
    for (auto& b : blocks) {
        sum += b.sum;
        sumsq += b.sumsq;
        n += b.count;
    }
    OracleEstimate e;
    double mean = sum / static_cast<double>(n);
    double var = std::max(0.0, sumsq / static_cast<double>(n) - mean * mean);
    e.estimate = scale * mean;
    e.standard_error = scale * std::sqrt(var / static_cast<double>(n));
    return e;
}

}  // namespace

OracleEstimate oracle_limit_measure(const QuadraticLattice& L, int r, const WindowFunction& window,
                                    long long samples, std::uint64_t seed) {
    if (samples <= 0) throw std::invalid_argument("oracle_limit_measure: zero samples");
    if (r != 1)
        throw std::invalid_argument(
            "oracle_limit_measure: the full-space oracle is defined for r = 1; plane measures "
            "use grassmann_haar_oracle");
    if (!L.positive_definite())
        throw std::invalid_argument(
            "oracle_limit_measure: indefinite lattices need the windowed variant");
    int d = L.dim;
    // bounding box of the ellipsoid B(v,v) <= 1: |v_i| <= sqrt((B^{-1})_ii)
    Eigen::MatrixXd B(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) B(i, j) = static_cast<double>(L.gram(i, j));
    Eigen::MatrixXd Binv = B.inverse();
    std::vector<double> half(d);
    double boxvol = 1.0;
    for (int i = 0; i < d; ++i) {
        half[i] = std::sqrt(Binv(i, i)) * (1.0 + 1e-12);
        boxvol *= 2.0 * half[i];
    }

    Rng master(seed);
    std::vector<Accum> blocks(kOracleBlocks);
    parallel_chunks(kOracleBlocks, kOracleBlocks, [&](int c, long long, long long) {
        Rng rng = master.substream(static_cast<std::uint64_t>(c));
        long long m = samples / kOracleBlocks + (c < samples % kOracleBlocks ? 1 : 0);
        Eigen::VectorXd v(d);
        Accum& acc = blocks[c];
        for (long long s = 0; s < m; ++s) {
            for (int i = 0; i < d; ++i) v(i) = rng.uniform(-half[i], half[i]);
            double q = v.dot(B * v);
            double val = 0.0;
            if (q > 0 && q <= 1.0) {
                double n2 = v.squaredNorm();
                switch (window.kind) {
                    case WindowFunction::Kind::All:
                        val = 1.0;
                        break;
                    case WindowFunction::Kind::Cap:
                        val = (v.dot(window.center * v) / n2 >= window.threshold) ? 1.0 : 0.0;
                        break;
                    case WindowFunction::Kind::SmoothCap: {
                        double t = v.dot(window.center * v) / n2 - window.threshold;
                        val = 1.0 / (1.0 + std::exp(-window.sharpness * t));
                        break;
                    }
                    default: {
                        Eigen::MatrixXd P = v * v.transpose() / n2;
                        val = window.eval(P);
                    }
                }
            }
            acc.sum += val;
            acc.sumsq += val * val;
            ++acc.count;
        }
    });
    return reduce_blocks(blocks, boxvol);
}

OracleEstimate oracle_limit_measure_windowed(const QuadraticLattice& L, const IMat& majorant,
                                             double rho2, long long samples, std::uint64_t seed) {
    if (samples <= 0) throw std::invalid_argument("oracle: zero samples");
    int d = L.dim;
    Eigen::MatrixXd B(d, d), A(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            B(i, j) = static_cast<double>(L.gram(i, j));
            A(i, j) = static_cast<double>(majorant(i, j));
        }
    // region: 0 < B(v,v) <= 1 and A(v,v) <= rho2 * B(v,v); the latter with
    // B(v,v) <= 1 bounds A(v,v) <= rho2, an ellipsoid
    Eigen::MatrixXd Ainv = A.inverse();
    std::vector<double> half(d);
    double boxvol = 1.0;
    for (int i = 0; i < d; ++i) {
        half[i] = std::sqrt(Ainv(i, i) * rho2) * (1.0 + 1e-12);
        boxvol *= 2.0 * half[i];
    }
    Rng master(seed);
    std::vector<Accum> blocks(kOracleBlocks);
    parallel_chunks(kOracleBlocks, kOracleBlocks, [&](int c, long long, long long) {
        Rng rng = master.substream(static_cast<std::uint64_t>(c));
        long long m = samples / kOracleBlocks + (c < samples % kOracleBlocks ? 1 : 0);
        Eigen::VectorXd v(d);
        Accum& acc = blocks[c];
        for (long long s = 0; s < m; ++s) {
            for (int i = 0; i < d; ++i) v(i) = rng.uniform(-half[i], half[i]);
            double q = v.dot(B * v);
            double a = v.dot(A * v);
            double val = (q > 0 && q <= 1.0 && a <= rho2 * q) ? 1.0 : 0.0;
            acc.sum += val;
            acc.sumsq += val * val;
            ++acc.count;
        }
    });
    return reduce_blocks(blocks, boxvol);
}

OracleEstimate grassmann_haar_oracle(int d, int r, const WindowFunction& window,
                                     long long samples, std::uint64_t seed) {
    if (samples <= 0) throw std::invalid_argument("grassmann_haar_oracle: zero samples");
    Rng master(seed);
    std::vector<Accum> blocks(kOracleBlocks);
    parallel_chunks(kOracleBlocks, kOracleBlocks, [&](int c, long long, long long) {
        Rng rng = master.substream(static_cast<std::uint64_t>(c));
        long long m = samples / kOracleBlocks + (c < samples % kOracleBlocks ? 1 : 0);
        Accum& acc = blocks[c];
        Eigen::MatrixXd G(d, r);
        for (long long s = 0; s < m; ++s) {
            for (int i = 0; i < d; ++i)
                for (int j = 0; j < r; ++j) G(i, j) = rng.gaussian();
            Eigen::HouseholderQR<Eigen::MatrixXd> qr(G);
            Eigen::MatrixXd Q = qr.householderQ() * Eigen::MatrixXd::Identity(d, r);
            Eigen::MatrixXd P = Q * Q.transpose();
            double val = window.eval(P);
            acc.sum += val;
            acc.sumsq += val * val;
            ++acc.count;
        }
    });
    return reduce_blocks(blocks, 1.0);
}

}  // namespace eql
