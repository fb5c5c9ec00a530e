#include "equilattice/convergence.hpp"

#include <cmath>
#include <cstdio>
#include <numeric>

namespace eql {

namespace {

bool is_standard_zn(const QuadraticLattice& L) {
    for (int i = 0; i < L.dim; ++i)
        for (int j = 0; j < L.dim; ++j)
            if (L.gram(i, j) != (i == j ? 1 : 0)) return false;
    return true;
}

std::string fmt(double v) {
    if (std::isnan(v)) return "";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

}  // namespace

std::vector<ConvergenceRow> convergence_report(const QuadraticLattice& L, int r,
                                               const std::vector<WindowFunction>& windows,
                                               const std::vector<Int>& n_grid,
                                               const ConvergenceOptions& opt) {
    std::vector<ConvergenceRow> rows;
    int d = L.dim;

    // per-window oracles, computed once
    std::vector<OracleEstimate> oracle(windows.size());
    for (size_t w = 0; w < windows.size(); ++w) {
        if (r == 1)
            oracle[w] = oracle_limit_measure(L, 1, windows[w], opt.oracle_samples,
                                             opt.seed + static_cast<std::uint64_t>(w));
        else
            oracle[w] = grassmann_haar_oracle(d, r, windows[w], opt.oracle_samples,
                                              opt.seed + static_cast<std::uint64_t>(w));
    }

    for (Int n : n_grid) {
        std::vector<double> mu_mass(windows.size(),
                                    std::numeric_limits<double>::quiet_NaN());
        if (r == 1) mu_mass = mu_window_masses_rank1(L, n, windows);

        std::vector<double> nu_mass(windows.size(), std::numeric_limits<double>::quiet_NaN());
        std::vector<double> nup_mass(windows.size(), std::numeric_limits<double>::quiet_NaN());
        if (r == 1 && n <= opt.enumeration_limit) {
            // stream over +-classes; the saturation index is the content
            std::fill(nu_mass.begin(), nu_mass.end(), 0.0);
            std::fill(nup_mass.begin(), nup_mass.end(), 0.0);
            int d = L.dim;
            Eigen::VectorXd v(d);
            enumerate_vectors_norm_leq(L, n, [&](const std::vector<Int>& vi, Int) {
                for (Int c : vi) {
                    if (c > 0) break;
                    if (c < 0) return;
                }
                Int content = 0;
                for (Int c : vi) content = std::gcd(content, c);
                for (int i = 0; i < d; ++i) v(i) = static_cast<double>(vi[i]);
                Eigen::MatrixXd P = v * v.transpose() / v.squaredNorm();
                for (size_t w = 0; w < windows.size(); ++w) {
                    double val = windows[w].eval(P);
                    nu_mass[w] += val;
                    if (content == 1) nup_mass[w] += val;
                }
            });
        } else if (n <= opt.enumeration_limit) {
            EmpiricalMeasure nu = measure_nu_n(L, r, n);
            EmpiricalMeasure nup = measure_nu_prime_n(L, r, n);
            for (size_t w = 0; w < windows.size(); ++w) {
                nu_mass[w] = integrate(nu, windows[w]);
                nup_mass[w] = integrate(nup, windows[w]);
            }
        } else if (is_standard_zn(L) && r <= 2) {
            // only total masses are available through the fast counters
            auto tot = sublattice_totals_zd(d, r, n);
            for (size_t w = 0; w < windows.size(); ++w) {
                if (windows[w].kind == WindowFunction::Kind::All) {
                    nu_mass[w] = static_cast<double>(tot.nu);
                    nup_mass[w] = static_cast<double>(tot.nu_prime);
                }
            }
        }

        double scale = std::pow(static_cast<double>(n), -0.5 * d);
        for (size_t w = 0; w < windows.size(); ++w) {
            ConvergenceRow row;
            row.window_id = windows[w].id;
            row.n = n;
            if (r == 1) row.mu_scaled = mu_mass[w] * scale;
            row.nu = nu_mass[w];
            row.nu_prime = nup_mass[w];
            row.ratio = nup_mass[w] / nu_mass[w];
            row.oracle = oracle[w].estimate;
            row.oracle_stderr = oracle[w].standard_error;
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

std::string convergence_csv(const std::vector<ConvergenceRow>& rows) {
    std::string out = "window_id,n,mu_scaled,nu,nu_prime,ratio,oracle,stderr\n";
    for (auto& r : rows) {
        out += r.window_id;
        out += ',';
        out += std::to_string(r.n);
        out += ',';
        out += fmt(r.mu_scaled);
        out += ',';
        out += fmt(r.nu);
        out += ',';
        out += fmt(r.nu_prime);
        out += ',';
        out += fmt(r.ratio);
        out += ',';
        out += fmt(r.oracle);
        out += ',';
        out += fmt(r.oracle_stderr);
        out += '\n';
    }
    return out;
}

}  // namespace eql
