#include "equilattice/report.hpp"

#include <chrono>
#include <cmath>
#include <fstream>

#include "equilattice/cm.hpp"
#include "equilattice/convergence.hpp"
#include "equilattice/chern.hpp"
#include "equilattice/local_density.hpp"
#include "equilattice/parallel.hpp"
#include "equilattice/pullpush.hpp"
#include "json.hpp"

namespace eql {

namespace {

QuadraticLattice lattice_by_name(const std::string& name) {
    if (name == "Z2") return lattice_zn(2);
    if (name == "Z3") return lattice_zn(3);
    if (name == "Z4") return lattice_zn(4);
    if (name == "Z5") return lattice_zn(5);
    if (name == "A2") return lattice_a2();
    if (name == "A2+Z2") return direct_sum(lattice_a2(), lattice_zn(2));
    if (name == "U") return lattice_hyperbolic();
    if (name == "I1,1") return lattice_minkowski(1, 1);
    throw std::invalid_argument("unknown lattice preset: " + name);
}

std::string fmtd(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string sidecar(const ExperimentConfig& cfg, const std::string& table) {
    nlohmann::json j;
    j["table"] = table;
    j["kind"] = cfg.kind;
    j["seed"] = cfg.seed;
    j["config"] = nlohmann::json::parse(cfg.raw);
    return j.dump(2);
}

std::vector<WindowFunction> parse_windows(const std::string& raw, int dim) {
    std::vector<WindowFunction> out = {WindowFunction::all()};
    auto j = nlohmann::json::parse(raw);
    if (!j.contains("windows")) return out;
    for (auto& w : j["windows"]) {
        std::string type = w.value("type", "cap");
        std::string id = w.value("id", type);
        if (type == "cap" || type == "smooth_cap") {
            auto ax = w.at("axis").get<std::vector<double>>();
            if (static_cast<int>(ax.size()) != dim)
                throw std::invalid_argument("config: window axis has wrong dimension");
            Eigen::MatrixXd a(dim, 1);
            for (int i = 0; i < dim; ++i) a(i, 0) = ax[static_cast<size_t>(i)];
            double tau = w.at("tau").get<double>();
            if (type == "cap")
                out.push_back(WindowFunction::cap(id, a, tau));
            else
                out.push_back(WindowFunction::smooth_cap(id, a, tau, w.value("sharpness", 50.0)));
        } else if (type == "all") {
            // already present
        } else {
            throw std::invalid_argument("config: unknown window type '" + type + "'");
        }
    }
    return out;
}

RunReport run_sublattices(const ExperimentConfig& cfg) {
    RunReport rep;
    QuadraticLattice L = cfg.gram_json.empty() ? lattice_by_name(cfg.lattice_name)
                                               : lattice_from_json(cfg.gram_json);
    std::vector<WindowFunction> windows = parse_windows(cfg.raw, L.dim);
    ConvergenceOptions opt;
    opt.oracle_samples = cfg.samples;
    opt.seed = cfg.seed;
    auto rows = convergence_report(L, cfg.r, windows, cfg.n_grid, opt);
    rep.files["convergence.csv"] = convergence_csv(rows);
    rep.files["convergence.csv.meta.json"] = sidecar(cfg, "convergence");

    nlohmann::json j;
    j["kind"] = cfg.kind;
    j["lattice"] = L.name;
    auto jrows = nlohmann::json::array();
    for (auto& r : rows) {
        nlohmann::json jr;
        jr["window_id"] = r.window_id;
        jr["n"] = r.n;
        if (!std::isnan(r.mu_scaled)) jr["mu_scaled"] = r.mu_scaled;
        if (!std::isnan(r.nu)) jr["nu"] = r.nu;
        if (!std::isnan(r.nu_prime)) jr["nu_prime"] = r.nu_prime;
        if (!std::isnan(r.ratio)) jr["ratio"] = r.ratio;
        jr["oracle"] = r.oracle;
        jr["stderr"] = r.oracle_stderr;
        jrows.push_back(jr);
    }
    j["rows"] = jrows;
    rep.report_json = j.dump(2);
    return rep;
}

RunReport run_multiplicity(const ExperimentConfig& cfg) {
    RunReport rep;
    auto series = multiplicity_series(cfg.r, cfg.K);
    std::string csv = "k,b_k\n";
    for (Int k = 1; k <= cfg.K; ++k) {
        csv += std::to_string(k);
        csv += ',';
        csv += series.at(k).str();
        csv += '\n';
    }
    rep.files["multiplicity.csv"] = csv;
    rep.files["multiplicity.csv.meta.json"] = sidecar(cfg, "multiplicity");

    nlohmann::json j;
    j["kind"] = cfg.kind;
    j["r"] = cfg.r;
    j["K"] = cfg.K;
    if (!cfg.lattice_name.empty() && !cfg.n_grid.empty()) {
        QuadraticLattice L = lattice_by_name(cfg.lattice_name);
        auto rel = verify_multiplicity_relation(L, cfg.r, cfg.n_grid.back());
        j["relation"] = nlohmann::json::parse(relation_report_to_json(rel));
        if (!rel.total_equal || !rel.all_planes_equal) rep.exit_code = 2;
    }
    rep.report_json = j.dump(2);
    return rep;
}

RunReport run_density(const ExperimentConfig& cfg) {
    RunReport rep;
    QuadraticLattice L = cfg.gram_json.empty() ? lattice_by_name(cfg.lattice_name)
                                               : lattice_from_json(cfg.gram_json);
    // density experiment runs over the Gram matrices n*[2] for n in n_grid
    std::vector<LocalDensityResult> rows;
    nlohmann::json vols = nlohmann::json::array();
    for (Int n : cfg.n_grid) {
        GramMatrix M(cfg.r, cfg.r);
        for (int i = 0; i < cfg.r; ++i) M(i, i) = 2 * n;
        for (Int p = 2; p <= cfg.prime_cutoff; ++p) {
            bool prime = p >= 2;
            for (Int q = 2; q * q <= p; ++q)
                if (p % q == 0) prime = false;
            if (!prime) continue;
            rows.push_back(local_density(L, cfg.r, M, p, cfg.s_max));
        }
        auto rv = siegel_weil_relative(L, M, cfg.prime_cutoff, cfg.s_max);
        nlohmann::json v;
        v["det_M"] = rv.det_M.str();
        v["value"] = rv.value;
        vols.push_back(v);
    }
    rep.files["densities.csv"] = local_density_csv(rows);
    rep.files["densities.csv.meta.json"] = sidecar(cfg, "densities");
    nlohmann::json j;
    j["kind"] = cfg.kind;
    j["volumes"] = vols;
    rep.report_json = j.dump(2);
    return rep;
}

RunReport run_pullpush(const ExperimentConfig& cfg) {
    RunReport rep;
    LieConfiguration lie = lie_preset_by_name(cfg.lie_preset);
    auto pp = pull_push(lie);
    auto witness = vanishing_criterion_check(lie);

    std::string csv = "preset,norm,kernel_residual,invariance_residual,witness,witness_theta\n";
    csv += lie.name + "," + fmtd(pp.form.norm()) + "," + fmtd(pp.kernel_residual) + "," +
           fmtd(pp.invariance_residual) + "," + (witness ? "1" : "0") + "," +
           (witness ? fmtd(witness->theta) : "") + "\n";
    rep.files["pullpush.csv"] = csv;
    rep.files["pullpush.csv.meta.json"] = sidecar(cfg, "pullpush");

    nlohmann::json j;
    j["kind"] = cfg.kind;
    j["preset"] = lie.name;
    j["norm"] = pp.form.norm();
    j["witness_found"] = static_cast<bool>(witness);
    if (lie.J) {
        auto nv = complex_nonvanishing_check(lie);
        j["nonvanishing_value"] = nv.value;
        if (!nv.positive) rep.exit_code = 2;
    }
    rep.report_json = j.dump(2);
    return rep;
}

RunReport run_cm(const ExperimentConfig& cfg) {
    RunReport rep;
    std::vector<FDRegion> regions = {{"left", -0.5, 0.0, 1.05, 1.4},
                                     {"right", 0.0, 0.5, 1.05, 1.4},
                                     {"mid", -0.25, 0.25, 1.4, 1.9},
                                     {"top", -0.25, 0.25, 1.9, 3.2}};
    std::string pts = "N,t,D,x,y,weight\n";
    for (Int N : cfg.N_set) {
        auto recs = elliptic_fixed_points(N);
        auto one = cm_points_csv(N, recs);
        pts += one.substr(one.find('\n') + 1);
    }
    rep.files["cm_points.csv"] = pts;
    rep.files["cm_points.csv.meta.json"] = sidecar(cfg, "cm_points");

    auto region_rep = cm_equidistribution_report(cfg.N_set, regions);
    rep.files["cm_regions.csv"] = cm_regions_csv(region_rep);
    rep.files["cm_regions.csv.meta.json"] = sidecar(cfg, "cm_regions");

    nlohmann::json j;
    j["kind"] = cfg.kind;
    j["max_pairwise_ratio_deviation"] = region_rep.max_pairwise_ratio_deviation;
    rep.report_json = j.dump(2);
    return rep;
}

}  // namespace

ExperimentConfig parse_config(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    ExperimentConfig cfg;
    cfg.raw = j.dump();
    cfg.kind = j.at("kind").get<std::string>();
    const std::vector<std::string> kinds = {"sublattices", "multiplicity", "density", "pullpush",
                                            "cm"};
    if (std::find(kinds.begin(), kinds.end(), cfg.kind) == kinds.end())
        throw std::invalid_argument("config: unknown kind '" + cfg.kind + "'");
    if (j.contains("lattice")) {
        if (j["lattice"].is_string())
            cfg.lattice_name = j["lattice"].get<std::string>();
        else
            cfg.gram_json = j["lattice"].dump();
    }
    cfg.lie_preset = j.value("preset", "");
    cfg.r = j.value("r", 1);
    cfg.K = j.value("K", static_cast<Int>(100));
    if (j.contains("n_grid")) cfg.n_grid = j["n_grid"].get<std::vector<Int>>();
    if (j.contains("N_set")) cfg.N_set = j["N_set"].get<std::vector<Int>>();
    cfg.prime_cutoff = j.value("primes", static_cast<Int>(20));
    cfg.s_max = j.value("s_max", 3);
    cfg.samples = j.value("samples", static_cast<long long>(200000));
    if ((cfg.kind == "sublattices") && !j.contains("seed"))
        throw std::invalid_argument("config: stochastic experiment requires a seed");
    cfg.seed = j.value("seed", static_cast<std::uint64_t>(1));
    cfg.threads = j.value("threads", 0);
    cfg.out_dir = j.value("out", ".");

    // referenced presets must exist
    if (!cfg.lattice_name.empty()) lattice_by_name(cfg.lattice_name);
    if (!cfg.lie_preset.empty()) lie_preset_by_name(cfg.lie_preset);
    if (cfg.kind == "pullpush" && cfg.lie_preset.empty())
        throw std::invalid_argument("config: pullpush requires field 'preset'");
    if (cfg.kind == "cm" && cfg.N_set.empty())
        throw std::invalid_argument("config: cm requires field 'N_set'");
    if (cfg.kind == "sublattices" && (cfg.lattice_name.empty() && cfg.gram_json.empty()))
        throw std::invalid_argument("config: sublattices requires field 'lattice'");
    if (cfg.kind == "sublattices" && cfg.n_grid.empty())
        throw std::invalid_argument("config: sublattices requires field 'n_grid'");
    if (cfg.kind == "density" && (cfg.lattice_name.empty() && cfg.gram_json.empty()))
        throw std::invalid_argument("config: density requires field 'lattice'");
    if (cfg.kind == "density" && cfg.n_grid.empty())
        throw std::invalid_argument("config: density requires field 'n_grid'");
    return cfg;
}

RunReport run_experiment(const ExperimentConfig& cfg) {
    if (cfg.threads > 0) global_thread_count() = cfg.threads;
    auto t0 = std::chrono::steady_clock::now();
    RunReport rep;
    if (cfg.kind == "sublattices")
        rep = run_sublattices(cfg);
    else if (cfg.kind == "multiplicity")
        rep = run_multiplicity(cfg);
    else if (cfg.kind == "density")
        rep = run_density(cfg);
    else if (cfg.kind == "pullpush")
        rep = run_pullpush(cfg);
    else if (cfg.kind == "cm")
        rep = run_cm(cfg);
    else
        throw std::invalid_argument("unknown kind");
    rep.wall_clock_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

int run_from_file(const std::string& config_path, const std::string& out_override,
                  int threads_override, std::uint64_t seed_override, bool has_seed_override) {
    std::ifstream in(config_path);
    if (!in) {
        std::fprintf(stderr, "error: cannot read config '%s'\n", config_path.c_str());
        return 1;
    }
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    ExperimentConfig cfg;
    try {
        cfg = parse_config(text);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 1;
    }
    if (!out_override.empty()) cfg.out_dir = out_override;
    if (threads_override > 0) cfg.threads = threads_override;
    if (has_seed_override) cfg.seed = seed_override;

    RunReport rep;
    try {
        rep = run_experiment(cfg);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "run error: %s\n", e.what());
        return 2;
    }

    std::error_code ec;
    std::filesystem::create_directories(cfg.out_dir, ec);
    for (auto& [name, contents] : rep.files) {
        std::ofstream out(std::filesystem::path(cfg.out_dir) / name, std::ios::binary);
        out << contents;
    }
    {
        std::ofstream out(std::filesystem::path(cfg.out_dir) / "report.json", std::ios::binary);
        out << rep.report_json << "\n";
    }
    std::printf("%s: wrote %zu files to %s in %.2fs (exit %d)\n", cfg.kind.c_str(),
                rep.files.size() + 1, cfg.out_dir.c_str(), rep.wall_clock_seconds,
                rep.exit_code);
    return rep.exit_code;
}

std::string csv_escape(const std::string& field) {
    if (field.find_first_of(",\"\n") == std::string::npos) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

std::string preset_listing() {
    std::string out = "lattice presets:\n";
    for (const char* n : {"Z2", "Z3", "Z4", "Z5", "A2", "A2+Z2", "U", "I1,1"}) {
        out += "  ";
        out += n;
        out += "\n";
    }
    out += "lie presets:\n";
    for (auto& p : list_lie_presets()) {
        out += "  " + p.name + ": " + p.description + "\n";
    }
    return out;
}

}  // namespace eql
