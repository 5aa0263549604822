// Command-line driver: theta-check, au-table, solve, area, reconstruct, dress.
// Exit codes: 0 success, 1 numerical failure, 2 usage error.  Output files go
// to --out paths, relative ones under $LAWSON_OUTPUT_DIR when set.

#include "lawson/config.hpp"
#include "lawson/mesh_io.hpp"
#include "lawson/reconstruction.hpp"
#include "lawson/spectral.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>

using namespace lawson;
using nlohmann::json;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_numerical = 1;
constexpr int exit_usage = 2;

std::string out_path(const std::string& path) {
    const char* dir = std::getenv("LAWSON_OUTPUT_DIR");
    std::filesystem::path p(path);
    if (dir && *dir && p.is_relative()) p = std::filesystem::path(dir) / p;
    if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
    return p.string();
}

json cplx_json(cplx z) { return json::array({z.real(), z.imag()}); }

cplx cplx_from(const json& j) { return cplx{j.at(0).get<double>(), j.at(1).get<double>()}; }

json data_json(const SpectralData& d, const std::string& config_hash) {
    json j;
    j["version"] = library_version;
    j["config_hash"] = config_hash;
    j["x_coeffs"] = json::array();
    for (cplx c : d.x_coeffs) j["x_coeffs"].push_back(cplx_json(c));
    j["a_coeffs"] = json::array();
    for (cplx c : d.a_coeffs) j["a_coeffs"].push_back(cplx_json(c));
    j["area"] = cplx_json(area(d));
    return j;
}

SpectralData load_data(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open data file: " + path);
    json j = json::parse(in);
    SpectralData d;
    for (const auto& c : j.at("x_coeffs")) d.x_coeffs.push_back(cplx_from(c));
    for (const auto& c : j.at("a_coeffs")) d.a_coeffs.push_back(cplx_from(c));
    return d;
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write: " + path);
    out << text;
}

// ---------------------------------------------------------------------------
// theta-check

int cmd_theta_check(int grid, int terms) {
    ThetaFn th(terms);
    std::mt19937 rng(12345);
    std::uniform_real_distribution<double> u(-1.5, 1.5);
    double quasi = 0.0, zero = std::abs(th.theta(0.0)), dbar = 0.0;
    cplx factor_base = std::exp(cplx{pi, 0.0} + 2.0 * pi * iu * cplx{0.5, 0.5});
    for (int k = 0; k < grid * grid; ++k) {
        cplx z{u(rng), u(rng)};
        if (dist_to_integer_lattice(z) < 0.05) continue;
        cplx t = th.theta(z);
        quasi = std::max(quasi, std::abs(th.theta(z + 1.0) - t) / std::abs(t));
        cplx factor = factor_base * std::exp(-2.0 * pi * iu * z);
        quasi = std::max(quasi,
                         std::abs(th.theta(z + iu) - t * factor) / std::abs(t * factor));
    }
    // dbar s = pi x s for the trivializing section, via central differences.
    for (int k = 0; k < 8; ++k) {
        cplx x{0.1 + 0.04 * k, 0.17};
        cplx z{u(rng), u(rng)};
        if (dist_to_integer_lattice(z) < 0.1 || dist_to_integer_lattice(z - x) < 0.1) continue;
        double h = 1e-5;
        cplx sx = (th.bundle_section(x, z + h) - th.bundle_section(x, z - h)) / (2.0 * h);
        cplx sy = (th.bundle_section(x, z + iu * h) - th.bundle_section(x, z - iu * h)) / (2.0 * h);
        cplx db = 0.5 * (sx + iu * sy);
        cplx target = pi * x * th.bundle_section(x, z);
        dbar = std::max(dbar, std::abs(db - target) / std::abs(target));
    }
    std::cout << "quasi_period_residual " << quasi << "\n"
              << "lattice_zero " << zero << "\n"
              << "dbar_residual " << dbar << "\n";
    bool ok = quasi < 1e-12 && zero < 1e-12 && dbar < 1e-6;
    if (!ok) std::cerr << "theta-check: residuals above thresholds\n";
    return ok ? exit_ok : exit_numerical;
}

// ---------------------------------------------------------------------------
// au-table

int cmd_au_table(int grid, const std::string& out, const RunConfig& cfg) {
    // The a-accuracy of one Newton run is ~ ODE noise / Jacobian conditioning,
    // so the functional-equation cross-check (two independent runs) needs the
    // tight tolerances to resolve 1e-6.
    Unitarizer un(ConnectionBuilder{}, 1e-12);
    std::vector<AuSample> rows;
    double func_eq = 0.0;
    bool all_ok = true;
    for (int i = 0; i < grid; ++i)
        for (int j = 0; j < grid; ++j) {
            cplx x{0.5 * (i + 0.5) / grid, 0.5 * (j + 0.5) / grid};
            if (std::abs(x) < 0.05) continue;
            AuSample s = un.solve_au(x, std::nullopt, 1e-11);
            rows.push_back(s);
            all_ok = all_ok && s.su2_ok;
            // Functional equation by an independent Newton run at x + 1/2
            // (deliberately off-seeded so it is not a no-op).
            AuSample sh = un.solve_au(x + 0.5, s.a_u + 0.5 + cplx{1e-4, -1e-4}, 1e-11);
            func_eq = std::max(func_eq, std::abs(sh.a_u - (s.a_u + 0.5)));
        }
    std::string csv = "# lawson " + std::string(library_version) +
                      " config " + cfg.hash_hex() + "\r\n" + au_table_csv(rows);
    write_text(out_path(out), csv);
    std::cout << "rows " << rows.size() << "\n"
              << "functional_equation_residual " << func_eq << "\n"
              << "all_su2_ok " << (all_ok ? "true" : "false") << "\n";
    return (all_ok && func_eq < 1e-6) ? exit_ok : exit_numerical;
}

// ---------------------------------------------------------------------------
// solve

int cmd_solve(const std::string& config_path, const std::string& out) {
    RunConfig cfg = RunConfig::parse_file(config_path);
    int n = int(cfg.get_int("solve.truncation", 2));
    // Default collocation density keeps the truncation-2 system interpolating
    // (at 16 nodes the N=2 least-squares floor is ~2e-2 and the solve stalls).
    int n_points = int(cfg.get_int("solve.n_points", 8));
    double tol = cfg.get_double("solve.tol", 1e-10);
    int max_iter = int(cfg.get_int("solve.max_iter", 60));
    if (n < 1 || n_points < 2 || tol <= 0) {
        std::cerr << "solve: invalid truncation/n_points/tol\n";
        return exit_usage;
    }

    SpectralData guess;
    guess.x_coeffs = cfg.get_cplx_list("solve.x_guess");
    guess.a_coeffs = cfg.get_cplx_list("solve.a_guess");
    guess.x_coeffs.resize(n, 0.0);
    guess.a_coeffs.resize(n + 1, 0.0);
    if (std::abs(guess.x_coeffs[0]) < 1e-8) {
        std::cerr << "solve: x_1 = 0 is on the forbidden locus (trivial line bundle)\n";
        return exit_numerical;
    }
    for (int tries = 0; forbidden_c_margin(guess) < 1e-4 && tries < 8; ++tries) {
        std::cerr << "solve: warning: c_{-1} within 1e-4 of the forbidden value; "
                     "projecting the guess away\n";
        guess.a_coeffs[0] *= 1.05;
    }
    check_spectral_invariants(guess);

    Unitarizer un;
    SolveReport report;
    SpectralData d = solve_spectral(guess, n_points, tol, un, &report, max_iter);

    json j = data_json(d, cfg.hash_hex());
    j["converged"] = report.converged;
    j["iterations"] = report.iterations;
    j["final_residual"] = report.final_residual;
    j["jacobian_condition"] = report.jacobian_condition;
    j["residual_history"] = report.residual_history;
    write_text(out_path(out), j.dump(2) + "\n");

    std::cout << "converged " << (report.converged ? "true" : "false")
              << "\niterations " << report.iterations
              << "\nfinal_residual " << report.final_residual
              << "\narea " << format_cplx(area(d)) << "\n";
    if (!report.converged) {
        std::cerr << "solve: no convergence; residual history:";
        for (double r : report.residual_history) std::cerr << " " << r;
        std::cerr << "\n";
        return exit_numerical;
    }
    return exit_ok;
}

// ---------------------------------------------------------------------------
// reconstruct / dress

int cmd_reconstruct(const std::string& data_path, const std::string& out, int res,
                    double clamp, int k_nodes) {
    SpectralData d = load_data(data_path);
    check_spectral_invariants(d);
    FrameComputer fc(d, k_nodes);
    SurfaceMesh m = build_mesh(fc, res, clamp, 17);

    double conf = 0.0;
    int n_conf = 0;
    for (double c : m.conformality)
        if (c >= 0) {
            conf = std::max(conf, c);
            ++n_conf;
        }
    double quad = surface_area(m);
    double exact = area(d).real();

    json rep;
    rep["version"] = library_version;
    rep["vertices"] = m.vertices.size();
    rep["faces"] = m.faces.size();
    rep["s3_defect"] = max_s3_defect(m);
    rep["seam_error"] = m.seam_error;
    rep["phi3_defect"] = phi3_invariance_defect(m);
    rep["conformality_max"] = conf;
    rep["conformality_samples"] = n_conf;
    rep["area_quadrature"] = quad;
    rep["area_formula"] = exact;
    rep["area_relative_error"] = quad / exact - 1.0;

    std::string note = "lawson " + std::string(library_version);
    write_obj(m, out_path(out + ".obj"), 3, note);
    write_ply(m, out_path(out + ".ply"), note);
    write_text(out_path(out + "_report.json"), rep.dump(2) + "\n");
    std::cout << rep.dump(2) << "\n";

    bool ok = max_s3_defect(m) < 1e-6 && m.seam_error < 1e-4 &&
              phi3_invariance_defect(m) < 1e-4 && std::abs(quad / exact - 1.0) < 0.01;
    if (!ok) std::cerr << "reconstruct: diagnostics above thresholds\n";
    return ok ? exit_ok : exit_numerical;
}

int cmd_dress(const std::string& data_path, const std::string& out, cplx lambda0,
              int res) {
    if (std::abs(std::abs(lambda0) - 1.0) < 1e-6 || std::abs(lambda0) < 1e-6) {
        std::cerr << "dress: lambda0 must be off the unit circle and nonzero\n";
        return exit_usage;
    }
    SpectralData d = load_data(data_path);
    FrameComputer fc(d);
    Eigen::Vector2cd v = fc.monodromy_eigenline(lambda0);

    // Base-tile sheet-0 grid, punctured corners pushed onto a small circle.
    SurfaceMesh m;
    m.copies = 1;
    int n = res;
    for (int j = 0; j <= n; ++j)
        for (int i = 0; i <= n; ++i) {
            cplx z{double(i) / n, double(j) / n};
            if (dist_to_integer_lattice(z) < 0.03) {
                cplx nearest{std::round(z.real()), std::round(z.imag())};
                cplx dir = z - nearest;
                if (std::abs(dir) < 1e-12) dir = cplx{0.5, 0.5} - nearest;
                z = nearest + 0.03 * dir / std::abs(dir);
            }
            Mat2 f = fc.dressed_sym_point(z, lambda0, v);
            m.vertices.push_back({f(0, 0).real(), f(0, 0).imag(),
                                  f(0, 1).real(), f(0, 1).imag()});
            m.orbit.push_back(0);
            m.conformality.push_back(-1.0);
        }
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) {
            int v00 = j * (n + 1) + i;
            m.faces.push_back({v00, v00 + 1, v00 + n + 2});
            m.faces.push_back({v00, v00 + n + 2, v00 + n + 1});
        }

    std::string note = "lawson " + std::string(library_version) + " dressed";
    write_obj(m, out_path(out + ".obj"), 3, note);
    write_ply(m, out_path(out + ".ply"), note);
    std::cout << "vertices " << m.vertices.size() << "\ns3_defect " << max_s3_defect(m)
              << "\n";
    return max_s3_defect(m) < 1e-6 ? exit_ok : exit_numerical;
}

int cmd_area(const std::string& data_path) {
    SpectralData d = load_data(data_path);
    cplx a = area(d);
    std::cout << "area " << format_cplx(a) << "\nforbidden_c_margin "
              << forbidden_c_margin(d) << "\n";
    return std::abs(a.imag()) < 1e-6 ? exit_ok : exit_numerical;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Spectral-curve construction of the Lawson genus-2 minimal surface"};
    app.require_subcommand(1);

    int grid = 10, terms = 12;
    auto* theta_cmd = app.add_subcommand("theta-check", "run the theta invariant suite");
    theta_cmd->add_option("--grid", grid, "sample grid size")->check(CLI::PositiveNumber);
    theta_cmd->add_option("--terms", terms, "series truncation")->check(CLI::PositiveNumber);

    int au_grid = 8;
    std::string au_out = "au_table.csv";
    auto* au_cmd = app.add_subcommand("au-table", "tabulate the unitarizing section");
    au_cmd->add_option("--grid", au_grid, "grid size per axis")->check(CLI::PositiveNumber);
    au_cmd->add_option("--out", au_out, "output CSV path");

    std::string solve_cfg, solve_out = "spectral_data.json";
    auto* solve_cmd = app.add_subcommand("solve", "solve the spectral-data equations");
    solve_cmd->add_option("--config", solve_cfg, "config file")->required();
    solve_cmd->add_option("--out", solve_out, "output JSON path");

    std::string rec_data, rec_out = "mesh";
    int rec_res = 20, rec_nodes = 128;
    double rec_clamp = 0.02;
    auto* rec_cmd = app.add_subcommand("reconstruct", "build the surface mesh");
    rec_cmd->add_option("--data", rec_data, "spectral-data JSON")->required();
    rec_cmd->add_option("--out", rec_out, "output basename");
    rec_cmd->add_option("--res", rec_res, "grid resolution per tile")->check(CLI::PositiveNumber);
    rec_cmd->add_option("--clamp", rec_clamp, "puncture clamp radius");
    rec_cmd->add_option("--nodes", rec_nodes, "spectral circle nodes");

    std::string dress_data, dress_out = "dressed", dress_l0 = "0.5+0.2i";
    int dress_res = 12;
    auto* dress_cmd = app.add_subcommand("dress", "simple-factor dressed mesh");
    dress_cmd->add_option("--data", dress_data, "spectral-data JSON")->required();
    dress_cmd->add_option("--lambda0", dress_l0, "dressing parameter (off the circle)");
    dress_cmd->add_option("--out", dress_out, "output basename");
    dress_cmd->add_option("--res", dress_res, "grid resolution")->check(CLI::PositiveNumber);

    std::string area_data;
    auto* area_cmd = app.add_subcommand("area", "evaluate the closed-form area");
    area_cmd->add_option("--data", area_data, "spectral-data JSON")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_usage;
    }

    try {
        if (theta_cmd->parsed()) return cmd_theta_check(grid, terms);
        if (au_cmd->parsed()) return cmd_au_table(au_grid, au_out, RunConfig{});
        if (solve_cmd->parsed()) return cmd_solve(solve_cfg, solve_out);
        if (rec_cmd->parsed())
            return cmd_reconstruct(rec_data, rec_out, rec_res, rec_clamp, rec_nodes);
        if (dress_cmd->parsed()) return cmd_dress(dress_data, dress_out, parse_cplx(dress_l0), dress_res);
        if (area_cmd->parsed()) return cmd_area(area_data);
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return exit_usage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_numerical;
    }
    return exit_usage;
}
