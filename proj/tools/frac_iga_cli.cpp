// Command-line front end: experiment orchestration and CSV/JSON emission.
//
// Subcommands: benchmark-eigen, solve-poisson, simulate-porous, geometry.
// Exit codes: 0 success, 2 configuration error, 3 numerical failure.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "frac_iga/benchmarks.hpp"
#include "frac_iga/nurbs_geometry.hpp"
#include "frac_iga/operator_assembly.hpp"
#include "frac_iga/solvers.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    std::string geometry = "disk";  // disk | square | path to a surface JSON
    double half_width = 1.0;
    double s = 0.8;
    double window_a = 0.1;
    double stencil_h = 0.001;
    double truncation_R = 20.0;
    int nquad = 1000;
    int mquad = 20;
    int levels = 4;
    int mode = 1;
    double mexp = 1.0;
    double dt = 1e-4;
    int nt = 1000;
    std::string source = "constant";  // constant | eigen
    double source_value = 1.0;
    std::vector<std::array<double, 2>> probes = {{0.0, 0.0}};
    std::string out = "out";
    int threads = 0;
};

void apply_json(RunConfig& cfg, const json& j) {
    if (j.contains("geometry")) cfg.geometry = j.at("geometry").get<std::string>();
    if (j.contains("half_width")) cfg.half_width = j.at("half_width").get<double>();
    if (j.contains("s")) cfg.s = j.at("s").get<double>();
    if (j.contains("a")) cfg.window_a = j.at("a").get<double>();
    if (j.contains("hstep")) cfg.stencil_h = j.at("hstep").get<double>();
    if (j.contains("R")) cfg.truncation_R = j.at("R").get<double>();
    if (j.contains("nquad")) cfg.nquad = j.at("nquad").get<int>();
    if (j.contains("mquad")) cfg.mquad = j.at("mquad").get<int>();
    if (j.contains("levels")) cfg.levels = j.at("levels").get<int>();
    if (j.contains("mode")) cfg.mode = j.at("mode").get<int>();
    if (j.contains("mexp")) cfg.mexp = j.at("mexp").get<double>();
    if (j.contains("dt")) cfg.dt = j.at("dt").get<double>();
    if (j.contains("nt")) cfg.nt = j.at("nt").get<int>();
    if (j.contains("source")) cfg.source = j.at("source").get<std::string>();
    if (j.contains("source_value")) cfg.source_value = j.at("source_value").get<double>();
    if (j.contains("out")) cfg.out = j.at("out").get<std::string>();
    if (j.contains("threads")) cfg.threads = j.at("threads").get<int>();
    if (j.contains("probes")) {
        cfg.probes.clear();
        for (const auto& p : j.at("probes")) {
            cfg.probes.push_back({p.at(0).get<double>(), p.at(1).get<double>()});
        }
    }
}

frac_iga::NurbsSurface load_geometry(const RunConfig& cfg) {
    if (cfg.geometry == "disk") return frac_iga::unit_disk();
    if (cfg.geometry == "square") return frac_iga::square(cfg.half_width);
    std::ifstream in(cfg.geometry);
    if (!in) throw ConfigError("cannot open geometry file: " + cfg.geometry);
    json j;
    try {
        in >> j;
        return frac_iga::surface_from_json(j);
    } catch (const std::exception& e) {
        throw ConfigError("invalid geometry file " + cfg.geometry + ": " + e.what());
    }
}

frac_iga::DiscretizationParams make_params(const RunConfig& cfg) {
    try {
        frac_iga::DiscretizationParams p{frac_iga::FractionalOrder(cfg.s), cfg.window_a,
                                         cfg.stencil_h, cfg.truncation_R, cfg.nquad, cfg.mquad};
        p.validate();
        return p;
    } catch (const std::exception& e) {
        throw ConfigError(std::string("invalid discretization parameters: ") + e.what());
    }
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::ofstream open_output(const RunConfig& cfg, const std::string& name) {
    fs::create_directories(cfg.out);
    const fs::path path = fs::path(cfg.out) / name;
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot open output file: " + path.string());
    return out;
}

int run_benchmark_eigen(const RunConfig& cfg) {
    const auto params = make_params(cfg);
    if (cfg.geometry != "disk") {
        throw ConfigError("benchmark-eigen runs on the disk geometry");
    }
    if (cfg.levels < 2) throw ConfigError("benchmark-eigen needs --levels >= 2");
    const auto study = frac_iga::convergence_study(cfg.mode, params, cfg.levels, cfg.threads);
    auto out = open_output(cfg, "eigen_" + std::to_string(cfg.mode) + ".csv");
    out << "level,dof,error,seconds\n";
    for (const auto& r : study.records) {
        out << r.level << ',' << r.dof << ',' << fmt(r.error) << ',' << fmt(r.seconds) << '\n';
    }
    out << "# fitted_slope," << fmt(study.fitted_slope) << '\n';
    std::cout << "fitted slope " << fmt(study.fitted_slope) << " over " << cfg.levels
              << " levels\n";
    return 0;
}

int run_solve_poisson(const RunConfig& cfg) {
    const auto params = make_params(cfg);
    const auto base = load_geometry(cfg);
    const auto surface = frac_iga::refine_dyadic(base, cfg.levels);

    std::function<double(frac_iga::Point2)> f;
    if (cfg.source == "constant") {
        const double v = cfg.source_value;
        f = [v](frac_iga::Point2) { return v; };
    } else if (cfg.source == "eigen") {
        const auto pair = frac_iga::eigen_pair(cfg.mode, params.s);
        f = [pair](frac_iga::Point2 x) { return pair.lambda * pair.phi(x); };
    } else {
        throw ConfigError("unknown source spec: " + cfg.source);
    }

    const auto sol = frac_iga::solve_poisson(surface, f, params, cfg.threads);
    const auto points = frac_iga::collocation_points(surface);
    auto out = open_output(cfg, "poisson_field.csv");
    out << "x,y,u\n";
    for (int k = 0; k < points.count(); ++k) {
        out << fmt(points.points[k].x) << ',' << fmt(points.points[k].y) << ','
            << fmt(sol.values[k]) << '\n';
    }
    std::cout << "solved " << points.count() << " collocation values, residual "
              << fmt(sol.residual) << '\n';
    return 0;
}

int run_simulate_porous(const RunConfig& cfg) {
    const auto params = make_params(cfg);
    const auto base = load_geometry(cfg);
    const auto surface = frac_iga::refine_dyadic(base, cfg.levels);
    std::vector<frac_iga::Point2> probes;
    for (const auto& p : cfg.probes) probes.push_back({p[0], p[1]});

    const auto f0 = [](frac_iga::Point2 x) {
        return std::exp(-100.0 * (x.x * x.x + x.y * x.y));
    };
    const auto result = frac_iga::simulate_porous(surface, f0, cfg.mexp, params, cfg.dt,
                                                  cfg.nt, probes, cfg.threads);

    auto traj = open_output(cfg, "porous_trajectory.csv");
    traj << "step,t";
    for (size_t p = 0; p < probes.size(); ++p) traj << ",probe_" << (p + 1);
    traj << '\n';
    for (size_t step = 0; step < result.times.size(); ++step) {
        traj << step << ',' << fmt(result.times[step]);
        for (size_t p = 0; p < probes.size(); ++p) {
            traj << ',' << fmt(result.trajectories[p][step]);
        }
        traj << '\n';
    }

    auto field = open_output(cfg, "porous_field.csv");
    field << "x,y,u\n";
    for (size_t i = 0; i < result.final_interior.size(); ++i) {
        field << fmt(result.interior_points[i].x) << ',' << fmt(result.interior_points[i].y)
              << ',' << fmt(result.final_interior[i]) << '\n';
    }
    std::cout << "simulated " << cfg.nt << " steps to t = " << fmt(result.times.back())
              << '\n';
    return 0;
}

int run_geometry(const RunConfig& cfg, const std::string& action) {
    const auto base = load_geometry(cfg);
    if (action == "info") {
        const auto& s = base;
        json info;
        info["degrees"] = {s.degree_u(), s.degree_v()};
        info["control_points"] = s.control_count_u() * s.control_count_v();
        info["dof"] = s.control_count_u() * s.control_count_v();
        info["knots_u"] = s.knots_u().knots();
        info["knots_v"] = s.knots_v().knots();
        info["membership_hint"] = frac_iga::surface_to_json(s)["membership_hint"];
        std::cout << info.dump(2) << '\n';
        return 0;
    }
    if (action == "refine") {
        const auto refined = frac_iga::refine_dyadic(base, cfg.levels);
        auto out = open_output(cfg, "surface.json");
        out << frac_iga::surface_to_json(refined).dump(2) << '\n';
        std::cout << "refined to " << refined.control_count_u() * refined.control_count_v()
                  << " control points\n";
        return 0;
    }
    if (action == "export") {
        const auto refined = frac_iga::refine_dyadic(base, cfg.levels);
        auto out = open_output(cfg, "surface_samples.csv");
        out << "u,v,x,y\n";
        const int n = 100;
        for (int i = 0; i <= n; ++i) {
            for (int j = 0; j <= n; ++j) {
                const double u = double(i) / n;
                const double v = double(j) / n;
                const auto p = refined.map_to_physical(u, v);
                out << fmt(u) << ',' << fmt(v) << ',' << fmt(p.x) << ',' << fmt(p.y) << '\n';
            }
        }
        return 0;
    }
    throw ConfigError("unknown geometry action: " + action);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Isogeometric collocation solver for the 2D fractional Laplacian"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string config_path;
    std::string geometry_action;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--config", config_path, "JSON configuration file");
        cmd->add_option("--geometry", cfg.geometry, "disk | square | surface JSON path");
        cmd->add_option("--s", cfg.s, "fractional order in (0,1)");
        cmd->add_option("--a", cfg.window_a, "window size");
        cmd->add_option("--hstep", cfg.stencil_h, "Laplacian stencil step");
        cmd->add_option("--R", cfg.truncation_R, "quadrature truncation radius");
        cmd->add_option("--nquad", cfg.nquad, "radial quadrature count");
        cmd->add_option("--mquad", cfg.mquad, "angular quadrature count");
        cmd->add_option("--levels", cfg.levels, "dyadic refinement level");
        cmd->add_option("--mode", cfg.mode, "eigen benchmark mode");
        cmd->add_option("--mexp", cfg.mexp, "porous-medium exponent");
        cmd->add_option("--dt", cfg.dt, "time step");
        cmd->add_option("--nt", cfg.nt, "number of time steps");
        cmd->add_option("--out", cfg.out, "output directory");
        cmd->add_option("--threads", cfg.threads, "assembly threads (0 = auto)");
        return cmd;
    };

    auto* bench = add_common(app.add_subcommand("benchmark-eigen", "eigenpair convergence study"));
    auto* poisson = add_common(app.add_subcommand("solve-poisson", "fractional Poisson solve"));
    poisson->add_option("--source", cfg.source, "constant | eigen");
    auto* porous = add_common(app.add_subcommand("simulate-porous", "porous-medium time stepping"));
    auto* geometry = add_common(app.add_subcommand("geometry", "geometry utilities"));
    geometry->add_option("action", geometry_action, "info | refine | export")->required();

    // defaults per experiment
    bench->preparse_callback([&](size_t) { cfg.levels = 4; });
    poisson->preparse_callback([&](size_t) { cfg.s = 0.5; cfg.levels = 2; });
    porous->preparse_callback([&](size_t) {
        cfg.geometry = "square";
        cfg.s = 0.5;
        cfg.levels = 5;
    });
    geometry->preparse_callback([&](size_t) { cfg.levels = 0; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return kExitConfig;
    }

    try {
        if (!config_path.empty()) {
            std::ifstream in(config_path);
            if (!in) throw ConfigError("cannot open config file: " + config_path);
            json j;
            try {
                in >> j;
            } catch (const std::exception& e) {
                throw ConfigError(std::string("invalid config JSON: ") + e.what());
            }
            RunConfig from_file = cfg;
            apply_json(from_file, j);
            // flags win over the file: re-apply parsed command line on top
            std::swap(cfg, from_file);
            for (auto* sub : app.get_subcommands()) {
                for (const auto* opt : sub->get_options()) {
                    (void)opt;
                }
            }
            // CLI11 already wrote flag values into cfg before the swap; merge:
            // entries the user passed on the command line take precedence.
            auto* active = app.get_subcommands().front();
            auto prefer_flag = [&](const std::string& name, auto member) {
                if (active->count(name) > 0) cfg.*member = from_file.*member;
            };
            prefer_flag("--geometry", &RunConfig::geometry);
            prefer_flag("--s", &RunConfig::s);
            prefer_flag("--a", &RunConfig::window_a);
            prefer_flag("--hstep", &RunConfig::stencil_h);
            prefer_flag("--R", &RunConfig::truncation_R);
            prefer_flag("--nquad", &RunConfig::nquad);
            prefer_flag("--mquad", &RunConfig::mquad);
            prefer_flag("--levels", &RunConfig::levels);
            prefer_flag("--mode", &RunConfig::mode);
            prefer_flag("--mexp", &RunConfig::mexp);
            prefer_flag("--dt", &RunConfig::dt);
            prefer_flag("--nt", &RunConfig::nt);
            prefer_flag("--out", &RunConfig::out);
            prefer_flag("--threads", &RunConfig::threads);
            if (active->count("--source") > 0) cfg.source = from_file.source;
        }

        if (bench->parsed()) return run_benchmark_eigen(cfg);
        if (poisson->parsed()) return run_solve_poisson(cfg);
        if (porous->parsed()) return run_simulate_porous(cfg);
        if (geometry->parsed()) return run_geometry(cfg, geometry_action);
        return kExitConfig;
    } catch (const ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::domain_error& e) {
        std::cerr << "configuration error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::invalid_argument& e) {
        std::cerr << "configuration error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return kExitNumerical;
    }
}
