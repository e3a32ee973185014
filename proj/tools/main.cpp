// Command line front end: orbit generation, invariant computation, and
// verification sweeps for lemniscate motions of the two-center problem.

#include <atomic>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <numeric>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "twocenter/dynamics.hpp"
#include "twocenter/invariants.hpp"
#include "twocenter/json_io.hpp"
#include "twocenter/log.hpp"
#include "twocenter/svg.hpp"

namespace {

using namespace twocenter;

constexpr int kExitOk = 0;
constexpr int kExitVerification = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNumeric = 3;

std::string fmt(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DomainError("cannot open output file " + path);
    out << content;
}

int check_torus_preconditions(double mu, double c, int k, int l) {
    if (!(mu > 0.0 && mu < 1.0)) {
        std::cerr << "error: mu must lie in (0, 1)\n";
        return kExitUsage;
    }
    if (!(c < 0.0)) {
        std::cerr << "error: c must be negative\n";
        return kExitUsage;
    }
    if (k <= 0 || l <= 0 || std::gcd(k, l) != 1) {
        std::cerr << "error: k and l must be coprime\n";
        return kExitUsage;
    }
    const double c_j = critical_energy(mu);
    if (c <= c_j) {
        std::cerr << "error: c below critical value c_J = " << fmt(c_j)
                  << " (no lemniscate motion)\n";
        return kExitUsage;
    }
    return kExitOk;
}

int map_error(const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    if (dynamic_cast<const DomainError*>(&e) != nullptr ||
        dynamic_cast<const BoundaryRegion*>(&e) != nullptr)
        return kExitUsage;
    return kExitNumeric;
}

struct OrbitArgs {
    double mu = 0.5, c = -0.5;
    int k = 3, l = 2;
    double phase = -1.0;
    int resolution = 512;
    int collision = -1;  // -1: generic orbit; 0/1: collision orbit selector
    std::string out, csv, svg;
    bool arrows = false;
};

OrbitTrace make_trace(const OrbitArgs& args) {
    const TorusData torus = find_torus({args.mu, args.c}, args.k, args.l);
    if (args.collision >= 0) return collision_orbit(torus, args.collision, args.resolution);
    const double phase = args.phase >= 0 ? args.phase : generic_phase(torus);
    return trace_orbit(torus, phase, args.resolution);
}

int cmd_orbit(const OrbitArgs& args) {
    if (int rc = check_torus_preconditions(args.mu, args.c, args.k, args.l)) return rc;
    try {
        const OrbitTrace trace = make_trace(args);
        const std::string json = orbit_json(trace);
        if (args.out.empty())
            std::cout << json;
        else
            write_file(args.out, json);
        if (!args.csv.empty()) write_file(args.csv, orbit_csv(trace.curve));
        if (!args.svg.empty()) write_file(args.svg, orbit_svg(trace, {args.arrows}));
        return kExitOk;
    } catch (const Error& e) {
        return map_error(e);
    }
}

std::string half_value(const HalfInteger& h) {
    if (h.is_integer()) return std::to_string(h.as_integer());
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.1f", h.value());
    return buf;
}

std::string invariants_json(const CurveInvariants& inv, double mu, double c, int k, int l) {
    auto stage = [&](const ViroBreakdown& bd, int components) {
        JsonObject obj;
        obj.integer("double_points", bd.double_points)
            .integer("sum_w_sq", bd.sum_w_sq)
            .raw("sum_ind_sq", half_value(bd.sum_ind_sq))
            .integer("jplus", bd.jplus)
            .integer("components", components);
        return obj.str();
    };
    JsonObject stages;
    stages.raw("base", stage(inv.base, 1))
        .raw("lift_E", stage(inv.lift_e, inv.lc_components_e))
        .raw("lift_M", stage(inv.lift_m, inv.lc_components_m))
        .raw("birkhoff", stage(inv.birkhoff, inv.birkhoff_components));
    JsonObject obj;
    obj.number("mu", mu)
        .number("c", c)
        .integer("k", k)
        .integer("l", l)
        .raw("j0", half_value(inv.set.j0))
        .raw("jE", half_value(inv.set.jE))
        .raw("jM", half_value(inv.set.jM))
        .integer("n", inv.set.n)
        .integer("jEM", inv.set.jEM)
        .integer("w_E", inv.w_e)
        .integer("w_M", inv.w_m)
        .raw("intermediates", stages.str());
    return obj.str() + "\n";
}

/// Debug dumps of the arrangement and the three lifts next to an orbit.
void write_dumps(const std::string& dir, const OrbitTrace& trace) {
    std::filesystem::create_directories(dir);
    const auto curve = trace.curve;
    const auto doubles = find_double_points(curve);
    write_file((std::filesystem::path(dir) / "arrangement.json").string(),
               arrangement_json(build_arrangement(curve, doubles)));
    const EulerParams& params = trace.torus.params;
    write_file((std::filesystem::path(dir) / "lift_levi_civita_E.json").string(),
               lift_json(trace, levi_civita_lift(curve, Primary::E, params)));
    write_file((std::filesystem::path(dir) / "lift_levi_civita_M.json").string(),
               lift_json(trace, levi_civita_lift(curve, Primary::M, params)));
    write_file((std::filesystem::path(dir) / "lift_birkhoff.json").string(),
               lift_json(trace, birkhoff_lift(curve)));
}

struct InvariantArgs {
    OrbitArgs orbit;
    std::string from;
    std::string dump_dir;
};

int cmd_invariants(const InvariantArgs& args) {
    try {
        if (!args.from.empty()) {
            std::ifstream in(args.from, std::ios::binary);
            if (!in) {
                std::cerr << "error: cannot read " << args.from << "\n";
                return kExitUsage;
            }
            std::stringstream buffer;
            buffer << in.rdbuf();
            const LoadedOrbit loaded = load_orbit_json(buffer.str());
            const CurveInvariants inv =
                compute_curve_invariants(loaded.curve, {loaded.mu, loaded.c});
            std::cout << invariants_json(inv, loaded.mu, loaded.c, loaded.k, loaded.l);
            return kExitOk;
        }
        if (int rc = check_torus_preconditions(args.orbit.mu, args.orbit.c, args.orbit.k,
                                               args.orbit.l))
            return rc;
        const OrbitTrace trace = make_trace(args.orbit);
        const CurveInvariants inv =
            compute_curve_invariants(trace.curve, trace.torus.params);
        if (!args.dump_dir.empty()) write_dumps(args.dump_dir, trace);
        std::cout << invariants_json(inv, args.orbit.mu, args.orbit.c, args.orbit.k, args.orbit.l);
        return kExitOk;
    } catch (const NonGenericCurve& e) {
        std::cerr << "error: " << e.what()
                  << "\nhint: retry with a slightly different --phase (e.g. scale it by 1.1)\n";
        return kExitNumeric;
    } catch (const Error& e) {
        return map_error(e);
    }
}

struct SweepArgs {
    std::vector<double> mus{0.5, 0.3};
    std::vector<std::string> cs{"auto"};
    int max_k = 3, max_l = 3;
    int resolution = 512;
    std::string out_dir;
    int jobs = 0;
    double tol_quad = 1e-12, tol_geom = 1e-8;
};

int cmd_sweep(const SweepArgs& args) {
    struct Job {
        double mu, c;
        int k, l;
    };
    std::vector<Job> jobs;
    for (double mu : args.mus) {
        if (!(mu > 0.0 && mu < 1.0)) {
            std::cerr << "error: mu must lie in (0, 1)\n";
            return kExitUsage;
        }
        for (const std::string& c_spec : args.cs) {
            double c;
            if (c_spec == "auto") {
                c = 0.5 * critical_energy(mu);  // midpoint of (c_J, 0)
            } else {
                try {
                    c = std::stod(c_spec);
                } catch (...) {
                    std::cerr << "error: bad c value '" << c_spec << "'\n";
                    return kExitUsage;
                }
            }
            if (!(c < 0.0) || c <= critical_energy(mu)) {
                std::cerr << "error: c = " << fmt(c) << " outside (c_J, 0) for mu = " << fmt(mu)
                          << "\n";
                return kExitUsage;
            }
            for (int k = 1; k <= args.max_k; ++k)
                for (int l = 1; l <= args.max_l; ++l)
                    if (std::gcd(k, l) == 1) jobs.push_back({mu, c, k, l});
        }
    }

    std::vector<VerificationReport> reports(jobs.size());
    std::atomic<std::size_t> next{0};
    const int n_workers =
        std::max(1, args.jobs > 0 ? args.jobs
                                  : static_cast<int>(std::thread::hardware_concurrency()));
    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= jobs.size()) return;
            const Job& job = jobs[i];
            VerifyOptions options;
            options.resolution = args.resolution;
            options.tol_geometry = args.tol_geom;
            options.tol_quadrature = args.tol_quad;
            reports[i] = verify_torus({job.mu, job.c}, job.k, job.l, options);
        }
    };
    std::vector<std::thread> pool;
    for (int w = 0; w < n_workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();

    if (!args.out_dir.empty()) std::filesystem::create_directories(args.out_dir);

    std::size_t passed = 0;
    std::string summary_rows;
    for (std::size_t i = 0; i < reports.size(); ++i) {
        const VerificationReport& report = reports[i];
        const bool ok = report.all_pass();
        passed += ok;
        std::size_t n_ok = 0;
        std::string first_fail;
        for (const CheckEntry& check : report.checks) {
            n_ok += check.pass;
            if (!check.pass && first_fail.empty()) first_fail = check.name;
        }
        std::ostringstream row;
        row << "mu=" << report.mu << " c=" << report.c << " (k,l)=(" << report.k << ","
            << report.l << "): " << (ok ? "PASS" : "FAIL") << " [" << n_ok << "/"
            << report.checks.size() << " checks]";
        if (!ok) row << " first failure: " << first_fail;
        row << "\n";
        summary_rows += row.str();
        if (!args.out_dir.empty()) {
            std::ostringstream name;
            name << "report_mu" << report.mu << "_c" << report.c << "_k" << report.k << "_l"
                 << report.l << ".json";
            write_file((std::filesystem::path(args.out_dir) / name.str()).string(),
                       report_json(report));
        }
    }
    std::cout << summary_rows;
    std::cout << "sweep: " << passed << "/" << reports.size() << " tori fully verified\n";
    if (!args.out_dir.empty()) {
        std::string all = "[";
        for (std::size_t i = 0; i < reports.size(); ++i) {
            if (i) all += ",";
            std::string one = report_json(reports[i]);
            if (!one.empty() && one.back() == '\n') one.pop_back();
            all += one;
        }
        all += "]\n";
        write_file((std::filesystem::path(args.out_dir) / "summary.json").string(), all);
    }
    return passed == reports.size() ? kExitOk : kExitVerification;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Lemniscate orbits of the two-center problem and their J+-based invariants"};
    app.require_subcommand(1);

    OrbitArgs orbit_args;
    auto* orbit = app.add_subcommand("orbit", "trace a T_{k,l} orbit and dump JSON/CSV/SVG");
    orbit->add_option("--mu", orbit_args.mu, "mass ratio in (0,1)");
    orbit->add_option("--c", orbit_args.c, "energy in (c_J, 0)");
    orbit->add_option("--k", orbit_args.k, "rotation number numerator");
    orbit->add_option("--l", orbit_args.l, "rotation number denominator");
    orbit->add_option("--phase", orbit_args.phase, "nu-cycle time offset (default: generic)");
    orbit->add_option("--resolution", orbit_args.resolution, "samples per period");
    orbit->add_option("--collision", orbit_args.collision,
                      "trace a collision orbit instead (selector 0 or 1)");
    orbit->add_option("--out", orbit_args.out, "orbit JSON path (default: stdout)");
    orbit->add_option("--csv", orbit_args.csv, "also write CSV here");
    orbit->add_option("--svg", orbit_args.svg, "also write an SVG plot here");
    orbit->add_flag("--arrows", orbit_args.arrows, "orientation arrows in the SVG");

    InvariantArgs inv_args;
    auto* invariants =
        app.add_subcommand("invariants", "compute the four invariants of an orbit");
    invariants->add_option("--mu", inv_args.orbit.mu, "mass ratio in (0,1)");
    invariants->add_option("--c", inv_args.orbit.c, "energy in (c_J, 0)");
    invariants->add_option("--k", inv_args.orbit.k, "rotation number numerator");
    invariants->add_option("--l", inv_args.orbit.l, "rotation number denominator");
    invariants->add_option("--phase", inv_args.orbit.phase, "nu-cycle time offset");
    invariants->add_option("--resolution", inv_args.orbit.resolution, "samples per period");
    invariants->add_option("--from", inv_args.from, "read an orbit dump instead of tracing");
    invariants->add_option("--dump-dir", inv_args.dump_dir,
                           "write arrangement and lift debug dumps here");

    SweepArgs sweep_args;
    auto* sweep = app.add_subcommand("sweep", "verify all coprime (k,l) in range");
    sweep->add_option("--mu", sweep_args.mus, "mass ratios (repeatable; default 0.5 and 0.3)");
    sweep->add_option("--c", sweep_args.cs, "energies or 'auto' = (c_J+0)/2 (repeatable)");
    sweep->add_option("--max-k", sweep_args.max_k, "largest k");
    sweep->add_option("--max-l", sweep_args.max_l, "largest l");
    sweep->add_option("--resolution", sweep_args.resolution, "samples per period");
    sweep->add_option("--out-dir", sweep_args.out_dir, "directory for per-torus reports");
    sweep->add_option("--jobs", sweep_args.jobs, "parallel workers (default: hardware)");
    sweep->add_option("--tol-quad", sweep_args.tol_quad, "quadrature tolerance");
    sweep->add_option("--tol-geom", sweep_args.tol_geom, "geometric tolerance");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kExitUsage;
    }

    if (orbit->parsed()) return cmd_orbit(orbit_args);
    if (invariants->parsed()) return cmd_invariants(inv_args);
    if (sweep->parsed()) return cmd_sweep(sweep_args);
    return kExitUsage;
}
