// Command-line front end: Moebius centering of spherical point sets and
// canonicalization of edge-tangent polytopes.
//
// Exit codes: 0 success, 1 verification failure, 2 malformed or invalid
// input, 3 numerical failure.

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <atomic>
#include <algorithm>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "moebius/moebius.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitBadInput = 2;
constexpr int kExitNumerical = 3;

struct Options {
    std::string input;
    std::string output;
    std::string report;
    double grad_tol = 1e-12;
    int max_iters = 100;
    double edge_tol = moebius::tol::kEdgeTangency;
    double barycenter_tol = 1e-8;
    double rapidity = 0.0;
    std::uint64_t seed = 0;
    bool renormalize = false;
    bool no_timestamp = false;
    bool verbose = false;
    unsigned jobs = 1;
    std::string kind;  // gen only
};

std::string fnv1a64_hex(const std::string& bytes) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string file_digest(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return "unreadable";
    std::ostringstream ss;
    ss << in.rdbuf();
    return fnv1a64_hex(ss.str());
}

std::string iso_timestamp() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

json matrix_rows(const moebius::LorentzMatrix& m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.entries().rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.entries().cols(); ++j) row.push_back(m.entries()(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

json base_report(const std::string& command, const std::string& input, const Options& opt) {
    json r{{"command", command},
           {"input", {{"path", input}, {"digest", file_digest(input)}}}};
    if (!opt.no_timestamp) r["timestamp"] = iso_timestamp();
    return r;
}

void write_report(const json& report, const std::string& path) {
    if (path.empty()) return;
    std::ofstream out(path);
    if (!out) {
        std::cerr << "warning: cannot write report to '" << path << "'\n";
        return;
    }
    out << report.dump(2) << '\n';
}

int exit_code_for(const std::exception& e) {
    if (dynamic_cast<const moebius::ParseError*>(&e)) return kExitBadInput;
    if (dynamic_cast<const moebius::DegenerateInput*>(&e)) return kExitBadInput;
    if (dynamic_cast<const moebius::NotTangent*>(&e)) return kExitBadInput;
    if (dynamic_cast<const moebius::TangencyOutsideEdge*>(&e)) return kExitBadInput;
    if (dynamic_cast<const moebius::HitsInfinity*>(&e)) return kExitBadInput;
    if (dynamic_cast<const moebius::NoConvergence*>(&e)) return kExitNumerical;
    if (dynamic_cast<const moebius::IllConditioned*>(&e)) return kExitNumerical;
    if (dynamic_cast<const moebius::NumericalFailure*>(&e)) return kExitNumerical;
    return kExitNumerical;
}

void emit_output(const std::string& path, const std::string& content) {
    if (path.empty()) {
        std::cout << content;
        return;
    }
    std::ofstream out(path);
    if (!out) throw moebius::ParseError("cannot open '" + path + "' for writing");
    out << content;
}

moebius::SolverConfig solver_from(const Options& opt) {
    moebius::SolverConfig cfg;
    cfg.grad_tol = opt.grad_tol;
    cfg.max_iters = opt.max_iters;
    return cfg;
}

json violation_table(const moebius::ValidationReport& report) {
    json issues = json::array();
    for (const moebius::ValidationIssue& issue : report.issues) {
        json entry{{"kind", issue.kind}, {"message", issue.message}, {"value", issue.value}};
        if (issue.face >= 0) entry["face"] = issue.face;
        if (issue.edge[0] >= 0) entry["edge"] = {issue.edge[0], issue.edge[1]};
        issues.push_back(std::move(entry));
    }
    return issues;
}

// --- center -----------------------------------------------------------------

int run_center(const std::string& input, const std::string& output, const Options& opt) {
    json report = base_report("center", input, opt);
    try {
        const moebius::PointSetFile ps = moebius::read_point_set_file(input);
        const moebius::PointConfiguration cfg = moebius::to_configuration(ps, opt.renormalize);
        const moebius::CenteringResult result = moebius::center(cfg, solver_from(opt));

        if (opt.verbose) {
            std::cerr << "center: " << cfg.size() << " points, d = " << cfg.dim() << "\n";
            for (std::size_t i = 0; i < result.objective_history.size(); ++i)
                std::cerr << "  objective[" << i << "] = " << result.objective_history[i] << "\n";
            std::cerr << "  iterations = " << result.iterations
                      << ", residual = " << result.residual << "\n";
        }

        std::ostringstream body;
        moebius::write_point_set(body, cfg.dim(), result.centered_points);
        emit_output(output, body.str());

        report["exit_status"] = kExitOk;
        report["residual"] = result.residual;
        report["iterations"] = result.iterations;
        report["transform"] = matrix_rows(result.transform);
        report["diagnostics"] = {
            {"dim", cfg.dim()},
            {"n", cfg.size()},
            {"grad_tol", opt.grad_tol},
            {"objective_history", result.objective_history},
            {"minimizer_ball", [&] {
                 const Eigen::VectorXd b = moebius::hyperboloid_to_ball(result.minimizer).coords();
                 return std::vector<double>(b.data(), b.data() + b.size());
             }()}};
        write_report(report, opt.report);
        return kExitOk;
    } catch (const std::exception& e) {
        const int code = exit_code_for(e);
        std::cerr << "center: error: " << e.what() << "\n";
        report["exit_status"] = code;
        report["error"] = e.what();
        write_report(report, opt.report);
        return code;
    }
}

// --- canonicalize -------------------------------------------------------------

int run_canonicalize(const std::string& input, const std::string& output, const Options& opt) {
    json report = base_report("canonicalize", input, opt);
    try {
        const moebius::OffData off = moebius::read_off_file(input);
        const moebius::ValidationReport validation =
            moebius::validate(off.vertices, off.faces, opt.edge_tol);
        if (!validation.ok()) {
            std::cerr << "canonicalize: invalid input: " << validation.summary() << "\n";
            report["exit_status"] = kExitBadInput;
            report["error"] = validation.summary();
            report["violations"] = violation_table(validation);
            write_report(report, opt.report);
            return kExitBadInput;
        }
        const moebius::TangentPolytope poly =
            moebius::build_polytope(off.vertices, off.faces, opt.edge_tol);
        auto [canonical, canon_report] = moebius::canonicalize(poly, solver_from(opt));

        if (opt.verbose)
            std::cerr << "canonicalize: " << poly.edges.size() << " tangency points, "
                      << canon_report.iterations << " iterations, barycenter "
                      << canon_report.barycenter_norm_before << " -> "
                      << canon_report.barycenter_norm_after << "\n";

        std::ostringstream body;
        moebius::write_off(body, canonical.vertices, canonical.faces);
        emit_output(output, body.str());

        report["exit_status"] = kExitOk;
        report["iterations"] = canon_report.iterations;
        report["transform"] = matrix_rows(canon_report.transform);
        report["residual"] = canon_report.barycenter_norm_after;
        report["diagnostics"] = {{"vertices", canonical.vertices.size()},
                                 {"faces", canonical.faces.size()},
                                 {"edges", canonical.edges.size()},
                                 {"barycenter_norm_before", canon_report.barycenter_norm_before},
                                 {"barycenter_norm_after", canon_report.barycenter_norm_after},
                                 {"max_tangency_violation", canon_report.max_tangency_violation},
                                 {"edge_tol", opt.edge_tol}};
        write_report(report, opt.report);
        return kExitOk;
    } catch (const std::exception& e) {
        const int code = exit_code_for(e);
        std::cerr << "canonicalize: error: " << e.what() << "\n";
        report["exit_status"] = code;
        report["error"] = e.what();
        write_report(report, opt.report);
        return code;
    }
}

// --- gen --------------------------------------------------------------------

int run_gen(const Options& opt) {
    json report{{"command", "gen"}};
    if (!opt.no_timestamp) report["timestamp"] = iso_timestamp();
    try {
        moebius::PlatonicKind kind;
        if (opt.kind == "tetrahedron") kind = moebius::PlatonicKind::Tetrahedron;
        else if (opt.kind == "cube") kind = moebius::PlatonicKind::Cube;
        else if (opt.kind == "octahedron") kind = moebius::PlatonicKind::Octahedron;
        else if (opt.kind == "dodecahedron") kind = moebius::PlatonicKind::Dodecahedron;
        else if (opt.kind == "icosahedron") kind = moebius::PlatonicKind::Icosahedron;
        else throw moebius::ParseError("unknown solid '" + opt.kind + "'");

        const moebius::TangentPolytope poly =
            opt.rapidity > 0.0
                ? moebius::generate_test_polytope(kind, opt.seed, opt.rapidity)
                : moebius::platonic_solid(kind);

        std::ostringstream body;
        moebius::write_off(body, poly.vertices, poly.faces);
        emit_output(opt.output, body.str());

        report["exit_status"] = kExitOk;
        report["diagnostics"] = {{"kind", opt.kind},
                                 {"seed", opt.seed},
                                 {"rapidity", opt.rapidity},
                                 {"vertices", poly.vertices.size()},
                                 {"faces", poly.faces.size()},
                                 {"edges", poly.edges.size()}};
        write_report(report, opt.report);
        return kExitOk;
    } catch (const std::exception& e) {
        const int code = exit_code_for(e);
        std::cerr << "gen: error: " << e.what() << "\n";
        report["exit_status"] = code;
        report["error"] = e.what();
        write_report(report, opt.report);
        return code;
    }
}

// --- verify -------------------------------------------------------------------

int run_verify(const std::string& input, const std::string&, const Options& opt) {
    json report = base_report("verify", input, opt);
    try {
        json checks;
        bool pass = true;

        const std::string ext = fs::path(input).extension().string();
        if (ext == ".off") {
            const moebius::OffData off = moebius::read_off_file(input);
            const moebius::ValidationReport validation =
                moebius::validate(off.vertices, off.faces, opt.edge_tol);
            Eigen::Vector3d sum = Eigen::Vector3d::Zero();
            std::size_t count = 0;
            if (validation.ok()) {
                const moebius::TangentPolytope poly =
                    moebius::build_polytope(off.vertices, off.faces, opt.edge_tol);
                for (const moebius::SpherePoint& t : poly.tangency_points) sum += t.coords();
                count = poly.tangency_points.size();
            }
            const double barycenter =
                count > 0 ? sum.norm() / static_cast<double>(count) : 0.0;
            const bool barycenter_ok = validation.ok() && barycenter <= opt.barycenter_tol;
            pass = validation.ok() && barycenter_ok;
            checks = {{"valid_polytope", validation.ok()},
                      {"max_tangency_violation", validation.max_tangency_violation},
                      {"tangency_barycenter_norm", barycenter},
                      {"barycenter_ok", barycenter_ok},
                      {"edge_tol", opt.edge_tol},
                      {"barycenter_tol", opt.barycenter_tol}};
            if (!validation.ok()) checks["violations"] = violation_table(validation);
        } else if (ext == ".json") {
            const moebius::PointSetFile ps = moebius::read_point_set_file(input);
            double max_unit_dev = 0.0;
            for (const Eigen::VectorXd& row : ps.points)
                max_unit_dev = std::max(max_unit_dev, std::abs(row.norm() - 1.0));
            double min_sep = 1e300;
            for (std::size_t i = 0; i < ps.points.size(); ++i)
                for (std::size_t j = i + 1; j < ps.points.size(); ++j)
                    min_sep = std::min(min_sep, (ps.points[i] - ps.points[j]).norm());
            Eigen::VectorXd sum = Eigen::VectorXd::Zero(ps.dim + 1);
            for (const Eigen::VectorXd& row : ps.points) sum += row;

            const bool units_ok = max_unit_dev <= 1e-9;
            const bool distinct_ok = ps.points.size() >= 3 && min_sep >= 1e-9;
            const bool sum_ok = sum.norm() <= opt.barycenter_tol;
            pass = units_ok && distinct_ok && sum_ok;
            checks = {{"n", ps.points.size()},
                      {"dim", ps.dim},
                      {"max_unit_deviation", max_unit_dev},
                      {"units_ok", units_ok},
                      {"min_separation", min_sep},
                      {"distinct_ok", distinct_ok},
                      {"sum_norm", sum.norm()},
                      {"barycenter_norm", sum.norm() / std::max<std::size_t>(1, ps.points.size())},
                      {"sum_ok", sum_ok},
                      {"barycenter_tol", opt.barycenter_tol}};
        } else {
            throw moebius::ParseError("verify: unknown input extension '" + ext +
                                      "' (expected .json or .off)");
        }

        report["exit_status"] = pass ? kExitOk : kExitVerifyFailed;
        report["diagnostics"] = checks;
        write_report(report, opt.report);
        if (!pass) {
            std::cerr << "verify: FAILED: " << checks.dump() << "\n";
            return kExitVerifyFailed;
        }
        if (opt.verbose) std::cerr << "verify: ok\n";
        return kExitOk;
    } catch (const std::exception& e) {
        const int code = exit_code_for(e);
        std::cerr << "verify: error: " << e.what() << "\n";
        report["exit_status"] = code;
        report["error"] = e.what();
        write_report(report, opt.report);
        return code;
    }
}

// --- batch driver -------------------------------------------------------------

int run_batch(const Options& opt, const std::string& match_ext, const std::string& out_ext,
              int (*handler)(const std::string&, const std::string&, const Options&)) {
    if (opt.output.empty()) {
        std::cerr << "batch mode requires --output DIRECTORY\n";
        return kExitBadInput;
    }
    fs::create_directories(opt.output);
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(opt.input)) {
        if (!entry.is_regular_file()) continue;
        const std::string ext = entry.path().extension().string();
        if (match_ext == "*" ? (ext == ".json" || ext == ".off") : ext == match_ext)
            files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    if (files.empty()) {
        std::cerr << "batch: no matching files in '" << opt.input << "'\n";
        return kExitBadInput;
    }

    std::atomic<std::size_t> cursor{0};
    std::atomic<int> worst{0};
    auto work = [&] {
        for (;;) {
            const std::size_t i = cursor.fetch_add(1);
            if (i >= files.size()) return;
            Options per = opt;
            const std::string stem = files[i].stem().string();
            per.report = (fs::path(opt.output) / (stem + ".report.json")).string();
            const std::string out_path =
                out_ext.empty() ? "" : (fs::path(opt.output) / (stem + out_ext)).string();
            const int code = handler(files[i].string(), out_path, per);
            int prev = worst.load();
            while (prev < code && !worst.compare_exchange_weak(prev, code)) {
            }
        }
    };
    const unsigned jobs = std::max(1u, opt.jobs);
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < jobs; ++t) pool.emplace_back(work);
    work();
    for (std::thread& t : pool) t.join();
    return worst.load();
}

int dispatch(const Options& opt, const std::string& match_ext, const std::string& out_ext,
             int (*handler)(const std::string&, const std::string&, const Options&)) {
    if (fs::is_directory(opt.input)) return run_batch(opt, match_ext, out_ext, handler);
    return handler(opt.input, opt.output, opt);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Moebius centering of spherical point sets and canonical "
                 "edge-tangent polytopes"};
    app.require_subcommand(1);
    Options opt;

    auto add_common = [&](CLI::App* cmd, bool solver_flags) {
        cmd->add_option("--output", opt.output, "output file (or directory in batch mode)");
        cmd->add_option("--report", opt.report, "write a JSON run report here");
        cmd->add_flag("--no-timestamp", opt.no_timestamp, "omit the timestamp from reports");
        cmd->add_flag("--verbose", opt.verbose, "log iterations to stderr");
        cmd->add_option("--jobs", opt.jobs, "worker threads for directory inputs")
            ->check(CLI::PositiveNumber);
        if (solver_flags) {
            cmd->add_option("--grad-tol", opt.grad_tol, "gradient tolerance (default 1e-12)")
                ->check(CLI::PositiveNumber);
            cmd->add_option("--max-iters", opt.max_iters, "iteration budget (default 100)")
                ->check(CLI::PositiveNumber);
        }
    };

    CLI::App* center = app.add_subcommand("center", "center a spherical point set");
    center->add_option("input", opt.input, "point-set JSON file or directory")->required();
    add_common(center, true);
    center->add_flag("--renormalize", opt.renormalize,
                     "snap near-unit input rows onto the sphere");

    CLI::App* canon = app.add_subcommand("canonicalize",
                                         "canonicalize an edge-tangent polytope (OFF)");
    canon->add_option("input", opt.input, "OFF file or directory")->required();
    add_common(canon, true);
    canon->add_option("--edge-tol", opt.edge_tol, "edge tangency tolerance (default 1e-8)")
        ->check(CLI::PositiveNumber);

    CLI::App* gen = app.add_subcommand("gen", "generate a midsphere Platonic solid");
    gen->add_option("kind", opt.kind,
                    "tetrahedron | cube | octahedron | dodecahedron | icosahedron")
        ->required();
    gen->add_option("--seed", opt.seed, "perturbation seed");
    gen->add_option("--rapidity", opt.rapidity,
                    "max rapidity of the seeded perturbation (0 = none)");
    gen->add_option("--output", opt.output, "output OFF file");
    gen->add_option("--report", opt.report, "write a JSON run report here");
    gen->add_flag("--no-timestamp", opt.no_timestamp, "omit the timestamp from reports");

    CLI::App* verify = app.add_subcommand("verify", "verify centering / tangency invariants");
    verify->add_option("input", opt.input, ".json point set or .off polytope, or directory")
        ->required();
    add_common(verify, false);
    verify->add_option("--edge-tol", opt.edge_tol, "edge tangency tolerance (default 1e-8)")
        ->check(CLI::PositiveNumber);
    verify->add_option("--barycenter-tol", opt.barycenter_tol,
                       "pass threshold for the centering check (default 1e-8)")
        ->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : kExitBadInput;
    }

    if (center->parsed()) return dispatch(opt, ".json", ".centered.json", run_center);
    if (canon->parsed()) return dispatch(opt, ".off", ".canonical.off", run_canonicalize);
    if (gen->parsed()) return run_gen(opt);
    if (verify->parsed()) return dispatch(opt, "*", "", run_verify);
    return kExitBadInput;
}
