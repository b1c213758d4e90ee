#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "gptcompat/compat.hpp"
#include "gptcompat/io.hpp"
#include "gptcompat/shapes.hpp"

using namespace gptcompat;

namespace {

std::string fmt9(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

void print_json(const json& j) { std::cout << j.dump(2) << "\n"; }

Polytope shape_from(const std::string& text, double tol, bool seed_set,
                    std::uint64_t seed) {
    ShapeSpec spec = parse_shape(text);
    if (seed_set && spec.kind == ShapeSpec::Kind::Random) spec.seed = seed;
    return make_shape(spec, tol);
}

// The axes pair (1 + x)/2, (1 + y)/2, valid on shapes inside the unit ball.
TwoOutcomeMeasurement axis_measurement(const Polytope& k, int axis, double tol) {
    if (axis >= k.ambient_dim())
        fail(Errc::BadShape, "axes pair needs at least two ambient coordinates");
    Eigen::VectorXd lin = Eigen::VectorXd::Zero(k.ambient_dim());
    lin(axis) = 0.5;
    AffineFunction f;
    f.linear = k.chart_basis().transpose() * lin;
    f.offset = 0.5 + lin.dot(k.chart_origin());
    return {make_effect(f, k, tol)};
}

int cmd_analyze(const Polytope& k, const std::string& dump_path) {
    json per_vertex = json::array();
    for (int v = 0; v < k.vertex_count(); ++v) {
        const auto [containing, disjoint] = k.facets_at_vertex(v);
        per_vertex.push_back({{"containing_facets", containing.size()},
                              {"disjoint_facets", disjoint.size()}});
    }
    const json report = {
        {"vertex_count", k.vertex_count()},
        {"intrinsic_dim", k.intrinsic_dim()},
        {"facet_count", k.facets().size()},
        {"is_simplex", k.is_simplex()},
        {"vertices", per_vertex},
    };
    print_json(report);
    if (!dump_path.empty()) {
        std::ofstream out(dump_path);
        if (!out) fail(Errc::FileNotFound, "cannot write " + dump_path);
        out << polytope_to_json(k).dump(2) << "\n";
    }
    return 0;
}

int cmd_degree(const Polytope& k, const std::string& m1_path, const std::string& m2_path,
               bool free_coin, const CompatOptions& opts) {
    const TwoOutcomeMeasurement m1 = load_measurement(m1_path, k, opts.tol);
    const TwoOutcomeMeasurement m2 = load_measurement(m2_path, k, opts.tol);
    const DegreeResult res = free_coin ? degree_free_coin(m1, m2, k, opts)
                                       : degree(m1, m2, k, opts);
    print_json(degree_result_to_json(res, k));
    return res.lambda >= 1.0 - opts.tol ? 0 : 2;
}

int cmd_witness(const Polytope& k, const CompatOptions& opts) {
    const WitnessSearchResult w = construct_incompatible_pair(k, opts);
    const double violation =
        verify_certificate(*w.degree.certificate, w.m1, w.m2, k, opts.tol);
    const json report = {
        {"m1", {{"effect", affine_to_json(w.m1.first.f, k)}}},
        {"m2", {{"effect", affine_to_json(w.m2.first.f, k)}}},
        {"facet_index", w.facet_index},
        {"vertex_index", w.vertex_index},
        {"degree", degree_result_to_json(w.degree, k)},
        {"verified_violation", violation},
    };
    print_json(report);
    return 0;
}

struct SweepRow {
    long long param;
    DegreeResult res;
};

int cmd_sweep(const std::string& family, int n_min, int n_max, int step, int dim,
              int vertices, int runs, std::uint64_t seed, const std::string& pair,
              const std::string& m1_path, const std::string& m2_path,
              const std::string& output, const CompatOptions& opts) {
    std::vector<std::pair<long long, Polytope>> members;
    if (family == "ngon") {
        if (step <= 0) fail(Errc::ParameterOutOfRange, "step must be positive");
        for (int n = n_min; n <= n_max; n += step)
            members.emplace_back(n, make_ngon(n, opts.tol));
    } else {
        for (int i = 0; i < runs; ++i) {
            const std::uint64_t s = seed + static_cast<std::uint64_t>(i);
            members.emplace_back(static_cast<long long>(s),
                                 make_random_polytope(dim, vertices, s, opts.tol));
        }
    }

    std::vector<SweepRow> rows;
    rows.reserve(members.size());
    for (const auto& [param, k] : members) {
        TwoOutcomeMeasurement m1 = pair == "files" ? load_measurement(m1_path, k, opts.tol)
                                                   : axis_measurement(k, 0, opts.tol);
        TwoOutcomeMeasurement m2 = pair == "files" ? load_measurement(m2_path, k, opts.tol)
                                                   : axis_measurement(k, 1, opts.tol);
        rows.push_back({param, degree(m1, m2, k, opts)});
    }

    if (output == "json") {
        json arr = json::array();
        for (const SweepRow& row : rows) {
            arr.push_back({{"param", row.param},
                           {"lambda", row.res.lambda},
                           {"mu", row.res.mu},
                           {"violation",
                            row.res.certificate ? row.res.certificate->violation : 0.0}});
        }
        print_json(arr);
        return 0;
    }
    std::cout << "param,lambda,mu,violation\n";
    for (const SweepRow& row : rows) {
        const double violation = row.res.certificate ? row.res.certificate->violation : 0.0;
        std::cout << row.param << ',' << fmt9(row.res.lambda) << ',' << fmt9(row.res.mu)
                  << ',' << fmt9(violation) << "\n";
    }
    return 0;
}

int cmd_joint(const Polytope& k, const std::string& method, const std::string& m1_path,
              const std::string& m2_path, const std::string& p_path, double t1, double t2,
              const CompatOptions& opts) {
    if (method == "product") {
        const FiniteMeasurement m1 =
            finite_measurement_from_json(load_json_file(m1_path), k, opts.tol);
        const FiniteMeasurement m2 =
            finite_measurement_from_json(load_json_file(m2_path), k, opts.tol);
        print_json(finite_measurement_to_json(simplex_product_joint(m1, m2, k), k));
        return 0;
    }
    const TwoOutcomeMeasurement m1 = load_measurement(m1_path, k, opts.tol);
    const TwoOutcomeMeasurement m2 = load_measurement(m2_path, k, opts.tol);
    if (method == "from-p") {
        if (p_path.empty()) fail(Errc::ParameterOutOfRange, "--p is required for from-p");
        const AffineFunction p = affine_from_json(load_json_file(p_path), k);
        print_json(joint_to_json(joint_from_p(m1, m2, p, k, opts.tol), k));
        return 0;
    }
    print_json(joint_to_json(half_coin_joint(m1, m2, t1, t2, k), k));
    return 0;
}

int run(int argc, char** argv) {
    CLI::App app{"Compatibility of two-outcome measurements on polytopal state spaces"};
    app.require_subcommand(1);
    app.fallthrough();  // accept global flags after the subcommand name

    CompatOptions opts;
    if (const char* env = std::getenv("GPTCOMPAT_TOL")) {
        char* end = nullptr;
        const double v = std::strtod(env, &end);
        if (end == env || *end != '\0' || !(v > 0))
            fail(Errc::ParseError, "GPTCOMPAT_TOL is not a positive number");
        opts.tol = v;
    }
    std::uint64_t seed = 0;
    std::string output = "json";
    app.add_option("--tol", opts.tol, "feasibility tolerance")->check(CLI::PositiveNumber);
    app.add_option("--gap-tol", opts.gap_tol, "duality-gap tolerance")
        ->check(CLI::PositiveNumber);
    auto* seed_opt = app.add_option("--seed", seed, "override the seed of random shapes");
    auto* output_opt = app.add_option("--output", output, "report format")
                           ->check(CLI::IsMember({"json", "csv"}));

    std::string shape_text, m1_path, m2_path, p_path, dump_path;
    bool free_coin = false;
    double t1 = 0.5, t2 = 0.5;

    CLI::App* analyze = app.add_subcommand("analyze", "describe a state space");
    analyze->add_option("--shape", shape_text, "state space")->required();
    analyze->add_option("--dump", dump_path, "write the vertex list to this file");

    CLI::App* deg = app.add_subcommand("degree", "degree of compatibility of two measurements");
    deg->add_option("--shape", shape_text, "state space")->required();
    deg->add_option("--m1", m1_path, "first measurement file")->required();
    deg->add_option("--m2", m2_path, "second measurement file")->required();
    deg->add_flag("--free-coin", free_coin, "optimize the coin biases as well");

    CLI::App* wit = app.add_subcommand("witness", "construct an incompatible pair");
    wit->add_option("--shape", shape_text, "state space")->required();

    std::string family = "ngon", pair = "axes";
    int n_min = 4, n_max = 64, step = 4, dim = 2, vertices = 6, runs = 5;
    CLI::App* sweep = app.add_subcommand("sweep", "degree across a shape family, as CSV");
    sweep->add_option("--family", family, "shape family")
        ->check(CLI::IsMember({"ngon", "random"}));
    sweep->add_option("--n-min", n_min, "first polygon size");
    sweep->add_option("--n-max", n_max, "last polygon size");
    sweep->add_option("--step", step, "polygon size increment");
    sweep->add_option("--dim", dim, "ambient dimension of random shapes");
    sweep->add_option("--vertices", vertices, "vertex draws per random shape");
    sweep->add_option("--runs", runs, "number of random shapes");
    sweep->add_option("--pair", pair, "measurement pair")
        ->check(CLI::IsMember({"axes", "files"}));
    sweep->add_option("--m1", m1_path, "first measurement file");
    sweep->add_option("--m2", m2_path, "second measurement file");

    std::string method;
    CLI::App* joint = app.add_subcommand("joint", "assemble a joint measurement");
    joint->add_option("--shape", shape_text, "state space")->required();
    joint->add_option("--method", method, "construction")
        ->required()
        ->check(CLI::IsMember({"from-p", "product", "half-coin"}));
    joint->add_option("--m1", m1_path, "first measurement file")->required();
    joint->add_option("--m2", m2_path, "second measurement file")->required();
    joint->add_option("--p", p_path, "pooling function file (from-p)");
    joint->add_option("--t1", t1, "first coin bias (half-coin)");
    joint->add_option("--t2", t2, "second coin bias (half-coin)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    if (output_opt->count() > 0 && output == "csv" && !sweep->parsed())
        fail(Errc::ParameterOutOfRange, "csv output is only supported by sweep");
    if (sweep->parsed() && pair == "files" && (m1_path.empty() || m2_path.empty()))
        fail(Errc::ParameterOutOfRange, "--pair files needs --m1 and --m2");
    if (sweep->parsed() && *seed_opt && family != "random")
        fail(Errc::ParameterOutOfRange, "--seed only applies to the random family");

    const bool seed_set = seed_opt->count() > 0;
    if (sweep->parsed()) {
        // Sweeps are CSV unless JSON is asked for explicitly.
        const std::string fmt = output_opt->count() > 0 ? output : "csv";
        return cmd_sweep(family, n_min, n_max, step, dim, vertices, runs, seed, pair,
                         m1_path, m2_path, fmt, opts);
    }
    const Polytope k = shape_from(shape_text, opts.tol, seed_set, seed);
    if (analyze->parsed()) return cmd_analyze(k, dump_path);
    if (deg->parsed()) return cmd_degree(k, m1_path, m2_path, free_coin, opts);
    if (wit->parsed()) return cmd_witness(k, opts);
    return cmd_joint(k, method, m1_path, m2_path, p_path, t1, t2, opts);
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.code() == Errc::SimplexInput ? 3 : 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
