#include "gptcompat/shapes.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "gptcompat/io.hpp"

namespace gptcompat {

std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

double uniform01(std::uint64_t& state) {
    return static_cast<double>(splitmix64(state) >> 11) * 0x1.0p-53;
}

double standard_normal(std::uint64_t& state) {
    // Box-Muller; the paired variate is discarded to keep the stream simple.
    double u1 = uniform01(state);
    while (u1 <= 0.0) u1 = uniform01(state);
    const double u2 = uniform01(state);
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * std::numbers::pi * u2);
}

std::vector<Point> simplex_vertices(int dim) {
    if (dim < 0) fail(Errc::ParameterOutOfRange, "simplex dimension must be nonnegative");
    std::vector<Point> pts;
    const int amb = std::max(dim, 1);
    pts.push_back(Point::Zero(amb));
    for (int i = 0; i < dim; ++i) {
        Point p = Point::Zero(amb);
        p(i) = 1.0;
        pts.push_back(p);
    }
    return pts;
}

std::vector<Point> hypercube_vertices(int dim) {
    if (dim < 1 || dim > 20)
        fail(Errc::ParameterOutOfRange, "hypercube dimension must be in 1..20");
    std::vector<Point> pts;
    for (int mask = 0; mask < (1 << dim); ++mask) {
        Point p(dim);
        for (int j = 0; j < dim; ++j) p(j) = (mask >> j) & 1 ? 1.0 : 0.0;
        pts.push_back(p);
    }
    return pts;
}

std::vector<Point> cross_polytope_vertices(int dim) {
    if (dim < 1) fail(Errc::ParameterOutOfRange, "cross-polytope dimension must be positive");
    std::vector<Point> pts;
    for (int sign = 0; sign < 2; ++sign)
        for (int i = 0; i < dim; ++i) {
            Point p = Point::Zero(dim);
            p(i) = sign == 0 ? 1.0 : -1.0;
            pts.push_back(p);
        }
    return pts;
}

std::vector<Point> ngon_vertices(int n) {
    if (n < 3) fail(Errc::ParameterOutOfRange, "a polygon needs at least 3 vertices");
    std::vector<Point> pts;
    for (int k = 0; k < n; ++k) {
        const double angle = 2.0 * std::numbers::pi * k / n;
        Point p(2);
        p << std::cos(angle), std::sin(angle);
        pts.push_back(p);
    }
    return pts;
}

std::vector<Point> random_sphere_vertices(int dim, int count, std::uint64_t seed) {
    if (dim < 1) fail(Errc::ParameterOutOfRange, "dimension must be positive");
    if (count < dim + 1)
        fail(Errc::ParameterOutOfRange, "need at least dim + 1 points for a full-dimensional "
                                        "polytope");
    std::uint64_t state = seed;
    std::vector<Point> pts;
    for (int i = 0; i < count; ++i) {
        Point p(dim);
        double norm = 0.0;
        do {
            for (int j = 0; j < dim; ++j) p(j) = standard_normal(state);
            norm = p.norm();
        } while (norm < 1e-12);
        pts.push_back(p / norm);
    }
    return pts;
}

Polytope make_simplex(int dim, double tol) { return Polytope::build(simplex_vertices(dim), tol); }
Polytope make_hypercube(int dim, double tol) {
    return Polytope::build(hypercube_vertices(dim), tol);
}
Polytope make_cross_polytope(int dim, double tol) {
    return Polytope::build(cross_polytope_vertices(dim), tol);
}
Polytope make_ngon(int n, double tol) { return Polytope::build(ngon_vertices(n), tol); }
Polytope make_random_polytope(int dim, int count, std::uint64_t seed, double tol) {
    return Polytope::build(random_sphere_vertices(dim, count, seed), tol);
}

namespace {

std::vector<long long> parse_int_list(const std::string& text, std::size_t expected,
                                      const std::string& what) {
    std::vector<long long> vals;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto comma = text.find(',', pos);
        const std::string tok =
            text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        try {
            std::size_t used = 0;
            vals.push_back(std::stoll(tok, &used));
            if (used != tok.size()) throw std::invalid_argument(tok);
        } catch (const std::exception&) {
            fail(Errc::BadShape, "bad integer '" + tok + "' in " + what);
        }
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    if (vals.size() != expected)
        fail(Errc::BadShape, what + " needs " + std::to_string(expected) +
                                 " comma-separated integers, got " +
                                 std::to_string(vals.size()));
    return vals;
}

}  // namespace

ShapeSpec parse_shape(const std::string& text) {
    const auto colon = text.find(':');
    if (colon == std::string::npos)
        fail(Errc::BadShape, "shape '" + text + "' has no ':' separator; expected forms like "
                             "simplex:3, hypercube:2, crosspolytope:3, ngon:7, random:3,8,42, "
                             "file:path.json");
    const std::string kind = text.substr(0, colon);
    const std::string rest = text.substr(colon + 1);
    ShapeSpec spec;
    if (kind == "simplex") {
        spec.kind = ShapeSpec::Kind::Simplex;
        spec.dim = static_cast<int>(parse_int_list(rest, 1, "simplex")[0]);
    } else if (kind == "hypercube") {
        spec.kind = ShapeSpec::Kind::Hypercube;
        spec.dim = static_cast<int>(parse_int_list(rest, 1, "hypercube")[0]);
    } else if (kind == "crosspolytope") {
        spec.kind = ShapeSpec::Kind::CrossPolytope;
        spec.dim = static_cast<int>(parse_int_list(rest, 1, "crosspolytope")[0]);
    } else if (kind == "ngon") {
        spec.kind = ShapeSpec::Kind::Ngon;
        spec.count = static_cast<int>(parse_int_list(rest, 1, "ngon")[0]);
    } else if (kind == "random") {
        spec.kind = ShapeSpec::Kind::Random;
        const auto vals = parse_int_list(rest, 3, "random");
        spec.dim = static_cast<int>(vals[0]);
        spec.count = static_cast<int>(vals[1]);
        spec.seed = static_cast<std::uint64_t>(vals[2]);
    } else if (kind == "file") {
        if (rest.empty()) fail(Errc::BadShape, "file shape needs a path");
        spec.kind = ShapeSpec::Kind::File;
        spec.path = rest;
    } else {
        fail(Errc::BadShape, "unknown shape kind '" + kind + "'");
    }
    return spec;
}

Polytope make_shape(const ShapeSpec& spec, double tol) {
    switch (spec.kind) {
        case ShapeSpec::Kind::Simplex: return make_simplex(spec.dim, tol);
        case ShapeSpec::Kind::Hypercube: return make_hypercube(spec.dim, tol);
        case ShapeSpec::Kind::CrossPolytope: return make_cross_polytope(spec.dim, tol);
        case ShapeSpec::Kind::Ngon: return make_ngon(spec.count, tol);
        case ShapeSpec::Kind::Random:
            return make_random_polytope(spec.dim, spec.count, spec.seed, tol);
        case ShapeSpec::Kind::File: return load_polytope(spec.path, tol);
    }
    fail(Errc::BadShape, "unhandled shape kind");
}

}  // namespace gptcompat
