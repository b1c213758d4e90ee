#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gptcompat/geometry.hpp"

namespace gptcompat {

// Deterministic cross-platform generator (splitmix64) so random shapes are
// reproducible from their seed alone.
std::uint64_t splitmix64(std::uint64_t& state);
double uniform01(std::uint64_t& state);
double standard_normal(std::uint64_t& state);

// Vertex lists of the built-in shape families.
std::vector<Point> simplex_vertices(int dim);          // origin and the unit basis points
std::vector<Point> hypercube_vertices(int dim);        // {0,1}^dim, binary order
std::vector<Point> cross_polytope_vertices(int dim);   // +e_i then -e_i
std::vector<Point> ngon_vertices(int n);               // angles 2*pi*k/n on the unit circle
std::vector<Point> random_sphere_vertices(int dim, int count, std::uint64_t seed);

Polytope make_simplex(int dim, double tol = kDefaultTol);
Polytope make_hypercube(int dim, double tol = kDefaultTol);
Polytope make_cross_polytope(int dim, double tol = kDefaultTol);
Polytope make_ngon(int n, double tol = kDefaultTol);
Polytope make_random_polytope(int dim, int count, std::uint64_t seed, double tol = kDefaultTol);

// Shape descriptor parsed from the command line, e.g. "simplex:3",
// "hypercube:2", "crosspolytope:3", "ngon:7", "random:3,8,42",
// "file:states.json".
struct ShapeSpec {
    enum class Kind { Simplex, Hypercube, CrossPolytope, Ngon, Random, File };
    Kind kind = Kind::Simplex;
    int dim = 0;
    int count = 0;
    std::uint64_t seed = 0;
    std::string path;
};

ShapeSpec parse_shape(const std::string& text);  // throws BadShape
Polytope make_shape(const ShapeSpec& spec, double tol = kDefaultTol);

}  // namespace gptcompat
