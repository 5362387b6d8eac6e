#pragma once

// Desk-scale CEC-style benchmark suite: classic multimodal functions with
// optional shift and rotation, normalized so every base function has
// minimum 0 at the origin, plus a double-well trap landscape for
// tunneling experiments.

#include "qhde/core.hpp"

#include <string>

namespace qhde::bench {

enum class BaseFunction {
    Sphere,
    Rosenbrock,
    Rastrigin,
    Ackley,
    Griewank,
    Schwefel,
    Levy,
    Zakharov,
    DoubleWell,
};

std::string to_string(BaseFunction f);
BaseFunction base_function_from_string(const std::string& name);

/// Conventional search box for each base function.
SearchSpace default_bounds(BaseFunction f, std::size_t dim);

struct BenchmarkSpec {
    BaseFunction base = BaseFunction::Sphere;
    std::size_t dim = 1;
    Vec shift;        ///< empty means no shift
    Matrix rotation;  ///< row-major orthogonal matrix; empty means identity
    SearchSpace bounds;

    // Double-well geometry (ignored by the other functions): the global
    // basin floors at 0, the worse basin at `well_separation` with floor
    // value `well_depth`.
    double well_separation = 2.0;
    double well_depth = 0.5;

    /// Unshifted, unrotated instance on the conventional bounds.
    static BenchmarkSpec classic(BaseFunction f, std::size_t dim);

    /// Position of the global optimum (the shift, or the origin).
    Vec optimum() const;

    void validate() const;
};

/// f_base(R * (x - shift)); throws ContractError on dimension mismatch.
double evaluate(const BenchmarkSpec& spec, const Vec& x);

/// Uniformly random orthogonal matrix via Gram-Schmidt on a Gaussian
/// matrix; R * R^T deviates from identity by less than 1e-10 Frobenius.
Matrix make_rotation(std::size_t dim, RandomSource& rng);

/// Frobenius norm of R * R^T - I.
double orthogonality_error(const Matrix& rotation);

/// Seeded shifted/rotated instance; the shift stays strictly inside the
/// middle 80% of the box.
BenchmarkSpec make_shifted_rotated(BaseFunction f, std::size_t dim, RandomSource& rng);

/// Minimization-sense objective wrapping `evaluate`.
ObjectiveHandle make_objective(const BenchmarkSpec& spec);

/// The eight shifted/rotated desk-suite functions (everything except the
/// double well), derived deterministically from `suite_seed`.
std::vector<BenchmarkSpec> desk_suite(std::size_t dim, std::uint64_t suite_seed);

}  // namespace qhde::bench
