#include "qhde/benchmarks.hpp"

#include <cmath>
#include <numbers>

namespace qhde::bench {

namespace {

using std::numbers::pi;

double sphere(const Vec& z) {
    double sum = 0.0;
    for (double v : z) sum += v * v;
    return sum;
}

// Classic Rosenbrock shifted so the minimum sits at the origin
// (y = z + 1 recovers the textbook form with optimum at 1^d).
double rosenbrock(const Vec& z) {
    if (z.size() == 1) return z[0] * z[0];
    double sum = 0.0;
    for (std::size_t i = 0; i + 1 < z.size(); ++i) {
        const double yi = z[i] + 1.0;
        const double t = z[i + 1] + 1.0 - yi * yi;
        sum += 100.0 * t * t + z[i] * z[i];
    }
    return sum;
}

double rastrigin(const Vec& z) {
    double sum = 10.0 * static_cast<double>(z.size());
    for (double v : z) sum += v * v - 10.0 * std::cos(2.0 * pi * v);
    return sum;
}

double ackley(const Vec& z) {
    const double n = static_cast<double>(z.size());
    double sq = 0.0, cs = 0.0;
    for (double v : z) {
        sq += v * v;
        cs += std::cos(2.0 * pi * v);
    }
    return -20.0 * std::exp(-0.2 * std::sqrt(sq / n)) - std::exp(cs / n) + 20.0 +
           std::numbers::e;
}

double griewank(const Vec& z) {
    double sum = 0.0, prod = 1.0;
    for (std::size_t i = 0; i < z.size(); ++i) {
        sum += z[i] * z[i] / 4000.0;
        prod *= std::cos(z[i] / std::sqrt(static_cast<double>(i + 1)));
    }
    return sum - prod + 1.0;
}

// Schwefel with the usual CEC boundary wrapping, which keeps every
// per-coordinate term non-negative even for rotated out-of-box inputs.
double schwefel(const Vec& z) {
    constexpr double offset = 420.9687462275036;
    constexpr double bias = 418.9828872724338;
    const double n = static_cast<double>(z.size());
    double sum = 0.0;
    for (double v : z) {
        const double w = v + offset;
        double g;
        double penalty = 0.0;
        if (w > 500.0) {
            const double m = 500.0 - std::fmod(w, 500.0);
            g = m * std::sin(std::sqrt(std::abs(m)));
            const double d = (w - 500.0) / 100.0;
            penalty = d * d / n;
        } else if (w < -500.0) {
            const double m = std::fmod(std::abs(w), 500.0) - 500.0;
            g = m * std::sin(std::sqrt(std::abs(m)));
            const double d = (w + 500.0) / 100.0;
            penalty = d * d / n;
        } else {
            g = w * std::sin(std::sqrt(std::abs(w)));
        }
        sum += bias - g + penalty;
    }
    return sum;
}

// Levy with the minimum moved to the origin (w = 1 + z / 4).
double levy(const Vec& z) {
    const std::size_t n = z.size();
    auto w = [&](std::size_t i) { return 1.0 + z[i] / 4.0; };
    const double s1 = std::sin(pi * w(0));
    double sum = s1 * s1;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const double wi = w(i);
        const double s = std::sin(pi * wi + 1.0);
        sum += (wi - 1.0) * (wi - 1.0) * (1.0 + 10.0 * s * s);
    }
    const double wn = w(n - 1);
    const double sn = std::sin(2.0 * pi * wn);
    sum += (wn - 1.0) * (wn - 1.0) * (1.0 + sn * sn);
    return sum;
}

double zakharov(const Vec& z) {
    double sq = 0.0, lin = 0.0;
    for (std::size_t i = 0; i < z.size(); ++i) {
        sq += z[i] * z[i];
        lin += 0.5 * static_cast<double>(i + 1) * z[i];
    }
    return sq + lin * lin + lin * lin * lin * lin;
}

// Per-coordinate two-basin landscape: the global well floors at 0, the
// worse one at `sep` with floor value `depth`.
double double_well(const Vec& z, double sep, double depth) {
    double sum = 0.0;
    for (double v : z) {
        const double a = v * v;
        const double b = (v - sep) * (v - sep) + depth;
        sum += std::min(a, b);
    }
    return sum;
}

}  // namespace

std::string to_string(BaseFunction f) {
    switch (f) {
        case BaseFunction::Sphere: return "sphere";
        case BaseFunction::Rosenbrock: return "rosenbrock";
        case BaseFunction::Rastrigin: return "rastrigin";
        case BaseFunction::Ackley: return "ackley";
        case BaseFunction::Griewank: return "griewank";
        case BaseFunction::Schwefel: return "schwefel";
        case BaseFunction::Levy: return "levy";
        case BaseFunction::Zakharov: return "zakharov";
        case BaseFunction::DoubleWell: return "double_well";
    }
    throw ContractError("to_string: unknown base function");
}

BaseFunction base_function_from_string(const std::string& name) {
    for (auto f : {BaseFunction::Sphere, BaseFunction::Rosenbrock, BaseFunction::Rastrigin,
                   BaseFunction::Ackley, BaseFunction::Griewank, BaseFunction::Schwefel,
                   BaseFunction::Levy, BaseFunction::Zakharov, BaseFunction::DoubleWell}) {
        if (to_string(f) == name) return f;
    }
    throw ConfigError("unknown benchmark function: " + name);
}

SearchSpace default_bounds(BaseFunction f, std::size_t dim) {
    switch (f) {
        case BaseFunction::Sphere: return SearchSpace::uniform(dim, -100.0, 100.0);
        case BaseFunction::Rosenbrock: return SearchSpace::uniform(dim, -30.0, 30.0);
        case BaseFunction::Rastrigin: return SearchSpace::uniform(dim, -5.12, 5.12);
        case BaseFunction::Ackley: return SearchSpace::uniform(dim, -32.768, 32.768);
        case BaseFunction::Griewank: return SearchSpace::uniform(dim, -600.0, 600.0);
        case BaseFunction::Schwefel: return SearchSpace::uniform(dim, -500.0, 500.0);
        case BaseFunction::Levy: return SearchSpace::uniform(dim, -10.0, 10.0);
        case BaseFunction::Zakharov: return SearchSpace::uniform(dim, -10.0, 10.0);
        case BaseFunction::DoubleWell: return SearchSpace::uniform(dim, -15.0, 15.0);
    }
    throw ContractError("default_bounds: unknown base function");
}

BenchmarkSpec BenchmarkSpec::classic(BaseFunction f, std::size_t dim) {
    BenchmarkSpec spec;
    spec.base = f;
    spec.dim = dim;
    spec.bounds = default_bounds(f, dim);
    return spec;
}

Vec BenchmarkSpec::optimum() const {
    return shift.empty() ? Vec(dim, 0.0) : shift;
}

void BenchmarkSpec::validate() const {
    if (dim == 0) throw ContractError("BenchmarkSpec: dim must be positive");
    bounds.validate();
    if (bounds.dim() != dim) throw ContractError("BenchmarkSpec: bounds dimension mismatch");
    if (!shift.empty()) {
        if (shift.size() != dim) throw ContractError("BenchmarkSpec: shift dimension mismatch");
        for (std::size_t j = 0; j < dim; ++j) {
            if (!(shift[j] > bounds.lower[j] && shift[j] < bounds.upper[j]))
                throw ContractError("BenchmarkSpec: shifted optimum not strictly inside bounds");
        }
    }
    if (!rotation.empty()) {
        if (rotation.size() != dim)
            throw ContractError("BenchmarkSpec: rotation dimension mismatch");
        if (orthogonality_error(rotation) >= 1e-10)
            throw ContractError("BenchmarkSpec: rotation matrix is not orthogonal");
    }
    if (base == BaseFunction::DoubleWell) {
        if (!(well_separation != 0.0 && well_depth > 0.0))
            throw ContractError("BenchmarkSpec: degenerate double-well geometry");
    }
}

double evaluate(const BenchmarkSpec& spec, const Vec& x) {
    if (x.size() != spec.dim) throw ContractError("benchmark evaluate: dimension mismatch");

    Vec z(spec.dim);
    for (std::size_t j = 0; j < spec.dim; ++j) {
        z[j] = spec.shift.empty() ? x[j] : x[j] - spec.shift[j];
    }
    if (!spec.rotation.empty()) {
        Vec rotated(spec.dim, 0.0);
        for (std::size_t i = 0; i < spec.dim; ++i) {
            double acc = 0.0;
            for (std::size_t j = 0; j < spec.dim; ++j) acc += spec.rotation[i][j] * z[j];
            rotated[i] = acc;
        }
        z = std::move(rotated);
    }

    switch (spec.base) {
        case BaseFunction::Sphere: return sphere(z);
        case BaseFunction::Rosenbrock: return rosenbrock(z);
        case BaseFunction::Rastrigin: return rastrigin(z);
        case BaseFunction::Ackley: return ackley(z);
        case BaseFunction::Griewank: return griewank(z);
        case BaseFunction::Schwefel: return schwefel(z);
        case BaseFunction::Levy: return levy(z);
        case BaseFunction::Zakharov: return zakharov(z);
        case BaseFunction::DoubleWell:
            return double_well(z, spec.well_separation, spec.well_depth);
    }
    throw ContractError("benchmark evaluate: unknown base function");
}

Matrix make_rotation(std::size_t dim, RandomSource& rng) {
    if (dim == 0) throw ContractError("make_rotation: dim must be positive");

    // Gram-Schmidt on Gaussian columns, stored row-major. A second
    // orthogonalization pass tightens the result well below the 1e-10
    // tolerance for desk-scale dimensions.
    Matrix columns(dim, Vec(dim));
    for (std::size_t c = 0; c < dim; ++c) {
        for (;;) {
            for (std::size_t r = 0; r < dim; ++r) columns[c][r] = rng.normal();
            for (int pass = 0; pass < 2; ++pass) {
                for (std::size_t p = 0; p < c; ++p) {
                    double dot = 0.0;
                    for (std::size_t r = 0; r < dim; ++r) dot += columns[c][r] * columns[p][r];
                    for (std::size_t r = 0; r < dim; ++r) columns[c][r] -= dot * columns[p][r];
                }
            }
            double norm = 0.0;
            for (std::size_t r = 0; r < dim; ++r) norm += columns[c][r] * columns[c][r];
            norm = std::sqrt(norm);
            if (norm > 1e-8) {
                for (std::size_t r = 0; r < dim; ++r) columns[c][r] /= norm;
                break;
            }
            // near-dependent draw; try a fresh column
        }
    }

    Matrix rotation(dim, Vec(dim));
    for (std::size_t i = 0; i < dim; ++i) {
        for (std::size_t j = 0; j < dim; ++j) rotation[i][j] = columns[j][i];
    }
    return rotation;
}

double orthogonality_error(const Matrix& rotation) {
    const std::size_t dim = rotation.size();
    double err = 0.0;
    for (std::size_t i = 0; i < dim; ++i) {
        for (std::size_t j = 0; j < dim; ++j) {
            double dot = 0.0;
            for (std::size_t k = 0; k < dim; ++k) dot += rotation[i][k] * rotation[j][k];
            const double target = (i == j) ? 1.0 : 0.0;
            err += (dot - target) * (dot - target);
        }
    }
    return std::sqrt(err);
}

BenchmarkSpec make_shifted_rotated(BaseFunction f, std::size_t dim, RandomSource& rng) {
    BenchmarkSpec spec = BenchmarkSpec::classic(f, dim);
    spec.shift.resize(dim);
    for (std::size_t j = 0; j < dim; ++j) {
        const double margin = 0.1 * spec.bounds.range(j);
        spec.shift[j] =
            spec.bounds.lower[j] + margin + (spec.bounds.range(j) - 2.0 * margin) * rng.uniform();
    }
    spec.rotation = make_rotation(dim, rng);
    return spec;
}

ObjectiveHandle make_objective(const BenchmarkSpec& spec) {
    spec.validate();
    return ObjectiveHandle([spec](const Vec& x) { return evaluate(spec, x); }, Sense::Minimize);
}

std::vector<BenchmarkSpec> desk_suite(std::size_t dim, std::uint64_t suite_seed) {
    const BaseFunction functions[] = {
        BaseFunction::Sphere,  BaseFunction::Rosenbrock, BaseFunction::Rastrigin,
        BaseFunction::Ackley,  BaseFunction::Griewank,   BaseFunction::Schwefel,
        BaseFunction::Levy,    BaseFunction::Zakharov,
    };
    std::vector<BenchmarkSpec> suite;
    suite.reserve(8);
    for (std::size_t i = 0; i < 8; ++i) {
        RandomSource rng(suite_seed, 1000 + i);  // spec stream, disjoint from run streams
        suite.push_back(make_shifted_rotated(functions[i], dim, rng));
    }
    return suite;
}

}  // namespace qhde::bench
