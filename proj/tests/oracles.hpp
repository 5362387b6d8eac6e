#pragma once

// Test-only reference implementations, written independently of the
// library code paths they check.

#include "qhde/core.hpp"

#include <cmath>
#include <cstddef>
#include <vector>

namespace oracles {

/// Centered-L2 discrepancy (Hickernell) of points in the unit cube.
inline double centered_l2_discrepancy(const std::vector<qhde::Vec>& points, std::size_t s) {
    const double n = static_cast<double>(points.size());
    double term1 = std::pow(13.0 / 12.0, static_cast<double>(s));
    double term2 = 0.0;
    for (const auto& x : points) {
        double prod = 1.0;
        for (std::size_t j = 0; j < s; ++j) {
            const double a = std::abs(x[j] - 0.5);
            prod *= 1.0 + 0.5 * a - 0.5 * a * a;
        }
        term2 += prod;
    }
    double term3 = 0.0;
    for (const auto& x : points) {
        for (const auto& y : points) {
            double prod = 1.0;
            for (std::size_t j = 0; j < s; ++j) {
                const double a = std::abs(x[j] - 0.5);
                const double b = std::abs(y[j] - 0.5);
                prod *= 1.0 + 0.5 * a + 0.5 * b - 0.5 * std::abs(x[j] - y[j]);
            }
            term3 += prod;
        }
    }
    return std::sqrt(term1 - 2.0 * term2 / n + term3 / (n * n));
}

/// Plain synchronous DE (rand/1/bin, greedy <=), written from scratch
/// against the library's documented draw order: uniform init, then per
/// member r1/r2/r3 by rejection, forced crossover index, dim crossover
/// uniforms. Returns the best-so-far trace of length t_max + 1.
inline std::vector<double> plain_de_trace(const qhde::ObjectiveHandle& objective,
                                          const qhde::SearchSpace& space, std::size_t n,
                                          std::size_t t_max, double f_weight, double cr,
                                          std::uint64_t seed, std::uint64_t stream) {
    qhde::RandomSource rng(seed, stream);
    const std::size_t dim = space.dim();

    std::vector<qhde::Vec> pop(n, qhde::Vec(dim));
    std::vector<double> fit(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < dim; ++j) {
            pop[i][j] = space.lower[j] + (space.upper[j] - space.lower[j]) * rng.uniform();
        }
        fit[i] = objective.evaluate_internal(pop[i]);
    }

    auto best_of = [&] {
        double best = fit[0];
        for (double v : fit) best = std::min(best, v);
        return best;
    };

    std::vector<double> trace;
    trace.push_back(best_of());

    for (std::size_t t = 1; t <= t_max; ++t) {
        std::vector<qhde::Vec> next_pop = pop;
        std::vector<double> next_fit = fit;
        for (std::size_t i = 0; i < n; ++i) {
            std::size_t r1, r2, r3;
            do { r1 = rng.uniform_below(n); } while (r1 == i);
            do { r2 = rng.uniform_below(n); } while (r2 == i || r2 == r1);
            do { r3 = rng.uniform_below(n); } while (r3 == i || r3 == r1 || r3 == r2);

            qhde::Vec mutant(dim);
            for (std::size_t j = 0; j < dim; ++j) {
                mutant[j] = pop[r1][j] + f_weight * (pop[r2][j] - pop[r3][j]);
                if (mutant[j] < space.lower[j]) mutant[j] = space.lower[j];
                if (mutant[j] > space.upper[j]) mutant[j] = space.upper[j];
            }

            const std::size_t j_rand = rng.uniform_below(dim);
            qhde::Vec trial(dim);
            for (std::size_t j = 0; j < dim; ++j) {
                trial[j] = (rng.uniform() < cr || j == j_rand) ? mutant[j] : pop[i][j];
            }

            const double trial_fit = objective.evaluate_internal(trial);
            if (trial_fit <= fit[i]) {
                next_pop[i] = trial;
                next_fit[i] = trial_fit;
            }
        }
        pop = std::move(next_pop);
        fit = std::move(next_fit);
        trace.push_back(std::min(trace.back(), best_of()));
    }
    return trace;
}

/// Determinant by Gaussian elimination with partial pivoting.
inline double determinant(qhde::Matrix m) {
    const std::size_t n = m.size();
    double det = 1.0;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < n; ++r) {
            if (std::abs(m[r][col]) > std::abs(m[pivot][col])) pivot = r;
        }
        if (m[pivot][col] == 0.0) return 0.0;
        if (pivot != col) {
            std::swap(m[pivot], m[col]);
            det = -det;
        }
        det *= m[col][col];
        for (std::size_t r = col + 1; r < n; ++r) {
            const double factor = m[r][col] / m[col][col];
            for (std::size_t c = col; c < n; ++c) m[r][c] -= factor * m[col][c];
        }
    }
    return det;
}

/// Exhaustive scan for the smallest prime p with (p - 3) / 2 >= s.
inline std::uint64_t smallest_prime_scan(std::size_t s) {
    auto prime = [](std::uint64_t v) {
        if (v < 2) return false;
        for (std::uint64_t d = 2; d * d <= v; ++d) {
            if (v % d == 0) return false;
        }
        return true;
    };
    for (std::uint64_t p = 2;; ++p) {
        if (prime(p) && p >= 3 && (p - 3) >= 2 * s) return p;
    }
}

}  // namespace oracles
