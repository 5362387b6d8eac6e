#pragma once

// Shared domain types for the QHDE optimizer: search spaces, candidate
// solutions, the seeded randomness contract, and the fitness-sense
// convention. Everything optimizes in minimization sense internally;
// maximize-sense objectives are negated at the ObjectiveHandle boundary.

#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace qhde {

using Vec = std::vector<double>;
using Matrix = std::vector<Vec>;

/// Violated precondition or type invariant (caller bug).
class ContractError : public std::logic_error {
  public:
    using std::logic_error::logic_error;
};

/// Invalid algorithm or problem configuration.
class ConfigError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

constexpr double kInfiniteFitness = std::numeric_limits<double>::infinity();

/// Box-constrained search domain: per-dimension lower/upper bounds.
struct SearchSpace {
    Vec lower;
    Vec upper;

    SearchSpace() = default;
    SearchSpace(Vec lo, Vec hi);

    /// All dimensions share the same [lo, hi] interval.
    static SearchSpace uniform(std::size_t dim, double lo, double hi);

    std::size_t dim() const { return lower.size(); }
    double range(std::size_t j) const { return upper[j] - lower[j]; }

    bool contains(const Vec& position) const;

    /// Throws ContractError unless lower[j] < upper[j] for every j.
    void validate() const;
};

/// One member of the population: a position plus its cached fitness
/// (internal minimization sense). Fitness is unset until evaluated.
struct CandidateSolution {
    Vec position;
    std::optional<double> fitness;

    CandidateSolution() = default;
    explicit CandidateSolution(Vec pos) : position(std::move(pos)) {}
    CandidateSolution(Vec pos, double fit) : position(std::move(pos)), fitness(fit) {}

    /// Cached fitness; throws ContractError when unset.
    double fitness_value() const;
};

struct Population {
    std::vector<CandidateSolution> members;
    std::size_t generation = 0;

    std::size_t size() const { return members.size(); }

    /// Index of the best (lowest-fitness) member, ties broken by lower index.
    std::size_t best_index() const;
};

/// Deterministic, seedable random source. Identical (seed, stream) pairs
/// produce identical draw sequences; replicates own distinct streams.
///
/// All transforms are fixed here rather than delegated to the standard
/// distributions, whose algorithms are implementation-defined:
///   uniform:  53-bit mantissa draw in [0, 1)
///   integers: modulo reduction of the raw 64-bit output
///   normal:   Box-Muller, exactly two uniform draws per call
///   cauchy:   tan(pi * (u - 1/2)), one uniform draw per call
class RandomSource {
  public:
    explicit RandomSource(std::uint64_t seed, std::uint64_t stream = 0);

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream() const { return stream_; }

    /// Uniform draw in [0, 1).
    double uniform();

    /// Uniform integer in [0, n); n must be positive.
    std::size_t uniform_below(std::size_t n);

    /// Standard normal draw (Box-Muller, no spare caching).
    double normal();

    /// Standard Cauchy draw.
    double cauchy();

  private:
    std::uint64_t state_;  // SplitMix64 state
    std::uint64_t seed_;
    std::uint64_t stream_;

    std::uint64_t next_u64();
};

enum class Sense { Minimize, Maximize };

/// A pure objective plus its sense. The optimizer sees only the internal
/// (minimization) value; reported metrics use the raw problem sense.
/// Non-finite evaluations map to a +infinity sentinel so a single bad
/// candidate cannot abort a run.
class ObjectiveHandle {
  public:
    ObjectiveHandle() = default;
    ObjectiveHandle(std::function<double(const Vec&)> fn, Sense sense = Sense::Minimize)
        : fn_(std::move(fn)), sense_(sense) {}

    Sense sense() const { return sense_; }

    /// Raw problem-sense value (may be non-finite).
    double evaluate_raw(const Vec& position) const { return fn_(position); }

    /// Internal minimization-sense value; non-finite results become +inf.
    double evaluate_internal(const Vec& position) const;

    /// Maps an internal fitness back to the problem sense.
    double to_problem_sense(double internal_fitness) const {
        return sense_ == Sense::Maximize ? -internal_fitness : internal_fitness;
    }

  private:
    std::function<double(const Vec&)> fn_;
    Sense sense_ = Sense::Minimize;
};

/// Componentwise clamp of `position` into `space`; in-bounds components
/// pass through unchanged. Throws ContractError on length mismatch.
Vec clamp_to_bounds(const Vec& position, const SearchSpace& space);

/// In-place variant used by the generation loop.
void clamp_in_place(Vec& position, const SearchSpace& space);

enum class FitnessOrder { ABetter, BBetter, Tie };

/// Internal-sense comparison. +inf sentinels are legal; NaN is a contract
/// violation. Ties are reported as Tie; callers keep the incumbent
/// (second argument) on ties unless their operation says otherwise.
FitnessOrder compare_fitness(double a, double b);

}  // namespace qhde
