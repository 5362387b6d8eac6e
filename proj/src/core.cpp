#include "qhde/core.hpp"

#include <cmath>
#include <numbers>

namespace qhde {

SearchSpace::SearchSpace(Vec lo, Vec hi) : lower(std::move(lo)), upper(std::move(hi)) {
    validate();
}

SearchSpace SearchSpace::uniform(std::size_t dim, double lo, double hi) {
    return SearchSpace(Vec(dim, lo), Vec(dim, hi));
}

void SearchSpace::validate() const {
    if (lower.empty() || lower.size() != upper.size())
        throw ContractError("SearchSpace: bound vectors empty or of unequal length");
    for (std::size_t j = 0; j < lower.size(); ++j) {
        if (!(lower[j] < upper[j]))
            throw ContractError("SearchSpace: lower[" + std::to_string(j) +
                                "] must be strictly below upper[" + std::to_string(j) + "]");
    }
}

bool SearchSpace::contains(const Vec& position) const {
    if (position.size() != dim()) return false;
    for (std::size_t j = 0; j < dim(); ++j) {
        if (position[j] < lower[j] || position[j] > upper[j]) return false;
    }
    return true;
}

double CandidateSolution::fitness_value() const {
    if (!fitness) throw ContractError("CandidateSolution: fitness accessed before evaluation");
    return *fitness;
}

std::size_t Population::best_index() const {
    if (members.empty()) throw ContractError("Population: best_index on empty population");
    std::size_t best = 0;
    for (std::size_t i = 1; i < members.size(); ++i) {
        if (members[i].fitness_value() < members[best].fitness_value()) best = i;
    }
    return best;
}

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

}  // namespace

RandomSource::RandomSource(std::uint64_t seed, std::uint64_t stream)
    : seed_(seed), stream_(stream) {
    // Fold seed and stream into one well-mixed initial state so that
    // nearby (seed, stream) pairs yield unrelated sequences.
    std::uint64_t s = seed;
    std::uint64_t a = splitmix64(s);
    s = stream ^ 0x6A09E667F3BCC909ULL;
    std::uint64_t b = splitmix64(s);
    state_ = a ^ (b * 0xD1B54A32D192ED03ULL);
}

std::uint64_t RandomSource::next_u64() {
    return splitmix64(state_);
}

double RandomSource::uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

std::size_t RandomSource::uniform_below(std::size_t n) {
    if (n == 0) throw ContractError("RandomSource: uniform_below(0)");
    return static_cast<std::size_t>(next_u64() % static_cast<std::uint64_t>(n));
}

double RandomSource::normal() {
    // Box-Muller; 1 - u keeps the log argument in (0, 1].
    const double u1 = 1.0 - uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

double RandomSource::cauchy() {
    return std::tan(std::numbers::pi * (uniform() - 0.5));
}

double ObjectiveHandle::evaluate_internal(const Vec& position) const {
    double value = fn_(position);
    if (sense_ == Sense::Maximize) value = -value;
    if (std::isnan(value) || value == kInfiniteFitness) return kInfiniteFitness;
    if (value == -kInfiniteFitness) return kInfiniteFitness;  // failed eval, not a jackpot
    return value;
}

Vec clamp_to_bounds(const Vec& position, const SearchSpace& space) {
    Vec out = position;
    clamp_in_place(out, space);
    return out;
}

void clamp_in_place(Vec& position, const SearchSpace& space) {
    if (position.size() != space.dim())
        throw ContractError("clamp_to_bounds: position length does not match space dimension");
    for (std::size_t j = 0; j < position.size(); ++j) {
        if (position[j] < space.lower[j])
            position[j] = space.lower[j];
        else if (position[j] > space.upper[j])
            position[j] = space.upper[j];
    }
}

FitnessOrder compare_fitness(double a, double b) {
    if (std::isnan(a) || std::isnan(b))
        throw ContractError("compare_fitness: NaN fitness");
    if (a < b) return FitnessOrder::ABetter;
    if (b < a) return FitnessOrder::BBetter;
    return FitnessOrder::Tie;
}

}  // namespace qhde
