#pragma once

// Descent bottoms, the ell statistic, legality of (outcome, lucky set) pairs,
// outcome enumeration and witness construction.
//
// The square and rectangular cases share one code path: a virtual Empty slot
// is prepended to every word, and Empty compares greater than every car.

#include <cstdint>
#include <functional>
#include <vector>

#include "lucky/street.hpp"

namespace lucky {

struct DescentData {
    std::vector<Spot> descents;        // ascending
    std::vector<Car> descent_bottoms;  // ascending
};

DescentData descent_data(const OutcomeWord& word);

/// ell(car): length of the maximal block of cars smaller than `car` that ends
/// immediately left of its spot. An Empty slot ends the block.
class EllProfile {
public:
    explicit EllProfile(std::vector<int> by_car) : by_car_(std::move(by_car)) {}

    int of(Car car) const { return by_car_.at(static_cast<std::size_t>(car)); }
    int cars() const noexcept { return static_cast<int>(by_car_.size()) - 1; }

private:
    std::vector<int> by_car_;  // index 0 unused
};

EllProfile ell_profile(const OutcomeWord& word);

/// True iff `word` is the outcome of some parking function whose lucky set is
/// exactly `lucky`. Returns false when `lucky` is not a lucky set for the street.
bool is_legal_outcome(const OutcomeWord& word, const LuckySet& lucky);

/// Visitor receives each legal word in lexicographic order (Empty last).
/// The span is only valid for the duration of the call.
using OutcomeVisitor = std::function<void(std::span<const Car>)>;

/// Streams every legal outcome for `lucky` by backtracking. Serial.
void for_each_outcome(StreetShape shape, const LuckySet& lucky, const OutcomeVisitor& visit);

/// All legal outcomes, sorted. `threads` = 0 uses the OpenMP default.
std::vector<OutcomeWord> enumerate_outcomes(StreetShape shape, const LuckySet& lucky, int threads = 0);

/// Reference implementation of enumerate_outcomes with no parallelism.
std::vector<OutcomeWord> enumerate_outcomes_serial(StreetShape shape, const LuckySet& lucky);

/// A preference list that parks into `word` with lucky set exactly `lucky`.
/// Lucky cars prefer their own spot; an unlucky car prefers the spot of the car
/// parked immediately to its left. Throws std::invalid_argument on illegal pairs.
PrefList construct_witness(const OutcomeWord& word, const LuckySet& lucky);

namespace detail {

/// Backtracking state shared by enumeration and the streamed counts.
/// Tracks, per placed slot, the product of ell over unlucky cars so far.
class OutcomeWalker {
public:
    OutcomeWalker(StreetShape shape, const LuckySet& lucky);

    /// All legal prefixes of the given depth, in lexicographic order.
    std::vector<std::vector<Car>> prefixes(int depth);

    /// Visits completions of `prefix` (which must be legal) in order. The
    /// callback gets the finished word and the product of ell over its unlucky
    /// cars, saturated at UINT64_MAX (callers check `saturated`).
    template <class Fn>
    void walk(std::span<const Car> prefix, Fn&& fn);

    bool saturated() const noexcept { return saturated_; }

private:
    bool place(Car c);     // returns false if the slot is illegal here
    void unplace();
    template <class Fn>
    void recurse(Fn& fn);

    StreetShape shape_;
    std::vector<char> is_lucky_;
    std::vector<char> used_;
    std::vector<Car> word_;
    std::vector<std::uint64_t> product_;   // product_[d] after d slots
    int empties_left_ = 0;
    int lucky_left_ = 0;
    bool saturated_ = false;
};

}  // namespace detail

}  // namespace lucky

#include "lucky/detail/outcome_walker.ipp"
