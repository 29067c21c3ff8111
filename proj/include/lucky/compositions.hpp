#pragma once

// Counting for m cars on n >= m spots: bounded weak compositions for the
// first-k-lucky outcome count, and the composition machinery behind outcomes
// whose cars appear in increasing order.

#include <map>
#include <vector>

#include "lucky/bigint.hpp"
#include "lucky/street.hpp"

namespace lucky {

/// Nonnegative parts.
class WeakComposition {
public:
    explicit WeakComposition(std::vector<int> parts);

    const std::vector<int>& parts() const noexcept { return parts_; }
    int total() const noexcept;
    int zeros() const noexcept;

    friend bool operator==(const WeakComposition&, const WeakComposition&) = default;
    friend auto operator<=>(const WeakComposition&, const WeakComposition&) = default;

private:
    std::vector<int> parts_;
};

/// Positive parts. Used for the gap tuple of a lucky set, for good
/// compositions, and for the occupied sub-street lengths of an outcome.
class Composition {
public:
    explicit Composition(std::vector<int> parts);

    const std::vector<int>& parts() const noexcept { return parts_; }
    std::size_t size() const noexcept { return parts_.size(); }
    int total() const noexcept;

    /// (0, p1, p1+p2, ..., total)
    std::vector<int> partial_sums() const;

    friend bool operator==(const Composition&, const Composition&) = default;
    friend auto operator<=>(const Composition&, const Composition&) = default;

private:
    std::vector<int> parts_;
};

using LuckyGapTuple = Composition;
using GoodComposition = Composition;

/// (i2-i1, ..., ik-i(k-1), m+1-ik) for sorted I = {1 = i1 < ... < ik}.
LuckyGapTuple lucky_gap_tuple(int m, const LuckySet& lucky);

/// Tuples obtained by placing up to `max_bars` bars between entries of `gaps`
/// and summing inside each block. Result[x] holds those with x+1 parts
/// (x = 0 .. min(max_bars, |gaps|-1)), each group sorted and duplicate-free.
std::vector<std::vector<GoodComposition>> good_compositions(const LuckyGapTuple& gaps, int max_bars);

struct OutcomeComposition {
    WeakComposition weak;        // run lengths with 0 at each Empty
    GoodComposition parts;       // positive entries of `weak`
    std::vector<int> partial_sums;
};

/// Throws std::invalid_argument unless the cars of `word` are increasing.
OutcomeComposition composition_of_outcome(const OutcomeWord& word);

/// Inverse of composition_of_outcome. Requires the positive parts to sum to
/// m, exactly n-m zeros, and no two adjacent positive parts.
OutcomeWord outcome_from_weak_composition(const WeakComposition& weak, StreetShape shape);

/// d_p: for each lucky car, 1 if it starts a part of p, otherwise its
/// distance from the first car of the part holding it.
/// Throws std::invalid_argument if p does not sum to m or some part of p does
/// not start at a lucky car.
std::map<Car, int> substreet_distance(const GoodComposition& p, int m, const LuckySet& lucky);

/// Every outcome for `lucky` whose cars appear in increasing order, sorted.
/// Built by direct backtracking, independent of the composition route.
std::vector<OutcomeWord> enumerate_increasing_outcomes(StreetShape shape, const LuckySet& lucky);

/// C(n-m+|I|, n-m).
BigInt count_weakly_increasing_outcomes(StreetShape shape, const LuckySet& lucky);

/// prod (p_i - 1)! / prod_{i in I} d_p(i) for the composition p of `word`.
/// Equals the number of parking functions with this outcome and lucky set.
/// Throws std::logic_error if the division is not exact.
BigInt count_weakly_increasing_per_outcome(const OutcomeWord& word, const LuckySet& lucky);

struct CompositionTerm {
    GoodComposition parts;
    int interior_bars;           // x; parts.size() == x + 1
    BigInt outcomes;             // C(n-m+1, n-m-x)
    BigInt per_outcome;          // prod (p_i - 1)! / prod d_p
    BigInt contribution;         // outcomes * per_outcome
};

/// One term per good composition of the lucky gap tuple, grouped by x.
std::vector<CompositionTerm> weakly_increasing_terms(StreetShape shape, const LuckySet& lucky);

/// Sum over good compositions: sum_x sum_{p in S_x} C(n-m+1, n-m-x) * per-outcome factor.
///
/// This counts the parking functions with lucky set I whose outcome lists the
/// cars in increasing order. It is not the number of weakly increasing
/// preference lists with lucky set I: those are far fewer once an occupied
/// block holds more than two cars (280 versus 10992 at m=9, n=11, I={1,4,5}).
BigInt count_weakly_increasing_lpf_mn(StreetShape shape, const LuckySet& lucky);

/// Same quantity as the sum over increasing outcomes of the ell product.
BigInt count_weakly_increasing_lpf_mn_by_outcomes(StreetShape shape, const LuckySet& lucky);

/// Capacity of the i-th gap in the first-k-lucky outcome count.
enum class GapBound {
    kGapLength,      // t_i <= j_{i+1} - j_i - 1, t_k <= n - j_k
    kStatedPlusOne,  // t_i <= j_{i+1} - j_i + 1, t_k <= n - j_k
};

/// Sum over k-subsets J with j1 <= n-m+1 and weak compositions t of m-k
/// bounded by the gap capacities of k! * multinomial(m-k; t).
/// kGapLength reproduces |O_{m,n}({1..k})|; kStatedPlusOne overcounts.
BigInt count_outcomes_first_k_lucky_mn(StreetShape shape, int k, GapBound bound = GapBound::kGapLength);

}  // namespace lucky
