#pragma once

// Exhaustive ground truth: park every preference list of a street, tally the
// (lucky set, outcome) pairs, and compare the closed forms against the tally.

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lucky/bigint.hpp"
#include "lucky/street.hpp"

namespace lucky::oracle {

enum class Filter {
    kAll,                // every list in [n]^m
    kWeaklyIncreasing,   // nondecreasing lists only, generated directly
    kIncreasingOutcome,  // lists whose outcome shows the cars in increasing order
};

std::string to_string(Filter f);

/// Thrown by classify_all when the sweep would exceed the iteration budget.
class BudgetExceeded : public std::runtime_error {
public:
    BudgetExceeded(std::uint64_t estimate, std::uint64_t budget);

    std::uint64_t estimate() const noexcept { return estimate_; }
    std::uint64_t budget() const noexcept { return budget_; }

private:
    std::uint64_t estimate_;
    std::uint64_t budget_;
};

struct ClassifyOptions {
    int threads = 0;                        // 0: OpenMP default
    std::uint64_t budget = 1'000'000'000;   // preference lists
};

/// Preference lists the sweep visits before pruning: n^m for kAll and
/// kIncreasingOutcome, C(n+m-1, m) for kWeaklyIncreasing. Saturates at UINT64_MAX.
std::uint64_t estimated_iterations(StreetShape shape, Filter filter);

using TableKey = std::pair<LuckySet, OutcomeWord>;

class ClassificationTable {
public:
    ClassificationTable(StreetShape shape, Filter filter, std::map<TableKey, std::uint64_t> entries);

    const StreetShape& shape() const noexcept { return shape_; }
    Filter filter() const noexcept { return filter_; }
    const std::map<TableKey, std::uint64_t>& entries() const noexcept { return entries_; }

    /// Number of preference lists that parked.
    BigInt total() const;

    /// Lists with lucky set exactly `lucky`.
    BigInt marginal(const LuckySet& lucky) const;
    std::uint64_t count(const LuckySet& lucky, const OutcomeWord& word) const;

    /// Lucky sets that occur, sorted.
    std::vector<LuckySet> lucky_sets() const;
    std::map<LuckySet, BigInt> by_lucky_set() const;

    /// Index k holds the number of lists with exactly k lucky cars (k = 0..m).
    std::vector<BigInt> lucky_size_histogram() const;

    /// Outcomes observed with lucky set `lucky`, sorted.
    std::vector<OutcomeWord> outcomes_for(const LuckySet& lucky) const;

    /// Sorted, byte-stable JSON.
    std::string to_json() const;

    friend bool operator==(const ClassificationTable&, const ClassificationTable&) = default;

private:
    StreetShape shape_;
    Filter filter_;
    std::map<TableKey, std::uint64_t> entries_;
};

/// Parallel sweep over disjoint leading-preference partitions. The result does
/// not depend on the thread count. Requires n <= 25.
ClassificationTable classify_all(StreetShape shape, Filter filter = Filter::kAll, ClassifyOptions options = {});

/// Single-threaded odometer over the same lists, parking each with lucky::park.
ClassificationTable classify_all_serial(StreetShape shape, Filter filter = Filter::kAll,
                                        std::uint64_t budget = ClassifyOptions{}.budget);

/// Every preference list that parks into `word` with lucky set exactly
/// `lucky`, sorted. Searches the box prod_car [1, spot(car)].
std::vector<PrefList> preimages(const OutcomeWord& word, const LuckySet& lucky);

enum class Formula {
    kCountLpf,                  // ell-product sum vs |LPF(I)|
    kCatalanProduct,            // square, weakly increasing lists
    kFirstKLucky,               // square, |O_n({1..k})|
    kFirstKLuckyMn,             // |O_{m,n}({1..k})| with gap capacity j_{i+1}-j_i-1
    kFirstKLuckyMnStatedBound,  // same sum with capacity j_{i+1}-j_i+1
    kGesselSeo,                 // square, q^k coefficients vs lucky-count histogram
    kOutcomeSets,               // enumerate_outcomes vs observed outcomes, per I
    kIncreasingOutcomeCount,    // C(n-m+|I|, n-m) vs observed increasing outcomes
    kIncreasingOutcomeProduct,  // composition sum and per-outcome factors vs increasing-outcome lists
    kWeaklyIncreasingTheorem,   // composition sum vs weakly increasing lists
};

std::string to_string(Formula f);
std::optional<Formula> parse_formula(std::string_view name);
std::vector<Formula> all_formulas();

/// Whether the formula is defined for this shape (some are square-only).
bool applies_to(Formula f, StreetShape shape);

/// The table filter a formula is checked against.
Filter filter_for(Formula f);

struct Mismatch {
    std::string subject;   // e.g. "I={1,4}", "q^3", "k=2", "I={1} outcome 12X"
    std::string oracle;
    std::string formula;
    std::string witness;   // a preference list or outcome showing the difference
};

struct AgreementReport {
    Formula formula;
    StreetShape shape;
    std::size_t checked = 0;
    std::vector<Mismatch> mismatches;

    bool agrees() const noexcept { return mismatches.empty(); }
};

/// Compares `f` against `table`, whose filter must equal filter_for(f).
AgreementReport check_formula_agreement(const ClassificationTable& table, Formula f, int threads = 0);

/// Builds the table the formula needs, then compares.
AgreementReport check_formula_agreement(StreetShape shape, Formula f, ClassifyOptions options = {});

}  // namespace lucky::oracle
