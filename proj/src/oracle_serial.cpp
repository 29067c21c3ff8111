#include "lucky/oracle.hpp"

#include <algorithm>

namespace lucky::oracle {

namespace {

// Advances `a` to the next tuple in odometer order, last entry fastest.
// Entry i ranges over [lo_i, hi[i]] where lo_i is 1, or a[i-1] when
// `nondecreasing` holds. Returns false after the last tuple.
bool advance(std::vector<Spot>& a, std::span<const int> hi, bool nondecreasing)
{
    for (std::size_t i = a.size(); i-- > 0;) {
        if (a[i] < hi[i]) {
            ++a[i];
            for (std::size_t j = i + 1; j < a.size(); ++j) a[j] = nondecreasing ? a[i] : 1;
            return true;
        }
    }
    return false;
}

}  // namespace

ClassificationTable classify_all_serial(StreetShape shape, Filter filter, std::uint64_t budget)
{
    const std::uint64_t estimate = estimated_iterations(shape, filter);
    if (estimate > budget) throw BudgetExceeded(estimate, budget);

    const bool nondecreasing = filter == Filter::kWeaklyIncreasing;
    const std::vector<int> hi(static_cast<std::size_t>(shape.cars()), shape.spots());
    std::vector<Spot> a(static_cast<std::size_t>(shape.cars()), 1);
    std::map<TableKey, std::uint64_t> entries;
    do {
        const auto result = park(PrefList(shape, a));
        if (const auto* p = std::get_if<Parking>(&result)) {
            if (filter == Filter::kIncreasingOutcome && !p->outcome.cars_increasing()) continue;
            ++entries[{p->lucky, p->outcome}];
        }
    } while (advance(a, hi, nondecreasing));
    return ClassificationTable(shape, filter, std::move(entries));
}

std::vector<PrefList> preimages(const OutcomeWord& word, const LuckySet& lucky)
{
    const auto spot_of = outcome_inverse_positions(word);
    std::vector<int> hi;
    for (const auto& [car, spot] : spot_of) hi.push_back(spot);
    std::vector<Spot> a(hi.size(), 1);
    std::vector<PrefList> out;
    do {
        PrefList prefs(word.shape(), a);
        const auto result = park(prefs);
        if (const auto* p = std::get_if<Parking>(&result); p && p->outcome == word && p->lucky == lucky)
            out.push_back(std::move(prefs));
    } while (advance(a, hi, false));
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace lucky::oracle
