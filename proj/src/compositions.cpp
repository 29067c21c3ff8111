#include "lucky/compositions.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>
#include <set>
#include <stdexcept>

#include "lucky/counting.hpp"
#include "lucky/outcome.hpp"

namespace lucky {

WeakComposition::WeakComposition(std::vector<int> parts) : parts_(std::move(parts))
{
    for (int p : parts_)
        if (p < 0) throw std::invalid_argument("weak composition with a negative part");
}

int WeakComposition::total() const noexcept
{
    return std::accumulate(parts_.begin(), parts_.end(), 0);
}

int WeakComposition::zeros() const noexcept
{
    return static_cast<int>(std::count(parts_.begin(), parts_.end(), 0));
}

Composition::Composition(std::vector<int> parts) : parts_(std::move(parts))
{
    if (parts_.empty()) throw std::invalid_argument("composition with no parts");
    for (int p : parts_)
        if (p < 1) throw std::invalid_argument("composition with a non-positive part");
}

int Composition::total() const noexcept
{
    return std::accumulate(parts_.begin(), parts_.end(), 0);
}

std::vector<int> Composition::partial_sums() const
{
    std::vector<int> s{0};
    for (int p : parts_) s.push_back(s.back() + p);
    return s;
}

LuckyGapTuple lucky_gap_tuple(int m, const LuckySet& lucky)
{
    require_lucky_set(lucky, m);
    const auto cars = lucky.cars();
    std::vector<int> parts;
    for (std::size_t j = 0; j + 1 < cars.size(); ++j) parts.push_back(cars[j + 1] - cars[j]);
    parts.push_back(m + 1 - cars.back());
    return Composition(std::move(parts));
}

std::vector<std::vector<GoodComposition>> good_compositions(const LuckyGapTuple& gaps, int max_bars)
{
    if (max_bars < 0) throw std::invalid_argument("negative number of bars");
    const auto& u = gaps.parts();
    const int interior = static_cast<int>(u.size()) - 1;
    const int max_x = std::min(max_bars, interior);
    std::vector<std::set<GoodComposition>> groups(static_cast<std::size_t>(max_x) + 1);

    // Bit b of `cut` set: a bar sits between u[b] and u[b+1].
    for (std::uint64_t cut = 0; cut < (std::uint64_t{1} << interior); ++cut) {
        const int x = std::popcount(cut);
        if (x > max_x) continue;
        std::vector<int> parts{u[0]};
        for (int b = 0; b < interior; ++b) {
            if (cut >> b & 1u)
                parts.push_back(u[b + 1]);
            else
                parts.back() += u[b + 1];
        }
        groups[x].insert(Composition(std::move(parts)));
    }

    std::vector<std::vector<GoodComposition>> out;
    for (auto& g : groups) out.emplace_back(g.begin(), g.end());
    return out;
}

OutcomeComposition composition_of_outcome(const OutcomeWord& word)
{
    if (!word.cars_increasing())
        throw std::invalid_argument("outcome " + word.to_string() + " does not list its cars in increasing order");
    std::vector<int> weak;
    std::vector<int> positive;
    int run = 0;
    for (Car c : word.slots()) {
        if (c != kEmpty) {
            ++run;
            continue;
        }
        if (run > 0) {
            weak.push_back(run);
            positive.push_back(run);
            run = 0;
        }
        weak.push_back(0);
    }
    if (run > 0) {
        weak.push_back(run);
        positive.push_back(run);
    }
    Composition parts(std::move(positive));
    auto sums = parts.partial_sums();
    return OutcomeComposition{WeakComposition(std::move(weak)), std::move(parts), std::move(sums)};
}

OutcomeWord outcome_from_weak_composition(const WeakComposition& weak, StreetShape shape)
{
    if (weak.total() != shape.cars() || weak.zeros() != shape.empties())
        throw std::invalid_argument("weak composition does not match " + std::to_string(shape.cars()) +
                                    " cars with " + std::to_string(shape.empties()) + " empty spots");
    const auto& parts = weak.parts();
    for (std::size_t i = 0; i + 1 < parts.size(); ++i)
        if (parts[i] > 0 && parts[i + 1] > 0)
            throw std::invalid_argument("adjacent positive parts do not describe maximal runs");

    std::vector<Car> slots;
    Car next = 1;
    for (int c : parts) {
        if (c == 0) slots.push_back(kEmpty);
        for (int y = 0; y < c; ++y) slots.push_back(next++);
    }
    return OutcomeWord(shape, std::move(slots));
}

std::map<Car, int> substreet_distance(const GoodComposition& p, int m, const LuckySet& lucky)
{
    require_lucky_set(lucky, m);
    if (p.total() != m)
        throw std::invalid_argument("composition sums to " + std::to_string(p.total()) + ", expected " +
                                    std::to_string(m));
    const auto s = p.partial_sums();
    const std::size_t k = p.size();
    for (std::size_t j = 0; j < k; ++j)
        if (!lucky.contains(s[j] + 1))
            throw std::invalid_argument("part starting at car " + std::to_string(s[j] + 1) +
                                        " does not start at a lucky car");

    std::map<Car, int> d;
    for (Car i : lucky.cars()) {
        // Part j holds cars s[j]+1 .. s[j+1].
        const auto above = std::lower_bound(s.begin() + 1, s.end(), i);
        const std::size_t j = static_cast<std::size_t>(above - s.begin()) - 1;
        if (i == s[j] + 1)
            d[i] = 1;
        else if (i < s[j + 1])
            d[i] = i - (s[j] + 1);
        else if (i == m)
            d[i] = m - (s[k - 1] + 1);
        else
            d[i] = i - (s[j] + 1);   // last car of an interior part
    }
    return d;
}

std::vector<OutcomeWord> enumerate_increasing_outcomes(StreetShape shape, const LuckySet& lucky)
{
    require_lucky_set(lucky, shape.cars());
    std::vector<OutcomeWord> out;
    std::vector<Car> word;
    auto grow = [&](auto& self, Car next, int empties_left) -> void {
        if (static_cast<int>(word.size()) == shape.spots()) {
            out.emplace_back(shape, word);
            return;
        }
        if (next <= shape.cars() && (lucky.contains(next) || (!word.empty() && word.back() != kEmpty))) {
            word.push_back(next);
            self(self, next + 1, empties_left);
            word.pop_back();
        }
        if (empties_left > 0) {
            word.push_back(kEmpty);
            self(self, next, empties_left - 1);
            word.pop_back();
        }
    };
    grow(grow, 1, shape.empties());
    return out;
}

BigInt count_weakly_increasing_outcomes(StreetShape shape, const LuckySet& lucky)
{
    require_lucky_set(lucky, shape.cars());
    return binomial(shape.empties() + static_cast<int>(lucky.size()), shape.empties());
}

namespace {

BigInt per_outcome_factor(const GoodComposition& p, int m, const LuckySet& lucky)
{
    BigInt numerator = 1;
    for (int part : p.parts()) numerator *= factorial(part - 1);
    BigInt denominator = 1;
    for (const auto& [car, d] : substreet_distance(p, m, lucky)) denominator *= d;
    if (denominator == 0 || numerator % denominator != 0)
        throw std::logic_error("per-outcome factor is not an exact integer for composition of " +
                               std::to_string(m) + " with lucky set " + lucky.to_string());
    return numerator / denominator;
}

}  // namespace

BigInt count_weakly_increasing_per_outcome(const OutcomeWord& word, const LuckySet& lucky)
{
    if (!is_legal_outcome(word, lucky))
        throw std::invalid_argument("outcome " + word.to_string() + " is not legal for lucky set " +
                                    lucky.to_string());
    const auto comp = composition_of_outcome(word);
    return per_outcome_factor(comp.parts, word.shape().cars(), lucky);
}

std::vector<CompositionTerm> weakly_increasing_terms(StreetShape shape, const LuckySet& lucky)
{
    const int m = shape.cars();
    const int free = shape.empties();
    const auto groups = good_compositions(lucky_gap_tuple(m, lucky), free);
    std::vector<CompositionTerm> terms;
    for (std::size_t x = 0; x < groups.size(); ++x) {
        const BigInt outcomes = binomial(free + 1, free - static_cast<int>(x));
        for (const auto& p : groups[x]) {
            BigInt per = per_outcome_factor(p, m, lucky);
            BigInt contribution = outcomes * per;
            terms.push_back(CompositionTerm{p, static_cast<int>(x), outcomes, std::move(per), std::move(contribution)});
        }
    }
    return terms;
}

BigInt count_weakly_increasing_lpf_mn(StreetShape shape, const LuckySet& lucky)
{
    BigInt total = 0;
    for (const auto& t : weakly_increasing_terms(shape, lucky)) total += t.contribution;
    return total;
}

BigInt count_weakly_increasing_lpf_mn_by_outcomes(StreetShape shape, const LuckySet& lucky)
{
    BigInt total = 0;
    for (const auto& w : enumerate_increasing_outcomes(shape, lucky)) total += count_per_outcome(w, lucky);
    return total;
}

BigInt count_outcomes_first_k_lucky_mn(StreetShape shape, int k, GapBound bound)
{
    const int m = shape.cars();
    const int n = shape.spots();
    if (k < 1 || k > m) throw std::invalid_argument("count_outcomes_first_k_lucky_mn needs 1 <= k <= m");
    const BigInt arrangements = factorial(k);
    const int unlucky = m - k;
    const int widen = bound == GapBound::kGapLength ? -1 : 1;

    BigInt total = 0;
    std::vector<int> spots(static_cast<std::size_t>(k));
    std::vector<int> caps(static_cast<std::size_t>(k));
    std::vector<int> fill(static_cast<std::size_t>(k));

    auto distribute = [&](auto& self, int index, int left) -> void {
        if (index == k) {
            if (left == 0) total += arrangements * multinomial(unlucky, fill);
            return;
        }
        for (int t = 0; t <= std::min(caps[index], left); ++t) {
            fill[index] = t;
            self(self, index + 1, left - t);
        }
    };
    auto choose = [&](auto& self, int index, int from) -> void {
        if (index == k) {
            for (int i = 0; i + 1 < k; ++i) caps[i] = spots[i + 1] - spots[i] + widen;
            caps[k - 1] = n - spots[k - 1];
            distribute(distribute, 0, unlucky);
            return;
        }
        const int last = index == 0 ? std::min(n - m + 1, n - k + 1) : n - (k - index) + 1;
        for (int s = from; s <= last; ++s) {
            spots[index] = s;
            self(self, index + 1, s + 1);
        }
    };
    choose(choose, 0, 1);
    return total;
}

}  // namespace lucky
