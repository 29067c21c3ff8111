#include "lucky/outcome.hpp"

#include <omp.h>

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace lucky {

namespace detail {

OutcomeWalker::OutcomeWalker(StreetShape shape, const LuckySet& lucky)
    : shape_(shape),
      is_lucky_(static_cast<std::size_t>(shape.cars()) + 1, 0),
      used_(static_cast<std::size_t>(shape.cars()) + 1, 0),
      empties_left_(shape.empties())
{
    require_lucky_set(lucky, shape.cars());
    for (Car c : lucky.cars()) is_lucky_[c] = 1;
    lucky_left_ = static_cast<int>(lucky.size());
    word_.reserve(static_cast<std::size_t>(shape.spots()));
    product_.reserve(static_cast<std::size_t>(shape.spots()) + 1);
    product_.push_back(1);
}

bool OutcomeWalker::place(Car c)
{
    std::uint64_t product = product_.back();
    if (c == kEmpty) {
        if (empties_left_ == 0) return false;
        // A car right after an Empty must be lucky; with none left and cars
        // still to place, this branch can never complete.
        const int cars_placed = static_cast<int>(word_.size()) - (shape_.empties() - empties_left_);
        if (lucky_left_ == 0 && cars_placed < shape_.cars()) return false;
        --empties_left_;
    } else {
        if (used_[c]) return false;
        if (!is_lucky_[c]) {
            // Unlucky: the slot to the left must hold a smaller car.
            if (word_.empty() || word_.back() == kEmpty || word_.back() > c) return false;
            std::uint64_t ell = 0;
            for (auto it = word_.rbegin(); it != word_.rend() && *it != kEmpty && *it < c; ++it) ++ell;
            if (product > std::numeric_limits<std::uint64_t>::max() / ell) {
                saturated_ = true;
                product = std::numeric_limits<std::uint64_t>::max();
            } else {
                product *= ell;
            }
        } else {
            --lucky_left_;
        }
        used_[c] = 1;
    }
    word_.push_back(c);
    product_.push_back(product);
    return true;
}

void OutcomeWalker::unplace()
{
    const Car c = word_.back();
    word_.pop_back();
    product_.pop_back();
    if (c == kEmpty) {
        ++empties_left_;
    } else {
        used_[c] = 0;
        if (is_lucky_[c]) ++lucky_left_;
    }
}

std::vector<std::vector<Car>> OutcomeWalker::prefixes(int depth)
{
    std::vector<std::vector<Car>> out;
    depth = std::min(depth, shape_.spots());
    auto grow = [&](auto& self) -> void {
        if (static_cast<int>(word_.size()) == depth) {
            out.push_back(word_);
            return;
        }
        for (Car c = 1; c <= shape_.cars(); ++c) {
            if (used_[c] || !place(c)) continue;
            self(self);
            unplace();
        }
        if (place(kEmpty)) {
            self(self);
            unplace();
        }
    };
    grow(grow);
    return out;
}

}  // namespace detail

DescentData descent_data(const OutcomeWord& word)
{
    DescentData d;
    Car prev = kEmpty;  // the prepended Empty
    for (Spot s = 1; s <= word.shape().spots(); ++s) {
        const Car c = word.at(s);
        if (c != kEmpty && (prev == kEmpty || prev > c)) {
            d.descents.push_back(s);
            d.descent_bottoms.push_back(c);
        }
        prev = c;
    }
    std::sort(d.descent_bottoms.begin(), d.descent_bottoms.end());
    return d;
}

EllProfile ell_profile(const OutcomeWord& word)
{
    const auto slots = word.slots();
    std::vector<int> by_car(static_cast<std::size_t>(word.shape().cars()) + 1, 0);
    for (std::size_t i = 0; i < slots.size(); ++i) {
        const Car c = slots[i];
        if (c == kEmpty) continue;
        int run = 0;
        for (std::size_t j = i; j > 0 && slots[j - 1] != kEmpty && slots[j - 1] < c; --j) ++run;
        by_car[c] = run;
    }
    return EllProfile(std::move(by_car));
}

bool is_legal_outcome(const OutcomeWord& word, const LuckySet& lucky)
{
    if (!lucky.is_lucky_set_for(word.shape().cars())) return false;
    Car prev = kEmpty;
    for (Car c : word.slots()) {
        if (c != kEmpty && !lucky.contains(c) && (prev == kEmpty || prev > c)) return false;
        prev = c;
    }
    return true;
}

void for_each_outcome(StreetShape shape, const LuckySet& lucky, const OutcomeVisitor& visit)
{
    detail::OutcomeWalker walker(shape, lucky);
    walker.walk({}, [&](std::span<const Car> w, std::uint64_t) { visit(w); });
}

std::vector<OutcomeWord> enumerate_outcomes_serial(StreetShape shape, const LuckySet& lucky)
{
    std::vector<OutcomeWord> out;
    for_each_outcome(shape, lucky, [&](std::span<const Car> w) {
        out.emplace_back(shape, std::vector<Car>(w.begin(), w.end()));
    });
    return out;
}

std::vector<OutcomeWord> enumerate_outcomes(StreetShape shape, const LuckySet& lucky, int threads)
{
    const auto prefixes = detail::OutcomeWalker(shape, lucky).prefixes(2);
    std::vector<std::vector<OutcomeWord>> parts(prefixes.size());
    const int nthreads = threads > 0 ? threads : omp_get_max_threads();

#pragma omp parallel for schedule(dynamic) num_threads(nthreads)
    for (std::size_t i = 0; i < prefixes.size(); ++i) {
        detail::OutcomeWalker walker(shape, lucky);
        walker.walk(prefixes[i], [&](std::span<const Car> w, std::uint64_t) {
            parts[i].emplace_back(shape, std::vector<Car>(w.begin(), w.end()));
        });
    }

    std::vector<OutcomeWord> out;
    for (auto& part : parts)
        for (auto& w : part) out.push_back(std::move(w));
    return out;
}

PrefList construct_witness(const OutcomeWord& word, const LuckySet& lucky)
{
    if (!is_legal_outcome(word, lucky))
        throw std::invalid_argument("no parking function has outcome " + word.to_string() + " with lucky set " +
                                    lucky.to_string());
    const int m = word.shape().cars();
    const auto spot_of = outcome_inverse_positions(word);
    std::vector<Spot> prefs(static_cast<std::size_t>(m));
    for (Car car = 1; car <= m; ++car) {
        const Spot spot = spot_of.at(car);
        if (lucky.contains(car)) {
            prefs[car - 1] = spot;
            continue;
        }
        // Legality guarantees a car sits immediately to the left.
        const Car left = word.at(spot - 1);
        if (left == kEmpty || (lucky.contains(left) && left > car))
            throw std::logic_error("witness construction reached an impossible case at car " +
                                   std::to_string(car));
        prefs[car - 1] = spot_of.at(left);
    }
    return PrefList(word.shape(), std::move(prefs));
}

}  // namespace lucky
