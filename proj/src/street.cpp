#include "lucky/street.hpp"

#include <algorithm>
#include <charconv>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace lucky {

namespace {

std::string join(std::span<const int> values, char sep)
{
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out += sep;
        out += std::to_string(values[i]);
    }
    return out;
}

// Next free spot at or after a given spot, with path compression.
// Index spots+1 is a sentinel meaning "fell off the end of the street".
class FreeSpots {
public:
    explicit FreeSpots(int spots) : next_(static_cast<std::size_t>(spots) + 2)
    {
        std::iota(next_.begin(), next_.end(), 0);
    }

    int find(int spot)
    {
        int root = spot;
        while (next_[root] != root) root = next_[root];
        while (next_[spot] != root) {
            int up = next_[spot];
            next_[spot] = root;
            spot = up;
        }
        return root;
    }

    void occupy(int spot) { next_[spot] = spot + 1; }

private:
    std::vector<int> next_;
};

}  // namespace

StreetShape::StreetShape(int cars, int spots) : cars_(cars), spots_(spots)
{
    if (cars < 1 || spots < cars)
        throw std::invalid_argument("street shape needs 1 <= cars <= spots, got cars=" +
                                    std::to_string(cars) + " spots=" + std::to_string(spots));
}

PrefList::PrefList(StreetShape shape, std::vector<Spot> prefs) : shape_(shape), prefs_(std::move(prefs))
{
    if (static_cast<int>(prefs_.size()) != shape_.cars())
        throw std::invalid_argument("preference list length " + std::to_string(prefs_.size()) +
                                    " does not match " + std::to_string(shape_.cars()) + " cars");
    for (Spot a : prefs_)
        if (a < 1 || a > shape_.spots())
            throw std::invalid_argument("preference " + std::to_string(a) + " outside spots 1.." +
                                        std::to_string(shape_.spots()));
}

PrefList::PrefList(std::vector<Spot> prefs)
    : PrefList(StreetShape::square(static_cast<int>(prefs.size())), prefs)
{
}

bool PrefList::is_weakly_increasing() const noexcept
{
    return std::is_sorted(prefs_.begin(), prefs_.end());
}

std::string PrefList::to_string() const
{
    return "(" + join(prefs_, ',') + ")";
}

OutcomeWord::OutcomeWord(StreetShape shape, std::vector<Car> slots) : shape_(shape), slots_(std::move(slots))
{
    if (static_cast<int>(slots_.size()) != shape_.spots())
        throw std::invalid_argument("outcome word has " + std::to_string(slots_.size()) + " slots, expected " +
                                    std::to_string(shape_.spots()));
    std::vector<char> seen(static_cast<std::size_t>(shape_.cars()) + 1, 0);
    int empties = 0;
    for (Car c : slots_) {
        if (c == kEmpty) {
            ++empties;
            continue;
        }
        if (c < 1 || c > shape_.cars() || seen[c])
            throw std::invalid_argument("outcome word is not an arrangement of cars 1.." +
                                        std::to_string(shape_.cars()));
        seen[c] = 1;
    }
    if (empties != shape_.empties())
        throw std::invalid_argument("outcome word has the wrong number of empty spots");
}

OutcomeWord OutcomeWord::parse(std::string_view text)
{
    std::vector<Car> slots;
    auto number = [&](std::string_view digits) {
        int value = 0;
        auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
        if (ec != std::errc{} || ptr != digits.data() + digits.size() || value < 1)
            throw std::invalid_argument("bad car value '" + std::string(digits) + "' in outcome word");
        return value;
    };

    if (text.find(',') != std::string_view::npos) {
        std::size_t start = 0;
        while (start <= text.size()) {
            std::size_t end = text.find(',', start);
            if (end == std::string_view::npos) end = text.size();
            std::string_view tok = text.substr(start, end - start);
            slots.push_back(tok == "X" || tok == "x" ? kEmpty : number(tok));
            start = end + 1;
        }
    } else {
        for (std::size_t i = 0; i < text.size(); ++i) {
            char ch = text[i];
            if (ch == 'X' || ch == 'x') {
                slots.push_back(kEmpty);
            } else if (ch == '(') {
                std::size_t close = text.find(')', i);
                if (close == std::string_view::npos)
                    throw std::invalid_argument("unbalanced '(' in outcome word");
                slots.push_back(number(text.substr(i + 1, close - i - 1)));
                i = close;
            } else {
                slots.push_back(number(text.substr(i, 1)));
            }
        }
    }
    const int cars = static_cast<int>(std::count_if(slots.begin(), slots.end(), [](Car c) { return c != kEmpty; }));
    const StreetShape shape(cars, static_cast<int>(slots.size()));
    return OutcomeWord(shape, std::move(slots));
}

OutcomeWord OutcomeWord::identity(int n)
{
    std::vector<Car> slots(static_cast<std::size_t>(n));
    std::iota(slots.begin(), slots.end(), 1);
    return OutcomeWord(StreetShape::square(n), std::move(slots));
}

bool OutcomeWord::cars_increasing() const noexcept
{
    Car last = 0;
    for (Car c : slots_) {
        if (c == kEmpty) continue;
        if (c < last) return false;
        last = c;
    }
    return true;
}

std::string OutcomeWord::to_string() const
{
    std::string out;
    const bool wide = shape_.cars() > 9;
    for (Car c : slots_) {
        if (c == kEmpty)
            out += 'X';
        else if (wide && c > 9)
            out += "(" + std::to_string(c) + ")";
        else
            out += std::to_string(c);
    }
    return out;
}

std::strong_ordering operator<=>(const OutcomeWord& a, const OutcomeWord& b)
{
    if (auto c = a.shape_ <=> b.shape_; c != 0) return c;
    auto key = [](Car c) { return c == kEmpty ? std::numeric_limits<int>::max() : c; };
    for (std::size_t i = 0; i < a.slots_.size(); ++i)
        if (auto c = key(a.slots_[i]) <=> key(b.slots_[i]); c != 0) return c;
    return std::strong_ordering::equal;
}

LuckySet::LuckySet(std::vector<Car> cars) : cars_(std::move(cars))
{
    std::sort(cars_.begin(), cars_.end());
    if (std::adjacent_find(cars_.begin(), cars_.end()) != cars_.end())
        throw std::invalid_argument("lucky set has a duplicate car");
    if (!cars_.empty() && cars_.front() < 1)
        throw std::invalid_argument("lucky set cars must be >= 1");
}

LuckySet LuckySet::first_k(int k)
{
    std::vector<Car> cars(static_cast<std::size_t>(std::max(k, 0)));
    std::iota(cars.begin(), cars.end(), 1);
    return LuckySet(std::move(cars));
}

LuckySet LuckySet::from_mask(std::uint64_t mask)
{
    std::vector<Car> cars;
    for (int bit = 0; bit < 64; ++bit)
        if (mask >> bit & 1u) cars.push_back(bit + 1);
    return LuckySet(std::move(cars));
}

bool LuckySet::contains(Car car) const noexcept
{
    return std::binary_search(cars_.begin(), cars_.end(), car);
}

bool LuckySet::is_lucky_set_for(int m) const noexcept
{
    return !cars_.empty() && cars_.front() == 1 && cars_.back() <= m;
}

std::uint64_t LuckySet::mask() const
{
    std::uint64_t mask = 0;
    for (Car c : cars_) {
        if (c > 64) throw std::out_of_range("lucky set does not fit a 64-bit mask");
        mask |= std::uint64_t{1} << (c - 1);
    }
    return mask;
}

std::string LuckySet::to_string() const
{
    return "{" + join(cars_, ',') + "}";
}

void require_lucky_set(const LuckySet& lucky, int m)
{
    if (!lucky.is_lucky_set_for(m))
        throw std::invalid_argument("not a lucky set of a " + std::to_string(m) + "-car street: " +
                                    lucky.to_string() + " (must contain car 1 and lie in 1.." +
                                    std::to_string(m) + ")");
}

bool is_parking_function(const PrefList& prefs)
{
    std::vector<Spot> sorted(prefs.prefs().begin(), prefs.prefs().end());
    std::sort(sorted.begin(), sorted.end());
    const int slack = prefs.shape().empties();
    for (std::size_t i = 0; i < sorted.size(); ++i)
        if (sorted[i] > slack + static_cast<int>(i) + 1) return false;
    return true;
}

ParkResult park(const PrefList& prefs)
{
    const StreetShape& shape = prefs.shape();
    FreeSpots free(shape.spots());
    std::vector<Car> slots(static_cast<std::size_t>(shape.spots()), kEmpty);
    std::vector<Car> lucky;
    for (Car car = 1; car <= shape.cars(); ++car) {
        const Spot want = prefs.pref_of(car);
        const Spot got = free.find(want);
        if (got > shape.spots()) return ParkFailure{car};
        free.occupy(got);
        slots[got - 1] = car;
        if (got == want) lucky.push_back(car);
    }
    return Parking{OutcomeWord(shape, std::move(slots)), LuckySet(std::move(lucky))};
}

std::map<Car, Spot> outcome_inverse_positions(const OutcomeWord& word)
{
    std::map<Car, Spot> where;
    for (Spot s = 1; s <= word.shape().spots(); ++s)
        if (!word.is_empty(s)) where.emplace(word.at(s), s);
    return where;
}

}  // namespace lucky
