#pragma once

// Parking on a one-way street: m cars, n >= m spots, cars and spots 1-indexed.

#include <compare>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace lucky {

using Car = int;
using Spot = int;

/// Value stored in an outcome slot that no car occupies.
inline constexpr Car kEmpty = 0;

class StreetShape {
public:
    /// Throws std::invalid_argument unless 1 <= cars <= spots.
    StreetShape(int cars, int spots);

    static StreetShape square(int n) { return StreetShape(n, n); }

    int cars() const noexcept { return cars_; }
    int spots() const noexcept { return spots_; }
    int empties() const noexcept { return spots_ - cars_; }
    bool is_square() const noexcept { return cars_ == spots_; }

    friend bool operator==(const StreetShape&, const StreetShape&) = default;
    friend auto operator<=>(const StreetShape&, const StreetShape&) = default;

private:
    int cars_;
    int spots_;
};

/// Preferences a_1..a_m; not assumed to be a parking function.
class PrefList {
public:
    PrefList(StreetShape shape, std::vector<Spot> prefs);

    /// Square street with n = prefs.size().
    explicit PrefList(std::vector<Spot> prefs);

    const StreetShape& shape() const noexcept { return shape_; }
    std::span<const Spot> prefs() const noexcept { return prefs_; }
    Spot pref_of(Car car) const { return prefs_.at(static_cast<std::size_t>(car - 1)); }
    bool is_weakly_increasing() const noexcept;
    std::string to_string() const;

    friend bool operator==(const PrefList&, const PrefList&) = default;
    friend auto operator<=>(const PrefList& a, const PrefList& b) { return a.prefs_ <=> b.prefs_; }

private:
    StreetShape shape_;
    std::vector<Spot> prefs_;
};

/// Which car ended up in each spot; kEmpty marks a vacant spot.
class OutcomeWord {
public:
    /// Throws std::invalid_argument unless every car 1..m appears exactly once
    /// and the remaining n-m slots are kEmpty.
    OutcomeWord(StreetShape shape, std::vector<Car> slots);

    /// Parses "195348267", "X453X1X2", "1234X56789X(10)X(11)(12)XX" or a
    /// comma-separated list such as "1,X,10". The shape is inferred.
    static OutcomeWord parse(std::string_view text);

    static OutcomeWord identity(int n);

    const StreetShape& shape() const noexcept { return shape_; }
    std::span<const Car> slots() const noexcept { return slots_; }
    Car at(Spot spot) const { return slots_.at(static_cast<std::size_t>(spot - 1)); }
    bool is_empty(Spot spot) const { return at(spot) == kEmpty; }

    /// True when the cars appear in increasing order from left to right.
    bool cars_increasing() const noexcept;

    /// Digits when m <= 9, otherwise multi-digit cars in parentheses; X for Empty.
    std::string to_string() const;

    friend bool operator==(const OutcomeWord&, const OutcomeWord&) = default;
    /// Lexicographic with Empty sorting after every car.
    friend std::strong_ordering operator<=>(const OutcomeWord& a, const OutcomeWord& b);

private:
    StreetShape shape_;
    std::vector<Car> slots_;
};

/// Sorted set of car indices.
class LuckySet {
public:
    LuckySet() = default;
    /// Accepts any order; throws std::invalid_argument on duplicates or cars < 1.
    explicit LuckySet(std::vector<Car> cars);

    static LuckySet first_k(int k);
    static LuckySet from_mask(std::uint64_t mask);   // bit c-1 set <=> car c lucky

    bool contains(Car car) const noexcept;
    std::size_t size() const noexcept { return cars_.size(); }
    bool empty() const noexcept { return cars_.empty(); }
    std::span<const Car> cars() const noexcept { return cars_; }
    Car max() const { return cars_.back(); }

    /// 1 is a member and every member lies in [1, m].
    bool is_lucky_set_for(int m) const noexcept;

    std::uint64_t mask() const;
    std::string to_string() const;   // "{1,4}"

    friend bool operator==(const LuckySet&, const LuckySet&) = default;
    friend auto operator<=>(const LuckySet&, const LuckySet&) = default;

private:
    std::vector<Car> cars_;
};

struct Parking {
    OutcomeWord outcome;
    LuckySet lucky;
};

struct ParkFailure {
    Car car;   // first car that found no free spot at or past its preference
};

using ParkResult = std::variant<Parking, ParkFailure>;

bool is_parking_function(const PrefList& prefs);

/// Cars enter in index order; car i takes the first free spot >= a_i and is
/// lucky iff that spot is a_i.
ParkResult park(const PrefList& prefs);

/// Car -> spot it occupies.
std::map<Car, Spot> outcome_inverse_positions(const OutcomeWord& word);

/// Throws std::invalid_argument when `lucky` is not a lucky set of an m-car street.
void require_lucky_set(const LuckySet& lucky, int m);

}  // namespace lucky
