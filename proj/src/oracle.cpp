#include "lucky/oracle.hpp"

#include <omp.h>

#include <algorithm>
#include <bit>
#include <functional>
#include <limits>
#include <set>
#include <unordered_map>

#include <json.hpp>

#include "lucky/compositions.hpp"
#include "lucky/counting.hpp"
#include "lucky/outcome.hpp"

namespace lucky::oracle {

std::string to_string(Filter f)
{
    switch (f) {
    case Filter::kAll: return "all";
    case Filter::kWeaklyIncreasing: return "weakly-increasing";
    case Filter::kIncreasingOutcome: return "increasing-outcome";
    }
    return "unknown";
}

BudgetExceeded::BudgetExceeded(std::uint64_t estimate, std::uint64_t budget)
    : std::runtime_error("sweep needs an estimated " + std::to_string(estimate) +
                         " preference lists, over the budget of " + std::to_string(budget)),
      estimate_(estimate),
      budget_(budget)
{
}

std::uint64_t estimated_iterations(StreetShape shape, Filter filter)
{
    BigInt estimate = filter == Filter::kWeaklyIncreasing
                          ? binomial(shape.spots() + shape.cars() - 1, shape.cars())
                          : BigInt(boost::multiprecision::pow(BigInt(shape.spots()), shape.cars()));
    if (estimate > std::numeric_limits<std::uint64_t>::max()) return std::numeric_limits<std::uint64_t>::max();
    return estimate.convert_to<std::uint64_t>();
}

ClassificationTable::ClassificationTable(StreetShape shape, Filter filter, std::map<TableKey, std::uint64_t> entries)
    : shape_(shape), filter_(filter), entries_(std::move(entries))
{
}

BigInt ClassificationTable::total() const
{
    BigInt t = 0;
    for (const auto& [key, c] : entries_) t += c;
    return t;
}

BigInt ClassificationTable::marginal(const LuckySet& lucky) const
{
    BigInt t = 0;
    for (auto it = entries_.lower_bound({lucky, OutcomeWord::identity(1)}); it != entries_.end(); ++it) {
        if (it->first.first != lucky) break;
        t += it->second;
    }
    return t;
}

std::uint64_t ClassificationTable::count(const LuckySet& lucky, const OutcomeWord& word) const
{
    const auto it = entries_.find({lucky, word});
    return it == entries_.end() ? 0 : it->second;
}

std::vector<LuckySet> ClassificationTable::lucky_sets() const
{
    std::vector<LuckySet> out;
    for (const auto& [key, c] : entries_)
        if (out.empty() || out.back() != key.first) out.push_back(key.first);
    return out;
}

std::map<LuckySet, BigInt> ClassificationTable::by_lucky_set() const
{
    std::map<LuckySet, BigInt> out;
    for (const auto& [key, c] : entries_) out[key.first] += c;
    return out;
}

std::vector<BigInt> ClassificationTable::lucky_size_histogram() const
{
    std::vector<BigInt> h(static_cast<std::size_t>(shape_.cars()) + 1, 0);
    for (const auto& [key, c] : entries_) h[key.first.size()] += c;
    return h;
}

std::vector<OutcomeWord> ClassificationTable::outcomes_for(const LuckySet& lucky) const
{
    std::vector<OutcomeWord> out;
    for (auto it = entries_.lower_bound({lucky, OutcomeWord::identity(1)}); it != entries_.end(); ++it) {
        if (it->first.first != lucky) break;
        out.push_back(it->first.second);
    }
    return out;
}

std::string ClassificationTable::to_json() const
{
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& [key, c] : entries_) {
        rows.push_back({{"count", c},
                        {"lucky", std::vector<Car>(key.first.cars().begin(), key.first.cars().end())},
                        {"outcome", key.second.to_string()}});
    }
    const nlohmann::json doc = {
        {"cars", shape_.cars()},   {"spots", shape_.spots()}, {"filter", to_string(filter_)},
        {"total", total().str()},  {"entries", std::move(rows)},
    };
    return doc.dump(2) + "\n";
}

namespace {

__extension__ using u128 = unsigned __int128;

// Slot s of the packed outcome lives in bits [5s, 5s+5); 0 is Empty.
constexpr int kSlotBits = 5;
constexpr int kMaxSpots = 25;

struct PackedKey {
    u128 word;
    std::uint32_t mask;

    bool operator==(const PackedKey&) const = default;
};

struct PackedHash {
    std::size_t operator()(const PackedKey& k) const noexcept
    {
        auto mix = [](std::uint64_t x) {
            x ^= x >> 30;
            x *= 0xbf58476d1ce4e5b9ULL;
            x ^= x >> 27;
            x *= 0x94d049bb133111ebULL;
            return x ^ (x >> 31);
        };
        const auto lo = static_cast<std::uint64_t>(k.word);
        const auto hi = static_cast<std::uint64_t>(k.word >> 64);
        return mix(lo ^ mix(hi ^ mix(k.mask)));
    }
};

using Tally = std::unordered_map<PackedKey, std::uint64_t, PackedHash>;

struct State {
    std::uint32_t occupied = 0;
    u128 word = 0;
    std::uint32_t mask = 0;
};

class Sweep {
public:
    Sweep(StreetShape shape, Filter filter)
        : m_(shape.cars()), n_(shape.spots()), filter_(filter), full_((std::uint32_t{1} << n_) - 1)
    {
    }

    // Parks `car` at preference a; false if it cannot park or the filter
    // rules the branch out.
    bool step(State& st, Car car, int a) const
    {
        const std::uint32_t free = ~st.occupied & full_ & (~std::uint32_t{0} << (a - 1));
        if (free == 0) return false;
        const int s = std::countr_zero(free);
        if (filter_ == Filter::kIncreasingOutcome && st.occupied != 0 && s < 31 - std::countl_zero(st.occupied))
            return false;
        st.occupied |= std::uint32_t{1} << s;
        st.word |= static_cast<u128>(car) << (kSlotBits * s);
        if (s == a - 1) st.mask |= std::uint32_t{1} << (car - 1);
        return true;
    }

    void run(Tally& tally, Car car, int lo, const State& st) const
    {
        if (car > m_) {
            ++tally[PackedKey{st.word, st.mask}];
            return;
        }
        for (int a = lo; a <= n_; ++a) {
            if ((~st.occupied & full_ & (~std::uint32_t{0} << (a - 1))) == 0) break;
            State next = st;
            if (!step(next, car, a)) continue;
            run(tally, car + 1, filter_ == Filter::kWeaklyIncreasing ? a : 1, next);
        }
    }

    std::vector<std::vector<int>> prefixes() const
    {
        const int depth = std::min(m_, 2);
        std::vector<std::vector<int>> out;
        std::vector<int> p;
        auto grow = [&](auto& self, int lo) -> void {
            if (static_cast<int>(p.size()) == depth) {
                out.push_back(p);
                return;
            }
            for (int a = lo; a <= n_; ++a) {
                p.push_back(a);
                self(self, filter_ == Filter::kWeaklyIncreasing ? a : 1);
                p.pop_back();
            }
        };
        grow(grow, 1);
        return out;
    }

    void run_prefix(Tally& tally, const std::vector<int>& prefix) const
    {
        State st;
        for (std::size_t i = 0; i < prefix.size(); ++i)
            if (!step(st, static_cast<Car>(i) + 1, prefix[i])) return;
        run(tally, static_cast<Car>(prefix.size()) + 1,
            filter_ == Filter::kWeaklyIncreasing && !prefix.empty() ? prefix.back() : 1, st);
    }

private:
    int m_;
    int n_;
    Filter filter_;
    std::uint32_t full_;
};

}  // namespace

ClassificationTable classify_all(StreetShape shape, Filter filter, ClassifyOptions options)
{
    if (shape.spots() > kMaxSpots)
        throw std::invalid_argument("classify_all supports at most " + std::to_string(kMaxSpots) + " spots");
    const std::uint64_t estimate = estimated_iterations(shape, filter);
    if (estimate > options.budget) throw BudgetExceeded(estimate, options.budget);

    const Sweep sweep(shape, filter);
    const auto prefixes = sweep.prefixes();
    const int nthreads = options.threads > 0 ? options.threads : omp_get_max_threads();
    std::vector<Tally> tallies(static_cast<std::size_t>(nthreads));

#pragma omp parallel for schedule(dynamic) num_threads(nthreads)
    for (std::size_t i = 0; i < prefixes.size(); ++i)
        sweep.run_prefix(tallies[static_cast<std::size_t>(omp_get_thread_num())], prefixes[i]);

    Tally merged = std::move(tallies[0]);
    for (std::size_t t = 1; t < tallies.size(); ++t) {
        for (const auto& [key, c] : tallies[t]) {
            auto& slot = merged[key];
            if (slot > std::numeric_limits<std::uint64_t>::max() - c)
                throw std::overflow_error("classification count overflowed 64 bits");
            slot += c;
        }
    }

    std::map<std::uint32_t, LuckySet> sets;
    std::map<TableKey, std::uint64_t> entries;
    std::vector<Car> slots(static_cast<std::size_t>(shape.spots()));
    for (const auto& [key, c] : merged) {
        auto it = sets.find(key.mask);
        if (it == sets.end()) it = sets.emplace(key.mask, LuckySet::from_mask(key.mask)).first;
        for (int s = 0; s < shape.spots(); ++s)
            slots[s] = static_cast<Car>((key.word >> (kSlotBits * s)) & ((1u << kSlotBits) - 1));
        entries.emplace(TableKey{it->second, OutcomeWord(shape, slots)}, c);
    }
    return ClassificationTable(shape, filter, std::move(entries));
}

std::string to_string(Formula f)
{
    switch (f) {
    case Formula::kCountLpf: return "count-lpf";
    case Formula::kCatalanProduct: return "catalan-product";
    case Formula::kFirstKLucky: return "first-k-lucky";
    case Formula::kFirstKLuckyMn: return "first-k-lucky-mn";
    case Formula::kFirstKLuckyMnStatedBound: return "first-k-lucky-mn-plus-one";
    case Formula::kGesselSeo: return "gessel-seo";
    case Formula::kOutcomeSets: return "outcome-sets";
    case Formula::kIncreasingOutcomeCount: return "increasing-outcome-count";
    case Formula::kIncreasingOutcomeProduct: return "increasing-outcome-product";
    case Formula::kWeaklyIncreasingTheorem: return "weakly-increasing-theorem";
    }
    return "unknown";
}

std::vector<Formula> all_formulas()
{
    return {Formula::kCountLpf,
            Formula::kCatalanProduct,
            Formula::kFirstKLucky,
            Formula::kFirstKLuckyMn,
            Formula::kFirstKLuckyMnStatedBound,
            Formula::kGesselSeo,
            Formula::kOutcomeSets,
            Formula::kIncreasingOutcomeCount,
            Formula::kIncreasingOutcomeProduct,
            Formula::kWeaklyIncreasingTheorem};
}

std::optional<Formula> parse_formula(std::string_view name)
{
    for (Formula f : all_formulas())
        if (to_string(f) == name) return f;
    return std::nullopt;
}

bool applies_to(Formula f, StreetShape shape)
{
    switch (f) {
    case Formula::kCatalanProduct:
    case Formula::kFirstKLucky:
    case Formula::kGesselSeo: return shape.is_square();
    default: return true;
    }
}

Filter filter_for(Formula f)
{
    switch (f) {
    case Formula::kCatalanProduct:
    case Formula::kWeaklyIncreasingTheorem: return Filter::kWeaklyIncreasing;
    case Formula::kIncreasingOutcomeCount:
    case Formula::kIncreasingOutcomeProduct: return Filter::kIncreasingOutcome;
    default: return Filter::kAll;
    }
}

namespace {

std::vector<LuckySet> lucky_sets_of(int m)
{
    std::vector<LuckySet> out;
    for (std::uint64_t rest = 0; rest < (std::uint64_t{1} << (m - 1)); ++rest)
        out.push_back(LuckySet::from_mask(rest << 1 | 1u));
    std::sort(out.begin(), out.end());
    return out;
}

bool passes(Filter filter, const PrefList& prefs, const OutcomeWord& word)
{
    switch (filter) {
    case Filter::kAll: return true;
    case Filter::kWeaklyIncreasing: return prefs.is_weakly_increasing();
    case Filter::kIncreasingOutcome: return word.cars_increasing();
    }
    return false;
}

std::string describe_preimage(const OutcomeWord& word, const LuckySet& lucky, Filter filter)
{
    for (const auto& p : preimages(word, lucky))
        if (passes(filter, p, word)) return p.to_string() + " -> " + word.to_string();
    return "no preference list parks into " + word.to_string() + " with lucky set " + lucky.to_string();
}

std::string witness_for_set(const ClassificationTable& table, const LuckySet& lucky)
{
    const auto words = table.outcomes_for(lucky);
    if (words.empty()) return "no " + to_string(table.filter()) + " list has lucky set " + lucky.to_string();
    return describe_preimage(words.front(), lucky, table.filter());
}

template <class F>
std::string guarded(F&& f)
{
    try {
        return f();
    } catch (const std::exception& e) {
        return std::string("error: ") + e.what();
    }
}

void compare_marginals(AgreementReport& r, const ClassificationTable& table,
                       const std::function<BigInt(const LuckySet&)>& formula, const std::string& label = {})
{
    for (const auto& lucky : lucky_sets_of(table.shape().cars())) {
        ++r.checked;
        const std::string oracle = table.marginal(lucky).str();
        const std::string value = guarded([&] { return formula(lucky).str(); });
        if (oracle != value)
            r.mismatches.push_back({"I=" + lucky.to_string() + label, oracle, value, witness_for_set(table, lucky)});
    }
}

void check_count_lpf(AgreementReport& r, const ClassificationTable& table, int threads)
{
    const StreetShape shape = table.shape();
    for (const auto& lucky : lucky_sets_of(shape.cars())) {
        ++r.checked;
        const BigInt oracle = table.marginal(lucky);
        const BigInt value = count_lpf(shape, lucky, threads);
        if (oracle == value) continue;
        std::string witness = witness_for_set(table, lucky);
        for (const auto& w : enumerate_outcomes(shape, lucky, threads)) {
            if (BigInt(table.count(lucky, w)) != count_per_outcome(w, lucky)) {
                witness = describe_preimage(w, lucky, Filter::kAll);
                break;
            }
        }
        r.mismatches.push_back({"I=" + lucky.to_string(), oracle.str(), value.str(), witness});
    }
}

void check_first_k(AgreementReport& r, const ClassificationTable& table,
                   const std::function<BigInt(int)>& formula)
{
    for (int k = 1; k <= table.shape().cars(); ++k) {
        ++r.checked;
        const auto observed = table.outcomes_for(LuckySet::first_k(k));
        const std::string value = guarded([&] { return formula(k).str(); });
        if (std::to_string(observed.size()) != value)
            r.mismatches.push_back({"k=" + std::to_string(k), std::to_string(observed.size()), value,
                                    observed.empty() ? "no outcome observed"
                                                     : "observed outcomes include " + observed.front().to_string()});
    }
}

void check_gessel_seo(AgreementReport& r, const ClassificationTable& table)
{
    const auto hist = table.lucky_size_histogram();
    const auto poly = gessel_seo(table.shape().cars());
    const std::size_t top = std::max(hist.size() - 1, poly.degree());
    for (std::size_t k = 0; k <= top; ++k) {
        ++r.checked;
        const BigInt oracle = k < hist.size() ? hist[k] : BigInt(0);
        const BigInt value = poly.coefficient(k);
        if (oracle != value)
            r.mismatches.push_back({"q^" + std::to_string(k), oracle.str(), value.str(), "histogram of lucky-set sizes"});
    }
}

void compare_outcome_sets(AgreementReport& r, const ClassificationTable& table, const LuckySet& lucky,
                          const std::vector<OutcomeWord>& predicted)
{
    const auto observed_list = table.outcomes_for(lucky);
    const std::set<OutcomeWord> observed(observed_list.begin(), observed_list.end());
    const std::set<OutcomeWord> expected(predicted.begin(), predicted.end());
    std::set<OutcomeWord> all = observed;
    all.insert(expected.begin(), expected.end());
    for (const auto& w : all) {
        ++r.checked;
        const bool seen = observed.contains(w);
        const bool legal = expected.contains(w);
        if (seen == legal) continue;
        r.mismatches.push_back({"I=" + lucky.to_string() + " outcome " + w.to_string(), seen ? "observed" : "absent",
                                legal ? "predicted" : "not predicted",
                                seen ? describe_preimage(w, lucky, table.filter()) : "no list parks here"});
    }
}

void check_increasing_product(AgreementReport& r, const ClassificationTable& table)
{
    const StreetShape shape = table.shape();
    compare_marginals(r, table, [&](const LuckySet& I) { return count_weakly_increasing_lpf_mn(shape, I); },
                      " (composition sum)");
    compare_marginals(r, table,
                      [&](const LuckySet& I) { return count_weakly_increasing_lpf_mn_by_outcomes(shape, I); },
                      " (outcome sum)");
    for (const auto& [key, c] : table.entries()) {
        ++r.checked;
        const std::string value =
            guarded([&] { return count_weakly_increasing_per_outcome(key.second, key.first).str(); });
        if (value != std::to_string(c))
            r.mismatches.push_back({"I=" + key.first.to_string() + " outcome " + key.second.to_string(),
                                    std::to_string(c), value,
                                    describe_preimage(key.second, key.first, table.filter())});
    }
}

}  // namespace

AgreementReport check_formula_agreement(const ClassificationTable& table, Formula f, int threads)
{
    const StreetShape shape = table.shape();
    if (table.filter() != filter_for(f))
        throw std::invalid_argument("formula " + to_string(f) + " is checked against a " +
                                    to_string(filter_for(f)) + " table, got " + to_string(table.filter()));
    if (!applies_to(f, shape))
        throw std::invalid_argument("formula " + to_string(f) + " needs a square street");

    AgreementReport r{f, shape, 0, {}};
    switch (f) {
    case Formula::kCountLpf: check_count_lpf(r, table, threads); break;
    case Formula::kCatalanProduct:
        compare_marginals(r, table, [&](const LuckySet& I) { return count_weakly_increasing_lpf(shape.cars(), I); });
        break;
    case Formula::kFirstKLucky:
        check_first_k(r, table, [&](int k) { return count_outcomes_first_k_lucky(shape.cars(), k); });
        break;
    case Formula::kFirstKLuckyMn:
        check_first_k(r, table, [&](int k) { return count_outcomes_first_k_lucky_mn(shape, k, GapBound::kGapLength); });
        break;
    case Formula::kFirstKLuckyMnStatedBound:
        check_first_k(r, table,
                      [&](int k) { return count_outcomes_first_k_lucky_mn(shape, k, GapBound::kStatedPlusOne); });
        break;
    case Formula::kGesselSeo: check_gessel_seo(r, table); break;
    case Formula::kOutcomeSets:
        for (const auto& lucky : lucky_sets_of(shape.cars()))
            compare_outcome_sets(r, table, lucky, enumerate_outcomes(shape, lucky, threads));
        break;
    case Formula::kIncreasingOutcomeCount:
        for (const auto& lucky : lucky_sets_of(shape.cars())) {
            ++r.checked;
            const auto observed = table.outcomes_for(lucky).size();
            const BigInt value = count_weakly_increasing_outcomes(shape, lucky);
            if (BigInt(observed) != value)
                r.mismatches.push_back({"I=" + lucky.to_string(), std::to_string(observed), value.str(),
                                        witness_for_set(table, lucky)});
            compare_outcome_sets(r, table, lucky, enumerate_increasing_outcomes(shape, lucky));
        }
        break;
    case Formula::kIncreasingOutcomeProduct: check_increasing_product(r, table); break;
    case Formula::kWeaklyIncreasingTheorem:
        compare_marginals(r, table, [&](const LuckySet& I) { return count_weakly_increasing_lpf_mn(shape, I); });
        break;
    }
    return r;
}

AgreementReport check_formula_agreement(StreetShape shape, Formula f, ClassifyOptions options)
{
    if (!applies_to(f, shape)) throw std::invalid_argument("formula " + to_string(f) + " needs a square street");
    return check_formula_agreement(classify_all(shape, filter_for(f), options), f, options.threads);
}

}  // namespace lucky::oracle
