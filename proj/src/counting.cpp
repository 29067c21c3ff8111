#include "lucky/counting.hpp"

#include <omp.h>

#include <limits>
#include <stdexcept>

namespace lucky {

BigInt factorial(int n)
{
    if (n < 0) throw std::invalid_argument("factorial of a negative number");
    BigInt r = 1;
    for (int i = 2; i <= n; ++i) r *= i;
    return r;
}

BigInt binomial(int a, int b)
{
    if (a < 0 || b < 0 || b > a) return 0;
    b = std::min(b, a - b);
    BigInt r = 1;
    for (int i = 1; i <= b; ++i) {
        r *= a - b + i;
        r /= i;
    }
    return r;
}

BigInt multinomial(int total, std::span<const int> parts)
{
    long sum = 0;
    for (int p : parts) {
        if (p < 0) return 0;
        sum += p;
    }
    if (sum != total) return 0;
    BigInt r = 1;
    int placed = 0;
    for (int p : parts) {
        placed += p;
        r *= binomial(placed, p);
    }
    return r;
}

CountPolynomial::CountPolynomial(std::vector<BigInt> coefficients) : coeffs_(std::move(coefficients))
{
    trim();
}

void CountPolynomial::trim()
{
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

BigInt CountPolynomial::coefficient(std::size_t k) const
{
    return k < coeffs_.size() ? coeffs_[k] : BigInt(0);
}

BigInt CountPolynomial::coefficient_sum() const
{
    BigInt s = 0;
    for (const auto& c : coeffs_) s += c;
    return s;
}

CountPolynomial CountPolynomial::operator*(const CountPolynomial& other) const
{
    if (coeffs_.empty() || other.coeffs_.empty()) return CountPolynomial{};
    std::vector<BigInt> out(coeffs_.size() + other.coeffs_.size() - 1, 0);
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        for (std::size_t j = 0; j < other.coeffs_.size(); ++j) out[i + j] += coeffs_[i] * other.coeffs_[j];
    return CountPolynomial(std::move(out));
}

std::string CountPolynomial::to_string() const
{
    std::string out;
    for (std::size_t k = 0; k < coeffs_.size(); ++k) {
        if (coeffs_[k] == 0) continue;
        if (!out.empty()) out += " + ";
        const bool unit = coeffs_[k] == 1 && k > 0;
        if (!unit) out += coeffs_[k].str();
        if (k >= 1) out += "q";
        if (k >= 2) out += "^" + std::to_string(k);
    }
    return out.empty() ? "0" : out;
}

CatalanTable::CatalanTable(int max_index)
{
    if (max_index < 0) throw std::invalid_argument("negative Catalan index");
    values_.reserve(static_cast<std::size_t>(max_index) + 1);
    values_.emplace_back(1);
    for (int k = 0; k < max_index; ++k) {
        BigInt next = values_.back() * (2 * (2 * k + 1));
        if (next % (k + 2) != 0) throw std::logic_error("Catalan recurrence produced an inexact division");
        values_.push_back(next / (k + 2));
    }
}

CountPolynomial gessel_seo(int n)
{
    if (n < 1) throw std::invalid_argument("gessel_seo needs n >= 1");
    CountPolynomial poly(std::vector<BigInt>{0, 1});
    for (int i = 1; i <= n - 1; ++i) poly = poly * CountPolynomial(std::vector<BigInt>{i, n - i + 1});
    return poly;
}

namespace {

__extension__ using u128 = unsigned __int128;

// Exact sum of ell products over the completions of one prefix.
BigInt sum_over_prefix(StreetShape shape, const LuckySet& lucky, std::span<const Car> prefix)
{
    detail::OutcomeWalker walker(shape, lucky);
    BigInt total = 0;
    u128 fast = 0;
    constexpr auto kFlush = std::numeric_limits<u128>::max() >> 1;
    walker.walk(prefix, [&](std::span<const Car> w, std::uint64_t product) {
        if (product == std::numeric_limits<std::uint64_t>::max()) {
            total += count_per_outcome(OutcomeWord(shape, std::vector<Car>(w.begin(), w.end())), lucky);
            return;
        }
        fast += product;
        if (fast > kFlush) {
            total += BigInt(static_cast<std::uint64_t>(fast >> 64)) << 64;
            total += static_cast<std::uint64_t>(fast);
            fast = 0;
        }
    });
    total += BigInt(static_cast<std::uint64_t>(fast >> 64)) << 64;
    total += static_cast<std::uint64_t>(fast);
    return total;
}

}  // namespace

BigInt count_lpf_serial(StreetShape shape, const LuckySet& lucky)
{
    return sum_over_prefix(shape, lucky, {});
}

BigInt count_lpf(StreetShape shape, const LuckySet& lucky, int threads)
{
    const auto prefixes = detail::OutcomeWalker(shape, lucky).prefixes(2);
    std::vector<BigInt> partial(prefixes.size());
    const int nthreads = threads > 0 ? threads : omp_get_max_threads();

#pragma omp parallel for schedule(dynamic) num_threads(nthreads)
    for (std::size_t i = 0; i < prefixes.size(); ++i) partial[i] = sum_over_prefix(shape, lucky, prefixes[i]);

    BigInt total = 0;
    for (const auto& p : partial) total += p;
    return total;
}

BigInt count_per_outcome(const OutcomeWord& word, const LuckySet& lucky)
{
    if (!is_legal_outcome(word, lucky))
        throw std::invalid_argument("outcome " + word.to_string() + " is not legal for lucky set " +
                                    lucky.to_string());
    const EllProfile ell = ell_profile(word);
    BigInt product = 1;
    for (Car c = 1; c <= word.shape().cars(); ++c)
        if (!lucky.contains(c)) product *= ell.of(c);
    return product;
}

BigInt count_outcomes_first_k_lucky(int n, int k)
{
    if (n < 1 || k < 1 || k > n) throw std::invalid_argument("count_outcomes_first_k_lucky needs 1 <= k <= n");
    const BigInt arrangements = factorial(k);
    BigInt total = 0;
    std::vector<int> spots(static_cast<std::size_t>(k));
    std::vector<int> gaps(static_cast<std::size_t>(k));

    // Every k-subset of [n] in lexicographic order.
    auto choose = [&](auto& self, int index, int from) -> void {
        if (index == k) {
            for (int i = 0; i + 1 < k; ++i) gaps[i] = spots[i + 1] - spots[i] - 1;
            gaps[k - 1] = n - spots[k - 1];
            total += arrangements * multinomial(n - k, gaps);
            return;
        }
        for (int s = from; s <= n - (k - index) + 1; ++s) {
            spots[index] = s;
            self(self, index + 1, s + 1);
        }
    };
    choose(choose, 0, 1);
    return total;
}

BigInt count_weakly_increasing_lpf(int n, const LuckySet& lucky)
{
    require_lucky_set(lucky, n);
    const auto cars = lucky.cars();
    CatalanTable catalan(n);
    BigInt product = 1;
    for (std::size_t j = 0; j < cars.size(); ++j) {
        const int gap = j + 1 < cars.size() ? cars[j + 1] - cars[j] - 1 : n - cars[j];
        product *= catalan[gap];
    }
    return product;
}

GesselSeoDecomposition gessel_seo_decomposition(int n, int threads)
{
    if (n < 1 || n > 20) throw std::invalid_argument("gessel_seo_decomposition supports 1 <= n <= 20");
    GesselSeoDecomposition result;
    result.polynomial = gessel_seo(n);
    result.by_size.assign(static_cast<std::size_t>(n) + 1, 0);
    const std::uint64_t sets = std::uint64_t{1} << (n - 1);
    for (std::uint64_t rest = 0; rest < sets; ++rest) {
        const LuckySet lucky = LuckySet::from_mask(rest << 1 | 1u);
        result.by_size[lucky.size()] += count_lpf(n, lucky, threads);
    }
    result.holds = true;
    for (int k = 0; k <= n; ++k)
        if (result.by_size[k] != result.polynomial.coefficient(static_cast<std::size_t>(k))) result.holds = false;
    if (result.polynomial.degree() > static_cast<std::size_t>(n)) result.holds = false;
    return result;
}

}  // namespace lucky
