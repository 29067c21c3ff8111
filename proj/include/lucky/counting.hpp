#pragma once

// Closed-form counts for n cars on n spots, plus the streamed ell-product sum
// that also serves the m < n case.

#include <cstddef>
#include <string>
#include <vector>

#include "lucky/bigint.hpp"
#include "lucky/outcome.hpp"
#include "lucky/street.hpp"

namespace lucky {

/// Polynomial in q with exact nonnegative coefficients; index = power of q.
class CountPolynomial {
public:
    CountPolynomial() = default;
    explicit CountPolynomial(std::vector<BigInt> coefficients);

    const std::vector<BigInt>& coefficients() const noexcept { return coeffs_; }
    /// Coefficient of q^k, zero past the degree.
    BigInt coefficient(std::size_t k) const;
    std::size_t degree() const noexcept { return coeffs_.empty() ? 0 : coeffs_.size() - 1; }
    BigInt coefficient_sum() const;

    CountPolynomial operator*(const CountPolynomial& other) const;
    friend bool operator==(const CountPolynomial&, const CountPolynomial&) = default;

    /// "q + 2q^2"
    std::string to_string() const;

private:
    void trim();
    std::vector<BigInt> coeffs_;
};

/// Cat_0 .. Cat_max, built once with Cat_{k+1} = Cat_k * 2(2k+1) / (k+2).
class CatalanTable {
public:
    explicit CatalanTable(int max_index);

    const BigInt& operator[](int k) const { return values_.at(static_cast<std::size_t>(k)); }
    int max_index() const noexcept { return static_cast<int>(values_.size()) - 1; }

private:
    std::vector<BigInt> values_;
};

/// q * prod_{i=1}^{n-1} (i + (n-i+1) q): parking functions of length n by
/// number of lucky cars.
CountPolynomial gessel_seo(int n);

/// Number of parking functions on `shape` with lucky set exactly `lucky`:
/// the sum over legal outcomes of the product of ell over unlucky cars.
/// Outcomes are streamed, never stored. `threads` = 0 uses the OpenMP default.
BigInt count_lpf(StreetShape shape, const LuckySet& lucky, int threads = 0);
inline BigInt count_lpf(int n, const LuckySet& lucky, int threads = 0)
{
    return count_lpf(StreetShape::square(n), lucky, threads);
}

/// Same sum evaluated on one thread; the reference for count_lpf.
BigInt count_lpf_serial(StreetShape shape, const LuckySet& lucky);

/// Parking functions with this exact outcome and lucky set.
/// Throws std::invalid_argument when the pair is not legal.
BigInt count_per_outcome(const OutcomeWord& word, const LuckySet& lucky);

/// |O_n({1..k})|: sum over k-subsets J of spots of k! times the multinomial
/// over the gaps after each member of J. Subsets not containing spot 1 have a
/// gap total different from n-k and contribute zero.
BigInt count_outcomes_first_k_lucky(int n, int k);

/// Weakly increasing parking functions of length n with lucky set I: the
/// product of Catalan numbers of the gaps between consecutive lucky cars.
BigInt count_weakly_increasing_lpf(int n, const LuckySet& lucky);

struct GesselSeoDecomposition {
    CountPolynomial polynomial;
    std::vector<BigInt> by_size;  // by_size[k] = sum of count_lpf over |I| = k
    bool holds = false;
};

/// Compares each q^k coefficient with the sum of count_lpf over lucky sets of
/// size k. Enumerates all 2^(n-1) lucky sets.
GesselSeoDecomposition gessel_seo_decomposition(int n, int threads = 0);
inline bool verify_gessel_seo_decomposition(int n, int threads = 0)
{
    return gessel_seo_decomposition(n, threads).holds;
}

}  // namespace lucky
