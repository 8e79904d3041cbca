#pragma once

// Simple-fraction representation of the depth-k continued fraction:
//     h_k = (k P_{k-1} + P_k g_k) / (k Q_{k-1} + Q_k g_k)
// with P_0 = 1, P_1 = x, Q_0 = 0, Q_1 = 1 and
//     P_k = (k-1) P_{k-2} + x P_{k-1}   (same for Q).

#include <cstddef>
#include <utility>
#include <vector>

#include "millsbounds/double_double.hpp"
#include "millsbounds/exact_integer.hpp"

namespace mills {

// Polynomial with exact integer coefficients, ascending by degree, no
// trailing zeros. The zero polynomial has no coefficients and degree -1.
class IntPolynomial {
public:
    IntPolynomial() = default;
    explicit IntPolynomial(std::vector<BigInt> coefficients);

    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    const std::vector<BigInt>& coefficients() const { return coeffs_; }
    // Zero beyond the degree.
    BigInt coefficient(std::size_t power) const;

    // Horner in double-double.
    ExtReal evaluate(const ExtReal& x) const;

    IntPolynomial shifted_up() const;  // x * p
    IntPolynomial scaled(const BigInt& factor) const;
    friend IntPolynomial operator+(const IntPolynomial& a, const IntPolynomial& b);
    friend bool operator==(const IntPolynomial& a, const IntPolynomial& b) { return a.coeffs_ == b.coeffs_; }

private:
    void canonicalize();

    std::vector<BigInt> coeffs_;
    std::vector<ExtReal> approx_;  // coefficients rounded to double-double
};

inline constexpr std::size_t kMaxPolynomialOrder = 200;

struct PQPair {
    IntPolynomial p;
    IntPolynomial q;
};

// Memoized. Throws std::invalid_argument for k > kMaxPolynomialOrder.
PQPair pq_polynomials(std::size_t k);

// h_k from the terminal seed g_k. Requires k >= 1.
ExtReal eval_rational_form(std::size_t k, const ExtReal& x, const ExtReal& g_value);

// Same h_k written with g_k = x + G_k: (P_{k+1} + P_k G_k)/(Q_{k+1} + Q_k G_k).
// Valid for k >= 0.
ExtReal eval_shifted_form(std::size_t k, const ExtReal& x, const ExtReal& g_excess);

}  // namespace mills
