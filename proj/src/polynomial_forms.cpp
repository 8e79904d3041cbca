#include "millsbounds/polynomial_forms.hpp"

#include <algorithm>
#include <mutex>
#include <shared_mutex>
#include <stdexcept>
#include <string>

namespace mills {

IntPolynomial::IntPolynomial(std::vector<BigInt> coefficients) : coeffs_(std::move(coefficients)) {
    canonicalize();
}

void IntPolynomial::canonicalize() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
    approx_.clear();
    approx_.reserve(coeffs_.size());
    for (const auto& c : coeffs_) approx_.push_back(to_ext_real(c));
}

BigInt IntPolynomial::coefficient(std::size_t power) const {
    return power < coeffs_.size() ? coeffs_[power] : BigInt(0);
}

ExtReal IntPolynomial::evaluate(const ExtReal& x) const {
    ExtReal acc = 0.0;
    for (auto it = approx_.rbegin(); it != approx_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

IntPolynomial IntPolynomial::shifted_up() const {
    if (coeffs_.empty()) return {};
    std::vector<BigInt> c;
    c.reserve(coeffs_.size() + 1);
    c.emplace_back(0);
    c.insert(c.end(), coeffs_.begin(), coeffs_.end());
    return IntPolynomial(std::move(c));
}

IntPolynomial IntPolynomial::scaled(const BigInt& factor) const {
    std::vector<BigInt> c = coeffs_;
    for (auto& v : c) v *= factor;
    return IntPolynomial(std::move(c));
}

IntPolynomial operator+(const IntPolynomial& a, const IntPolynomial& b) {
    std::vector<BigInt> c(std::max(a.coeffs_.size(), b.coeffs_.size()));
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coefficient(i) + b.coefficient(i);
    return IntPolynomial(std::move(c));
}

namespace {

class PQCache {
public:
    PQPair get(std::size_t k) {
        {
            std::shared_lock lock(mutex_);
            if (k < pairs_.size()) return pairs_[k];
        }
        std::unique_lock lock(mutex_);
        if (pairs_.empty()) {
            pairs_.push_back({IntPolynomial({1}), IntPolynomial()});
            pairs_.push_back({IntPolynomial({0, 1}), IntPolynomial({1})});
        }
        while (pairs_.size() <= k) {
            const std::size_t n = pairs_.size();
            const BigInt m = n - 1;
            pairs_.push_back({pairs_[n - 2].p.scaled(m) + pairs_[n - 1].p.shifted_up(),
                              pairs_[n - 2].q.scaled(m) + pairs_[n - 1].q.shifted_up()});
        }
        return pairs_[k];
    }

private:
    std::shared_mutex mutex_;
    std::vector<PQPair> pairs_;
};

PQCache& cache() {
    static PQCache instance;
    return instance;
}

}  // namespace

PQPair pq_polynomials(std::size_t k) {
    if (k > kMaxPolynomialOrder) {
        throw std::invalid_argument("polynomial order " + std::to_string(k) + " exceeds " +
                                    std::to_string(kMaxPolynomialOrder));
    }
    return cache().get(k);
}

ExtReal eval_rational_form(std::size_t k, const ExtReal& x, const ExtReal& g_value) {
    if (k == 0) throw std::invalid_argument("rational form needs k >= 1");
    const PQPair prev = pq_polynomials(k - 1);
    const PQPair cur = pq_polynomials(k);
    const ExtReal kk = static_cast<double>(k);
    const ExtReal den = kk * prev.q.evaluate(x) + cur.q.evaluate(x) * g_value;
    if (den.hi() == 0.0) throw std::domain_error("rational form has zero denominator");
    return (kk * prev.p.evaluate(x) + cur.p.evaluate(x) * g_value) / den;
}

ExtReal eval_shifted_form(std::size_t k, const ExtReal& x, const ExtReal& g_excess) {
    const PQPair cur = pq_polynomials(k);
    const PQPair next = pq_polynomials(k + 1);
    const ExtReal den = next.q.evaluate(x) + cur.q.evaluate(x) * g_excess;
    if (den.hi() == 0.0) throw std::domain_error("rational form has zero denominator");
    return (next.p.evaluate(x) + cur.p.evaluate(x) * g_excess) / den;
}

}  // namespace mills
