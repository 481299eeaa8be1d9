#pragma once

#include <cstddef>
#include <random>
#include <vector>

#include "lift/rational.hpp"

namespace lift {

// Dense square matrix over Q, stored as integer numerators over one shared
// positive denominator. Normal form: gcd(all numerators, den) = 1, so equal
// matrices have identical representations.
class RatMatrix {
public:
    RatMatrix() = default;
    explicit RatMatrix(std::size_t dim);

    static RatMatrix identity(std::size_t dim);
    static RatMatrix from_rows(const std::vector<std::vector<Rational>>& rows);
    static RatMatrix diagonal(const std::vector<Rational>& entries);
    static RatMatrix unit(std::size_t dim, std::size_t row, std::size_t col);
    // Entries uniform in [lo, hi].
    static RatMatrix random_integer(std::size_t dim, std::mt19937_64& rng, int lo = -3, int hi = 3);

    std::size_t dim() const { return dim_; }
    Rational at(std::size_t row, std::size_t col) const;
    Rational trace() const;
    bool is_zero() const;

    RatMatrix operator-() const;
    friend RatMatrix operator+(const RatMatrix& a, const RatMatrix& b);
    friend RatMatrix operator-(const RatMatrix& a, const RatMatrix& b);
    friend RatMatrix operator*(const RatMatrix& a, const RatMatrix& b);
    friend RatMatrix operator*(const Rational& s, const RatMatrix& a);
    friend bool operator==(const RatMatrix& a, const RatMatrix& b);

    // trace(a * b) without forming the product.
    static Rational trace_of_product(const RatMatrix& a, const RatMatrix& b);
    static RatMatrix commutator(const RatMatrix& a, const RatMatrix& b);

private:
    void normalize();
    static RatMatrix combine(const RatMatrix& a, const RatMatrix& b, int sign);

    std::size_t dim_ = 0;
    std::vector<BigInt> num_;
    BigInt den_ = 1;
};

}  // namespace lift
