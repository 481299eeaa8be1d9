#include "lift/matrix.hpp"

#include <stdexcept>

namespace lift {

RatMatrix::RatMatrix(std::size_t dim) : dim_(dim), num_(dim * dim, BigInt(0)) {}

RatMatrix RatMatrix::identity(std::size_t dim)
{
    RatMatrix m(dim);
    for (std::size_t i = 0; i < dim; ++i)
        m.num_[i * dim + i] = 1;
    return m;
}

RatMatrix RatMatrix::unit(std::size_t dim, std::size_t row, std::size_t col)
{
    RatMatrix m(dim);
    m.num_.at(row * dim + col) = 1;
    return m;
}

RatMatrix RatMatrix::from_rows(const std::vector<std::vector<Rational>>& rows)
{
    const std::size_t dim = rows.size();
    BigInt den = 1;
    for (const auto& row : rows) {
        if (row.size() != dim)
            throw std::invalid_argument("matrix rows must have length " + std::to_string(dim));
        for (const auto& q : row)
            mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), q.get_den_mpz_t());
    }
    RatMatrix m(dim);
    m.den_ = den;
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j) {
            const Rational& q = rows[i][j];
            m.num_[i * dim + j] = q.get_num() * (den / q.get_den());
        }
    m.normalize();
    return m;
}

RatMatrix RatMatrix::diagonal(const std::vector<Rational>& entries)
{
    std::vector<std::vector<Rational>> rows(entries.size(), std::vector<Rational>(entries.size()));
    for (std::size_t i = 0; i < entries.size(); ++i)
        rows[i][i] = entries[i];
    return from_rows(rows);
}

RatMatrix RatMatrix::random_integer(std::size_t dim, std::mt19937_64& rng, int lo, int hi)
{
    std::uniform_int_distribution<int> dist(lo, hi);
    RatMatrix m(dim);
    for (auto& x : m.num_)
        x = dist(rng);
    return m;
}

Rational RatMatrix::at(std::size_t row, std::size_t col) const
{
    Rational q(num_.at(row * dim_ + col), den_);
    q.canonicalize();
    return q;
}

Rational RatMatrix::trace() const
{
    BigInt s = 0;
    for (std::size_t i = 0; i < dim_; ++i)
        s += num_[i * dim_ + i];
    Rational q(s, den_);
    q.canonicalize();
    return q;
}

bool RatMatrix::is_zero() const
{
    for (const auto& x : num_)
        if (x != 0)
            return false;
    return true;
}

void RatMatrix::normalize()
{
    if (den_ == 1)
        return;
    BigInt g = den_;
    for (const auto& x : num_) {
        if (g == 1)
            return;
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    }
    if (g == 1)
        return;
    for (auto& x : num_)
        mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
    mpz_divexact(den_.get_mpz_t(), den_.get_mpz_t(), g.get_mpz_t());
}

RatMatrix RatMatrix::operator-() const
{
    RatMatrix r = *this;
    for (auto& x : r.num_)
        x = -x;
    return r;
}

RatMatrix RatMatrix::combine(const RatMatrix& a, const RatMatrix& b, int sign)
{
    if (a.dim_ != b.dim_)
        throw std::invalid_argument("matrix dimension mismatch");
    RatMatrix r(a.dim_);
    if (a.den_ == b.den_) {
        r.den_ = a.den_;
        for (std::size_t k = 0; k < r.num_.size(); ++k)
            if (sign > 0)
                mpz_add(r.num_[k].get_mpz_t(), a.num_[k].get_mpz_t(), b.num_[k].get_mpz_t());
            else
                mpz_sub(r.num_[k].get_mpz_t(), a.num_[k].get_mpz_t(), b.num_[k].get_mpz_t());
    } else {
        r.den_ = a.den_ * b.den_;
        for (std::size_t k = 0; k < r.num_.size(); ++k) {
            BigInt lhs = a.num_[k] * b.den_;
            BigInt rhs = b.num_[k] * a.den_;
            if (sign > 0)
                r.num_[k] = lhs + rhs;
            else
                r.num_[k] = lhs - rhs;
        }
    }
    r.normalize();
    return r;
}

RatMatrix operator+(const RatMatrix& a, const RatMatrix& b) { return RatMatrix::combine(a, b, +1); }
RatMatrix operator-(const RatMatrix& a, const RatMatrix& b) { return RatMatrix::combine(a, b, -1); }

RatMatrix operator*(const RatMatrix& a, const RatMatrix& b)
{
    if (a.dim_ != b.dim_)
        throw std::invalid_argument("matrix dimension mismatch");
    const std::size_t n = a.dim_;
    RatMatrix r(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) {
            const BigInt& aik = a.num_[i * n + k];
            if (aik == 0)
                continue;
            for (std::size_t j = 0; j < n; ++j)
                mpz_addmul(r.num_[i * n + j].get_mpz_t(), aik.get_mpz_t(), b.num_[k * n + j].get_mpz_t());
        }
    r.den_ = a.den_ * b.den_;
    r.normalize();
    return r;
}

RatMatrix operator*(const Rational& s, const RatMatrix& a)
{
    RatMatrix r = a;
    for (auto& x : r.num_)
        x *= s.get_num();
    r.den_ *= s.get_den();
    r.normalize();
    return r;
}

bool operator==(const RatMatrix& a, const RatMatrix& b)
{
    return a.dim_ == b.dim_ && a.den_ == b.den_ && a.num_ == b.num_;
}

Rational RatMatrix::trace_of_product(const RatMatrix& a, const RatMatrix& b)
{
    if (a.dim_ != b.dim_)
        throw std::invalid_argument("matrix dimension mismatch");
    const std::size_t n = a.dim_;
    BigInt s = 0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k)
            mpz_addmul(s.get_mpz_t(), a.num_[i * n + k].get_mpz_t(), b.num_[k * n + i].get_mpz_t());
    Rational q(s, a.den_ * b.den_);
    q.canonicalize();
    return q;
}

RatMatrix RatMatrix::commutator(const RatMatrix& a, const RatMatrix& b) { return a * b - b * a; }

}  // namespace lift
