#include "lift/matrix_context.hpp"

#include <stdexcept>

namespace lift {

DimensionMismatch::DimensionMismatch(std::size_t index, std::size_t got, std::size_t want)
    : std::invalid_argument("generator " + std::to_string(index + 1) + " has dimension " + std::to_string(got) +
                            ", expected " + std::to_string(want)),
      offender(index)
{
}

MatrixContext::MatrixContext(std::size_t dim, std::vector<RatMatrix> generators)
    : dim_(dim), generators_(std::move(generators)), zero_(dim)
{
    if (generators_.empty())
        throw std::invalid_argument("at least one generator is required");
    for (std::size_t i = 0; i < generators_.size(); ++i)
        if (generators_[i].dim() != dim_)
            throw DimensionMismatch(i, generators_[i].dim(), dim_);
    const std::size_t n = generators_.size();
    q_upper_.reserve(n * (n - 1) / 2);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            q_upper_.push_back(RatMatrix::commutator(generators_[i], generators_[j]));
}

std::size_t MatrixContext::upper_index(std::size_t i, std::size_t j) const
{
    const std::size_t n = generators_.size();
    // row i of the strict upper triangle starts after sum_{r<i} (n-1-r) entries
    return i * (2 * n - i - 1) / 2 + (j - i - 1);
}

RatMatrix MatrixContext::derive(std::size_t i, const RatMatrix& a) const
{
    const RatMatrix& g = generators_.at(i);
    return g * a - a * g;
}

RatMatrix MatrixContext::q(std::size_t i, std::size_t j) const
{
    if (i >= generators_.size() || j >= generators_.size())
        throw std::out_of_range("Q index out of range");
    if (i == j)
        return zero_;
    if (i < j)
        return q_upper_[upper_index(i, j)];
    return -q_upper_[upper_index(j, i)];
}

MatrixContext MatrixContext::with_q_override(std::size_t i, std::size_t j, RatMatrix value) const
{
    if (i == j || i >= generators_.size() || j >= generators_.size())
        throw std::out_of_range("Q override needs two distinct valid indices");
    if (value.dim() != dim_)
        throw DimensionMismatch(i, value.dim(), dim_);
    MatrixContext copy = *this;
    if (i < j)
        copy.q_upper_[upper_index(i, j)] = std::move(value);
    else
        copy.q_upper_[upper_index(j, i)] = -value;
    return copy;
}

bool MatrixContext::q_vanishes() const
{
    for (const auto& m : q_upper_)
        if (!m.is_zero())
            return false;
    return true;
}

MatrixContext make_matrix_context(std::size_t dim, std::vector<RatMatrix> generators)
{
    return MatrixContext(dim, std::move(generators));
}

MatrixContext random_matrix_context(std::size_t n, std::size_t dim, std::mt19937_64& rng)
{
    std::vector<RatMatrix> gens;
    for (std::size_t i = 0; i < n; ++i)
        gens.push_back(RatMatrix::random_integer(dim, rng));
    return MatrixContext(dim, std::move(gens));
}

MatrixContext random_commuting_context(std::size_t n, std::size_t dim, std::mt19937_64& rng)
{
    std::uniform_int_distribution<int> dist(-3, 3);
    std::vector<RatMatrix> gens;
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<Rational> diag(dim);
        for (auto& d : diag)
            d = dist(rng);
        gens.push_back(RatMatrix::diagonal(diag));
    }
    return MatrixContext(dim, std::move(gens));
}

MatrixContext matrix_context_from_json(const nlohmann::json& doc)
{
    const auto n = doc.at("n").get<std::size_t>();
    const auto dim = doc.at("N").get<std::size_t>();
    const auto& gens = doc.at("generators");
    if (!gens.is_array() || gens.size() != n)
        throw std::invalid_argument("\"generators\" must list exactly n = " + std::to_string(n) + " matrices");
    std::vector<RatMatrix> mats;
    for (std::size_t g = 0; g < gens.size(); ++g) {
        std::vector<Rational> flat;
        for (const auto& entry : gens[g]) {
            // a row is an array of [num, den] pairs; a flat entry is a pair itself
            if (entry.is_array() && !entry.empty() && entry[0].is_array())
                for (const auto& e : entry)
                    flat.push_back(rational_from_json(e));
            else
                flat.push_back(rational_from_json(entry));
        }
        const std::size_t side = flat.size() == dim * dim ? dim : 0;
        if (side == 0) {
            std::size_t got = 0;
            while ((got + 1) * (got + 1) <= flat.size())
                ++got;
            throw DimensionMismatch(g, got, dim);
        }
        std::vector<std::vector<Rational>> rows(dim, std::vector<Rational>(dim));
        for (std::size_t k = 0; k < flat.size(); ++k)
            rows[k / dim][k % dim] = flat[k];
        mats.push_back(RatMatrix::from_rows(rows));
    }
    return MatrixContext(dim, std::move(mats));
}

nlohmann::ordered_json matrix_context_to_json(const MatrixContext& ctx)
{
    nlohmann::ordered_json doc;
    doc["n"] = ctx.derivation_count();
    doc["N"] = ctx.dim();
    auto gens = nlohmann::ordered_json::array();
    for (const auto& g : ctx.generators()) {
        auto rows = nlohmann::ordered_json::array();
        for (std::size_t i = 0; i < ctx.dim(); ++i) {
            auto row = nlohmann::ordered_json::array();
            for (std::size_t j = 0; j < ctx.dim(); ++j)
                row.push_back(rational_to_json(g.at(i, j)));
            rows.push_back(row);
        }
        gens.push_back(rows);
    }
    doc["generators"] = gens;
    return doc;
}

}  // namespace lift
