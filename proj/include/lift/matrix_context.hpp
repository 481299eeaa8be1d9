#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "lift/context.hpp"
#include "lift/matrix.hpp"

namespace lift {

struct DimensionMismatch : std::invalid_argument {
    DimensionMismatch(std::size_t index, std::size_t got, std::size_t want);
    std::size_t offender;
};

// Full matrix algebra gl_N(Q) with inner derivations D_i = ad(G_i) and
// Q_ij = [G_i, G_j]. Only the upper triangle of Q is stored; q(j, i) = -q(i, j).
class MatrixContext {
public:
    using Element = RatMatrix;

    MatrixContext(std::size_t dim, std::vector<RatMatrix> generators);

    std::size_t dim() const { return dim_; }
    std::size_t derivation_count() const { return generators_.size(); }
    const std::vector<RatMatrix>& generators() const { return generators_; }

    RatMatrix mul(const RatMatrix& a, const RatMatrix& b) const { return a * b; }
    RatMatrix add(const RatMatrix& a, const RatMatrix& b) const { return a + b; }
    RatMatrix sub(const RatMatrix& a, const RatMatrix& b) const { return a - b; }
    RatMatrix scale(const Rational& s, const RatMatrix& a) const { return s * a; }
    RatMatrix bracket(const RatMatrix& a, const RatMatrix& b) const { return a * b - b * a; }
    Rational trace(const RatMatrix& a) const { return a.trace(); }
    Rational trace_product(const RatMatrix& a, const RatMatrix& b) const
    {
        return RatMatrix::trace_of_product(a, b);
    }
    RatMatrix derive(std::size_t i, const RatMatrix& a) const;
    bool has_q() const { return true; }
    RatMatrix q(std::size_t i, std::size_t j) const;
    bool equal(const RatMatrix& a, const RatMatrix& b) const { return a == b; }
    bool is_zero(const RatMatrix& a) const { return a.is_zero(); }
    RatMatrix random_element(std::mt19937_64& rng) const { return RatMatrix::random_integer(dim_, rng); }

    // Negative controls: replace the stored Q_ij (i != j) without touching the generators.
    MatrixContext with_q_override(std::size_t i, std::size_t j, RatMatrix value) const;

    bool q_vanishes() const;

private:
    std::size_t upper_index(std::size_t i, std::size_t j) const;

    std::size_t dim_;
    std::vector<RatMatrix> generators_;
    std::vector<RatMatrix> q_upper_;
    RatMatrix zero_;
};

MatrixContext make_matrix_context(std::size_t dim, std::vector<RatMatrix> generators);

// n generators with entries uniform in [-3, 3].
MatrixContext random_matrix_context(std::size_t n, std::size_t dim, std::mt19937_64& rng);
// n random diagonal generators (pairwise commuting, so Q = 0).
MatrixContext random_commuting_context(std::size_t n, std::size_t dim, std::mt19937_64& rng);

// {"n": int, "N": int, "generators": [[[num, den], ...], ...]}; each generator
// is a row-major list of N*N rationals, or a list of N rows.
MatrixContext matrix_context_from_json(const nlohmann::json& doc);
nlohmann::ordered_json matrix_context_to_json(const MatrixContext& ctx);

}  // namespace lift
