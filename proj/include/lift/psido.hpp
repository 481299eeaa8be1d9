#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "lift/context.hpp"
#include "lift/report.hpp"

namespace lift {

struct InsufficientPrecision : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// x_1^{a_1} .. x_n^{a_n} d_1^{b_1} .. d_n^{b_n}, normal ordered (all d to the right).
struct PsiMonomial {
    std::vector<int> x;
    std::vector<int> d;
    friend auto operator<=>(const PsiMonomial&, const PsiMonomial&) = default;
};

// Truncated formal pseudodifferential symbol. Coefficients of monomials with
// d_i-exponent >= window[i] for every i are exact; nothing below is stored.
class PsiDOSymbol {
public:
    PsiDOSymbol() = default;
    PsiDOSymbol(int vars, std::vector<int> window);

    static PsiDOSymbol monomial(std::vector<int> x, std::vector<int> d, const Rational& c, std::vector<int> window);
    // single variable shorthand
    static PsiDOSymbol monomial(int x, int d, const Rational& c, int window);

    int var_count() const { return vars_; }
    const std::vector<int>& window() const { return window_; }
    const std::map<PsiMonomial, Rational>& terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }
    // largest stored d_i exponent, or window[i] - 1 when nothing is stored
    int top_order(int i) const;

    Rational coefficient(const PsiMonomial& m) const;
    bool in_window(const PsiMonomial& m) const;

    void add_term(const PsiMonomial& m, const Rational& c);  // ignored below the window
    PsiDOSymbol truncated(const std::vector<int>& window) const;  // window may only rise

    friend PsiDOSymbol operator+(const PsiDOSymbol& a, const PsiDOSymbol& b);
    friend PsiDOSymbol operator-(const PsiDOSymbol& a, const PsiDOSymbol& b);
    friend PsiDOSymbol operator*(const Rational& s, const PsiDOSymbol& a);

    // Equal on the intersection of the two windows.
    bool agrees_with(const PsiDOSymbol& other) const;

private:
    int vars_ = 0;
    std::vector<int> window_;
    std::map<PsiMonomial, Rational> terms_;
};

PsiDOSymbol compose(const PsiDOSymbol& a, const PsiDOSymbol& b);

// Coefficient of x_1^-1 .. x_n^-1 d_1^-1 .. d_n^-1.
Rational residue_trace(const PsiDOSymbol& a);
// residue_trace(compose(a, b)) without forming the product.
Rational residue_of_product(const PsiDOSymbol& a, const PsiDOSymbol& b);

struct LogDerivationTag {
    enum class Kind { LnX, LnPartial };
    Kind kind;
    int var;  // 0-based
};

// ad(ln d_i): sum_k ((-1)^{k+1}/k) (d/dx_i)^k(a) d_i^{-k}
// ad(ln x_i): sum_k ((-1)^k/k) x_i^{-k} (d/dxi_i)^k(a)
PsiDOSymbol apply_log_derivation(const LogDerivationTag& tag, const PsiDOSymbol& a);

// T = sum_{m=1}^{terms} ((m-1)!/m) x_i^-m d_i^-m in variable i.
PsiDOSymbol log_bracket_series(int vars, int var, int terms, const std::vector<int>& window);

// Coefficients t_m of T with [ad ln d, ad ln x] = ad T, read off from the two
// derivations applied to x (single variable, exact window).
std::vector<Rational> derive_log_bracket_coefficients(int cutoff);

// Checks the derived coefficients against (m-1)!/m and, on random symbols,
// ad(ln d)(ad(ln x)(a)) - ad(ln x)(ad(ln d)(a)) = [T_cutoff, a] within the window.
VerificationReport bracket_series_check(int cutoff, int trials = 10, std::uint64_t seed = 1, int window = 0);

struct RandomSymbolShape {
    int terms = 5;
    int x_lo = -3, x_hi = 3;
    int d_lo = -2, d_hi = 2;
    int c_lo = -3, c_hi = 3;
};

PsiDOSymbol random_symbol(int vars, const std::vector<int>& window, std::mt19937_64& rng,
                          const RandomSymbolShape& shape = {});

// "3/2 x^-2 d^-2 + 1 x^1 d^0" for one variable, "1 x1^-1 d1^-1 x2^0 d2^0" for several.
std::string to_string(const PsiDOSymbol& a);
PsiDOSymbol parse_symbol(const std::string& text, int vars, const std::vector<int>& window);

// Formal pseudodifferential operators in n variables with the 2n derivations
// ad(ln x_1..ln x_n, ln d_1..ln d_n), numbered 0..2n-1 in that order.
// Q between ln x_i and ln d_i is -T_i (Q between ln d_i and ln x_i is T_i);
// all other entries vanish.
class PsiDOContext {
public:
    using Element = PsiDOSymbol;

    PsiDOContext(int vars, int depth, RandomSymbolShape shape = {});

    int vars() const { return vars_; }
    const std::vector<int>& window() const { return window_; }
    std::size_t derivation_count() const { return static_cast<std::size_t>(2 * vars_); }

    PsiDOSymbol mul(const PsiDOSymbol& a, const PsiDOSymbol& b) const { return compose(a, b); }
    PsiDOSymbol add(const PsiDOSymbol& a, const PsiDOSymbol& b) const { return a + b; }
    PsiDOSymbol sub(const PsiDOSymbol& a, const PsiDOSymbol& b) const { return a - b; }
    PsiDOSymbol scale(const Rational& s, const PsiDOSymbol& a) const { return s * a; }
    PsiDOSymbol bracket(const PsiDOSymbol& a, const PsiDOSymbol& b) const { return compose(a, b) - compose(b, a); }
    Rational trace(const PsiDOSymbol& a) const { return residue_trace(a); }
    Rational trace_product(const PsiDOSymbol& a, const PsiDOSymbol& b) const { return residue_of_product(a, b); }
    PsiDOSymbol derive(std::size_t i, const PsiDOSymbol& a) const;
    bool has_q() const { return true; }
    PsiDOSymbol q(std::size_t i, std::size_t j) const;
    bool equal(const PsiDOSymbol& a, const PsiDOSymbol& b) const { return a.agrees_with(b); }
    bool is_zero(const PsiDOSymbol& a) const { return a.empty(); }
    PsiDOSymbol random_element(std::mt19937_64& rng) const { return random_symbol(vars_, window_, rng, shape_); }

    LogDerivationTag tag(std::size_t i) const;

private:
    int vars_;
    std::vector<int> window_;
    RandomSymbolShape shape_;
    std::vector<PsiDOSymbol> series_;  // T_i per variable
    PsiDOSymbol zero_;
};

PsiDOContext make_psido_context(int vars, int depth);

}  // namespace lift
