#pragma once

#include <compare>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "lift/rational.hpp"

namespace lift {

// Letters of the free trace algebra. Indices are 0-based. Total order: kind
// (Arg < FirstOrder < SecondOrder < QAtom < Gen), then (d, e, i) lexicographically.
struct Atom {
    enum class Kind { Arg, FirstOrder, SecondOrder, QAtom, Gen };

    Kind kind = Kind::Arg;
    int d = -1;
    int e = -1;
    int i = -1;

    static Atom arg(int i) { return {Kind::Arg, -1, -1, i}; }
    static Atom first(int d, int i) { return {Kind::FirstOrder, d, -1, i}; }
    // D_d D_e A_i with the pair stored unordered (d <= e).
    static Atom second(int d, int e, int i);
    static Atom gen(int d) { return {Kind::Gen, d, -1, -1}; }

    friend auto operator<=>(const Atom&, const Atom&) = default;
};

// Q_{d,e} canonicalized to d < e; returns the sign picked up by the swap.
std::pair<Atom, int> q_atom(int d, int e);

std::string to_string(const Atom& a);

struct FreeWord {
    std::vector<Atom> atoms;
    Rational coeff = 1;
};

// Lexicographically minimal rotation of a word.
struct CyclicWord {
    std::vector<Atom> atoms;
    friend auto operator<=>(const CyclicWord&, const CyclicWord&) = default;
};

CyclicWord canonicalize_cyclic(const FreeWord& w);
CyclicWord canonicalize_cyclic(const std::vector<Atom>& atoms);
std::string to_string(const CyclicWord& w);

// A formal trace expression: sum of coefficient * Tr(cyclic word), no zero entries.
using TraceExpr = std::map<CyclicWord, Rational>;

TraceExpr free_trace_combine(const std::vector<std::pair<FreeWord, Rational>>& words);
void add_into(TraceExpr& into, const CyclicWord& w, const Rational& c);
void add_into(TraceExpr& into, const TraceExpr& other, const Rational& factor = 1);
bool contains_kind(const TraceExpr& e, Atom::Kind kind);
std::string to_string(const TraceExpr& e);

// Element of the free associative algebra on atoms.
class FreePoly {
public:
    using Monomial = std::vector<Atom>;

    FreePoly() = default;
    static FreePoly atom(const Atom& a, const Rational& c = 1);
    static FreePoly from_word(const FreeWord& w);

    const std::map<Monomial, Rational>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add_term(const Monomial& m, const Rational& c);

    friend FreePoly operator+(const FreePoly& a, const FreePoly& b);
    friend FreePoly operator-(const FreePoly& a, const FreePoly& b);
    friend FreePoly operator*(const FreePoly& a, const FreePoly& b);
    friend FreePoly operator*(const Rational& s, const FreePoly& a);
    friend bool operator==(const FreePoly&, const FreePoly&) = default;

private:
    std::map<Monomial, Rational> terms_;
};

// D_d by the Leibniz rule with commuting derivations: D_d A_i = FirstOrder(d, i),
// D_d FirstOrder(e, i) = SecondOrder({d, e}, i). Throws std::domain_error for
// letters whose derivative leaves the alphabet (SecondOrder, QAtom, Gen).
FreePoly derive(int d, const FreePoly& p);

// Tr of a polynomial as a cyclic-word expression.
TraceExpr trace(const FreePoly& p);

}  // namespace lift
