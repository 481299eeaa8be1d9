#include "lift/free_trace.hpp"

#include <algorithm>
#include <stdexcept>

namespace lift {

Atom Atom::second(int d, int e, int i)
{
    if (d > e)
        std::swap(d, e);
    return {Kind::SecondOrder, d, e, i};
}

std::pair<Atom, int> q_atom(int d, int e)
{
    if (d == e)
        throw std::invalid_argument("Q_{d,d} is not a letter");
    if (d < e)
        return {Atom{Atom::Kind::QAtom, d, e, -1}, 1};
    return {Atom{Atom::Kind::QAtom, e, d, -1}, -1};
}

std::string to_string(const Atom& a)
{
    const auto s = [](int v) { return std::to_string(v + 1); };
    switch (a.kind) {
    case Atom::Kind::Arg:
        return "A" + s(a.i);
    case Atom::Kind::FirstOrder:
        return "D" + s(a.d) + "A" + s(a.i);
    case Atom::Kind::SecondOrder:
        return "D" + s(a.d) + "D" + s(a.e) + "A" + s(a.i);
    case Atom::Kind::QAtom:
        return "Q" + s(a.d) + s(a.e);
    case Atom::Kind::Gen:
        return "G" + s(a.d);
    }
    return "?";
}

CyclicWord canonicalize_cyclic(const std::vector<Atom>& atoms)
{
    const std::size_t len = atoms.size();
    std::size_t best = 0;
    for (std::size_t r = 1; r < len; ++r)
        for (std::size_t k = 0; k < len; ++k) {
            const Atom& x = atoms[(r + k) % len];
            const Atom& y = atoms[(best + k) % len];
            if (x == y)
                continue;
            if (x < y)
                best = r;
            break;
        }
    CyclicWord out;
    out.atoms.reserve(len);
    for (std::size_t k = 0; k < len; ++k)
        out.atoms.push_back(atoms[(best + k) % len]);
    return out;
}

CyclicWord canonicalize_cyclic(const FreeWord& w) { return canonicalize_cyclic(w.atoms); }

std::string to_string(const CyclicWord& w)
{
    std::string out = "Tr(";
    for (std::size_t k = 0; k < w.atoms.size(); ++k)
        out += (k ? " " : "") + to_string(w.atoms[k]);
    return out + ")";
}

void add_into(TraceExpr& into, const CyclicWord& w, const Rational& c)
{
    if (is_zero(c))
        return;
    auto [it, inserted] = into.try_emplace(w, c);
    if (inserted)
        return;
    it->second += c;
    if (is_zero(it->second))
        into.erase(it);
}

void add_into(TraceExpr& into, const TraceExpr& other, const Rational& factor)
{
    for (const auto& [w, c] : other)
        add_into(into, w, factor * c);
}

TraceExpr free_trace_combine(const std::vector<std::pair<FreeWord, Rational>>& words)
{
    TraceExpr out;
    for (const auto& [w, c] : words)
        add_into(out, canonicalize_cyclic(w), w.coeff * c);
    return out;
}

bool contains_kind(const TraceExpr& e, Atom::Kind kind)
{
    for (const auto& [w, c] : e)
        for (const auto& a : w.atoms)
            if (a.kind == kind)
                return true;
    return false;
}

std::string to_string(const TraceExpr& e)
{
    if (e.empty())
        return "0";
    std::string out;
    for (const auto& [w, c] : e) {
        if (!out.empty())
            out += " + ";
        out += lift::to_string(c) + " " + to_string(w);
    }
    return out;
}

FreePoly FreePoly::atom(const Atom& a, const Rational& c)
{
    FreePoly p;
    p.add_term({a}, c);
    return p;
}

FreePoly FreePoly::from_word(const FreeWord& w)
{
    FreePoly p;
    p.add_term(w.atoms, w.coeff);
    return p;
}

void FreePoly::add_term(const Monomial& m, const Rational& c)
{
    if (lift::is_zero(c))
        return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (inserted)
        return;
    it->second += c;
    if (lift::is_zero(it->second))
        terms_.erase(it);
}

FreePoly operator+(const FreePoly& a, const FreePoly& b)
{
    FreePoly r = a;
    for (const auto& [m, c] : b.terms_)
        r.add_term(m, c);
    return r;
}

FreePoly operator-(const FreePoly& a, const FreePoly& b)
{
    FreePoly r = a;
    for (const auto& [m, c] : b.terms_)
        r.add_term(m, -c);
    return r;
}

FreePoly operator*(const FreePoly& a, const FreePoly& b)
{
    FreePoly r;
    for (const auto& [ma, ca] : a.terms_)
        for (const auto& [mb, cb] : b.terms_) {
            FreePoly::Monomial m = ma;
            m.insert(m.end(), mb.begin(), mb.end());
            r.add_term(m, ca * cb);
        }
    return r;
}

FreePoly operator*(const Rational& s, const FreePoly& a)
{
    FreePoly r;
    for (const auto& [m, c] : a.terms_)
        r.add_term(m, s * c);
    return r;
}

namespace {

Atom derive_atom(int d, const Atom& a)
{
    switch (a.kind) {
    case Atom::Kind::Arg:
        return Atom::first(d, a.i);
    case Atom::Kind::FirstOrder:
        return Atom::second(d, a.d, a.i);
    default:
        throw std::domain_error("derivative of " + to_string(a) + " is outside the free alphabet");
    }
}

}  // namespace

FreePoly derive(int d, const FreePoly& p)
{
    FreePoly r;
    for (const auto& [m, c] : p.terms())
        for (std::size_t k = 0; k < m.size(); ++k) {
            FreePoly::Monomial next = m;
            next[k] = derive_atom(d, m[k]);
            r.add_term(next, c);
        }
    return r;
}

TraceExpr trace(const FreePoly& p)
{
    TraceExpr out;
    for (const auto& [m, c] : p.terms())
        add_into(out, canonicalize_cyclic(m), c);
    return out;
}

}  // namespace lift
