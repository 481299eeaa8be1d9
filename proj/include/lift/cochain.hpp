#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "lift/combinatorics.hpp"
#include "lift/rational.hpp"

namespace lift {

// One factor inside Tr(...). Argument and derivation-slot indices are 0-based;
// derivation slots are permuted by the alternation at evaluation time.
struct TermSlot {
    enum class Kind { Plain, Deriv, QFused };

    Kind kind = Kind::Plain;
    int arg = 0;
    int d1 = -1;  // Deriv: derivation slot; QFused: first Q index
    int d2 = -1;  // QFused: second Q index

    static TermSlot plain(int arg) { return {Kind::Plain, arg, -1, -1}; }
    static TermSlot deriv(int arg, int dslot) { return {Kind::Deriv, arg, dslot, -1}; }
    static TermSlot qfused(int arg, int q1, int q2) { return {Kind::QFused, arg, q1, q2}; }

    friend bool operator==(const TermSlot&, const TermSlot&) = default;
};

struct TermWord {
    Rational coeff = 1;
    std::vector<TermSlot> slots;
    // Derivation slot applied to the whole product (Leibniz-expanded by the
    // symbolic backend). Only build_S_tilde sets it.
    std::optional<int> outer;
    std::string label;
};

// Alternating trace cochain: the sum over words w, sigma in Sym(arity) and
// tau in Sym(n) of sgn(sigma) sgn(tau) coeff(w) Tr(product of slots), with
// A_i -> args[sigma(i)] and derivation slot d -> D_{tau(d)}. No 1/m! factors.
struct CochainDescriptor {
    int arity = 0;
    int n = 0;
    std::vector<TermWord> words;

    void append(const CochainDescriptor& other, const Rational& factor = 1);
    bool has_qfused() const;
    void validate() const;  // throws std::invalid_argument
};

std::string describe_word(const TermWord& w);

CochainDescriptor build_S(const EvenSequence& a);
CochainDescriptor build_S_even(int n, int l);
CochainDescriptor build_S_tilde(const EvenSequence& a);
CochainDescriptor build_R(const EvenSequence& a);
CochainDescriptor build_Psi0(int n, int l);

// Weight of a correction term with k marks: each Q-pair is counted once, not
// twice, by the full derivation alternation, so the word carries 2^-k.
Rational mark_weight(std::size_t marks);

CochainDescriptor build_O_interval(const MarkedInterval& t);
CochainDescriptor build_Sigma_interval(int n, int k);
CochainDescriptor build_Psi_n1(int n);
// Psi_{n,1} with every correction term dropped; used as a negative control.
CochainDescriptor build_leading_word(int n);

CochainDescriptor build_O_circle(const MarkedCircle& c);
CochainDescriptor build_circle_corrections(int n, int l);
CochainDescriptor build_Psi_nl(int n, int l);

// Plain/Gen letters after substituting D_i A = G_i A - A G_i.
struct Letter {
    enum class Kind { Arg, Gen };
    Kind kind;
    int index;
    friend bool operator==(const Letter&, const Letter&) = default;
};

struct ExpandedWord {
    Rational coeff = 1;
    std::vector<Letter> letters;
};

struct ExpandedCochain {
    int arity = 0;
    int n = 0;
    std::vector<ExpandedWord> words;
};

ExpandedCochain expand_inner(const CochainDescriptor& d);

// True when two Gen letters sit next to each other, reading the word cyclically.
bool has_adjacent_generators(const ExpandedWord& w);

struct AdjacencySplit {
    ExpandedCochain tilde;  // no two generators adjacent
    ExpandedCochain rest;
};

AdjacencySplit split_adjacency(const ExpandedCochain& c);

nlohmann::ordered_json descriptor_to_json(const CochainDescriptor& d);
CochainDescriptor descriptor_from_json(const nlohmann::json& j);

}  // namespace lift
