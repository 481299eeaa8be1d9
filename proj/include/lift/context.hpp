#pragma once

#include <concepts>
#include <cstddef>
#include <random>

#include "lift/rational.hpp"

namespace lift {

// An associative algebra with a trace and derivations D_0..D_{n-1}, optionally
// with the matrix Q satisfying [D_i, D_j] = ad Q_ij. Indices are 0-based.
//
// Backends are immutable after construction; every member is const and pure,
// so one context can be shared by concurrent evaluators.
template <class C>
concept TraceAlgebra = requires(const C& ctx, const typename C::Element& a, std::size_t i,
                                const Rational& s, std::mt19937_64& rng) {
    typename C::Element;
    { ctx.derivation_count() } -> std::convertible_to<std::size_t>;
    { ctx.mul(a, a) } -> std::same_as<typename C::Element>;
    { ctx.add(a, a) } -> std::same_as<typename C::Element>;
    { ctx.sub(a, a) } -> std::same_as<typename C::Element>;
    { ctx.scale(s, a) } -> std::same_as<typename C::Element>;
    { ctx.bracket(a, a) } -> std::same_as<typename C::Element>;
    { ctx.trace(a) } -> std::same_as<Rational>;
    { ctx.trace_product(a, a) } -> std::same_as<Rational>;
    { ctx.derive(i, a) } -> std::same_as<typename C::Element>;
    { ctx.has_q() } -> std::same_as<bool>;
    { ctx.q(i, i) } -> std::same_as<typename C::Element>;
    { ctx.equal(a, a) } -> std::same_as<bool>;
    { ctx.is_zero(a) } -> std::same_as<bool>;
    { ctx.random_element(rng) } -> std::same_as<typename C::Element>;
};

// Thrown when a cochain needs Q but the context has none.
struct MissingQ : std::logic_error {
    using std::logic_error::logic_error;
};

}  // namespace lift
