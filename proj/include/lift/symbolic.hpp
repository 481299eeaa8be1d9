#pragma once

#include <cstddef>
#include <map>
#include <vector>

#include "lift/cochain.hpp"
#include "lift/free_trace.hpp"
#include "lift/report.hpp"

namespace lift {

// Largest n + 2l accepted by the symbolic routines.
inline constexpr int kSymbolicSizeBound = 8;

struct SizeBoundExceeded : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Formal alternation of a descriptor on free polynomial arguments, with
// commuting derivations (SecondOrder atoms unordered). An outer derivation is
// expanded by the Leibniz rule over the whole product.
TraceExpr symbolic_evaluate(const CochainDescriptor& d, const std::vector<FreePoly>& args);

// The descriptor on the generic arguments A_1..A_arity.
TraceExpr symbolic_expand(const CochainDescriptor& d);

// d(descriptor) on the generic arguments A_1..A_{arity+1}.
TraceExpr symbolic_differential(const CochainDescriptor& d);

// Compares sum_a S~_a with S_even in the free algebra. The report passes only
// when the sum equals (n+l) S_even and no SecondOrder atom survives; the
// entries record the factor actually observed.
VerificationReport certify_lemma_1_1_1(int n, int l, int size_bound = kSymbolicSizeBound);

// Generators Tr(D_j(w)) expanded by Leibniz, for every cyclic arrangement w of
// the arguments A_1..A_m carrying every derivation except j exactly once.
struct RelationBasis {
    int arity = 0;
    int n = 0;
    std::vector<TraceExpr> generators;
};

RelationBasis relation_basis(int arity, int n);

struct SpanCertificate {
    bool in_span = false;
    std::size_t rank = 0;
    // expr = sum_g coefficients[g] * generators[g] when in_span
    std::map<std::size_t, Rational> coefficients;
};

// Exact sparse Gaussian elimination over the rationals.
SpanCertificate certify_in_relation_span(const TraceExpr& expr, const RelationBasis& basis);

}  // namespace lift
