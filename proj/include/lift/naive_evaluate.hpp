#pragma once

#include <span>
#include <stdexcept>
#include <vector>

#include "lift/cochain.hpp"
#include "lift/combinatorics.hpp"
#include "lift/context.hpp"

namespace lift {

// Reference evaluator: explicit loops over Sym(arity) x Sym(n), every factor
// and product recomputed from scratch. Shares no code path with evaluate()
// beyond the context operations themselves.
template <TraceAlgebra Ctx>
Rational evaluate_naive(const CochainDescriptor& d, const Ctx& ctx, std::span<const typename Ctx::Element> args)
{
    using Element = typename Ctx::Element;
    if (static_cast<int>(args.size()) != d.arity || static_cast<int>(ctx.derivation_count()) != d.n)
        throw std::invalid_argument("evaluate_naive: shape mismatch");
    const auto sigmas = all_signed_permutations(static_cast<std::size_t>(d.arity));
    const auto taus = all_signed_permutations(static_cast<std::size_t>(d.n));
    Rational total = 0;
    for (const auto& w : d.words) {
        if (w.outer)
            throw std::invalid_argument("evaluate_naive: outer derivations are symbolic-only");
        for (const auto& sigma : sigmas) {
            for (const auto& tau : taus) {
                std::vector<Element> factors;
                for (const auto& s : w.slots) {
                    const Element& a = args[sigma.perm[s.arg]];
                    switch (s.kind) {
                    case TermSlot::Kind::Plain:
                        factors.push_back(a);
                        break;
                    case TermSlot::Kind::Deriv:
                        factors.push_back(ctx.derive(tau.perm[s.d1], a));
                        break;
                    case TermSlot::Kind::QFused:
                        if (!ctx.has_q())
                            throw MissingQ("evaluate_naive: context has no Q");
                        factors.push_back(ctx.mul(a, ctx.q(tau.perm[s.d1], tau.perm[s.d2])));
                        break;
                    }
                }
                if (factors.empty())
                    continue;
                Element product = factors.front();
                for (std::size_t k = 1; k < factors.size(); ++k)
                    product = ctx.mul(product, factors[k]);
                const Rational t = ctx.trace(product);
                const int sign = sigma.sign * tau.sign;
                total += sign > 0 ? Rational(w.coeff * t) : Rational(-w.coeff * t);
            }
        }
    }
    return total;
}

template <TraceAlgebra Ctx>
Rational evaluate_naive(const CochainDescriptor& d, const Ctx& ctx, const std::vector<typename Ctx::Element>& args)
{
    return evaluate_naive(d, ctx, std::span<const typename Ctx::Element>(args));
}

}  // namespace lift
