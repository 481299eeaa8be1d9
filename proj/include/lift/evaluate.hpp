#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <thread>
#include <vector>

#include "lift/cochain.hpp"
#include "lift/combinatorics.hpp"
#include "lift/context.hpp"

namespace lift {

struct EvalStats {
    std::uint64_t terms = 0;  // signed trace products summed
};

struct EvalOptions {
    // Workers split the first-slot branches of the permutation grid; partial
    // sums are merged in branch order. Exact arithmetic makes the result
    // independent of this value.
    unsigned threads = 1;
};

namespace detail {

// Depth-first walk over (sigma, tau) that shares prefix products between
// permutations agreeing on their first slots. The last factor is folded in
// with trace_product so no full final product is formed.
template <TraceAlgebra Ctx>
class WordWalker {
public:
    using Element = typename Ctx::Element;

    WordWalker(const Ctx& ctx, const TermWord& word, int n, std::span<const Element> args,
               const std::vector<Element>& deriv_table, const std::vector<Element>& q_table)
        : ctx_(ctx), word_(word), n_(n), arity_(static_cast<int>(args.size())), args_(args),
          deriv_(deriv_table), qf_(q_table)
    {
        std::vector<std::size_t> arg_order;
        std::vector<std::size_t> d_order;
        std::uint32_t seen = 0;
        for (const auto& s : word.slots) {
            arg_order.push_back(static_cast<std::size_t>(s.arg));
            if (s.kind != TermSlot::Kind::Plain) {
                d_order.push_back(static_cast<std::size_t>(s.d1));
                seen |= 1u << s.d1;
            }
            if (s.kind == TermSlot::Kind::QFused) {
                d_order.push_back(static_cast<std::size_t>(s.d2));
                seen |= 1u << s.d2;
            }
        }
        missing_ = n_ - static_cast<int>(d_order.size());
        for (int d = 0; d < n_; ++d)
            if (!(seen & (1u << d)))
                d_order.push_back(static_cast<std::size_t>(d));
        base_sign_ = permutation_sign(arg_order) * permutation_sign(d_order);
        prefix_.resize(word.slots.size());
    }

    // A word that leaves two or more derivation slots unused vanishes under the
    // alternation (the free slots contribute a full signed sum over Sym(k), k >= 2).
    bool vanishes() const { return missing_ >= 2; }

    std::size_t first_slot_branches() const { return branches_at(0).size(); }

    Rational run_branch(std::size_t branch, EvalStats& stats)
    {
        Rational sum = 0;
        const auto choice = branches_at(0)[branch];
        descend(0, choice, 0, 0, 0, 0, sum, stats);
        return base_sign_ > 0 ? sum : Rational(-sum);
    }

private:
    struct Choice {
        int arg;
        int dv1;
        int dv2;
    };

    std::vector<Choice> branches_at(std::size_t slot, std::uint32_t used_args = 0, std::uint32_t used_d = 0) const
    {
        std::vector<Choice> out;
        const auto& s = word_.slots[slot];
        for (int a = 0; a < arity_; ++a) {
            if (used_args & (1u << a))
                continue;
            if (s.kind == TermSlot::Kind::Plain) {
                out.push_back({a, -1, -1});
                continue;
            }
            for (int v1 = 0; v1 < n_; ++v1) {
                if (used_d & (1u << v1))
                    continue;
                if (s.kind == TermSlot::Kind::Deriv) {
                    out.push_back({a, v1, -1});
                    continue;
                }
                for (int v2 = 0; v2 < n_; ++v2)
                    if (v2 != v1 && !(used_d & (1u << v2)))
                        out.push_back({a, v1, v2});
            }
        }
        return out;
    }

    const Element& factor(const TermSlot& s, const Choice& c) const
    {
        switch (s.kind) {
        case TermSlot::Kind::Plain:
            return args_[c.arg];
        case TermSlot::Kind::Deriv:
            return deriv_[static_cast<std::size_t>(c.dv1) * arity_ + c.arg];
        case TermSlot::Kind::QFused:
            break;
        }
        return qf_[(static_cast<std::size_t>(c.dv1) * n_ + c.dv2) * arity_ + c.arg];
    }

    static int count_above(std::uint32_t used, int v) { return std::popcount(used >> (v + 1)); }

    void descend(std::size_t slot, const Choice& c, std::uint32_t used_args, std::uint32_t used_d, int arg_inv,
                 int d_inv, Rational& sum, EvalStats& stats)
    {
        const auto& s = word_.slots[slot];
        arg_inv += count_above(used_args, c.arg);
        used_args |= 1u << c.arg;
        if (c.dv1 >= 0) {
            d_inv += count_above(used_d, c.dv1);
            used_d |= 1u << c.dv1;
        }
        if (c.dv2 >= 0) {
            d_inv += count_above(used_d, c.dv2);
            used_d |= 1u << c.dv2;
        }
        const Element& f = factor(s, c);
        const std::size_t last = word_.slots.size() - 1;
        if (slot == last) {
            if (missing_ == 1) {
                const std::uint32_t all = n_ >= 32 ? ~0u : ((1u << n_) - 1);
                const int rest = std::countr_zero(all & ~used_d);
                d_inv += count_above(used_d, rest);
            }
            Rational t = slot == 0 ? ctx_.trace(f) : ctx_.trace_product(prefix_[slot - 1], f);
            ++stats.terms;
            if ((arg_inv + d_inv) % 2 == 0)
                sum += t;
            else
                sum -= t;
            return;
        }
        prefix_[slot] = slot == 0 ? f : ctx_.mul(prefix_[slot - 1], f);
        for (const auto& next : branches_at(slot + 1, used_args, used_d))
            descend(slot + 1, next, used_args, used_d, arg_inv, d_inv, sum, stats);
    }

    const Ctx& ctx_;
    const TermWord& word_;
    int n_;
    int arity_;
    std::span<const Element> args_;
    const std::vector<Element>& deriv_;
    const std::vector<Element>& qf_;
    int missing_ = 0;
    int base_sign_ = 1;
    std::vector<Element> prefix_;
};

}  // namespace detail

// Optimized evaluation of an alternating trace cochain.
template <TraceAlgebra Ctx>
Rational evaluate(const CochainDescriptor& d, const Ctx& ctx, std::span<const typename Ctx::Element> args,
                  EvalStats* stats = nullptr, EvalOptions options = {})
{
    using Element = typename Ctx::Element;
    if (static_cast<int>(args.size()) != d.arity)
        throw std::invalid_argument("evaluate: expected " + std::to_string(d.arity) + " arguments, got " +
                                    std::to_string(args.size()));
    if (static_cast<int>(ctx.derivation_count()) != d.n)
        throw std::invalid_argument("evaluate: cochain uses " + std::to_string(d.n) + " derivations, context has " +
                                    std::to_string(ctx.derivation_count()));
    if (d.arity > 31 || d.n > 31)
        throw std::invalid_argument("evaluate: arity and derivation count are limited to 31");
    bool need_deriv = false;
    bool need_q = false;
    for (const auto& w : d.words) {
        if (w.outer)
            throw std::invalid_argument("evaluate: words with an outer derivation are symbolic-only");
        for (const auto& s : w.slots) {
            need_deriv |= s.kind == TermSlot::Kind::Deriv;
            need_q |= s.kind == TermSlot::Kind::QFused;
        }
    }
    if (need_q && !ctx.has_q())
        throw MissingQ("cochain has Q factors but the context provides no Q");

    const std::size_t arity = args.size();
    const std::size_t n = ctx.derivation_count();
    std::vector<Element> deriv_table;
    if (need_deriv)
        for (std::size_t v = 0; v < n; ++v)
            for (std::size_t a = 0; a < arity; ++a)
                deriv_table.push_back(ctx.derive(v, args[a]));
    std::vector<Element> q_table;
    if (need_q)
        for (std::size_t v1 = 0; v1 < n; ++v1)
            for (std::size_t v2 = 0; v2 < n; ++v2) {
                if (v1 == v2) {
                    for (std::size_t a = 0; a < arity; ++a)
                        q_table.push_back(args[a]);  // never read
                    continue;
                }
                const Element q = ctx.q(v1, v2);
                for (std::size_t a = 0; a < arity; ++a)
                    q_table.push_back(ctx.mul(args[a], q));
            }

    EvalStats local;
    Rational total = 0;
    for (const auto& w : d.words) {
        if (w.slots.empty()) {
            continue;
        }
        detail::WordWalker<Ctx> walker(ctx, w, d.n, args, deriv_table, q_table);
        if (walker.vanishes())
            continue;
        const std::size_t branches = walker.first_slot_branches();
        std::vector<Rational> partial(branches);
        std::vector<EvalStats> partial_stats(branches);
        const unsigned workers = std::max(1u, std::min<unsigned>(options.threads, static_cast<unsigned>(branches)));
        if (workers == 1) {
            for (std::size_t b = 0; b < branches; ++b)
                partial[b] = walker.run_branch(b, partial_stats[b]);
        } else {
            std::vector<std::jthread> pool;
            for (unsigned t = 0; t < workers; ++t)
                pool.emplace_back([&, t] {
                    detail::WordWalker<Ctx> own(ctx, w, d.n, args, deriv_table, q_table);
                    for (std::size_t b = t; b < branches; b += workers)
                        partial[b] = own.run_branch(b, partial_stats[b]);
                });
        }
        Rational word_sum = 0;
        for (std::size_t b = 0; b < branches; ++b) {
            word_sum += partial[b];
            local.terms += partial_stats[b].terms;
        }
        total += w.coeff * word_sum;
    }
    if (stats)
        stats->terms += local.terms;
    return total;
}

template <TraceAlgebra Ctx>
Rational evaluate(const CochainDescriptor& d, const Ctx& ctx, const std::vector<typename Ctx::Element>& args,
                  EvalStats* stats = nullptr, EvalOptions options = {})
{
    return evaluate(d, ctx, std::span<const typename Ctx::Element>(args), stats, options);
}

}  // namespace lift
