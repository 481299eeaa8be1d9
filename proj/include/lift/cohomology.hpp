#pragma once

#include <chrono>
#include <optional>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "lift/cochain.hpp"
#include "lift/context.hpp"
#include "lift/evaluate.hpp"
#include "lift/matrix_context.hpp"
#include "lift/report.hpp"

namespace lift {

// Independent generator per (seed, trial) so trials can be replayed alone.
std::mt19937_64 trial_rng(std::uint64_t seed, std::uint64_t offset);

// Inner-derivation evaluation of expanded words: Gen(d) -> G_{tau(d)}.
Rational evaluate(const ExpandedCochain& c, const MatrixContext& ctx, std::span<const RatMatrix> args,
                  EvalStats* stats = nullptr, EvalOptions options = {});

// (d psi)(A_1..A_{k+1}) = sum_{i<j} (-1)^{i+j} psi([A_i, A_j], A_1, .., ^i, .., ^j, .., A_{k+1})
template <class Cochain, TraceAlgebra Ctx>
Rational ce_differential(const Cochain& c, const Ctx& ctx, std::span<const typename Ctx::Element> args,
                         EvalStats* stats = nullptr, EvalOptions options = {})
{
    using Element = typename Ctx::Element;
    const std::size_t m = args.size();
    if (static_cast<int>(m) != c.arity + 1)
        throw std::invalid_argument("ce_differential: expected " + std::to_string(c.arity + 1) + " arguments, got " +
                                    std::to_string(m));
    Rational total = 0;
    std::vector<Element> reduced;
    reduced.reserve(m - 1);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j) {
            reduced.clear();
            reduced.push_back(ctx.bracket(args[i], args[j]));
            for (std::size_t k = 0; k < m; ++k)
                if (k != i && k != j)
                    reduced.push_back(args[k]);
            const Rational v = evaluate(c, ctx, std::span<const Element>(reduced), stats, options);
            if ((i + j) % 2 == 0)
                total += v;
            else
                total -= v;
        }
    return total;
}

template <TraceAlgebra Ctx>
std::vector<typename Ctx::Element> random_arguments(const Ctx& ctx, std::size_t count, std::mt19937_64& rng)
{
    std::vector<typename Ctx::Element> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i)
        out.push_back(ctx.random_element(rng));
    return out;
}

namespace detail {

inline std::int64_t elapsed_ms(std::chrono::steady_clock::time_point start)
{
    return std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace detail

// Samples seeded argument tuples and records d(cochain) per trial; passes iff
// every residual is exactly zero.
template <class Cochain, TraceAlgebra Ctx>
VerificationReport verify_cocycle(const Cochain& c, const Ctx& ctx, int trials, std::uint64_t seed,
                                  std::string check = "cocycle", EvalOptions options = {})
{
    VerificationReport report;
    report.check = std::move(check);
    report.params = {{"arity", c.arity}, {"n", c.n}, {"words", c.words.size()}, {"trials", trials}, {"seed", seed}};
    const auto start = std::chrono::steady_clock::now();
    EvalStats stats;
    for (int t = 0; t < trials; ++t) {
        auto rng = trial_rng(seed, static_cast<std::uint64_t>(t));
        const auto args = random_arguments(ctx, static_cast<std::size_t>(c.arity + 1), rng);
        using Element = typename Ctx::Element;
        report.trials.push_back(
            {static_cast<std::uint64_t>(t), ce_differential(c, ctx, std::span<const Element>(args), &stats, options), {}});
    }
    report.terms_evaluated = stats.terms;
    report.ms = detail::elapsed_ms(start);
    return report;
}

// Value of the cochain itself on random tuples (zero expected).
template <TraceAlgebra Ctx>
VerificationReport verify_vanishes(const CochainDescriptor& c, const Ctx& ctx, int trials, std::uint64_t seed,
                                   std::string check, EvalOptions options = {})
{
    VerificationReport report;
    report.check = std::move(check);
    report.params = {{"arity", c.arity}, {"n", c.n}, {"words", c.words.size()}, {"trials", trials}, {"seed", seed}};
    const auto start = std::chrono::steady_clock::now();
    EvalStats stats;
    for (int t = 0; t < trials; ++t) {
        auto rng = trial_rng(seed, static_cast<std::uint64_t>(t));
        const auto args = random_arguments(ctx, static_cast<std::size_t>(c.arity), rng);
        report.trials.push_back({static_cast<std::uint64_t>(t), evaluate(c, ctx, args, &stats, options), {}});
    }
    report.terms_evaluated = stats.terms;
    report.ms = detail::elapsed_ms(start);
    return report;
}

// Exact check of the context invariants on random elements: trace property,
// trace annihilation by every D_i, Leibniz, [D_i,D_j] = ad Q_ij, Q antisymmetry,
// and Alt_{i,j,k} D_k(Q_ij) = 0.
template <TraceAlgebra Ctx>
VerificationReport check_axioms(const Ctx& ctx, int trials, std::uint64_t seed)
{
    VerificationReport report;
    report.check = "axioms";
    const std::size_t n = ctx.derivation_count();
    report.params = {{"n", n}, {"trials", trials}, {"seed", seed}};
    const auto start = std::chrono::steady_clock::now();

    struct Tally {
        std::string name;
        int checked = 0;
        int failed = 0;
        void record(bool ok)
        {
            ++checked;
            failed += ok ? 0 : 1;
        }
    };
    Tally trace_prop{"trace(ab) = trace(ba)"};
    Tally trace_kill{"trace(D_i a) = 0"};
    Tally leibniz{"D_i(ab) = D_i(a) b + a D_i(b)"};
    Tally bracket_q{"D_i D_j a - D_j D_i a = [Q_ij, a]"};
    Tally antisym{"Q_ji = -Q_ij"};
    Tally jacobi{"Alt_{i,j,k} D_k(Q_ij) = 0"};

    for (int t = 0; t < trials; ++t) {
        auto rng = trial_rng(seed, static_cast<std::uint64_t>(t));
        const auto a = ctx.random_element(rng);
        const auto b = ctx.random_element(rng);
        trace_prop.record(ctx.trace(ctx.mul(a, b)) == ctx.trace(ctx.mul(b, a)));
        for (std::size_t i = 0; i < n; ++i) {
            trace_kill.record(is_zero(ctx.trace(ctx.derive(i, a))));
            const auto lhs = ctx.derive(i, ctx.mul(a, b));
            const auto rhs = ctx.add(ctx.mul(ctx.derive(i, a), b), ctx.mul(a, ctx.derive(i, b)));
            leibniz.record(ctx.equal(lhs, rhs));
        }
        if (!ctx.has_q())
            continue;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                if (i == j)
                    continue;
                const auto comm = ctx.sub(ctx.derive(i, ctx.derive(j, a)), ctx.derive(j, ctx.derive(i, a)));
                bracket_q.record(ctx.equal(comm, ctx.bracket(ctx.q(i, j), a)));
                if (t == 0 && i < j)
                    antisym.record(ctx.equal(ctx.q(j, i), ctx.scale(Rational(-1), ctx.q(i, j))));
            }
        if (t == 0)
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = i + 1; j < n; ++j)
                    for (std::size_t k = j + 1; k < n; ++k) {
                        // each cyclic term appears twice in the full alternation
                        auto cyc = ctx.add(ctx.derive(k, ctx.q(i, j)),
                                           ctx.add(ctx.derive(i, ctx.q(j, k)), ctx.derive(j, ctx.q(k, i))));
                        jacobi.record(ctx.is_zero(ctx.scale(Rational(2), cyc)));
                    }
    }
    for (const Tally* tally : {&trace_prop, &trace_kill, &leibniz, &bracket_q, &antisym, &jacobi}) {
        if (tally->checked == 0 && tally != &jacobi && tally != &bracket_q && tally != &antisym)
            continue;
        std::string detail = std::to_string(tally->checked - tally->failed) + "/" + std::to_string(tally->checked) + " hold";
        if (tally->checked == 0)
            detail = ctx.has_q() ? "vacuous (fewer than 3 derivations)" : "no Q in context";
        report.entries.push_back({tally->name, tally->failed == 0, detail});
    }
    report.ms = detail::elapsed_ms(start);
    return report;
}

// Checks over inner (matrix) contexts.
VerificationReport verify_lemma_1_1(int n, int l, const MatrixContext& ctx, int trials, std::uint64_t seed,
                                    bool require_commuting = true);
VerificationReport verify_lemma_1_2(int n, int l, const MatrixContext& ctx, int trials, std::uint64_t seed);
VerificationReport verify_key_lemma(int n, int l, const MatrixContext& ctx, int trials, std::uint64_t seed);

// Ratio of the circle-built Psi_{n,1} to the interval-built Psi_{n,1} on random
// arguments. ratio is unset when the interval-built value vanished on every
// attempt; proportional is false when two attempts gave different ratios.
struct Normalization {
    std::optional<Rational> ratio;
    bool proportional = true;
    int nonzero_samples = 0;
};

Normalization psi_n1_normalization(int n, const MatrixContext& ctx, int attempts, std::uint64_t seed);

}  // namespace lift
