// Acceptance run: one PASS/FAIL line per criterion. All residuals must be
// exactly zero; each criterion also has to finish inside its runtime target.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "lift/cohomology.hpp"
#include "lift/naive_evaluate.hpp"
#include "lift/psido.hpp"
#include "lift/symbolic.hpp"

using namespace lift;

namespace {

constexpr std::uint64_t kSeed = 20240601;

struct Outcome {
    bool pass = true;
    std::vector<std::string> notes;
    std::string digest;  // serialized reports, compared by the determinism criterion

    void require(bool ok, const std::string& note)
    {
        pass = pass && ok;
        notes.push_back(std::string(ok ? "ok " : "FAILED ") + note);
    }
    void record(VerificationReport r)
    {
        r.ms.reset();
        digest += r.to_json().dump();
        digest += '\n';
    }
};

struct Criterion {
    int id;
    std::string title;
    double target_s;
    std::function<Outcome()> run;
};

MatrixContext noncommuting(int n, std::size_t dim, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    return random_matrix_context(static_cast<std::size_t>(n), dim, rng);
}

MatrixContext commuting(int n, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    return random_commuting_context(static_cast<std::size_t>(n), static_cast<std::size_t>(std::max(4, n + 1)), rng);
}

std::string nl(int n, int l) { return "(" + std::to_string(n) + "," + std::to_string(l) + ")"; }

std::string first_failure(const VerificationReport& r)
{
    for (const auto& e : r.entries)
        if (!e.pass)
            return e.name + ": " + e.detail;
    for (const auto& t : r.trials)
        if (!t.zero())
            return "trial " + std::to_string(t.seed_offset) + (t.label.empty() ? "" : " " + t.label) +
                   " residual " + to_string(t.residual);
    return "";
}

Outcome axioms()
{
    Outcome o;
    for (std::size_t dim : {3, 4}) {
        int bad = 0;
        for (std::uint64_t s = 0; s < 50; ++s) {
            const auto r = check_axioms(noncommuting(3, dim, kSeed + s), 2, s);
            bad += !r.pass();
            o.record(r);
        }
        o.require(bad == 0, "N=" + std::to_string(dim) + ": 50 seeds, " + std::to_string(bad) + " failing");
    }
    return o;
}

Outcome lemma11()
{
    Outcome o;
    bool control = false;
    for (auto [n, l] : std::vector<std::pair<int, int>>{{1, 1}, {2, 1}, {3, 1}, {2, 2}}) {
        const auto r = verify_lemma_1_1(n, l, commuting(n, kSeed), 20, kSeed);
        o.record(r);
        o.require(r.pass(), nl(n, l) + " S_even = 0 on 20 trials" + (r.pass() ? "" : " [" + first_failure(r) + "]"));
        const auto c = verify_lemma_1_1(n, l, noncommuting(n, static_cast<std::size_t>(std::max(4, n)), kSeed), 3, kSeed,
                                        false);
        o.record(c);
        control = control || c.any_nonzero();
    }
    o.require(control, "negative control: non-commuting generators give a nonzero S_even");
    return o;
}

Outcome lemma111()
{
    Outcome o;
    for (auto [n, l] : std::vector<std::pair<int, int>>{{1, 1}, {2, 1}, {2, 2}}) {
        const auto r = certify_lemma_1_1_1(n, l);
        o.record(r);
        std::string factor;
        for (const auto& e : r.entries)
            if (e.name == "sum of S~ is proportional to S_even")
                factor = e.detail;
        o.require(r.pass(), nl(n, l) + " sum S~ = (n+l) S_even [" + factor + ", n+l = " + std::to_string(n + l) +
                                ", " + first_failure(r) + "]");
    }
    return o;
}

Outcome lemma12()
{
    Outcome o;
    for (int l = 1; 2 * l < 6; ++l)
        for (int n = 1; n + 2 * l <= 6; ++n) {
            const auto r = verify_lemma_1_2(n, l, commuting(n, kSeed + 3), 10, kSeed);
            o.record(r);
            std::string signs;
            for (const auto& e : r.entries) {
                const auto pos = e.detail.find("observed ");
                signs += " " + e.name.substr(2) + ":" + (pos == std::string::npos ? "undetermined" : e.detail.substr(pos + 9));
            }
            o.require(r.pass(), nl(n, l) + signs);
        }
    return o;
}

Outcome thm11()
{
    Outcome o;
    for (auto [n, l] : std::vector<std::pair<int, int>>{{1, 1}, {2, 1}, {3, 1}, {2, 2}}) {
        const auto r = verify_cocycle(build_Psi0(n, l), commuting(n, kSeed + 5), 20, kSeed, "thm11");
        o.record(r);
        o.require(r.pass(), nl(n, l) + " dPsi0 = 0 on 20 trials" + (r.pass() ? "" : " [" + first_failure(r) + "]"));
    }
    return o;
}

Outcome thm21()
{
    Outcome o;
    for (std::size_t dim : {3, 4})
        for (int n : {2, 3, 4}) {
            const auto r = verify_cocycle(build_Psi_n1(n), noncommuting(n, dim, kSeed + 7), 20, kSeed, "thm21");
            o.record(r);
            o.require(r.pass(), "N=" + std::to_string(dim) + " n=" + std::to_string(n) + " dPsi_{n,1} = 0 on 20 trials" +
                                    (r.pass() ? "" : " [" + first_failure(r) + "]"));
        }
    for (int n : {2, 3, 4}) {
        const auto c = verify_cocycle(build_leading_word(n), noncommuting(n, 4, kSeed + 7), 3, kSeed, "thm21-control");
        o.record(c);
        o.require(c.any_nonzero(), "negative control N=4 n=" + std::to_string(n) + ": without corrections d != 0");
    }
    return o;
}

Outcome thm23()
{
    Outcome o;
    const auto r = verify_cocycle(build_Psi_nl(2, 2), noncommuting(2, 4, kSeed + 11), 10, kSeed, "thm23");
    o.record(r);
    o.require(r.pass(), "N=4 dPsi_{2,2} = 0 on 10 six-argument trials" + (r.pass() ? "" : " [" + first_failure(r) + "]"));
    return o;
}

Outcome key_lemma()
{
    Outcome o;
    for (auto [n, l] : std::vector<std::pair<int, int>>{{2, 1}, {2, 2}}) {
        const auto r = verify_key_lemma(n, l, noncommuting(n, 4, kSeed + 13), 10, kSeed);
        o.record(r);
        o.require(r.pass(), nl(n, l) + " d(tilde) = 0 and d(tilde)+d(r) = d(inner) on 10 trials" +
                                (r.pass() ? "" : " [" + first_failure(r) + "]"));
    }
    return o;
}

Outcome psido()
{
    Outcome o;
    {
        const PsiDOContext ctx(1, 10);
        int bad = 0;
        for (std::uint64_t t = 0; t < 50; ++t) {
            auto rng = trial_rng(kSeed, t);
            const auto a = ctx.random_element(rng);
            const auto b = ctx.random_element(rng);
            const auto c = ctx.bracket(a, b);
            bad += residue_trace(c) != 0;
            o.digest += to_string(c) + "\n";
        }
        o.require(bad == 0, "(a) residue of [a,b] = 0 on 50 pairs, window -10");
    }
    {
        const auto r = bracket_series_check(4, 10, kSeed);
        o.record(r);
        const auto t = derive_log_bracket_coefficients(4);
        std::string shown;
        for (const auto& c : t)
            shown += " " + to_string(c);
        const bool exact = t == std::vector<Rational>{1, make_rational(1, 2), make_rational(2, 3), make_rational(3, 2)};
        o.require(r.pass() && exact, "(b) coefficients" + shown);
    }
    {
        const PsiDOContext ctx(1, 10);
        const auto r = verify_cocycle(build_Psi_n1(2), ctx, 5, kSeed, "psido-thm21");
        o.record(r);
        o.require(r.pass(), "(c) dPsi_{2,1} = 0 on 5 tuples, window -10" + (r.pass() ? "" : " [" + first_failure(r) + "]"));
        const auto c = verify_cocycle(build_leading_word(2), ctx, 5, kSeed, "psido-control");
        o.record(c);
        o.require(c.any_nonzero(), "(c) negative control: leading word alone is not closed");
    }
    return o;
}

Outcome oracle()
{
    Outcome o;
    for (int l = 1; 2 * l < 6; ++l)
        for (int n = 1; n + 2 * l <= 6; ++n) {
            const auto ctx = noncommuting(n, 3, kSeed + 17);
            std::vector<CochainDescriptor> ds{build_S_even(n, l), build_Psi0(n, l), build_Psi_nl(n, l)};
            if (l == 1 && n >= 2)
                ds.push_back(build_Psi_n1(n));
            int mismatches = 0;
            std::ostringstream values;
            for (const auto& d : ds)
                for (std::uint64_t t = 0; t < 10; ++t) {
                    auto rng = trial_rng(kSeed, t);
                    const auto args = random_arguments(ctx, static_cast<std::size_t>(d.arity), rng);
                    const Rational fast = evaluate(d, ctx, args);
                    mismatches += fast != evaluate_naive(d, ctx, args);
                    values << to_string(fast) << ' ';
                }
            o.digest += values.str() + "\n";
            o.require(mismatches == 0, nl(n, l) + " " + std::to_string(ds.size()) + " cochains x 10 tuples, " +
                                           std::to_string(mismatches) + " mismatches");
        }
    return o;
}

}  // namespace

int main()
{
    std::vector<Criterion> criteria{
        {1, "context axioms", 5, axioms},
        {2, "S_even vanishes for commuting derivations", 30, lemma11},
        {3, "symbolic sum of S~ equals (n+l) S_even", 60, lemma111},
        {4, "d(R_a) = +-S_a", 60, lemma12},
        {5, "dPsi0 = 0, commuting", 120, thm11},
        {6, "dPsi_{n,1} = 0, non-commuting", 300, thm21},
        {7, "dPsi_{2,2} = 0, non-commuting", 600, thm23},
        {8, "key lemma and the adjacency decomposition", 300, key_lemma},
        {9, "pseudodifferential backend", 600, psido},
        {10, "optimized evaluator equals naive evaluator", 300, oracle},
    };

    std::cout << "tolerance: exact rational arithmetic, residual must be 0; seed " << kSeed << "\n";
    bool all = true;
    std::map<int, std::string> digests;
    double total = 0;
    for (const auto& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        const Outcome o = c.run();
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        total += secs;
        const bool in_time = secs < c.target_s;
        const bool pass = o.pass && in_time;
        all = all && pass;
        digests[c.id] = o.digest;
        char timing[64];
        std::snprintf(timing, sizeof timing, "%.1f s, target < %.0f s", secs, c.target_s);
        std::cout << (pass ? "PASS" : "FAIL") << "  criterion " << c.id << ": " << c.title << " (" << timing << ")\n";
        for (const auto& note : o.notes)
            std::cout << "        " << note << "\n";
        if (!in_time)
            std::cout << "        FAILED runtime target\n";
        std::cout.flush();
    }

    // Determinism: rerun every criterion and compare serialized reports byte for byte.
    {
        const auto start = std::chrono::steady_clock::now();
        std::string differing;
        for (const auto& c : criteria)
            if (c.run().digest != digests[c.id])
                differing += " " + std::to_string(c.id);
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const bool same = differing.empty();
        all = all && same;
        std::cout << (same ? "PASS" : "FAIL") << "  criterion 11: repeated runs give byte-identical reports ("
                  << static_cast<int>(secs) << " s, criteria 1-10 rerun)\n";
        if (!same)
            std::cout << "        FAILED differing:" << differing << "\n";
    }
    std::cout << (all ? "ALL CRITERIA PASS" : "SOME CRITERIA FAIL") << " (" << static_cast<int>(total) << " s)\n";
    return all ? 0 : 1;
}
