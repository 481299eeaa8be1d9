#include "lift/cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "lift/cohomology.hpp"
#include "lift/naive_evaluate.hpp"
#include "lift/psido.hpp"
#include "lift/symbolic.hpp"

namespace lift {

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    std::string subcommand;
    std::string target;  // build target or verify check
    int n = 0;
    int l = 0;
    std::string backend;
    int N = 0;  // 0: pick per check
    int window = 0;  // psido depth; 0: default
    int trials = 20;
    std::uint64_t seed = 1;
    int cutoff = 4;
    bool commuting = false;
    bool no_corrections = false;
    std::string out;
    std::string format = "json";
    bool timing = false;
    unsigned threads = 1;
};

void require(bool ok, const std::string& field, const std::string& why)
{
    if (!ok)
        throw UsageError("invalid " + field + ": " + why);
}

void emit(const RunConfig& cfg, const std::string& text, std::ostream& out)
{
    if (cfg.out.empty()) {
        out << text;
        return;
    }
    std::ofstream file(cfg.out, std::ios::binary);
    if (!file)
        throw IoError("cannot open " + cfg.out + " for writing");
    file << text;
    if (!file)
        throw IoError("failed writing " + cfg.out);
}

int emit_report(const RunConfig& cfg, VerificationReport report, std::ostream& out, std::ostream& err)
{
    if (!cfg.timing && report.ms) {
        err << report.check << ": " << *report.ms << " ms\n";
        report.ms.reset();
    }
    emit(cfg, cfg.format == "json" ? report.to_json().dump(2) + "\n" : report.to_pretty(), out);
    return report.pass() ? kPass : kCheckFailed;
}

std::size_t default_dim(const RunConfig& cfg, int derivations, bool commuting)
{
    if (cfg.N > 0)
        return static_cast<std::size_t>(cfg.N);
    return static_cast<std::size_t>(std::max(4, commuting ? derivations + 1 : derivations));
}

MatrixContext matrix_context_for(const RunConfig& cfg, int derivations, bool commuting)
{
    const std::size_t dim = default_dim(cfg, derivations, commuting);
    std::mt19937_64 rng(cfg.seed);
    return commuting ? random_commuting_context(static_cast<std::size_t>(derivations), dim, rng)
                     : random_matrix_context(static_cast<std::size_t>(derivations), dim, rng);
}

void decorate(VerificationReport& r, const RunConfig& cfg, const std::string& check)
{
    r.check = check;
    nlohmann::ordered_json p;
    p["n"] = cfg.n;
    if (cfg.l > 0)
        p["l"] = cfg.l;
    p["backend"] = cfg.backend;
    for (const auto& [k, v] : r.params.items())
        if (!p.contains(k))
            p[k] = v;
    r.params = std::move(p);
}

// ---- sequences ----

int cmd_sequences(const RunConfig& cfg, std::ostream& out)
{
    require(cfg.n >= 1, "--n", "must be >= 1");
    require(cfg.l >= 1, "--l", "must be >= 1");
    require(cfg.n + 2 * cfg.l <= 24, "--n/--l", "n + 2l must be <= 24");
    const auto seqs = enumerate_a_even(cfg.n, cfg.l);
    std::ostringstream text;
    if (cfg.format == "json") {
        auto rows = nlohmann::ordered_json::array();
        for (const auto& a : seqs) {
            const auto r = reduce(a);
            nlohmann::ordered_json row;
            row["a"] = bits_to_string(a.bits);
            row["s1"] = r.s1;
            row["s2"] = r.s2 ? nlohmann::ordered_json(*r.s2) : nlohmann::ordered_json(nullptr);
            row["tilde"] = bits_to_string(r.tilde);
            rows.push_back(row);
        }
        nlohmann::ordered_json doc;
        doc["n"] = cfg.n;
        doc["l"] = cfg.l;
        doc["count"] = seqs.size();
        doc["sequences"] = rows;
        text << doc.dump(2) << "\n";
    } else {
        text << "a" << std::string(cfg.n + 2 * cfg.l, ' ') << "s1  s2  tilde\n";
        for (const auto& a : seqs) {
            const auto r = reduce(a);
            text << bits_to_string(a.bits) << "  " << r.s1 << "   " << (r.s2 ? std::to_string(*r.s2) : "-") << "   "
                 << bits_to_string(r.tilde) << "\n";
        }
    }
    emit(cfg, text.str(), out);
    return kPass;
}

// ---- build ----

CochainDescriptor build_target(const RunConfig& cfg)
{
    const auto& t = cfg.target;
    if (t == "psi-n1") {
        require(cfg.n >= 2, "--n", "psi-n1 needs n >= 2");
        return build_Psi_n1(cfg.n);
    }
    require(cfg.n >= 1, "--n", "must be >= 1");
    require(cfg.l >= 1, "--l", "must be >= 1");
    require(cfg.n + 2 * cfg.l <= 16, "--n/--l", "n + 2l must be <= 16");
    if (t == "psi0")
        return build_Psi0(cfg.n, cfg.l);
    if (t == "psi-nl")
        return build_Psi_nl(cfg.n, cfg.l);
    if (t == "s-even")
        return build_S_even(cfg.n, cfg.l);
    throw UsageError("invalid target: " + t);
}

int cmd_build(const RunConfig& cfg, std::ostream& out)
{
    const auto d = build_target(cfg);
    std::string text;
    if (cfg.format == "json") {
        text = descriptor_to_json(d).dump(2) + "\n";
    } else {
        std::ostringstream s;
        s << "arity " << d.arity << ", n " << d.n << ", " << d.words.size() << " words\n";
        for (const auto& w : d.words)
            s << "  " << to_string(w.coeff) << "  " << describe_word(w) << "   [" << w.label << "]\n";
        text = s.str();
    }
    emit(cfg, text, out);
    return kPass;
}

// ---- verify ----

void require_backend(const RunConfig& cfg, std::initializer_list<const char*> allowed)
{
    for (const char* b : allowed)
        if (cfg.backend == b)
            return;
    std::string list;
    for (const char* b : allowed)
        list += (list.empty() ? "" : ", ") + std::string(b);
    throw UsageError("invalid --backend: check '" + cfg.target + "' supports " + list);
}

int psido_depth(const RunConfig& cfg, int arity)
{
    return cfg.window > 0 ? cfg.window : std::max(10, arity + 7);
}

VerificationReport verify_psido_cocycle(const RunConfig& cfg, const CochainDescriptor& d)
{
    require(d.n % 2 == 0, "--n", "the psido backend has 2 derivations per variable, so n must be even");
    PsiDOContext ctx(d.n / 2, psido_depth(cfg, d.arity + 1));
    auto r = verify_cocycle(d, ctx, cfg.trials, cfg.seed, "", {cfg.threads});
    r.params["window"] = -psido_depth(cfg, d.arity + 1);
    return r;
}

VerificationReport run_check(RunConfig cfg)
{
    const auto& c = cfg.target;
    require(cfg.trials >= 1, "--trials", "must be >= 1");
    if (cfg.backend.empty())
        cfg.backend = c == "lemma111" ? "free" : c == "bracket-series" ? "psido" : "matrix";

    if (c == "bracket-series") {
        require_backend(cfg, {"psido"});
        require(cfg.cutoff >= 1, "--cutoff", "must be >= 1");
        auto r = bracket_series_check(cfg.cutoff, cfg.trials, cfg.seed, cfg.window > 0 ? -cfg.window : 0);
        return r;
    }
    if (c == "axioms") {
        require_backend(cfg, {"matrix", "psido"});
        require(cfg.n >= 1, "--n", "must be >= 1");
        if (cfg.backend == "psido") {
            PsiDOContext ctx(cfg.n, cfg.window > 0 ? cfg.window : 10);
            auto r = check_axioms(ctx, cfg.trials, cfg.seed);
            decorate(r, cfg, "axioms");
            r.params["window"] = ctx.window().front();
            return r;
        }
        const auto ctx = matrix_context_for(cfg, cfg.n, cfg.commuting);
        auto r = check_axioms(ctx, cfg.trials, cfg.seed);
        decorate(r, cfg, "axioms");
        r.params["N"] = ctx.dim();
        r.params["commuting"] = cfg.commuting;
        return r;
    }
    if (c == "lemma111") {
        require_backend(cfg, {"free"});
        require(cfg.n >= 1 && cfg.l >= 1, "--n/--l", "need n >= 1 and l >= 1");
        require(cfg.n + 2 * cfg.l <= kSymbolicSizeBound, "--n/--l",
                "n + 2l exceeds the symbolic size bound " + std::to_string(kSymbolicSizeBound));
        return certify_lemma_1_1_1(cfg.n, cfg.l);
    }

    require(cfg.n >= 1, "--n", "must be >= 1");
    const bool needs_l = c != "thm21";
    if (needs_l)
        require(cfg.l >= 1, "--l", "must be >= 1");
    require(cfg.n + 2 * std::max(cfg.l, 1) <= 10, "--n/--l", "n + 2l must be <= 10");

    if (c == "lemma11" || c == "lemma12") {
        require_backend(cfg, {"matrix"});
        const auto ctx = matrix_context_for(cfg, cfg.n, cfg.commuting);
        auto r = c == "lemma11" ? verify_lemma_1_1(cfg.n, cfg.l, ctx, cfg.trials, cfg.seed)
                                : verify_lemma_1_2(cfg.n, cfg.l, ctx, cfg.trials, cfg.seed);
        r.params["commuting"] = cfg.commuting;
        return r;
    }
    if (c == "key-lemma") {
        require_backend(cfg, {"matrix"});
        const auto ctx = matrix_context_for(cfg, cfg.n, cfg.commuting);
        return verify_key_lemma(cfg.n, cfg.l, ctx, cfg.trials, cfg.seed);
    }
    if (c == "thm11") {
        require_backend(cfg, {"matrix", "free"});
        const auto psi = build_Psi0(cfg.n, cfg.l);
        if (cfg.backend == "free") {
            require(cfg.n + 2 * cfg.l <= 6, "--n/--l", "symbolic certificate limited to n + 2l <= 6");
            VerificationReport r;
            const auto expr = symbolic_differential(psi);
            const auto cert = certify_in_relation_span(expr, relation_basis(psi.arity + 1, cfg.n));
            r.entries.push_back({"d(Psi0) lies in the span of Tr(D_j w)", cert.in_span,
                                 "rank " + std::to_string(cert.rank) + ", " + std::to_string(expr.size()) +
                                     " cyclic words, " + std::to_string(cert.coefficients.size()) +
                                     " generators used"});
            r.terms_evaluated = expr.size();
            decorate(r, cfg, "thm11");
            return r;
        }
        const auto ctx = matrix_context_for(cfg, cfg.n, cfg.commuting);
        auto r = verify_cocycle(psi, ctx, cfg.trials, cfg.seed, "", {cfg.threads});
        decorate(r, cfg, "thm11");
        r.params["N"] = ctx.dim();
        r.params["commuting"] = cfg.commuting;
        return r;
    }
    if (c == "thm21" || c == "thm23") {
        require_backend(cfg, {"matrix", "psido"});
        CochainDescriptor psi;
        if (c == "thm21") {
            require(cfg.n >= 2, "--n", "thm21 needs n >= 2");
            psi = cfg.no_corrections ? build_leading_word(cfg.n) : build_Psi_n1(cfg.n);
        } else {
            psi = cfg.no_corrections ? build_Psi0(cfg.n, cfg.l) : build_Psi_nl(cfg.n, cfg.l);
        }
        VerificationReport r;
        if (cfg.backend == "psido") {
            r = verify_psido_cocycle(cfg, psi);
        } else {
            const auto ctx = matrix_context_for(cfg, cfg.n, cfg.commuting);
            r = verify_cocycle(psi, ctx, cfg.trials, cfg.seed, "", {cfg.threads});
            r.params["N"] = ctx.dim();
            r.params["commuting"] = cfg.commuting;
            if (c == "thm23" && cfg.l == 1 && cfg.n >= 2 && !cfg.no_corrections) {
                const auto norm = psi_n1_normalization(cfg.n, ctx, 5, cfg.seed);
                std::string detail = norm.ratio ? "ratio " + to_string(*norm.ratio) : "interval form vanished";
                if (!norm.proportional)
                    detail += ", not proportional";
                r.params["ratio_to_interval_form"] =
                    norm.ratio && norm.proportional ? nlohmann::ordered_json(to_string(*norm.ratio))
                                                    : nlohmann::ordered_json(nullptr);
                r.entries.push_back({"compared with the interval-built Psi_{n,1} (informational)", true, detail});
            }
        }
        r.params["corrections"] = !cfg.no_corrections;
        decorate(r, cfg, c);
        return r;
    }
    throw UsageError("invalid check: " + c);
}

// ---- oracle ----

int cmd_oracle(const RunConfig& in, std::ostream& out, std::ostream& err)
{
    RunConfig cfg = in;
    require(cfg.n >= 1, "--n", "must be >= 1");
    require(cfg.l >= 1, "--l", "must be >= 1");
    require(cfg.n + 2 * cfg.l <= 8, "--n/--l", "oracle needs n + 2l <= 8");
    require(cfg.trials >= 1, "--trials", "must be >= 1");
    cfg.backend = "matrix";
    const auto ctx = matrix_context_for(cfg, cfg.n, false);
    std::vector<std::pair<std::string, CochainDescriptor>> cases{
        {"S_even", build_S_even(cfg.n, cfg.l)},
        {"Psi0", build_Psi0(cfg.n, cfg.l)},
        {"Psi_nl", build_Psi_nl(cfg.n, cfg.l)},
    };
    if (cfg.l == 1 && cfg.n >= 2)
        cases.emplace_back("Psi_n1", build_Psi_n1(cfg.n));
    VerificationReport r;
    const auto start = std::chrono::steady_clock::now();
    EvalStats stats;
    for (const auto& [name, d] : cases)
        for (int t = 0; t < cfg.trials; ++t) {
            auto rng = trial_rng(cfg.seed, static_cast<std::uint64_t>(t));
            const auto args = random_arguments(ctx, static_cast<std::size_t>(d.arity), rng);
            const Rational fast = evaluate(d, ctx, args, &stats, {cfg.threads});
            const Rational slow = evaluate_naive(d, ctx, std::span<const RatMatrix>(args));
            r.trials.push_back({static_cast<std::uint64_t>(t), fast - slow, name});
        }
    r.terms_evaluated = stats.terms;
    r.ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
    r.params = {{"N", ctx.dim()}, {"trials", cfg.trials}, {"seed", cfg.seed}};
    decorate(r, cfg, "oracle");
    return emit_report(cfg, std::move(r), out, err);
}

}  // namespace

int run_cli(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"lift: lifting-formula cocycles, built and verified in exact arithmetic"};
    app.require_subcommand(1);
    RunConfig cfg;

    const auto common = [&](CLI::App* sub) {
        sub->add_option("--n", cfg.n, "number of derivations (variables for psido axioms)");
        sub->add_option("--l", cfg.l, "number of zero pairs");
        sub->add_option("--format", cfg.format, "json or pretty")->check(CLI::IsMember({"json", "pretty"}));
        sub->add_option("--out", cfg.out, "write the result to this file");
    };
    const auto randomized = [&](CLI::App* sub) {
        sub->add_option("--backend", cfg.backend, "matrix, free or psido")
            ->check(CLI::IsMember({"matrix", "free", "psido"}));
        sub->add_option("--N", cfg.N, "matrix size")->check(CLI::Range(1, 64));
        sub->add_option("--trials", cfg.trials, "random tuples per check");
        sub->add_option("--seed", cfg.seed, "random seed");
        sub->add_flag("--commuting", cfg.commuting, "use commuting (diagonal) generators");
        sub->add_flag("--timing", cfg.timing, "include wall time in the report");
        sub->add_option("--threads", cfg.threads, "evaluation workers")->check(CLI::Range(1u, 256u));
    };

    auto* seq = app.add_subcommand("sequences", "list a_even sequences with s1, s2 and the reduced form");
    common(seq);

    auto* build = app.add_subcommand("build", "write a cochain descriptor");
    build->add_option("target", cfg.target, "psi0, psi-n1, psi-nl or s-even")
        ->required()
        ->check(CLI::IsMember({"psi0", "psi-n1", "psi-nl", "s-even"}));
    common(build);

    auto* verify = app.add_subcommand("verify", "run a verification");
    verify->add_option("check", cfg.target, "check name")
        ->required()
        ->check(CLI::IsMember({"axioms", "lemma11", "lemma12", "thm11", "thm21", "thm23", "key-lemma", "lemma111",
                               "bracket-series"}));
    common(verify);
    randomized(verify);
    verify->add_option("--window", cfg.window, "psido window depth (lower bound -depth)")->check(CLI::Range(1, 200));
    verify->add_option("--cutoff", cfg.cutoff, "bracket series cutoff");
    verify->add_flag("--no-corrections", cfg.no_corrections, "drop the Q corrections (negative control)");

    auto* oracle = app.add_subcommand("oracle", "compare the optimized and naive evaluators");
    common(oracle);
    randomized(oracle);

    std::vector<std::string> args(argv.begin() + (argv.empty() ? 0 : 1), argv.end());
    std::reverse(args.begin(), args.end());
    try {
        app.parse(args);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kPass;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kPass;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return kUsage;
    }

    try {
        if (seq->parsed())
            return cmd_sequences(cfg, out);
        if (build->parsed())
            return cmd_build(cfg, out);
        if (oracle->parsed())
            return cmd_oracle(cfg, out, err);
        auto report = run_check(cfg);
        return emit_report(cfg, std::move(report), out, err);
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n";
        return kUsage;
    } catch (const IoError& e) {
        err << "i/o error: " << e.what() << "\n";
        return kIoError;
    } catch (const InsufficientPrecision& e) {
        err << "usage error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::invalid_argument& e) {
        err << "usage error: " << e.what() << "\n";
        return kUsage;
    }
}

}  // namespace lift
