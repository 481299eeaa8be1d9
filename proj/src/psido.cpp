#include "lift/psido.hpp"

#include <algorithm>
#include <chrono>
#include <sstream>

#include "lift/cohomology.hpp"

namespace lift {

namespace {

// r (r-1) .. (r-k+1)
Rational falling(int r, int k)
{
    Rational out = 1;
    for (int j = 0; j < k; ++j)
        out *= r - j;
    return out;
}

Rational general_binomial(int q, int k)
{
    Rational out = falling(q, k);
    for (int j = 2; j <= k; ++j)
        out /= j;
    return out;
}

void require_same_vars(const PsiDOSymbol& a, const PsiDOSymbol& b)
{
    if (a.var_count() != b.var_count())
        throw std::invalid_argument("symbols in different numbers of variables");
}

std::vector<int> max_window(const std::vector<int>& a, const std::vector<int>& b)
{
    std::vector<int> out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        out[i] = std::max(a[i], b[i]);
    return out;
}

void require_residue_window(const std::vector<int>& window)
{
    for (std::size_t i = 0; i < window.size(); ++i)
        if (window[i] > -1)
            throw InsufficientPrecision("residue needs d" + std::to_string(i + 1) + "^-1 but the window starts at " +
                                        std::to_string(window[i]));
}

}  // namespace

PsiDOSymbol::PsiDOSymbol(int vars, std::vector<int> window) : vars_(vars), window_(std::move(window))
{
    if (vars < 1 || static_cast<int>(window_.size()) != vars)
        throw std::invalid_argument("PsiDOSymbol: need one window bound per variable");
}

PsiDOSymbol PsiDOSymbol::monomial(std::vector<int> x, std::vector<int> d, const Rational& c, std::vector<int> window)
{
    const int vars = static_cast<int>(window.size());
    PsiDOSymbol s(vars, std::move(window));
    if (static_cast<int>(x.size()) != s.vars_ || static_cast<int>(d.size()) != s.vars_)
        throw std::invalid_argument("PsiDOSymbol::monomial: exponent count mismatch");
    s.add_term({std::move(x), std::move(d)}, c);
    return s;
}

PsiDOSymbol PsiDOSymbol::monomial(int x, int d, const Rational& c, int window)
{
    return monomial(std::vector<int>{x}, std::vector<int>{d}, c, std::vector<int>{window});
}

int PsiDOSymbol::top_order(int i) const
{
    int top = window_[static_cast<std::size_t>(i)] - 1;
    for (const auto& [m, c] : terms_)
        top = std::max(top, m.d[static_cast<std::size_t>(i)]);
    return top;
}

Rational PsiDOSymbol::coefficient(const PsiMonomial& m) const
{
    if (!in_window(m))
        throw InsufficientPrecision("coefficient requested outside the validity window");
    const auto it = terms_.find(m);
    return it == terms_.end() ? Rational(0) : it->second;
}

bool PsiDOSymbol::in_window(const PsiMonomial& m) const
{
    for (int i = 0; i < vars_; ++i)
        if (m.d[static_cast<std::size_t>(i)] < window_[static_cast<std::size_t>(i)])
            return false;
    return true;
}

void PsiDOSymbol::add_term(const PsiMonomial& m, const Rational& c)
{
    if (lift::is_zero(c) || !in_window(m))
        return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (inserted)
        return;
    it->second += c;
    if (lift::is_zero(it->second))
        terms_.erase(it);
}

PsiDOSymbol PsiDOSymbol::truncated(const std::vector<int>& window) const
{
    PsiDOSymbol out(vars_, max_window(window_, window));
    for (const auto& [m, c] : terms_)
        out.add_term(m, c);
    return out;
}

PsiDOSymbol operator+(const PsiDOSymbol& a, const PsiDOSymbol& b)
{
    require_same_vars(a, b);
    PsiDOSymbol out = a.truncated(b.window_);
    for (const auto& [m, c] : b.terms_)
        out.add_term(m, c);
    return out;
}

PsiDOSymbol operator-(const PsiDOSymbol& a, const PsiDOSymbol& b)
{
    require_same_vars(a, b);
    PsiDOSymbol out = a.truncated(b.window_);
    for (const auto& [m, c] : b.terms_)
        out.add_term(m, -c);
    return out;
}

PsiDOSymbol operator*(const Rational& s, const PsiDOSymbol& a)
{
    PsiDOSymbol out(a.vars_, a.window_);
    for (const auto& [m, c] : a.terms_)
        out.add_term(m, s * c);
    return out;
}

bool PsiDOSymbol::agrees_with(const PsiDOSymbol& other) const
{
    require_same_vars(*this, other);
    const auto w = max_window(window_, other.window_);
    return truncated(w).terms_ == other.truncated(w).terms_;
}

PsiDOSymbol compose(const PsiDOSymbol& a, const PsiDOSymbol& b)
{
    require_same_vars(a, b);
    const int n = a.var_count();
    std::vector<int> window(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const auto k = static_cast<std::size_t>(i);
        window[k] = std::max(a.window()[k] + b.top_order(i), b.window()[k] + a.top_order(i));
    }
    PsiDOSymbol out(n, window);

    struct Step {
        int k;
        Rational f;
    };
    std::vector<std::vector<Step>> steps(static_cast<std::size_t>(n));
    for (const auto& [ma, ca] : a.terms())
        for (const auto& [mb, cb] : b.terms()) {
            bool dead = false;
            for (int i = 0; i < n && !dead; ++i) {
                const auto v = static_cast<std::size_t>(i);
                auto& st = steps[v];
                st.clear();
                const int q = ma.d[v];
                const int r = mb.x[v];
                const int kmax = q + mb.d[v] - window[v];
                for (int k = 0; k <= kmax; ++k) {
                    Rational f = general_binomial(q, k) * falling(r, k);
                    if (lift::is_zero(f)) {
                        if ((r >= 0 && k > r) || (q >= 0 && k > q))
                            break;
                        continue;
                    }
                    st.push_back({k, std::move(f)});
                }
                dead = st.empty();
            }
            if (dead)
                continue;
            std::vector<std::size_t> idx(static_cast<std::size_t>(n), 0);
            while (true) {
                PsiMonomial m{std::vector<int>(static_cast<std::size_t>(n)), std::vector<int>(static_cast<std::size_t>(n))};
                Rational c = ca * cb;
                for (std::size_t v = 0; v < static_cast<std::size_t>(n); ++v) {
                    const auto& s = steps[v][idx[v]];
                    m.x[v] = ma.x[v] + mb.x[v] - s.k;
                    m.d[v] = ma.d[v] + mb.d[v] - s.k;
                    c *= s.f;
                }
                out.add_term(m, c);
                std::size_t v = 0;
                while (v < idx.size() && ++idx[v] == steps[v].size())
                    idx[v++] = 0;
                if (v == idx.size())
                    break;
            }
        }
    return out;
}

Rational residue_trace(const PsiDOSymbol& a)
{
    require_residue_window(a.window());
    const auto n = static_cast<std::size_t>(a.var_count());
    return a.coefficient({std::vector<int>(n, -1), std::vector<int>(n, -1)});
}

Rational residue_of_product(const PsiDOSymbol& a, const PsiDOSymbol& b)
{
    require_same_vars(a, b);
    const int n = a.var_count();
    std::vector<int> window(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const auto k = static_cast<std::size_t>(i);
        window[k] = std::max(a.window()[k] + b.top_order(i), b.window()[k] + a.top_order(i));
    }
    require_residue_window(window);
    Rational total = 0;
    for (const auto& [ma, ca] : a.terms())
        for (const auto& [mb, cb] : b.terms()) {
            Rational c = ca * cb;
            for (std::size_t v = 0; v < static_cast<std::size_t>(n) && !lift::is_zero(c); ++v) {
                const int k = ma.x[v] + mb.x[v] + 1;
                if (k < 0 || k != ma.d[v] + mb.d[v] + 1) {
                    c = 0;
                    break;
                }
                c *= general_binomial(ma.d[v], k) * falling(mb.x[v], k);
            }
            total += c;
        }
    return total;
}

PsiDOSymbol apply_log_derivation(const LogDerivationTag& tag, const PsiDOSymbol& a)
{
    if (tag.var < 0 || tag.var >= a.var_count())
        throw std::invalid_argument("log derivation variable out of range");
    const auto v = static_cast<std::size_t>(tag.var);
    PsiDOSymbol out(a.var_count(), a.window());
    for (const auto& [m, c] : a.terms()) {
        const int source = tag.kind == LogDerivationTag::Kind::LnPartial ? m.x[v] : m.d[v];
        for (int k = 1; m.d[v] - k >= a.window()[v]; ++k) {
            if (source >= 0 && k > source)
                break;
            Rational f = falling(source, k) / k;
            const bool negative = tag.kind == LogDerivationTag::Kind::LnPartial ? (k % 2 == 0) : (k % 2 == 1);
            if (negative)
                f = -f;
            PsiMonomial shifted = m;
            shifted.x[v] -= k;
            shifted.d[v] -= k;
            out.add_term(shifted, c * f);
        }
    }
    return out;
}

PsiDOSymbol log_bracket_series(int vars, int var, int terms, const std::vector<int>& window)
{
    PsiDOSymbol out(vars, window);
    Rational fact = 1;  // (m-1)!
    for (int m = 1; m <= terms; ++m) {
        if (m > 1)
            fact *= m - 1;
        PsiMonomial mono{std::vector<int>(static_cast<std::size_t>(vars), 0),
                         std::vector<int>(static_cast<std::size_t>(vars), 0)};
        mono.x[static_cast<std::size_t>(var)] = -m;
        mono.d[static_cast<std::size_t>(var)] = -m;
        out.add_term(mono, fact / m);
    }
    return out;
}

std::vector<Rational> derive_log_bracket_coefficients(int cutoff)
{
    if (cutoff < 1)
        throw std::invalid_argument("cutoff must be >= 1");
    const int window = -(cutoff + 1);
    const LogDerivationTag lnx{LogDerivationTag::Kind::LnX, 0};
    const LogDerivationTag lnd{LogDerivationTag::Kind::LnPartial, 0};
    const auto x = PsiDOSymbol::monomial(1, 0, 1, window);
    const auto c = apply_log_derivation(lnd, apply_log_derivation(lnx, x)) -
                   apply_log_derivation(lnx, apply_log_derivation(lnd, x));
    // [x^-m d^-m, x] = -m x^-m d^(-m-1)
    std::vector<Rational> out;
    for (int m = 1; m <= cutoff; ++m)
        out.push_back(-c.coefficient({{-m}, {-m - 1}}) / m);
    return out;
}

VerificationReport bracket_series_check(int cutoff, int trials, std::uint64_t seed, int window)
{
    if (cutoff < 1)
        throw std::invalid_argument("cutoff must be >= 1");
    if (window == 0)
        window = -(cutoff + 6);
    if (window > -(cutoff + 1))
        throw InsufficientPrecision("window " + std::to_string(window) + " is too shallow for cutoff " +
                                    std::to_string(cutoff) + " (need <= " + std::to_string(-(cutoff + 1)) + ")");
    const auto start = std::chrono::steady_clock::now();
    VerificationReport report;
    report.check = "bracket-series";
    report.params = {{"backend", "psido"}, {"cutoff", cutoff}, {"window", window}, {"trials", trials}, {"seed", seed}};

    const auto derived = derive_log_bracket_coefficients(cutoff);
    auto coeffs = nlohmann::ordered_json::array();
    Rational fact = 1;
    for (int m = 1; m <= cutoff; ++m) {
        if (m > 1)
            fact *= m - 1;
        const Rational expected = fact / m;
        const Rational& got = derived[static_cast<std::size_t>(m - 1)];
        coeffs.push_back(rational_to_json(got));
        report.trials.push_back({static_cast<std::uint64_t>(m), got - expected, "t_" + std::to_string(m)});
        report.entries.push_back({"t_" + std::to_string(m) + " = (m-1)!/m", got == expected,
                                  "derived " + to_string(got) + ", expected " + to_string(expected)});
    }
    report.params["coefficients"] = coeffs;

    const LogDerivationTag lnx{LogDerivationTag::Kind::LnX, 0};
    const LogDerivationTag lnd{LogDerivationTag::Kind::LnPartial, 0};
    const std::vector<int> w{window};
    const auto t_series = log_bracket_series(1, 0, cutoff, w);
    for (int t = 0; t < trials; ++t) {
        auto rng = trial_rng(seed, static_cast<std::uint64_t>(t));
        const auto a = random_symbol(1, w, rng);
        const auto lhs = apply_log_derivation(lnd, apply_log_derivation(lnx, a)) -
                         apply_log_derivation(lnx, apply_log_derivation(lnd, a));
        const auto rhs = compose(t_series, a) - compose(a, t_series);
        // terms of T beyond the cutoff only reach d-exponents <= top(a) - cutoff - 2
        const auto diff = (lhs - rhs).truncated({a.top_order(0) - cutoff - 1});
        report.trials.push_back({static_cast<std::uint64_t>(t), diff.empty() ? Rational(0) : diff.terms().begin()->second,
                                 "identity"});
    }
    report.ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
    return report;
}

PsiDOSymbol random_symbol(int vars, const std::vector<int>& window, std::mt19937_64& rng, const RandomSymbolShape& shape)
{
    std::uniform_int_distribution<int> xs(shape.x_lo, shape.x_hi);
    std::uniform_int_distribution<int> ds(shape.d_lo, shape.d_hi);
    std::uniform_int_distribution<int> cs(shape.c_lo, shape.c_hi);
    PsiDOSymbol out(vars, window);
    for (int t = 0; t < shape.terms; ++t) {
        PsiMonomial m{std::vector<int>(static_cast<std::size_t>(vars)), std::vector<int>(static_cast<std::size_t>(vars))};
        for (auto& e : m.x)
            e = xs(rng);
        for (auto& e : m.d)
            e = ds(rng);
        out.add_term(m, cs(rng));
    }
    return out;
}

std::string to_string(const PsiDOSymbol& a)
{
    if (a.empty())
        return "0";
    std::string out;
    const bool single = a.var_count() == 1;
    for (const auto& [m, c] : a.terms()) {
        if (!out.empty())
            out += " + ";
        out += to_string(c);
        for (std::size_t v = 0; v < m.x.size(); ++v) {
            const std::string idx = single ? "" : std::to_string(v + 1);
            out += " x" + idx + "^" + std::to_string(m.x[v]) + " d" + idx + "^" + std::to_string(m.d[v]);
        }
    }
    return out;
}

PsiDOSymbol parse_symbol(const std::string& text, int vars, const std::vector<int>& window)
{
    PsiDOSymbol out(vars, window);
    const auto bad = [&](const std::string& why) {
        return std::invalid_argument("parse_symbol: " + why + " in \"" + text + "\"");
    };
    std::istringstream in(text);
    std::string tok;
    std::vector<std::string> tokens;
    while (in >> tok)
        tokens.push_back(tok);
    if (tokens.size() == 1 && tokens[0] == "0")
        return out;
    std::size_t p = 0;
    bool negate = false;
    while (p < tokens.size()) {
        Rational c = parse_rational(tokens[p++]);
        if (negate)
            c = -c;
        PsiMonomial m{std::vector<int>(static_cast<std::size_t>(vars), 0), std::vector<int>(static_cast<std::size_t>(vars), 0)};
        while (p < tokens.size() && tokens[p] != "+" && tokens[p] != "-") {
            const std::string& f = tokens[p++];
            const auto caret = f.find('^');
            if (caret == std::string::npos || caret < 1 || (f[0] != 'x' && f[0] != 'd'))
                throw bad("malformed factor '" + f + "'");
            int var = 0;
            if (caret > 1) {
                var = std::stoi(f.substr(1, caret - 1)) - 1;
            } else if (vars != 1) {
                throw bad("factor '" + f + "' needs a variable index");
            }
            if (var < 0 || var >= vars)
                throw bad("variable index out of range");
            int e = 0;
            try {
                e = std::stoi(f.substr(caret + 1));
            } catch (const std::exception&) {
                throw bad("bad exponent in '" + f + "'");
            }
            (f[0] == 'x' ? m.x : m.d)[static_cast<std::size_t>(var)] = e;
        }
        if (p < tokens.size())
            negate = tokens[p++] == "-";
        out.add_term(m, c);
    }
    return out;
}

PsiDOContext::PsiDOContext(int vars, int depth, RandomSymbolShape shape)
    : vars_(vars), window_(static_cast<std::size_t>(std::max(vars, 1)), -depth), shape_(shape), zero_(std::max(vars, 1), window_)
{
    if (vars < 1)
        throw std::invalid_argument("PsiDOContext: need at least one variable");
    if (depth < 1)
        throw std::invalid_argument("PsiDOContext: depth must be >= 1");
    for (int i = 0; i < vars; ++i)
        series_.push_back(log_bracket_series(vars, i, depth, window_));
}

LogDerivationTag PsiDOContext::tag(std::size_t i) const
{
    const auto n = static_cast<std::size_t>(vars_);
    if (i >= 2 * n)
        throw std::out_of_range("derivation index out of range");
    return i < n ? LogDerivationTag{LogDerivationTag::Kind::LnX, static_cast<int>(i)}
                 : LogDerivationTag{LogDerivationTag::Kind::LnPartial, static_cast<int>(i - n)};
}

PsiDOSymbol PsiDOContext::derive(std::size_t i, const PsiDOSymbol& a) const { return apply_log_derivation(tag(i), a); }

PsiDOSymbol PsiDOContext::q(std::size_t i, std::size_t j) const
{
    const auto ti = tag(i);
    const auto tj = tag(j);
    if (ti.var != tj.var || ti.kind == tj.kind)
        return zero_;
    const auto& t = series_[static_cast<std::size_t>(ti.var)];
    return ti.kind == LogDerivationTag::Kind::LnX ? Rational(-1) * t : t;
}

PsiDOContext make_psido_context(int vars, int depth) { return PsiDOContext(vars, depth); }

}  // namespace lift
