#include "lift/cochain.hpp"

#include <algorithm>
#include <stdexcept>

namespace lift {

void CochainDescriptor::append(const CochainDescriptor& other, const Rational& factor)
{
    if (other.arity != arity || other.n != n)
        throw std::invalid_argument("cannot add cochains of different shape");
    for (const auto& w : other.words) {
        TermWord copy = w;
        copy.coeff *= factor;
        words.push_back(std::move(copy));
    }
}

bool CochainDescriptor::has_qfused() const
{
    for (const auto& w : words)
        for (const auto& s : w.slots)
            if (s.kind == TermSlot::Kind::QFused)
                return true;
    return false;
}

void CochainDescriptor::validate() const
{
    if (arity < 0 || n < 0)
        throw std::invalid_argument("negative arity or derivation count");
    for (std::size_t wi = 0; wi < words.size(); ++wi) {
        const auto& w = words[wi];
        const std::string where = "word " + std::to_string(wi + 1) + ": ";
        if (static_cast<int>(w.slots.size()) != arity)
            throw std::invalid_argument(where + "slot count differs from arity");
        std::vector<int> arg_seen(arity, 0);
        std::vector<int> d_seen(n, 0);
        auto use_d = [&](int d) {
            if (d < 0 || d >= n)
                throw std::invalid_argument(where + "derivation slot out of range");
            if (d_seen[d]++)
                throw std::invalid_argument(where + "derivation slot used twice");
        };
        for (const auto& s : w.slots) {
            if (s.arg < 0 || s.arg >= arity)
                throw std::invalid_argument(where + "argument index out of range");
            ++arg_seen[s.arg];
            if (s.kind == TermSlot::Kind::Deriv)
                use_d(s.d1);
            if (s.kind == TermSlot::Kind::QFused) {
                use_d(s.d1);
                use_d(s.d2);
            }
        }
        if (w.outer)
            use_d(*w.outer);
        if (std::any_of(arg_seen.begin(), arg_seen.end(), [](int c) { return c != 1; }))
            throw std::invalid_argument(where + "every argument must appear exactly once");
    }
}

std::string describe_word(const TermWord& w)
{
    std::string s;
    if (w.outer)
        s += "D" + std::to_string(*w.outer + 1) + "(";
    for (std::size_t i = 0; i < w.slots.size(); ++i) {
        const auto& slot = w.slots[i];
        if (i)
            s += "*";
        const std::string a = "A" + std::to_string(slot.arg + 1);
        switch (slot.kind) {
        case TermSlot::Kind::Plain:
            s += a;
            break;
        case TermSlot::Kind::Deriv:
            s += "D" + std::to_string(slot.d1 + 1) + a;
            break;
        case TermSlot::Kind::QFused:
            s += a + "*Q" + std::to_string(slot.d1 + 1) + "," + std::to_string(slot.d2 + 1);
            break;
        }
    }
    if (w.outer)
        s += ")";
    return s;
}

namespace {

std::vector<TermSlot> slots_from_bits(const Bits& bits)
{
    std::vector<TermSlot> slots;
    int next = 0;
    for (std::size_t i = 0; i < bits.size(); ++i)
        slots.push_back(bits[i] ? TermSlot::deriv(static_cast<int>(i), next++) : TermSlot::plain(static_cast<int>(i)));
    return slots;
}

Rational parity_sign(int exponent) { return exponent % 2 == 0 ? Rational(1) : Rational(-1); }

void require_params(int n, int l)
{
    if (n < 1 || l < 1)
        throw std::invalid_argument("need n >= 1 and l >= 1");
}

}  // namespace

CochainDescriptor build_S(const EvenSequence& a)
{
    CochainDescriptor d;
    d.arity = static_cast<int>(a.bits.size());
    d.n = a.n;
    d.words.push_back({1, slots_from_bits(a.bits), std::nullopt, "S[" + bits_to_string(a.bits) + "]"});
    return d;
}

CochainDescriptor build_S_even(int n, int l)
{
    require_params(n, l);
    CochainDescriptor d;
    d.arity = n + 2 * l;
    d.n = n;
    for (const auto& a : enumerate_a_even(n, l))
        d.append(build_S(a));
    return d;
}

CochainDescriptor build_S_tilde(const EvenSequence& a)
{
    const CochainDescriptor s = build_S(a);
    CochainDescriptor d;
    d.arity = s.arity;
    d.n = s.n;
    const auto& base = s.words.front().slots;
    for (std::size_t j = 0; j < base.size(); ++j) {
        if (base[j].kind != TermSlot::Kind::Deriv)
            continue;
        TermWord w{1, base, base[j].d1, "S~[" + bits_to_string(a.bits) + "] j=" + std::to_string(j + 1)};
        w.slots[j] = TermSlot::plain(base[j].arg);
        d.words.push_back(std::move(w));
    }
    return d;
}

CochainDescriptor build_R(const EvenSequence& a)
{
    const ReducedSequence r = reduce(a);
    CochainDescriptor d;
    d.arity = static_cast<int>(r.tilde.size());
    d.n = a.n;
    d.words.push_back({1, slots_from_bits(r.tilde), std::nullopt,
                       "R[" + bits_to_string(a.bits) + "] tilde=" + bits_to_string(r.tilde) +
                           " s1=" + std::to_string(r.s1)});
    return d;
}

CochainDescriptor build_Psi0(int n, int l)
{
    require_params(n, l);
    CochainDescriptor d;
    d.arity = n + 2 * l - 1;
    d.n = n;
    for (const auto& a : enumerate_a_even(n, l))
        d.append(build_R(a), parity_sign(reduce(a).s1));
    return d;
}

Rational mark_weight(std::size_t marks)
{
    Rational w(1);
    for (std::size_t i = 0; i < marks; ++i)
        w /= 2;
    return w;
}

CochainDescriptor build_O_interval(const MarkedInterval& t)
{
    const int n = t.n;
    CochainDescriptor d;
    d.arity = n + 1;
    d.n = n;
    std::vector<TermSlot> slots;
    for (int i = 0; i < n; ++i)
        slots.push_back(TermSlot::deriv(i, i));
    slots.push_back(TermSlot::plain(n));
    std::string label = "O(interval n=" + std::to_string(n) + " marks=";
    for (std::size_t k = 0; k < t.marks.size(); ++k) {
        const int j = t.marks[k];
        if (j < 1 || j > n - 1 || (k && j - t.marks[k - 1] < 2))
            throw std::invalid_argument("invalid interval marks");
        slots[j - 1] = TermSlot::qfused(j - 1, j - 1, j);
        slots[j] = TermSlot::plain(j);
        label += (k ? "," : "") + std::to_string(j);
    }
    d.words.push_back({mark_weight(t.marks.size()), std::move(slots), std::nullopt, label + ")"});
    return d;
}

CochainDescriptor build_Sigma_interval(int n, int k)
{
    if (n < 2 || k < 1 || k > n / 2)
        throw std::invalid_argument("Sigma_k needs n >= 2 and 1 <= k <= n/2");
    CochainDescriptor d;
    d.arity = n + 1;
    d.n = n;
    for (const auto& t : enumerate_intervals(n, k))
        d.append(build_O_interval(t));
    return d;
}

CochainDescriptor build_leading_word(int n)
{
    if (n < 1)
        throw std::invalid_argument("need n >= 1");
    Bits bits(n + 1, 1);
    bits[n] = 0;
    CochainDescriptor d;
    d.arity = n + 1;
    d.n = n;
    d.words.push_back({1, slots_from_bits(bits), std::nullopt, "D1A1*...*DnAn*A(n+1)"});
    return d;
}

CochainDescriptor build_Psi_n1(int n)
{
    if (n < 2)
        throw std::invalid_argument("Psi_{n,1} needs n >= 2");
    CochainDescriptor d = build_leading_word(n);
    for (int k = 1; k <= n / 2; ++k)
        d.append(build_Sigma_interval(n, k));
    return d;
}

CochainDescriptor build_O_circle(const MarkedCircle& c)
{
    const auto& tilde = c.base.tilde;
    const int size = static_cast<int>(tilde.size());
    const auto jmap = derivation_assignment(tilde);
    CochainDescriptor d;
    d.arity = size;
    d.n = c.base.source.n;
    std::vector<TermSlot> slots = slots_from_bits(tilde);
    std::string label = "O(circle " + bits_to_string(tilde) + " marks=";
    for (std::size_t k = 0; k < c.marks.size(); ++k) {
        const int p = c.marks[k];
        const int s = cyclic_successor(p, size);
        if (!tilde.at(p - 1) || !tilde.at(s - 1))
            throw std::invalid_argument("circle mark on a non-admissible point");
        slots[p - 1] = TermSlot::qfused(p - 1, jmap[p - 1], jmap[s - 1]);
        slots[s - 1] = TermSlot::plain(s - 1);
        label += (k ? "," : "") + std::to_string(p);
    }
    d.words.push_back({mark_weight(c.marks.size()), std::move(slots), std::nullopt, label + ")"});
    return d;
}

CochainDescriptor build_circle_corrections(int n, int l)
{
    require_params(n, l);
    CochainDescriptor d;
    d.arity = n + 2 * l - 1;
    d.n = n;
    for (const auto& a : enumerate_a_even(n, l)) {
        const ReducedSequence r = reduce(a);
        for (int k = 1; k <= n / 2; ++k)
            for (const auto& c : enumerate_circles(r, k))
                d.append(build_O_circle(c), parity_sign(r.s1));
    }
    return d;
}

CochainDescriptor build_Psi_nl(int n, int l)
{
    CochainDescriptor d = build_Psi0(n, l);
    d.append(build_circle_corrections(n, l));
    return d;
}

ExpandedCochain expand_inner(const CochainDescriptor& d)
{
    ExpandedCochain out{d.arity, d.n, {}};
    for (const auto& w : d.words) {
        if (w.outer)
            throw std::invalid_argument("inner expansion needs words without an outer derivation");
        std::vector<ExpandedWord> partial{{w.coeff, {}}};
        for (const auto& s : w.slots) {
            const Letter arg{Letter::Kind::Arg, s.arg};
            if (s.kind == TermSlot::Kind::QFused)
                throw std::invalid_argument("inner expansion is defined on the D-form only (found a Q factor)");
            if (s.kind == TermSlot::Kind::Plain) {
                for (auto& p : partial)
                    p.letters.push_back(arg);
                continue;
            }
            const Letter gen{Letter::Kind::Gen, s.d1};
            std::vector<ExpandedWord> next;
            next.reserve(partial.size() * 2);
            for (const auto& p : partial) {
                ExpandedWord left = p;
                left.letters.push_back(gen);
                left.letters.push_back(arg);
                ExpandedWord right = p;
                right.coeff = -right.coeff;
                right.letters.push_back(arg);
                right.letters.push_back(gen);
                next.push_back(std::move(left));
                next.push_back(std::move(right));
            }
            partial = std::move(next);
        }
        for (auto& p : partial)
            out.words.push_back(std::move(p));
    }
    return out;
}

bool has_adjacent_generators(const ExpandedWord& w)
{
    const std::size_t m = w.letters.size();
    if (m < 2)
        return false;
    for (std::size_t i = 0; i < m; ++i)
        if (w.letters[i].kind == Letter::Kind::Gen && w.letters[(i + 1) % m].kind == Letter::Kind::Gen)
            return true;
    return false;
}

AdjacencySplit split_adjacency(const ExpandedCochain& c)
{
    AdjacencySplit out{{c.arity, c.n, {}}, {c.arity, c.n, {}}};
    for (const auto& w : c.words)
        (has_adjacent_generators(w) ? out.rest : out.tilde).words.push_back(w);
    return out;
}

namespace {

const char* kind_name(TermSlot::Kind k)
{
    switch (k) {
    case TermSlot::Kind::Plain:
        return "plain";
    case TermSlot::Kind::Deriv:
        return "deriv";
    case TermSlot::Kind::QFused:
        return "qfused";
    }
    return "?";
}

}  // namespace

nlohmann::ordered_json descriptor_to_json(const CochainDescriptor& d)
{
    nlohmann::ordered_json j;
    j["arity"] = d.arity;
    j["n"] = d.n;
    auto words = nlohmann::ordered_json::array();
    auto labels = nlohmann::ordered_json::array();
    for (const auto& w : d.words) {
        nlohmann::ordered_json jw;
        jw["coeff"] = rational_to_json(w.coeff);
        auto slots = nlohmann::ordered_json::array();
        for (const auto& s : w.slots) {
            nlohmann::ordered_json js;
            js["kind"] = kind_name(s.kind);
            js["arg"] = s.arg + 1;
            if (s.kind != TermSlot::Kind::Plain)
                js["d"] = s.d1 + 1;
            if (s.kind == TermSlot::Kind::QFused)
                js["d2"] = s.d2 + 1;
            slots.push_back(js);
        }
        jw["slots"] = slots;
        if (w.outer)
            jw["outer"] = *w.outer + 1;
        words.push_back(jw);
        labels.push_back(w.label);
    }
    j["words"] = words;
    j["meta"] = {{"provenance", labels}};
    return j;
}

CochainDescriptor descriptor_from_json(const nlohmann::json& j)
{
    CochainDescriptor d;
    d.arity = j.at("arity").get<int>();
    d.n = j.at("n").get<int>();
    std::vector<std::string> labels;
    if (j.contains("meta") && j["meta"].contains("provenance"))
        labels = j["meta"]["provenance"].get<std::vector<std::string>>();
    for (std::size_t wi = 0; wi < j.at("words").size(); ++wi) {
        const auto& jw = j["words"][wi];
        TermWord w;
        w.coeff = rational_from_json(jw.at("coeff"));
        for (const auto& js : jw.at("slots")) {
            const auto kind = js.at("kind").get<std::string>();
            const int arg = js.at("arg").get<int>() - 1;
            if (kind == "plain")
                w.slots.push_back(TermSlot::plain(arg));
            else if (kind == "deriv")
                w.slots.push_back(TermSlot::deriv(arg, js.at("d").get<int>() - 1));
            else if (kind == "qfused")
                w.slots.push_back(TermSlot::qfused(arg, js.at("d").get<int>() - 1, js.at("d2").get<int>() - 1));
            else
                throw std::invalid_argument("unknown slot kind '" + kind + "'");
        }
        if (jw.contains("outer"))
            w.outer = jw["outer"].get<int>() - 1;
        if (wi < labels.size())
            w.label = labels[wi];
        d.words.push_back(std::move(w));
    }
    d.validate();
    return d;
}

}  // namespace lift
