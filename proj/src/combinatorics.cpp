#include "lift/combinatorics.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace lift {

std::string bits_to_string(const Bits& bits)
{
    std::string s;
    for (auto b : bits)
        s.push_back(b ? '1' : '0');
    return s;
}

bool is_valid_even_sequence(const Bits& bits, int n, int l)
{
    const int m = n + 2 * l;
    if (n < 1 || l < 0 || static_cast<int>(bits.size()) != m || bits[0] != 1)
        return false;
    if (std::count(bits.begin(), bits.end(), 1) != n)
        return false;
    // Rotate so the sequence starts at a 1 (it already does) and measure the
    // zero gap after each one, wrapping around.
    int run = 0;
    for (int i = 1; i <= m; ++i) {
        if (i < m && bits[i] == 0) {
            ++run;
            continue;
        }
        if (run % 2 != 0)
            return false;
        run = 0;
    }
    return true;
}

std::vector<EvenSequence> enumerate_a_even(int n, int l)
{
    std::vector<EvenSequence> out;
    if (n < 1 || l < 1)
        return out;
    const int m = n + 2 * l;
    // Choose positions of the remaining n-1 ones among 2..m; iterate the
    // selection mask so that the resulting bit strings come out in
    // lexicographic order (a 0 at an earlier position sorts first).
    std::vector<std::uint8_t> pick(m - 1, 0);
    std::fill(pick.end() - (n - 1), pick.end(), 1);
    do {
        Bits bits(m, 0);
        bits[0] = 1;
        for (int i = 0; i < m - 1; ++i)
            bits[i + 1] = pick[i];
        if (is_valid_even_sequence(bits, n, l))
            out.push_back({n, l, std::move(bits)});
    } while (std::next_permutation(pick.begin(), pick.end()));
    return out;
}

ReducedSequence reduce(const EvenSequence& a)
{
    const auto& bits = a.bits;
    const int m = static_cast<int>(bits.size());
    auto first_zero = std::find(bits.begin(), bits.end(), 0);
    if (first_zero == bits.end())
        throw std::invalid_argument("sequence has no zeros to reduce");
    ReducedSequence r;
    r.source = a;
    const int s1 = static_cast<int>(first_zero - bits.begin());
    r.s1 = s1 + 1;
    for (int i = s1 + 1; i < m; ++i)
        if (bits[i] == 1) {
            r.s2 = i + 1;
            break;
        }
    r.tilde.reserve(m - 1);
    for (int i = 0; i < m; ++i)
        if (i != s1)
            r.tilde.push_back(bits[i]);
    return r;
}

std::vector<int> derivation_assignment(const Bits& tilde)
{
    std::vector<int> out(tilde.size(), -1);
    int next = 0;
    for (std::size_t i = 0; i < tilde.size(); ++i)
        if (tilde[i])
            out[i] = next++;
    return out;
}

namespace {

void extend_marks(int next_point, int last_point, int remaining, std::vector<int>& current,
                  const auto& admissible, const auto& emit)
{
    if (remaining == 0) {
        emit(current);
        return;
    }
    for (int p = next_point; p <= last_point; ++p) {
        if (!admissible(p, current))
            continue;
        current.push_back(p);
        extend_marks(p + 2, last_point, remaining - 1, current, admissible, emit);
        current.pop_back();
    }
}

}  // namespace

std::vector<MarkedInterval> enumerate_intervals(int n, int k)
{
    std::vector<MarkedInterval> out;
    if (n < 2 || k < 1 || k > n / 2)
        return out;
    std::vector<int> current;
    extend_marks(
        1, n - 1, k, current, [](int, const std::vector<int>&) { return true; },
        [&](const std::vector<int>& marks) { out.push_back({n, marks}); });
    return out;
}

int cyclic_successor(int point, int size) { return point == size ? 1 : point + 1; }

std::vector<MarkedCircle> enumerate_circles(const ReducedSequence& r, int k)
{
    std::vector<MarkedCircle> out;
    const int size = static_cast<int>(r.tilde.size());
    if (k < 1 || size < 2)
        return out;
    auto admissible = [&](int p, const std::vector<int>& chosen) {
        if (!r.tilde[p - 1] || !r.tilde[cyclic_successor(p, size) - 1])
            return false;
        // only the wrap-around pair (first mark, this mark) can violate the
        // distance bound; consecutive picks are already >= 2 apart
        if (!chosen.empty() && chosen.front() + size - p < 2)
            return false;
        return true;
    };
    std::vector<int> current;
    extend_marks(1, size, k, current, admissible,
                 [&](const std::vector<int>& marks) { out.push_back({r, marks}); });
    return out;
}

SignedPermutations::SignedPermutations(std::size_t m) : perm_(m)
{
    std::iota(perm_.begin(), perm_.end(), 0);
}

void SignedPermutations::next()
{
    if (done_)
        return;
    // Lexicographic successor: swap at the pivot, then reverse the suffix.
    const std::size_t m = perm_.size();
    if (m < 2) {
        done_ = true;
        return;
    }
    std::size_t i = m - 1;
    while (i > 0 && perm_[i - 1] > perm_[i])
        --i;
    if (i == 0) {
        done_ = true;
        return;
    }
    std::size_t j = m - 1;
    while (perm_[j] < perm_[i - 1])
        --j;
    std::swap(perm_[i - 1], perm_[j]);
    sign_ = -sign_;
    const std::size_t suffix = m - i;
    std::reverse(perm_.begin() + static_cast<std::ptrdiff_t>(i), perm_.end());
    // reversing a block of length s is s/2 transpositions
    if ((suffix / 2) % 2 == 1)
        sign_ = -sign_;
}

std::vector<SignedPermutation> all_signed_permutations(std::size_t m)
{
    std::vector<SignedPermutation> out;
    for (SignedPermutations it(m); !it.done(); it.next())
        out.push_back({it.perm(), it.sign()});
    return out;
}

int permutation_sign(const std::vector<std::size_t>& perm)
{
    int inversions = 0;
    for (std::size_t i = 0; i < perm.size(); ++i)
        for (std::size_t j = i + 1; j < perm.size(); ++j)
            if (perm[i] > perm[j])
                ++inversions;
    return inversions % 2 ? -1 : 1;
}

std::uint64_t factorial(unsigned m)
{
    std::uint64_t f = 1;
    for (unsigned i = 2; i <= m; ++i)
        f *= i;
    return f;
}

std::uint64_t binomial(unsigned n, unsigned k)
{
    if (k > n)
        return 0;
    std::uint64_t r = 1;
    for (unsigned i = 1; i <= k; ++i)
        r = r * (n - k + i) / i;
    return r;
}

}  // namespace lift
