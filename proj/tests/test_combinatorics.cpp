#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <bit>
#include <set>

#include "lift/combinatorics.hpp"

using namespace lift;

namespace {

std::vector<std::string> as_strings(const std::vector<EvenSequence>& seqs)
{
    std::vector<std::string> out;
    for (const auto& s : seqs)
        out.push_back(bits_to_string(s.bits));
    return out;
}

Bits bits(const std::string& s)
{
    Bits b;
    for (char c : s)
        b.push_back(c == '1');
    return b;
}

std::vector<std::vector<int>> marks_of(const std::vector<MarkedInterval>& v)
{
    std::vector<std::vector<int>> out;
    for (const auto& t : v)
        out.push_back(t.marks);
    return out;
}

bool cyclic_runs_even(const Bits& b)
{
    const std::size_t m = b.size();
    const auto first_one = std::find(b.begin(), b.end(), 1);
    if (first_one == b.end())
        return false;
    const auto start = static_cast<std::size_t>(first_one - b.begin());
    std::size_t run = 0;
    for (std::size_t k = 1; k <= m; ++k) {
        if (b[(start + k) % m] == 0) {
            ++run;
        } else {
            if (run % 2)
                return false;
            run = 0;
        }
    }
    return true;
}

}  // namespace

TEST_CASE("enumerate_a_even goldens")
{
    using V = std::vector<std::string>;
    CHECK(as_strings(enumerate_a_even(1, 1)) == V{"100"});
    CHECK(as_strings(enumerate_a_even(2, 1)) == V{"1001", "1100"});
    CHECK(as_strings(enumerate_a_even(3, 1)) == V{"10011", "11001", "11100"});
    CHECK(as_strings(enumerate_a_even(2, 2)) == V{"100001", "100100", "110000"});
}

TEST_CASE("enumerate_a_even structural property up to n + 2l <= 12")
{
    for (int n = 1; n <= 10; ++n)
        for (int l = 1; n + 2 * l <= 12; ++l) {
            const auto seqs = enumerate_a_even(n, l);
            std::set<Bits> seen;
            for (const auto& s : seqs) {
                REQUIRE(s.bits.size() == static_cast<std::size_t>(n + 2 * l));
                CHECK(s.bits[0] == 1);
                CHECK(std::count(s.bits.begin(), s.bits.end(), 1) == n);
                CHECK(cyclic_runs_even(s.bits));
                CHECK(is_valid_even_sequence(s.bits, n, l));
                CHECK(seen.insert(s.bits).second);
            }
            CHECK(std::is_sorted(seqs.begin(), seqs.end(),
                                 [](const auto& a, const auto& b) { return a.bits < b.bits; }));
            // completeness against brute force
            std::size_t brute = 0;
            const int m = n + 2 * l;
            for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
                Bits b(static_cast<std::size_t>(m));
                for (int k = 0; k < m; ++k)
                    b[static_cast<std::size_t>(k)] = (mask >> (m - 1 - k)) & 1u;
                if (b[0] == 1 && std::count(b.begin(), b.end(), 1) == n && cyclic_runs_even(b))
                    ++brute;
            }
            CHECK(seqs.size() == brute);
        }
}

TEST_CASE("reduce examples")
{
    const auto r1 = reduce({2, 1, bits("1001")});
    CHECK(bits_to_string(r1.tilde) == "101");
    CHECK(r1.s1 == 2);
    CHECK(r1.s2 == 4);
    const auto r2 = reduce({2, 1, bits("1100")});
    CHECK(bits_to_string(r2.tilde) == "110");
    CHECK(r2.s1 == 3);
    CHECK_FALSE(r2.s2.has_value());
    const auto r3 = reduce({4, 2, bits("10011001")});
    CHECK(bits_to_string(r3.tilde) == "1011001");
    CHECK(r3.s1 == 2);
}

TEST_CASE("reduce property: one zero removed from the first run")
{
    for (int n = 1; n <= 6; ++n)
        for (int l = 1; n + 2 * l <= 10; ++l)
            for (const auto& a : enumerate_a_even(n, l)) {
                const auto r = reduce(a);
                CHECK(std::count(r.tilde.begin(), r.tilde.end(), 1) == n);
                CHECK(std::count(r.tilde.begin(), r.tilde.end(), 0) == 2 * l - 1);
                const auto first_zero = std::find(a.bits.begin(), a.bits.end(), 0) - a.bits.begin() + 1;
                CHECK(r.s1 == first_zero);
                std::size_t run = 0;
                for (std::size_t k = static_cast<std::size_t>(r.s1 - 1); k < r.tilde.size() && r.tilde[k] == 0; ++k)
                    ++run;
                CHECK(run % 2 == 1);
                Bits rebuilt = r.tilde;
                rebuilt.insert(rebuilt.begin() + (r.s1 - 1), 0);
                CHECK(rebuilt == a.bits);
            }
}

TEST_CASE("derivation_assignment")
{
    CHECK(derivation_assignment(bits("110")) == std::vector<int>{0, 1, -1});
    CHECK(derivation_assignment(bits("101")) == std::vector<int>{0, -1, 1});
    CHECK(derivation_assignment(bits("1011001")) == std::vector<int>{0, -1, 1, 2, -1, -1, 3});
}

TEST_CASE("enumerate_intervals")
{
    using M = std::vector<std::vector<int>>;
    CHECK(marks_of(enumerate_intervals(2, 1)) == M{{1}});
    CHECK(marks_of(enumerate_intervals(4, 2)) == M{{1, 3}});
    CHECK(marks_of(enumerate_intervals(6, 3)) == M{{1, 3, 5}});
    CHECK(marks_of(enumerate_intervals(4, 1)) == M{{1}, {2}, {3}});
    CHECK(enumerate_intervals(4, 3).empty());
    CHECK(enumerate_intervals(4, 0).empty());
}

TEST_CASE("interval counts equal C(n-k, k) and brute force, n <= 12")
{
    for (int n = 2; n <= 12; ++n)
        for (int k = 1; k <= n / 2; ++k) {
            std::size_t brute = 0;
            for (std::uint32_t mask = 0; mask < (1u << (n - 1)); ++mask) {
                if (std::popcount(mask) != k || (mask & (mask >> 1)))
                    continue;
                ++brute;
            }
            const auto got = enumerate_intervals(n, k);
            CHECK(got.size() == brute);
            CHECK(got.size() == binomial(static_cast<unsigned>(n - k), static_cast<unsigned>(k)));
        }
}

TEST_CASE("enumerate_circles")
{
    const auto r110 = reduce({2, 1, bits("1100")});
    const auto r101 = reduce({2, 1, bits("1001")});
    auto c = enumerate_circles(r110, 1);
    REQUIRE(c.size() == 1);
    CHECK(c[0].marks == std::vector<int>{1});
    c = enumerate_circles(r101, 1);
    REQUIRE(c.size() == 1);
    CHECK(c[0].marks == std::vector<int>{3});
    CHECK(enumerate_circles(r101, 2).empty());
    CHECK(cyclic_successor(3, 3) == 1);
    CHECK(cyclic_successor(1, 3) == 2);
}

TEST_CASE("circle marks pair consecutive derivations along the circle")
{
    for (int n = 2; n <= 6; ++n)
        for (int l = 1; n + 2 * l <= 10; ++l)
            for (const auto& a : enumerate_a_even(n, l)) {
                const auto r = reduce(a);
                const auto j = derivation_assignment(r.tilde);
                const int size = static_cast<int>(r.tilde.size());
                for (int k = 1; k <= size / 2; ++k)
                    for (const auto& circ : enumerate_circles(r, k)) {
                        CHECK(circ.marks.size() == static_cast<std::size_t>(k));
                        for (int p : circ.marks) {
                            const int s = cyclic_successor(p, size);
                            const int jp = j[static_cast<std::size_t>(p - 1)];
                            const int js = j[static_cast<std::size_t>(s - 1)];
                            REQUIRE(jp >= 0);
                            REQUIRE(js >= 0);
                            CHECK(js == (jp + 1) % n);
                        }
                        for (std::size_t x = 0; x < circ.marks.size(); ++x)
                            for (std::size_t y = x + 1; y < circ.marks.size(); ++y) {
                                const int d = circ.marks[y] - circ.marks[x];
                                CHECK(std::min(d, size - d) >= 2);
                            }
                    }
            }
}

TEST_CASE("signed permutations")
{
    SignedPermutations one(1);
    CHECK(one.perm() == std::vector<std::size_t>{0});
    CHECK(one.sign() == 1);
    one.next();
    CHECK(one.done());

    const auto two = all_signed_permutations(2);
    REQUIRE(two.size() == 2);
    CHECK(two[0].perm == std::vector<std::size_t>{0, 1});
    CHECK(two[0].sign == 1);
    CHECK(two[1].perm == std::vector<std::size_t>{1, 0});
    CHECK(two[1].sign == -1);

    const auto three = all_signed_permutations(3);
    CHECK(three.size() == 6);
    int plus = 0;
    for (const auto& p : three) {
        plus += p.sign > 0;
        CHECK(p.sign == permutation_sign(p.perm));
    }
    CHECK(plus == 3);
    CHECK(permutation_sign({1, 2, 0}) == 1);

    for (unsigned m = 2; m <= 7; ++m) {
        int sum = 0;
        std::size_t count = 0;
        for (SignedPermutations it(m); !it.done(); it.next()) {
            sum += it.sign();
            ++count;
        }
        CHECK(sum == 0);
        CHECK(count == factorial(m));
    }
    SignedPermutations zero(0);
    CHECK_FALSE(zero.done());
    zero.next();
    CHECK(zero.done());
}
