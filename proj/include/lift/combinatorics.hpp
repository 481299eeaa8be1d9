#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace lift {

using Bits = std::vector<std::uint8_t>;

std::string bits_to_string(const Bits& bits);

// A {0,1}-sequence of length n+2l with a leading 1, n ones, and every maximal
// run of zeros even when the sequence is read around a circle.
struct EvenSequence {
    int n = 0;
    int l = 0;
    Bits bits;
};

bool is_valid_even_sequence(const Bits& bits, int n, int l);

// Lexicographic order.
std::vector<EvenSequence> enumerate_a_even(int n, int l);

// One zero removed from the first maximal zero run. Positions are 1-based:
// s1 is the first zero, s2 the one that closes that run (nullopt when the run
// is the tail of the sequence).
struct ReducedSequence {
    EvenSequence source;
    Bits tilde;
    int s1 = 0;
    std::optional<int> s2;
};

ReducedSequence reduce(const EvenSequence& a);

// slot -> derivation slot (0-based); -1 where the bit is 0. Ones are numbered
// left to right.
std::vector<int> derivation_assignment(const Bits& tilde);

// Marked points on the interval {1, ..., n-1}; consecutive marks differ by >= 2.
struct MarkedInterval {
    int n = 0;
    std::vector<int> marks;  // 1-based, strictly increasing
};

std::vector<MarkedInterval> enumerate_intervals(int n, int k);

// Marked points on a circle of |tilde| points. Point i (1-based) may carry a
// mark only if tilde[i] = tilde[succ(i)] = 1, succ cyclic; marks are pairwise
// at cyclic distance >= 2.
struct MarkedCircle {
    ReducedSequence base;
    std::vector<int> marks;  // 1-based, increasing
};

std::vector<MarkedCircle> enumerate_circles(const ReducedSequence& r, int k);

int cyclic_successor(int point, int size);  // 1-based

// Streaming enumeration of Sym(m) in lexicographic order, carrying parity.
class SignedPermutations {
public:
    explicit SignedPermutations(std::size_t m);

    const std::vector<std::size_t>& perm() const { return perm_; }
    int sign() const { return sign_; }
    bool done() const { return done_; }
    void next();

private:
    std::vector<std::size_t> perm_;
    int sign_ = 1;
    bool done_ = false;
};

struct SignedPermutation {
    std::vector<std::size_t> perm;
    int sign;
};

std::vector<SignedPermutation> all_signed_permutations(std::size_t m);

int permutation_sign(const std::vector<std::size_t>& perm);

std::uint64_t factorial(unsigned m);
std::uint64_t binomial(unsigned n, unsigned k);

}  // namespace lift
