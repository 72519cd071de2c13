#pragma once

// Simple, generalized (GCF) and rational generalized (RGCF) continued
// fractions: expansion, exact evaluation, weights and tail convergents.
//
// Notation used throughout:
//   simple CF   [b0;b1,...,bm]           = b0 + 1/(b1 + 1/(... + 1/bm))
//   GCF         [a1,...,am ; b0,...,bm]  = b0 + a1/(b1 + a2/(... + am/bm))
//   RGCF        [q1,...,qm ; b0,...,bm]  = b0 + q1 + q1/(s(q1)-1 + b1 + q2 + ...
//                                                     + qm/(s(qm)-1 + bm))
// where s(q) is the simple-CF weight of q.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "lecf/rational.hpp"

namespace lecf {

struct SimpleCF {
    std::vector<BigInt> quotients;

    friend bool operator==(const SimpleCF&, const SimpleCF&) = default;
};

struct GCF {
    std::vector<BigInt> partial_numerators; // a1..am
    std::vector<BigInt> quotients;          // b0..bm

    std::size_t depth() const { return partial_numerators.size(); }

    friend bool operator==(const GCF&, const GCF&) = default;
};

struct RGCF {
    std::vector<Rational> alphas; // q1..qm, each >= 1
    std::vector<BigInt> quotients; // b0..bm, bm >= 1

    std::size_t depth() const { return alphas.size(); }

    friend bool operator==(const RGCF&, const RGCF&) = default;
};

// (C_i, D_i): the tail starting at level i evaluates to C_i / D_i. Neither
// entry is reduced; constructions rely on the raw pair.
struct Convergent {
    BigInt numerator;
    BigInt denominator;

    friend bool operator==(const Convergent&, const Convergent&) = default;
};

using ConvergentTable = std::vector<Convergent>;

// Which tail convergents must be coprime for a fraction to count as reduced.
enum class ReducedScope {
    kTail, // 1 <= i <= m
    kAll,  // 0 <= i <= m
};

void validate(const SimpleCF& cf);
void validate(const GCF& g);
void validate(const RGCF& r);

SimpleCF cf_expand(const Rational& value);
Rational cf_eval(const SimpleCF& cf);

BigInt weight_s(const Rational& value);
// s(num/den) on machine integers; den >= 1.
std::uint64_t weight_s(std::uint64_t num, std::uint64_t den);

GCF lift(const SimpleCF& cf);

ConvergentTable gcf_convergents(const GCF& g);
Rational gcf_eval(const GCF& g);
bool gcf_is_balanced(const GCF& g);
BigInt weight_g(const GCF& g);
bool gcf_is_reduced(const GCF& g, ReducedScope scope = ReducedScope::kTail);

ConvergentTable rgcf_convergents(const RGCF& r);
Rational rgcf_eval(const RGCF& r);
BigInt weight_r(const RGCF& r);
bool rgcf_is_reduced(const RGCF& r, ReducedScope scope = ReducedScope::kTail);

// A balanced GCF is the RGCF with integer alphas q_i = a_i and
// b'_0 = b_0 - a_1, b'_i = b_i - a_i - a_{i+1} + 1, b'_m = b_m - a_m + 1.
// Weight, value, the denominators D_i and coprimality of every tail agree.
RGCF rgcf_from_balanced_gcf(const GCF& g);

bool is_reduced(const ConvergentTable& table, ReducedScope scope);

// Text forms: "[2;1,6]", "[2,1 ; 2,2,3]", "[3/2 ; 1,3]". A depth-0 simple CF
// prints as "[5]", a depth-0 GCF/RGCF as "[ ; 5]". Parsers skip blanks.
std::string to_string(const SimpleCF& cf);
std::string to_string(const GCF& g);
std::string to_string(const RGCF& r);
std::string to_string(const ConvergentTable& table);

SimpleCF parse_simple_cf(std::string_view text);
GCF parse_gcf(std::string_view text);
RGCF parse_rgcf(std::string_view text);

// ---------------------------------------------------------------------------
// Bounded minimization of the GCF weight G and RGCF weight R.
//
// Both searches are exhaustive within the bounds and deterministic: among
// minimum-weight candidates the smallest (depth, alphas/numerators, quotients)
// tuple in lexicographic order wins. The simple CF of the input seeds the
// search, so the result never exceeds s(input); if the simple CF is deeper
// than `max_depth` it is still returned as the fallback witness.

struct SearchBounds {
    std::size_t max_depth = 3;          // m
    std::uint64_t max_numerator = 6;    // a_i (GCF only)
    std::uint64_t max_quotient = 0;     // b_i; 0 means s(input)
    std::uint64_t max_alpha_den = 12;   // denominators of q_i (RGCF only)
};

struct GcfMinimum {
    GCF witness;
    BigInt weight;
    bool from_seed = false; // true when nothing in the bounded family beat s
    std::uint64_t nodes = 0;
};

struct RgcfMinimum {
    RGCF witness;
    BigInt weight;
    bool from_seed = false;
    std::uint64_t nodes = 0;
};

GcfMinimum minimize_g(const Rational& value, const SearchBounds& bounds = {});
RgcfMinimum minimize_r(const Rational& value, const SearchBounds& bounds = {},
                       ReducedScope scope = ReducedScope::kTail);

} // namespace lecf
