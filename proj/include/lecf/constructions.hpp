#pragma once

// Poset synthesis: hybrid sums, flip-flop posets, and posets whose relative
// number of linear extensions rho(P, x) = e(P) / e(P - x) equals a given
// simple, generalized or rational generalized continued fraction.
//
// Element ids: every binary operation lists its first operand's elements
// first, then the second operand's, in their original order.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lecf/confrac.hpp"
#include "lecf/poset.hpp"

namespace lecf {

// Hybrid sum: every element of `lower` is placed below every element of
// upper - x; x stays incomparable to `lower` and remains the point.
//   e(R)     = e(Q) e(P) + |Q| e(Q) e(P - x)
//   e(R - x) = e(Q) e(P - x)
PointedPoset hybrid_sum(const Poset& lower, const PointedPoset& upper);

// The same poset, pointed at lower's point y instead:
//   rho(R, y) = rho(Q, y) (1 + 1 / (|Q| - 1 + rho(P, x)))
PointedPoset hybrid_compose(const PointedPoset& lower, const PointedPoset& upper);

// hybrid_sum(chain(b), p): rho grows by exactly b.
PointedPoset attach_chain(const PointedPoset& p, std::size_t b);

// attach_chain(hybrid_compose(q, p), b), pointed at q's point:
//   rho(R, y) = b + rho(Q, y) (1 + 1 / (|Q| - 1 + rho(P, x)))
PointedPoset hybrid_compose_with_chain(const PointedPoset& q, const PointedPoset& p, std::size_t b);

// One continued-fraction level, 1 <= a <= b:
//   rho(R, z) = b + a / (a - 1 + rho(P, x)),  |R| = |P| + b,
//   e(R - z) = e(P) + (a - 1) e(P - x),  e(R) = b e(R - z) + a e(P - x).
PointedPoset rec_cf_step(const PointedPoset& p, std::size_t a, std::size_t b);

// Flip-flop poset on (X - x) + (Y - y) + {z, v}: P's order reversed below,
// Q's order above, v between all of them, z above x's former up-set and
// below y's. rho(R, z) = rho(P, x) + rho(Q, y); z need not be minimal.
struct FlipFlop {
    Poset poset;
    Element z;
    Element v;
};
FlipFlop flip_flop(const PointedPoset& p, const PointedPoset& q);

// {x} + C_{b-1}: e = b, e - x = 1.
PointedPoset base_poset(std::size_t b);

// Raw constructions (no verification). The GCF must be balanced; for the
// RGCF, b_0..b_{m-1} may be 0.
PointedPoset build_gcf_poset(const GCF& g);
PointedPoset build_rgcf_poset(const RGCF& r);
// rho = value >= 1 from the simple CF; e(P) and e(P - x) are numerator and
// denominator of `value`.
PointedPoset realize_ratio(const Rational& value);

// ---------------------------------------------------------------------------
// Reports

enum class Verification { kNone, kDp, kBruteForce };

struct VerifyOptions {
    Verification level = Verification::kDp;
    // kDp re-counts only posets up to this size.
    std::size_t dp_cap = 60;
    CountOptions count;
};

struct ClaimChecks {
    std::optional<bool> e;
    std::optional<bool> e_minus;
    std::optional<bool> size;
    std::optional<bool> width;
    std::optional<bool> rho;
    std::optional<bool> bruteforce;
    std::optional<BigCount> measured_e;
    std::optional<BigCount> measured_e_minus;
    std::optional<std::size_t> measured_width;
};

struct ConstructionReport {
    std::string kind;    // cf | gcf | rgcf | relative | factor
    std::string input;   // echo of the request
    std::string witness; // continued fraction the poset realizes
    Poset poset;
    std::optional<Element> point;
    bool point_minimal = false;

    BigCount claimed_e;
    std::optional<BigCount> claimed_e_minus;
    std::size_t claimed_size = 0;
    std::size_t claimed_width_bound = 0;
    std::optional<Rational> claimed_rho;
    // gcd(claimed_e, claimed_e_minus): the construction may realize k*d, k*c.
    BigInt scale = 1;

    std::vector<std::pair<std::string, std::string>> details;
    ClaimChecks checks;

    // No check failed.
    bool consistent() const;
};

void verify(ConstructionReport& report, const VerifyOptions& options);

ConstructionReport poset_from_gcf(const GCF& g, const VerifyOptions& options = {});
// 1 <= c < d, gcd(c, d) = 1: e(P) = d, e(P - x) = c, |P| = s(c/d), width <= 2.
ConstructionReport poset_from_simple_cf(const BigInt& c, const BigInt& d, const VerifyOptions& options = {});
ConstructionReport poset_from_rgcf(const RGCF& r, const VerifyOptions& options = {});

// The split used for rho = d/c with d >= 3c:
//   a = c + d - floor(d/c) c,  b = c,
//   alpha = 1 + l/b,  beta = floor(d/c) - 2 + (a - l)/b,
// with l in 1..b-1 minimizing max(s(l/b), s((a-l)/b)), ties to smallest l.
struct RelativePlan {
    BigInt c;
    BigInt d;
    bool fallback = false; // c == 1: {x} + C_{d-1}
    BigInt a;
    BigInt b;
    BigInt ell;
    Rational alpha;
    Rational beta;
    std::size_t size = 0;
};
RelativePlan plan_relative(const BigInt& c, const BigInt& d);
ConstructionReport relative_poset(const BigInt& c, const BigInt& d, const VerifyOptions& options = {});

// Linear sum of one block per prime factor (with multiplicity); block for p
// must have exactly p linear extensions.
Poset poset_from_factorization(std::uint64_t d, const std::map<std::uint64_t, Poset>& prime_realizer);
// Block for p: the width-2 poset of the numerator c minimizing s(c/p).
Poset default_prime_block(std::uint64_t p);
std::vector<std::pair<std::uint64_t, unsigned>> factorize(std::uint64_t d);
ConstructionReport factorization_poset(std::uint64_t d, const VerifyOptions& options = {});

} // namespace lecf
