#include "lecf/constructions.hpp"

#include <algorithm>
#include <numeric>

#include "lecf/errors.hpp"

namespace lecf {

namespace {

constexpr std::size_t kMaxConstructionSize = 1'000'000;

std::size_t checked_size(const BigInt& v, const char* what) {
    if (v < 0) {
        throw DomainError(std::string(what) + " must be non-negative");
    }
    if (v > static_cast<unsigned long>(kMaxConstructionSize)) {
        throw ResourceError(std::string(what) + " " + v.get_str() + " exceeds the construction size limit");
    }
    return to_size(v);
}

void append_shifted(std::vector<Relation>& rel, const Poset& p, Element shift) {
    for (const auto& [u, v] : p.covers()) {
        rel.emplace_back(u + shift, v + shift);
    }
}

// Elements minimal in P - x.
std::vector<Element> minimal_without(const Poset& p, Element x) {
    std::vector<Element> out;
    for (Element u = 0; u < p.size(); ++u) {
        if (u == x) {
            continue;
        }
        const auto& below = p.below(u);
        auto count = below.count();
        if (count == 0 || (count == 1 && below.test(x))) {
            out.push_back(u);
        }
    }
    return out;
}

Poset hybrid_poset(const Poset& lower, const PointedPoset& upper) {
    const auto shift = static_cast<Element>(lower.size());
    std::vector<Relation> rel(lower.covers().begin(), lower.covers().end());
    append_shifted(rel, upper.poset(), shift);
    auto tops = maximal_elements(lower);
    for (Element u : minimal_without(upper.poset(), upper.point())) {
        for (Element t : tops) {
            rel.emplace_back(t, u + shift);
        }
    }
    return Poset::from_relations(lower.size() + upper.size(), rel);
}

} // namespace

PointedPoset hybrid_sum(const Poset& lower, const PointedPoset& upper) {
    return PointedPoset(hybrid_poset(lower, upper), static_cast<Element>(lower.size()) + upper.point());
}

PointedPoset hybrid_compose(const PointedPoset& lower, const PointedPoset& upper) {
    return PointedPoset(hybrid_poset(lower.poset(), upper), lower.point());
}

PointedPoset attach_chain(const PointedPoset& p, std::size_t b) {
    return hybrid_sum(chain(b), p);
}

PointedPoset hybrid_compose_with_chain(const PointedPoset& q, const PointedPoset& p, std::size_t b) {
    return attach_chain(hybrid_compose(q, p), b);
}

PointedPoset rec_cf_step(const PointedPoset& p, std::size_t a, std::size_t b) {
    if (a == 0) {
        throw DomainError("continued-fraction step needs a >= 1");
    }
    if (b < a) {
        throw DomainError("continued-fraction step needs b >= a, got a=" + std::to_string(a) +
                          ", b=" + std::to_string(b));
    }
    // Q = {y} + C_{a-1}: e(Q) = a, e(Q - y) = 1.
    PointedPoset q(parallel_sum(chain(1), chain(a - 1)), 0);
    // Ids of attach_chain come first; q's y sits right after the chain.
    return hybrid_compose_with_chain(q, p, b - a);
}

FlipFlop flip_flop(const PointedPoset& p, const PointedPoset& q) {
    const Poset& pp = p.poset();
    const Poset& qp = q.poset();
    const Element x = p.point();
    const Element y = q.point();
    const std::size_t n = pp.size();
    const std::size_t m = qp.size();

    auto pid = [&](Element u) { return static_cast<Element>(u < x ? u : u - 1); };
    auto qid = [&](Element u) { return static_cast<Element>((n - 1) + (u < y ? u : u - 1)); };
    const auto z = static_cast<Element>(n + m - 2);
    const auto v = static_cast<Element>(n + m - 1);

    std::vector<Relation> rel;
    for (const auto& [lo, hi] : pp.covers()) {
        if (lo != x) {
            rel.emplace_back(pid(hi), pid(lo));
        }
    }
    for (const auto& [lo, hi] : qp.covers()) {
        if (lo != y) {
            rel.emplace_back(qid(lo), qid(hi));
        }
    }
    // Covers from x were dropped above; P - x keeps all other relations
    // because any u < w in P with u != x is generated by covers avoiding x.
    for (Element u = 0; u < n; ++u) {
        if (u == x) {
            continue;
        }
        if (pp.less(x, u)) {
            rel.emplace_back(pid(u), z);
        }
        rel.emplace_back(pid(u), v);
    }
    for (Element w = 0; w < m; ++w) {
        if (w == y) {
            continue;
        }
        if (qp.less(y, w)) {
            rel.emplace_back(z, qid(w));
        }
        rel.emplace_back(v, qid(w));
    }
    return {Poset::from_relations(n + m, rel), z, v};
}

PointedPoset base_poset(std::size_t b) {
    if (b == 0) {
        throw DomainError("base poset needs b >= 1");
    }
    return PointedPoset(parallel_sum(chain(1), chain(b - 1)), 0);
}

PointedPoset build_gcf_poset(const GCF& g) {
    if (!gcf_is_balanced(g)) {
        throw DomainError("GCF " + to_string(g) + " is not balanced");
    }
    checked_size(weight_g(g), "GCF weight");
    const std::size_t m = g.depth();
    const auto& a = g.partial_numerators;
    // Level k is built from the tail with its leading quotient shifted to
    // b_k - a_k + 1 (unshifted at k = 0).
    auto shifted = [&](std::size_t k) -> BigInt {
        return k == 0 ? g.quotients[0] : BigInt(g.quotients[k] - a[k - 1] + 1);
    };
    PointedPoset p = base_poset(checked_size(shifted(m), "quotient"));
    for (std::size_t k = m; k-- > 0;) {
        BigInt b = shifted(k);
        if (b < a[k]) {
            throw DomainError("balance violated at level " + std::to_string(k));
        }
        p = rec_cf_step(p, checked_size(a[k], "partial numerator"), checked_size(b, "quotient"));
    }
    return p;
}

PointedPoset realize_ratio(const Rational& value) {
    if (value < 1) {
        throw DomainError("only ratios >= 1 are realized, got " + to_string(value));
    }
    return build_gcf_poset(lift(cf_expand(value)));
}

PointedPoset build_rgcf_poset(const RGCF& r) {
    validate(r);
    checked_size(weight_r(r), "RGCF weight");
    const std::size_t m = r.depth();
    PointedPoset p = base_poset(checked_size(r.quotients[m], "quotient"));
    for (std::size_t k = m; k-- > 0;) {
        PointedPoset q = realize_ratio(r.alphas[k]);
        p = hybrid_compose_with_chain(q, p, checked_size(r.quotients[k], "quotient"));
    }
    return p;
}

// ---------------------------------------------------------------------------
// Reports

bool ConstructionReport::consistent() const {
    for (const auto& flag : {checks.e, checks.e_minus, checks.size, checks.width, checks.rho, checks.bruteforce}) {
        if (flag && !*flag) {
            return false;
        }
    }
    return true;
}

void verify(ConstructionReport& report, const VerifyOptions& options) {
    auto& checks = report.checks;
    const Poset& p = report.poset;
    checks.size = p.size() == report.claimed_size;
    if (options.level == Verification::kNone) {
        return;
    }
    if (options.level == Verification::kBruteForce && p.size() > kBruteforceLimit) {
        throw DomainError("brute-force verification refuses posets with more than " +
                          std::to_string(kBruteforceLimit) + " elements (got " + std::to_string(p.size()) + ")");
    }
    if (options.level == Verification::kDp && p.size() > options.dp_cap) {
        return;
    }
    std::optional<Poset> rest;
    if (report.point) {
        rest = remove(p, *report.point).poset;
    }
    checks.measured_e = count_le(p, options.count);
    checks.e = *checks.measured_e == report.claimed_e;
    if (rest && report.claimed_e_minus) {
        checks.measured_e_minus = count_le(*rest, options.count);
        checks.e_minus = *checks.measured_e_minus == *report.claimed_e_minus;
        if (report.claimed_rho) {
            checks.rho = make_rational(*checks.measured_e, *checks.measured_e_minus) == *report.claimed_rho;
        }
    }
    checks.measured_width = width(p);
    checks.width = *checks.measured_width <= report.claimed_width_bound;
    if (options.level == Verification::kBruteForce || p.size() < kBruteforceLimit) {
        bool ok = count_le_bruteforce(p) == *checks.measured_e;
        if (rest && checks.measured_e_minus) {
            ok = ok && count_le_bruteforce(*rest) == *checks.measured_e_minus;
        }
        checks.bruteforce = ok;
    }
}

namespace {

void set_counts(ConstructionReport& report, const Convergent& top) {
    report.claimed_e = top.numerator;
    report.claimed_e_minus = top.denominator;
    report.claimed_rho = make_rational(top.numerator, top.denominator);
    mpz_gcd(report.scale.get_mpz_t(), top.numerator.get_mpz_t(), top.denominator.get_mpz_t());
}

void set_poset(ConstructionReport& report, const PointedPoset& p) {
    report.poset = p.poset();
    report.point = p.point();
    report.point_minimal = true;
}

} // namespace

ConstructionReport poset_from_gcf(const GCF& g, const VerifyOptions& options) {
    ConstructionReport report;
    report.kind = "gcf";
    report.input = to_string(g);
    report.witness = to_string(g);
    set_poset(report, build_gcf_poset(g));
    set_counts(report, gcf_convergents(g).front());
    report.claimed_size = to_size(weight_g(g));
    report.claimed_width_bound = 3;
    report.details.emplace_back("reduced", gcf_is_reduced(g) ? "true" : "false");
    verify(report, options);
    return report;
}

ConstructionReport poset_from_simple_cf(const BigInt& c, const BigInt& d, const VerifyOptions& options) {
    if (c < 1 || c >= d) {
        throw DomainError("need 1 <= c < d, got c=" + c.get_str() + ", d=" + d.get_str());
    }
    BigInt g;
    mpz_gcd(g.get_mpz_t(), c.get_mpz_t(), d.get_mpz_t());
    if (g != 1) {
        throw DomainError("need gcd(c, d) = 1, got gcd(" + c.get_str() + ", " + d.get_str() + ") = " + g.get_str());
    }
    Rational ratio = make_rational(d, c);
    SimpleCF cf = cf_expand(ratio);
    GCF lifted = lift(cf);
    ConstructionReport report;
    report.kind = "cf";
    report.input = c.get_str() + " " + d.get_str();
    report.witness = to_string(cf);
    set_poset(report, build_gcf_poset(lifted));
    set_counts(report, gcf_convergents(lifted).front());
    report.claimed_size = to_size(weight_s(ratio));
    report.claimed_width_bound = 2;
    verify(report, options);
    return report;
}

ConstructionReport poset_from_rgcf(const RGCF& r, const VerifyOptions& options) {
    ConstructionReport report;
    report.kind = "rgcf";
    report.input = to_string(r);
    report.witness = to_string(r);
    set_poset(report, build_rgcf_poset(r));
    set_counts(report, rgcf_convergents(r).front());
    report.claimed_size = to_size(weight_r(r));
    report.claimed_width_bound = 3;
    report.details.emplace_back("reduced", rgcf_is_reduced(r) ? "true" : "false");
    verify(report, options);
    return report;
}

RelativePlan plan_relative(const BigInt& c, const BigInt& d) {
    if (c < 1) {
        throw DomainError("need c >= 1, got c=" + c.get_str());
    }
    if (d < 3 * c) {
        throw DomainError("the relative construction requires d >= 3c, got c=" + c.get_str() + ", d=" + d.get_str());
    }
    BigInt g;
    mpz_gcd(g.get_mpz_t(), c.get_mpz_t(), d.get_mpz_t());
    if (g != 1) {
        throw DomainError("need gcd(c, d) = 1, got gcd(" + c.get_str() + ", " + d.get_str() + ") = " + g.get_str());
    }
    RelativePlan plan;
    plan.c = c;
    plan.d = d;
    if (c == 1) {
        plan.fallback = true;
        plan.size = checked_size(d, "d");
        return plan;
    }
    BigInt q = d / c;
    plan.a = c + d - q * c;
    plan.b = c;
    BigInt best_cost = -1;
    for (BigInt ell = 1; ell < plan.b; ++ell) {
        BigInt cost = std::max(weight_s(make_rational(ell, plan.b)), weight_s(make_rational(plan.a - ell, plan.b)));
        if (best_cost < 0 || cost < best_cost) {
            best_cost = cost;
            plan.ell = ell;
        }
    }
    plan.alpha = 1 + make_rational(plan.ell, plan.b);
    plan.beta = Rational(q - 2) + make_rational(plan.a - plan.ell, plan.b);
    plan.alpha.canonicalize();
    plan.beta.canonicalize();
    plan.size = checked_size(q - 1 + weight_s(make_rational(plan.ell, plan.b)) +
                                 weight_s(make_rational(plan.a - plan.ell, plan.b)),
                             "relative size");
    return plan;
}

ConstructionReport relative_poset(const BigInt& c, const BigInt& d, const VerifyOptions& options) {
    RelativePlan plan = plan_relative(c, d);
    ConstructionReport report;
    report.kind = "relative";
    report.input = c.get_str() + " " + d.get_str();
    report.claimed_size = plan.size;
    report.claimed_rho = make_rational(d, c);
    if (plan.fallback) {
        set_poset(report, base_poset(plan.size));
        report.witness = "[" + d.get_str() + "]";
        report.claimed_e = d;
        report.claimed_e_minus = BigCount(1);
        report.claimed_width_bound = 2;
        report.details.emplace_back("fallback", "c = 1");
    } else {
        PointedPoset p = realize_ratio(plan.alpha);
        PointedPoset q = realize_ratio(plan.beta);
        FlipFlop r = flip_flop(p, q);
        report.poset = r.poset;
        report.point = r.z;
        report.point_minimal = r.poset.is_minimal(r.z);
        report.witness = to_string(plan.alpha) + " + " + to_string(plan.beta);
        report.claimed_e = plan.alpha.get_num() * plan.beta.get_den() + plan.alpha.get_den() * plan.beta.get_num();
        report.claimed_e_minus = BigCount(plan.alpha.get_den() * plan.beta.get_den());
        report.claimed_width_bound = 4;
        report.details.emplace_back("a", plan.a.get_str());
        report.details.emplace_back("b", plan.b.get_str());
        report.details.emplace_back("ell", plan.ell.get_str());
        report.details.emplace_back("alpha", to_string(plan.alpha));
        report.details.emplace_back("beta", to_string(plan.beta));
    }
    mpz_gcd(report.scale.get_mpz_t(), report.claimed_e.get_mpz_t(), report.claimed_e_minus->get_mpz_t());
    verify(report, options);
    return report;
}

std::vector<std::pair<std::uint64_t, unsigned>> factorize(std::uint64_t d) {
    std::vector<std::pair<std::uint64_t, unsigned>> out;
    for (std::uint64_t p = 2; p * p <= d; ++p) {
        unsigned k = 0;
        while (d % p == 0) {
            d /= p;
            ++k;
        }
        if (k) {
            out.emplace_back(p, k);
        }
    }
    if (d > 1) {
        out.emplace_back(d, 1u);
    }
    return out;
}

Poset default_prime_block(std::uint64_t p) {
    if (p < 2) {
        throw DomainError("prime block needs p >= 2");
    }
    std::uint64_t best_c = 1;
    std::uint64_t best_w = weight_s(1, p);
    for (std::uint64_t c = 2; c < p; ++c) {
        if (std::gcd(c, p) != 1) {
            continue;
        }
        std::uint64_t w = weight_s(c, p);
        if (w < best_w) {
            best_w = w;
            best_c = c;
        }
    }
    return build_gcf_poset(lift(cf_expand(make_rational(BigInt(p), BigInt(best_c))))).poset();
}

Poset poset_from_factorization(std::uint64_t d, const std::map<std::uint64_t, Poset>& prime_realizer) {
    if (d == 0) {
        throw DomainError("d must be >= 1");
    }
    Poset out;
    for (const auto& [p, k] : factorize(d)) {
        auto it = prime_realizer.find(p);
        if (it == prime_realizer.end()) {
            throw DomainError("no block supplied for prime " + std::to_string(p));
        }
        if (count_le(it->second) != static_cast<unsigned long>(p)) {
            throw DomainError("block for prime " + std::to_string(p) + " does not have " + std::to_string(p) +
                              " linear extensions");
        }
        for (unsigned i = 0; i < k; ++i) {
            out = linear_sum(out, it->second);
        }
    }
    return out;
}

ConstructionReport factorization_poset(std::uint64_t d, const VerifyOptions& options) {
    std::map<std::uint64_t, Poset> blocks;
    std::string witness;
    std::size_t size = 0;
    std::size_t block_width = 0;
    for (const auto& [p, k] : factorize(d)) {
        Poset block = default_prime_block(p);
        size += k * block.size();
        block_width = std::max(block_width, width(block));
        if (!witness.empty()) {
            witness += " * ";
        }
        witness += std::to_string(p) + (k > 1 ? "^" + std::to_string(k) : "");
        blocks.emplace(p, std::move(block));
    }
    ConstructionReport report;
    report.kind = "factor";
    report.input = std::to_string(d);
    report.witness = witness.empty() ? "1" : witness;
    report.poset = poset_from_factorization(d, blocks);
    report.claimed_e = static_cast<unsigned long>(d);
    report.claimed_size = size;
    report.claimed_width_bound = block_width;
    verify(report, options);
    return report;
}

} // namespace lecf
