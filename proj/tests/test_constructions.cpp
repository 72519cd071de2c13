#include <doctest.h>

#include <random>

#include "lecf/constructions.hpp"
#include "lecf/errors.hpp"
#include "oracles.hpp"

using namespace lecf;

namespace {

Rational q(const char* s) {
    return parse_rational(s);
}

BigCount e(const Poset& p) {
    return BigCount(static_cast<unsigned long>(oracle::permutation_count(p)));
}

BigCount e_minus(const PointedPoset& p) {
    return e(remove(p.poset(), p.point()).poset);
}

Rational rho_of(const PointedPoset& p) {
    return make_rational(e(p.poset()), e_minus(p));
}

Poset single() {
    return chain(1);
}

} // namespace

TEST_CASE("hybrid sum examples") {
    PointedPoset a2(antichain(2), 0);
    PointedPoset r = hybrid_sum(Poset(), a2);
    CHECK(r.poset() == a2.poset());
    CHECK(r.point() == 0);

    PointedPoset s = hybrid_sum(single(), a2);
    CHECK(s.size() == 3);
    CHECK(e(s.poset()) == 3);
    CHECK(s.poset().is_minimal(s.point()));
    // Q is below P - x, x stays incomparable to Q.
    CHECK(s.poset().less(0, 2));
    CHECK_FALSE(s.poset().comparable(0, s.point()));
}

TEST_CASE("hybrid sum identities on random instances") {
    std::mt19937_64 rng(oracle::kSeed + 20);
    std::uniform_int_distribution<std::size_t> size(1, 5);
    std::uniform_real_distribution<double> density(0.0, 0.6);
    for (int i = 0; i < 250; ++i) {
        std::size_t n = size(rng);
        std::size_t k = std::min<std::size_t>(size(rng), 9 - n);
        PointedPoset p = oracle::random_pointed(n, density(rng), rng);
        PointedPoset qq = oracle::random_pointed(k, density(rng), rng);
        PointedPoset r = hybrid_sum(qq.poset(), p);
        const BigCount eq = e(qq.poset());
        const BigCount eq_y = e_minus(qq);
        const BigCount ep = e(p.poset());
        const BigCount ep_x = e_minus(p);
        CHECK(e(r.poset()) == eq * ep + k * eq * ep_x);
        CHECK(e_minus(r) == eq * ep_x);
        // e(R - y) with y = q's point, which keeps id y in R.
        CHECK(e(remove(r.poset(), qq.point()).poset) == eq_y * ep + (k - 1) * eq_y * ep_x);
        CHECK(width(r.poset()) <= std::max(width(p.poset()) - 1, width(qq.poset())) + 1);
        CHECK(r.poset().is_minimal(r.point()));

        // Composition pointed at y.
        PointedPoset c = hybrid_compose(qq, p);
        CHECK(rho_of(c) == rho_of(qq) * (1 + 1 / (Rational(k) - 1 + rho_of(p))));
    }
}

TEST_CASE("attach chain") {
    PointedPoset p(parallel_sum(chain(2), chain(1)), 2);
    CHECK(attach_chain(p, 0).poset() == p.poset());
    PointedPoset r = attach_chain(p, 2);
    CHECK(e(r.poset()) == 5);
    CHECK(rho_of(r) == 5);

    std::mt19937_64 rng(oracle::kSeed + 21);
    std::uniform_int_distribution<std::size_t> size(1, 5);
    std::uniform_int_distribution<std::size_t> chain_len(0, 4);
    std::uniform_real_distribution<double> density(0.0, 0.6);
    for (int i = 0; i < 250; ++i) {
        PointedPoset base = oracle::random_pointed(size(rng), density(rng), rng);
        std::size_t b = std::min(chain_len(rng), 9 - base.size());
        PointedPoset rr = attach_chain(base, b);
        CHECK(rr.size() == base.size() + b);
        CHECK(rho_of(rr) == Rational(b) + rho_of(base));
        CHECK(e(rr.poset()) == e(base.poset()) + b * e_minus(base));
        CHECK(e_minus(rr) == e_minus(base));
        CHECK(width(rr.poset()) <= std::max<std::size_t>(width(base.poset()), 2));
    }
}

TEST_CASE("compose with chain") {
    std::mt19937_64 rng(oracle::kSeed + 22);
    std::uniform_int_distribution<std::size_t> size(1, 4);
    std::uniform_int_distribution<std::size_t> chain_len(0, 3);
    std::uniform_real_distribution<double> density(0.0, 0.6);
    for (int i = 0; i < 250; ++i) {
        PointedPoset p = oracle::random_pointed(size(rng), density(rng), rng);
        PointedPoset qq = oracle::random_pointed(std::min(size(rng), 8 - p.size()), density(rng), rng);
        std::size_t b = std::min(chain_len(rng), 9 - p.size() - qq.size());
        PointedPoset r = hybrid_compose_with_chain(qq, p, b);
        Rational k = qq.size();
        CHECK(rho_of(r) == Rational(b) + rho_of(qq) * (1 + 1 / (k - 1 + rho_of(p))));
        CHECK(r.size() == p.size() + qq.size() + b);
    }
}

TEST_CASE("continued-fraction step") {
    PointedPoset base = base_poset(3);
    PointedPoset r = rec_cf_step(base, 2, 2);
    CHECK(rho_of(r) == q("5/2"));
    CHECK(r.size() == 5);

    // a = 1: b + 1 / rho
    PointedPoset one = rec_cf_step(base, 1, 3);
    CHECK(rho_of(one) == 3 + Rational(1, 3));

    CHECK_THROWS_AS(rec_cf_step(base, 0, 2), DomainError);
    CHECK_THROWS_AS(rec_cf_step(base, 3, 2), DomainError);

    std::mt19937_64 rng(oracle::kSeed + 23);
    std::uniform_int_distribution<std::size_t> size(1, 5);
    std::uniform_int_distribution<std::size_t> val(1, 4);
    std::uniform_real_distribution<double> density(0.0, 0.6);
    int done = 0;
    while (done < 250) {
        PointedPoset p = oracle::random_pointed(size(rng), density(rng), rng);
        std::size_t a = val(rng);
        std::size_t b = a + val(rng) - 1;
        if (p.size() + b > 9 || b > 4) {
            continue;
        }
        ++done;
        PointedPoset rr = rec_cf_step(p, a, b);
        const BigCount ep = e(p.poset());
        const BigCount ep_x = e_minus(p);
        CHECK(e_minus(rr) == ep + (a - 1) * ep_x);
        CHECK(e(rr.poset()) == b * e_minus(rr) + a * ep_x);
        CHECK(rho_of(rr) == Rational(b) + Rational(a) / (Rational(a) - 1 + rho_of(p)));
        CHECK(rr.size() == p.size() + b);
        CHECK(width(rr.poset()) <= std::max<std::size_t>(width(p.poset()), 3));
        CHECK(rr.poset().is_minimal(rr.point()));
    }
}

TEST_CASE("flip-flop") {
    PointedPoset a2(antichain(2), 0);
    FlipFlop r = flip_flop(a2, a2);
    CHECK(r.poset.size() == 4);
    CHECK(make_rational(e(r.poset), e(remove(r.poset, r.z).poset)) == 4);
    CHECK_FALSE(r.poset.comparable(r.z, r.v));

    PointedPoset c1(chain(1), 0);
    PointedPoset base = base_poset(3);
    FlipFlop d = flip_flop(c1, base);
    CHECK(make_rational(e(d.poset), e(remove(d.poset, d.z).poset)) == 1 + rho_of(base));

    std::mt19937_64 rng(oracle::kSeed + 24);
    std::uniform_int_distribution<std::size_t> size(1, 5);
    std::uniform_real_distribution<double> density(0.0, 0.6);
    bool saw_non_minimal_z = false;
    for (int i = 0; i < 250; ++i) {
        PointedPoset p = oracle::random_pointed(size(rng), density(rng), rng);
        PointedPoset qq = oracle::random_pointed(std::min(size(rng), 9 - p.size()), density(rng), rng);
        FlipFlop f = flip_flop(p, qq);
        const BigCount ep = e(p.poset()), ep_x = e_minus(p);
        const BigCount eq = e(qq.poset()), eq_y = e_minus(qq);
        CHECK(f.poset.size() == p.size() + qq.size());
        CHECK(e(f.poset) == ep * eq_y + ep_x * eq);
        CHECK(e(remove(f.poset, f.z).poset) == ep_x * eq_y);
        CHECK(make_rational(e(f.poset), ep_x * eq_y) == rho_of(p) + rho_of(qq));
        CHECK(width(f.poset) <= width(p.poset()) + width(qq.poset()));
        saw_non_minimal_z = saw_non_minimal_z || !f.poset.is_minimal(f.z);
    }
    CHECK(saw_non_minimal_z);
}

TEST_CASE("GCF construction") {
    auto r4 = poset_from_gcf(parse_gcf("[;4]"));
    CHECK(r4.poset.size() == 4);
    CHECK(r4.claimed_e == 4);
    CHECK(*r4.claimed_e_minus == 1);
    CHECK(r4.consistent());

    auto r = poset_from_gcf(parse_gcf("[2,1;2,2,3]"), {Verification::kBruteForce});
    CHECK(r.poset.size() == 6);
    CHECK(e(r.poset) == 20);
    CHECK(e(remove(r.poset, *r.point).poset) == 7);
    CHECK(*r.checks.e);
    CHECK(*r.checks.bruteforce);
    CHECK(r.consistent());

    CHECK_THROWS_AS(poset_from_gcf(parse_gcf("[3;2,2]")), DomainError);

    std::mt19937_64 rng(oracle::kSeed + 25);
    std::uniform_int_distribution<int> depth(0, 3);
    std::uniform_int_distribution<int> val(1, 4);
    std::uniform_int_distribution<int> extra(0, 2);
    for (int i = 0; i < 150; ++i) {
        int m = depth(rng);
        GCF g;
        for (int k = 0; k < m; ++k) {
            g.partial_numerators.emplace_back(val(rng));
        }
        auto a = [&](int k) -> BigInt { return k == 0 || k == m + 1 ? BigInt(1) : g.partial_numerators[k - 1]; };
        for (int k = 0; k <= m; ++k) {
            g.quotients.emplace_back(a(k) + a(k + 1) - 1 + extra(rng));
        }
        auto rep = poset_from_gcf(g);
        auto t = gcf_convergents(g);
        CHECK(rep.consistent());
        CHECK(rep.poset.size() == weight_g(g));
        CHECK(*rep.checks.measured_e == t[0].numerator);
        CHECK(*rep.checks.measured_e_minus == t[0].denominator);
        CHECK(*rep.checks.measured_width <= 3);
        CHECK(rep.poset.is_minimal(*rep.point));
        if (rep.poset.size() <= 9) {
            CHECK(e(rep.poset) == t[0].numerator);
        }
    }
}

TEST_CASE("simple CF construction") {
    for (unsigned n = 2; n <= 8; ++n) {
        auto r = poset_from_simple_cf(1, n);
        CHECK(r.poset.size() == n);
        CHECK(e(r.poset) == n);
    }
    auto r = poset_from_simple_cf(7, 20, {Verification::kBruteForce});
    CHECK(r.poset.size() == 9);
    CHECK(e(r.poset) == 20);
    CHECK(e(remove(r.poset, *r.point).poset) == 7);
    CHECK(*r.checks.measured_width == 2);
    CHECK(r.consistent());

    auto r23 = poset_from_simple_cf(2, 3);
    CHECK(r23.poset.size() == 3);
    CHECK(e(r23.poset) == 3);
    CHECK(e(remove(r23.poset, *r23.point).poset) == 2);

    CHECK_THROWS_AS(poset_from_simple_cf(2, 4), DomainError);
    CHECK_THROWS_AS(poset_from_simple_cf(5, 3), DomainError);
    CHECK_THROWS_AS(poset_from_simple_cf(0, 3), DomainError);

    for (int d = 2; d <= 40; ++d) {
        for (int c = 1; c < d; ++c) {
            if (std::gcd(c, d) != 1) {
                continue;
            }
            auto rep = poset_from_simple_cf(c, d);
            CHECK(rep.consistent());
            CHECK(rep.poset.size() == weight_s(static_cast<std::uint64_t>(c), static_cast<std::uint64_t>(d)));
            CHECK(*rep.checks.measured_e == d);
            CHECK(*rep.checks.measured_e_minus == c);
            CHECK(*rep.checks.measured_width <= 2);
        }
    }
}

TEST_CASE("RGCF construction") {
    auto r = poset_from_rgcf(parse_rgcf("[3/2;1,3]"));
    CHECK(r.poset.size() == 7);
    CHECK(e(r.poset) == 28);
    CHECK(e(remove(r.poset, *r.point).poset) == 10);
    CHECK(*r.claimed_rho == q("14/5"));
    CHECK(r.scale == 2);
    CHECK(r.consistent());

    auto r2 = poset_from_rgcf(parse_rgcf("[13/7;1,1]"));
    CHECK(r2.poset.size() == 10);
    CHECK(make_rational(*r2.checks.measured_e, *r2.checks.measured_e_minus) == q("173/56"));
    CHECK(r2.consistent());

    auto r3 = poset_from_rgcf(parse_rgcf("[;5]"));
    CHECK(r3.poset.size() == 5);
    CHECK(r3.claimed_e == 5);

    // b_0 = 0 is allowed.
    auto r4 = poset_from_rgcf(parse_rgcf("[2;0,2]"));
    CHECK(r4.consistent());
    CHECK(make_rational(*r4.checks.measured_e, *r4.checks.measured_e_minus) == q("8/3"));
}

TEST_CASE("relative construction") {
    auto plan = plan_relative(5, 16);
    CHECK(plan.a == 6);
    CHECK(plan.b == 5);
    CHECK(plan.ell == 3);
    CHECK(plan.alpha == q("8/5"));
    CHECK(plan.beta == q("8/5"));
    CHECK(plan.size == 10);

    auto r = relative_poset(5, 16);
    CHECK(r.poset.size() == 10);
    CHECK(r.consistent());
    CHECK(make_rational(*r.checks.measured_e, *r.checks.measured_e_minus) == q("16/5"));
    CHECK(make_rational(e(r.poset), e(remove(r.poset, *r.point).poset)) == q("16/5"));

    auto f = relative_poset(1, 7);
    CHECK(f.poset.size() == 7);
    CHECK(f.consistent());

    CHECK_THROWS_AS(relative_poset(5, 14), DomainError);
    CHECK_THROWS_AS(relative_poset(4, 16), DomainError);
    CHECK_THROWS_AS(relative_poset(10, 16, {Verification::kBruteForce}), DomainError);

    for (int c = 1; c <= 12; ++c) {
        for (int d = 3 * c; d <= 80; ++d) {
            if (std::gcd(c, d) != 1) {
                continue;
            }
            auto rep = relative_poset(c, d, {Verification::kDp, 200});
            CHECK(rep.consistent());
            REQUIRE(rep.checks.measured_e_minus.has_value());
            CHECK(make_rational(*rep.checks.measured_e, *rep.checks.measured_e_minus) == make_rational(d, c));
            CHECK(rep.poset.size() >= static_cast<std::size_t>(d / c));
        }
    }
}

TEST_CASE("factorization") {
    std::map<std::uint64_t, Poset> blocks{{2, antichain(2)}, {3, parallel_sum(chain(2), chain(1))}};
    CHECK(e(poset_from_factorization(6, blocks)) == 6);
    CHECK(e(poset_from_factorization(4, blocks)) == 4);
    CHECK(poset_from_factorization(4, blocks).size() == 4);
    CHECK(poset_from_factorization(3, blocks) == blocks[3]);
    CHECK_THROWS_AS(poset_from_factorization(10, blocks), DomainError);
    std::map<std::uint64_t, Poset> bad{{2, chain(2)}};
    CHECK_THROWS_AS(poset_from_factorization(2, bad), DomainError);

    CHECK(factorize(360) == std::vector<std::pair<std::uint64_t, unsigned>>{{2, 3}, {3, 2}, {5, 1}});
    for (std::uint64_t d = 1; d <= 200; ++d) {
        auto rep = factorization_poset(d);
        CHECK(rep.consistent());
        CHECK(*rep.checks.measured_e == static_cast<unsigned long>(d));
    }
}

TEST_CASE("verification levels") {
    auto none = poset_from_simple_cf(7, 20, {Verification::kNone});
    CHECK(*none.checks.size);
    CHECK_FALSE(none.checks.e.has_value());
    auto big = poset_from_simple_cf(1, 80, {Verification::kDp, 60});
    CHECK_FALSE(big.checks.e.has_value());
    CHECK_THROWS_AS(poset_from_simple_cf(1, 10, {Verification::kBruteForce}), DomainError);
}
