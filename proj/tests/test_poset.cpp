#include <doctest.h>

#include <cmath>
#include <random>
#include <thread>

#include "lecf/errors.hpp"
#include "lecf/poset.hpp"
#include "lecf/poset_io.hpp"
#include "oracles.hpp"

using namespace lecf;

namespace {

BigCount factorial(unsigned n) {
    BigCount f = 1;
    for (unsigned i = 2; i <= n; ++i) {
        f *= i;
    }
    return f;
}

BigCount binomial(unsigned n, unsigned k) {
    BigCount b;
    mpz_bin_uiui(b.get_mpz_t(), n, k);
    return b;
}

Poset from_matrix(std::size_t n, std::uint32_t m) {
    std::vector<Relation> rel;
    for (Element u = 0; u < n; ++u) {
        for (Element v = 0; v < n; ++v) {
            if (m >> (u * n + v) & 1) {
                rel.emplace_back(u, v);
            }
        }
    }
    return Poset::from_relations(n, rel);
}

} // namespace

TEST_CASE("named posets") {
    CHECK(count_le(chain(5)) == 1);
    CHECK(count_le(antichain(5)) == 120);
    CHECK(count_le(zigzag4()) == 5);
    CHECK(count_le(Poset()) == 1);
    CHECK(width(chain(4)) == 1);
    CHECK(width(antichain(4)) == 4);
    CHECK(width(zigzag4()) == 2);
    // C_{n-1} + C_1 has n linear extensions.
    for (unsigned n = 1; n <= 12; ++n) {
        CHECK(count_le(parallel_sum(chain(n - 1), chain(1))) == n);
    }
}

TEST_CASE("construction normalizes to covers and rejects bad input") {
    const Relation rel[] = {{0, 1}, {1, 2}, {0, 2}};
    Poset p = Poset::from_relations(3, rel);
    CHECK(p.covers() == std::vector<Relation>{{0, 1}, {1, 2}});
    CHECK(p.less(0, 2));
    CHECK_FALSE(p.less(2, 0));
    CHECK(p.relations().size() == 3);

    const Relation cyc[] = {{0, 1}, {1, 2}, {2, 0}};
    CHECK_THROWS_AS(Poset::from_relations(3, cyc), DomainError);
    const Relation refl[] = {{1, 1}};
    CHECK_THROWS_AS(Poset::from_relations(3, refl), DomainError);
    const Relation out[] = {{0, 3}};
    CHECK_THROWS_AS(Poset::from_relations(3, out), DomainError);
    CHECK_THROWS_AS(PointedPoset(chain(3), 1), DomainError);
    CHECK_THROWS_AS(PointedPoset(chain(3), 7), DomainError);
}

TEST_CASE("remove returns an id map") {
    Poset z = zigzag4();
    Removal r = remove(z, 1);
    CHECK(r.poset.size() == 3);
    CHECK_FALSE(r.new_id[1].has_value());
    CHECK(*r.new_id[0] == 0);
    CHECK(*r.new_id[2] == 1);
    CHECK(*r.new_id[3] == 2);
    CHECK(r.poset.less(1, 2));
    CHECK(count_le(r.poset) == 3);
}

TEST_CASE("DP and brute force agree on every labeled poset up to 5 elements") {
    for (std::size_t n = 0; n <= 5; ++n) {
        auto all = oracle::labeled_posets(n);
        for (std::uint32_t m : all) {
            Poset p = from_matrix(n, m);
            auto e = count_le(p);
            CHECK(e == static_cast<unsigned long>(oracle::permutation_count(p)));
            CHECK(e == count_le_bruteforce(p));
            CHECK(width(p) == oracle::antichain_width(p));
        }
    }
}

TEST_CASE("DP and brute force agree on random posets with 6 to 8 elements") {
    std::mt19937_64 rng(oracle::kSeed + 10);
    std::uniform_real_distribution<double> density(0.05, 0.6);
    for (int i = 0; i < 300; ++i) {
        std::size_t n = 6 + i % 3;
        Poset p = oracle::random_poset(n, density(rng), rng);
        auto e = count_le(p);
        CHECK(e == static_cast<unsigned long>(oracle::permutation_count(p)));
        CHECK(e >= 1);
        CHECK(e <= factorial(n));
        CHECK(width(p) == width_bruteforce(p));
        CHECK(width(p) == oracle::antichain_width(p));
    }
}

TEST_CASE("sum and dual identities") {
    std::mt19937_64 rng(oracle::kSeed + 11);
    std::uniform_int_distribution<std::size_t> size(0, 5);
    std::uniform_real_distribution<double> density(0.0, 0.7);
    for (int i = 0; i < 200; ++i) {
        std::size_t n = size(rng);
        std::size_t k = std::min<std::size_t>(size(rng), 9 - n);
        Poset p = oracle::random_poset(n, density(rng), rng);
        Poset q = oracle::random_poset(k, density(rng), rng);
        CHECK(count_le(dual(p)) == count_le(p));
        CHECK(count_le(linear_sum(p, q)) == count_le(p) * count_le(q));
        CHECK(count_le(parallel_sum(p, q)) == binomial(n + k, n) * count_le(p) * count_le(q));
        CHECK(count_le(linear_sum(p, q)) == count_le_bruteforce(linear_sum(p, q)));
        CHECK(count_le(parallel_sum(p, q)) == count_le_bruteforce(parallel_sum(p, q)));
        CHECK(dual(dual(p)) == p);
    }
}

TEST_CASE("ideal count is polynomial in n for bounded width") {
    std::mt19937_64 rng(oracle::kSeed + 12);
    for (int i = 0; i < 100; ++i) {
        Poset p = oracle::random_poset(14, 0.35, rng);
        auto r = count_le_detailed(p);
        double bound = std::pow(static_cast<double>(p.size() + 1), static_cast<double>(width(p)));
        CHECK(static_cast<double>(r.ideals) <= bound);
    }
    // Three chains of 20: (21)^3 ideals.
    Poset three = parallel_sum(parallel_sum(chain(20), chain(20)), chain(20));
    auto r = count_le_detailed(three);
    CHECK(r.ideals == 21u * 21u * 21u);
    CHECK(r.extensions == factorial(60) / (factorial(20) * factorial(20) * factorial(20)));
}

TEST_CASE("ideal cap turns runaway inputs into a resource error") {
    CHECK_THROWS_AS(count_le(antichain(30), CountOptions{1000}), ResourceError);
    CHECK(count_le(antichain(20)) == factorial(20));
    CHECK_THROWS_AS(count_le_bruteforce(antichain(10)), DomainError);
}

TEST_CASE("rho") {
    Poset base = parallel_sum(chain(1), chain(4));
    CHECK(rho(base, 0) == 5);
    CHECK(rho(zigzag4(), 0) == Rational(5, 2));
    CHECK(rho(zigzag4(), 2) == Rational(5, 3));
}

TEST_CASE("concurrent queries on a shared poset") {
    std::mt19937_64 rng(oracle::kSeed + 13);
    Poset p = oracle::random_poset(40, 0.2, rng);
    std::vector<std::size_t> widths(8);
    std::vector<std::size_t> relation_counts(8);
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < 8; ++t) {
        pool.emplace_back([&, t] {
            widths[t] = width(p);
            relation_counts[t] = p.relations().size();
        });
    }
    for (auto& t : pool) {
        t.join();
    }
    for (std::size_t t = 1; t < 8; ++t) {
        CHECK(widths[t] == widths[0]);
        CHECK(relation_counts[t] == relation_counts[0]);
    }
}

TEST_CASE("JSON round trip") {
    std::mt19937_64 rng(oracle::kSeed + 14);
    for (int i = 0; i < 50; ++i) {
        Poset p = oracle::random_poset(7, 0.3, rng);
        auto doc = parse_poset_document(to_json(p).dump());
        CHECK(doc.poset == p);
        CHECK_FALSE(doc.x.has_value());
    }
    auto doc = parse_poset_document(R"({"n": 3, "covers": [[0,1],[1,2],[0,2]], "x": 0, "labels": ["a","b","c"]})");
    CHECK(doc.poset.covers().size() == 2);
    CHECK(*doc.x == 0);
    CHECK(doc.poset.labels()[2] == "c");
    CHECK(to_json(doc.poset, doc.x)["x"] == 0);

    CHECK_THROWS_AS(parse_poset_document(R"({"n": 2, "covers": [[0,1],[1,0]]})"), DomainError);
    CHECK_THROWS_AS(parse_poset_document(R"({"covers": []})"), DomainError);
    try {
        parse_poset_document(R"({"n": 2, "covers": [[0,1]})");
        FAIL("no throw");
    } catch (const ParseError& e) {
        CHECK(e.position() > 0);
    }
}

TEST_CASE("DOT export is stable and marks the point") {
    std::string dot = to_dot(zigzag4(), Element{2});
    CHECK(dot.find("rankdir=BT") != std::string::npos);
    CHECK(dot.find("2 [label=\"2\", shape=doublecircle]") != std::string::npos);
    CHECK(dot.find("0 -> 1") < dot.find("2 -> 1"));
    CHECK(dot.find("2 -> 1") < dot.find("2 -> 3"));
    CHECK(to_dot(zigzag4(), Element{2}) == dot);
}
