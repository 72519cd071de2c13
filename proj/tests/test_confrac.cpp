#include <doctest.h>

#include <map>
#include <random>

#include "lecf/confrac.hpp"
#include "lecf/errors.hpp"
#include "oracles.hpp"

using namespace lecf;

namespace {

Rational q(const char* s) {
    return parse_rational(s);
}

} // namespace

TEST_CASE("rational parsing and printing") {
    CHECK(to_string(q("6/4")) == "3/2");
    CHECK(to_string(q("5")) == "5");
    CHECK(to_string(q("-10/4")) == "-5/2");
    CHECK(to_string(q("14/6")) == "7/3");
    CHECK_THROWS_AS(parse_rational("1/0"), DomainError);
    try {
        parse_rational("12/x");
        FAIL("no throw");
    } catch (const ParseError& e) {
        CHECK(e.position() == 3);
    }
    CHECK_THROWS_AS(parse_rational(""), ParseError);
    CHECK_THROWS_AS(parse_rational("3/"), ParseError);
}

TEST_CASE("cf_expand worked examples") {
    CHECK(to_string(cf_expand(q("20/7"))) == "[2;1,6]");
    CHECK(to_string(cf_expand(q("5"))) == "[5]");
    CHECK(to_string(cf_expand(q("173/56"))) == "[3;11,5]");
    CHECK(to_string(cf_expand(q("13/7"))) == "[1;1,6]");
    CHECK(to_string(cf_expand(q("0"))) == "[0]");
    CHECK(to_string(cf_expand(q("1/2"))) == "[0;2]");
    CHECK_THROWS_AS(cf_expand(q("-1/2")), DomainError);
}

TEST_CASE("weights of worked examples") {
    CHECK(weight_s(q("20/7")) == 9);
    CHECK(weight_s(q("3/2")) == 3);
    CHECK(weight_s(q("13/7")) == 8);
    CHECK(weight_s(q("173/56")) == 19);
    CHECK(weight_s(7, 20) == 9);
}

TEST_CASE("expand/eval round trip and canonical form") {
    std::mt19937_64 rng(oracle::kSeed);
    std::uniform_int_distribution<long> num(0, 5000);
    std::uniform_int_distribution<long> den(1, 5000);
    for (int i = 0; i < 2000; ++i) {
        Rational a = make_rational(num(rng), den(rng));
        SimpleCF cf = cf_expand(a);
        CHECK(cf_eval(cf) == a);
        CHECK_NOTHROW(validate(cf));
        if (cf.quotients.size() > 1) {
            CHECK(cf.quotients.back() >= 2);
        }
    }
}

TEST_CASE("weight equals subtraction steps and is symmetric") {
    std::mt19937_64 rng(oracle::kSeed + 1);
    std::uniform_int_distribution<std::uint64_t> dist(1, 100000);
    for (int i = 0; i < 3000; ++i) {
        std::uint64_t c = dist(rng);
        std::uint64_t d = dist(rng);
        std::uint64_t steps = oracle::subtraction_steps(c, d);
        Rational a = make_rational(BigInt(static_cast<unsigned long>(c)), BigInt(static_cast<unsigned long>(d)));
        CHECK(weight_s(a) == static_cast<unsigned long>(steps));
        CHECK(weight_s(1 / a) == weight_s(a));
        CHECK(weight_s(c, d) == steps);
    }
}

TEST_CASE("cf_eval against nested evaluation") {
    std::mt19937_64 rng(oracle::kSeed + 2);
    std::uniform_int_distribution<int> len(1, 6);
    std::uniform_int_distribution<int> quot(1, 9);
    for (int i = 0; i < 500; ++i) {
        std::vector<int> b(len(rng));
        for (auto& x : b) {
            x = quot(rng);
        }
        if (b.size() > 1 && b.back() < 2) {
            b.back() = 2;
        }
        SimpleCF cf;
        for (int x : b) {
            cf.quotients.emplace_back(x);
        }
        CHECK(cf_eval(cf) == oracle::nested_cf(b));
    }
}

TEST_CASE("GCF worked example") {
    GCF g = parse_gcf("[2,1 ; 2,2,3]");
    CHECK(gcf_eval(g) == q("20/7"));
    CHECK(weight_g(g) == 6);
    CHECK(gcf_is_balanced(g));
    auto t = gcf_convergents(g);
    REQUIRE(t.size() == 3);
    CHECK(t[0] == Convergent{20, 7});
    CHECK(t[1] == Convergent{7, 3});
    CHECK(t[2] == Convergent{3, 1});
    CHECK(to_string(g) == "[2,1 ; 2,2,3]");
    CHECK(to_string(parse_gcf("[;4]")) == "[ ; 4]");
}

TEST_CASE("balance condition") {
    CHECK(gcf_is_balanced(parse_gcf("[;1]")));
    CHECK_FALSE(gcf_is_balanced(parse_gcf("[3;2,2]")));  // b0 < a1
    CHECK(gcf_is_balanced(parse_gcf("[3;3,3]")));
    CHECK_FALSE(gcf_is_balanced(parse_gcf("[2,2;2,2,2]"))); // b1 < a1 + a2 - 1
    CHECK(gcf_is_balanced(parse_gcf("[2,2;2,3,2]")));
}

TEST_CASE("GCF convergents against nested evaluation") {
    std::mt19937_64 rng(oracle::kSeed + 3);
    std::uniform_int_distribution<int> depth(0, 4);
    std::uniform_int_distribution<int> val(1, 7);
    for (int i = 0; i < 500; ++i) {
        int m = depth(rng);
        std::vector<int> a(m), b(m + 1);
        GCF g;
        for (auto& x : a) {
            x = val(rng);
            g.partial_numerators.emplace_back(x);
        }
        for (auto& x : b) {
            x = val(rng);
            g.quotients.emplace_back(x);
        }
        CHECK(gcf_eval(g) == oracle::nested_gcf(a, b));
        auto t = gcf_convergents(g);
        CHECK(t.back().denominator == 1);
        // Tail values match the nested evaluation of each suffix.
        for (int k = 0; k <= m; ++k) {
            std::vector<int> as(a.begin() + k, a.end()), bs(b.begin() + k, b.end());
            CHECK(make_rational(t[k].numerator, t[k].denominator) == oracle::nested_gcf(as, bs));
        }
        long w = 0;
        for (int x : b) {
            w += x;
        }
        for (int x : a) {
            w -= x;
        }
        CHECK(weight_g(g) == w + m);
    }
}

TEST_CASE("RGCF worked examples") {
    RGCF r = parse_rgcf("[3/2 ; 1,3]");
    CHECK(rgcf_eval(r) == q("14/5"));
    CHECK(weight_r(r) == 7);
    auto t = rgcf_convergents(r);
    CHECK(t[0] == Convergent{28, 10});
    CHECK(t[1] == Convergent{3, 1});
    CHECK(to_string(r) == "[3/2 ; 1,3]");

    RGCF r2 = parse_rgcf("[13/7;1,1]");
    CHECK(rgcf_eval(r2) == q("173/56"));
    CHECK(weight_r(r2) == 10);

    CHECK(rgcf_eval(parse_rgcf("[;5]")) == 5);
    CHECK_THROWS_AS(parse_rgcf("[1/2;1,1]"), ParseError);
    CHECK_THROWS_AS(parse_rgcf("[2;1,0]"), ParseError);
}

TEST_CASE("RGCF value against its defining recursion") {
    // V_m = b_m, V_i = b_i + q + q / (s(q) - 1 + V_{i+1})
    std::mt19937_64 rng(oracle::kSeed + 4);
    std::uniform_int_distribution<int> depth(0, 3);
    std::uniform_int_distribution<int> b(0, 4);
    std::uniform_int_distribution<int> num(1, 12);
    std::uniform_int_distribution<int> den(1, 6);
    for (int i = 0; i < 400; ++i) {
        int m = depth(rng);
        RGCF r;
        for (int k = 0; k < m; ++k) {
            Rational a = make_rational(num(rng), den(rng));
            if (a < 1) {
                a = 1 / a;
            }
            r.alphas.push_back(a);
        }
        for (int k = 0; k <= m; ++k) {
            r.quotients.emplace_back(k == m ? b(rng) + 1 : b(rng));
        }
        Rational v = r.quotients[m];
        for (int k = m; k-- > 0;) {
            const Rational& a = r.alphas[k];
            Rational s = oracle::subtraction_steps(to_u64(a.get_num()), to_u64(a.get_den()));
            v = Rational(r.quotients[k]) + a + a / (s - 1 + v);
        }
        CHECK(rgcf_eval(r) == v);
    }
}

TEST_CASE("balanced GCFs map to integer RGCFs with equal value and weight") {
    std::mt19937_64 rng(oracle::kSeed + 5);
    std::uniform_int_distribution<int> depth(0, 3);
    std::uniform_int_distribution<int> val(1, 5);
    std::uniform_int_distribution<int> slack(0, 3);
    int checked = 0;
    for (int i = 0; i < 600; ++i) {
        int m = depth(rng);
        GCF g;
        for (int k = 0; k < m; ++k) {
            g.partial_numerators.emplace_back(val(rng));
        }
        auto a = [&](int k) -> BigInt { return k == 0 || k == m + 1 ? BigInt(1) : g.partial_numerators[k - 1]; };
        for (int k = 0; k <= m; ++k) {
            g.quotients.emplace_back(a(k) + a(k + 1) - 1 + slack(rng));
        }
        REQUIRE(gcf_is_balanced(g));
        RGCF r = rgcf_from_balanced_gcf(g);
        CHECK(rgcf_eval(r) == gcf_eval(g));
        CHECK(weight_r(r) == weight_g(g));
        auto tg = gcf_convergents(g);
        auto tr = rgcf_convergents(r);
        for (int k = 0; k <= m; ++k) {
            CHECK(tg[k].denominator == tr[k].denominator);
        }
        CHECK(gcf_is_reduced(g) == rgcf_is_reduced(r));
        ++checked;
    }
    CHECK(checked == 600);
}

TEST_CASE("parse errors carry positions") {
    auto position = [](auto&& f) -> long {
        try {
            f();
        } catch (const ParseError& e) {
            return static_cast<long>(e.position());
        }
        return -1;
    };
    CHECK(position([] { parse_simple_cf("[2;1,x]"); }) == 5);
    CHECK(position([] { parse_simple_cf("2;1]"); }) == 0);
    CHECK(position([] { parse_gcf("[2,1;2,2,3"); }) == 10);
    CHECK(position([] { parse_simple_cf("[2;1,6]x"); }) == 7);
    CHECK(position([] { parse_rgcf("[3/;1,3]"); }) >= 0);
    // Structurally fine but not canonical.
    CHECK_THROWS_AS(parse_simple_cf("[2;1,1]"), ParseError);
    CHECK(to_string(parse_simple_cf("[ 2 ; 1 , 6 ]")) == "[2;1,6]");
}

TEST_CASE("minimize g and r on worked examples") {
    auto g = minimize_g(q("20/7"));
    CHECK(g.weight <= 6);
    CHECK(gcf_eval(g.witness) == q("20/7"));
    CHECK(gcf_is_balanced(g.witness));
    CHECK(weight_g(g.witness) == g.weight);

    auto r = minimize_r(q("173/56"));
    CHECK(r.weight <= 10);
    CHECK(rgcf_eval(r.witness) == q("173/56"));
    CHECK(weight_r(r.witness) == r.weight);

    auto r2 = minimize_r(q("14/5"));
    CHECK(r2.weight <= 7);
    CHECK_THROWS_AS(minimize_g(q("1/2")), DomainError);
}

TEST_CASE("bounded searches never exceed s and respect r <= g") {
    std::mt19937_64 rng(oracle::kSeed + 6);
    std::uniform_int_distribution<long> den(2, 60);
    SearchBounds bounds;
    bounds.max_depth = 2;
    bounds.max_numerator = 4;
    bounds.max_alpha_den = 6;
    for (int i = 0; i < 60; ++i) {
        long d = den(rng);
        std::uniform_int_distribution<long> cdist(1, d - 1);
        Rational v = make_rational(d, cdist(rng));
        auto g = minimize_g(v, bounds);
        auto r = minimize_r(v, bounds);
        CHECK(gcf_eval(g.witness) == v);
        CHECK(rgcf_eval(r.witness) == v);
        CHECK(g.weight <= weight_s(v));
        CHECK(r.weight <= g.weight);
        CHECK(gcf_is_reduced(g.witness));
        CHECK(rgcf_is_reduced(r.witness));
    }
}

TEST_CASE("minimize g finds the exhaustive optimum on small inputs") {
    // Brute force over every balanced GCF with m <= 2, a_i <= 3, b_i <= 8.
    std::map<Rational, long> best;
    for (int m = 0; m <= 2; ++m) {
        std::vector<int> a(m, 1), b(m + 1, 1);
        auto bump = [](std::vector<int>& v, int lim) {
            for (auto& x : v) {
                if (++x <= lim) {
                    return true;
                }
                x = 1;
            }
            return false;
        };
        do {
            do {
                GCF g;
                for (int x : a) {
                    g.partial_numerators.emplace_back(x);
                }
                for (int x : b) {
                    g.quotients.emplace_back(x);
                }
                if (!gcf_is_balanced(g) || !gcf_is_reduced(g)) {
                    continue;
                }
                Rational v = gcf_eval(g);
                long w = weight_g(g).get_si();
                auto it = best.find(v);
                if (it == best.end() || w < it->second) {
                    best[v] = w;
                }
            } while (bump(b, 8));
        } while (bump(a, 3));
    }
    SearchBounds bounds;
    bounds.max_depth = 2;
    bounds.max_numerator = 3;
    bounds.max_quotient = 8;
    int tested = 0;
    for (const auto& [v, w] : best) {
        if (v.get_den() > 1 && v.get_num() < 40) {
            // The search also starts from the simple CF, which may lie outside the box.
            CHECK(minimize_g(v, bounds).weight == std::min<BigInt>(BigInt(w), weight_s(v)));
            ++tested;
        }
    }
    CHECK(tested > 20);
}
