#include <algorithm>
#include <compare>
#include <optional>

#include "lecf/confrac.hpp"
#include "lecf/errors.hpp"

namespace lecf {

namespace {

BigInt ceil(const Rational& v) {
    BigInt q;
    mpz_cdiv_q(q.get_mpz_t(), v.get_num_mpz_t(), v.get_den_mpz_t());
    return q;
}

bool is_integer(const Rational& v) {
    return v.get_den() == 1;
}

template <typename T>
std::strong_ordering lex(const std::vector<T>& x, const std::vector<T>& y) {
    for (std::size_t i = 0; i < std::min(x.size(), y.size()); ++i) {
        if (x[i] < y[i]) {
            return std::strong_ordering::less;
        }
        if (y[i] < x[i]) {
            return std::strong_ordering::greater;
        }
    }
    return x.size() <=> y.size();
}

// Orders candidates by (weight, depth, first sequence, second sequence).
template <typename A>
bool better(const BigInt& w1, const std::vector<A>& first1, const std::vector<BigInt>& second1,
            const BigInt& w2, const std::vector<A>& first2, const std::vector<BigInt>& second2) {
    if (w1 != w2) {
        return w1 < w2;
    }
    if (first1.size() != first2.size()) {
        return first1.size() < first2.size();
    }
    auto c = lex(first1, first2);
    if (c != 0) {
        return c < 0;
    }
    return lex(second1, second2) < 0;
}

std::uint64_t resolve_quotient_bound(const SearchBounds& bounds, const BigInt& seed_weight) {
    return bounds.max_quotient != 0 ? bounds.max_quotient : to_u64(seed_weight);
}

// Any tail of a balanced GCF (or of an RGCF) is realized as rho(P, x) of a
// poset with as many elements as the tail's weight, and rho(P, x) <= |P|.
// So a tail of value v costs at least ceil(v).

class GcfSearch {
public:
    GcfSearch(const SearchBounds& bounds, std::uint64_t max_b, GcfMinimum& best)
        : bounds_(bounds), max_b_(max_b), best_(best) {}

    void run(const Rational& target) { visit(target, BigInt(1), BigInt(0)); }

private:
    void visit(const Rational& t, const BigInt& prev_a, const BigInt& w) {
        ++best_.nodes;
        const std::size_t level = b_.size();
        if (is_integer(t) && t >= 1 && t <= max_b_ && t.get_num() >= prev_a) {
            offer(w + t.get_num(), t.get_num());
        }
        if (level >= bounds_.max_depth) {
            return;
        }
        // Balance forces t - b_i = a_{i+1} / V_{i+1} <= 1.
        BigInt lo = std::max<BigInt>(BigInt(1), ceil(t - 1));
        BigInt hi = ceil(t) - 1;
        if (hi > max_b_) {
            hi = max_b_;
        }
        for (BigInt b = lo; b <= hi; ++b) {
            Rational gap = t - b;
            for (std::uint64_t a = 1; a <= bounds_.max_numerator; ++a) {
                if (b < prev_a + a - 1) {
                    break;
                }
                Rational next = Rational(BigInt(a)) / gap;
                next.canonicalize();
                BigInt w_next = w + b - a + 1;
                if (w_next + ceil(next) > best_.weight) {
                    continue;
                }
                b_.push_back(b);
                a_.push_back(BigInt(a));
                visit(next, BigInt(a), w_next);
                b_.pop_back();
                a_.pop_back();
            }
        }
    }

    void offer(const BigInt& weight, const BigInt& last_b) {
        if (weight > best_.weight) {
            return;
        }
        GCF g{a_, b_};
        g.quotients.push_back(last_b);
        if (!better(weight, g.partial_numerators, g.quotients, best_.weight,
                    best_.witness.partial_numerators, best_.witness.quotients)) {
            return;
        }
        if (!gcf_is_reduced(g, ReducedScope::kTail)) {
            return;
        }
        best_.witness = std::move(g);
        best_.weight = weight;
        best_.from_seed = false;
    }

    const SearchBounds& bounds_;
    BigInt max_b_;
    GcfMinimum& best_;
    std::vector<BigInt> a_;
    std::vector<BigInt> b_;
};

class RgcfSearch {
public:
    RgcfSearch(const SearchBounds& bounds, std::uint64_t max_b, ReducedScope scope, RgcfMinimum& best)
        : bounds_(bounds), max_b_(max_b), scope_(scope), best_(best) {}

    void run(const Rational& target) { visit(target, BigInt(0)); }

private:
    void visit(const Rational& t, const BigInt& w) {
        ++best_.nodes;
        if (is_integer(t) && t >= 1 && t <= max_b_) {
            offer(w + t.get_num(), t.get_num());
        }
        if (alphas_.size() >= bounds_.max_depth) {
            return;
        }
        BigInt hi_b = ceil(t) - 2; // alpha >= 1 and alpha < t - b
        if (hi_b > max_b_) {
            hi_b = max_b_;
        }
        for (BigInt b = 0; b <= hi_b; ++b) {
            // V_i = b + q + q / (s(q) - 1 + V') with V' >= 1 and s(q) >= q,
            // so q lies in [t - b - 1, t - b).
            Rational lo_q = t - b - 1;
            if (lo_q < 1) {
                lo_q = 1;
            }
            Rational hi_q = t - b;
            for (std::uint64_t den = 1; den <= bounds_.max_alpha_den; ++den) {
                BigInt p_lo = ceil(lo_q * BigInt(den));
                BigInt p_hi = ceil(hi_q * BigInt(den)) - 1;
                for (BigInt p = p_lo; p <= p_hi; ++p) {
                    BigInt g;
                    mpz_gcd_ui(g.get_mpz_t(), p.get_mpz_t(), den);
                    if (g != 1) {
                        continue;
                    }
                    Rational q = make_rational(p, BigInt(den));
                    BigInt s = weight_s(q);
                    Rational rem = hi_q - q;
                    Rational next = q / rem - (s - 1);
                    next.canonicalize();
                    if (next < 1) {
                        continue;
                    }
                    BigInt w_next = w + b + s;
                    if (w_next + ceil(next) > best_.weight) {
                        continue;
                    }
                    b_.push_back(b);
                    alphas_.push_back(q);
                    visit(next, w_next);
                    b_.pop_back();
                    alphas_.pop_back();
                }
            }
        }
    }

    void offer(const BigInt& weight, const BigInt& last_b) {
        if (weight > best_.weight) {
            return;
        }
        RGCF r{alphas_, b_};
        r.quotients.push_back(last_b);
        if (!better(weight, r.alphas, r.quotients, best_.weight, best_.witness.alphas,
                    best_.witness.quotients)) {
            return;
        }
        if (!rgcf_is_reduced(r, scope_)) {
            return;
        }
        best_.witness = std::move(r);
        best_.weight = weight;
        best_.from_seed = false;
    }

    const SearchBounds& bounds_;
    BigInt max_b_;
    ReducedScope scope_;
    RgcfMinimum& best_;
    std::vector<Rational> alphas_;
    std::vector<BigInt> b_;
};

} // namespace

GcfMinimum minimize_g(const Rational& value, const SearchBounds& bounds) {
    if (value < 1) {
        throw DomainError("g is defined for rationals >= 1");
    }
    GcfMinimum best;
    best.witness = lift(cf_expand(value));
    best.weight = weight_g(best.witness);
    best.from_seed = true;
    GcfSearch(bounds, resolve_quotient_bound(bounds, best.weight), best).run(value);
    return best;
}

RgcfMinimum minimize_r(const Rational& value, const SearchBounds& bounds, ReducedScope scope) {
    if (value < 1) {
        throw DomainError("r is defined for rationals >= 1");
    }
    RgcfMinimum best;
    best.witness = rgcf_from_balanced_gcf(lift(cf_expand(value)));
    best.weight = weight_r(best.witness);
    best.from_seed = true;
    RgcfSearch(bounds, resolve_quotient_bound(bounds, best.weight), scope, best).run(value);
    return best;
}

} // namespace lecf
