#include "lecf/confrac.hpp"

#include <cctype>
#include <sstream>

#include "lecf/errors.hpp"

namespace lecf {

void validate(const SimpleCF& cf) {
    const auto& b = cf.quotients;
    if (b.empty()) {
        throw DomainError("simple continued fraction needs at least one quotient");
    }
    if (b.front() < 0) {
        throw DomainError("b0 must be non-negative");
    }
    for (std::size_t i = 1; i + 1 < b.size(); ++i) {
        if (b[i] < 1) {
            throw DomainError("inner quotients must be >= 1");
        }
    }
    if (b.size() > 1 && b.back() < 2) {
        throw DomainError("last quotient must be >= 2 (canonical form)");
    }
}

void validate(const GCF& g) {
    if (g.quotients.size() != g.partial_numerators.size() + 1) {
        throw DomainError("GCF needs exactly one more quotient than partial numerators");
    }
    for (const auto& a : g.partial_numerators) {
        if (a < 1) {
            throw DomainError("GCF partial numerators must be >= 1");
        }
    }
    for (const auto& b : g.quotients) {
        if (b < 1) {
            throw DomainError("GCF quotients must be >= 1");
        }
    }
}

void validate(const RGCF& r) {
    if (r.quotients.size() != r.alphas.size() + 1) {
        throw DomainError("RGCF needs exactly one more quotient than alphas");
    }
    for (const auto& q : r.alphas) {
        if (q < 1) {
            throw DomainError("RGCF alphas must be >= 1");
        }
    }
    for (const auto& b : r.quotients) {
        if (b < 0) {
            throw DomainError("RGCF quotients must be >= 0");
        }
    }
    if (r.quotients.back() < 1) {
        throw DomainError("last RGCF quotient must be >= 1");
    }
}

SimpleCF cf_expand(const Rational& value) {
    if (value < 0) {
        throw DomainError("cannot expand a negative rational");
    }
    SimpleCF cf;
    BigInt num = value.get_num();
    BigInt den = value.get_den();
    while (true) {
        BigInt q;
        BigInt r;
        mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
        cf.quotients.push_back(q);
        if (r == 0) {
            break;
        }
        num = den;
        den = r;
    }
    return cf;
}

Rational cf_eval(const SimpleCF& cf) {
    validate(cf);
    Rational v = cf.quotients.back();
    for (std::size_t i = cf.quotients.size() - 1; i-- > 0;) {
        v = Rational(cf.quotients[i]) + 1 / v;
    }
    v.canonicalize();
    return v;
}

BigInt weight_s(const Rational& value) {
    if (value < 0) {
        throw DomainError("weight of a negative rational is undefined");
    }
    BigInt total = 0;
    for (const auto& q : cf_expand(value).quotients) {
        total += q;
    }
    return total;
}

std::uint64_t weight_s(std::uint64_t num, std::uint64_t den) {
    if (den == 0) {
        throw DomainError("zero denominator");
    }
    // Expands den/num instead; s(q) = s(1/q) for q > 0.
    std::uint64_t total = 0;
    while (num != 0) {
        total += den / num;
        std::uint64_t r = den % num;
        den = num;
        num = r;
    }
    return total;
}

GCF lift(const SimpleCF& cf) {
    GCF g;
    g.quotients = cf.quotients;
    g.partial_numerators.assign(cf.quotients.empty() ? 0 : cf.quotients.size() - 1, BigInt(1));
    return g;
}

ConvergentTable gcf_convergents(const GCF& g) {
    validate(g);
    const std::size_t m = g.depth();
    ConvergentTable t(m + 1);
    t[m] = {g.quotients[m], 1};
    for (std::size_t i = m; i-- > 0;) {
        t[i].denominator = t[i + 1].numerator;
        t[i].numerator = g.quotients[i] * t[i].denominator + g.partial_numerators[i] * t[i + 1].denominator;
    }
    return t;
}

Rational gcf_eval(const GCF& g) {
    auto t = gcf_convergents(g);
    return make_rational(t[0].numerator, t[0].denominator);
}

bool gcf_is_balanced(const GCF& g) {
    validate(g);
    const std::size_t m = g.depth();
    // a_0 = a_{m+1} = 1
    auto a = [&](std::size_t i) -> BigInt {
        if (i == 0 || i == m + 1) {
            return 1;
        }
        return g.partial_numerators[i - 1];
    };
    for (std::size_t i = 0; i <= m; ++i) {
        if (g.quotients[i] < a(i) + a(i + 1) - 1) {
            return false;
        }
    }
    return true;
}

BigInt weight_g(const GCF& g) {
    validate(g);
    BigInt w = static_cast<unsigned long>(g.depth());
    for (const auto& b : g.quotients) {
        w += b;
    }
    for (const auto& a : g.partial_numerators) {
        w -= a;
    }
    return w;
}

bool is_reduced(const ConvergentTable& table, ReducedScope scope) {
    std::size_t first = scope == ReducedScope::kAll ? 0 : 1;
    for (std::size_t i = first; i < table.size(); ++i) {
        BigInt g;
        mpz_gcd(g.get_mpz_t(), table[i].numerator.get_mpz_t(), table[i].denominator.get_mpz_t());
        if (g != 1) {
            return false;
        }
    }
    return true;
}

bool gcf_is_reduced(const GCF& g, ReducedScope scope) {
    return is_reduced(gcf_convergents(g), scope);
}

ConvergentTable rgcf_convergents(const RGCF& r) {
    validate(r);
    const std::size_t m = r.depth();
    ConvergentTable t(m + 1);
    t[m] = {r.quotients[m], 1};
    for (std::size_t i = m; i-- > 0;) {
        const Rational& alpha = r.alphas[i];
        BigInt s = weight_s(alpha);
        const auto& next = t[i + 1];
        t[i].denominator = alpha.get_den() * (next.numerator + (s - 1) * next.denominator);
        t[i].numerator = r.quotients[i] * t[i].denominator + alpha.get_num() * (next.numerator + s * next.denominator);
    }
    return t;
}

Rational rgcf_eval(const RGCF& r) {
    auto t = rgcf_convergents(r);
    return make_rational(t[0].numerator, t[0].denominator);
}

BigInt weight_r(const RGCF& r) {
    validate(r);
    BigInt w = 0;
    for (const auto& b : r.quotients) {
        w += b;
    }
    for (const auto& q : r.alphas) {
        w += weight_s(q);
    }
    return w;
}

bool rgcf_is_reduced(const RGCF& r, ReducedScope scope) {
    return is_reduced(rgcf_convergents(r), scope);
}

RGCF rgcf_from_balanced_gcf(const GCF& g) {
    if (!gcf_is_balanced(g)) {
        throw DomainError("GCF " + to_string(g) + " is not balanced");
    }
    const std::size_t m = g.depth();
    const auto& a = g.partial_numerators;
    RGCF r;
    r.quotients = g.quotients;
    for (std::size_t i = 0; i < m; ++i) {
        r.alphas.emplace_back(a[i]);
    }
    if (m > 0) {
        r.quotients[0] -= a[0];
        for (std::size_t i = 1; i < m; ++i) {
            r.quotients[i] -= a[i - 1] + a[i] - 1;
        }
        r.quotients[m] -= a[m - 1] - 1;
    }
    return r;
}

// ---------------------------------------------------------------------------
// Text forms

namespace {

template <typename Seq, typename F>
void join(std::ostringstream& os, const Seq& seq, F&& item) {
    for (std::size_t i = 0; i < seq.size(); ++i) {
        if (i) {
            os << ',';
        }
        os << item(seq[i]);
    }
}

class Cursor {
public:
    explicit Cursor(std::string_view text) : text_(text) {}

    void skip_blanks() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
        }
    }

    bool at(char c) {
        skip_blanks();
        return pos_ < text_.size() && text_[pos_] == c;
    }

    void expect(char c) {
        skip_blanks();
        if (pos_ >= text_.size()) {
            throw ParseError(std::string("expected '") + c + "' but input ended", pos_);
        }
        if (text_[pos_] != c) {
            throw ParseError(std::string("expected '") + c + "', found '" + text_[pos_] + "'", pos_);
        }
        ++pos_;
    }

    // A run of [0-9/-] parsed as a rational; position errors are rebased.
    Rational rational() {
        skip_blanks();
        std::size_t start = pos_;
        while (pos_ < text_.size() && (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '/' || text_[pos_] == '-')) {
            ++pos_;
        }
        if (start == pos_) {
            if (pos_ >= text_.size()) {
                throw ParseError("expected a number but input ended", pos_);
            }
            throw ParseError(std::string("expected a number, found '") + text_[pos_] + "'", pos_);
        }
        try {
            return parse_rational(text_.substr(start, pos_ - start));
        } catch (const ParseError& e) {
            throw ParseError("malformed number '" + std::string(text_.substr(start, pos_ - start)) + "'", start + e.position());
        }
    }

    BigInt integer() {
        skip_blanks();
        std::size_t start = pos_;
        Rational q = rational();
        if (q.get_den() != 1) {
            throw ParseError("expected an integer", start);
        }
        return q.get_num();
    }

    void finish() {
        skip_blanks();
        if (pos_ != text_.size()) {
            throw ParseError(std::string("trailing character '") + text_[pos_] + "'", pos_);
        }
    }

    std::size_t pos() const { return pos_; }

private:
    std::string_view text_;
    std::size_t pos_ = 0;
};

template <typename T, typename F>
std::vector<T> comma_list(Cursor& cur, F&& item, char terminator) {
    std::vector<T> out;
    if (cur.at(terminator)) {
        return out;
    }
    out.push_back(item());
    while (cur.at(',')) {
        cur.expect(',');
        out.push_back(item());
    }
    return out;
}

template <typename F>
void rethrow_as_parse(Cursor& cur, std::size_t pos, F&& check) {
    try {
        check();
    } catch (const ParseError&) {
        throw;
    } catch (const DomainError& e) {
        (void)cur;
        throw ParseError(e.what(), pos);
    }
}

} // namespace

std::string to_string(const SimpleCF& cf) {
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < cf.quotients.size(); ++i) {
        if (i == 1) {
            os << ';';
        } else if (i > 1) {
            os << ',';
        }
        os << cf.quotients[i].get_str();
    }
    os << ']';
    return os.str();
}

std::string to_string(const GCF& g) {
    std::ostringstream os;
    os << '[';
    join(os, g.partial_numerators, [](const BigInt& v) { return v.get_str(); });
    os << " ; ";
    join(os, g.quotients, [](const BigInt& v) { return v.get_str(); });
    os << ']';
    return os.str();
}

std::string to_string(const RGCF& r) {
    std::ostringstream os;
    os << '[';
    join(os, r.alphas, [](const Rational& v) { return v.get_str(); });
    os << " ; ";
    join(os, r.quotients, [](const BigInt& v) { return v.get_str(); });
    os << ']';
    return os.str();
}

std::string to_string(const ConvergentTable& table) {
    std::ostringstream os;
    os << "C=(";
    join(os, table, [](const Convergent& c) { return c.numerator.get_str(); });
    os << ") D=(";
    join(os, table, [](const Convergent& c) { return c.denominator.get_str(); });
    os << ')';
    return os.str();
}

SimpleCF parse_simple_cf(std::string_view text) {
    Cursor cur(text);
    cur.expect('[');
    SimpleCF cf;
    cf.quotients.push_back(cur.integer());
    if (cur.at(';')) {
        cur.expect(';');
        auto rest = comma_list<BigInt>(cur, [&] { return cur.integer(); }, ']');
        if (rest.empty()) {
            throw ParseError("expected a quotient after ';'", cur.pos());
        }
        cf.quotients.insert(cf.quotients.end(), rest.begin(), rest.end());
    }
    cur.expect(']');
    cur.finish();
    rethrow_as_parse(cur, 0, [&] { validate(cf); });
    return cf;
}

GCF parse_gcf(std::string_view text) {
    Cursor cur(text);
    cur.expect('[');
    GCF g;
    g.partial_numerators = comma_list<BigInt>(cur, [&] { return cur.integer(); }, ';');
    cur.expect(';');
    g.quotients = comma_list<BigInt>(cur, [&] { return cur.integer(); }, ']');
    cur.expect(']');
    cur.finish();
    rethrow_as_parse(cur, 0, [&] { validate(g); });
    return g;
}

RGCF parse_rgcf(std::string_view text) {
    Cursor cur(text);
    cur.expect('[');
    RGCF r;
    r.alphas = comma_list<Rational>(cur, [&] { return cur.rational(); }, ';');
    cur.expect(';');
    r.quotients = comma_list<BigInt>(cur, [&] { return cur.integer(); }, ']');
    cur.expect(']');
    cur.finish();
    rethrow_as_parse(cur, 0, [&] { validate(r); });
    return r;
}

} // namespace lecf
