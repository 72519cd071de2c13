#include "lecf/rational.hpp"

#include <cctype>

#include "lecf/errors.hpp"

namespace lecf {

namespace {

std::size_t scan_digits(std::string_view text, std::size_t pos) {
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
        ++pos;
    }
    return pos;
}

} // namespace

Rational make_rational(const BigInt& numerator, const BigInt& denominator) {
    if (denominator == 0) {
        throw DomainError("zero denominator");
    }
    Rational r(numerator, denominator);
    r.canonicalize();
    return r;
}

BigInt parse_integer(std::string_view text) {
    if (text.empty()) {
        throw ParseError("expected an integer", 0);
    }
    std::size_t end = scan_digits(text, 0);
    if (end == 0) {
        throw ParseError("expected a digit", 0);
    }
    if (end != text.size()) {
        throw ParseError("unexpected character '" + std::string(1, text[end]) + "'", end);
    }
    return BigInt(std::string(text));
}

Rational parse_rational(std::string_view text) {
    std::size_t pos = 0;
    bool negative = false;
    if (pos < text.size() && text[pos] == '-') {
        negative = true;
        ++pos;
    }
    std::size_t num_end = scan_digits(text, pos);
    if (num_end == pos) {
        throw ParseError("expected a digit", pos);
    }
    BigInt num(std::string(text.substr(pos, num_end - pos)));
    BigInt den = 1;
    pos = num_end;
    if (pos < text.size() && text[pos] == '/') {
        ++pos;
        std::size_t den_end = scan_digits(text, pos);
        if (den_end == pos) {
            throw ParseError("expected a digit", pos);
        }
        den = BigInt(std::string(text.substr(pos, den_end - pos)));
        if (den == 0) {
            throw ParseError("zero denominator", pos);
        }
        pos = den_end;
    }
    if (pos != text.size()) {
        throw ParseError("unexpected character '" + std::string(1, text[pos]) + "'", pos);
    }
    if (negative) {
        num = -num;
    }
    return make_rational(num, den);
}

std::string to_string(const Rational& value) {
    return value.get_str();
}

std::string to_string(const BigInt& value) {
    return value.get_str();
}

std::uint64_t to_u64(const BigInt& value) {
    if (sgn(value) < 0 || !mpz_fits_ulong_p(value.get_mpz_t())) {
        throw ResourceError("integer " + value.get_str() + " does not fit in 64 bits");
    }
    return mpz_get_ui(value.get_mpz_t());
}

std::size_t to_size(const BigInt& value) {
    return static_cast<std::size_t>(to_u64(value));
}

BigInt floor(const Rational& value) {
    BigInt q;
    mpz_fdiv_q(q.get_mpz_t(), value.get_num_mpz_t(), value.get_den_mpz_t());
    return q;
}

} // namespace lecf
