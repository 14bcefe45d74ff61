#include "microwrap/rational.hpp"

#include "microwrap/errors.hpp"

#include <cctype>

namespace microwrap {

namespace {

bool is_integer_literal(std::string_view s) {
    if (s.empty())
        return false;
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size())
        return false;
    for (; i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i])))
            return false;
    return true;
}

Integer parse_integer(std::string_view s) {
    std::string text(s);
    if (!text.empty() && text[0] == '+')
        text.erase(0, 1);
    return Integer(text, 10);
}

} // namespace

Rational parse_rational(std::string_view text) {
    auto slash = text.find('/');
    std::string_view num = text.substr(0, slash);
    std::string_view den = slash == std::string_view::npos ? std::string_view{"1"} : text.substr(slash + 1);
    if (!is_integer_literal(num) || !is_integer_literal(den) || den[0] == '-' || den[0] == '+')
        throw Error("not a rational literal: '" + std::string(text) + "'");
    Integer d = parse_integer(den);
    if (d == 0)
        throw Error("zero denominator in rational literal: '" + std::string(text) + "'");
    Rational r(parse_integer(num), d);
    r.canonicalize();
    return r;
}

std::string to_string(const Rational& value) {
    return value.get_str(10);
}

std::string to_string(const Integer& value) {
    return value.get_str(10);
}

Integer floor_div(const Rational& value, const Rational& modulus) {
    Rational q = value / modulus;
    Integer out;
    mpz_fdiv_q(out.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return out;
}

Rational mod_positive(const Rational& value, const Rational& modulus) {
    Rational r = value - Rational(floor_div(value, modulus)) * modulus;
    r.canonicalize();
    return r;
}

} // namespace microwrap
