#include "moebius/rational.hpp"

#include "moebius/errors.hpp"

#include <cctype>

namespace moebius {

namespace {

bool is_integer_literal(std::string_view s)
{
    if (s.empty()) return false;
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
}

std::string_view trim(std::string_view s)
{
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

BigInt parse_int(std::string_view s)
{
    if (s[0] == '+') s.remove_prefix(1);
    return BigInt(std::string(s), 10);
}

} // namespace

Rational parse_rational(std::string_view text)
{
    text = trim(text);
    auto slash = text.find('/');
    std::string_view num = trim(text.substr(0, slash));
    if (!is_integer_literal(num))
        throw ParseError("malformed rational literal '" + std::string(text) + "'");
    BigInt p = parse_int(num);
    BigInt q = 1;
    if (slash != std::string_view::npos) {
        std::string_view den = trim(text.substr(slash + 1));
        if (!is_integer_literal(den))
            throw ParseError("malformed rational literal '" + std::string(text) + "'");
        q = parse_int(den);
        if (q == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
    }
    Rational x(p, q);
    x.canonicalize();
    return x;
}

std::string to_string(const Rational& x)
{
    if (x.get_den() == 1) return x.get_num().get_str();
    return x.get_num().get_str() + "/" + x.get_den().get_str();
}

std::string to_string(const BigInt& x) { return x.get_str(); }

Rational frac(long a, long b)
{
    if (b == 0) throw PreconditionError("zero denominator");
    Rational x{BigInt(a), BigInt(b)};
    x.canonicalize();
    return x;
}

Rational pow(const Rational& base, unsigned long e)
{
    Rational out;
    mpz_pow_ui(out.get_num_mpz_t(), base.get_num_mpz_t(), e);
    mpz_pow_ui(out.get_den_mpz_t(), base.get_den_mpz_t(), e);
    out.canonicalize();
    return out;
}

BigInt binomial(long n, long k)
{
    if (n < 0 || k < 0 || k > n) return 0;
    BigInt out;
    mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return out;
}

} // namespace moebius
