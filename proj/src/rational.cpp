#include "csp/rational.hpp"

#include <stdexcept>

namespace csp {

namespace mp = boost::multiprecision;

std::string to_string(const Rational& value)
{
    return mp::numerator(value).str() + "/" + mp::denominator(value).str();
}

namespace {

mp::cpp_int parse_integer(std::string_view text)
{
    std::size_t i = 0;
    if (!text.empty() && (text[0] == '-' || text[0] == '+'))
        i = 1;
    if (i == text.size())
        throw std::invalid_argument("empty integer in rational literal");
    for (std::size_t j = i; j < text.size(); ++j) {
        if (text[j] < '0' || text[j] > '9')
            throw std::invalid_argument("bad rational literal: " + std::string(text));
    }
    if (text[0] == '+')
        text.remove_prefix(1);
    return mp::cpp_int(std::string(text));
}

} // namespace

Rational parse_rational(std::string_view text)
{
    const auto slash = text.find('/');
    if (slash == std::string_view::npos)
        return Rational(parse_integer(text));
    const auto num = parse_integer(text.substr(0, slash));
    const auto den = parse_integer(text.substr(slash + 1));
    if (den == 0)
        throw std::invalid_argument("zero denominator in rational literal");
    return Rational(num, den);
}

double to_double(const Rational& value)
{
    return value.convert_to<double>();
}

int sign(const Rational& value)
{
    return value.sign();
}

} // namespace csp
