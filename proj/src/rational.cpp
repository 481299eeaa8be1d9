#include "lift/rational.hpp"

#include <limits>
#include <stdexcept>

namespace lift {

Rational make_rational(long num, long den)
{
    if (den == 0)
        throw std::invalid_argument("rational with zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

Rational parse_rational(const std::string& text)
{
    Rational q;
    if (text.empty() || q.set_str(text, 10) != 0)
        throw std::invalid_argument("malformed rational: '" + text + "'");
    if (q.get_den() == 0)
        throw std::invalid_argument("rational with zero denominator: '" + text + "'");
    q.canonicalize();
    return q;
}

std::string to_string(const Rational& q) { return q.get_str(10); }

namespace {

nlohmann::ordered_json int_to_json(const BigInt& z)
{
    if (z.fits_slong_p())
        return static_cast<std::int64_t>(z.get_si());
    return z.get_str(10);
}

BigInt int_from_json(const nlohmann::json& j)
{
    if (j.is_number_integer())
        return BigInt(std::to_string(j.get<std::int64_t>()));
    if (j.is_string())
        return BigInt(j.get<std::string>());
    throw std::invalid_argument("expected integer or decimal string, got " + j.dump());
}

}  // namespace

nlohmann::ordered_json rational_to_json(const Rational& q)
{
    return nlohmann::ordered_json::array({int_to_json(q.get_num()), int_to_json(q.get_den())});
}

Rational rational_from_json(const nlohmann::json& j)
{
    if (j.is_number_integer())
        return Rational(int_from_json(j));
    if (j.is_string())
        return parse_rational(j.get<std::string>());
    if (!j.is_array() || j.size() != 2)
        throw std::invalid_argument("expected [num, den], got " + j.dump());
    BigInt num = int_from_json(j[0]);
    BigInt den = int_from_json(j[1]);
    if (den == 0)
        throw std::invalid_argument("rational with zero denominator: " + j.dump());
    Rational q(num, den);
    q.canonicalize();
    return q;
}

}  // namespace lift
