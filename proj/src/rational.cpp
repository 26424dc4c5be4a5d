#include "ptmatch/rational.hpp"

#include "ptmatch/errors.hpp"

#include <cctype>

namespace ptmatch {

Rational rational(long num, long den) {
    if (den == 0) throw DomainError("rational with zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

Rational parse_rational(std::string_view text, bool allow_slash) {
    if (text.empty()) throw ParseError("empty number");

    std::size_t pos = 0;
    bool negative = false;
    if (text[pos] == '+' || text[pos] == '-') {
        negative = (text[pos] == '-');
        ++pos;
    }

    auto read_digits = [&](std::string& out) {
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
            out += text[pos++];
        }
    };

    std::string int_part;
    read_digits(int_part);
    if (int_part.empty()) throw ParseError("malformed number '" + std::string(text) + "'");

    Rational value;
    if (pos < text.size() && text[pos] == '/') {
        if (!allow_slash) throw ParseError("fractional 'a/b' form not allowed here");
        ++pos;
        std::string den_part;
        read_digits(den_part);
        if (den_part.empty() || pos != text.size()) {
            throw ParseError("malformed fraction '" + std::string(text) + "'");
        }
        Integer den(den_part);
        if (den == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
        value = Rational(Integer(int_part), den);
        value.canonicalize();
    } else if (pos < text.size() && text[pos] == '.') {
        ++pos;
        std::string frac_part;
        read_digits(frac_part);
        if (frac_part.empty() || pos != text.size()) {
            throw ParseError("malformed decimal '" + std::string(text) + "'");
        }
        Integer scale = 1;
        for (std::size_t i = 0; i < frac_part.size(); ++i) scale *= 10;
        Integer num = Integer(int_part) * scale + Integer(frac_part);
        value = Rational(num, scale);
        value.canonicalize();
    } else {
        if (pos != text.size()) throw ParseError("malformed number '" + std::string(text) + "'");
        value = Rational(Integer(int_part));
    }

    if (negative) value = -value;
    return value;
}

std::string fraction_string(const Rational& q) {
    return q.get_str();
}

std::string decimal_string(const Rational& q, int max_frac_digits) {
    Integer num = q.get_num();
    Integer den = q.get_den();
    std::string out;
    if (num < 0) {
        out += '-';
        num = -num;
    }
    Integer whole = num / den;
    Integer rem = num % den;
    out += whole.get_str();
    if (rem == 0) return out;
    out += '.';
    for (int i = 0; i < max_frac_digits && rem != 0; ++i) {
        rem *= 10;
        Integer digit = rem / den;
        rem %= den;
        out += static_cast<char>('0' + digit.get_si());
    }
    return out;
}

} // namespace ptmatch
