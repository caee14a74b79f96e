#include "zstab/method.hpp"

#include <sstream>

namespace zstab {

Rational parse_rational(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("empty rational literal");
    const auto slash = text.find('/');
    using Int = boost::multiprecision::cpp_int;
    auto parse_int = [](const std::string& s) {
        if (s.empty() || (s.size() == 1 && (s[0] == '-' || s[0] == '+')))
            throw std::invalid_argument("bad integer literal");
        for (std::size_t i = 0; i < s.size(); ++i)
            if (!(std::isdigit(static_cast<unsigned char>(s[i])) || (i == 0 && (s[i] == '-' || s[i] == '+'))))
                throw std::invalid_argument("bad integer literal");
        return Int(s);
    };
    if (slash != std::string::npos) {
        const Int num = parse_int(text.substr(0, slash));
        const Int den = parse_int(text.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("zero denominator");
        return Rational(num, den);
    }
    const auto dot = text.find('.');
    if (dot != std::string::npos) {
        const std::string head = text.substr(0, dot), tail = text.substr(dot + 1);
        const Int whole = parse_int(head.empty() || head == "-" || head == "+" ? head + "0" : head);
        Int frac = tail.empty() ? Int(0) : parse_int(tail);
        Int den = 1;
        for (std::size_t i = 0; i < tail.size(); ++i) den *= 10;
        const bool negative = !text.empty() && text[0] == '-';
        Rational r = Rational(whole) + (negative ? -Rational(frac, den) : Rational(frac, den));
        return r;
    }
    return Rational(parse_int(text));
}

std::string format_rational(const Rational& x) {
    std::ostringstream out;
    out << boost::multiprecision::numerator(x);
    if (boost::multiprecision::denominator(x) != 1) out << "/" << boost::multiprecision::denominator(x);
    return out.str();
}

}  // namespace zstab
