#include "dioph/rational.hpp"

#include <cctype>

namespace dioph {

Rat parse_rational(const std::string& text) {
    if (text.empty()) throw parse_error("empty rational literal");
    std::string s = text;
    bool neg = false;
    std::size_t i = 0;
    if (s[i] == '+' || s[i] == '-') {
        neg = s[i] == '-';
        ++i;
    }
    std::string intpart, fracpart, denpart;
    std::string* cur = &intpart;
    for (; i < s.size(); ++i) {
        char c = s[i];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            cur->push_back(c);
        } else if (c == '.' && cur == &intpart && denpart.empty()) {
            cur = &fracpart;
        } else if (c == '/' && cur != &denpart) {
            if (!fracpart.empty()) throw parse_error("mixed decimal and fraction: " + text);
            cur = &denpart;
        } else {
            throw parse_error("bad rational literal: " + text);
        }
    }
    if (intpart.empty() && fracpart.empty()) throw parse_error("bad rational literal: " + text);
    Int n = intpart.empty() ? Int(0) : Int(intpart);
    Int d(1);
    if (cur == &denpart) {
        if (denpart.empty()) throw parse_error("missing denominator: " + text);
        d = Int(denpart);
        if (d == 0) throw parse_error("zero denominator: " + text);
    } else if (!fracpart.empty()) {
        for (char c : fracpart) {
            n = n * 10 + (c - '0');
            d *= 10;
        }
    }
    Rat r(n, d);
    return neg ? Rat(-r) : r;
}

std::string rat_to_string(const Rat& x) {
    Int n = num(x), d = den(x);
    if (d == 1) return n.str();
    return n.str() + "/" + d.str();
}

}  // namespace dioph
