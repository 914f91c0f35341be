#include "tame/integers.hpp"

namespace tame {

std::string int_to_string(const Int& x) { return x.str(); }

Int int_from_string(const std::string& s) {
    require(!s.empty(), ErrorKind::parse, "empty integer literal");
    size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    require(i < s.size(), ErrorKind::parse, "bare sign is not an integer");
    for (; i < s.size(); ++i)
        require(s[i] >= '0' && s[i] <= '9', ErrorKind::parse, "bad digit in integer literal: " + s);
    return Int(s);
}

std::string rat_to_string(const Rat& x) {
    Int num = boost::multiprecision::numerator(x);
    Int den = boost::multiprecision::denominator(x);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

Rat rat_from_string(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rat(int_from_string(s));
    Int num = int_from_string(s.substr(0, slash));
    Int den = int_from_string(s.substr(slash + 1));
    require(den != 0, ErrorKind::parse, "rational with zero denominator: " + s);
    return Rat(num, den);
}

} // namespace tame
