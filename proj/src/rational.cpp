#include "limaut/rational.hpp"

#include <cctype>

namespace limaut {

namespace {

bool all_digits(const std::string& s, std::size_t from) {
    if (from >= s.size()) return false;
    for (std::size_t i = from; i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
}

}  // namespace

Rational parse_rational(const std::string& text) {
    auto slash = text.find('/');
    std::string num = text.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : text.substr(slash + 1);
    std::size_t sign = (!num.empty() && num[0] == '-') ? 1 : 0;
    if (!all_digits(num, sign) || !all_digits(den, 0))
        throw InputError("malformed rational \"" + text + "\"");
    mpz_class n(num), d(den);
    if (d == 0) throw InputError("zero denominator in rational \"" + text + "\"");
    Rational r(n, d);
    r.canonicalize();
    return r;
}

std::string format_rational(const Rational& r) {
    if (r.get_den() == 1) return r.get_num().get_str();
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

}  // namespace limaut
