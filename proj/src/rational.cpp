#include "algres/rational.hpp"
#include "algres/error.hpp"

#include <cctype>

namespace algres {

std::string to_string(const Q& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

namespace {
bool all_digits(const std::string& s, size_t from) {
    if (from >= s.size()) return false;
    for (size_t i = from; i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
}
} // namespace

Q parse_rational(const std::string& raw) {
    std::string s;
    for (char c : raw)
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    auto slash = s.find('/');
    std::string num = s.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
    size_t start = (!num.empty() && (num[0] == '-' || num[0] == '+')) ? 1 : 0;
    if (!all_digits(num, start) || !all_digits(den, 0))
        throw InputError("malformed rational '" + raw + "'");
    Z d(den);
    if (d == 0) throw InputError("zero denominator in '" + raw + "'");
    Z n(num[0] == '+' ? num.substr(1) : num);
    Q q(n, d);
    q.canonicalize();
    return q;
}

Q make_q(long num, long den) {
    if (den == 0) throw InputError("zero denominator");
    Q q(num, den);
    q.canonicalize();
    return q;
}

} // namespace algres
