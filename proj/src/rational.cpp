#include "ifslab/rational.hpp"

#include <cctype>

namespace ifslab {

Rat parse_rat(std::string_view text) {
    // strip spaces
    std::string s;
    s.reserve(text.size());
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
    if (s.empty()) throw ValidationError("empty rational literal");
    auto valid = [](const std::string& part) {
        if (part.empty()) return false;
        std::size_t i = (part[0] == '-' || part[0] == '+') ? 1 : 0;
        if (i == part.size()) return false;
        for (; i < part.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(part[i]))) return false;
        return true;
    };
    std::string num = s, den = "1";
    if (auto pos = s.find('/'); pos != std::string::npos) {
        num = s.substr(0, pos);
        den = s.substr(pos + 1);
    }
    if (!valid(num) || !valid(den))
        throw ValidationError("bad rational literal '" + std::string(text) + "'");
    Rat q;
    if (mpq_set_str(q.get_mpq_t(), (num + "/" + den).c_str(), 10) != 0)
        throw ValidationError("bad rational literal '" + std::string(text) + "'");
    if (mpz_sgn(mpq_denref(q.get_mpq_t())) == 0)
        throw ValidationError("zero denominator in '" + std::string(text) + "'");
    q.canonicalize();
    return q;
}

std::string rat_str(const Rat& q) {
    std::string s = q.get_str();
    return s;
}

}  // namespace ifslab
