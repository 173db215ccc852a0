#include "ifslab/approx.hpp"

#include <cmath>
#include <sstream>

namespace ifslab {

double ThetaRule::operator()(int n) const {
    if (n < 1) throw ValidationError("theta is defined for ranks n >= 1");
    switch (family) {
        case Family::power: return c * std::pow(static_cast<double>(n), e);
        case Family::constant: return c;
        case Family::exponential: return c * std::pow(base, n);
        case Family::table:
            if (n > static_cast<int>(table.size()))
                throw ValidationError("theta table has no entry for rank " + std::to_string(n));
            return table[static_cast<std::size_t>(n - 1)];
        case Family::custom: return custom(n);
    }
    throw ValidationError("unreachable theta family");
}

bool ThetaRule::monotone_decreasing() const {
    switch (family) {
        case Family::power: return e <= 0;
        case Family::constant: return true;
        case Family::exponential: return base <= 1.0;
        case Family::table: {
            for (std::size_t i = 1; i < table.size(); ++i)
                if (table[i] > table[i - 1]) return false;
            return true;
        }
        case Family::custom: return false;  // unknown
    }
    return false;
}

static std::vector<double> parse_doubles(const std::string& s) {
    std::vector<double> vals;
    std::stringstream in(s);
    std::string tok;
    while (std::getline(in, tok, ',')) {
        if (tok.empty()) continue;
        std::size_t used = 0;
        double v = std::stod(tok, &used);
        if (used != tok.size()) throw ValidationError("bad number '" + tok + "' in theta spec");
        vals.push_back(v);
    }
    return vals;
}

ThetaRule ThetaRule::parse(const std::string& spec) {
    auto colon = spec.find(':');
    std::string fam = spec.substr(0, colon);
    std::string rest = colon == std::string::npos ? "" : spec.substr(colon + 1);
    ThetaRule r;
    r.spec_text = spec;
    auto need = [&](std::size_t k) {
        auto vals = parse_doubles(rest);
        if (vals.size() != k)
            throw ValidationError("theta family '" + fam + "' needs " + std::to_string(k) +
                                  " parameter(s)");
        return vals;
    };
    if (fam == "power") {
        auto v = need(2);
        r.family = Family::power;
        r.c = v[0];
        r.e = v[1];
    } else if (fam == "const") {
        auto v = need(1);
        r.family = Family::constant;
        r.c = v[0];
    } else if (fam == "exp") {
        auto v = need(2);
        r.family = Family::exponential;
        r.c = v[0];
        r.base = v[1];
    } else if (fam == "table") {
        r.family = Family::table;
        r.table = parse_doubles(rest);
        if (r.table.empty()) throw ValidationError("empty theta table");
    } else {
        throw ValidationError("unknown theta family '" + fam + "'");
    }
    for (int n = 1; n <= 4; ++n) {
        if (r.family == Family::table && n > static_cast<int>(r.table.size())) break;
        if (r(n) < 0) throw ValidationError("theta must be nonnegative");
    }
    return r;
}

ThetaRule ThetaRule::constant(double c) {
    ThetaRule r;
    r.family = Family::constant;
    r.c = c;
    r.spec_text = "const:" + std::to_string(c);
    return r;
}

ThetaRule ThetaRule::power(double c, double e) {
    ThetaRule r;
    r.family = Family::power;
    r.c = c;
    r.e = e;
    r.spec_text = "power";
    return r;
}

ThetaRule ThetaRule::exponential(double c, double b) {
    ThetaRule r;
    r.family = Family::exponential;
    r.c = c;
    r.base = b;
    r.spec_text = "exp";
    return r;
}

double psi_of(const ApproxFunction& af, const Cylinder& cyl) {
    if (!af.diameter_bypass && af.exponent_ratio < 1.0)
        throw ValidationError("exponent_ratio must be >= 1");
    return af.psi(to_double(cyl.diameter()), static_cast<int>(cyl.word.size()));
}

}  // namespace ifslab
