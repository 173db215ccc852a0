#pragma once

#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ifslab/ifs.hpp"

namespace ifslab {

// theta: N -> R>=0 from a small family of rules.
//   power:c,e     theta(n) = c * n^e
//   const:c       theta(n) = c
//   exp:c,b       theta(n) = c * b^n
//   table:v1,...  theta(n) = v_n (1-based, error past the end)
struct ThetaRule {
    enum class Family { power, constant, exponential, table, custom } family = Family::constant;
    double c = 1.0;
    double e = 0.0;
    double base = 1.0;
    std::vector<double> table;
    std::function<double(int)> custom;
    std::string spec_text = "const:1";

    double operator()(int n) const;
    bool monotone_decreasing() const;

    static ThetaRule parse(const std::string& spec);
    static ThetaRule constant(double c);
    static ThetaRule power(double c, double e);
    static ThetaRule exponential(double c, double b);
};

// The approximating function Psi(I) = Diam(X_I)^{exponent_ratio} * theta(|I|).
// diameter_bypass drops the diameter factor entirely (the radius is then
// theta(|I|) alone), which is how the rank-only counterexample families are
// expressed.
struct ApproxFunction {
    ThetaRule theta;
    double exponent_ratio = 1.0;
    bool diameter_bypass = false;

    double psi(double diameter, int rank) const {
        if (diameter_bypass) return theta(rank);
        if (exponent_ratio == 1.0) return diameter * theta(rank);
        return std::pow(diameter, exponent_ratio) * theta(rank);
    }
};

double psi_of(const ApproxFunction& af, const Cylinder& cyl);

}  // namespace ifslab
