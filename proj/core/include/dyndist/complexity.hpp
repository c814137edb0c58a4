#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace dyndist::complexity {

// Piecewise-linear upper bounds on the rectangular matrix multiplication
// exponent omega(1,1,k), backed by a published table. Below the first knot
// the bound is 2; beyond the last knot it extends by omega(1,1,k+d) <=
// omega(1,1,k)+d. Everything is clamped below by max(2, 1+k).
class OmegaTable {
  public:
    static const OmegaTable& builtin();
    // Text format: lines "k omega", '#' comments, whitespace separated.
    static OmegaTable load(const std::string& path);
    static OmegaTable parse(const std::string& text);

    double omega11(double k) const;
    // omega(a,b,c) via the reduction routine: sort a >= b >= c, then either
    // scale a square case, or take the better of the two rectangular splits
    // min{(a-b) + b*w(c/b), (b-c) + c*w(a/c)}.
    double omega(double a, double b, double c) const;

    double omega_const() const { return omega11(1.0); }

    const std::vector<std::pair<double, double>>& knots() const { return knots_; }

  private:
    std::vector<std::pair<double, double>> knots_;  // sorted by k
};

// Affine form c0 + sum_i coeff_i * param_i over the free parameters.
struct Affine {
    double c0 = 0.0;
    std::vector<double> coeff;

    double eval(const std::vector<double>& p) const {
        double v = c0;
        for (size_t i = 0; i < coeff.size() && i < p.size(); ++i)
            v += coeff[i] * p[i];
        return v;
    }
};

// One exponent term: affine part plus scaled omega(.,.,.) calls whose
// arguments are themselves affine in the parameters.
struct ExponentTerm {
    Affine base;
    struct OmegaCall {
        double scale = 1.0;
        Affine a, b, c;
    };
    std::vector<OmegaCall> calls;

    double eval(const OmegaTable& t, const std::vector<double>& p) const;
};

// A named max-of-terms expression over parameters ranging in [0,1] boxes.
struct ExprSpec {
    std::string name;
    uint32_t dim = 1;
    std::vector<ExponentTerm> terms;

    double eval(const OmegaTable& t, const std::vector<double>& p) const;
};

struct BalanceResult {
    std::vector<double> params;
    double exponent;
};

// Minimize the max term over the [0,1]^dim box: deterministic nested grid
// search refined to 1e-4.
BalanceResult balance(const ExprSpec& expr, const OmegaTable& t);

// Headline exponent reproductions, in a fixed order, with targets.
struct Headline {
    std::string name;
    double target;
    double value;
    std::vector<double> params;
};
std::vector<Headline> headline_exponents(const OmegaTable& t);

// Balanced (s, mu) defaults per composed-oracle mode.
struct ModeParams {
    double s;
    double mu;
};
ModeParams balanced_apsp_query();   // directed weighted, queries
ModeParams balanced_sssp();
ModeParams balanced_undirected();   // undirected with queries
ModeParams balanced_diameter15();
ModeParams balanced_exact_diameter();

}  // namespace dyndist::complexity
