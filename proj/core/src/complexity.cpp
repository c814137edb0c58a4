#include "dyndist/complexity.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "dyndist/errors.hpp"

namespace dyndist::complexity {

namespace {
// Upper bounds on omega(1,1,k); Le Gall & Urrutia, SODA 2018 (with the
// square exponent 2.3728639 of Le Gall 2014). k <= 0.31389 multiplies in
// quadratic time. Mirrors core/data/omega_1_1_k.txt.
constexpr std::pair<double, double> kBuiltinTable[] = {
    {0.00000, 2.000000}, {0.31389, 2.000000}, {0.32, 2.000064},
    {0.33, 2.000448},    {0.34, 2.001118},    {0.35, 2.001957},
    {0.40, 2.009541},    {0.45, 2.023788},    {0.50, 2.044183},
    {0.55, 2.066134},    {0.60, 2.092351},    {0.65, 2.121734},
    {0.70, 2.153048},    {0.75, 2.186210},    {0.80, 2.220639},
    {0.85, 2.256984},    {0.90, 2.293941},    {0.95, 2.331839},
    {1.00, 2.372864},    {1.10, 2.456462},    {1.20, 2.543255},
    {1.30, 2.624636},    {1.40, 2.710351},    {1.50, 2.796537},
    {1.75, 3.021591},    {2.00, 3.251640},    {2.50, 3.721503},
    {3.00, 4.199712},    {4.00, 5.171210},    {5.00, 6.156708},
};
}  // namespace

const OmegaTable& OmegaTable::builtin() {
    static const OmegaTable t = [] {
        OmegaTable tab;
        for (const auto& kv : kBuiltinTable) tab.knots_.push_back(kv);
        return tab;
    }();
    return t;
}

OmegaTable OmegaTable::parse(const std::string& text) {
    OmegaTable t;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        double k, w;
        if (!(ls >> k)) continue;  // blank line
        if (!(ls >> w)) throw ParseError("expected \"k omega\" pair", lineno, 1);
        t.knots_.emplace_back(k, w);
    }
    if (t.knots_.empty())
        throw ConfigError("omega table is empty");
    std::sort(t.knots_.begin(), t.knots_.end());
    for (size_t i = 1; i < t.knots_.size(); ++i) {
        if (t.knots_[i].first == t.knots_[i - 1].first)
            throw ConfigError("duplicate k in omega table");
        if (t.knots_[i].second < t.knots_[i - 1].second)
            throw ConfigError("omega table must be nondecreasing in k");
    }
    return t;
}

OmegaTable OmegaTable::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open omega table: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse(buf.str());
}

double OmegaTable::omega11(double k) const {
    if (k < 0) throw ConfigError("negative omega argument");
    double v;
    if (k <= knots_.front().first) {
        v = knots_.front().second;
    } else if (k >= knots_.back().first) {
        // Splitting rule beyond the table: omega(1,1,k+d) <= omega(1,1,k)+d.
        v = knots_.back().second + (k - knots_.back().first);
    } else {
        auto it = std::lower_bound(
            knots_.begin(), knots_.end(), k,
            [](const auto& kv, double x) { return kv.first < x; });
        const auto [x1, y1] = *it;
        const auto [x0, y0] = *(it - 1);
        v = y0 + (y1 - y0) * (k - x0) / (x1 - x0);
    }
    return std::max(v, std::max(2.0, 1.0 + k));
}

double OmegaTable::omega(double a, double b, double c) const {
    if (a < 0 || b < 0 || c < 0) throw ConfigError("negative omega argument");
    double s[3] = {a, b, c};
    std::sort(s, s + 3, std::greater<>());
    a = s[0];
    b = s[1];
    c = s[2];
    if (b == 0.0) return a;       // scalar by scalar, a reads
    if (c == 0.0) return a + b;   // matrix-vector
    if (a == b && b == c) return a * omega11(1.0);
    if (a == b) return a * omega11(c / a);
    if (b == c) return b * omega11(a / b);
    return std::min((a - b) + b * omega11(c / b), (b - c) + c * omega11(a / c));
}

double ExponentTerm::eval(const OmegaTable& t, const std::vector<double>& p) const {
    double v = base.eval(p);
    for (const OmegaCall& oc : calls)
        v += oc.scale * t.omega(oc.a.eval(p), oc.b.eval(p), oc.c.eval(p));
    return v;
}

double ExprSpec::eval(const OmegaTable& t, const std::vector<double>& p) const {
    double v = -1e300;
    for (const ExponentTerm& term : terms) v = std::max(v, term.eval(t, p));
    return v;
}

namespace {
void grid_scan(const ExprSpec& expr, const OmegaTable& t, std::vector<double>& lo,
               std::vector<double>& hi, double step, BalanceResult& best) {
    const uint32_t dim = expr.dim;
    std::vector<int> counts(dim);
    for (uint32_t d = 0; d < dim; ++d)
        counts[d] = static_cast<int>(std::round((hi[d] - lo[d]) / step)) + 1;
    std::vector<int> idx(dim, 0);
    std::vector<double> p(dim);
    while (true) {
        for (uint32_t d = 0; d < dim; ++d)
            p[d] = std::min(1.0, std::max(0.0, lo[d] + idx[d] * step));
        const double v = expr.eval(t, p);
        if (v < best.exponent) {
            best.exponent = v;
            best.params = p;
        }
        uint32_t d = 0;
        for (; d < dim; ++d) {
            if (++idx[d] < counts[d]) break;
            idx[d] = 0;
        }
        if (d == dim) break;
    }
}
}  // namespace

BalanceResult balance(const ExprSpec& expr, const OmegaTable& t) {
    BalanceResult best;
    best.params.assign(expr.dim, 0.0);
    best.exponent = 1e300;
    std::vector<double> lo(expr.dim, 0.0), hi(expr.dim, 1.0);
    grid_scan(expr, t, lo, hi, 0.01, best);
    for (double step : {1e-3, 1e-4}) {
        std::vector<double> nlo(expr.dim), nhi(expr.dim);
        for (uint32_t d = 0; d < expr.dim; ++d) {
            nlo[d] = std::max(0.0, best.params[d] - 15 * step);
            nhi[d] = std::min(1.0, best.params[d] + 15 * step);
        }
        grid_scan(expr, t, nlo, nhi, step, best);
    }
    return best;
}

namespace {
Affine aff(double c0, std::vector<double> coeff) { return {c0, std::move(coeff)}; }

ExponentTerm affine_term(double c0, std::vector<double> coeff) {
    ExponentTerm t;
    t.base = aff(c0, std::move(coeff));
    return t;
}

ExponentTerm omega_term(Affine a, Affine b, Affine c, double base_c0 = 0.0,
                        std::vector<double> base_coeff = {}) {
    ExponentTerm t;
    t.base = aff(base_c0, std::move(base_coeff));
    t.calls.push_back({1.0, std::move(a), std::move(b), std::move(c)});
    return t;
}

// Update/query exponent of the exact row/column structure:
// min_nu max{ omega(1,1,nu) - nu, 1 + nu }.
double exact_structure_exponent(const OmegaTable& t) {
    ExprSpec e;
    e.name = "exact-inverse-update";
    e.dim = 1;
    e.terms.push_back(omega_term(aff(1, {0}), aff(1, {0}), aff(0, {1}), 0, {-1}));
    e.terms.push_back(affine_term(1, {1}));
    return balance(e, t).exponent;
}

// Expression builders. Parameter order is (s, mu) unless noted.

ExprSpec expr_exact_inverse() {
    ExprSpec e;
    e.name = "exact-inverse-update";
    e.dim = 1;
    e.terms.push_back(omega_term(aff(1, {0}), aff(1, {0}), aff(0, {1}), 0, {-1}));
    e.terms.push_back(affine_term(1, {1}));
    return e;
}

ExprSpec expr_sssp(double u) {
    ExprSpec e;
    e.name = "sssp-update";
    e.dim = 2;
    e.terms.push_back(affine_term(u, {1, 0}));
    e.terms.push_back(
        omega_term(aff(1, {0, 0}), aff(1, {0, 0}), aff(0, {1, 1}), 0, {0, -1}));
    e.terms.push_back(
        omega_term(aff(1, {-1, 0}), aff(0, {1, 1}), aff(1, {0, 0})));
    return e;
}

ExprSpec expr_apsp_query(double u) {
    // mu pinned to 1 - 2s; single free parameter s.
    ExprSpec e;
    e.name = "apsp-query-update";
    e.dim = 1;
    e.terms.push_back(affine_term(u, {1}));
    e.terms.push_back(
        omega_term(aff(1, {0}), aff(1, {0}), aff(1, {-1}), -1, {2}));
    e.terms.push_back(omega_term(aff(1, {-1}), aff(1, {-1}), aff(1, {0})));
    return e;
}

ExprSpec expr_apsp_explicit(double u) {
    ExprSpec e;
    e.name = "apsp-explicit-update";
    e.dim = 2;
    e.terms.push_back(affine_term(u, {1, 0}));
    e.terms.push_back(
        omega_term(aff(1, {0, 0}), aff(1, {0, 0}), aff(0, {1, 1}), 0, {0, -1}));
    e.terms.push_back(
        omega_term(aff(1, {0, 0}), aff(0, {1, 1}), aff(1, {-1, 0})));
    e.terms.push_back(omega_term(aff(1, {-1, 0}), aff(1, {-1, 0}), aff(1, {0, 0})));
    e.terms.push_back(omega_term(aff(1, {0, 0}), aff(0, {1, 1}), aff(1, {0, 0})));
    e.terms.push_back(omega_term(aff(1, {0, 0}), aff(1, {-1, 0}), aff(1, {0, 0})));
    return e;
}

ExprSpec expr_undirected_query(double u, double w) {
    ExprSpec e;
    e.name = "undirected-query-update";
    e.dim = 2;
    e.terms.push_back(
        omega_term(aff(1, {0, 0}), aff(1, {0, 0}), aff(0, {1, 1}), 0, {0, -1}));
    e.terms.push_back(affine_term(u, {1, 0}));
    e.terms.push_back(
        omega_term(aff(1, {-1, 0}), aff(0, {1, 1}), aff(1, {0, 0})));
    e.terms.push_back(affine_term(w, {-w, 0}));
    return e;
}

ExprSpec expr_diameter15(double u, double w) {
    ExprSpec e;
    e.name = "diameter15-update";
    e.dim = 2;
    e.terms.push_back(
        omega_term(aff(1, {0, 0}), aff(1, {0, 0}), aff(0, {1, 1}), 0, {0, -1}));
    e.terms.push_back(
        omega_term(aff(0.5, {0, 0}), aff(0, {1, 1}), aff(1, {0, 0})));
    e.terms.push_back(affine_term(u, {1, 0}));
    e.terms.push_back(
        omega_term(aff(1, {-1, 0}), aff(0, {1, 1}), aff(1, {-1, 0})));
    e.terms.push_back(affine_term(w, {-w, 0}));
    return e;
}

ExprSpec expr_exact_diameter() {
    ExprSpec e;
    e.name = "exact-diameter-update";
    e.dim = 2;
    e.terms.push_back(
        omega_term(aff(1, {0, 0}), aff(1, {0, 0}), aff(0, {0, 1}), 0, {1, -1}));
    e.terms.push_back(omega_term(aff(1, {0, 0}), aff(0, {1, 1}), aff(1, {0, 0})));
    e.terms.push_back(affine_term(3, {-1, 0}));
    return e;
}
}  // namespace

std::vector<Headline> headline_exponents(const OmegaTable& t) {
    std::vector<Headline> out;
    const double u = exact_structure_exponent(t);
    const double w = t.omega_const();

    {
        BalanceResult r = balance(expr_exact_inverse(), t);
        out.push_back({"exact inverse update (nu-balance)", 1.5286, r.exponent,
                       r.params});
    }
    {
        BalanceResult r = balance(expr_sssp(u), t);
        out.push_back({"sssp update", 1.823, r.exponent, r.params});
    }
    {
        BalanceResult r = balance(expr_apsp_query(u), t);
        out.push_back({"apsp-with-queries update", 1.863, r.exponent, r.params});
        out.push_back({"apsp-with-queries single-pair query", 0.666,
                       1.0 - r.params[0], r.params});
        out.push_back(
            {"apsp-with-queries preprocessing", 2.708, w + r.params[0], r.params});
    }
    {
        BalanceResult r = balance(expr_apsp_explicit(u), t);
        out.push_back({"apsp explicit update", 2.0442, r.exponent, r.params});
        out.push_back({"apsp explicit update (rounded)", 2.045, r.exponent,
                       r.params});
        out.push_back(
            {"apsp explicit preprocessing", 2.873, w + r.params[0], r.params});
    }
    {
        BalanceResult r = balance(expr_undirected_query(u, w), t);
        out.push_back({"undirected apsp update", 1.823, r.exponent, r.params});
        out.push_back({"undirected apsp preprocessing", 2.621, w + r.params[0],
                       r.params});
    }
    out.push_back({"undirected apsp explicit preprocessing", 2.53,
                   w + 1.0 - 2.0 / w, {1.0 - 2.0 / w}});
    {
        BalanceResult r = balance(expr_diameter15(u, w), t);
        out.push_back({"diameter 1.5-approx update", 1.779, r.exponent, r.params});
        out.push_back({"diameter 1.5-approx preprocessing", 2.624,
                       w + r.params[0], r.params});
    }
    {
        BalanceResult r = balance(expr_exact_diameter(), t);
        out.push_back({"exact diameter update", 2.3452, r.exponent, r.params});
    }
    return out;
}

ModeParams balanced_apsp_query() {
    static const ModeParams p = [] {
        const OmegaTable& t = OmegaTable::builtin();
        const double u = exact_structure_exponent(t);
        BalanceResult r = balance(expr_apsp_query(u), t);
        return ModeParams{r.params[0], 1.0 - 2.0 * r.params[0]};
    }();
    return p;
}

ModeParams balanced_sssp() {
    static const ModeParams p = [] {
        const OmegaTable& t = OmegaTable::builtin();
        const double u = exact_structure_exponent(t);
        BalanceResult r = balance(expr_sssp(u), t);
        return ModeParams{r.params[0], r.params[1]};
    }();
    return p;
}

ModeParams balanced_undirected() {
    static const ModeParams p = [] {
        const OmegaTable& t = OmegaTable::builtin();
        const double u = exact_structure_exponent(t);
        BalanceResult r = balance(expr_undirected_query(u, t.omega_const()), t);
        return ModeParams{r.params[0], r.params[1]};
    }();
    return p;
}

ModeParams balanced_diameter15() {
    static const ModeParams p = [] {
        const OmegaTable& t = OmegaTable::builtin();
        const double u = exact_structure_exponent(t);
        BalanceResult r = balance(expr_diameter15(u, t.omega_const()), t);
        return ModeParams{r.params[0], r.params[1]};
    }();
    return p;
}

ModeParams balanced_exact_diameter() {
    static const ModeParams p = [] {
        const OmegaTable& t = OmegaTable::builtin();
        BalanceResult r = balance(expr_exact_diameter(), t);
        return ModeParams{r.params[0], r.params[1]};
    }();
    return p;
}

}  // namespace dyndist::complexity
