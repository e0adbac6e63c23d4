#include "qspsim/polyapprox.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "qspsim/complexity.hpp"

namespace qspsim::poly {

namespace {

constexpr int kDegreeCap = 10000;

double grid_max_of(const std::vector<cplx>& coeffs, int points) {
    double m = 0.0;
    for (int i = 0; i < points; ++i) {
        double x = -1.0 + 2.0 * double(i) / double(points - 1);
        m = std::max(m, std::abs(chebyshev_eval(coeffs, x)));
    }
    return m;
}

// true sup norm on [-1,1]: dense Chebyshev-spaced scan plus golden-section
// refinement around every sampled local maximum (a grid max alone can sit a
// few 1e-6 below the true extremum, which matters for QSP admissibility)
double sup_norm_of(const std::vector<cplx>& coeffs) {
    const int d = int(coeffs.size()) - 1;
    const int n = std::max(1024, 8 * (d + 1));
    std::vector<double> xs(n + 1), vals(n + 1);
    for (int i = 0; i <= n; ++i) {
        xs[i] = std::cos(M_PI * double(i) / double(n));
        vals[i] = std::abs(chebyshev_eval(coeffs, xs[i]));
    }
    double best = std::max(vals.front(), vals.back());
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    for (int i = 1; i < n; ++i) {
        if (vals[i] < vals[i - 1] || vals[i] < vals[i + 1]) continue;
        double lo = std::min(xs[i + 1], xs[i - 1]);
        double hi = std::max(xs[i + 1], xs[i - 1]);
        double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
        double f1 = std::abs(chebyshev_eval(coeffs, x1));
        double f2 = std::abs(chebyshev_eval(coeffs, x2));
        for (int it = 0; it < 60; ++it) {
            if (f1 > f2) {
                hi = x2;
                x2 = x1;
                f2 = f1;
                x1 = hi - gr * (hi - lo);
                f1 = std::abs(chebyshev_eval(coeffs, x1));
            } else {
                lo = x1;
                x1 = x2;
                f1 = f2;
                x2 = lo + gr * (hi - lo);
                f2 = std::abs(chebyshev_eval(coeffs, x2));
            }
        }
        best = std::max(best, std::max(f1, f2));
    }
    return best;
}

// rescale in place so the true sup norm stays a hair below 1; saturated
// targets sit on the degenerate edge of the QSP existence conditions and
// stall phase synthesis
void enforce_unit_bound(std::vector<cplx>& coeffs) {
    constexpr double margin = 1e-7;
    double m = sup_norm_of(coeffs);
    if (m > 1.0 - margin) {
        double s = (1.0 - margin) / m;
        for (auto& c : coeffs) c *= s;
    }
}


} // namespace

double ChebyshevPolynomial::grid_max(int points) const {
    return grid_max_of(coeffs, points);
}

void ChebyshevPolynomial::check_parity() const {
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
        if (coeffs[k] == cplx(0.0)) continue;
        if (parity == Parity::even && k % 2 == 1)
            throw numeric_error("parity tag even but odd coefficient present");
        if (parity == Parity::odd && k % 2 == 0)
            throw numeric_error("parity tag odd but even coefficient present");
    }
}

// ------------------------------ TargetFunction ------------------------------

cplx TargetFunction::eval(double x) const {
    switch (kind) {
        case Kind::cos: return std::cos(tau * x);
        case Kind::sin: return std::sin(tau * x);
        case Kind::exp_decay: return std::exp(-a * (x + 1.0));
        case Kind::sign: return (x > 0.0) ? 1.0 : (x < 0.0 ? -1.0 : 0.0);
        case Kind::eece: {
            double s = (x > 0.0) ? 1.0 : (x < 0.0 ? -1.0 : 0.0);
            return cplx(std::cos(tau * x), -std::sin(tau * x) * s);
        }
        case Kind::complex_exp: return std::exp(cplx(0.0, -tau * x));
        case Kind::polynomial: return reference.eval(x);
    }
    return 0.0;
}

std::string TargetFunction::name() const {
    char buf[64];
    switch (kind) {
        case Kind::cos: std::snprintf(buf, sizeof buf, "cos(%g x)", tau); break;
        case Kind::sin: std::snprintf(buf, sizeof buf, "sin(%g x)", tau); break;
        case Kind::exp_decay: std::snprintf(buf, sizeof buf, "exp(-%g(x+1))", a); break;
        case Kind::sign: std::snprintf(buf, sizeof buf, "sign(x)"); break;
        case Kind::eece: std::snprintf(buf, sizeof buf, "eece(%g x)", tau); break;
        case Kind::complex_exp: std::snprintf(buf, sizeof buf, "exp(-i %g x)", tau); break;
        case Kind::polynomial: std::snprintf(buf, sizeof buf, "polynomial"); break;
    }
    return buf;
}

TargetFunction TargetFunction::cosine(double tau) { return {Kind::cos, tau, 0.0, {}}; }
TargetFunction TargetFunction::sine(double tau) { return {Kind::sin, tau, 0.0, {}}; }
TargetFunction TargetFunction::exp_decay(double a) { return {Kind::exp_decay, 0.0, a, {}}; }
TargetFunction TargetFunction::sign() { return {Kind::sign, 0.0, 0.0, {}}; }
TargetFunction TargetFunction::eece(double tau) { return {Kind::eece, tau, 0.0, {}}; }
TargetFunction TargetFunction::complex_exp(double tau) { return {Kind::complex_exp, tau, 0.0, {}}; }
TargetFunction TargetFunction::polynomial(ChebyshevPolynomial p) {
    TargetFunction t;
    t.kind = Kind::polynomial;
    t.reference = std::move(p);
    return t;
}

// ------------------------------- constructors -------------------------------

double r_function(double tau, double eps) {
    if (!(eps > 0.0 && eps < std::exp(-1.0)))
        throw domain_error("r_function: eps outside (0, 1/e)");
    if (tau == 0.0) throw domain_error("r_function: tau must be nonzero");
    double at = std::abs(tau);
    return at * std::exp(lambert_w(std::log(1.0 / eps) / at));
}

int truncation_index(double tau, double eps) {
    double scaled = 5.0 / 4.0 * eps;
    if (!(scaled > 0.0 && scaled < std::exp(-1.0)))
        throw domain_error("truncation_index: (5/4) eps outside (0, 1/e)");
    if (tau == 0.0) return 0;
    return int(std::floor(0.5 * r_function(std::exp(1.0) / 2.0 * std::abs(tau), scaled)));
}

namespace {

std::vector<cplx> cos_series(double tau, int big_k) {
    std::vector<double> j = bessel_j_array(2 * big_k, tau);
    std::vector<cplx> c(2 * big_k + 1, cplx(0.0));
    c[0] = j[0];
    double sign = -1.0;
    for (int k = 1; k <= big_k; ++k, sign = -sign) c[2 * k] = 2.0 * sign * j[2 * k];
    return c;
}

std::vector<cplx> sin_series(double tau, int big_k) {
    std::vector<double> j = bessel_j_array(2 * big_k + 1, tau);
    std::vector<cplx> c(2 * big_k + 2, cplx(0.0));
    double sign = 1.0;
    for (int k = 0; k <= big_k; ++k, sign = -sign) c[2 * k + 1] = 2.0 * sign * j[2 * k + 1];
    return c;
}

} // namespace

ChebyshevPolynomial jacobi_anger_cos(double tau, double eps) {
    int K = truncation_index(tau, eps);
    ChebyshevPolynomial p;
    p.coeffs = cos_series(tau, K);
    double s = 1.0 / (1.0 + eps);
    for (auto& c : p.coeffs) c *= s;
    p.parity = Parity::even;
    p.domain_note = {{-1.0, 1.0}};
    return p;
}

ChebyshevPolynomial jacobi_anger_sin(double tau, double eps) {
    int K = truncation_index(tau, eps);
    ChebyshevPolynomial p;
    p.coeffs = sin_series(tau, K);
    double s = 1.0 / (1.0 + eps);
    for (auto& c : p.coeffs) c *= s;
    p.parity = Parity::odd;
    p.domain_note = {{-1.0, 1.0}};
    return p;
}

ChebyshevPolynomial jacobi_anger_cos_degree(double tau, int degree) {
    if (degree < 0 || degree % 2 != 0)
        throw domain_error("jacobi_anger_cos_degree: degree must be even and nonnegative");
    ChebyshevPolynomial p;
    p.coeffs = cos_series(tau, degree / 2);
    enforce_unit_bound(p.coeffs);
    p.parity = Parity::even;
    p.domain_note = {{-1.0, 1.0}};
    return p;
}

ChebyshevPolynomial jacobi_anger_sin_degree(double tau, int degree) {
    if (degree < 1 || degree % 2 != 1)
        throw domain_error("jacobi_anger_sin_degree: degree must be odd");
    ChebyshevPolynomial p;
    p.coeffs = sin_series(tau, (degree - 1) / 2);
    enforce_unit_bound(p.coeffs);
    p.parity = Parity::odd;
    p.domain_note = {{-1.0, 1.0}};
    return p;
}

ChebyshevPolynomial exp_decay_poly(double a, double eps) {
    if (!(a > 0.0)) throw domain_error("exp_decay_poly: a must be positive");
    if (!(eps > 0.0 && eps < 1.0)) throw domain_error("exp_decay_poly: eps outside (0,1)");
    const double e2 = std::exp(2.0);
    int d = int(std::ceil(
        std::sqrt(2.0 * std::max(a * e2, std::log(2.0 / eps)) * std::log(4.0 / eps))));
    if (d > kDegreeCap) throw numeric_error("exp_decay_poly: degree cap exceeded");
    std::vector<double> iv = bessel_i_scaled_array(d, a);  // e^{-a} I_j(a)
    ChebyshevPolynomial p;
    p.coeffs.assign(d + 1, cplx(0.0));
    double sign = 1.0;
    for (int j = 0; j <= d; ++j, sign = -sign)
        p.coeffs[j] = (j == 0 ? 1.0 : 2.0) * iv[j] * sign;  // T_j(-x) = (-1)^j T_j(x)
    p.parity = Parity::mixed;
    p.domain_note = {{-1.0, 1.0}};
    return p;
}

namespace {

// Build the odd sign approximation at degree d (odd) from erf steepness k:
//   G(u) ~ e^{-(ku)^2} truncated at degree d-1, then (2k/sqrt(pi)) int_0^x G.
std::vector<cplx> sign_from_k(double k, int d) {
    double a = 0.5 * k * k;
    int m = (d - 1) / 2;
    std::vector<double> iv = bessel_i_scaled_array(m, a);
    // coefficients of e^{-a(w+1)} in T_j(w), then substitute w = T_2(u)
    std::vector<cplx> g(2 * m + 1, cplx(0.0));
    double sign = 1.0;
    for (int j = 0; j <= m; ++j, sign = -sign)
        g[2 * j] = (j == 0 ? 1.0 : 2.0) * iv[j] * sign;
    // term-by-term antiderivative, constant fixed by oddness
    std::vector<cplx> f(2 * m + 2, cplx(0.0));
    for (int n = 0; n < int(g.size()); ++n) {
        if (g[n] == cplx(0.0)) continue;
        if (n == 0) {
            f[1] += g[n];
        } else if (n == 1) {
            f[2] += g[n] * 0.25;
        } else {
            f[n + 1] += g[n] / (2.0 * (n + 1.0));
            f[n - 1] -= g[n] / (2.0 * (n - 1.0));
        }
    }
    double scale = 2.0 * k / std::sqrt(M_PI);
    for (auto& c : f) c *= scale;
    enforce_unit_bound(f);
    return f;
}

double sign_error_outside_gap(const std::vector<cplx>& coeffs, double delta_gap, int points = 801) {
    double worst = 0.0;
    for (int i = 0; i < points; ++i) {
        double x = delta_gap / 2.0 + (1.0 - delta_gap / 2.0) * double(i) / double(points - 1);
        worst = std::max(worst, std::abs(chebyshev_eval(coeffs, x) - 1.0));
    }
    return worst;  // oddness covers the negative side
}

} // namespace

ChebyshevPolynomial sign_poly(double eps, double delta_gap) {
    if (!(eps > 0.0 && eps < 1.0)) throw domain_error("sign_poly: eps outside (0,1)");
    if (!(delta_gap > 0.0 && delta_gap < 1.0)) throw domain_error("sign_poly: Delta outside (0,1)");
    long long d = cplx_count::gamma_degree(eps, delta_gap);
    if (d > kDegreeCap) throw numeric_error("sign_poly: degree cap exceeded");
    double k = std::sqrt(2.0) / delta_gap * std::sqrt(lambert_w(8.0 / (M_PI * eps * eps)));
    ChebyshevPolynomial p;
    p.coeffs = sign_from_k(k, int(d));
    p.parity = Parity::odd;
    p.domain_note = {{-1.0, -delta_gap / 2.0}, {delta_gap / 2.0, 1.0}};
    return p;
}

ChebyshevPolynomial sign_poly_degree(double delta_gap, int degree) {
    if (degree < 1 || degree % 2 != 1) throw domain_error("sign_poly_degree: degree must be odd");
    if (!(delta_gap > 0.0 && delta_gap < 1.0))
        throw domain_error("sign_poly_degree: Delta outside (0,1)");
    ChebyshevPolynomial p;
    p.parity = Parity::odd;
    p.domain_note = {{-1.0, -delta_gap / 2.0}, {delta_gap / 2.0, 1.0}};
    if (degree == 1) {
        p.coeffs = {cplx(0.0), cplx(1.0)};
        return p;
    }
    // scan the erf steepness; the measured-error curve in k is smooth with a
    // single useful basin at fixed degree
    double best_err = 1e300;
    std::vector<cplx> best;
    for (int i = 0; i <= 60; ++i) {
        double khalf = 0.4 + (4.0 - 0.4) * double(i) / 60.0;  // k * Delta/2
        double k = 2.0 * khalf / delta_gap;
        std::vector<cplx> cand = sign_from_k(k, degree);
        double err = sign_error_outside_gap(cand, delta_gap);
        if (err < best_err) {
            best_err = err;
            best = cand;
        }
    }
    p.coeffs = std::move(best);
    return p;
}

ChebyshevPolynomial eece_poly(double eps, double delta_gap, double tau) {
    if (!(eps > 0.0 && eps < 1.0)) throw domain_error("eece_poly: eps outside (0,1)");
    ChebyshevPolynomial pc = jacobi_anger_cos(tau, eps / 6.0);
    ChebyshevPolynomial ps = jacobi_anger_sin(tau, eps / 6.0);
    ChebyshevPolynomial pg = sign_poly(eps / 3.0, delta_gap);
    std::vector<cplx> prod = chebyshev_multiply(ps.coeffs, pg.coeffs);
    std::size_t n = std::max(pc.coeffs.size(), prod.size());
    ChebyshevPolynomial out;
    out.coeffs.assign(n, cplx(0.0));
    for (std::size_t k = 0; k < pc.coeffs.size(); ++k) out.coeffs[k] += pc.coeffs[k];
    for (std::size_t k = 0; k < prod.size(); ++k) out.coeffs[k] += cplx(0.0, -1.0) * prod[k];
    enforce_unit_bound(out.coeffs);
    // odd x odd product is even, so the whole combination is even
    out.parity = Parity::even;
    out.domain_note = {{-1.0, -delta_gap / 2.0}, {delta_gap / 2.0, 1.0}};
    return out;
}

ApproximationReport measure_error(const ChebyshevPolynomial& p, const TargetFunction& target,
                                  const std::vector<Interval>& intervals, int grid_points,
                                  double epsilon_requested) {
    if (intervals.empty()) throw domain_error("measure_error: no intervals");
    if (grid_points < 2) throw domain_error("measure_error: need at least 2 grid points");
    double worst = 0.0;
    for (const Interval& iv : intervals) {
        if (!(iv.lo <= iv.hi) || iv.lo < -1.0 || iv.hi > 1.0)
            throw domain_error("measure_error: interval outside [-1,1] or empty");
        for (int i = 0; i < grid_points; ++i) {
            double x = iv.lo + (iv.hi - iv.lo) * double(i) / double(grid_points - 1);
            worst = std::max(worst, std::abs(p.eval(x) - target.eval(x)));
        }
    }
    ApproximationReport rep;
    rep.target_name = target.name();
    rep.epsilon_requested = epsilon_requested;
    rep.epsilon_measured = worst;
    rep.degree = p.degree();
    return rep;
}

// ------------------------------- serialization ------------------------------

std::string to_text(const ChebyshevPolynomial& p) {
    const char* par = p.parity == Parity::even ? "even" : (p.parity == Parity::odd ? "odd" : "mixed");
    std::string out = "chebyshev parity=" + std::string(par) + " degree=" + std::to_string(p.degree()) + "\n";
    char line[128];
    for (std::size_t k = 0; k < p.coeffs.size(); ++k) {
        if (p.coeffs[k] == cplx(0.0)) continue;
        std::snprintf(line, sizeof line, "%zu %.17g %.17g\n", k, p.coeffs[k].real(),
                      p.coeffs[k].imag());
        out += line;
    }
    return out;
}

ChebyshevPolynomial polynomial_from_text(const std::string& text) {
    std::istringstream in(text);
    std::string word, par_field, deg_field;
    if (!(in >> word) || word != "chebyshev")
        throw domain_error("polynomial_from_text: missing chebyshev header");
    if (!(in >> par_field >> deg_field))
        throw domain_error("polynomial_from_text: malformed header");
    auto value_of = [](const std::string& field, const char* key) {
        std::string prefix = std::string(key) + "=";
        if (field.rfind(prefix, 0) != 0)
            throw domain_error("polynomial_from_text: expected field " + prefix);
        return field.substr(prefix.size());
    };
    std::string par = value_of(par_field, "parity");
    int degree = std::stoi(value_of(deg_field, "degree"));
    ChebyshevPolynomial p;
    p.coeffs.assign(degree + 1, cplx(0.0));
    p.parity = par == "even" ? Parity::even : (par == "odd" ? Parity::odd : Parity::mixed);
    std::size_t k;
    double re, im;
    while (in >> k >> re >> im) {
        if (k >= p.coeffs.size()) throw domain_error("polynomial_from_text: index beyond degree");
        p.coeffs[k] = cplx(re, im);
    }
    return p;
}

} // namespace qspsim::poly
