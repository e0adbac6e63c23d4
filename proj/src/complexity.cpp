#include "qspsim/complexity.hpp"

#include <cmath>

#include "qspsim/numerics.hpp"
#include "qspsim/polyapprox.hpp"

namespace qspsim::cplx_count {

long long gamma_degree(double eps, double delta_gap) {
    if (!(eps > 0.0 && eps < 1.0)) throw domain_error("gamma_degree: eps outside (0,1)");
    if (!(delta_gap > 0.0 && delta_gap < 1.0))
        throw domain_error("gamma_degree: Delta outside (0,1)");
    const double e = std::exp(1.0);
    double w1 = lambert_w(8.0 / (M_PI * eps * eps));
    double w2 = lambert_w(512.0 / (e * e * M_PI) / (eps * eps));
    double branch1 = e / delta_gap * std::sqrt(w1 * w2);
    double branch2 =
        std::sqrt(2.0) *
        lambert_w(8.0 * std::sqrt(2.0) / (std::sqrt(M_PI) * delta_gap * eps) * std::sqrt(w1));
    return 2 * (long long)std::ceil(std::max(branch1, branch2)) + 1;
}

long long n_lcu(double eps, double t, double alpha) {
    const double e = std::exp(1.0);
    double inner_eps = 5.0 / 16.0 * eps;
    if (!(inner_eps > 0.0 && inner_eps < 1.0 / e))
        throw domain_error("n_lcu: (5/16) eps outside (0, 1/e)");
    double tau = e / 2.0 * alpha * std::abs(t);
    if (tau == 0.0) return 1;
    double r = poly::r_function(tau, 5.0 / 4.0 * (eps / 4.0));
    return 4 * (long long)std::floor(0.5 * r) + 1;
}

long long n_aa(double eps, double delta, double t, double alpha) {
    if (!(delta > 0.0 && delta < 1.0)) throw domain_error("n_aa: delta outside (0,1)");
    if (!(eps > 0.0 && eps < 1.0)) throw domain_error("n_aa: eps outside (0,1)");
    return gamma_degree(delta / 2.0, 1.0 - eps) * n_lcu(eps, t, alpha);
}

long long n_roaa(double eps, double t, double alpha) {
    return 3 * n_lcu(2.0 / 5.0 * eps, t, alpha);
}

long long n_os(double eps, double beta, double t, double alpha) {
    const double e = std::exp(1.0);
    if (!(beta > 0.0 && beta < 1.0)) throw domain_error("n_os: beta outside (0,1)");
    double inner_eps = 5.0 * eps / 24.0;
    if (!(inner_eps > 0.0 && inner_eps < 1.0 / e))
        throw domain_error("n_os: (5/24) eps outside (0, 1/e)");
    double tau = e * alpha * std::abs(t) / beta;
    long long trig = 0;
    if (tau > 0.0) trig = 2 * (long long)std::floor(0.5 * poly::r_function(tau, inner_eps));
    return trig + gamma_degree(eps / 3.0, 1.0 - beta) + 1;
}

long long n_os_trotter(double eps, double delta, double t, long long steps, double alpha,
                       double beta) {
    if (steps < 1) throw domain_error("n_os_trotter: L must be >= 1");
    if (!(delta > 0.0 && delta < 1.0)) throw domain_error("n_os_trotter: delta outside (0,1)");
    double L = double(steps);
    return steps * n_os(eps / L, beta, t / L, alpha);
}

std::vector<ComplexityReport> complexity_table(const SweepSpec& spec) {
    if (spec.t_values.empty() && spec.epsilon_values.empty())
        throw domain_error("complexity_table: empty sweep");
    std::vector<ComplexityReport> rows;
    auto emit = [&](const std::string& algorithm, double t, double eps, long long q) {
        ComplexityReport r;
        r.algorithm = algorithm;
        r.t = t;
        r.alpha = spec.alpha;
        r.beta = spec.beta;
        r.epsilon = eps;
        r.delta = 2.0 * eps;
        r.queries = q;
        rows.push_back(r);
    };
    const char* names[4] = {"lcu", "aa", "roaa", "os"};
    for (int a = 0; a < 4; ++a) {
        for (double t : spec.t_values) {
            double eps = spec.epsilon_fixed;
            long long q = 0;
            switch (a) {
                case 0: q = n_lcu(eps, t, spec.alpha); break;
                case 1: q = n_aa(eps, 2.0 * eps, t, spec.alpha); break;
                case 2: q = n_roaa(eps, t, spec.alpha); break;
                case 3: q = n_os(eps, spec.beta, t, spec.alpha); break;
            }
            emit(names[a], t, eps, q);
        }
        for (double eps : spec.epsilon_values) {
            double t = spec.t_fixed;
            long long q = 0;
            switch (a) {
                case 0: q = n_lcu(eps, t, spec.alpha); break;
                case 1: q = n_aa(eps, 2.0 * eps, t, spec.alpha); break;
                case 2: q = n_roaa(eps, t, spec.alpha); break;
                case 3: q = n_os(eps, spec.beta, t, spec.alpha); break;
            }
            emit(names[a], t, eps, q);
        }
    }
    return rows;
}

} // namespace qspsim::cplx_count
