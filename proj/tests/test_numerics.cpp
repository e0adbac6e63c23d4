#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "qspsim/numerics.hpp"

using namespace qspsim;

namespace {

// independent oracles, kept separate from the library paths they check

double lambert_w_bisect(double x) {
    double lo = 0.0, hi = 1.0;
    while (hi * std::exp(hi) < x) hi *= 2.0;
    for (int i = 0; i < 200; ++i) {
        double mid = 0.5 * (lo + hi);
        (mid * std::exp(mid) < x ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

double bessel_j_series(int n, double x) {
    // J_n(x) = sum_m (-1)^m (x/2)^{n+2m} / (m! (n+m)!); accurate for small x
    double half = 0.5 * x;
    double term = 1.0;
    for (int k = 1; k <= n; ++k) term *= half / k;
    double sum = term;
    for (int m = 1; m < 200; ++m) {
        term *= -half * half / (double(m) * double(n + m));
        sum += term;
        if (std::abs(term) < 1e-18 * std::abs(sum) + 1e-300) break;
    }
    return sum;
}

double bessel_j_integral(int n, double x) {
    // J_n(x) = (1/pi) int_0^pi cos(n t - x sin t) dt; periodic-smooth, so the
    // trapezoid rule converges to machine precision
    const int points = 4000;
    double sum = 0.5 * (std::cos(0.0) + std::cos(n * M_PI));
    for (int i = 1; i < points; ++i) {
        double t = M_PI * double(i) / points;
        sum += std::cos(n * t - x * std::sin(t));
    }
    return sum / points;
}

double bessel_i_series(int n, double x) {
    double half = 0.5 * x;
    double term = 1.0;
    for (int k = 1; k <= n; ++k) term *= half / k;
    double sum = term;
    for (int m = 1; m < 300; ++m) {
        term *= half * half / (double(m) * double(n + m));
        sum += term;
        if (term < 1e-18 * sum) break;
    }
    return sum;
}

double erf_taylor(double x) {
    double sum = 0.0, term = x;
    for (int n = 0; n < 200; ++n) {
        sum += term / (2.0 * n + 1.0);
        term *= -x * x / double(n + 1);
        if (std::abs(term) < 1e-20) break;
    }
    return 2.0 / std::sqrt(M_PI) * sum;
}

ComplexMatrix random_hermitian(std::size_t n, std::uint32_t seed) {
    std::mt19937 rng(seed);
    auto u = [&] { return (double(rng()) / 4294967296.0) * 2.0 - 1.0; };
    ComplexMatrix m(n, n);
    for (std::size_t r = 0; r < n; ++r) {
        m(r, r) = u();
        for (std::size_t c = r + 1; c < n; ++c) {
            m(r, c) = cplx(u(), u());
            m(c, r) = std::conj(m(r, c));
        }
    }
    return m;
}

ComplexMatrix heisenberg_2spin() {
    // h1 = h2 = 0.5, gx = 1, gy = gz = 0
    ComplexMatrix h(4, 4);
    h(0, 0) = 1.0;
    h(3, 3) = -1.0;
    h(0, 3) = h(3, 0) = 1.0;
    h(1, 2) = h(2, 1) = 1.0;
    return h;
}

} // namespace

TEST_CASE("lambert_w basics and defining identity") {
    CHECK(lambert_w(0.0) == 0.0);
    CHECK(lambert_w(std::exp(1.0)) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(lambert_w(1.0) == doctest::Approx(lambert_w_bisect(1.0)).epsilon(1e-13));
    CHECK(std::abs(lambert_w(1.0) - 0.5671432904) < 1e-9);
    for (double lg = -6.0; lg <= 6.0; lg += 0.25) {
        double x = std::pow(10.0, lg);
        double w = lambert_w(x);
        CHECK(std::abs(w * std::exp(w) - x) <= 1e-12 * std::max(1.0, x));
    }
    CHECK_THROWS_AS(lambert_w(-0.1), domain_error);
}

TEST_CASE("bessel_j values against power-series oracle") {
    CHECK(bessel_j(0, 0.0) == 1.0);
    CHECK(bessel_j(1, 0.0) == 0.0);
    CHECK(std::abs(bessel_j(0, 1.0) - 0.7651976866) < 1e-9);
    for (int n : {0, 1, 2, 5, 11, 20}) {
        for (double x : {0.3, 1.0, 4.5, 7.0}) {
            CHECK(std::abs(bessel_j(n, x) - bessel_j_series(n, x)) < 1e-13);
        }
        for (double x : {9.0, 17.0, 26.25, 55.0, 100.0}) {
            CHECK(std::abs(bessel_j(n, x) - bessel_j_integral(n, x)) < 1e-13);
        }
    }
    CHECK(std::abs(bessel_j(180, 100.0) - bessel_j_integral(180, 100.0)) < 1e-13);
    // negative argument parity
    CHECK(bessel_j(3, -2.5) == doctest::Approx(-bessel_j(3, 2.5)));
}

TEST_CASE("bessel_j three-term recurrence") {
    for (double x : {0.5, 2.0, 7.5, 21.0, 50.0}) {
        for (int n = 1; n <= 30; ++n) {
            double lhs = bessel_j(n - 1, x) + bessel_j(n + 1, x);
            double rhs = 2.0 * n / x * bessel_j(n, x);
            CHECK(std::abs(lhs - rhs) < 1e-10);
        }
    }
}

TEST_CASE("bessel_i values") {
    CHECK(bessel_i(0, 0.0) == 1.0);
    CHECK(bessel_i(3, 0.0) == 0.0);
    CHECK(std::abs(bessel_i(0, 1.0) - 1.2660658778) < 1e-9);
    for (int n : {0, 1, 4, 9}) {
        for (double x : {0.5, 3.0, 12.0, 40.0}) {
            double ref = bessel_i_series(n, x);
            CHECK(std::abs(bessel_i(n, x) - ref) < 1e-12 * ref);
        }
    }
    // scaled array consistent at large argument
    auto scaled = bessel_i_scaled_array(4, 180.0);
    CHECK(scaled[0] > 0.0);
    CHECK(scaled[1] < scaled[0]);
}

TEST_CASE("erf against Taylor oracle") {
    CHECK(qspsim::erf(0.0) == 0.0);
    CHECK(qspsim::erf(7.0) == 1.0);
    CHECK(qspsim::erf(-7.0) == -1.0);
    CHECK(std::abs(qspsim::erf(1.0) - 0.8427007929) < 1e-9);
    // the alternating Taylor oracle is only accurate for small arguments
    for (double x : {0.1, 0.8, 1.7, 2.5, 2.9}) {
        CHECK(std::abs(qspsim::erf(x) - erf_taylor(x)) < 1e-12);
        CHECK(qspsim::erf(-x) == -qspsim::erf(x));
    }
    CHECK(std::abs(qspsim::erf(3.0) - 0.99997790950300141456) < 1e-13);
    CHECK(std::abs(qspsim::erf(4.0) - 0.99999998458274209972) < 1e-13);
    CHECK(std::abs(qspsim::erf(5.0) - 0.99999999999846254020) < 1e-13);
    CHECK(qspsim::erf(-4.0) == -qspsim::erf(4.0));
}

TEST_CASE("chebyshev_eval Clenshaw vs trigonometric definition") {
    CHECK(chebyshev_eval({cplx(0.0), cplx(1.0)}, 0.3) == cplx(0.3));
    CHECK(chebyshev_eval({cplx(1.0)}, -0.77) == cplx(1.0));
    std::vector<cplx> t5(6, cplx(0.0));
    t5[5] = 1.0;
    CHECK(std::abs(chebyshev_eval(t5, 0.5) - std::cos(5.0 * std::acos(0.5))) < 1e-14);
    CHECK(std::abs(chebyshev_eval(t5, 0.5).real() - 0.5) < 1e-12);
    CHECK_THROWS_AS(chebyshev_eval(t5, 1.0 + 1e-9), domain_error);

    std::mt19937 rng(41);
    auto u = [&] { return double(rng()) / 4294967296.0 * 2.0 - 1.0; };
    for (int trial = 0; trial < 4; ++trial) {
        int degree = 20 + 60 * trial;
        std::vector<cplx> c(degree + 1);
        for (auto& v : c) v = cplx(u(), u());
        for (int i = 0; i <= 100; ++i) {
            double x = -1.0 + 2.0 * i / 100.0;
            cplx direct = 0.0;
            double theta = std::acos(x);
            for (int k = 0; k <= degree; ++k) direct += c[k] * std::cos(k * theta);
            CHECK(std::abs(chebyshev_eval(c, x) - direct) < 1e-12 * (1.0 + std::abs(direct)));
        }
    }
}

TEST_CASE("chebyshev_multiply product rule") {
    std::vector<cplx> x1 = {cplx(0.0), cplx(1.0)};
    auto sq = chebyshev_multiply(x1, x1);
    REQUIRE(sq.size() == 3);
    CHECK(sq[0] == cplx(0.5));
    CHECK(sq[1] == cplx(0.0));
    CHECK(sq[2] == cplx(0.5));

    std::vector<cplx> t0 = {cplx(1.0)};
    std::vector<cplx> any = {cplx(0.2), cplx(-0.4), cplx(0.0), cplx(1.5)};
    auto same = chebyshev_multiply(t0, any);
    for (std::size_t k = 0; k < any.size(); ++k) CHECK(same[k] == any[k]);

    std::vector<cplx> t2 = {cplx(0.0), cplx(0.0), cplx(1.0)};
    auto t2t1 = chebyshev_multiply(t2, x1);
    REQUIRE(t2t1.size() == 4);
    CHECK(t2t1[1] == cplx(0.5));
    CHECK(t2t1[3] == cplx(0.5));

    std::mt19937 rng(7);
    auto u = [&] { return double(rng()) / 4294967296.0 * 2.0 - 1.0; };
    std::vector<cplx> a(9), b(14);
    for (auto& v : a) v = cplx(u(), u());
    for (auto& v : b) v = cplx(u(), u());
    auto prod = chebyshev_multiply(a, b);
    for (int i = 0; i <= 100; ++i) {
        double x = -1.0 + 2.0 * i / 100.0;
        cplx want = chebyshev_eval(a, x) * chebyshev_eval(b, x);
        CHECK(std::abs(chebyshev_eval(prod, x) - want) < 1e-11);
    }
}

TEST_CASE("hermitian_eig on small exact cases") {
    ComplexMatrix d(3, 3);
    d(0, 0) = 3.0;
    d(1, 1) = 1.0;
    d(2, 2) = 2.0;
    EigResult e = hermitian_eig(d);
    CHECK(e.values[0] == doctest::Approx(1.0));
    CHECK(e.values[1] == doctest::Approx(2.0));
    CHECK(e.values[2] == doctest::Approx(3.0));

    ComplexMatrix x(2, 2);
    x(0, 1) = 1.0;
    x(1, 0) = 1.0;
    EigResult ex = hermitian_eig(x);
    CHECK(ex.values[0] == doctest::Approx(-1.0));
    CHECK(ex.values[1] == doctest::Approx(1.0));

    EigResult eh = hermitian_eig(heisenberg_2spin());
    CHECK(eh.values[0] == doctest::Approx(-std::sqrt(2.0)).epsilon(1e-12));
    CHECK(eh.values[1] == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(eh.values[2] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(eh.values[3] == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("hermitian_eig residual and determinism on random matrices") {
    for (std::uint32_t seed : {11u, 12u, 13u}) {
        for (std::size_t n : {2ul, 5ul, 16ul}) {
            ComplexMatrix m = random_hermitian(n, seed + 100 * n);
            EigResult e = hermitian_eig(m);
            CHECK(e.vectors.is_unitary(1e-10));
            ComplexMatrix lam(n, n);
            for (std::size_t k = 0; k < n; ++k) lam(k, k) = e.values[k];
            double resid = (m * e.vectors - e.vectors * lam).max_abs();
            CHECK(resid <= 1e-10 * std::max(1.0, m.max_abs()));
            for (std::size_t k = 0; k + 1 < n; ++k) CHECK(e.values[k] <= e.values[k + 1]);
            // bitwise determinism
            EigResult e2 = hermitian_eig(m);
            CHECK(e2.values == e.values);
            CHECK(e2.vectors.data() == e.vectors.data());
        }
    }
    ComplexMatrix bad(2, 2);
    bad(0, 1) = 1.0;  // not hermitian
    CHECK_THROWS_AS(hermitian_eig(bad), numeric_error);
}

TEST_CASE("matrix_exp_hermitian basics, group property, two-level closed form") {
    ComplexMatrix h = random_hermitian(4, 3);
    ComplexMatrix u0 = matrix_exp_hermitian(h, 0.0);
    CHECK((u0 - ComplexMatrix::identity(4)).max_abs() < 1e-12);

    ComplexMatrix z(2, 2);
    z(0, 0) = 1.0;
    z(1, 1) = -1.0;
    ComplexMatrix uz = matrix_exp_hermitian(z, M_PI);
    CHECK((uz + ComplexMatrix::identity(2)).max_abs() < 1e-12);

    ComplexMatrix u1 = matrix_exp_hermitian(h, 0.7);
    ComplexMatrix u2 = matrix_exp_hermitian(h, 1.9);
    ComplexMatrix u12 = matrix_exp_hermitian(h, 2.6);
    CHECK((u1 * u2 - u12).max_abs() < 1e-9);
    CHECK(u1.is_unitary(1e-10));

    ComplexMatrix hh = heisenberg_2spin();
    for (double t : {0.4, 1.1, 2.9}) {
        ComplexMatrix u = matrix_exp_hermitian(hh, t);
        double prob = std::norm(u(3, 0));
        CHECK(prob == doctest::Approx(0.5 * std::pow(std::sin(std::sqrt(2.0) * t), 2))
                          .epsilon(1e-10));
    }
}

TEST_CASE("hermitian_sqrt_complement") {
    ComplexMatrix zero2 = ComplexMatrix::zero(2);
    CHECK((hermitian_sqrt_complement(zero2, 1.0) - ComplexMatrix::identity(2)).max_abs() < 1e-12);

    ComplexMatrix z(2, 2);
    z(0, 0) = 1.0;
    z(1, 1) = -1.0;
    CHECK(hermitian_sqrt_complement(z, 1.0).max_abs() < 1e-12);
    ComplexMatrix half = hermitian_sqrt_complement(z, 2.0);
    CHECK((half - std::sqrt(3.0) / 2.0 * ComplexMatrix::identity(2)).max_abs() < 1e-12);

    ComplexMatrix h = random_hermitian(8, 77);
    double nrm = spectral_norm(h);
    ComplexMatrix r = hermitian_sqrt_complement(h, nrm);  // alpha == ||H|| exactly
    ComplexMatrix resid = r * r + (1.0 / (nrm * nrm)) * (h * h) - ComplexMatrix::identity(8);
    CHECK(resid.max_abs() < 1e-10);
    CHECK_THROWS_AS(hermitian_sqrt_complement(h, 0.5 * nrm), domain_error);
}

TEST_CASE("spectral norm matches known values") {
    ComplexMatrix z(2, 2);
    z(0, 0) = 3.0;
    z(1, 1) = -4.0;
    CHECK(spectral_norm(z) == doctest::Approx(4.0).epsilon(1e-12));
    ComplexMatrix h = random_hermitian(5, 9);
    EigResult e = hermitian_eig(h);
    double want = std::max(std::abs(e.values.front()), std::abs(e.values.back()));
    CHECK(spectral_norm(h) == doctest::Approx(want).epsilon(1e-10));
}

TEST_CASE("statevector helpers") {
    Statevector s = Statevector::basis_state(3, 5);
    CHECK(s.dim() == 8);
    CHECK(s.norm() == doctest::Approx(1.0));
    CHECK_THROWS_AS(Statevector::basis_state(2, 4), domain_error);
}
