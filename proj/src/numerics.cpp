#include "qspsim/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace qspsim {

// ------------------------------ ComplexMatrix -------------------------------

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix m(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) m(c, r) = std::conj((*this)(r, c));
    return m;
}

ComplexMatrix ComplexMatrix::transpose() const {
    ComplexMatrix m(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) m(c, r) = (*this)(r, c);
    return m;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& o) {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw domain_error("matrix shape mismatch in +=");
    for (std::size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& o) {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw domain_error("matrix shape mismatch in -=");
    for (std::size_t i = 0; i < a_.size(); ++i) a_[i] -= o.a_[i];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(cplx s) {
    for (auto& v : a_) v *= s;
    return *this;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols_ != b.rows_) throw domain_error("matrix shape mismatch in *");
    ComplexMatrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
        for (std::size_t k = 0; k < a.cols_; ++k) {
            const cplx aik = a(i, k);
            if (aik == cplx(0.0)) continue;
            const cplx* brow = &b.a_[k * b.cols_];
            cplx* crow = &c.a_[i * c.cols_];
            for (std::size_t j = 0; j < b.cols_; ++j) crow[j] += aik * brow[j];
        }
    }
    return c;
}

double ComplexMatrix::max_abs() const {
    double m = 0.0;
    for (const auto& v : a_) m = std::max(m, std::abs(v));
    return m;
}

double ComplexMatrix::frobenius_norm() const {
    double s = 0.0;
    for (const auto& v : a_) s += std::norm(v);
    return std::sqrt(s);
}

bool ComplexMatrix::is_hermitian(double tol) const {
    if (rows_ != cols_) return false;
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = r; c < cols_; ++c)
            if (std::abs((*this)(r, c) - std::conj((*this)(c, r))) > tol) return false;
    return true;
}

bool ComplexMatrix::is_unitary(double tol) const {
    if (rows_ != cols_) return false;
    ComplexMatrix p = adjoint() * (*this);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) {
            cplx want = (r == c) ? cplx(1.0) : cplx(0.0);
            if (std::abs(p(r, c) - want) > tol) return false;
        }
    return true;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix c(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t ra = 0; ra < a.rows(); ++ra)
        for (std::size_t ca = 0; ca < a.cols(); ++ca) {
            const cplx v = a(ra, ca);
            if (v == cplx(0.0)) continue;
            for (std::size_t rb = 0; rb < b.rows(); ++rb)
                for (std::size_t cb = 0; cb < b.cols(); ++cb)
                    c(ra * b.rows() + rb, ca * b.cols() + cb) = v * b(rb, cb);
        }
    return c;
}

double spectral_norm(const ComplexMatrix& m) {
    ComplexMatrix g = m.adjoint() * m;
    // g is Hermitian PSD up to round-off
    for (std::size_t r = 0; r < g.rows(); ++r)
        for (std::size_t c = r + 1; c < g.cols(); ++c) {
            cplx avg = 0.5 * (g(r, c) + std::conj(g(c, r)));
            g(r, c) = avg;
            g(c, r) = std::conj(avg);
        }
    for (std::size_t r = 0; r < g.rows(); ++r) g(r, r) = g(r, r).real();
    EigResult e = hermitian_eig(g);
    double top = e.values.empty() ? 0.0 : e.values.back();
    return std::sqrt(std::max(0.0, top));
}

// ------------------------------- Statevector --------------------------------

Statevector Statevector::basis_state(std::size_t qubits, std::size_t index) {
    Statevector s(qubits);
    if (index >= s.dim()) throw domain_error("basis state index out of range");
    s.amplitudes[index] = 1.0;
    return s;
}

double Statevector::norm() const {
    double s = 0.0;
    for (const auto& v : amplitudes) s += std::norm(v);
    return std::sqrt(s);
}

void Statevector::normalize() {
    double n = norm();
    if (n <= 0.0) throw numeric_error("cannot normalize zero statevector");
    for (auto& v : amplitudes) v /= n;
}

std::vector<cplx> apply_matrix(const ComplexMatrix& m, const std::vector<cplx>& x) {
    if (m.cols() != x.size()) throw domain_error("matrix/vector shape mismatch");
    std::vector<cplx> y(m.rows());
    for (std::size_t r = 0; r < m.rows(); ++r) {
        cplx s = 0.0;
        for (std::size_t c = 0; c < m.cols(); ++c) s += m(r, c) * x[c];
        y[r] = s;
    }
    return y;
}

// --------------------------- special functions ------------------------------

double lambert_w(double x) {
    if (x < 0.0) throw domain_error("lambert_w: negative argument");
    if (x == 0.0) return 0.0;
    double w;
    if (x < std::exp(1.0)) {
        w = x / (1.0 + x);  // decent seed on [0, e]
    } else {
        double lx = std::log(x);
        w = lx - std::log(lx);
    }
    for (int it = 0; it < 100; ++it) {
        double ew = std::exp(w);
        double f = w * ew - x;
        double fp = ew * (1.0 + w);
        double fpp = ew * (2.0 + w);
        double step = f / (fp - 0.5 * f * fpp / fp);
        w -= step;
        if (std::abs(w * std::exp(w) - x) <= 1e-14 * std::max(1.0, x)) break;
    }
    return w;
}

std::vector<double> bessel_j_array(int nmax, double x) {
    if (nmax < 0) throw domain_error("bessel_j_array: negative order");
    std::vector<double> out(nmax + 1, 0.0);
    double ax = std::abs(x);
    if (ax == 0.0) {
        out[0] = 1.0;
        return out;
    }
    // Miller backward recurrence, started far enough past the turning point
    // that the minimal solution is suppressed below 1e-20 relative.
    int base = std::max(nmax, int(std::ceil(ax)));
    int start = base + 8;
    while (double(start) * std::log(2.0 * double(start) / (std::exp(1.0) * ax)) < 48.0 ||
           start < base + 12)
        start += 4;
    if (start % 2 == 1) ++start;
    double jp = 0.0, jc = 1e-300;
    double sum = 0.0;  // J_0 + 2 sum_{k>=1} J_{2k}
    for (int k = start; k >= 1; --k) {
        double jm = (2.0 * k / ax) * jc - jp;
        jp = jc;
        jc = jm;
        if (k - 1 <= nmax) out[k - 1] = jc;
        if ((k - 1) % 2 == 0) sum += (k - 1 == 0) ? jc : 2.0 * jc;
        if (std::abs(jc) > 1e250) {
            jc *= 1e-250;
            jp *= 1e-250;
            sum *= 1e-250;
            for (auto& v : out) v *= 1e-250;
        }
    }
    for (auto& v : out) v /= sum;
    if (x < 0.0)
        for (int n = 1; n <= nmax; n += 2) out[n] = -out[n];
    return out;
}

double bessel_j(int n, double x) {
    if (n < 0) throw domain_error("bessel_j: negative order");
    return bessel_j_array(n, x)[n];
}

std::vector<double> bessel_i_scaled_array(int nmax, double x) {
    if (x < 0.0) throw domain_error("bessel_i: negative argument");
    if (nmax < 0) throw domain_error("bessel_i: negative order");
    std::vector<double> out(nmax + 1, 0.0);
    if (x == 0.0) {
        out[0] = 1.0;
        return out;
    }
    int start = std::max(nmax, int(std::ceil(x))) + 50 +
                int(std::ceil(3.0 * std::sqrt(std::max(double(nmax), x) + 1.0)));
    double ip = 0.0, ic = 1e-300;
    double sum = 0.0;  // e^{-x} (I_0 + 2 sum I_k) = 1
    for (int k = start; k >= 1; --k) {
        double im = ip + (2.0 * k / x) * ic;
        ip = ic;
        ic = im;
        if (k - 1 <= nmax) out[k - 1] = ic;
        sum += (k - 1 == 0) ? ic : 2.0 * ic;
        if (std::abs(ic) > 1e250) {
            ic *= 1e-250;
            ip *= 1e-250;
            sum *= 1e-250;
            for (auto& v : out) v *= 1e-250;
        }
    }
    for (auto& v : out) v /= sum;
    return out;
}

double bessel_i(int n, double x) {
    return bessel_i_scaled_array(n, x)[n] * std::exp(x);
}

double erf(double x) {
    double ax = std::abs(x);
    double sgn = (x < 0.0) ? -1.0 : 1.0;
    if (ax == 0.0) return 0.0;
    if (ax >= 6.0) return sgn;  // erfc(6) ~ 2e-17
    const double two_over_sqrt_pi = 1.1283791670955126;
    if (ax < 3.0) {
        // erf(x) = (2x/sqrt(pi)) e^{-x^2} sum (2x^2)^n / (1*3*...*(2n+1)),
        // all terms positive so no cancellation
        double x2 = ax * ax;
        double term = 1.0, s = 1.0;
        for (int n = 1; n < 200; ++n) {
            term *= 2.0 * x2 / (2.0 * n + 1.0);
            s += term;
            if (term < 1e-18 * s) break;
        }
        return sgn * two_over_sqrt_pi * ax * std::exp(-x2) * s;
    }
    // erfc(x) = e^{-x^2}/sqrt(pi) / (x + (1/2)/(x + 1/(x + (3/2)/(x + ...))))
    // evaluated with modified Lentz
    double x2 = ax * ax;
    double f = ax, c = ax, d = 0.0;
    for (int n = 1; n < 300; ++n) {
        double an = 0.5 * n;
        d = ax + an * d;
        if (d == 0.0) d = 1e-300;
        c = ax + an / c;
        if (c == 0.0) c = 1e-300;
        d = 1.0 / d;
        double delta = c * d;
        f *= delta;
        if (std::abs(delta - 1.0) < 1e-16) break;
    }
    double erfc = std::exp(-x2) / std::sqrt(M_PI) / f;
    return sgn * (1.0 - erfc);
}

// ------------------------------- Chebyshev ----------------------------------

cplx chebyshev_eval(const std::vector<cplx>& coeffs, double x) {
    if (std::abs(x) > 1.0) throw domain_error("chebyshev_eval: |x| > 1");
    if (coeffs.empty()) return 0.0;
    cplx b1 = 0.0, b2 = 0.0;
    for (std::size_t k = coeffs.size(); k-- > 1;) {
        cplx b0 = 2.0 * x * b1 - b2 + coeffs[k];
        b2 = b1;
        b1 = b0;
    }
    return x * b1 - b2 + coeffs[0];
}

std::vector<cplx> chebyshev_multiply(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    if (a.empty() || b.empty()) return {};
    std::vector<cplx> out(a.size() + b.size() - 1, cplx(0.0));
    for (std::size_t m = 0; m < a.size(); ++m) {
        if (a[m] == cplx(0.0)) continue;
        for (std::size_t n = 0; n < b.size(); ++n) {
            if (b[n] == cplx(0.0)) continue;
            cplx half = 0.5 * a[m] * b[n];
            out[m + n] += half;
            out[(m > n) ? (m - n) : (n - m)] += half;
        }
    }
    return out;
}

// ---------------------------- eigendecomposition ----------------------------

EigResult hermitian_eig(const ComplexMatrix& m) {
    const std::size_t n = m.rows();
    if (n != m.cols()) throw domain_error("hermitian_eig: matrix not square");
    if (!m.is_hermitian(1e-10 * std::max(1.0, m.max_abs())))
        throw numeric_error("hermitian_eig: matrix not hermitian within tolerance");

    ComplexMatrix a = m;
    // enforce exact hermiticity so the sweep sees a symmetric problem
    for (std::size_t r = 0; r < n; ++r) {
        a(r, r) = a(r, r).real();
        for (std::size_t c = r + 1; c < n; ++c) {
            cplx avg = 0.5 * (a(r, c) + std::conj(a(c, r)));
            a(r, c) = avg;
            a(c, r) = std::conj(avg);
        }
    }
    ComplexMatrix v = ComplexMatrix::identity(n);

    double scale = std::max(a.max_abs(), 1e-300);
    const double tol = 1e-15 * scale;
    for (int sweep = 0; sweep < 60; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) off = std::max(off, std::abs(a(p, q)));
        if (off <= tol) break;
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                cplx apq = a(p, q);
                double mag = std::abs(apq);
                if (mag <= tol * 1e-2) continue;
                double app = a(p, p).real(), aqq = a(q, q).real();
                cplx phase = apq / mag;
                double tau = (aqq - app) / (2.0 * mag);
                double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                double c = 1.0 / std::sqrt(1.0 + t * t);
                double s = t * c;
                // G: identity except G(p,p)=c, G(p,q)=s*phase, G(q,p)=-s*conj(phase), G(q,q)=c
                for (std::size_t r = 0; r < n; ++r) {  // A <- G^dag A G, columns p and q
                    cplx arp = a(r, p), arq = a(r, q);
                    a(r, p) = c * arp - s * std::conj(phase) * arq;
                    a(r, q) = s * phase * arp + c * arq;
                }
                for (std::size_t r = 0; r < n; ++r) {  // rows p and q
                    cplx apr = a(p, r), aqr = a(q, r);
                    a(p, r) = c * apr - s * phase * aqr;
                    a(q, r) = s * std::conj(phase) * apr + c * aqr;
                }
                for (std::size_t r = 0; r < n; ++r) {  // accumulate V <- V G
                    cplx vrp = v(r, p), vrq = v(r, q);
                    v(r, p) = c * vrp - s * std::conj(phase) * vrq;
                    v(r, q) = s * phase * vrp + c * vrq;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                a(p, p) = a(p, p).real();
                a(q, q) = a(q, q).real();
            }
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
        return a(i, i).real() < a(j, j).real();
    });

    EigResult out;
    out.values.resize(n);
    out.vectors = ComplexMatrix(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        out.values[k] = a(order[k], order[k]).real();
        for (std::size_t r = 0; r < n; ++r) out.vectors(r, k) = v(r, order[k]);
    }
    return out;
}

ComplexMatrix matrix_exp_hermitian(const ComplexMatrix& h, double t) {
    EigResult e = hermitian_eig(h);
    const std::size_t n = h.rows();
    ComplexMatrix out(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        cplx ph = std::exp(cplx(0.0, -e.values[k] * t));
        for (std::size_t r = 0; r < n; ++r) {
            cplx vk = ph * e.vectors(r, k);
            for (std::size_t c = 0; c < n; ++c) out(r, c) += vk * std::conj(e.vectors(c, k));
        }
    }
    return out;
}

ComplexMatrix hermitian_sqrt_complement(const ComplexMatrix& h, double alpha) {
    if (alpha <= 0.0) throw domain_error("hermitian_sqrt_complement: alpha must be positive");
    EigResult e = hermitian_eig(h);
    const std::size_t n = h.rows();
    std::vector<double> roots(n);
    for (std::size_t k = 0; k < n; ++k) {
        double lam = e.values[k] / alpha;
        double val = 1.0 - lam * lam;
        if (val < -1e-12)
            throw domain_error("hermitian_sqrt_complement: alpha below spectral norm");
        roots[k] = std::sqrt(std::max(0.0, val));
    }
    ComplexMatrix out(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t r = 0; r < n; ++r) {
            cplx vk = roots[k] * e.vectors(r, k);
            for (std::size_t c = 0; c < n; ++c) out(r, c) += vk * std::conj(e.vectors(c, k));
        }
    }
    // symmetrize round-off
    for (std::size_t r = 0; r < n; ++r) {
        out(r, r) = out(r, r).real();
        for (std::size_t c = r + 1; c < n; ++c) {
            cplx avg = 0.5 * (out(r, c) + std::conj(out(c, r)));
            out(r, c) = avg;
            out(c, r) = std::conj(avg);
        }
    }
    return out;
}

} // namespace qspsim
