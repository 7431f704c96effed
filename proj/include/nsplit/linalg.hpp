#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace nsplit {

using Cplx = std::complex<double>;
using CVector = std::vector<Cplx>;

inline double norm2(const CVector& v) {
    double s = 0.0;
    for (const Cplx& z : v) s += std::norm(z);
    return std::sqrt(s);
}

inline double max_abs_diff(const CVector& a, const CVector& b) {
    if (a.size() != b.size()) throw std::invalid_argument("max_abs_diff: size mismatch");
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

inline bool all_finite(const CVector& v) {
    for (const Cplx& z : v)
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    return true;
}

inline CVector conjugated(const CVector& v) {
    CVector w(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) w[i] = std::conj(v[i]);
    return w;
}

/// Dense square complex matrix, row-major. Sized for desk-scale problems
/// (the oracle works with d <= 8), so no blocking or aliasing tricks.
class ComplexMatrix {
  public:
    ComplexMatrix() = default;
    explicit ComplexMatrix(int n) : n_(n), a_(static_cast<std::size_t>(n) * n, Cplx{0.0, 0.0}) {
        if (n < 1) throw std::invalid_argument("ComplexMatrix: dimension must be >= 1");
    }

    static ComplexMatrix identity(int n) {
        ComplexMatrix m(n);
        for (int i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    int dim() const { return n_; }

    Cplx& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * n_ + j]; }
    const Cplx& operator()(int i, int j) const { return a_[static_cast<std::size_t>(i) * n_ + j]; }

    ComplexMatrix& operator+=(const ComplexMatrix& rhs) {
        check_same_dim(rhs);
        for (std::size_t k = 0; k < a_.size(); ++k) a_[k] += rhs.a_[k];
        return *this;
    }
    ComplexMatrix& operator-=(const ComplexMatrix& rhs) {
        check_same_dim(rhs);
        for (std::size_t k = 0; k < a_.size(); ++k) a_[k] -= rhs.a_[k];
        return *this;
    }
    ComplexMatrix& operator*=(Cplx s) {
        for (Cplx& z : a_) z *= s;
        return *this;
    }

    friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
    friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
    friend ComplexMatrix operator*(Cplx s, ComplexMatrix a) { return a *= s; }

    friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
        a.check_same_dim(b);
        const int n = a.n_;
        ComplexMatrix c(n);
        for (int i = 0; i < n; ++i)
            for (int k = 0; k < n; ++k) {
                const Cplx aik = a(i, k);
                if (aik == Cplx{0.0, 0.0}) continue;
                for (int j = 0; j < n; ++j) c(i, j) += aik * b(k, j);
            }
        return c;
    }

    CVector apply(const CVector& y) const {
        if (static_cast<int>(y.size()) != n_) throw std::invalid_argument("ComplexMatrix::apply: size mismatch");
        CVector out(y.size(), Cplx{0.0, 0.0});
        for (int i = 0; i < n_; ++i) {
            Cplx s{0.0, 0.0};
            for (int j = 0; j < n_; ++j) s += (*this)(i, j) * y[j];
            out[static_cast<std::size_t>(i)] = s;
        }
        return out;
    }

    double frobenius_norm() const {
        double s = 0.0;
        for (const Cplx& z : a_) s += std::norm(z);
        return std::sqrt(s);
    }

  private:
    void check_same_dim(const ComplexMatrix& rhs) const {
        if (n_ != rhs.n_) throw std::invalid_argument("ComplexMatrix: dimension mismatch");
    }

    int n_ = 0;
    std::vector<Cplx> a_;
};

inline ComplexMatrix commutator(const ComplexMatrix& x, const ComplexMatrix& y) {
    return x * y - y * x;
}

inline double frobenius_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
    return (a - b).frobenius_norm();
}

/// exp(A) via scaling-and-squaring with a truncated Taylor series.
inline ComplexMatrix expm(const ComplexMatrix& a) {
    const int n = a.dim();
    const double norm = a.frobenius_norm();
    int squarings = 0;
    if (norm > 0.25) squarings = static_cast<int>(std::ceil(std::log2(norm / 0.25)));
    const double scale = std::ldexp(1.0, -squarings);

    ComplexMatrix b = Cplx{scale, 0.0} * a;
    ComplexMatrix sum = ComplexMatrix::identity(n);
    ComplexMatrix term = ComplexMatrix::identity(n);
    for (int k = 1; k <= 40; ++k) {
        term = Cplx{1.0 / k, 0.0} * (term * b);
        sum += term;
        if (term.frobenius_norm() <= 1e-18 * sum.frobenius_norm()) break;
    }
    for (int k = 0; k < squarings; ++k) sum = sum * sum;
    return sum;
}

/// Solve A x = b by Gaussian elimination with partial pivoting.
inline CVector solve_linear(ComplexMatrix a, CVector b) {
    const int n = a.dim();
    if (static_cast<int>(b.size()) != n) throw std::invalid_argument("solve_linear: size mismatch");
    for (int col = 0; col < n; ++col) {
        int pivot = col;
        for (int r = col + 1; r < n; ++r)
            if (std::abs(a(r, col)) > std::abs(a(pivot, col))) pivot = r;
        if (std::abs(a(pivot, col)) < 1e-300) throw std::runtime_error("solve_linear: singular matrix");
        if (pivot != col) {
            for (int j = 0; j < n; ++j) std::swap(a(col, j), a(pivot, j));
            std::swap(b[static_cast<std::size_t>(col)], b[static_cast<std::size_t>(pivot)]);
        }
        for (int r = col + 1; r < n; ++r) {
            const Cplx f = a(r, col) / a(col, col);
            if (f == Cplx{0.0, 0.0}) continue;
            a(r, col) = 0.0;
            for (int j = col + 1; j < n; ++j) a(r, j) -= f * a(col, j);
            b[static_cast<std::size_t>(r)] -= f * b[static_cast<std::size_t>(col)];
        }
    }
    CVector x(static_cast<std::size_t>(n));
    for (int i = n - 1; i >= 0; --i) {
        Cplx s = b[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < n; ++j) s -= a(i, j) * x[static_cast<std::size_t>(j)];
        x[static_cast<std::size_t>(i)] = s / a(i, i);
    }
    return x;
}

}  // namespace nsplit
