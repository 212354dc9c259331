#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <utility>
#include <vector>

#include "maxrep/rational.hpp"

namespace maxrep {

/// Scalar glue shared by the two backends (exact rationals, doubles) and by
/// complex doubles. Pivot choice compares magnitudes; zero tests are exact
/// for rationals and tolerance-based for floats.
template <class T>
struct ScalarOps;

template <>
struct ScalarOps<double> {
    static bool is_zero(double x, double eps) { return std::abs(x) <= eps; }
    static bool mag_less(double a, double b) { return std::abs(a) < std::abs(b); }
    static double mag(double x) { return std::abs(x); }
    static constexpr bool exact = false;
};

template <>
struct ScalarOps<std::complex<double>> {
    static bool is_zero(const std::complex<double>& x, double eps) { return std::abs(x) <= eps; }
    static bool mag_less(const std::complex<double>& a, const std::complex<double>& b) {
        return std::abs(a) < std::abs(b);
    }
    static double mag(const std::complex<double>& x) { return std::abs(x); }
    static constexpr bool exact = false;
};

template <>
struct ScalarOps<Rat> {
    static bool is_zero(const Rat& x, double) { return sgn(x) == 0; }
    static bool mag_less(const Rat& a, const Rat& b) { return abs(a) < abs(b); }
    static double mag(const Rat& x) { return std::abs(x.get_d()); }
    static constexpr bool exact = true;
};

/// Small dense row-major matrix. Everything in this project lives in
/// dimension <= 24, so the representation is deliberately plain.
template <class T>
class Mat {
public:
    Mat() = default;
    Mat(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols, T(0)) {
        if (rows < 0 || cols < 0) throw std::invalid_argument("negative matrix dimension");
    }
    Mat(int rows, int cols, std::initializer_list<T> entries) : Mat(rows, cols) {
        if (static_cast<int>(entries.size()) != rows * cols)
            throw std::invalid_argument("initializer size mismatch");
        std::copy(entries.begin(), entries.end(), a_.begin());
    }

    static Mat identity(int n) {
        Mat m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }
    static Mat zero(int rows, int cols) { return Mat(rows, cols); }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }

    T& operator()(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
    const T& operator()(int i, int j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }

    Mat operator+(const Mat& o) const {
        check_same_shape(o);
        Mat r(rows_, cols_);
        for (size_t k = 0; k < a_.size(); ++k) r.a_[k] = a_[k] + o.a_[k];
        return r;
    }
    Mat operator-(const Mat& o) const {
        check_same_shape(o);
        Mat r(rows_, cols_);
        for (size_t k = 0; k < a_.size(); ++k) r.a_[k] = a_[k] - o.a_[k];
        return r;
    }
    Mat operator-() const {
        Mat r(rows_, cols_);
        for (size_t k = 0; k < a_.size(); ++k) r.a_[k] = -a_[k];
        return r;
    }
    Mat operator*(const Mat& o) const {
        if (cols_ != o.rows_) throw std::invalid_argument("matrix product shape mismatch");
        Mat r(rows_, o.cols_);
        for (int i = 0; i < rows_; ++i)
            for (int k = 0; k < cols_; ++k) {
                const T& aik = (*this)(i, k);
                if (ScalarOps<T>::is_zero(aik, 0.0)) continue;
                for (int j = 0; j < o.cols_; ++j) r(i, j) += aik * o(k, j);
            }
        return r;
    }
    Mat operator*(const T& s) const {
        Mat r(rows_, cols_);
        for (size_t k = 0; k < a_.size(); ++k) r.a_[k] = a_[k] * s;
        return r;
    }
    friend Mat operator*(const T& s, const Mat& m) { return m * s; }

    bool operator==(const Mat& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_; }

    Mat transpose() const {
        Mat r(cols_, rows_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
        return r;
    }

    /// Largest entry magnitude, as a double (exact entries are converted;
    /// callers only threshold against it).
    double max_abs() const {
        double m = 0.0;
        for (const auto& x : a_) m = std::max(m, ScalarOps<T>::mag(x));
        return m;
    }

    double frobenius() const {
        double s = 0.0;
        for (const auto& x : a_) {
            double m = ScalarOps<T>::mag(x);
            s += m * m;
        }
        return std::sqrt(s);
    }

    Mat block(int i0, int j0, int rows, int cols) const {
        if (i0 < 0 || j0 < 0 || i0 + rows > rows_ || j0 + cols > cols_)
            throw std::invalid_argument("block out of range");
        Mat r(rows, cols);
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j) r(i, j) = (*this)(i0 + i, j0 + j);
        return r;
    }

    void set_block(int i0, int j0, const Mat& b) {
        if (i0 < 0 || j0 < 0 || i0 + b.rows_ > rows_ || j0 + b.cols_ > cols_)
            throw std::invalid_argument("block out of range");
        for (int i = 0; i < b.rows_; ++i)
            for (int j = 0; j < b.cols_; ++j) (*this)(i0 + i, j0 + j) = b(i, j);
    }

    Mat col(int j) const { return block(0, j, rows_, 1); }

private:
    void check_same_shape(const Mat& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_)
            throw std::invalid_argument("matrix shape mismatch");
    }

    int rows_ = 0;
    int cols_ = 0;
    std::vector<T> a_;
};

using MatD = Mat<double>;
using MatQ = Mat<Rat>;
using CMat = Mat<std::complex<double>>;

template <class T>
Mat<T> hcat(const Mat<T>& a, const Mat<T>& b) {
    if (a.rows() != b.rows()) throw std::invalid_argument("hcat row mismatch");
    Mat<T> r(a.rows(), a.cols() + b.cols());
    r.set_block(0, 0, a);
    r.set_block(0, a.cols(), b);
    return r;
}

template <class T>
Mat<T> vcat(const Mat<T>& a, const Mat<T>& b) {
    if (a.cols() != b.cols()) throw std::invalid_argument("vcat column mismatch");
    Mat<T> r(a.rows() + b.rows(), a.cols());
    r.set_block(0, 0, a);
    r.set_block(a.rows(), 0, b);
    return r;
}

/// Determinant by fraction-free-ish elimination with magnitude pivoting.
/// Exact over Rat; for floats accuracy is ample at these sizes.
template <class T>
T det(Mat<T> m) {
    if (!m.square()) throw std::invalid_argument("determinant of non-square matrix");
    const int n = m.rows();
    T result(1);
    for (int k = 0; k < n; ++k) {
        int piv = k;
        for (int i = k + 1; i < n; ++i)
            if (ScalarOps<T>::mag_less(m(piv, k), m(i, k))) piv = i;
        if (ScalarOps<T>::is_zero(m(piv, k), 0.0)) return T(0);
        if (piv != k) {
            for (int j = 0; j < n; ++j) std::swap(m(k, j), m(piv, j));
            result = -result;
        }
        result = result * m(k, k);
        for (int i = k + 1; i < n; ++i) {
            T f = m(i, k) / m(k, k);
            if (ScalarOps<T>::is_zero(f, 0.0)) continue;
            for (int j = k; j < n; ++j) m(i, j) -= f * m(k, j);
        }
    }
    return result;
}

/// Gauss-Jordan solve of A X = B. Throws on (numerically) singular A.
template <class T>
Mat<T> solve(Mat<T> a, Mat<T> b) {
    if (!a.square() || a.rows() != b.rows()) throw std::invalid_argument("solve shape mismatch");
    const int n = a.rows();
    const double scale = ScalarOps<T>::exact ? 0.0 : std::max(a.max_abs(), 1.0);
    for (int k = 0; k < n; ++k) {
        int piv = k;
        for (int i = k + 1; i < n; ++i)
            if (ScalarOps<T>::mag_less(a(piv, k), a(i, k))) piv = i;
        if (ScalarOps<T>::is_zero(a(piv, k), scale * 1e-14))
            throw std::runtime_error("singular matrix in solve");
        if (piv != k)
            for (int j = 0; j < n; ++j) {
                std::swap(a(k, j), a(piv, j));
            }
        if (piv != k)
            for (int j = 0; j < b.cols(); ++j) std::swap(b(k, j), b(piv, j));
        T inv_piv = T(1) / a(k, k);
        for (int j = 0; j < n; ++j) a(k, j) = a(k, j) * inv_piv;
        for (int j = 0; j < b.cols(); ++j) b(k, j) = b(k, j) * inv_piv;
        for (int i = 0; i < n; ++i) {
            if (i == k) continue;
            T f = a(i, k);
            if (ScalarOps<T>::is_zero(f, 0.0)) continue;
            for (int j = 0; j < n; ++j) a(i, j) -= f * a(k, j);
            for (int j = 0; j < b.cols(); ++j) b(i, j) -= f * b(k, j);
        }
    }
    return b;
}

template <class T>
Mat<T> inverse(const Mat<T>& a) {
    return solve(a, Mat<T>::identity(a.rows()));
}

/// Row-echelon rank. Float backend thresholds pivots against eps times the
/// running scale of the matrix; exact backend is literal.
template <class T>
int rank(Mat<T> m, double eps = 1e-10) {
    const int rows = m.rows(), cols = m.cols();
    const double scale = ScalarOps<T>::exact ? 0.0 : std::max(m.max_abs(), 1e-30);
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int piv = r;
        for (int i = r + 1; i < rows; ++i)
            if (ScalarOps<T>::mag_less(m(piv, c), m(i, c))) piv = i;
        if (ScalarOps<T>::is_zero(m(piv, c), eps * scale)) continue;
        if (piv != r)
            for (int j = 0; j < cols; ++j) std::swap(m(r, j), m(piv, j));
        for (int i = r + 1; i < rows; ++i) {
            T f = m(i, c) / m(r, c);
            for (int j = c; j < cols; ++j) m(i, j) -= f * m(r, j);
        }
        ++r;
    }
    return r;
}

inline MatD to_double(const MatQ& m) {
    MatD r(m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) r(i, j) = rat_to_double(m(i, j));
    return r;
}

inline CMat to_complex(const MatD& re) {
    CMat r(re.rows(), re.cols());
    for (int i = 0; i < re.rows(); ++i)
        for (int j = 0; j < re.cols(); ++j) r(i, j) = {re(i, j), 0.0};
    return r;
}

inline CMat to_complex(const MatD& re, const MatD& im) {
    if (re.rows() != im.rows() || re.cols() != im.cols())
        throw std::invalid_argument("re/im shape mismatch");
    CMat r(re.rows(), re.cols());
    for (int i = 0; i < re.rows(); ++i)
        for (int j = 0; j < re.cols(); ++j) r(i, j) = {re(i, j), im(i, j)};
    return r;
}

inline MatD real_part(const CMat& m) {
    MatD r(m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) r(i, j) = m(i, j).real();
    return r;
}

inline MatD imag_part(const CMat& m) {
    MatD r(m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) r(i, j) = m(i, j).imag();
    return r;
}

inline CMat adjoint(const CMat& m) {
    CMat r(m.cols(), m.rows());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) r(j, i) = std::conj(m(i, j));
    return r;
}

} // namespace maxrep
