#pragma once

// Shared infrastructure: error types, small dense matrices over double /
// complex<double>, deterministic pairwise reduction, and a static-chunk
// parallel map.  Everything at desk scale (matrices up to ~20x20), so the
// containers are plain std::vector with no view machinery.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace hypoisson {

using cplx = std::complex<double>;

inline constexpr double pi = 3.14159265358979323846264338327950288;

// ---------------------------------------------------------------------------
// Error taxonomy.  Numerical failure modes are surfaced as typed exceptions,
// never as NaN.
// ---------------------------------------------------------------------------

/// Argument hit a pole of a meromorphic function (e.g. Gamma at -k).
class pole_error : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// The requested accuracy cannot be reached by the configured method.
class accuracy_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A parameter lies outside the convergence region of an integral.
class divergence_error : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A caller-asserted contract (e.g. right-M-invariance) failed a spot check.
class contract_error : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

// ---------------------------------------------------------------------------
// Combinatorics
// ---------------------------------------------------------------------------

inline long binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    k = std::min(k, n - k);
    long r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

// ---------------------------------------------------------------------------
// Vectors
// ---------------------------------------------------------------------------

using RVec = std::vector<double>;
using CVec = std::vector<cplx>;

inline double dot(const RVec& a, const RVec& b) {
    double s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

/// Hermitian dot product, conjugate-linear in the second slot.
inline cplx hdot(const CVec& a, const CVec& b) {
    cplx s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * std::conj(b[i]);
    return s;
}

inline double norm2(const RVec& a) { return std::sqrt(dot(a, a)); }

inline double norm2(const CVec& a) {
    double s = 0;
    for (const auto& x : a) s += std::norm(x);
    return std::sqrt(s);
}

inline CVec& operator+=(CVec& a, const CVec& b) {
    for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
    return a;
}

inline CVec operator+(CVec a, const CVec& b) { a += b; return a; }

inline CVec operator*(cplx s, CVec a) {
    for (auto& x : a) x *= s;
    return a;
}

inline CVec operator*(double s, CVec a) {
    for (auto& x : a) x *= s;
    return a;
}

inline CVec operator-(const CVec& a, const CVec& b) {
    CVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

inline CVec to_complex(const RVec& a) {
    CVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
    return r;
}

// ---------------------------------------------------------------------------
// Dense matrices
// ---------------------------------------------------------------------------

template <class T>
class Mat {
public:
    Mat() = default;
    Mat(int rows, int cols, T fill = T{})
        : rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows) * cols, fill) {}

    static Mat identity(int n) {
        Mat m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = T{1};
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    T& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * cols_ + j]; }
    const T& operator()(int i, int j) const { return a_[static_cast<std::size_t>(i) * cols_ + j]; }

    Mat operator*(const Mat& o) const {
        Mat r(rows_, o.cols_);
        for (int i = 0; i < rows_; ++i)
            for (int k = 0; k < cols_; ++k) {
                const T aik = (*this)(i, k);
                if (aik == T{}) continue;
                for (int j = 0; j < o.cols_; ++j) r(i, j) += aik * o(k, j);
            }
        return r;
    }

    std::vector<T> operator*(const std::vector<T>& x) const {
        std::vector<T> r(rows_, T{});
        for (int i = 0; i < rows_; ++i) {
            T s{};
            for (int j = 0; j < cols_; ++j) s += (*this)(i, j) * x[j];
            r[i] = s;
        }
        return r;
    }

    Mat operator+(const Mat& o) const {
        Mat r = *this;
        for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] += o.a_[i];
        return r;
    }

    Mat operator-(const Mat& o) const {
        Mat r = *this;
        for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] -= o.a_[i];
        return r;
    }

    Mat& operator+=(const Mat& o) {
        for (std::size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
        return *this;
    }

    Mat operator*(T s) const {
        Mat r = *this;
        for (auto& x : r.a_) x *= s;
        return r;
    }

    Mat transpose() const {
        Mat r(cols_, rows_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
        return r;
    }

    const std::vector<T>& data() const { return a_; }

private:
    int rows_ = 0, cols_ = 0;
    std::vector<T> a_;
};

using RMat = Mat<double>;
using CMat = Mat<cplx>;

template <class T>
inline Mat<T> operator*(T s, const Mat<T>& m) { return m * s; }

inline CMat to_complex(const RMat& m) {
    CMat r(m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) r(i, j) = m(i, j);
    return r;
}

inline CMat adjoint(const CMat& m) {
    CMat r(m.cols(), m.rows());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) r(j, i) = std::conj(m(i, j));
    return r;
}

inline CVec operator*(const RMat& m, const CVec& x) {
    CVec r(m.rows(), cplx{});
    for (int i = 0; i < m.rows(); ++i) {
        cplx s{};
        for (int j = 0; j < m.cols(); ++j) s += m(i, j) * x[j];
        r[i] = s;
    }
    return r;
}

inline CMat operator*(const RMat& a, const CMat& b) { return to_complex(a) * b; }
inline CMat operator*(const CMat& a, const RMat& b) { return a * to_complex(b); }

inline double frobenius(const CMat& m) {
    double s = 0;
    for (const auto& x : m.data()) s += std::norm(x);
    return std::sqrt(s);
}

inline double frobenius(const RMat& m) {
    double s = 0;
    for (const auto& x : m.data()) s += x * x;
    return std::sqrt(s);
}

inline double max_abs(const RMat& m) {
    double s = 0;
    for (const auto& x : m.data()) s = std::max(s, std::abs(x));
    return s;
}

inline double max_abs(const CMat& m) {
    double s = 0;
    for (const auto& x : m.data()) s = std::max(s, std::abs(x));
    return s;
}

inline cplx trace(const CMat& m) {
    cplx s = 0;
    for (int i = 0; i < m.rows(); ++i) s += m(i, i);
    return s;
}

/// Determinant by LU with partial pivoting; matrices here are tiny.
template <class T>
inline T det(Mat<T> m) {
    const int n = m.rows();
    T d{1};
    for (int c = 0; c < n; ++c) {
        int piv = c;
        double best = std::abs(m(c, c));
        for (int r = c + 1; r < n; ++r)
            if (std::abs(m(r, c)) > best) { best = std::abs(m(r, c)); piv = r; }
        if (best == 0.0) return T{0};
        if (piv != c) {
            for (int j = 0; j < n; ++j) std::swap(m(piv, j), m(c, j));
            d = -d;
        }
        d *= m(c, c);
        for (int r = c + 1; r < n; ++r) {
            const T f = m(r, c) / m(c, c);
            for (int j = c; j < n; ++j) m(r, j) -= f * m(c, j);
        }
    }
    return d;
}

/// Residual of orthogonality, max |k^T k - I|.
inline double orthogonality_residual(const RMat& k) {
    const RMat g = k.transpose() * k;
    double r = 0;
    for (int i = 0; i < g.rows(); ++i)
        for (int j = 0; j < g.cols(); ++j)
            r = std::max(r, std::abs(g(i, j) - (i == j ? 1.0 : 0.0)));
    return r;
}

// ---------------------------------------------------------------------------
// Deterministic reduction and parallel map
// ---------------------------------------------------------------------------

/// Pairwise tree sum over [begin, end).  The tree shape depends only on the
/// element count, so results are bit-reproducible for a fixed input order.
template <class T, class Get>
inline T pairwise_sum(std::size_t begin, std::size_t end, Get&& get) {
    const std::size_t n = end - begin;
    if (n == 1) return get(begin);
    if (n == 2) {
        T a = get(begin);
        a += get(begin + 1);
        return a;
    }
    const std::size_t mid = begin + n / 2;
    T a = pairwise_sum<T>(begin, mid, get);
    a += pairwise_sum<T>(mid, end, get);
    return a;
}

inline int worker_count() {
    if (const char* env = std::getenv("HYPOISSON_THREADS")) {
        const int v = std::atoi(env);
        if (v >= 1) return v;
    }
    const unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : static_cast<int>(hc);
}

/// Evaluate fn(i) for i in [0, n) into a vector, chunked across workers.
/// The output ordering is fixed, so downstream pairwise reduction is
/// independent of the thread count.
template <class T, class Fn>
inline std::vector<T> parallel_map(std::size_t n, Fn&& fn) {
    std::vector<T> out(n);
    const int workers = std::min<std::size_t>(worker_count(), n == 0 ? 1 : n);
    if (workers <= 1 || n < 64) {
        for (std::size_t i = 0; i < n; ++i) out[i] = fn(i);
        return out;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    const std::size_t chunk = (n + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
        const std::size_t lo = w * chunk, hi = std::min(n, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([&out, &fn, lo, hi] {
            for (std::size_t i = lo; i < hi; ++i) out[i] = fn(i);
        });
    }
    for (auto& t : pool) t.join();
    return out;
}

// ---------------------------------------------------------------------------
// Deterministic RNG helpers (compiler-independent streams for test data)
// ---------------------------------------------------------------------------

class Rng {
public:
    explicit Rng(std::uint64_t seed) : s_(seed ? seed : 0x9e3779b97f4a7c15ULL) {}

    std::uint64_t next() {
        // xorshift64*
        s_ ^= s_ >> 12;
        s_ ^= s_ << 25;
        s_ ^= s_ >> 27;
        return s_ * 0x2545F4914F6CDD1DULL;
    }

    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    double gaussian() {
        // Box-Muller; spend two uniforms per call, no state carried.
        const double u1 = std::max(uniform(), 1e-300), u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * pi * u2);
    }

    cplx cgaussian() { return {gaussian(), gaussian()}; }

private:
    std::uint64_t s_;
};

/// Random rotation in SO(n): Gram-Schmidt on a Gaussian matrix, with the
/// determinant sign fixed on the last column.
inline RMat random_rotation(int n, Rng& rng) {
    RMat m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = rng.gaussian();
    for (int c = 0; c < n; ++c) {
        for (int prev = 0; prev < c; ++prev) {
            double pr = 0;
            for (int i = 0; i < n; ++i) pr += m(i, prev) * m(i, c);
            for (int i = 0; i < n; ++i) m(i, c) -= pr * m(i, prev);
        }
        double nn = 0;
        for (int i = 0; i < n; ++i) nn += m(i, c) * m(i, c);
        nn = std::sqrt(nn);
        for (int i = 0; i < n; ++i) m(i, c) /= nn;
    }
    if (det(m) < 0)
        for (int i = 0; i < n; ++i) m(i, n - 1) = -m(i, n - 1);
    return m;
}

}  // namespace hypoisson
