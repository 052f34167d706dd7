#pragma once

// Right-module linear algebra over the quaternions.
//
// Vectors live in Q^{n,1}; scalars act on the right (v * lambda) and matrices
// act on the left, so every elimination step below left-multiplies rows.
// The form is <v, w> = sum_{i<=n} conj(v_i) w_i - conj(v_{n+1}) w_{n+1}.

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <utility>
#include <vector>

#include "qbisect/quaternion.hpp"

namespace qbisect {

template <class S>
class HVector {
public:
    using Q = Quaternion<S>;

    HVector() = default;
    explicit HVector(std::size_t dim) : c_(dim) {}
    HVector(std::initializer_list<Q> xs) : c_(xs) {}
    explicit HVector(std::vector<Q> xs) : c_(std::move(xs)) {}

    static HVector basis(std::size_t dim, std::size_t k) {
        HVector v(dim);
        v[k] = Q(S(1));
        return v;
    }

    std::size_t size() const { return c_.size(); }
    Q& operator[](std::size_t i) { return c_[i]; }
    const Q& operator[](std::size_t i) const { return c_[i]; }
    auto begin() const { return c_.begin(); }
    auto end() const { return c_.end(); }
    const std::vector<Q>& coords() const { return c_; }

    HVector& operator+=(const HVector& o) {
        check_dim(o);
        for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
        return *this;
    }
    HVector& operator-=(const HVector& o) {
        check_dim(o);
        for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
        return *this;
    }
    friend HVector operator+(HVector a, const HVector& b) { return a += b; }
    friend HVector operator-(HVector a, const HVector& b) { return a -= b; }
    HVector operator-() const {
        HVector r(*this);
        for (auto& q : r.c_) q = -q;
        return r;
    }

    /// Right scalar multiplication v * lambda.
    friend HVector operator*(const HVector& v, const Q& lambda) {
        HVector r(v.size());
        for (std::size_t i = 0; i < v.size(); ++i) r[i] = v[i] * lambda;
        return r;
    }
    friend HVector operator*(const HVector& v, const S& s) {
        HVector r(v);
        for (auto& q : r.c_) q *= s;
        return r;
    }

    friend bool operator==(const HVector& a, const HVector& b) { return a.c_ == b.c_; }

private:
    void check_dim(const HVector& o) const {
        if (o.size() != size()) throw DimensionError("vector dimension mismatch");
    }

    std::vector<Q> c_;
};

using ExactVector = HVector<Exact>;
using FloatVector = HVector<Float>;

template <class S>
bool is_zero(const HVector<S>& v) {
    for (const auto& q : v)
        if (!is_zero(q)) return false;
    return true;
}

template <class S>
bool equal(const HVector<S>& a, const HVector<S>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!equal(a[i], b[i])) return false;
    return true;
}

/// Hermitian form of signature (n, 1); the last coordinate is the negative one.
template <class S>
Quaternion<S> herm(const HVector<S>& v, const HVector<S>& w) {
    if (v.size() != w.size()) throw DimensionError("herm: dimension mismatch");
    if (v.size() == 0) throw DimensionError("herm: empty vectors");
    Quaternion<S> acc;
    const std::size_t last = v.size() - 1;
    for (std::size_t i = 0; i < last; ++i) acc += conj(v[i]) * w[i];
    acc -= conj(v[last]) * w[last];
    return acc;
}

/// The real scalar <v, v>.
template <class S>
S form(const HVector<S>& v) {
    const std::size_t last = v.size() - 1;
    S acc(0);
    for (std::size_t i = 0; i < last; ++i) acc += norm_sq(v[i]);
    acc -= norm_sq(v[last]);
    return acc;
}

/// Euclidean |v|^2 of the coordinates, used to scale float thresholds.
template <class S>
S euclid_sq(const HVector<S>& v) {
    S acc(0);
    for (const auto& q : v) acc += norm_sq(q);
    return acc;
}

/// Float vectors scaled to unit Euclidean length; exact vectors to primitive
/// integer coordinates. Positive rescaling changes neither the projective
/// point nor Gram phases.
template <class S>
HVector<S> rescaled(const HVector<S>& v) {
    if constexpr (ScalarTraits<S>::exact) {
        mpz_class den = 1, num = 0;
        for (const auto& q : v)
            for (const Exact* c : {&q.re, &q.x, &q.y, &q.z}) {
                mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c->get_den_mpz_t());
                mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), c->get_num_mpz_t());
            }
        if (num == 0) return v;
        Exact f(den, num);
        f.canonicalize();
        return v * f;
    } else {
        const double e = std::sqrt(euclid_sq(v));
        return e > 0 ? HVector<S>(v * (1.0 / e)) : v;
    }
}

enum class SignClass { Negative, Null, Positive };

inline const char* to_string(SignClass s) {
    switch (s) {
        case SignClass::Negative: return "negative";
        case SignClass::Null: return "null";
        case SignClass::Positive: return "positive";
    }
    return "?";
}

template <class S>
SignClass classify(const HVector<S>& v) {
    if (is_zero(v)) throw DomainError("classify: zero vector");
    const S f = form(v);
    if constexpr (ScalarTraits<S>::exact) {
        const int s = sgn(f);
        return s < 0 ? SignClass::Negative : s > 0 ? SignClass::Positive : SignClass::Null;
    } else {
        if (std::fabs(f) <= tolerance() * euclid_sq(v)) return SignClass::Null;
        return f < 0 ? SignClass::Negative : SignClass::Positive;
    }
}

// ---------------------------------------------------------------------------
// Quaternion matrices

template <class S>
class Matrix {
public:
    using Q = Quaternion<S>;

    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}
    Matrix(std::initializer_list<std::initializer_list<Q>> rows) {
        rows_ = rows.size();
        cols_ = rows_ ? rows.begin()->size() : 0;
        for (const auto& r : rows) {
            if (r.size() != cols_) throw DimensionError("ragged matrix literal");
            a_.insert(a_.end(), r.begin(), r.end());
        }
    }

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = Q(S(1));
        return m;
    }

    /// diag(1, ..., 1, -1) of size dim.
    static Matrix form_matrix(std::size_t dim) {
        Matrix m = identity(dim);
        m(dim - 1, dim - 1) = Q(S(-1));
        return m;
    }

    static Matrix diagonal(const std::vector<Q>& d) {
        Matrix m(d.size(), d.size());
        for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
        return m;
    }

    static Matrix from_columns(const std::vector<HVector<S>>& cols) {
        if (cols.empty()) return Matrix();
        Matrix m(cols[0].size(), cols.size());
        for (std::size_t j = 0; j < cols.size(); ++j) {
            if (cols[j].size() != m.rows_) throw DimensionError("from_columns: ragged columns");
            for (std::size_t i = 0; i < m.rows_; ++i) m(i, j) = cols[j][i];
        }
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    Q& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const Q& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    HVector<S> column(std::size_t j) const {
        HVector<S> v(rows_);
        for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
        return v;
    }

    /// Conjugate transpose.
    Matrix adjoint() const {
        Matrix m(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) m(j, i) = conj((*this)(i, j));
        return m;
    }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.cols_ != b.rows_) throw DimensionError("matrix product dimension mismatch");
        Matrix m(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const Q& aik = a(i, k);
                if (is_zero(aik) && ScalarTraits<S>::exact) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) m(i, j) += aik * b(k, j);
            }
        return m;
    }

    friend HVector<S> operator*(const Matrix& a, const HVector<S>& v) {
        if (a.cols_ != v.size()) throw DimensionError("matrix-vector dimension mismatch");
        HVector<S> r(a.rows_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t j = 0; j < a.cols_; ++j) r[i] += a(i, j) * v[j];
        return r;
    }

    /// Left scalar multiple lambda * A (entrywise lambda * a_ij).
    friend Matrix operator*(const Q& lambda, const Matrix& a) {
        Matrix m(a);
        for (auto& q : m.a_) q = lambda * q;
        return m;
    }
    friend Matrix operator*(const Matrix& a, const Q& lambda) {
        Matrix m(a);
        for (auto& q : m.a_) q = q * lambda;
        return m;
    }
    friend Matrix operator+(Matrix a, const Matrix& b) {
        a.check_same(b);
        for (std::size_t i = 0; i < a.a_.size(); ++i) a.a_[i] += b.a_[i];
        return a;
    }
    friend Matrix operator-(Matrix a, const Matrix& b) {
        a.check_same(b);
        for (std::size_t i = 0; i < a.a_.size(); ++i) a.a_[i] -= b.a_[i];
        return a;
    }
    Matrix operator-() const {
        Matrix m(*this);
        for (auto& q : m.a_) q = -q;
        return m;
    }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
    }

    const std::vector<Q>& data() const { return a_; }

private:
    void check_same(const Matrix& b) const {
        if (rows_ != b.rows_ || cols_ != b.cols_) throw DimensionError("matrix shape mismatch");
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Q> a_;
};

using ExactMatrix = Matrix<Exact>;
using FloatMatrix = Matrix<Float>;

namespace detail {

template <class S>
double max_magnitude(const Matrix<S>& a) {
    double m = 0;
    for (const auto& q : a.data()) m = std::max(m, ScalarTraits<S>::to_double(norm_sq(q)));
    return std::sqrt(m);
}

}  // namespace detail

/// Exact equality; on floats entrywise within tau times the larger matrix magnitude.
template <class S>
bool equal(const Matrix<S>& a, const Matrix<S>& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
    if constexpr (ScalarTraits<S>::exact) {
        for (std::size_t i = 0; i < a.data().size(); ++i)
            if (!equal(a.data()[i], b.data()[i])) return false;
    } else {
        const double tol = tolerance() * std::max({1.0, detail::max_magnitude(a), detail::max_magnitude(b)});
        for (std::size_t i = 0; i < a.data().size(); ++i) {
            const auto& x = a.data()[i];
            const auto& y = b.data()[i];
            if (std::fabs(x.re - y.re) > tol || std::fabs(x.x - y.x) > tol || std::fabs(x.y - y.y) > tol ||
                std::fabs(x.z - y.z) > tol)
                return false;
        }
    }
    return true;
}

template <class S>
bool is_zero(const Matrix<S>& a) {
    for (const auto& q : a.data())
        if (!is_zero(q)) return false;
    return true;
}

namespace detail {

/// Reduced row echelon form by left row operations. Applies the same
/// operations to `rhs` (if non-null). Returns pivot columns.
template <class S>
std::vector<std::size_t> rref(Matrix<S>& a, Matrix<S>* rhs = nullptr) {
    using Q = Quaternion<S>;
    std::vector<std::size_t> pivots;
    const double threshold = ScalarTraits<S>::exact ? 0.0 : tolerance() * std::max(1.0, max_magnitude(a));
    std::size_t row = 0;
    for (std::size_t col = 0; col < a.cols() && row < a.rows(); ++col) {
        std::size_t best = a.rows();
        if constexpr (ScalarTraits<S>::exact) {
            for (std::size_t i = row; i < a.rows(); ++i)
                if (!is_zero(a(i, col))) {
                    best = i;
                    break;
                }
        } else {
            double best_mag = threshold;
            for (std::size_t i = row; i < a.rows(); ++i) {
                const double mag = std::sqrt(norm_sq(a(i, col)));
                if (mag > best_mag) {
                    best_mag = mag;
                    best = i;
                }
            }
        }
        if (best == a.rows()) continue;
        if (best != row) {
            for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(best, j), a(row, j));
            if (rhs)
                for (std::size_t j = 0; j < rhs->cols(); ++j) std::swap((*rhs)(best, j), (*rhs)(row, j));
        }
        const Q inv = inverse(a(row, col));
        for (std::size_t j = 0; j < a.cols(); ++j) a(row, j) = inv * a(row, j);
        if (rhs)
            for (std::size_t j = 0; j < rhs->cols(); ++j) (*rhs)(row, j) = inv * (*rhs)(row, j);
        a(row, col) = Q(S(1));
        for (std::size_t i = 0; i < a.rows(); ++i) {
            if (i == row || is_zero(a(i, col))) continue;
            const Q m = a(i, col);
            for (std::size_t j = 0; j < a.cols(); ++j) a(i, j) -= m * a(row, j);
            if (rhs)
                for (std::size_t j = 0; j < rhs->cols(); ++j) (*rhs)(i, j) -= m * (*rhs)(row, j);
            a(i, col) = Q();
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

}  // namespace detail

/// Rank over the quaternions (right column rank).
template <class S>
std::size_t rank(Matrix<S> a) {
    return detail::rref(a).size();
}

/// Right rank of a family of vectors: dimension of their right Q-span.
template <class S>
std::size_t right_rank(const std::vector<HVector<S>>& vs) {
    if (vs.empty()) return 0;
    return rank(Matrix<S>::from_columns(vs));
}

/// Solves A * X = C for X (A square, invertible).
template <class S>
Matrix<S> solve_right(Matrix<S> a, Matrix<S> c) {
    if (a.rows() != a.cols()) throw DimensionError("solve_right: matrix must be square");
    if (c.rows() != a.rows()) throw DimensionError("solve_right: right-hand side has wrong length");
    const auto pivots = detail::rref(a, &c);
    if (pivots.size() != a.rows()) throw RankError("solve_right: singular matrix", pivots.size());
    return c;
}

template <class S>
HVector<S> solve_right(const Matrix<S>& a, const HVector<S>& c) {
    return solve_right(a, Matrix<S>::from_columns({c})).column(0);
}

template <class S>
Matrix<S> inverse(const Matrix<S>& a) {
    return solve_right(a, Matrix<S>::identity(a.rows()));
}

/// Basis of {lambda : A lambda = 0}.
template <class S>
std::vector<HVector<S>> right_nullspace(Matrix<S> a) {
    const auto pivots = detail::rref(a);
    std::vector<bool> is_pivot(a.cols(), false);
    for (auto p : pivots) is_pivot[p] = true;
    std::vector<HVector<S>> out;
    for (std::size_t f = 0; f < a.cols(); ++f) {
        if (is_pivot[f]) continue;
        HVector<S> v(a.cols());
        v[f] = Quaternion<S>(S(1));
        for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -a(r, f);
        out.push_back(std::move(v));
    }
    return out;
}

template <class S>
Matrix<S> gram(const std::vector<HVector<S>>& basis) {
    Matrix<S> g(basis.size(), basis.size());
    for (std::size_t r = 0; r < basis.size(); ++r)
        for (std::size_t s = r; s < basis.size(); ++s) {
            g(r, s) = herm(basis[r], basis[s]);
            g(s, r) = conj(g(r, s));
        }
    return g;
}

struct Signature {
    std::size_t positive = 0;
    std::size_t negative = 0;
    std::size_t zero = 0;
    friend bool operator==(const Signature&, const Signature&) = default;
};

/// Signature of a Hermitian matrix by congruence elimination with diagonal
/// pivots; no eigenvalues involved.
template <class S>
Signature signature(Matrix<S> g) {
    using Q = Quaternion<S>;
    if (g.rows() != g.cols()) throw DimensionError("signature: matrix must be square");
    const std::size_t n = g.rows();
    const double threshold = ScalarTraits<S>::exact ? 0.0 : tolerance() * std::max(1.0, detail::max_magnitude(g));
    auto negligible = [&](const Q& q) {
        if constexpr (ScalarTraits<S>::exact)
            return is_zero(q);
        else
            return std::sqrt(norm_sq(q)) <= threshold;
    };
    // Congruence step: basis_j <- basis_j + basis_i * m, i.e. column j += column i * m
    // and row j += conj(m) * row i.
    auto add_multiple = [&](std::size_t j, std::size_t i, const Q& m) {
        for (std::size_t r = 0; r < n; ++r) g(r, j) += g(r, i) * m;
        const Q cm = conj(m);
        for (std::size_t c = 0; c < n; ++c) g(j, c) += cm * g(i, c);
    };
    Signature sig;
    std::vector<bool> done(n, false);
    for (std::size_t step = 0; step < n; ++step) {
        std::size_t piv = n;
        double best = -1;
        for (std::size_t k = 0; k < n; ++k) {
            if (done[k] || negligible(g(k, k))) continue;
            const double mag = std::fabs(ScalarTraits<S>::to_double(g(k, k).re));
            if constexpr (ScalarTraits<S>::exact) {
                piv = k;
                break;
            } else if (mag > best) {
                best = mag;
                piv = k;
            }
        }
        if (piv == n) {
            // All remaining diagonal entries vanish; use an off-diagonal entry.
            std::size_t pi = n, pj = n;
            for (std::size_t i = 0; i < n && pi == n; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    if (!done[i] && !done[j] && i != j && !negligible(g(i, j))) {
                        pi = i;
                        pj = j;
                        break;
                    }
            if (pi == n) break;
            add_multiple(pi, pj, conj(g(pj, pi)));
            piv = pi;
        }
        const S d = g(piv, piv).re;
        done[piv] = true;
        if (sign_of(d) > 0)
            ++sig.positive;
        else
            ++sig.negative;
        for (std::size_t j = 0; j < n; ++j) {
            if (done[j] || is_zero(g(piv, j))) continue;
            add_multiple(j, piv, Q(-g(piv, j) / d));
        }
    }
    for (std::size_t k = 0; k < n; ++k)
        if (!done[k]) ++sig.zero;
    return sig;
}

// ---------------------------------------------------------------------------
// Tagged subspaces

enum class SubfieldKind { Real, ComplexType, Quaternionic };

template <class S>
struct SubfieldTag {
    SubfieldKind kind = SubfieldKind::Quaternionic;
    std::optional<ImaginaryDirection<S>> a;  // ComplexType only

    static SubfieldTag real() { return {SubfieldKind::Real, std::nullopt}; }
    static SubfieldTag quaternionic() { return {SubfieldKind::Quaternionic, std::nullopt}; }
    static SubfieldTag complex_type(const ImaginaryDirection<S>& dir) { return {SubfieldKind::ComplexType, dir}; }

    /// Real dimension of the subfield.
    std::size_t real_dim() const {
        switch (kind) {
            case SubfieldKind::Real: return 1;
            case SubfieldKind::ComplexType: return 2;
            case SubfieldKind::Quaternionic: return 4;
        }
        return 4;
    }

    /// Real basis of the subfield as quaternions.
    std::vector<Quaternion<S>> units() const {
        using Q = Quaternion<S>;
        switch (kind) {
            case SubfieldKind::Real: return {Q(S(1))};
            case SubfieldKind::ComplexType: return {Q(S(1)), a->value()};
            case SubfieldKind::Quaternionic: return {Q(S(1)), Q::unit_i(), Q::unit_j(), Q::unit_k()};
        }
        return {};
    }

    bool contains(const Quaternion<S>& q) const {
        switch (kind) {
            case SubfieldKind::Real: return is_real(q);
            case SubfieldKind::ComplexType: return in_subfield(q, *a);
            case SubfieldKind::Quaternionic: return true;
        }
        return false;
    }
};

template <class S>
std::string to_string(const SubfieldTag<S>& t) {
    switch (t.kind) {
        case SubfieldKind::Real: return "real";
        case SubfieldKind::ComplexType: return "complex(" + to_string(t.a->value()) + ")";
        case SubfieldKind::Quaternionic: return "quaternionic";
    }
    return "?";
}

template <class S>
struct Subspace {
    std::vector<HVector<S>> basis;
    SubfieldTag<S> tag;

    std::size_t dim() const { return basis.size(); }
    std::size_t ambient() const { return basis.empty() ? 0 : basis[0].size(); }
};

/// Real coordinates of a vector: 4 per quaternion entry.
template <class S>
std::vector<S> real_coords(const HVector<S>& v) {
    std::vector<S> out;
    out.reserve(4 * v.size());
    for (const auto& q : v) {
        out.push_back(q.re);
        out.push_back(q.x);
        out.push_back(q.y);
        out.push_back(q.z);
    }
    return out;
}

template <class S>
HVector<S> from_real_coords(const std::vector<S>& r) {
    HVector<S> v(r.size() / 4);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = Quaternion<S>{r[4 * i], r[4 * i + 1], r[4 * i + 2], r[4 * i + 3]};
    return v;
}

/// Real spanning set of the subfield span: b * u for every basis vector b and
/// subfield unit u.
template <class S>
std::vector<HVector<S>> real_generators(const Subspace<S>& w) {
    std::vector<HVector<S>> out;
    const auto units = w.tag.units();
    for (const auto& b : w.basis)
        for (const auto& u : units) out.push_back(b * u);
    return out;
}

namespace detail {

/// Row echelon over the reals; rows are the vectors. Returns the rank and
/// leaves the reduced rows in `m` (first `rank` rows).
template <class S>
std::size_t real_echelon(std::vector<std::vector<S>>& m) {
    if (m.empty()) return 0;
    const std::size_t cols = m[0].size();
    double scale = 1.0;
    if constexpr (!ScalarTraits<S>::exact)
        for (const auto& r : m)
            for (const auto& x : r) scale = std::max(scale, std::fabs(x));
    const double threshold = ScalarTraits<S>::exact ? 0.0 : tolerance() * scale;
    std::size_t row = 0;
    for (std::size_t col = 0; col < cols && row < m.size(); ++col) {
        std::size_t best = m.size();
        if constexpr (ScalarTraits<S>::exact) {
            for (std::size_t i = row; i < m.size(); ++i)
                if (sign_of(m[i][col]) != 0) {
                    best = i;
                    break;
                }
        } else {
            double best_mag = threshold;
            for (std::size_t i = row; i < m.size(); ++i)
                if (std::fabs(m[i][col]) > best_mag) {
                    best_mag = std::fabs(m[i][col]);
                    best = i;
                }
        }
        if (best == m.size()) continue;
        std::swap(m[best], m[row]);
        const S inv = S(S(1) / m[row][col]);
        for (std::size_t j = col; j < cols; ++j) m[row][j] *= inv;
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (i == row) continue;
            const S f = m[i][col];
            if (sign_of(f) == 0) continue;
            for (std::size_t j = col; j < cols; ++j) m[i][j] -= f * m[row][j];
        }
        ++row;
    }
    return row;
}

}  // namespace detail

/// Dimension of the real span of the given vectors.
template <class S>
std::size_t real_rank(const std::vector<HVector<S>>& vs) {
    std::vector<std::vector<S>> m;
    m.reserve(vs.size());
    for (const auto& v : vs) m.push_back(real_coords(v));
    return detail::real_echelon(m);
}

/// Basis of the real intersection span(a) and span(b).
template <class S>
std::vector<HVector<S>> real_intersection(const std::vector<HVector<S>>& a, const std::vector<HVector<S>>& b) {
    if (a.empty() || b.empty()) return {};
    // Columns a_i and -b_j; a null vector (alpha, beta) gives sum alpha_i a_i in both spans.
    const std::size_t dim = 4 * a[0].size();
    const std::size_t cols = a.size() + b.size();
    std::vector<std::vector<S>> m(dim, std::vector<S>(cols, S(0)));
    for (std::size_t j = 0; j < a.size(); ++j) {
        const auto r = real_coords(a[j]);
        for (std::size_t i = 0; i < dim; ++i) m[i][j] = r[i];
    }
    for (std::size_t j = 0; j < b.size(); ++j) {
        const auto r = real_coords(b[j]);
        for (std::size_t i = 0; i < dim; ++i) m[i][a.size() + j] = S(-r[i]);
    }
    const std::size_t rk = detail::real_echelon(m);
    std::vector<std::size_t> pivot_col(rk);
    std::vector<bool> is_pivot(cols, false);
    for (std::size_t r = 0; r < rk; ++r) {
        std::size_t c = 0;
        while (is_zero(m[r][c])) ++c;
        pivot_col[r] = c;
        is_pivot[c] = true;
    }
    std::vector<HVector<S>> spanning;
    for (std::size_t f = 0; f < cols; ++f) {
        if (is_pivot[f]) continue;
        std::vector<S> coef(cols, S(0));
        coef[f] = S(1);
        for (std::size_t r = 0; r < rk; ++r) coef[pivot_col[r]] = S(-m[r][f]);
        HVector<S> x(a[0].size());
        for (std::size_t i = 0; i < a.size(); ++i)
            if (!is_zero(coef[i])) x += a[i] * coef[i];
        spanning.push_back(std::move(x));
    }
    // Reduce to a basis.
    std::vector<std::vector<S>> rows;
    for (const auto& x : spanning) rows.push_back(real_coords(x));
    const std::size_t k = detail::real_echelon(rows);
    std::vector<HVector<S>> out;
    for (std::size_t r = 0; r < k; ++r) out.push_back(from_real_coords(rows[r]));
    return out;
}

/// v lies in the subfield span of w (as a vector, not projectively).
template <class S>
bool contains_vector(const Subspace<S>& w, const HVector<S>& v) {
    auto gens = real_generators(w);
    const std::size_t base = real_rank(gens);
    gens.push_back(v);
    return real_rank(gens) == base;
}

/// Some right multiple v * lambda (lambda != 0) lies in the subfield span of w:
/// the 4-dimensional real space v * Q meets the span nontrivially.
template <class S>
bool contains_line(const Subspace<S>& w, const HVector<S>& v) {
    using Q = Quaternion<S>;
    auto gens = real_generators(w);
    const std::size_t base = real_rank(gens);
    for (const Q& u : {Q(S(1)), Q::unit_i(), Q::unit_j(), Q::unit_k()}) gens.push_back(v * u);
    return real_rank(gens) < base + 4;
}

/// Same subfield span (tags must agree).
template <class S>
bool same_span(const Subspace<S>& a, const Subspace<S>& b) {
    auto ga = real_generators(a);
    auto gb = real_generators(b);
    const std::size_t ra = real_rank(ga);
    const std::size_t rb = real_rank(gb);
    if (ra != rb) return false;
    ga.insert(ga.end(), gb.begin(), gb.end());
    return real_rank(ga) == ra;
}

/// Right span over the tagged subfield, validating Gram entries and independence.
template <class S>
Subspace<S> subfield_span(std::vector<HVector<S>> vectors, const SubfieldTag<S>& tag) {
    if (vectors.empty()) throw DimensionError("subfield_span: no vectors");
    for (const auto& v : vectors)
        if (v.size() != vectors[0].size()) throw DimensionError("subfield_span: dimension mismatch");
    if (tag.kind == SubfieldKind::ComplexType && !tag.a) throw DomainError("complex-type tag without direction");
    if (tag.kind != SubfieldKind::Quaternionic) {
        for (std::size_t r = 0; r < vectors.size(); ++r)
            for (std::size_t s = r; s < vectors.size(); ++s)
                if (!tag.contains(herm(vectors[r], vectors[s])))
                    throw DomainError("representatives not aligned: Gram entry outside the " + to_string(tag) +
                                      " subfield");
    }
    const std::size_t rk = right_rank(vectors);
    if (rk != vectors.size()) throw RankError("subfield_span: vectors are dependent", rk);
    return Subspace<S>{std::move(vectors), tag};
}

/// Projection onto span(basis): v_W = sum b_r lambda_r with G lambda = (<b_r, v>).
template <class S>
HVector<S> orth_project(const std::vector<HVector<S>>& basis, const HVector<S>& v) {
    if (basis.empty()) return HVector<S>(v.size());
    HVector<S> rhs(basis.size());
    for (std::size_t r = 0; r < basis.size(); ++r) rhs[r] = herm(basis[r], v);
    HVector<S> lambda;
    try {
        lambda = solve_right(gram(basis), rhs);
    } catch (const RankError& e) {
        throw DomainError("orth_project: degenerate subspace (Gram rank " + std::to_string(e.rank()) + ")");
    }
    HVector<S> out(v.size());
    for (std::size_t r = 0; r < basis.size(); ++r) out += basis[r] * lambda[r];
    return out;
}

template <class S>
HVector<S> orth_project(const Subspace<S>& w, const HVector<S>& v) {
    return orth_project(w.basis, v);
}

/// Gram-Schmidt for the indefinite form. Isotropic vectors are avoided by
/// reordering, or by mixing with a partner of nonzero pairing.
template <class S>
std::vector<HVector<S>> orthogonalize(std::vector<HVector<S>> vs) {
    const std::size_t npos = vs.size();
    for (std::size_t k = 0; k < vs.size(); ++k) {
        std::size_t pick = npos;
        for (std::size_t m = k; m < vs.size() && pick == npos; ++m)
            if (!is_zero(form(vs[m]))) pick = m;
        if (pick == npos) {
            for (std::size_t m = k + 1; m < vs.size() && pick == npos; ++m) {
                const Quaternion<S> q = herm(vs[k], vs[m]);
                if (!is_zero(q)) {
                    vs[k] += vs[m] * conj(q);  // <v + w conj(q), same> = 2|q|^2
                    pick = k;
                }
            }
        }
        if (pick == npos) throw DomainError("orthogonalize: degenerate family");
        std::swap(vs[k], vs[pick]);
        const S nk = form(vs[k]);
        for (std::size_t m = k + 1; m < vs.size(); ++m) vs[m] -= vs[k] * (herm(vs[k], vs[m]) / nk);
    }
    return vs;
}

/// Orthogonal complement with a mutually orthogonal basis.
template <class S>
Subspace<S> orth_complement(const std::vector<HVector<S>>& basis, std::size_t ambient) {
    if (basis.empty()) {
        std::vector<HVector<S>> all;
        for (std::size_t k = 0; k < ambient; ++k) all.push_back(HVector<S>::basis(ambient, k));
        return Subspace<S>{std::move(all), SubfieldTag<S>::quaternionic()};
    }
    const Matrix<S> g = gram(basis);
    if (rank(g) != basis.size()) throw DomainError("orth_complement: degenerate subspace");
    // Row r of the constraint matrix is conj(b_r)^T J.
    Matrix<S> m(basis.size(), ambient);
    for (std::size_t r = 0; r < basis.size(); ++r)
        for (std::size_t c = 0; c < ambient; ++c) {
            Quaternion<S> q = conj(basis[r][c]);
            m(r, c) = (c + 1 == ambient) ? -q : q;
        }
    auto basis_out = orthogonalize(right_nullspace(m));
    for (auto& v : basis_out) v = rescaled(v);
    return Subspace<S>{std::move(basis_out), SubfieldTag<S>::quaternionic()};
}

template <class S>
Subspace<S> orth_complement(const Subspace<S>& w) {
    if (w.basis.empty()) throw DimensionError("orth_complement: empty subspace");
    return orth_complement(w.basis, w.ambient());
}

}  // namespace qbisect
