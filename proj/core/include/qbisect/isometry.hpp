#pragma once

// Sp(n,1): matrices g with g* J g = J. Complex-type reflections built from an
// unnormalized imaginary a satisfy g* J g = |a|^2 J instead; they act on the
// ball exactly like their unit rescaling, so the checks below accept a
// positive scale wherever the projective action is what matters.

#include <optional>
#include <vector>

#include "qbisect/model.hpp"

namespace qbisect {

/// c with m == c * E for a real c, if any.
template <class S>
std::optional<S> real_scalar_multiple_of_identity(const Matrix<S>& m) {
    if (m.rows() != m.cols() || m.rows() == 0) return std::nullopt;
    const S c = m(0, 0).re;
    if (!equal(m, Matrix<S>(Quaternion<S>(c) * Matrix<S>::identity(m.rows())))) return std::nullopt;
    return c;
}

/// c > 0 with g* J g = c J, if any.
template <class S>
std::optional<S> form_scale(const Matrix<S>& g) {
    const std::size_t dim = g.rows();
    if (dim == 0 || g.cols() != dim) return std::nullopt;
    const Matrix<S> j = Matrix<S>::form_matrix(dim);
    const Matrix<S> h = g.adjoint() * j * g * j;  // c E when g* J g = c J
    auto c = real_scalar_multiple_of_identity(h);
    if (!c || sign_of(*c) <= 0) return std::nullopt;
    return c;
}

/// g* J g == J.
template <class S>
bool verify(const Matrix<S>& g) {
    const auto c = form_scale(g);
    return c && scalar_eq(*c, S(1));
}

template <class S>
class Isometry {
public:
    /// Accepts g* J g = c J with c > 0; c is 1 for genuine elements of Sp(n,1).
    explicit Isometry(Matrix<S> g) : g_(std::move(g)) {
        auto c = form_scale(g_);
        if (!c) throw DomainError("matrix does not preserve the Hermitian form");
        scale_ = *c;
    }

    static Isometry identity(std::size_t dim) { return Isometry(Matrix<S>::identity(dim)); }

    const Matrix<S>& matrix() const { return g_; }
    const S& scale() const { return scale_; }
    bool symplectic() const { return scalar_eq(scale_, S(1)); }

    HVector<S> apply(const HVector<S>& v) const { return g_ * v; }
    ProjectivePoint<S> apply(const ProjectivePoint<S>& p) const { return ProjectivePoint<S>(g_ * p.lift()); }

    friend Isometry operator*(const Isometry& a, const Isometry& b) { return Isometry(a.g_ * b.g_); }

    /// g^-1 = c^-1 J g* J.
    Isometry inverse() const {
        const Matrix<S> j = Matrix<S>::form_matrix(g_.rows());
        return Isometry(j * g_.adjoint() * j * Quaternion<S>(S(S(1) / scale_)));
    }

private:
    Matrix<S> g_;
    S scale_{1};
};

template <class S>
ProjectivePoint<S> apply(const Matrix<S>& g, const ProjectivePoint<S>& p) {
    if (!form_scale(g)) throw DomainError("apply: matrix does not preserve the Hermitian form");
    return ProjectivePoint<S>(g * p.lift());
}

/// g^2 is a real multiple of E (modulo the center and positive scale).
template <class S>
bool is_projective_involution(const Matrix<S>& g) {
    const auto c = real_scalar_multiple_of_identity(g * g);
    return c && !is_zero(*c);
}

/// gh = +-hg.
template <class S>
bool commute_mod_center(const Matrix<S>& g, const Matrix<S>& h) {
    const Matrix<S> gh = g * h;
    const Matrix<S> hg = h * g;
    return equal(gh, hg) || equal(gh, Matrix<S>(-hg));
}

/// L'_a : v -> a v for a unit quaternion a.
template <class S>
Isometry<S> left_mult(const Quaternion<S>& a, std::size_t dim) {
    if (!scalar_eq(norm_sq(a), S(1))) throw DomainError("left_mult: |a| must be 1");
    return Isometry<S>(a * Matrix<S>::identity(dim));
}

template <class S>
struct Reflection {
    Matrix<S> g;
    Subspace<S> fixed;
};

/// v = v_W + v_perp -> v_W - v_perp.
template <class S>
Reflection<S> reflection_in_quaternionic(const Subspace<S>& w) {
    if (w.tag.kind != SubfieldKind::Quaternionic) throw DomainError("reflection_in_quaternionic: subspace must be quaternionic");
    const std::size_t dim = w.ambient();
    if (rank(gram(w.basis)) != w.dim()) throw DomainError("reflection_in_quaternionic: degenerate subspace");
    Matrix<S> g(dim, dim);
    for (std::size_t k = 0; k < dim; ++k) {
        const HVector<S> e = HVector<S>::basis(dim, k);
        const HVector<S> col = orth_project(w, e) * S(2) - e;
        for (std::size_t i = 0; i < dim; ++i) g(i, k) = col[i];
    }
    return {std::move(g), w};
}

/// g = F (a E) F^-1 for a full frame F whose Gram matrix commutes with a.
/// The fixed set is the C(a)-span of F. With h symplectic this is h (aE) h^-1.
template <class S>
Reflection<S> reflection_in_complex_type(const ImaginaryDirection<S>& a, const std::vector<HVector<S>>& frame) {
    if (frame.empty() || frame.size() != frame[0].size())
        throw DimensionError("reflection_in_complex_type: frame must have n+1 vectors");
    const Matrix<S> gr = gram(frame);
    for (const auto& q : gr.data())
        if (!commutes(q, a.value())) throw DomainError("reflection_in_complex_type: frame Gram does not commute with a");
    const Matrix<S> f = Matrix<S>::from_columns(frame);
    Matrix<S> g = f * (a.value() * Matrix<S>::identity(frame.size())) * inverse(f);
    return {std::move(g), subfield_span(frame, SubfieldTag<S>::complex_type(a))};
}

template <class S>
Reflection<S> reflection_in_complex_type(const ImaginaryDirection<S>& a, const Matrix<S>& h) {
    std::vector<HVector<S>> frame;
    for (std::size_t j = 0; j < h.cols(); ++j) frame.push_back(h.column(j));
    return reflection_in_complex_type(a, frame);
}

namespace detail {

/// Extends an independent family to a full basis whose extra vectors are
/// mutually orthogonal and orthogonal to the family.
template <class S>
std::vector<HVector<S>> complete_frame(const std::vector<HVector<S>>& fam, std::size_t dim) {
    std::vector<HVector<S>> out = fam;
    const auto comp = orth_complement(fam, dim);
    out.insert(out.end(), comp.basis.begin(), comp.basis.end());
    return out;
}

}  // namespace detail

/// g in Sp(n,1) with g * b1[r] = b2[r] for frames with equal Gram matrices.
template <class S>
Isometry<S> frame_transport(const std::vector<HVector<S>>& b1, const std::vector<HVector<S>>& b2) {
    if (b1.size() != b2.size() || b1.empty()) throw DimensionError("frame_transport: frames differ in size");
    const std::size_t dim = b1[0].size();
    if (!equal(gram(b1), gram(b2))) throw DomainError("frame_transport: Gram matrices differ");
    if (right_rank(b1) != b1.size()) throw RankError("frame_transport: frame is dependent", right_rank(b1));
    if (b1 == b2) return Isometry<S>::identity(dim);
    auto f1 = detail::complete_frame(b1, dim);
    auto f2 = detail::complete_frame(b2, dim);
    // Match the orthogonal tails: same sign pattern (Sylvester), then equal norms.
    const std::size_t m = b1.size();
    auto sort_tail = [&](std::vector<HVector<S>>& f) {
        std::stable_sort(f.begin() + static_cast<std::ptrdiff_t>(m), f.end(),
                         [](const HVector<S>& x, const HVector<S>& y) { return sign_of(form(x)) < sign_of(form(y)); });
    };
    sort_tail(f1);
    sort_tail(f2);
    for (std::size_t k = m; k < dim; ++k) {
        const S n1 = form(f1[k]);
        const S n2 = form(f2[k]);
        if (sign_of(n1) != sign_of(n2)) throw DomainError("frame_transport: complements have different signatures");
        f2[k] = f2[k] * quaternion_with_norm(S(n1 / n2));
    }
    return Isometry<S>(Matrix<S>::from_columns(f2) * inverse(Matrix<S>::from_columns(f1)));
}

/// Block-form test for stabilizers of a submanifold M in standard position:
/// M is the projectivized F-span of the coordinate vectors listed in `block`,
/// which must include the negative (last) coordinate. g must be block diagonal
/// diag(A lambda, B) with A over F, lambda normalizing F, A in U(m,1;F) up to
/// the scale |lambda|^2, B unitary. With `real_spine_shape` the A-block must in
/// addition be 2x2 of the form [[a, b], [-eps b, eps a]], eps = +-1.
template <class S>
bool stabilizer_block_check(const Matrix<S>& g, const std::vector<std::size_t>& block, const SubfieldTag<S>& field,
                            bool real_spine_shape = false) {
    const std::size_t dim = g.rows();
    if (g.cols() != dim || dim == 0) throw DimensionError("stabilizer_block_check: matrix must be square");
    std::vector<bool> in_block(dim, false);
    for (auto k : block) {
        if (k >= dim) throw DimensionError("stabilizer_block_check: block index out of range");
        in_block[k] = true;
    }
    if (!in_block[dim - 1]) throw DomainError("stabilizer_block_check: submanifold not in standard position");
    if (!verify(g)) return false;
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j)
            if (in_block[i] != in_block[j] && !is_zero(g(i, j))) return false;
    // A-block and its factorization A * lambda.
    std::vector<std::size_t> idx(block.begin(), block.end());
    std::sort(idx.begin(), idx.end());
    const std::size_t m = idx.size();
    Matrix<S> a_block(m, m);
    for (std::size_t r = 0; r < m; ++r)
        for (std::size_t c = 0; c < m; ++c) a_block(r, c) = g(idx[r], idx[c]);
    std::optional<Quaternion<S>> lambda;
    for (const auto& q : a_block.data())
        if (!is_zero(q)) {
            lambda = q;
            break;
        }
    if (!lambda) return false;
    const Matrix<S> a = a_block * inverse(*lambda);
    for (const auto& q : a.data())
        if (!field.contains(q)) return false;
    // lambda F lambda^-1 = F on generators.
    for (const auto& u : field.units())
        if (!field.contains(*lambda * u * inverse(*lambda))) return false;
    // A* J_m A = |lambda|^-2 J_m; the block order puts the negative coordinate last.
    const Matrix<S> jm = Matrix<S>::form_matrix(m);
    if (!equal(Matrix<S>(a.adjoint() * jm * a), Matrix<S>(jm * Quaternion<S>(S(S(1) / norm_sq(*lambda)))))) return false;
    if (real_spine_shape) {
        if (m != 2) return false;
        const auto& p = a_block(0, 0);
        const auto& q = a_block(0, 1);
        const bool plus = equal(a_block(1, 0), Quaternion<S>(-q)) && equal(a_block(1, 1), p);
        const bool minus = equal(a_block(1, 0), q) && equal(a_block(1, 1), Quaternion<S>(-p));
        if (!plus && !minus) return false;
    }
    return true;
}

}  // namespace qbisect
