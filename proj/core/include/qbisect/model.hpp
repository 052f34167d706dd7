#pragma once

// Projective and ball models of quaternionic hyperbolic space.
//
// A point is a negative line v * Q in Q^{n,1}. Exact code never takes square
// roots; metric statements go through delta = cosh^2 d = |<v,w>|^2 / (<v,v><w,w>).

#include <cmath>
#include <optional>
#include <vector>

#include "qbisect/four_square.hpp"
#include "qbisect/qlinalg.hpp"

namespace qbisect {

template <class S>
class ProjectivePoint {
public:
    explicit ProjectivePoint(HVector<S> lift) : lift_(std::move(lift)), sign_(classify(lift_)) {}

    const HVector<S>& lift() const { return lift_; }
    SignClass sign() const { return sign_; }
    bool is_negative() const { return sign_ == SignClass::Negative; }
    /// n, the quaternionic dimension of the ambient hyperbolic space.
    std::size_t n() const { return lift_.size() - 1; }

    /// Representative with last coordinate 1 (negative points only).
    HVector<S> canonical() const {
        require_negative("canonical");
        return lift_ * inverse(lift_[lift_.size() - 1]);
    }

    void require_negative(const char* what) const {
        if (!is_negative()) throw DomainError(std::string(what) + ": point is not in the ball (" + to_string(sign_) + ")");
    }

private:
    HVector<S> lift_;
    SignClass sign_;
};

template <class S>
class BallPoint {
public:
    explicit BallPoint(std::vector<Quaternion<S>> w) : w_(std::move(w)) {
        S r(0);
        for (const auto& q : w_) r += norm_sq(q);
        if (!(r < S(1)) || (!ScalarTraits<S>::exact && scalar_eq(r, S(1))))
            throw DomainError("ball point must satisfy sum |w_i|^2 < 1");
    }
    const std::vector<Quaternion<S>>& coords() const { return w_; }
    std::size_t n() const { return w_.size(); }

private:
    std::vector<Quaternion<S>> w_;
};

template <class S>
BallPoint<S> to_ball(const ProjectivePoint<S>& p) {
    p.require_negative("to_ball");
    const HVector<S> c = p.canonical();
    return BallPoint<S>(std::vector<Quaternion<S>>(c.begin(), c.end() - 1));
}

template <class S>
ProjectivePoint<S> lift(const BallPoint<S>& b) {
    HVector<S> v(b.n() + 1);
    for (std::size_t i = 0; i < b.n(); ++i) v[i] = b.coords()[i];
    v[b.n()] = Quaternion<S>(S(1));
    return ProjectivePoint<S>(std::move(v));
}

/// Shorthand for lift(BallPoint(w)).
template <class S>
ProjectivePoint<S> ball(std::vector<Quaternion<S>> w) {
    return lift(BallPoint<S>(std::move(w)));
}

/// The two lifts span the same right line.
template <class S>
bool same_line(const HVector<S>& a, const HVector<S>& b) {
    return right_rank(std::vector<HVector<S>>{a, b}) <= 1;
}

template <class S>
bool same_point(const ProjectivePoint<S>& p, const ProjectivePoint<S>& q) {
    return same_line(p.lift(), q.lift());
}

/// |<V,W>|^2 / (<V,V><W,W>) for negative lifts.
template <class S>
S delta_of(const HVector<S>& v, const HVector<S>& w) {
    return S(norm_sq(herm(v, w)) / S(form(v) * form(w)));
}

template <class S>
S delta(const ProjectivePoint<S>& p, const ProjectivePoint<S>& q) {
    p.require_negative("delta");
    q.require_negative("delta");
    return delta_of(p.lift(), q.lift());
}

inline double dist(const ProjectivePoint<Float>& p, const ProjectivePoint<Float>& q) {
    const double d = delta(p, q);
    return std::acosh(std::sqrt(std::max(1.0, d)));
}

/// Real geodesic through V with tangent direction W: <V,W> = 0, real Gram,
/// <V,V> < 0 < <W,W>. The second defining point is pi(V + W).
template <class S>
struct RealGeodesic {
    HVector<S> v;
    HVector<S> w;
    S vv;  // <V,V>
    S ww;  // <W,W>

    /// pi(V + W r); r = 1 is the second point, r = -1 its mirror image.
    ProjectivePoint<S> point_at_ratio(const S& r) const { return ProjectivePoint<S>(v + w * r); }
    ProjectivePoint<S> symmetric_point() const { return ProjectivePoint<S>(v - w); }
};

template <class S>
RealGeodesic<S> geodesic_through(const ProjectivePoint<S>& p, const ProjectivePoint<S>& q) {
    p.require_negative("geodesic_through");
    q.require_negative("geodesic_through");
    if (same_point(p, q)) throw DomainError("geodesic_through: coincident points");
    const HVector<S>& v = p.lift();
    // Align q so that <V, Q'> is real, then split off the V component.
    const HVector<S> q1 = q.lift() * herm(q.lift(), v);
    const S vv = form(v);
    const S alpha = S(herm(v, q1).re / vv);
    HVector<S> w = q1 * S(S(1) / alpha) - v;
    const S ww = form(w);
    return RealGeodesic<S>{v, std::move(w), vv, ww};
}

/// Parameter of the second point in arc length.
inline double arc_length_end(const RealGeodesic<Float>& g) { return std::atanh(std::sqrt(g.ww / -g.vv)); }

/// pi(V cosh t + W sinh t) with V, W normalized; unit speed.
inline ProjectivePoint<Float> point_at(const RealGeodesic<Float>& g, double t) {
    const double sv = 1.0 / std::sqrt(-g.vv);
    const double sw = 1.0 / std::sqrt(g.ww);
    return ProjectivePoint<Float>(g.v * (sv * std::cosh(t)) + g.w * (sw * std::sinh(t)));
}

/// Lifts P1, P2 rescaled so <P1,P1> = <P2,P2> and, when |<P1,P2>| is rational
/// (always on the float backend), <P1,P2> real and negative. Otherwise only
/// Re <P1,P2> <= 0 is arranged.
template <class S>
struct NormalizedPair {
    HVector<S> p1;
    HVector<S> p2;
    bool t_real = false;
};

template <class S>
NormalizedPair<S> normalize_pair(const ProjectivePoint<S>& a, const ProjectivePoint<S>& b) {
    a.require_negative("normalize_pair");
    b.require_negative("normalize_pair");
    if (same_point(a, b)) throw DomainError("coincident points");
    HVector<S> p1 = a.canonical();
    HVector<S> p2 = b.canonical();
    const S r1 = form(p1);
    const S r2 = form(p2);
    if (!scalar_eq(r1, r2)) p2 = p2 * quaternion_with_norm(S(r1 / r2));
    const Quaternion<S> t = herm(p1, p2);
    NormalizedPair<S> out{std::move(p1), std::move(p2), false};
    if (is_real(t)) {
        if (t.re > S(0)) out.p2 = -out.p2;
        out.t_real = true;
        return out;
    }
    if (auto abs_t = ScalarTraits<S>::sqrt(norm_sq(t))) {
        out.p2 = out.p2 * (-conj(t) / *abs_t);
        out.t_real = true;
    } else if (t.re > S(0)) {
        out.p2 = -out.p2;
    }
    return out;
}

/// Midpoint of the segment [p1, p2]. On the exact backend this needs
/// sqrt(delta(p1, p2)) to be rational.
template <class S>
ProjectivePoint<S> midpoint(const ProjectivePoint<S>& p1, const ProjectivePoint<S>& p2) {
    const auto np = normalize_pair(p1, p2);
    if (!np.t_real) throw DomainError("midpoint: sqrt(delta) is irrational, no rational lift exists");
    return ProjectivePoint<S>(np.p1 + np.p2);
}

/// A totally geodesic submanifold: the projectivized negative part of a
/// nondegenerate indefinite tagged subspace.
template <class S>
struct TotallyGeodesic {
    Subspace<S> subspace;

    explicit TotallyGeodesic(Subspace<S> w) : subspace(std::move(w)) {
        const Signature sig = signature(gram(subspace.basis));
        if (sig.zero != 0) throw DomainError("totally geodesic submanifold: degenerate subspace");
        if (sig.negative != 1) throw DomainError("totally geodesic submanifold: subspace must meet the negative cone");
    }

    std::size_t dim() const { return subspace.dim() - 1; }
    const SubfieldTag<S>& tag() const { return subspace.tag; }
};

template <class S>
bool contains(const TotallyGeodesic<S>& m, const ProjectivePoint<S>& p) {
    return contains_line(m.subspace, p.lift());
}

template <class S>
TotallyGeodesic<S> quaternionic_span(const ProjectivePoint<S>& p1, const ProjectivePoint<S>& p2) {
    p1.require_negative("quaternionic_span");
    p2.require_negative("quaternionic_span");
    if (same_point(p1, p2)) throw DomainError("quaternionic_span: coincident points");
    return TotallyGeodesic<S>(subfield_span<S>({p1.lift(), p2.lift()}, SubfieldTag<S>::quaternionic()));
}

/// The canonical complex-type submanifold C(a)^{n+1} of the standard frame.
template <class S>
TotallyGeodesic<S> standard_complex_type(std::size_t n, const ImaginaryDirection<S>& a) {
    std::vector<HVector<S>> basis;
    for (std::size_t k = 0; k <= n; ++k) basis.push_back(HVector<S>::basis(n + 1, k));
    return TotallyGeodesic<S>(subfield_span(std::move(basis), SubfieldTag<S>::complex_type(a)));
}

}  // namespace qbisect
