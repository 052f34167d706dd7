#pragma once

// Bisectors B(p1, p2) = {p : d(p, p1) = d(p, p2)}.
//
// With lifts normalized to <P1,P1> = <P2,P2> the membership test is the
// polynomial identity |<P,P1>|^2 = |<P,P2>|^2. The quaternionic spine is the
// right span of P1, P2; the real spine is its intersection with B:
//
//   sigma = { pi(P1 mu + P2 nu) : |mu| = |nu| }.
//
// A spine frame (O, W) at a point o of sigma has <O,W> = 0 and describes
// sigma as { pi(O + W v) : v imaginary }; the geodesic pi(O + W s), s real,
// crosses sigma orthogonally at o.

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "qbisect/model.hpp"
#include "qbisect/rng.hpp"
#include "qbisect/sampling.hpp"

namespace qbisect {

template <class S>
struct SpineFrame {
    HVector<S> o;
    HVector<S> w;
};

template <class S>
struct Slice {
    HVector<S> s;                   // lift of the spine point
    std::vector<HVector<S>> basis;  // s followed by an orthogonal basis of the spine's complement
};

/// Hermitian triple product <P,Q><Q,R><R,P> of the given lifts.
template <class S>
Quaternion<S> hermitian_triple(const HVector<S>& p, const HVector<S>& q, const HVector<S>& r) {
    return herm(p, q) * herm(q, r) * herm(r, p);
}

template <class S>
Quaternion<S> hermitian_triple(const ProjectivePoint<S>& p, const ProjectivePoint<S>& q, const ProjectivePoint<S>& r) {
    return hermitian_triple(p.canonical(), q.canonical(), r.canonical());
}

template <class S>
class Bisector {
public:
    Bisector(const ProjectivePoint<S>& p1, const ProjectivePoint<S>& p2) : Bisector(normalize_pair(p1, p2)) {}

    const HVector<S>& p1() const { return p1_; }
    const HVector<S>& p2() const { return p2_; }
    /// Common value of <P1,P1> and <P2,P2>.
    const S& norm() const { return r_; }
    Quaternion<S> t() const { return herm(p1_, p2_); }
    bool t_real() const { return t_real_; }
    std::size_t n() const { return p1_.size() - 1; }

    ProjectivePoint<S> point1() const { return ProjectivePoint<S>(p1_); }
    ProjectivePoint<S> point2() const { return ProjectivePoint<S>(p2_); }

    TotallyGeodesic<S> spine() const { return TotallyGeodesic<S>(Subspace<S>{{p1_, p2_}, SubfieldTag<S>::quaternionic()}); }
    const Subspace<S>& spine_complement() const { return complement_; }

    /// Both sides of the membership identity for a lift P.
    std::pair<S, S> membership_sides(const HVector<S>& p) const {
        return {norm_sq(herm(p, p1_)), norm_sq(herm(p, p2_))};
    }

    bool contains(const HVector<S>& p) const {
        const auto [l, r] = membership_sides(p);
        return scalar_eq(l, r);
    }
    bool contains(const ProjectivePoint<S>& p) const {
        p.require_negative("bisector contains");
        return contains(p.lift());
    }

    /// |lhs - rhs| / max(1, |lhs|, |rhs|) on the canonical lift.
    double residual(const ProjectivePoint<S>& p) const {
        const auto [l, r] = membership_sides(p.canonical());
        return relative_residual(l, r);
    }

    bool spine_contains(const ProjectivePoint<S>& p) const { return contains_line(spine().subspace, p.lift()); }

    bool real_spine_contains(const ProjectivePoint<S>& p) const { return contains(p) && spine_contains(p); }

    /// pi(P1 mu + P2 nu); any mu, nu with a negative result.
    ProjectivePoint<S> span_point(const Quaternion<S>& mu, const Quaternion<S>& nu) const {
        HVector<S> v = p1_ * mu + p2_ * nu;
        if (is_zero(v)) throw DomainError("span_point: zero vector");
        ProjectivePoint<S> p(std::move(v));
        p.require_negative("span_point");
        return p;
    }

    /// Point of the real spine; requires |mu| = |nu|.
    ProjectivePoint<S> spine_point(const Quaternion<S>& mu, const Quaternion<S>& nu) const {
        if (!scalar_eq(norm_sq(mu), norm_sq(nu))) throw DomainError("spine_point: |mu| must equal |nu|");
        return span_point(mu, nu);
    }

    /// pi(P1 + P2): on sigma, and the midpoint of [p1, p2] when t is real.
    ProjectivePoint<S> default_center() const { return ProjectivePoint<S>(p1_ + p2_); }

    HVector<S> project_lift(const HVector<S>& p) const { return orth_project(std::vector<HVector<S>>{p1_, p2_}, p); }

    ProjectivePoint<S> project_to_spine(const ProjectivePoint<S>& p) const {
        p.require_negative("project_to_spine");
        return ProjectivePoint<S>(project_lift(p.lift()));
    }

    /// Spine frame at a point o of the real spine.
    SpineFrame<S> spine_frame(const ProjectivePoint<S>& o) const {
        if (!real_spine_contains(o)) throw DomainError("spine_frame: point is not on the real spine");
        const HVector<S> ov = o.lift();
        const S oo = form(ov);
        const HVector<S> w0 = p1_ - ov * (herm(ov, p1_) / oo);
        // Gradient of |<P1,X>|^2 - |<P2,X>|^2 along O + W0 y is Re(conj(c) y).
        const Quaternion<S> c = herm(w0, p1_) * herm(p1_, ov) - herm(w0, p2_) * herm(p2_, ov);
        if (is_zero(c)) throw DomainError("spine_frame: degenerate gradient");
        return SpineFrame<S>{rescaled(ov), rescaled(HVector<S>(w0 * c))};
    }

    SpineFrame<S> spine_frame() const { return spine_frame(default_center()); }

    Slice<S> slice_at(const ProjectivePoint<S>& s) const {
        if (!real_spine_contains(s)) throw DomainError("slice_at: point is not on the real spine");
        Slice<S> out{s.lift(), {s.lift()}};
        out.basis.insert(out.basis.end(), complement_.basis.begin(), complement_.basis.end());
        return out;
    }

    Slice<S> slice_of(const ProjectivePoint<S>& p) const {
        if (!contains(p)) throw DomainError("slice_of: point is not on the bisector");
        return slice_at(project_to_spine(p));
    }

private:
    explicit Bisector(NormalizedPair<S> np)
        : p1_(std::move(np.p1)),
          p2_(std::move(np.p2)),
          r_(form(p1_)),
          t_real_(np.t_real),
          complement_(orth_complement(std::vector<HVector<S>>{p1_, p2_}, p1_.size())) {}

    HVector<S> p1_;
    HVector<S> p2_;
    S r_;
    bool t_real_;
    Subspace<S> complement_;
};

/// Smallest s = 2^-k (k >= 0) with O + W s negative.
template <class S>
S negative_step(const HVector<S>& o, const HVector<S>& w) {
    S s(1);
    for (int k = 0; k < 200; ++k) {
        if (classify(HVector<S>(o + w * s)) == SignClass::Negative) return s;
        s /= S(2);
    }
    throw DomainError("negative_step: no negative point found");
}

/// p1, p2 = pi(O -+ W s) for the frame; their bisector has the frame's real spine.
template <class S>
std::pair<HVector<S>, HVector<S>> symmetric_pair(const SpineFrame<S>& f) {
    const S s = negative_step(f.o, f.w);
    return {f.o - f.w * s, f.o + f.w * s};
}

template <class S>
Bisector<S> bisector_from_real_spine(const SpineFrame<S>& f) {
    if (f.o.size() != f.w.size()) throw DimensionError("spine frame: dimension mismatch");
    if (!(form(f.o) < S(0)) || !(form(f.w) > S(0)) || !is_zero(herm(f.o, f.w)))
        throw DomainError("degenerate spine frame: need <O,O> < 0 < <W,W> and <O,W> = 0");
    if (right_rank(std::vector<HVector<S>>{f.o, f.w}) != 2) throw RankError("degenerate spine frame", 1);
    const auto [a, b] = symmetric_pair(f);
    return Bisector<S>(ProjectivePoint<S>(a), ProjectivePoint<S>(b));
}

/// The running example: p1 = ball(1/2, 0'), p2 = ball(-1/2, 0').
template <class S>
Bisector<S> standard_bisector(std::size_t n) {
    std::vector<Quaternion<S>> a(n), b(n);
    a[0] = Quaternion<S>(S(S(1) / S(2)));
    b[0] = Quaternion<S>(S(S(-1) / S(2)));
    return Bisector<S>(ball(std::move(a)), ball(std::move(b)));
}

template <class S>
Bisector<S> random_bisector(SplitMix64& rng, std::size_t n, const SamplingBounds& bounds = {}) {
    for (;;) {
        const auto a = random_ball_point<S>(rng, n, bounds);
        const auto b = random_ball_point<S>(rng, n, bounds);
        if (!same_point(a, b)) return Bisector<S>(a, b);
    }
}

/// Random point of the real spine: pi(P1 mu + P2 mu u) with u a Cayley unit.
template <class S>
ProjectivePoint<S> sample_spine_point(const Bisector<S>& b, SplitMix64& rng, const SamplingBounds& bounds = {}) {
    for (int attempt = 0; attempt < 1000; ++attempt) {
        const Quaternion<S> mu = random_nonzero_quaternion<S>(rng, bounds);
        const Quaternion<S> nu = mu * random_unit_quaternion<S>(rng, bounds);
        const HVector<S> v = b.p1() * mu + b.p2() * nu;
        if (!is_zero(v) && classify(v) == SignClass::Negative) return ProjectivePoint<S>(v);
    }
    throw DomainError("sample_spine_point: rejection bound exceeded");
}

namespace detail {

/// Power of two 2^-k (k >= 0) that brings the tail within the head's magnitude.
template <class S>
S tail_start_scale(const HVector<S>& head, const HVector<S>& tail) {
    const S eh = euclid_sq(head);
    const S et = euclid_sq(tail);
    if (is_zero(et) || is_zero(eh)) return S(1);
    const double lg = log2_magnitude(S(et / eh));
    if (lg <= 0) return S(1);
    const auto k = static_cast<unsigned long>(std::ceil(lg / 2)) + 1;
    if constexpr (ScalarTraits<S>::exact)
        return Exact(mpz_class(1), mpz_class(1) << k);
    else
        return std::ldexp(1.0, -static_cast<int>(k));
}

/// First negative vector head + tail * 2^-k, halving from tail_start_scale.
template <class S>
ProjectivePoint<S> negative_mix(const HVector<S>& head, HVector<S> tail, const char* who) {
    tail = tail * tail_start_scale(head, tail);
    for (int k = 0; k < 256; ++k) {
        const HVector<S> v = head + tail;
        if (classify(v) == SignClass::Negative) return ProjectivePoint<S>(v);
        tail = tail * S(S(1) / S(2));
    }
    throw DomainError(std::string(who) + ": rejection bound exceeded");
}

}  // namespace detail

/// Random negative point of a slice: s-lift times a scalar plus a shrinking
/// complement part.
template <class S>
ProjectivePoint<S> sample_slice_point(const Slice<S>& sl, SplitMix64& rng, const SamplingBounds& bounds = {}) {
    const Quaternion<S> c0 = random_nonzero_quaternion<S>(rng, bounds);
    HVector<S> tail(sl.s.size());
    for (std::size_t k = 1; k < sl.basis.size(); ++k) tail += sl.basis[k] * random_quaternion<S>(rng, bounds);
    return detail::negative_mix(HVector<S>(sl.s * c0), std::move(tail), "sample_slice_point");
}

/// Random bisector point built only from the membership identity: a random
/// ball point P is moved to X = P + O u lambda, O = P1 + P2, u a random
/// quaternion. |<P1,O u>| = |<P2,O u>| makes the equidistance equation
/// linear in lambda.
template <class S>
ProjectivePoint<S> sample_bisector_point(const Bisector<S>& b, SplitMix64& rng, const SamplingBounds& bounds = {}) {
    const HVector<S> o = b.p1() + b.p2();
    for (int attempt = 0; attempt < 1000; ++attempt) {
        const HVector<S> p = random_ball_point<S>(rng, b.n(), bounds).lift();
        const HVector<S> ou = o * random_nonzero_quaternion<S>(rng, bounds);
        const Quaternion<S> alpha = herm(b.p1(), p);
        const Quaternion<S> beta = herm(b.p2(), p);
        const S slope = S(S(2) * (conj(alpha) * herm(b.p1(), ou) - conj(beta) * herm(b.p2(), ou)).re);
        if (is_zero(slope)) continue;
        const S lambda = S((norm_sq(beta) - norm_sq(alpha)) / slope);
        const HVector<S> x = p + ou * lambda;
        if (!is_zero(x) && classify(x) == SignClass::Negative) return ProjectivePoint<S>(x);
    }
    throw DomainError("sample_bisector_point: rejection bound exceeded");
}

}  // namespace qbisect
