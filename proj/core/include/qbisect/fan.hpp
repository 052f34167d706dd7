#pragma once

// Complex blades and fan decompositions.
//
// A blade is described by a real frame F = (F_0, ..., F_n): n+1 right
// independent vectors with a real Gram matrix, F_0 the lift O of the fan
// center. For an imaginary a the C(a)-span of F is a complex-type
// submanifold M; for b orthogonal to a the C(b)-span is the orthogonal
// partner N, with M and N meeting along the real span S of F. The
// reflections F (aE) F^-1 and F (bE) F^-1 anticommute because ab = -ba.
//
// Fan pipeline at a center o of the real spine with spine frame (O, W):
//   p1, p2 = pi(O -+ W s), symmetric about o;
//   M is spanned over C(a) by O, W a and a complex structure on the
//   spine's complement; its bisector has real spine pi(span_R{O, W a});
//   a meridian through a point p is the real span of O, W a, P <P,O> and
//   orthogonal completions, which has real Gram exactly when p lies on B.

#include <optional>
#include <vector>

#include "qbisect/bisector.hpp"
#include "qbisect/isometry.hpp"

namespace qbisect {

template <class S>
struct ComplexSpan {
    ImaginaryDirection<S> a;
    std::vector<HVector<S>> lifts;  // rescaled P, Q, R
    Subspace<S> span;               // C(a)-span of an independent subset
    std::size_t achieved_dim() const { return span.dim(); }
};

/// Complex-type span of three points. Q is rescaled so <P,Q> is real, then R
/// so <Q,R> is real; the direction of Im <R,P> is a (or i when it vanishes).
template <class S>
ComplexSpan<S> complex_span_3pts(const HVector<S>& p, const HVector<S>& q, const HVector<S>& r) {
    if (same_line(p, q) || same_line(q, r) || same_line(p, r)) throw DomainError("complex_span_3pts: points must be distinct");
    const Quaternion<S> pq = herm(q, p);
    const HVector<S> q1 = rescaled(is_zero(pq) ? q : HVector<S>(q * pq));
    const Quaternion<S> qr = herm(r, q1);
    const HVector<S> r1 = rescaled(is_zero(qr) ? r : HVector<S>(r * qr));
    Quaternion<S> rp = herm(r1, p).imag();
    rp = is_zero(rp) ? Quaternion<S>::unit_i() : rescaled(HVector<S>{rp})[0];
    ImaginaryDirection<S> a(rp);
    std::vector<HVector<S>> lifts{p, q1, r1};
    std::vector<HVector<S>> indep;
    for (const auto& v : lifts) {
        indep.push_back(v);
        if (right_rank(indep) < indep.size()) indep.pop_back();
    }
    auto span = subfield_span(indep, SubfieldTag<S>::complex_type(a));
    return ComplexSpan<S>{std::move(a), std::move(lifts), std::move(span)};
}

template <class S>
ComplexSpan<S> complex_span_3pts(const ProjectivePoint<S>& p, const ProjectivePoint<S>& q, const ProjectivePoint<S>& r) {
    return complex_span_3pts(p.lift(), q.lift(), r.lift());
}

/// How the blade's imaginary unit b is derived from M's unit a.
enum class BladeRule {
    Orthogonal,  // b = orthogonal_imaginary(a)
    Cross,       // b = a * orthogonal_imaginary(a), the third axis
};

inline const char* to_string(BladeRule r) { return r == BladeRule::Orthogonal ? "orthogonal" : "cross"; }

template <class S>
ImaginaryDirection<S> partner_direction(const ImaginaryDirection<S>& a, BladeRule rule) {
    const ImaginaryDirection<S> b = orthogonal_imaginary(a);
    if (rule == BladeRule::Orthogonal) return b;
    return ImaginaryDirection<S>(rescaled(HVector<S>{(a.value() * b.value()).imag()})[0]);
}

template <class S>
struct Blade {
    ImaginaryDirection<S> a;         // M = C(a)-span of the frame
    ImaginaryDirection<S> b;         // N = C(b)-span of the frame
    std::vector<HVector<S>> frame;   // real Gram; frame[0] is the center lift

    Subspace<S> m() const { return Subspace<S>{frame, SubfieldTag<S>::complex_type(a)}; }
    Subspace<S> n() const { return Subspace<S>{frame, SubfieldTag<S>::complex_type(b)}; }
    Subspace<S> s() const { return Subspace<S>{frame, SubfieldTag<S>::real()}; }

    Reflection<S> reflection_m() const { return reflection_in_complex_type(a, frame); }
    Reflection<S> reflection_n() const { return reflection_in_complex_type(b, frame); }

    bool contains(const ProjectivePoint<S>& p) const { return contains_line(n(), p.lift()); }
};

/// N with M cap N = S for the real frame of S inside M = C(a)-span.
template <class S>
Blade<S> blade_from(const ImaginaryDirection<S>& a, std::vector<HVector<S>> frame, BladeRule rule = BladeRule::Orthogonal) {
    if (frame.empty() || frame.size() != frame[0].size()) throw DimensionError("blade_from: frame must have n+1 vectors");
    for (auto& v : frame) v = rescaled(v);
    subfield_span(frame, SubfieldTag<S>::real());  // validates real Gram and independence
    return Blade<S>{a, partner_direction(a, rule), std::move(frame)};
}

/// Selector of a fan blade: the complex structure a of M and a quaternion rho
/// rotating the completed frame of the spine's complement.
template <class S>
struct FanSelector {
    ImaginaryDirection<S> a;
    Quaternion<S> rho;
};

template <class S>
class Fan {
public:
    Fan(Bisector<S> parent, const ProjectivePoint<S>& center)
        : parent_(std::move(parent)), frame_(parent_.spine_frame(center)) {
        auto [q1, q2] = symmetric_pair(frame_);
        q1_ = std::move(q1);
        q2_ = std::move(q2);
        const std::size_t dim = frame_.o.size();
        perp_ = orth_complement(std::vector<HVector<S>>{frame_.o, frame_.w}, dim).basis;
    }

    explicit Fan(Bisector<S> parent) : Fan(parent, parent.default_center()) {}

    const Bisector<S>& parent() const { return parent_; }
    const SpineFrame<S>& frame() const { return frame_; }
    ProjectivePoint<S> center() const { return ProjectivePoint<S>(frame_.o); }
    /// Symmetric pair about the center on the geodesic orthogonal to sigma.
    const HVector<S>& q1() const { return q1_; }
    const HVector<S>& q2() const { return q2_; }
    std::size_t n() const { return frame_.o.size() - 1; }

    /// fan_blade: frame (O, W a, E_1 rho, ..., E_{n-1} rho).
    Blade<S> blade(const FanSelector<S>& sel, BladeRule rule = BladeRule::Orthogonal) const {
        if (is_zero(sel.rho)) throw DomainError("fan selector: rho must be nonzero");
        std::vector<HVector<S>> f{frame_.o, frame_.w * sel.a.value()};
        for (const auto& e : perp_) f.push_back(rescaled(HVector<S>(e * sel.rho)));
        return blade_from(sel.a, std::move(f), rule);
    }

    Blade<S> default_blade(BladeRule rule = BladeRule::Orthogonal) const {
        return blade(FanSelector<S>{ImaginaryDirection<S>(Quaternion<S>::unit_i()), Quaternion<S>(S(1))}, rule);
    }

    /// Real frame of a meridian of M = C(a)-span containing sigma_M and p:
    /// O, W a, P <P,O>, completed by an orthogonal basis of the complement.
    std::vector<HVector<S>> meridian_through(const ImaginaryDirection<S>& a, const HVector<S>& p) const {
        const HVector<S> wa = frame_.w * a.value();
        const HVector<S> pa = rescaled(HVector<S>(p * herm(p, frame_.o)));
        if (!is_real(herm(wa, pa)))
            throw DomainError("meridian_through: alignment impossible, the point is not on the bisector");
        std::vector<HVector<S>> f{frame_.o, wa};
        if (right_rank(std::vector<HVector<S>>{frame_.o, frame_.w, pa}) == 2) {
            for (const auto& e : perp_) f.push_back(e);
            return f;
        }
        f.push_back(pa);
        const auto comp = orth_complement(f, frame_.o.size());
        f.insert(f.end(), comp.basis.begin(), comp.basis.end());
        return f;
    }

    /// A blade containing o and p: K = complex_span_3pts(p1, p2, p), the
    /// meridian of K's bisector through p, and its orthogonal partner.
    Blade<S> blade_containing(const ProjectivePoint<S>& p, BladeRule rule = BladeRule::Orthogonal) const {
        if (!parent_.contains(p)) throw DomainError("blade_containing: point is not on the bisector");
        if (parent_.spine_contains(p)) return default_blade(rule);
        const ComplexSpan<S> k = complex_span_3pts(q1_, q2_, p.lift());
        return blade_from(k.a, meridian_through(k.a, p.lift()), rule);
    }

private:
    Bisector<S> parent_;
    SpineFrame<S> frame_;
    HVector<S> q1_;
    HVector<S> q2_;
    std::vector<HVector<S>> perp_;
};

/// Random negative point of the C(b)-span of a frame (center coefficient 1).
template <class S>
ProjectivePoint<S> sample_blade_point(const Blade<S>& bl, SplitMix64& rng, const SamplingBounds& bounds = {}) {
    auto coef = [&] { return Quaternion<S>(random_scalar<S>(rng, bounds)) + bl.b.value() * random_scalar<S>(rng, bounds); };
    HVector<S> tail(bl.frame[0].size());
    for (std::size_t k = 1; k < bl.frame.size(); ++k) tail += bl.frame[k] * coef();
    Quaternion<S> c0 = coef();
    if (is_zero(c0)) c0 = Quaternion<S>(S(1));
    return detail::negative_mix(HVector<S>(bl.frame[0] * c0), std::move(tail), "sample_blade_point");
}

/// The four conditions for an orthogonal pair (M, N) plus the intersection rank test.
struct OrthogonalPairReport {
    bool m_symplectic = false;    // up to positive scale |a|^2
    bool n_symplectic = false;
    bool m_involution = false;    // modulo center
    bool n_involution = false;
    bool commute = false;         // modulo center
    bool m_preserves_n = false;   // I_M(N) = N
    bool n_preserves_m = false;   // I_N(M) = M
    bool intersection_is_s = false;
    std::size_t intersection_dim = 0;

    bool all() const {
        return m_symplectic && n_symplectic && m_involution && n_involution && commute && m_preserves_n && n_preserves_m &&
               intersection_is_s;
    }
};

namespace detail {

/// g maps the real span of `gens` onto (span of gens) * u.
template <class S>
bool maps_span_to_twist(const Matrix<S>& g, const std::vector<HVector<S>>& gens, const Quaternion<S>& u) {
    std::vector<HVector<S>> image, twisted;
    for (const auto& x : gens) {
        image.push_back(g * x);
        twisted.push_back(x * u);
    }
    const std::size_t ri = real_rank(image);
    if (ri != real_rank(twisted)) return false;
    image.insert(image.end(), twisted.begin(), twisted.end());
    return real_rank(image) == ri;
}

}  // namespace detail

template <class S>
OrthogonalPairReport check_orthogonal_pair(const Blade<S>& bl) {
    OrthogonalPairReport r;
    const auto im = bl.reflection_m();
    const auto in = bl.reflection_n();
    r.m_symplectic = form_scale(im.g).has_value();
    r.n_symplectic = form_scale(in.g).has_value();
    r.m_involution = is_projective_involution(im.g);
    r.n_involution = is_projective_involution(in.g);
    r.commute = commute_mod_center(im.g, in.g);
    // I_M(V_N) = V_N a and I_N(V_M) = V_M b: projectively N and M are preserved.
    const auto gens_n = real_generators(bl.n());
    const auto gens_m = real_generators(bl.m());
    r.m_preserves_n = detail::maps_span_to_twist(im.g, gens_n, bl.a.value());
    r.n_preserves_m = detail::maps_span_to_twist(in.g, gens_m, bl.b.value());
    const auto gens_s = real_generators(bl.s());
    const auto inter = real_intersection(gens_m, gens_n);
    r.intersection_dim = inter.size();
    bool s_inside = true;
    for (const auto& x : gens_s) s_inside = s_inside && contains_vector(bl.m(), x) && contains_vector(bl.n(), x);
    r.intersection_is_s = s_inside && inter.size() == real_rank(gens_s);
    return r;
}

/// Real-linear intersection of two blades' lift spaces and, when it exceeds
/// the center line, a negative witness point other than o lying on both.
template <class S>
struct BladeIntersection {
    std::size_t real_dim = 0;
    std::optional<HVector<S>> witness;
    bool only_center() const { return !witness.has_value(); }
};

template <class S>
BladeIntersection<S> blade_intersection(const Blade<S>& x, const Blade<S>& y) {
    BladeIntersection<S> out;
    const auto inter = real_intersection(real_generators(x.n()), real_generators(y.n()));
    out.real_dim = inter.size();
    const HVector<S>& o = x.frame[0];
    for (const auto& v : inter) {
        if (same_line(v, o)) continue;
        S s = detail::tail_start_scale(o, v);
        for (int k = 0; k < 256; ++k, s /= S(2)) {
            const HVector<S> cand = o + v * s;
            if (classify(cand) == SignClass::Negative) {
                if (!same_line(cand, o)) out.witness = cand;
                break;
            }
        }
        if (out.witness) break;
    }
    return out;
}

/// Exact starlikeness certificate for the segment [o, p] via the blade route.
template <class S>
struct StarlikeCertificate {
    bool endpoints_in_blade = false;   // O and the aligned lift of p lie in V_N
    bool aligned = false;              // <O, P'> is real: the geodesic is pi(span_R{O, P'})
    bool reflection_swaps = false;     // I_N(p1) = p2, hence N lies in B
    bool quadratic_form_vanishes = false;  // |<X,P1>|^2 - |<X,P2>|^2 == 0 on span_R{O, P'}
    bool pass() const { return endpoints_in_blade && aligned && reflection_swaps && quadratic_form_vanishes; }
};

template <class S>
StarlikeCertificate<S> starlike_certificate(const Fan<S>& fan, const ProjectivePoint<S>& p) {
    StarlikeCertificate<S> c;
    const Blade<S> bl = fan.blade_containing(p);
    const HVector<S>& o = fan.frame().o;
    const HVector<S> pa = rescaled(HVector<S>(p.lift() * herm(p.lift(), o)));
    const auto nsub = bl.n();
    c.endpoints_in_blade = contains_vector(nsub, o) && contains_vector(nsub, pa);
    c.aligned = is_real(herm(o, pa));
    const auto in = bl.reflection_n();
    c.reflection_swaps = same_line(HVector<S>(in.g * fan.q1()), fan.q2());
    const Bisector<S>& b = fan.parent();
    auto f = [&](const HVector<S>& x) {
        const auto [l, r] = b.membership_sides(x);
        return S(l - r);
    };
    // Polarization of the real quadratic form X -> |<X,P1>|^2 - |<X,P2>|^2.
    const S cross = S(f(HVector<S>(o + pa)) - f(o) - f(pa));
    c.quadratic_form_vanishes = is_zero(f(o)) && is_zero(f(pa)) && is_zero(cross);
    return c;
}

/// Float sampling of the segment [o, p]: maximal membership residual at m points.
inline double starlike_residual(const Bisector<Float>& b, const ProjectivePoint<Float>& o,
                                const ProjectivePoint<Float>& p, int m) {
    if (same_point(o, p)) return b.residual(o);
    const RealGeodesic<Float> g = geodesic_through(o, p);
    const double t_end = arc_length_end(g);
    double worst = 0;
    for (int k = 0; k < m; ++k) {
        const double t = m == 1 ? t_end : t_end * k / (m - 1);
        worst = std::max(worst, b.residual(point_at(g, t)));
    }
    return worst;
}

}  // namespace qbisect
