#include "suites.hpp"

#include <algorithm>

#include "parallel.hpp"
#include "qbisect/fan.hpp"

namespace qbisect::detail {

namespace {

constexpr std::size_t kMaxViolations = 10;

struct Trial {
    bool ok = true;
    double residual = 0;
    std::string failure;
    std::map<std::string, std::uint64_t> counters;

    void require(bool cond, const std::string& what) {
        if (cond) return;
        if (ok) failure = what;
        ok = false;
    }
    void residual_of(double r) { residual = std::max(residual, r); }
};

template <class S>
double qres(const Quaternion<S>& a, const Quaternion<S>& b) {
    return std::max({relative_residual(a.re, b.re), relative_residual(a.x, b.x), relative_residual(a.y, b.y),
                     relative_residual(a.z, b.z)});
}

template <class S>
double matrix_res(const Matrix<S>& a, const Matrix<S>& b) {
    double r = 0;
    for (std::size_t k = 0; k < a.data().size(); ++k) r = std::max(r, qres(a.data()[k], b.data()[k]));
    return r;
}

/// Negative point of the quaternionic spine: pi(P1 mu + P2 nu), mu, nu arbitrary.
template <class S>
ProjectivePoint<S> sample_sigma_line_point(const Bisector<S>& b, SplitMix64& rng) {
    for (int attempt = 0; attempt < 1000; ++attempt) {
        const HVector<S> v = b.p1() * random_quaternion<S>(rng) + b.p2() * random_quaternion<S>(rng);
        if (!is_zero(v) && classify(v) == SignClass::Negative) return ProjectivePoint<S>(v);
    }
    throw DomainError("sample_sigma_line_point: rejection bound exceeded");
}

template <class S>
void quaternion_trial(SplitMix64& rng, Trial& t) {
    const auto a = random_quaternion<S>(rng);
    const auto b = random_quaternion<S>(rng);
    const auto c = random_quaternion<S>(rng);
    const Quaternion<S> ab = a * b;
    const Quaternion<S> l = ab * c;
    const Quaternion<S> r = a * (b * c);
    const S nab = norm_sq(ab);
    const S nanb = S(norm_sq(a) * norm_sq(b));
    const Quaternion<S> cab = conj(ab);
    const Quaternion<S> cbca = conj(b) * conj(a);
    t.require(equal(l, r), "associativity");
    t.require(scalar_eq(nab, nanb), "norm multiplicativity");
    t.require(equal(cab, cbca), "conj anti-automorphism");
    t.require(is_similar(a, conj(a)), "a similar to conj(a)");
    t.residual_of(std::max({qres(l, r), relative_residual(nab, nanb), qres(cab, cbca)}));
}

template <class S>
void linalg_trial(SplitMix64& rng, Trial& t, std::size_t n) {
    const std::size_t dim = n + 1;
    Matrix<S> a(dim, dim);
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t k = 0; k < dim; ++k) a(i, k) = random_quaternion<S>(rng);
    if (rank(a) == dim) {
        const HVector<S> x = random_vector<S>(rng, dim);
        const HVector<S> c = a * x;
        const HVector<S> y = solve_right(a, c);
        const HVector<S> ay = a * y;
        t.require(equal(ay, c), "solve_right residual");
        const Matrix<S> ainv = a * inverse(a);
        t.require(equal(ainv, Matrix<S>::identity(dim)), "inverse");
        t.residual_of(matrix_res(ainv, Matrix<S>::identity(dim)));
        const Signature sig = signature(Matrix<S>(a.adjoint() * Matrix<S>::form_matrix(dim) * a));
        t.require(sig == Signature{n, 1, 0}, "Sylvester inertia of A* J A");
        ++t.counters["invertible"];
    }
    const HVector<S> v = random_ball_point<S>(rng, n).lift();
    const auto comp = orth_complement(std::vector<HVector<S>>{v}, dim);
    t.require(comp.dim() == n, "complement dimension");
    for (const auto& e : comp.basis) t.require(is_zero(herm(v, e)), "complement orthogonality");
    t.require(signature(gram(comp.basis)) == Signature{n, 0, 0}, "complement is positive definite");
    const Quaternion<S> lam = random_nonzero_quaternion<S>(rng);
    t.require(right_rank(std::vector<HVector<S>>{v, v * lam}) == 1, "right rank of a line");
    std::vector<HVector<S>> gens{v, v * Quaternion<S>::unit_i(), v * Quaternion<S>::unit_j(), v * Quaternion<S>::unit_k()};
    t.require(real_rank(gens) == 4, "real rank of a line");
}

template <class S>
void model_trial(SplitMix64& rng, Trial& t, std::size_t n) {
    const auto p = random_ball_point<S>(rng, n);
    const auto q = random_ball_point<S>(rng, n);
    t.require(same_point(lift(to_ball(p)), p), "ball round trip");
    t.require(scalar_eq(delta(p, p), S(1)), "delta(p,p) = 1");
    if (same_point(p, q)) {
        ++t.counters["coincident"];
        return;
    }
    const S d = delta(p, q);
    const HVector<S> pv = p.lift() * random_unit_quaternion<S>(rng) * S(3);
    const HVector<S> qv = q.lift() * random_nonzero_quaternion<S>(rng);
    const S d2 = delta_of(pv, qv);
    t.require(scalar_eq(d, d2), "delta independent of lifts");
    t.require(scalar_eq(d, delta(q, p)), "delta symmetric");
    t.require(sign_of(S(d - S(1))) > 0, "delta > 1 for distinct points");
    t.residual_of(relative_residual(d, d2));
    const auto g = geodesic_through(p, q);
    t.require(same_point(g.point_at_ratio(S(1)), q), "geodesic through q");
    t.require(is_real(herm(g.v, g.w)) && is_zero(herm(g.v, g.w)), "geodesic frame orthogonal");
    const auto m = g.symmetric_point();
    t.require(scalar_eq(delta(p, m), d), "reflected point equidistant");
}

template <class S>
void isometry_trial(SplitMix64& rng, Trial& t, std::size_t n, std::uint64_t k) {
    const auto b = random_bisector<S>(rng, n);
    const Fan<S> fan(b, sample_spine_point(b, rng));
    const FanSelector<S> sel{random_direction<S>(rng), random_nonzero_quaternion<S>(rng)};
    const Blade<S> bl = fan.blade(sel, k % 2 ? BladeRule::Cross : BladeRule::Orthogonal);
    const auto r = check_orthogonal_pair(bl);
    t.require(r.m_symplectic && r.n_symplectic, "reflections preserve the form");
    t.require(r.m_involution && r.n_involution, "reflections are involutions mod center");
    t.require(r.commute, "I_M, I_N commute mod center");
    t.require(r.m_preserves_n && r.n_preserves_m, "mutual invariance");
    t.require(r.intersection_is_s, "M cap N = S");
    const Isometry<S> im(bl.reflection_m().g);
    const Isometry<S> in(bl.reflection_n().g);
    const Isometry<S> prod = im * in;
    const Matrix<S> id = prod.matrix() * prod.inverse().matrix();
    t.require(equal(id, Matrix<S>::identity(n + 1)), "group closure");
    t.residual_of(matrix_res(id, Matrix<S>::identity(n + 1)));
}

template <class S>
void mostow_trial(SplitMix64& rng, Trial& t, std::size_t n, std::uint64_t fiber, bool control) {
    const auto b = random_bisector<S>(rng, n);
    const auto sp = sample_spine_point(b, rng);
    t.require(b.real_spine_contains(sp), "spine sample on the real spine");
    const auto sl = b.slice_at(sp);
    for (std::uint64_t f = 0; f < fiber; ++f) {
        HVector<S> v = sample_slice_point(sl, rng).lift();
        if (control) v = v + b.p1() * S(S(1) / S(16));
        const ProjectivePoint<S> x(v);
        t.require(b.contains(x), "slice point on the bisector");
        t.residual_of(b.residual(x));
        ++t.counters["fiber_points"];
    }
    const auto x = sample_bisector_point(b, rng);
    t.require(b.real_spine_contains(b.project_to_spine(x)), "projection of a bisector point lies on the real spine");
    const auto p = random_ball_point<S>(rng, n);
    const auto q = b.project_to_spine(p);
    const auto r = sample_sigma_line_point(b, rng);
    const Quaternion<S> tr = hermitian_triple(p, q, r);
    t.require(is_real(tr), "hermitian triple real");
    t.residual_of(std::sqrt(ScalarTraits<S>::to_double(imag_norm_sq(tr))) /
                  std::max(1.0, std::sqrt(ScalarTraits<S>::to_double(norm_sq(tr)))));
    const S lhs = delta(p, r);
    const S rhs = S(delta(p, q) * delta(q, r));
    t.require(scalar_eq(lhs, rhs), "pythagorean identity");
    t.residual_of(relative_residual(lhs, rhs));
}

template <class S>
void fan_trial(SplitMix64& rng, Trial& t, std::size_t n, std::uint64_t points, std::uint64_t k) {
    const auto b = random_bisector<S>(rng, n);
    const auto o = sample_spine_point(b, rng);
    const Fan<S> fan(b, o);
    const auto p = sample_bisector_point(b, rng);
    const BladeRule rule = k % 2 ? BladeRule::Cross : BladeRule::Orthogonal;
    const Blade<S> bl = fan.blade_containing(p, rule);
    t.require(bl.contains(p), "p in its blade");
    t.require(bl.contains(o), "center in the blade");
    const Matrix<S> in = bl.reflection_n().g;
    t.require(same_line(HVector<S>(in * fan.q1()), fan.q2()), "I_N swaps the symmetric pair");
    const ProjectivePoint<S> q1(fan.q1());
    const ProjectivePoint<S> q2(fan.q2());
    const auto iq1 = apply(in, q1);
    for (std::uint64_t m = 0; m < points; ++m) {
        const auto y = sample_blade_point(bl, rng);
        t.require(b.contains(y), "blade point on the bisector");
        t.residual_of(b.residual(y));
        const S d1 = delta(y, q1);
        const S di = delta(apply(in, y), iq1);
        const S d2 = delta(y, q2);
        t.require(scalar_eq(d1, di) && scalar_eq(di, d2), "reflection delta identity");
        ++t.counters["blade_points"];
    }
    const Blade<S> other = fan.blade(FanSelector<S>{random_direction<S>(rng), random_nonzero_quaternion<S>(rng)}, rule);
    ++t.counters["blade_pairs"];
    if (!blade_intersection(bl, other).only_center()) ++t.counters["blade_pairs_meeting_beyond_center"];
}

template <class S>
void starlike_trial(SplitMix64& rng, Trial& t, std::size_t n, std::uint64_t points, double tau) {
    const auto b = random_bisector<S>(rng, n);
    const auto o = sample_spine_point(b, rng);
    const Fan<S> fan(b, o);
    const auto p = sample_bisector_point(b, rng);
    const auto c = starlike_certificate(fan, p);
    t.require(c.endpoints_in_blade, "segment endpoints in the blade");
    t.require(c.aligned, "aligned lifts");
    t.require(c.reflection_swaps, "blade reflection swaps the symmetric pair");
    t.require(c.quadratic_form_vanishes, "equidistance form vanishes on the segment");
    const Bisector<Float> bf(ProjectivePoint<Float>(to_float(b.p1())), ProjectivePoint<Float>(to_float(b.p2())));
    const double res = starlike_residual(bf, ProjectivePoint<Float>(to_float(o.lift())),
                                         ProjectivePoint<Float>(to_float(p.lift())), static_cast<int>(points));
    t.require(res <= tau, "sampled segment residual above tolerance");
    t.residual_of(res);
}

template <class F>
SuiteResult drive(const Scenario& s, const std::string& name, F trial) {
    SuiteResult r;
    r.name = name;
    r.trials = s.trials_for(name);
    const std::size_t idx = suite_index(name);
    auto outcomes = parallel_map<Trial>(r.trials, [&](std::size_t k) {
        SplitMix64 rng = trial_stream(s.seed, idx, k);
        Trial t;
        try {
            trial(rng, t, k);
        } catch (const std::exception& e) {
            t.ok = false;
            t.failure = std::string("exception: ") + e.what();
        }
        return t;
    });
    for (std::size_t k = 0; k < outcomes.size(); ++k) {
        const Trial& t = outcomes[k];
        if (t.ok) {
            ++r.passed;
        } else {
            ++r.failed;
            if (r.violations.size() < kMaxViolations) r.violations.push_back("trial " + std::to_string(k) + ": " + t.failure);
        }
        r.max_residual = std::max(r.max_residual, t.residual);
        for (const auto& [key, v] : t.counters) r.counters[key] += v;
    }
    if (r.trials == 0) r.warnings.push_back("trials = 0: vacuous pass");
    if (r.failed > r.violations.size())
        r.warnings.push_back("violation list truncated to the first " + std::to_string(kMaxViolations));
    return r;
}

template <class S>
SuiteResult run_typed(const Scenario& s, const std::string& name) {
    const auto n = static_cast<std::size_t>(s.n);
    if (name == "quaternion") return drive(s, name, [&](SplitMix64& rng, Trial& t, std::uint64_t) { quaternion_trial<S>(rng, t); });
    if (name == "linalg") return drive(s, name, [&](SplitMix64& rng, Trial& t, std::uint64_t) { linalg_trial<S>(rng, t, n); });
    if (name == "model") return drive(s, name, [&](SplitMix64& rng, Trial& t, std::uint64_t) { model_trial<S>(rng, t, n); });
    if (name == "isometry")
        return drive(s, name, [&](SplitMix64& rng, Trial& t, std::uint64_t k) { isometry_trial<S>(rng, t, n, k); });
    if (name == "mostow") {
        const auto fiber = s.trials_for("mostow_fiber");
        return drive(s, name, [&](SplitMix64& rng, Trial& t, std::uint64_t) {
            mostow_trial<S>(rng, t, n, fiber, s.negative_control);
        });
    }
    if (name == "fan") {
        const auto points = s.trials_for("fan_blade_points");
        return drive(s, name, [&](SplitMix64& rng, Trial& t, std::uint64_t k) { fan_trial<S>(rng, t, n, points, k); });
    }
    if (name == "starlike") {
        const auto points = s.trials_for("starlike_points");
        return drive(s, name, [&](SplitMix64& rng, Trial& t, std::uint64_t) {
            starlike_trial<S>(rng, t, n, points, s.tolerance);
        });
    }
    throw ConfigError("suites", "unknown suite '" + name + "'");
}

}  // namespace

std::size_t suite_index(const std::string& name) {
    const auto& names = suite_names();
    const auto it = std::find(names.begin(), names.end(), name);
    if (it == names.end()) throw ConfigError("suites", "unknown suite '" + name + "'");
    return static_cast<std::size_t>(it - names.begin());
}

SuiteResult run_suite(const Scenario& s, const std::string& name) {
    return s.backend == Backend::Exact ? run_typed<Exact>(s, name) : run_typed<Float>(s, name);
}

}  // namespace qbisect::detail
