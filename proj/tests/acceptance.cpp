// Acceptance runner: one line per criterion, exit 0 iff every selected criterion passes.
//   qbisect_acceptance [--criterion N]

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <functional>
#include <string>
#include <vector>

#include "qbisect/fan.hpp"
#include "qbisect/harness.hpp"

namespace {

using namespace qbisect;

using S = Exact;
using Q = Quaternion<Exact>;
using V = HVector<Exact>;
using FQ = Quaternion<Float>;
using FV = HVector<Float>;

constexpr std::uint64_t kSeed = 20240601;

struct Outcome {
    bool pass = true;
    std::string detail;
};

void fail(Outcome& o, const std::string& why) {
    if (o.pass) o.detail = why;
    o.pass = false;
}

Q rand_quat(SplitMix64& rng, int bound = 9) {
    auto r = [&] {
        Exact x(rng.uniform_int(-bound, bound), rng.uniform_int(1, bound));
        x.canonicalize();
        return x;
    };
    return {r(), r(), r(), r()};
}

FV to_float(const V& v) {
    FV out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = {v[i].re.get_d(), v[i].x.get_d(), v[i].y.get_d(), v[i].z.get_d()};
    return out;
}

// Projection onto the quaternionic line spanned by u, v by direct elimination
// of the 2x2 Gram system; <u,u> and the Schur complement are real.
V project_oracle(const V& u, const V& v, const V& x) {
    const Q uu = herm(u, u), uv = herm(u, v), vu = herm(v, u), vv = herm(v, v);
    const Q ux = herm(u, x), vx = herm(v, x);
    const S schur = vv.re - norm_sq(uv) / uu.re;
    const Q beta = (vx - vu * ux * S(S(1) / uu.re)) * S(S(1) / schur);
    const Q alpha = (ux - uv * beta) * S(S(1) / uu.re);
    return u * alpha + v * beta;
}

bool equidistant(const V& x, const V& p1, const V& p2) { return norm_sq(herm(x, p1)) == norm_sq(herm(x, p2)); }

// c1: ring laws on 10^4 exact triples, product checked against the 4x4
// left-multiplication matrix.
Outcome criterion1() {
    Outcome o;
    SplitMix64 rng = SplitMix64(kSeed).split(1);
    for (int t = 0; t < 10000; ++t) {
        const Q a = rand_quat(rng), b = rand_quat(rng), c = rand_quat(rng);
        const Q ab = a * b;
        const Q oracle(a.re * b.re - a.x * b.x - a.y * b.y - a.z * b.z, a.x * b.re + a.re * b.x - a.z * b.y + a.y * b.z,
                       a.y * b.re + a.z * b.x + a.re * b.y - a.x * b.z, a.z * b.re - a.y * b.x + a.x * b.y + a.re * b.z);
        if (ab != oracle) fail(o, "product differs from the matrix oracle");
        if ((ab * c) != (a * (b * c))) fail(o, "associativity");
        if (norm_sq(ab) != norm_sq(a) * norm_sq(b)) fail(o, "norm multiplicativity");
        if (conj(ab) != conj(b) * conj(a)) fail(o, "conjugation anti-automorphism");
        if (!is_similar(a, conj(a))) fail(o, "a not similar to conj(a)");
    }
    if (o.pass) o.detail = "10000 triples";
    return o;
}

// c2: Mostow fibration for n = 2, 3.
Outcome criterion2() {
    Outcome o;
    std::size_t fibers = 0, projections = 0;
    for (std::size_t n : {2u, 3u}) {
        SplitMix64 rng = SplitMix64(kSeed).split(2).split(n);
        Bisector<S> b = standard_bisector<S>(n);
        for (int t = 0; t < 1000; ++t) {
            if (t % 100 == 0 && t > 0) b = random_bisector<S>(rng, n);
            const auto s = sample_spine_point(b, rng);
            if (!equidistant(s.lift(), b.p1(), b.p2())) fail(o, "spine sample off sigma");
            const auto sl = b.slice_at(s);
            for (int u = 0; u < 10; ++u) {
                const auto p = sample_slice_point(sl, rng);
                ++fibers;
                if (!equidistant(p.lift(), b.p1(), b.p2())) fail(o, "fiber point off the bisector");
                if (!same_line(project_oracle(b.p1(), b.p2(), p.lift()), s.lift())) fail(o, "fiber point projects elsewhere");
            }
            const auto p = sample_bisector_point(b, rng);
            ++projections;
            const V pr = project_oracle(b.p1(), b.p2(), p.lift());
            if (!equidistant(p.lift(), b.p1(), b.p2())) fail(o, "bisector sample off the bisector");
            if (!equidistant(pr, b.p1(), b.p2())) fail(o, "projection not on sigma");
        }
    }
    if (o.pass) o.detail = std::to_string(fibers) + " fiber points, " + std::to_string(projections) + " projections";
    return o;
}

// c3: real triple product, and the worked value.
Outcome criterion3() {
    Outcome o;
    SplitMix64 rng = SplitMix64(kSeed).split(3);
    int closed_form = 0;
    Bisector<S> b = standard_bisector<S>(2);
    for (int t = 0; t < 1000; ++t) {
        if (t % 10 == 0) b = random_bisector<S>(rng, 2 + static_cast<std::size_t>(t / 10 % 2));
        const auto p = sample_bisector_point(b, rng);
        const ProjectivePoint<S> s(project_oracle(b.p1(), b.p2(), p.lift()));
        ProjectivePoint<S> r = s;
        for (;;) {
            const V cand = b.p1() * rand_quat(rng) + b.p2() * rand_quat(rng);
            if (!is_zero(cand) && classify(cand) == SignClass::Negative) {
                r = ProjectivePoint<S>(cand);
                break;
            }
        }
        if (!is_real(hermitian_triple(p, s, r))) fail(o, "non-real triple product");
    }
    // Standard spine closed form: (|z|^2 - 1) |conj(z) w - 1|^2.
    const Bisector<S> st = standard_bisector<S>(2);
    for (int t = 0; t < 200; ++t) {
        const Q z = rand_quat(rng, 4) * S(S(1) / S(9)), zp = rand_quat(rng, 4) * S(S(1) / S(9));
        const Q w = rand_quat(rng, 4) * S(S(1) / S(9));
        const auto p = ball<S>({z, zp});
        const auto tp = hermitian_triple(p, st.project_to_spine(p), ball<S>({w, Q()}));
        if (tp != Q((norm_sq(z) - S(1)) * norm_sq(Q(conj(z) * w - Q(S(1)))))) fail(o, "closed form mismatch");
        ++closed_form;
    }
    const Q half(S(S(1) / S(2)));
    const auto p = ball<S>({Q::unit_j() * half, Q::unit_k() * half});
    const auto tp = hermitian_triple(p, st.project_to_spine(p), ball<S>({half, Q()}));
    Exact expected(-51, 64);
    if (tp != Q(expected)) fail(o, "worked example gave " + to_string(tp));
    if (o.pass) o.detail = "1000 configurations, " + std::to_string(closed_form) + " closed-form checks, example = -51/64";
    return o;
}

// c4: Pythagoras, exact and float.
Outcome criterion4() {
    Outcome o;
    SplitMix64 rng = SplitMix64(kSeed).split(4);
    double worst = 0;
    for (int t = 0; t < 1000; ++t) {
        const std::size_t n = 2 + static_cast<std::size_t>(t % 2);
        const Bisector<S> b = random_bisector<S>(rng, n);
        const auto p = sample_bisector_point(b, rng);
        const ProjectivePoint<S> s(project_oracle(b.p1(), b.p2(), p.lift()));
        V rv;
        for (;;) {
            rv = b.p1() * rand_quat(rng) + b.p2() * rand_quat(rng);
            if (!is_zero(rv) && classify(rv) == SignClass::Negative) break;
        }
        const ProjectivePoint<S> r(rv);
        if (delta(p, r) != delta(p, s) * delta(s, r)) fail(o, "exact Pythagoras");

        const ProjectivePoint<Float> pf(to_float(p.lift())), sf(to_float(s.lift())), rf(to_float(rv));
        const double lhs = delta(pf, rf), rhs = delta(pf, sf) * delta(sf, rf);
        worst = std::max(worst, std::fabs(lhs - rhs) / std::max(1.0, std::fabs(lhs)));
    }
    if (worst > 1e-9) fail(o, "float residual " + std::to_string(worst));
    char buf[96];
    std::snprintf(buf, sizeof buf, "1000 exact, float max residual %.3g", worst);
    if (o.pass) o.detail = buf;
    return o;
}

bool involution_mod_center(const Matrix<S>& g) {
    const Matrix<S> g2 = g * g;
    const Q c = g2(0, 0);
    if (!is_real(c) || is_zero(c)) return false;
    for (std::size_t i = 0; i < g2.rows(); ++i)
        for (std::size_t j = 0; j < g2.cols(); ++j)
            if (g2(i, j) != (i == j ? c : Q())) return false;
    return true;
}

// c5: orthogonal pairs of complex-type submanifolds.
Outcome criterion5() {
    Outcome o;
    SplitMix64 rng = SplitMix64(kSeed).split(5);
    for (int t = 0; t < 100; ++t) {
        const std::size_t n = 2 + static_cast<std::size_t>(t % 2);
        const Fan<S> fan(random_bisector<S>(rng, n));
        Q a;
        do a = Q(S(0), rand_quat(rng).x, rand_quat(rng).y, rand_quat(rng).z);
        while (is_zero(a));
        Q rho;
        do rho = rand_quat(rng);
        while (is_zero(rho));
        const auto bl = fan.blade(FanSelector<S>{ImaginaryDirection<S>(a), rho}, t % 3 == 0 ? BladeRule::Cross : BladeRule::Orthogonal);
        const auto im = bl.reflection_m().g, in = bl.reflection_n().g;
        const auto rep = check_orthogonal_pair(bl);
        if (!form_scale(im) || !form_scale(in)) fail(o, "reflection not symplectic up to scale");
        if (!involution_mod_center(im) || !involution_mod_center(in)) fail(o, "reflection not an involution mod center");
        const Matrix<S> mn = im * in, nm = in * im;
        if (!(mn == nm || mn == Matrix<S>(-nm))) fail(o, "reflections do not commute mod center");
        if (!rep.intersection_is_s || rep.intersection_dim != n + 1) fail(o, "M cap N differs from S");
        if (!rep.all()) fail(o, "orthogonal pair report");
    }
    if (o.pass) o.detail = "100 pairs";
    return o;
}

// c6: fan decomposition.
Outcome criterion6() {
    Outcome o;
    std::size_t blade_points = 0, meeting_pairs = 0, pairs = 0, witnesses = 0;
    bool distinct = true;
    for (std::size_t n : {2u, 3u}) {
        SplitMix64 rng = SplitMix64(kSeed).split(6).split(n);
        const Bisector<S> b = random_bisector<S>(rng, n);
        const Fan<S> fan(b);
        const V& c = fan.frame().o;
        for (int t = 0; t < 200; ++t) {
            const auto p = sample_bisector_point(b, rng);
            const auto bl = fan.blade_containing(p);
            if (!bl.contains(p) || !bl.contains(fan.center())) fail(o, "blade_containing misses p or o");
            for (int u = 0; u < 100; ++u) {
                const auto x = sample_blade_point(bl, rng);
                ++blade_points;
                if (!equidistant(x.lift(), b.p1(), b.p2())) fail(o, "blade point off the bisector");
            }
        }
        for (int t = 0; t < 20; ++t) {
            auto selector = [&] {
                Q a;
                do a = Q(S(0), rand_quat(rng).x, rand_quat(rng).y, rand_quat(rng).z);
                while (is_zero(a));
                Q rho;
                do rho = rand_quat(rng);
                while (is_zero(rho));
                return FanSelector<S>{ImaginaryDirection<S>(a), rho};
            };
            const auto x = fan.blade(selector()), y = fan.blade(selector());
            const auto r = blade_intersection(x, y);
            ++pairs;
            if (!r.only_center()) {
                ++meeting_pairs;
                const ProjectivePoint<S> w(*r.witness);
                if (x.contains(w) && y.contains(w) && !same_point(w, fan.center())) ++witnesses;
            }
        }
        // x = pi(O + W k s) lies in every blade of the orthogonal rule but not in the
        // default blade of the cross rule, so the two decompositions differ.
        const S s = negative_step(c, fan.frame().w);
        const ProjectivePoint<S> x(c + fan.frame().w * Q::unit_k() * s);
        const Q axes[] = {Q::unit_i(), Q::unit_j(), Q(S(0), S(1), S(1), S(0)), Q(S(0), S(2), S(-3), S(0))};
        bool in_all = true;
        for (const auto& a : axes) in_all = in_all && fan.blade(FanSelector<S>{ImaginaryDirection<S>(a), Q(S(1))}).contains(x);
        const bool out_cross = !fan.default_blade(BladeRule::Cross).contains(x);
        distinct = distinct && in_all && out_cross && equidistant(x.lift(), b.p1(), b.p2());
    }
    if (!distinct) fail(o, "decompositions not shown distinct");
    const bool intersections_ok = meeting_pairs == 0;
    std::string detail = std::to_string(blade_points) + " blade points in B; distinct decompositions " +
                         (distinct ? "yes" : "no") + "; " + std::to_string(meeting_pairs) + "/" + std::to_string(pairs) +
                         " selector pairs meet beyond o (" + std::to_string(witnesses) + " verified witnesses)";
    if (!intersections_ok) {
        o.pass = false;
        o.detail = "pairwise intersection clause fails: " + detail;
    } else if (o.pass) {
        o.detail = detail;
    }
    return o;
}

// c7: starlike certificates and float residuals.
Outcome criterion7() {
    Outcome o;
    SplitMix64 rng = SplitMix64(kSeed).split(7);
    double worst = 0;
    for (int t = 0; t < 100; ++t) {
        const std::size_t n = 2 + static_cast<std::size_t>(t % 2);
        const Bisector<S> b = random_bisector<S>(rng, n);
        const Fan<S> fan(b);
        const auto p = sample_bisector_point(b, rng);
        if (!starlike_certificate(fan, p).pass()) fail(o, "certificate rejected");
        const Bisector<Float> bf(ProjectivePoint<Float>(to_float(b.p1())), ProjectivePoint<Float>(to_float(b.p2())));
        worst = std::max(worst, starlike_residual(bf, ProjectivePoint<Float>(to_float(fan.frame().o)),
                                                  ProjectivePoint<Float>(to_float(p.lift())), 20));
    }
    if (worst > 1e-9) fail(o, "float residual " + std::to_string(worst));
    char buf[96];
    std::snprintf(buf, sizeof buf, "100 certificates, float max residual %.3g", worst);
    if (o.pass) o.detail = buf;
    return o;
}

// c8: the bisector is determined by its real spine.
Outcome criterion8() {
    Outcome o;
    SplitMix64 rng = SplitMix64(kSeed).split(8);
    std::size_t agreements = 0;
    for (int t = 0; t < 50; ++t) {
        const std::size_t n = 2 + static_cast<std::size_t>(t % 2);
        const Bisector<S> b = random_bisector<S>(rng, n);
        const auto c = sample_spine_point(b, rng);
        const Bisector<S> r = bisector_from_real_spine(b.spine_frame(c));
        if (same_line(r.p1(), b.p1()) || same_line(r.p1(), b.p2())) fail(o, "rebuilt pair is not an alternative pair");
        for (const V* v : {&b.p1(), &b.p2()})
            if (!contains_line(r.spine().subspace, *v)) fail(o, "Sigma differs");
        for (const V* v : {&r.p1(), &r.p2()})
            if (!contains_line(b.spine().subspace, *v)) fail(o, "Sigma differs");
        for (int u = 0; u < 100; ++u) {
            ProjectivePoint<S> x = c;
            if (u % 2 == 0) {
                x = sample_spine_point(b, rng);
            } else {
                for (;;) {
                    const V cand = b.p1() * rand_quat(rng) + b.p2() * rand_quat(rng);
                    if (!is_zero(cand) && classify(cand) == SignClass::Negative) {
                        x = ProjectivePoint<S>(cand);
                        break;
                    }
                }
            }
            const bool in_b = equidistant(x.lift(), b.p1(), b.p2());
            const bool in_r = equidistant(x.lift(), r.p1(), r.p2());
            if (in_b != in_r) fail(o, "sigma membership disagrees");
            if (u % 2 == 0 && !in_b) fail(o, "spine sample off sigma");
            ++agreements;
        }
    }
    if (o.pass) o.detail = "50 bisectors, " + std::to_string(agreements) + " agreeing samples";
    return o;
}

// c9: delta on the standard spine against the Poincare ball model of real hyperbolic 4-space.
Outcome criterion9() {
    Outcome o;
    SplitMix64 rng = SplitMix64(kSeed).split(9);
    auto point = [&] {
        for (;;) {
            FQ z(rng.uniform01() * 2 - 1, rng.uniform01() * 2 - 1, rng.uniform01() * 2 - 1, rng.uniform01() * 2 - 1);
            if (norm_sq(z) < 0.81) return z;
        }
    };
    double worst = 0;
    for (int t = 0; t < 1000; ++t) {
        const FQ z = point(), w = point();
        const double d = delta(ball<Float>({z, FQ()}), ball<Float>({w, FQ()}));
        const double zz = norm_sq(z), ww = norm_sq(w), diff = norm_sq(FQ(z - w));
        const double cosh_d = 1 + 2 * diff / ((1 - zz) * (1 - ww));
        const double oracle = (1 + cosh_d) / 2;
        worst = std::max(worst, std::fabs(d - oracle) / oracle);
    }
    if (worst > 1e-12) fail(o, "relative error " + std::to_string(worst));
    char buf[96];
    std::snprintf(buf, sizeof buf, "1000 pairs, max relative error %.3g", worst);
    if (o.pass) o.detail = buf;
    return o;
}

// c10: reproducibility of reports and certificates.
Outcome criterion10() {
    Outcome o;
    Scenario s;
    s.seed = kSeed;
    for (const auto& name : suite_names()) s.trials[name] = 3;
    const std::string r1 = to_json(run(s)), r2 = to_json(run(s));
    if (r1 != r2) fail(o, "exact reports differ");
    Scenario f = s;
    f.backend = Backend::Float;
    if (to_json(run(f)) != to_json(run(f))) fail(o, "float reports differ");
    const std::string c1 = certify(s), c2 = certify(s);
    if (c1 != c2) fail(o, "certificates differ");
    Scenario other = s;
    other.seed = kSeed + 1;
    if (to_json(run(other)) == r1) fail(o, "seed has no effect");
    if (o.pass) o.detail = "reports " + std::to_string(r1.size()) + " bytes, certificate " + std::to_string(c1.size()) + " bytes";
    return o;
}

struct Criterion {
    int id;
    double budget_s;
    std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
    const std::vector<Criterion> all{{1, 5, criterion1},  {2, 60, criterion2},  {3, 5, criterion3},  {4, 10, criterion4},
                                     {5, 30, criterion5}, {6, 120, criterion6}, {7, 30, criterion7}, {8, 30, criterion8},
                                     {9, 5, criterion9},  {10, 60, criterion10}};
    int only = 0;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) {
            only = std::atoi(argv[++i]);
        } else {
            std::fprintf(stderr, "usage: %s [--criterion N]\n", argv[0]);
            return 2;
        }
    }
    set_tolerance(1e-9);
    bool ok = true;
    bool ran = false;
    for (const auto& c : all) {
        if (only != 0 && c.id != only) continue;
        ran = true;
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail = std::string("exception: ") + e.what();
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (secs > c.budget_s) {
            o.pass = false;
            o.detail += " [over the " + std::to_string(static_cast<int>(c.budget_s)) + " s budget]";
        }
        std::printf("criterion %d: %s (%.2fs) %s\n", c.id, o.pass ? "PASS" : "FAIL", secs, o.detail.c_str());
        std::fflush(stdout);
        ok = ok && o.pass;
    }
    if (!ran) {
        std::fprintf(stderr, "no criterion %d\n", only);
        return 2;
    }
    return ok ? 0 : 1;
}
