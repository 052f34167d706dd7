// Exact certificates: each entry carries rational operands and the claimed
// values; the checker recomputes every identity from the operands alone.

#include <cstdio>
#include <functional>

#include "json_io.hpp"
#include "parallel.hpp"
#include "qbisect/fan.hpp"
#include "qbisect/harness.hpp"
#include "suites.hpp"

namespace qbisect {

using jio::json;
using S = Exact;
using Q = Quaternion<Exact>;
using V = HVector<Exact>;

namespace {

std::string fnv1a64(const std::string& text) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "fnv1a64:%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string digest_of(const json& scenario, const json& entries) {
    json body;
    body["scenario"] = scenario;
    body["entries"] = entries;
    return fnv1a64(body.dump());
}

json entry(const char* kind, json operands, json claims) {
    json e;
    e["kind"] = kind;
    e["operands"] = std::move(operands);
    e["claims"] = std::move(claims);
    e["residual"] = "0";
    return e;
}

/// s = P1 mu + P2 nu with <P_i, x - s> = 0.
std::pair<Q, Q> projection_coefficients(const Bisector<S>& b, const V& x) {
    const V rhs = V(std::vector<Q>{herm(b.p1(), x), herm(b.p2(), x)});
    const V c = solve_right(gram(std::vector<V>{b.p1(), b.p2()}), rhs);
    return {c[0], c[1]};
}

void quaternion_entries(SplitMix64& rng, std::vector<json>& out) {
    const Q a = random_quaternion<S>(rng);
    const Q b = random_quaternion<S>(rng);
    const Q c = random_quaternion<S>(rng);
    const Q ab = a * b;
    out.push_back(entry("associativity", {{"a", jio::quaternion(a)}, {"b", jio::quaternion(b)}, {"c", jio::quaternion(c)}},
                        {{"value", jio::quaternion(Q(ab * c))}}));
    out.push_back(entry("norm_multiplicativity", {{"a", jio::quaternion(a)}, {"b", jio::quaternion(b)}},
                        {{"value", jio::scalar(norm_sq(ab))}}));
    out.push_back(entry("conj_anti_automorphism", {{"a", jio::quaternion(a)}, {"b", jio::quaternion(b)}},
                        {{"value", jio::quaternion(conj(ab))}}));
}

json pair_json(const Bisector<S>& b) { return {{"p1", jio::vector(b.p1())}, {"p2", jio::vector(b.p2())}}; }

json membership_entry(const Bisector<S>& b, const V& x) {
    json ops = pair_json(b);
    ops["x"] = jio::vector(x);
    const auto [l, r] = b.membership_sides(x);
    return entry("bisector_membership", std::move(ops), {{"lhs", jio::scalar(l)}, {"rhs", jio::scalar(r)}});
}

void mostow_entries(SplitMix64& rng, std::size_t n, std::uint64_t fiber, std::vector<json>& out) {
    const auto b = random_bisector<S>(rng, n);
    const auto sl = b.slice_at(sample_spine_point(b, rng));
    for (std::uint64_t f = 0; f < fiber; ++f) out.push_back(membership_entry(b, sample_slice_point(sl, rng).lift()));

    const V x = sample_bisector_point(b, rng).lift();
    {
        const auto [mu, nu] = projection_coefficients(b, x);
        json ops = pair_json(b);
        ops["x"] = jio::vector(x);
        ops["mu"] = jio::quaternion(mu);
        ops["nu"] = jio::quaternion(nu);
        out.push_back(entry("spine_projection", std::move(ops), json::object()));
    }

    const V p = random_ball_point<S>(rng, n).lift();
    const auto [mu, nu] = projection_coefficients(b, p);
    Q rmu, rnu;
    for (;;) {
        rmu = random_quaternion<S>(rng);
        rnu = random_quaternion<S>(rng);
        const V r = b.p1() * rmu + b.p2() * rnu;
        if (!is_zero(r) && classify(r) == SignClass::Negative) break;
    }
    const ProjectivePoint<S> pp(p);
    const ProjectivePoint<S> sp(V(b.p1() * mu + b.p2() * nu));
    const ProjectivePoint<S> rp(V(b.p1() * rmu + b.p2() * rnu));
    json ops = pair_json(b);
    ops["p"] = jio::vector(p);
    ops["mu"] = jio::quaternion(mu);
    ops["nu"] = jio::quaternion(nu);
    ops["r_mu"] = jio::quaternion(rmu);
    ops["r_nu"] = jio::quaternion(rnu);
    out.push_back(entry("triple_real", ops, {{"value", jio::quaternion(hermitian_triple(pp, sp, rp))}}));
    out.push_back(entry("pythagoras", ops,
                        {{"delta_pr", jio::scalar(delta(pp, rp))},
                         {"delta_ps", jio::scalar(delta(pp, sp))},
                         {"delta_sr", jio::scalar(delta(sp, rp))}}));
}

void fan_entries(SplitMix64& rng, std::size_t n, std::uint64_t points, std::vector<json>& out) {
    const auto b = random_bisector<S>(rng, n);
    const Fan<S> fan(b, sample_spine_point(b, rng));
    const Blade<S> bl = fan.blade_containing(sample_bisector_point(b, rng));
    const Q bq = bl.b.value();
    json frame = json::array();
    for (const auto& v : bl.frame) frame.push_back(jio::vector(v));
    for (std::uint64_t m = 0; m < points; ++m) {
        std::vector<Q> c(bl.frame.size());
        for (auto& q : c) q = Q(random_scalar<S>(rng)) + bq * random_scalar<S>(rng);
        if (is_zero(c[0])) c[0] = Q(S(1));
        V tail(bl.frame[0].size());
        for (std::size_t i = 1; i < c.size(); ++i) tail += bl.frame[i] * c[i];
        const S start = detail::tail_start_scale(V(bl.frame[0] * c[0]), tail);
        for (std::size_t i = 1; i < c.size(); ++i) c[i] = c[i] * start;
        V x;
        for (int k = 0;; ++k) {
            if (k == 256) throw DomainError("fan certificate: rejection bound exceeded");
            x = V(bl.frame[0].size());
            for (std::size_t i = 0; i < c.size(); ++i) x += bl.frame[i] * c[i];
            if (!is_zero(x) && classify(x) == SignClass::Negative) break;
            for (std::size_t i = 1; i < c.size(); ++i) c[i] = c[i] * S(S(1) / S(2));
        }
        json coeffs = json::array();
        for (const auto& q : c) coeffs.push_back(jio::quaternion(q));
        json ops = pair_json(b);
        ops["b"] = jio::quaternion(bq);
        ops["frame"] = frame;
        ops["coefficients"] = std::move(coeffs);
        const auto [l, r] = b.membership_sides(x);
        out.push_back(entry("blade_membership", std::move(ops), {{"lhs", jio::scalar(l)}, {"rhs", jio::scalar(r)}}));
    }
}

void starlike_entries(SplitMix64& rng, std::size_t n, std::vector<json>& out) {
    const auto b = random_bisector<S>(rng, n);
    const Fan<S> fan(b, sample_spine_point(b, rng));
    const V p = sample_bisector_point(b, rng).lift();
    const V& o = fan.frame().o;
    const V q = p * herm(p, o);
    json ops = pair_json(b);
    ops["o"] = jio::vector(o);
    ops["q"] = jio::vector(q);
    out.push_back(entry("starlike_segment", std::move(ops), {{"o_q", jio::quaternion(herm(o, q))}}));
}

using Generator = std::function<void(SplitMix64&, std::vector<json>&)>;

// ---- checker ----

struct Operands {
    const json& j;
    std::string path;
    Q q(const char* k) const { return jio::quaternion_from<S>(at(k), path + "." + k); }
    V v(const char* k) const { return jio::vector_from<S>(at(k), path + "." + k); }
    S s(const char* k) const { return jio::scalar_from<S>(at(k), path + "." + k); }
    const json& at(const char* k) const {
        if (!j.contains(k)) throw ConfigError(path + "." + k, "missing");
        return j.at(k);
    }
};

void expect(bool cond, const std::string& what) {
    if (!cond) throw DomainError(what);
}

void check_pair(const V& p1, const V& p2) {
    expect(p1.size() == p2.size() && p1.size() >= 2, "p1, p2 dimension");
    expect(sign_of(form(p1)) < 0, "p1 is not negative");
    expect(form(p1) == form(p2), "<P1,P1> != <P2,P2>");
    expect(!same_line(p1, p2), "p1 = p2");
}

void check_membership(const V& p1, const V& p2, const V& x, const Operands& claims) {
    expect(x.size() == p1.size(), "dimension mismatch");
    expect(!is_zero(x) && sign_of(form(x)) < 0, "x is not negative");
    const S l = norm_sq(herm(x, p1));
    const S r = norm_sq(herm(x, p2));
    expect(l == claims.s("lhs"), "lhs differs from the recomputed value");
    expect(r == claims.s("rhs"), "rhs differs from the recomputed value");
    expect(l == r, "|<X,P1>|^2 != |<X,P2>|^2");
}

void check_entry(const json& e, const std::string& path) {
    if (!e.is_object()) throw DomainError("entry is not an object");
    const std::string kind = e.value("kind", "");
    if (e.value("residual", "") != "0") throw DomainError("residual must be \"0\"");
    const Operands ops{e.at("operands"), path + ".operands"};
    const Operands claims{e.at("claims"), path + ".claims"};
    if (kind == "associativity") {
        const Q a = ops.q("a"), b = ops.q("b"), c = ops.q("c");
        const Q l = (a * b) * c;
        expect(equal(l, Q(a * (b * c))), "(ab)c != a(bc)");
        expect(equal(l, claims.q("value")), "value differs");
    } else if (kind == "norm_multiplicativity") {
        const Q a = ops.q("a"), b = ops.q("b");
        const S v = norm_sq(Q(a * b));
        expect(v == S(norm_sq(a) * norm_sq(b)), "|ab|^2 != |a|^2 |b|^2");
        expect(v == claims.s("value"), "value differs");
    } else if (kind == "conj_anti_automorphism") {
        const Q a = ops.q("a"), b = ops.q("b");
        const Q l = conj(Q(a * b));
        expect(equal(l, Q(conj(b) * conj(a))), "conj(ab) != conj(b) conj(a)");
        expect(equal(l, claims.q("value")), "value differs");
    } else if (kind == "bisector_membership") {
        const V p1 = ops.v("p1"), p2 = ops.v("p2");
        check_pair(p1, p2);
        check_membership(p1, p2, ops.v("x"), claims);
    } else if (kind == "spine_projection") {
        const V p1 = ops.v("p1"), p2 = ops.v("p2"), x = ops.v("x");
        check_pair(p1, p2);
        expect(x.size() == p1.size() && sign_of(form(x)) < 0, "x is not negative");
        expect(norm_sq(herm(x, p1)) == norm_sq(herm(x, p2)), "x is not on the bisector");
        const V s = p1 * ops.q("mu") + p2 * ops.q("nu");
        const V d = x - s;
        expect(is_zero(herm(p1, d)) && is_zero(herm(p2, d)), "s is not the orthogonal projection of x");
        expect(!is_zero(s) && sign_of(form(s)) < 0, "projection is not negative");
        expect(norm_sq(herm(s, p1)) == norm_sq(herm(s, p2)), "projection is not on the real spine");
    } else if (kind == "triple_real" || kind == "pythagoras") {
        const V p1 = ops.v("p1"), p2 = ops.v("p2"), p = ops.v("p");
        check_pair(p1, p2);
        expect(p.size() == p1.size() && sign_of(form(p)) < 0, "p is not negative");
        const V s = p1 * ops.q("mu") + p2 * ops.q("nu");
        expect(is_zero(herm(p1, V(p - s))) && is_zero(herm(p2, V(p - s))), "s is not the orthogonal projection of p");
        const V r = p1 * ops.q("r_mu") + p2 * ops.q("r_nu");
        expect(!is_zero(r) && sign_of(form(r)) < 0, "r is not negative");
        const ProjectivePoint<S> pp(p), sp(s), rp(r);
        if (kind == "triple_real") {
            const Q t = hermitian_triple(pp, sp, rp);
            expect(is_real(t), "triple product is not real");
            expect(equal(t, claims.q("value")), "value differs");
        } else {
            const S dpr = delta(pp, rp), dps = delta(pp, sp), dsr = delta(sp, rp);
            expect(dpr == claims.s("delta_pr") && dps == claims.s("delta_ps") && dsr == claims.s("delta_sr"),
                   "delta values differ");
            expect(dpr == S(dps * dsr), "delta(p,r) != delta(p,s) delta(s,r)");
        }
    } else if (kind == "blade_membership") {
        const V p1 = ops.v("p1"), p2 = ops.v("p2");
        check_pair(p1, p2);
        const Q b = ops.q("b");
        expect(is_imaginary(b) && !is_zero(b), "b must be a nonzero imaginary");
        const json& fj = ops.at("frame");
        const json& cj = ops.at("coefficients");
        expect(fj.is_array() && cj.is_array() && fj.size() == cj.size() && fj.size() == p1.size(), "frame size");
        std::vector<V> frame;
        for (std::size_t i = 0; i < fj.size(); ++i) frame.push_back(jio::vector_from<S>(fj[i], ops.path + ".frame"));
        const Matrix<S> fg = gram(frame);
        for (const auto& q : fg.data()) expect(is_real(q), "frame Gram is not real");
        expect(right_rank(frame) == frame.size(), "frame is dependent");
        V x(p1.size());
        for (std::size_t i = 0; i < cj.size(); ++i) {
            const Q c = jio::quaternion_from<S>(cj[i], ops.path + ".coefficients");
            expect(commutes(c, b), "coefficient outside C(b)");
            x += frame[i] * c;
        }
        check_membership(p1, p2, x, claims);
    } else if (kind == "starlike_segment") {
        const V p1 = ops.v("p1"), p2 = ops.v("p2"), o = ops.v("o"), q = ops.v("q");
        check_pair(p1, p2);
        expect(o.size() == p1.size() && q.size() == p1.size(), "dimension mismatch");
        expect(sign_of(form(o)) < 0 && sign_of(form(q)) < 0, "segment endpoints are not negative");
        const Q oq = herm(o, q);
        expect(is_real(oq), "<O,Q> is not real");
        expect(equal(oq, claims.q("o_q")), "o_q differs");
        auto f = [&](const V& x) { return S(norm_sq(herm(x, p1)) - norm_sq(herm(x, p2))); };
        expect(is_zero(f(o)) && is_zero(f(q)), "endpoint not on the bisector");
        expect(is_zero(S(f(V(o + q)) - f(o) - f(q))), "polarized form does not vanish");
    } else {
        throw DomainError("unknown entry kind '" + kind + "'");
    }
}

}  // namespace

std::string certify(const Scenario& s) {
    if (s.backend != Backend::Exact) throw ConfigError("backend", "certificates require the exact backend");
    validate(s);
    const auto n = static_cast<std::size_t>(s.n);
    std::vector<std::pair<std::string, Generator>> gens;
    std::vector<std::string> uncertified;
    for (const auto& name : s.suites) {
        if (name == "quaternion") {
            gens.emplace_back(name, [](SplitMix64& rng, std::vector<json>& out) { quaternion_entries(rng, out); });
        } else if (name == "mostow") {
            const auto fiber = s.trials_for("mostow_fiber");
            gens.emplace_back(name, [=](SplitMix64& rng, std::vector<json>& out) { mostow_entries(rng, n, fiber, out); });
        } else if (name == "fan") {
            const auto points = s.trials_for("fan_blade_points");
            gens.emplace_back(name, [=](SplitMix64& rng, std::vector<json>& out) { fan_entries(rng, n, points, out); });
        } else if (name == "starlike") {
            gens.emplace_back(name, [=](SplitMix64& rng, std::vector<json>& out) { starlike_entries(rng, n, out); });
        } else {
            uncertified.push_back(name);
        }
    }
    json entries = json::array();
    for (const auto& [name, gen] : gens) {
        const std::size_t idx = detail::suite_index(name);
        const auto chunks = detail::parallel_map<std::vector<json>>(s.trials_for(name), [&](std::size_t k) {
            SplitMix64 rng = SplitMix64(s.seed).split(0xce27 + idx).split(k);
            std::vector<json> out;
            gen(rng, out);
            return out;
        });
        for (const auto& c : chunks)
            for (const auto& e : c) entries.push_back(e);
    }
    json scenario = jio::parse(to_json(s), "scenario");
    json cert;
    cert["schema"] = kCertificateSchema;
    cert["qbisect"] = kVersion;
    cert["scenario"] = scenario;
    cert["uncertified_suites"] = uncertified;
    cert["entry_count"] = entries.size();
    cert["digest"] = digest_of(scenario, entries);
    cert["entries"] = std::move(entries);
    return cert.dump(1);
}

CheckResult check_certificate(std::string_view text) {
    CheckResult r;
    json cert;
    try {
        cert = json::parse(text);
    } catch (const std::exception& e) {
        r.errors.push_back(std::string("unreadable certificate: ") + e.what());
        return r;
    }
    if (!cert.is_object() || cert.value("schema", "") != kCertificateSchema) {
        r.errors.push_back(std::string("schema must be ") + kCertificateSchema);
        return r;
    }
    if (!cert.contains("entries") || !cert["entries"].is_array() || !cert.contains("scenario")) {
        r.errors.push_back("missing scenario or entries");
        return r;
    }
    const json& entries = cert["entries"];
    if (cert.value("digest", "") != digest_of(cert["scenario"], entries)) r.errors.push_back("digest mismatch");
    if (!cert.contains("entry_count") || cert["entry_count"] != entries.size()) r.errors.push_back("entry_count mismatch");
    for (std::size_t i = 0; i < entries.size(); ++i) {
        const std::string path = "entries[" + std::to_string(i) + "]";
        try {
            check_entry(entries[i], path);
        } catch (const std::exception& e) {
            if (r.errors.size() < 50) {
                const std::string kind = entries[i].is_object() ? entries[i].value("kind", "?") : "?";
                r.errors.push_back(path + " (" + kind + "): " + e.what());
            }
        }
    }
    r.entries = entries.size();
    r.ok = r.errors.empty();
    return r;
}

}  // namespace qbisect
