#include "qbisect/harness.hpp"

#include <gmp.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <set>
#include <thread>

#include "json_io.hpp"
#include "qbisect/fan.hpp"
#include "suites.hpp"

namespace qbisect {

using jio::json;

namespace {

const std::map<std::string, std::uint64_t>& trial_defaults() {
    static const std::map<std::string, std::uint64_t> d{
        {"quaternion", 1000}, {"linalg", 100}, {"model", 200},        {"isometry", 20},      {"mostow", 50},
        {"fan", 10},          {"starlike", 20}, {"mostow_fiber", 10}, {"fan_blade_points", 10}, {"starlike_points", 20},
    };
    return d;
}

std::uint64_t uint_field(const json& j, const std::string& path) {
    if (j.is_number_unsigned()) return j.get<std::uint64_t>();
    if (j.is_number_integer()) {
        if (j.get<std::int64_t>() < 0) throw ConfigError(path, "must be nonnegative");
        return static_cast<std::uint64_t>(j.get<std::int64_t>());
    }
    if (j.is_string()) {
        const std::string s = j.get<std::string>();
        char* end = nullptr;
        errno = 0;
        const unsigned long long v = std::strtoull(s.c_str(), &end, 10);
        if (s.empty() || *end != '\0' || errno != 0 || s.front() == '-') throw ConfigError(path, "not an unsigned 64-bit integer");
        return v;
    }
    throw ConfigError(path, "expected an unsigned integer");
}

std::vector<std::string> point_field(const json& j, const std::string& path) {
    if (!j.is_array() || j.empty()) throw ConfigError(path, "expected a ball point (array of quaternions)");
    std::vector<std::string> out;
    for (std::size_t i = 0; i < j.size(); ++i) {
        jio::quaternion_from<Exact>(j[i], path + "[" + std::to_string(i) + "]");
        out.push_back(j[i].dump());
    }
    return out;
}

json point_json(const std::vector<std::string>& coords) {
    json out = json::array();
    for (const auto& c : coords) out.push_back(json::accept(c) ? json::parse(c) : json(c));
    return out;
}

template <class S>
ProjectivePoint<S> point_from_texts(const std::vector<std::string>& coords, const std::string& path) {
    return jio::ball_point_from<S>(point_json(coords), path);
}

template <class S>
Bisector<S> scenario_bisector(const Scenario& s) {
    if (s.p1.empty()) return standard_bisector<S>(static_cast<std::size_t>(s.n));
    const auto a = point_from_texts<S>(s.p1, "bisector.p1");
    const auto b = point_from_texts<S>(s.p2, "bisector.p2");
    if (same_point(a, b)) throw ConfigError("bisector", "p1 and p2 coincide");
    return Bisector<S>(a, b);
}

json suite_json(const SuiteResult& r) {
    json j;
    j["name"] = r.name;
    j["status"] = r.pass() ? "PASS" : "FAIL";
    j["trials"] = r.trials;
    j["passed"] = r.passed;
    j["failed"] = r.failed;
    j["max_residual"] = r.max_residual;
    j["violations"] = r.violations;
    j["warnings"] = r.warnings;
    json c = json::object();
    for (const auto& [k, v] : r.counters) c[k] = v;
    j["counters"] = std::move(c);
    return j;
}

json versions_json() {
    json v;
    v["qbisect"] = kVersion;
    v["gmp"] = gmp_version;
#if defined(__clang__)
    v["compiler"] = std::string("clang ") + __clang_version__;
#elif defined(__GNUC__)
    v["compiler"] = std::string("gcc ") + __VERSION__;
#else
    v["compiler"] = "unknown";
#endif
    v["schemas"] = {{"report", kReportSchema}, {"scenario", kScenarioSchema}, {"certificate", kCertificateSchema}};
    return v;
}

}  // namespace

const char* to_string(Backend b) { return b == Backend::Exact ? "exact" : "float"; }

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"quaternion", "linalg", "model", "isometry", "mostow", "fan", "starlike"};
    return names;
}

std::uint64_t default_trials(const std::string& suite) {
    const auto& d = trial_defaults();
    const auto it = d.find(suite);
    if (it == d.end()) throw ConfigError("trials." + suite, "unknown trial key");
    return it->second;
}

std::uint64_t Scenario::trials_for(const std::string& suite) const {
    const auto it = trials.find(suite);
    return it != trials.end() ? it->second : default_trials(suite);
}

void validate(const Scenario& s) {
    if (s.n < 1 || s.n > 8) throw ConfigError("n", "must be in 1..8");
    if (!(s.tolerance > 0) || !std::isfinite(s.tolerance)) throw ConfigError("tolerance", "must be a positive number");
    std::set<std::string> seen;
    for (std::size_t i = 0; i < s.suites.size(); ++i) {
        const auto& name = s.suites[i];
        const std::string path = "suites[" + std::to_string(i) + "]";
        if (std::find(suite_names().begin(), suite_names().end(), name) == suite_names().end())
            throw ConfigError(path, "unknown suite '" + name + "'");
        if (!seen.insert(name).second) throw ConfigError(path, "duplicate suite '" + name + "'");
    }
    for (const auto& [k, v] : s.trials) {
        (void)v;
        if (!trial_defaults().count(k)) throw ConfigError("trials." + k, "unknown trial key");
    }
    if (s.p1.empty() != s.p2.empty()) throw ConfigError("bisector", "p1 and p2 must both be given");
    if (!s.p1.empty()) {
        if (s.p1.size() != static_cast<std::size_t>(s.n)) throw ConfigError("bisector.p1", "must have n coordinates");
        if (s.p2.size() != static_cast<std::size_t>(s.n)) throw ConfigError("bisector.p2", "must have n coordinates");
        scenario_bisector<Exact>(s);
    }
}

Scenario parse_scenario(std::string_view text) {
    const json j = jio::parse(text, "$");
    if (!j.is_object()) throw ConfigError("$", "scenario must be a JSON object");
    Scenario s;
    for (const auto& [key, v] : j.items()) {
        if (key == "schema") {
            if (v != kScenarioSchema) throw ConfigError("schema", std::string("expected \"") + kScenarioSchema + "\"");
        } else if (key == "n") {
            if (!v.is_number_integer()) throw ConfigError("n", "expected an integer");
            s.n = v.get<int>();
        } else if (key == "backend") {
            if (v == "exact") s.backend = Backend::Exact;
            else if (v == "float") s.backend = Backend::Float;
            else throw ConfigError("backend", "expected \"exact\" or \"float\"");
        } else if (key == "seed") {
            s.seed = uint_field(v, "seed");
        } else if (key == "trials") {
            if (v.is_object()) {
                for (const auto& [k, c] : v.items()) s.trials[k] = uint_field(c, "trials." + k);
            } else {
                const auto c = uint_field(v, "trials");
                for (const auto& name : suite_names()) s.trials[name] = c;
            }
        } else if (key == "tolerance") {
            if (!v.is_number()) throw ConfigError("tolerance", "expected a number");
            s.tolerance = v.get<double>();
        } else if (key == "suites") {
            if (!v.is_array()) throw ConfigError("suites", "expected an array of suite names");
            s.suites.clear();
            for (std::size_t i = 0; i < v.size(); ++i) {
                if (!v[i].is_string()) throw ConfigError("suites[" + std::to_string(i) + "]", "expected a string");
                s.suites.push_back(v[i].get<std::string>());
            }
        } else if (key == "bisector") {
            if (!v.is_object() || !v.contains("p1") || !v.contains("p2") || v.size() != 2)
                throw ConfigError("bisector", "expected {\"p1\": point, \"p2\": point}");
            s.p1 = point_field(v["p1"], "bisector.p1");
            s.p2 = point_field(v["p2"], "bisector.p2");
        } else if (key == "negative_control") {
            if (!v.is_boolean()) throw ConfigError("negative_control", "expected a boolean");
            s.negative_control = v.get<bool>();
        } else {
            throw ConfigError(key, "unknown field");
        }
    }
    validate(s);
    return s;
}

namespace {

json scenario_json(const Scenario& s) {
    json j;
    j["schema"] = kScenarioSchema;
    j["n"] = s.n;
    j["backend"] = to_string(s.backend);
    j["seed"] = s.seed;
    json t = json::object();
    for (const auto& [k, v] : trial_defaults()) t[k] = s.trials_for(k);
    j["trials"] = std::move(t);
    j["tolerance"] = s.tolerance;
    j["suites"] = s.suites;
    if (!s.p1.empty()) j["bisector"] = {{"p1", point_json(s.p1)}, {"p2", point_json(s.p2)}};
    j["negative_control"] = s.negative_control;
    return j;
}

}  // namespace

std::string to_json(const Scenario& s) { return scenario_json(s).dump(2); }

bool Report::pass() const {
    return std::all_of(suites.begin(), suites.end(), [](const SuiteResult& r) { return r.pass(); });
}

Report run(const Scenario& s) {
    validate(s);
    set_tolerance(s.tolerance);
    Report r{s, {}};
    for (const auto& name : s.suites) r.suites.push_back(detail::run_suite(s, name));
    return r;
}

std::string to_json(const Report& r) {
    json j;
    j["schema"] = kReportSchema;
    j["versions"] = versions_json();
    j["seed"] = r.scenario.seed;
    j["scenario"] = scenario_json(r.scenario);
    json suites = json::array();
    for (const auto& s : r.suites) suites.push_back(suite_json(s));
    j["suites"] = std::move(suites);
    j["status"] = r.pass() ? "PASS" : "FAIL";
    return j.dump(2);
}

int exit_code(const Report& r) { return r.pass() ? 0 : 1; }

unsigned thread_count() {
    unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("QBISECT_THREADS")) {
        char* end = nullptr;
        const long cap = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && cap > 0) hw = std::min(hw, static_cast<unsigned>(cap));
    }
    return hw;
}

namespace {

template <class S>
std::string sample_typed(const Scenario& s, std::string_view what, std::size_t count) {
    const Bisector<S> b = scenario_bisector<S>(s);
    static const std::vector<std::string_view> kinds{"bisector", "spine", "slice", "blade"};
    const auto it = std::find(kinds.begin(), kinds.end(), what);
    if (it == kinds.end()) throw ConfigError("what", "expected bisector | spine | slice | blade");
    SplitMix64 rng = SplitMix64(s.seed).split(0x5a11 + static_cast<std::uint64_t>(it - kinds.begin()));
    std::vector<CloudEntry> pts;
    std::optional<Slice<S>> slice;
    std::optional<Blade<S>> blade;
    if (what == "slice") slice = b.slice_at(b.default_center());
    if (what == "blade") blade = Fan<S>(b).default_blade();
    for (std::size_t k = 0; k < count; ++k) {
        std::optional<ProjectivePoint<S>> p;
        if (what == "bisector") p = sample_bisector_point(b, rng);
        else if (what == "spine") p = sample_spine_point(b, rng);
        else if (what == "slice") p = sample_slice_point(*slice, rng);
        else p = sample_blade_point(*blade, rng);
        pts.push_back(cloud_entry(*p, b.residual(*p), b.contains(*p)));
    }
    return point_cloud_json(what, b.n(), pts);
}

}  // namespace

std::string sample(const Scenario& s, std::string_view what, std::size_t count) {
    validate(s);
    set_tolerance(s.tolerance);
    return s.backend == Backend::Exact ? sample_typed<Exact>(s, what, count) : sample_typed<Float>(s, what, count);
}

namespace {

template <class S>
json bisector_header(const Bisector<S>& b) {
    json j;
    j["n"] = b.n();
    j["p1"] = jio::vector(b.p1());
    j["p2"] = jio::vector(b.p2());
    j["norm"] = jio::scalar(b.norm());
    j["t"] = jio::quaternion(b.t());
    j["t_real"] = b.t_real();
    j["center"] = jio::ball_point(b.default_center());
    return j;
}

template <class S>
ToolOutput bisector_typed(std::string_view p1_text, std::string_view p2_text, std::string_view emit, std::uint64_t seed,
                          std::size_t count) {
    const auto a = jio::ball_point_from<S>(jio::parse(p1_text, "p1"), "p1");
    const auto c = jio::ball_point_from<S>(jio::parse(p2_text, "p2"), "p2");
    if (a.n() != c.n()) throw ConfigError("p2", "dimension differs from p1");
    if (same_point(a, c)) throw ConfigError("p2", "coincides with p1");
    const Bisector<S> b(a, c);
    SplitMix64 rng(seed);
    json out;
    out["bisector"] = bisector_header(b);
    out["emit"] = std::string(emit);
    json samples = json::array();
    std::size_t members = 0;
    double worst = 0;
    auto record = [&](const ProjectivePoint<S>& p, json extra) {
        const bool in = b.contains(p);
        const double res = b.residual(p);
        members += in;
        worst = std::max(worst, res);
        extra["ball"] = jio::ball_point(p);
        extra["member"] = in;
        extra["residual"] = res;
        samples.push_back(std::move(extra));
    };
    bool pass = true;
    if (emit == "spine") {
        out["quaternionic_spine"] = json::array({jio::vector(b.p1()), jio::vector(b.p2())});
        const auto f = b.spine_frame();
        out["spine_frame"] = {{"o", jio::vector(f.o)}, {"w", jio::vector(f.w)}};
        for (std::size_t k = 0; k < count; ++k) {
            const auto p = sample_spine_point(b, rng);
            const bool on = b.real_spine_contains(p);
            pass = pass && on;
            record(p, json{{"real_spine", on}});
        }
    } else if (emit == "slice") {
        const auto sl = b.slice_at(b.default_center());
        json basis = json::array();
        for (const auto& v : sl.basis) basis.push_back(jio::vector(v));
        out["slice"] = {{"spine_point", jio::ball_point(b.default_center())}, {"basis", std::move(basis)}};
        for (std::size_t k = 0; k < count; ++k) record(sample_slice_point(sl, rng), json::object());
    } else if (emit == "samples") {
        for (std::size_t k = 0; k < count; ++k) {
            const auto p = sample_bisector_point(b, rng);
            const bool proj = b.real_spine_contains(b.project_to_spine(p));
            pass = pass && proj;
            record(p, json{{"projects_to_real_spine", proj}});
        }
    } else {
        throw ConfigError("emit", "expected spine | slice | samples");
    }
    pass = pass && members == count;
    out["samples"] = std::move(samples);
    out["counts"] = {{"total", count}, {"members", members}};
    out["max_residual"] = worst;
    out["status"] = pass ? "PASS" : "FAIL";
    return {out.dump(2), pass};
}

}  // namespace

ToolOutput bisector_tool(std::string_view p1_json, std::string_view p2_json, std::string_view emit, Backend backend,
                         std::uint64_t seed, std::size_t count) {
    return backend == Backend::Exact ? bisector_typed<Exact>(p1_json, p2_json, emit, seed, count)
                                     : bisector_typed<Float>(p1_json, p2_json, emit, seed, count);
}

namespace {

std::uint64_t count_field(const json& j, const char* key, std::uint64_t dflt, std::uint64_t max) {
    if (!j.contains(key)) return dflt;
    const auto v = uint_field(j[key], key);
    if (v > max) throw ConfigError(key, "must be at most " + std::to_string(max));
    return v;
}

json blade_json(const Blade<Exact>& bl) {
    json frame = json::array();
    for (const auto& v : bl.frame) frame.push_back(jio::vector(v));
    return {{"a", jio::quaternion(bl.a.value())}, {"b", jio::quaternion(bl.b.value())}, {"frame", std::move(frame)}};
}

}  // namespace

ToolOutput fan_tool(std::string_view config_json) {
    const json cfg = jio::parse(config_json, "$");
    if (!cfg.is_object()) throw ConfigError("$", "fan config must be a JSON object");
    static const std::set<std::string> known{"n", "seed", "center", "selectors", "trials", "blade_points", "p1", "p2"};
    for (const auto& [k, v] : cfg.items()) {
        (void)v;
        if (!known.count(k)) throw ConfigError(k, "unknown field");
    }
    Scenario s;
    if (cfg.contains("n")) {
        if (!cfg["n"].is_number_integer()) throw ConfigError("n", "expected an integer");
        s.n = cfg["n"].get<int>();
    }
    s.seed = cfg.contains("seed") ? uint_field(cfg["seed"], "seed") : 1;
    if (cfg.contains("p1") != cfg.contains("p2")) throw ConfigError("p1", "p1 and p2 must both be given");
    if (cfg.contains("p1")) {
        s.p1 = point_field(cfg["p1"], "p1");
        s.p2 = point_field(cfg["p2"], "p2");
    }
    validate(s);
    const std::uint64_t selectors = count_field(cfg, "selectors", 4, 32);
    const std::uint64_t trials = count_field(cfg, "trials", 10, 100000);
    const std::uint64_t blade_points = count_field(cfg, "blade_points", 10, 100000);

    using S = Exact;
    const Bisector<S> b = scenario_bisector<S>(s);
    std::optional<ProjectivePoint<S>> center;
    std::string center_kind = "midpoint";
    if (!cfg.contains("center") || cfg["center"] == "midpoint") {
        center = b.default_center();
        if (!b.t_real()) center_kind = "spine point pi(P1 + P2)";
    } else if (cfg["center"].is_object() && cfg["center"].contains("mu") && cfg["center"].contains("nu")) {
        const auto mu = jio::quaternion_from<S>(cfg["center"]["mu"], "center.mu");
        const auto nu = jio::quaternion_from<S>(cfg["center"]["nu"], "center.nu");
        try {
            center = b.spine_point(mu, nu);
        } catch (const DomainError& e) {
            throw ConfigError("center", e.what());
        }
        center_kind = "params";
    } else {
        throw ConfigError("center", "expected \"midpoint\" or {\"mu\": q, \"nu\": q}");
    }
    const Fan<S> fan(b, *center);
    SplitMix64 rng(s.seed);
    bool pass = true;

    json out;
    out["bisector"] = bisector_header(b);
    out["center"] = {{"kind", center_kind}, {"ball", jio::ball_point(*center)}};
    out["symmetric_pair"] = {jio::ball_point(ProjectivePoint<S>(fan.q1())), jio::ball_point(ProjectivePoint<S>(fan.q2()))};

    auto sample_count = [&](const Blade<S>& bl) {
        std::uint64_t in = 0;
        for (std::uint64_t m = 0; m < blade_points; ++m) in += b.contains(sample_blade_point(bl, rng));
        return in;
    };

    std::vector<Blade<S>> decomposition;
    json blades = json::array();
    for (std::uint64_t i = 0; i < selectors; ++i) {
        const FanSelector<S> sel = i == 0 ? FanSelector<S>{ImaginaryDirection<S>(Quaternion<S>::unit_i()), Quaternion<S>(S(1))}
                                          : FanSelector<S>{random_direction<S>(rng), random_nonzero_quaternion<S>(rng)};
        const Blade<S> bl = fan.blade(sel);
        const auto rep = check_orthogonal_pair(bl);
        const bool has_center = bl.contains(fan.center());
        const bool swaps = same_line(HVector<S>(bl.reflection_n().g * fan.q1()), fan.q2());
        const auto in = sample_count(bl);
        const bool ok = rep.all() && has_center && swaps && in == blade_points;
        pass = pass && ok;
        json j = blade_json(bl);
        j["index"] = i;
        j["selector"] = {{"a", jio::quaternion(sel.a.value())}, {"rho", jio::quaternion(sel.rho)}};
        j["orthogonal_pair"] = {{"symplectic", rep.m_symplectic && rep.n_symplectic},
                                {"involutions", rep.m_involution && rep.n_involution},
                                {"commute", rep.commute},
                                {"mutually_invariant", rep.m_preserves_n && rep.n_preserves_m},
                                {"intersection_is_real_form", rep.intersection_is_s}};
        j["contains_center"] = has_center;
        j["reflection_swaps_pair"] = swaps;
        j["samples"] = blade_points;
        j["samples_in_bisector"] = in;
        j["status"] = ok ? "PASS" : "FAIL";
        blades.push_back(std::move(j));
        decomposition.push_back(bl);
    }
    out["blades"] = std::move(blades);

    json pairs = json::array();
    std::uint64_t beyond = 0;
    for (std::size_t i = 0; i < decomposition.size(); ++i)
        for (std::size_t k = i + 1; k < decomposition.size(); ++k) {
            const auto inter = blade_intersection(decomposition[i], decomposition[k]);
            json j{{"i", i}, {"j", k}, {"real_dim", inter.real_dim}, {"only_center", inter.only_center()}};
            if (inter.witness) {
                ++beyond;
                const ProjectivePoint<S> w(*inter.witness);
                j["witness"] = jio::ball_point(w);
                j["witness_in_both"] = decomposition[i].contains(w) && decomposition[k].contains(w);
                j["witness_in_bisector"] = b.contains(w);
            }
            pairs.push_back(std::move(j));
        }
    out["pairwise_intersections"] = std::move(pairs);
    out["pairs_meeting_beyond_center"] = beyond;

    json containing = json::array();
    for (std::uint64_t t = 0; t < trials; ++t) {
        const auto p = sample_bisector_point(b, rng);
        const Blade<S> bl = fan.blade_containing(p);
        const bool has_p = bl.contains(p);
        const bool has_o = bl.contains(fan.center());
        const auto in = sample_count(bl);
        const bool ok = has_p && has_o && in == blade_points;
        pass = pass && ok;
        containing.push_back({{"point", jio::ball_point(p)},
                              {"a", jio::quaternion(bl.a.value())},
                              {"contains_point", has_p},
                              {"contains_center", has_o},
                              {"samples_in_bisector", in},
                              {"status", ok ? "PASS" : "FAIL"}});
        decomposition.push_back(bl);
    }
    out["blade_containing"] = std::move(containing);

    // Two decompositions: b = orthogonal_imaginary(a) and b = a x orthogonal_imaginary(a).
    // Every blade of the first contains x = pi(O + W k s); the cross blade below does not.
    const HVector<S> wk = fan.frame().w * Quaternion<S>::unit_k();
    const ProjectivePoint<S> x(HVector<S>(fan.frame().o + wk * negative_step(fan.frame().o, wk)));
    bool all_contain = true;
    for (const auto& bl : decomposition) all_contain = all_contain && bl.contains(x);
    const Blade<S> cross = fan.default_blade(BladeRule::Cross);
    const bool cross_misses = !cross.contains(x);
    const auto cross_in = sample_count(cross);
    const bool distinct = all_contain && cross_misses && cross_in == blade_points && b.real_spine_contains(x);
    pass = pass && distinct;
    out["distinct_decompositions"] = {{"rules", {to_string(BladeRule::Orthogonal), to_string(BladeRule::Cross)}},
                                      {"witness_point", jio::ball_point(x)},
                                      {"witness_on_real_spine", b.real_spine_contains(x)},
                                      {"orthogonal_rule_blades_checked", decomposition.size()},
                                      {"all_orthogonal_rule_blades_contain_witness", all_contain},
                                      {"cross_blade", blade_json(cross)},
                                      {"cross_blade_contains_witness", !cross_misses},
                                      {"cross_blade_samples_in_bisector", cross_in},
                                      {"distinct", distinct}};
    out["status"] = pass ? "PASS" : "FAIL";
    return {out.dump(2), pass};
}

}  // namespace qbisect
