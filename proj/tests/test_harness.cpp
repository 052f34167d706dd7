#include <cstdlib>
#include <string>

#include <json.hpp>

#include "qbisect/harness.hpp"
#include "support.hpp"

namespace {

using namespace qt;
using nlohmann::json;

std::string config_error_path(const std::string& text) {
    try {
        parse_scenario(text);
    } catch (const ConfigError& e) {
        return e.path();
    }
    return "<accepted>";
}

Scenario small(std::vector<std::string> suites, std::uint64_t trials) {
    Scenario s;
    s.suites = std::move(suites);
    for (const auto& name : s.suites) s.trials[name] = trials;
    return s;
}

TEST(Scenario, Defaults) {
    const Scenario s;
    EXPECT_EQ(s.n, 2);
    EXPECT_EQ(s.backend, Backend::Exact);
    EXPECT_EQ(s.seed, 1u);
    EXPECT_EQ(s.tolerance, 1e-9);
    EXPECT_EQ(s.suites, suite_names());
    EXPECT_EQ(suite_names().size(), 7u);
    EXPECT_NO_THROW(validate(s));
    EXPECT_EQ(parse_scenario("{}").suites, suite_names());
}

TEST(Scenario, JsonRoundTrip) {
    Scenario s;
    s.n = 3;
    s.backend = Backend::Float;
    s.seed = 0xDEADBEEFCAFEull;
    s.suites = {"mostow", "fan"};
    s.trials["mostow"] = 7;
    s.p1 = {"1/3", "0", "0"};
    s.p2 = {"0", "1/4 j", "0"};
    const std::string text = to_json(s);
    const Scenario r = parse_scenario(text);
    EXPECT_EQ(to_json(r), text);
    EXPECT_EQ(r.seed, s.seed);
    EXPECT_EQ(r.trials_for("mostow"), 7u);
    EXPECT_EQ(r.trials_for("fan"), default_trials("fan"));
}

TEST(Scenario, ConfigErrorsNameTheField) {
    EXPECT_EQ(config_error_path(R"({"n": 0})"), "n");
    EXPECT_EQ(config_error_path(R"({"n": "two"})"), "n");
    EXPECT_EQ(config_error_path(R"({"backend": "quad"})"), "backend");
    EXPECT_EQ(config_error_path(R"({"suites": ["mostow", "nope"]})"), "suites[1]");
    EXPECT_EQ(config_error_path(R"({"suites": ["fan", "fan"]})"), "suites[1]");
    EXPECT_EQ(config_error_path(R"({"trials": {"bogus": 3}})"), "trials.bogus");
    EXPECT_EQ(config_error_path(R"({"tolerance": -1})"), "tolerance");
    EXPECT_EQ(config_error_path(R"({"frobnicate": 1})"), "frobnicate");
    EXPECT_EQ(config_error_path(R"({"schema": "other/9"})"), "schema");
    EXPECT_EQ(config_error_path(R"({"bisector": {"p1": ["1/2", "0"]}})"), "bisector");
    EXPECT_EQ(config_error_path(R"({"bisector": {"p1": ["1/2", "0"], "p2": ["1/2", "0"]}})"), "bisector");
    EXPECT_EQ(config_error_path(R"({"bisector": {"p1": ["1/2"], "p2": ["1/3"]}})"), "bisector.p1");
    EXPECT_THROW(parse_scenario("{not json"), ConfigError);
    EXPECT_THROW(parse_scenario("[1, 2]"), ConfigError);
}

TEST(Run, SmallScenarioPasses) {
    const auto r = run(small(suite_names(), 2));
    EXPECT_TRUE(r.pass());
    EXPECT_EQ(exit_code(r), 0);
    ASSERT_EQ(r.suites.size(), 7u);
    const json j = json::parse(to_json(r));
    EXPECT_EQ(j["schema"], "qbisect-report/1");
    EXPECT_EQ(j["status"], "PASS");
    EXPECT_EQ(j["suites"].size(), 7u);
    for (const auto& s : j["suites"]) EXPECT_EQ(s["status"], "PASS") << s["name"];
}

TEST(Run, FloatBackend) {
    Scenario s = small({"mostow", "starlike"}, 3);
    s.backend = Backend::Float;
    const auto r = run(s);
    EXPECT_TRUE(r.pass());
    for (const auto& suite : r.suites) EXPECT_LE(suite.max_residual, 1e-9);
}

TEST(Run, NegativeControlFails) {
    Scenario s = small({"mostow"}, 3);
    s.negative_control = true;
    const auto r = run(s);
    EXPECT_FALSE(r.pass());
    EXPECT_EQ(exit_code(r), 1);
    EXPECT_GT(r.suites[0].failed, 0u);
    EXPECT_FALSE(r.suites[0].violations.empty());
}

TEST(Run, ZeroTrialsWarns) {
    const auto r = run(small({"quaternion"}, 0));
    EXPECT_TRUE(r.pass());
    EXPECT_EQ(r.suites[0].trials, 0u);
    EXPECT_FALSE(r.suites[0].warnings.empty());
}

TEST(Run, Deterministic) {
    const Scenario s = small({"quaternion", "mostow", "fan"}, 3);
    const std::string a = to_json(run(s));
    ::setenv("QBISECT_THREADS", "1", 1);
    EXPECT_EQ(thread_count(), 1u);
    const std::string b = to_json(run(s));
    ::unsetenv("QBISECT_THREADS");
    EXPECT_EQ(a, b);
    Scenario t = s;
    t.seed = 2;
    EXPECT_NE(to_json(run(t)), a);
}

TEST(Sample, PointCloudFormat) {
    Scenario s;
    for (const char* what : {"bisector", "spine", "slice", "blade"}) {
        const json j = json::parse(sample(s, what, 5));
        EXPECT_EQ(j["what"], what);
        EXPECT_EQ(j["n"], 2);
        EXPECT_EQ(j["count"], 5);
        ASSERT_EQ(j["points"].size(), 5u);
        for (const auto& p : j["points"]) {
            EXPECT_EQ(p["ball"].size(), 2u);
            EXPECT_EQ(p["ball"][0].size(), 4u);
            EXPECT_TRUE(p["member"].get<bool>()) << what;
            EXPECT_EQ(p["residual"].get<double>(), 0.0);
        }
    }
    EXPECT_EQ(sample(s, "bisector", 4), sample(s, "bisector", 4));
    EXPECT_ANY_THROW(sample(s, "teapot", 1));
}

TEST(Certificate, RoundTripAndTamper) {
    Scenario s = small({"quaternion", "mostow", "fan", "starlike"}, 1);
    const std::string cert = certify(s);
    EXPECT_EQ(cert, certify(s));
    const auto ok = check_certificate(cert);
    EXPECT_TRUE(ok.ok);
    EXPECT_GT(ok.entries, 0u);

    json j = json::parse(cert);
    auto& v = j["entries"][0]["claims"]["value"][0];
    v = v.get<std::string>() + "1";
    const auto bad = check_certificate(j.dump(1));
    EXPECT_FALSE(bad.ok);
    EXPECT_FALSE(bad.errors.empty());

    s.backend = Backend::Float;
    EXPECT_THROW(certify(s), ConfigError);
    EXPECT_FALSE(check_certificate("{}").ok);
}

TEST(Tools, StatusKeys) {
    const auto b = bisector_tool(R"(["1/2", "0"])", R"(["-1/2", "0"])", "spine", Backend::Exact, 1, 3);
    EXPECT_TRUE(b.pass);
    const json bj = json::parse(b.json);
    EXPECT_EQ(bj["bisector"]["norm"], "-3/4");
    EXPECT_EQ(bj["status"], "PASS");

    const auto samples = bisector_tool(R"(["1/2", "0"])", R"(["-1/2", "0"])", "samples", Backend::Float, 1, 3);
    EXPECT_TRUE(samples.pass);

    const auto f = fan_tool(R"({"n": 2, "trials": 2})");
    EXPECT_EQ(json::parse(f.json)["status"], f.pass ? "PASS" : "FAIL");
    EXPECT_THROW(fan_tool(R"({"n": 2, "nonsense": 1})"), ConfigError);
}

}  // namespace
