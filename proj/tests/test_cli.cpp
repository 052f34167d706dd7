#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace {

using nlohmann::json;

const std::string exe = QBISECT_CLI_PATH;
const std::string tmp = QBISECT_TEST_TMPDIR;

int status(const std::string& args, const std::string& out = "/dev/null") {
    const std::string cmd = exe + " " + args + " > " + out + " 2>/dev/null";
    const int raw = std::system(cmd.c_str());
    return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

TEST(Cli, VersionAndDemo) {
    EXPECT_EQ(status("--version", tmp + "/version.txt"), 0);
    EXPECT_EQ(slurp(tmp + "/version.txt"), "1.0.0\n");
    EXPECT_EQ(status("demo", tmp + "/demo.txt"), 0);
    EXPECT_NE(slurp(tmp + "/demo.txt").find("-51/64"), std::string::npos);
}

TEST(Cli, RunExitCodes) {
    EXPECT_EQ(status("run --trials 2", tmp + "/run.json"), 0);
    EXPECT_EQ(json::parse(slurp(tmp + "/run.json"))["status"], "PASS");
    EXPECT_EQ(status("run --trials 2 --backend float --n 3"), 0);
    EXPECT_EQ(status(R"(run --config '{"suites":["mostow"],"trials":2,"negative_control":true}')"), 1);
    EXPECT_EQ(status("run --backend quad"), 2);
    EXPECT_EQ(status(R"(run --config '{"n":99}')"), 2);
    EXPECT_EQ(status("run --suites mostow,teapot"), 2);
}

TEST(Cli, SameSeedSameBytes) {
    ASSERT_EQ(status("run --trials 3 --seed 77 -o " + tmp + "/a.json"), 0);
    ASSERT_EQ(status("run --trials 3 --seed 77 -o " + tmp + "/b.json"), 0);
    EXPECT_EQ(slurp(tmp + "/a.json"), slurp(tmp + "/b.json"));
}

TEST(Cli, CertifyAndCheck) {
    const std::string cert = tmp + "/cert.json";
    ASSERT_EQ(status("certify --trials 1 -o " + cert), 0);
    EXPECT_EQ(status("check " + cert), 0);
    json j = json::parse(slurp(cert));
    j["entries"][0]["claims"]["value"][0] = "12345/7";
    std::ofstream(tmp + "/bad.json") << j.dump(1);
    EXPECT_EQ(status("check " + tmp + "/bad.json"), 1);
    EXPECT_EQ(status("check " + tmp + "/missing.json"), 2);
    EXPECT_EQ(status("certify --backend float"), 2);
}

TEST(Cli, SampleBisectorFan) {
    EXPECT_EQ(status("sample blade --count 3", tmp + "/blade.json"), 0);
    EXPECT_EQ(json::parse(slurp(tmp + "/blade.json"))["points"].size(), 3u);
    EXPECT_EQ(status(R"(bisector --p1 '["1/2","0"]' --p2 '["-1/2","0"]' --emit slice)"), 0);
    EXPECT_EQ(status(R"(bisector --p1 '["1/2","0"]' --p2 '["1/2","0"]')"), 2);
    EXPECT_EQ(status(R"(fan --config '{"n":2,"trials":2}')", tmp + "/fan.json"), 0);
    EXPECT_TRUE(json::parse(slurp(tmp + "/fan.json")).contains("status"));
}

}  // namespace
