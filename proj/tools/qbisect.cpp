// qbisect command line: run, sample, certify, check, demo, bisector, fan.
// Exit codes: 0 pass, 1 property failure, 2 usage error.

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "qbisect/errors.hpp"
#include "qbisect/fan.hpp"
#include "qbisect/harness.hpp"

namespace {

using namespace qbisect;

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;

struct Common {
    std::string config;
    std::optional<std::uint64_t> seed;
    std::optional<int> n;
    std::string backend;
    std::optional<double> tolerance;
    std::string suites;
    std::optional<std::uint64_t> trials;
    std::string output;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError(path, "cannot read file");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

/// Inline JSON if the text starts with '{' or '[', otherwise a file path.
std::string json_arg(const std::string& arg) {
    const auto pos = arg.find_first_not_of(" \t\r\n");
    if (pos != std::string::npos && (arg[pos] == '{' || arg[pos] == '[')) return arg;
    return read_file(arg);
}

Scenario build_scenario(const Common& c) {
    Scenario s = c.config.empty() ? Scenario{} : parse_scenario(json_arg(c.config));
    if (c.seed) s.seed = *c.seed;
    if (c.n) s.n = *c.n;
    if (!c.backend.empty()) {
        if (c.backend == "exact") s.backend = Backend::Exact;
        else if (c.backend == "float") s.backend = Backend::Float;
        else throw ConfigError("backend", "expected exact or float");
    }
    if (c.tolerance) s.tolerance = *c.tolerance;
    if (!c.suites.empty()) {
        s.suites.clear();
        std::stringstream ss(c.suites);
        for (std::string item; std::getline(ss, item, ',');)
            if (!item.empty()) s.suites.push_back(item);
    }
    if (c.trials)
        for (const auto& name : suite_names()) s.trials[name] = *c.trials;
    validate(s);
    return s;
}

void emit(const std::string& text, const std::string& output) {
    if (output.empty()) {
        std::cout << text << '\n';
        return;
    }
    std::ofstream out(output, std::ios::binary);
    if (!out) throw ConfigError(output, "cannot write file");
    out << text << '\n';
}

void add_common(CLI::App* cmd, Common& c, bool with_suites) {
    cmd->add_option("--config", c.config, "Scenario JSON (file path or inline)");
    cmd->add_option("--seed", c.seed, "64-bit seed");
    cmd->add_option("--n", c.n, "Quaternionic dimension n (1..8)");
    cmd->add_option("--backend", c.backend, "exact | float")->check(CLI::IsMember({"exact", "float"}));
    cmd->add_option("--tolerance", c.tolerance, "Float tolerance tau");
    if (with_suites) {
        cmd->add_option("--suites", c.suites, "Comma separated subset of the suites");
        cmd->add_option("--trials", c.trials, "Trial count applied to every suite");
    }
    cmd->add_option("-o,--output", c.output, "Write JSON here instead of stdout");
}

int demo() {
    using S = Exact;
    using Q = Quaternion<S>;
    const S half = S(S(1) / S(2));
    const Q j = Q::unit_j(), k = Q::unit_k();
    const Bisector<S> b = standard_bisector<S>(2);
    std::cout << "running example: n = 2, p1 = ball(1/2, 0), p2 = ball(-1/2, 0)\n";
    std::cout << "<P1,P1> = " << format_exact(b.norm()) << ", <P1,P2> = " << to_string(b.t()) << "\n";
    const auto p = ball<S>({Q(), k * half});
    std::cout << "ball(0, k/2) on the bisector: " << std::boolalpha << b.contains(p) << "\n";
    const auto sp = b.spine_point(Q(S(1)), k);
    std::cout << "spine_point(1, k) = ball(" << to_string(to_ball(sp).coords()[0]) << ", 0), on the real spine: "
              << b.real_spine_contains(sp) << "\n";
    const auto x = ball<S>({j * half, k * half});
    const auto px = b.project_to_spine(x);
    std::cout << "project_to_spine(ball(j/2, k/2)) = ball(" << to_string(to_ball(px).coords()[0]) << ", "
              << to_string(to_ball(px).coords()[1]) << ")\n";
    const auto r = ball<S>({Q(half), Q()});
    std::cout << "hermitian_triple(ball(j/2, k/2), ball(j/2, 0), ball(1/2, 0)) = " << to_string(hermitian_triple(x, px, r))
              << "\n";
    const Fan<S> fan(b);
    const Blade<S> bl = fan.default_blade();
    std::cout << "default blade at the origin: a = " << to_string(bl.a.value()) << ", b = " << to_string(bl.b.value())
              << ", orthogonal pair checks: " << check_orthogonal_pair(bl).all()
              << ", I_N swaps the symmetric pair: " << same_line(HVector<S>(bl.reflection_n().g * fan.q1()), fan.q2())
              << "\n";
    const Blade<S> through = fan.blade_containing(p);
    std::cout << "blade through ball(0, k/2): contains it: " << through.contains(p)
              << ", contains the origin: " << through.contains(fan.center()) << "\n";
    std::cout << "starlike certificate for [0, ball(0, k/2)]: " << (starlike_certificate(fan, p).pass() ? "pass" : "fail")
              << "\n";
    return kPass;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"qbisect: bisectors and fan decompositions in quaternionic hyperbolic space"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(kVersion));

    Common run_opts, sample_opts, cert_opts;
    bool run_timing = false;
    auto* run_cmd = app.add_subcommand("run", "Run property suites and print the JSON report");
    add_common(run_cmd, run_opts, true);
    run_cmd->add_flag("--timing", run_timing, "Print wall time per run to stderr");

    std::string what = "bisector";
    std::size_t count = 100;
    auto* sample_cmd = app.add_subcommand("sample", "Emit a point cloud: bisector | spine | slice | blade");
    add_common(sample_cmd, sample_opts, false);
    sample_cmd->add_option("what", what, "bisector | spine | slice | blade")
        ->check(CLI::IsMember({"bisector", "spine", "slice", "blade"}));
    sample_cmd->add_option("--count", count, "Number of points");

    auto* cert_cmd = app.add_subcommand("certify", "Emit an exact certificate transcript");
    add_common(cert_cmd, cert_opts, true);

    std::string cert_path;
    auto* check_cmd = app.add_subcommand("check", "Re-verify a certificate");
    check_cmd->add_option("certificate", cert_path, "Certificate file")->required();

    auto* demo_cmd = app.add_subcommand("demo", "Walk through the running example");

    std::string p1, p2, emit_kind = "samples", bis_backend = "exact", bis_output;
    std::uint64_t bis_seed = 1;
    std::size_t bis_count = 20;
    auto* bis_cmd = app.add_subcommand("bisector", "Spine, slice or samples of B(p1, p2)");
    bis_cmd->add_option("--p1", p1, "Ball point as JSON array of quaternions")->required();
    bis_cmd->add_option("--p2", p2, "Ball point as JSON array of quaternions")->required();
    bis_cmd->add_option("--emit", emit_kind, "spine | slice | samples")->check(CLI::IsMember({"spine", "slice", "samples"}));
    bis_cmd->add_option("--backend", bis_backend, "exact | float")->check(CLI::IsMember({"exact", "float"}));
    bis_cmd->add_option("--seed", bis_seed, "64-bit seed");
    bis_cmd->add_option("--count", bis_count, "Number of samples");
    bis_cmd->add_option("-o,--output", bis_output, "Write JSON here instead of stdout");

    std::string fan_config = "{}", fan_output;
    auto* fan_cmd = app.add_subcommand("fan", "Fan decomposition report");
    fan_cmd->add_option("--config", fan_config, "JSON {n, seed, center, selectors, trials} (file path or inline)");
    fan_cmd->add_option("-o,--output", fan_output, "Write JSON here instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        if (*run_cmd) {
            const Scenario s = build_scenario(run_opts);
            const auto t0 = std::chrono::steady_clock::now();
            const Report r = run(s);
            const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - t0;
            emit(to_json(r), run_opts.output);
            if (run_timing) std::cerr << "wall time: " << dt.count() << " s\n";
            for (const auto& sr : r.suites)
                for (const auto& w : sr.warnings) std::cerr << "warning: " << sr.name << ": " << w << "\n";
            return exit_code(r);
        }
        if (*sample_cmd) {
            emit(sample(build_scenario(sample_opts), what, count), sample_opts.output);
            return kPass;
        }
        if (*cert_cmd) {
            emit(certify(build_scenario(cert_opts)), cert_opts.output);
            return kPass;
        }
        if (*check_cmd) {
            const CheckResult r = check_certificate(read_file(cert_path));
            for (const auto& e : r.errors) std::cerr << e << "\n";
            std::cout << (r.ok ? "ACCEPT" : "REJECT") << " " << r.entries << " entries\n";
            return r.ok ? kPass : kFail;
        }
        if (*demo_cmd) return demo();
        if (*bis_cmd) {
            const ToolOutput out = bisector_tool(p1, p2, emit_kind, bis_backend == "exact" ? Backend::Exact : Backend::Float,
                                                 bis_seed, bis_count);
            emit(out.json, bis_output);
            return out.pass ? kPass : kFail;
        }
        if (*fan_cmd) {
            const ToolOutput out = fan_tool(json_arg(fan_config));
            emit(out.json, fan_output);
            return out.pass ? kPass : kFail;
        }
    } catch (const ConfigError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kUsage;
    } catch (const DimensionError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kFail;
    }
    return kUsage;
}
