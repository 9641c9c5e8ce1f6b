#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <json.hpp>
#include <sstream>
#include <string>
#include <vector>

using nlohmann::json;

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
};

// Run the installed binary through the shell, capturing the requested stream.
RunResult run(const std::string& args, bool merge_stderr = false) {
    std::string cmd = std::string("\"") + DISKJET_BIN + "\" " + args +
                      (merge_stderr ? " 2>&1" : " 2>/dev/null");
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    RunResult r;
    char buf[4096];
    size_t n;
    while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
    int rc = pclose(p);
    r.exit_code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    return r;
}

std::vector<std::string> lines(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream in(s);
    std::string l;
    while (std::getline(in, l))
        if (!l.empty()) out.push_back(l);
    return out;
}

std::vector<double> fields(const std::string& csv_row) {
    std::vector<double> out;
    std::istringstream in(csv_row);
    std::string tok;
    while (std::getline(in, tok, ',')) out.push_back(std::stod(tok));
    return out;
}

const std::string kCfg = DJET_CONFIG_DIR;

}  // namespace

TEST_CASE("eval: anchor values in CSV") {
    RunResult r = run("eval --order 1 --coeffs 1 --z 0 --w 0.5");
    REQUIRE(r.exit_code == 0);
    auto ls = lines(r.out);
    REQUIRE(ls.size() == 2);
    CHECK(ls[0] == "z_re,z_im,w_re,w_im,value_re,value_im");
    auto f = fields(ls[1]);
    REQUIRE(f.size() == 6);
    CHECK(std::abs(f[4] - 0.5) < 1e-12);  // quadrature-exact up to roundoff
    CHECK(std::abs(f[5]) < 1e-15);

    RunResult r2 = run("eval --order 2 --coeffs 0,1 --z 0 --w 0.5");
    REQUIRE(r2.exit_code == 0);
    auto f2 = fields(lines(r2.out)[1]);
    CHECK(std::abs(f2[4] - 0.0625) < 1e-15);

    // cartesian grid: 2 z times 2 w = 4 rows (points repeat the flag;
    // leading-minus values use the = form)
    RunResult r3 = run("eval --order 1 --coeffs 1 --z 0 --z 0.1i --w 0.5 --w=-0.2-0.1i");
    CHECK(lines(r3.out).size() == 5);

    // JSON mode carries the same value
    RunResult r4 = run("--json eval --order 1 --coeffs 1 --z 0 --w 0.5");
    json j = json::parse(r4.out);
    CHECK(std::abs(j["rows"][0]["value"][0].get<double>() - 0.5) < 1e-12);
}

TEST_CASE("eval: malformed input exits 2 with a JSON error on stderr") {
    RunResult quiet = run("eval --order 1 --coeffs 1,bogus --z 0 --w 0.5");
    CHECK(quiet.exit_code == 2);
    CHECK(quiet.out.empty());  // nothing written to stdout

    RunResult merged = run("eval --order 1 --coeffs 1,bogus --z 0 --w 0.5", true);
    json err = json::parse(merged.out);
    CHECK(err["exit_code"] == 2);
    CHECK_FALSE(err["error"].get<std::string>().empty());

    CHECK(run("eval --order 1 --coeffs 1 --z 0 --w 0.5 --no-such-flag").exit_code == 2);
    CHECK(run("--quad-nodes 3 eval --order 1 --coeffs 1 --z 0 --w 0.5").exit_code == 2);
    CHECK(run("--json --csv eval --order 1 --coeffs 1 --z 0 --w 0.5").exit_code == 2);
    CHECK(run("--help").exit_code == 0);
}

TEST_CASE("coeffs: fiber coefficients of the diagonal restriction") {
    // object-shaped results default to JSON; --csv selects the tabular form
    RunResult r = run("--csv coeffs --order 2 --coeffs 1 --terms 3");
    REQUIRE(r.exit_code == 0);
    auto ls = lines(r.out);
    REQUIRE(ls.size() == 5);
    CHECK(ls[0] == "m,value_re,value_im");
    CHECK(fields(ls[1])[1] == 1.0);  // m = 0 is the seed coefficient exactly
    for (size_t i = 2; i < ls.size(); ++i) CHECK(fields(ls[i])[1] == 0.0);

    // boundary-point z is not part of this subcommand; a domain error in the
    // inputs (negative order) is a parse failure
    CHECK(run("coeffs --order -1 --coeffs 1 --terms 3", true).exit_code != 0);
}

TEST_CASE("norm: two routes agree and the Hardy edge is rejected") {
    RunResult r = run("--json norm --order 1 --alpha 0");
    REQUIRE(r.exit_code == 0);
    json j = json::parse(r.out);
    CHECK(j["N"] == 1);
    CHECK(j["c_alpha"].get<double>() == 1.0);
    CHECK(std::abs(j["agreement"].get<double>()) < 1e-8);
    CHECK(j["i_image_norm_unit"].get<double>() ==
          doctest::Approx(M_PI).epsilon(1e-12));
    CHECK(j["c_alpha_saturated"].get<bool>() == false);

    RunResult bad = run("norm --order 1 --alpha -1", true);
    CHECK(bad.exit_code == 3);
    json err = json::parse(bad.out);
    CHECK(err["exit_code"] == 3);
    CHECK(err["error"].get<std::string>().find("alpha") != std::string::npos);
}

TEST_CASE("poincare: density warning flag and exact pair value at length 0") {
    std::string gens = " --generators \"" + kCfg + "/octagon_genus2.json\"";
    RunResult r = run("poincare --kind density --order 1 --length 1 --z 0.2" + gens);
    REQUIRE(r.exit_code == 0);
    auto ls = lines(r.out);
    CHECK(ls[0] == "z_re,z_im,value_re,value_im,tail,warning");
    auto f = fields(ls[1]);
    CHECK(f[5] == 1.0);  // N = 1: convergence warning set

    RunResult r2 = run("poincare --kind density --order 3 --length 0 --z 0.2" + gens);
    auto f2 = fields(lines(r2.out)[1]);
    CHECK(f2[2] == 1.0);  // identity ball: derivative 1
    CHECK(f2[3] == 0.0);
    CHECK(f2[5] == 0.0);

    RunResult r3 = run("poincare --kind pair --order 4 --length 0 --z 0.1 --w 0.3" + gens);
    auto f3 = fields(lines(r3.out)[1]);
    CHECK(std::abs(f3[4] - 0.0016) < 1e-18);  // (z - w)^4 over the identity
    CHECK(std::abs(f3[5]) < 1e-18);
}

TEST_CASE("kernel: empty basis reproduces the constant term") {
    RunResult r = run("kernel --config \"" + kCfg + "/kernel_empty.json\" --z 0.2 --w 0.3");
    REQUIRE(r.exit_code == 0);
    auto ls = lines(r.out);
    CHECK(ls[0] == "z_re,z_im,w_re,w_im,z2_re,z2_im,w2_re,w2_im,kernel_re,kernel_im");
    auto f = fields(ls[1]);
    REQUIRE(f.size() == 10);
    CHECK(std::abs(f[8] - 0.025330295910584444) < 1e-16);
    CHECK(f[9] == 0.0);
    // --z2/--w2 default to the first pair
    CHECK(f[4] == f[0]);
    CHECK(f[6] == f[2]);

    RunResult r2 = run("kernel --config \"" + kCfg + "/kernel_example.json\"" +
                       " --z 0.2 --w 0.3 --z2 -0.1 --w2 0.25i");
    REQUIRE(r2.exit_code == 0);
    auto f2 = fields(lines(r2.out)[1]);
    CHECK(std::abs(f2[8]) + std::abs(f2[9]) > 0.0);
}

TEST_CASE("verify: single checks pass, the perturbation detector trips") {
    RunResult r = run("verify --only A2 --seed 7");
    REQUIRE(r.exit_code == 0);
    json j = json::parse(r.out);
    CHECK(j["overall"] == "pass");
    REQUIRE(j["checks"].size() == 1);
    CHECK(j["checks"][0]["name"] == "A2");
    CHECK(j["checks"][0]["status"] == "pass");

    // deliberate norm-ratio perturbation must fail the norm-identity check
    RunResult bad = run("verify --only A4 --perturb-norm-ratio 1e-3");
    CHECK(bad.exit_code == 1);
    json jb = json::parse(bad.out);
    CHECK(jb["overall"] == "fail");

    // byte-identical output on identical invocations
    RunResult again = run("verify --only A2 --seed 7");
    CHECK(again.out == r.out);
    CHECK(again.exit_code == 0);

    // a different seed still passes
    CHECK(run("verify --only A2 --seed 12345").exit_code == 0);
}
