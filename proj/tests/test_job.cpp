#include <doctest.h>

#include <json.hpp>

#include <cstdlib>
#include <sstream>

#include "quadfermat/job.hpp"

using namespace quadfermat;

namespace {

const QuadraticForm kCircle{Cx(1, 0), Cx(0, 0), Cx(1, 0), Cx(0, 0), Cx(0, 0), Cx(-1, 0)};

struct RunResult {
    int code;
    std::string out;
    std::string err;
};

RunResult run_job(const JobConfig& cfg) {
    std::ostringstream out, err;
    const int code = run(cfg, out, err);
    return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("solve emits the binomial golden text") {
    JobConfig cfg;
    cfg.command = Command::Solve;
    cfg.form = kCircle;
    cfg.kind = EquationTag::L1L2;
    cfg.params["R4"] = Cx(1, 0);
    const RunResult r = run_job(cfg);
    CHECK(r.code == 0);
    CHECK(r.out.find("0.7071067811865476") != std::string::npos);
    CHECK(r.out.find("exp(-(z1 + z2))") != std::string::npos);
    CHECK(r.out.find("PASS") != std::string::npos);
}

TEST_CASE("classify text output") {
    JobConfig cfg;
    cfg.command = Command::Classify;
    cfg.form = {Cx(1, 0), Cx(1, 0), Cx(1, 0), Cx(1, 0), Cx(1, 0), Cx(1, 0)};
    const RunResult r = run_job(cfg);
    CHECK(r.code == 0);
    CHECK(r.out.find("DegenerateParallelLines") != std::string::npos);
}

TEST_CASE("exit codes") {
    // non-solution candidate: FAIL -> 1
    JobConfig bad;
    bad.command = Command::Verify;
    bad.form = kCircle;
    bad.kind = EquationTag::M1M3;
    bad.shift = Shift{Cx(1, 0), Cx(2, 0)};
    bad.candidate = "z1";
    CHECK(run_job(bad).code == 1);

    // syntax error in the candidate -> 2
    bad.candidate = "z1 + ";
    CHECK(run_job(bad).code == 2);

    // non-entire candidate -> 2 (the equations quantify over entire functions)
    bad.candidate = "1/(z1+10)";
    CHECK(run_job(bad).code == 2);

    // parabolic form -> 3
    JobConfig parab;
    parab.command = Command::Classify;
    parab.form = {Cx(1, 0), Cx(1, 0), Cx(1, 0), Cx(0, 0), Cx(1, 0), Cx(0, 0)};
    CHECK(run_job(parab).code == 3);

    // solving the non-existence kind -> 3
    JobConfig l1l3;
    l1l3.command = Command::Solve;
    l1l3.form = kCircle;
    l1l3.kind = EquationTag::L1L3;
    CHECK(run_job(l1l3).code == 3);

    // missing kind -> 2
    JobConfig missing;
    missing.command = Command::Solve;
    missing.form = kCircle;
    CHECK(run_job(missing).code == 2);
}

TEST_CASE("json output round-trips deterministically") {
    JobConfig cfg;
    cfg.command = Command::Solve;
    cfg.form = kCircle;
    cfg.kind = EquationTag::L1L2;
    cfg.params["R4"] = Cx(1, 0);
    cfg.output = OutputMode::Json;

    const RunResult first = run_job(cfg);
    CHECK(first.code == 0);
    const RunResult second = run_job(cfg);
    CHECK(first.out == second.out);  // byte-identical

    const auto doc = nlohmann::json::parse(first.out);
    CHECK(doc.at("command") == "solve");
    CHECK(doc.at("kind") == "l1l2");
    CHECK(doc.at("branch") == "plus");
    CHECK(doc.at("seed") == 42);
    CHECK(doc.at("classification") == "NondegenerateReducible");

    // complex numbers are [re, im] pairs, never strings
    const auto& a = doc.at("form").at("a");
    CHECK(a.is_array());
    CHECK(a.size() == 2);
    CHECK(a[0].get<double>() == 1.0);
    CHECK(doc.at("form").at("C")[1].get<double>() == 0.0);

    CHECK(doc.at("discriminants").at("delta")[0].get<double>() == -1.0);
    CHECK(doc.at("normal_form").contains("d11"));
    CHECK(doc.at("solution").at("source") == "thm3.1 case1");
    CHECK(doc.at("solution").at("constraints").is_array());
    CHECK(doc.at("verification").at("verdict") == "PASS");
    CHECK(doc.at("verification").contains("worst_point"));
}

TEST_CASE("sweep command reports support for non-existence") {
    JobConfig cfg;
    cfg.command = Command::SweepNonexistence;
    cfg.form = kCircle;
    cfg.samples = {100, 2.0, 42};
    cfg.output = OutputMode::Json;
    const RunResult r = run_job(cfg);
    CHECK(r.code == 0);
    const auto doc = nlohmann::json::parse(r.out);
    CHECK(doc.at("verification").at("verdict") == "FAIL");
    CHECK(doc.at("verification").at("max_abs_residual").get<double>() > 1e-2);
}

TEST_CASE("check-derivatives command") {
    JobConfig cfg;
    cfg.command = Command::CheckDerivatives;
    cfg.form = kCircle;
    cfg.candidate = "exp(sin(0.5*z1*z2))";
    cfg.samples = {50, 1.5, 42};
    const RunResult r = run_job(cfg);
    CHECK(r.code == 0);
}

TEST_CASE("l1l4 solve reports both residuals") {
    JobConfig cfg;
    cfg.command = Command::Solve;
    cfg.form = kCircle;
    cfg.kind = EquationTag::L1L4;
    cfg.params["B11"] = Cx(1, 0);
    cfg.output = OutputMode::Json;
    const RunResult r = run_job(cfg);
    CHECK(r.code == 0);
    const auto doc = nlohmann::json::parse(r.out);
    CHECK(doc.at("verification").at("verdict") == "PASS");
    CHECK(doc.contains("stated_form_verification"));
    CHECK(doc.at("stated_form_verification").at("max_abs_residual").get<double>() > 1e-2);
    CHECK(doc.at("solution").contains("stated_form"));
}

TEST_CASE("solve --case 2 builds the trigonometric l1l2 family") {
    JobConfig cfg;
    cfg.command = Command::Solve;
    cfg.form = kCircle;
    cfg.kind = EquationTag::L1L2;
    cfg.case_index = 2;
    cfg.params["R5"] = Cx(0.25, 0);
    cfg.params["R6"] = Cx(1, 0);
    cfg.output = OutputMode::Json;
    const RunResult r = run_job(cfg);
    CHECK(r.code == 0);
    const auto doc = nlohmann::json::parse(r.out);
    CHECK(doc.at("solution").at("source") == "thm3.1 case2");
    CHECK(doc.at("verification").at("verdict") == "PASS");
}

TEST_CASE("validate-only solves exit 0 and mark the report") {
    JobConfig cfg;
    cfg.command = Command::Solve;
    cfg.form = kCircle;
    cfg.kind = EquationTag::M1M3;
    cfg.shift = Shift{Cx(0.4, 0), Cx(1.2, 0)};
    cfg.case_index = 2;
    cfg.output = OutputMode::Json;
    const RunResult r = run_job(cfg);
    CHECK(r.code == 0);
    const auto doc = nlohmann::json::parse(r.out);
    CHECK(doc.at("solution").at("validate_only") == true);
    CHECK(doc.at("solution").at("source") == "thm3.5 case2 (validate-only)");
}

TEST_CASE("default_seed honours QUADFERMAT_SEED") {
    unsetenv("QUADFERMAT_SEED");
    CHECK(default_seed() == 42);
    setenv("QUADFERMAT_SEED", "777", 1);
    CHECK(default_seed() == 777);
    setenv("QUADFERMAT_SEED", "not-a-number", 1);
    CHECK_THROWS_AS(default_seed(), Error);
    unsetenv("QUADFERMAT_SEED");
}
