#include "doctest.h"

#include <cmath>
#include <stdexcept>
#include <string>

#include "petrisiegel/errors.hpp"
#include "petrisiegel/report.hpp"
#include "petrisiegel/suites.hpp"

using namespace petrisiegel;

TEST_CASE("check status follows the bound") {
    CHECK(make_check("a", "x", 1e-9, 1e-8).status == Status::Pass);
    CHECK(make_check("a", "x", 1e-7, 1e-8).status == Status::Fail);
    CHECK(make_check("a", "x", 1e-3, 1e-6, Bound::Lower).status == Status::Pass);
    CHECK(make_check("a", "x", 1e-9, 1e-6, Bound::Lower).status == Status::Fail);
    CHECK(make_check("a", "x", std::nan(""), 1e-6).status == Status::Fail);
    CHECK(make_check("a", "x", std::nan(""), 1e-6, Bound::Lower).status == Status::Fail);
    CHECK(make_warning("a", "x", "why").status == Status::Warn);
}

TEST_CASE("tolerance overrides") {
    ToleranceSet t;
    CHECK(t["determinant"] == 1e-8);
    t.set("determinant=1e-6");
    CHECK(t["determinant"] == 1e-6);
    CHECK(t.overrides().size() == 1);
    CHECK_THROWS_AS(t.set("nope=1"), PreconditionError);
    CHECK_THROWS_AS(t.set("determinant=abc"), PreconditionError);
    CHECK_THROWS_AS(t.set("determinant=1e-6x"), PreconditionError);
    CHECK_THROWS_AS(t.set("determinant=-1"), PreconditionError);
    CHECK_THROWS_AS(t.set("determinant"), PreconditionError);
    CHECK_THROWS_AS(t["nope"], PreconditionError);
}

TEST_CASE("report rendering") {
    VerificationReport rep;
    rep.command = "demo";
    rep.seed = 7;
    rep.header.emplace_back("genus", "2");
    rep.tolerance_overrides["block"] = 1e-7;
    rep.add(make_check("ok", "trisecant", 1e-12, 1e-10));
    rep.run("throws", "trisecant", 1e-10, Bound::Upper, []() -> double { throw Error("boom"); });
    rep.add(make_warning("skipped", "trisecant", "not applicable"));
    rep.notes.push_back("tau = i");
    CHECK(rep.failed() == 1);
    CHECK(rep.warned() == 1);
    CHECK_FALSE(rep.pass());

    const std::string text = rep.render(false);
    CHECK(text.rfind("tool=petrisiegel version=", 0) == 0);
    CHECK(text.find("command=demo seed=7\n") != std::string::npos);
    CHECK(text.find("genus=2\n") != std::string::npos);
    CHECK(text.find("tol_override block=") != std::string::npos);
    CHECK(text.find("check=ok anchor=trisecant residual=1.000e-12 tol=1.000e-10 status=PASS ms=off\n") !=
          std::string::npos);
    CHECK(text.find("check=throws anchor=trisecant residual=nan") != std::string::npos);
    CHECK(text.find("note=boom") != std::string::npos);
    CHECK(text.find("status=WARN") != std::string::npos);
    CHECK(text.find("note tau = i\n") != std::string::npos);
    CHECK(text.find("overall=FAIL checks=3 failed=1 warned=1\n") != std::string::npos);
    CHECK(text == rep.render(false));
    const std::string timed = rep.render(true);
    CHECK(timed.find("check=throws anchor=trisecant residual=nan tol=1.000e-10 status=FAIL ms=off") == std::string::npos);
    CHECK(timed.find("check=throws anchor=trisecant residual=nan tol=1.000e-10 status=FAIL ms=") != std::string::npos);

    VerificationReport outer;
    outer.merge(rep, "sub/");
    CHECK(outer.records.size() == 3);
    CHECK(outer.records[0].check == "sub/ok");
    CHECK(outer.notes.front() == "sub/genus=2");
}

TEST_CASE("builtin specs match the bundled files") {
    const std::string dir = PETRISIEGEL_DATA_DIR;
    for (const char* name :
         {"fermat_quintic", "hyperelliptic_g4", "genus2", "genus3", "lemniscatic", "equianharmonic"})
        CHECK(builtin_spec(name).digest == load_curve_spec(dir + "/" + name + ".json").digest);
    CHECK_THROWS_AS(builtin_spec("klein_quartic"), PreconditionError);
}

TEST_CASE("suites pass and force-fail") {
    SuiteOptions opts;
    opts.threads = 2;
    CHECK(verify_siegel(3, opts).pass());
    CHECK(verify_petri(builtin_spec("fermat_quintic"), opts).pass());
    const auto hyper = verify_petri(builtin_spec("hyperelliptic_g4"), opts);
    CHECK(hyper.pass());
    CHECK(hyper.warned() > 0);
    CHECK(verify_periods(builtin_spec("genus2"), opts).pass());
    CHECK_THROWS_AS(verify_periods(builtin_spec("fermat_quintic"), opts), PreconditionError);
    CHECK_THROWS_AS(verify_fay(1, 1, builtin_spec("genus2"), opts), PreconditionError);
    CHECK_THROWS_AS(verify_fay(2, 2, builtin_spec("genus3"), opts), PreconditionError);

    opts.force_fail = true;
    CHECK_FALSE(verify_siegel(2, opts).pass());
    CHECK_FALSE(verify_petri(builtin_spec("fermat_quintic"), opts).pass());
    CHECK_FALSE(verify_fay(1, 2, builtin_spec("genus2"), opts).pass());
    CHECK_FALSE(verify_periods(builtin_spec("lemniscatic"), opts).pass());
}
