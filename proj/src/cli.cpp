#include "petrisiegel/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <optional>
#include <ostream>

#include "petrisiegel/errors.hpp"
#include "petrisiegel/parallel.hpp"
#include "petrisiegel/suites.hpp"

namespace petrisiegel {

namespace {

struct Flags {
    std::string spec;
    std::uint64_t seed = 1;
    std::vector<std::string> tol;
    unsigned threads = default_threads();
    std::string report;
    std::size_t genus = 0;
    std::size_t m = 2;
    bool force_fail = false;
    bool timings = false;
};

void common_flags(CLI::App* cmd, Flags& f) {
    cmd->add_option("--spec", f.spec, "curve specification (JSON)");
    cmd->add_option("--seed", f.seed, "random seed");
    cmd->add_option("--tol", f.tol, "tolerance override NAME=VALUE (repeatable)")->take_all();
    cmd->add_option("--threads", f.threads, "worker threads")->check(CLI::PositiveNumber);
    cmd->add_option("--report", f.report, "also write the report to this file");
    cmd->add_flag("--force-fail", f.force_fail, "perturb one identity so the run must fail");
    cmd->add_flag("--timings", f.timings, "include wall times in the report");
}

CurveSpec spec_or(const Flags& f, const char* builtin) {
    return f.spec.empty() ? builtin_spec(builtin) : load_curve_spec(f.spec);
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Petri relations, Siegel geometry and theta-function verification"};
    app.set_version_flag("--version", tool_version());
    app.require_subcommand(1);
    Flags f;
    auto* petri = app.add_subcommand("verify-petri", "determinantal relations on a curve");
    auto* siegel = app.add_subcommand("verify-siegel", "symmetric-square and Siegel-space identities");
    auto* fay = app.add_subcommand("verify-fay", "theta invariants and the trisecant identity");
    auto* periods = app.add_subcommand("periods", "period matrix of a hyperelliptic curve");
    auto* self = app.add_subcommand("selftest", "every suite on the bundled curves");
    for (auto* cmd : {petri, siegel, fay, periods, self}) common_flags(cmd, f);
    siegel->add_option("--genus", f.genus, "genus (default 2)");
    fay->add_option("--genus", f.genus, "genus 1 or 2 (default 1)");
    fay->add_option("--m", f.m, "number of point pairs (default 2)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForVersion&) {
        out << tool_version() << "\n";
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n" << app.help();
        return 2;
    }

    VerificationReport rep;
    try {
        SuiteOptions opts;
        opts.seed = f.seed;
        opts.threads = f.threads;
        opts.force_fail = f.force_fail;
        for (const auto& t : f.tol) opts.tol.set(t);
        if (petri->parsed()) rep = verify_petri(spec_or(f, "fermat_quintic"), opts);
        if (siegel->parsed()) rep = verify_siegel(f.genus ? f.genus : 2, opts);
        if (fay->parsed()) rep = verify_fay(f.genus ? f.genus : 1, f.m, spec_or(f, "genus2"), opts);
        if (periods->parsed()) rep = verify_periods(spec_or(f, "genus2"), opts);
        if (self->parsed()) rep = selftest(opts);
        rep.tolerance_overrides = opts.tol.overrides();
    } catch (const SpecParseError& e) {
        err << "error: spec " << (f.spec.empty() ? "<builtin>" : f.spec) << ": " << e.what() << "\n";
        return 2;
    } catch (const PreconditionError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }

    const std::string text = rep.render(f.timings);
    out << text;
    if (!f.report.empty()) {
        std::ofstream file(f.report, std::ios::binary);
        if (!(file << text)) {
            err << "error: cannot write report " << f.report << "\n";
            return 2;
        }
    }
    return rep.pass() ? 0 : 1;
}

}  // namespace petrisiegel
