#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "petrisiegel/cli.hpp"
#include "petrisiegel/errors.hpp"
#include "petrisiegel/jacobian.hpp"
#include "petrisiegel/parallel.hpp"
#include "petrisiegel/siegel.hpp"
#include "petrisiegel/suites.hpp"
#include "petrisiegel/theta.hpp"

namespace py = pybind11;
using namespace petrisiegel;

namespace {

using ComplexArray = py::array_t<cplx, py::array::c_style | py::array::forcecast>;

CMatrix to_matrix(const ComplexArray& a) {
    if (a.ndim() != 2) throw PreconditionError("expected a 2-d array");
    const auto r = static_cast<std::size_t>(a.shape(0)), c = static_cast<std::size_t>(a.shape(1));
    return CMatrix(r, c, std::vector<cplx>(a.data(), a.data() + r * c));
}

CVector to_vector(const ComplexArray& a) {
    if (a.ndim() != 1) throw PreconditionError("expected a 1-d array");
    return CVector(a.data(), a.data() + a.shape(0));
}

ComplexArray from_matrix(const CMatrix& m) {
    ComplexArray out({m.rows(), m.cols()});
    auto v = out.mutable_unchecked<2>();
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) v(i, j) = m(i, j);
    return out;
}

ComplexArray from_vector(const CVector& x) {
    ComplexArray out(static_cast<py::ssize_t>(x.size()));
    std::copy(x.begin(), x.end(), out.mutable_data());
    return out;
}

SuiteOptions options(std::uint64_t seed, unsigned threads, const std::map<std::string, double>& tol, bool force_fail) {
    SuiteOptions o;
    o.seed = seed;
    o.threads = threads ? threads : default_threads();
    o.force_fail = force_fail;
    for (const auto& [k, v] : tol) o.tol.set(k, v);
    return o;
}

py::dict report_dict(VerificationReport rep, const SuiteOptions& o) {
    rep.tolerance_overrides = o.tol.overrides();
    py::list checks;
    for (const auto& r : rep.records) {
        py::dict d;
        d["check"] = r.check;
        d["anchor"] = r.anchor;
        d["residual"] = r.residual;
        d["tol"] = r.tol;
        d["status"] = status_name(r.status);
        d["note"] = r.note;
        checks.append(d);
    }
    py::dict out;
    out["passed"] = rep.pass();
    out["checks"] = checks;
    out["notes"] = rep.notes;
    out["text"] = rep.render(false);
    return out;
}

CurveSpec resolve(const std::string& spec) {
    if (spec.rfind("builtin:", 0) == 0) return builtin_spec(spec.substr(8));
    return load_curve_spec(spec);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Petri relations, Siegel geometry and theta-function verification";
    m.attr("__version__") = tool_version();

    auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<PreconditionError>(m, "PreconditionError", base.ptr());
    py::register_exception<SpecParseError>(m, "SpecParseError", base.ptr());
    py::register_exception<TruncationFailure>(m, "TruncationFailure", base.ptr());

    py::class_<CurveSpec>(m, "CurveSpec")
        .def_readonly("name", &CurveSpec::name)
        .def_readonly("source", &CurveSpec::source)
        .def_readonly("digest", &CurveSpec::digest)
        .def_property_readonly("genus", [](const CurveSpec& s) { return genus_of(*s.model); })
        .def("__repr__", [](const CurveSpec& s) { return "<CurveSpec " + s.name + " " + s.digest + ">"; });

    m.def("load_curve_spec", [](const std::string& path) { return load_curve_spec(path); }, py::arg("path"));
    m.def("parse_curve_spec", [](const std::string& text) { return parse_curve_spec(text); }, py::arg("text"));
    m.def("builtin_spec", &builtin_spec, py::arg("name"));

    m.def(
        "period_matrix",
        [](const CurveSpec& spec) {
            const auto* hc = std::get_if<HyperellipticCurve>(spec.model.get());
            if (!hc) throw PreconditionError("period_matrix needs a hyperelliptic curve");
            return from_matrix(compute_periods(*hc).tau.Z());
        },
        py::arg("spec"));
    m.def(
        "abel_map",
        [](const CurveSpec& spec, cplx x, cplx y) {
            const auto* hc = std::get_if<HyperellipticCurve>(spec.model.get());
            if (!hc) throw PreconditionError("abel_map needs a hyperelliptic curve");
            const auto pd = compute_periods(*hc);
            return from_vector(abel_map(pd, make_point(*spec.model, x, y)).value);
        },
        py::arg("spec"), py::arg("x"), py::arg("y"));
    m.def("reduce_to_fundamental_domain", &reduce_to_fundamental_domain, py::arg("tau"));

    m.def(
        "theta",
        [](const ComplexArray& tau, const ComplexArray& z, std::vector<int> a, std::vector<int> b) {
            const ThetaFunction th{SiegelPoint(to_matrix(tau))};
            const std::size_t g = th.genus();
            ThetaCharacteristic ch = ThetaCharacteristic::zero(g);
            if (!a.empty() || !b.empty()) {
                if (a.size() != g || b.size() != g) throw PreconditionError("characteristic must have g entries");
                for (std::size_t i = 0; i < g; ++i) {
                    if ((a[i] != 0 && a[i] != 1) || (b[i] != 0 && b[i] != 1))
                        throw PreconditionError("characteristic entries must be 0 or 1");
                    ch.a[i] = 0.5 * a[i];
                    ch.b[i] = 0.5 * b[i];
                }
            }
            return th(to_vector(z), ch);
        },
        py::arg("tau"), py::arg("z"), py::arg("a") = std::vector<int>{}, py::arg("b") = std::vector<int>{},
        "Riemann theta with half-integer characteristic [a;b]/2 (entries 0 or 1).");
    m.def(
        "fay_residual",
        [](const ComplexArray& tau, const ComplexArray& w, const std::vector<ComplexArray>& x,
           const std::vector<ComplexArray>& y) {
            const ThetaFunction th{SiegelPoint(to_matrix(tau))};
            std::vector<CVector> xs, ys;
            for (const auto& v : x) xs.push_back(to_vector(v));
            for (const auto& v : y) ys.push_back(to_vector(v));
            return fay_residual(to_vector(w), xs, ys, th, ThetaCharacteristic::first_odd(th.genus())).residual;
        },
        py::arg("tau"), py::arg("w"), py::arg("x"), py::arg("y"));

    m.def(
        "verify_petri",
        [](const std::string& spec, std::uint64_t seed, unsigned threads, std::map<std::string, double> tol,
           bool force_fail) {
            const auto o = options(seed, threads, tol, force_fail);
            return report_dict(verify_petri(resolve(spec), o), o);
        },
        py::arg("spec") = "builtin:fermat_quintic", py::arg("seed") = 1, py::arg("threads") = 0,
        py::arg("tol") = std::map<std::string, double>{}, py::arg("force_fail") = false);
    m.def(
        "verify_siegel",
        [](std::size_t genus, std::uint64_t seed, std::map<std::string, double> tol, bool force_fail) {
            const auto o = options(seed, 1, tol, force_fail);
            return report_dict(verify_siegel(genus, o), o);
        },
        py::arg("genus") = 2, py::arg("seed") = 1, py::arg("tol") = std::map<std::string, double>{},
        py::arg("force_fail") = false);
    m.def(
        "verify_fay",
        [](std::size_t genus, std::size_t mm, const std::string& spec, std::uint64_t seed, unsigned threads,
           std::map<std::string, double> tol) {
            const auto o = options(seed, threads, tol, false);
            return report_dict(verify_fay(genus, mm, resolve(spec), o), o);
        },
        py::arg("genus") = 1, py::arg("m") = 2, py::arg("spec") = "builtin:genus2", py::arg("seed") = 1,
        py::arg("threads") = 0, py::arg("tol") = std::map<std::string, double>{});
    m.def(
        "verify_periods",
        [](const std::string& spec, std::uint64_t seed) {
            const auto o = options(seed, 1, {}, false);
            return report_dict(verify_periods(resolve(spec), o), o);
        },
        py::arg("spec") = "builtin:genus2", py::arg("seed") = 1);
    m.def(
        "selftest",
        [](std::uint64_t seed, unsigned threads) {
            const auto o = options(seed, threads, {}, false);
            return report_dict(selftest(o), o);
        },
        py::arg("seed") = 1, py::arg("threads") = 0);

    m.def(
        "run_cli",
        [](std::vector<std::string> args) {
            args.insert(args.begin(), "petrisiegel");
            std::vector<const char*> argv;
            for (const auto& s : args) argv.push_back(s.c_str());
            std::ostringstream out, err;
            int code = 0;
            {
                py::gil_scoped_release release;
                code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
            }
            return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"), "Runs the command-line tool; returns (exit_code, stdout, stderr).");
}
