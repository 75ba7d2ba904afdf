#include "doctest.h"

#include <string>

#include "petrisiegel/curve_spec.hpp"
#include "petrisiegel/errors.hpp"

using namespace petrisiegel;

namespace {

const std::string kData = PETRISIEGEL_DATA_DIR;

SpecParseError parse_error(const std::string& text) {
    try {
        parse_curve_spec(text);
    } catch (const SpecParseError& e) {
        return e;
    }
    FAIL("expected a parse error");
    return SpecParseError("", 0, "");
}

}  // namespace

TEST_CASE("bundled curve files") {
    const auto q = load_curve_spec(kData + "/fermat_quintic.json");
    CHECK(genus_of(*q.model) == 6);
    CHECK(q.name == "fermat-quintic");
    CHECK(q.digest.size() == 16);
    CHECK(genus_of(*load_curve_spec(kData + "/hyperelliptic_g4.json").model) == 4);
    CHECK(genus_of(*load_curve_spec(kData + "/genus2.json").model) == 2);
    CHECK(genus_of(*load_curve_spec(kData + "/genus3.json").model) == 3);
    CHECK(genus_of(*load_curve_spec(kData + "/lemniscatic.json").model) == 1);
    const auto eq = load_curve_spec(kData + "/equianharmonic.json");
    CHECK_FALSE(std::get<HyperellipticCurve>(*eq.model).has_real_branch_points());
}

TEST_CASE("digest is stable and content sensitive") {
    const std::string a = R"({"type":"hyperelliptic","branch_points":[-1,0,1]})";
    CHECK(parse_curve_spec(a).digest == parse_curve_spec(a).digest);
    CHECK(parse_curve_spec(a).digest != parse_curve_spec(a + " ").digest);
    CHECK(fnv1a_hex("") == "cbf29ce484222325");
}

TEST_CASE("parse errors cite line and field") {
    auto e = parse_error("{\n  \"type\": \"plane\",\n  \"degree\": 5\n}");
    CHECK(e.field() == "coeffs");

    e = parse_error("{\n  \"type\": \"plane\",\n  \"degree\": \"five\",\n  \"coeffs\": []\n}");
    CHECK(e.field() == "degree");
    CHECK(e.line() == 3);

    e = parse_error("{\n  \"type\": \"plane\",\n  \"degree\": 5,\n  \"coeffs\": [[5, 0, 1.0]]\n}");
    CHECK(e.field() == "coeffs");
    CHECK(e.line() == 4);

    e = parse_error("{\n  \"type\": \"torus\"\n}");
    CHECK(e.field() == "type");
    CHECK(e.line() == 2);

    e = parse_error("{\n  \"type\": \"hyperelliptic\",\n\n  \"branch_points\": [0, 0, 1]\n}");
    CHECK(e.field() == "branch_points");
    CHECK(e.line() == 4);

    e = parse_error("{\n  \"type\": \"hyperelliptic\",\n  \"branch_points\": [0, 1, 2,\n}");
    CHECK(e.field() == "<document>");
    CHECK(e.line() == 4);

    e = parse_error("{\"type\": \"hyperelliptic\", \"branch_points\": [0, 1, 2], \"colour\": 1}");
    CHECK(e.field() == "colour");

    CHECK_THROWS_AS(load_curve_spec(kData + "/missing.json"), SpecParseError);
}
