#pragma once

#include <filesystem>
#include <memory>
#include <string>
#include <string_view>

#include "petrisiegel/curves.hpp"

namespace petrisiegel {

/// Parsed curve file:
///   {"type":"plane","degree":5,"coeffs":[[r,s,re,im],...]}
///   {"type":"hyperelliptic","branch_points":[e or [re,im], ...]}
/// An optional "name" string is carried into reports.
struct CurveSpec {
    std::string name;
    std::string source;
    std::string digest;  ///< FNV-1a 64 of the file bytes, hex
    std::shared_ptr<const CurveModel> model;
};

/// Throws SpecParseError citing line and field.
CurveSpec parse_curve_spec(std::string_view text, std::string source = "<memory>");
CurveSpec load_curve_spec(const std::filesystem::path& path);

std::string fnv1a_hex(std::string_view bytes);

}  // namespace petrisiegel
