#pragma once

// Canonical JSON file format for quotient and full complexes.
//
//   { "name": str,
//     "generators": [{"id", "maslov", "alexander"}],
//     "arrows":     [{"from", "to", "u", "v"}],      exactly one of u, v is 0
//     "diagonals":  [{"from", "to", "u", "v"}] }     full complexes only, u, v > 0
//
// Unknown fields are ignored on read and never written. Generators are listed
// sorted by (alexander, maslov, id) and arrows by (from, to); ids are kept.

#include <filesystem>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "hfklift/complex.hpp"

namespace hfklift {

class FormatError : public std::runtime_error {
 public:
  explicit FormatError(const std::string& what) : std::runtime_error(what) {}
};

QuotientComplex quotient_from_json(const nlohmann::json& j);
nlohmann::json to_json(const QuotientComplex& qc);

/// Accepts both plain quotient files and lifted files carrying "diagonals".
FullComplex full_from_json(const nlohmann::json& j);
nlohmann::json to_json(const FullComplex& fc);

nlohmann::json read_json_file(const std::filesystem::path& path);
QuotientComplex read_quotient(const std::filesystem::path& path);
FullComplex read_full(const std::filesystem::path& path);
void write_json_file(const std::filesystem::path& path, const nlohmann::json& j);

}  // namespace hfklift
