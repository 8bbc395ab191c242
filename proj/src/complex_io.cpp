#include "hfklift/complex_io.hpp"

#include <algorithm>
#include <fstream>

namespace hfklift {

using nlohmann::json;

namespace {

template <typename T>
T field(const json& obj, const char* key) {
  if (!obj.is_object() || !obj.contains(key)) throw FormatError(std::string("missing field '") + key + "'");
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception& e) {
    throw FormatError(std::string("bad field '") + key + "': " + e.what());
  }
}

std::vector<Generator> generators_from(const json& j) {
  std::vector<Generator> gens;
  const auto& arr = j.at("generators");
  if (!arr.is_array()) throw FormatError("'generators' is not an array");
  for (const auto& g : arr) {
    const long id = field<long>(g, "id");
    if (id < 0) throw FormatError("negative generator id");
    gens.push_back({static_cast<GenId>(id), field<int>(g, "maslov"), field<int>(g, "alexander")});
  }
  return gens;
}

struct RawArrow {
  GenId from, to;
  int u, v;
};

std::vector<RawArrow> arrows_from(const json& j, const char* key) {
  std::vector<RawArrow> out;
  if (!j.contains(key)) return out;
  const auto& arr = j.at(key);
  if (!arr.is_array()) throw FormatError(std::string("'") + key + "' is not an array");
  for (const auto& a : arr) {
    const long from = field<long>(a, "from"), to = field<long>(a, "to");
    if (from < 0 || to < 0) throw FormatError("negative arrow endpoint");
    out.push_back({static_cast<GenId>(from), static_cast<GenId>(to), field<int>(a, "u"), field<int>(a, "v")});
  }
  return out;
}

json generators_json(std::vector<Generator> gens) {
  std::sort(gens.begin(), gens.end(), [](const Generator& a, const Generator& b) {
    return std::tie(a.alexander, a.maslov, a.id) < std::tie(b.alexander, b.maslov, b.id);
  });
  json arr = json::array();
  for (const auto& g : gens) arr.push_back({{"id", g.id}, {"maslov", g.maslov}, {"alexander", g.alexander}});
  return arr;
}

json arrow_json(GenId from, GenId to, int u, int v) { return {{"from", from}, {"to", to}, {"u", u}, {"v", v}}; }

}  // namespace

QuotientComplex quotient_from_json(const json& j) {
  QuotientComplex qc;
  qc.name = j.contains("name") ? field<std::string>(j, "name") : std::string{};
  if (!j.contains("generators")) throw FormatError("missing field 'generators'");
  qc.generators = generators_from(j);
  for (const auto& a : arrows_from(j, "arrows")) qc.arrows.push_back({a.from, a.to, a.u, a.v});
  return qc;
}

json to_json(const QuotientComplex& qc) {
  auto arrows = qc.arrows;
  std::sort(arrows.begin(), arrows.end());
  json arr = json::array();
  for (const auto& a : arrows) arr.push_back(arrow_json(a.source, a.target, a.u_power, a.v_power));
  return {{"name", qc.name}, {"generators", generators_json(qc.generators)}, {"arrows", arr}};
}

FullComplex full_from_json(const json& j) {
  auto qc = quotient_from_json(j);
  require_valid(qc);
  auto fc = full_from_quotient(qc);
  for (const auto& d : arrows_from(j, "diagonals")) {
    if (d.from >= fc.size() || d.to >= fc.size()) throw FormatError("diagonal endpoint out of range");
    const int da = fc.generators[d.to].alexander - fc.generators[d.from].alexander;
    if (d.u <= 0 || d.v <= 0 || d.v != d.u - da) throw FormatError("diagonal powers inconsistent with gradings");
    fc.entries.push_back({d.from, d.to, d.u});
  }
  std::sort(fc.entries.begin(), fc.entries.end());
  return fc;
}

json to_json(const FullComplex& fc) {
  json j = to_json(fc.quotient());
  json diag = json::array();
  for (const auto& e : fc.entries) {
    if (!fc.is_diagonal(e)) continue;
    const int da = fc.generators[e.target].alexander - fc.generators[e.source].alexander;
    diag.push_back(arrow_json(e.source, e.target, e.u_exponent, e.u_exponent - da));
  }
  j["diagonals"] = diag;
  return j;
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

QuotientComplex read_quotient(const std::filesystem::path& path) {
  try {
    return quotient_from_json(read_json_file(path));
  } catch (const FormatError& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

FullComplex read_full(const std::filesystem::path& path) { return full_from_json(read_json_file(path)); }

void write_json_file(const std::filesystem::path& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw FormatError("cannot write " + path.string());
  out << j.dump(1) << '\n';
}

}  // namespace hfklift
