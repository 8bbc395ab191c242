#include "hfklift/complex.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <tuple>

#include "hfklift/gf2.hpp"

namespace hfklift {

const Generator& QuotientComplex::gen(GenId id) const {
  if (id < generators.size() && generators[id].id == id) return generators[id];
  for (const auto& g : generators)
    if (g.id == id) return g;
  throw std::out_of_range("no generator with id " + std::to_string(id));
}

std::string to_string(Violation::Kind kind) {
  switch (kind) {
    case Violation::Kind::Empty: return "empty";
    case Violation::Kind::GeneratorIds: return "generator-ids";
    case Violation::Kind::ArrowEndpoint: return "arrow-endpoint";
    case Violation::Kind::ArrowPowers: return "arrow-powers";
    case Violation::Kind::MaslovLaw: return "maslov-law";
    case Violation::Kind::AlexanderLaw: return "alexander-law";
    case Violation::Kind::DuplicateArrow: return "duplicate-arrow";
  }
  return "unknown";
}

std::vector<Violation> validate(const QuotientComplex& qc) {
  using K = Violation::Kind;
  std::vector<Violation> out;
  const std::size_t n = qc.size();
  if (n == 0) out.push_back({K::Empty, {}, -1, "complex has no generators"});

  std::vector<int> seen(n, 0);
  std::vector<const Generator*> by_id(n, nullptr);
  for (const auto& g : qc.generators) {
    if (g.id >= n) {
      out.push_back({K::GeneratorIds, {g.id}, -1, "generator id out of range 0..n-1"});
      continue;
    }
    if (seen[g.id]++) out.push_back({K::GeneratorIds, {g.id}, -1, "duplicate generator id"});
    by_id[g.id] = &g;
  }

  std::set<std::pair<GenId, GenId>> pairs;
  for (std::size_t a = 0; a < qc.arrows.size(); ++a) {
    const auto& arr = qc.arrows[a];
    const long idx = static_cast<long>(a);
    if (arr.source >= n || arr.target >= n || !by_id[arr.source] || !by_id[arr.target]) {
      out.push_back({K::ArrowEndpoint, {arr.source, arr.target}, idx, "arrow endpoint is not a generator"});
      continue;
    }
    if (!pairs.insert({arr.source, arr.target}).second)
      out.push_back({K::DuplicateArrow, {arr.source, arr.target}, idx, "repeated (source, target) pair"});
    if (arr.u_power < 0 || arr.v_power < 0 || (arr.u_power == 0) == (arr.v_power == 0)) {
      out.push_back({K::ArrowPowers, {arr.source, arr.target}, idx,
                     "exactly one of the u and v powers must be zero, the other positive"});
      continue;
    }
    const auto& s = *by_id[arr.source];
    const auto& t = *by_id[arr.target];
    if (t.maslov != s.maslov - 1 + 2 * arr.u_power) {
      std::ostringstream msg;
      msg << "M(target)=" << t.maslov << " but M(source)-1+2u=" << s.maslov - 1 + 2 * arr.u_power;
      out.push_back({K::MaslovLaw, {arr.source, arr.target}, idx, msg.str()});
    }
    if (t.alexander != s.alexander + arr.u_power - arr.v_power) {
      std::ostringstream msg;
      msg << "A(target)=" << t.alexander << " but A(source)+u-v=" << s.alexander + arr.u_power - arr.v_power;
      out.push_back({K::AlexanderLaw, {arr.source, arr.target}, idx, msg.str()});
    }
  }
  return out;
}

void require_valid(const QuotientComplex& qc) {
  auto v = validate(qc);
  if (v.empty()) return;
  std::ostringstream msg;
  msg << qc.name << ": " << v.size() << " violation(s)";
  for (std::size_t i = 0; i < std::min<std::size_t>(v.size(), 3); ++i)
    msg << "; " << to_string(v[i].kind) << ": " << v[i].message;
  throw InvalidComplex(msg.str());
}

HfkTable hfk_table(const std::vector<Generator>& generators) {
  HfkTable t;
  for (const auto& g : generators) ++t[{g.alexander, g.maslov}];
  return t;
}

HfkTable mirror_table(const HfkTable& table) {
  HfkTable m;
  for (const auto& [key, dim] : table) m[{-key.first, -key.second}] = dim;
  return m;
}

DerivedStats derived_stats(const QuotientComplex& qc) {
  if (qc.generators.empty()) throw InvalidComplex("derived_stats: complex has no generators");
  DerivedStats s;
  int lo = qc.generators.front().delta(), hi = lo;
  s.genus_bound = qc.generators.front().alexander;
  for (const auto& g : qc.generators) {
    lo = std::min(lo, g.delta());
    hi = std::max(hi, g.delta());
    s.genus_bound = std::max(s.genus_bound, g.alexander);
  }
  s.thickness = hi - lo;
  s.rho = hi;
  s.hfk_table = hfk_table(qc.generators);
  return s;
}

QuotientComplex mirror(const QuotientComplex& qc) {
  QuotientComplex m;
  m.name = qc.name.starts_with("m") ? qc.name.substr(1) : "m" + qc.name;
  m.generators.reserve(qc.size());
  for (const auto& g : qc.generators) m.generators.push_back({g.id, -g.maslov, -g.alexander});
  m.arrows.reserve(qc.arrows.size());
  for (const auto& a : qc.arrows) m.arrows.push_back({a.target, a.source, a.u_power, a.v_power});
  return m;
}

int forced_exponent(const Generator& source, const Generator& target) {
  const int diff = target.maslov - source.maslov + 1;
  if (diff % 2 != 0)
    throw std::invalid_argument("Maslov difference between generators " + std::to_string(source.id) +
                                " and " + std::to_string(target.id) + " is even");
  return diff / 2;
}

bool FullComplex::is_diagonal(const DiffEntry& e) const {
  const int da = generators[e.target].alexander - generators[e.source].alexander;
  return e.u_exponent > 0 && e.u_exponent > da;
}

std::size_t FullComplex::diagonal_count() const {
  return static_cast<std::size_t>(
      std::count_if(entries.begin(), entries.end(), [&](const DiffEntry& e) { return is_diagonal(e); }));
}

QuotientComplex FullComplex::quotient() const {
  QuotientComplex qc{name, generators, {}};
  for (const auto& e : entries) {
    if (is_diagonal(e)) continue;
    const int da = generators[e.target].alexander - generators[e.source].alexander;
    qc.arrows.push_back({e.source, e.target, e.u_exponent, e.u_exponent - da});
  }
  return qc;
}

namespace {

std::vector<Generator> indexed(const std::vector<Generator>& gens) {
  std::vector<Generator> out(gens.size());
  for (const auto& g : gens) out.at(g.id) = g;
  return out;
}

}  // namespace

FullComplex full_from_quotient(const QuotientComplex& qc) {
  FullComplex fc{qc.name, indexed(qc.generators), {}};
  for (const auto& a : qc.arrows) fc.entries.push_back({a.source, a.target, a.u_power});
  std::sort(fc.entries.begin(), fc.entries.end());
  return fc;
}

FullComplex mirror(const FullComplex& fc) {
  FullComplex m;
  m.name = fc.name.starts_with("m") ? fc.name.substr(1) : "m" + fc.name;
  for (const auto& g : fc.generators) m.generators.push_back({g.id, -g.maslov, -g.alexander});
  for (const auto& e : fc.entries) m.entries.push_back({e.target, e.source, e.u_exponent});
  std::sort(m.entries.begin(), m.entries.end());
  return m;
}

std::vector<SquareDefect> square_defects(const FullComplex& fc) {
  const std::size_t n = fc.size();
  std::vector<std::vector<const DiffEntry*>> out_of(n);
  for (const auto& e : fc.entries) out_of[e.source].push_back(&e);
  // d^2(x_c) = sum over c -> m -> r; the U-power is additive.
  std::map<std::tuple<GenId, GenId, int>, int> acc;
  for (const auto& first : fc.entries)
    for (const DiffEntry* second : out_of[first.target]) ++acc[{first.source, second->target, first.u_exponent + second->u_exponent}];
  std::vector<SquareDefect> defects;
  for (const auto& [key, count] : acc)
    if (count % 2) defects.push_back({std::get<0>(key), std::get<1>(key), std::get<2>(key)});
  return defects;
}

long u_one_homology_dim(const FullComplex& fc) {
  const std::size_t n = fc.size();
  gf2::BitMatrix N(n, n);
  for (const auto& e : fc.entries) N.flip(e.target, e.source);
  return static_cast<long>(n) - 2 * static_cast<long>(gf2::rank(N));
}

std::vector<std::string> full_complex_violations(const FullComplex& fc) {
  std::vector<std::string> out;
  std::set<std::pair<GenId, GenId>> seen;
  for (const auto& e : fc.entries) {
    const auto& s = fc.generators.at(e.source);
    const auto& t = fc.generators.at(e.target);
    const std::string where = "(" + std::to_string(e.target) + "," + std::to_string(e.source) + ")";
    if (!seen.insert({e.source, e.target}).second) out.push_back("duplicate entry at " + where);
    if ((t.maslov - s.maslov + 1) % 2 != 0 || e.u_exponent != (t.maslov - s.maslov + 1) / 2)
      out.push_back("exponent law fails at " + where);
    if (e.u_exponent < 0 || (e.u_exponent == 0 && !(t.alexander < s.alexander)))
      out.push_back("filtration law fails at " + where);
  }
  if (!squares_to_zero(fc)) out.push_back("d^2 != 0");
  if (u_one_homology_dim(fc) != 1) out.push_back("U=1 homology is not one-dimensional");
  return out;
}

}  // namespace hfklift
