#include "hfklift/lift.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <set>
#include <tuple>

namespace hfklift {

bool degree_two_free(const std::vector<Generator>& generators) {
  if (generators.empty()) return true;
  auto [lo, hi] = std::minmax_element(generators.begin(), generators.end(),
                                      [](const Generator& a, const Generator& b) { return a.delta() < b.delta(); });
  if (hi->delta() - lo->delta() > 2) return false;
  std::map<int, std::set<int>> maslov_by_alexander;
  for (const auto& g : generators) maslov_by_alexander[g.alexander].insert(g.maslov);
  return std::all_of(maslov_by_alexander.begin(), maslov_by_alexander.end(),
                     [](const auto& kv) { return kv.second.size() <= 2; });
}

FullComplex build_hv(const QuotientComplex& qc) {
  require_valid(qc);
  auto hv = full_from_quotient(qc);
  for (std::size_t a = 0; a < qc.arrows.size(); ++a) {
    const auto& arr = qc.arrows[a];
    const int diff = hv.generators[arr.target].maslov - hv.generators[arr.source].maslov + 1;
    if (diff % 2 != 0 || diff / 2 != arr.u_power)
      throw LiftError("arrow " + std::to_string(a) + " (" + std::to_string(arr.source) + "->" +
                      std::to_string(arr.target) + ") violates the exponent law");
  }
  return hv;
}

std::vector<Placeholder> placeholders(const QuotientComplex& qc) {
  std::vector<Generator> gens(qc.size());
  for (const auto& g : qc.generators) gens.at(g.id) = g;
  std::vector<Placeholder> out;
  for (GenId i = 0; i < gens.size(); ++i) {
    for (GenId j = 0; j < gens.size(); ++j) {
      const int diff = gens[i].maslov - gens[j].maslov + 1;
      if (diff % 2 != 0) continue;
      const int k = diff / 2;
      if (k >= 1 && k > gens[i].alexander - gens[j].alexander) out.push_back({out.size(), j, i, k});
    }
  }
  return out;
}

namespace {

struct Term {
  GenId source;
  GenId target;
  int exponent;
  long var;  // -1 for a known H+V entry
};

struct PositionAccumulator {
  int exponent = 0;
  bool constant = false;
  std::vector<std::size_t> linear;                           // toggles
  std::vector<std::pair<std::size_t, std::size_t>> quadratic;  // toggles
};

}  // namespace

EquationSystem square_to_system(const FullComplex& hv, const std::vector<Placeholder>& vars) {
  const std::size_t n = hv.size();
  std::vector<Term> terms;
  for (const auto& e : hv.entries) terms.push_back({e.source, e.target, e.u_exponent, -1});
  for (const auto& p : vars) terms.push_back({p.source, p.target, p.u_exponent, static_cast<long>(p.var_index)});

  std::vector<std::vector<const Term*>> leaving(n);
  for (const auto& t : terms) leaving[t.source].push_back(&t);

  std::map<std::pair<GenId, GenId>, PositionAccumulator> positions;  // (target, source)
  for (const auto& first : terms) {
    for (const Term* second : leaving[first.target]) {
      auto& acc = positions[{second->target, first.source}];
      acc.exponent = first.exponent + second->exponent;
      if (first.var < 0 && second->var < 0) {
        acc.constant = !acc.constant;
      } else if (first.var < 0 || second->var < 0) {
        acc.linear.push_back(static_cast<std::size_t>(std::max(first.var, second->var)));
      } else {
        auto a = static_cast<std::size_t>(first.var), b = static_cast<std::size_t>(second->var);
        acc.quadratic.push_back({std::min(a, b), std::max(a, b)});
      }
    }
  }

  EquationSystem sys;
  sys.vars = vars;
  sys.matrix = gf2::BitMatrix(0, vars.size());
  std::vector<bool> rhs_bits;
  std::set<std::tuple<gf2::BitVector, bool, std::vector<std::pair<std::size_t, std::size_t>>>> seen;
  for (auto& [pos, acc] : positions) {
    gf2::BitVector row(vars.size());
    for (auto v : acc.linear) row.flip(v);
    std::map<std::pair<std::size_t, std::size_t>, bool> quad;
    for (auto q : acc.quadratic) quad[q] = !quad[q];
    std::vector<std::pair<std::size_t, std::size_t>> quad_terms;
    for (auto& [q, on] : quad)
      if (on) quad_terms.push_back(q);
    if (row.none() && !acc.constant && quad_terms.empty()) continue;
    if (!seen.insert({row, acc.constant, quad_terms}).second) continue;
    const std::size_t r = sys.matrix.rows();
    sys.matrix.append_row(std::move(row));
    rhs_bits.push_back(acc.constant);
    for (auto& q : quad_terms) sys.nonlinear_terms.push_back({r, q.first, q.second});
  }
  sys.rhs = gf2::BitVector(rhs_bits.size());
  for (std::size_t r = 0; r < rhs_bits.size(); ++r)
    if (rhs_bits[r]) sys.rhs.set(r);

  if (!sys.nonlinear_terms.empty() && degree_two_free(hv.generators))
    throw std::logic_error("quadratic terms in d_var^2 although no two placeholders can compose");
  return sys;
}

EquationSystem linear_subsystem(const EquationSystem& system) {
  std::set<std::size_t> quadratic_rows;
  for (const auto& q : system.nonlinear_terms) quadratic_rows.insert(q.row);
  EquationSystem out;
  out.vars = system.vars;
  out.matrix = gf2::BitMatrix(0, system.num_vars());
  std::vector<bool> rhs;
  for (std::size_t r = 0; r < system.num_rows(); ++r) {
    if (quadratic_rows.contains(r)) continue;
    out.matrix.append_row(system.matrix.row(r));
    rhs.push_back(system.rhs.test(r));
  }
  out.rhs = gf2::BitVector(rhs.size());
  for (std::size_t r = 0; r < rhs.size(); ++r)
    if (rhs[r]) out.rhs.set(r);
  return out;
}

SolutionSet solve(const EquationSystem& system) {
  if (!system.nonlinear_terms.empty()) throw std::logic_error("solve() needs an affine system");
  auto sol = gf2::solve(system.matrix, system.rhs);
  if (!sol) throw NoLiftError();
  return {std::move(sol->base), std::move(sol->kernel)};
}

FullComplex apply_assignment(const FullComplex& hv, const std::vector<Placeholder>& vars,
                             const gf2::BitVector& assignment) {
  FullComplex fc = hv;
  for (const auto& p : vars)
    if (assignment.test(p.var_index)) fc.entries.push_back({p.source, p.target, p.u_exponent});
  std::sort(fc.entries.begin(), fc.entries.end());
  return fc;
}

LiftEnumerator::LiftEnumerator(FullComplex hv, std::vector<Placeholder> vars, SolutionSet solutions,
                               std::size_t max_kernel_dim)
    : hv_(std::move(hv)), vars_(std::move(vars)), solutions_(std::move(solutions)) {
  if (solutions_.kernel_dim() > max_kernel_dim || solutions_.kernel_dim() >= 63)
    throw KernelTooLargeError(solutions_.kernel_dim(), max_kernel_dim);
}

std::optional<LiftEnumerator::Lift> LiftEnumerator::next() {
  while (index_ < candidates()) {
    const std::uint64_t l = index_++;
    gf2::BitVector a = solutions_.base;
    for (std::size_t t = 0; t < solutions_.kernel_dim(); ++t)
      if ((l >> t) & 1u) a ^= solutions_.kernel_basis[t];
    auto fc = apply_assignment(hv_, vars_, a);
    if (!squares_to_zero(fc)) {
      ++rejected_;
      continue;
    }
    return Lift{l, std::move(a), std::move(fc)};
  }
  return std::nullopt;
}

LiftEnumerator enumerate_lifts(const QuotientComplex& qc, const SolutionSet& solutions,
                               std::size_t max_kernel_dim) {
  return LiftEnumerator(build_hv(qc), placeholders(qc), solutions, max_kernel_dim);
}

LiftSet all_lifts(const QuotientComplex& qc, std::size_t max_kernel_dim) {
  auto hv = build_hv(qc);
  auto vars = placeholders(qc);
  auto system = square_to_system(hv, vars);
  LiftSet out;
  out.placeholder_count = vars.size();
  out.equation_count = system.num_rows();
  out.linear = system.nonlinear_terms.empty();
  auto solutions = solve(out.linear ? system : linear_subsystem(system));
  out.kernel_dim = solutions.kernel_dim();
  LiftEnumerator it(std::move(hv), std::move(vars), std::move(solutions), max_kernel_dim);
  while (auto l = it.next()) out.lifts.push_back(std::move(l->complex));
  out.rejected = it.rejected();
  if (out.lifts.empty()) throw NoLiftError();
  return out;
}

FullComplex find_lift(const QuotientComplex& qc, std::size_t search_bits) {
  auto hv = build_hv(qc);
  auto vars = placeholders(qc);
  const auto system = square_to_system(hv, vars);
  if (system.nonlinear_terms.empty()) return apply_assignment(hv, vars, solve(system).base);

  const auto sol = solve(linear_subsystem(system));
  std::map<std::size_t, std::vector<std::pair<std::size_t, std::size_t>>> rows;
  for (const auto& q : system.nonlinear_terms) rows[q.row].push_back({q.var_a, q.var_b});
  auto satisfied = [&](const gf2::BitVector& a) {
    for (const auto& [r, terms] : rows) {
      bool v = system.matrix.row(r).dot(a) != system.rhs.test(r);
      for (auto [i, j] : terms) v ^= a.test(i) && a.test(j);
      if (v) return false;
    }
    return true;
  };
  const std::size_t m = std::min(sol.kernel_dim(), search_bits);
  gf2::BitVector a = sol.base;
  for (std::uint64_t i = 0;; ++i) {
    if (i > 0) a ^= sol.kernel_basis[static_cast<std::size_t>(std::countr_zero(i))];
    if (satisfied(a)) {
      auto fc = apply_assignment(hv, vars, a);
      if (squares_to_zero(fc)) return fc;
    }
    if (i + 1 == (std::uint64_t{1} << m)) break;
  }
  throw NoLiftError();
}

FullComplex lift(const QuotientComplex& qc) {
  const auto stats = derived_stats(qc);
  if (stats.thickness > 1)
    throw LiftError("thickness " + std::to_string(stats.thickness) +
                    " > 1: lifts are not unique, use enumerate_lifts / all_lifts");
  auto hv = build_hv(qc);
  auto vars = placeholders(qc);
  auto solutions = solve(square_to_system(hv, vars));
  auto fc = apply_assignment(hv, vars, solutions.base);
  if (!squares_to_zero(fc)) throw std::logic_error("affine solution does not square to zero");
  return fc;
}

}  // namespace hfklift
