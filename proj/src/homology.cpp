#include "hfklift/homology.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace hfklift {

namespace {

using IndexMap = std::map<std::pair<GenId, int>, std::size_t>;

IndexMap index_of(const std::vector<LatticeElement>& basis) {
  IndexMap idx;
  for (std::size_t c = 0; c < basis.size(); ++c) idx[{basis[c].gen, basis[c].u_shift}] = c;
  return idx;
}

std::vector<LatticeElement> region_basis(const FullComplex& fc, auto lower, auto upper) {
  std::vector<LatticeElement> basis;
  for (const auto& g : fc.generators)
    for (int i = lower(g); i <= upper(g); ++i) basis.push_back({g.id, i, g.maslov + 2 * i});
  return basis;
}

std::vector<gf2::BitVector> columns_of(const gf2::BitMatrix& m) {
  auto t = m.transpose();
  std::vector<gf2::BitVector> cols;
  cols.reserve(t.rows());
  for (std::size_t r = 0; r < t.rows(); ++r) cols.push_back(t.row(r));
  return cols;
}

gf2::BitVector combine(const std::vector<gf2::BitVector>& cols, const gf2::BitVector& coeffs, std::size_t dim) {
  gf2::BitVector out(dim);
  for (std::size_t c = 0; c < coeffs.size(); ++c)
    if (coeffs.test(c)) out ^= cols[c];
  return out;
}

gf2::BitVector unit(std::size_t dim, std::size_t i) {
  gf2::BitVector v(dim);
  v.set(i);
  return v;
}

gf2::BitVector truncate(const gf2::BitVector& v, std::size_t dim) {
  gf2::BitVector out(dim);
  for (std::size_t i = 0; i < dim; ++i)
    if (v.test(i)) out.set(i);
  return out;
}

}  // namespace

std::vector<LatticeElement> truncated_basis(const FullComplex& fc, int k) {
  return region_basis(
      fc, [k](const Generator& g) { return k - g.alexander; }, [](const Generator&) { return -1; });
}

std::vector<LatticeElement> truncated_model_basis(const FullComplex& fc, int k, int N) {
  return region_basis(
      fc, [k](const Generator& g) { return std::min(0, k - g.alexander); }, [N](const Generator&) { return N; });
}

gf2::BitMatrix truncated_differential(const FullComplex& fc, const std::vector<LatticeElement>& basis) {
  const auto idx = index_of(basis);
  std::vector<std::vector<const DiffEntry*>> out_of(fc.size());
  for (const auto& e : fc.entries) out_of.at(e.source).push_back(&e);
  gf2::BitMatrix m(basis.size(), basis.size());
  for (std::size_t c = 0; c < basis.size(); ++c) {
    for (const DiffEntry* e : out_of.at(basis[c].gen)) {
      auto it = idx.find({e->target, basis[c].u_shift - e->u_exponent});
      if (it != idx.end()) m.flip(it->second, c);
    }
  }
  return m;
}

gf2::BitMatrix u_map(const std::vector<LatticeElement>& basis) {
  const auto idx = index_of(basis);
  gf2::BitMatrix m(basis.size(), basis.size());
  for (std::size_t c = 0; c < basis.size(); ++c) {
    auto it = idx.find({basis[c].gen, basis[c].u_shift - 1});
    if (it != idx.end()) m.set(it->second, c);
  }
  return m;
}

std::size_t GradedHomology::dim(int d) const {
  auto it = blocks.find(d);
  return it == blocks.end() ? 0 : it->second.dim();
}

std::size_t GradedHomology::total_dim() const {
  std::size_t n = 0;
  for (const auto& [d, b] : blocks) n += b.dim();
  return n;
}

std::map<int, int> GradedHomology::dims() const {
  std::map<int, int> out;
  for (const auto& [d, b] : blocks) out[d] = static_cast<int>(b.dim());
  return out;
}

gf2::BitVector GradedHomology::apply_u(int d, const gf2::BitVector& coords) const {
  auto it = blocks.find(d);
  const std::size_t target_dim = dim(d - 2);
  if (it == blocks.end() || target_dim == 0) return gf2::BitVector(target_dim);
  return combine(it->second.u_columns, coords, target_dim);
}

std::size_t GradedHomology::u_power_rank(int d, int m) const {
  const std::size_t n = dim(d);
  if (n == 0) return 0;
  std::vector<gf2::BitVector> images;
  for (std::size_t i = 0; i < n; ++i) images.push_back(unit(n, i));
  int g = d;
  for (int step = 0; step < m; ++step, g -= 2) {
    if (dim(g - 2) == 0) return 0;
    for (auto& v : images) v = apply_u(g, v);
  }
  return gf2::rank(images, dim(g));
}

std::map<int, int> GradedHomology::u_ranks() const {
  std::map<int, int> out;
  for (const auto& [d, b] : blocks) out[d] = static_cast<int>(u_power_rank(d, 1));
  return out;
}

GradedHomology homology_with_u(const gf2::BitMatrix& matrix, const std::vector<LatticeElement>& basis) {
  const std::size_t m = basis.size();
  if (matrix.rows() != matrix.cols()) throw std::invalid_argument("differential is not square");
  if (matrix.rows() != m) throw std::invalid_argument("differential does not match the basis");

  const auto cols = columns_of(matrix);
  for (std::size_t c = 0; c < m; ++c) {
    for (std::size_t r = cols[c].lowest(); r < m; ++r)
      if (cols[c].test(r) && basis[r].grading != basis[c].grading - 1)
        throw std::invalid_argument("differential is not homogeneous of degree -1");
    if (combine(cols, cols[c], m).any()) throw std::invalid_argument("differential does not square to zero");
  }

  std::map<int, std::vector<std::size_t>> by_grading;
  for (std::size_t c = 0; c < m; ++c) by_grading[basis[c].grading].push_back(c);

  const auto idx = index_of(basis);
  std::vector<long> u_target(m, -1);
  for (std::size_t c = 0; c < m; ++c) {
    auto it = idx.find({basis[c].gen, basis[c].u_shift - 1});
    if (it != idx.end()) u_target[c] = static_cast<long>(it->second);
  }

  // Spans of Z_d with boundaries tagged 0 and representative r tagged e_r, so
  // reducing a cycle yields its class.
  std::map<int, gf2::Span> cycle_spans;
  GradedHomology gh;
  for (const auto& [d, cells] : by_grading) {
    gf2::Span kernel_search(m, cells.size());
    std::vector<gf2::BitVector> cycles;
    for (std::size_t l = 0; l < cells.size(); ++l) {
      auto red = kernel_search.reduce(cols[cells[l]]);
      auto tag = red.tag;
      tag.flip(l);
      if (red.remainder.none()) {
        gf2::BitVector z(m);
        for (std::size_t t = 0; t < cells.size(); ++t)
          if (tag.test(t)) z.set(cells[t]);
        cycles.push_back(std::move(z));
      } else {
        kernel_search.insert(std::move(red.remainder), std::move(tag));
      }
    }

    gf2::Span span(m, cycles.size());
    if (auto above = by_grading.find(d + 1); above != by_grading.end())
      for (auto c : above->second) span.insert(cols[c]);
    HomologyBlock block{d, {}, {}};
    for (auto& z : cycles) {
      const std::size_t r = block.representatives.size();
      if (span.insert(z, unit(cycles.size(), r))) block.representatives.push_back(std::move(z));
    }
    if (block.dim() > 0) gh.blocks.emplace(d, std::move(block));
    cycle_spans.emplace(d, std::move(span));
  }

  for (auto& [d, block] : gh.blocks) {
    const std::size_t target_dim = gh.dim(d - 2);
    for (const auto& rep : block.representatives) {
      gf2::BitVector image(m);
      for (std::size_t c = rep.lowest(); c < m; ++c)
        if (rep.test(c) && u_target[c] >= 0) image.flip(static_cast<std::size_t>(u_target[c]));
      if (target_dim == 0) {
        auto it = cycle_spans.find(d - 2);
        if (image.any() && (it == cycle_spans.end() || !it->second.contains(image)))
          throw std::invalid_argument("U does not commute with the differential");
        block.u_columns.push_back(gf2::BitVector(0));
        continue;
      }
      auto red = cycle_spans.at(d - 2).reduce(image);
      if (red.remainder.any()) throw std::invalid_argument("U does not commute with the differential");
      block.u_columns.push_back(truncate(red.tag, target_dim));
    }
  }
  return gh;
}

std::map<int, int> count_length_one(const GradedHomology& gh) {
  std::map<int, int> out;
  for (const auto& [d, block] : gh.blocks) {
    const std::size_t n = block.dim();
    const std::size_t below = gh.dim(d - 2);
    std::vector<gf2::BitVector> kernel;
    if (below == 0) {
      for (std::size_t i = 0; i < n; ++i) kernel.push_back(unit(n, i));
    } else {
      gf2::BitMatrix u(below, n);
      for (std::size_t c = 0; c < n; ++c)
        for (std::size_t r = 0; r < below; ++r)
          if (block.u_columns[c].test(r)) u.set(r, c);
      kernel = gf2::nullspace(u);
    }
    std::vector<gf2::BitVector> image;
    if (auto above = gh.blocks.find(d + 2); above != gh.blocks.end()) image = above->second.u_columns;
    const std::size_t dim_k = kernel.size();
    const std::size_t dim_i = gf2::rank(image, n);
    auto both = kernel;
    both.insert(both.end(), image.begin(), image.end());
    const std::size_t meet = dim_k + dim_i - gf2::rank(both, n);
    if (dim_k > meet) out[d] = static_cast<int>(dim_k - meet);
  }
  return out;
}

SummandMultiset summands(const GradedHomology& gh) {
  SummandMultiset out;
  auto r = [&](int d, int m) { return static_cast<long>(gh.u_power_rank(d, m)); };
  for (const auto& [d, block] : gh.blocks) {
    for (int m = 0; r(d, m) > 0; ++m) {
      const long count = (r(d, m) - r(d + 2, m + 1)) - (r(d, m + 1) - r(d + 2, m + 2));
      if (count > 0) out[{d, m + 1}] = static_cast<int>(count);
    }
  }
  return out;
}

std::string describe(const SummandMultiset& s) {
  std::ostringstream os;
  bool first = true;
  for (auto it = s.rbegin(); it != s.rend(); ++it) {
    const auto [top, length] = it->first;
    if (!first) os << " + ";
    first = false;
    if (length == 1)
      os << "F_" << top;
    else
      os << "T_" << top - 2 * (length - 1) << "|<=" << top;
    if (it->second > 1) os << "^" << it->second;
  }
  return first ? "0" : os.str();
}

int min_truncation(const FullComplex& fc, int k) {
  int lo = 0, hi = 0;
  if (!fc.generators.empty()) lo = hi = fc.generators.front().alexander;
  for (const auto& g : fc.generators) {
    lo = std::min(lo, g.alexander);
    hi = std::max(hi, g.alexander);
  }
  return (hi - lo) + std::abs(k) + 2;
}

TruncatedModel ak_truncated_model(const FullComplex& fc, int k, int N) {
  const int bound = min_truncation(fc, k);
  if (N < bound)
    throw std::invalid_argument("truncation N=" + std::to_string(N) + " is below the bound " + std::to_string(bound));
  TruncatedModel model;
  model.N = N;
  model.homology = region_homology(fc, truncated_model_basis(fc, k, N));
  const auto& blocks = model.homology.blocks;
  if (blocks.empty()) throw std::logic_error("truncated A_k model has no homology");
  const auto& top = blocks.rbegin()->second;
  if (top.dim() != 1) throw std::logic_error("top grading of the truncated A_k model is not one-dimensional");

  int d = top.grading;
  gf2::BitVector x = unit(1, 0);
  while (true) {
    auto next = model.homology.apply_u(d, x);
    if (next.none()) break;
    x = std::move(next);
    d -= 2;
  }
  model.tower_top = top.grading;
  model.tower_bottom = d;
  if (d > 0 || d % 2 != 0) throw std::logic_error("tower bottom " + std::to_string(d) + " is not of the form -2V");
  model.v_k = -d / 2;
  return model;
}

SummandMultiset predicted_truncated_summands(const TruncatedModel& model) {
  auto s = summands(model.homology);
  const std::pair<int, int> tower{model.tower_top, (model.tower_top - model.tower_bottom) / 2 + 1};
  if (auto it = s.find(tower); it != s.end() && --it->second == 0) s.erase(it);
  if (model.v_k >= 1) ++s[{-2, model.v_k}];
  return s;
}

std::optional<SpliffWitness> spliff_failure(const std::map<int, int>& count_1) {
  std::vector<int> even, odd;
  for (const auto& [d, n] : count_1) {
    if (n <= 0) continue;
    (d % 2 == 0 ? even : odd).push_back(d);
  }
  if (even.size() >= 2) return SpliffWitness{even[0], even[1]};
  if (odd.size() >= 2) return SpliffWitness{odd[0], odd[1]};
  return std::nullopt;
}

bool b_prime_test(const FullComplex& fc, int rho) {
  const int k = rho - 3;
  const auto basis = truncated_basis(fc, k);
  const auto d = truncated_differential(fc, basis);
  const auto gh = homology_with_u(d, basis);
  const int high = 2 * rho - 4, low = 2 * rho - 6;
  if (gh.dim(high) == 0 || gh.dim(low) == 0) return true;

  gf2::Span image(basis.size(), 0);
  for (const auto& col : columns_of(d)) image.insert(col);
  const auto u = u_map(basis);
  for (const auto& rep : gh.blocks.at(high).representatives)
    if (!image.contains(u.multiply(rep))) return true;
  return false;
}

AkReport ak_report(const FullComplex& fc, int k, const AkOptions& options) {
  AkReport r;
  r.k = k;
  const auto gh = region_homology(fc, truncated_basis(fc, k));
  r.gradings = gh.dims();
  r.u_ranks = gh.u_ranks();
  r.raw_count_1 = count_length_one(gh);
  r.summands = summands(gh);
  r.count_1 = r.raw_count_1;
  r.method = "homology count";

  // A one-class tower T_{-2}|<=-2 looks like an F-summand at -2; only V_k tells
  // them apart, so the model runs when that class can change the verdict.
  if (auto it = r.raw_count_1.find(-2); it != r.raw_count_1.end()) {
    auto without = r.raw_count_1;
    if (--without[-2] == 0) without.erase(-2);
    if (spliff_failure(without).has_value() != spliff_failure(r.raw_count_1).has_value()) {
      const int N = options.fallback_N.value_or(min_truncation(fc, k) + 2);
      const auto model = ak_truncated_model(fc, k, N);
      r.v_k = model.v_k;
      r.method = "fallback model";
      if (model.v_k == 1) r.count_1 = without;
    }
  }
  r.witness = spliff_failure(r.count_1);
  r.spliff = !r.witness.has_value();
  return r;
}

namespace {

nlohmann::json graded(const std::map<int, int>& m) {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [d, n] : m) j[std::to_string(d)] = n;
  return j;
}

}  // namespace

nlohmann::json to_json(const AkReport& r) {
  nlohmann::json j;
  j["k"] = r.k;
  j["gradings"] = graded(r.gradings);
  j["u_ranks"] = graded(r.u_ranks);
  j["count_1"] = graded(r.count_1);
  j["summands"] = nlohmann::json::array();
  for (const auto& [key, mult] : r.summands)
    j["summands"].push_back({{"top", key.first}, {"length", key.second}, {"multiplicity", mult}});
  j["towers"] = nlohmann::json::array();
  for (const auto& [key, mult] : r.summands)
    if (key.second > 1) j["towers"].push_back({{"bottom", key.first - 2 * (key.second - 1)}, {"top", key.first}});
  j["module"] = describe(r.summands);
  j["v_k"] = r.v_k ? nlohmann::json(*r.v_k) : nlohmann::json();
  j["spliff"] = r.spliff;
  j["witness"] = r.witness ? nlohmann::json::array({r.witness->grading_a, r.witness->grading_b}) : nlohmann::json();
  j["method"] = r.method;
  if (!r.structure.empty()) j["structure"] = r.structure;
  return j;
}

}  // namespace hfklift
