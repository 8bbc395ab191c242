#include "hfklift/gf2.hpp"

#include <bit>
#include <stdexcept>

namespace hfklift::gf2 {

BitVector& BitVector::operator^=(const BitVector& other) {
  if (other.size_ != size_) throw std::invalid_argument("BitVector size mismatch");
  for (std::size_t w = 0; w < words_.size(); ++w) words_[w] ^= other.words_[w];
  return *this;
}

bool BitVector::none() const {
  for (auto w : words_)
    if (w) return false;
  return true;
}

std::size_t BitVector::count() const {
  std::size_t c = 0;
  for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

std::size_t BitVector::lowest() const {
  for (std::size_t w = 0; w < words_.size(); ++w)
    if (words_[w]) return w * 64 + static_cast<std::size_t>(std::countr_zero(words_[w]));
  return size_;
}

bool BitVector::dot(const BitVector& other) const {
  std::uint64_t acc = 0;
  for (std::size_t w = 0; w < words_.size(); ++w) acc ^= words_[w] & other.words_[w];
  return std::popcount(acc) & 1;
}

std::string BitVector::to_string() const {
  std::string s(size_, '0');
  for (std::size_t i = 0; i < size_; ++i)
    if (test(i)) s[i] = '1';
  return s;
}

void BitMatrix::append_row(BitVector row) {
  if (rows_.empty() && cols_ == 0) cols_ = row.size();
  if (row.size() != cols_) throw std::invalid_argument("row width mismatch");
  rows_.push_back(std::move(row));
}

BitVector BitMatrix::multiply(const BitVector& v) const {
  BitVector out(rows());
  for (std::size_t r = 0; r < rows(); ++r)
    if (rows_[r].dot(v)) out.set(r);
  return out;
}

BitMatrix BitMatrix::transpose() const {
  BitMatrix t(cols_, rows());
  for (std::size_t r = 0; r < rows(); ++r)
    for (std::size_t c = rows_[r].lowest(); c < cols_; ++c)
      if (rows_[r].test(c)) t.set(c, r);
  return t;
}

BitMatrix BitMatrix::multiply(const BitMatrix& other) const {
  if (cols_ != other.rows()) throw std::invalid_argument("matrix shape mismatch");
  BitMatrix out(rows(), other.cols());
  for (std::size_t r = 0; r < rows(); ++r)
    for (std::size_t k = 0; k < cols_; ++k)
      if (rows_[r].test(k)) out.rows_[r] ^= other.rows_[k];
  return out;
}

bool BitMatrix::is_zero() const {
  for (const auto& r : rows_)
    if (r.any()) return false;
  return true;
}

bool Span::insert(BitVector v, BitVector tag) {
  if (v.size() != dim_) throw std::invalid_argument("Span vector size mismatch");
  for (std::size_t p = v.lowest(); p < dim_; p = v.lowest()) {
    long r = pivot_row_[p];
    if (r < 0) {
      pivot_row_[p] = static_cast<long>(rows_.size());
      rows_.push_back(std::move(v));
      tags_.push_back(std::move(tag));
      return true;
    }
    v ^= rows_[static_cast<std::size_t>(r)];
    tag ^= tags_[static_cast<std::size_t>(r)];
  }
  return false;
}

Span::Reduced Span::reduce(BitVector v) const {
  if (v.size() != dim_) throw std::invalid_argument("Span vector size mismatch");
  BitVector tag(tag_dim_);
  // A row with pivot p only touches bits >= p, so one increasing pass suffices.
  for (std::size_t p = v.lowest(); p < dim_; ++p) {
    if (!v.test(p)) continue;
    long r = pivot_row_[p];
    if (r < 0) continue;
    v ^= rows_[static_cast<std::size_t>(r)];
    tag ^= tags_[static_cast<std::size_t>(r)];
  }
  return {std::move(v), std::move(tag)};
}

std::size_t rank(std::span<const BitVector> vectors, std::size_t dim) {
  Span s(dim, 0);
  for (const auto& v : vectors) s.insert(v);
  return s.rank();
}

std::size_t rank(const BitMatrix& m) {
  Span s(m.cols(), 0);
  for (std::size_t r = 0; r < m.rows(); ++r) s.insert(m.row(r));
  return s.rank();
}

namespace {

// In-place reduced row echelon form on rows augmented with one extra column.
// Returns the pivot column of each nonzero row, in row order.
std::vector<std::size_t> rref(std::vector<BitVector>& rows, std::size_t ncols) {
  std::vector<std::size_t> pivots;
  std::size_t lead = 0;
  for (std::size_t c = 0; c < ncols && lead < rows.size(); ++c) {
    std::size_t sel = lead;
    while (sel < rows.size() && !rows[sel].test(c)) ++sel;
    if (sel == rows.size()) continue;
    std::swap(rows[sel], rows[lead]);
    for (std::size_t r = 0; r < rows.size(); ++r)
      if (r != lead && rows[r].test(c)) rows[r] ^= rows[lead];
    pivots.push_back(c);
    ++lead;
  }
  return pivots;
}

}  // namespace

std::optional<AffineSolution> solve(const BitMatrix& m, const BitVector& rhs) {
  const std::size_t n = m.cols();
  if (rhs.size() != m.rows()) throw std::invalid_argument("rhs size mismatch");
  std::vector<BitVector> rows;
  rows.reserve(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    BitVector aug(n + 1);
    const auto& src = m.row(r);
    for (std::size_t c = src.lowest(); c < n; ++c)
      if (src.test(c)) aug.set(c);
    if (rhs.test(r)) aug.set(n);
    rows.push_back(std::move(aug));
  }
  auto pivots = rref(rows, n);
  // Any remaining row that is 0 = 1 makes the system inconsistent.
  for (std::size_t r = pivots.size(); r < rows.size(); ++r)
    if (rows[r].test(n)) return std::nullopt;

  AffineSolution sol{BitVector(n), {}, pivots};
  std::vector<bool> is_pivot(n, false);
  for (std::size_t r = 0; r < pivots.size(); ++r) {
    is_pivot[pivots[r]] = true;
    if (rows[r].test(n)) sol.base.set(pivots[r]);
  }
  for (std::size_t f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    BitVector k(n);
    k.set(f);
    for (std::size_t r = 0; r < pivots.size(); ++r)
      if (rows[r].test(f)) k.set(pivots[r]);
    sol.kernel.push_back(std::move(k));
  }
  return sol;
}

std::vector<BitVector> nullspace(const BitMatrix& m) {
  auto sol = solve(m, BitVector(m.rows()));
  return sol->kernel;
}

}  // namespace hfklift::gf2
