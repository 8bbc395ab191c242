#pragma once

// Bit-packed linear algebra over the two-element field.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace hfklift::gf2 {

class BitVector {
 public:
  BitVector() = default;
  explicit BitVector(std::size_t size)
      : size_(size), words_((size + 63) / 64, 0) {}

  std::size_t size() const { return size_; }
  bool test(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }
  void set(std::size_t i) { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  void reset(std::size_t i) { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
  void flip(std::size_t i) { words_[i >> 6] ^= std::uint64_t{1} << (i & 63); }
  void assign(std::size_t i, bool value) { value ? set(i) : reset(i); }

  BitVector& operator^=(const BitVector& other);
  friend BitVector operator^(BitVector a, const BitVector& b) { return a ^= b; }
  bool operator==(const BitVector& other) const = default;
  auto operator<=>(const BitVector& other) const = default;

  bool none() const;
  bool any() const { return !none(); }
  std::size_t count() const;
  /// Index of the lowest set bit, or size() when empty.
  std::size_t lowest() const;
  /// Parity of the bitwise AND with `other` (a GF(2) dot product).
  bool dot(const BitVector& other) const;

  std::span<const std::uint64_t> words() const { return words_; }
  std::string to_string() const;

 private:
  std::size_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

/// Dense matrix stored as a list of bit-packed rows.
class BitMatrix {
 public:
  BitMatrix() = default;
  BitMatrix(std::size_t rows, std::size_t cols)
      : cols_(cols), rows_(rows, BitVector(cols)) {}

  std::size_t rows() const { return rows_.size(); }
  std::size_t cols() const { return cols_; }
  bool test(std::size_t r, std::size_t c) const { return rows_[r].test(c); }
  void set(std::size_t r, std::size_t c) { rows_[r].set(c); }
  void flip(std::size_t r, std::size_t c) { rows_[r].flip(c); }
  const BitVector& row(std::size_t r) const { return rows_[r]; }
  BitVector& row(std::size_t r) { return rows_[r]; }
  void append_row(BitVector row);

  BitVector multiply(const BitVector& v) const;
  BitMatrix multiply(const BitMatrix& other) const;
  BitMatrix transpose() const;
  bool is_zero() const;

 private:
  std::size_t cols_ = 0;
  std::vector<BitVector> rows_;
};

/// Incrementally built span of vectors with tracked combinations.
///
/// Each stored row has a distinct lowest set bit, so reducing a vector walks
/// its set bits in increasing order and never revisits a cleared position.
/// Every inserted vector carries a tag; reduce() returns the XOR of the tags
/// of the rows it used, which expresses the input in terms of the inserted
/// vectors.
class Span {
 public:
  Span(std::size_t dim, std::size_t tag_dim) : dim_(dim), tag_dim_(tag_dim), pivot_row_(dim, -1) {}

  struct Reduced {
    BitVector remainder;
    BitVector tag;
  };

  /// Returns false (and stores nothing) when `v` already lies in the span.
  bool insert(BitVector v, BitVector tag);
  bool insert(BitVector v) { return insert(std::move(v), BitVector(tag_dim_)); }
  Reduced reduce(BitVector v) const;
  bool contains(const BitVector& v) const { return reduce(v).remainder.none(); }
  std::size_t rank() const { return rows_.size(); }
  std::size_t dim() const { return dim_; }

 private:
  std::size_t dim_;
  std::size_t tag_dim_;
  std::vector<long> pivot_row_;
  std::vector<BitVector> rows_;
  std::vector<BitVector> tags_;
};

std::size_t rank(std::span<const BitVector> vectors, std::size_t dim);
std::size_t rank(const BitMatrix& m);

/// Basis of { x : M x = 0 }.
std::vector<BitVector> nullspace(const BitMatrix& m);

struct AffineSolution {
  BitVector base;                      // particular solution, free variables 0
  std::vector<BitVector> kernel;       // basis of the homogeneous solutions
  std::vector<std::size_t> pivots;     // pivot column per reduced row
};

/// Solves M x = rhs by reduced row echelon form with pivots chosen left to
/// right. Returns nullopt when the system is inconsistent.
std::optional<AffineSolution> solve(const BitMatrix& m, const BitVector& rhs);

}  // namespace hfklift::gf2
