#pragma once

// Knot Floer complexes: the uv-quotient handed to us by the exporter and the
// full complex over F[U] recovered from it. Coefficients live in GF(2), so an
// arrow's presence is its coefficient.

#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace hfklift {

using GenId = std::size_t;

struct Generator {
  GenId id = 0;
  int maslov = 0;
  int alexander = 0;

  int delta() const { return maslov - alexander; }
  bool operator==(const Generator&) const = default;
};

/// Horizontal (v_power == 0) or vertical (u_power == 0) arrow source -> target,
/// i.e. d(x_source) contains u^a v^b x_target.
struct HVArrow {
  GenId source = 0;
  GenId target = 0;
  int u_power = 0;
  int v_power = 0;

  bool horizontal() const { return v_power == 0; }
  bool operator==(const HVArrow&) const = default;
  auto operator<=>(const HVArrow&) const = default;
};

struct QuotientComplex {
  std::string name;
  std::vector<Generator> generators;
  std::vector<HVArrow> arrows;

  std::size_t size() const { return generators.size(); }
  /// Generator with the given id. Ids are dense, so lookup is by position
  /// after index(); before that it scans.
  const Generator& gen(GenId id) const;
};

struct Violation {
  enum class Kind {
    Empty,
    GeneratorIds,
    ArrowEndpoint,
    ArrowPowers,
    MaslovLaw,
    AlexanderLaw,
    DuplicateArrow,
  };
  Kind kind;
  std::vector<GenId> generators;  // offending generator ids
  long arrow = -1;                // index into arrows, or -1
  std::string message;
};

std::string to_string(Violation::Kind kind);

/// Every violated invariant; empty iff the complex is well formed.
std::vector<Violation> validate(const QuotientComplex& qc);

class InvalidComplex : public std::runtime_error {
 public:
  explicit InvalidComplex(const std::string& what) : std::runtime_error(what) {}
};

/// Throws InvalidComplex listing the first few violations.
void require_valid(const QuotientComplex& qc);

/// dim HFK-hat in (Alexander s, Maslov d).
using HfkTable = std::map<std::pair<int, int>, int>;

struct DerivedStats {
  int thickness = 0;
  int rho = 0;          // max(M - A)
  int genus_bound = 0;  // max A over generators
  HfkTable hfk_table;
};

DerivedStats derived_stats(const QuotientComplex& qc);
HfkTable hfk_table(const std::vector<Generator>& generators);

/// Table of the mirror: HFK_d(K,s) = HFK_{-d}(mK,-s).
HfkTable mirror_table(const HfkTable& table);

/// Dual complex: gradings negated and arrows reversed with the same powers.
QuotientComplex mirror(const QuotientComplex& qc);

/// One entry U^k of the full differential at (target, source).
struct DiffEntry {
  GenId source = 0;
  GenId target = 0;
  int u_exponent = 0;

  bool operator==(const DiffEntry&) const = default;
  auto operator<=>(const DiffEntry&) const = default;
};

/// Exponent forced by the gradings: (M(target) - M(source) + 1) / 2.
/// Throws std::invalid_argument when the Maslov difference is even.
int forced_exponent(const Generator& source, const Generator& target);

struct FullComplex {
  std::string name;
  std::vector<Generator> generators;
  std::vector<DiffEntry> entries;  // sorted by (source, target)

  std::size_t size() const { return generators.size(); }
  /// Entries with u_exponent > A(target) - A(source) drop both filtrations.
  bool is_diagonal(const DiffEntry& e) const;
  std::size_t diagonal_count() const;
  /// Horizontal and vertical arrows only, as a quotient complex.
  QuotientComplex quotient() const;
};

/// Builds the full complex from H+V alone (no diagonals).
FullComplex full_from_quotient(const QuotientComplex& qc);

/// Dual of a full complex, compatible with mirror() on the quotient.
FullComplex mirror(const FullComplex& fc);

struct SquareDefect {
  GenId source;
  GenId target;
  int u_exponent;
};

/// Nonzero coefficients of d^2 computed by exact squaring over F[U].
std::vector<SquareDefect> square_defects(const FullComplex& fc);
inline bool squares_to_zero(const FullComplex& fc) { return square_defects(fc).empty(); }

/// Problems with a full complex: d^2, exponent law, filtration law, and the
/// single-tower condition on the U = 1 specialisation.
std::vector<std::string> full_complex_violations(const FullComplex& fc);

/// dim ker N - rank N for N = d at U = 1.
long u_one_homology_dim(const FullComplex& fc);

}  // namespace hfklift
