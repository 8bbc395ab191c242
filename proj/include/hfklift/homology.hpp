#pragma once

// Homology of finite regions of CFK^infinity as graded F[U]-modules.
//
// An element U^p x sits at lattice position (i, j) = (-p, A(x) - p) and has
// Maslov grading M(x) + 2i. A region is given by the set of (x, i) it keeps;
// the differential of a kept element drops every target outside the region,
// which is the quotient-complex structure of every region used here.

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "hfklift/complex.hpp"
#include "hfklift/gf2.hpp"

namespace hfklift {

struct LatticeElement {
  GenId gen = 0;
  int u_shift = 0;  // filtration coordinate i; the element is U^{-i} x
  int grading = 0;  // M(x) + 2i

  bool operator==(const LatticeElement&) const = default;
};
using TruncatedBasisElement = LatticeElement;

/// Basis of C_{i<0, j>=k}: all U^{-i}x with i < 0 and A(x) + i >= k, ordered by
/// generator id then i.
std::vector<LatticeElement> truncated_basis(const FullComplex& fc, int k);

/// Basis of {(i >= 0 or j >= k) and i <= N}.
std::vector<LatticeElement> truncated_model_basis(const FullComplex& fc, int k, int N);

/// Differential on a region basis; column c lists the targets of basis[c].
gf2::BitMatrix truncated_differential(const FullComplex& fc, const std::vector<LatticeElement>& basis);

/// Multiplication by U on a region basis (i -> i - 1, zero outside the region).
gf2::BitMatrix u_map(const std::vector<LatticeElement>& basis);

struct HomologyBlock {
  int grading = 0;
  std::vector<gf2::BitVector> representatives;  // cycles in basis coordinates
  std::vector<gf2::BitVector> u_columns;        // image of each class in H_{d-2}
  std::size_t dim() const { return representatives.size(); }
};

class GradedHomology {
 public:
  std::map<int, HomologyBlock> blocks;  // only nonzero gradings

  std::size_t dim(int d) const;
  std::size_t total_dim() const;
  std::map<int, int> dims() const;
  /// Image under U of a class in H_d, as coordinates in H_{d-2}.
  gf2::BitVector apply_u(int d, const gf2::BitVector& coords) const;
  /// rank of U^m : H_d -> H_{d-2m}; m = 0 gives dim H_d.
  std::size_t u_power_rank(int d, int m) const;
  std::map<int, int> u_ranks() const;
};

/// H_* of a differential on a graded basis together with the U-action.
/// Throws std::invalid_argument unless `matrix` is square, homogeneous of
/// degree -1 and squares to zero.
GradedHomology homology_with_u(const gf2::BitMatrix& matrix, const std::vector<LatticeElement>& basis);

inline GradedHomology region_homology(const FullComplex& fc, const std::vector<LatticeElement>& basis) {
  return homology_with_u(truncated_differential(fc, basis), basis);
}

/// Number of F-summands (classes killed by U and not divisible by U) per grading.
std::map<int, int> count_length_one(const GradedHomology& gh);

/// Cyclic summands (top grading, length) -> multiplicity of any F[U]-module
/// decomposition, read off from the ranks of powers of U.
using SummandMultiset = std::map<std::pair<int, int>, int>;
SummandMultiset summands(const GradedHomology& gh);
std::string describe(const SummandMultiset& s);

/// A^+_k computed from a finite truncation of {i >= 0 or j >= k}.
struct TruncatedModel {
  int N = 0;
  GradedHomology homology;
  int tower_top = 0;
  int tower_bottom = 0;
  int v_k = 0;
};

/// Smallest truncation accepted by ak_truncated_model.
int min_truncation(const FullComplex& fc, int k);
TruncatedModel ak_truncated_model(const FullComplex& fc, int k, int N);

/// Reduced part of A^+_k from the model plus the tower T_{-2V_k}|<=-2; the
/// summands H_*(C_{i<0, j>=k}) must have.
SummandMultiset predicted_truncated_summands(const TruncatedModel& model);

struct SpliffWitness {
  int grading_a = 0;
  int grading_b = 0;
};

/// Two distinct same-parity gradings carrying F-summands, if any.
std::optional<SpliffWitness> spliff_failure(const std::map<int, int>& count_1);

/// Chain-level test at level k = rho - 3 for thickness one: classes of
/// grading 2rho-4 are pushed by U to chains and checked against the image of
/// d. Returns true when the module has property SpliFf.
bool b_prime_test(const FullComplex& fc, int rho);

struct AkOptions {
  std::optional<int> fallback_N;  // default: min_truncation + 2
};

struct AkReport {
  int k = 0;
  std::map<int, int> gradings;  // d -> dim H_d
  std::map<int, int> u_ranks;   // d -> rank U_d
  std::map<int, int> count_1;   // after removing a one-class tower at -2
  std::map<int, int> raw_count_1;
  SummandMultiset summands;
  std::optional<int> v_k;  // set when the fallback model ran
  bool spliff = true;
  std::optional<SpliffWitness> witness;
  std::string method;
  std::string structure;  // fitted shape parameters, when requested

  /// Everything that is an invariant of the module (the method is not).
  bool same_module(const AkReport& other) const {
    return k == other.k && gradings == other.gradings && u_ranks == other.u_ranks && summands == other.summands &&
           count_1 == other.count_1 && spliff == other.spliff;
  }
};

AkReport ak_report(const FullComplex& fc, int k, const AkOptions& options = {});
nlohmann::json to_json(const AkReport& r);

}  // namespace hfklift
