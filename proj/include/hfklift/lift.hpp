#pragma once

// Recovering the diagonal arrows of a knot Floer complex from its
// horizontal and vertical arrows.
//
// Every ordered pair (i, j) whose gradings allow a diagonal arrow x_j -> U^k x_i
// gets one GF(2) unknown. Expanding d^2 = (H+V+D)^2 position by position gives
// one equation per (target, source) pair, because the U-power of every product
// landing there is forced by the Maslov gradings. The equations are affine as
// long as no two placeholders compose; otherwise the quadratic monomials are
// recorded and candidate solutions are filtered by exact squaring.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hfklift/complex.hpp"
#include "hfklift/gf2.hpp"

namespace hfklift {

class LiftError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The equations from d^2 = 0 have no solution.
class NoLiftError : public LiftError {
 public:
  NoLiftError() : LiftError("no lift exists") {}
};

class KernelTooLargeError : public LiftError {
 public:
  KernelTooLargeError(std::size_t dim, std::size_t cap)
      : LiftError("kernel too large: dim " + std::to_string(dim) + " exceeds cap " + std::to_string(cap)),
        dim(dim) {}
  std::size_t dim;
};

struct Placeholder {
  std::size_t var_index = 0;
  GenId source = 0;
  GenId target = 0;
  int u_exponent = 0;

  bool operator==(const Placeholder&) const = default;
};

struct QuadraticTerm {
  std::size_t row = 0;
  std::size_t var_a = 0;
  std::size_t var_b = 0;
};

struct EquationSystem {
  gf2::BitMatrix matrix;  // rows x variables
  gf2::BitVector rhs;
  std::vector<Placeholder> vars;
  std::vector<QuadraticTerm> nonlinear_terms;
  std::size_t num_vars() const { return vars.size(); }
  std::size_t num_rows() const { return matrix.rows(); }
};

struct SolutionSet {
  gf2::BitVector base;
  std::vector<gf2::BitVector> kernel_basis;
  std::size_t kernel_dim() const { return kernel_basis.size(); }
};

/// True when thickness <= 2 and every Alexander grading is supported in at
/// most two Maslov gradings; then no two placeholders can compose.
bool degree_two_free(const std::vector<Generator>& generators);

/// H+V as a sparse F[U] matrix with exponents checked against the gradings.
FullComplex build_hv(const QuotientComplex& qc);

/// Candidate diagonal positions in row-major (target, source) order.
std::vector<Placeholder> placeholders(const QuotientComplex& qc);

/// Coefficient equations of d_var^2 = 0. Identical rows are merged.
EquationSystem square_to_system(const FullComplex& hv, const std::vector<Placeholder>& vars);

/// Rows that carry no quadratic monomial.
EquationSystem linear_subsystem(const EquationSystem& system);

/// Particular solution (free variables 0) plus kernel basis. Requires an
/// affine system; throws NoLiftError when it is inconsistent.
SolutionSet solve(const EquationSystem& system);

/// H+V plus the placeholders switched on by `assignment`.
FullComplex apply_assignment(const FullComplex& hv, const std::vector<Placeholder>& vars,
                             const gf2::BitVector& assignment);

/// Walks a0 + ker A in index order, yielding only assignments whose complex
/// squares to zero.
class LiftEnumerator {
 public:
  LiftEnumerator(FullComplex hv, std::vector<Placeholder> vars, SolutionSet solutions,
                 std::size_t max_kernel_dim);

  struct Lift {
    std::uint64_t index = 0;
    gf2::BitVector assignment;
    FullComplex complex;
  };

  std::optional<Lift> next();
  std::uint64_t candidates() const { return std::uint64_t{1} << solutions_.kernel_dim(); }
  std::uint64_t rejected() const { return rejected_; }
  std::size_t kernel_dim() const { return solutions_.kernel_dim(); }

 private:
  FullComplex hv_;
  std::vector<Placeholder> vars_;
  SolutionSet solutions_;
  std::uint64_t index_ = 0;
  std::uint64_t rejected_ = 0;
};

LiftEnumerator enumerate_lifts(const QuotientComplex& qc, const SolutionSet& solutions,
                               std::size_t max_kernel_dim);

inline constexpr std::size_t kDefaultMaxKernelDim = 12;

struct LiftSet {
  std::vector<FullComplex> lifts;
  std::size_t placeholder_count = 0;
  std::size_t equation_count = 0;
  std::size_t kernel_dim = 0;
  std::uint64_t rejected = 0;
  bool linear = true;  // no quadratic monomials appeared
};

/// Every lift of a quotient complex, via the linear subsystem when the full
/// system is quadratic. Throws KernelTooLargeError or NoLiftError.
LiftSet all_lifts(const QuotientComplex& qc, std::size_t max_kernel_dim = kDefaultMaxKernelDim);

/// Some lift, without enumerating the kernel: the particular solution when the
/// system is affine, otherwise the first assignment in a Gray-code walk over the
/// first `search_bits` kernel directions that satisfies the quadratic rows.
/// Throws NoLiftError when the linear part is inconsistent or nothing is found.
FullComplex find_lift(const QuotientComplex& qc, std::size_t search_bits = 26);

/// The lift for the particular solution; requires thickness <= 1.
FullComplex lift(const QuotientComplex& qc);

}  // namespace hfklift
