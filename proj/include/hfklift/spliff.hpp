#pragma once

// Deciding property SpliFf for a knot and its mirror.

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "hfklift/complex.hpp"
#include "hfklift/homology.hpp"
#include "hfklift/lift.hpp"

namespace hfklift {

enum class Status { SpliffBoth, FailsKnot, FailsMirror, Unknown };
std::string to_string(Status s);

/// Outcome for one chirality.
struct SideResult {
  int rho = 0;
  bool spliff = true;
  std::optional<int> failing_k;
  std::optional<SpliffWitness> witness;
  std::string trace;
};

struct Verdict {
  std::string name;
  int thickness = 0;
  int rho = 0;
  int rho_mirror = 0;
  Status status = Status::Unknown;
  std::string reason;  // Unknown only
  std::optional<int> failing_k;
  std::optional<SpliffWitness> witness;
  SideResult knot;
  SideResult mirror;
  std::optional<std::size_t> kernel_dim;   // thickness two
  std::optional<bool> per_lift_agreement;  // thickness two, when lifts ran
  std::size_t lift_count = 0;
  std::string method_trace;
};

nlohmann::json to_json(const Verdict& v);
/// e.g. "even gradings 0 and 2 at k=0".
std::string describe_witness(int k, const SpliffWitness& w);

struct DecideOptions {
  std::size_t max_kernel_dim = kDefaultMaxKernelDim;
  std::optional<int> fallback_N;
  // Over the cap, decide from one lift instead of giving Unknown. Sound when
  // every lift is known to represent the full complex.
  bool single_lift_over_cap = false;
};

/// Per-k outcome of the HFK-level test for thickness two: true means the
/// level passes without homology.
std::map<int, bool> shortcut_thickness_two(const HfkTable& table, int rho, int genus);

/// For a thickness-one side: nullopt when rho <= 2 (the side passes), else the
/// single level k = rho - 3 that must be checked.
std::optional<int> thickness_one_level(int rho);

Verdict decide(const QuotientComplex& qc, const DecideOptions& options = {});

}  // namespace hfklift
