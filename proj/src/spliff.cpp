#include "hfklift/spliff.hpp"

#include <sstream>

#include <spdlog/spdlog.h>

namespace hfklift {

std::string to_string(Status s) {
  switch (s) {
    case Status::SpliffBoth: return "SpliffBoth";
    case Status::FailsKnot: return "FailsKnot";
    case Status::FailsMirror: return "FailsMirror";
    case Status::Unknown: return "Unknown";
  }
  return "Unknown";
}

std::string describe_witness(int k, const SpliffWitness& w) {
  std::ostringstream os;
  os << (w.grading_a % 2 == 0 ? "even" : "odd") << " gradings " << w.grading_a << " and " << w.grading_b
     << " at k=" << k;
  return os.str();
}

std::map<int, bool> shortcut_thickness_two(const HfkTable& table, int rho, int genus) {
  auto zero = [&](int d, int k) {
    auto it = table.find({k, d});
    return it == table.end() || it->second == 0;
  };
  std::map<int, bool> out;
  for (int k = 0; k <= genus; ++k) {
    const bool odd = (k + rho) % 2 != 0;
    const bool top = zero(k + rho, k), low = zero(k + rho - 2, k);
    bool pass;
    if (odd)
      pass = top || (k != rho - 3 && low);
    else
      pass = k != rho - 4 && (top || low);
    out[k] = pass;
  }
  return out;
}

std::optional<int> thickness_one_level(int rho) {
  if (rho <= 2) return std::nullopt;
  return rho - 3;
}

namespace {

void record_failure(SideResult& side, const AkReport& r) {
  if (r.spliff || side.failing_k) return;
  side.spliff = false;
  side.failing_k = r.k;
  side.witness = r.witness;
}

std::string join_levels(const std::vector<int>& ks) {
  std::ostringstream os;
  for (std::size_t i = 0; i < ks.size(); ++i) os << (i ? "," : "") << ks[i];
  return os.str();
}

void finish(Verdict& v) {
  if (!v.knot.spliff) {
    v.status = Status::FailsKnot;
    v.failing_k = v.knot.failing_k;
    v.witness = v.knot.witness;
  } else if (!v.mirror.spliff) {
    v.status = Status::FailsMirror;
    v.failing_k = v.mirror.failing_k;
    v.witness = v.mirror.witness;
  } else {
    v.status = Status::SpliffBoth;
  }
  v.method_trace = "K:" + v.knot.trace + ";mK:" + v.mirror.trace;
}

Verdict unknown(Verdict v, std::string reason) {
  v.status = Status::Unknown;
  v.reason = std::move(reason);
  v.failing_k.reset();
  v.witness.reset();
  if (v.method_trace.empty()) v.method_trace = v.reason;
  return v;
}

void decide_thickness_one(const QuotientComplex& qc, Verdict& v, const DecideOptions& options) {
  std::optional<FullComplex> fc;
  auto side = [&](SideResult& s, bool mirrored) {
    auto k = thickness_one_level(s.rho);
    if (!k) {
      s.trace = "rho<=2 shortcut";
      return;
    }
    if (!fc) fc = lift(qc);
    const auto r = ak_report(mirrored ? mirror(*fc) : *fc, *k, {options.fallback_N});
    record_failure(s, r);
    s.trace = "k=" + std::to_string(*k) + " " + r.method + (r.spliff ? " pass" : " fail");
  };
  side(v.knot, false);
  side(v.mirror, true);
  finish(v);
}

void decide_thickness_two(const QuotientComplex& qc, Verdict& v, const DecideOptions& options) {
  const auto stats = derived_stats(qc);
  const auto mstats = derived_stats(mirror(qc));
  std::vector<int> open_k, open_m;
  for (auto [k, pass] : shortcut_thickness_two(stats.hfk_table, v.rho, stats.genus_bound))
    if (!pass) open_k.push_back(k);
  for (auto [k, pass] : shortcut_thickness_two(mstats.hfk_table, v.rho_mirror, mstats.genus_bound))
    if (!pass) open_m.push_back(k);
  v.knot.trace = open_k.empty() ? "hfk shortcut" : "k=" + join_levels(open_k);
  v.mirror.trace = open_m.empty() ? "hfk shortcut" : "k=" + join_levels(open_m);
  if (open_k.empty() && open_m.empty()) {
    finish(v);
    return;
  }

  LiftSet lifts;
  bool single = false;
  try {
    lifts = all_lifts(qc, options.max_kernel_dim);
  } catch (const KernelTooLargeError& e) {
    v.kernel_dim = e.dim;
    if (!options.single_lift_over_cap) {
      v = unknown(std::move(v), "kernel too large");
      return;
    }
    lifts.kernel_dim = e.dim;
    lifts.lifts.push_back(find_lift(qc));
    single = true;
  }
  v.kernel_dim = lifts.kernel_dim;
  v.lift_count = lifts.lifts.size();

  // Per lift: the pass/fail pattern over all open levels of both sides.
  std::optional<std::vector<bool>> pattern;
  bool agree = true;
  std::string method;
  for (std::size_t l = 0; l < lifts.lifts.size(); ++l) {
    const auto& fc = lifts.lifts[l];
    const auto mfc = mirror(fc);
    std::vector<bool> here;
    SideResult knot = v.knot, mirror_side = v.mirror;
    for (int k : open_k) {
      const auto r = ak_report(fc, k, {options.fallback_N});
      here.push_back(r.spliff);
      record_failure(knot, r);
      if (r.method != "homology count") method = r.method;
    }
    for (int k : open_m) {
      const auto r = ak_report(mfc, k, {options.fallback_N});
      here.push_back(r.spliff);
      record_failure(mirror_side, r);
      if (r.method != "homology count") method = r.method;
    }
    if (!pattern) {
      pattern = here;
      v.knot = knot;
      v.mirror = mirror_side;
    } else if (*pattern != here) {
      agree = false;
      spdlog::warn("{}: lift {} disagrees with lift 0", qc.name, l);
    }
  }
  if (!single) v.per_lift_agreement = agree;
  const std::string suffix = (single ? std::string(" single lift") : " lifts=" + std::to_string(v.lift_count)) +
                             (method.empty() ? "" : " " + method);
  if (!open_k.empty()) v.knot.trace += suffix + (v.knot.spliff ? " pass" : " fail");
  if (!open_m.empty()) v.mirror.trace += suffix + (v.mirror.spliff ? " pass" : " fail");
  finish(v);
  if (!agree) v = unknown(std::move(v), "lift-dependent");
}

}  // namespace

Verdict decide(const QuotientComplex& qc, const DecideOptions& options) {
  Verdict v;
  v.name = qc.name;
  try {
    require_valid(qc);
    const auto stats = derived_stats(qc);
    v.thickness = stats.thickness;
    v.rho = stats.rho;
    v.rho_mirror = derived_stats(mirror(qc)).rho;
    v.knot.rho = v.rho;
    v.mirror.rho = v.rho_mirror;
    switch (stats.thickness) {
      case 0:
        v.knot.trace = v.mirror.trace = "thickness-0 shortcut";
        finish(v);
        break;
      case 1:
        decide_thickness_one(qc, v, options);
        break;
      case 2:
        decide_thickness_two(qc, v, options);
        break;
      default:
        return unknown(std::move(v), "thickness out of scope");
    }
  } catch (const NoLiftError&) {
    return unknown(std::move(v), "no lift");
  } catch (const std::exception& e) {
    spdlog::error("{}: {}", qc.name, e.what());
    return unknown(std::move(v), std::string("error: ") + e.what());
  }
  return v;
}

namespace {

nlohmann::json side_json(const SideResult& s) {
  nlohmann::json j{{"rho", s.rho}, {"spliff", s.spliff}, {"trace", s.trace}};
  j["failing_k"] = s.failing_k ? nlohmann::json(*s.failing_k) : nlohmann::json();
  j["witness_gradings"] =
      s.witness ? nlohmann::json::array({s.witness->grading_a, s.witness->grading_b}) : nlohmann::json();
  return j;
}

}  // namespace

nlohmann::json to_json(const Verdict& v) {
  nlohmann::json j;
  j["name"] = v.name;
  j["thickness"] = v.thickness;
  j["rho"] = v.rho;
  j["rho_mirror"] = v.rho_mirror;
  j["status"] = to_string(v.status);
  if (v.status == Status::Unknown) j["reason"] = v.reason;
  j["failing_k"] = v.failing_k ? nlohmann::json(*v.failing_k) : nlohmann::json();
  j["witness_gradings"] =
      v.witness ? nlohmann::json::array({v.witness->grading_a, v.witness->grading_b}) : nlohmann::json();
  j["kernel_dim"] = v.kernel_dim ? nlohmann::json(*v.kernel_dim) : nlohmann::json();
  j["per_lift_agreement"] = v.per_lift_agreement ? nlohmann::json(*v.per_lift_agreement) : nlohmann::json();
  j["method_trace"] = v.method_trace;
  j["knot"] = side_json(v.knot);
  j["mirror"] = side_json(v.mirror);
  return j;
}

}  // namespace hfklift
