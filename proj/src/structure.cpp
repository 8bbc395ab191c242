#include "hfklift/structure.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace hfklift {

namespace {

int floor_even(int d) { return d - (((d % 2) + 2) % 2); }

bool take(SummandMultiset& s, std::pair<int, int> key) {
  auto it = s.find(key);
  if (it == s.end()) return false;
  if (--it->second == 0) s.erase(it);
  return true;
}

}  // namespace

std::string StructureFit::to_string() const {
  std::ostringstream os;
  os << "low_tower=";
  if (low_tower_bottom)
    os << "T_" << *low_tower_bottom << "|<=-2";
  else
    os << "0";
  os << " high_tower=";
  if (high_tower_top)
    os << "|<=" << *high_tower_top;
  else
    os << "0";
  if (thickness == 2) os << " r=" << r;
  os << " a=" << a << " b=" << b;
  if (thickness == 2) os << " c=" << c;
  return os.str();
}

std::optional<StructureFit> fit_structure(const SummandMultiset& s, int thickness, int k, int rho) {
  if (thickness < 0 || thickness > 2) throw std::invalid_argument("no structure shape for this thickness");
  const int shape = thickness == 2 ? 2 : 1;
  const int top = k + rho;

  std::vector<int> shifts = shape == 1 ? std::vector<int>{-1, 0, 1} : std::vector<int>{-1, 1};
  const int low_center = shape == 1 ? top - 1 : top - (1 + ((top % 2) + 2) % 2);

  std::set<std::optional<int>> low_choices, high_choices;
  for (int sft : shifts) {
    const int bottom = std::min(0, low_center + sft);
    if (bottom % 2 != 0) continue;
    low_choices.insert(bottom <= -2 ? std::optional<int>(bottom) : std::nullopt);
  }
  for (int sft : shape == 1 ? std::vector<int>{-1, 0, 1} : std::vector<int>{-1, 1}) {
    const int t = floor_even(top - 2 + sft);
    high_choices.insert(t >= 2 * k ? std::optional<int>(t) : std::nullopt);
  }

  for (const auto& low : low_choices) {
    for (const auto& high : high_choices) {
      auto rest = s;
      if (low && !take(rest, {-2, (-2 - *low) / 2 + 1})) continue;
      if (high && !take(rest, {*high, (*high - 2 * k) / 2 + 1})) continue;
      StructureFit fit;
      fit.thickness = shape;
      fit.low_tower_bottom = low;
      fit.high_tower_top = high;
      bool ok = true;
      for (const auto& [key, mult] : rest) {
        if (key == std::pair{top - 1, 1})
          fit.a = mult;
        else if (key == std::pair{top - 2, 1})
          fit.b = mult;
        else if (shape == 2 && key == std::pair{top - 3, 1})
          fit.c = mult;
        else if (shape == 2 && key == std::pair{top - 1, 2})
          fit.r = mult;
        else
          ok = false;
      }
      if (ok) return fit;
    }
  }
  return std::nullopt;
}

}  // namespace hfklift
