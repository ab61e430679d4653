#pragma once

// Fixture instances built in code, independent of the JSON files.

#include <string>
#include <vector>

#include "nufact/krull.hpp"

namespace fixtures {

inline nufact::KrullInstance free_instance(const std::vector<long>& classes,
                                           const std::string& prefix = "p") {
  nufact::FgAbelianGroup g(1, {});
  std::vector<nufact::PrimeSlot> slots;
  for (std::size_t i = 0; i < classes.size(); ++i)
    slots.push_back({prefix + std::to_string(i + 1), g.element({classes[i]}, {})});
  return nufact::KrullInstance(g, slots);
}

inline nufact::KrullInstance cyclic_instance(long n, const std::vector<long>& classes) {
  nufact::FgAbelianGroup g(0, {n});
  std::vector<nufact::PrimeSlot> slots;
  for (std::size_t i = 0; i < classes.size(); ++i)
    slots.push_back({"p" + std::to_string(i + 1), g.element({}, {classes[i]})});
  return nufact::KrullInstance(g, slots);
}

inline nufact::KrullInstance inst_xy() { return free_instance({1, 1, -1, -1}, "q"); }
inline nufact::KrullInstance inst_z3() { return cyclic_instance(3, {1, 1, 1, 1, 1, 1}); }
inline nufact::KrullInstance inst_z3f() { return cyclic_instance(3, {1, 1, 1, 2, 2, 2}); }
inline nufact::KrullInstance inst_pm1() { return free_instance({1, -1}); }
inline nufact::KrullInstance inst_pm2() { return free_instance({1, 1, -2}); }

inline nufact::KrullInstance trivial_one_slot() {
  nufact::FgAbelianGroup g(0, {});
  return nufact::KrullInstance(g, {{"p", g.identity()}});
}

// INST_XY elements.
inline const nufact::Divisor X{1, 0, 0, 1};
inline const nufact::Divisor Y{0, 1, 0, 1};
inline const nufact::Divisor ZX{1, 0, 1, 0};
inline const nufact::Divisor ZY{0, 1, 1, 0};

}  // namespace fixtures
