#pragma once

// Machine-integer encoding of slot classes for the inner search loops.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "nufact/krull.hpp"

namespace nufact::detail {

struct VectorHash {
  std::size_t operator()(const ExponentVector& v) const noexcept {
    std::size_t h = 0xcbf29ce484222325ull;
    for (auto x : v) h = (h ^ static_cast<std::size_t>(x)) * 0x100000001b3ull;
    return h;
  }
};

// A class is stored as free coordinates followed by torsion residues.
using ClassCode = std::vector<std::int64_t>;

class ClassTable {
 public:
  explicit ClassTable(const KrullInstance& inst);

  std::size_t free_rank() const noexcept { return free_rank_; }
  std::size_t slot_count() const noexcept { return slots_.size(); }
  const ClassCode& slot(std::size_t j) const { return slots_[j]; }

  ClassCode zero() const { return ClassCode(free_rank_ + moduli_.size(), 0); }
  ClassCode encode(const GroupElement& g) const;
  ClassCode of(std::span<const Exponent> v) const;

  // acc += k * c
  void add(ClassCode& acc, const ClassCode& c, std::int64_t k = 1) const;
  ClassCode negate(const ClassCode& c) const;

  bool is_zero(const ClassCode& c) const;
  bool free_is_zero(const ClassCode& c) const;
  std::int64_t free_dot(const ClassCode& a, const ClassCode& b) const;
  bool has_finite_order(std::size_t slot) const;

 private:
  std::size_t free_rank_ = 0;
  std::vector<std::int64_t> moduli_;
  std::vector<ClassCode> slots_;
};

// Componentwise-minimal v >= 0 with class(v) = target. When target is zero
// the zero vector is excluded, so the result is the Hilbert basis (the atoms).
// Candidates dominating a vector of `prune` are discarded.
std::vector<ExponentVector> minimal_solutions(const ClassTable& table,
                                              const ClassCode& target,
                                              std::span<const ExponentVector> prune,
                                              std::size_t node_budget);

// Calls visit(v) for every v >= 0 with degree in [lo, hi], degree-major and
// lexicographic within a degree.
void for_each_vector(std::size_t slots, Exponent lo, Exponent hi,
                     const std::function<void(const ExponentVector&)>& visit);

inline bool canonical_less(const ExponentVector& a, const ExponentVector& b) {
  Exponent da = 0, db = 0;
  for (auto x : a) da += x;
  for (auto x : b) db += x;
  if (da != db) return da < db;
  return a < b;
}

inline bool dominates(const ExponentVector& big, const ExponentVector& small) {
  for (std::size_t i = 0; i < big.size(); ++i)
    if (small[i] > big[i]) return false;
  return true;
}

}  // namespace nufact::detail
