// Completion search for minimal nonnegative solutions of class(v) = target.
//
// The free part of the class map is a homogeneous linear system and the
// torsion part a system of congruences. Vectors grow one unit at a time.
// While the free residual r is nonzero, slot j may be added only when
// <r, free(c_j)> < 0 (Contejean-Devie). Every minimal solution s is reachable:
// for a partial v <= s the residual satisfies
//   sum_j (s-v)_j <r, free(c_j)> = -|r|^2 < 0,
// so some admissible slot keeps v below s. With a zero free residual any slot
// is admissible. Levels are processed by degree so that minimality reduces to
// a domination test against solutions from earlier levels.

#include <algorithm>
#include <set>
#include <string>

#include "class_table.hpp"
#include "nufact/error.hpp"

namespace nufact::detail {

namespace {

std::int64_t to_int64(const BigInt& x) {
  if (!x.fits_slong_p())
    throw Error(ErrorKind::Unsupported, "class coordinate " + x.get_str() +
                                            " exceeds machine range");
  return x.get_si();
}

}  // namespace

ClassTable::ClassTable(const KrullInstance& inst)
    : free_rank_(inst.class_group().free_rank()) {
  for (const auto& n : inst.class_group().torsion_orders()) moduli_.push_back(to_int64(n));
  for (const auto& p : inst.primes()) slots_.push_back(encode(p.cls));
}

ClassCode ClassTable::encode(const GroupElement& g) const {
  ClassCode c = zero();
  for (std::size_t i = 0; i < free_rank_; ++i) c[i] = to_int64(g.free_part()[i]);
  for (std::size_t i = 0; i < moduli_.size(); ++i)
    c[free_rank_ + i] = to_int64(g.torsion_part()[i]);
  return c;
}

ClassCode ClassTable::of(std::span<const Exponent> v) const {
  ClassCode c = zero();
  for (std::size_t j = 0; j < v.size(); ++j)
    if (v[j] != 0) add(c, slots_[j], v[j]);
  return c;
}

void ClassTable::add(ClassCode& acc, const ClassCode& c, std::int64_t k) const {
  for (std::size_t i = 0; i < free_rank_; ++i) acc[i] += k * c[i];
  for (std::size_t i = 0; i < moduli_.size(); ++i) {
    const std::int64_t n = moduli_[i];
    std::int64_t r = (acc[free_rank_ + i] + (k % n) * c[free_rank_ + i]) % n;
    if (r < 0) r += n;
    acc[free_rank_ + i] = r;
  }
}

ClassCode ClassTable::negate(const ClassCode& c) const {
  ClassCode out = zero();
  add(out, c, -1);
  return out;
}

bool ClassTable::is_zero(const ClassCode& c) const {
  return std::all_of(c.begin(), c.end(), [](std::int64_t x) { return x == 0; });
}

bool ClassTable::free_is_zero(const ClassCode& c) const {
  return std::all_of(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(free_rank_),
                     [](std::int64_t x) { return x == 0; });
}

std::int64_t ClassTable::free_dot(const ClassCode& a, const ClassCode& b) const {
  std::int64_t s = 0;
  for (std::size_t i = 0; i < free_rank_; ++i) s += a[i] * b[i];
  return s;
}

bool ClassTable::has_finite_order(std::size_t slot) const {
  return free_is_zero(slots_[slot]);
}

std::vector<ExponentVector> minimal_solutions(const ClassTable& table,
                                              const ClassCode& target,
                                              std::span<const ExponentVector> prune,
                                              std::size_t node_budget) {
  const std::size_t n = table.slot_count();
  const bool homogeneous = table.is_zero(target);
  const ClassCode start_residual = table.negate(target);

  std::vector<ExponentVector> solutions;
  auto dominated = [&](const ExponentVector& v) {
    for (const auto& s : solutions)
      if (dominates(v, s)) return true;
    for (const auto& p : prune)
      if (dominates(v, p)) return true;
    return false;
  };

  std::set<ExponentVector> level;
  if (homogeneous) {
    for (std::size_t j = 0; j < n; ++j) {
      ExponentVector v(n, 0);
      v[j] = 1;
      level.insert(std::move(v));
    }
  } else {
    level.insert(ExponentVector(n, 0));
  }

  std::size_t nodes = level.size();
  while (!level.empty()) {
    std::vector<std::pair<ExponentVector, ClassCode>> open;
    std::vector<ExponentVector> found;
    for (const auto& v : level) {
      if (dominated(v)) continue;
      ClassCode r = start_residual;
      for (std::size_t j = 0; j < n; ++j)
        if (v[j] != 0) table.add(r, table.slot(j), v[j]);
      if (table.is_zero(r))
        found.push_back(v);
      else
        open.emplace_back(v, std::move(r));
    }
    solutions.insert(solutions.end(), found.begin(), found.end());

    std::set<ExponentVector> next;
    for (const auto& [v, r] : open) {
      const bool free_zero = table.free_is_zero(r);
      for (std::size_t j = 0; j < n; ++j) {
        if (!free_zero && table.free_dot(r, table.slot(j)) >= 0) continue;
        ExponentVector w = v;
        ++w[j];
        if (dominated(w)) continue;
        if (next.insert(std::move(w)).second && ++nodes > node_budget)
          throw Error(ErrorKind::EnumerationBudgetExceeded,
                      "completion search exceeded node budget " +
                          std::to_string(node_budget));
      }
    }
    level = std::move(next);
  }

  std::sort(solutions.begin(), solutions.end(),
            [](const ExponentVector& a, const ExponentVector& b) {
              return canonical_less(a, b);
            });
  return solutions;
}

void for_each_vector(std::size_t slots, Exponent lo, Exponent hi,
                     const std::function<void(const ExponentVector&)>& visit) {
  ExponentVector v(slots, 0);
  // Fills positions [i, slots) with total `left`, lexicographically ascending.
  std::function<void(std::size_t, Exponent)> fill = [&](std::size_t i, Exponent left) {
    if (i + 1 == slots) {
      v[i] = left;
      visit(v);
      v[i] = 0;
      return;
    }
    for (Exponent k = 0; k <= left; ++k) {
      v[i] = k;
      fill(i + 1, left - k);
    }
    v[i] = 0;
  };
  if (slots == 0) return;
  for (Exponent d = std::max<Exponent>(lo, 0); d <= hi; ++d) fill(0, d);
}

}  // namespace nufact::detail
