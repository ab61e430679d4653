#pragma once

// Divisor-theoretic model of a Krull monoid. A KrullInstance lists height-one
// prime slots with their ideal classes. The monoid H consists of the
// nonnegative exponent vectors of class zero. H is reduced, so the only unit
// is the zero vector.

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nufact/abgroup.hpp"

namespace nufact {

namespace detail {
class ClassTable;
}

using Exponent = std::int64_t;
using ExponentVector = std::vector<Exponent>;

class Divisor {
 public:
  Divisor() = default;
  explicit Divisor(ExponentVector exps) : exps_(std::move(exps)) {}
  Divisor(std::initializer_list<Exponent> exps) : exps_(exps) {}

  static Divisor zero(std::size_t n) { return Divisor(ExponentVector(n, 0)); }
  static Divisor unit_vector(std::size_t n, std::size_t slot);

  std::size_t size() const noexcept { return exps_.size(); }
  const ExponentVector& exponents() const noexcept { return exps_; }
  Exponent operator[](std::size_t i) const { return exps_[i]; }

  Exponent degree() const;
  bool is_zero() const;
  bool is_nonnegative() const;
  // Slots with a positive exponent, ascending.
  std::vector<std::size_t> support() const;

  // Componentwise <=.
  bool divides(const Divisor& other) const;

  Divisor& operator+=(const Divisor& o);
  Divisor& operator-=(const Divisor& o);
  friend Divisor operator+(Divisor a, const Divisor& b) { return a += b; }
  friend Divisor operator-(Divisor a, const Divisor& b) { return a -= b; }
  friend Divisor operator*(Exponent k, Divisor a);

  bool operator==(const Divisor&) const = default;

  std::string to_string() const;

 private:
  ExponentVector exps_;
};

// Componentwise minimum: the divisor of the v-ideal generated by a and b.
Divisor meet(const Divisor& a, const Divisor& b);

// Canonical order: total degree first, then lexicographic.
bool canonical_less(const Divisor& a, const Divisor& b);

class MonoidElement {
 public:
  const Divisor& divisor() const noexcept { return d_; }
  operator const Divisor&() const noexcept { return d_; }
  Exponent degree() const { return d_.degree(); }
  bool is_unit() const { return d_.is_zero(); }
  bool operator==(const MonoidElement&) const = default;
  std::string to_string() const { return d_.to_string(); }

 private:
  friend class KrullInstance;
  explicit MonoidElement(Divisor d) : d_(std::move(d)) {}
  Divisor d_;
};

// A zero-class divisor of arbitrary sign: an element of the quotient group.
class FractionalElement {
 public:
  const Divisor& divisor() const noexcept { return d_; }
  operator const Divisor&() const noexcept { return d_; }
  bool operator==(const FractionalElement&) const = default;
  std::string to_string() const { return d_.to_string(); }

 private:
  friend class KrullInstance;
  explicit FractionalElement(Divisor d) : d_(std::move(d)) {}
  Divisor d_;
};

struct PrimeSlot {
  std::string name;
  GroupElement cls;
};

class KrullInstance {
 public:
  // InvalidInstance: no slots, duplicate names, or a class outside `group`.
  KrullInstance(FgAbelianGroup group, std::vector<PrimeSlot> primes);

  const FgAbelianGroup& class_group() const noexcept { return group_; }
  const std::vector<PrimeSlot>& primes() const noexcept { return primes_; }
  std::size_t slot_count() const noexcept { return primes_.size(); }
  std::optional<std::size_t> slot_index(std::string_view name) const;

  GroupElement divisor_class(const Divisor& v) const;
  bool is_element(const Divisor& v) const;

  // NotElement unless v >= 0 with class zero.
  MonoidElement element(Divisor v) const;
  // NotElement unless v has class zero.
  FractionalElement fractional(Divisor v) const;

  void check_shape(const Divisor& v) const;

 private:
  FgAbelianGroup group_;
  std::vector<PrimeSlot> primes_;
};

struct SearchLimits {
  std::size_t node_budget = 1'000'000;
};

// Sorted atom indices into KrullMonoid::atoms().
struct Factorization {
  std::vector<std::size_t> atoms;
  std::size_t length() const noexcept { return atoms.size(); }
  bool operator==(const Factorization&) const = default;
};

struct LengthSet {
  std::vector<std::size_t> lengths;
  mpq_class elasticity;
  std::size_t factorization_count = 0;
  bool factors_uniquely = false;
};

struct HfdCounterexample {
  MonoidElement element;
  std::size_t shortest;
  std::size_t longest;
};

struct HfdReport {
  int bound;
  std::optional<HfdCounterexample> counterexample;
  bool holds() const noexcept { return !counterexample; }
};

// abc = de with [ab,d] = [ab,e] = 1.
struct ZQuintuple {
  MonoidElement a, b, c, d, e;
};

struct ZReport {
  int bound;
  std::optional<ZQuintuple> counterexample;
  bool holds() const noexcept { return !counterexample; }
};

enum class UniqueSquareStatus { Found, NoneFound, TorsionClassGroup };

struct UniqueSquareResult {
  UniqueSquareStatus status = UniqueSquareStatus::NoneFound;
  std::vector<std::size_t> primes;  // support of x
  std::optional<MonoidElement> x;
  std::size_t eta = 0;
  std::vector<Factorization> square_factorizations;
};

struct ZWitness {
  MonoidElement y;
  FractionalElement z;
  Exponent n;
  std::size_t first_prime;
  // x * x * (yz)^(n+1) = y^(n+1) * (x^2 z^(n+1))
  ZQuintuple quintuple;
};

class IdealGens {
 public:
  // NotElement for an empty list or a unit generator.
  explicit IdealGens(std::vector<MonoidElement> gens);
  const std::vector<MonoidElement>& generators() const noexcept { return gens_; }

 private:
  std::vector<MonoidElement> gens_;
};

struct IdealContent {
  Divisor gcd;
  bool primitive;
};

struct ConditionCResult {
  std::optional<MonoidElement> alpha;
  bool holds() const noexcept { return alpha.has_value(); }
};

struct Condition3Result {
  std::optional<Divisor> unsplittable;
  std::vector<Divisor> checked;
  bool holds() const noexcept { return !unsplittable; }
};

// The Krull monoid of an instance with its atoms precomputed. All queries are
// const and thread-compatible.
class KrullMonoid {
 public:
  explicit KrullMonoid(KrullInstance inst, SearchLimits limits = {});

  const KrullInstance& instance() const noexcept { return inst_; }
  const SearchLimits& limits() const noexcept { return limits_; }

  // Canonically ordered; no atom divides another.
  const std::vector<MonoidElement>& atoms() const noexcept { return atoms_; }
  bool is_atom(const Divisor& v) const;

  // True iff some nonunit element lies below m.
  bool has_nonunit_below(const Divisor& m) const;
  bool common_factor_exists(const MonoidElement& u, const MonoidElement& v) const;

  // Nonunit elements of degree <= max_degree in canonical order.
  std::vector<MonoidElement> elements_up_to(Exponent max_degree) const;

  std::vector<Factorization> factorizations(const MonoidElement& h) const;
  LengthSet length_set(const MonoidElement& h) const;
  Divisor multiply_out(const Factorization& f) const;

  HfdReport check_hfd(int bound) const;
  ZReport check_z_property(int bound) const;
  // Re-checks abc = de and both common-factor tests.
  bool is_z_counterexample(const ZQuintuple& q) const;

  std::size_t eta(const MonoidElement& h) const;
  UniqueSquareResult find_unique_square(int bound) const;
  std::optional<ZWitness> z_witness(const MonoidElement& x, int bound) const;

  IdealContent ideal_gcd_and_primitivity(const IdealGens& ideal) const;
  ConditionCResult check_condition_C(const IdealGens& ideal) const;

  // Componentwise-minimal v >= 0 with class(v) = g, canonically ordered.
  std::vector<Divisor> min_class_residues(const GroupElement& g) const;
  Condition3Result check_condition_3(const IdealGens& a, const IdealGens& b) const;

 private:
  KrullInstance inst_;
  SearchLimits limits_;
  std::shared_ptr<const detail::ClassTable> table_;
  std::vector<MonoidElement> atoms_;
};

}  // namespace nufact
