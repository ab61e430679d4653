#pragma once

// Sparse polynomials over a monomial subring of k[x_1..x_d][t] with exact
// coefficients. Irreducibility in the subring is always relative to a
// caller-supplied factorization in the ambient polynomial ring.

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "nufact/krull.hpp"
#include "nufact/semigroup.hpp"

namespace nufact {

class CoefficientField {
 public:
  static CoefficientField rationals() { return CoefficientField(0); }
  // ValidationError unless p is prime.
  static CoefficientField prime(std::uint32_t p);

  bool is_rational() const noexcept { return p_ == 0; }
  std::uint32_t characteristic() const noexcept { return p_; }

  mpq_class normalize(const mpq_class& c) const;
  // ZeroElement for c == 0.
  mpq_class inverse(const mpq_class& c) const;

  bool operator==(const CoefficientField&) const = default;
  std::string to_string() const;

 private:
  explicit CoefficientField(std::uint32_t p) : p_(p) {}
  std::uint32_t p_;
};

struct PolyTerm {
  Exponent t = 0;
  ExponentVector exps;
};

// Graded lex on (t-degree, ambient exponents); the map is ordered from the
// leading term down.
struct TermOrder {
  bool operator()(const PolyTerm& a, const PolyTerm& b) const;
};

class SparsePoly {
 public:
  using Terms = std::map<PolyTerm, mpq_class, TermOrder>;

  SparsePoly(CoefficientField field, std::size_t dim) : field_(field), dim_(dim) {}

  static SparsePoly constant(CoefficientField field, std::size_t dim, const mpq_class& c);
  static SparsePoly monomial(CoefficientField field, ExponentVector exps, Exponent t = 0,
                             const mpq_class& c = 1);

  const CoefficientField& field() const noexcept { return field_; }
  std::size_t dim() const noexcept { return dim_; }
  const Terms& terms() const noexcept { return terms_; }

  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_constant() const;  // a scalar, possibly zero
  Exponent t_degree() const;  // -1 for zero
  // Coefficient of t^k as a t-free polynomial.
  SparsePoly t_coefficient(Exponent k) const;
  const mpq_class& leading_coefficient() const;

  void add_term(ExponentVector exps, Exponent t, const mpq_class& c);

  SparsePoly& operator+=(const SparsePoly& o);
  SparsePoly& operator-=(const SparsePoly& o);
  friend SparsePoly operator+(SparsePoly a, const SparsePoly& b) { return a += b; }
  friend SparsePoly operator-(SparsePoly a, const SparsePoly& b) { return a -= b; }
  friend SparsePoly operator*(const SparsePoly& a, const SparsePoly& b);
  SparsePoly scaled(const mpq_class& c) const;

  // Different fields or dimensions compare unequal.
  bool operator==(const SparsePoly& o) const;
  // Total order for canonical listing: field, then terms from the top.
  bool canonical_less(const SparsePoly& o) const;

  std::string to_string() const;
  std::string to_string(std::span<const std::string> names) const;

 private:
  void check_compatible(const SparsePoly& o) const;

  CoefficientField field_;
  std::size_t dim_;
  Terms terms_;
};

// x, y, z for dim <= 3, else x1..xd.
std::vector<std::string> default_variable_names(std::size_t dim);

// Terms `coef*x^a*y^b*t^d` joined by + or -; ParseError with position.
SparsePoly parse_poly(std::string_view text, CoefficientField field, std::size_t dim);
SparsePoly parse_poly(std::string_view text, CoefficientField field,
                      std::span<const std::string> names);

// The monomials allowed in a subring: those of an affine semigroup, or the
// monoid elements of a Krull instance read as monomials in the slot variables.
class MonomialSupport {
 public:
  MonomialSupport(const AffineSemigroup& s);
  MonomialSupport(const KrullInstance& inst);

  std::size_t dim() const noexcept { return dim_; }
  bool contains(std::span<const Exponent> p) const;

 private:
  std::size_t dim_;
  std::function<bool(std::span<const Exponent>)> test_;
};

bool in_semigroup_ring(const SparsePoly& p, const MonomialSupport& s);

class AmbientFactorization {
 public:
  // BadCertificate unless every factor is nonconstant and unit * prod == p.
  static AmbientFactorization certify(const SparsePoly& p, std::vector<SparsePoly> factors);

  const mpq_class& unit() const noexcept { return unit_; }
  const std::vector<SparsePoly>& factors() const noexcept { return factors_; }
  const SparsePoly& target() const noexcept { return target_; }
  SparsePoly product() const;

 private:
  AmbientFactorization(mpq_class unit, std::vector<SparsePoly> factors, SparsePoly target)
      : unit_(std::move(unit)), factors_(std::move(factors)), target_(std::move(target)) {}
  mpq_class unit_;
  std::vector<SparsePoly> factors_;
  SparsePoly target_;
};

using PolyFactorization = std::vector<SparsePoly>;

// Partitions of the certified factors into >= 2 blocks whose products lie in
// the subring, with the unit absorbed into the first block. Empty means p is
// irreducible in the subring. NotInSubring if p itself is not.
std::vector<PolyFactorization> factorizations_in_subring(const SparsePoly& p,
                                                         const AmbientFactorization& cert,
                                                         const MonomialSupport& s);

// Factorizations whose blocks are all irreducible in the subring; includes p
// itself when p is irreducible.
std::vector<PolyFactorization> irreducible_factorizations_in_subring(
    const SparsePoly& p, const AmbientFactorization& cert, const MonomialSupport& s);

// Distinct lengths of irreducible_factorizations_in_subring, ascending.
std::vector<std::size_t> subring_length_set(const SparsePoly& p,
                                            const AmbientFactorization& cert,
                                            const MonomialSupport& s);

// Whether two monomials of the subring share a nonunit monomial factor.
bool monomials_share_factor(std::span<const Exponent> u, std::span<const Exponent> v,
                            const MonomialSupport& s);

// A polynomial whose coefficients are single terms is primitive when no
// nonunit monomial of the subring divides all of them. Unsupported for
// coefficients with more than one term.
bool is_primitive(const SparsePoly& p, const MonomialSupport& s);

struct ZFailureIdentity {
  SparsePoly ab, f, g, h, fg, ab_h;
  bool f_primitive = false;
  bool g_primitive = false;
  bool identity_holds() const { return fg == ab_h; }
  bool verified() const { return identity_holds() && f_primitive && g_primitive; }
};

// f = ab*t + d, g = ab*t + e, h = ab*t^2 + (d+e)*t + c in the monoid ring of
// the instance. QuintupleMismatch unless abc = de with all five nonunits.
ZFailureIdentity verify_z_failure_identity(const KrullMonoid& monoid, const ZQuintuple& q,
                                           CoefficientField field = CoefficientField::rationals());

struct ConstantFactorResult {
  std::optional<SparsePoly> failing;  // reducible constant divisor of fg
  std::vector<SparsePoly> checked;
  bool passes() const noexcept { return !failing; }
};

// NotPrimitive unless f and g are primitive of t-degree 1; BadCertificate
// unless cert certifies f*g.
ConstantFactorResult constant_factor_condition(const SparsePoly& f, const SparsePoly& g,
                                               const AmbientFactorization& cert,
                                               const MonomialSupport& s);

// S = {(i,j,k) in N^3 : k <= i + j}.
AffineSemigroup s_xyz();

struct Section4Report {
  CoefficientField field;
  SparsePoly lhs;  // (x^2+y^2)(x^2+z^2x^2)
  SparsePoly rhs;  // x^2 (x^2+y^2+z^2x^2+z^2y^2)
  std::vector<PolyFactorization> factorizations;
  std::vector<std::size_t> lengths;
  // Factorizations of x^2+y^2 in the subring.
  std::vector<PolyFactorization> square_split;
  SparsePoly f, g, fg, constant_times_h;
  ConstantFactorResult constant_factor;

  bool identity_holds() const { return lhs == rhs; }
  bool fg_identity_holds() const { return fg == constant_times_h; }
  bool not_hfd() const { return lengths.size() >= 2; }
  std::string verdict() const;
};

Section4Report run_section4(CoefficientField field);

}  // namespace nufact
