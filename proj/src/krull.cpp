#include "nufact/krull.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "class_table.hpp"
#include "nufact/error.hpp"

namespace nufact {

using detail::ClassCode;
using detail::ClassTable;
using detail::VectorHash;

// ---------------------------------------------------------------------------
// Divisor

Divisor Divisor::unit_vector(std::size_t n, std::size_t slot) {
  Divisor d = zero(n);
  d.exps_.at(slot) = 1;
  return d;
}

Exponent Divisor::degree() const {
  Exponent s = 0;
  for (auto x : exps_) s += x;
  return s;
}

bool Divisor::is_zero() const {
  return std::all_of(exps_.begin(), exps_.end(), [](Exponent x) { return x == 0; });
}

bool Divisor::is_nonnegative() const {
  return std::all_of(exps_.begin(), exps_.end(), [](Exponent x) { return x >= 0; });
}

std::vector<std::size_t> Divisor::support() const {
  std::vector<std::size_t> s;
  for (std::size_t i = 0; i < exps_.size(); ++i)
    if (exps_[i] > 0) s.push_back(i);
  return s;
}

bool Divisor::divides(const Divisor& other) const {
  if (size() != other.size()) throw Error(ErrorKind::ShapeMismatch, "divisor lengths differ");
  return detail::dominates(other.exps_, exps_);
}

Divisor& Divisor::operator+=(const Divisor& o) {
  if (size() != o.size()) throw Error(ErrorKind::ShapeMismatch, "divisor lengths differ");
  for (std::size_t i = 0; i < exps_.size(); ++i) exps_[i] += o.exps_[i];
  return *this;
}

Divisor& Divisor::operator-=(const Divisor& o) {
  if (size() != o.size()) throw Error(ErrorKind::ShapeMismatch, "divisor lengths differ");
  for (std::size_t i = 0; i < exps_.size(); ++i) exps_[i] -= o.exps_[i];
  return *this;
}

Divisor operator*(Exponent k, Divisor a) {
  for (auto& x : a.exps_) x *= k;
  return a;
}

std::string Divisor::to_string() const {
  std::ostringstream out;
  out << '(';
  for (std::size_t i = 0; i < exps_.size(); ++i) {
    if (i) out << ',';
    out << exps_[i];
  }
  out << ')';
  return out.str();
}

Divisor meet(const Divisor& a, const Divisor& b) {
  if (a.size() != b.size()) throw Error(ErrorKind::ShapeMismatch, "divisor lengths differ");
  ExponentVector m(a.size());
  for (std::size_t i = 0; i < m.size(); ++i) m[i] = std::min(a[i], b[i]);
  return Divisor(std::move(m));
}

bool canonical_less(const Divisor& a, const Divisor& b) {
  return detail::canonical_less(a.exponents(), b.exponents());
}

// ---------------------------------------------------------------------------
// KrullInstance

KrullInstance::KrullInstance(FgAbelianGroup group, std::vector<PrimeSlot> primes)
    : group_(std::move(group)), primes_(std::move(primes)) {
  if (primes_.empty())
    throw Error(ErrorKind::InvalidInstance, "an instance needs at least one prime slot");
  std::set<std::string> names;
  const GroupElement identity = group_.identity();
  for (const auto& p : primes_) {
    if (p.name.empty()) throw Error(ErrorKind::InvalidInstance, "empty prime name");
    if (!names.insert(p.name).second)
      throw Error(ErrorKind::InvalidInstance, "duplicate prime name '" + p.name + "'");
    if (!p.cls.same_group(identity))
      throw Error(ErrorKind::InvalidInstance,
                  "class of '" + p.name + "' is not in " + group_.to_string());
  }
}

std::optional<std::size_t> KrullInstance::slot_index(std::string_view name) const {
  for (std::size_t i = 0; i < primes_.size(); ++i)
    if (primes_[i].name == name) return i;
  return std::nullopt;
}

void KrullInstance::check_shape(const Divisor& v) const {
  if (v.size() != primes_.size())
    throw Error(ErrorKind::ShapeMismatch, "divisor " + v.to_string() + " has " +
                                              std::to_string(v.size()) + " slots, instance has " +
                                              std::to_string(primes_.size()));
}

GroupElement KrullInstance::divisor_class(const Divisor& v) const {
  check_shape(v);
  GroupElement acc = group_.identity();
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i] != 0) acc = group_combine(acc, primes_[i].cls, BigInt(static_cast<long>(v[i])));
  return acc;
}

bool KrullInstance::is_element(const Divisor& v) const {
  check_shape(v);
  return v.is_nonnegative() && divisor_class(v).is_identity();
}

MonoidElement KrullInstance::element(Divisor v) const {
  if (!is_element(v))
    throw Error(ErrorKind::NotElement, v.to_string() + " is not a monoid element");
  return MonoidElement(std::move(v));
}

FractionalElement KrullInstance::fractional(Divisor v) const {
  if (!divisor_class(v).is_identity())
    throw Error(ErrorKind::NotElement, v.to_string() + " is not principal");
  return FractionalElement(std::move(v));
}

IdealGens::IdealGens(std::vector<MonoidElement> gens) : gens_(std::move(gens)) {
  if (gens_.empty()) throw Error(ErrorKind::NotElement, "ideal needs at least one generator");
  for (const auto& g : gens_)
    if (g.is_unit()) throw Error(ErrorKind::NotElement, "ideal generator must be nonzero");
}

// ---------------------------------------------------------------------------
// KrullMonoid

namespace {

void require_nonunit(const MonoidElement& h) {
  if (h.is_unit()) throw Error(ErrorKind::ZeroElement, "operation needs a nonunit element");
}

void require_bound(int bound, int minimum) {
  if (bound < minimum)
    throw Error(ErrorKind::ValidationError,
                "degree bound " + std::to_string(bound) + " is below " + std::to_string(minimum));
}

class NodeCounter {
 public:
  explicit NodeCounter(std::size_t budget, const char* what) : budget_(budget), what_(what) {}
  void tick() {
    if (++count_ > budget_)
      throw Error(ErrorKind::EnumerationBudgetExceeded,
                  std::string(what_) + " exceeded node budget " + std::to_string(budget_));
  }

 private:
  std::size_t budget_;
  std::size_t count_ = 0;
  const char* what_;
};

}  // namespace

KrullMonoid::KrullMonoid(KrullInstance inst, SearchLimits limits)
    : inst_(std::move(inst)),
      limits_(limits),
      table_(std::make_shared<const ClassTable>(inst_)) {
  const auto basis = detail::minimal_solutions(*table_, table_->zero(), {}, limits_.node_budget);
  atoms_.reserve(basis.size());
  for (const auto& v : basis) atoms_.push_back(inst_.element(Divisor(v)));
}

bool KrullMonoid::is_atom(const Divisor& v) const {
  if (!inst_.is_element(v) || v.is_zero()) return false;
  for (const auto& a : atoms_)
    if (a.divisor() != v && a.divisor().divides(v)) return false;
  return true;
}

bool KrullMonoid::has_nonunit_below(const Divisor& m) const {
  inst_.check_shape(m);
  for (const auto& a : atoms_)
    if (detail::dominates(m.exponents(), a.divisor().exponents())) return true;
  return false;
}

bool KrullMonoid::common_factor_exists(const MonoidElement& u, const MonoidElement& v) const {
  return has_nonunit_below(meet(u, v));
}

std::vector<MonoidElement> KrullMonoid::elements_up_to(Exponent max_degree) const {
  std::vector<MonoidElement> out;
  NodeCounter nodes(limits_.node_budget, "element enumeration");
  detail::for_each_vector(inst_.slot_count(), 1, max_degree, [&](const ExponentVector& v) {
    nodes.tick();
    if (table_->is_zero(table_->of(v))) out.push_back(inst_.element(Divisor(v)));
  });
  return out;
}

std::vector<Factorization> KrullMonoid::factorizations(const MonoidElement& h) const {
  require_nonunit(h);
  std::vector<Factorization> out;
  std::vector<std::size_t> current;
  NodeCounter nodes(limits_.node_budget, "factorization search");
  ExponentVector rest = h.divisor().exponents();

  auto recurse = [&](auto& self, std::size_t start) -> void {
    nodes.tick();
    if (std::all_of(rest.begin(), rest.end(), [](Exponent x) { return x == 0; })) {
      out.push_back({current});
      return;
    }
    for (std::size_t i = start; i < atoms_.size(); ++i) {
      const auto& a = atoms_[i].divisor().exponents();
      if (!detail::dominates(rest, a)) continue;
      for (std::size_t k = 0; k < rest.size(); ++k) rest[k] -= a[k];
      current.push_back(i);
      self(self, i);
      current.pop_back();
      for (std::size_t k = 0; k < rest.size(); ++k) rest[k] += a[k];
    }
  };
  recurse(recurse, 0);
  return out;
}

Divisor KrullMonoid::multiply_out(const Factorization& f) const {
  Divisor d = Divisor::zero(inst_.slot_count());
  for (auto i : f.atoms) d += atoms_.at(i).divisor();
  return d;
}

LengthSet KrullMonoid::length_set(const MonoidElement& h) const {
  const auto fs = factorizations(h);
  LengthSet ls;
  std::set<std::size_t> lengths;
  for (const auto& f : fs) lengths.insert(f.length());
  ls.lengths.assign(lengths.begin(), lengths.end());
  ls.factorization_count = fs.size();
  ls.factors_uniquely = fs.size() == 1;
  if (!ls.lengths.empty()) {
    ls.elasticity = mpq_class(static_cast<unsigned long>(ls.lengths.back()),
                              static_cast<unsigned long>(ls.lengths.front()));
    ls.elasticity.canonicalize();
  }
  return ls;
}

HfdReport KrullMonoid::check_hfd(int bound) const {
  require_bound(bound, 1);
  std::unordered_map<ExponentVector, std::vector<std::size_t>, VectorHash> lengths;
  NodeCounter nodes(limits_.node_budget, "half-factoriality check");

  for (const auto& h : elements_up_to(bound)) {
    const auto& hv = h.divisor().exponents();
    std::set<std::size_t> ls;
    for (const auto& a : atoms_) {
      const auto& av = a.divisor().exponents();
      if (!detail::dominates(hv, av)) continue;
      nodes.tick();
      ExponentVector rest = hv;
      for (std::size_t k = 0; k < rest.size(); ++k) rest[k] -= av[k];
      if (std::all_of(rest.begin(), rest.end(), [](Exponent x) { return x == 0; })) {
        ls.insert(1);
        continue;
      }
      for (auto l : lengths.at(rest)) ls.insert(l + 1);
    }
    if (ls.size() >= 2) return {bound, HfdCounterexample{h, *ls.begin(), *ls.rbegin()}};
    lengths.emplace(hv, std::vector<std::size_t>(ls.begin(), ls.end()));
  }
  return {bound, std::nullopt};
}

bool KrullMonoid::is_z_counterexample(const ZQuintuple& q) const {
  for (const auto* m : {&q.a, &q.b, &q.c, &q.d, &q.e})
    if (m->is_unit() || !inst_.is_element(*m)) return false;
  const Divisor ab = q.a.divisor() + q.b.divisor();
  if (ab + q.c.divisor() != q.d.divisor() + q.e.divisor()) return false;
  return !has_nonunit_below(meet(ab, q.d)) && !has_nonunit_below(meet(ab, q.e));
}

ZReport KrullMonoid::check_z_property(int bound) const {
  require_bound(bound, 3);
  const auto elems = elements_up_to(bound);
  if (elems.empty()) return {bound, std::nullopt};

  // Elements are degree-sorted; first index of each degree.
  std::vector<std::size_t> first_of_degree(bound + 2, elems.size());
  for (std::size_t i = elems.size(); i-- > 0;)
    first_of_degree[elems[i].degree()] = i;
  for (int d = bound; d >= 0; --d)
    first_of_degree[d] = std::min(first_of_degree[d], first_of_degree[d + 1]);
  const Exponent min_deg = elems.front().degree();

  std::unordered_map<ExponentVector, bool, VectorHash> coprime_memo;
  auto coprime = [&](const ExponentVector& p, const ExponentVector& d) {
    ExponentVector m(p.size());
    for (std::size_t k = 0; k < m.size(); ++k) m[k] = std::min(p[k], d[k]);
    auto it = coprime_memo.find(m);
    if (it != coprime_memo.end()) return it->second;
    bool result = !has_nonunit_below(Divisor(m));
    coprime_memo.emplace(std::move(m), result);
    return result;
  };

  // One node per (a, b, c) triple.
  NodeCounter nodes(limits_.node_budget, "Z-property search");
  const std::size_t n = inst_.slot_count();
  ExponentVector p(n), s(n);

  for (Exponent total = 3 * min_deg; total <= bound; ++total) {
    for (std::size_t ia = 0; ia < elems.size(); ++ia) {
      const auto& a = elems[ia].divisor().exponents();
      const Exponent da = elems[ia].degree();
      if (da + 2 * min_deg > total) break;
      for (std::size_t ib = 0; ib < elems.size(); ++ib) {
        const auto& b = elems[ib].divisor().exponents();
        const Exponent dc = total - da - elems[ib].degree();
        if (dc < min_deg) break;
        for (std::size_t k = 0; k < n; ++k) p[k] = a[k] + b[k];
        for (std::size_t ic = first_of_degree[dc]; ic < first_of_degree[dc + 1]; ++ic) {
          const auto& c = elems[ic].divisor().exponents();
          nodes.tick();
          for (std::size_t k = 0; k < n; ++k) s[k] = p[k] + c[k];
          const std::size_t d_end = first_of_degree[total - min_deg + 1];
          for (std::size_t id = 0; id < d_end; ++id) {
            const auto& d = elems[id].divisor().exponents();
            if (!detail::dominates(s, d)) continue;
            if (!coprime(p, d)) continue;
            ExponentVector e(n);
            for (std::size_t k = 0; k < n; ++k) e[k] = s[k] - d[k];
            if (!coprime(p, e)) continue;
            ZQuintuple q{elems[ia], elems[ib], elems[ic], elems[id],
                         inst_.element(Divisor(std::move(e)))};
            if (!is_z_counterexample(q))
              throw std::logic_error("Z-property search produced an invalid witness");
            return {bound, std::move(q)};
          }
        }
      }
    }
  }
  return {bound, std::nullopt};
}

std::size_t KrullMonoid::eta(const MonoidElement& h) const {
  require_nonunit(h);
  return h.divisor().support().size();
}

UniqueSquareResult KrullMonoid::find_unique_square(int bound) const {
  require_bound(bound, 1);
  UniqueSquareResult result;
  const std::size_t n = inst_.slot_count();
  std::vector<bool> nontorsion(n);
  bool any = false;
  for (std::size_t j = 0; j < n; ++j) {
    nontorsion[j] = !table_->has_finite_order(j);
    any = any || nontorsion[j];
  }
  if (!any) {
    result.status = UniqueSquareStatus::TorsionClassGroup;
    return result;
  }

  // Candidates lie in the union of the nontorsion primes.
  std::vector<MonoidElement> candidates;
  for (auto& h : elements_up_to(bound)) {
    const auto supp = h.divisor().support();
    if (std::any_of(supp.begin(), supp.end(), [&](std::size_t j) { return nontorsion[j]; }))
      candidates.push_back(std::move(h));
  }
  if (candidates.empty()) return result;

  std::size_t eta_min = n + 1;
  for (const auto& h : candidates) eta_min = std::min(eta_min, h.divisor().support().size());
  std::erase_if(candidates, [&](const MonoidElement& h) {
    return h.divisor().support().size() != eta_min;
  });

  // Ties between supports: the earliest nontorsion slot met by a minimal
  // support wins; the tuple (f_1, ..., f_eta) is then minimized coordinate by
  // coordinate over the full slot order.
  std::size_t first_slot = n;
  for (const auto& h : candidates)
    for (auto j : h.divisor().support())
      if (nontorsion[j]) first_slot = std::min(first_slot, j);
  const MonoidElement* best = nullptr;
  for (const auto& h : candidates) {
    if (h.divisor()[first_slot] <= 0) continue;
    if (!best || h.divisor().exponents() < best->divisor().exponents()) best = &h;
  }

  const MonoidElement& x = *best;
  if (!is_atom(x))
    throw std::logic_error("unique-square candidate " + x.to_string() + " is not an atom");
  const MonoidElement square = inst_.element(2 * x.divisor());
  auto fs = factorizations(square);
  if (fs.size() != 1)
    throw std::logic_error("square of " + x.to_string() + " does not factor uniquely");

  result.status = UniqueSquareStatus::Found;
  result.primes = x.divisor().support();
  result.eta = eta_min;
  result.x = x;
  result.square_factorizations = std::move(fs);
  return result;
}

std::optional<ZWitness> KrullMonoid::z_witness(const MonoidElement& x, int bound) const {
  require_bound(bound, 1);
  const auto supp = x.divisor().support();
  if (supp.size() < 2)
    throw Error(ErrorKind::NotMultiPrime, x.to_string() + " is supported on fewer than two primes");
  if (!is_atom(x)) throw Error(ErrorKind::NotAtom, x.to_string() + " is not an atom");

  const std::size_t n = inst_.slot_count();
  const std::size_t p1 = supp.front();
  const Divisor e1 = Divisor::unit_vector(n, p1);

  // y with (x, y)_v = P1.
  std::vector<MonoidElement> ys;
  for (auto& y : elements_up_to(bound))
    if (meet(x, y) == e1) ys.push_back(std::move(y));

  // z in P1^{-1} \ R: exponent -1 at P1, nonnegative elsewhere, class zero.
  std::vector<FractionalElement> zs;
  const ClassCode want = table_->slot(p1);
  detail::for_each_vector(n, 0, bound, [&](const ExponentVector& w) {
    if (w[p1] != 0 || table_->of(w) != want) return;
    zs.push_back(inst_.fractional(Divisor(w) - e1));
  });

  for (const auto& y : ys) {
    for (const auto& z : zs) {
      // Smallest n >= 1 with x z^n in R and x z^(n+1) not in R.
      std::optional<Exponent> power;
      for (Exponent k = 1; k <= x.divisor()[p1] + 1; ++k) {
        if (inst_.is_element(x.divisor() + k * z.divisor()) &&
            !inst_.is_element(x.divisor() + (k + 1) * z.divisor())) {
          power = k;
          break;
        }
      }
      if (!power) continue;
      const Exponent m = *power + 1;
      const Divisor c = m * (y.divisor() + z.divisor());
      const Divisor d = m * y.divisor();
      const Divisor e = 2 * x.divisor() + m * z.divisor();
      if (!inst_.is_element(c) || !inst_.is_element(e)) continue;
      ZQuintuple q{x, x, inst_.element(c), inst_.element(d), inst_.element(e)};
      if (!is_z_counterexample(q)) continue;
      return ZWitness{y, z, *power, p1, std::move(q)};
    }
  }
  return std::nullopt;
}

IdealContent KrullMonoid::ideal_gcd_and_primitivity(const IdealGens& ideal) const {
  Divisor m = ideal.generators().front().divisor();
  for (const auto& g : ideal.generators()) m = meet(m, g);
  const bool primitive = !has_nonunit_below(m);
  return {std::move(m), primitive};
}

ConditionCResult KrullMonoid::check_condition_C(const IdealGens& ideal) const {
  const auto content = ideal_gcd_and_primitivity(ideal);
  if (!content.primitive)
    throw Error(ErrorKind::NotPrimitive,
                "ideal content " + content.gcd.to_string() + " lies above a nonunit");
  for (const auto& a : atoms_)
    if (content.gcd.divides(a)) return {a};
  return {std::nullopt};
}

std::vector<Divisor> KrullMonoid::min_class_residues(const GroupElement& g) const {
  if (!g.same_group(inst_.class_group().identity()))
    throw Error(ErrorKind::ShapeMismatch, "class " + g.to_string() + " is not in the class group");
  const std::size_t n = inst_.slot_count();
  if (g.is_identity()) return {Divisor::zero(n)};
  std::vector<ExponentVector> prune;
  for (const auto& a : atoms_) prune.push_back(a.divisor().exponents());
  std::vector<Divisor> out;
  for (auto& v : detail::minimal_solutions(*table_, table_->encode(g), prune, limits_.node_budget))
    out.emplace_back(std::move(v));
  return out;
}

Condition3Result KrullMonoid::check_condition_3(const IdealGens& a, const IdealGens& b) const {
  const Divisor ma = ideal_gcd_and_primitivity(a).gcd;
  const Divisor mb = ideal_gcd_and_primitivity(b).gcd;
  const Divisor total = ma + mb;
  const ClassCode class_a = table_->of(ma.exponents());
  const std::size_t n = inst_.slot_count();
  NodeCounter nodes(limits_.node_budget, "condition (3) splitting search");

  Condition3Result result;
  // Each minimal w = v - total of (AB)^{-1} splits as u + v' with
  // u = r - ma in A^{-1} and v' in B^{-1} iff some 0 <= r <= v has the class
  // of ma.
  for (const auto& v : min_class_residues(inst_.divisor_class(total))) {
    result.checked.push_back(v - total);
    ExponentVector r(n, 0);
    bool split = false;
    for (;;) {
      nodes.tick();
      if (table_->of(r) == class_a) {
        split = true;
        break;
      }
      std::size_t k = 0;
      while (k < n && r[k] == v[k]) r[k++] = 0;
      if (k == n) break;
      ++r[k];
    }
    if (!split) {
      result.unsplittable = v - total;
      return result;
    }
  }
  return result;
}

}  // namespace nufact
