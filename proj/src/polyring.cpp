#include "nufact/polyring.hpp"

#include <algorithm>
#include <bit>
#include <set>
#include <sstream>

#include "nufact/error.hpp"

namespace nufact {

CoefficientField CoefficientField::prime(std::uint32_t p) {
  if (p < 2 || mpz_probab_prime_p(mpz_class(p).get_mpz_t(), 30) == 0)
    throw Error(ErrorKind::ValidationError, std::to_string(p) + " is not prime");
  return CoefficientField(p);
}

mpq_class CoefficientField::normalize(const mpq_class& raw) const {
  mpq_class c = raw;
  c.canonicalize();
  if (p_ == 0) return c;
  const mpz_class p = p_;
  mpz_class den = c.get_den() % p;
  if (den == 0)
    throw Error(ErrorKind::ValidationError,
                c.get_str() + " has no image in GF(" + std::to_string(p_) + ")");
  mpz_class inv;
  mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), p.get_mpz_t());
  mpz_class r = (c.get_num() * inv) % p;
  if (r < 0) r += p;
  return mpq_class(r);
}

mpq_class CoefficientField::inverse(const mpq_class& c) const {
  const mpq_class n = normalize(c);
  if (n == 0) throw Error(ErrorKind::ZeroElement, "zero has no inverse");
  if (p_ == 0) return 1 / n;
  const mpz_class p = p_;
  mpz_class inv;
  mpz_invert(inv.get_mpz_t(), n.get_num().get_mpz_t(), p.get_mpz_t());
  return mpq_class(inv);
}

std::string CoefficientField::to_string() const {
  return p_ == 0 ? "Q" : "GF(" + std::to_string(p_) + ")";
}

bool TermOrder::operator()(const PolyTerm& a, const PolyTerm& b) const {
  Exponent da = a.t, db = b.t;
  for (auto e : a.exps) da += e;
  for (auto e : b.exps) db += e;
  if (da != db) return da > db;
  if (a.t != b.t) return a.t > b.t;
  return a.exps > b.exps;
}

SparsePoly SparsePoly::constant(CoefficientField field, std::size_t dim, const mpq_class& c) {
  SparsePoly p(field, dim);
  p.add_term(ExponentVector(dim, 0), 0, c);
  return p;
}

SparsePoly SparsePoly::monomial(CoefficientField field, ExponentVector exps, Exponent t,
                                const mpq_class& c) {
  SparsePoly p(field, exps.size());
  p.add_term(std::move(exps), t, c);
  return p;
}

bool SparsePoly::is_constant() const {
  if (terms_.empty()) return true;
  if (terms_.size() > 1) return false;
  const auto& k = terms_.begin()->first;
  return k.t == 0 && std::all_of(k.exps.begin(), k.exps.end(), [](Exponent e) { return e == 0; });
}

Exponent SparsePoly::t_degree() const {
  Exponent d = -1;
  for (const auto& [k, c] : terms_) d = std::max(d, k.t);
  return d;
}

SparsePoly SparsePoly::t_coefficient(Exponent k) const {
  SparsePoly out(field_, dim_);
  for (const auto& [key, c] : terms_)
    if (key.t == k) out.terms_.emplace(PolyTerm{0, key.exps}, c);
  return out;
}

const mpq_class& SparsePoly::leading_coefficient() const {
  if (terms_.empty()) throw Error(ErrorKind::ZeroElement, "zero polynomial has no leading term");
  return terms_.begin()->second;
}

void SparsePoly::add_term(ExponentVector exps, Exponent t, const mpq_class& c) {
  if (exps.size() != dim_)
    throw Error(ErrorKind::ShapeMismatch, "monomial has " + std::to_string(exps.size()) +
                                              " exponents, expected " + std::to_string(dim_));
  if (t < 0 || std::any_of(exps.begin(), exps.end(), [](Exponent e) { return e < 0; }))
    throw Error(ErrorKind::ShapeMismatch, "negative exponent");
  const mpq_class v = field_.normalize(c);
  if (v == 0) return;
  auto [it, inserted] = terms_.try_emplace(PolyTerm{t, std::move(exps)}, v);
  if (inserted) return;
  it->second = field_.normalize(it->second + v);
  if (it->second == 0) terms_.erase(it);
}

void SparsePoly::check_compatible(const SparsePoly& o) const {
  if (!(field_ == o.field_))
    throw Error(ErrorKind::FieldMismatch, field_.to_string() + " vs " + o.field_.to_string());
  if (dim_ != o.dim_)
    throw Error(ErrorKind::ShapeMismatch, "polynomials in " + std::to_string(dim_) + " and " +
                                              std::to_string(o.dim_) + " variables");
}

SparsePoly& SparsePoly::operator+=(const SparsePoly& o) {
  check_compatible(o);
  for (const auto& [k, c] : o.terms_) add_term(k.exps, k.t, c);
  return *this;
}

SparsePoly& SparsePoly::operator-=(const SparsePoly& o) {
  check_compatible(o);
  for (const auto& [k, c] : o.terms_) add_term(k.exps, k.t, -c);
  return *this;
}

SparsePoly operator*(const SparsePoly& a, const SparsePoly& b) {
  a.check_compatible(b);
  SparsePoly out(a.field_, a.dim_);
  for (const auto& [ka, ca] : a.terms_)
    for (const auto& [kb, cb] : b.terms_) {
      ExponentVector e = ka.exps;
      for (std::size_t i = 0; i < e.size(); ++i) e[i] += kb.exps[i];
      out.add_term(std::move(e), ka.t + kb.t, ca * cb);
    }
  return out;
}

SparsePoly SparsePoly::scaled(const mpq_class& c) const {
  SparsePoly out(field_, dim_);
  for (const auto& [k, v] : terms_) out.add_term(k.exps, k.t, v * c);
  return out;
}

bool SparsePoly::operator==(const SparsePoly& o) const {
  return field_ == o.field_ && dim_ == o.dim_ && terms_.size() == o.terms_.size() &&
         std::equal(terms_.begin(), terms_.end(), o.terms_.begin(), [](const auto& x, const auto& y) {
           return x.first.t == y.first.t && x.first.exps == y.first.exps && x.second == y.second;
         });
}

bool SparsePoly::canonical_less(const SparsePoly& o) const {
  if (field_.characteristic() != o.field_.characteristic())
    return field_.characteristic() < o.field_.characteristic();
  if (dim_ != o.dim_) return dim_ < o.dim_;
  TermOrder before;
  auto i = terms_.begin();
  auto j = o.terms_.begin();
  for (; i != terms_.end() && j != o.terms_.end(); ++i, ++j) {
    if (before(i->first, j->first)) return true;
    if (before(j->first, i->first)) return false;
    if (i->second != j->second) return i->second < j->second;
  }
  return i == terms_.end() && j != o.terms_.end();
}

std::vector<std::string> default_variable_names(std::size_t dim) {
  static const char* short_names[] = {"x", "y", "z"};
  std::vector<std::string> out;
  for (std::size_t i = 0; i < dim; ++i)
    out.push_back(dim <= 3 ? short_names[i] : "x" + std::to_string(i + 1));
  return out;
}

std::string SparsePoly::to_string() const { return to_string(default_variable_names(dim_)); }

std::string SparsePoly::to_string(std::span<const std::string> names) const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [k, c] : terms_) {
    mpq_class mag = abs(c);
    if (first) {
      if (c < 0) out << '-';
    } else {
      out << (c < 0 ? " - " : " + ");
    }
    first = false;
    std::vector<std::string> factors;
    for (std::size_t i = 0; i < k.exps.size(); ++i) {
      if (k.exps[i] == 0) continue;
      factors.push_back(names[i] + (k.exps[i] > 1 ? "^" + std::to_string(k.exps[i]) : ""));
    }
    if (k.t > 0) factors.push_back("t" + (k.t > 1 ? "^" + std::to_string(k.t) : std::string()));
    if (mag != 1 || factors.empty()) factors.insert(factors.begin(), mag.get_str());
    for (std::size_t i = 0; i < factors.size(); ++i) out << (i ? "*" : "") << factors[i];
  }
  return out.str();
}

MonomialSupport::MonomialSupport(const AffineSemigroup& s)
    : dim_(s.ambient_dim()), test_([s](std::span<const Exponent> p) { return s.membership(p); }) {}

MonomialSupport::MonomialSupport(const KrullInstance& inst)
    : dim_(inst.slot_count()), test_([inst](std::span<const Exponent> p) {
        return inst.is_element(Divisor(ExponentVector(p.begin(), p.end())));
      }) {}

bool MonomialSupport::contains(std::span<const Exponent> p) const {
  if (p.size() != dim_)
    throw Error(ErrorKind::ShapeMismatch, "monomial has " + std::to_string(p.size()) +
                                              " exponents, expected " + std::to_string(dim_));
  return test_(p);
}

bool in_semigroup_ring(const SparsePoly& p, const MonomialSupport& s) {
  if (p.dim() != s.dim())
    throw Error(ErrorKind::ShapeMismatch, "polynomial dimension differs from the semigroup");
  return std::all_of(p.terms().begin(), p.terms().end(),
                     [&](const auto& kv) { return s.contains(kv.first.exps); });
}

AmbientFactorization AmbientFactorization::certify(const SparsePoly& p,
                                                   std::vector<SparsePoly> factors) {
  if (p.is_zero()) throw Error(ErrorKind::BadCertificate, "cannot certify the zero polynomial");
  SparsePoly prod = SparsePoly::constant(p.field(), p.dim(), 1);
  for (const auto& f : factors) {
    if (f.field() != p.field() || f.dim() != p.dim())
      throw Error(ErrorKind::BadCertificate, "factor " + f.to_string() + " lives in another ring");
    if (f.is_constant())
      throw Error(ErrorKind::BadCertificate, "factor " + f.to_string() + " is a scalar");
    prod = prod * f;
  }
  const mpq_class unit = p.field().normalize(p.leading_coefficient() *
                                             p.field().inverse(prod.leading_coefficient()));
  if (!(prod.scaled(unit) == p))
    throw Error(ErrorKind::BadCertificate,
                "factors multiply to " + prod.to_string() + ", not a scalar multiple of " + p.to_string());
  return AmbientFactorization(unit, std::move(factors), p);
}

SparsePoly AmbientFactorization::product() const {
  SparsePoly prod = SparsePoly::constant(target_.field(), target_.dim(), unit_);
  for (const auto& f : factors_) prod = prod * f;
  return prod;
}

namespace {

constexpr std::size_t kMaxCertificateFactors = 16;

// Block products of a certificate indexed by bitmask, with subring membership
// and relative reducibility memoized.
class BlockTable {
 public:
  BlockTable(const AmbientFactorization& cert, const MonomialSupport& s) : cert_(cert), s_(s) {
    n_ = cert.factors().size();
    if (n_ > kMaxCertificateFactors)
      throw Error(ErrorKind::Unsupported, "certificates are limited to " +
                                              std::to_string(kMaxCertificateFactors) + " factors");
    products_.resize(std::size_t{1} << n_);
    in_ring_.assign(products_.size(), -1);
    reducible_.assign(products_.size(), -1);
  }

  std::size_t size() const noexcept { return n_; }
  std::uint32_t full() const noexcept { return (std::uint32_t{1} << n_) - 1; }

  const SparsePoly& product(std::uint32_t mask) {
    auto& slot = products_[mask];
    if (!slot) {
      SparsePoly p = SparsePoly::constant(cert_.target().field(), cert_.target().dim(), 1);
      for (std::size_t i = 0; i < n_; ++i)
        if (mask >> i & 1) p = p * cert_.factors()[i];
      slot = std::move(p);
    }
    return *slot;
  }

  bool in_ring(std::uint32_t mask) {
    if (in_ring_[mask] < 0) in_ring_[mask] = in_semigroup_ring(product(mask), s_) ? 1 : 0;
    return in_ring_[mask] == 1;
  }

  // Some split into two subring blocks exists.
  bool reducible(std::uint32_t mask) {
    if (reducible_[mask] < 0) {
      bool r = false;
      const std::uint32_t low = mask & (~mask + 1);
      for (std::uint32_t a = (mask - 1) & mask; a != 0 && !r; a = (a - 1) & mask)
        if ((a & low) != 0 && in_ring(a) && in_ring(mask ^ a)) r = true;
      reducible_[mask] = r ? 1 : 0;
    }
    return reducible_[mask] == 1;
  }

 private:
  const AmbientFactorization& cert_;
  const MonomialSupport& s_;
  std::size_t n_ = 0;
  std::vector<std::optional<SparsePoly>> products_;
  std::vector<int> in_ring_;
  std::vector<int> reducible_;
};

// Restricted growth strings enumerate set partitions of {0..n-1}.
template <class Visit>
void for_each_partition(std::size_t n, Visit&& visit) {
  if (n == 0) return;
  std::vector<std::size_t> a(n, 0), max_before(n, 0);
  for (;;) {
    std::size_t blocks = 0;
    for (auto x : a) blocks = std::max(blocks, x + 1);
    std::vector<std::uint32_t> masks(blocks, 0);
    for (std::size_t i = 0; i < n; ++i) masks[a[i]] |= std::uint32_t{1} << i;
    visit(masks);
    std::size_t i = n - 1;
    while (i > 0 && a[i] > max_before[i]) --i;
    if (i == 0) return;
    ++a[i];
    for (std::size_t j = i + 1; j < n; ++j) {
      a[j] = 0;
      max_before[j] = std::max(max_before[j - 1], a[j - 1]);
    }
  }
}

struct FactorizationLess {
  bool operator()(const PolyFactorization& a, const PolyFactorization& b) const {
    if (a.size() != b.size()) return a.size() < b.size();
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i].canonical_less(b[i])) return true;
      if (b[i].canonical_less(a[i])) return false;
    }
    return false;
  }
};

PolyFactorization normalize_blocks(BlockTable& table, const std::vector<std::uint32_t>& masks,
                                   const mpq_class& unit) {
  PolyFactorization out;
  for (auto m : masks) out.push_back(table.product(m));
  std::sort(out.begin(), out.end(),
            [](const SparsePoly& a, const SparsePoly& b) { return a.canonical_less(b); });
  out.front() = out.front().scaled(unit);
  return out;
}

void require_certified(const SparsePoly& p, const AmbientFactorization& cert,
                       const MonomialSupport& s) {
  if (!(cert.target() == p))
    throw Error(ErrorKind::BadCertificate, "certificate is for " + cert.target().to_string() +
                                               ", not " + p.to_string());
  if (!in_semigroup_ring(p, s))
    throw Error(ErrorKind::NotInSubring, p.to_string() + " is not in the semigroup ring");
}

// Componentwise-minimum box search for a nonzero subring monomial w with
// every m - w in the subring.
bool common_monomial_factor(const std::vector<ExponentVector>& ms, const MonomialSupport& s) {
  if (ms.empty()) return false;
  ExponentVector hi = ms.front();
  for (const auto& m : ms)
    for (std::size_t i = 0; i < hi.size(); ++i) hi[i] = std::min(hi[i], m[i]);
  ExponentVector w(hi.size(), 0);
  ExponentVector rest(hi.size());
  for (;;) {
    std::size_t k = 0;
    while (k < w.size() && w[k] == hi[k]) w[k++] = 0;
    if (k == w.size()) return false;
    ++w[k];
    if (!s.contains(w)) continue;
    bool all = true;
    for (const auto& m : ms) {
      for (std::size_t i = 0; i < m.size(); ++i) rest[i] = m[i] - w[i];
      if (!s.contains(rest)) {
        all = false;
        break;
      }
    }
    if (all) return true;
  }
}

}  // namespace

std::vector<PolyFactorization> factorizations_in_subring(const SparsePoly& p,
                                                         const AmbientFactorization& cert,
                                                         const MonomialSupport& s) {
  require_certified(p, cert, s);
  BlockTable table(cert, s);
  std::set<PolyFactorization, FactorizationLess> found;
  for_each_partition(table.size(), [&](const std::vector<std::uint32_t>& masks) {
    if (masks.size() < 2) return;
    for (auto m : masks)
      if (!table.in_ring(m)) return;
    found.insert(normalize_blocks(table, masks, cert.unit()));
  });
  return {found.begin(), found.end()};
}

std::vector<PolyFactorization> irreducible_factorizations_in_subring(
    const SparsePoly& p, const AmbientFactorization& cert, const MonomialSupport& s) {
  require_certified(p, cert, s);
  BlockTable table(cert, s);
  std::set<PolyFactorization, FactorizationLess> found;
  if (table.size() == 0) return {};
  for_each_partition(table.size(), [&](const std::vector<std::uint32_t>& masks) {
    for (auto m : masks)
      if (!table.in_ring(m) || table.reducible(m)) return;
    found.insert(normalize_blocks(table, masks, cert.unit()));
  });
  return {found.begin(), found.end()};
}

std::vector<std::size_t> subring_length_set(const SparsePoly& p, const AmbientFactorization& cert,
                                            const MonomialSupport& s) {
  std::set<std::size_t> lengths;
  for (const auto& f : irreducible_factorizations_in_subring(p, cert, s)) lengths.insert(f.size());
  return {lengths.begin(), lengths.end()};
}

bool monomials_share_factor(std::span<const Exponent> u, std::span<const Exponent> v,
                            const MonomialSupport& s) {
  return common_monomial_factor({ExponentVector(u.begin(), u.end()), ExponentVector(v.begin(), v.end())},
                                s);
}

bool is_primitive(const SparsePoly& p, const MonomialSupport& s) {
  if (p.is_zero()) throw Error(ErrorKind::ZeroElement, "zero polynomial");
  std::vector<ExponentVector> coeffs;
  for (Exponent k = 0; k <= p.t_degree(); ++k) {
    const SparsePoly c = p.t_coefficient(k);
    if (c.is_zero()) continue;
    if (c.terms().size() > 1)
      throw Error(ErrorKind::Unsupported,
                  "content of non-monomial coefficient " + c.to_string() + " is not computed");
    coeffs.push_back(c.terms().begin()->first.exps);
  }
  return !common_monomial_factor(coeffs, s);
}

ZFailureIdentity verify_z_failure_identity(const KrullMonoid& monoid, const ZQuintuple& q,
                                           CoefficientField field) {
  const KrullInstance& inst = monoid.instance();
  for (const MonoidElement* m : {&q.a, &q.b, &q.c, &q.d, &q.e}) {
    inst.check_shape(*m);
    if (m->is_unit())
      throw Error(ErrorKind::QuintupleMismatch, "quintuple entries must be nonunits");
  }
  const Divisor ab = q.a.divisor() + q.b.divisor();
  if (!(ab + q.c.divisor() == q.d.divisor() + q.e.divisor()))
    throw Error(ErrorKind::QuintupleMismatch, "abc = " + (ab + q.c.divisor()).to_string() +
                                                  " but de = " + (q.d.divisor() + q.e.divisor()).to_string());

  auto mono = [&](const Divisor& d, Exponent t) { return SparsePoly::monomial(field, d.exponents(), t); };
  ZFailureIdentity out{mono(ab, 0),
                       mono(ab, 1) + mono(q.d, 0),
                       mono(ab, 1) + mono(q.e, 0),
                       mono(ab, 2) + mono(q.d, 1) + mono(q.e, 1) + mono(q.c, 0),
                       SparsePoly(field, inst.slot_count()),
                       SparsePoly(field, inst.slot_count())};
  out.fg = out.f * out.g;
  out.ab_h = out.ab * out.h;
  const MonoidElement abm = inst.element(ab);
  out.f_primitive = !monoid.common_factor_exists(abm, q.d);
  out.g_primitive = !monoid.common_factor_exists(abm, q.e);
  return out;
}

ConstantFactorResult constant_factor_condition(const SparsePoly& f, const SparsePoly& g,
                                               const AmbientFactorization& cert,
                                               const MonomialSupport& s) {
  for (const SparsePoly* p : {&f, &g})
    if (p->t_degree() != 1 || !is_primitive(*p, s))
      throw Error(ErrorKind::NotPrimitive, p->to_string() + " is not a primitive linear polynomial");
  const SparsePoly fg = f * g;
  require_certified(fg, cert, s);

  BlockTable table(cert, s);
  std::uint32_t constants = 0;
  for (std::size_t i = 0; i < cert.factors().size(); ++i)
    if (cert.factors()[i].t_degree() == 0) constants |= std::uint32_t{1} << i;

  std::vector<std::uint32_t> subsets;
  for (std::uint32_t a = constants; a != 0; a = (a - 1) & constants) subsets.push_back(a);
  std::sort(subsets.begin(), subsets.end(), [](std::uint32_t x, std::uint32_t y) {
    const int px = std::popcount(x), py = std::popcount(y);
    return px != py ? px < py : x < y;
  });

  ConstantFactorResult out;
  for (auto mask : subsets) {
    const SparsePoly& c = table.product(mask);
    if (std::any_of(out.checked.begin(), out.checked.end(),
                    [&](const SparsePoly& seen) { return seen == c; }))
      continue;
    if (!table.in_ring(mask) || !table.in_ring(table.full() ^ mask)) continue;
    out.checked.push_back(c);
    if (table.reducible(mask)) {
      out.failing = c;
      break;
    }
  }
  return out;
}

}  // namespace nufact
