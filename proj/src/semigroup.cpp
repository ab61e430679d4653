#include "nufact/semigroup.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

#include "nufact/error.hpp"

namespace nufact {

namespace {

std::string vec_str(std::span<const Exponent> v) {
  std::ostringstream out;
  out << '(';
  for (std::size_t i = 0; i < v.size(); ++i) out << (i ? "," : "") << v[i];
  out << ')';
  return out.str();
}

IntMatrix matrix_of_columns(std::size_t rows, const std::vector<ExponentVector>& cols) {
  IntMatrix m(rows, cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c)
    for (std::size_t r = 0; r < rows; ++r) m(r, c) = static_cast<long>(cols[c][r]);
  return m;
}

std::size_t rank_of(const IntMatrix& m) {
  const auto d = smith_normal_form(m).invariant_factors();
  return static_cast<std::size_t>(std::count_if(d.begin(), d.end(), [](const BigInt& x) { return x != 0; }));
}

IntMatrix generator_matrix(std::size_t dim, const std::vector<ExponentVector>& gens) {
  for (const auto& g : gens) {
    if (g.size() != dim)
      throw Error(ErrorKind::InvalidSemigroup, "generator " + vec_str(g) + " has wrong length");
    if (std::any_of(g.begin(), g.end(), [](Exponent x) { return x < 0; }))
      throw Error(ErrorKind::InvalidSemigroup, "generator " + vec_str(g) + " is not nonnegative");
  }
  return matrix_of_columns(dim, gens);
}

}  // namespace

AffineSemigroup::AffineSemigroup(std::size_t ambient_dim, std::vector<ExponentVector> generators,
                                 std::vector<ExponentVector> facets)
    : dim_(ambient_dim),
      gens_(std::move(generators)),
      facets_(std::move(facets)),
      lattice_(cokernel(generator_matrix(dim_, gens_))) {
  if (dim_ == 0) throw Error(ErrorKind::InvalidSemigroup, "ambient dimension must be positive");
  if (gens_.empty()) throw Error(ErrorKind::InvalidSemigroup, "no generators");
  if (facets_.empty()) throw Error(ErrorKind::InvalidSemigroup, "no facets");

  const std::size_t cone_rank = rank_of(matrix_of_columns(dim_, gens_));
  IntMatrix values(facets_.size(), gens_.size());
  for (std::size_t f = 0; f < facets_.size(); ++f) {
    if (facets_[f].size() != dim_)
      throw Error(ErrorKind::InvalidSemigroup, "facet " + vec_str(facets_[f]) + " has wrong length");
    std::vector<ExponentVector> on_facet;
    Exponent content = 0;
    for (std::size_t g = 0; g < gens_.size(); ++g) {
      const Exponent v = facet_value(f, gens_[g]);
      if (v < 0)
        throw Error(ErrorKind::InvalidSemigroup, "generator " + vec_str(gens_[g]) +
                                                     " violates facet " + vec_str(facets_[f]));
      if (v == 0) on_facet.push_back(gens_[g]);
      content = std::gcd(content, v);
      values(f, g) = static_cast<long>(v);
    }
    const std::size_t face_rank = on_facet.empty() ? 0 : rank_of(matrix_of_columns(dim_, on_facet));
    if (face_rank + 1 != cone_rank)
      throw Error(ErrorKind::InvalidSemigroup,
                  "functional " + vec_str(facets_[f]) + " does not cut out a facet of the cone");
    if (content != 1)
      throw Error(ErrorKind::InvalidSemigroup,
                  "functional " + vec_str(facets_[f]) + " is not primitive on the lattice");
  }
  if (rank_of(values) != cone_rank)
    throw Error(ErrorKind::InvalidSemigroup, "facets do not separate points of the lattice");
}

Exponent AffineSemigroup::facet_value(std::size_t f, std::span<const Exponent> p) const {
  Exponent s = 0;
  for (std::size_t i = 0; i < dim_; ++i) s += facets_[f][i] * p[i];
  return s;
}

bool AffineSemigroup::in_group(std::span<const Exponent> p) const {
  if (p.size() != dim_)
    throw Error(ErrorKind::ShapeMismatch, "point " + vec_str(p) + " has wrong length");
  BigVector big(p.begin(), p.end());
  for (std::size_t i = 0; i < p.size(); ++i) big[i] = static_cast<long>(p[i]);
  return lattice_.project(big).is_identity();
}

bool AffineSemigroup::membership(std::span<const Exponent> p) const {
  if (p.size() != dim_)
    throw Error(ErrorKind::ShapeMismatch, "point " + vec_str(p) + " has wrong length");
  if (std::any_of(p.begin(), p.end(), [](Exponent x) { return x < 0; })) return false;
  for (std::size_t f = 0; f < facets_.size(); ++f)
    if (facet_value(f, p) < 0) return false;
  return in_group(p);
}

Divisor AffineSemigroup::divisor_map(std::span<const Exponent> p) const {
  if (!membership(p))
    throw Error(ErrorKind::NotMember, vec_str(p) + " is not in the semigroup");
  ExponentVector d(facets_.size());
  for (std::size_t f = 0; f < facets_.size(); ++f) d[f] = facet_value(f, p);
  return Divisor(std::move(d));
}

bool AffineSemigroup::generated(std::span<const Exponent> p) const {
  if (p.size() != dim_)
    throw Error(ErrorKind::ShapeMismatch, "point " + vec_str(p) + " has wrong length");
  const ExponentVector target(p.begin(), p.end());
  std::set<ExponentVector> seen{ExponentVector(dim_, 0)};
  std::vector<ExponentVector> stack{ExponentVector(dim_, 0)};
  while (!stack.empty()) {
    ExponentVector v = std::move(stack.back());
    stack.pop_back();
    if (v == target) return true;
    for (const auto& g : gens_) {
      ExponentVector w = v;
      bool fits = true;
      bool moved = false;
      for (std::size_t i = 0; i < dim_; ++i) {
        w[i] += g[i];
        moved = moved || g[i] != 0;
        if (w[i] > target[i]) fits = false;
      }
      if (fits && moved && seen.insert(w).second) stack.push_back(std::move(w));
    }
  }
  return false;
}

std::optional<ExponentVector> saturation_gap(const AffineSemigroup& s, SaturationOptions opts) {
  const std::size_t dim = s.ambient_dim();
  ExponentVector hi(dim, 0);
  for (const auto& g : s.generators())
    for (std::size_t i = 0; i < dim; ++i) hi[i] = std::max(hi[i], g[i]);
  for (auto& h : hi) h *= opts.box_scale;

  // Degree-major scan so the reported gap is the smallest one.
  Exponent max_degree = 0;
  for (auto h : hi) max_degree += h;
  std::vector<ExponentVector> box;
  ExponentVector p(dim, 0);
  for (;;) {
    box.push_back(p);
    std::size_t k = 0;
    while (k < dim && p[k] == hi[k]) p[k++] = 0;
    if (k == dim) break;
    ++p[k];
  }
  std::sort(box.begin(), box.end(), [](const ExponentVector& a, const ExponentVector& b) {
    return canonical_less(Divisor(a), Divisor(b));
  });
  for (const auto& q : box)
    if (s.membership(q) && !s.generated(q)) return q;
  return std::nullopt;
}

MonoidElement CompiledSemigroup::embed(std::span<const Exponent> p) const {
  return instance.element(semigroup.divisor_map(p));
}

CompiledSemigroup compile_to_krull(const AffineSemigroup& s, SaturationOptions opts) {
  if (auto gap = saturation_gap(s, opts))
    throw Error(ErrorKind::NotSaturated,
                "lattice point " + vec_str(*gap) + " lies in the cone but is not generated");

  const std::size_t nf = s.facets().size();
  std::vector<ExponentVector> columns;
  for (const auto& g : s.generators()) columns.push_back(s.divisor_map(g).exponents());
  const Cokernel cl = cokernel(matrix_of_columns(nf, columns));

  std::vector<PrimeSlot> primes;
  for (std::size_t f = 0; f < nf; ++f) {
    BigVector unit(nf, 0);
    unit[f] = 1;
    primes.push_back({"q" + std::to_string(f + 1), cl.project(unit)});
  }
  return CompiledSemigroup{s, KrullInstance(cl.group(), std::move(primes))};
}

}  // namespace nufact
