#pragma once

// Brute-force box enumeration over a Krull instance. Classes are summed with
// plain integer arithmetic, and atoms, common factors and factorizations come
// from exhaustive search over the box, not from the completion search.

#include <algorithm>
#include <map>
#include <vector>

#include "nufact/krull.hpp"

namespace oracle {

using Vec = std::vector<long>;

class BoxModel {
 public:
  BoxModel(const nufact::KrullInstance& inst, long hi) : n_(inst.slot_count()), hi_(hi) {
    for (const auto& p : inst.primes()) {
      Vec c;
      for (const auto& x : p.cls.free_part()) c.push_back(x.get_si());
      free_.push_back(c);
      Vec t;
      for (const auto& x : p.cls.torsion_part()) t.push_back(x.get_si());
      tors_.push_back(t);
    }
    for (const auto& m : inst.class_group().torsion_orders()) moduli_.push_back(m.get_si());

    std::size_t total = 1;
    for (std::size_t i = 0; i < n_; ++i) total *= static_cast<std::size_t>(hi_ + 1);
    element_.assign(total, false);
    below_.assign(total, false);
    Vec v(n_, 0);
    for (std::size_t idx = 0; idx < total; ++idx) {
      decode(idx, v);
      const bool nonzero = std::any_of(v.begin(), v.end(), [](long x) { return x != 0; });
      element_[idx] = zero_class(v);
      bool below = nonzero && element_[idx];
      for (std::size_t i = 0; i < n_ && !below; ++i)
        if (v[i] > 0) below = below_[idx - stride(i)];
      below_[idx] = below;
    }
    for (std::size_t idx = 0; idx < total; ++idx) {
      decode(idx, v);
      if (!element_[idx] || std::all_of(v.begin(), v.end(), [](long x) { return x == 0; })) continue;
      bool atom = true;
      for (std::size_t i = 0; i < n_ && atom; ++i)
        if (v[i] > 0 && below_[idx - stride(i)]) atom = false;
      if (atom) atoms_.push_back(v);
    }
    std::sort(atoms_.begin(), atoms_.end(), [](const Vec& a, const Vec& b) {
      long da = 0, db = 0;
      for (auto x : a) da += x;
      for (auto x : b) db += x;
      return da != db ? da < db : a < b;
    });
  }

  long hi() const { return hi_; }
  std::size_t slots() const { return n_; }

  bool zero_class(const Vec& v) const {
    for (std::size_t k = 0; k < (free_.empty() ? 0 : free_[0].size()); ++k) {
      long s = 0;
      for (std::size_t i = 0; i < n_; ++i) s += v[i] * free_[i][k];
      if (s != 0) return false;
    }
    for (std::size_t k = 0; k < moduli_.size(); ++k) {
      long s = 0;
      for (std::size_t i = 0; i < n_; ++i) s += v[i] * tors_[i][k];
      if (s % moduli_[k] != 0) return false;
    }
    return true;
  }

  bool in_box(const Vec& v) const {
    return std::all_of(v.begin(), v.end(), [&](long x) { return x >= 0 && x <= hi_; });
  }

  bool is_element(const Vec& v) const { return in_box(v) && element_[index(v)]; }
  bool has_nonzero_element_below(const Vec& v) const { return below_[index(v)]; }

  bool is_atom(const Vec& v) const {
    return std::find(atoms_.begin(), atoms_.end(), v) != atoms_.end();
  }

  bool common_factor(const Vec& u, const Vec& v) const {
    Vec m(n_);
    for (std::size_t i = 0; i < n_; ++i) m[i] = std::min(u[i], v[i]);
    return has_nonzero_element_below(m);
  }

  // Atoms of the box, degree first then lexicographic.
  const std::vector<Vec>& atoms() const { return atoms_; }

  // Multisets of atoms (each sorted) summing to h.
  std::vector<std::vector<Vec>> factorizations(const Vec& h) const {
    std::vector<std::vector<Vec>> out;
    std::vector<Vec> cur;
    Vec rest = h;
    search(rest, 0, cur, out);
    for (auto& f : out) std::sort(f.begin(), f.end());
    std::sort(out.begin(), out.end());
    return out;
  }

 private:
  std::size_t stride(std::size_t i) const {
    std::size_t s = 1;
    for (std::size_t k = 0; k < i; ++k) s *= static_cast<std::size_t>(hi_ + 1);
    return s;
  }
  std::size_t index(const Vec& v) const {
    std::size_t idx = 0;
    for (std::size_t i = n_; i-- > 0;) idx = idx * static_cast<std::size_t>(hi_ + 1) + static_cast<std::size_t>(v[i]);
    return idx;
  }
  void decode(std::size_t idx, Vec& v) const {
    for (std::size_t i = 0; i < n_; ++i) {
      v[i] = static_cast<long>(idx % static_cast<std::size_t>(hi_ + 1));
      idx /= static_cast<std::size_t>(hi_ + 1);
    }
  }
  void search(Vec& rest, std::size_t from, std::vector<Vec>& cur, std::vector<std::vector<Vec>>& out) const {
    if (std::all_of(rest.begin(), rest.end(), [](long x) { return x == 0; })) {
      out.push_back(cur);
      return;
    }
    for (std::size_t a = from; a < atoms_.size(); ++a) {
      const Vec& at = atoms_[a];
      bool fits = true;
      for (std::size_t i = 0; i < n_; ++i) fits = fits && at[i] <= rest[i];
      if (!fits) continue;
      for (std::size_t i = 0; i < n_; ++i) rest[i] -= at[i];
      cur.push_back(at);
      search(rest, a, cur, out);
      cur.pop_back();
      for (std::size_t i = 0; i < n_; ++i) rest[i] += at[i];
    }
  }

  std::size_t n_;
  long hi_;
  std::vector<Vec> free_, tors_;
  Vec moduli_;
  std::vector<bool> element_, below_;
  std::vector<Vec> atoms_;
};

inline Vec to_vec(const nufact::Divisor& d) { return Vec(d.exponents().begin(), d.exponents().end()); }

inline std::vector<std::vector<Vec>> as_multisets(const nufact::KrullMonoid& m,
                                                  const std::vector<nufact::Factorization>& fs) {
  std::vector<std::vector<Vec>> out;
  for (const auto& f : fs) {
    std::vector<Vec> one;
    for (auto a : f.atoms) one.push_back(to_vec(m.atoms()[a]));
    std::sort(one.begin(), one.end());
    out.push_back(one);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace oracle
