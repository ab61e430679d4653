#pragma once

// Normal affine semigroups given by generators and facet functionals, and
// their compilation into the divisor model: one prime slot per facet, the
// facet values as valuations, and the class group as a cokernel.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "nufact/abgroup.hpp"
#include "nufact/krull.hpp"

namespace nufact {

class AffineSemigroup {
 public:
  // InvalidSemigroup when shapes disagree, a generator is negative or violates
  // a facet, or a functional is not a primitive facet of the generated cone.
  AffineSemigroup(std::size_t ambient_dim, std::vector<ExponentVector> generators,
                  std::vector<ExponentVector> facets);

  std::size_t ambient_dim() const noexcept { return dim_; }
  const std::vector<ExponentVector>& generators() const noexcept { return gens_; }
  const std::vector<ExponentVector>& facets() const noexcept { return facets_; }

  // Lattice point of the group generated by the generators.
  bool in_group(std::span<const Exponent> p) const;
  // p >= 0, in the group, and nonnegative on every facet.
  bool membership(std::span<const Exponent> p) const;
  // Facet values of p; NotMember unless membership(p).
  Divisor divisor_map(std::span<const Exponent> p) const;

  // Whether p is an N-combination of the generators (exhaustive, p >= 0).
  bool generated(std::span<const Exponent> p) const;

 private:
  Exponent facet_value(std::size_t f, std::span<const Exponent> p) const;

  std::size_t dim_;
  std::vector<ExponentVector> gens_;
  std::vector<ExponentVector> facets_;
  Cokernel lattice_;
};

struct SaturationOptions {
  // Box is [0, scale * max_g g_i] in coordinate i.
  Exponent box_scale = 2;
};

// First lattice point of the verification box that lies in the cone but is
// not generated, if any.
std::optional<ExponentVector> saturation_gap(const AffineSemigroup& s,
                                             SaturationOptions opts = {});

struct CompiledSemigroup {
  AffineSemigroup semigroup;
  KrullInstance instance;

  MonoidElement embed(std::span<const Exponent> p) const;
};

// NotSaturated (with the gap point in the message) when the bounded check fails.
CompiledSemigroup compile_to_krull(const AffineSemigroup& s, SaturationOptions opts = {});

}  // namespace nufact
