#pragma once

// JSON instance files. A Krull file lists the class group and the prime slots:
//
//   {"class_group": {"rank": 1, "torsion": []},
//    "primes": [{"name": "q1", "class": {"free": [1], "torsion": []}}, ...],
//    "elements": {"x": [1, 0, 0, 1], ...}}
//
// A semigroup file gives generators and facet functionals instead, and its
// named elements are ambient points:
//
//   {"ambient_dim": 3, "generators": [[1, 0, 0], ...], "facets": [[1, 1, -1], ...],
//    "elements": {"x": [1, 0, 0], ...}}

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "nufact/krull.hpp"
#include "nufact/semigroup.hpp"

namespace nufact {

struct LoadedInstance {
  KrullInstance krull;
  std::optional<AffineSemigroup> semigroup;
  // Named elements as divisors over the slots, in file order.
  std::vector<std::pair<std::string, Divisor>> elements;

  std::optional<std::string> name_of(const Divisor& d) const;
};

// ParseError for malformed JSON, ValidationError for an invalid instance,
// NotSaturated for a semigroup that fails the bounded saturation check.
LoadedInstance parse_instance(const nlohmann::ordered_json& doc);
LoadedInstance parse_instance_text(std::string_view text);
LoadedInstance load_instance(const std::filesystem::path& path);

// Element expressions: a product `x^2*zx` of named elements and slot names,
// or a literal vector `(1,0,0,1)`. Literal vectors are ambient points for
// semigroup instances and slot vectors otherwise. The result may lie outside
// the monoid.
Divisor parse_element(const LoadedInstance& inst, std::string_view expr);

// Comma-separated element expressions outside parentheses.
std::vector<Divisor> parse_element_list(const LoadedInstance& inst, std::string_view list);

nlohmann::ordered_json instance_to_json(const LoadedInstance& inst);

}  // namespace nufact
