#include <sstream>

#include "nufact/error.hpp"
#include "nufact/polyring.hpp"

namespace nufact {

AffineSemigroup s_xyz() {
  return AffineSemigroup(3, {{1, 0, 0}, {0, 1, 0}, {1, 0, 1}, {0, 1, 1}},
                         {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, -1}});
}

std::string Section4Report::verdict() const {
  std::ostringstream out;
  if (not_hfd()) {
    out << "length sets ";
    for (std::size_t i = 0; i < lengths.size(); ++i)
      out << (i ? " and " : "") << '{' << lengths[i] << '}';
    out << ": not HFD";
  } else {
    out << "length set {";
    for (std::size_t i = 0; i < lengths.size(); ++i) out << (i ? "," : "") << lengths[i];
    out << "}: no discrepancy";
  }
  return out.str();
}

Section4Report run_section4(CoefficientField field) {
  if (!field.is_rational() && field.characteristic() != 2)
    throw Error(ErrorKind::Unsupported, "certificates are bundled for Q and GF(2) only");
  const bool f2 = !field.is_rational();
  const MonomialSupport ring(s_xyz());
  auto P = [&](const char* text) { return parse_poly(text, field, 3); };

  const SparsePoly x = P("x");
  const SparsePoly sum_sq = P("x^2 + y^2");
  Section4Report r{field,
                   sum_sq * P("x^2 + z^2*x^2"),
                   (x * x) * P("x^2 + y^2 + z^2*x^2 + z^2*y^2"),
                   {},
                   {},
                   {},
                   P("x^2*t + y^2"),
                   P("x^2*t + z^2*x^2"),
                   SparsePoly(field, 3),
                   P("x^2") * P("x^2*t^2 + y^2*t + z^2*x^2*t + z^2*y^2"),
                   {}};

  std::vector<SparsePoly> lhs_factors =
      f2 ? std::vector{x, x, P("x + y"), P("x + y"), P("1 + z"), P("1 + z")}
         : std::vector{x, x, P("1 + z^2"), sum_sq};
  const auto lhs_cert = AmbientFactorization::certify(r.lhs, lhs_factors);
  r.factorizations = irreducible_factorizations_in_subring(r.lhs, lhs_cert, ring);
  r.lengths = subring_length_set(r.lhs, lhs_cert, ring);

  const auto square_cert = AmbientFactorization::certify(
      sum_sq, f2 ? std::vector{P("x + y"), P("x + y")} : std::vector{sum_sq});
  r.square_split = factorizations_in_subring(sum_sq, square_cert, ring);

  r.fg = r.f * r.g;
  const auto fg_cert = AmbientFactorization::certify(
      r.fg, {x, x, P("x^2*t + y^2"), P("t + z^2")});
  r.constant_factor = constant_factor_condition(r.f, r.g, fg_cert, ring);
  return r;
}

}  // namespace nufact
