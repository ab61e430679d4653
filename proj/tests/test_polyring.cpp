#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "nufact/error.hpp"
#include "nufact/polyring.hpp"

using namespace nufact;

namespace {

const CoefficientField Q = CoefficientField::rationals();
const CoefficientField F2 = CoefficientField::prime(2);

SparsePoly P(std::string_view s, CoefficientField f = Q) { return parse_poly(s, f, 3); }

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no nufact::Error thrown");
  return ErrorKind::Unsupported;
}

SparsePoly random_poly(std::mt19937_64& rng, CoefficientField f, int terms, Exponent max_exp) {
  std::uniform_int_distribution<Exponent> e(0, max_exp);
  std::uniform_int_distribution<int> c(-5, 5);
  SparsePoly p(f, 3);
  for (int i = 0; i < terms; ++i) p.add_term({e(rng), e(rng), e(rng)}, e(rng) % 2,
               f.is_rational() ? mpq_class(c(rng), 1 + rng() % 3) : mpq_class(c(rng)));
  return p;
}

SparsePoly product(const PolyFactorization& fs) {
  SparsePoly acc = SparsePoly::constant(fs.front().field(), fs.front().dim(), 1);
  for (const auto& f : fs) acc = acc * f;
  return acc;
}

}  // namespace

TEST_SUITE("polyring") {
  TEST_CASE("coefficient fields") {
    CHECK(F2.to_string() == "GF(2)");
    CHECK(Q.to_string() == "Q");
    CHECK(kind_of([] { CoefficientField::prime(4); }) == ErrorKind::ValidationError);
    const auto f5 = CoefficientField::prime(5);
    CHECK(f5.normalize(7) == 2);
    CHECK(f5.normalize(-1) == 4);
    CHECK(f5.inverse(2) == 3);
    CHECK(Q.inverse(mpq_class(2, 3)) == mpq_class(3, 2));
  }

  TEST_CASE("parsing") {
    const auto p = P("x^2 + 3/2*t - x^2");
    CHECK(p == SparsePoly::monomial(Q, {0, 0, 0}, 1, mpq_class(3, 2)));
    CHECK(P("2/4*x") == SparsePoly::monomial(Q, {1, 0, 0}, 0, mpq_class(1, 2)));
    CHECK(P("1").is_constant());
    CHECK(kind_of([] { P("x + w"); }) == ErrorKind::ParseError);
    CHECK(kind_of([] { P("x^"); }) == ErrorKind::ParseError);
    CHECK(P("x + x", F2).is_zero());
    CHECK(parse_poly(P("x^2*z^2 + y*t").to_string(), Q, 3) == P("x^2*z^2 + y*t"));
    CHECK(default_variable_names(4) == std::vector<std::string>{"x1", "x2", "x3", "x4"});
  }

  TEST_CASE("poly_mul examples") {
    const auto p = P("x^2 + y^2*t + 3");
    CHECK(SparsePoly::constant(Q, 3, 1) * p == p);
    const auto lhs = P("x^2 + y^2") * P("x^2 + z^2*x^2");
    CHECK(lhs == P("x^4 + x^2*y^2 + x^4*z^2 + x^2*y^2*z^2"));
    CHECK(lhs == P("x^2") * P("x^2 + y^2 + z^2*x^2 + z^2*y^2"));
    CHECK(P("x + y", F2) * P("x + y", F2) == P("x^2 + y^2", F2));
    CHECK(kind_of([&] { return P("x") * P("x", F2); }) == ErrorKind::FieldMismatch);
    CHECK(kind_of([&] { return P("x") * parse_poly("x", Q, 2); }) == ErrorKind::ShapeMismatch);
  }

  TEST_CASE("ring axioms on random polynomials") {
    std::mt19937_64 rng(3);
    for (const auto& f : {Q, F2, CoefficientField::prime(7)})
      for (int i = 0; i < 60; ++i) {
        const auto a = random_poly(rng, f, 4, 3), b = random_poly(rng, f, 4, 3), c = random_poly(rng, f, 3, 3);
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * b == b * a);
        CHECK(a * (b + c) == a * b + a * c);
        CHECK((a - a).is_zero());
        CHECK(a + b - b == a);
        const auto ab = a * b;
        for (const auto& [term, coef] : ab.terms()) CHECK(coef != 0);
      }
  }

  TEST_CASE("in_semigroup_ring examples") {
    const MonomialSupport s = s_xyz();
    CHECK(in_semigroup_ring(P("x^2 + y^2"), s));
    CHECK_FALSE(in_semigroup_ring(P("1 + z^2"), s));
    CHECK(in_semigroup_ring(P("x^2*t + z^2*x^2"), s));
  }

  TEST_CASE("in_semigroup_ring is multiplicative") {
    const auto sg = s_xyz();
    const MonomialSupport s = sg;
    std::mt19937_64 rng(17);
    std::uniform_int_distribution<Exponent> e(0, 3);
    auto member_poly = [&] {
      SparsePoly p(Q, 3);
      while (p.terms().size() < 3) {
        ExponentVector v{e(rng), e(rng), e(rng)};
        if (sg.membership(v)) p.add_term(v, e(rng) % 2, 1 + static_cast<int>(rng() % 4));
      }
      return p;
    };
    for (int i = 0; i < 200; ++i) {
      const auto a = member_poly(), b = member_poly();
      REQUIRE(in_semigroup_ring(a, s));
      CHECK(in_semigroup_ring(a * b, s));
    }
  }

  TEST_CASE("certificates") {
    CHECK_NOTHROW(AmbientFactorization::certify(P("2*x^2"), {P("x"), P("x")}));
    CHECK(AmbientFactorization::certify(P("2*x^2"), {P("x"), P("x")}).unit() == 2);
    CHECK(kind_of([] { AmbientFactorization::certify(P("x^2"), {P("x"), P("y")}); }) == ErrorKind::BadCertificate);
    CHECK(kind_of([] { AmbientFactorization::certify(P("2*x"), {P("2"), P("x")}); }) == ErrorKind::BadCertificate);
  }

  TEST_CASE("factorizations_in_subring examples") {
    const MonomialSupport s = s_xyz();
    CHECK(factorizations_in_subring(P("x^2 + y^2"), AmbientFactorization::certify(P("x^2 + y^2"), {P("x^2 + y^2")}), s)
              .empty());
    const auto p = P("x^2 + z^2*x^2");
    CHECK(factorizations_in_subring(p, AmbientFactorization::certify(p, {P("x"), P("x"), P("1 + z^2")}), s).empty());
    const auto q = P("x^2 + y^2", F2);
    const auto fs = factorizations_in_subring(q, AmbientFactorization::certify(q, {P("x + y", F2), P("x + y", F2)}), s);
    REQUIRE(fs.size() == 1);
    CHECK(fs[0] == PolyFactorization{P("x + y", F2), P("x + y", F2)});
    CHECK(kind_of([&] {
            factorizations_in_subring(P("z"), AmbientFactorization::certify(P("z"), {P("z")}), s);
          }) == ErrorKind::NotInSubring);
  }

  TEST_CASE("subring factorizations re-multiply to the input") {
    const MonomialSupport s = s_xyz();
    const std::vector<std::pair<SparsePoly, std::vector<SparsePoly>>> cases = {
        {P("3*x^2*y^2"), {P("x"), P("x"), P("y"), P("y")}},
        {P("x^3*y + x*y^3"), {P("x"), P("y"), P("x^2 + y^2")}},
        {P("-2*x^2*z^2*y^2"), {P("x*z"), P("x*z"), P("y"), P("y")}},
    };
    for (const auto& [p, factors] : cases) {
      const auto cert = AmbientFactorization::certify(p, factors);
      const auto all = factorizations_in_subring(p, cert, s);
      CHECK_FALSE(all.empty());
      for (const auto& f : all) {
        CHECK(f.size() >= 2);
        CHECK(product(f) == p);
        for (const auto& block : f) CHECK(in_semigroup_ring(block, s));
      }
      for (const auto& f : irreducible_factorizations_in_subring(p, cert, s)) CHECK(product(f) == p);
    }
    const auto xxyy = P("x^2*y^2");
    CHECK(subring_length_set(xxyy, AmbientFactorization::certify(xxyy, {P("x"), P("x"), P("y"), P("y")}), s) ==
          std::vector<std::size_t>{4});
  }

  TEST_CASE("primitivity and shared factors") {
    const MonomialSupport s = s_xyz();
    CHECK_FALSE(monomials_share_factor(ExponentVector{2, 0, 0}, ExponentVector{0, 2, 0}, s));
    // x does not divide xz in the subring since z is not a member.
    CHECK_FALSE(monomials_share_factor(ExponentVector{1, 1, 0}, ExponentVector{1, 0, 1}, s));
    CHECK(monomials_share_factor(ExponentVector{1, 1, 0}, ExponentVector{2, 0, 1}, s));
    CHECK(is_primitive(P("x^2*t + y^2"), s));
    CHECK(is_primitive(P("x^2*t + x^2*z^2"), s));
    CHECK_FALSE(is_primitive(P("x^2*t + x^2*y^2"), s));
    CHECK(kind_of([&] { is_primitive(P("x^2*t + x^2 + y^2"), s); }) == ErrorKind::Unsupported);
  }

  TEST_CASE("verify_z_failure_identity examples") {
    KrullMonoid xy(fixtures::inst_xy());
    const auto& I = xy.instance();
    using fixtures::X;
    using fixtures::Y;
    using fixtures::ZX;
    using fixtures::ZY;
    const ZQuintuple q{I.element(X), I.element(X), I.element(2 * ZY), I.element(2 * ZX), I.element(2 * Y)};
    const auto id = verify_z_failure_identity(xy, q);
    CHECK(id.verified());
    const std::vector<std::string> names{"q1", "q2", "q3", "q4"};
    auto poly = [&](std::string_view s) { return parse_poly(s, Q, names); };
    const auto ab = poly("q1^2*q4^2");
    CHECK(id.ab == ab);
    CHECK(id.fg == ab * poly("q1^2*q4^2*t^2 + q1^2*q3^2*t + q2^2*q4^2*t + q2^2*q3^2"));

    const ZQuintuple degenerate{I.element(X), I.element(Y), I.element(Divisor::zero(4)), I.element(X), I.element(Y)};
    CHECK(kind_of([&] { verify_z_failure_identity(xy, degenerate); }) == ErrorKind::QuintupleMismatch);
    const ZQuintuple unbalanced{I.element(X), I.element(X), I.element(X), I.element(X), I.element(Y)};
    CHECK(kind_of([&] { verify_z_failure_identity(xy, unbalanced); }) == ErrorKind::QuintupleMismatch);

    KrullMonoid z3(fixtures::inst_z3());
    const auto& J = z3.instance();
    const ZQuintuple generic{J.element(Divisor{1, 1, 1, 0, 0, 0}), J.element(Divisor{1, 1, 1, 0, 0, 0}),
                             J.element(Divisor{0, 0, 0, 3, 0, 0}), J.element(Divisor{2, 1, 0, 0, 0, 0}),
                             J.element(Divisor{0, 1, 2, 3, 0, 0})};
    CHECK(verify_z_failure_identity(z3, generic).identity_holds());
    CHECK(verify_z_failure_identity(z3, generic, F2).identity_holds());
  }

  TEST_CASE("constant_factor_condition examples") {
    const MonomialSupport s = s_xyz();
    {
      const auto f = P("x^2*t + y^2"), g = P("x^2*t + z^2*x^2");
      const auto r = constant_factor_condition(
          f, g, AmbientFactorization::certify(f * g, {P("x"), P("x"), P("x^2*t + y^2"), P("t + z^2")}), s);
      REQUIRE(r.failing);
      CHECK(*r.failing == P("x^2"));
    }
    {
      const auto f = P("x*t + y"), g = P("y*t + x");
      CHECK(constant_factor_condition(f, g, AmbientFactorization::certify(f * g, {f, g}), s).passes());
    }
    {
      const auto f = P("x^2*t + y^2", F2), g = P("x^2*t + z^2*x^2", F2);
      const auto r = constant_factor_condition(
          f, g,
          AmbientFactorization::certify(f * g, {P("x", F2), P("x", F2), P("x^2*t + y^2", F2), P("t + z^2", F2)}), s);
      REQUIRE(r.failing);
      CHECK(*r.failing == P("x^2", F2));
    }
    const auto nf = P("x^2*t + x^2*y^2"), g = P("x*t + y");
    CHECK(kind_of([&] {
            constant_factor_condition(nf, g, AmbientFactorization::certify(nf * g, {P("x"), P("x"), P("t + y^2"), g}),
                                      s);
          }) == ErrorKind::NotPrimitive);
  }

  TEST_CASE("non-HFD computation over Q and its collapse over GF(2)") {
    const auto q = run_section4(Q);
    CHECK(q.identity_holds());
    CHECK(q.fg_identity_holds());
    CHECK(q.lengths == std::vector<std::size_t>{2, 3});
    CHECK(q.not_hfd());
    CHECK(q.square_split.empty());
    CHECK(q.verdict() == "length sets {2} and {3}: not HFD");
    for (const auto& f : q.factorizations) CHECK(product(f) == q.lhs);
    REQUIRE(q.constant_factor.failing);
    CHECK(*q.constant_factor.failing == P("x^2"));
    CHECK(q.fg == P("x^2") * P("x^2*t^2 + y^2*t + z^2*x^2*t + z^2*y^2"));

    const auto f2 = run_section4(F2);
    CHECK(f2.identity_holds());
    CHECK(f2.lengths.size() == 1);
    CHECK_FALSE(f2.not_hfd());
    REQUIRE(f2.square_split.size() == 1);
    CHECK(f2.square_split[0] == PolyFactorization{P("x + y", F2), P("x + y", F2)});
    CHECK(kind_of([] { run_section4(CoefficientField::prime(3)); }) == ErrorKind::Unsupported);
  }
}
