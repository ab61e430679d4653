#include <doctest.h>

#include "oracle_suite.hpp"

using namespace nufact;

TEST_SUITE("properties") {
  TEST_CASE("library agrees with box enumeration on fixtures and random instances") {
    const auto r = oracle::run_oracle_suite(20261015, 120, 12);
    CHECK(r.cases >= 1000);
    for (const auto& f : r.failures) FAIL_CHECK(f);
    CHECK(r.failures.empty());
  }

  TEST_CASE("divisor_class is additive") {
    std::mt19937_64 rng(41);
    std::uniform_int_distribution<Exponent> e(-6, 6);
    for (int k = 0; k < 20; ++k) {
      const auto ni = oracle::random_instance(rng);
      const auto n = ni.inst.slot_count();
      for (int i = 0; i < 25; ++i) {
        ExponentVector u(n), v(n);
        for (std::size_t j = 0; j < n; ++j) {
          u[j] = e(rng);
          v[j] = e(rng);
        }
        const Divisor du(u), dv(v);
        CHECK(ni.inst.divisor_class(du + dv) == group_combine(ni.inst.divisor_class(du), ni.inst.divisor_class(dv)));
      }
    }
  }

  TEST_CASE("factorizations re-multiply and are duplicate free") {
    for (const auto& ni : oracle::fixture_instances()) {
      const KrullMonoid m(ni.inst);
      for (const auto& h : m.elements_up_to(6)) {
        const auto fs = m.factorizations(h);
        CHECK_FALSE(fs.empty());
        for (std::size_t i = 0; i < fs.size(); ++i) {
          CHECK(m.multiply_out(fs[i]) == h.divisor());
          for (std::size_t j = i + 1; j < fs.size(); ++j) CHECK_FALSE(fs[i] == fs[j]);
        }
        const auto ls = m.length_set(h);
        CHECK(ls.factorization_count == fs.size());
        mpq_class rho(ls.lengths.back(), ls.lengths.front());
        rho.canonicalize();
        CHECK(ls.elasticity == rho);
      }
    }
  }

  TEST_CASE("z counterexamples found on random instances are genuine") {
    std::mt19937_64 rng(43);
    for (int k = 0; k < 15; ++k) {
      const auto ni = oracle::random_instance(rng);
      const KrullMonoid m(ni.inst);
      const auto r = m.check_z_property(5);
      if (r.counterexample) CHECK(m.is_z_counterexample(*r.counterexample));
      const auto h = m.check_hfd(5);
      if (h.counterexample) CHECK(h.counterexample->shortest < h.counterexample->longest);
    }
  }
}
