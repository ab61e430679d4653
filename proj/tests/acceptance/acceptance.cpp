// One PASS/FAIL line per acceptance criterion. Exit status is nonzero if any
// criterion fails.

#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include <json.hpp>

#include "nufact/abgroup.hpp"
#include "nufact/cli.hpp"
#include "nufact/instance_io.hpp"
#include "nufact/krull.hpp"
#include "nufact/polyring.hpp"
#include "oracle_suite.hpp"

using namespace nufact;
using nlohmann::json;

namespace {

// Wall-clock limits in seconds.
constexpr double kLimitCheckZXy = 10.0;
constexpr double kLimitHfdXy = 10.0;
constexpr double kLimitZ3 = 60.0;
constexpr double kLimitSection4 = 5.0;
constexpr double kLimitDefault = 60.0;

// Criterion 10 and 11 sample sizes.
constexpr std::size_t kOracleMinCases = 1000;
constexpr std::size_t kSnfMatrices = 1000;
constexpr std::size_t kSnfMaxDim = 6;
constexpr long kSnfEntryBound = 20;

struct CliRun {
  int code;
  std::string out;
  std::string err;
  json doc;
};

CliRun cli_run(std::vector<std::string> args, bool as_json = true) {
  if (as_json) args.push_back("--json");
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  CliRun r{code, out.str(), err.str(), {}};
  if (as_json && !r.out.empty()) r.doc = json::parse(r.out, nullptr, false);
  return r;
}

std::vector<long> vec(const json& j) { return j.get<std::vector<long>>(); }

std::vector<long> sum(std::initializer_list<std::vector<long>> vs) {
  std::vector<long> out(vs.begin()->size(), 0);
  for (const auto& v : vs)
    for (std::size_t i = 0; i < v.size(); ++i) out[i] += v[i];
  return out;
}

const std::vector<long> X{1, 0, 0, 1}, Y{0, 1, 0, 1}, ZX{1, 0, 1, 0}, ZY{0, 1, 1, 0};

// (x)(x)(zy)(zy) = (zx)(zx)(y)(y) read as two atom multisets; the quintuple
// may present either side first.
bool is_example_equation(const json& w) {
  if (w.is_null()) return false;
  const auto lhs = sum({vec(w["a"]["vector"]), vec(w["b"]["vector"]), vec(w["c"]["vector"])});
  const auto rhs = sum({vec(w["d"]["vector"]), vec(w["e"]["vector"])});
  const auto target = sum({X, X, ZY, ZY});
  if (lhs != target || rhs != target) return false;
  auto ms = [](std::vector<std::vector<long>> v) {
    std::sort(v.begin(), v.end());
    return v;
  };
  const auto ab = ms({vec(w["a"]["vector"]), vec(w["b"]["vector"])});
  const auto side1 = ms({X, X}), side2 = ms({Y, Y});
  const auto c = vec(w["c"]["vector"]), d = vec(w["d"]["vector"]), e = vec(w["e"]["vector"]);
  const bool forward = ab == side1 && c == sum({ZY, ZY}) && ms({d, e}) == ms({sum({ZX, ZX}), sum({Y, Y})});
  const bool swapped = ab == side2 && c == sum({ZX, ZX}) && ms({d, e}) == ms({sum({ZY, ZY}), sum({X, X})});
  return forward || swapped;
}

struct Outcome {
  bool pass;
  std::string detail;
};

int failures = 0;

void criterion(int n, const std::string& title, double limit, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o{false, ""};
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (secs > limit) {
    o.pass = false;
    o.detail += " (over time limit)";
  }
  if (!o.pass) ++failures;
  std::ostringstream line;
  line.setf(std::ios::fixed);
  line.precision(2);
  line << (o.pass ? "PASS" : "FAIL") << " criterion " << n << ": " << title << " [" << secs << "s / limit " << limit
       << "s]";
  if (!o.detail.empty()) line << " - " << o.detail;
  std::cout << line.str() << std::endl;
}

Outcome c1() {
  const auto r = cli_run({"check-z", "--instance", "inst_xy.json", "--bound", "8"});
  if (r.code != cli::kFails) return {false, "exit " + std::to_string(r.code)};
  if (!is_example_equation(r.doc["witness"])) return {false, "unexpected quintuple"};
  const auto inst = load_instance(cli::resolve_instance("inst_xy.json"));
  const KrullMonoid m(inst.krull);
  auto el = [&](const char* k) {
    const auto v = vec(r.doc["witness"][k]["vector"]);
    return inst.krull.element(Divisor(ExponentVector(v.begin(), v.end())));
  };
  const auto a = el("a"), b = el("b"), d = el("d"), e = el("e");
  const auto ab = inst.krull.element(a.divisor() + b.divisor());
  if (m.common_factor_exists(ab, d) || m.common_factor_exists(ab, e)) return {false, "a common factor exists"};
  return {true, "equation " + r.doc["witness"]["equation"][0].get<std::string>() + " = " +
                    r.doc["witness"]["equation"][1].get<std::string>()};
}

Outcome c2() {
  const auto r = cli_run({"check-hfd", "--instance", "inst_xy.json", "--bound", "8"});
  return {r.code == cli::kHolds && r.doc["verdict"] == "holds", "exit " + std::to_string(r.code)};
}

Outcome c3() {
  const auto z = cli_run({"check-z", "--instance", "inst_z3.json", "--bound", "9"});
  const auto h = cli_run({"check-hfd", "--instance", "inst_z3.json", "--bound", "9"});
  return {z.code == cli::kHolds && h.code == cli::kHolds,
          "check-z exit " + std::to_string(z.code) + ", check-hfd exit " + std::to_string(h.code)};
}

Outcome c4() {
  const auto xy = cli_run({"check-z", "--instance", "inst_xy.json"});
  const auto cg = cli_run({"classgroup", "--instance", "inst_xy.json"});
  bool ok = xy.code == cli::kFails && cg.doc["definition"]["class_group"]["rank"] == 1;
  std::string detail = "inst_xy check-z exit " + std::to_string(xy.code);
  for (const char* f : {"inst_z3.json", "inst_z3f.json"}) {
    const auto r = cli_run({"check-z", "--instance", f});
    detail += std::string(", ") + f + " check-z exit " + std::to_string(r.code);
    if (r.code != cli::kHolds) ok = false;
  }
  return {ok, detail};
}

Outcome c5() {
  const auto r = cli_run({"unique-square", "--instance", "inst_xy.json"});
  const auto& w = r.doc["witness"];
  bool ok = r.code == cli::kHolds && vec(w["x"]["vector"]) == X && w["eta"] == 2;
  if (ok) {
    const auto inst = load_instance(cli::resolve_instance("inst_xy.json"));
    const KrullMonoid m(inst.krull);
    const auto sq = inst.krull.element(Divisor{2, 0, 0, 2});
    ok = m.length_set(sq).factors_uniquely && m.is_atom(Divisor{1, 0, 0, 1});
  }
  const auto t = cli_run({"unique-square", "--instance", "inst_z3.json"});
  const bool torsion = t.code == cli::kFails && t.doc["verdict"] == "TorsionClassGroup";
  return {ok && torsion, "inst_xy exit " + std::to_string(r.code) + ", inst_z3 " + t.doc.value("verdict", "?")};
}

Outcome c6() {
  const auto r = cli_run({"z-witness", "--instance", "inst_xy.json", "(1,0,0,1)"});
  const auto& w = r.doc["witness"];
  bool ok = r.code == cli::kHolds && w["n"] == 1 && vec(w["y"]["vector"]) == ZX &&
            vec(w["z"]) == std::vector<long>{-1, 1, 0, 0} && is_example_equation(w["quintuple"]);
  const auto n = cli_run({"z-witness", "--instance", "inst_z_pm2.json", "(1,1,1)"});
  const bool none = n.code == cli::kFails && n.doc["verdict"] == "NoWitnessFound";
  return {ok && none, "inst_xy exit " + std::to_string(r.code) + ", (+1,+1,-2) " + n.doc.value("verdict", "?")};
}

Outcome c7() {
  const auto q = cli_run({"section4", "--field", "q"});
  const auto f = cli_run({"section4", "--field", "f2"});
  const auto Q = CoefficientField::rationals();
  const auto lhs = parse_poly("x^2 + y^2", Q, 3) * parse_poly("x^2 + z^2*x^2", Q, 3);
  const auto rhs = parse_poly("x^2", Q, 3) * parse_poly("x^2 + y^2 + z^2*x^2 + z^2*y^2", Q, 3);
  const bool exact = lhs == rhs;
  const bool q_ok = q.code == cli::kHolds && q.doc["identity_holds"] == true &&
                    q.doc["lengths"] == json::array({2, 3}) && q.doc["verdict"] == "length sets {2} and {3}: not HFD";
  const bool f_ok = f.code == cli::kHolds && f.doc["lengths"].size() == 1 && !f.doc["square_split"].empty();
  return {exact && q_ok && f_ok, "Q: " + q.doc.value("verdict", "?") + "; GF(2): " + f.doc.value("verdict", "?")};
}

Outcome c8() {
  const auto h = cli_run({"check-c", "--instance", "inst_xy.json", "x,zx"});
  const auto f = cli_run({"check-c", "--instance", "inst_xy.json", "x^2,zx^2"});
  return {h.code == cli::kHolds && f.code == cli::kFails,
          "{x,zx} exit " + std::to_string(h.code) + ", {x^2,zx^2} exit " + std::to_string(f.code)};
}

Outcome c9() {
  const auto c = cli_run({"check-z", "--instance", "inst_xy.json", "--bound", "8"});
  const auto& w = c.doc["witness"];
  std::vector<std::string> args{"verify-identity", "--instance", "inst_xy.json"};
  for (const char* k : {"a", "b", "c", "d", "e"}) {
    std::string lit = "(";
    for (auto x : vec(w[k]["vector"])) lit += (lit.size() > 1 ? "," : "") + std::to_string(x);
    args.push_back(lit + ")");
  }
  const auto r = cli_run(args);
  const bool ok = r.code == cli::kHolds && r.doc["identity_holds"] == true && r.doc["f_primitive"] == true &&
                  r.doc["g_primitive"] == true;
  return {ok, "exit " + std::to_string(r.code)};
}

Outcome c10() {
  const auto r = oracle::run_oracle_suite(20261015, 120, 12);
  std::string detail = std::to_string(r.cases) + " cases, " + std::to_string(r.failures.size()) + " failures";
  if (!r.failures.empty()) detail += "; first: " + r.failures.front();
  return {r.cases >= kOracleMinCases && r.failures.empty(), detail};
}

bool unimodular(const IntMatrix& m) {
  const BigInt d = determinant(m);
  return d == 1 || d == -1;
}

Outcome c11() {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<long> entry(-kSnfEntryBound, kSnfEntryBound);
  std::size_t bad = 0;
  for (std::size_t i = 0; i < kSnfMatrices; ++i) {
    const std::size_t rows = 1 + rng() % kSnfMaxDim, cols = 1 + rng() % kSnfMaxDim;
    IntMatrix a(rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
      for (std::size_t c = 0; c < cols; ++c) a(r, c) = entry(rng);
    const auto s = smith_normal_form(a);
    bool ok = s.U * a * s.V == s.S && unimodular(s.U) && unimodular(s.V);
    for (std::size_t r = 0; r < rows; ++r)
      for (std::size_t c = 0; c < cols; ++c)
        if (r != c && s.S(r, c) != 0) ok = false;
    const std::size_t k = std::min(rows, cols);
    for (std::size_t j = 0; j < k; ++j) {
      if (s.S(j, j) < 0) ok = false;
      if (j + 1 < k && s.S(j, j) != 0 && s.S(j + 1, j + 1) % s.S(j, j) != 0) ok = false;
      if (j + 1 < k && s.S(j, j) == 0 && s.S(j + 1, j + 1) != 0) ok = false;
    }
    if (!ok) ++bad;
  }
  return {bad == 0, std::to_string(kSnfMatrices) + " matrices, " + std::to_string(bad) + " violations"};
}

}  // namespace

int main() {
  criterion(1, "check-z on inst_xy finds (x)(x)(zy)(zy) = (zx)(zx)(y)(y)", kLimitCheckZXy, c1);
  criterion(2, "check-hfd on inst_xy holds", kLimitHfdXy, c2);
  criterion(3, "check-z and check-hfd on inst_z3 hold at B=9", kLimitZ3, c3);
  criterion(4, "inst_xy fails Z; no torsion fixture fails Z at the default bound", kLimitDefault, c4);
  criterion(5, "unique-square on inst_xy and inst_z3", kLimitDefault, c5);
  criterion(6, "z-witness on inst_xy and the (+1,+1,-2) instance", kLimitDefault, c6);
  criterion(7, "section4 over Q and GF(2)", kLimitSection4, c7);
  criterion(8, "check-c on inst_xy", kLimitDefault, c8);
  criterion(9, "verify-identity on the check-z quintuple", kLimitDefault, c9);
  criterion(10, "oracle equivalence on box <= 4", kLimitDefault, c10);
  criterion(11, "Smith normal form invariants", kLimitDefault, c11);
  return failures == 0 ? 0 : 1;
}
