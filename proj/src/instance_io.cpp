#include "nufact/instance_io.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "nufact/error.hpp"

namespace nufact {

using nlohmann::ordered_json;

namespace {

[[noreturn]] void invalid(const std::string& what) { throw Error(ErrorKind::ValidationError, what); }

const ordered_json& field(const ordered_json& obj, const char* key, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key)) invalid(where + ": missing \"" + key + "\"");
  return obj.at(key);
}

Exponent integer(const ordered_json& v, const std::string& where) {
  if (!v.is_number_integer()) invalid(where + ": expected an integer, got " + v.dump());
  return v.get<Exponent>();
}

ExponentVector int_vector(const ordered_json& v, const std::string& where) {
  if (!v.is_array()) invalid(where + ": expected an array, got " + v.dump());
  ExponentVector out;
  for (std::size_t i = 0; i < v.size(); ++i)
    out.push_back(integer(v[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

BigVector big_vector(const ordered_json& v, const std::string& where) {
  BigVector out;
  for (auto x : int_vector(v, where)) out.emplace_back(static_cast<long>(x));
  return out;
}

std::vector<ExponentVector> vector_list(const ordered_json& v, const std::string& where) {
  if (!v.is_array()) invalid(where + ": expected an array of vectors");
  std::vector<ExponentVector> out;
  for (std::size_t i = 0; i < v.size(); ++i)
    out.push_back(int_vector(v[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

// Re-raise construction errors of the core types as validation failures.
template <class F>
auto validated(const std::string& where, F&& make) {
  try {
    return make();
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::NotSaturated || e.kind() == ErrorKind::ValidationError) throw;
    invalid(where + ": " + e.detail());
  }
}

LoadedInstance parse_krull(const ordered_json& doc) {
  const auto& cg = field(doc, "class_group", "instance");
  const auto rank = integer(field(cg, "rank", "class_group"), "class_group.rank");
  if (rank < 0) invalid("class_group.rank: must be nonnegative");
  BigVector torsion = cg.contains("torsion") ? big_vector(cg.at("torsion"), "class_group.torsion")
                                             : BigVector{};
  FgAbelianGroup group = validated("class_group", [&] {
    return FgAbelianGroup(static_cast<std::size_t>(rank), torsion);
  });

  const auto& primes_json = field(doc, "primes", "instance");
  if (!primes_json.is_array()) invalid("primes: expected an array");
  std::vector<PrimeSlot> primes;
  for (std::size_t i = 0; i < primes_json.size(); ++i) {
    const std::string where = "primes[" + std::to_string(i) + "]";
    const auto& p = primes_json[i];
    const auto& name = field(p, "name", where);
    if (!name.is_string()) invalid(where + ".name: expected a string");
    const auto& cls = field(p, "class", where);
    BigVector free = cls.contains("free") ? big_vector(cls.at("free"), where + ".class.free") : BigVector{};
    BigVector tors =
        cls.contains("torsion") ? big_vector(cls.at("torsion"), where + ".class.torsion") : BigVector{};
    GroupElement g = validated(where + ".class", [&] { return group.element(free, tors); });
    primes.push_back({name.get<std::string>(), std::move(g)});
  }
  KrullInstance inst = validated("primes", [&] { return KrullInstance(group, std::move(primes)); });
  return LoadedInstance{std::move(inst), std::nullopt, {}};
}

LoadedInstance parse_semigroup(const ordered_json& doc) {
  const auto dim = integer(field(doc, "ambient_dim", "instance"), "ambient_dim");
  if (dim <= 0) invalid("ambient_dim: must be positive");
  auto gens = vector_list(field(doc, "generators", "instance"), "generators");
  auto facets = vector_list(field(doc, "facets", "instance"), "facets");
  AffineSemigroup s = validated("semigroup", [&] {
    return AffineSemigroup(static_cast<std::size_t>(dim), gens, facets);
  });
  CompiledSemigroup c = validated("semigroup", [&] { return compile_to_krull(s); });
  return LoadedInstance{std::move(c.instance), std::move(s), {}};
}

std::string trim(std::string_view s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

[[noreturn]] void bad_expr(std::string_view expr, const std::string& what) {
  throw Error(ErrorKind::ParseError, "element '" + std::string(expr) + "': " + what);
}

Divisor literal(const LoadedInstance& inst, std::string_view expr, std::string body) {
  ExponentVector v;
  std::stringstream in(body);
  std::string item;
  while (std::getline(in, item, ',')) {
    const std::string t = trim(item);
    std::size_t used = 0;
    long long x = 0;
    try {
      x = std::stoll(t, &used);
    } catch (const std::exception&) {
      bad_expr(expr, "'" + t + "' is not an integer");
    }
    if (used != t.size()) bad_expr(expr, "'" + t + "' is not an integer");
    v.push_back(x);
  }
  if (inst.semigroup) {
    if (v.size() != inst.semigroup->ambient_dim())
      bad_expr(expr, "expected " + std::to_string(inst.semigroup->ambient_dim()) + " coordinates");
    return inst.semigroup->divisor_map(v);
  }
  if (v.size() != inst.krull.slot_count())
    bad_expr(expr, "expected " + std::to_string(inst.krull.slot_count()) + " coordinates");
  return Divisor(std::move(v));
}

}  // namespace

std::optional<std::string> LoadedInstance::name_of(const Divisor& d) const {
  for (const auto& [name, v] : elements)
    if (v == d) return name;
  return std::nullopt;
}

LoadedInstance parse_instance(const ordered_json& doc) {
  if (!doc.is_object()) invalid("instance: expected a JSON object");
  LoadedInstance out = doc.contains("generators") ? parse_semigroup(doc) : parse_krull(doc);
  if (doc.contains("elements")) {
    const auto& els = doc.at("elements");
    if (!els.is_object()) invalid("elements: expected an object");
    for (const auto& [name, value] : els.items()) {
      const std::string where = "elements." + name;
      if (std::any_of(out.elements.begin(), out.elements.end(),
                      [&](const auto& e) { return e.first == name; }))
        invalid(where + ": duplicate name");
      ExponentVector v = int_vector(value, where);
      Divisor d;
      if (out.semigroup) {
        if (v.size() != out.semigroup->ambient_dim() || !out.semigroup->membership(v))
          invalid(where + ": not a point of the semigroup");
        d = out.semigroup->divisor_map(v);
      } else {
        d = Divisor(std::move(v));
        if (d.size() != out.krull.slot_count() || !out.krull.is_element(d))
          invalid(where + ": not an element of the monoid");
      }
      out.elements.emplace_back(name, std::move(d));
    }
  }
  return out;
}

LoadedInstance parse_instance_text(std::string_view text) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::ParseError, "byte " + std::to_string(e.byte) + ": " + e.what());
  }
  return parse_instance(doc);
}

LoadedInstance load_instance(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::ParseError, "cannot open " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return parse_instance_text(buf.str());
  } catch (const Error& e) {
    throw Error(e.kind(), path.filename().string() + ": " + e.detail());
  }
}

Divisor parse_element(const LoadedInstance& inst, std::string_view expr) {
  const std::string s = trim(expr);
  if (s.empty()) bad_expr(expr, "empty expression");
  if (s.front() == '(' || s.front() == '[') {
    const char close = s.front() == '(' ? ')' : ']';
    if (s.back() != close) bad_expr(expr, std::string("missing '") + close + "'");
    return literal(inst, expr, s.substr(1, s.size() - 2));
  }
  Divisor acc = Divisor::zero(inst.krull.slot_count());
  if (s == "1") return acc;
  std::stringstream in(s);
  std::string factor;
  while (std::getline(in, factor, '*')) {
    std::string f = trim(factor);
    Exponent power = 1;
    if (auto caret = f.find('^'); caret != std::string::npos) {
      const std::string p = trim(f.substr(caret + 1));
      if (p.empty() || !std::all_of(p.begin(), p.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }) ||
          p.size() > 9)
        bad_expr(expr, "bad exponent '" + p + "'");
      power = std::stoll(p);
      f = trim(f.substr(0, caret));
    }
    auto named = std::find_if(inst.elements.begin(), inst.elements.end(),
                              [&](const auto& e) { return e.first == f; });
    if (named != inst.elements.end()) {
      acc += power * named->second;
    } else if (auto slot = inst.krull.slot_index(f)) {
      acc += power * Divisor::unit_vector(inst.krull.slot_count(), *slot);
    } else {
      bad_expr(expr, "unknown name '" + f + "'");
    }
  }
  return acc;
}

std::vector<Divisor> parse_element_list(const LoadedInstance& inst, std::string_view list) {
  std::vector<Divisor> out;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= list.size(); ++i) {
    const char c = i < list.size() ? list[i] : ',';
    if (c == '(' || c == '[') ++depth;
    if (c == ')' || c == ']') --depth;
    if (c == ',' && depth == 0) {
      out.push_back(parse_element(inst, list.substr(start, i - start)));
      start = i + 1;
    }
  }
  return out;
}

ordered_json instance_to_json(const LoadedInstance& inst) {
  ordered_json doc;
  const auto& g = inst.krull.class_group();
  ordered_json torsion = ordered_json::array();
  for (const auto& t : g.torsion_orders()) torsion.push_back(t.get_si());
  doc["class_group"] = {{"rank", g.free_rank()}, {"torsion", torsion}, {"text", g.to_string()}};
  ordered_json primes = ordered_json::array();
  for (const auto& p : inst.krull.primes()) {
    ordered_json free = ordered_json::array(), tors = ordered_json::array();
    for (const auto& x : p.cls.free_part()) free.push_back(x.get_si());
    for (const auto& x : p.cls.torsion_part()) tors.push_back(x.get_si());
    primes.push_back({{"name", p.name}, {"class", {{"free", free}, {"torsion", tors}}}});
  }
  doc["primes"] = primes;
  ordered_json els = ordered_json::object();
  for (const auto& [name, d] : inst.elements) els[name] = d.exponents();
  doc["elements"] = els;
  return doc;
}

}  // namespace nufact
