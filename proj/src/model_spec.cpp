#include "model_spec.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "json.hpp"

namespace sharpineq {

using nlohmann::json;

std::size_t BuiltModel::num_b() const {
  if (model) return model->num_b();
  if (rd) return rd->r_list.size();
  return 0;
}

namespace {

struct Reader {
  std::string origin;

  [[noreturn]] void fail(const std::string& path, const std::string& msg) const {
    throw ParseError(origin + ": field '" + path + "': " + msg, 0, path);
  }

  double number(const json& j, const std::string& path) const {
    if (!j.is_number()) fail(path, "expected a number");
    const double v = j.get<double>();
    if (!std::isfinite(v)) fail(path, "expected a finite number");
    return v;
  }

  std::int64_t integer(const json& j, const std::string& path) const {
    if (j.is_number_integer()) return j.get<std::int64_t>();
    if (j.is_number_float()) {
      const double v = j.get<double>();
      if (v == std::floor(v) && std::fabs(v) < 9e15) return static_cast<std::int64_t>(v);
    }
    fail(path, "expected an integer");
  }

  std::vector<double> numbers(const json& j, const std::string& path) const {
    if (!j.is_array()) fail(path, "expected an array of numbers");
    std::vector<double> out;
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(number(j[i], path + "[" + std::to_string(i) + "]"));
    return out;
  }

  // A scalar is broadcast to every coordinate.
  std::vector<double> per_coord(const json& j, const std::string& path, int a) const {
    if (j.is_number()) return std::vector<double>(a, number(j, path));
    std::vector<double> v = numbers(j, path);
    if (static_cast<int>(v.size()) != a)
      fail(path, "expected " + std::to_string(a) + " entries, got " + std::to_string(v.size()));
    return v;
  }

  std::vector<std::vector<double>> orders(const json& j, const std::string& path, int a) const {
    if (!j.is_array() || j.empty()) fail(path, "expected a non-empty array of order vectors");
    std::vector<std::vector<double>> out;
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(per_coord(j[i], path + "[" + std::to_string(i) + "]", a));
    return out;
  }

  std::string string(const json& j, const std::string& path) const {
    if (!j.is_string()) fail(path, "expected a string");
    return j.get<std::string>();
  }

  void allow(const json& obj, const std::string& path, std::initializer_list<const char*> keys) const {
    if (!obj.is_object()) fail(path.empty() ? "<root>" : path, "expected an object");
    std::set<std::string> ok(keys.begin(), keys.end());
    for (auto it = obj.begin(); it != obj.end(); ++it)
      if (!ok.count(it.key())) fail(path.empty() ? it.key() : path + "." + it.key(), "unknown field");
  }
};

int line_of(const std::string& text, std::size_t byte) {
  const std::size_t end = std::min(byte == 0 ? 0 : byte - 1, text.size());
  return 1 + static_cast<int>(std::count(text.begin(), text.begin() + end, '\n'));
}

const std::map<std::string, CrossFamily> kCross = {
    {"sphere", CrossFamily::Sphere},
    {"rp", CrossFamily::RealProjective},
    {"cp", CrossFamily::ComplexProjective},
    {"hp", CrossFamily::QuaternionProjective},
    {"cap2", CrossFamily::CayleyPlane},
};

SpectralModel build_explicit(const Reader& rd, const json& e, int& dim) {
  rd.allow(e, "explicit", {"indices", "c", "b"});
  if (!e.contains("indices") || !e.contains("c") || !e.contains("b")) rd.fail("explicit", "needs indices, c and b");
  const json& ji = e["indices"];
  if (!ji.is_array() || ji.empty()) rd.fail("explicit.indices", "expected a non-empty array");
  std::vector<Index> idx;
  for (std::size_t i = 0; i < ji.size(); ++i) {
    const std::string p = "explicit.indices[" + std::to_string(i) + "]";
    std::vector<std::int64_t> v;
    if (ji[i].is_array()) {
      for (std::size_t t = 0; t < ji[i].size(); ++t) v.push_back(rd.integer(ji[i][t], p + "[" + std::to_string(t) + "]"));
    } else {
      v.push_back(rd.integer(ji[i], p));
    }
    if (v.empty() || static_cast<int>(v.size()) > kMaxDim) rd.fail(p, "index arity must be in 1.." + std::to_string(kMaxDim));
    if (i > 0 && static_cast<int>(v.size()) != idx[0].dim) rd.fail(p, "all indices must have the same arity");
    idx.push_back(Index::from_vector(v));
  }
  dim = idx[0].dim;
  auto c = std::make_shared<std::vector<double>>(rd.numbers(e["c"], "explicit.c"));
  if (c->size() != idx.size()) rd.fail("explicit.c", "expected one entry per index");
  const json& jb = e["b"];
  if (!jb.is_array() || jb.size() != idx.size()) rd.fail("explicit.b", "expected one row per index");
  auto b = std::make_shared<std::vector<std::vector<double>>>();
  for (std::size_t i = 0; i < jb.size(); ++i) {
    const std::string p = "explicit.b[" + std::to_string(i) + "]";
    b->push_back(rd.numbers(jb[i], p));
    if (b->back().empty()) rd.fail(p, "expected at least one operator weight");
    if (b->back().size() != b->front().size()) rd.fail(p, "all rows must have the same length");
  }
  auto pos = std::make_shared<std::map<std::vector<std::int64_t>, std::size_t>>();
  for (std::size_t i = 0; i < idx.size(); ++i)
    (*pos)[std::vector<std::int64_t>(idx[i].v.begin(), idx[i].v.begin() + idx[i].dim)] = i;
  const int m = static_cast<int>(b->front().size()) - 1;
  ModelTraits traits;
  traits.name = "explicit";
  try {
    return SpectralModel(IndexSet::explicit_list(std::move(idx)), m,
                         [c, b, pos](const Index& n, double& cv, double* bv) {
                           const std::size_t i = pos->at(std::vector<std::int64_t>(n.v.begin(), n.v.begin() + n.dim));
                           cv = (*c)[i];
                           std::copy(b->at(i).begin(), b->at(i).end(), bv);
                         },
                         traits);
  } catch (const std::invalid_argument& ex) {
    rd.fail("explicit", ex.what());
  }
}

}  // namespace

BuiltModel parse_model(const std::string& text, const std::string& origin) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    const int line = line_of(text, e.byte);
    std::string what = e.what();
    const auto cut = what.find("syntax error");
    if (cut != std::string::npos) what = what.substr(cut);
    throw ParseError(origin + ":" + std::to_string(line) + ": " + what, line, "");
  }
  Reader rd{origin};
  rd.allow(doc, "", {"name", "family", "dimension", "k", "r_list", "functional", "damping", "truncation",
                     "tolerance", "h", "lambda", "stechkin", "g", "explicit"});
  if (!doc.contains("family")) rd.fail("family", "required");
  BuiltModel out;
  out.family = rd.string(doc["family"], "family");
  out.name = doc.contains("name") ? rd.string(doc["name"], "name") : out.family;

  if (doc.contains("functional")) {
    const std::string f = rd.string(doc["functional"], "functional");
    if (f == "point")
      out.functional = FunctionalKind::Point;
    else if (f == "norm")
      out.functional = FunctionalKind::Norm;
    else
      rd.fail("functional", "expected \"point\" or \"norm\"");
  }
  if (doc.contains("truncation")) {
    rd.allow(doc["truncation"], "truncation", {"max_level"});
    if (doc["truncation"].contains("max_level")) {
      const auto L = rd.integer(doc["truncation"]["max_level"], "truncation.max_level");
      if (L < 1 || L > 40) rd.fail("truncation.max_level", "expected an integer in 1..40");
      out.policy.max_level = static_cast<int>(L);
    }
  }
  if (doc.contains("tolerance")) {
    rd.allow(doc["tolerance"], "tolerance", {"rel"});
    if (doc["tolerance"].contains("rel")) {
      const double r = rd.number(doc["tolerance"]["rel"], "tolerance.rel");
      if (!(r > 0.0 && r < 1.0)) rd.fail("tolerance.rel", "expected a value in (0, 1)");
      out.policy.rel = r;
      out.rel_given = true;
    }
  }

  auto need = [&](const char* key) -> const json& {
    if (!doc.contains(key)) rd.fail(key, "required for family '" + out.family + "'");
    return doc[key];
  };
  auto dimension = [&](int def) {
    if (!doc.contains("dimension")) return def;
    const auto d = rd.integer(doc["dimension"], "dimension");
    if (d < 1 || d > 64) rd.fail("dimension", "out of range");
    return static_cast<int>(d);
  };
  auto reject = [&](std::initializer_list<const char*> keys) {
    for (const char* k : keys)
      if (doc.contains(k)) rd.fail(k, "not used by family '" + out.family + "'");
  };

  try {
    if (out.family == "torus" || out.family == "gpower") {
      reject({"explicit"});
      const int a = dimension(1);
      if (a > kMaxDim) rd.fail("dimension", "at most " + std::to_string(kMaxDim) + " coordinates");
      out.dimension = a;
      std::vector<double> k = rd.per_coord(need("k"), "k", a);
      auto r = rd.orders(need("r_list"), "r_list", a);
      std::vector<double> damp;
      if (doc.contains("damping")) damp = rd.per_coord(doc["damping"], "damping", a);
      if (out.family == "torus") {
        if (doc.contains("g")) rd.fail("g", "not used by family 'torus'");
        out.model = std::make_unique<SpectralModel>(build_torus({a, k, r, out.functional, damp}));
      } else {
        GPowerSpec g{a, GKind::Abs, {}, k, r, damp};
        if (doc.contains("g")) {
          const json& jg = doc["g"];
          if (jg.is_string()) {
            if (jg.get<std::string>() != "abs") rd.fail("g", "expected \"abs\" or {\"values\": [...]}");
          } else {
            rd.allow(jg, "g", {"values"});
            if (!jg.contains("values")) rd.fail("g.values", "required");
            g.g = GKind::Table;
            g.table = rd.numbers(jg["values"], "g.values");
          }
        }
        out.model = std::make_unique<SpectralModel>(build_gpower(g));
      }
    } else if (kCross.count(out.family)) {
      reject({"explicit", "g", "damping"});
      const CrossFamily fam = kCross.at(out.family);
      const int b = dimension(2);
      if (fam == CrossFamily::CayleyPlane && b != 2) rd.fail("dimension", "the Cayley plane has dimension 2");
      out.cross = CrossSpace::make(fam, b);
      out.dimension = b;
      const double k = rd.number(need("k"), "k");
      std::vector<double> r;
      for (const auto& v : rd.orders(need("r_list"), "r_list", 1)) r.push_back(v[0]);
      out.model = std::make_unique<SpectralModel>(build_cross(*out.cross, k, r, &out.warnings));
    } else if (out.family == "rd") {
      reject({"explicit", "g", "damping"});
      const int d = dimension(1);
      if (d > kMaxDim) rd.fail("dimension", "at most " + std::to_string(kMaxDim) + " coordinates");
      out.dimension = d;
      RdModel m;
      m.d = d;
      m.k = rd.per_coord(need("k"), "k", d);
      m.r_list = rd.orders(need("r_list"), "r_list", d);
      if (out.rel_given) m.rel = out.policy.rel;
      out.rd = m;
    } else if (out.family == "explicit") {
      reject({"k", "r_list", "g", "damping"});
      int dim = 1;
      out.model = std::make_unique<SpectralModel>(build_explicit(rd, need("explicit"), dim));
      if (doc.contains("dimension") && dimension(dim) != dim) rd.fail("dimension", "does not match the index arity");
      out.dimension = dim;
    } else {
      rd.fail("family", "unknown family '" + out.family +
                            "' (expected torus, sphere, rp, cp, hp, cap2, rd, gpower or explicit)");
    }
  } catch (const InvalidArgument& e) {
    throw ParseError(origin + ": " + e.what(), 0, "");
  }

  const std::size_t nb = out.num_b();
  if (doc.contains("h")) {
    out.h = rd.numbers(doc["h"], "h");
    if (out.h.size() != nb) rd.fail("h", "expected " + std::to_string(nb) + " weights");
    for (double v : out.h)
      if (!(v > 0.0)) rd.fail("h", "weights must be > 0");
  }
  if (doc.contains("lambda")) {
    out.lambda = rd.numbers(doc["lambda"], "lambda");
    if (out.lambda.size() != nb) rd.fail("lambda", "expected " + std::to_string(nb) + " exponents");
  }
  if (doc.contains("stechkin")) {
    rd.allow(doc["stechkin"], "stechkin", {"split"});
    if (doc["stechkin"].contains("split")) {
      const auto s = rd.integer(doc["stechkin"]["split"], "stechkin.split");
      if (s < 1 || s >= static_cast<std::int64_t>(nb)) rd.fail("stechkin.split", "expected 1..len(r_list)-1");
      out.split = static_cast<int>(s);
    }
  }
  return out;
}

BuiltModel load_model(const std::string& path) {
  if (path.rfind("catalog:", 0) == 0) {
    const Preset* p = find_preset(path.substr(8));
    if (!p) throw ParseError("no catalog entry named '" + path.substr(8) + "'", 0, "");
    return parse_model(p->json, path);
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::ios_base::failure("cannot open model file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_model(ss.str(), path);
}

const std::vector<Preset>& presets() {
  static const std::vector<Preset> list = {
      {"torus-taikov", "1-D torus, point functional, c = 1, b = (1, n^2)",
       R"({"name": "torus-taikov", "family": "torus", "dimension": 1, "k": 0, "r_list": [0, 1], "h": [1, 1]})"},
      {"torus-stechkin", "1-D torus, C = id, D = n^4",
       R"({"name": "torus-stechkin", "family": "torus", "dimension": 1, "k": 0, "r_list": [0, 2], "h": [1, 1], "stechkin": {"split": 1}})"},
      {"torus-hlp", "1-D torus, norm functional, k = 1 between orders 0 and 2",
       R"({"name": "torus-hlp", "family": "torus", "dimension": 1, "functional": "norm", "k": 1, "r_list": [0, 2], "lambda": [0.5, 0.5]})"},
      {"torus2", "2-D torus, b = (1, n1^4, n2^4)",
       R"({"name": "torus2", "family": "torus", "dimension": 2, "k": [0, 0], "r_list": [[0, 0], [2, 0], [0, 2]], "h": [1, 1, 1], "tolerance": {"rel": 1e-8}})"},
      {"sphere2", "S^2, point functional, orders 0 and 1",
       R"({"name": "sphere2", "family": "sphere", "dimension": 2, "k": 0, "r_list": [0, 1], "h": [1, 1]})"},
      {"sphere3", "S^3, point functional, orders 0 and 1",
       R"({"name": "sphere3", "family": "sphere", "dimension": 3, "k": 0, "r_list": [0, 1], "h": [1, 1]})"},
      {"rp2", "RP^2, point functional, orders 0 and 1",
       R"({"name": "rp2", "family": "rp", "dimension": 2, "k": 0, "r_list": [0, 1], "h": [1, 1]})"},
      {"cp2", "CP^2, point functional, orders 0 and 2",
       R"({"name": "cp2", "family": "cp", "dimension": 2, "k": 0, "r_list": [0, 2], "h": [1, 1]})"},
      {"hp2", "HP^2, point functional, orders 0 and 3",
       R"({"name": "hp2", "family": "hp", "dimension": 2, "k": 0, "r_list": [0, 3], "h": [1, 1]})"},
      {"cap2", "Cayley plane, point functional, orders 0 and 5",
       R"({"name": "cap2", "family": "cap2", "k": 0, "r_list": [0, 5], "h": [1, 1]})"},
      {"rd1-taikov", "R^1, integrand 1/(h0 + h1 t^2)",
       R"({"name": "rd1-taikov", "family": "rd", "dimension": 1, "k": [0], "r_list": [[0], [1]], "h": [1, 1], "lambda": [0.5, 0.5]})"},
      {"rd2", "R^2, orders (0,0), (2,0), (0,2)",
       R"({"name": "rd2", "family": "rd", "dimension": 2, "k": [0, 0], "r_list": [[0, 0], [2, 0], [0, 2]], "h": [1, 1, 1], "lambda": [0.5, 0.25, 0.25]})"},
      {"gpower-abs", "g(n) = |n| on Z_*, k = 1 between orders 0 and 2",
       R"({"name": "gpower-abs", "family": "gpower", "dimension": 1, "g": "abs", "functional": "norm", "k": 1, "r_list": [0, 2], "lambda": [0.5, 0.5]})"},
      {"single-mode", "one index with c = b0 = b1 = 1",
       R"({"name": "single-mode", "family": "explicit", "explicit": {"indices": [1], "c": [1], "b": [[1, 1]]}, "h": [1, 1], "stechkin": {"split": 1}})"},
  };
  return list;
}

const Preset* find_preset(const std::string& name) {
  for (const Preset& p : presets())
    if (name == p.name) return &p;
  return nullptr;
}

}  // namespace sharpineq
