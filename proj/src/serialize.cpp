#include "ptwist/serialize.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <unistd.h>

#include "ptwist/errors.hpp"

namespace ptwist {

namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw StructuralError(std::string("missing field '") + key + "'");
  return j.at(key);
}

template <class T>
T get_as(const Json& j, const char* what) {
  try {
    return j.get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw StructuralError(std::string("bad ") + what + ": " + e.what());
  }
}

Index index_in(const Json& j, std::size_t bound, const char* what) {
  const long long v = get_as<long long>(j, what);
  if (v < 0 || static_cast<std::size_t>(v) >= bound)
    throw StructuralError(std::string(what) + " " + std::to_string(v) + " out of range");
  return static_cast<Index>(v);
}

}  // namespace

Json element_to_json(const Element& x) {
  Json out = Json::array();
  for (const auto& [i, s] : x) out.push_back(Json::array({i, s.to_string()}));
  return out;
}

Element element_from_json(const Json& j, const Field& f) {
  if (!j.is_array()) throw StructuralError("element must be an array of [index, scalar] pairs");
  std::vector<SparseVector::Entry> e;
  for (const auto& t : j) {
    if (!t.is_array() || t.size() != 2) throw StructuralError("element term must be [index, scalar]");
    const long long i = get_as<long long>(t[0], "basis index");
    if (i < 0) throw StructuralError("negative basis index");
    std::string s = t[1].is_string() ? t[1].get<std::string>() : t[1].dump();
    e.emplace_back(static_cast<Index>(i), f.parse(s));
  }
  return Element::from_entries(std::move(e));
}

Json algebra_to_json(const DgAlgebra& a) {
  const AlgebraData& d = a.data();
  Json j;
  j["schema"] = "ptwist-algebra/1";
  j["field"] = d.field.name();
  if (d.params) j["params"] = {{"family", d.params->family}, {"n", d.params->n}, {"k", d.params->k}, {"m", d.params->m}};
  Json basis = Json::array();
  for (const auto& b : d.basis) basis.push_back({{"label", b.label}, {"degree", b.degree}});
  j["basis"] = basis;
  j["idempotents"] = d.idempotents;
  Json products = Json::array();
  for (const auto& [l, r, v] : d.products) products.push_back(Json::array({l, r, element_to_json(v)}));
  j["products"] = products;
  Json diff = Json::array();
  for (const auto& [b, v] : d.differential) diff.push_back(Json::array({b, element_to_json(v)}));
  j["differential"] = diff;
  Json ts = Json::array();
  for (const auto& t : d.marked_t) ts.push_back(element_to_json(t));
  j["marked_t"] = ts;
  j["h"] = d.h ? element_to_json(*d.h) : Json();
  return j;
}

AlgebraPtr algebra_from_json(const Json& j) {
  if (!j.is_object()) throw StructuralError("algebra description must be a JSON object");
  if (j.contains("schema") && j["schema"] != "ptwist-algebra/1")
    throw StructuralError("unsupported algebra schema " + j["schema"].dump());
  AlgebraData d;
  d.field = Field::from_name(get_as<std::string>(field(j, "field"), "field"));
  for (const auto& b : field(j, "basis"))
    d.basis.push_back({get_as<std::string>(field(b, "label"), "label"), get_as<int>(field(b, "degree"), "degree")});
  const std::size_t n = d.basis.size();
  if (n == 0) throw StructuralError("algebra has an empty basis");
  for (const auto& i : field(j, "idempotents")) d.idempotents.push_back(index_in(i, n, "idempotent"));
  if (d.idempotents.empty()) throw StructuralError("algebra lists no idempotents");
  auto checked = [&](const Json& v) {
    Element x = element_from_json(v, d.field);
    if (!x.empty() && x.last_index() >= n) throw StructuralError("element refers to a basis index out of range");
    return x;
  };
  if (j.contains("products"))
    for (const auto& p : j["products"]) {
      if (!p.is_array() || p.size() != 3) throw StructuralError("product must be [left, right, value]");
      d.products.emplace_back(index_in(p[0], n, "product index"), index_in(p[1], n, "product index"), checked(p[2]));
    }
  if (j.contains("differential"))
    for (const auto& p : j["differential"]) {
      if (!p.is_array() || p.size() != 2) throw StructuralError("differential entry must be [basis, value]");
      d.differential.emplace_back(index_in(p[0], n, "differential index"), checked(p[1]));
    }
  if (j.contains("marked_t"))
    for (const auto& t : j["marked_t"]) d.marked_t.push_back(checked(t));
  if (j.contains("h") && !j["h"].is_null()) d.h = checked(j["h"]);
  if (j.contains("params")) {
    const Json& p = j["params"];
    d.params = AlgebraParams{get_as<std::string>(field(p, "family"), "family"), get_as<int>(field(p, "n"), "n"),
                             get_as<int>(field(p, "k"), "k"), get_as<int>(field(p, "m"), "m")};
  }
  return std::make_shared<DgAlgebra>(std::move(d));
}

Json module_to_json(const SemiFreeModule& m) {
  Json j;
  j["schema"] = "ptwist-module/1";
  Json gens = Json::array();
  for (const auto& g : m.generators())
    gens.push_back({{"label", g.label}, {"idempotent", g.idempotent}, {"degree", g.degree}});
  j["generators"] = gens;
  Json delta = Json::array();
  for (Index c = 0; c < m.size(); ++c)
    for (const auto& [r, x] : m.delta().column(c)) delta.push_back(Json::array({r, c, element_to_json(x)}));
  j["delta"] = delta;
  return j;
}

SemiFreeModule module_from_json(const Json& j, AlgebraPtr a) {
  std::vector<Generator> gens;
  for (const auto& g : field(j, "generators"))
    gens.push_back({get_as<std::string>(field(g, "label"), "label"),
                    index_in(field(g, "idempotent"), a->idempotent_count(), "idempotent"),
                    get_as<int>(field(g, "degree"), "degree")});
  AlgebraMatrix delta(gens.size(), gens.size());
  if (j.contains("delta"))
    for (const auto& e : j["delta"]) {
      if (!e.is_array() || e.size() != 3) throw StructuralError("delta entry must be [row, col, value]");
      delta.set(index_in(e[0], gens.size(), "row"), index_in(e[1], gens.size(), "column"),
                element_from_json(e[2], a->field()));
    }
  return SemiFreeModule(std::move(a), std::move(gens), std::move(delta));
}

Json dims_to_json(const GradedDimVector& d) {
  Json j = Json::object();
  for (const auto& [deg, dim] : d.support()) j[std::to_string(deg)] = dim;
  return j;
}

Json profile_to_json(const HomProfile& p) {
  Json j = Json::object();
  for (std::size_t i = 0; i < p.dims.size(); ++i)
    j[i < p.labels.size() ? p.labels[i] : "G" + std::to_string(i + 1)] = dims_to_json(p.dims[i]);
  return j;
}

void write_file_atomic(const std::string& path, const std::string& contents, bool overwrite) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  if (!overwrite && fs::exists(target)) throw ConfigError("refusing to overwrite existing file " + path);
  fs::path tmp = target;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ConfigError("cannot write " + tmp.string());
    out << contents;
    out.flush();
    if (!out) throw ConfigError("write to " + tmp.string() + " failed");
  }
  std::error_code ec;
  if (!overwrite) {
    // link() fails if the target appeared meanwhile, so nothing is clobbered.
    if (::link(tmp.c_str(), target.c_str()) != 0) {
      fs::remove(tmp, ec);
      throw ConfigError("refusing to overwrite existing file " + path);
    }
    fs::remove(tmp, ec);
    return;
  }
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp);
    throw ConfigError("cannot move output into place at " + path + ": " + ec.message());
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace ptwist
