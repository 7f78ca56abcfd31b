#include "ptwist/session.hpp"

#include <charconv>
#include <thread>

#include "ptwist/errors.hpp"

namespace ptwist {

namespace {

std::vector<int> parse_ints(const std::string& text, std::size_t count, const std::string& spec) {
  std::vector<int> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = std::min(text.find(',', pos), text.size());
    int v = 0;
    auto r = std::from_chars(text.data() + pos, text.data() + comma, v);
    if (r.ec != std::errc() || r.ptr != text.data() + comma) throw ConfigError("bad algebra spec '" + spec + "'");
    out.push_back(v);
    pos = comma + 1;
  }
  if (out.size() != count)
    throw ConfigError("algebra spec '" + spec + "' needs " + std::to_string(count) + " comma-separated integers");
  return out;
}

}  // namespace

void SessionConfig::validate() const {
  Field::from_name(field);
  if (algebra.rfind("pnk:", 0) != 0 && algebra.rfind("two-object:", 0) != 0 && algebra.rfind("file:", 0) != 0)
    throw ConfigError("algebra must be pnk:n,k, two-object:n,k,m or file:path (got '" + algebra + "')");
  if (L < 0) throw ConfigError("word budget L must be nonnegative");
  if (cap == 0) throw ConfigError("generator cap must be positive");
  if (scope != "A" && scope != "B") throw ConfigError("scope must be A or B (got '" + scope + "')");
  if (exponent_bound < 1) throw ConfigError("exponent bound must be at least 1");
  if (transition_length < 0) throw ConfigError("transition length must be nonnegative");
}

unsigned SessionConfig::thread_count() const {
  if (threads > 0) return threads;
  return std::max(1u, std::thread::hardware_concurrency());
}

Json SessionConfig::to_json() const {
  Json j;
  j["algebra"] = algebra;
  j["field"] = Field::from_name(field).name();
  j["L"] = L;
  j["cap"] = cap;
  j["seed"] = seed;
  j["scope"] = scope;
  j["exponent_bound"] = exponent_bound;
  j["transition_length"] = transition_length;
  j["transitions"] = transitions;
  return j;
}

SessionConfig SessionConfig::from_json(const Json& j) {
  SessionConfig c;
  try {
    c.algebra = j.at("algebra").get<std::string>();
    c.field = j.at("field").get<std::string>();
    c.L = j.at("L").get<int>();
    c.cap = j.at("cap").get<std::size_t>();
    c.seed = j.at("seed").get<std::uint64_t>();
    c.scope = j.at("scope").get<std::string>();
    c.exponent_bound = j.at("exponent_bound").get<int>();
    c.transition_length = j.at("transition_length").get<int>();
    c.transitions = j.at("transitions").get<bool>();
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("bad config block: ") + e.what());
  }
  c.validate();
  return c;
}

AlgebraPtr build_algebra(const std::string& spec, const Field& field) {
  if (spec.rfind("pnk:", 0) == 0) {
    auto v = parse_ints(spec.substr(4), 2, spec);
    return build_pnk_algebra(v[0], v[1], field);
  }
  if (spec.rfind("two-object:", 0) == 0) {
    auto v = parse_ints(spec.substr(11), 3, spec);
    return build_two_object_algebra(v[0], v[1], v[2], field);
  }
  if (spec.rfind("file:", 0) == 0) {
    Json j;
    try {
      j = Json::parse(read_file(spec.substr(5)));
    } catch (const nlohmann::json::parse_error& e) {
      throw StructuralError("algebra file is not valid JSON: " + std::string(e.what()));
    }
    AlgebraPtr a = algebra_from_json(j);
    if (!(a->field() == field))
      throw ConfigError("algebra file is over " + a->field().name() + " but the session field is " + field.name());
    return a;
  }
  throw ConfigError("unknown algebra spec '" + spec + "'");
}

Session Session::open(const SessionConfig& config) {
  config.validate();
  Session s{config, build_algebra(config.algebra, Field::from_name(config.field)), std::nullopt};
  const bool admits = s.algebra->h() && !s.algebra->h()->empty() && s.algebra->degree_of(*s.algebra->h()) &&
                      *s.algebra->degree_of(*s.algebra->h()) % 2 == 0;
  if (config.scope == "B" || (config.transitions && admits)) s.spherification = build_spherification_algebra(s.algebra);
  return s;
}

}  // namespace ptwist
