#include "irc/discrete_io.hpp"

#include <fstream>
#include <sstream>
#include <type_traits>

#include <fmt/core.h>

#include "irc/errors.hpp"
#include "json.hpp"

namespace irc::discrete {
namespace {

using nlohmann::json;

const json& require(const json& obj, const std::string& key, const std::string& where) {
  const std::string field = where.empty() ? key : where + "." + key;
  if (!obj.is_object() || !obj.contains(key)) throw ConfigError(field, fmt::format("'{}' is required", field));
  return obj.at(key);
}

template <typename T>
std::vector<T> read_array(const json& value, const std::string& field) {
  if (!value.is_array()) throw ConfigError(field, fmt::format("'{}' must be an array", field));
  std::vector<T> out;
  for (const json& v : value) {
    if constexpr (std::is_same_v<T, double>) {
      if (!v.is_number()) throw ConfigError(field, fmt::format("'{}' must contain numbers", field));
    } else {
      if (!v.is_number_unsigned()) throw ConfigError(field, fmt::format("'{}' must contain nonnegative integers", field));
    }
    out.push_back(v.get<T>());
  }
  return out;
}

ConditionalPmf read_factor(const json& factors, const std::string& name) {
  const std::string where = "factors." + name;
  const json& f = require(factors, name, "factors");
  ConditionalPmf c;
  c.given_sizes = f.contains("given") ? read_array<std::size_t>(f.at("given"), where + ".given")
                                      : std::vector<std::size_t>{};
  c.outcome_sizes = read_array<std::size_t>(require(f, "outcome", where), where + ".outcome");
  c.table = read_array<double>(require(f, "probabilities", where), where + ".probabilities");
  try {
    c.validate(name.c_str());
  } catch (const DomainError& e) {
    throw ConfigError(where, e.what());
  }
  return c;
}

}  // namespace

DiscreteInput parse_discrete(std::string_view json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError("", fmt::format("invalid JSON: {}", e.what()));
  }
  const json& type = require(root, "type", "");
  const std::string kind = type.is_string() ? type.get<std::string>() : "";

  try {
    if (kind == "joint") {
      JointInput in{JointPmf(read_array<std::size_t>(require(root, "alphabet_sizes", ""), "alphabet_sizes"),
                             read_array<double>(require(root, "probabilities", ""), "probabilities")),
                    {}};
      if (root.contains("queries")) {
        const json& qs = root.at("queries");
        if (!qs.is_array()) throw ConfigError("queries", "'queries' must be an array");
        for (std::size_t k = 0; k < qs.size(); ++k) {
          const std::string where = fmt::format("queries[{}]", k);
          InformationQuery q;
          q.a = read_array<std::size_t>(require(qs[k], "a", where), where + ".a");
          q.b = read_array<std::size_t>(require(qs[k], "b", where), where + ".b");
          if (qs[k].contains("c")) q.c = read_array<std::size_t>(qs[k].at("c"), where + ".c");
          in.queries.push_back(std::move(q));
        }
      }
      return in;
    }
    if (kind == "bi_level") {
      const json& f = require(root, "factors", "");
      BiLevelFactorization b;
      b.x1 = read_factor(f, "x1");
      b.x2 = read_factor(f, "x2");
      b.u1 = read_factor(f, "u1");
      b.u2 = read_factor(f, "u2");
      b.xr_given_u = read_factor(f, "xr_given_u");
      b.channel = read_factor(f, "channel");
      b.yhat1_given_yr_u1 = read_factor(f, "yhat1_given_yr_u1");
      b.yhat2_given_yr_u2 = read_factor(f, "yhat2_given_yr_u2");
      return b;
    }
    if (kind == "single_level") {
      const json& f = require(root, "factors", "");
      SingleLevelFactorization s;
      s.x1 = read_factor(f, "x1");
      s.x2 = read_factor(f, "x2");
      s.xr = read_factor(f, "xr");
      s.channel = read_factor(f, "channel");
      s.yhat_given_yr_xr = read_factor(f, "yhat_given_yr_xr");
      return s;
    }
  } catch (const DomainError& e) {
    throw ConfigError(kind, e.what());
  }
  throw ConfigError("type", "'type' must be \"joint\", \"bi_level\" or \"single_level\"");
}

DiscreteInput load_discrete(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("", fmt::format("cannot open pmf file '{}'", path));
  std::ostringstream text;
  text << in.rdbuf();
  return parse_discrete(text.str());
}

}  // namespace irc::discrete
