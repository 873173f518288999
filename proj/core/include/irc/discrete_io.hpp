#pragma once

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "irc/discrete.hpp"

namespace irc::discrete {

/// I(A; B | C) request against a plain joint pmf.
struct InformationQuery {
  VarSet a, b, c;
};

struct JointInput {
  JointPmf pmf;
  std::vector<InformationQuery> queries;
};

using DiscreteInput = std::variant<JointInput, BiLevelFactorization, SingleLevelFactorization>;

/// JSON input with "type" set to "joint", "bi_level" or "single_level".
///
///   joint:  {"alphabet_sizes": [..], "probabilities": [..],
///            "queries": [{"a": [..], "b": [..], "c": [..]}]}
///   others: {"factors": {"<name>": {"given": [..], "outcome": [..],
///                                   "probabilities": [..]}}}
///
/// Factor names: x1 x2 u1 u2 xr_given_u channel yhat1_given_yr_u1
/// yhat2_given_yr_u2 (bi_level); x1 x2 xr channel yhat_given_yr_xr
/// (single_level). Tables are row-major over (given, outcome).
/// Throws ConfigError naming the offending field.
DiscreteInput parse_discrete(std::string_view json_text);
DiscreteInput load_discrete(const std::string& path);

}  // namespace irc::discrete
