#include "irc/discrete.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include <fmt/core.h>

#include "irc/errors.hpp"

namespace irc::discrete {
namespace {

constexpr double kSumTolerance = 1e-12;

std::size_t product(const std::vector<std::size_t>& sizes) {
  std::size_t total = 1;
  for (std::size_t s : sizes) {
    if (s == 0) throw DomainError("alphabet sizes must be positive");
    if (total > kMaxEntries / s) throw DomainError("product alphabet exceeds 10^6 entries");
    total *= s;
  }
  return total;
}

// Row-major strides of a shape.
std::vector<std::size_t> strides_of(const std::vector<std::size_t>& sizes) {
  std::vector<std::size_t> strides(sizes.size(), 1);
  for (std::size_t k = sizes.size(); k-- > 1;) strides[k - 1] = strides[k] * sizes[k];
  return strides;
}

double plogp_ratio(double p, double ratio) { return p > 0.0 ? p * std::log2(ratio) : 0.0; }

// Flat index of a group of joint coordinates.
std::size_t flat(const std::vector<std::size_t>& digits, const std::vector<std::size_t>& vars,
                 const std::vector<std::size_t>& sizes) {
  std::size_t idx = 0;
  for (std::size_t v : vars) idx = idx * sizes[v] + digits[v];
  return idx;
}

void check_shape(const ConditionalPmf& c, std::initializer_list<std::size_t> given,
                 std::initializer_list<std::size_t> outcome, const std::vector<std::size_t>& sizes,
                 const char* name) {
  std::vector<std::size_t> g, o;
  for (std::size_t v : given) g.push_back(sizes[v]);
  for (std::size_t v : outcome) o.push_back(sizes[v]);
  if (c.given_sizes != g || c.outcome_sizes != o) {
    throw DomainError(fmt::format("factor {} has alphabet sizes inconsistent with the other factors", name));
  }
  c.validate(name);
}

struct Factor {
  const ConditionalPmf* table;
  std::vector<std::size_t> given;
  std::vector<std::size_t> outcome;
};

JointPmf assemble_product(const std::vector<std::size_t>& sizes, const std::vector<Factor>& factors) {
  const std::size_t total = product(sizes);
  std::vector<double> probs(total, 0.0);
  std::vector<std::size_t> digits(sizes.size(), 0);
  for (std::size_t flat_index = 0; flat_index < total; ++flat_index) {
    double p = 1.0;
    for (const Factor& f : factors) {
      p *= f.table->at(flat(digits, f.given, sizes), flat(digits, f.outcome, sizes));
      if (p == 0.0) break;
    }
    probs[flat_index] = p;
    for (std::size_t k = sizes.size(); k-- > 0;) {
      if (++digits[k] < sizes[k]) break;
      digits[k] = 0;
    }
  }
  // Rounding in long products can leave the total a few ulps off 1.
  const double sum = std::accumulate(probs.begin(), probs.end(), 0.0);
  for (double& p : probs) p /= sum;
  return JointPmf(sizes, std::move(probs));
}

}  // namespace

JointPmf::JointPmf(std::vector<std::size_t> alphabet_sizes, std::vector<double> probabilities)
    : sizes_(std::move(alphabet_sizes)), probs_(std::move(probabilities)) {
  if (sizes_.empty()) throw DomainError("joint pmf needs at least one variable");
  if (product(sizes_) != probs_.size()) {
    throw DomainError(fmt::format("joint pmf has {} probabilities, alphabet product is {}", probs_.size(),
                                  product(sizes_)));
  }
  double sum = 0.0;
  for (double p : probs_) {
    if (!std::isfinite(p) || p < 0.0) throw DomainError("probabilities must be finite and nonnegative");
    sum += p;
  }
  if (std::abs(sum - 1.0) > kSumTolerance) {
    throw DomainError(fmt::format("probabilities sum to {:.17g}, not 1", sum));
  }
}

JointPmf JointPmf::marginal(std::span<const std::size_t> vars) const {
  std::vector<bool> seen(sizes_.size(), false);
  std::vector<std::size_t> out_sizes;
  for (std::size_t v : vars) {
    if (v >= sizes_.size()) throw DomainError(fmt::format("variable {} is not in the pmf", v));
    if (seen[v]) throw DomainError(fmt::format("variable {} listed twice", v));
    seen[v] = true;
    out_sizes.push_back(sizes_[v]);
  }
  if (vars.empty()) return JointPmf({1}, {1.0});

  const std::vector<std::size_t> out_strides = strides_of(out_sizes);
  std::vector<double> out(product(out_sizes), 0.0);
  std::vector<std::size_t> digits(sizes_.size(), 0);
  for (double p : probs_) {
    std::size_t idx = 0;
    for (std::size_t k = 0; k < vars.size(); ++k) idx += digits[vars[k]] * out_strides[k];
    out[idx] += p;
    for (std::size_t k = sizes_.size(); k-- > 0;) {
      if (++digits[k] < sizes_[k]) break;
      digits[k] = 0;
    }
  }
  const double sum = std::accumulate(out.begin(), out.end(), 0.0);
  for (double& p : out) p /= sum;
  return JointPmf(std::move(out_sizes), std::move(out));
}

double JointPmf::entropy(std::span<const std::size_t> vars) const {
  const JointPmf m = marginal(vars);
  double h = 0.0;
  for (double p : m.probs_) h -= plogp_ratio(p, p);
  return h;
}

double conditional_mutual_information(const JointPmf& pmf, const VarSet& a, const VarSet& b,
                                      const VarSet& c) {
  VarSet all;
  all.insert(all.end(), a.begin(), a.end());
  all.insert(all.end(), b.begin(), b.end());
  all.insert(all.end(), c.begin(), c.end());
  VarSet sorted = all;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw DomainError("conditional_mutual_information: variable groups must be disjoint");
  }
  if (a.empty() || b.empty()) return 0.0;

  const JointPmf abc = pmf.marginal(all);
  const auto block = [&](const VarSet& g) {
    std::size_t n = 1;
    for (std::size_t v : g) n *= pmf.alphabet_sizes()[v];
    return n;
  };
  const std::size_t na = block(a), nb = block(b), nc = block(c);

  // abc is row-major over (A, B, C) blocks: index = (ia * nb + ib) * nc + ic.
  const std::vector<double>& p = abc.probabilities();
  std::vector<double> pc(nc, 0.0), pac(na * nc, 0.0), pbc(nb * nc, 0.0);
  for (std::size_t ia = 0; ia < na; ++ia) {
    for (std::size_t ib = 0; ib < nb; ++ib) {
      for (std::size_t ic = 0; ic < nc; ++ic) {
        const double v = p[(ia * nb + ib) * nc + ic];
        pc[ic] += v;
        pac[ia * nc + ic] += v;
        pbc[ib * nc + ic] += v;
      }
    }
  }

  double info = 0.0;
  for (std::size_t ia = 0; ia < na; ++ia) {
    for (std::size_t ib = 0; ib < nb; ++ib) {
      for (std::size_t ic = 0; ic < nc; ++ic) {
        const double v = p[(ia * nb + ib) * nc + ic];
        if (v <= 0.0) continue;
        info += plogp_ratio(v, v * pc[ic] / (pac[ia * nc + ic] * pbc[ib * nc + ic]));
      }
    }
  }
  return std::max(info, 0.0);
}

std::size_t ConditionalPmf::rows() const noexcept {
  std::size_t n = 1;
  for (std::size_t s : given_sizes) n *= s;
  return n;
}

std::size_t ConditionalPmf::columns() const noexcept {
  std::size_t n = 1;
  for (std::size_t s : outcome_sizes) n *= s;
  return n;
}

void ConditionalPmf::validate(const char* name) const {
  if (outcome_sizes.empty()) throw DomainError(fmt::format("factor {} has no outcome variable", name));
  for (std::size_t s : given_sizes) {
    if (s == 0) throw DomainError(fmt::format("factor {} has an empty alphabet", name));
  }
  for (std::size_t s : outcome_sizes) {
    if (s == 0) throw DomainError(fmt::format("factor {} has an empty alphabet", name));
  }
  if (table.size() != rows() * columns()) {
    throw DomainError(fmt::format("factor {} has {} entries, expected {}", name, table.size(), rows() * columns()));
  }
  for (std::size_t r = 0; r < rows(); ++r) {
    double sum = 0.0;
    for (std::size_t k = 0; k < columns(); ++k) {
      const double v = at(r, k);
      if (!std::isfinite(v) || v < 0.0) {
        throw DomainError(fmt::format("factor {} has a negative or non-finite entry", name));
      }
      sum += v;
    }
    if (std::abs(sum - 1.0) > kSumTolerance) {
      throw DomainError(fmt::format("factor {} row {} sums to {:.17g}, not 1", name, r, sum));
    }
  }
}

JointPmf BiLevelFactorization::assemble() const {
  const auto size_of = [](const ConditionalPmf& c, std::size_t k) -> std::size_t {
    return k < c.outcome_sizes.size() ? c.outcome_sizes[k] : 0;
  };
  std::vector<std::size_t> sizes(kCount);
  sizes[X1] = size_of(x1, 0);
  sizes[X2] = size_of(x2, 0);
  sizes[U1] = size_of(u1, 0);
  sizes[U2] = size_of(u2, 0);
  sizes[XR] = size_of(xr_given_u, 0);
  sizes[Y1] = size_of(channel, 0);
  sizes[Y2] = size_of(channel, 1);
  sizes[YR] = size_of(channel, 2);
  sizes[YHAT1] = size_of(yhat1_given_yr_u1, 0);
  sizes[YHAT2] = size_of(yhat2_given_yr_u2, 0);

  check_shape(x1, {}, {X1}, sizes, "p(x1)");
  check_shape(x2, {}, {X2}, sizes, "p(x2)");
  check_shape(u1, {}, {U1}, sizes, "p(u1)");
  check_shape(u2, {}, {U2}, sizes, "p(u2)");
  check_shape(xr_given_u, {U1, U2}, {XR}, sizes, "p(xr|u1,u2)");
  check_shape(channel, {X1, X2, XR}, {Y1, Y2, YR}, sizes, "p(y1,y2,yr|x1,x2,xr)");
  check_shape(yhat1_given_yr_u1, {YR, U1}, {YHAT1}, sizes, "p(yh1|yr,u1)");
  check_shape(yhat2_given_yr_u2, {YR, U2}, {YHAT2}, sizes, "p(yh2|yr,u2)");

  return assemble_product(sizes, {{&x1, {}, {X1}},
                                  {&x2, {}, {X2}},
                                  {&u1, {}, {U1}},
                                  {&u2, {}, {U2}},
                                  {&xr_given_u, {U1, U2}, {XR}},
                                  {&channel, {X1, X2, XR}, {Y1, Y2, YR}},
                                  {&yhat1_given_yr_u1, {YR, U1}, {YHAT1}},
                                  {&yhat2_given_yr_u2, {YR, U2}, {YHAT2}}});
}

JointPmf SingleLevelFactorization::assemble() const {
  const auto size_of = [](const ConditionalPmf& c, std::size_t k) -> std::size_t {
    return k < c.outcome_sizes.size() ? c.outcome_sizes[k] : 0;
  };
  std::vector<std::size_t> sizes(kCount);
  sizes[X1] = size_of(x1, 0);
  sizes[X2] = size_of(x2, 0);
  sizes[XR] = size_of(xr, 0);
  sizes[Y1] = size_of(channel, 0);
  sizes[Y2] = size_of(channel, 1);
  sizes[YR] = size_of(channel, 2);
  sizes[YHAT] = size_of(yhat_given_yr_xr, 0);

  check_shape(x1, {}, {X1}, sizes, "p(x1)");
  check_shape(x2, {}, {X2}, sizes, "p(x2)");
  check_shape(xr, {}, {XR}, sizes, "p(xr)");
  check_shape(channel, {X1, X2, XR}, {Y1, Y2, YR}, sizes, "p(y1,y2,yr|x1,x2,xr)");
  check_shape(yhat_given_yr_xr, {YR, XR}, {YHAT}, sizes, "p(yh|yr,xr)");

  return assemble_product(sizes, {{&x1, {}, {X1}},
                                  {&x2, {}, {X2}},
                                  {&xr, {}, {XR}},
                                  {&channel, {X1, X2, XR}, {Y1, Y2, YR}},
                                  {&yhat_given_yr_xr, {YR, XR}, {YHAT}}});
}

BiLevelBounds bi_level_bounds(const BiLevelFactorization& fact) {
  using V = BiLevelFactorization::Var;
  const JointPmf joint = fact.assemble();
  const auto I = [&](VarSet a, VarSet b, VarSet c) { return conditional_mutual_information(joint, a, b, c); };

  BiLevelBounds out;
  out.r1_cap = I({V::X1}, {V::Y1, V::YHAT1}, {V::U1});
  out.r2_cap = I({V::X2}, {V::Y2, V::YHAT2}, {V::U2});
  out.lhs1 = I({V::YR}, {V::YHAT1}, {V::U1, V::Y1});
  out.rhs1 = I({V::U1}, {V::Y1}, {});
  out.lhs2 = I({V::YR}, {V::YHAT2}, {V::U2, V::Y2});
  out.rhs2 = I({V::U2}, {V::Y2}, {});
  out.feasible = out.lhs1 <= out.rhs1 + kConstraintSlack && out.lhs2 <= out.rhs2 + kConstraintSlack;
  return out;
}

SingleLevelBounds single_level_bounds(const SingleLevelFactorization& fact) {
  using V = SingleLevelFactorization::Var;
  const JointPmf joint = fact.assemble();
  const auto I = [&](VarSet a, VarSet b, VarSet c) { return conditional_mutual_information(joint, a, b, c); };

  SingleLevelBounds out;
  out.r1_cap = I({V::X1}, {V::Y1, V::YHAT}, {V::XR});
  out.r2_cap = I({V::X2}, {V::Y2, V::YHAT}, {V::XR});
  out.lhs = std::max(I({V::YR}, {V::YHAT}, {V::XR, V::Y1}), I({V::YR}, {V::YHAT}, {V::XR, V::Y2}));
  out.rhs = std::min(I({V::XR}, {V::Y1}, {}), I({V::XR}, {V::Y2}, {}));
  out.feasible = out.lhs <= out.rhs + kConstraintSlack;
  return out;
}

}  // namespace irc::discrete
