#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace irc::discrete {

/// Largest accepted product alphabet (dense tensor entries).
inline constexpr std::size_t kMaxEntries = 1'000'000;

/// Dense joint distribution over finitely many discrete variables, stored
/// row-major (the last variable varies fastest).
class JointPmf {
 public:
  /// Throws DomainError if sizes are empty or zero, the tensor is too large,
  /// the probability count does not match, any entry is negative, or the
  /// total differs from 1 by more than 1e-12.
  JointPmf(std::vector<std::size_t> alphabet_sizes, std::vector<double> probabilities);

  std::size_t variables() const noexcept { return sizes_.size(); }
  const std::vector<std::size_t>& alphabet_sizes() const noexcept { return sizes_; }
  const std::vector<double>& probabilities() const noexcept { return probs_; }

  /// Distribution of the listed variables, in the listed order.
  JointPmf marginal(std::span<const std::size_t> vars) const;

  /// Shannon entropy in bits of the listed variables.
  double entropy(std::span<const std::size_t> vars) const;

 private:
  std::vector<std::size_t> sizes_;
  std::vector<double> probs_;
};

using VarSet = std::vector<std::size_t>;

/// I(A; B | C) in bits by direct summation of p log p(abc)p(c)/(p(ac)p(bc)).
/// An empty C gives plain mutual information. Overlapping groups or unknown
/// variables raise DomainError.
double conditional_mutual_information(const JointPmf& pmf, const VarSet& a, const VarSet& b,
                                      const VarSet& c = {});

/// Conditional table p(outcome | given). Rows are indexed by the given
/// variables (row-major), columns by the outcome variables. An empty
/// `given` list makes this an unconditional distribution.
struct ConditionalPmf {
  std::vector<std::size_t> given_sizes;
  std::vector<std::size_t> outcome_sizes;
  std::vector<double> table;

  std::size_t rows() const noexcept;
  std::size_t columns() const noexcept;
  double at(std::size_t row, std::size_t column) const noexcept { return table[row * columns() + column]; }
  /// Each row nonnegative and summing to 1 within 1e-12.
  void validate(const char* name) const;
};

/// Bi-level compression factorisation
///   p(x1) p(x2) p(u1) p(u2) p(xr|u1,u2) p(y1,y2,yr|x1,x2,xr) p(yh1|yr,u1) p(yh2|yr,u2).
struct BiLevelFactorization {
  ConditionalPmf x1, x2, u1, u2;
  ConditionalPmf xr_given_u;
  ConditionalPmf channel;
  ConditionalPmf yhat1_given_yr_u1;
  ConditionalPmf yhat2_given_yr_u2;

  /// Variable positions in the assembled joint.
  enum Var : std::size_t { X1, X2, U1, U2, XR, Y1, Y2, YR, YHAT1, YHAT2, kCount };

  JointPmf assemble() const;
};

/// Single-level compression factorisation
///   p(x1) p(x2) p(xr) p(y1,y2,yr|x1,x2,xr) p(yh|yr,xr).
struct SingleLevelFactorization {
  ConditionalPmf x1, x2, xr;
  ConditionalPmf channel;
  ConditionalPmf yhat_given_yr_xr;

  enum Var : std::size_t { X1, X2, XR, Y1, Y2, YR, YHAT, kCount };

  JointPmf assemble() const;
};

/// Absolute slack on the compression constraints.
inline constexpr double kConstraintSlack = 1e-12;

struct BiLevelBounds {
  double r1_cap = 0.0;   // I(X1; Y1, Yh1 | U1)
  double r2_cap = 0.0;   // I(X2; Y2, Yh2 | U2)
  double lhs1 = 0.0;     // I(Yr; Yh1 | U1, Y1)
  double rhs1 = 0.0;     // I(U1; Y1)
  double lhs2 = 0.0;
  double rhs2 = 0.0;
  bool feasible = false;
};

struct SingleLevelBounds {
  double r1_cap = 0.0;   // I(X1; Y1, Yh | Xr)
  double r2_cap = 0.0;
  double lhs = 0.0;      // max_i I(Yr; Yh | Xr, Yi)
  double rhs = 0.0;      // min_i I(Xr; Yi)
  bool feasible = false;
};

BiLevelBounds bi_level_bounds(const BiLevelFactorization& fact);
SingleLevelBounds single_level_bounds(const SingleLevelFactorization& fact);

}  // namespace irc::discrete
