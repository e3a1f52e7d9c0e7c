#pragma once

#include <string>
#include <utility>
#include <vector>

#include "spinlm/permissibility.hpp"
#include "spinlm/sqrtpi.hpp"

namespace spinlm {

// 2n x n generator matrix of a lattice in L^{2n}.
using SqrtPiModule = SqrtPiMatrix;

struct LiftPair {
  SqrtPiModule plus_side;   // lattice at index i
  SqrtPiModule minus_side;  // lattice at index -i
};

// Anti-diagonal unit matrix: psi(e_a, e_b) = 1 iff b = 2n+1-a.
SqrtPiMatrix gram_form(int n);
// Diagonal chain maps; lambda1 scales A_i by pi, lambda2 scales B_i by pi.
SqrtPiMatrix lambda1(int i, int n);
SqrtPiMatrix lambda2(int i, int n);

LiftPair build_lift(int type, int d, int i, int n);
// Closed-form dual lattice for type < i, as listed alongside the lift.
SqrtPiModule listed_dual_lift(int type, int i, int n);

SqrtPiModule dual_module(const SqrtPiModule& m);
bool is_direct_summand(const SqrtPiModule& m);
// x lies in the lattice spanned by m.
bool module_contains(const SqrtPiModule& m, const std::vector<SqrtPiScalar>& x);
bool same_module(const SqrtPiModule& a, const SqrtPiModule& b);

struct LmClause {
  std::string name;
  bool pass = false;
  std::string witness;
};

struct LmReport {
  std::vector<LmClause> clauses;
  bool all_pass() const;
  std::string failures() const;
};

// Clauses: direct summands, F_{-i} = F_i^perp, lambda inclusions, and the
// reduction mod s against (kE, kE^perp).
LmReport check_lm_conditions(const LiftPair& pair, int i, int n, const IsoSubset& expected);

// Positions j with j* not in E: the support of (kE)^perp.
IsoSubset perp_subset(const IsoSubset& e);
// Union of supports of the reduced columns.
std::vector<int> reduced_support(const SqrtPiModule& m);

}  // namespace spinlm
