#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "spinlm/bruhat.hpp"
#include "spinlm/weyl.hpp"

namespace spinlm {

// ((-1)^(i), 0^(2n-i)) - d for j = 2nd + i, 0 <= i < 2n.
ZVec omega(int64_t j, int n);

// One period of 2nZ +- I: the representatives {i, 2n-i}.
std::vector<int64_t> period_representatives(const std::vector<int>& indices, int n);

bool is_naively_permissible(const AffineElement& w, const std::vector<int>& indices);

struct MuVector {
  ZVec mu;
  bool totally_isotropic() const;       // mu + mu* = 1
  std::vector<int> zero_set() const;    // 1-based positions with mu = 0
};

MuVector mu_vector(const AffineElement& w, int64_t j);

// Parity criterion; rejects vectors that are not totally isotropic 0/1 vectors.
bool spin_orbit_member(const ZVec& mu, Sign s, int n);
// Direct search over S°_{2n} mu_sign.
bool spin_orbit_member_bruteforce(const ZVec& mu, Sign s, int n);

bool is_pm_permissible(const AffineElement& w, const std::vector<int>& indices, Sign s);

// Values v_j for j in 2nZ +- I are recovered from v_i, i in I, by
// v_{j+2n} = v_j - 1 and v_{-j} = d - v_j*.
class Face {
 public:
  Face(int n, std::map<int, ZVec> base, int64_t d);
  int rank() const { return n_; }
  int64_t d() const { return d_; }
  std::vector<int> indices() const;
  ZVec at(int64_t j) const;
  const std::map<int, ZVec>& base() const { return base_; }
  // Empty string when the face axioms hold, else a description of the failure.
  std::string violation() const;
  bool valid() const { return violation().empty(); }
  friend bool operator==(const Face&, const Face&) = default;

 private:
  int n_;
  std::map<int, ZVec> base_;
  int64_t d_;
};

Face standard_face(const std::vector<int>& indices, int n);
Face act_face(const AffineElement& w, const Face& f);

// Subset E of [1,2n] of size n, relative to vertex i. Bit k is position k+1.
class IsoSubset {
 public:
  IsoSubset(int n, int i, std::uint32_t bits);
  static IsoSubset of_positions(int n, int i, const std::vector<int>& one_based);
  int rank() const { return n_; }
  int vertex() const { return i_; }
  std::uint32_t bits() const { return bits_; }
  bool contains(int one_based) const { return (bits_ >> (one_based - 1)) & 1U; }
  std::vector<int> positions() const;
  bool in_a(int one_based) const;  // position lies in [1,i] or [i*,2n]
  bool naively_permissible() const;
  std::string str() const;
  friend auto operator<=>(const IsoSubset&, const IsoSubset&) = default;

 private:
  int n_;
  int i_;
  std::uint32_t bits_;
};

std::vector<IsoSubset> permissible_subsets(int i, int n);
IsoSubset zero_subset(const MuVector& mu, int i, int n);
// The face at {i} whose mu-vector vanishes exactly on E.
Face face_of_subset(const IsoSubset& e);

AffineElement face_to_element(const Face& f);

enum class PermNormalization : std::uint8_t {
  cell_index,      // W' representatives when 0, n are not in I
  kottwitz_fiber,  // representatives in the Kottwitz fiber of t^{mu_sign}
};

// Kottwitz value every representative is moved into.
KottwitzValue target_fiber(const std::vector<int>& indices, Sign s, int n, PermNormalization norm);

std::vector<DoubleCoset> enumerate_perm(int i, Sign s, int n, PermNormalization norm);

struct GeneralPerm {
  std::vector<DoubleCoset> cosets;
  // Type-III cosets whose rep * tau1 fails the permissibility test (expected empty).
  std::vector<DoubleCoset> missing_tau1_partner;
};

GeneralPerm enumerate_perm_general(const std::vector<int>& indices, Sign s, int n, PermNormalization norm);

struct OrbitClass {
  int type = 0;
  int d = 1;
  friend auto operator<=>(const OrbitClass&, const OrbitClass&) = default;
};

OrbitClass orbit_classify(const IsoSubset& e);
IsoSubset orbit_representative(int type, int d, int i, int n);
int stratum_rank(const IsoSubset& e);
// Rank of the reduced composite chain map applied to the coordinate subspace kE.
int stratum_rank_by_matrix(const IsoSubset& e);
// Signs whose permissible set contains the class of E.
std::vector<Sign> subset_signs(const IsoSubset& e);

}  // namespace spinlm
