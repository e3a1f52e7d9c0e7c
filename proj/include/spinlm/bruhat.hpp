#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "spinlm/weyl.hpp"

namespace spinlm {

enum class Sign : std::uint8_t { plus, minus };

std::string sign_str(Sign s);
// Parity of the first-half sum of mu_sign: n mod 2 for plus, n-1 mod 2 for minus.
int sign_parity(Sign s, int n);

// mu_plus = (1^n, 0^n), mu_minus = (1^{n-1}, 0, 1, 0^{n-1}).
ZVec cochar(Sign s, int n);
// Distinct vectors of the S°_{2n}-orbit of cochar(s, n), sorted.
std::vector<ZVec> cochar_orbit(Sign s, int n);

// Simple affine reflections s_0..s_n of the base alcove.
const std::vector<AffineElement>& simple_reflections(int n);
// The unique alcove vertex not fixed by s_k.
VertexLabel moved_vertex(int k, int n);

struct OmegaSplit {
  AffineElement affine;  // in W_aff
  AffineElement omega;   // tau2^z tau1^p
};

AffineElement omega_element(KottwitzValue kv, int n);
OmegaSplit split_omega(const AffineElement& w);

int length(const AffineElement& w);
// Reduced word of the W_aff-part, letters are simple reflection indices.
std::vector<int> reduced_word(const AffineElement& w);
bool bruhat_leq(const AffineElement& x, const AffineElement& y);

// Affine reflections t w0 with w0 = (i j)(i* j*) and t = k(e_i - e_j + e_{j*} - e_{i*}).
bool is_affine_reflection(const AffineElement& w);
std::vector<AffineElement> affine_reflections(int n, int max_shift);

// Lower Bruhat interval [e, w_aff] times the Omega-part of w.
std::vector<AffineElement> lower_interval(const AffineElement& w);
// Sorted admissible set; cached per (sign, n).
const std::vector<AffineElement>& admissible_set(Sign s, int n);

// A set of points of the closed base alcove: the n+1 vertices and the
// midpoints a_1, a_{n-1}. Bit k corresponds to VertexLabel::order_key k.
class Facet {
 public:
  Facet() = default;
  static Facet of_indices(int n, const std::vector<int>& indices);
  static Facet of_labels(int n, const std::vector<VertexLabel>& labels);
  static Facet vertex(int n, VertexLabel label);
  static Facet index(int n, int i);

  int rank() const { return n_; }
  std::uint32_t bits() const { return bits_; }
  bool contains(VertexLabel label) const;
  std::vector<VertexLabel> labels() const;
  std::string str() const;

  friend auto operator<=>(const Facet&, const Facet&) = default;
  friend bool operator==(const Facet&, const Facet&) = default;

 private:
  int n_ = 0;
  std::uint32_t bits_ = 0;
};

VertexLabel label_from_key(int key, int n);

struct FacetGeometry {
  std::vector<AffineElement> group;  // W_F, sorted
  std::vector<int> generators;       // simple reflections fixing every point of F
  ZVec point;                        // scale * barycenter
  int64_t scale = 1;
  std::vector<VertexLabel> fixed_vertices;  // vertices of the open facet containing the barycenter
};

// Cached. W_F is enumerated as the elements t^w w0 in W_aff with t^w = a - w0 a
// for every point a of F.
const FacetGeometry& facet_geometry(const Facet& f);
std::vector<AffineElement> stabilizer_group(const std::vector<int>& indices, int n);
std::vector<AffineElement> generated_group(const std::vector<AffineElement>& gens);

// J from the closed-form case table, in 𝕀-order.
std::vector<VertexLabel> facet_vertex_set(const std::vector<int>& indices, int n);

class DoubleCoset {
 public:
  DoubleCoset() = default;
  // Canonicalizes W_F w W_F; rep is its lexicographically least element.
  DoubleCoset(const Facet& f, const AffineElement& w);

  const Facet& facet() const { return facet_; }
  const AffineElement& rep() const { return rep_; }
  std::string str() const;

  friend auto operator<=>(const DoubleCoset&, const DoubleCoset&) = default;
  friend bool operator==(const DoubleCoset&, const DoubleCoset&) = default;

 private:
  Facet facet_;
  AffineElement rep_;
};

struct CosetImage {
  std::vector<DoubleCoset> cosets;   // sorted; every coset meeting S
  std::vector<DoubleCoset> partial;  // cosets meeting S but not contained in it
};

CosetImage double_cosets(const std::vector<AffineElement>& s, const Facet& f);
DoubleCoset project_coset(const DoubleCoset& c, const Facet& coarser);

// Membership oracle for W_F S W_F: keyed by Kottwitz value and the point w(b_F).
class CosetIndex {
 public:
  CosetIndex(const std::vector<AffineElement>& s, const Facet& f);
  bool contains(const AffineElement& w) const;
  const Facet& facet() const { return facet_; }

 private:
  Facet facet_;
  std::vector<std::pair<KottwitzValue, ZVec>> keys_;  // sorted
};

// Representatives of the W_fine double cosets contained in the W_coarse double coset c.
std::vector<AffineElement> refine_coset(const DoubleCoset& c, const Facet& fine);

// Cosets c in W_I\W~o/W_I with rho_j(c) in W_j\Adm/W_j for every j in J.
std::vector<DoubleCoset> vertexwise_intersection(const std::vector<int>& indices, Sign s, int n);

}  // namespace spinlm
