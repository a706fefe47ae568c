#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "springer/diagram.hpp"
#include "springer/flag.hpp"
#include "springer/linalg.hpp"

namespace springer {

struct DimVectors {
  int n = 0, k = 0;
  std::vector<int> v;  // v[0..n], v[0] = v[n] = 0
  std::vector<int> d;  // d[0..n]
};

DimVectors dim_vectors(int n, int k);

// (A, B, Gamma, Delta). A[i]: V_i -> V_{i+1} and B[i]: V_{i+1} -> V_i for 0 <= i <= n-1, boundary maps
// have a zero-dimensional side. Gamma[j]: D_j -> V_j and Delta[j]: V_j -> D_j for 0 <= j <= n.
// When n = 2k the columns of Gamma[k] (rows of Delta[k]) are ordered (f, e).
class QuiverRep {
 public:
  QuiverRep() = default;
  // all maps zero
  QuiverRep(Field f, int n, int k);

  const Field& field() const { return field_; }
  const DimVectors& dims() const { return dims_; }
  int n() const { return dims_.n; }
  int k() const { return dims_.k; }
  int v(int i) const { return dims_.v.at(i); }

  std::vector<Matrix> A, B, Gamma, Delta;

  // checks every block has the shape the dimension vectors dictate
  void validate() const;

  // A_{p->q} = A_{q-1}...A_p and B_{q->p} = B_p...B_{q-1}; the empty word is the identity
  Matrix path_A(int p, int q) const;
  Matrix path_B(int q, int p) const;
  // D_j -> V_i and V_j -> D_i
  Matrix gamma_path(int j, int i) const;
  Matrix delta_path(int j, int i) const;
  // images of the basis vectors e (of D_{n-k}) and f (of D_k) in V_i
  Matrix gamma_e_to(int i) const;
  Matrix gamma_f_to(int i) const;
  // rows Delta_{i -> n-k} (e) and Delta_{i -> k} (f)
  Matrix delta_e_from(int i) const;
  Matrix delta_f_from(int i) const;

  bool operator==(const QuiverRep& o) const;
  bool operator!=(const QuiverRep& o) const { return !(*this == o); }

 private:
  Field field_;
  DimVectors dims_;
  std::size_t e_col() const;  // column of e inside Gamma[n-k]
  std::size_t f_col() const { return 0; }
};

bool is_admissible(const QuiverRep& r);
// NotAdmissible when r fails the ADHM equations
bool is_stable(const QuiverRep& r);
bool is_springer_point(const QuiverRep& r);

// (g_{i+1} A_i g_i^-1, g_i B_i g_{i+1}^-1, g_i Gamma_i, Delta_i g_i^-1); g[i] acts on V_i, g[0] and g[n] are 0x0
QuiverRep gl_apply(const std::vector<Matrix>& g, const QuiverRep& r);

// Lifted representation on V~_i = V_i (+) D'_i, D'_i = <e_1..e_{ne_i}, f_1..f_{nf_i}>.
// A[0] = Gamma~_1 and B[0] = Delta~_1 act on D'_0, the standard space.
struct TildeRep {
  int n = 0, k = 0;
  Field field;
  std::vector<int> v;   // dim V_i
  std::vector<int> ne;  // e-part of D'_i
  std::vector<int> nf;  // f-part of D'_i
  std::vector<Matrix> A, B;
  int tilde_dim(int i) const { return v[i] + ne[i] + nf[i]; }
  // coordinate of e_h / f_h of D'_i inside V~_i (i = 0: the standard basis)
  std::size_t e_at(int i, int h) const { return static_cast<std::size_t>(v[i] + h - 1); }
  std::size_t f_at(int i, int h) const { return static_cast<std::size_t>(v[i] + ne[i] + h - 1); }
};

TildeRep build_tilde(const QuiverRep& r);

struct TildeReport {
  bool admissible = false;    // B~A~ = A~B~ + Gamma~Delta~
  bool stable = false;        // Gamma~_1 and each A~_i surjective
  bool commutator = false;    // [pi B~A~|_{D'} - x_i, y_i] = 0
  bool block_pattern = false; // identity / zero block pattern
  bool delta_gamma = false;   // Delta_{i->} Gamma_{->i} = 0
  std::vector<std::string> failures;
  bool ok() const { return admissible && stable && commutator && block_pattern && delta_gamma; }
};

TildeReport check_tilde(const TildeRep& t);

struct MaffeiResult {
  Flag flag;                       // standard basis e_1..e_{n-k}, f_1..f_k
  std::vector<Subspace> kernels;   // F_0..F_n in the column order f_1, e_1, f_2, e_2, ...
  std::vector<std::string> labels; // names of those coordinates
  Matrix x;                        // Delta~_1 Gamma~_1
};

MaffeiResult maffei_flag(const QuiverRep& r);

// Maffei coordinate order and the matrix taking it to the standard basis
std::vector<std::string> maffei_labels(int n, int k);
Matrix maffei_to_standard(const Field& f, int n, int k);

// type A component relations
bool check_quiver_cup(const QuiverRep& r, int i, int j);
bool check_quiver_ray(const QuiverRep& r, int i, const DiagramStats& st);
bool in_lambda_a(const QuiverRep& r, const CupDiagram& a);

QuiverRep theta(const QuiverRep& r);

struct ThetaFixedResult {
  enum class Kind { FixedWith, NotFixed, Undetermined } kind = Kind::Undetermined;
  std::vector<Matrix> g;  // g[0..n] when FixedWith
  bool exhaustive = false;
  std::string name() const;
};

// exhaustive over F_p when the g-solution set has at most 2^16 points, else random trials
ThetaFixedResult is_theta_fixed(const QuiverRep& r, int trials = 64, std::uint64_t seed = 1);

bool in_lambda_marked(const QuiverRep& r, const MarkedCupDiagram& adot);

struct SampleOptions {
  int stability_retries = 256;
  int component_retries = 1024;
};

std::optional<QuiverRep> sample_springer_point(const Field& f, int n, int k, const std::optional<CupDiagram>& a, std::uint64_t seed,
                                               const SampleOptions& opt = {});

}  // namespace springer
