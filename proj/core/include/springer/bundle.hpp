#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "springer/diagram.hpp"
#include "springer/flag.hpp"
#include "springer/linalg.hpp"

namespace springer {

// Shape (n-k, k) of the type D component indexed by a marked cup diagram on m vertices.
Shape shape_of(const MarkedCupDiagram& adot);

// Point [a:b] of the projective line.
struct P1Point {
  Scalar a, b;
  // (1, b/a) or (0, 1)
  P1Point normalized() const;
  bool operator==(const P1Point& o) const;
  std::string str() const;
};

// q + 1 points of P^1(F_q), (1,0)..(1,q-1) then (0,1)
std::vector<P1Point> p1_points(const Field& f);

// How vertex 1 of a marked cup diagram is attached.
struct CaseTag {
  enum class Kind { I, II, III_1, III_2, III_3, III_4 } kind = Kind::I;
  int t = 0;            // Case I: cup (1, 2t)
  int j = 0;            // Case II: cup (1, j)
  bool marked = false;  // Case II: marker on that cup
  Shape lambda, nu;
  int ell() const { return kind == Kind::I ? 2 * t : 1; }
  std::string name() const;
};

// TooSmall when m < 3
CaseTag classify_case(const MarkedCupDiagram& adot);

// P^lambda_mu: e_i -> e_i for i <= mu_1, f_i -> f_i for i <= mu_2, the rest to 0. Also used for
// the inverse embedding by swapping the arguments.
Matrix projection_P(const Field& f, const Shape& from, const Shape& to);

// W^perp / W with coset representatives taken from the RREF basis of W^perp.
struct Quotient {
  Subspace w, wperp;
  std::vector<Vector> reps;
  Matrix coords;  // dim x n: kills W and a complement of W^perp, rep_j -> unit j
  Matrix gram;    // induced form on the representatives
  std::size_t dim() const { return reps.size(); }
};

// ShapeMismatch if W is not isotropic
Quotient quotient_psi(const Subspace& w, const Matrix& gram);
// x-bar on W^perp / W in representative coordinates; W and W^perp must be x-stable
Matrix induced_nilpotent(const Quotient& q, const Matrix& x);

enum class QVariant { I_odd, I_even, II_1, II_2, III_1, III_2, III_3, III_4 };
std::string qvariant_name(QVariant v);

struct FormedIso {
  QVariant variant = QVariant::I_even;
  Shape source, target;
  Quotient quot;
  Matrix matrix;  // target.n x quot.dim()
  Matrix lift;    // matrix * quot.coords, V_source -> V_target
  bool form_compatible() const;
  // Q x-bar = x_nu Q
  bool intertwines() const;
};

struct QOptions {
  // keep the sqrt(-1) / sqrt(-1/2) factors; without them Q is only defined up to a scalar on
  // each source block, which is enough to move subspaces around
  bool normalized = true;
  // Q^III_4 with sqrt(-1) on both blocks: still intertwines, but scales the form on the f block
  bool both_blocks_scaled = false;
};

// Case I uses t; Case II uses (c, d) with W = <c e_1 + d f_1>.
// MissingSqrtMinusOne, BadParameters
FormedIso formed_iso(const Field& f, QVariant v, const Shape& lambda, int t, const P1Point& cd, const QOptions& opt = {});
FormedIso formed_iso_Q(const Field& f, const CaseTag& tag, const P1Point& cd, const QOptions& opt = {});

// Omega: F''_i = Q(F_{ell+i} / W) for i <= m_nu, then completed by isotropy. NotContained if W is not in F_ell.
Flag omega_map(const FormedIso& q, const Flag& fl, int ell);
// W^perp intersected with the preimage of F''_i, for i = 1..m_nu
std::vector<Subspace> omega_lift(const FormedIso& q, const Flag& lower);

// Case I: first 2t vertices and the rest shifted down. Markers are copied as they are. WrongCase.
std::pair<MarkedCupDiagram, MarkedCupDiagram> split_caseI(const MarkedCupDiagram& adot);
// F'_i = P(F_i) for i <= 2t on mu = (2t, 2t), completed by isotropy
Flag pi_ab(const Flag& fl, const CaseTag& tag);

// the smaller diagram c-dot together with the chart (1 or 2; 0 outside Case II)
struct Reduction {
  CaseTag tag;
  FormedIso q;
  MarkedCupDiagram bdot;  // Case I only
  MarkedCupDiagram cdot;
  int chart = 0;
  Subspace w;
};

// first is the P^1 point of the cup at vertex 1 (Case II only); chart 0 picks U_1 when its
// e_1 coordinate is nonzero, else U_2
Reduction reduce(const Field& f, const MarkedCupDiagram& adot, const P1Point& first, int chart = 0);

// one P^1 point per cup, cups ordered by left endpoint. ParamCountMismatch.
Flag build_flag(const Field& f, const MarkedCupDiagram& adot, const std::vector<P1Point>& params);
// inverse of build_flag on K^adot; NotInComponent
std::vector<P1Point> recover_params(const MarkedCupDiagram& adot, const Flag& fl);

struct BundleReport {
  std::string diagram;
  std::string tag;  // case name or "base"
  int chart = 0;
  std::vector<std::pair<std::string, bool>> checks;
  std::vector<BundleReport> children;
  std::optional<Flag> reconstructed;  // set when the round trip fails
  bool ok() const;
};

// NotInComponent if fl is not in K^adot
BundleReport verify_bundle_point(const MarkedCupDiagram& adot, const Flag& fl);

}  // namespace springer
