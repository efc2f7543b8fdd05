#pragma once

#include <optional>
#include <string_view>
#include <utility>

#include "mink/dense.hpp"

namespace mink {

// The Minkowski metric diag(1, -1, ..., -1) of a given order. It is never
// materialized for products; multiplication flips signs of rows/columns
// 1..n-1, which is exactly what a dense product with the diagonal would do.
class MinkowskiMetric {
 public:
  explicit MinkowskiMetric(Index order);

  [[nodiscard]] Index order() const noexcept { return order_; }
  [[nodiscard]] Matrix dense() const;

  // G * A
  [[nodiscard]] Matrix left(const Matrix& a) const;
  // A * G
  [[nodiscard]] Matrix right(const Matrix& a) const;

 private:
  Index order_;
};

// A~ = G_n A^* F_m.
Matrix mink_adjoint(const Matrix& a);

// Existence of A^m, evaluated through every equivalent criterion with the
// same rank machinery.
struct ExistenceDiagnosis {
  bool exists = false;

  Index rank_A = 0;
  Index rank_AAs = 0;
  Index rank_AsA = 0;
  Index rank_AsAAs = 0;
  Index ind_AAs = 0;
  Index ind_AsA = 0;
  bool resolvent_nonsingular = false;

  // Individual verdicts.
  bool rank_equality = false;    // rank(AA~) = rank(A~A) = rank(A)
  bool triple_rank = false;      // rank(A~AA~) = rank(A)
  bool direct_sum = false;       // A R(A~) (+) N(A~) = C^m
  bool index_AsA = false;        // Ind(A~A) = 1 and N(A~A) in N(A)
  bool index_AAs = false;        // Ind(AA~) = 1 and R(A) in R(AA~)
  bool resolvent = false;        // A~A + I - A^+ A nonsingular

  bool criteria_agree = false;
};

ExistenceDiagnosis diagnose_existence(const Matrix& a, const Tolerance& tol = {});

enum class Algorithm {
  FRF,
  HS,
  Zlobec,
  Zlobec2,
  Group,
  Resolvent,
  Block,
  Compose13m14m,
};

std::string_view to_string(Algorithm algo);
std::optional<Algorithm> parse_algorithm(std::string_view name);

// Relative residuals of the four defining equations
//   (1) AXA = A, (2) XAX = X, (3m) (AX)~ = AX, (4m) (XA)~ = XA.
struct Residuals {
  double eq1 = 0.0;
  double eq2 = 0.0;
  double eq3m = 0.0;
  double eq4m = 0.0;

  [[nodiscard]] double max() const;
};

Residuals defining_residuals(const Matrix& a, const Matrix& x);

struct InverseComputation {
  Algorithm algorithm = Algorithm::FRF;
  Matrix result;
  Residuals residuals;
  // Gap between the two algebraic routes an algorithm evaluates internally
  // (group: (A~A)^# A~ vs A~ (AA~)^#, resolvent: right vs left form, HS:
  // compact vs expanded form). Zero when an algorithm has a single route.
  double internal_gap = 0.0;
};

InverseComputation mink_inverse_frf(const Matrix& a, const Tolerance& tol = {},
                                    Gate gate = Gate::Checked);

InverseComputation mink_inverse_hs(const Matrix& a, const Tolerance& tol = {},
                                   Gate gate = Gate::Checked);

// (A~A)^k A~ [(A~A)^{k+l+1} A~]^(1) (A~A)^l A~ with the inner {1}-inverse
// drawn by one_inverse_sample(., W); W is rows(A) x cols(A).
InverseComputation mink_inverse_zlobec(const Matrix& a, int k, int l,
                                       const Matrix& w, const Tolerance& tol = {},
                                       Gate gate = Gate::Checked);

// (A~A)^k A~ [(AA~)^{k+1}]^(1) A [(A~A)^{l+1}]^(1) (A~A)^l A~; W1 is m x m,
// W2 is n x n.
InverseComputation mink_inverse_zlobec2(const Matrix& a, int k, int l,
                                        const Matrix& w1, const Matrix& w2,
                                        const Tolerance& tol = {},
                                        Gate gate = Gate::Checked);

InverseComputation mink_inverse_group(const Matrix& a, const Tolerance& tol = {},
                                      Gate gate = Gate::Checked);

// (A (A~A + I - A^(1) A)^{-1})~ with A^(1) = one_inverse_sample(A, W).
InverseComputation mink_inverse_resolvent(const Matrix& a, const Matrix& w,
                                          const Tolerance& tol = {},
                                          Gate gate = Gate::Checked);

// Bordered formula for A = [[A1, A2], [A3, A4]] with A1 the nonsingular
// leading r x r block and rank(A) = r.
InverseComputation mink_inverse_block(const Matrix& a, Index r,
                                      const Tolerance& tol = {},
                                      Gate gate = Gate::Checked);

// Members of A{1,3m}: C^+ (B~B)^{-1} B~ + (I - X0 A) Y, Y is n x m.
Matrix one_three_m(const Matrix& a, const Matrix& y, const Tolerance& tol = {});

// Members of A{1,4m}: C~ (CC~)^{-1} B^+ + Z (I - A X0), Z is n x m.
Matrix one_four_m(const Matrix& a, const Matrix& z, const Tolerance& tol = {});

// X14 A X13, after validating both witnesses.
Matrix compose_13m_14m(const Matrix& a, const Matrix& x13, const Matrix& x14,
                       const Tolerance& tol = {});

// A^m from the composition route, packaged like the other algorithms. Uses
// the base members of both families.
InverseComputation mink_inverse_compose(const Matrix& a, const Tolerance& tol = {},
                                        Gate gate = Gate::Checked);

// X = A (AA~A)^+ and Y = (AA~A)^+ A, so that A = X A A~ A = A A~ A Y.
struct FactorizationWitnesses {
  Matrix X;                 // m x m
  Matrix Y;                 // n x n
  double residual_X = 0.0;  // ||X A A~ A - A|| / ||A||
  double residual_Y = 0.0;  // ||A A~ A Y - A|| / ||A||
  Matrix from_X;            // (XA)~
  Matrix from_Y;            // (AY)~
};

FactorizationWitnesses factorization_witnesses(const Matrix& a,
                                               const Tolerance& tol = {});

// Solutions of X AA~ - Y X = I_m with AA~ X = X AA~, AA~ Y = 0, Y^2 = Y.
struct SylvesterWitnesses {
  Matrix X;
  Matrix Y;
  double sylvester = 0.0;    // ||X AA~ - Y X - I||
  double commute = 0.0;      // ||AA~ X - X AA~||
  double annihilate = 0.0;   // ||AA~ Y||
  double idempotent = 0.0;   // ||Y^2 - Y||
  Matrix inverse;            // A~ X
};

SylvesterWitnesses sylvester_witnesses(const Matrix& a, const Tolerance& tol = {});

// Decides X = A^m through X A A~ = A~, X N(A~) = 0 and R(X) in R(A~).
struct MooreStyleReport {
  double fixes_range = 0.0;     // ||X A A~ - A~|| / max(1, ||A~||)
  double kills_null = 0.0;      // ||X * basis(N(A~))|| / max(1, ||X||)
  bool range_contained = false; // rank([X | A~]) = rank(A~)
  bool verdict = false;
};

MooreStyleReport moore_style_check(const Matrix& a, const Matrix& x,
                                   const Tolerance& tol = {});

// B, C with A~B = CA~ = A^m, and D with A~DA~ = A^m, built from the
// pseudoinverse of A~ as its {1}-inverse.
struct BjerhammarWitnesses {
  Matrix B;  // m x m
  Matrix C;  // n x n
  Matrix D;  // m x n
  double residual_B = 0.0;  // ||A~B - A^m|| / max(1, ||A^m||)
  double residual_C = 0.0;
  double residual_D = 0.0;
};

// yd, zd are the m x n free parameters of D.
BjerhammarWitnesses bjerhammar_witnesses(const Matrix& a, const Matrix& y,
                                         const Matrix& z, const Matrix& yd,
                                         const Matrix& zd,
                                         const Tolerance& tol = {});

// Same, with D's free parameters taken as Y A and A Z.
BjerhammarWitnesses bjerhammar_witnesses(const Matrix& a, const Matrix& y,
                                         const Matrix& z,
                                         const Tolerance& tol = {});

// A^m by FRF, with the zero matrix mapped to the zero matrix.
Matrix mink_inverse(const Matrix& a, const Tolerance& tol = {});

}  // namespace mink
