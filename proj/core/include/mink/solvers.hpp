#pragma once

#include <optional>

#include "mink/dense.hpp"

namespace mink {

// General solution of AXB = D: X = A1 D B1 + (I - A1 A) Y + Z (I - B B1).
struct GeneralSolution {
  Matrix particular;
  Matrix left_free;   // I_n - A1 A
  Matrix right_free;  // I_p - B B1

  // Y and Z are both n x p.
  [[nodiscard]] Matrix produce(const Matrix& y, const Matrix& z) const;
};

// std::nullopt when AXB = D is inconsistent. WA (n x m) and WB (q x p) pick
// the {1}-inverses of A (m x n) and B (p x q).
std::optional<GeneralSolution> solve_axb_d(const Matrix& a, const Matrix& b,
                                           const Matrix& d, const Matrix& wa,
                                           const Matrix& wb,
                                           const Tolerance& tol = {});

// Free blocks of the XAY = B solution family. Empty matrices mean zero.
struct XayFreeParams {
  Matrix X2;  // r x (m - r)
  Matrix X4;  // (l - r) x (m - r)
  Matrix Y3;  // (n - r) x r
  Matrix Y4;  // (n - r) x (h - r)
};

struct XaySolution {
  Matrix X;  // l x m
  Matrix Y;  // n x h
};

// A is m x n, B is l x h, rank(A) = rank(B) = r, X1 nonsingular r x r.
XaySolution solve_xay_b(const Matrix& a, const Matrix& b, const Matrix& x1,
                        const XayFreeParams& free = {}, const Tolerance& tol = {});

// rank([[A, B], [C, X]]) = rank(A) with A m x n, B m x m, C n x n.
struct RankEquationInstance {
  Matrix A;
  Matrix B;
  Matrix C;
};

Index bordered_rank(const Matrix& a, const Matrix& b, const Matrix& c, const Matrix& x,
                    const Tolerance& tol = {});

// X = C A^+ B, or std::nullopt when R(B) is not in R(A) or R(C^*) is not in
// R(A^*). A feasible solution is checked to make the bordered rank equal
// rank(A); a failure there throws InternalInconsistency.
std::optional<Matrix> rank_equation_solve(const RankEquationInstance& inst,
                                          const Tolerance& tol = {});

struct RankCharacterization {
  Matrix X;  // I_n - A^m A
  Matrix Y;  // I_m - A A^m
  Matrix Z;  // A^m

  // A X = 0, X~ = X, X^2 = X, rank(X) = n - r
  double x_annihilates = 0.0;
  double x_self_adjoint = 0.0;
  double x_idempotent = 0.0;
  bool x_rank_ok = false;
  // Y A = 0, Y~ = Y, Y^2 = Y, rank(Y) = m - r
  double y_annihilates = 0.0;
  double y_self_adjoint = 0.0;
  double y_idempotent = 0.0;
  bool y_rank_ok = false;

  Index rank_A = 0;
  Index bordered_rank = 0;  // rank([[A, I - Y], [I - X, Z]])
};

RankCharacterization mink_rank_characterization(const Matrix& a,
                                                const Tolerance& tol = {});

struct BcPair {
  Matrix B;
  Matrix C;
};

// B, C for which A^m is the unique solution of the bordered rank equation.
// Y1 is n x r and Y2 is n x (n - r); empty matrices mean zero.
BcPair bc_parameterization(const Matrix& a, const Matrix& y1, const Matrix& y2,
                           const Tolerance& tol = {});

}  // namespace mink
