#pragma once

#include <utility>

#include "mink/types.hpp"

/// Dense complex matrix machinery: SVD, numerical rank, the Moore-Penrose and
/// group inverses, index, full-rank and Hartwig-Spindelböck factorizations,
/// and oblique projectors.
namespace mink {

// ---------------------------------------------------------------------------
// Small helpers

Matrix identity(Index n);
Matrix zeros(Index rows, Index cols);
Matrix hstack(const Matrix& left, const Matrix& right);
Matrix vstack(const Matrix& top, const Matrix& bottom);

// ||A||_F; zero for empty matrices.
double fro(const Matrix& a);

// ||a - b||_F / max(||b||_F, floor). Shapes must agree.
double relative_gap(const Matrix& a, const Matrix& b, double floor = 1.0);

// Throws ErrorCode::NonFinite when any entry is NaN or infinite.
void require_finite(const Matrix& a, std::string_view what = "matrix");

// Throws ErrorCode::NotSquare unless a is square.
void require_square(const Matrix& a, std::string_view what = "matrix");

// M^p for square M, p >= 0.
Matrix power(const Matrix& m, int p);

// ---------------------------------------------------------------------------
// Decompositions

struct Svd {
  Matrix U;        // m x m unitary
  RealVector S;    // min(m, n) singular values, nonincreasing
  Matrix V;        // n x n unitary
};

// Full SVD, A = U * diag(S) * V^*.
Svd svd(const Matrix& a);

struct RankReport {
  Index rank = 0;
  RealVector singular_values;
  double cutoff = 0.0;
};

// Largest singular value.
double spectral_norm(const Matrix& a);

// rank = #{sigma_i > cutoff}, cutoff = rank_rtol * max(m, n) * max(sigma_max,
// reference). A product such as A~A whose exact value is zero computes as
// rounding noise; passing ||A||^2 as the reference keeps that noise at rank 0.
RankReport numerical_rank(const Matrix& a, const Tolerance& tol = {},
                          double reference = 0.0);

// Shorthand for numerical_rank(a, tol, reference).rank.
Index rank_of(const Matrix& a, const Tolerance& tol = {}, double reference = 0.0);

// Orthonormal basis of N(A) (n x (n - rank)).
Matrix null_basis(const Matrix& a, const Tolerance& tol = {});

Matrix moore_penrose(const Matrix& a, const Tolerance& tol = {});

// G = A^+ + W - A^+ A W A A^+. For every n x m W this satisfies AGA = A, and
// as W ranges over all n x m matrices G ranges over all of A{1}.
Matrix one_inverse_sample(const Matrix& a, const Matrix& w,
                          const Tolerance& tol = {});

// Inverse of a square matrix that must be numerically nonsingular. On a
// numerically singular input throws `code`, or returns the Moore-Penrose
// inverse when gate == Gate::Force.
Matrix checked_inverse(const Matrix& m, const Tolerance& tol,
                       ErrorCode code = ErrorCode::Singular,
                       Gate gate = Gate::Checked);

// Smallest t with rank(M^{t+1}) = rank(M^t).
// Rank of M^t is taken relative to max(||M||, reference)^t.
Index index_of(const Matrix& m, const Tolerance& tol = {}, double reference = 0.0);

// M^# = F (GF)^{-2} G for M = FG a full-rank factorization. Requires
// Ind(M) <= 1; the zero matrix maps to zero.
Matrix group_inverse(const Matrix& m, const Tolerance& tol = {});

struct FullRankFactorization {
  Matrix B;   // m x r, full column rank
  Matrix C;   // r x n, full row rank
  Index r = 0;
};

// B = U_r Sigma_r, C = V_r^* from the compact SVD.
FullRankFactorization full_rank_factorization(const Matrix& a,
                                              const Tolerance& tol = {});

// A = U [[Sigma K, Sigma L], [0, 0]] U^*, KK^* + LL^* = I_r.
struct HSDecomposition {
  Matrix U;          // n x n unitary
  RealVector Sigma;  // r positive singular values, nonincreasing
  Matrix K;          // r x r
  Matrix L;          // r x (n - r)
  Index r = 0;

  // U [[Sigma K, Sigma L], [0, 0]] U^*.
  [[nodiscard]] Matrix reconstruct() const;
};

HSDecomposition hs_decomposition(const Matrix& a, const Tolerance& tol = {});

// P_{R(A), N(B)} = A (BA)^+ B. Requires rank(BA) = rank(A) = rank(B) so that
// R(A) and N(B) are complementary.
Matrix projector_onto_along(const Matrix& a, const Matrix& b,
                            const Tolerance& tol = {});

// ((I - AB)^{-1} computed directly, I + A (I - BA)^{-1} B).
std::pair<Matrix, Matrix> inv_shift_identity(const Matrix& a, const Matrix& b,
                                             const Tolerance& tol = {});

}  // namespace mink
