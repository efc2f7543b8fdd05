#include "mink/dense.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace mink {

void validate(const Tolerance& tol) {
  for (double v : {tol.rank_rtol, tol.eq_atol, tol.eq_rtol}) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
      throw Error(ErrorCode::InvalidArgument,
                  "tolerance fields must be finite and nonnegative");
    }
  }
}

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::NotSquare: return "NotSquare";
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::NonConvergence: return "NonConvergence";
    case ErrorCode::ZeroMatrix: return "ZeroMatrix";
    case ErrorCode::Singular: return "Singular";
    case ErrorCode::IndexNotOne: return "IndexNotOne";
    case ErrorCode::RankMismatch: return "RankMismatch";
    case ErrorCode::NotExistent: return "NotExistent";
    case ErrorCode::NotExistent13m: return "NotExistent13m";
    case ErrorCode::NotExistent14m: return "NotExistent14m";
    case ErrorCode::SingularFactor: return "SingularFactor";
    case ErrorCode::BlockSingular: return "BlockSingular";
    case ErrorCode::SingularParam: return "SingularParam";
    case ErrorCode::InvalidWitness: return "InvalidWitness";
    case ErrorCode::InternalInconsistency: return "InternalInconsistency";
    case ErrorCode::RetryExhausted: return "RetryExhausted";
    case ErrorCode::Parse: return "Parse";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

Matrix identity(Index n) { return Matrix::Identity(n, n); }

Matrix zeros(Index rows, Index cols) { return Matrix::Zero(rows, cols); }

Matrix hstack(const Matrix& left, const Matrix& right) {
  if (left.rows() != right.rows()) {
    throw Error(ErrorCode::ShapeMismatch, "hstack: row counts differ");
  }
  Matrix out(left.rows(), left.cols() + right.cols());
  out << left, right;
  return out;
}

Matrix vstack(const Matrix& top, const Matrix& bottom) {
  if (top.cols() != bottom.cols()) {
    throw Error(ErrorCode::ShapeMismatch, "vstack: column counts differ");
  }
  Matrix out(top.rows() + bottom.rows(), top.cols());
  out << top, bottom;
  return out;
}

double fro(const Matrix& a) { return a.size() == 0 ? 0.0 : a.norm(); }

double relative_gap(const Matrix& a, const Matrix& b, double floor) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(ErrorCode::ShapeMismatch, "relative_gap: shapes differ");
  }
  return fro(a - b) / std::max(fro(b), floor);
}

void require_finite(const Matrix& a, std::string_view what) {
  if (!a.allFinite()) {
    throw Error(ErrorCode::NonFinite,
                std::string(what) + " has NaN or infinite entries");
  }
}

void require_square(const Matrix& a, std::string_view what) {
  if (a.rows() != a.cols()) {
    throw Error(ErrorCode::NotSquare,
                std::string(what) + " is " + std::to_string(a.rows()) + "x" +
                    std::to_string(a.cols()) + ", expected square");
  }
}

Matrix power(const Matrix& m, int p) {
  require_square(m, "power base");
  Matrix out = identity(m.rows());
  for (int i = 0; i < p; ++i) out = out * m;
  return out;
}

Svd svd(const Matrix& a) {
  require_finite(a, "svd input");
  const Index m = a.rows();
  const Index n = a.cols();
  if (m == 0 || n == 0) return {identity(m), RealVector(0), identity(n)};
  Eigen::BDCSVD<Matrix> solver(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::NonConvergence, "SVD did not converge");
  }
  return {solver.matrixU(), solver.singularValues(), solver.matrixV()};
}

double spectral_norm(const Matrix& a) {
  if (a.size() == 0) return 0.0;
  require_finite(a, "norm input");
  return Eigen::BDCSVD<Matrix>(a).singularValues()(0);
}

namespace {

double cutoff_for(const RealVector& s, Index m, Index n, const Tolerance& tol,
                  double reference = 0.0) {
  const double scale = std::max(s.size() == 0 ? 0.0 : s(0), reference);
  if (scale == 0.0) return 0.0;
  return tol.rank_rtol * static_cast<double>(std::max(m, n)) * scale;
}

Index count_above(const RealVector& s, double cutoff) {
  Index r = 0;
  while (r < s.size() && s(r) > cutoff) ++r;
  return r;
}

}  // namespace

RankReport numerical_rank(const Matrix& a, const Tolerance& tol, double reference) {
  require_finite(a, "rank input");
  RankReport report;
  if (a.size() == 0) {
    report.singular_values = RealVector(0);
    return report;
  }
  Eigen::BDCSVD<Matrix> solver(a);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::NonConvergence, "SVD did not converge");
  }
  report.singular_values = solver.singularValues();
  report.cutoff = cutoff_for(report.singular_values, a.rows(), a.cols(), tol, reference);
  report.rank = count_above(report.singular_values, report.cutoff);
  return report;
}

Index rank_of(const Matrix& a, const Tolerance& tol, double reference) {
  return numerical_rank(a, tol, reference).rank;
}

Matrix null_basis(const Matrix& a, const Tolerance& tol) {
  const Svd d = svd(a);
  const Index r = count_above(d.S, cutoff_for(d.S, a.rows(), a.cols(), tol));
  return d.V.rightCols(a.cols() - r);
}

Matrix moore_penrose(const Matrix& a, const Tolerance& tol) {
  const Svd d = svd(a);
  const Index r = count_above(d.S, cutoff_for(d.S, a.rows(), a.cols(), tol));
  const RealVector inv = d.S.head(r).cwiseInverse();
  return d.V.leftCols(r) * inv.asDiagonal() * d.U.leftCols(r).adjoint();
}

Matrix one_inverse_sample(const Matrix& a, const Matrix& w,
                          const Tolerance& tol) {
  if (w.rows() != a.cols() || w.cols() != a.rows()) {
    throw Error(ErrorCode::ShapeMismatch,
                "one_inverse_sample: W must be cols(A) x rows(A)");
  }
  const Matrix pinv = moore_penrose(a, tol);
  return pinv + w - pinv * a * w * a * pinv;
}

Matrix checked_inverse(const Matrix& m, const Tolerance& tol, ErrorCode code,
                       Gate gate) {
  require_square(m, "inverse operand");
  const RankReport rep = numerical_rank(m, tol);
  if (rep.rank < m.rows()) {
    if (gate == Gate::Force) return moore_penrose(m, tol);
    const double smin = rep.singular_values.size() > 0
                            ? rep.singular_values(rep.singular_values.size() - 1)
                            : 0.0;
    const double smax = rep.singular_values.size() > 0 ? rep.singular_values(0) : 0.0;
    const double cond = smin > 0.0 ? smax / smin
                                   : std::numeric_limits<double>::infinity();
    throw Error(code, "numerically singular " + std::to_string(m.rows()) + "x" +
                          std::to_string(m.cols()) + " matrix (rank " +
                          std::to_string(rep.rank) + ", condition estimate " +
                          std::to_string(cond) + ")");
  }
  return m.partialPivLu().inverse();
}

Index index_of(const Matrix& m, const Tolerance& tol, double reference) {
  require_square(m, "index_of input");
  const Index n = m.rows();
  // Powers are judged against ||M||^t, not against their own (possibly
  // rounding-level) size.
  const double base = std::max(spectral_norm(m), reference);
  double scale = base;
  Index prev = n;  // rank(M^0)
  Matrix p = m;
  for (Index t = 0; t <= n; ++t) {
    const Index next = rank_of(p, tol, scale);
    scale *= base;
    if (next == prev) return t;
    prev = next;
    p = p * m;
  }
  return n;
}

Matrix group_inverse(const Matrix& m, const Tolerance& tol) {
  require_square(m, "group_inverse input");
  const double norm = spectral_norm(m);
  const Index r1 = rank_of(m, tol);
  const Index r2 = rank_of(m * m, tol, norm * norm);
  if (r1 != r2) {
    throw Error(ErrorCode::IndexNotOne, "rank(M^2) = " + std::to_string(r2) +
                                            " differs from rank(M) = " +
                                            std::to_string(r1));
  }
  if (r1 == 0) return zeros(m.rows(), m.cols());
  const FullRankFactorization f = full_rank_factorization(m, tol);
  const Matrix core = checked_inverse(f.C * f.B, tol, ErrorCode::IndexNotOne);
  return f.B * core * core * f.C;
}

FullRankFactorization full_rank_factorization(const Matrix& a,
                                              const Tolerance& tol) {
  const Svd d = svd(a);
  const Index r = count_above(d.S, cutoff_for(d.S, a.rows(), a.cols(), tol));
  if (r == 0) throw Error(ErrorCode::ZeroMatrix, "matrix has numerical rank 0");
  FullRankFactorization f;
  f.r = r;
  f.B = d.U.leftCols(r) * d.S.head(r).asDiagonal();
  f.C = d.V.leftCols(r).adjoint();
  return f;
}

Matrix HSDecomposition::reconstruct() const {
  const Index n = U.rows();
  Matrix core = zeros(n, n);
  core.topLeftCorner(r, r) = Sigma.asDiagonal() * K;
  core.topRightCorner(r, n - r) = Sigma.asDiagonal() * L;
  return U * core * U.adjoint();
}

HSDecomposition hs_decomposition(const Matrix& a, const Tolerance& tol) {
  require_square(a, "hs_decomposition input");
  const Svd d = svd(a);
  const Index n = a.rows();
  const Index r = count_above(d.S, cutoff_for(d.S, n, n, tol));
  if (r == 0) throw Error(ErrorCode::ZeroMatrix, "matrix has numerical rank 0");
  // A = W S V^* = W (S V^* W) W^*, and the top r rows of V^* W are orthonormal.
  const Matrix kl = (d.V.adjoint() * d.U).topRows(r);
  HSDecomposition hs;
  hs.r = r;
  hs.U = d.U;
  hs.Sigma = d.S.head(r);
  hs.K = kl.leftCols(r);
  hs.L = kl.rightCols(n - r);
  return hs;
}

Matrix projector_onto_along(const Matrix& a, const Matrix& b,
                            const Tolerance& tol) {
  if (b.cols() != a.rows()) {
    throw Error(ErrorCode::ShapeMismatch,
                "projector_onto_along: B must have rows(A) columns");
  }
  const Matrix ba = b * a;
  const Index ra = rank_of(a, tol);
  const Index rb = rank_of(b, tol);
  const Index rba = rank_of(ba, tol);
  if (ra != rb || ra != rba) {
    throw Error(ErrorCode::RankMismatch,
                "R(A) and N(B) are not complementary: rank(A) = " +
                    std::to_string(ra) + ", rank(B) = " + std::to_string(rb) +
                    ", rank(BA) = " + std::to_string(rba));
  }
  return a * moore_penrose(ba, tol) * b;
}

std::pair<Matrix, Matrix> inv_shift_identity(const Matrix& a, const Matrix& b,
                                             const Tolerance& tol) {
  if (b.rows() != a.cols() || b.cols() != a.rows()) {
    throw Error(ErrorCode::ShapeMismatch,
                "inv_shift_identity: B must be cols(A) x rows(A)");
  }
  const Index m = a.rows();
  const Index n = a.cols();
  const Matrix inner = checked_inverse(identity(n) - b * a, tol);
  const Matrix direct = checked_inverse(identity(m) - a * b, tol);
  return {direct, identity(m) + a * inner * b};
}

}  // namespace mink
