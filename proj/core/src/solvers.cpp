#include "mink/solvers.hpp"

#include <string>

#include "mink/minkowski.hpp"

namespace mink {

namespace {

void expect_shape(const Matrix& m, Index rows, Index cols, std::string_view what) {
  if (m.rows() != rows || m.cols() != cols) {
    throw Error(ErrorCode::ShapeMismatch, std::string(what) + " must be " +
                                              std::to_string(rows) + "x" +
                                              std::to_string(cols));
  }
}

Matrix or_zero(const Matrix& m, Index rows, Index cols, std::string_view what) {
  if (m.size() == 0) return zeros(rows, cols);
  expect_shape(m, rows, cols, what);
  return m;
}

// A = P [[I_r, 0], [0, 0]] Q with P = U diag(s_1..s_r, 1, ..., 1), Q = V^*.
struct Equivalence {
  Matrix P;
  Matrix Q;
  Index r = 0;
};

Equivalence equivalence_form(const Matrix& a, const Tolerance& tol) {
  const Svd d = svd(a);
  const Index r = rank_of(a, tol);
  RealVector scale = RealVector::Ones(a.rows());
  scale.head(r) = d.S.head(r);
  return {d.U * scale.asDiagonal(), d.V.adjoint(), r};
}

}  // namespace

Matrix GeneralSolution::produce(const Matrix& y, const Matrix& z) const {
  expect_shape(y, particular.rows(), particular.cols(), "Y");
  expect_shape(z, particular.rows(), particular.cols(), "Z");
  return particular + left_free * y + z * right_free;
}

std::optional<GeneralSolution> solve_axb_d(const Matrix& a, const Matrix& b,
                                           const Matrix& d, const Matrix& wa,
                                           const Matrix& wb, const Tolerance& tol) {
  validate(tol);
  if (d.rows() != a.rows() || d.cols() != b.cols()) {
    throw Error(ErrorCode::ShapeMismatch, "AXB = D: D must be rows(A) x cols(B)");
  }
  const Matrix a1 = one_inverse_sample(a, wa, tol);
  const Matrix b1 = one_inverse_sample(b, wb, tol);
  const Matrix reproduced = a * a1 * d * b1 * b;
  if (!tol.accepts(fro(reproduced - d), fro(d))) return std::nullopt;
  GeneralSolution s;
  s.particular = a1 * d * b1;
  s.left_free = identity(a.cols()) - a1 * a;
  s.right_free = identity(b.rows()) - b * b1;
  return s;
}

XaySolution solve_xay_b(const Matrix& a, const Matrix& b, const Matrix& x1,
                        const XayFreeParams& free, const Tolerance& tol) {
  validate(tol);
  const Equivalence ea = equivalence_form(a, tol);
  const Equivalence eb = equivalence_form(b, tol);
  if (ea.r != eb.r) {
    throw Error(ErrorCode::RankMismatch, "rank(A) = " + std::to_string(ea.r) +
                                             " but rank(B) = " + std::to_string(eb.r));
  }
  const Index r = ea.r;
  const Index m = a.rows();
  const Index n = a.cols();
  const Index l = b.rows();
  const Index h = b.cols();
  expect_shape(x1, r, r, "X1");
  const Matrix x1_inv = checked_inverse(x1, tol, ErrorCode::SingularParam);

  Matrix xcore = zeros(l, m);
  xcore.topLeftCorner(r, r) = x1;
  xcore.topRightCorner(r, m - r) = or_zero(free.X2, r, m - r, "X2");
  xcore.bottomRightCorner(l - r, m - r) = or_zero(free.X4, l - r, m - r, "X4");

  Matrix ycore = zeros(n, h);
  ycore.topLeftCorner(r, r) = x1_inv;
  ycore.bottomLeftCorner(n - r, r) = or_zero(free.Y3, n - r, r, "Y3");
  ycore.bottomRightCorner(n - r, h - r) = or_zero(free.Y4, n - r, h - r, "Y4");

  XaySolution s;
  s.X = eb.P * xcore * ea.P.partialPivLu().inverse();
  s.Y = ea.Q.adjoint() * ycore * eb.Q;
  return s;
}

Index bordered_rank(const Matrix& a, const Matrix& b, const Matrix& c, const Matrix& x,
                    const Tolerance& tol) {
  return rank_of(vstack(hstack(a, b), hstack(c, x)), tol);
}

std::optional<Matrix> rank_equation_solve(const RankEquationInstance& inst,
                                          const Tolerance& tol) {
  validate(tol);
  const Index m = inst.A.rows();
  const Index n = inst.A.cols();
  expect_shape(inst.B, m, m, "B");
  expect_shape(inst.C, n, n, "C");
  const Index ra = rank_of(inst.A, tol);
  if (rank_of(hstack(inst.A, inst.B), tol) != ra) return std::nullopt;
  if (rank_of(hstack(inst.A.adjoint(), inst.C.adjoint()), tol) != ra) return std::nullopt;
  Matrix x = inst.C * moore_penrose(inst.A, tol) * inst.B;
  const Index br = bordered_rank(inst.A, inst.B, inst.C, x, tol);
  if (br != ra) {
    throw Error(ErrorCode::InternalInconsistency,
                "bordered rank " + std::to_string(br) + " differs from rank(A) = " +
                    std::to_string(ra));
  }
  return x;
}

RankCharacterization mink_rank_characterization(const Matrix& a, const Tolerance& tol) {
  const Matrix am = mink_inverse(a, tol);
  const Index m = a.rows();
  const Index n = a.cols();
  RankCharacterization rc;
  rc.Z = am;
  rc.X = identity(n) - am * a;
  rc.Y = identity(m) - a * am;
  rc.rank_A = rank_of(a, tol);

  const double sa = std::max(1.0, fro(a));
  rc.x_annihilates = fro(a * rc.X) / sa;
  rc.x_self_adjoint = fro(mink_adjoint(rc.X) - rc.X) / std::max(1.0, fro(rc.X));
  rc.x_idempotent = fro(rc.X * rc.X - rc.X) / std::max(1.0, fro(rc.X));
  rc.x_rank_ok = rank_of(rc.X, tol) == n - rc.rank_A;
  rc.y_annihilates = fro(rc.Y * a) / sa;
  rc.y_self_adjoint = fro(mink_adjoint(rc.Y) - rc.Y) / std::max(1.0, fro(rc.Y));
  rc.y_idempotent = fro(rc.Y * rc.Y - rc.Y) / std::max(1.0, fro(rc.Y));
  rc.y_rank_ok = rank_of(rc.Y, tol) == m - rc.rank_A;

  rc.bordered_rank = bordered_rank(a, identity(m) - rc.Y, identity(n) - rc.X, rc.Z, tol);
  return rc;
}

BcPair bc_parameterization(const Matrix& a, const Matrix& y1, const Matrix& y2,
                           const Tolerance& tol) {
  require_square(a, "A");
  const ExistenceDiagnosis diag = diagnose_existence(a, tol);
  if (!diag.exists) throw Error(ErrorCode::NotExistent, "Minkowski inverse does not exist");

  const HSDecomposition hs = hs_decomposition(a, tol);
  const Index n = a.rows();
  const Index r = hs.r;
  const MinkowskiMetric g(n);
  const Matrix y1v = or_zero(y1, n, r, "Y1");
  const Matrix y2v = or_zero(y2, n, n - r, "Y2");

  const Matrix kl = hstack(hs.K, hs.L);                 // r x n
  const Matrix ugu = hs.U.adjoint() * g.left(hs.U);
  const Matrix g1 = ugu.topLeftCorner(r, r);
  const Matrix delta = kl * ugu * kl.adjoint();
  const Matrix sigma_kl = hs.Sigma.asDiagonal() * kl;   // [Sigma K, Sigma L]
  // (G1 Sigma Delta)^{-1}
  const Matrix core_inv = checked_inverse(g1 * hs.Sigma.asDiagonal() * delta, tol,
                                          ErrorCode::InternalInconsistency);

  // J1 = K^*, J3 = L^*: then R(T) = R([K^*; L^*]), so N(T^*) = N([K L]).
  const Matrix j = kl.adjoint();                        // n x r
  const Matrix t = j * sigma_kl;                        // n x n
  const Matrix t1 = moore_penrose(t, tol);
  const Matrix free_proj = identity(n) - t1 * t;
  const Matrix h13 = t1 * (kl.adjoint() * core_inv) + free_proj * y1v;  // n x r
  const Matrix h24 = free_proj * y2v;                                  // n x (n - r)

  Matrix bcore = zeros(n, n);
  bcore.topLeftCorner(r, r) = sigma_kl * h13;
  bcore.topRightCorner(r, n - r) = sigma_kl * h24;

  BcPair out;
  out.B = g.right(hs.U * bcore * hs.U.adjoint());
  out.C = g.left(hs.U * t * hs.U.adjoint());
  return out;
}

}  // namespace mink
