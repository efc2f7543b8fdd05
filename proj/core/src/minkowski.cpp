#include "mink/minkowski.hpp"

#include <algorithm>
#include <array>
#include <string>

namespace mink {

MinkowskiMetric::MinkowskiMetric(Index order) : order_(order) {
  if (order < 1) throw Error(ErrorCode::InvalidArgument, "metric order must be >= 1");
}

Matrix MinkowskiMetric::dense() const {
  Matrix g = -identity(order_);
  g(0, 0) = 1.0;
  return g;
}

Matrix MinkowskiMetric::left(const Matrix& a) const {
  if (a.rows() != order_) throw Error(ErrorCode::ShapeMismatch, "G * A: row count");
  Matrix out = a;
  out.bottomRows(order_ - 1) *= -1.0;
  return out;
}

Matrix MinkowskiMetric::right(const Matrix& a) const {
  if (a.cols() != order_) throw Error(ErrorCode::ShapeMismatch, "A * G: column count");
  Matrix out = a;
  out.rightCols(order_ - 1) *= -1.0;
  return out;
}

Matrix mink_adjoint(const Matrix& a) {
  Matrix out = a.adjoint();
  // Entry (i, j) of G A^* F carries sign s_i s_j with s_0 = 1 and s_k = -1
  // otherwise, so only the first row and first column (off the corner) flip.
  if (out.rows() > 1 && out.cols() > 0) out.bottomLeftCorner(out.rows() - 1, 1) *= -1.0;
  if (out.cols() > 1 && out.rows() > 0) out.topRightCorner(1, out.cols() - 1) *= -1.0;
  return out;
}

ExistenceDiagnosis diagnose_existence(const Matrix& a, const Tolerance& tol) {
  require_finite(a, "A");
  const Index m = a.rows();
  const Index n = a.cols();
  const Matrix as = mink_adjoint(a);
  const Matrix aas = a * as;
  const Matrix asa = as * a;

  // Every product is ranked against the matching power of ||A||.
  const double s1 = spectral_norm(a);
  const double s2 = s1 * s1;

  ExistenceDiagnosis d;
  d.rank_A = rank_of(a, tol);
  d.rank_AAs = rank_of(aas, tol, s2);
  d.rank_AsA = rank_of(asa, tol, s2);
  d.rank_AsAAs = rank_of(as * aas, tol, s2 * s1);
  d.ind_AAs = index_of(aas, tol, s2);
  d.ind_AsA = index_of(asa, tol, s2);

  d.rank_equality = d.rank_AAs == d.rank_A && d.rank_AsA == d.rank_A;
  d.triple_rank = d.rank_AsAAs == d.rank_A;

  // A R(A~) = R(AA~); the sum with N(A~) is direct and fills C^m exactly when
  // the concatenated bases have full row rank m.
  const Matrix kernel = null_basis(as, tol);
  d.direct_sum = d.rank_AAs + kernel.cols() == m &&
                 rank_of(hstack(aas, kernel), tol, std::max(s2, 1.0)) == m;

  // N(A~A) contains N(A) always, so inclusion the other way is rank equality.
  d.index_AsA = d.ind_AsA <= 1 && d.rank_AsA == d.rank_A;
  d.index_AAs = d.ind_AAs <= 1 && rank_of(hstack(aas, a), tol, std::max(s2, s1)) == d.rank_AAs;

  const Matrix shifted = asa + identity(n) - moore_penrose(a, tol) * a;
  d.resolvent_nonsingular = rank_of(shifted, tol, std::max(s2, 1.0)) == n;
  d.resolvent = d.resolvent_nonsingular;

  d.exists = d.rank_equality;
  const std::array<bool, 5> others = {d.triple_rank, d.direct_sum, d.index_AsA,
                                      d.index_AAs, d.resolvent};
  d.criteria_agree = std::all_of(others.begin(), others.end(),
                                 [&](bool v) { return v == d.exists; });
  return d;
}

std::string_view to_string(Algorithm algo) {
  switch (algo) {
    case Algorithm::FRF: return "frf";
    case Algorithm::HS: return "hs";
    case Algorithm::Zlobec: return "zlobec";
    case Algorithm::Zlobec2: return "zlobec2";
    case Algorithm::Group: return "group";
    case Algorithm::Resolvent: return "resolvent";
    case Algorithm::Block: return "block";
    case Algorithm::Compose13m14m: return "compose";
  }
  return "unknown";
}

std::optional<Algorithm> parse_algorithm(std::string_view name) {
  for (Algorithm a : {Algorithm::FRF, Algorithm::HS, Algorithm::Zlobec,
                      Algorithm::Zlobec2, Algorithm::Group, Algorithm::Resolvent,
                      Algorithm::Block, Algorithm::Compose13m14m}) {
    if (to_string(a) == name) return a;
  }
  return std::nullopt;
}

double Residuals::max() const { return std::max({eq1, eq2, eq3m, eq4m}); }

namespace {

constexpr double kTiny = 1e-300;

double rel(const Matrix& diff, double scale) {
  return fro(diff) / std::max(scale, kTiny);
}

}  // namespace

Residuals defining_residuals(const Matrix& a, const Matrix& x) {
  if (x.rows() != a.cols() || x.cols() != a.rows()) {
    throw Error(ErrorCode::ShapeMismatch, "candidate must be cols(A) x rows(A)");
  }
  const Matrix ax = a * x;
  const Matrix xa = x * a;
  Residuals r;
  r.eq1 = rel(ax * a - a, fro(a));
  r.eq2 = rel(x * ax - x, fro(x));
  r.eq3m = rel(mink_adjoint(ax) - ax, std::max(1.0, fro(ax)));
  r.eq4m = rel(mink_adjoint(xa) - xa, std::max(1.0, fro(xa)));
  return r;
}

namespace {

void gate_existence(const Matrix& a, const Tolerance& tol, Gate gate) {
  validate(tol);
  if (gate == Gate::Force) {
    require_finite(a, "A");
    return;
  }
  const ExistenceDiagnosis d = diagnose_existence(a, tol);
  if (!d.exists) {
    throw Error(ErrorCode::NotExistent,
                "Minkowski inverse does not exist: rank(A) = " +
                    std::to_string(d.rank_A) + ", rank(AA~) = " +
                    std::to_string(d.rank_AAs) + ", rank(A~A) = " +
                    std::to_string(d.rank_AsA));
  }
}

InverseComputation package(Algorithm algo, const Matrix& a, Matrix x,
                           double gap = 0.0) {
  InverseComputation c;
  c.algorithm = algo;
  c.residuals = defining_residuals(a, x);
  c.result = std::move(x);
  c.internal_gap = gap;
  return c;
}

void require_shape(const Matrix& m, Index rows, Index cols, std::string_view what) {
  if (m.rows() != rows || m.cols() != cols) {
    throw Error(ErrorCode::ShapeMismatch,
                std::string(what) + " must be " + std::to_string(rows) + "x" +
                    std::to_string(cols));
  }
}

}  // namespace

InverseComputation mink_inverse_frf(const Matrix& a, const Tolerance& tol, Gate gate) {
  gate_existence(a, tol, gate);
  const FullRankFactorization f = full_rank_factorization(a, tol);
  const Matrix cs = mink_adjoint(f.C);
  const Matrix bs = mink_adjoint(f.B);
  const Matrix right = checked_inverse(f.C * cs, tol, ErrorCode::SingularFactor, gate);
  const Matrix left = checked_inverse(bs * f.B, tol, ErrorCode::SingularFactor, gate);
  return package(Algorithm::FRF, a, cs * right * left * bs);
}

InverseComputation mink_inverse_hs(const Matrix& a, const Tolerance& tol, Gate gate) {
  require_square(a, "A");
  gate_existence(a, tol, gate);
  const HSDecomposition hs = hs_decomposition(a, tol);
  const Index n = a.rows();
  const Index r = hs.r;
  const MinkowskiMetric g(n);

  const Matrix ugu = hs.U.adjoint() * g.left(hs.U);
  const Matrix g1 = ugu.topLeftCorner(r, r);
  const Matrix g2 = ugu.topRightCorner(r, n - r);
  const Matrix g3 = ugu.bottomLeftCorner(n - r, r);
  const Matrix g4 = ugu.bottomRightCorner(n - r, n - r);
  const Matrix kl = hstack(hs.K, hs.L);
  const Matrix delta = kl * ugu * kl.adjoint();

  // Nonsingularity of G1 and Delta is equivalent to rank(A~A) = rank(A) and
  // rank(AA~) = rank(A) respectively.
  const ErrorCode singular = gate == Gate::Force ? ErrorCode::Singular
                                                 : ErrorCode::NotExistent;
  const Matrix g1_inv = checked_inverse(g1, tol, singular, gate);
  const Matrix delta_inv = checked_inverse(delta, tol, singular, gate);
  const RealVector sigma_inv_v = hs.Sigma.cwiseInverse();
  const auto sigma_inv = sigma_inv_v.asDiagonal();

  // (G1 Sigma Delta)^{-1} and (Sigma Delta)^{-1}
  const Matrix m1 = delta_inv * sigma_inv * g1_inv;
  const Matrix m2 = delta_inv * sigma_inv;

  Matrix core = zeros(n, n);
  core.topLeftCorner(r, r) = hs.K.adjoint() * m1;
  core.bottomLeftCorner(n - r, r) = hs.L.adjoint() * m1;
  const Matrix compact = g.right(g.left(hs.U * core * hs.U.adjoint()));

  const Matrix top = g1 * hs.K.adjoint() + g2 * hs.L.adjoint();
  const Matrix bottom = g3 * hs.K.adjoint() + g4 * hs.L.adjoint();
  Matrix expanded_core(n, n);
  expanded_core.topLeftCorner(r, r) = top * m2;
  expanded_core.topRightCorner(r, n - r) = top * m1 * g2;
  expanded_core.bottomLeftCorner(n - r, r) = bottom * m2;
  expanded_core.bottomRightCorner(n - r, n - r) = bottom * m1 * g2;
  const Matrix expanded = hs.U * expanded_core * hs.U.adjoint();

  return package(Algorithm::HS, a, compact, relative_gap(expanded, compact));
}

InverseComputation mink_inverse_zlobec(const Matrix& a, int k, int l, const Matrix& w,
                                       const Tolerance& tol, Gate gate) {
  if (k < 0 || l < 0) throw Error(ErrorCode::InvalidArgument, "k and l must be >= 0");
  require_shape(w, a.rows(), a.cols(), "W");
  gate_existence(a, tol, gate);
  const Matrix as = mink_adjoint(a);
  const Matrix asa = as * a;
  const Matrix left = power(asa, k) * as;
  const Matrix right = power(asa, l) * as;
  const Matrix inner = power(asa, k + l + 1) * as;
  return package(Algorithm::Zlobec, a, left * one_inverse_sample(inner, w, tol) * right);
}

InverseComputation mink_inverse_zlobec2(const Matrix& a, int k, int l, const Matrix& w1,
                                        const Matrix& w2, const Tolerance& tol,
                                        Gate gate) {
  if (k < 0 || l < 0) throw Error(ErrorCode::InvalidArgument, "k and l must be >= 0");
  require_shape(w1, a.rows(), a.rows(), "W1");
  require_shape(w2, a.cols(), a.cols(), "W2");
  gate_existence(a, tol, gate);
  const Matrix as = mink_adjoint(a);
  const Matrix asa = as * a;
  const Matrix aas = a * as;
  const Matrix outer_inv = one_inverse_sample(power(aas, k + 1), w1, tol);
  const Matrix inner_inv = one_inverse_sample(power(asa, l + 1), w2, tol);
  const Matrix x = power(asa, k) * as * outer_inv * a * inner_inv * power(asa, l) * as;
  return package(Algorithm::Zlobec2, a, x);
}

InverseComputation mink_inverse_group(const Matrix& a, const Tolerance& tol, Gate gate) {
  gate_existence(a, tol, gate);
  const Matrix as = mink_adjoint(a);
  Matrix first;
  Matrix second;
  try {
    first = group_inverse(as * a, tol) * as;
    second = as * group_inverse(a * as, tol);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::IndexNotOne && gate == Gate::Checked) {
      throw Error(ErrorCode::InternalInconsistency,
                  std::string("existence diagnosed but ") + e.what());
    }
    throw;
  }
  return package(Algorithm::Group, a, first, relative_gap(second, first));
}

InverseComputation mink_inverse_resolvent(const Matrix& a, const Matrix& w,
                                          const Tolerance& tol, Gate gate) {
  require_shape(w, a.cols(), a.rows(), "W");
  gate_existence(a, tol, gate);
  const Index m = a.rows();
  const Index n = a.cols();
  const Matrix as = mink_adjoint(a);
  const Matrix a1 = one_inverse_sample(a, w, tol);
  const ErrorCode code = gate == Gate::Force ? ErrorCode::Singular
                                             : ErrorCode::InternalInconsistency;
  const Matrix right_shift = checked_inverse(as * a + identity(n) - a1 * a, tol, code, gate);
  const Matrix left_shift = checked_inverse(a * as + identity(m) - a * a1, tol, code, gate);
  const Matrix x = mink_adjoint(a * right_shift);
  const Matrix dual = mink_adjoint(left_shift * a);
  return package(Algorithm::Resolvent, a, x, relative_gap(dual, x));
}

InverseComputation mink_inverse_block(const Matrix& a, Index r, const Tolerance& tol,
                                      Gate gate) {
  if (r < 1 || r > std::min(a.rows(), a.cols())) {
    throw Error(ErrorCode::InvalidArgument, "block size r must be in [1, min(m, n)]");
  }
  gate_existence(a, tol, gate);
  const Matrix a1 = a.topLeftCorner(r, r);
  if (rank_of(a1, tol) < r) {
    throw Error(ErrorCode::BlockSingular, "leading " + std::to_string(r) + "x" +
                                              std::to_string(r) +
                                              " block is numerically singular");
  }
  const Index rank = rank_of(a, tol);
  if (rank != r && gate == Gate::Checked) {
    throw Error(ErrorCode::RankMismatch, "rank(A) = " + std::to_string(rank) +
                                             " but block size is " + std::to_string(r));
  }
  const Matrix row_block_adj = mink_adjoint(a.topRows(r));   // (A1 A2)~, n x r
  const Matrix col_block_adj = mink_adjoint(a.leftCols(r));  // (A1; A3)~, r x m
  const Matrix core = checked_inverse(col_block_adj * a * row_block_adj, tol,
                                      ErrorCode::InternalInconsistency, gate);
  return package(Algorithm::Block, a, row_block_adj * core * col_block_adj);
}

namespace {

Matrix base_one_three_m(const FullRankFactorization& f,
                        const Tolerance& tol) {
  const Matrix bs = mink_adjoint(f.B);
  const Matrix left = checked_inverse(bs * f.B, tol, ErrorCode::NotExistent13m);
  return moore_penrose(f.C, tol) * left * bs;
}

Matrix base_one_four_m(const FullRankFactorization& f,
                       const Tolerance& tol) {
  const Matrix cs = mink_adjoint(f.C);
  const Matrix right = checked_inverse(f.C * cs, tol, ErrorCode::NotExistent14m);
  return cs * right * moore_penrose(f.B, tol);
}

}  // namespace

Matrix one_three_m(const Matrix& a, const Matrix& y, const Tolerance& tol) {
  require_shape(y, a.cols(), a.rows(), "Y");
  validate(tol);
  const Index ra = rank_of(a, tol);
  const Index rasa = rank_of(mink_adjoint(a) * a, tol);
  if (ra == 0 || ra != rasa) {
    throw Error(ErrorCode::NotExistent13m, "rank(A~A) = " + std::to_string(rasa) +
                                               ", rank(A) = " + std::to_string(ra));
  }
  const Matrix base = base_one_three_m(full_rank_factorization(a, tol), tol);
  return base + (identity(a.cols()) - base * a) * y;
}

Matrix one_four_m(const Matrix& a, const Matrix& z, const Tolerance& tol) {
  require_shape(z, a.cols(), a.rows(), "Z");
  validate(tol);
  const Index ra = rank_of(a, tol);
  const Index raas = rank_of(a * mink_adjoint(a), tol);
  if (ra == 0 || ra != raas) {
    throw Error(ErrorCode::NotExistent14m, "rank(AA~) = " + std::to_string(raas) +
                                               ", rank(A) = " + std::to_string(ra));
  }
  const Matrix base = base_one_four_m(full_rank_factorization(a, tol), tol);
  return base + z * (identity(a.rows()) - a * base);
}

Matrix compose_13m_14m(const Matrix& a, const Matrix& x13, const Matrix& x14,
                       const Tolerance& tol) {
  require_shape(x13, a.cols(), a.rows(), "X13");
  require_shape(x14, a.cols(), a.rows(), "X14");
  gate_existence(a, tol, Gate::Checked);
  const Residuals r13 = defining_residuals(a, x13);
  const Residuals r14 = defining_residuals(a, x14);
  if (!tol.accepts(r13.eq1) || !tol.accepts(r13.eq3m)) {
    throw Error(ErrorCode::InvalidWitness, "X13 is not a {1,3m}-inverse of A");
  }
  if (!tol.accepts(r14.eq1) || !tol.accepts(r14.eq4m)) {
    throw Error(ErrorCode::InvalidWitness, "X14 is not a {1,4m}-inverse of A");
  }
  return x14 * a * x13;
}

InverseComputation mink_inverse_compose(const Matrix& a, const Tolerance& tol, Gate gate) {
  gate_existence(a, tol, gate);
  const FullRankFactorization f = full_rank_factorization(a, tol);
  if (gate == Gate::Force) {
    // Breakdown demonstration: pseudoinverses stand in for the singular Gram
    // factors and the witnesses are not validated.
    const Matrix bs = mink_adjoint(f.B);
    const Matrix cs = mink_adjoint(f.C);
    const Matrix x13 = moore_penrose(f.C, tol) *
                       checked_inverse(bs * f.B, tol, ErrorCode::Singular, gate) * bs;
    const Matrix x14 = cs * checked_inverse(f.C * cs, tol, ErrorCode::Singular, gate) *
                       moore_penrose(f.B, tol);
    return package(Algorithm::Compose13m14m, a, x14 * a * x13);
  }
  const Matrix x13 = base_one_three_m(f, tol);
  const Matrix x14 = base_one_four_m(f, tol);
  return package(Algorithm::Compose13m14m, a, compose_13m_14m(a, x13, x14, tol));
}

Matrix mink_inverse(const Matrix& a, const Tolerance& tol) {
  gate_existence(a, tol, Gate::Checked);
  if (rank_of(a, tol) == 0) return zeros(a.cols(), a.rows());
  return mink_inverse_frf(a, tol, Gate::Force).result;
}

FactorizationWitnesses factorization_witnesses(const Matrix& a, const Tolerance& tol) {
  gate_existence(a, tol, Gate::Checked);
  const Matrix as = mink_adjoint(a);
  const Matrix triple = a * as * a;
  const Matrix triple_inv = moore_penrose(triple, tol);
  FactorizationWitnesses w;
  w.X = a * triple_inv;
  w.Y = triple_inv * a;
  const double scale = std::max(fro(a), kTiny);
  w.residual_X = fro(w.X * triple - a) / scale;
  w.residual_Y = fro(triple * w.Y - a) / scale;
  w.from_X = mink_adjoint(w.X * a);
  w.from_Y = mink_adjoint(a * w.Y);
  return w;
}

SylvesterWitnesses sylvester_witnesses(const Matrix& a, const Tolerance& tol) {
  const Matrix am = mink_inverse(a, tol);
  const Index m = a.rows();
  const Matrix as = mink_adjoint(a);
  const Matrix aas = a * as;
  const Matrix proj = a * am;
  const Matrix q = aas + identity(m) - proj;
  SylvesterWitnesses w;
  w.Y = identity(m) - proj;
  w.X = proj * checked_inverse(q, tol, ErrorCode::InternalInconsistency) - w.Y;
  w.sylvester = fro(w.X * aas - w.Y * w.X - identity(m));
  w.commute = fro(aas * w.X - w.X * aas);
  w.annihilate = fro(aas * w.Y);
  w.idempotent = fro(w.Y * w.Y - w.Y);
  w.inverse = as * w.X;
  return w;
}

MooreStyleReport moore_style_check(const Matrix& a, const Matrix& x, const Tolerance& tol) {
  require_shape(x, a.cols(), a.rows(), "X");
  validate(tol);
  const Matrix as = mink_adjoint(a);
  MooreStyleReport rep;
  rep.fixes_range = fro(x * a * as - as) / std::max(1.0, fro(as));
  const Matrix kernel = null_basis(as, tol);
  rep.kills_null = kernel.cols() == 0 ? 0.0 : fro(x * kernel) / std::max(1.0, fro(x));
  rep.range_contained = rank_of(hstack(x, as), tol) == rank_of(as, tol);
  rep.verdict = tol.accepts(rep.fixes_range) && tol.accepts(rep.kills_null) &&
                rep.range_contained;
  return rep;
}

BjerhammarWitnesses bjerhammar_witnesses(const Matrix& a, const Matrix& y,
                                         const Matrix& z, const Matrix& yd,
                                         const Matrix& zd, const Tolerance& tol) {
  const Index m = a.rows();
  const Index n = a.cols();
  require_shape(y, m, m, "Y");
  require_shape(z, n, n, "Z");
  require_shape(yd, m, n, "YD");
  require_shape(zd, m, n, "ZD");
  const Matrix am = mink_inverse(a, tol);
  const Matrix as = mink_adjoint(a);
  const Matrix as1 = moore_penrose(as, tol);  // m x n
  const Matrix left_free = identity(m) - as1 * as;
  const Matrix right_free = identity(n) - as * as1;
  BjerhammarWitnesses w;
  w.B = as1 * am + left_free * y;
  w.C = am * as1 + z * right_free;
  w.D = as1 * am * as1 + left_free * yd + zd * right_free;
  const double scale = std::max(1.0, fro(am));
  w.residual_B = fro(as * w.B - am) / scale;
  w.residual_C = fro(w.C * as - am) / scale;
  w.residual_D = fro(as * w.D * as - am) / scale;
  return w;
}

BjerhammarWitnesses bjerhammar_witnesses(const Matrix& a, const Matrix& y,
                                         const Matrix& z, const Tolerance& tol) {
  require_shape(y, a.rows(), a.rows(), "Y");
  require_shape(z, a.cols(), a.cols(), "Z");
  return bjerhammar_witnesses(a, y, z, y * a, a * z, tol);
}

}  // namespace mink
