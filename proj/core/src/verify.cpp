#include "mink/verify.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace mink {

double Rng::uniform() {
  return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
}

double Rng::normal() {
  const double u1 = uniform();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

Scalar Rng::complex_normal() {
  const double re = normal();
  const double im = normal();
  return {re * std::numbers::sqrt2 / 2.0, im * std::numbers::sqrt2 / 2.0};
}

Matrix Rng::gaussian(Index rows, Index cols, double scale) {
  Matrix out(rows, cols);
  // Row-major fill so the sequence matches the on-disk entry order.
  for (Index i = 0; i < rows; ++i) {
    for (Index j = 0; j < cols; ++j) out(i, j) = scale * complex_normal();
  }
  return out;
}

std::string_view to_string(GenKind kind) {
  switch (kind) {
    case GenKind::Existent: return "existent";
    case GenKind::NonExistentIsotropic: return "isotropic";
    case GenKind::BlockExistent: return "block";
    case GenKind::Arbitrary: return "arbitrary";
  }
  return "unknown";
}

std::optional<GenKind> parse_gen_kind(std::string_view name) {
  for (GenKind k : {GenKind::Existent, GenKind::NonExistentIsotropic,
                    GenKind::BlockExistent, GenKind::Arbitrary}) {
    if (to_string(k) == name) return k;
  }
  return std::nullopt;
}

void validate(const GenSpec& spec) {
  auto fail = [](const std::string& why) { throw Error(ErrorCode::InvalidArgument, why); };
  if (spec.rows < 1 || spec.cols < 1) fail("rows and cols must be >= 1");
  if (spec.rank < 0 || spec.rank > std::min(spec.rows, spec.cols)) {
    fail("rank must lie in [0, min(rows, cols)]");
  }
  if (!(spec.scale > 0.0) || !std::isfinite(spec.scale)) fail("scale must be positive");
  switch (spec.kind) {
    case GenKind::Existent:
    case GenKind::BlockExistent:
      if (spec.rank < 1) fail(std::string(to_string(spec.kind)) + " requires rank >= 1");
      break;
    case GenKind::NonExistentIsotropic: {
      const Index r = std::max<Index>(spec.rank, 1);
      if (spec.rows < 2) fail("isotropic requires rows >= 2");
      if (r > spec.rows - 1) fail("isotropic requires rank <= rows - 1");
      break;
    }
    case GenKind::Arbitrary:
      break;
  }
}

namespace {

constexpr int kMaxDraws = 100;
constexpr double kMaxGramCondition = 1e3;
constexpr double kMaxCondition = 1e2;
constexpr double kMaxMinkCondition = 1e2;

// rows x r with orthonormal columns scaled by singular values in [0.5, 2].
Matrix controlled(Rng& rng, Index rows, Index r) {
  const Matrix q = rng.gaussian(rows, r).householderQr().householderQ() *
                   Matrix::Identity(rows, r);
  const Matrix w = rng.gaussian(r, r).householderQr().householderQ();
  RealVector s(r);
  for (Index i = 0; i < r; ++i) s(i) = 0.5 + 1.5 * rng.uniform();
  return q * s.asDiagonal() * w;
}

double condition(const Matrix& m) {
  const RealVector s = Eigen::BDCSVD<Matrix>(m).singularValues();
  const double smin = s(s.size() - 1);
  return smin > 0.0 ? s(0) / smin : std::numeric_limits<double>::infinity();
}

// Rejects matrices whose Minkowski inverse exists only barely: the metric
// Grams of the orthonormal range bases, A on its range, and ||A|| ||A^m||
// must all be moderate.
bool well_conditioned(const Matrix& a, Index r, const Tolerance& tol) {
  const Svd d = svd(a);
  if (rank_of(a, tol) != r) return false;
  if (d.S(0) / d.S(r - 1) > kMaxCondition) return false;
  const Matrix ur = d.U.leftCols(r);
  const Matrix vr = d.V.leftCols(r);
  const Matrix gram_u = ur.adjoint() * MinkowskiMetric(a.rows()).left(ur);
  const Matrix gram_v = vr.adjoint() * MinkowskiMetric(a.cols()).left(vr);
  if (condition(gram_u) > kMaxGramCondition || condition(gram_v) > kMaxGramCondition) {
    return false;
  }
  if (!diagnose_existence(a, tol).exists) return false;
  return d.S(0) * spectral_norm(mink_inverse(a, tol)) <= kMaxMinkCondition;
}

Matrix draw_existent(Rng& rng, const GenSpec& spec) {
  return controlled(rng, spec.rows, spec.rank) *
         controlled(rng, spec.cols, spec.rank).adjoint();
}

Matrix draw_isotropic(Rng& rng, const GenSpec& spec) {
  const Index m = spec.rows;
  const Index r = std::max<Index>(spec.rank, 1);
  Matrix b = rng.gaussian(m, r);
  Vector x = Vector::Zero(m);
  x(0) = 1.0;
  x(1) = 1.0;
  Vector fx = x;
  fx(1) = -1.0;
  b.col(0) = x;
  for (Index j = 1; j < r; ++j) {
    const Scalar c = fx.dot(b.col(j)) / fx.squaredNorm();
    b.col(j) -= c * fx;
  }
  return b * rng.gaussian(r, spec.cols);
}

Matrix draw_block(Rng& rng, const GenSpec& spec) {
  const Index r = spec.rank;
  const Index m = spec.rows;
  const Index n = spec.cols;
  const Matrix a1 = controlled(rng, r, r);
  const Matrix a2 = rng.gaussian(r, n - r, 0.5);
  const Matrix a3 = rng.gaussian(m - r, r, 0.5);
  Matrix a(m, n);
  a.topLeftCorner(r, r) = a1;
  a.topRightCorner(r, n - r) = a2;
  a.bottomLeftCorner(m - r, r) = a3;
  a.bottomRightCorner(m - r, n - r) = a3 * a1.partialPivLu().solve(a2);
  return a;
}

}  // namespace

Matrix generate(const GenSpec& spec, const Tolerance& tol) {
  validate(spec);
  validate(tol);
  Rng rng(spec.seed);
  if (spec.kind == GenKind::Arbitrary) {
    if (spec.rank == 0) return zeros(spec.rows, spec.cols);
    return spec.scale * rng.gaussian(spec.rows, spec.rank) *
           rng.gaussian(spec.rank, spec.cols);
  }
  for (int attempt = 0; attempt < kMaxDraws; ++attempt) {
    switch (spec.kind) {
      case GenKind::Existent: {
        const Matrix a = draw_existent(rng, spec);
        if (well_conditioned(a, spec.rank, tol)) {
          return spec.scale * a;
        }
        break;
      }
      case GenKind::BlockExistent: {
        const Matrix a = draw_block(rng, spec);
        if (well_conditioned(a, spec.rank, tol)) {
          return spec.scale * a;
        }
        break;
      }
      case GenKind::NonExistentIsotropic: {
        const Matrix a = draw_isotropic(rng, spec);
        const Index r = std::max<Index>(spec.rank, 1);
        if (rank_of(a, tol) == r && !diagnose_existence(a, tol).exists) {
          return spec.scale * a;
        }
        break;
      }
      case GenKind::Arbitrary:
        break;
    }
  }
  throw Error(ErrorCode::RetryExhausted,
              "no acceptable " + std::string(to_string(spec.kind)) + " matrix in " +
                  std::to_string(kMaxDraws) + " draws");
}

CheckReport check_candidate(const Matrix& a, const Matrix& x, const Tolerance& tol) {
  validate(tol);
  CheckReport rep;
  rep.residuals = defining_residuals(a, x);
  const Matrix as = mink_adjoint(a);
  const Index rx = rank_of(x, tol);
  const Index ras = rank_of(as, tol);
  rep.range_ok = rx == ras && rank_of(hstack(x, as), tol) == ras;
  rep.null_ok = rx == ras && rank_of(vstack(x, as), tol) == ras;
  const Residuals& r = rep.residuals;
  rep.verdict = tol.accepts(r.eq1) && tol.accepts(r.eq2) && tol.accepts(r.eq3m) &&
                tol.accepts(r.eq4m) && rep.range_ok && rep.null_ok;
  return rep;
}

namespace {

struct Runner {
  const Matrix& a;
  const Tolerance& tol;
  Matrix w_zlobec;
  Matrix w1;
  Matrix w2;
  Matrix w_resolvent;
  int k;
  int l;

  InverseComputation run(Algorithm algo, Gate gate) const {
    switch (algo) {
      case Algorithm::FRF: return mink_inverse_frf(a, tol, gate);
      case Algorithm::HS: return mink_inverse_hs(a, tol, gate);
      case Algorithm::Zlobec: return mink_inverse_zlobec(a, k, l, w_zlobec, tol, gate);
      case Algorithm::Zlobec2: return mink_inverse_zlobec2(a, k, l, w1, w2, tol, gate);
      case Algorithm::Group: return mink_inverse_group(a, tol, gate);
      case Algorithm::Resolvent: return mink_inverse_resolvent(a, w_resolvent, tol, gate);
      case Algorithm::Block: return mink_inverse_block(a, rank_of(a, tol), tol, gate);
      case Algorithm::Compose13m14m: return mink_inverse_compose(a, tol, gate);
    }
    throw Error(ErrorCode::InvalidArgument, "unknown algorithm");
  }
};

AlgorithmOutcome attempt(const Runner& runner, Algorithm algo, Gate gate) {
  AlgorithmOutcome out;
  out.algorithm = algo;
  try {
    InverseComputation c = runner.run(algo, gate);
    out.check = check_candidate(runner.a, c.result, runner.tol);
    out.internal_gap = c.internal_gap;
    out.result = std::move(c.result);
  } catch (const Error& e) {
    out.refused = e.code() == ErrorCode::NotExistent;
    out.note = e.what();
  }
  return out;
}

}  // namespace

CrossCheckReport cross_check(const Matrix& a, const Tolerance& tol,
                             const CrossCheckOptions& options) {
  validate(tol);
  CrossCheckReport rep;
  rep.diagnosis = diagnose_existence(a, tol);
  const Index m = a.rows();
  const Index n = a.cols();
  const Index r = rep.diagnosis.rank_A;

  Rng rng(options.seed);
  Runner runner{a,
                tol,
                rng.gaussian(m, n),
                rng.gaussian(m, m),
                rng.gaussian(n, n),
                rng.gaussian(n, m),
                options.k,
                options.l};

  std::vector<Algorithm> algos = {Algorithm::Zlobec, Algorithm::Zlobec2, Algorithm::Group,
                                  Algorithm::Resolvent};
  if (r >= 1) {
    algos.insert(algos.begin(), Algorithm::FRF);
    if (m == n) algos.push_back(Algorithm::HS);
    algos.push_back(Algorithm::Compose13m14m);
    // Non-existent inputs are refused before the block is inspected.
    if (!rep.diagnosis.exists || rank_of(a.topLeftCorner(r, r), tol) == r) {
      algos.push_back(Algorithm::Block);
    }
  }

  if (rep.diagnosis.exists) {
    bool all_pass = true;
    for (Algorithm algo : algos) {
      AlgorithmOutcome out = attempt(runner, algo, Gate::Checked);
      all_pass = all_pass && out.result.has_value() && out.check->verdict;
      rep.outcomes.push_back(std::move(out));
    }
    for (std::size_t i = 0; i < rep.outcomes.size(); ++i) {
      for (std::size_t j = i + 1; j < rep.outcomes.size(); ++j) {
        const auto& xi = rep.outcomes[i].result;
        const auto& xj = rep.outcomes[j].result;
        if (!xi || !xj) continue;
        rep.max_pairwise_gap = std::max(rep.max_pairwise_gap, relative_gap(*xi, *xj));
      }
    }
    rep.ok = all_pass && rep.diagnosis.criteria_agree &&
             rep.max_pairwise_gap <= options.gap_tol;
    return rep;
  }

  bool all_refuse = true;
  for (Algorithm algo : algos) {
    AlgorithmOutcome out = attempt(runner, algo, Gate::Checked);
    all_refuse = all_refuse && out.refused;
    rep.outcomes.push_back(std::move(out));
  }
  bool all_break = true;
  if (options.force) {
    for (Algorithm algo : algos) {
      AlgorithmOutcome out = attempt(runner, algo, Gate::Force);
      // A forced formula either throws or yields a matrix the oracle rejects.
      all_break = all_break && (!out.result || !out.check->verdict);
      rep.forced.push_back(std::move(out));
    }
  }
  rep.ok = all_refuse && all_break && rep.diagnosis.criteria_agree;
  return rep;
}

}  // namespace mink
