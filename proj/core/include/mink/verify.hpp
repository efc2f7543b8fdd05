#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "mink/minkowski.hpp"

namespace mink {

// Portable seeded source of complex Gaussians.
//
// Engine: std::mt19937_64, whose output sequence is fixed by the C++
// standard. Uniforms: u = ((x >> 11) + 0.5) * 2^-53, in (0, 1). Normals:
// Box-Muller, z = sqrt(-2 ln u1) * cos(2 pi u2), one normal per pair of
// draws. A complex entry takes two normals (real part first), each scaled by
// 1/sqrt(2). No std:: distribution is used, so sequences reproduce across
// standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform();
  double normal();
  Scalar complex_normal();
  Matrix gaussian(Index rows, Index cols, double scale = 1.0);

 private:
  std::mt19937_64 engine_;
};

enum class GenKind { Existent, NonExistentIsotropic, BlockExistent, Arbitrary };

std::string_view to_string(GenKind kind);
std::optional<GenKind> parse_gen_kind(std::string_view name);

struct GenSpec {
  Index rows = 1;
  Index cols = 1;
  Index rank = 1;
  GenKind kind = GenKind::Existent;
  std::uint64_t seed = 0;
  double scale = 1.0;
};

// Throws ErrorCode::InvalidArgument for specs no generator can satisfy.
void validate(const GenSpec& spec);

// Existent: B C with B m x r, C r x n whose Minkowski Grams B~B and CC~ are
//   nonsingular and well conditioned.
// NonExistentIsotropic: [x, b_2..b_r] C with x = (1, 1, 0, ...)^T isotropic
//   and every b_j F-orthogonal to x, so B~B is singular and rank(A~A) < r.
//   A requested rank of 0 is read as 1.
// BlockExistent: [[A1, A2], [A3, A3 A1^{-1} A2]] with A1 r x r nonsingular.
// Arbitrary: Gaussian factors of the given rank, no conditioning control.
// Throws ErrorCode::RetryExhausted after 100 rejected draws.
Matrix generate(const GenSpec& spec, const Tolerance& tol = {});

struct CheckReport {
  Residuals residuals;
  bool range_ok = false;  // R(X) = R(A~)
  bool null_ok = false;   // N(X) = N(A~)
  bool verdict = false;
};

CheckReport check_candidate(const Matrix& a, const Matrix& x, const Tolerance& tol = {});

struct AlgorithmOutcome {
  Algorithm algorithm = Algorithm::FRF;
  bool refused = false;             // threw NotExistent (or an equivalent gate)
  std::optional<Matrix> result;
  std::optional<CheckReport> check;
  double internal_gap = 0.0;
  std::string note;                 // error text when the algorithm threw
};

struct CrossCheckOptions {
  std::uint64_t seed = 0;  // draws the free {1}-inverse parameters
  int k = 0;
  int l = 0;
  bool force = false;      // on non-existent inputs, also run formulas forced
  double gap_tol = 1e-8;   // pairwise relative Frobenius agreement
};

struct CrossCheckReport {
  ExistenceDiagnosis diagnosis;
  std::vector<AlgorithmOutcome> outcomes;
  // Forced evaluations on non-existent inputs (empty unless options.force).
  std::vector<AlgorithmOutcome> forced;
  double max_pairwise_gap = 0.0;
  bool ok = false;
};

CrossCheckReport cross_check(const Matrix& a, const Tolerance& tol = {},
                             const CrossCheckOptions& options = {});

}  // namespace mink
