#include "minkctl/app.hpp"

#include <algorithm>
#include <cstdint>
#include <iomanip>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "mink/matrix_io.hpp"
#include "mink/minkowski.hpp"
#include "mink/verify.hpp"

namespace minkctl {

namespace {

using json = nlohmann::json;
using mink::ErrorCode;
using mink::Matrix;

struct Globals {
  mink::Tolerance tol;
};

struct AdjointArgs {
  std::string input;
  std::string output;
};

struct ExistsArgs {
  std::string input;
  bool as_json = false;
};

struct InverseArgs {
  std::string input;
  std::string output;
  std::string algo = "frf";
  int k = 0;
  int l = 0;
  std::optional<long> r;
  std::uint64_t seed = 0;
  bool force = false;
};

struct CheckArgs {
  std::string input_a;
  std::string input_x;
  bool as_json = false;
};

struct GenArgs {
  std::string output;
  std::string kind = "existent";
  long rows = 0;
  long cols = 0;
  long rank = 1;
  std::uint64_t seed = 0;
  double scale = 1.0;
};

struct CrossArgs {
  std::string input;
  bool as_json = false;
  bool force = false;
  int k = 0;
  int l = 0;
  std::uint64_t seed = 0;
};

int exit_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::Parse:
    case ErrorCode::InvalidArgument:
    case ErrorCode::ShapeMismatch:
    case ErrorCode::NonFinite:
      return kUsage;
    case ErrorCode::Io:
      return kIo;
    case ErrorCode::NotExistent:
    case ErrorCode::NotExistent13m:
    case ErrorCode::NotExistent14m:
      return kNegative;
    case ErrorCode::RetryExhausted:
      return kRetryExhausted;
    default:
      return kPrecondition;
  }
}

std::string fmt(double v) {
  std::ostringstream s;
  s << std::setprecision(3) << std::scientific << v;
  return s.str();
}

json residuals_json(const mink::Residuals& r) {
  return {{"eq1", r.eq1}, {"eq2", r.eq2}, {"eq3m", r.eq3m}, {"eq4m", r.eq4m}};
}

json ranks_json(const mink::ExistenceDiagnosis& d) {
  return {{"rank_A", d.rank_A},     {"rank_AAs", d.rank_AAs}, {"rank_AsA", d.rank_AsA},
          {"rank_AsAAs", d.rank_AsAAs}, {"ind_AAs", d.ind_AAs},   {"ind_AsA", d.ind_AsA}};
}

json criteria_json(const mink::ExistenceDiagnosis& d) {
  return {{"rank_equality", d.rank_equality},
          {"triple_rank", d.triple_rank},
          {"direct_sum", d.direct_sum},
          {"index_AsA", d.index_AsA},
          {"index_AAs", d.index_AAs},
          {"resolvent", d.resolvent},
          {"agree", d.criteria_agree}};
}

void print_residuals(std::ostream& out, const mink::Residuals& r) {
  out << "eq1  " << fmt(r.eq1) << "\n"
      << "eq2  " << fmt(r.eq2) << "\n"
      << "eq3m " << fmt(r.eq3m) << "\n"
      << "eq4m " << fmt(r.eq4m) << "\n";
}

void print_diagnosis(std::ostream& out, const mink::ExistenceDiagnosis& d) {
  out << "exists " << (d.exists ? "true" : "false") << "\n"
      << "rank_A " << d.rank_A << "\n"
      << "rank_AAs " << d.rank_AAs << "\n"
      << "rank_AsA " << d.rank_AsA << "\n"
      << "rank_AsAAs " << d.rank_AsAAs << "\n"
      << "ind_AAs " << d.ind_AAs << "\n"
      << "ind_AsA " << d.ind_AsA << "\n"
      << "criteria_agree " << (d.criteria_agree ? "true" : "false") << "\n";
}

int cmd_adjoint(const Globals&, const AdjointArgs& a, std::ostream&) {
  mink::write_matrix_file(a.output, mink::mink_adjoint(mink::read_matrix_file(a.input)));
  return kOk;
}

int cmd_exists(const Globals& g, const ExistsArgs& a, std::ostream& out) {
  const Matrix m = mink::read_matrix_file(a.input);
  const mink::ExistenceDiagnosis d = mink::diagnose_existence(m, g.tol);
  if (a.as_json) {
    json j = {{"verdict", d.exists},
              {"residuals", json::object()},
              {"ranks", ranks_json(d)},
              {"criteria", criteria_json(d)}};
    out << j.dump(2) << "\n";
  } else {
    print_diagnosis(out, d);
  }
  return d.exists ? kOk : kNegative;
}

mink::InverseComputation compute(const Matrix& m, const InverseArgs& a,
                                 mink::Algorithm algo, const mink::Tolerance& tol) {
  const mink::Gate gate = a.force ? mink::Gate::Force : mink::Gate::Checked;
  if (a.k < 0 || a.l < 0) throw mink::Error(ErrorCode::InvalidArgument, "--k and --l must be >= 0");
  mink::Rng rng(a.seed);
  switch (algo) {
    case mink::Algorithm::FRF: return mink::mink_inverse_frf(m, tol, gate);
    case mink::Algorithm::HS: return mink::mink_inverse_hs(m, tol, gate);
    case mink::Algorithm::Zlobec:
      return mink::mink_inverse_zlobec(m, a.k, a.l, rng.gaussian(m.rows(), m.cols()), tol,
                                       gate);
    case mink::Algorithm::Zlobec2: {
      const Matrix w1 = rng.gaussian(m.rows(), m.rows());
      const Matrix w2 = rng.gaussian(m.cols(), m.cols());
      return mink::mink_inverse_zlobec2(m, a.k, a.l, w1, w2, tol, gate);
    }
    case mink::Algorithm::Group: return mink::mink_inverse_group(m, tol, gate);
    case mink::Algorithm::Resolvent:
      return mink::mink_inverse_resolvent(m, rng.gaussian(m.cols(), m.rows()), tol, gate);
    case mink::Algorithm::Block: {
      const mink::Index r = a.r ? static_cast<mink::Index>(*a.r) : mink::rank_of(m, tol);
      return mink::mink_inverse_block(m, r, tol, gate);
    }
    case mink::Algorithm::Compose13m14m: return mink::mink_inverse_compose(m, tol, gate);
  }
  throw mink::Error(ErrorCode::InvalidArgument, "unknown algorithm");
}

int cmd_inverse(const Globals& g, const InverseArgs& a, std::ostream& out) {
  const auto algo = mink::parse_algorithm(a.algo);
  if (!algo) throw mink::Error(ErrorCode::InvalidArgument, "unknown algorithm '" + a.algo + "'");
  const Matrix m = mink::read_matrix_file(a.input);
  const mink::InverseComputation c = compute(m, a, *algo, g.tol);
  const mink::CheckReport rep = mink::check_candidate(m, c.result, g.tol);
  mink::write_matrix_file(a.output, c.result);
  out << "algorithm " << mink::to_string(c.algorithm) << "\n";
  print_residuals(out, c.residuals);
  out << "internal_gap " << fmt(c.internal_gap) << "\n"
      << "verdict " << (rep.verdict ? "true" : "false") << "\n";
  if (a.force) return kOk;
  return rep.verdict ? kOk : kNegative;
}

int cmd_check(const Globals& g, const CheckArgs& a, std::ostream& out) {
  const Matrix m = mink::read_matrix_file(a.input_a);
  const Matrix x = mink::read_matrix_file(a.input_x);
  if (x.rows() != m.cols() || x.cols() != m.rows()) {
    throw mink::Error(ErrorCode::ShapeMismatch, "X must be cols(A) x rows(A)");
  }
  const mink::CheckReport rep = mink::check_candidate(m, x, g.tol);
  const mink::MooreStyleReport moore = mink::moore_style_check(m, x, g.tol);
  const bool verdict = rep.verdict && moore.verdict;
  if (a.as_json) {
    json j = {{"verdict", verdict},
              {"residuals", residuals_json(rep.residuals)},
              {"ranks", {{"rank_A", mink::rank_of(m, g.tol)}, {"rank_X", mink::rank_of(x, g.tol)}}},
              {"range_ok", rep.range_ok},
              {"null_ok", rep.null_ok},
              {"moore", {{"fixes_range", moore.fixes_range},
                         {"kills_null", moore.kills_null},
                         {"range_contained", moore.range_contained},
                         {"verdict", moore.verdict}}}};
    out << j.dump(2) << "\n";
  } else {
    print_residuals(out, rep.residuals);
    out << "range_ok " << (rep.range_ok ? "true" : "false") << "\n"
        << "null_ok " << (rep.null_ok ? "true" : "false") << "\n"
        << "moore_fixes_range " << fmt(moore.fixes_range) << "\n"
        << "moore_kills_null " << fmt(moore.kills_null) << "\n"
        << "moore_range_contained " << (moore.range_contained ? "true" : "false") << "\n"
        << "verdict " << (verdict ? "true" : "false") << "\n";
  }
  return verdict ? kOk : kNegative;
}

int cmd_gen(const Globals& g, const GenArgs& a, std::ostream& out) {
  const auto kind = mink::parse_gen_kind(a.kind);
  if (!kind) throw mink::Error(ErrorCode::InvalidArgument, "unknown kind '" + a.kind + "'");
  mink::GenSpec spec;
  spec.rows = a.rows;
  spec.cols = a.cols;
  spec.rank = a.rank;
  spec.kind = *kind;
  spec.seed = a.seed;
  spec.scale = a.scale;
  const Matrix m = mink::generate(spec, g.tol);
  mink::write_matrix_file(a.output, m);
  print_diagnosis(out, mink::diagnose_existence(m, g.tol));
  return kOk;
}

int cmd_crosscheck(const Globals& g, const CrossArgs& a, std::ostream& out) {
  const Matrix m = mink::read_matrix_file(a.input);
  mink::CrossCheckOptions opt;
  opt.seed = a.seed;
  opt.k = a.k;
  opt.l = a.l;
  opt.force = a.force;
  const mink::CrossCheckReport rep = mink::cross_check(m, g.tol, opt);
  if (a.as_json) {
    json algos = json::object();
    json residuals = json::object();
    for (const auto& o : rep.outcomes) {
      const std::string name(mink::to_string(o.algorithm));
      algos[name] = {{"refused", o.refused},
                     {"verdict", o.check ? o.check->verdict : false},
                     {"internal_gap", o.internal_gap}};
      if (o.check) residuals[name] = residuals_json(o.check->residuals);
    }
    json forced = json::object();
    for (const auto& o : rep.forced) {
      forced[std::string(mink::to_string(o.algorithm))] = {
          {"threw", !o.result.has_value()},
          {"verdict", o.check ? o.check->verdict : false}};
    }
    json j = {{"verdict", rep.ok},
              {"residuals", residuals},
              {"ranks", ranks_json(rep.diagnosis)},
              {"exists", rep.diagnosis.exists},
              {"max_pairwise_gap", rep.max_pairwise_gap},
              {"algorithms", algos},
              {"forced", forced}};
    out << j.dump(2) << "\n";
  } else {
    out << "exists " << (rep.diagnosis.exists ? "true" : "false") << "\n";
    for (const auto& o : rep.outcomes) {
      out << std::left << std::setw(10) << mink::to_string(o.algorithm) << " ";
      if (o.result) {
        out << "max_residual " << fmt(o.check->residuals.max()) << " verdict "
            << (o.check->verdict ? "true" : "false") << "\n";
      } else {
        out << (o.refused ? "refused" : "failed: " + o.note) << "\n";
      }
    }
    for (const auto& o : rep.forced) {
      out << "forced " << mink::to_string(o.algorithm) << " "
          << (o.result ? (o.check->verdict ? "passes check" : "fails check") : "threw") << "\n";
    }
    out << "max_pairwise_gap " << fmt(rep.max_pairwise_gap) << "\n"
        << "ok " << (rep.ok ? "true" : "false") << "\n";
  }
  return rep.ok ? kOk : kNegative;
}

void add_tolerance_flags(CLI::App& app, Globals& g) {
  app.add_option("--rank-rtol", g.tol.rank_rtol, "relative rank cutoff")->capture_default_str();
  app.add_option("--eq-atol", g.tol.eq_atol, "absolute residual tolerance")->capture_default_str();
  app.add_option("--eq-rtol", g.tol.eq_rtol, "relative residual tolerance")->capture_default_str();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Minkowski inverse toolkit", "minkctl"};
  app.require_subcommand(1);
  Globals g;
  add_tolerance_flags(app, g);

  AdjointArgs adj;
  auto* adjoint = app.add_subcommand("adjoint", "write the Minkowski adjoint of a matrix");
  adjoint->add_option("input", adj.input)->required();
  adjoint->add_option("output", adj.output)->required();

  ExistsArgs ex;
  auto* exists = app.add_subcommand("exists", "diagnose existence of the Minkowski inverse");
  exists->add_option("input", ex.input)->required();
  exists->add_flag("--json", ex.as_json);

  InverseArgs inv;
  auto* inverse = app.add_subcommand("inverse", "compute the Minkowski inverse");
  inverse->add_option("input", inv.input)->required();
  inverse->add_option("output", inv.output)->required();
  inverse->add_option("--algo", inv.algo)
      ->check(CLI::IsMember({"frf", "hs", "zlobec", "zlobec2", "group", "resolvent", "block",
                             "compose"}))
      ->capture_default_str();
  inverse->add_option("--k", inv.k)->check(CLI::NonNegativeNumber);
  inverse->add_option("--l", inv.l)->check(CLI::NonNegativeNumber);
  inverse->add_option("--r", inv.r)->check(CLI::NonNegativeNumber);
  inverse->add_option("--seed", inv.seed);
  inverse->add_flag("--force", inv.force);

  CheckArgs chk;
  auto* check = app.add_subcommand("check", "test whether X is the Minkowski inverse of A");
  check->add_option("A", chk.input_a)->required();
  check->add_option("X", chk.input_x)->required();
  check->add_flag("--json", chk.as_json);

  GenArgs gen;
  auto* gencmd = app.add_subcommand("gen", "generate a test matrix");
  gencmd->add_option("output", gen.output)->required();
  gencmd->add_option("--kind", gen.kind)
      ->check(CLI::IsMember({"existent", "isotropic", "block", "arbitrary"}))
      ->capture_default_str();
  gencmd->add_option("--rows", gen.rows)->required();
  gencmd->add_option("--cols", gen.cols)->required();
  gencmd->add_option("--rank", gen.rank)->capture_default_str();
  gencmd->add_option("--seed", gen.seed);
  gencmd->add_option("--scale", gen.scale)->capture_default_str();

  CrossArgs cx;
  auto* cross = app.add_subcommand("crosscheck", "run every algorithm and compare");
  cross->add_option("input", cx.input)->required();
  cross->add_flag("--json", cx.as_json);
  cross->add_flag("--force", cx.force);
  cross->add_option("--k", cx.k)->check(CLI::NonNegativeNumber);
  cross->add_option("--l", cx.l)->check(CLI::NonNegativeNumber);
  cross->add_option("--seed", cx.seed);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "minkctl: " << e.what() << "\n";
    return kUsage;
  }

  try {
    mink::validate(g.tol);
    if (adjoint->parsed()) return cmd_adjoint(g, adj, out);
    if (exists->parsed()) return cmd_exists(g, ex, out);
    if (inverse->parsed()) return cmd_inverse(g, inv, out);
    if (check->parsed()) return cmd_check(g, chk, out);
    if (gencmd->parsed()) return cmd_gen(g, gen, out);
    if (cross->parsed()) return cmd_crosscheck(g, cx, out);
  } catch (const mink::Error& e) {
    err << "minkctl: " << e.what() << "\n";
    return exit_for(e.code());
  } catch (const std::exception& e) {
    err << "minkctl: " << e.what() << "\n";
    return kPrecondition;
  }
  return kUsage;
}

}  // namespace minkctl
