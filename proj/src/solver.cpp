#include "svrrg/solver.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace svrrg {

std::string to_string(SolverKind kind) {
  switch (kind) {
    case SolverKind::rg: return "rg";
    case SolverKind::srg: return "srg";
    case SolverKind::svrrg: return "svrrg";
  }
  return "?";
}

double SolverConfig::resolve_alpha(const BlockPartition& P) const {
  if (alpha > 0.0) return alpha;
  const double norm1 = P.one_norm();
  if (!(norm1 > 0.0)) throw std::invalid_argument("alpha heuristic needs a nonzero matrix");
  return zeta / (norm1 * std::sqrt(static_cast<double>(P.rows())));
}

int SolverConfig::resolve_epoch_length(const BlockPartition& P, SolverKind kind) const {
  if (kind == SolverKind::rg) return 1;
  if (m > 0) return m;
  const double frac = epoch_frac > 0.0 ? epoch_frac : (kind == SolverKind::svrrg ? 0.5 : 1.5);
  return std::max(1, static_cast<int>(std::lround(frac * P.num_blocks())));
}

StiefelPoint rg_step(const MatvecFn& A, const StiefelPoint& X, double alpha) {
  if (!(alpha > 0.0)) throw std::invalid_argument("rg_step: alpha must be > 0");
  const TangentVector g = riemannian_gradient(A, X);
  return retract(X, TangentVector{alpha * g.Z});
}

StiefelPoint srg_step(const BlockPartition& P, const StiefelPoint& X, long t, double eta,
                      Rng& rng) {
  if (t < 1) throw std::invalid_argument("srg_step: step index starts at 1");
  const int l = rng.uniform_index(P.num_blocks());
  const Eigen::MatrixXd AlX = P.block_matvec(l, X.mat());
  const Eigen::MatrixXd G = AlX - X.mat() * (X.mat().transpose() * AlX);
  return retract(X, TangentVector{(eta / static_cast<double>(t)) * G});
}

TangentVector svrrg_gradient(const BlockPartition& P, const StiefelPoint& X,
                             const StiefelPoint& Xtilde, const TangentVector& full_grad, int l,
                             const Eigen::MatrixXd& B) {
  const int k = X.cols();
  if (Xtilde.rows() != X.rows() || Xtilde.cols() != k ||
      full_grad.Z.rows() != X.rows() || full_grad.Z.cols() != k)
    throw std::invalid_argument("svrrg_gradient: dimension mismatch");
  if (B.rows() != k || B.cols() != k ||
      (B.transpose() * B - Eigen::MatrixXd::Identity(k, k)).norm() > 1e-8)
    throw std::invalid_argument("svrrg_gradient: B must be a k x k orthogonal matrix");

  const Eigen::MatrixXd& Xm = X.mat();
  const Eigen::MatrixXd& Tm = Xtilde.mat();

  const Eigen::MatrixXd AlX = P.block_matvec(l, Xm);
  const Eigen::MatrixXd Gx = AlX - Xm * (Xm.transpose() * AlX);  // G(l, X)

  // Control variate at the aligned snapshot:
  //   G(l, Xt B) - Grad f(Xt B) = [ (I - Xt Xt^T) A^(l) Xt - Grad f(Xt) ] B,
  // since Xt B (Xt B)^T = Xt Xt^T and right-multiplying by B commutes with
  // the left projector.
  const Eigen::MatrixXd AlT = P.block_matvec(l, Tm);
  const Eigen::MatrixXd Ct = (AlT - Tm * (Tm.transpose() * AlT) - full_grad.Z) * B;

  // Transport to X: P_X(Ct) = Ct - X sym(X^T Ct).
  const Eigen::MatrixXd H = Xm.transpose() * Ct;
  const Eigen::MatrixXd transported = Ct - Xm * (0.5 * (H + H.transpose()));

  return TangentVector{Gx - transported};
}

void svrrg_epoch(const BlockPartition& P, SvrrgState& state, const SolverConfig& cfg,
                 const IterateHook& on_inner) {
  if (cfg.m < 1) throw std::invalid_argument("svrrg_epoch: epoch length m must be >= 1");
  if (cfg.alpha < 0.0) throw std::invalid_argument("svrrg_epoch: alpha must be >= 0");

  const Eigen::MatrixXd AXt = P.full_matvec(state.Xtilde.mat());
  state.full_grad = riemannian_gradient_from_product(state.Xtilde, AXt);
  state.X = state.Xtilde;

  const int k = state.X.cols();
  const Eigen::MatrixXd identity = Eigen::MatrixXd::Identity(k, k);
  for (int t = 0; t < cfg.m; ++t) {
    const int l = state.rng.uniform_index(P.num_blocks());
    const Eigen::MatrixXd B = cfg.b_mode == BMode::procrustes
                                  ? procrustes_align(state.X, state.Xtilde)
                                  : identity;
    const TangentVector g = svrrg_gradient(P, state.X, state.Xtilde, state.full_grad, l, B);
    state.X = retract(state.X, TangentVector{cfg.alpha * g.Z});
    ++state.inner_steps;
    if (on_inner) on_inner(state.X);
  }
  state.Xtilde = state.X;
  ++state.epoch;
}

namespace {

double clamp0(double v) { return v < 0.0 ? 0.0 : v; }

std::string echo_config(const SolverConfig& cfg, double alpha, int m) {
  char buf[512];
  std::snprintf(buf, sizeof buf,
                "k=%d alpha=%.17g eta=%.17g zeta=%.17g m=%d max_epochs=%d seed=%llu "
                "b_mode=%s rescale=%s warm_tol=%.17g target_tol=%.17g warm_budget=%.17g",
                cfg.k, alpha, cfg.eta, cfg.zeta, m, cfg.max_epochs,
                static_cast<unsigned long long>(cfg.seed),
                cfg.b_mode == BMode::procrustes ? "procrustes" : "identity",
                cfg.rescale ? "on" : "off", cfg.warm_start_tol, cfg.target_tol,
                cfg.warm_budget_passes);
  return buf;
}

}  // namespace

ConvergenceTrace solve(const BlockPartition& P, const SolverConfig& cfg, SolverKind kind,
                       const EigenReference* reference, const StiefelPoint* start,
                       const IterateHook& on_iterate) {
  const int n = P.rows();
  const int L = P.num_blocks();
  if (cfg.k < 1 || cfg.k > n) throw std::invalid_argument("solve: k out of range");
  if (cfg.max_epochs < 0) throw std::invalid_argument("solve: max_epochs must be >= 0");
  if (reference && reference->k != cfg.k)
    throw std::invalid_argument("solve: reference k does not match config k");

  const double alpha = cfg.resolve_alpha(P);
  const int m = cfg.resolve_epoch_length(P, kind);

  ConvergenceTrace trace;
  trace.solver = to_string(kind);
  trace.n = n;
  trace.nnz = P.matrix().nnz_lower();
  trace.k = cfg.k;
  trace.seed = cfg.seed;
  trace.config_echo = echo_config(cfg, alpha, m);
  trace.approx_optimum = reference == nullptr;

  Rng rng(cfg.seed);
  StiefelPoint X = start ? *start : random_stiefel(n, cfg.k, rng);

  const double opt = reference ? reference->trace_top_k * P.value_scale() : 0.0;
  double best_q = -std::numeric_limits<double>::infinity();

  const auto t0 = std::chrono::steady_clock::now();
  auto wall_ms = [&]() -> double {
    if (!cfg.measure_wall_time) return 0.0;
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
        .count();
  };

  long full_passes = 0;
  long block_touches = 0;
  auto passes = [&]() {
    return static_cast<double>(full_passes) +
           static_cast<double>(block_touches) / static_cast<double>(L);
  };

  // Appends one row; the A*X product is measurement input, never charged to
  // the pass counters by this function.
  auto record = [&](int epoch, const StiefelPoint& Xc, const Eigen::MatrixXd& AXc) -> double {
    const double q = 0.5 * (Xc.mat().transpose() * AXc).trace();
    best_q = std::max(best_q, q);
    // Approximate mode divides by the best value seen so far; a nonpositive
    // best (zero operator) leaves nothing to normalize against.
    const double rel = clamp0(reference ? relative_error_from_half_trace(q, opt)
                              : best_q > 0.0 ? relative_error_from_half_trace(q, best_q)
                                             : 0.0);
    MetricSample s;
    s.epoch = epoch;
    s.passes = passes();
    s.feasibility = feasibility(Xc.mat());
    s.rel_error = rel;
    s.potential_norm = reference ? potential(*reference, Xc) / static_cast<double>(cfg.k)
                                 : std::numeric_limits<double>::quiet_NaN();
    s.wall_ms = wall_ms();
    trace.rows.push_back(s);
    trace.half_traces.push_back(q);
    return rel;
  };

  // Without ground truth the relative error is self-referential, so the
  // tolerance-based exits are disabled (budgets still apply) and the run is
  // flagged approximate.
  const bool have_ref = reference != nullptr;

  int epoch = 0;
  if (kind == SolverKind::rg) {
    Eigen::MatrixXd AX = P.full_matvec(X.mat());
    double rel = record(0, X, AX);
    if (have_ref && rel <= cfg.target_tol) trace.converged = true;
    for (int e = 1; e <= cfg.max_epochs && !trace.converged; ++e) {
      ++full_passes;
      const TangentVector g = riemannian_gradient_from_product(X, AX);
      X = retract(X, TangentVector{alpha * g.Z});
      if (on_iterate) on_iterate(X);
      AX = P.full_matvec(X.mat());
      rel = record(e, X, AX);
      if (have_ref && rel <= cfg.target_tol) trace.converged = true;
    }
    return trace;
  }

  if (kind == SolverKind::srg) {
    Eigen::MatrixXd AX = P.full_matvec(X.mat());
    double rel = record(0, X, AX);
    if (have_ref && rel <= cfg.target_tol) trace.converged = true;
    long t = 0;
    for (int e = 1; e <= cfg.max_epochs && !trace.converged; ++e) {
      for (int i = 0; i < m; ++i) {
        X = srg_step(P, X, ++t, cfg.eta, rng);
        ++block_touches;
        if (on_iterate) on_iterate(X);
      }
      AX = P.full_matvec(X.mat());
      rel = record(e, X, AX);
      if (have_ref && rel <= cfg.target_tol) trace.converged = true;
    }
    return trace;
  }

  // SolverKind::svrrg: decaying-rate warm start, then variance-reduced epochs.
  const int m_warm = std::max(1, static_cast<int>(std::lround(1.5 * L)));
  Eigen::MatrixXd AX = P.full_matvec(X.mat());
  double rel = record(0, X, AX);
  bool warm_done = have_ref && rel <= cfg.warm_start_tol;
  if (have_ref && rel <= cfg.target_tol) trace.converged = true;

  long t = 0;
  while (!warm_done && !trace.converged && passes() < cfg.warm_budget_passes) {
    for (int i = 0; i < m_warm; ++i) {
      X = srg_step(P, X, ++t, cfg.eta, rng);
      ++block_touches;
      if (on_iterate) on_iterate(X);
    }
    ++epoch;
    AX = P.full_matvec(X.mat());
    rel = record(epoch, X, AX);
    if (have_ref && rel <= cfg.target_tol) trace.converged = true;
    if (have_ref && rel <= cfg.warm_start_tol) warm_done = true;
  }
  trace.warm_epochs = epoch;
  trace.warm_passes = passes();
  trace.warm_budget_exceeded = have_ref && !warm_done && !trace.converged;
  if (have_ref) trace.theta0_after_warm = potential(*reference, X);

  if (trace.converged) return trace;

  SolverConfig ecfg = cfg;
  ecfg.alpha = alpha;
  ecfg.m = m;
  SvrrgState state(X, rng);
  for (int e = 1; e <= cfg.max_epochs && !trace.converged; ++e) {
    ++full_passes;  // the epoch's full gradient at the snapshot
    svrrg_epoch(P, state, ecfg, on_iterate);
    block_touches += m;
    const Eigen::MatrixXd AXt = P.full_matvec(state.Xtilde.mat());
    rel = record(epoch + e, state.Xtilde, AXt);
    if (have_ref && rel <= cfg.target_tol) trace.converged = true;
  }
  return trace;
}

}  // namespace svrrg
