#pragma once

#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "svrrg/block_partition.hpp"
#include "svrrg/eigen_oracle.hpp"
#include "svrrg/metrics.hpp"
#include "svrrg/stiefel.hpp"

namespace svrrg {

enum class SolverKind { rg, srg, svrrg };
enum class BMode { identity, procrustes };

std::string to_string(SolverKind kind);

/// Run parameters shared by the three iterations. alpha <= 0 selects the
/// heuristic alpha = zeta / (||A||_1 sqrt(n)); m <= 0 selects
/// round(epoch_frac * L), where epoch_frac itself defaults per solver
/// (0.5 for the variance-reduced phase, 1.5 for the plain stochastic one).
struct SolverConfig {
  int k = 3;
  double alpha = 0.0;
  double eta = 1.0;  // decaying rate numerator: alpha_t = eta / t
  double zeta = 4.442;
  int m = 0;
  double epoch_frac = 0.0;  // <= 0: per-solver default
  int max_epochs = 20;
  std::uint64_t seed = 1;
  BMode b_mode = BMode::identity;
  bool rescale = false;
  double warm_start_tol = 1e-6;
  double target_tol = 1e-12;
  double warm_budget_passes = 200.0;
  bool measure_wall_time = true;

  double resolve_alpha(const BlockPartition& P) const;
  int resolve_epoch_length(const BlockPartition& P, SolverKind kind) const;
};

/// Per-solver convergence log plus the metadata needed to reproduce it.
struct ConvergenceTrace {
  std::string matrix_name;
  std::string solver;
  int n = 0;
  long nnz = 0;
  int k = 0;
  std::uint64_t seed = 0;
  std::string config_echo;
  bool converged = false;
  bool approx_optimum = false;  // relative-error denominator is the best value seen, not ground truth
  int warm_epochs = 0;          // rows 1..warm_epochs are the warm-start phase
  double warm_passes = 0.0;
  bool warm_budget_exceeded = false;
  double theta0_after_warm = std::numeric_limits<double>::quiet_NaN();
  std::vector<MetricSample> rows;
  std::vector<double> half_traces;  // objective value per row, same order
};

/// One deterministic ascent step: retract(X, alpha * Grad f(X)).
StiefelPoint rg_step(const MatvecFn& A, const StiefelPoint& X, double alpha);

/// One decaying-rate stochastic step at global step index t >= 1: samples a
/// block uniformly and retracts along (eta/t) * (I - X X^T) A^(l) X.
StiefelPoint srg_step(const BlockPartition& P, const StiefelPoint& X, long t, double eta,
                      Rng& rng);

/// Variance-reduced stochastic gradient at X for sampled block l:
///   G~ = G(l, X) - T_{Xt->X}( G(l, Xt B) - Grad f(Xt B) )
/// where the transported control variate equals
///   P_X( [ (I - Xt Xt^T) A^(l) Xt - Grad f(Xt) ] B ),
/// so the cached full gradient at the snapshot covers any alignment B with
/// no extra pass over the data. Conditioned on X, the mean over l equals
/// Grad f(X). Throws std::invalid_argument when B is not orthogonal.
TangentVector svrrg_gradient(const BlockPartition& P, const StiefelPoint& X,
                             const StiefelPoint& Xtilde, const TangentVector& full_grad, int l,
                             const Eigen::MatrixXd& B);

/// Epoch state: snapshot, inner iterate and the full gradient, which is
/// recomputed exactly once per epoch at the snapshot.
struct SvrrgState {
  StiefelPoint X;
  StiefelPoint Xtilde;
  TangentVector full_grad;
  int epoch = 0;
  long inner_steps = 0;
  Rng rng;

  SvrrgState(StiefelPoint x0, Rng r)
      : X(x0), Xtilde(std::move(x0)), full_grad{Eigen::MatrixXd()}, rng(r) {}
};

using IterateHook = std::function<void(const StiefelPoint&)>;

/// Runs one epoch: recompute Grad f at the snapshot, take m inner steps with
/// the fixed rate (each sampling one block uniformly), then promote the last
/// inner iterate to the new snapshot. cfg.alpha and cfg.m must be resolved
/// (> 0). The hook, when set, sees every inner iterate.
void svrrg_epoch(const BlockPartition& P, SvrrgState& state, const SolverConfig& cfg,
                 const IterateHook& on_inner = {});

/// Full protocol driver. For SolverKind::svrrg: phase 1 runs the decaying
/// stochastic iteration from the start point until the relative error
/// reaches warm_start_tol (or the warm pass budget runs out), phase 2 runs
/// variance-reduced epochs with the fixed rate until target_tol or
/// max_epochs. rg/srg run their own iteration the whole way. Metrics are
/// recorded once per epoch; measurement products are not charged to the pass
/// counter. Non-convergence is reported through the trace, not an error.
ConvergenceTrace solve(const BlockPartition& P, const SolverConfig& cfg, SolverKind kind,
                       const EigenReference* reference = nullptr,
                       const StiefelPoint* start = nullptr, const IterateHook& on_iterate = {});

}  // namespace svrrg
