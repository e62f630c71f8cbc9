#include <doctest.h>

#include "svrrg/lemma_checks.hpp"
#include "svrrg/solver.hpp"

using namespace svrrg;

TEST_CASE("lemma6 bound formula") {
  CHECK(lemma6_bound(1, 0.1) == doctest::Approx(4.0).epsilon(1e-15));
  CHECK(lemma6_bound(3, 0.1) == doctest::Approx(12.0).epsilon(1e-15));
  CHECK(lemma6_bound(2, 0.0) == 0.0);
  CHECK_THROWS_AS(lemma6_bound(1, 0.3), std::invalid_argument);
  CHECK_THROWS_AS(lemma6_bound(1, 0.2), std::invalid_argument);
}

TEST_CASE("lemma6: null steps give a zero ratio") {
  auto [A, ref] = make_test_matrix(20, 2, 0.4, 5);
  Rng rng(5);
  const StiefelPoint X = random_stiefel(20, 2, rng);
  const std::vector<Eigen::MatrixXd> iterates{X.mat(), X.mat(), X.mat()};
  CHECK(lemma6_check(iterates, ref.V, 2, 0.0) == 0.0);
}

TEST_CASE("lemma6 holds over a recorded variance-reduced run") {
  auto [A, ref] = make_test_matrix(50, 2, 0.3, 97);
  BlockPartition P(A, 10);
  P.set_value_scale(1.0 / gershgorin_bound(P));

  Rng rng(13);
  StiefelPoint x0 = random_stiefel(50, 2, rng);
  SvrrgState st(std::move(x0), rng);
  SolverConfig cfg;
  cfg.k = 2;
  cfg.alpha = 0.1;
  cfg.m = 25;
  std::vector<Eigen::MatrixXd> iterates{st.Xtilde.mat()};
  while (iterates.size() <= 1000)
    svrrg_epoch(P, st, cfg, [&](const StiefelPoint& x) { iterates.push_back(x.mat()); });
  CHECK(lemma6_check(iterates, ref.V, 2, cfg.alpha) <= 1.0);
}

TEST_CASE("lemma10: both sides vanish at the subspace and its complement") {
  auto [A, ref] = make_test_matrix(20, 3, 0.3, 31);
  const Eigen::MatrixXd Ad = A.to_dense();
  const auto at_v = lemma10_check(Ad, ref, StiefelPoint(ref.V));
  CHECK(std::abs(at_v.lhs) <= 1e-12);
  CHECK(std::abs(at_v.rhs) <= 1e-12);

  const auto eig = dense_eigh(Ad);
  const auto at_perp = lemma10_check(Ad, ref, StiefelPoint(eig.vectors.rightCols(3)));
  CHECK(std::abs(at_perp.lhs) <= 1e-12);
  CHECK(std::abs(at_perp.rhs) <= 1e-12);
}

TEST_CASE("lemma10 inequality over 1000 random points") {
  auto [A, ref] = make_test_matrix(20, 3, 0.3, 67);
  const Eigen::MatrixXd Ad = A.to_dense();
  Rng rng(67);
  double worst = std::numeric_limits<double>::infinity();
  for (int trial = 0; trial < 1000; ++trial) {
    const auto r = lemma10_check(Ad, ref, random_stiefel(20, 3, rng));
    worst = std::min(worst, r.lhs - r.rhs);
  }
  CHECK(worst >= -1e-10);
}

TEST_CASE("lemma12: noise vanishes identically at the snapshot with B = I") {
  auto [A, ref] = make_test_matrix(30, 2, 0.4, 3);
  BlockPartition P(A, 6);
  P.set_value_scale(1.0 / gershgorin_bound(P));
  Rng rng(3);
  const StiefelPoint X = random_stiefel(30, 2, rng);
  const auto res = lemma12_check(P, X, X, Eigen::MatrixXd::Identity(2, 2), ref);
  CHECK(res.max_frob_sq <= 1e-24);
  CHECK(res.max_spectral <= 1e-12);
  CHECK(res.zero_mean_ok);
}

TEST_CASE("lemma12 bounds hold on random pairs (rescaled components)") {
  auto [A, ref] = make_test_matrix(40, 2, 0.35, 11);
  BlockPartition P(A, 7);
  P.set_value_scale(1.0 / gershgorin_bound(P));
  Rng rng(11);
  for (int trial = 0; trial < 175; ++trial) {  // x6 blocks: > 1000 noise-term checks
    const StiefelPoint X = random_stiefel(40, 2, rng);
    const StiefelPoint Xt = random_stiefel(40, 2, rng);
    const Eigen::MatrixXd B = procrustes_align(X, Xt);
    const auto res = lemma12_check(P, X, Xt, B, ref);
    CHECK(res.spectral_ok);
    CHECK(res.frob_ok);
    CHECK(res.zero_mean_ok);
    CHECK(res.mean_residual <= 1e-10);
  }
}

TEST_CASE("lemma12 noise tends to zero as both points approach the subspace") {
  auto [A, ref] = make_test_matrix(40, 2, 0.35, 13);
  BlockPartition P(A, 7);
  P.set_value_scale(1.0 / gershgorin_bound(P));
  Rng rng(13);
  double prev = std::numeric_limits<double>::infinity();
  for (double t : {0.5, 0.1, 0.02}) {
    // Points at a controlled distance from V.
    TangentVector d1 = project_tangent(StiefelPoint(ref.V), [&] {
      Eigen::MatrixXd M(40, 2);
      for (int j = 0; j < 2; ++j)
        for (int i = 0; i < 40; ++i) M(i, j) = rng.normal();
      return M;
    }());
    d1.Z *= t / d1.Z.norm();
    const StiefelPoint X = retract(StiefelPoint(ref.V), d1);
    const StiefelPoint Xt = retract(StiefelPoint(ref.V), TangentVector{0.7 * d1.Z});
    const Eigen::MatrixXd B = procrustes_align(X, Xt);
    const auto res = lemma12_check(P, X, Xt, B, ref);
    CHECK(res.max_frob_sq <= res.kappa_f_sq + 1e-10);
    CHECK(res.max_frob_sq < prev);
    prev = res.max_frob_sq;
  }
  CHECK(prev <= 1e-3);
}

TEST_CASE("svrrg noise term matches gradient decomposition G~ = Grad f + W") {
  auto [A, ref] = make_test_matrix(10, 2, 0.4, 23);
  BlockPartition P(A, 3);
  P.set_value_scale(1.0 / gershgorin_bound(P));
  Rng rng(23);
  const StiefelPoint X = random_stiefel(10, 2, rng);
  const StiefelPoint Xt = random_stiefel(10, 2, rng);
  const Eigen::MatrixXd B = procrustes_align(X, Xt);
  const Eigen::MatrixXd AX = P.full_matvec(X.mat());
  const Eigen::MatrixXd AXt = P.full_matvec(Xt.mat());
  const TangentVector grad_x = riemannian_gradient_from_product(X, AX);
  const TangentVector full_grad = riemannian_gradient_from_product(Xt, AXt);
  for (int l = 0; l < P.num_blocks(); ++l) {
    const Eigen::MatrixXd W = svrrg_noise_term(P, X, Xt, B, l, AX, AXt);
    const TangentVector G = svrrg_gradient(P, X, Xt, full_grad, l, B);
    CHECK((G.Z - (grad_x.Z + W)).norm() <= 1e-12);
  }
}
