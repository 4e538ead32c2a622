#include <catch2/catch_amalgamated.hpp>

#include "normlab/acosta.hpp"
#include "normlab/ball_sum.hpp"
#include "normlab/dual_ball.hpp"
#include "normlab/sample.hpp"

using namespace normlab;

namespace {

/// The worked two-dimensional instance: rows e1, e2, weights 1/4, 1/8.
SumNormSpec<Rat> worked_spec() {
  return make_sum_norm_spec<Rat>(2, {Rat(1, 4), Rat(1, 8)},
                                 {Vec<Rat>::basis(1, 2), Vec<Rat>::basis(2, 2)}, Rat(1));
}

}  // namespace

TEST_CASE("worked spec satisfies the budget") {
  const auto spec = worked_spec();
  CHECK(spec.rho == Rat(3, 8));
  CHECK(spec.rho < Rat(1));  // eps/(2-eps) at eps = 1
}

TEST_CASE("p norm values on the worked spec") {
  const auto spec = worked_spec();
  CHECK(p_norm(spec, Vec<Rat>::basis(1, 2)) == Rat(5, 4));
  CHECK(p_norm(spec, Vec<Rat>::from_dense({Rat(1), Rat(1)})) == Rat(11, 8));
  CHECK(p_norm(spec, Vec<Rat>(2)) == 0);
}

TEST_CASE("spec validation errors") {
  CHECK_THROWS_AS(make_sum_norm_spec<Rat>(2, {Rat(1, 4)},
                                          {Vec<Rat>::basis(1, 2)}, Rat(2)),
                  PreconditionError);  // epsilon outside (0,2)
  CHECK_THROWS_AS(make_sum_norm_spec<Rat>(
                      2, {Rat(1, 8), Rat(1, 8)},
                      {Vec<Rat>::basis(1, 2), Vec<Rat>::basis(1, 2)}, std::nullopt),
                  PreconditionError);  // duplicate rows
  CHECK_THROWS_AS(make_sum_norm_spec<Rat>(2, {Rat(0)}, {Vec<Rat>::basis(1, 2)},
                                          std::nullopt),
                  PreconditionError);  // nonpositive weight
  // rho = 1 violates the strict budget 1 at eps = 1.
  CHECK_THROWS_AS(make_sum_norm_spec<Rat>(2, {Rat(1)}, {Vec<Rat>::basis(1, 2)}, Rat(1)),
                  PreconditionError);
}

TEST_CASE("built specs respect the strict budget for every epsilon") {
  for (const Rat eps : {Rat(1, 2), Rat(1), Rat(3, 2), Rat(19, 10)}) {
    const auto spec = build_sum_spec<Rat>(3, eps, RowGenerator::disc, 5);
    REQUIRE(spec.epsilon.has_value());
    CHECK(spec.rho < eps / (Rat(2) - eps));
    if (eps == Rat(1, 2)) CHECK(spec.rho < Rat(1, 3));
  }
  CHECK_THROWS_AS(build_sum_spec<Rat>(3, Rat(2), RowGenerator::disc, 5),
                  PreconditionError);
}

TEST_CASE("p is a norm equivalent to the sup norm") {
  const auto spec = build_sum_spec<Rat>(5, Rat(1, 2), RowGenerator::disc, 9);
  Rng rng(13);
  for (int trial = 0; trial < 40; ++trial) {
    const auto x = random_rational_vec(5, rng);
    const auto y = random_rational_vec(5, rng);
    Rat c(rng.uniform_int(-8, 8), 4);
    c.canonicalize();
    CHECK(p_norm(spec, x * c) == abs(c) * p_norm(spec, x));
    CHECK(p_norm(spec, x + y) <= p_norm(spec, x) + p_norm(spec, y));
    CHECK(p_norm(spec, x) >= sup_norm(x));
    CHECK(p_norm(spec, x) <= (1 + spec.rho) * sup_norm(x));
  }
}

TEST_CASE("row generators produce distinct l1-normalized rows") {
  const auto disc = build_sum_spec<Rat>(4, Rat(1, 2), RowGenerator::disc, 3);
  for (const auto& row : disc.rows) CHECK(l1_norm(row) == 1);
  const auto bio = build_sum_spec<Rat>(4, Rat(1, 2), RowGenerator::biortho, 3);
  CHECK(bio.row_count() == 4);
  for (const auto& row : bio.rows) CHECK(l1_norm(row) == 1);
  CHECK(covering_radius_of_rows(disc.rows, 4) == disc.covering_radius);
}

TEST_CASE("ball-sum dual norm formula") {
  BallSumSpec<Rat> spec;
  spec.s_op = OperatorColumns<Rat>::scaled_identity(2, Rat(1, 2));
  spec.rho_s = Rat(1, 2);
  CHECK(ball_sum_dual_norm(spec, Vec<Rat>::basis(1, 2)) == Rat(3, 2));
  CHECK(ball_sum_dual_norm(spec, Vec<Rat>(2)) == 0);

  BallSumSpec<Rat> zero;
  zero.s_op = OperatorColumns<Rat>::zero(2, 2);
  const auto f = Vec<Rat>::from_dense({Rat(2), Rat(-1)});
  CHECK(ball_sum_dual_norm(zero, f) == l1_norm(f));
}

TEST_CASE("ball-sum dual dominates the base dual, equality iff S^T f = 0") {
  const auto base = worked_spec();
  std::vector<Vec<Rat>> points = {Vec<Rat>::from_dense({Rat(4, 5), Rat(0)}),
                                  Vec<Rat>::from_dense({Rat(0), Rat(8, 9)})};
  const auto spec = smooth_variant(base, Rat(1, 16), points);
  Rng rng(31);
  for (int trial = 0; trial < 10; ++trial) {
    const auto f = random_rational_vec(2, rng);
    const auto st = spec.s_op.transpose_apply(f);
    const Rat base_value = base_dual_norm(spec, f);
    if (st.is_zero()) {
      CHECK(ball_sum_dual_norm(spec, f) == base_value);
    } else {
      try {
        const Rat q = ball_sum_dual_norm(spec, f);
        CHECK(q > base_value);
        // The l2 surplus squared reproduces <S^T f, S^T f> exactly.
        CHECK((q - base_value) * (q - base_value) == pairing(st, st));
      } catch (const ModeError&) {
        CHECK(pairing(st, st) > 0);  // genuinely irrational l2 part
      }
    }
  }
}

TEST_CASE("smooth variant constant selection") {
  const auto base = make_sum_norm_spec<Rat>(
      2, {Rat(1, 16), Rat(1, 32)}, {Vec<Rat>::basis(1, 2), Vec<Rat>::basis(2, 2)},
      Rat(1, 4));
  // (2 - 1/4) / (1 + 1/16) = 28/17 > 3/2 = 2 - 1/2.
  CHECK((Rat(2) - Rat(1, 4)) / (Rat(1) + Rat(1, 16)) == Rat(28, 17));
  const std::vector<Vec<Rat>> pts = {Vec<Rat>::basis(1, 2) * Rat(16, 17)};
  REQUIRE(p_norm(base, pts[0]) <= 1);
  CHECK_NOTHROW(smooth_variant(base, Rat(1, 16), pts, Rat(1, 2)));
  // Violated constants: rho_s far too large.
  CHECK_THROWS_AS(smooth_variant(base, Rat(10), pts, Rat(1, 2)), PreconditionError);
  // Point outside the base unit ball.
  CHECK_THROWS_AS(smooth_variant(base, Rat(1, 16), {Vec<Rat>::basis(1, 2) * Rat(2)},
                                 Rat(1, 2)),
                  PreconditionError);
  // rho_s = 0 leaves the dual norm unchanged.
  const auto degenerate = smooth_variant(base, Rat(0), pts);
  const auto f = Vec<Rat>::from_dense({Rat(1), Rat(2)});
  CHECK(ball_sum_dual_norm(degenerate, f) == base_dual_norm(degenerate, f));
}

TEST_CASE("weighted mixed norm values") {
  const auto spec = AcostaSpec<Rat>::power_law(32, Rat(1), 1);
  for (int n = 1; n <= 32; ++n)
    CHECK(acosta_norm(spec, Vec<Rat>::basis(n, 32)) == 1);
  CHECK(acosta_norm(spec, Vec<Rat>(32)) == 0);
  // (1 - w_1)|z_1| + w_1|z_1| + w_2|z_2| with z = (2, 3):
  // max((1/2)*2, (2/3)*3) + 2/2 + 3/3 = 2 + 2 = 4.
  Vec<Rat> z(32);
  z.set(1, Rat(2));
  z.set(2, Rat(3));
  CHECK(acosta_norm(spec, z) == 4);
}

TEST_CASE("weighted mixed norm attainment criterion") {
  const auto spec = AcostaSpec<Rat>::power_law(8, Rat(1), 1);
  CHECK(acosta_attainment_criterion(spec, SupportModel::finite({1, 2, 3})));
  CHECK_FALSE(acosta_attainment_criterion(spec, SupportModel::all()));
  CHECK_FALSE(acosta_attainment_criterion(spec, SupportModel::beyond(10)));
  CHECK(acosta_attainment_criterion(spec, SupportModel::square_indices()));

  const auto fast = AcostaSpec<Rat>::power_law(8, Rat(1), 2);
  CHECK(acosta_attainment_criterion(fast, SupportModel::all()));

  const auto listed = AcostaSpec<Rat>::from_weights({Rat(1, 2), Rat(1, 3)});
  CHECK(acosta_attainment_criterion(listed, SupportModel::finite({1})));
  CHECK_THROWS_AS(acosta_attainment_criterion(listed, SupportModel::all()),
                  PreconditionError);
  CHECK_THROWS_AS(AcostaSpec<Rat>::from_weights({Rat(1)}), PreconditionError);
  CHECK_THROWS_AS(AcostaSpec<Rat>::power_law(4, Rat(2), 1), PreconditionError);
}
