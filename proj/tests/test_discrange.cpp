#include <catch2/catch_amalgamated.hpp>

#include "normlab/disc_range.hpp"
#include "normlab/sample.hpp"
#include "normlab/suites.hpp"

using namespace normlab;

TEST_CASE("dyadic and triadic node lists") {
  CHECK(dyadic_points(1) == std::vector<Rat>{Rat(1, 2)});
  CHECK(dyadic_points(3) == std::vector<Rat>({Rat(1, 2), Rat(1, 4), Rat(1, 8)}));
  CHECK(triadic_points(2) == std::vector<Rat>({Rat(1, 3), Rat(1, 9)}));
  CHECK_THROWS_AS(dyadic_points(0), PreconditionError);
}

TEST_CASE("node operator images") {
  const auto ones = disc_operator_apply(Poly<Rat>::constant(Rat(1)), 3);
  CHECK(ones.get(1) == 1);
  CHECK(ones.get(2) == Rat(1, 2));
  CHECK(ones.get(3) == Rat(1, 4));
  CHECK(disc_operator_apply(Poly<Rat>::zero(), 4).is_zero());
  const auto witness_image = disc_operator_apply(density_witness(1, 1), 2);
  CHECK(witness_image.get(1) == 1);
  CHECK(witness_image.get(2) == Rat(63, 128));
}

TEST_CASE("density witness values at the nodes") {
  CHECK(density_witness(1, 1).eval(Rat(1, 2)) == 1);
  CHECK(density_witness(1, 1).eval(Rat(1, 4)) == Rat(63, 64));
  CHECK(density_witness(2, 1).eval(Rat(1, 4)) == 1);
  // Powers stay strictly inside (0,1) off the target node.
  CHECK(density_witness(1, 3).eval(Rat(1, 4)) == Rat(63, 64) * Rat(63, 64) * Rat(63, 64));
}

TEST_CASE("zero coordinate counts are bounded by the degree") {
  CHECK(zero_coordinate_count(Poly<Rat>::constant(Rat(1)), 100) == 0);
  CHECK(zero_coordinate_count(Poly<Rat>({Rat(-1, 2), Rat(1)}), 10) == 1);
  CHECK(zero_coordinate_count(density_witness(1, 2), 10) == 0);
  CHECK_THROWS_AS(zero_coordinate_count(Poly<Rat>::zero(), 5), PreconditionError);

  Rng rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    const int degree = 1 + static_cast<int>(rng.uniform_int(0, 7));
    std::vector<Rat> coeffs;
    for (int k = 0; k <= degree; ++k) {
      Rat q(rng.uniform_int(-16, 16), 8);
      q.canonicalize();
      coeffs.push_back(q);
    }
    Poly<Rat> f{std::move(coeffs)};
    if (f.is_zero()) continue;
    CHECK(zero_coordinate_count(f, 40) <= f.degree());
  }
}

TEST_CASE("density image approaches the scaled basis vector monotonically") {
  const auto errors = density_error_sweep(1, 40, 16);
  for (std::size_t n = 1; n < errors.size(); ++n) CHECK(errors[n] < errors[n - 1]);
  // Same value through the expanded-polynomial route.
  Vec<Rat> limit(16);
  limit.set(1, Rat(1));
  CHECK(l1_norm(disc_operator_apply(density_witness(1, 40), 16) - limit) == errors.back());
}

TEST_CASE("scaling coefficients") {
  CHECK(scaling_coefficients({Rat(1, 2)}) == std::vector<Rat>{Rat(1)});
  CHECK(scaling_coefficients({Rat(4)}) == std::vector<Rat>{Rat(1, 4)});
  CHECK(scaling_coefficients({Rat(1)}) == std::vector<Rat>{Rat(1)});
  CHECK_THROWS_AS(scaling_coefficients({Rat(0)}), PreconditionError);
}

namespace {

struct DenseFixture {
  OperatorColumns<Rat> t1;
  OperatorColumns<Rat> u2;
  std::vector<Vec<Rat>> targets;

  explicit DenseFixture(int k = 4, int trunc = 10) {
    std::vector<Vec<Rat>> t1_cols, u2_cols;
    const auto tri = triadic_points(k);
    for (int j = 0; j < k; ++j) {
      const auto mono = Poly<Rat>::monomial(Rat(1), j);
      t1_cols.push_back(disc_operator_apply(mono, trunc));
      u2_cols.push_back(node_operator_apply(mono, tri));
    }
    t1 = OperatorColumns<Rat>(std::move(t1_cols), trunc);
    u2 = OperatorColumns<Rat>(std::move(u2_cols), k);
    for (int j = 1; j <= k; ++j) {
      const auto& col = t1.column(j);
      targets.push_back(col * (1 / l1_norm(col)));
    }
  }
};

}  // namespace

TEST_CASE("dense normalized columns: degenerate eps reproduces the targets") {
  DenseFixture fx;
  const auto result = dense_normalized_columns(
      fx.targets, fx.t1, fx.u2, [](int, const Rat&) { return Rat(0); });
  for (const Rat& dev : result.deviations) CHECK(dev == 0);
}

TEST_CASE("dense normalized columns: single target deviation bound") {
  DenseFixture fx;
  const Rat eps1(1, 8);
  const auto result =
      dense_normalized_columns({fx.targets[0]}, fx.t1, fx.u2,
                               [&](int, const Rat&) { return eps1; });
  const Rat bound =
      2 * eps1 * result.preimage_norms[0] * fx.t1.compose(fx.u2).l1_operator_norm();
  CHECK(result.deviations[0] <= bound);
  CHECK(result.deviations[0] > 0);
}

TEST_CASE("dense normalized columns: halving eps rule gives vanishing deviations") {
  DenseFixture fx;
  const auto result = dense_normalized_columns(fx.targets, fx.t1, fx.u2);
  for (std::size_t n = 1; n < result.deviations.size(); ++n)
    CHECK(result.deviations[n] <= result.deviations[n - 1]);
  CHECK(rank(result.op) == fx.t1.domain_dim);
  CHECK(rank(fx.u2) == fx.u2.domain_dim);
}

TEST_CASE("dense normalized columns rejects bad targets") {
  DenseFixture fx;
  // Not an l1 unit vector.
  CHECK_THROWS_AS(dense_normalized_columns({fx.t1.column(1)}, fx.t1, fx.u2),
                  PreconditionError);
  // Outside the range of T1 (t1 has 4 columns of a 10-dim space).
  Vec<Rat> outside(10);
  outside.set(9, Rat(1, 2));
  outside.set(10, Rat(1, 2));
  CHECK_THROWS_AS(dense_normalized_columns({outside}, fx.t1, fx.u2), PreconditionError);
}

TEST_CASE("biorthogonal systems are exactly biorthogonal") {
  const auto trivial = biorthogonal_system<Rat>(
      {Vec<Rat>::basis(1, 2), Vec<Rat>::basis(2, 2)});
  CHECK(trivial.v[0] == Vec<Rat>::basis(1, 2));
  CHECK(trivial.v_star[1] == Vec<Rat>::basis(2, 2));

  const auto shifted = biorthogonal_system<Rat>(
      {Vec<Rat>::from_dense({Rat(1), Rat(1)}), Vec<Rat>::from_dense({Rat(1), Rat(0)})});
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      CHECK(pairing(shifted.v_star[static_cast<std::size_t>(i)],
                    shifted.v[static_cast<std::size_t>(j)]) == (i == j ? 1 : 0));

  CHECK_THROWS_AS(biorthogonal_system<Rat>({Vec<Rat>::from_dense({Rat(1), Rat(1)}),
                                            Vec<Rat>::from_dense({Rat(2), Rat(2)})}),
                  PreconditionError);

  Rng rng(23);
  for (int trial = 0; trial < 20; ++trial) {
    const int dim = 2 + static_cast<int>(rng.uniform_int(0, 6));
    const int count = 2 + static_cast<int>(rng.uniform_int(0, dim - 2));
    std::vector<Vec<Rat>> w;
    for (int k = 0; k < count; ++k) w.push_back(random_rational_vec(dim, rng));
    if (rank(w) != count) continue;
    const auto sys = biorthogonal_system(w);
    for (int i = 0; i < count; ++i) {
      CHECK(sup_norm(sys.v[static_cast<std::size_t>(i)]) == 1);
      for (int j = 0; j < count; ++j)
        CHECK(pairing(sys.v_star[static_cast<std::size_t>(i)],
                      sys.v[static_cast<std::size_t>(j)]) == (i == j ? 1 : 0));
    }
    // Prefix spans agree: w_k lies in span{v_1..v_k}, checked by rank.
    for (int k = 1; k <= count; ++k) {
      std::vector<Vec<Rat>> span(sys.v.begin(), sys.v.begin() + k);
      span.push_back(w[static_cast<std::size_t>(k - 1)]);
      CHECK(rank(span) == k);
    }
  }
}

TEST_CASE("direct sum extension") {
  const int dim = 4;
  std::vector<Vec<Rat>> y_star = {Vec<Rat>::basis(1, dim)};
  const auto trivial =
      direct_sum_extension(y_star, OperatorColumns<Rat>::zero(dim, dim),
                           [](int) { return 1; });
  for (int k = 1; k <= dim; ++k) CHECK(trivial.column(k) == y_star[0]);

  std::vector<Vec<Rat>> two = {Vec<Rat>::basis(1, dim), Vec<Rat>::basis(2, dim)};
  auto diag = OperatorColumns<Rat>::scaled_identity(dim, Rat(1, 2));
  const auto ext = direct_sum_extension(two, diag, [](int k) { return 1 + (k % 2); });
  // Column k = y_{block(k)} + (1/2) e_k / k, exactly.
  for (int k = 1; k <= dim; ++k) {
    Vec<Rat> expected = two[static_cast<std::size_t>(k % 2)];
    expected.set(k, expected.get(k) + Rat(1, 2) / k);
    CHECK(ext.column(k) == expected);
  }
  CHECK_THROWS_AS(direct_sum_extension(two, diag, [](int) { return 3; }),
                  PreconditionError);

  // Along a block the columns approach the block functional.
  std::vector<Vec<Rat>> one = {Vec<Rat>::basis(1, 8)};
  auto shrink = OperatorColumns<Rat>::scaled_identity(8, Rat(1));
  const auto rec = direct_sum_extension(one, shrink, [](int) { return 1; });
  Rat prev(-1);
  for (int k = 2; k <= 8; ++k) {
    const Rat dist = l1_norm(rec.column(k) - one[0]);
    if (sgn(prev) >= 0) CHECK(dist < prev);
    prev = dist;
  }
}
