#include <catch2/catch_amalgamated.hpp>

#include "normlab/sample.hpp"
#include "normlab/sum_norm.hpp"
#include "normlab/vec.hpp"

using namespace normlab;

namespace {

Vec<Rat> rvec(std::initializer_list<long> nums, long den = 1) {
  std::vector<Rat> coords;
  for (long n : nums) {
    Rat q(n, den);
    q.canonicalize();
    coords.push_back(q);
  }
  return Vec<Rat>::from_dense(coords);
}

}  // namespace

TEST_CASE("vector storage keeps entries nonzero and indices bounded") {
  Vec<Rat> v(3);
  v.set(1, Rat(5));
  v.set(1, Rat(0));
  CHECK(v.support_size() == 0);
  CHECK(v.is_zero());
  CHECK_THROWS_AS(v.set(4, Rat(1)), DimensionMismatch);
  CHECK_THROWS_AS(v.get(0), DimensionMismatch);
  CHECK_THROWS_AS(Vec<Rat>(0), PreconditionError);
}

TEST_CASE("norm examples") {
  CHECK(norm_value(Vec<Rat>::basis(1, 4), NormKind::sup) == 1);
  CHECK(norm_value(rvec({1, -2, 3}), NormKind::l1) == 6);
  CHECK(norm_value(rvec({3, 4}), NormKind::l2) == 5);
  CHECK(l2_norm(rvec({3, 4, 12})) == 13);
  // Sum of squares 2 has no rational root.
  CHECK_THROWS_AS(l2_norm(rvec({1, 1})), ModeError);
  CHECK(l2_norm(Vec<double>::from_dense({1.0, 1.0})) ==
        Catch::Approx(std::sqrt(2.0)));
}

TEST_CASE("pairing examples and errors") {
  const auto e1 = Vec<Rat>::basis(1, 2), e2 = Vec<Rat>::basis(2, 2);
  CHECK(pairing(e1, e1) == 1);
  CHECK(pairing(e1, e2) == 0);
  CHECK(pairing(rvec({1, 1}), rvec({2, -3})) == -1);
  CHECK_THROWS_AS(pairing(e1, Vec<Rat>::basis(1, 3)), DimensionMismatch);
}

TEST_CASE("norms are homogeneous and subadditive on sampled exact vectors") {
  Rng rng(42);
  for (int trial = 0; trial < 50; ++trial) {
    const int dim = 2 + static_cast<int>(rng.uniform_int(0, 5));
    const auto a = random_rational_vec(dim, rng);
    const auto b = random_rational_vec(dim, rng);
    Rat c(rng.uniform_int(-8, 8), 4);
    c.canonicalize();
    for (NormKind kind : {NormKind::sup, NormKind::l1}) {
      CHECK(norm_value(a * c, kind) == abs(c) * norm_value(a, kind));
      CHECK(norm_value(a + b, kind) <= norm_value(a, kind) + norm_value(b, kind));
    }
  }
}

TEST_CASE("pairing is bilinear exactly") {
  Rng rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const int dim = 2 + static_cast<int>(rng.uniform_int(0, 4));
    const auto f = random_rational_vec(dim, rng);
    const auto g = random_rational_vec(dim, rng);
    const auto x = random_rational_vec(dim, rng);
    Rat a(rng.uniform_int(-8, 8), 2), b(rng.uniform_int(-8, 8), 2);
    a.canonicalize();
    b.canonicalize();
    CHECK(pairing(f * a + g * b, x) == a * pairing(f, x) + b * pairing(g, x));
    CHECK(pairing(f, x * a) == a * pairing(f, x));
  }
}

TEST_CASE("sphere_sample scales onto the requested unit sphere") {
  auto sup_fn = [](const Vec<double>& v) { return sup_norm(v); };
  const auto one = sphere_sample(sup_fn, 2, 1, 1);
  REQUIRE(one.size() == 1);
  CHECK(sup_norm(one[0]) == Catch::Approx(1.0).epsilon(1e-9));

  // Unit vectors of a built renorming: p evaluates to 1 on every sample.
  const auto spec = make_sum_norm_spec<double>(
      3, {0.25, 0.125}, {Vec<double>::basis(1, 3), Vec<double>::basis(2, 3)});
  auto p_fn = [&](const Vec<double>& v) { return p_norm(spec, v); };
  const auto ten = sphere_sample(p_fn, 3, 10, 7);
  REQUIRE(ten.size() == 10);
  for (const auto& v : ten) CHECK(p_norm(spec, v) == Catch::Approx(1.0).epsilon(1e-9));

  CHECK(sphere_sample(sup_fn, 3, 5, 99) == sphere_sample(sup_fn, 3, 5, 99));
}

TEST_CASE("rational parsing and printing") {
  CHECK(parse_rational("3/4") == Rat(3, 4));
  CHECK(parse_rational("0.25") == Rat(1, 4));
  CHECK(parse_rational("-7") == Rat(-7));
  CHECK(rational_string(Rat(5, 4)) == "5/4");
  CHECK(rational_string(Rat(3)) == "3");
  CHECK_THROWS_AS(parse_rational("abc"), ConfigError);
  CHECK(scalar_traits<Rat>::parse(rational_string(Rat(-22, 7))) == Rat(-22, 7));
}
