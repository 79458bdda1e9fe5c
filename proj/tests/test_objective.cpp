#include <doctest.h>

#include <cmath>
#include <cstring>
#include <vector>

#include "error.hpp"
#include "objective.hpp"
#include "rng.hpp"

using namespace ssa;

namespace {

Objective quadratic() {
  return Objective("quadratic", 1,
                   [](std::span<const double> x, std::span<double> g) {
                     if (!g.empty()) g[0] = 2.0 * x[0];
                     return x[0] * x[0];
                   },
                   {});
}

}  // namespace

TEST_CASE("ackley values") {
  const std::vector<double> origin1{0.0};
  CHECK(std::abs(ackley(1)(origin1)) < 1e-14);
  CHECK(std::abs(ackley(10)(std::vector<double>(10, 0.0))) < 1e-14);
  // Direct scalar substitution computed offline.
  CHECK(ackley(1)(std::vector<double>{0.5}) ==
        doctest::Approx(4.253654026568412).epsilon(1e-14));
  CHECK(ackley(3, 20.0, 0.2, 1.5)(std::vector<double>(3, 0.0)) ==
        doctest::Approx(1.5));
  CHECK_THROWS_AS(ackley(0), Error);
  try {
    ackley(0);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kInvalidDimension);
  }
}

TEST_CASE("ackley gradient uses the zero subgradient at the origin") {
  const auto f = ackley(4);
  for (double gi : f.gradient(std::vector<double>(4, 0.0))) CHECK(gi == 0.0);
}

TEST_CASE("rastrigin values") {
  CHECK(rastrigin(1)(std::vector<double>{0.0}) == 0.0);
  CHECK(rastrigin(2, 0.0, 2.0)(std::vector<double>{0.0, 0.0}) == 0.0);
  CHECK(rastrigin(1)(std::vector<double>{0.5}) == doctest::Approx(20.25).epsilon(1e-15));
  CHECK(rastrigin(2, 0.0, 2.0).name() == "rastrigin_modified");
  CHECK_THROWS_AS(rastrigin(0), Error);
  CHECK_THROWS_AS(rastrigin(1, 0.0, 0.0), Error);
}

TEST_CASE("appendix suite cataloged minima") {
  const auto suite = appendix_c_suite();
  REQUIRE(suite.size() == 5);
  CHECK(levy()(std::vector<double>{1.0, 1.0}) == doctest::Approx(0.0).scale(1e-14));
  CHECK(drop_wave()(std::vector<double>{0.0, 0.0}) == -1.0);
  CHECK(bukin6()(std::vector<double>{-10.0, 1.0}) == 0.0);
  CHECK(schaffer2()(std::vector<double>{0.0, 0.0}) == 0.0);
  CHECK_FALSE(bukin6().smooth_everywhere());
  CHECK_FALSE(drop_wave().smooth_everywhere());
  CHECK(levy().smooth_everywhere());
}

TEST_CASE("every catalog entry attains its cataloged minimum") {
  const auto all = catalog();
  REQUIRE(all.size() == 8);
  for (const auto& f : all) {
    INFO(f.name());
    REQUIRE(f.global_min_point());
    const auto& x = *f.global_min_point();
    CHECK(std::abs(f(x) - f.global_min_value()) <= 1e-12);
    for (double gi : f.gradient(x)) CHECK(std::abs(gi) <= 1e-8);
  }
}

TEST_CASE("evaluation is deterministic") {
  const RngStream rng(5, 0);
  std::vector<double> u(2);
  for (const auto& f : catalog()) {
    for (std::uint64_t n = 0; n < 20; ++n) {
      rng.uniforms(DrawPurpose::kGradientCheck, n, 0, u);
      const double a = f(u);
      const double b = f(u);
      CHECK(std::memcmp(&a, &b, sizeof a) == 0);
    }
  }
}

TEST_CASE("fd_gradient basics") {
  const auto q = quadratic();
  CHECK(fd_gradient(q, std::vector<double>{3.0}, 1e-6)[0] == doctest::Approx(6.0).epsilon(1e-6));
  const Objective constant("constant", 3,
                           [](std::span<const double>, std::span<double> g) {
                             for (auto& v : g) v = 0.0;
                             return 4.0;
                           },
                           {});
  for (double v : fd_gradient(constant, std::vector<double>{1.0, -2.0, 3.0}, 1e-6)) {
    CHECK(v == 0.0);
  }
  CHECK_THROWS_AS(fd_gradient(q, std::vector<double>{1.0}, 0.0), Error);
}

TEST_CASE("ackley analytic gradient matches central differences") {
  const auto f = ackley(2);
  const std::vector<double> x{0.3, -0.7};
  const auto g = f.gradient(x);
  const auto fd = fd_gradient(f, x, 1e-6);
  for (std::size_t i = 0; i < 2; ++i) {
    CHECK(std::abs(g[i] - fd[i]) <= 1e-5 * std::abs(g[i]));
  }
}

TEST_CASE("gradient check passes for every catalog entry and higher-d ackley") {
  auto all = catalog();
  all.push_back(ackley(1));
  all.push_back(ackley(10));
  all.push_back(rastrigin(5));
  for (std::size_t i = 0; i < all.size(); ++i) {
    const auto check = check_gradient(all[i], RngStream(2024, i), 100);
    INFO(check.name << " d=" << check.dim << " err=" << check.max_rel_error);
    CHECK(check.passed);
    CHECK(check.points == 100);
  }
}

TEST_CASE("gradient check detects a wrong gradient") {
  const Objective wrong("wrong", 1,
                        [](std::span<const double> x, std::span<double> g) {
                          if (!g.empty()) g[0] = 2.1 * x[0];
                          return x[0] * x[0];
                        },
                        {0.0, std::vector<double>{0.0}, true, {}, Box::cube(1, -1, 1)});
  CHECK_FALSE(check_gradient(wrong, RngStream(1, 0), 20).passed);
}

TEST_CASE("basin metadata matches an independent root bracket") {
  // Reference roots of the axis derivative from a scalar root finder.
  const auto a = ackley(1);
  CHECK(*a.traits().basin_radius == doctest::Approx(0.6730965201107376).epsilon(1e-9));
  CHECK(*a.traits().best_local_min_value == doctest::Approx(3.57445187725768).epsilon(1e-9));
  CHECK(*a.success_epsilon() == doctest::Approx(3.57445187725768 / 2).epsilon(1e-9));
  const auto r = rastrigin(1);
  CHECK(*r.traits().basin_radius == doctest::Approx(0.5025460365548291).epsilon(1e-9));
  CHECK(*r.traits().best_local_min_value == doctest::Approx(0.9949590570932916).epsilon(1e-9));
  CHECK_FALSE(levy().success_epsilon());
}

TEST_CASE("make_objective resolves names and rejects bad input") {
  for (const auto& name : objective_names()) {
    const std::size_t dim = 2;
    CHECK(make_objective(name, dim).name() == name);
  }
  CHECK(make_objective("ackley", 3, {{"A", 10.0}}).traits().params.at("A") == 10.0);
  CHECK(make_objective("rastrigin", 1, {{"quad_coef", 2.0}})(std::vector<double>{0.5}) ==
        doctest::Approx(20.5));
  CHECK_THROWS_AS(make_objective("sphere", 2), Error);
  CHECK_THROWS_AS(make_objective("levy", 3), Error);
  CHECK_THROWS_AS(make_objective("ackley", 2, {{"B", 1.0}}), Error);
}
