#include <doctest.h>

#include <cmath>
#include <vector>

#include "rng.hpp"

using namespace ssa;

TEST_CASE("philox4x32-10 known-answer vectors") {
  // Random123 kat_vectors.
  CHECK(philox4x32_10({0, 0, 0, 0}, {0, 0}) ==
        PhiloxCounter{0x6627e8d5u, 0xe169c58du, 0xbc57ac4cu, 0x9b00dbd8u});
  CHECK(philox4x32_10({0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu},
                      {0xffffffffu, 0xffffffffu}) ==
        PhiloxCounter{0x408f276du, 0x41c83b0eu, 0xa20bc7c6u, 0x6d5451fdu});
  CHECK(philox4x32_10({0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u},
                      {0xa4093822u, 0x299f31d0u}) ==
        PhiloxCounter{0xd16cfe09u, 0x94fdccebu, 0x5001e420u, 0x24126ea1u});
}

TEST_CASE("draws are pure functions of their address") {
  const RngStream a(42, 3), b(42, 3), other(42, 4);
  std::vector<double> x(5), y(5), z(5);
  a.gaussians(DrawPurpose::kBrownian, 17, 2, x);
  // A fresh stream, and a replay after unrelated draws, agree bitwise.
  b.gaussians(DrawPurpose::kBrownian, 99, 0, z);
  b.gaussians(DrawPurpose::kBrownian, 17, 2, y);
  CHECK(x == y);
  other.gaussians(DrawPurpose::kBrownian, 17, 2, z);
  CHECK(x != z);
  a.gaussians(DrawPurpose::kInitPosition, 17, 2, z);
  CHECK(x != z);
}

TEST_CASE("uniforms stay in the open unit interval and gaussians look standard") {
  const RngStream rng(7, 0);
  std::vector<double> u(2), g(2);
  double sum = 0.0, sum_sq = 0.0, usum = 0.0;
  constexpr int kDraws = 200000;
  for (int n = 0; n < kDraws / 2; ++n) {
    rng.uniforms(DrawPurpose::kInitPosition, static_cast<std::uint64_t>(n), 0, u);
    for (double v : u) {
      REQUIRE(v > 0.0);
      REQUIRE(v < 1.0);
      usum += v;
    }
    rng.gaussians(DrawPurpose::kBrownian, static_cast<std::uint64_t>(n), 1, g);
    for (double v : g) {
      sum += v;
      sum_sq += v * v;
    }
  }
  CHECK(usum / kDraws == doctest::Approx(0.5).epsilon(0.01));
  CHECK(std::abs(sum / kDraws) < 0.01);
  CHECK(sum_sq / kDraws == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("odd-length requests match the prefix of even-length ones") {
  const RngStream rng(1, 1);
  std::vector<double> three(3), four(4);
  rng.gaussians(DrawPurpose::kBrownian, 5, 5, three);
  rng.gaussians(DrawPurpose::kBrownian, 5, 5, four);
  CHECK(three[0] == four[0]);
  CHECK(three[2] == four[2]);
}
