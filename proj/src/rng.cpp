#include "rng.hpp"

#include <cmath>
#include <numbers>

namespace ssa {

namespace {

constexpr std::uint32_t kPhiloxM0 = 0xD2511F53u;
constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57u;
constexpr std::uint32_t kPhiloxW0 = 0x9E3779B9u;
constexpr std::uint32_t kPhiloxW1 = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi,
                    std::uint32_t& lo) noexcept {
  const std::uint64_t product = static_cast<std::uint64_t>(a) * b;
  hi = static_cast<std::uint32_t>(product >> 32);
  lo = static_cast<std::uint32_t>(product);
}

// Top 53 bits mapped to the open unit interval.
inline double to_open_unit(std::uint32_t hi, std::uint32_t lo) noexcept {
  const std::uint64_t bits =
      ((static_cast<std::uint64_t>(hi) << 32) | lo) >> 11;
  return (static_cast<double>(bits) + 0.5) * 0x1.0p-53;
}

}  // namespace

PhiloxCounter philox4x32_10(PhiloxCounter ctr, PhiloxKey key) noexcept {
  for (int round = 0; round < 10; ++round) {
    std::uint32_t hi0, lo0, hi1, lo1;
    mulhilo(kPhiloxM0, ctr[0], hi0, lo0);
    mulhilo(kPhiloxM1, ctr[2], hi1, lo1);
    ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
    key[0] += kPhiloxW0;
    key[1] += kPhiloxW1;
  }
  return ctr;
}

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

RngStream::RngStream(std::uint64_t seed, std::uint64_t trial) noexcept
    : seed_(seed), trial_(trial) {
  const std::uint64_t k = splitmix64(seed ^ splitmix64(trial));
  key_ = {static_cast<std::uint32_t>(k), static_cast<std::uint32_t>(k >> 32)};
}

std::array<double, 2> RngStream::block(DrawPurpose purpose, std::uint64_t step,
                                       std::uint32_t agent,
                                       std::uint32_t index) const noexcept {
  const PhiloxCounter ctr{
      static_cast<std::uint32_t>(step), static_cast<std::uint32_t>(step >> 32),
      agent, (static_cast<std::uint32_t>(purpose) << 24) | (index & 0xFFFFFFu)};
  const PhiloxCounter r = philox4x32_10(ctr, key_);
  return {to_open_unit(r[0], r[1]), to_open_unit(r[2], r[3])};
}

void RngStream::uniforms(DrawPurpose purpose, std::uint64_t step,
                         std::uint32_t agent,
                         std::span<double> out) const noexcept {
  for (std::size_t i = 0; i < out.size(); i += 2) {
    const auto u = block(purpose, step, agent, static_cast<std::uint32_t>(i / 2));
    out[i] = u[0];
    if (i + 1 < out.size()) out[i + 1] = u[1];
  }
}

void RngStream::gaussians(DrawPurpose purpose, std::uint64_t step,
                          std::uint32_t agent,
                          std::span<double> out) const noexcept {
  for (std::size_t i = 0; i < out.size(); i += 2) {
    const auto u = block(purpose, step, agent, static_cast<std::uint32_t>(i / 2));
    const double radius = std::sqrt(-2.0 * std::log(u[0]));
    const double angle = 2.0 * std::numbers::pi * u[1];
    out[i] = radius * std::cos(angle);
    if (i + 1 < out.size()) out[i + 1] = radius * std::sin(angle);
  }
}

}  // namespace ssa
