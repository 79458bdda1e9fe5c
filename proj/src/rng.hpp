#pragma once

#include <array>
#include <cstdint>
#include <span>

namespace ssa {

/// Philox4x32-10 counter-based generator (Salmon et al., SC'11).
/// Stateless: the output is a pure function of (counter, key).
using PhiloxCounter = std::array<std::uint32_t, 4>;
using PhiloxKey = std::array<std::uint32_t, 2>;

PhiloxCounter philox4x32_10(PhiloxCounter counter, PhiloxKey key) noexcept;

/// Independent draw families sharing one (seed, trial) key.
enum class DrawPurpose : std::uint32_t {
  kBrownian = 0,
  kInitPosition = 1,
  kInitMass = 2,
  kGradientCheck = 3,
};

/// Hierarchical random stream.  Every variate is addressed by
/// (seed, trial, purpose, step, agent, index) and can be replayed in any
/// order, on any thread, with bit-identical results.
///
/// Wire format: key = splitmix64(seed ^ splitmix64(trial)) split into two
/// 32-bit words; counter = {step lo, step hi, agent, purpose << 24 | block}.
/// Each block yields two doubles in (0, 1) from the top 53 bits of each
/// 64-bit half; Gaussians use Box-Muller on one block per pair.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t trial) noexcept;

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t trial() const noexcept { return trial_; }

  /// Fills `out` with i.i.d. uniforms on the open interval (0, 1).
  void uniforms(DrawPurpose purpose, std::uint64_t step, std::uint32_t agent,
                std::span<double> out) const noexcept;

  /// Fills `out` with i.i.d. standard normals.
  void gaussians(DrawPurpose purpose, std::uint64_t step, std::uint32_t agent,
                 std::span<double> out) const noexcept;

 private:
  std::array<double, 2> block(DrawPurpose purpose, std::uint64_t step,
                              std::uint32_t agent,
                              std::uint32_t index) const noexcept;

  std::uint64_t seed_;
  std::uint64_t trial_;
  PhiloxKey key_;
};

std::uint64_t splitmix64(std::uint64_t x) noexcept;

}  // namespace ssa
