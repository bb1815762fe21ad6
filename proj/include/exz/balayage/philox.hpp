#pragma once

#include <array>
#include <cstdint>

namespace exz::bal {

/// Philox4x32-10 block function (Salmon et al., Random123).
class Philox4x32 {
 public:
  using Block = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  static Block generate(Block ctr, Key key) {
    for (int round = 0; round < 10; ++round) {
      if (round > 0) {
        key[0] += 0x9E3779B9u;
        key[1] += 0xBB67AE85u;
      }
      const std::uint64_t p0 = std::uint64_t{0xD2511F53u} * ctr[0];
      const std::uint64_t p1 = std::uint64_t{0xCD9E8D57u} * ctr[2];
      ctr = {static_cast<std::uint32_t>(p1 >> 32) ^ ctr[1] ^ key[0], static_cast<std::uint32_t>(p1),
             static_cast<std::uint32_t>(p0 >> 32) ^ ctr[3] ^ key[1], static_cast<std::uint32_t>(p0)};
    }
    return ctr;
  }
};

/// Stateless stream keyed by (seed, atom, sample): draw k uses counter (k, sample, atom lo, atom hi).
class SampleStream {
 public:
  SampleStream(std::uint64_t seed, std::uint64_t atom, std::uint32_t sample)
      : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
        atom_(atom), sample_(sample) {}

  /// Two uniforms in [0, 1) with 53 random bits each.
  std::array<double, 2> next2() {
    auto b = Philox4x32::generate({step_++, sample_, static_cast<std::uint32_t>(atom_),
                                   static_cast<std::uint32_t>(atom_ >> 32)}, key_);
    auto u = [](std::uint32_t hi, std::uint32_t lo) {
      return static_cast<double>(((std::uint64_t{hi} << 32) | lo) >> 11) * 0x1p-53;
    };
    return {u(b[0], b[1]), u(b[2], b[3])};
  }
  double next() { return next2()[0]; }

 private:
  Philox4x32::Key key_;
  std::uint64_t atom_;
  std::uint32_t sample_;
  std::uint32_t step_ = 0;
};

}  // namespace exz::bal
