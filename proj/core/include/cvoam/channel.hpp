#pragma once

#include "cvoam/gaussian.hpp"

namespace cvoam {

/// Single-mode lossy/noisy channel. delta is excess noise in shot-noise
/// units; delta = 0 is the pure-loss channel.
struct ChannelParams {
  double eta = 1.0;
  double delta = 0.0;

  /// Throws InputError unless 0 <= eta <= 1 and delta >= 0 (both finite).
  void check() const;
  bool lossy() const { return delta == 0.0; }

  friend bool operator==(const ChannelParams&, const ChannelParams&) = default;
};

/// Sends the Pr mode through the channel; the Conj mode stays with Alice.
///   Pr block    -> eta * B + (1 - eta)(1 + delta) * I
///   cross block -> sqrt(eta) * C
CovarianceMatrix apply_channel(const CovarianceMatrix& cm, const ChannelParams& ch);

/// Applies the same channel to every charge independently. Source specs are
/// carried through unchanged.
MultiplexedState apply_channel(const MultiplexedState& state, const ChannelParams& ch);

} // namespace cvoam
