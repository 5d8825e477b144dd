#include "cvoam/channel.hpp"

#include <cmath>

namespace cvoam {

void ChannelParams::check() const {
  if (!std::isfinite(eta) || eta < 0.0 || eta > 1.0) {
    throw InputError("transmission efficiency must lie in [0, 1]");
  }
  if (!std::isfinite(delta) || delta < 0.0) {
    throw InputError("excess noise must be finite and >= 0");
  }
}

CovarianceMatrix apply_channel(const CovarianceMatrix& cm, const ChannelParams& ch) {
  ch.check();
  require_physical(cm);
  const Eigen::Matrix2d pr =
      ch.eta * cm.pr_block() + (1.0 - ch.eta) * (1.0 + ch.delta) * Eigen::Matrix2d::Identity();
  return CovarianceMatrix::from_blocks(cm.conj_block(), pr, std::sqrt(ch.eta) * cm.cross_block());
}

MultiplexedState apply_channel(const MultiplexedState& state, const ChannelParams& ch) {
  ch.check();
  MultiplexedState out;
  for (const auto& [l, pair] : state.pairs) {
    out.pairs.emplace(l, ModePair{pair.spec, apply_channel(pair.cm, ch)});
  }
  return out;
}

} // namespace cvoam
