// SPDX-License-Identifier: Apache-2.0
#pragma once

namespace relaybounds {

/// Two-state output of the relay switch: with probability gamma the
/// destination sees a circularly-symmetric complex Gaussian of variance v0,
/// otherwise one of variance v1.
struct MixtureSpec {
  double gamma = 0.5;
  double v0 = 1.0;
  double v1 = 1.0;
};

/// Mutual information between the switch state and the destination output,
/// in bits, clamped to [0, H(gamma)].
double switch_info_mixture(const MixtureSpec& m);

}  // namespace relaybounds
