#pragma once

#include <optional>

#include "anisocalc/decision.hpp"
#include "anisocalc/spaces.hpp"

namespace anisocalc {

/// Decides src -> dst on concrete descriptors. When no single rule applies,
/// one intermediate space (midpoint smoothness, index of src) is tried.
Decision embeds(const SpaceDescr& src, const SpaceDescr& dst);

/// The direct rules only, without the intermediate-space attempt.
Decision embeds_direct(const SpaceDescr& src, const SpaceDescr& dst);

/// B^{s,omega}_{p,q} -> B^{s/omega_k}_{p,q}(R^{n_k}; L_p(rest; E)), k 1-based.
SpaceDescr slice_embed(const SpaceDescr& src, int k);

/// [a, b]_theta for 0 < theta < 1.
SpaceDescr interpolate_complex(const SpaceDescr& a, const SpaceDescr& b, const Rational& theta);

/// (a, b)_{theta,q}. `y` is 1/q; leave it empty for the coupled choice q = p.
SpaceDescr interpolate_real(const SpaceDescr& a, const SpaceDescr& b, const Rational& theta,
                            const std::optional<Rational>& y);

}  // namespace anisocalc
