#pragma once

#include <span>

#include "fluxjac/fluxes/fluxes.hpp"

namespace fluxjac {

// How the interface wavespeed estimate combines the two endpoint speeds.
enum class WavespeedPolicy { max_endpoint, rms_endpoint };

// Lax-Friedrichs dissipative flux d_S = (lambda/2)(u_L - u_R); anti-symmetric
// under swapping the states since lambda is symmetric in its arguments and
// invariant under flipping the normal.
template <class T>
void lax_friedrichs(const ConservationLaw& law, std::span<const T> ul,
                    std::span<const T> ur, const double* normal,
                    WavespeedPolicy policy, std::span<T> out) {
    using std::sqrt;
    const T ll = wavespeed(law, ul, normal);
    const T lr = wavespeed(law, ur, normal);
    T lam(0.0);
    if (policy == WavespeedPolicy::max_endpoint) {
        lam = max(ll, lr);
    } else {
        lam = sqrt((ll * ll + lr * lr) * 0.5);
    }
    for (int i = 0; i < law.n_fields; ++i) out[i] = (ul[i] - ur[i]) * 0.5 * lam;
}

}  // namespace fluxjac
