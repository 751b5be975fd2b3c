// SPDX-License-Identifier: Apache-2.0
//
// Pilot-based channel estimation: per-pilot least squares, a Wiener
// refinement built from the Jakes correlation, and linear interpolation
// to the remaining positions.

#pragma once

#include <complex>
#include <vector>

#include "polarpilot/channel.hpp"
#include "polarpilot/gf2.hpp"

namespace polarpilot {

enum class EstimatorKind { least_squares, mmse, perfect_csi };

struct EstimatorConfig {
    EstimatorKind kind = EstimatorKind::least_squares;
    double ebno_db = 0.0;
    double rate_for_noise = 0.5;     // R in the 1/(R Eb/N0) noise loading
    double doppler_hz = 0.0;         // Jakes autocorrelation parameters
    double symbol_duration_s = 1.0 / 256000.0;
};

/// Per-pilot division: estimate_p = received_p / symbol_p.
/// Pilot symbols are BPSK values and must be nonzero.
std::vector<std::complex<double>> ls_estimate(const std::vector<std::complex<double>>& received_at_pilots,
                                              const std::vector<double>& pilot_symbols);

/// Wiener filter over the pilot positions. The weights depend only on the
/// pilot geometry and the noise loading, so they are computed once at
/// construction and reused for every frame.
class MmseFilter {
public:
    MmseFilter(const IndexSet& pilot_positions, const EstimatorConfig& config);

    std::vector<std::complex<double>> apply(const std::vector<std::complex<double>>& ls_estimates) const;

    /// Row-major k x k weights, exposed for tests.
    const std::vector<double>& weights() const { return weights_; }

private:
    int count_;
    std::vector<double> weights_;
};

/// Piecewise-linear interpolation between pilot estimates, real and
/// imaginary parts independently; positions outside the pilot span hold
/// the nearest pilot value. One pilot extends as a constant.
std::vector<std::complex<double>> interpolate_linear(const IndexSet& pilot_positions,
                                                     const std::vector<std::complex<double>>& estimates,
                                                     int block_length);

/// BPSK LLRs from a matched filter: 4 Re(conj(h_hat) y) / N0, clamped.
std::vector<double> channel_llrs(const std::vector<std::complex<double>>& received,
                                 const std::vector<std::complex<double>>& channel_estimate,
                                 double noise_density);

}  // namespace polarpilot
