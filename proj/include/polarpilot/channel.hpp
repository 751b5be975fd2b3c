// SPDX-License-Identifier: Apache-2.0
//
// Correlated Rayleigh fading with the Jakes autocorrelation, BPSK
// transmission, and AWGN.

#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <vector>

namespace polarpilot {

/// J0, the zeroth-order Bessel function of the first kind. Power series
/// for small arguments, exponentially convergent quadrature of Bessel's
/// integral beyond; good to ~1e-12 over |x| <= 50 and usable far past.
double bessel_j0(double x);

/// Channel time correlation at integer lag k: J0(2 pi f_d k T).
double jakes_autocorrelation(int lag, double doppler_hz, double symbol_duration_s);

/// One-sided noise density for unit-energy symbols:
/// N0 = 1 / (R * 10^(ebno_db/10)).
double noise_spectral_density(double ebno_db, double effective_rate);

struct FadingScenario {
    double doppler_hz = 0.0;
    double symbol_duration_s = 1.0 / 256000.0;
    double ebno_db = 0.0;
    double effective_rate = 0.5;  // rate used in the Eb/N0-to-noise mapping
    uint64_t seed = 1;
};

struct ChannelRealization {
    std::vector<std::complex<double>> gain;  // unit average power per sample
    double noise_variance_per_dim = 0.0;     // N0/2
};

/// Draws length-N blocks of circularly symmetric complex Gaussian gains
/// whose covariance matches the Jakes autocorrelation. The covariance
/// factor is built once per (scenario, length); generation is a
/// triangular multiply per block. Blocks are independent of each other.
class RayleighBlockGenerator {
public:
    RayleighBlockGenerator(const FadingScenario& scenario, int block_length);

    ChannelRealization generate(std::mt19937_64& rng) const;

    int block_length() const { return length_; }

private:
    int length_;
    double noise_var_per_dim_;
    std::vector<double> chol_;  // packed lower-triangular factor
};

/// BPSK map 1 - 2x, multiply by the channel gain, add complex AWGN.
std::vector<std::complex<double>> transmit(const std::vector<uint8_t>& codeword,
                                           const ChannelRealization& realization,
                                           std::mt19937_64& rng);

}  // namespace polarpilot
