// SPDX-License-Identifier: Apache-2.0

#include "polarpilot/channel.hpp"

#include <cmath>
#include <stdexcept>

#include "polarpilot/detail/cholesky.hpp"

namespace polarpilot {

namespace {
constexpr double kDiagonalLoading = 1e-9;
}

double bessel_j0(double x) {
    x = std::fabs(x);
    if (x <= 12.0) {
        // sum (-1)^m (x^2/4)^m / (m!)^2
        const double q = x * x / 4.0;
        double term = 1.0, sum = 1.0;
        for (int m = 1; m < 80; ++m) {
            term *= -q / (static_cast<double>(m) * m);
            sum += term;
            if (std::fabs(term) < 1e-18 * std::fabs(sum) + 1e-300) break;
        }
        return sum;
    }
    // midpoint rule on (1/pi) * integral of cos(x sin t) over [0, pi];
    // the rule is exponentially accurate for this periodic integrand, with
    // aliasing error on the order of J_{2m}(x)
    const int m = x < 160.0 ? 96 : 256;
    double sum = 0.0;
    for (int k = 0; k < m; ++k) sum += std::cos(x * std::sin(M_PI * (k + 0.5) / m));
    return sum / m;
}

double jakes_autocorrelation(int lag, double doppler_hz, double symbol_duration_s) {
    return bessel_j0(2.0 * M_PI * doppler_hz * std::abs(lag) * symbol_duration_s);
}

double noise_spectral_density(double ebno_db, double effective_rate) {
    if (!(effective_rate > 0.0) || effective_rate > 1.0)
        throw std::invalid_argument("noise_spectral_density: rate outside (0, 1]");
    if (!std::isfinite(ebno_db))
        throw std::invalid_argument("noise_spectral_density: Eb/N0 not finite");
    return 1.0 / (effective_rate * std::pow(10.0, ebno_db / 10.0));
}

RayleighBlockGenerator::RayleighBlockGenerator(const FadingScenario& scenario, int block_length)
    : length_(block_length) {
    if (block_length < 1)
        throw std::invalid_argument("RayleighBlockGenerator: block length must be positive");
    if (scenario.doppler_hz < 0.0 || !(scenario.symbol_duration_s > 0.0))
        throw std::invalid_argument("RayleighBlockGenerator: bad scenario");
    noise_var_per_dim_ = noise_spectral_density(scenario.ebno_db, scenario.effective_rate) / 2.0;

    std::vector<double> cov(static_cast<size_t>(block_length) * (block_length + 1) / 2);
    for (int i = 0; i < block_length; ++i)
        for (int j = 0; j <= i; ++j)
            cov[static_cast<size_t>(i) * (i + 1) / 2 + j] =
                jakes_autocorrelation(i - j, scenario.doppler_hz, scenario.symbol_duration_s) +
                (i == j ? kDiagonalLoading : 0.0);
    chol_ = detail::cholesky_lower(cov, block_length);
}

ChannelRealization RayleighBlockGenerator::generate(std::mt19937_64& rng) const {
    std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
    std::vector<std::complex<double>> white(static_cast<size_t>(length_));
    for (auto& w : white) {
        const double re = normal(rng);
        const double im = normal(rng);
        w = {re, im};
    }

    ChannelRealization out;
    out.noise_variance_per_dim = noise_var_per_dim_;
    out.gain.assign(static_cast<size_t>(length_), {0.0, 0.0});
    for (int i = 0; i < length_; ++i) {
        std::complex<double> acc{0.0, 0.0};
        const double* row = chol_.data() + static_cast<size_t>(i) * (i + 1) / 2;
        for (int j = 0; j <= i; ++j) acc += row[j] * white[static_cast<size_t>(j)];
        out.gain[static_cast<size_t>(i)] = acc;
    }
    return out;
}

std::vector<std::complex<double>> transmit(const std::vector<uint8_t>& codeword,
                                           const ChannelRealization& realization,
                                           std::mt19937_64& rng) {
    if (codeword.size() != realization.gain.size())
        throw std::invalid_argument("transmit: codeword and channel lengths differ");
    const double sigma = std::sqrt(realization.noise_variance_per_dim);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<std::complex<double>> received(codeword.size());
    for (size_t i = 0; i < codeword.size(); ++i) {
        const double symbol = codeword[i] ? -1.0 : 1.0;
        std::complex<double> noise{0.0, 0.0};
        if (sigma > 0.0) noise = {sigma * normal(rng), sigma * normal(rng)};
        received[i] = realization.gain[i] * symbol + noise;
    }
    return received;
}

}  // namespace polarpilot
