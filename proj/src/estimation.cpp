// SPDX-License-Identifier: Apache-2.0

#include "polarpilot/estimation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "polarpilot/codec.hpp"
#include "polarpilot/detail/cholesky.hpp"

namespace polarpilot {

std::vector<std::complex<double>> ls_estimate(const std::vector<std::complex<double>>& received_at_pilots,
                                              const std::vector<double>& pilot_symbols) {
    if (received_at_pilots.size() != pilot_symbols.size())
        throw std::invalid_argument("ls_estimate: length mismatch");
    std::vector<std::complex<double>> estimates(received_at_pilots.size());
    for (size_t i = 0; i < estimates.size(); ++i) {
        if (pilot_symbols[i] == 0.0) throw std::invalid_argument("ls_estimate: zero pilot symbol");
        estimates[i] = received_at_pilots[i] / pilot_symbols[i];
    }
    return estimates;
}

MmseFilter::MmseFilter(const IndexSet& pilot_positions, const EstimatorConfig& config)
    : count_(pilot_positions.size()) {
    if (count_ < 1) throw std::invalid_argument("MmseFilter: needs at least one pilot");

    const double loading = noise_spectral_density(config.ebno_db, config.rate_for_noise);
    const int k = count_;

    // R(i,j) = Jakes correlation at the pilot spacing
    std::vector<double> corr(static_cast<size_t>(k) * k);
    std::vector<double> packed(static_cast<size_t>(k) * (k + 1) / 2);
    for (int i = 0; i < k; ++i) {
        for (int j = 0; j < k; ++j) {
            const int lag = pilot_positions[i] - pilot_positions[j];
            corr[static_cast<size_t>(i) * k + j] =
                jakes_autocorrelation(lag, config.doppler_hz, config.symbol_duration_s);
        }
        for (int j = 0; j <= i; ++j)
            packed[static_cast<size_t>(i) * (i + 1) / 2 + j] =
                corr[static_cast<size_t>(i) * k + j] + (i == j ? loading : 0.0);
    }

    // weights = R (R + loading I)^{-1}; solve column by column against the
    // symmetric factor, exploiting that the result is symmetric
    const std::vector<double> chol = detail::cholesky_lower(packed, k);
    weights_.assign(static_cast<size_t>(k) * k, 0.0);
    std::vector<double> column(static_cast<size_t>(k));
    for (int j = 0; j < k; ++j) {
        for (int i = 0; i < k; ++i) column[static_cast<size_t>(i)] = corr[static_cast<size_t>(i) * k + j];
        detail::cholesky_solve(chol, k, column);
        for (int i = 0; i < k; ++i) weights_[static_cast<size_t>(i) * k + j] = column[static_cast<size_t>(i)];
    }
}

std::vector<std::complex<double>> MmseFilter::apply(const std::vector<std::complex<double>>& ls_estimates) const {
    if (static_cast<int>(ls_estimates.size()) != count_)
        throw std::invalid_argument("MmseFilter: estimate count differs from pilot count");
    std::vector<std::complex<double>> out(static_cast<size_t>(count_), {0.0, 0.0});
    for (int i = 0; i < count_; ++i) {
        std::complex<double> acc{0.0, 0.0};
        const double* row = weights_.data() + static_cast<size_t>(i) * count_;
        for (int j = 0; j < count_; ++j) acc += row[j] * ls_estimates[static_cast<size_t>(j)];
        out[static_cast<size_t>(i)] = acc;
    }
    return out;
}

std::vector<std::complex<double>> interpolate_linear(const IndexSet& pilot_positions,
                                                     const std::vector<std::complex<double>>& estimates,
                                                     int block_length) {
    const int k = pilot_positions.size();
    if (k < 1) throw std::invalid_argument("interpolate_linear: no pilots");
    if (static_cast<int>(estimates.size()) != k)
        throw std::invalid_argument("interpolate_linear: estimate count differs from pilot count");

    std::vector<std::complex<double>> full(static_cast<size_t>(block_length));
    const auto& p = pilot_positions.members();
    int seg = 0;  // current pilot interval [p[seg], p[seg+1]]
    for (int pos = 1; pos <= block_length; ++pos) {
        if (pos <= p.front()) {
            full[static_cast<size_t>(pos - 1)] = estimates.front();
            continue;
        }
        if (pos >= p.back()) {
            full[static_cast<size_t>(pos - 1)] = estimates.back();
            continue;
        }
        while (pos > p[static_cast<size_t>(seg + 1)]) ++seg;
        const double left = p[static_cast<size_t>(seg)];
        const double right = p[static_cast<size_t>(seg + 1)];
        const double t = (pos - left) / (right - left);
        full[static_cast<size_t>(pos - 1)] =
            (1.0 - t) * estimates[static_cast<size_t>(seg)] + t * estimates[static_cast<size_t>(seg + 1)];
    }
    return full;
}

std::vector<double> channel_llrs(const std::vector<std::complex<double>>& received,
                                 const std::vector<std::complex<double>>& channel_estimate,
                                 double noise_density) {
    if (received.size() != channel_estimate.size())
        throw std::invalid_argument("channel_llrs: length mismatch");
    if (!(noise_density > 0.0)) throw std::invalid_argument("channel_llrs: noise density must be positive");
    std::vector<double> llrs(received.size());
    for (size_t i = 0; i < received.size(); ++i) {
        const double metric = 4.0 * (std::conj(channel_estimate[i]) * received[i]).real() / noise_density;
        llrs[i] = std::clamp(metric, -kLlrMax, kLlrMax);
    }
    return llrs;
}

}  // namespace polarpilot
