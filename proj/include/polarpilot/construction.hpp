// SPDX-License-Identifier: Apache-2.0
//
// Information-set construction for polar codes: Gaussian-approximation
// density evolution on BPSK-AWGN, the BEC Bhattacharyya recursion, or a
// precomputed reliability order loaded from a file.

#pragma once

#include <string>
#include <vector>

#include "polarpilot/gf2.hpp"

namespace polarpilot {

enum class ConstructionMethod { gaussian_approximation, bhattacharyya_bec, external_order };

struct ConstructionOptions {
    ConstructionMethod method = ConstructionMethod::gaussian_approximation;
    double design_ebno_db = 3.0;     // gaussian_approximation design point
    double erasure_prob = 0.5;       // bhattacharyya_bec channel parameter
    std::string order_file;          // external_order input, one index per line
};

/// A polar code: block length N = 2^n, information set, and the values
/// carried by the frozen positions (ascending over the frozen set).
struct CodeSpec {
    int order = 0;                    // n
    int block_length = 0;             // N
    int info_length = 0;              // K
    IndexSet info_set;                // positions carrying data
    std::vector<uint8_t> frozen_values;  // length N-K, all-zero by default

    IndexSet frozen_set() const { return info_set.complement(); }
    double rate() const { return static_cast<double>(info_length) / block_length; }
};

/// Reliability proxies, exposed for property tests.
/// BEC Bhattacharyya: the split of erasure probability z.
double bec_worse(double z);   // 2z - z^2
double bec_better(double z);  // z^2

/// Gaussian approximation on LLR means. `ga_phi` is the two-branch analytic
/// approximation with crossover at x = 10 (second branch scaled to remove
/// the seam); `ga_worse` switches to the exact small-mean quadratic below
/// the point where the two forms cross.
double ga_phi(double x);
double ga_phi_inv(double y);
double ga_worse(double mean);   // check-node direction
double ga_better(double mean);  // variable-node direction, 2*mean

/// Per-bit-channel reliability, index i-1 for bit channel i; larger is
/// better. For BEC the value is -Z.
std::vector<double> bit_channel_reliabilities(int order, const ConstructionOptions& opt);

/// All N indices, most reliable first. Ties prefer the larger index.
std::vector<int> reliability_order(int order, const ConstructionOptions& opt);

/// Parse a reliability-order file: one 1-based index per line, most
/// reliable first. Requires at least `needed` valid entries in [1, N].
std::vector<int> load_reliability_order(const std::string& path, int block_length, int needed);

CodeSpec construct_info_set(int order, int info_length, const ConstructionOptions& opt);

struct CodeSpecReport {
    bool frozen_info_block_zero = false;   // G over (frozen rows, info cols) == 0
    bool info_set_contiguous = false;      // domination contiguity
    bool info_block_involution = false;    // G over (info, info) squares to I
    bool all_passed() const {
        return frozen_info_block_zero && info_set_contiguous && info_block_involution;
    }
};

CodeSpecReport validate_code_spec(const CodeSpec& spec);

}  // namespace polarpilot
