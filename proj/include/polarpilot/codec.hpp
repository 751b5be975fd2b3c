// SPDX-License-Identifier: Apache-2.0
//
// Polar encoding (plain, systematic, and pilot-aware systematic) and
// successive cancellation decoding with pilot-aware LLR initialization.

#pragma once

#include <cstdint>
#include <vector>

#include "polarpilot/construction.hpp"
#include "polarpilot/pilots.hpp"

namespace polarpilot {

/// Clamp standing in for the infinite LLRs of frozen bits and pilots.
inline constexpr double kLlrMax = 300.0;

/// In-place butterfly: v becomes v * F^(x)n over GF(2); O(N log N).
/// The transform is its own inverse.
void polar_transform_inplace(std::vector<uint8_t>& v);

std::vector<uint8_t> encode_nonsystematic(const CodeSpec& spec,
                                          const std::vector<uint8_t>& info_bits);

/// Codeword whose restriction to the information set equals info_bits.
std::vector<uint8_t> encode_systematic(const CodeSpec& spec,
                                       const std::vector<uint8_t>& info_bits);

/// Pilot-aware systematic encoding: info_bits fill the non-pilot
/// information positions ascending, pilot values occupy every pilot
/// position, and the remaining frozen positions keep their frozen values.
/// Expects info_bits of length K - |info pilots| and a plan that passes
/// validate_plan.
std::vector<uint8_t> encode_with_pilots(const CodeSpec& spec, const PilotPlan& plan,
                                        const std::vector<uint8_t>& info_bits);

/// Exact check-node LLR combination, numerically stable; |f(a,b)| never
/// exceeds min(|a|,|b|).
double llr_f(double a, double b);

/// Known-bit combination: b + (1-2*bit)*a, exact and unclamped.
double llr_g(double a, double b, int bit);

/// Min-sum check-node approximation, selectable in the decoder.
double llr_f_minsum(double a, double b);

/// LLRs entering the decoding graph: `channel` on the codeword side,
/// `prior` on the source side. Frozen positions carry +/-kLlrMax priors
/// matching their frozen value; frozen-pilot positions carry a zero prior
/// because their source bits are solved during encoding.
struct LlrWord {
    std::vector<double> channel;
    std::vector<double> prior;
};

enum class LlrInitMode {
    plain,          // no pilot handling
    frozen_pilots,  // clamp received LLRs at frozen-pilot positions
    info_pilots,    // clamp received LLRs at info-pilot positions
    all_pilots      // both; the operating mode for pilot selection schemes
};

LlrWord init_llrs(const CodeSpec& spec, const PilotPlan& plan,
                  const std::vector<double>& received_llrs, LlrInitMode mode);

struct DecodeResult {
    std::vector<uint8_t> source;     // decided source word, length N
    std::vector<uint8_t> codeword;   // re-encoded source word
    std::vector<uint8_t> info_bits;  // codeword restricted to data positions
};

/// Successive cancellation decoder. Holds per-frame scratch, so use one
/// instance per worker.
class ScDecoder {
public:
    explicit ScDecoder(int block_length, bool use_minsum = false);

    DecodeResult decode(const CodeSpec& spec, const PilotPlan& plan, const LlrWord& llrs);

private:
    void decode_span(const double* llrs, uint8_t* bits, int length, int depth, int pos);
    uint8_t decide(int pos, double graph_llr);

    int block_length_;
    bool use_minsum_;
    std::vector<std::vector<double>> scratch_;  // one buffer per tree level
    std::vector<uint8_t> source_;
    const double* prior_ = nullptr;
};

}  // namespace polarpilot
