// SPDX-License-Identifier: Apache-2.0

#include "polarpilot/codec.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace polarpilot {

void polar_transform_inplace(std::vector<uint8_t>& v) {
    const size_t n = v.size();
    if (n == 0 || (n & (n - 1)) != 0)
        throw std::invalid_argument("polar_transform_inplace: length must be a power of two");
    for (size_t step = 2; step <= n; step *= 2) {
        const size_t half = step / 2;
        for (size_t block = 0; block < n; block += step)
            for (size_t i = block; i < block + half; ++i) v[i] ^= v[i + half];
    }
}

namespace {

// Source bits on `set` solved from the codeword values placed there:
// u_set = x_set * G restricted to (set, set). With the relevant generator
// block zero this equals embedding x on `set`, transforming, and reading
// the same positions back.
std::vector<uint8_t> solve_source_on_set(int block_length, const IndexSet& set,
                                         const std::vector<uint8_t>& values) {
    std::vector<uint8_t> embedded(static_cast<size_t>(block_length), 0);
    for (int r = 0; r < set.size(); ++r)
        embedded[static_cast<size_t>(set[r] - 1)] = values[static_cast<size_t>(r)];
    polar_transform_inplace(embedded);
    std::vector<uint8_t> out(static_cast<size_t>(set.size()));
    for (int r = 0; r < set.size(); ++r)
        out[static_cast<size_t>(r)] = embedded[static_cast<size_t>(set[r] - 1)];
    return out;
}

std::vector<uint8_t> assemble_and_encode(const CodeSpec& spec, const IndexSet& solved_set,
                                         const std::vector<uint8_t>& codeword_values_on_set) {
    const std::vector<uint8_t> source_on_set =
        solve_source_on_set(spec.block_length, solved_set, codeword_values_on_set);

    std::vector<uint8_t> u(static_cast<size_t>(spec.block_length), 0);
    for (int r = 0; r < solved_set.size(); ++r)
        u[static_cast<size_t>(solved_set[r] - 1)] = source_on_set[static_cast<size_t>(r)];

    // remaining positions keep their frozen values
    const IndexSet frozen = spec.frozen_set();
    for (int r = 0; r < frozen.size(); ++r) {
        const int pos = frozen[r];
        if (!solved_set.contains(pos))
            u[static_cast<size_t>(pos - 1)] = spec.frozen_values[static_cast<size_t>(r)];
    }

    polar_transform_inplace(u);
    return u;
}

}  // namespace

std::vector<uint8_t> encode_nonsystematic(const CodeSpec& spec,
                                          const std::vector<uint8_t>& info_bits) {
    if (static_cast<int>(info_bits.size()) != spec.info_length)
        throw std::invalid_argument("encode_nonsystematic: info length mismatch");
    std::vector<uint8_t> u(static_cast<size_t>(spec.block_length), 0);
    for (int r = 0; r < spec.info_set.size(); ++r)
        u[static_cast<size_t>(spec.info_set[r] - 1)] = info_bits[static_cast<size_t>(r)];
    const IndexSet frozen = spec.frozen_set();
    for (int r = 0; r < frozen.size(); ++r)
        u[static_cast<size_t>(frozen[r] - 1)] = spec.frozen_values[static_cast<size_t>(r)];
    polar_transform_inplace(u);
    return u;
}

std::vector<uint8_t> encode_systematic(const CodeSpec& spec,
                                       const std::vector<uint8_t>& info_bits) {
    if (static_cast<int>(info_bits.size()) != spec.info_length)
        throw std::invalid_argument("encode_systematic: info length mismatch");
    return assemble_and_encode(spec, spec.info_set, info_bits);
}

std::vector<uint8_t> encode_with_pilots(const CodeSpec& spec, const PilotPlan& plan,
                                        const std::vector<uint8_t>& info_bits) {
    const IndexSet data_positions = spec.info_set.difference(plan.info_pilots);
    if (static_cast<int>(info_bits.size()) != data_positions.size())
        throw std::invalid_argument("encode_with_pilots: info length mismatch");

    const IndexSet pilots = plan.pilot_positions();
    const IndexSet& solved = plan.combined_set;

    std::vector<uint8_t> values(static_cast<size_t>(solved.size()), 0);
    int next_data = 0;
    for (int r = 0; r < solved.size(); ++r) {
        const int pos = solved[r];
        if (data_positions.contains(pos))
            values[static_cast<size_t>(r)] = info_bits[static_cast<size_t>(next_data++)];
    }
    for (int p = 0; p < pilots.size(); ++p) {
        const int pos = pilots[p];
        // info pilots and frozen pilots both live inside the solved set
        const auto& members = solved.members();
        const int rank = static_cast<int>(
            std::lower_bound(members.begin(), members.end(), pos) - members.begin());
        values[static_cast<size_t>(rank)] = plan.pilot_values[static_cast<size_t>(p)];
    }
    return assemble_and_encode(spec, solved, values);
}

double llr_f(double a, double b) {
    const double sign = ((a < 0.0) != (b < 0.0)) ? -1.0 : 1.0;
    const double aa = std::fabs(a);
    const double ab = std::fabs(b);
    const double mn = std::min(aa, ab);
    // 2 atanh(tanh(a/2) tanh(b/2)) in log-sum form
    return sign *
           (mn + std::log1p(std::exp(-(aa + ab))) - std::log1p(std::exp(-std::fabs(aa - ab))));
}

double llr_g(double a, double b, int bit) { return b + (bit ? -a : a); }

double llr_f_minsum(double a, double b) {
    const double sign = ((a < 0.0) != (b < 0.0)) ? -1.0 : 1.0;
    return sign * std::min(std::fabs(a), std::fabs(b));
}

LlrWord init_llrs(const CodeSpec& spec, const PilotPlan& plan,
                  const std::vector<double>& received_llrs, LlrInitMode mode) {
    if (static_cast<int>(received_llrs.size()) != spec.block_length)
        throw std::invalid_argument("init_llrs: received length mismatch");

    LlrWord word;
    word.channel = received_llrs;
    word.prior.assign(static_cast<size_t>(spec.block_length), 0.0);

    const bool clamp_frozen_pilots =
        mode == LlrInitMode::frozen_pilots || mode == LlrInitMode::all_pilots;
    const bool clamp_info_pilots =
        mode == LlrInitMode::info_pilots || mode == LlrInitMode::all_pilots;

    const IndexSet frozen = spec.frozen_set();
    for (int r = 0; r < frozen.size(); ++r) {
        const int pos = frozen[r];
        if (clamp_frozen_pilots && plan.frozen_pilots.contains(pos))
            continue;  // solved during encoding, no source-side certainty
        word.prior[static_cast<size_t>(pos - 1)] =
            spec.frozen_values[static_cast<size_t>(r)] ? -kLlrMax : kLlrMax;
    }

    const IndexSet pilots = plan.pilot_positions();
    for (int p = 0; p < pilots.size(); ++p) {
        const int pos = pilots[p];
        const bool is_frozen_pilot = plan.frozen_pilots.contains(pos);
        if ((is_frozen_pilot && !clamp_frozen_pilots) || (!is_frozen_pilot && !clamp_info_pilots))
            continue;
        word.channel[static_cast<size_t>(pos - 1)] =
            plan.pilot_values[static_cast<size_t>(p)] ? -kLlrMax : kLlrMax;
    }
    return word;
}

ScDecoder::ScDecoder(int block_length, bool use_minsum)
    : block_length_(block_length), use_minsum_(use_minsum) {
    if (block_length < 2 || (block_length & (block_length - 1)) != 0)
        throw std::invalid_argument("ScDecoder: block length must be a power of two >= 2");
    for (int len = block_length / 2; len >= 1; len /= 2)
        scratch_.emplace_back(static_cast<size_t>(len));
    source_.resize(static_cast<size_t>(block_length));
}

uint8_t ScDecoder::decide(int pos, double graph_llr) {
    const double prior = prior_[pos];
    if (prior >= kLlrMax) return 0;
    if (prior <= -kLlrMax) return 1;
    return (graph_llr + prior) < 0.0 ? 1 : 0;
}

void ScDecoder::decode_span(const double* llrs, uint8_t* bits, int length, int depth, int pos) {
    if (length == 1) {
        const uint8_t bit = decide(pos, llrs[0]);
        source_[static_cast<size_t>(pos)] = bit;
        bits[0] = bit;
        return;
    }
    const int half = length / 2;
    double* next = scratch_[static_cast<size_t>(depth)].data();

    for (int i = 0; i < half; ++i)
        next[i] = use_minsum_ ? llr_f_minsum(llrs[i], llrs[i + half]) : llr_f(llrs[i], llrs[i + half]);
    decode_span(next, bits, half, depth + 1, pos);

    for (int i = 0; i < half; ++i)
        next[i] = std::clamp(llr_g(llrs[i], llrs[i + half], bits[i]), -kLlrMax, kLlrMax);
    decode_span(next, bits + half, half, depth + 1, pos + half);

    // partial sums: this span's codeword is (left ^ right, right)
    for (int i = 0; i < half; ++i) bits[i] ^= bits[i + half];
}

DecodeResult ScDecoder::decode(const CodeSpec& spec, const PilotPlan& plan, const LlrWord& llrs) {
    if (spec.block_length != block_length_)
        throw std::invalid_argument("ScDecoder: block length differs from construction");
    if (static_cast<int>(llrs.channel.size()) != block_length_ ||
        static_cast<int>(llrs.prior.size()) != block_length_)
        throw std::invalid_argument("ScDecoder: LLR word has wrong length");

    prior_ = llrs.prior.data();
    std::vector<uint8_t> top(static_cast<size_t>(block_length_));
    decode_span(llrs.channel.data(), top.data(), block_length_, 0, 0);
    prior_ = nullptr;

    DecodeResult result;
    result.source = source_;
    result.codeword = source_;
    polar_transform_inplace(result.codeword);

    const IndexSet data_positions = spec.info_set.difference(plan.info_pilots);
    result.info_bits.reserve(static_cast<size_t>(data_positions.size()));
    for (int r = 0; r < data_positions.size(); ++r)
        result.info_bits.push_back(result.codeword[static_cast<size_t>(data_positions[r] - 1)]);
    return result;
}

}  // namespace polarpilot
