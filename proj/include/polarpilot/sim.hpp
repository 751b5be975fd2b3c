// SPDX-License-Identifier: Apache-2.0
//
// Monte-Carlo link-level experiments: FER/BER and channel-estimation MSE
// for the pilot selection schemes and the traditional insertion baseline,
// with deterministic seeding and CSV output.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "polarpilot/codec.hpp"
#include "polarpilot/estimation.hpp"
#include "polarpilot/pilots.hpp"

namespace polarpilot {

struct ExperimentConfig {
    PilotScheme scheme = PilotScheme::eps;
    int order = 8;        // N = 2^order
    int info_length = 128;
    ConstructionOptions construction;
    int num_pilots = 64;
    int forced_info_pilots = -1;  // >= 0 pins the pilot count inside the info set
    std::vector<double> ebno_db_list{4.0};
    std::vector<double> doppler_hz_list{50.0};
    EstimatorKind estimator = EstimatorKind::mmse;
    double symbol_duration_s = 1.0 / 256000.0;
    long max_frames = 200000;
    int min_frame_errors = 100;
    uint64_t seed = 1;
    int workers = 1;
};

struct ResultRow {
    std::string scheme;
    std::string estimator;
    double fd_hz = 0.0;
    double ebno_db = 0.0;
    long frames = 0;
    long frame_errors = 0;
    double fer = 0.0;
    long bit_errors = 0;
    double ber = 0.0;
    double mse_pilots = 0.0;
    double mse_full = 0.0;
    double throughput = 0.0;
    double wall_time_s = 0.0;
};

/// Stream positions (1-based) of pilots inserted after every fourth coded
/// symbol. Requires num_pilots * 4 == block_length (or zero pilots).
std::vector<int> insertion_positions(int block_length, int num_pilots);

/// Interleave zero-valued pilot bits into a codeword, one after every
/// four coded symbols.
std::vector<uint8_t> insert_pilot_symbols(const std::vector<uint8_t>& codeword, int num_pilots);

/// Full decode loop per sweep point until the stop rule fires
/// (min_frame_errors frame errors, or max_frames).
std::vector<ResultRow> run_fer(const ExperimentConfig& config);

/// Estimation error only; always runs max_frames per point.
std::vector<ResultRow> run_mse(const ExperimentConfig& config);

extern const char* const kCsvHeader;
void write_csv(std::ostream& out, const std::vector<ResultRow>& rows);

/// Per-curve (ebno, fer) pairs for external plotting, one block per
/// (scheme, estimator, doppler).
void write_plot_data(std::ostream& out, const std::vector<ResultRow>& rows);

/// Flat key=value text mirroring ExperimentConfig; '#' starts a comment.
ExperimentConfig load_config_file(const std::string& path);

std::string to_string(PilotScheme scheme);
std::string to_string(EstimatorKind kind);

}  // namespace polarpilot
