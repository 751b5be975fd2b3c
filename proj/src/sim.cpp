// SPDX-License-Identifier: Apache-2.0

#include "polarpilot/sim.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <memory>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "polarpilot/channel.hpp"

namespace polarpilot {

namespace {

uint64_t splitmix64(uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

uint64_t frame_seed(uint64_t master, long frame) {
    return splitmix64(master + 0x9E3779B97F4A7C15ULL * static_cast<uint64_t>(frame + 1));
}

// Everything fixed for one sweep point, shared read-only by the workers.
struct PointContext {
    const ExperimentConfig* config = nullptr;
    CodeSpec spec;
    PilotPlan plan;
    bool traditional = false;
    int inserted_pilots = 0;
    int stream_length = 0;              // N, or N + inserted pilots
    std::vector<int> pilot_stream_pos;  // 1-based positions inside the stream
    std::vector<int> data_stream_pos;   // 1-based positions of coded symbols
    std::vector<double> pilot_symbols;  // BPSK values at the pilots
    int frame_info_bits = 0;
    double effective_rate = 0.0;
    double noise_density = 0.0;
    double ebno_db = 0.0;
    double doppler_hz = 0.0;
    std::unique_ptr<RayleighBlockGenerator> generator;
    std::unique_ptr<MmseFilter> mmse;
    LlrInitMode init_mode = LlrInitMode::all_pilots;
};

struct Partial {
    long frames = 0;
    long frame_errors = 0;
    long bit_errors = 0;
    double mse_pilots_sum = 0.0;
    long mse_pilots_count = 0;
    double mse_full_sum = 0.0;
    long mse_full_count = 0;

    void merge(const Partial& other) {
        frames += other.frames;
        frame_errors += other.frame_errors;
        bit_errors += other.bit_errors;
        mse_pilots_sum += other.mse_pilots_sum;
        mse_pilots_count += other.mse_pilots_count;
        mse_full_sum += other.mse_full_sum;
        mse_full_count += other.mse_full_count;
    }
};

std::vector<uint8_t> draw_bits(int count, std::mt19937_64& rng) {
    std::vector<uint8_t> bits(static_cast<size_t>(count));
    for (auto& b : bits) b = static_cast<uint8_t>(rng() & 1);
    return bits;
}

// One frame end to end; `decode` false skips the decoder for MSE-only runs.
void run_frame(const PointContext& ctx, ScDecoder* decoder, uint64_t seed, bool decode,
               Partial& acc) {
    std::mt19937_64 rng(seed);
    const std::vector<uint8_t> info = draw_bits(ctx.frame_info_bits, rng);

    std::vector<uint8_t> stream;
    if (ctx.traditional) {
        stream = insert_pilot_symbols(encode_systematic(ctx.spec, info), ctx.inserted_pilots);
    } else {
        stream = encode_with_pilots(ctx.spec, ctx.plan, info);
    }

    const ChannelRealization channel = ctx.generator->generate(rng);
    const auto received = transmit(stream, channel, rng);

    // channel estimate over the whole stream
    std::vector<std::complex<double>> estimate;
    if (ctx.config->estimator == EstimatorKind::perfect_csi) {
        estimate = channel.gain;
    } else {
        std::vector<std::complex<double>> at_pilots(ctx.pilot_stream_pos.size());
        for (size_t i = 0; i < at_pilots.size(); ++i)
            at_pilots[i] = received[static_cast<size_t>(ctx.pilot_stream_pos[i] - 1)];
        std::vector<std::complex<double>> refined = ls_estimate(at_pilots, ctx.pilot_symbols);
        if (ctx.config->estimator == EstimatorKind::mmse) refined = ctx.mmse->apply(refined);
        for (size_t i = 0; i < refined.size(); ++i) {
            acc.mse_pilots_sum +=
                std::norm(refined[i] - channel.gain[static_cast<size_t>(ctx.pilot_stream_pos[i] - 1)]);
            ++acc.mse_pilots_count;
        }
        estimate = interpolate_linear(IndexSet(ctx.stream_length, ctx.pilot_stream_pos), refined,
                                      ctx.stream_length);
    }
    for (size_t i = 0; i < estimate.size(); ++i) {
        acc.mse_full_sum += std::norm(estimate[i] - channel.gain[i]);
        ++acc.mse_full_count;
    }

    ++acc.frames;
    if (!decode) return;

    // LLRs for the coded symbols only
    std::vector<std::complex<double>> y_data(ctx.data_stream_pos.size());
    std::vector<std::complex<double>> h_data(ctx.data_stream_pos.size());
    for (size_t i = 0; i < y_data.size(); ++i) {
        y_data[i] = received[static_cast<size_t>(ctx.data_stream_pos[i] - 1)];
        h_data[i] = estimate[static_cast<size_t>(ctx.data_stream_pos[i] - 1)];
    }
    const std::vector<double> llrs = channel_llrs(y_data, h_data, ctx.noise_density);
    const LlrWord word = init_llrs(ctx.spec, ctx.plan, llrs, ctx.init_mode);
    const DecodeResult out = decoder->decode(ctx.spec, ctx.plan, word);

    long wrong = 0;
    for (size_t i = 0; i < info.size(); ++i)
        if (out.info_bits[i] != info[i]) ++wrong;
    acc.bit_errors += wrong;
    if (wrong > 0) ++acc.frame_errors;
}

ResultRow run_point(const PointContext& ctx, bool decode) {
    const ExperimentConfig& cfg = *ctx.config;
    const auto start = std::chrono::steady_clock::now();

    constexpr long kChunk = 256;
    const int workers = std::max(1, cfg.workers);
    Partial total;
    long next_frame = 0;

    while (next_frame < cfg.max_frames &&
           (!decode || total.frame_errors < cfg.min_frame_errors)) {
        // one wave: `workers` deterministic chunks, merged in worker order
        std::vector<Partial> partials(static_cast<size_t>(workers));
        auto task = [&](int w) {
            const long begin = next_frame + static_cast<long>(w) * kChunk;
            const long end = std::min(begin + kChunk, cfg.max_frames);
            if (begin >= end) return;
            ScDecoder decoder(ctx.spec.block_length);
            for (long f = begin; f < end; ++f)
                run_frame(ctx, &decoder, frame_seed(cfg.seed, f), decode,
                          partials[static_cast<size_t>(w)]);
        };
        if (workers == 1) {
            task(0);
        } else {
            std::vector<std::thread> pool;
            pool.reserve(static_cast<size_t>(workers));
            for (int w = 0; w < workers; ++w) pool.emplace_back(task, w);
            for (auto& t : pool) t.join();
        }
        for (const Partial& p : partials) total.merge(p);
        next_frame = std::min(next_frame + static_cast<long>(workers) * kChunk, cfg.max_frames);
    }

    ResultRow row;
    row.scheme = to_string(cfg.scheme);
    row.estimator = to_string(cfg.estimator);
    row.fd_hz = ctx.doppler_hz;
    row.ebno_db = ctx.ebno_db;
    row.frames = total.frames;
    row.frame_errors = total.frame_errors;
    row.fer = total.frames ? static_cast<double>(total.frame_errors) / total.frames : 0.0;
    row.bit_errors = total.bit_errors;
    row.ber = total.frames
                  ? static_cast<double>(total.bit_errors) /
                        (static_cast<double>(total.frames) * ctx.frame_info_bits)
                  : 0.0;
    row.mse_pilots =
        total.mse_pilots_count ? total.mse_pilots_sum / total.mse_pilots_count : 0.0;
    row.mse_full = total.mse_full_count ? total.mse_full_sum / total.mse_full_count : 0.0;
    row.throughput = ctx.effective_rate;
    row.wall_time_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return row;
}

PointContext make_context(const ExperimentConfig& cfg) {
    if (cfg.max_frames < 1 || cfg.min_frame_errors < 1)
        throw std::invalid_argument("experiment: stop rule needs positive frame and error counts");
    if (cfg.ebno_db_list.empty() || cfg.doppler_hz_list.empty())
        throw std::invalid_argument("experiment: empty sweep");

    PointContext ctx;
    ctx.config = &cfg;
    ctx.spec = construct_info_set(cfg.order, cfg.info_length, cfg.construction);
    const int block = ctx.spec.block_length;

    switch (cfg.scheme) {
        case PilotScheme::ueps: {
            if (cfg.forced_info_pilots >= 0)
                ctx.plan = select_ueps(ctx.spec, cfg.num_pilots - cfg.forced_info_pilots,
                                       cfg.forced_info_pilots);
            else
                ctx.plan = select_ueps(ctx.spec, cfg.num_pilots);
            break;
        }
        case PilotScheme::eps: {
            if (cfg.forced_info_pilots >= 0) {
                // the mandatory frozen pilots come on top of the pinned
                // info-pilot count
                const int mandatory =
                    eps_candidate_set(block).intersect(ctx.spec.frozen_set()).size();
                ctx.plan = select_eps(ctx.spec, mandatory + cfg.forced_info_pilots);
            } else {
                ctx.plan = select_eps(ctx.spec, cfg.num_pilots);
            }
            break;
        }
        case PilotScheme::traditional_insertion: {
            ctx.plan = make_plan(ctx.spec, PilotScheme::traditional_insertion,
                                 IndexSet(block, {}), IndexSet(block, {}));
            ctx.traditional = true;
            ctx.inserted_pilots = cfg.num_pilots;
            break;
        }
    }

    if (!ctx.traditional && !validate_plan(ctx.spec, ctx.plan).all_passed())
        throw std::invalid_argument("experiment: pilot plan failed validation");

    if (ctx.traditional) {
        ctx.stream_length = block + ctx.inserted_pilots;
        const std::vector<int> pilots = insertion_positions(block, ctx.inserted_pilots);
        ctx.pilot_stream_pos = pilots;
        IndexSet pilot_set(ctx.stream_length, pilots);
        ctx.data_stream_pos = pilot_set.complement().members();
        ctx.pilot_symbols.assign(pilots.size(), 1.0);
        ctx.frame_info_bits = ctx.spec.info_length;
        ctx.effective_rate =
            static_cast<double>(ctx.spec.info_length) / (block + ctx.inserted_pilots);
        ctx.init_mode = LlrInitMode::plain;
    } else {
        ctx.stream_length = block;
        ctx.pilot_stream_pos = ctx.plan.pilot_positions().members();
        ctx.data_stream_pos = IndexSet::full(block).members();
        ctx.pilot_symbols.resize(ctx.pilot_stream_pos.size());
        for (size_t i = 0; i < ctx.pilot_symbols.size(); ++i)
            ctx.pilot_symbols[i] = ctx.plan.pilot_values[i] ? -1.0 : 1.0;
        ctx.frame_info_bits = ctx.spec.info_length - ctx.plan.info_pilots.size();
        ctx.effective_rate = static_cast<double>(ctx.frame_info_bits) / block;
        ctx.init_mode = LlrInitMode::all_pilots;
    }
    return ctx;
}

std::vector<ResultRow> run_experiment(const ExperimentConfig& cfg, bool decode) {
    PointContext ctx = make_context(cfg);
    std::vector<ResultRow> rows;
    for (double fd : cfg.doppler_hz_list) {
        for (double ebno : cfg.ebno_db_list) {
            ctx.ebno_db = ebno;
            ctx.doppler_hz = fd;
            ctx.noise_density = noise_spectral_density(ebno, ctx.effective_rate);

            FadingScenario scenario;
            scenario.doppler_hz = fd;
            scenario.symbol_duration_s = cfg.symbol_duration_s;
            scenario.ebno_db = ebno;
            scenario.effective_rate = ctx.effective_rate;
            ctx.generator = std::make_unique<RayleighBlockGenerator>(scenario, ctx.stream_length);

            if (cfg.estimator == EstimatorKind::mmse) {
                EstimatorConfig est;
                est.kind = EstimatorKind::mmse;
                est.ebno_db = ebno;
                est.rate_for_noise = ctx.effective_rate;
                est.doppler_hz = fd;
                est.symbol_duration_s = cfg.symbol_duration_s;
                ctx.mmse = std::make_unique<MmseFilter>(
                    IndexSet(ctx.stream_length, ctx.pilot_stream_pos), est);
            }
            rows.push_back(run_point(ctx, decode));
        }
    }
    return rows;
}

}  // namespace

std::vector<int> insertion_positions(int block_length, int num_pilots) {
    if (num_pilots == 0) return {};
    if (num_pilots < 0 || num_pilots * 4 != block_length)
        throw std::invalid_argument(
            "insertion_positions: pattern needs one pilot per four coded symbols");
    std::vector<int> positions(static_cast<size_t>(num_pilots));
    for (int k = 1; k <= num_pilots; ++k) positions[static_cast<size_t>(k - 1)] = 5 * k;
    return positions;
}

std::vector<uint8_t> insert_pilot_symbols(const std::vector<uint8_t>& codeword, int num_pilots) {
    if (num_pilots == 0) return codeword;
    if (num_pilots < 0 || static_cast<size_t>(num_pilots) * 4 != codeword.size())
        throw std::invalid_argument(
            "insert_pilot_symbols: pattern needs one pilot per four coded symbols");
    std::vector<uint8_t> stream;
    stream.reserve(codeword.size() + static_cast<size_t>(num_pilots));
    for (size_t i = 0; i < codeword.size(); ++i) {
        stream.push_back(codeword[i]);
        if ((i + 1) % 4 == 0) stream.push_back(0);
    }
    return stream;
}

std::vector<ResultRow> run_fer(const ExperimentConfig& config) { return run_experiment(config, true); }

std::vector<ResultRow> run_mse(const ExperimentConfig& config) { return run_experiment(config, false); }

const char* const kCsvHeader =
    "scheme,estimator,fd_hz,ebno_db,frames,frame_errors,fer,bit_errors,ber,"
    "mse_pilots,mse_full,throughput,wall_time_s";

void write_csv(std::ostream& out, const std::vector<ResultRow>& rows) {
    out << kCsvHeader << '\n';
    char line[512];
    for (const ResultRow& r : rows) {
        std::snprintf(line, sizeof(line), "%s,%s,%g,%g,%ld,%ld,%.8g,%ld,%.8g,%.8g,%.8g,%.8g,%.3f",
                      r.scheme.c_str(), r.estimator.c_str(), r.fd_hz, r.ebno_db, r.frames,
                      r.frame_errors, r.fer, r.bit_errors, r.ber, r.mse_pilots, r.mse_full,
                      r.throughput, r.wall_time_s);
        out << line << '\n';
    }
}

void write_plot_data(std::ostream& out, const std::vector<ResultRow>& rows) {
    std::string current;
    for (const ResultRow& r : rows) {
        std::string curve = r.scheme + "-" + r.estimator + "-fd" + std::to_string(r.fd_hz);
        if (curve != current) {
            if (!current.empty()) out << '\n';
            out << "# " << curve << '\n';
            current = curve;
        }
        char line[128];
        std::snprintf(line, sizeof(line), "%g %.8g", r.ebno_db, r.fer);
        out << line << '\n';
    }
}

std::string to_string(PilotScheme scheme) {
    switch (scheme) {
        case PilotScheme::ueps: return "ueps";
        case PilotScheme::eps: return "eps";
        case PilotScheme::traditional_insertion: return "traditional";
    }
    return "?";
}

std::string to_string(EstimatorKind kind) {
    switch (kind) {
        case EstimatorKind::least_squares: return "ls";
        case EstimatorKind::mmse: return "mmse";
        case EstimatorKind::perfect_csi: return "perfect";
    }
    return "?";
}

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

std::vector<double> parse_list(const std::string& value) {
    std::vector<double> out;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(std::stod(item));
    }
    return out;
}

}  // namespace

ExperimentConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("load_config_file: cannot open " + path);

    ExperimentConfig cfg;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config line " + std::to_string(line_no) +
                                        ": expected key=value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));

        if (key == "scheme") {
            if (value == "ueps")
                cfg.scheme = PilotScheme::ueps;
            else if (value == "eps")
                cfg.scheme = PilotScheme::eps;
            else if (value == "traditional")
                cfg.scheme = PilotScheme::traditional_insertion;
            else
                throw std::invalid_argument("config: unknown scheme " + value);
        } else if (key == "n") {
            cfg.order = std::stoi(value);
        } else if (key == "k") {
            cfg.info_length = std::stoi(value);
        } else if (key == "pilots") {
            cfg.num_pilots = std::stoi(value);
        } else if (key == "info_pilots") {
            cfg.forced_info_pilots = std::stoi(value);
        } else if (key == "method") {
            if (value == "ga")
                cfg.construction.method = ConstructionMethod::gaussian_approximation;
            else if (value == "bec")
                cfg.construction.method = ConstructionMethod::bhattacharyya_bec;
            else if (value == "file")
                cfg.construction.method = ConstructionMethod::external_order;
            else
                throw std::invalid_argument("config: unknown method " + value);
        } else if (key == "design_ebno_db") {
            cfg.construction.design_ebno_db = std::stod(value);
        } else if (key == "erasure_prob") {
            cfg.construction.erasure_prob = std::stod(value);
        } else if (key == "order_file") {
            cfg.construction.order_file = value;
        } else if (key == "estimator") {
            if (value == "ls")
                cfg.estimator = EstimatorKind::least_squares;
            else if (value == "mmse")
                cfg.estimator = EstimatorKind::mmse;
            else if (value == "perfect")
                cfg.estimator = EstimatorKind::perfect_csi;
            else
                throw std::invalid_argument("config: unknown estimator " + value);
        } else if (key == "ebno_db") {
            cfg.ebno_db_list = parse_list(value);
        } else if (key == "fd_hz") {
            cfg.doppler_hz_list = parse_list(value);
        } else if (key == "symbol_rate_sps") {
            cfg.symbol_duration_s = 1.0 / std::stod(value);
        } else if (key == "max_frames") {
            cfg.max_frames = std::stol(value);
        } else if (key == "min_frame_errors") {
            cfg.min_frame_errors = std::stoi(value);
        } else if (key == "seed") {
            cfg.seed = std::stoull(value);
        } else if (key == "workers") {
            cfg.workers = std::stoi(value);
        } else {
            throw std::invalid_argument("config: unknown key " + key);
        }
    }
    return cfg;
}

}  // namespace polarpilot
