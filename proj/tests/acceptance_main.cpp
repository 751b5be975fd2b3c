// SPDX-License-Identifier: Apache-2.0
//
// Acceptance suite. Each criterion prints one PASS/FAIL line (plus
// indented measurements) and the process exit code is the number of
// failed criteria.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstring>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "polarpilot/sim.hpp"

using namespace polarpilot;

namespace {

int g_workers = 2;

void detail(const char* fmt, ...) {
    std::printf("        ");
    va_list args;
    va_start(args, fmt);
    std::vfprintf(stdout, fmt, args);
    va_end(args);
    std::printf("\n");
}

ConstructionOptions ga3() {
    ConstructionOptions opt;
    opt.method = ConstructionMethod::gaussian_approximation;
    opt.design_ebno_db = 3.0;
    return opt;
}

// ---------------------------------------------------------------- 1
bool structural_theorem_suite() {
    int failures = 0;
    for (int order = 2; order <= 10; ++order) {
        const int block = 1 << order;
        const BitMatrix g = kron_power(order);

        // the multiples-of-four block is zero for every size
        if (block >= 4) {
            const IndexSet grid = eps_candidate_set(block);
            if (!is_zero(submatrix(g, grid.complement(), grid))) {
                detail("N=%d: multiples-of-four block not zero", block);
                ++failures;
            }
        }
        if (order < 3) continue;

        for (double rate : {0.25, 0.5, 0.75}) {
            const int k = static_cast<int>(rate * block);
            const CodeSpec spec = construct_info_set(order, k, ga3());
            const IndexSet frozen = spec.frozen_set();

            if (!is_zero(submatrix(g, frozen, spec.info_set))) {
                detail("N=%d R=%.2f: frozen-info block not zero", block, rate);
                ++failures;
            }
            const bool involution = is_involution(submatrix(g, spec.info_set, spec.info_set));
            const bool contiguous = is_domination_contiguous(spec.info_set, order);
            if (involution != contiguous || !involution) {
                detail("N=%d R=%.2f: involution=%d contiguous=%d", block, rate, involution,
                       contiguous);
                ++failures;
            }

            for (const PilotPlan& plan :
                 {select_ueps(spec, block / 4), select_eps(spec, block / 4)}) {
                const PlanReport report = validate_plan(spec, plan);
                if (!report.all_passed()) {
                    detail("N=%d R=%.2f %s plan: zero=%d involution=%d contiguous=%d columns=%d",
                           block, rate, to_string(plan.scheme).c_str(), report.combined_block_zero,
                           report.combined_involution, report.combined_contiguous,
                           report.added_columns_in_frozen_block);
                    ++failures;
                }
            }
        }
    }
    detail("N in {8..1024} x rates {0.25,0.5,0.75}: %d structural failures", failures);
    return failures == 0;
}

// ---------------------------------------------------------------- 2
bool worked_example() {
    const BitMatrix g = kron_power(4);
    const IndexSet info(16, {8, 10, 11, 12, 13, 14, 15, 16});
    const IndexSet frozen = info.complement();

    const char* expected[8] = {"10000000", "11000000", "10100000", "11110000",
                               "10001000", "11001100", "10101010", "10000001"};
    const BitMatrix block = submatrix(g, frozen, frozen);
    bool matrix_ok = true;
    for (int r = 0; r < 8; ++r)
        for (int c = 0; c < 8; ++c)
            if (block.get(r, c) != expected[r][c] - '0') matrix_ok = false;

    CodeSpec spec{4, 16, 8, info, std::vector<uint8_t>(8, 0)};
    const IndexSet candidates = ueps_candidate_set(spec);
    const bool set_ok = candidates.members() == std::vector<int>{4, 6, 7, 9};

    detail("frozen-block matrix match: %s; weight-one column set {4,6,7,9}: %s",
           matrix_ok ? "yes" : "NO", set_ok ? "yes" : "NO");
    return matrix_ok && set_ok;
}

// ---------------------------------------------------------------- 3
bool throughput_arithmetic() {
    // closed form at a quarter pilot fraction
    CodeSpec spec128 = construct_info_set(8, 128, ga3());
    PilotPlan quarter = make_plan(spec128, PilotScheme::ueps,
                                  evenly_spaced_subset(spec128.frozen_set(), 32),
                                  evenly_spaced_subset(spec128.info_set, 32));
    const ThroughputReport quarter_report = throughput(quarter, spec128);
    const bool gamma_ok = quarter_report.gamma_closed_form == 0.9375;

    // equal-throughput bookkeeping: K=147 with 45 info pilots vs K=128 + 64 inserted
    CodeSpec spec147 = construct_info_set(8, 147, ga3());
    const int mandatory = eps_candidate_set(256).intersect(spec147.frozen_set()).size();
    PilotPlan eps_plan = select_eps(spec147, mandatory + 45);
    const ThroughputReport selection = throughput(eps_plan, spec147);
    const bool rp_ok =
        eps_plan.info_pilots.size() == 45 && selection.selection_rate == 102.0 / 256.0;

    PilotPlan none = make_plan(spec128, PilotScheme::traditional_insertion, IndexSet(256, {}),
                               IndexSet(256, {}));
    const ThroughputReport insertion = throughput(none, spec128, 64);
    const bool rt_ok = insertion.insertion_rate == 128.0 / 320.0;

    detail("gamma(0.25) = %.6f (want 0.9375); R_p = %.8f (want %.8f); R_t = %.8f (want 0.4)",
           quarter_report.gamma_closed_form, selection.selection_rate, 102.0 / 256.0,
           insertion.insertion_rate);
    return gamma_ok && rp_ok && rt_ok;
}

// ---------------------------------------------------------------- 4
bool roundtrip_suite() {
    std::atomic<long> failures{0};
    long total = 0;
    const int frames = 10000;

    for (int order = 3; order <= 10; ++order) {
        const int block = 1 << order;
        const CodeSpec spec = construct_info_set(order, block / 2, ga3());
        PilotPlan plans[3] = {
            make_plan(spec, PilotScheme::ueps, IndexSet(block, {}), IndexSet(block, {})),
            select_ueps(spec, block / 4), select_eps(spec, block / 4)};

        for (const PilotPlan& plan : plans) {
            const int data_len = spec.info_length - plan.info_pilots.size();
            auto worker = [&](int w) {
                std::mt19937_64 rng(1000u * order + 10u * static_cast<unsigned>(w) +
                                    static_cast<unsigned>(plan.num_pilots()));
                ScDecoder decoder(block);
                for (int f = w; f < frames; f += g_workers) {
                    std::vector<uint8_t> info(static_cast<size_t>(data_len));
                    for (auto& b : info) b = static_cast<uint8_t>(rng() & 1);
                    const auto x = encode_with_pilots(spec, plan, info);

                    const IndexSet pilots = plan.pilot_positions();
                    for (int p = 0; p < pilots.size(); ++p)
                        if (x[static_cast<size_t>(pilots[p] - 1)] !=
                            plan.pilot_values[static_cast<size_t>(p)])
                            ++failures;

                    std::vector<double> llrs(x.size());
                    for (size_t i = 0; i < x.size(); ++i) llrs[i] = x[i] ? -kLlrMax : kLlrMax;
                    const LlrWord word = init_llrs(spec, plan, llrs, LlrInitMode::all_pilots);
                    if (decoder.decode(spec, plan, word).info_bits != info) ++failures;
                }
            };
            std::vector<std::thread> pool;
            for (int w = 0; w < g_workers; ++w) pool.emplace_back(worker, w);
            for (auto& t : pool) t.join();
            total += frames;
        }
    }
    detail("%ld noiseless frames across N in {8..1024} x {no pilots, ueps, eps}: %ld failures",
           total, failures.load());
    return failures == 0;
}

// ---------------------------------------------------------------- 5
bool ls_mse_law() {
    bool ok = true;
    for (double ebno : {5.0, 10.0, 15.0}) {
        ExperimentConfig cfg;
        cfg.scheme = PilotScheme::eps;
        cfg.order = 8;
        cfg.info_length = 128;
        cfg.num_pilots = 64;
        cfg.construction = ga3();
        cfg.estimator = EstimatorKind::least_squares;
        cfg.ebno_db_list = {ebno};
        cfg.doppler_hz_list = {50.0};
        cfg.max_frames = 100000;
        cfg.min_frame_errors = 1;
        cfg.seed = 101;
        cfg.workers = g_workers;
        const ResultRow row = run_mse(cfg)[0];
        const double expected = 1.0 / (row.throughput * std::pow(10.0, ebno / 10.0));
        const double rel = std::fabs(row.mse_pilots - expected) / expected;
        detail("Eb/N0=%g dB: pilot MSE %.6f vs 1/(R Eb/N0)=%.6f (rel. %.2f%%)", ebno,
               row.mse_pilots, expected, 100.0 * rel);
        if (rel > 0.05) ok = false;
    }
    return ok;
}

// ---------------------------------------------------------------- 6
bool estimator_ordering() {
    // both schemes carry 64 pilots with 43 of them inside the information
    // set, so the noise normalization is identical and only the pilot
    // geometry differs
    auto mse_run = [&](PilotScheme scheme, EstimatorKind estimator, double ebno) {
        ExperimentConfig cfg;
        cfg.scheme = scheme;
        cfg.order = 8;
        cfg.info_length = 128;
        cfg.num_pilots = 64;
        cfg.forced_info_pilots = 43;
        cfg.construction = ga3();
        cfg.estimator = estimator;
        cfg.ebno_db_list = {ebno};
        cfg.doppler_hz_list = {50.0};
        cfg.max_frames = 20000;
        cfg.min_frame_errors = 1;
        cfg.seed = 202;
        cfg.workers = g_workers;
        return run_mse(cfg)[0];
    };

    bool wiener_ok = true;
    for (double ebno : {0.0, 5.0, 10.0, 15.0}) {
        const ResultRow ls = mse_run(PilotScheme::eps, EstimatorKind::least_squares, ebno);
        const ResultRow mmse = mse_run(PilotScheme::eps, EstimatorKind::mmse, ebno);
        detail("Eb/N0=%g dB: pilot MSE mmse %.6f vs ls %.6f", ebno, mmse.mse_pilots,
               ls.mse_pilots);
        if (mmse.mse_pilots > ls.mse_pilots + 1e-6) wiener_ok = false;
    }

    bool evenness_ok = true;
    for (double ebno : {5.0, 10.0, 15.0}) {
        const ResultRow eps = mse_run(PilotScheme::eps, EstimatorKind::mmse, ebno);
        const ResultRow ueps = mse_run(PilotScheme::ueps, EstimatorKind::mmse, ebno);
        detail("Eb/N0=%g dB: full-block MSE eps %.6f vs ueps %.6f", ebno, eps.mse_full,
               ueps.mse_full);
        if (eps.mse_full > ueps.mse_full) evenness_ok = false;
    }
    return wiener_ok && evenness_ok;
}

// ---------------------------------------------------------------- 7
double crossing_at(const std::vector<ResultRow>& rows, double level) {
    for (size_t i = 0; i + 1 < rows.size(); ++i) {
        const double f0 = rows[i].fer, f1 = rows[i + 1].fer;
        if (f0 >= level && f1 < level && f1 > 0.0) {
            const double t =
                (std::log10(level) - std::log10(f0)) / (std::log10(f1) - std::log10(f0));
            return rows[i].ebno_db + t * (rows[i + 1].ebno_db - rows[i].ebno_db);
        }
    }
    return std::nan("");
}

bool fer_reproduction() {
    auto base = []() {
        ExperimentConfig cfg;
        cfg.order = 8;
        cfg.construction = ga3();
        cfg.estimator = EstimatorKind::mmse;
        cfg.ebno_db_list = {4, 6, 8, 10, 12, 14, 16, 18, 20, 22, 24, 26, 28};
        cfg.doppler_hz_list = {50.0};
        cfg.max_frames = 200000;
        cfg.min_frame_errors = 100;
        cfg.seed = 303;
        cfg.workers = g_workers;
        return cfg;
    };

    ExperimentConfig eps_cfg = base();
    eps_cfg.scheme = PilotScheme::eps;
    eps_cfg.info_length = 147;
    eps_cfg.forced_info_pilots = 45;

    ExperimentConfig ueps_cfg = base();
    ueps_cfg.scheme = PilotScheme::ueps;
    ueps_cfg.info_length = 147;
    ueps_cfg.num_pilots = 64;
    ueps_cfg.forced_info_pilots = 45;

    ExperimentConfig trad_cfg = base();
    trad_cfg.scheme = PilotScheme::traditional_insertion;
    trad_cfg.info_length = 128;
    trad_cfg.num_pilots = 64;

    ExperimentConfig eps10_cfg = eps_cfg;
    eps10_cfg.doppler_hz_list = {10.0};

    const auto eps_rows = run_fer(eps_cfg);
    const auto ueps_rows = run_fer(ueps_cfg);
    const auto trad_rows = run_fer(trad_cfg);
    const auto eps10_rows = run_fer(eps10_cfg);

    for (size_t i = 0; i < eps_rows.size(); ++i)
        detail("Eb/N0=%4.0f dB: fer eps %.5f | ueps %.5f | traditional %.5f | eps@10Hz %.5f",
               eps_rows[i].ebno_db, eps_rows[i].fer, ueps_rows[i].fer, trad_rows[i].fer,
               eps10_rows[i].fer);

    // (a) ordering across the waterfall
    bool order_ok = true;
    for (size_t i = 0; i < eps_rows.size(); ++i)
        if (ueps_rows[i].fer < 0.3 && eps_rows[i].fer > ueps_rows[i].fer) order_ok = false;
    const double cross_eps = crossing_at(eps_rows, 1e-2);
    const double cross_ueps = crossing_at(ueps_rows, 1e-2);
    const double cross_trad = crossing_at(trad_rows, 1e-2);
    const bool trad_close = std::isfinite(cross_ueps) && std::isfinite(cross_trad) &&
                            std::fabs(cross_ueps - cross_trad) <= 1.0;
    detail("(a) eps<=ueps below FER 0.3: %s; |ueps-traditional| at 1e-2: %.2f dB (<= 1.0 wanted)",
           order_ok ? "yes" : "NO", std::fabs(cross_ueps - cross_trad));

    // (b) horizontal gap at FER 1e-2
    const double gap = cross_ueps - cross_eps;
    const bool gap_ok = std::isfinite(gap) && gap >= 1.0 && gap <= 3.0;
    detail("(b) crossings at FER 1e-2: eps %.2f dB, ueps %.2f dB, gap %.2f dB (1..3 wanted)",
           cross_eps, cross_ueps, gap);

    // (c) higher Doppler never helps
    bool doppler_ok = true;
    for (size_t i = 0; i < eps_rows.size(); ++i)
        if (eps_rows[i].fer < eps10_rows[i].fer) doppler_ok = false;
    detail("(c) fer(50 Hz) >= fer(10 Hz) pointwise: %s", doppler_ok ? "yes" : "NO");

    return order_ok && trad_close && gap_ok && doppler_ok;
}

// ---------------------------------------------------------------- 8
bool decoder_init_accounting() {
    const CodeSpec spec = construct_info_set(8, 128, ga3());
    const PilotPlan plan = select_eps(spec, 64);
    const std::vector<double> received(256, 0.5);

    auto clamped = [](const std::vector<double>& v) {
        int n = 0;
        for (double x : v)
            if (std::fabs(x) >= kLlrMax) ++n;
        return n;
    };

    const LlrWord plain = init_llrs(spec, plan, received, LlrInitMode::plain);
    const LlrWord fmode = init_llrs(spec, plan, received, LlrInitMode::frozen_pilots);
    const LlrWord imode = init_llrs(spec, plan, received, LlrInitMode::info_pilots);
    const LlrWord both = init_llrs(spec, plan, received, LlrInitMode::all_pilots);

    const int pf = plan.frozen_pilots.size();
    const int pi = plan.info_pilots.size();
    const bool ok = clamped(fmode.channel) == clamped(plain.channel) + pf &&
                    clamped(fmode.prior) == clamped(plain.prior) - pf &&
                    clamped(imode.channel) == clamped(plain.channel) + pi &&
                    clamped(imode.prior) == clamped(plain.prior) &&
                    clamped(both.channel) == clamped(plain.channel) + pf + pi &&
                    clamped(both.prior) == clamped(plain.prior) - pf;
    detail("|P_f|=%d |P_i|=%d; clamped right/left: plain %d/%d, frozen-pilot %d/%d, "
           "info-pilot %d/%d, both %d/%d",
           pf, pi, clamped(plain.channel), clamped(plain.prior), clamped(fmode.channel),
           clamped(fmode.prior), clamped(imode.channel), clamped(imode.prior),
           clamped(both.channel), clamped(both.prior));
    return ok;
}

struct Criterion {
    const char* name;
    bool (*run)();
};

}  // namespace

int main(int argc, char** argv) {
    if (argc > 1) g_workers = std::max(1, std::atoi(argv[1]));

    const Criterion criteria[] = {
        {"structural theorem suite", structural_theorem_suite},
        {"worked example N=16", worked_example},
        {"throughput arithmetic", throughput_arithmetic},
        {"noiseless roundtrip suite", roundtrip_suite},
        {"LS pilot MSE law", ls_mse_law},
        {"estimator ordering", estimator_ordering},
        {"FER reproduction at desk scale", fer_reproduction},
        {"decoder initialization accounting", decoder_init_accounting},
    };

    int failed = 0;
    for (const Criterion& c : criteria) {
        std::printf("...     %s\n", c.name);
        std::fflush(stdout);
        const bool ok = c.run();
        std::printf("[%s] %s\n", ok ? "PASS" : "FAIL", c.name);
        std::fflush(stdout);
        if (!ok) ++failed;
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(std::size(criteria)) - failed,
                std::size(criteria));
    return failed;
}
