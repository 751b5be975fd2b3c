// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end: code construction, pilot planning and
// verification, and the FER/MSE simulation drivers.

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>

#include "polarpilot/sim.hpp"

using json = nlohmann::json;
using namespace polarpilot;

namespace {

struct ConstructionArgs {
    int order = 8;
    int info_length = 128;
    std::string method = "ga";
    double design_ebno_db = 3.0;
    double erasure_prob = 0.5;
    std::string order_file;

    ConstructionOptions options() const {
        ConstructionOptions opt;
        if (method == "ga")
            opt.method = ConstructionMethod::gaussian_approximation;
        else if (method == "bec")
            opt.method = ConstructionMethod::bhattacharyya_bec;
        else if (method == "file")
            opt.method = ConstructionMethod::external_order;
        else
            throw std::invalid_argument("unknown construction method: " + method);
        opt.design_ebno_db = design_ebno_db;
        opt.erasure_prob = erasure_prob;
        opt.order_file = order_file;
        return opt;
    }
};

void add_construction_flags(CLI::App* cmd, ConstructionArgs& args) {
    cmd->add_option("--n", args.order, "log2 of the block length")->required();
    cmd->add_option("--k", args.info_length, "number of information bits")->required();
    cmd->add_option("--method", args.method, "construction: ga, bec, or file")
        ->check(CLI::IsMember({"ga", "bec", "file"}));
    cmd->add_option("--design-ebno", args.design_ebno_db, "design Eb/N0 in dB (ga)");
    cmd->add_option("--erasure-prob", args.erasure_prob, "design erasure probability (bec)");
    cmd->add_option("--order-file", args.order_file, "reliability order file (file)");
}

PilotScheme parse_scheme(const std::string& name) {
    if (name == "ueps") return PilotScheme::ueps;
    if (name == "eps") return PilotScheme::eps;
    if (name == "traditional") return PilotScheme::traditional_insertion;
    throw std::invalid_argument("unknown scheme: " + name);
}

PilotPlan build_plan(const CodeSpec& spec, PilotScheme scheme, int pilots, int info_pilots) {
    switch (scheme) {
        case PilotScheme::ueps:
            return info_pilots >= 0 ? select_ueps(spec, pilots - info_pilots, info_pilots)
                                    : select_ueps(spec, pilots);
        case PilotScheme::eps: {
            if (info_pilots >= 0) {
                const int mandatory =
                    eps_candidate_set(spec.block_length).intersect(spec.frozen_set()).size();
                return select_eps(spec, mandatory + info_pilots);
            }
            return select_eps(spec, pilots);
        }
        default:
            throw std::invalid_argument("pilot planning needs scheme ueps or eps");
    }
}

json throughput_json(const ThroughputReport& t) {
    return json{{"initial_rate", t.initial_rate},
                {"pilot_fraction", t.pilot_fraction},
                {"selection_rate", t.selection_rate},
                {"insertion_rate", t.insertion_rate},
                {"gamma_closed_form", t.gamma_closed_form},
                {"gamma_exact", t.gamma_exact}};
}

void apply_simulation_overrides(const CLI::App* cmd, ExperimentConfig& cfg, uint64_t seed,
                                int workers, const std::vector<double>& ebno,
                                const std::vector<double>& fd, double symbol_rate,
                                const std::string& estimator) {
    if (cmd->count("--seed")) cfg.seed = seed;
    if (cmd->count("--workers")) cfg.workers = workers;
    if (cmd->count("--ebno-db")) cfg.ebno_db_list = ebno;
    if (cmd->count("--fd-hz")) cfg.doppler_hz_list = fd;
    if (cmd->count("--symbol-rate")) cfg.symbol_duration_s = 1.0 / symbol_rate;
    if (cmd->count("--estimator")) {
        if (estimator == "ls")
            cfg.estimator = EstimatorKind::least_squares;
        else if (estimator == "mmse")
            cfg.estimator = EstimatorKind::mmse;
        else
            cfg.estimator = EstimatorKind::perfect_csi;
    }
}

void emit_rows(const std::vector<ResultRow>& rows, const std::string& out_path,
               const std::string& plot_path) {
    if (out_path.empty()) {
        write_csv(std::cout, rows);
    } else {
        std::ofstream out(out_path);
        if (!out) throw std::invalid_argument("cannot open output file " + out_path);
        write_csv(out, rows);
    }
    if (!plot_path.empty()) {
        std::ofstream plot(plot_path);
        if (!plot) throw std::invalid_argument("cannot open plot file " + plot_path);
        write_plot_data(plot, rows);
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"pilot selection and channel estimation for systematic polar codes"};
    app.require_subcommand(1);

    // construct
    ConstructionArgs construct_args;
    CLI::App* construct = app.add_subcommand("construct", "compute an information set");
    add_construction_flags(construct, construct_args);

    // plan-pilots / verify share their flags
    ConstructionArgs plan_args;
    std::string scheme_name = "eps";
    int pilots = 64;
    int info_pilots = -1;
    CLI::App* plan = app.add_subcommand("plan-pilots", "build a pilot plan and report throughput");
    CLI::App* verify = app.add_subcommand("verify", "validate a code and pilot plan");
    for (CLI::App* cmd : {plan, verify}) {
        add_construction_flags(cmd, plan_args);
        cmd->add_option("--scheme", scheme_name, "ueps or eps")
            ->check(CLI::IsMember({"ueps", "eps"}));
        cmd->add_option("--pilots", pilots, "total number of pilots");
        cmd->add_option("--info-pilots", info_pilots, "pin the pilot count inside the info set");
    }

    // simulate-fer / simulate-mse
    std::string config_path, out_path, plot_path, estimator_name;
    uint64_t seed = 1;
    int workers = 1;
    std::vector<double> ebno_override, fd_override;
    double symbol_rate = 256000.0;
    CLI::App* fer = app.add_subcommand("simulate-fer", "frame-error-rate sweep");
    CLI::App* mse = app.add_subcommand("simulate-mse", "channel-estimation error sweep");
    for (CLI::App* cmd : {fer, mse}) {
        cmd->add_option("--config", config_path, "key=value experiment file")->required();
        cmd->add_option("--seed", seed, "random seed override");
        cmd->add_option("--workers", workers, "worker thread override");
        cmd->add_option("--out", out_path, "CSV output path (default stdout)");
        cmd->add_option("--emit-plot-data", plot_path, "write per-curve (ebno, fer) pairs");
        cmd->add_option("--ebno-db", ebno_override, "Eb/N0 grid override (dB)")->delimiter(',');
        cmd->add_option("--fd-hz", fd_override, "Doppler grid override (Hz)")->delimiter(',');
        cmd->add_option("--symbol-rate", symbol_rate, "symbol rate override (sps)");
        cmd->add_option("--estimator", estimator_name, "ls, mmse, or perfect")
            ->check(CLI::IsMember({"ls", "mmse", "perfect"}));
    }

    CLI11_PARSE(app, argc, argv);

    try {
        if (construct->parsed()) {
            CodeSpec spec =
                construct_info_set(construct_args.order, construct_args.info_length,
                                   construct_args.options());
            std::cout << json(spec.info_set.members()).dump() << '\n';
            return 0;
        }

        if (plan->parsed() || verify->parsed()) {
            CodeSpec spec = construct_info_set(plan_args.order, plan_args.info_length,
                                               plan_args.options());
            PilotPlan pilot_plan = build_plan(spec, parse_scheme(scheme_name), pilots, info_pilots);

            if (plan->parsed()) {
                json out{{"scheme", to_string(pilot_plan.scheme)},
                         {"p_f", pilot_plan.frozen_pilots.members()},
                         {"p_i", pilot_plan.info_pilots.members()},
                         {"throughput", throughput_json(throughput(pilot_plan, spec))}};
                std::cout << out.dump(2) << '\n';
                return 0;
            }

            const CodeSpecReport code_report = validate_code_spec(spec);
            const PlanReport plan_report = validate_plan(spec, pilot_plan);
            auto verdict = [](bool ok) { return ok ? "pass" : "FAIL"; };
            std::cout << "code: frozen-info block zero: " << verdict(code_report.frozen_info_block_zero)
                      << "\ncode: info set contiguous:   " << verdict(code_report.info_set_contiguous)
                      << "\ncode: info block involution: " << verdict(code_report.info_block_involution)
                      << "\nplan: combined block zero:   " << verdict(plan_report.combined_block_zero)
                      << "\nplan: combined involution:   " << verdict(plan_report.combined_involution)
                      << "\nplan: combined contiguous:   " << verdict(plan_report.combined_contiguous)
                      << "\nplan: new columns in frozen block: "
                      << verdict(plan_report.added_columns_in_frozen_block) << '\n';
            return (code_report.all_passed() && plan_report.all_passed()) ? 0 : 2;
        }

        if (fer->parsed() || mse->parsed()) {
            const CLI::App* cmd = fer->parsed() ? fer : mse;
            ExperimentConfig cfg = load_config_file(config_path);
            apply_simulation_overrides(cmd, cfg, seed, workers, ebno_override, fd_override,
                                       symbol_rate, estimator_name);
            const auto rows = fer->parsed() ? run_fer(cfg) : run_mse(cfg);
            emit_rows(rows, out_path, plot_path);
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
