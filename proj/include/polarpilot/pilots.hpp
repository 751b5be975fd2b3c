// SPDX-License-Identifier: Apache-2.0
//
// Pilot selection from coded symbols. Both schemes keep the one-pass
// systematic encoder usable by guaranteeing that the generator block
// indexed by (complement of C, C) stays all-zero, where C is the union of
// the information set and the frozen-position pilots.

#pragma once

#include <vector>

#include "polarpilot/construction.hpp"
#include "polarpilot/gf2.hpp"

namespace polarpilot {

enum class PilotScheme { ueps, eps, traditional_insertion };

struct PilotPlan {
    PilotScheme scheme = PilotScheme::ueps;
    IndexSet frozen_pilots;            // inside the frozen set
    IndexSet info_pilots;              // inside the information set
    std::vector<uint8_t> pilot_values;  // over all pilots ascending, default zeros
    IndexSet combined_set;             // info set plus frozen pilots

    IndexSet pilot_positions() const { return frozen_pilots.set_union(info_pilots); }
    int num_pilots() const { return frozen_pilots.size() + info_pilots.size(); }
};

/// Frozen positions whose generator column, restricted to the frozen rows,
/// has Hamming weight exactly one. These are the only frozen positions a
/// UEPS plan may use.
IndexSet ueps_candidate_set(const CodeSpec& spec);

/// Every fourth position: {4, 8, ..., N}. EPS pilots live on this set.
IndexSet eps_candidate_set(int block_length);

/// Largest pilot-free run over {1..N}: the leading run before the first
/// pilot, the inner runs, and the trailing run after the last one.
int max_pilot_gap(const IndexSet& positions);

/// `count` members of `candidates` spread evenly across its span
/// (ranks floor(t*M/count) for t = 0..count-1).
IndexSet evenly_spaced_subset(const IndexSet& candidates, int count);

/// Pick `count` members of `candidates` one at a time, each time the
/// position that minimizes the resulting maximum gap; candidates are
/// scanned ascending so ties keep the smallest index.
IndexSet greedy_fill_min_max_gap(const IndexSet& occupied, const IndexSet& candidates, int count);

/// Custom plan assembly. Checks containment (frozen pilots inside the
/// frozen set, info pilots inside the information set) but deliberately
/// not the scheme rules, so structurally bad selections can be built and
/// fed to validate_plan.
PilotPlan make_plan(const CodeSpec& spec, PilotScheme scheme, const IndexSet& frozen_pilots,
                    const IndexSet& info_pilots, std::vector<uint8_t> pilot_values = {});

/// Uneven selection: frozen pilots are the smallest candidates first; any
/// remaining budget goes to information positions placed by greedy
/// max-gap minimization.
PilotPlan select_ueps(const CodeSpec& spec, int num_pilots);

/// Same with the frozen/info split pinned, for equal-throughput setups.
PilotPlan select_ueps(const CodeSpec& spec, int num_frozen_pilots, int num_info_pilots);

/// Even selection: all frozen candidates on the multiples-of-four grid are
/// mandatory; the rest of the budget subsamples the information-position
/// multiples of four evenly.
PilotPlan select_eps(const CodeSpec& spec, int num_pilots);

struct PlanReport {
    bool combined_block_zero = false;       // G over (complement of C, C) == 0
    bool combined_involution = false;       // G over (C, C) squares to I
    bool combined_contiguous = false;       // C domination contiguous
    bool added_columns_in_frozen_block = false;  // new columns come from the frozen/frozen block
    bool all_passed() const {
        return combined_block_zero && combined_involution && combined_contiguous &&
               added_columns_in_frozen_block;
    }
};

PlanReport validate_plan(const CodeSpec& spec, const PilotPlan& plan);

struct ThroughputReport {
    double initial_rate = 0.0;      // K/N
    double pilot_fraction = 0.0;    // total pilots / N
    double selection_rate = 0.0;    // (K - |info pilots|) / N
    double insertion_rate = 0.0;    // K / (N + total pilots)
    double gamma_closed_form = 0.0;  // (1 - alpha)(1 + alpha)
    double gamma_exact = 0.0;        // selection_rate / insertion_rate
};

/// `inserted_pilots` covers the traditional baseline, whose pilots live
/// outside the plan.
ThroughputReport throughput(const PilotPlan& plan, const CodeSpec& spec, int inserted_pilots = 0);

}  // namespace polarpilot
