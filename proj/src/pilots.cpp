// SPDX-License-Identifier: Apache-2.0

#include "polarpilot/pilots.hpp"

#include <algorithm>
#include <stdexcept>

namespace polarpilot {

IndexSet ueps_candidate_set(const CodeSpec& spec) {
    const IndexSet frozen = spec.frozen_set();
    if (frozen.is_empty()) return IndexSet::empty(spec.block_length);

    const BitMatrix g = kron_power(spec.order);
    const BitMatrix frozen_rows = submatrix(g, frozen, IndexSet::full(spec.block_length));

    std::vector<int> picked;
    for (int j : frozen.members()) {
        int weight = 0;
        for (int r = 0; r < frozen_rows.rows(); ++r) weight += frozen_rows.get(r, j - 1);
        if (weight == 1) picked.push_back(j);
    }
    return IndexSet(spec.block_length, std::move(picked));
}

IndexSet eps_candidate_set(int block_length) {
    if (block_length < 4 || (block_length & (block_length - 1)) != 0)
        throw std::invalid_argument("eps_candidate_set: block length must be a power of two >= 4");
    std::vector<int> grid;
    grid.reserve(static_cast<size_t>(block_length / 4));
    for (int p = 4; p <= block_length; p += 4) grid.push_back(p);
    return IndexSet(block_length, std::move(grid));
}

int max_pilot_gap(const IndexSet& positions) {
    const int n = positions.universe_size();
    if (positions.is_empty()) return n;
    const auto& p = positions.members();
    int gap = p.front() - 1;
    for (size_t i = 1; i < p.size(); ++i) gap = std::max(gap, p[i] - p[i - 1]);
    gap = std::max(gap, n - p.back());
    return gap;
}

IndexSet evenly_spaced_subset(const IndexSet& candidates, int count) {
    if (count < 0 || count > candidates.size())
        throw std::invalid_argument("evenly_spaced_subset: count outside [0, |candidates|]");
    const int m = candidates.size();
    std::vector<int> picked;
    picked.reserve(static_cast<size_t>(count));
    for (int t = 0; t < count; ++t)
        picked.push_back(candidates[static_cast<int>(static_cast<long>(t) * m / count)]);
    return IndexSet(candidates.universe_size(), std::move(picked));
}

IndexSet greedy_fill_min_max_gap(const IndexSet& occupied, const IndexSet& candidates, int count) {
    if (count < 0) throw std::invalid_argument("greedy_fill_min_max_gap: negative count");
    IndexSet pool = candidates.difference(occupied);
    if (count > pool.size())
        throw std::invalid_argument("greedy_fill_min_max_gap: not enough candidates");

    IndexSet current = occupied;
    std::vector<int> chosen;
    for (int round = 0; round < count; ++round) {
        int best_candidate = -1;
        int best_gap = current.universe_size() + 1;
        for (int c : pool.members()) {
            const int gap = max_pilot_gap(current.set_union(IndexSet(current.universe_size(), {c})));
            if (gap < best_gap) {
                best_gap = gap;
                best_candidate = c;
            }
        }
        chosen.push_back(best_candidate);
        current = current.set_union(IndexSet(current.universe_size(), {best_candidate}));
        pool = pool.difference(IndexSet(pool.universe_size(), {best_candidate}));
    }
    return IndexSet(candidates.universe_size(), std::move(chosen));
}

PilotPlan make_plan(const CodeSpec& spec, PilotScheme scheme, const IndexSet& frozen_pilots,
                    const IndexSet& info_pilots, std::vector<uint8_t> pilot_values) {
    if (frozen_pilots.universe_size() != spec.block_length ||
        info_pilots.universe_size() != spec.block_length)
        throw std::invalid_argument("make_plan: pilot universe differs from block length");
    if (!frozen_pilots.is_subset_of(spec.frozen_set()))
        throw std::invalid_argument("make_plan: frozen pilots leave the frozen set");
    if (!info_pilots.is_subset_of(spec.info_set))
        throw std::invalid_argument("make_plan: info pilots leave the information set");

    PilotPlan plan;
    plan.scheme = scheme;
    plan.frozen_pilots = frozen_pilots;
    plan.info_pilots = info_pilots;
    plan.combined_set = spec.info_set.set_union(frozen_pilots);

    const size_t total = static_cast<size_t>(frozen_pilots.size() + info_pilots.size());
    if (pilot_values.empty()) pilot_values.assign(total, 0);
    if (pilot_values.size() != total)
        throw std::invalid_argument("make_plan: pilot value count differs from pilot count");
    for (uint8_t v : pilot_values)
        if (v > 1) throw std::invalid_argument("make_plan: pilot values must be bits");
    plan.pilot_values = std::move(pilot_values);
    return plan;
}

PilotPlan select_ueps(const CodeSpec& spec, int num_pilots) {
    if (num_pilots < 0 || num_pilots > spec.block_length)
        throw std::invalid_argument("select_ueps: pilot count outside [0, N]");
    const IndexSet candidates = ueps_candidate_set(spec);
    if (num_pilots > candidates.size() + spec.info_set.size())
        throw std::invalid_argument("select_ueps: more pilots than available positions");
    const int frozen_count = std::min(num_pilots, candidates.size());
    return select_ueps(spec, frozen_count, num_pilots - frozen_count);
}

PilotPlan select_ueps(const CodeSpec& spec, int num_frozen_pilots, int num_info_pilots) {
    const IndexSet candidates = ueps_candidate_set(spec);
    if (num_frozen_pilots < 0 || num_frozen_pilots > candidates.size())
        throw std::invalid_argument("select_ueps: frozen pilot count exceeds the candidate set");
    if (num_info_pilots < 0 || num_info_pilots > spec.info_set.size())
        throw std::invalid_argument("select_ueps: info pilot count exceeds the information set");

    std::vector<int> frozen_picked(candidates.members().begin(),
                                   candidates.members().begin() + num_frozen_pilots);
    IndexSet frozen_pilots(spec.block_length, std::move(frozen_picked));
    IndexSet info_pilots =
        greedy_fill_min_max_gap(frozen_pilots, spec.info_set, num_info_pilots);
    return make_plan(spec, PilotScheme::ueps, frozen_pilots, info_pilots);
}

PilotPlan select_eps(const CodeSpec& spec, int num_pilots) {
    const IndexSet grid = eps_candidate_set(spec.block_length);
    const IndexSet mandatory = grid.intersect(spec.frozen_set());
    const IndexSet info_candidates = grid.intersect(spec.info_set);

    if (num_pilots < mandatory.size())
        throw std::invalid_argument("select_eps: pilot budget below the mandatory frozen pilots");
    if (num_pilots > grid.size())
        throw std::invalid_argument("select_eps: pilot budget exceeds the multiples-of-four grid");

    IndexSet info_pilots = evenly_spaced_subset(info_candidates, num_pilots - mandatory.size());
    return make_plan(spec, PilotScheme::eps, mandatory, info_pilots);
}

PlanReport validate_plan(const CodeSpec& spec, const PilotPlan& plan) {
    PlanReport report;
    const BitMatrix g = kron_power(spec.order);
    const IndexSet& combined = plan.combined_set;
    const IndexSet rest = combined.complement();

    report.combined_block_zero =
        rest.is_empty() || is_zero(submatrix(g, rest, combined));
    report.combined_involution = is_involution(submatrix(g, combined, combined));
    report.combined_contiguous = is_domination_contiguous(combined, spec.order);

    // The columns gained over the (frozen, info) block are indexed by the
    // frozen pilots; they must be columns of the (frozen, frozen) block.
    report.added_columns_in_frozen_block = true;
    const IndexSet frozen = spec.frozen_set();
    if (!plan.frozen_pilots.is_subset_of(frozen)) {
        report.added_columns_in_frozen_block = false;
    } else if (!rest.is_empty() && !plan.frozen_pilots.is_empty()) {
        const BitMatrix added = submatrix(g, rest, plan.frozen_pilots);
        const BitMatrix frozen_block = submatrix(g, frozen, frozen);
        // locate each row/column of `added` inside the frozen/frozen block
        const auto& fm = frozen.members();
        auto rank_in_frozen = [&](int pos) {
            return static_cast<int>(std::lower_bound(fm.begin(), fm.end(), pos) - fm.begin());
        };
        for (int r = 0; r < added.rows() && report.added_columns_in_frozen_block; ++r) {
            for (int c = 0; c < added.cols(); ++c) {
                const int fr = rank_in_frozen(rest[r]);
                const int fc = rank_in_frozen(plan.frozen_pilots[c]);
                if (added.get(r, c) != frozen_block.get(fr, fc)) {
                    report.added_columns_in_frozen_block = false;
                    break;
                }
            }
        }
    }
    return report;
}

ThroughputReport throughput(const PilotPlan& plan, const CodeSpec& spec, int inserted_pilots) {
    if (inserted_pilots < 0) throw std::invalid_argument("throughput: negative insertion count");
    const double n = spec.block_length;
    const double k = spec.info_length;
    const int total_pilots = plan.num_pilots() + inserted_pilots;

    ThroughputReport report;
    report.initial_rate = k / n;
    report.pilot_fraction = total_pilots / n;
    report.selection_rate = (k - plan.info_pilots.size()) / n;
    report.insertion_rate = k / (n + total_pilots);
    report.gamma_closed_form = (1.0 - report.pilot_fraction) * (1.0 + report.pilot_fraction);
    report.gamma_exact = report.selection_rate / report.insertion_rate;
    return report;
}

}  // namespace polarpilot
