// SPDX-License-Identifier: Apache-2.0

#include "polarpilot/construction.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <set>
#include <stdexcept>

namespace polarpilot {

double bec_worse(double z) { return 2.0 * z - z * z; }
double bec_better(double z) { return z * z; }

namespace {

constexpr double kPhiCrossover = 10.0;
// Scale on the asymptotic branch so the two branches meet at the crossover.
double phi_large(double x) {
    return std::sqrt(M_PI / x) * std::exp(-x / 4.0) * (1.0 - 10.0 / (7.0 * x));
}
double phi_small(double x) { return std::exp(-0.4527 * std::pow(x, 0.86) + 0.0218); }
const double kPhiSeamScale = phi_small(kPhiCrossover) / phi_large(kPhiCrossover);

// Above this mean the asymptotic exp(-x/4) underflows; the check-node map
// is then within double precision of a constant shift.
constexpr double kLargeMeanShortcut = 2000.0;
const double kCheckNodeShift = 4.0 * std::log(2.0);

}  // namespace

double ga_phi(double x) {
    if (x < 0.0) throw std::invalid_argument("ga_phi: negative mean");
    if (x == 0.0) return 1.0;
    if (x < kPhiCrossover) return phi_small(x);
    return kPhiSeamScale * phi_large(x);
}

double ga_phi_inv(double y) {
    if (y <= 0.0) throw std::invalid_argument("ga_phi_inv: argument must be positive");
    const double at_crossover = phi_small(kPhiCrossover);
    if (y >= at_crossover) {
        // invert exp(-0.4527 x^0.86 + 0.0218) in closed form
        const double t = (0.0218 - std::log(y)) / 0.4527;
        if (t <= 0.0) return 0.0;
        return std::pow(t, 1.0 / 0.86);
    }
    double lo = kPhiCrossover, hi = 3000.0;
    for (int iter = 0; iter < 200 && hi - lo > 1e-13 * hi; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (ga_phi(mid) > y)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

namespace {

double ga_worse_phi_form(double mean) {
    // 1 - (1 - p)^2 written as p*(2-p) so tiny p does not cancel to zero
    const double p = ga_phi(mean);
    return ga_phi_inv(p * (2.0 - p));
}

// Crossing point between the exact small-mean quadratic mean^2/2 and the
// phi-based form; below it the analytic approximation loses monotonicity.
double small_mean_switch() {
    static const double value = [] {
        double lo = 0.1, hi = 1.0;
        for (int iter = 0; iter < 100; ++iter) {
            const double mid = 0.5 * (lo + hi);
            if (mid * mid / 2.0 < ga_worse_phi_form(mid))
                lo = mid;
            else
                hi = mid;
        }
        return 0.5 * (lo + hi);
    }();
    return value;
}

}  // namespace

double ga_worse(double mean) {
    if (mean < 0.0) throw std::invalid_argument("ga_worse: negative mean");
    if (mean <= small_mean_switch()) return mean * mean / 2.0;
    if (mean > kLargeMeanShortcut) return mean - kCheckNodeShift;
    return ga_worse_phi_form(mean);
}

double ga_better(double mean) { return 2.0 * mean; }

std::vector<double> bit_channel_reliabilities(int order, const ConstructionOptions& opt) {
    if (order < 1 || order > kMaxGeneratorOrder)
        throw std::invalid_argument("bit_channel_reliabilities: order out of range");

    const bool ga = opt.method == ConstructionMethod::gaussian_approximation;
    if (!ga && opt.method != ConstructionMethod::bhattacharyya_bec)
        throw std::invalid_argument("bit_channel_reliabilities: method has no recursion");

    double root;
    if (ga) {
        if (!std::isfinite(opt.design_ebno_db))
            throw std::invalid_argument("bit_channel_reliabilities: design Eb/N0 not finite");
        // initial LLR mean for BPSK-AWGN at the design point
        root = 4.0 * std::pow(10.0, opt.design_ebno_db / 10.0);
    } else {
        if (!(opt.erasure_prob >= 0.0 && opt.erasure_prob <= 1.0))
            throw std::invalid_argument("bit_channel_reliabilities: erasure probability outside [0,1]");
        root = opt.erasure_prob;
    }

    // Split channels level by level; entry index grows most significant
    // bit first, so the final array is indexed by (bit channel - 1).
    std::vector<double> cur{root};
    for (int level = 0; level < order; ++level) {
        std::vector<double> next(cur.size() * 2);
        for (size_t j = 0; j < cur.size(); ++j) {
            if (ga) {
                next[2 * j] = ga_worse(cur[j]);
                next[2 * j + 1] = ga_better(cur[j]);
            } else {
                next[2 * j] = bec_worse(cur[j]);
                next[2 * j + 1] = bec_better(cur[j]);
            }
        }
        cur = std::move(next);
    }

    if (!ga)
        for (double& z : cur) z = -z;  // smaller erasure probability is better
    return cur;
}

std::vector<int> reliability_order(int order, const ConstructionOptions& opt) {
    const std::vector<double> rel = bit_channel_reliabilities(order, opt);
    std::vector<int> idx(rel.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](int a, int b) {
        if (rel[static_cast<size_t>(a)] != rel[static_cast<size_t>(b)])
            return rel[static_cast<size_t>(a)] > rel[static_cast<size_t>(b)];
        return a > b;  // ties: a later bit channel is never worse
    });
    for (int& i : idx) ++i;
    return idx;
}

std::vector<int> load_reliability_order(const std::string& path, int block_length, int needed) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("load_reliability_order: cannot open " + path);
    std::vector<int> order;
    std::set<int> seen;
    int value;
    while (in >> value) {
        if (value < 1 || value > block_length)
            throw std::invalid_argument("load_reliability_order: index outside block");
        if (!seen.insert(value).second)
            throw std::invalid_argument("load_reliability_order: duplicate index");
        order.push_back(value);
    }
    if (static_cast<int>(order.size()) < needed)
        throw std::invalid_argument("load_reliability_order: not enough entries");
    return order;
}

CodeSpec construct_info_set(int order, int info_length, const ConstructionOptions& opt) {
    if (order < 1 || order > kMaxGeneratorOrder)
        throw std::invalid_argument("construct_info_set: order out of range");
    const int block = 1 << order;
    if (info_length < 1 || info_length > block)
        throw std::invalid_argument("construct_info_set: info length outside (0, N]");

    std::vector<int> best;
    switch (opt.method) {
        case ConstructionMethod::gaussian_approximation:
        case ConstructionMethod::bhattacharyya_bec: {
            const std::vector<int> order_list = reliability_order(order, opt);
            best.assign(order_list.begin(), order_list.begin() + info_length);
            break;
        }
        case ConstructionMethod::external_order: {
            const std::vector<int> order_list =
                load_reliability_order(opt.order_file, block, info_length);
            best.assign(order_list.begin(), order_list.begin() + info_length);
            break;
        }
        default:
            throw std::invalid_argument("construct_info_set: unknown method");
    }

    CodeSpec spec;
    spec.order = order;
    spec.block_length = block;
    spec.info_length = info_length;
    spec.info_set = IndexSet(block, std::move(best));
    spec.frozen_values.assign(static_cast<size_t>(block - info_length), 0);

    // The recursion-based methods are domination-consistent by construction;
    // an imported order is not, so gate it here.
    if (opt.method == ConstructionMethod::external_order) {
        if (!validate_code_spec(spec).all_passed())
            throw std::invalid_argument(
                "construct_info_set: loaded order yields a structurally invalid information set");
    }
    return spec;
}

CodeSpecReport validate_code_spec(const CodeSpec& spec) {
    CodeSpecReport report;
    const BitMatrix g = kron_power(spec.order);
    const IndexSet frozen = spec.frozen_set();

    if (frozen.is_empty())
        report.frozen_info_block_zero = true;  // rate-1 code: nothing to check
    else
        report.frozen_info_block_zero = is_zero(submatrix(g, frozen, spec.info_set));

    report.info_set_contiguous = is_domination_contiguous(spec.info_set, spec.order);
    report.info_block_involution =
        is_involution(submatrix(g, spec.info_set, spec.info_set));
    return report;
}

}  // namespace polarpilot
