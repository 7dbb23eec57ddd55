#include "qcf/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

namespace qcf {

namespace {

std::vector<long> k_schedule(long k_max, int density) {
    std::vector<long> ks;
    for (int i = 0;; ++i) {
        const long k = std::lround(std::pow(2.0, static_cast<double>(i) / density));
        if (k > k_max) break;
        if (ks.empty() || k != ks.back()) ks.push_back(k);
    }
    if (ks.empty() || ks.back() != k_max) ks.push_back(k_max);
    return ks;
}

}  // namespace

double solve_fair_crossing(const std::function<double(double)>& alice_value,
                           const std::function<double(double)>& bob_value) {
    auto residual = [&](double a) { return alice_value(a) - bob_value(a); };

    const double at_top = residual(1.0);
    if (std::abs(at_top) < kFairnessTol) return 1.0;
    if (at_top > 0.0) {
        throw NoFairPointError("cheating curves do not cross: p_B(1) = " +
                               std::to_string(bob_value(1.0)) + " < p_A(1) = " +
                               std::to_string(alice_value(1.0)));
    }
    const double at_bottom = residual(0.5);
    if (std::abs(at_bottom) < kFairnessTol) return 0.5;

    double lo = 0.5, hi = 1.0;  // residual(lo) >= 0 >= residual(hi)
    double mid = 0.5 * (lo + hi);
    for (int iter = 0; iter < kMaxBisectionIters; ++iter) {
        mid = 0.5 * (lo + hi);
        const double r = residual(mid);
        if (std::abs(r) < kFairnessTol) return mid;
        (r > 0.0 ? lo : hi) = mid;
    }
    if (std::abs(residual(mid)) >= kFairnessTol) {
        throw NoFairPointError("fairness bisection failed to reach residual tolerance");
    }
    return mid;
}

StateCoefficient solve_fair_a(long k, SourceParams source) {
    const EventProbs events = event_probs(k, source);
    const double a = solve_fair_crossing(
        [](double v) { return alice_cheat(StateCoefficient(v)); },
        [&](double v) { return bob_cheat_bound(events, StateCoefficient(v)); });
    return StateCoefficient(a);
}

SourceParams solve_mu_for_abort(long k, const ChannelParams& ch, double h_target, double mu_min,
                                double mu_max) {
    if (!(mu_min > 0.0 && mu_min < mu_max)) {
        throw std::domain_error("invalid mu bracket [" + std::to_string(mu_min) + ", " +
                                std::to_string(mu_max) + "]");
    }
    auto h_at = [&](double mu) {
        return honest_abort({k, SourceParams{mu}, StateCoefficient(0.5)}, ch);
    };
    // H is strictly decreasing in mu while F eta > 0.
    const double h_hi = h_at(mu_min);
    const double h_lo = h_at(mu_max);
    if (!(h_lo <= h_target && h_target <= h_hi)) {
        throw TargetUnreachableError(
            "abort target " + std::to_string(h_target) + " outside achievable range [" +
                std::to_string(h_lo) + ", " + std::to_string(h_hi) + "] at K = " +
                std::to_string(k),
            h_target, h_lo, h_hi);
    }

    double lo = mu_min, hi = mu_max;
    double mid = 0.5 * (lo + hi);
    for (int iter = 0; iter < kMaxBisectionIters; ++iter) {
        mid = 0.5 * (lo + hi);
        const double h = h_at(mid);
        if (std::abs(h - h_target) < kAbortTol) return SourceParams{mid};
        (h > h_target ? lo : hi) = mid;
    }
    if (std::abs(h_at(mid) - h_target) >= kAbortTol) {
        throw TargetUnreachableError("abort bisection failed to reach residual tolerance",
                                     h_target, h_lo, h_hi);
    }
    return SourceParams{mid};
}

FairPoint optimize(const ChannelParams& ch, double h_target, const OptimizeOptions& opts) {
    if (opts.k_max < 1 || opts.k_max > kMaxPulses) {
        throw std::domain_error("k_max must lie in [1, " + std::to_string(kMaxPulses) + "]");
    }
    ch.validate();

    std::optional<FairPoint> best;
    std::optional<TargetUnreachableError> unreachable;
    std::string last_error = "no K value attempted";

    auto try_k = [&](long k) {
        try {
            const SourceParams mu = solve_mu_for_abort(k, ch, h_target, opts.mu_min, opts.mu_max);
            const StateCoefficient a = solve_fair_a(k, mu);
            const double p_cheat = alice_cheat(a);
            if (!best || p_cheat < best->p_cheat) {
                const ProtocolParams params{k, mu, a};
                const double h = honest_abort(params, ch);
                const double classical = classical_bound(h_target);
                best = FairPoint{params, p_cheat, h, classical, p_cheat < classical};
            }
        } catch (const TargetUnreachableError& e) {
            unreachable = e;
            last_error = e.what();
        } catch (const NoFairPointError& e) {
            last_error = e.what();
        }
    };

    for (long k : k_schedule(opts.k_max, std::max(1, opts.schedule_density))) try_k(k);
    if (!best) {
        if (unreachable) {
            throw TargetUnreachableError("no pulse count up to " + std::to_string(opts.k_max) +
                                             " reaches the abort target: " + last_error,
                                         unreachable->target, unreachable->h_min,
                                         unreachable->h_max);
        }
        throw NoFairPointError("no pulse count up to " + std::to_string(opts.k_max) +
                               " admits a fair point: " + last_error);
    }

    const long k0 = best->params.k;
    const long step = std::max<long>(1, k0 / 50);
    const long lo = std::max<long>(1, (3 * k0) / 4);
    const long hi = std::min<long>(opts.k_max, (5 * k0) / 4);
    for (long k = lo; k <= hi; k += step) try_k(k);

    // Independent re-check of the fairness residual on the returned point.
    const double residual = std::abs(alice_cheat(best->params.a) - bob_cheat_bound(best->params));
    if (residual >= kFairnessTol) {
        throw NoFairPointError("fair point failed its residual re-check: " +
                               std::to_string(residual));
    }
    return *best;
}

SweepDataset sweep_figure(int figure_id, const ChannelParams& base,
                          std::span<const double> lengths, std::span<const double> h_targets,
                          const OptimizeOptions& opts) {
    if (figure_id < 1 || figure_id > 3) {
        throw std::domain_error("figure id must be 1, 2 or 3, got " + std::to_string(figure_id));
    }
    if (lengths.empty() || h_targets.empty()) {
        throw std::domain_error("sweep grid must not be empty");
    }
    SweepDataset dataset;
    dataset.figure_id = figure_id;
    for (double length : lengths) {
        ChannelParams ch = base;
        ch.length_km = length;
        for (double h_target : h_targets) {
            SweepRow row;
            row.length_km = length;
            row.h_target = h_target;
            try {
                const FairPoint fp = optimize(ch, h_target, opts);
                row.solved = true;
                row.k = fp.params.k;
                row.mu = fp.params.source.mu;
                row.a = fp.params.a.value();
                row.p_cheat = fp.p_cheat;
                row.classical = fp.classical;
                row.advantage = fp.advantage;
            } catch (const std::exception& e) {
                row.error = e.what();
            }
            dataset.rows.push_back(std::move(row));
        }
    }
    return dataset;
}

std::vector<double> default_figure_lengths(int figure_id) {
    if (figure_id == 3) return {1.0, 10.0, 21.0};
    return {1.0, 5.0, 10.0, 15.0, 21.0};
}

std::vector<double> default_figure_h_grid(int) {
    std::vector<double> grid;
    for (int i = 0; i <= 12; ++i) grid.push_back(0.008 + 0.001 * i);
    return grid;
}

}  // namespace qcf
