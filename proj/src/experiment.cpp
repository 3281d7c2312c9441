#include "aeqsim/experiment.hpp"

#include <atomic>
#include <cmath>
#include <numbers>
#include <random>
#include <thread>

namespace aeqsim {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

BodyState initial_state(const JitterSpec& jitter, std::uint64_t seed) {
    BodyState state{UnitQuaternion::identity(), Eigen::Vector3d::Zero()};
    if (jitter.attitude_stddev_rad <= 0.0 && jitter.rate_stddev_rad_s <= 0.0) {
        return state;
    }
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> unit_normal(0.0, 1.0);
    if (jitter.attitude_stddev_rad > 0.0) {
        Eigen::Vector3d axis(unit_normal(rng), unit_normal(rng), unit_normal(rng));
        if (axis.norm() < 1e-12) {
            axis = Eigen::Vector3d::UnitZ();
        }
        axis.normalize();
        const double angle = jitter.attitude_stddev_rad * unit_normal(rng);
        state.q = from_axis_angle({axis, angle});
    }
    if (jitter.rate_stddev_rad_s > 0.0) {
        state.omega = jitter.rate_stddev_rad_s *
                      Eigen::Vector3d(unit_normal(rng), unit_normal(rng), unit_normal(rng));
    }
    return state;
}

int count_switches(const std::vector<int>& sigma) {
    int n = 0;
    for (std::size_t i = 1; i < sigma.size(); ++i) {
        if (sigma[i] != sigma[i - 1]) {
            ++n;
        }
    }
    return n;
}

}  // namespace

void ManeuverSpec::validate() const {
    if (!omega0.allFinite()) {
        throw InvalidParameter("maneuver " + id + ": omega0 must be finite");
    }
    if (!std::isfinite(psi0) || !(psi0 > 0.0) || !(psi0 < kTwoPi)) {
        throw InvalidParameter("maneuver " + id + ": psi0 must lie in (0, 2*pi)");
    }
    if (!std::isfinite(stage1_duration) || stage1_duration < 0.0) {
        throw InvalidParameter("maneuver " + id + ": stage1_duration must be >= 0");
    }
    if (!std::isfinite(control_dt) || !(control_dt > 0.0) || control_dt > kMaxTimestep) {
        throw InvalidParameter("maneuver " + id + ": control_dt must be in (0, " +
                               std::to_string(kMaxTimestep) + "] s");
    }
    if (n_samples_stage3 < 1) {
        throw InvalidParameter("maneuver " + id + ": n_samples_stage3 must be >= 1");
    }
}

const char* to_string(ControllerKind kind) {
    switch (kind) {
        case ControllerKind::continuous:
            return "continuous";
        case ControllerKind::benchmark:
            return "benchmark";
        case ControllerKind::mps:
            return "mps";
    }
    return "unknown";
}

double stage3_entry_time(const ManeuverSpec& spec) {
    const double spin = spec.omega0.z();
    if (!(spin > 0.0)) {
        return std::numeric_limits<double>::infinity();
    }
    const double ramp_hits_psi0 = spec.stage1_duration + spec.psi0 / spin;
    // First control step at or after the crossing; the tiny slack absorbs
    // round-off when the crossing lands exactly on the grid.
    const double k = std::ceil(ramp_hits_psi0 / spec.control_dt - 1e-9);
    return k * spec.control_dt;
}

int stage_at(const ManeuverSpec& spec, double t) {
    if (t >= stage3_entry_time(spec)) {
        return 3;
    }
    return t < spec.stage1_duration ? 1 : 2;
}

ReferenceSample reference_at(const ManeuverSpec& spec, double t) {
    if (!std::isfinite(t) || t < 0.0) {
        throw InvalidParameter("reference_at: t must be finite and >= 0");
    }
    ReferenceSample ref;  // stage 1 and stage 3: hold zero yaw at rest
    if (stage_at(spec, t) != 2) {
        return ref;
    }
    const double spin = spec.omega0.z();
    const double ramp = spin * (t - spec.stage1_duration);
    ref.q_d = from_axis_angle({Eigen::Vector3d::UnitZ(), ramp});
    Eigen::Vector4d spin_quat;
    spin_quat << 0.0, 0.0, 0.0, spin;
    ref.q_d_rate = 0.5 * hamilton_product_raw(ref.q_d.as_vec4(), spin_quat);
    ref.omega_d = Eigen::Vector3d(0.0, 0.0, spin);
    return ref;
}

RunRecord run_maneuver(const ManeuverSpec& spec, ControllerKind kind, const RunSetup& setup,
                       std::uint64_t seed) {
    spec.validate();
    setup.selector.validate();
    if (!(setup.omega_limit > 0.0)) {
        throw InvalidParameter("run_maneuver: omega_limit must be > 0");
    }

    const double entry_time = stage3_entry_time(spec);
    if (!std::isfinite(entry_time)) {
        throw StageNeverEntered("maneuver " + spec.id +
                                ": yaw ramp never reaches psi0, nothing to score");
    }
    const long entry_index = std::lround(entry_time / spec.control_dt);
    const long total_steps = entry_index + spec.n_samples_stage3;

    BodyState state = initial_state(setup.jitter, seed);
    SelectorState selector{setup.selector.sigma_init, 0.0};

    RunRecord rec;
    rec.t.reserve(total_steps);
    rec.psi_d.reserve(total_steps);
    rec.psi.reserve(total_steps);
    rec.q.reserve(total_steps);
    rec.omega.reserve(total_steps);
    rec.tau.reserve(total_steps);
    rec.sigma.reserve(total_steps);
    rec.delta_gamma.reserve(total_steps);
    rec.m_e.reserve(total_steps);
    rec.n_e.reserve(total_steps);

    std::vector<Eigen::Vector3d> scored_tau;
    std::vector<Eigen::Vector3d> scored_n_e;
    scored_tau.reserve(spec.n_samples_stage3);
    scored_n_e.reserve(spec.n_samples_stage3);

    for (long k = 0; k < total_steps; ++k) {
        const double t = static_cast<double>(k) * spec.control_dt;
        const ReferenceSample raw = reference_at(spec, t);
        const ReferenceSample ref = localized_reference(raw, state.q);
        const AttitudeError err = attitude_error(state.q, ref, state.omega);

        Eigen::Vector3d tau;
        int sigma = +1;
        double delta_gamma = 0.0;
        switch (kind) {
            case ControllerKind::continuous:
                tau = torque_continuous(err, state, ref, setup.gains, setup.inertia);
                break;
            case ControllerKind::benchmark:
                tau = torque_benchmark(err, state, ref, setup.gains, setup.inertia);
                sigma = err.m_e >= 0.0 ? +1 : -1;
                break;
            case ControllerKind::mps: {
                const MpsDecision decision = mps_torque(state, ref, selector, setup.gains,
                                                        setup.inertia, setup.weights,
                                                        setup.selector);
                selector = decision.selector;
                tau = decision.torque;
                sigma = selector.sigma;
                delta_gamma = selector.last_delta_gamma;
                break;
            }
        }
        if (setup.torque_limit) {
            tau = tau.cwiseMax(-*setup.torque_limit).cwiseMin(*setup.torque_limit);
        }

        rec.t.push_back(t);
        rec.psi_d.push_back(yaw_of(raw.q_d));
        rec.psi.push_back(yaw_of(state.q));
        rec.q.push_back(state.q);
        rec.omega.push_back(state.omega);
        rec.tau.push_back(tau);
        rec.sigma.push_back(sigma);
        rec.delta_gamma.push_back(delta_gamma);
        rec.m_e.push_back(err.m_e);
        rec.n_e.push_back(err.n_e);
        if (k >= entry_index) {
            scored_tau.push_back(tau);
            scored_n_e.push_back(err.n_e);
        }

        state = integrate_step(state, tau, setup.inertia, spec.control_dt);
        if (state.omega.norm() > setup.omega_limit) {
            throw DivergedState("maneuver " + spec.id + " (" + to_string(kind) + "): |omega| " +
                                std::to_string(state.omega.norm()) + " rad/s exceeded limit " +
                                std::to_string(setup.omega_limit) + " at t=" + std::to_string(t));
        }
    }

    rec.gamma_exp = gamma_exp(scored_tau, scored_n_e, setup.weights, spec.control_dt);
    rec.switch_count = count_switches(rec.sigma);
    rec.stage3_entry_index = entry_index;
    rec.sigma_at_stage3_entry = rec.sigma[static_cast<std::size_t>(entry_index)];
    return rec;
}

double gamma_exp(const std::vector<Eigen::Vector3d>& tau_series,
                 const std::vector<Eigen::Vector3d>& n_e_series, const PfmWeights& weights,
                 double sample_dt) {
    if (tau_series.size() != n_e_series.size()) {
        throw LengthMismatch("gamma_exp: tau series has " + std::to_string(tau_series.size()) +
                             " samples, n_e series has " + std::to_string(n_e_series.size()));
    }
    if (!std::isfinite(sample_dt) || !(sample_dt > 0.0)) {
        throw InvalidParameter("gamma_exp: sample_dt must be > 0");
    }
    double cost = 0.0;
    for (std::size_t i = 0; i < tau_series.size(); ++i) {
        const Eigen::Vector3d& tau = tau_series[i];
        const Eigen::Vector3d& n_e = n_e_series[i];
        cost += (tau.dot(weights.r() * tau) + n_e.dot(weights.q() * n_e)) * sample_dt;
    }
    return cost;
}

std::uint64_t run_seed(std::uint64_t base, std::size_t spec_index, ControllerKind kind,
                       int trial) {
    std::uint64_t x = base;
    x ^= 0x9e3779b97f4a7c15ull * (static_cast<std::uint64_t>(spec_index) + 1);
    x ^= 0xbf58476d1ce4e5b9ull * (static_cast<std::uint64_t>(kind) + 1);
    x ^= 0x94d049bb133111ebull * (static_cast<std::uint64_t>(trial) + 1);
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

SweepSummary run_sweep(const std::vector<ManeuverSpec>& specs, int trials, const RunSetup& setup,
                       std::uint64_t seed, int jobs, ControllerKind first, ControllerKind second) {
    if (trials < 1) {
        throw InvalidParameter("run_sweep: trials must be >= 1");
    }
    if (jobs < 1) {
        throw InvalidParameter("run_sweep: jobs must be >= 1");
    }

    struct Task {
        std::size_t spec_index;
        ControllerKind kind;
        int trial;
    };
    std::vector<Task> tasks;
    tasks.reserve(specs.size() * 2 * static_cast<std::size_t>(trials));
    for (std::size_t si = 0; si < specs.size(); ++si) {
        for (const ControllerKind kind : {first, second}) {
            for (int trial = 0; trial < trials; ++trial) {
                tasks.push_back({si, kind, trial});
            }
        }
    }

    struct Outcome {
        bool ok{false};
        double gamma{0.0};
        int switches{0};
        int sigma_entry{0};
        std::string error;
    };
    std::vector<Outcome> outcomes(tasks.size());

    auto execute = [&](std::size_t task_index) {
        const Task& task = tasks[task_index];
        Outcome& out = outcomes[task_index];
        try {
            const RunRecord rec =
                run_maneuver(specs[task.spec_index], task.kind, setup,
                             run_seed(seed, task.spec_index, task.kind, task.trial));
            out.ok = true;
            out.gamma = rec.gamma_exp;
            out.switches = rec.switch_count;
            out.sigma_entry = rec.sigma_at_stage3_entry;
        } catch (const std::exception& e) {
            out.ok = false;
            out.error = e.what();
        }
    };

    if (jobs == 1 || tasks.size() <= 1) {
        for (std::size_t i = 0; i < tasks.size(); ++i) {
            execute(i);
        }
    } else {
        std::atomic<std::size_t> next{0};
        auto worker = [&]() {
            for (std::size_t i = next.fetch_add(1); i < tasks.size(); i = next.fetch_add(1)) {
                execute(i);
            }
        };
        const std::size_t n_threads =
            std::min<std::size_t>(static_cast<std::size_t>(jobs), tasks.size());
        std::vector<std::thread> pool;
        pool.reserve(n_threads);
        for (std::size_t i = 0; i < n_threads; ++i) {
            pool.emplace_back(worker);
        }
        for (std::thread& th : pool) {
            th.join();
        }
    }

    SweepSummary summary;
    summary.cells.reserve(specs.size() * 2);
    summary.pairs.reserve(specs.size());

    // Tasks are laid out spec-major, controller next, trial innermost.
    auto cell_for = [&](std::size_t spec_index, int slot) {
        const std::size_t base =
            (spec_index * 2 + static_cast<std::size_t>(slot)) * static_cast<std::size_t>(trials);
        SweepCell cell;
        cell.spec_id = specs[spec_index].id;
        cell.controller = slot == 0 ? first : second;
        cell.trials = trials;
        for (int trial = 0; trial < trials; ++trial) {
            const Outcome& out = outcomes[base + static_cast<std::size_t>(trial)];
            if (!out.ok) {
                cell.failed = true;
                if (cell.error.empty()) {
                    cell.error = out.error;
                }
            }
        }
        if (cell.failed) {
            return cell;
        }
        double mean = 0.0;
        for (int trial = 0; trial < trials; ++trial) {
            const Outcome& out = outcomes[base + static_cast<std::size_t>(trial)];
            mean += out.gamma;
            cell.switch_count_max = std::max(cell.switch_count_max, out.switches);
        }
        mean /= trials;
        double var = 0.0;
        if (trials > 1) {
            for (int trial = 0; trial < trials; ++trial) {
                const double d = outcomes[base + static_cast<std::size_t>(trial)].gamma - mean;
                var += d * d;
            }
            var /= (trials - 1);
        }
        cell.gamma_mean = mean;
        cell.gamma_esd = std::sqrt(var);
        cell.sigma_at_stage3_entry = outcomes[base].sigma_entry;
        return cell;
    };

    double reduction_sum = 0.0;
    int reduction_count = 0;
    for (std::size_t si = 0; si < specs.size(); ++si) {
        const SweepCell a = cell_for(si, 0);
        const SweepCell b = cell_for(si, 1);
        SweepPair pair;
        pair.spec_id = specs[si].id;
        if (!a.failed && !b.failed) {
            pair.first_mean = a.gamma_mean;
            pair.second_mean = b.gamma_mean;
            pair.reduction = 1.0 - b.gamma_mean / a.gamma_mean;
            pair.equilibria_differ = a.sigma_at_stage3_entry != b.sigma_at_stage3_entry;
            pair.valid = true;
            reduction_sum += pair.reduction;
            ++reduction_count;
        }
        summary.cells.push_back(a);
        summary.cells.push_back(b);
        summary.pairs.push_back(pair);
    }
    if (reduction_count > 0) {
        summary.aggregate_reduction = reduction_sum / reduction_count;
    }
    return summary;
}

std::vector<double> unwrap_angles(const std::vector<double>& wrapped) {
    std::vector<double> out(wrapped.size());
    double offset = 0.0;
    for (std::size_t i = 0; i < wrapped.size(); ++i) {
        if (i > 0) {
            const double jump = wrapped[i] - wrapped[i - 1];
            if (jump > std::numbers::pi) {
                offset -= kTwoPi;
            } else if (jump < -std::numbers::pi) {
                offset += kTwoPi;
            }
        }
        out[i] = wrapped[i] + offset;
    }
    return out;
}

}  // namespace aeqsim
