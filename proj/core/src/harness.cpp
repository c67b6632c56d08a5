#include "repol/harness.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "repol/errors.hpp"
#include "repol/framework.hpp"
#include "repol/iid_experts.hpp"

namespace repol {

Transcript run_learner(OnlineLearner& learner, const std::vector<CostVector>& sequence,
                       const ActionSet& actions) {
    Transcript tr;
    const std::size_t T = sequence.size();
    tr.actions.reserve(T);
    tr.costs_incurred.reserve(T);
    tr.cumulative_cost_vectors.reserve(T);
    KahanVector cum(actions.dim());
    for (const auto& c : sequence) {
        const std::size_t a = learner.next_action();
        tr.actions.push_back(a);
        tr.costs_incurred.push_back(actions.action_cost(a, c.values()));
        learner.observe(c);
        cum.add(c.values());
        tr.cumulative_cost_vectors.push_back(cum.value());
    }
    return tr;
}

PairedRunResult paired_run(const LearnerFactory& factory, const DistributionSequence& seq,
                           const ActionSet& actions, const Bundle& bundle) {
    const auto s1 = sample_trajectory(seq, bundle.fork("traj1"));
    const auto s2 = sample_trajectory(seq, bundle.fork("traj2"));
    const Bundle alg = bundle.fork("alg");
    auto l1 = factory(alg);
    auto l2 = factory(alg);
    PairedRunResult res{run_learner(*l1, s1, actions), run_learner(*l2, s2, actions), true,
                        std::nullopt, 1.0};
    if (res.transcript_1.length() != res.transcript_2.length()) {
        throw Error("internal", "paired transcripts have different lengths");
    }
    long matches = 0;
    const long T = static_cast<long>(res.transcript_1.length());
    for (long t = 0; t < T; ++t) {
        if (res.transcript_1.actions[t] == res.transcript_2.actions[t]) {
            ++matches;
        } else if (res.identical) {
            res.identical = false;
            res.first_divergence = t + 1;
        }
    }
    res.per_step_match_rate = T == 0 ? 1.0 : static_cast<double>(matches) / static_cast<double>(T);
    return res;
}

ReplicabilityEstimate estimate_replicability(const LearnerFactory& factory,
                                             const DistributionSequence& seq,
                                             const ActionSet& actions, long trials,
                                             std::uint64_t master_seed, double confidence,
                                             unsigned threads) {
    if (trials < 1) throw Error("domain", "trials must be >= 1");
    const Bundle root(master_seed);
    std::vector<char> ok(static_cast<std::size_t>(trials), 0);
    std::vector<double> step_match(static_cast<std::size_t>(trials), 0.0);
    parallel_for(static_cast<std::size_t>(trials), threads, [&](std::size_t i) {
        const auto pr = paired_run(factory, seq, actions, root.fork(static_cast<std::uint64_t>(i)));
        ok[i] = pr.identical ? 1 : 0;
        step_match[i] = pr.per_step_match_rate;
    });
    long successes = 0;
    double mean_step = 0.0;
    for (std::size_t i = 0; i < ok.size(); ++i) {
        successes += ok[i];
        mean_step += step_match[i];
    }
    mean_step /= static_cast<double>(trials);
    const auto ci = clopper_pearson(successes, trials, confidence);
    return ReplicabilityEstimate{successes,
                                 trials,
                                 static_cast<double>(successes) / static_cast<double>(trials),
                                 ci.low,
                                 ci.high,
                                 confidence,
                                 mean_step};
}

RegretSummary evaluate_regret(const LearnerFactory& factory,
                              const std::vector<CostVector>& sequence, const ActionSet& actions,
                              long trials, std::uint64_t master_seed, unsigned threads) {
    if (trials < 1) throw Error("domain", "trials must be >= 1");
    const Bundle root(master_seed);
    std::vector<double> regrets(static_cast<std::size_t>(trials), 0.0);
    parallel_for(static_cast<std::size_t>(trials), threads, [&](std::size_t i) {
        const Bundle trial = root.fork(static_cast<std::uint64_t>(i));
        auto learner = factory(trial.fork("alg"));
        const auto tr = run_learner(*learner, sequence, actions);
        regrets[i] = regret(tr, sequence, actions).regret;
    });
    const auto ms = mean_and_se(regrets);
    return RegretSummary{ms.mean, ms.se, std::move(regrets)};
}

RegretSummary evaluate_regret(const LearnerFactory& factory, const DistributionSequence& seq,
                              const ActionSet& actions, long trials, std::uint64_t master_seed,
                              bool resample_per_trial, unsigned threads) {
    if (trials < 1) throw Error("domain", "trials must be >= 1");
    const Bundle root(master_seed);
    if (!resample_per_trial) {
        const auto instance = sample_trajectory(seq, root.fork("instance"));
        return evaluate_regret(factory, instance, actions, trials, master_seed, threads);
    }
    std::vector<double> regrets(static_cast<std::size_t>(trials), 0.0);
    parallel_for(static_cast<std::size_t>(trials), threads, [&](std::size_t i) {
        const Bundle trial = root.fork(static_cast<std::uint64_t>(i));
        const auto instance = sample_trajectory(seq, trial.fork("traj1"));
        auto learner = factory(trial.fork("alg"));
        const auto tr = run_learner(*learner, instance, actions);
        regrets[i] = regret(tr, instance, actions).regret;
    });
    const auto ms = mean_and_se(regrets);
    return RegretSummary{ms.mean, ms.se, std::move(regrets)};
}

namespace {

double default_ftpl_eps(long T) { return 1.0 / std::sqrt(static_cast<double>(T)); }

}  // namespace

AlgorithmInstance make_algorithm(const std::string& alg, long T, std::size_t n, double rho,
                                 NormBound adversary_norm, std::optional<long> B_override,
                                 std::optional<double> eps_override) {
    const bool l1 = adversary_norm == NormBound::L1Unit;
    const ActionSet olo_actions = ActionSet::basis_points(n);
    const ActionSet expert_actions = ActionSet::experts(n);

    if (alg == "ftpl" || alg == "ftplb") {
        const ActionSet actions = l1 ? olo_actions : expert_actions;
        long B = 1;
        double eps;
        if (alg == "ftplb") {
            const auto p = fllb_params(T, n, rho);
            B = B_override.value_or(p.B);
            eps = eps_override.value_or(
                B_override ? 1.0 / std::sqrt(static_cast<double>(B) * static_cast<double>(T))
                           : p.eps);
        } else {
            eps = eps_override.value_or(default_ftpl_eps(T));
            if (B_override) B = *B_override;
        }
        return AlgorithmInstance{
            [actions, eps, B](const Bundle& b) { return ftplb(actions, eps, B, b); }, actions,
            alg, B, eps};
    }
    if (alg == "flbb" || alg == "fllb") {
        if (!l1) throw Error("domain", "fllb runs on l1-unit OLO costs");
        const auto p = fllb_params(T, n, rho);
        const long B = B_override.value_or(p.B);
        const double eps = eps_override.value_or(
            B_override ? 1.0 / std::sqrt(static_cast<double>(B) * static_cast<double>(T))
                       : p.eps);
        return AlgorithmInstance{
            [olo_actions, eps, B](const Bundle& b) { return fllb(olo_actions, eps, B, b); },
            olo_actions, "flbb", B, eps};
    }
    if (alg == "ftplbs") {
        if (l1) throw Error("domain", "ftplbs runs on expert (linf) costs");
        const auto p = ftplbs_params(T, n, rho);
        const long B = B_override.value_or(p.B);
        const double eps = eps_override.value_or(
            B_override ? std::sqrt(std::log(static_cast<double>(n)) /
                                   (static_cast<double>(B) * static_cast<double>(T)))
                       : p.eps);
        return AlgorithmInstance{
            [n, eps, B](const Bundle& b) { return ftplbs(n, eps, B, b); }, expert_actions,
            alg, B, eps};
    }
    if (alg == "framework-l1" || alg == "framework-linf") {
        const auto variant = alg == "framework-l1" ? FrameworkVariant::L1 : FrameworkVariant::Linf;
        if ((variant == FrameworkVariant::L1) != l1) {
            throw Error("domain", alg + " does not match the adversary norm bound");
        }
        auto params = framework_params(T, n, rho, variant);
        if (B_override) {
            params.B = *B_override;
            params.eps = variant == FrameworkVariant::L1
                             ? 2.0 * static_cast<double>(n) / static_cast<double>(params.B)
                             : 2.0 / static_cast<double>(params.B);
            params.normalizer = 2.0 * static_cast<double>(params.B);
        }
        const ActionSet actions = l1 ? olo_actions : expert_actions;
        const long meta_steps = (T + params.B - 1) / params.B;
        const double eps_int = 1.0 / std::sqrt(static_cast<double>(meta_steps));
        const NormBound norm = l1 ? NormBound::L1Unit : NormBound::LinfUnit;
        return AlgorithmInstance{
            [actions, params, eps_int, norm](const Bundle& b) -> std::unique_ptr<OnlineLearner> {
                auto internal = ftpl_internal(actions, eps_int, norm, b.fork("internal"));
                return wrap(actions.size(), std::move(internal), params, b);
            },
            actions, alg, params.B, params.eps};
    }
    if (alg == "iid-experts") {
        if (l1) throw Error("domain", "iid-experts runs on expert (linf) costs");
        const auto params = iid_schedule_params(T, n, rho);
        return AlgorithmInstance{
            [params](const Bundle& b) -> std::unique_ptr<OnlineLearner> {
                return iid_experts_learner(params, b);
            },
            expert_actions, alg, 0, 0.0};
    }
    throw Error("config", "unknown algorithm: " + alg);
}

namespace {

using nlohmann::json;

std::string fmt_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.10g", x);
    return buf;
}

DistributionSequence resolve_adversary(const std::string& name, long T, std::size_t n) {
    if (!name.empty() && name.front() == '@') {
        auto seq = adversary_from_file(name.substr(1));
        if (seq.n != n) throw Error("config", "adversary file dimension differs from n");
        if (seq.T() != T) throw Error("config", "adversary file length differs from T");
        return seq;
    }
    return builtin_adversary(name, T, n);
}

}  // namespace

SweepConfig SweepConfig::from_json(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const std::exception& e) {
        throw Error("config", std::string("sweep config parse error: ") + e.what());
    }
    SweepConfig c;
    try {
        if (!j.contains("algs")) throw Error("config", "algs: missing");
        c.algs = j.at("algs").get<std::vector<std::string>>();
        if (!j.contains("Ts")) throw Error("config", "Ts: missing");
        c.Ts = j.at("Ts").get<std::vector<long>>();
        if (!j.contains("ns")) throw Error("config", "ns: missing");
        c.ns = j.at("ns").get<std::vector<std::size_t>>();
        if (!j.contains("rhos")) throw Error("config", "rhos: missing");
        c.rhos = j.at("rhos").get<std::vector<double>>();
        if (!j.contains("adversaries")) throw Error("config", "adversaries: missing");
        c.adversaries = j.at("adversaries").get<std::vector<std::string>>();
        c.trials = j.value("trials", 100L);
        c.regret_trials = j.value("regret_trials", 0L);
        c.confidence = j.value("confidence", 0.95);
        c.seed = j.value("seed", static_cast<std::uint64_t>(1));
        c.threads = j.value("threads", 1u);
    } catch (const Error&) {
        throw;
    } catch (const std::exception& e) {
        throw Error("config", std::string("sweep config: ") + e.what());
    }
    if (c.trials < 1) throw Error("config", "trials: must be >= 1");
    return c;
}

SweepConfig SweepConfig::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("config", "cannot open sweep config: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return from_json(ss.str());
}

const char* const kSweepCsvHeader =
    "alg,T,n,rho,B,eps,adversary,trials,repl_point,repl_ci_low,repl_ci_high,regret_mean,"
    "regret_se,seed";

std::string SweepRow::key() const {
    std::ostringstream os;
    os << alg << '|' << T << '|' << n << '|' << fmt_double(rho) << '|' << adversary;
    return os.str();
}

std::string sweep_row_to_csv(const SweepRow& row) {
    std::ostringstream os;
    os << row.alg << ',' << row.T << ',' << row.n << ',' << fmt_double(row.rho) << ',' << row.B
       << ',' << fmt_double(row.eps) << ',' << row.adversary << ',' << row.trials << ','
       << fmt_double(row.repl_point) << ',' << fmt_double(row.repl_ci_low) << ','
       << fmt_double(row.repl_ci_high) << ',' << fmt_double(row.regret_mean) << ','
       << fmt_double(row.regret_se) << ',' << row.seed;
    return os.str();
}

std::vector<SweepRow> sweep(const SweepConfig& config, const std::vector<std::string>& skip_keys) {
    const std::set<std::string> skip(skip_keys.begin(), skip_keys.end());
    std::vector<SweepRow> rows;
    const Bundle root = Bundle(config.seed).fork("sweep");
    const long regret_trials = config.regret_trials > 0 ? config.regret_trials : config.trials;
    for (const auto& alg : config.algs) {
        for (long T : config.Ts) {
            for (std::size_t n : config.ns) {
                for (double rho : config.rhos) {
                    for (const auto& adv_name : config.adversaries) {
                        SweepRow row;
                        row.alg = alg;
                        row.T = T;
                        row.n = n;
                        row.rho = rho;
                        row.adversary = adv_name;
                        row.seed = config.seed;
                        if (skip.count(row.key())) continue;
                        const auto adv = resolve_adversary(adv_name, T, n);
                        const auto inst = make_algorithm(alg, T, n, rho, adv.norm_bound);
                        const Bundle cell = root.fork(alg)
                                                .fork(std::to_string(T))
                                                .fork(std::to_string(n))
                                                .fork(fmt_double(rho))
                                                .fork(adv_name);
                        const auto repl = estimate_replicability(
                            inst.factory, adv, inst.actions, config.trials,
                            cell.fork("repl").key(), config.confidence, config.threads);
                        const auto reg =
                            evaluate_regret(inst.factory, adv, inst.actions, regret_trials,
                                            cell.fork("regret").key(), false, config.threads);
                        row.B = inst.B;
                        row.eps = inst.eps;
                        row.trials = config.trials;
                        row.repl_point = repl.point_estimate;
                        row.repl_ci_low = repl.ci_low;
                        row.repl_ci_high = repl.ci_high;
                        row.regret_mean = reg.mean;
                        row.regret_se = reg.se;
                        rows.push_back(std::move(row));
                    }
                }
            }
        }
    }
    return rows;
}

void sweep_to_csv(const SweepConfig& config, const std::string& out_path) {
    std::vector<std::string> skip;
    bool have_file = false;
    {
        std::ifstream in(out_path);
        if (in) {
            have_file = true;
            std::string line;
            bool first = true;
            while (std::getline(in, line)) {
                if (first) {
                    first = false;
                    continue;
                }
                if (line.empty()) continue;
                // key = alg|T|n|rho|adversary from the first columns.
                std::vector<std::string> cols;
                std::stringstream ss(line);
                std::string col;
                while (std::getline(ss, col, ',')) cols.push_back(col);
                if (cols.size() < 7) continue;
                skip.push_back(cols[0] + '|' + cols[1] + '|' + cols[2] + '|' + cols[3] + '|' +
                               cols[6]);
            }
        }
    }
    const auto rows = sweep(config, skip);
    std::ofstream out(out_path, have_file ? std::ios::app : std::ios::trunc);
    if (!out) throw Error("config", "cannot open output file: " + out_path);
    if (!have_file) out << kSweepCsvHeader << '\n';
    for (const auto& row : rows) out << sweep_row_to_csv(row) << '\n';
}

std::vector<TradeoffRow> tradeoff_experiment(long T, const std::vector<double>& taus,
                                             const std::vector<double>& rho_targets, long trials,
                                             std::uint64_t master_seed, unsigned threads) {
    if (T < 2) throw Error("domain", "tradeoff experiment needs T >= 2");
    if (trials < 1) throw Error("domain", "trials must be >= 1");
    const std::size_t n = 2;
    const double ln_n = std::log(2.0);
    const ActionSet actions = ActionSet::experts(n);
    const Bundle root = Bundle(master_seed).fork("tradeoff");

    struct Tuning {
        std::string alg;
        double rho;
        long B;
        double eps;
    };
    std::vector<Tuning> tunings;
    for (double rho : rho_targets) {
        if (!(rho > 0.0) || !(rho < 1.0)) throw Error("domain", "rho target must lie in (0, 1)");
        // Regret budget from the lower-bound direction rho * regret ~ sqrt(T):
        // noise pays half the budget (eps = 4 ln n / budget), blocks the rest.
        const double budget = std::sqrt(static_cast<double>(T)) / rho;
        const double eps = std::min(1.0, 4.0 * ln_n / budget);
        long B = static_cast<long>(std::ceil(budget / (2.0 * eps * static_cast<double>(T))));
        B = std::max(1L, std::min<long>(B, T));
        tunings.push_back(Tuning{"ftplbs", rho, B, eps});
    }
    // Untuned low-regret baseline: every-step geometric FTPL.
    tunings.push_back(Tuning{"ftpl-geo", 0.0, 1,
                             std::min(1.0, std::sqrt(ln_n / static_cast<double>(T)))});

    std::vector<TradeoffRow> rows;
    for (double tau : taus) {
        for (const auto& tuning : tunings) {
            TradeoffRow row;
            row.alg = tuning.alg;
            row.tau = tau;
            row.rho = tuning.rho;
            row.B = tuning.B;
            row.eps = tuning.eps;
            row.trials = 2 * trials;
            const LearnerFactory factory = [&tuning, n](const Bundle& b) {
                return ftplbs(n, tuning.eps, tuning.B, b);
            };
            long identical = 0;
            long correct = 0;
            std::vector<double> regrets(static_cast<std::size_t>(2 * trials), 0.0);
            std::vector<char> same(static_cast<std::size_t>(2 * trials), 0);
            std::vector<char> decoded(static_cast<std::size_t>(2 * trials), 0);
            for (int sign : {1, -1}) {
                const auto adv = coin_embedding(T, tau, sign);
                const std::size_t better = tau == 0.0 ? 0 : (sign > 0 ? 1 : 0);
                const Bundle signed_root =
                    root.fork(fmt_double(tau)).fork(sign > 0 ? "plus" : "minus");
                const std::size_t base = sign > 0 ? 0 : static_cast<std::size_t>(trials);
                parallel_for(static_cast<std::size_t>(trials), threads, [&](std::size_t i) {
                    const auto pr = paired_run(factory, adv, actions,
                                               signed_root.fork(static_cast<std::uint64_t>(i)));
                    same[base + i] = pr.identical ? 1 : 0;
                    // Regret and the majority decode from run 1.
                    const auto s1 = sample_trajectory(
                        adv, signed_root.fork(static_cast<std::uint64_t>(i)).fork("traj1"));
                    regrets[base + i] = regret(pr.transcript_1, s1, actions).regret;
                    std::array<long, 2> counts{0, 0};
                    for (std::size_t a : pr.transcript_1.actions) ++counts[a];
                    const std::size_t majority = counts[1] > counts[0] ? 1 : 0;
                    decoded[base + i] = majority == better ? 1 : 0;
                });
            }
            for (std::size_t i = 0; i < same.size(); ++i) {
                identical += same[i];
                correct += decoded[i];
            }
            const auto ci = clopper_pearson(identical, 2 * trials, 0.95);
            const auto ms = mean_and_se(regrets);
            row.repl_point = static_cast<double>(identical) / static_cast<double>(2 * trials);
            row.repl_ci_low = ci.low;
            row.repl_ci_high = ci.high;
            row.regret_mean = ms.mean;
            row.regret_se = ms.se;
            row.majority_accuracy =
                tau == 0.0 ? 0.5 : static_cast<double>(correct) / static_cast<double>(2 * trials);
            row.per_trial_regret = std::move(regrets);
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

}  // namespace repol
