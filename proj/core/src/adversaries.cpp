#include "repol/adversaries.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "repol/errors.hpp"

namespace repol {

std::vector<double> StepDistribution::sample(std::size_t n, Stream& s) const {
    std::vector<double> out;
    switch (kind) {
        case Kind::PointMass:
            out = values;
            break;
        case Kind::BernoulliExperts: {
            out.resize(n);
            for (std::size_t i = 0; i < n; ++i) {
                const double bias = values.size() == 1 ? values[0] : values[i];
                out[i] = s.next_unit() < bias ? 1.0 : 0.0;
            }
            break;
        }
        case Kind::UniformBox: {
            out.resize(n);
            for (std::size_t i = 0; i < n; ++i) out[i] = uniform_in(s, width);
            break;
        }
        case Kind::Custom:
            out = custom(s);
            break;
    }
    if (scale != 1.0) {
        for (double& x : out) x *= scale;
    }
    return out;
}

CostVector sample_step(const DistributionSequence& seq, long t, const Bundle& bundle) {
    if (t < 1 || t > seq.T()) throw Error("domain", "step index out of range");
    const auto& step = seq.steps[static_cast<std::size_t>(t - 1)];
    Stream s = bundle.fork(static_cast<std::uint64_t>(t)).stream();
    auto values = step.sample(seq.n, s);
    if (values.size() != seq.n) {
        throw Error("generator", "step sampler produced a wrong-dimension vector");
    }
    try {
        return CostVector(std::move(values), seq.norm_bound);
    } catch (const Error& e) {
        throw Error("generator", std::string("sampled vector violates the norm bound: ") +
                                     e.what());
    }
}

std::vector<CostVector> sample_trajectory(const DistributionSequence& seq, const Bundle& bundle) {
    std::vector<CostVector> out;
    out.reserve(seq.steps.size());
    for (long t = 1; t <= seq.T(); ++t) out.push_back(sample_step(seq, t, bundle));
    return out;
}

DistributionSequence coin_embedding(long T, double tau, int sign) {
    if (!(tau >= 0.0) || !(tau < 0.25)) throw Error("domain", "coin bias tau must lie in [0, 1/4)");
    if (sign != 1 && sign != -1) throw Error("domain", "coin sign must be +1 or -1");
    if (T < 1) throw Error("domain", "coin embedding needs T >= 1");
    const double bias = 0.5 + (sign > 0 ? tau : -tau);
    DistributionSequence seq;
    seq.n = 2;
    seq.norm_bound = NormBound::LinfUnit;
    StepDistribution step;
    step.kind = StepDistribution::Kind::Custom;
    step.custom = [bias](Stream& s) {
        const double coin = s.next_unit() < bias ? 1.0 : 0.0;
        return std::vector<double>{coin, 1.0 - coin};
    };
    seq.steps.assign(static_cast<std::size_t>(T), step);
    return seq;
}

DistributionSequence fll_counterexample(long n_steps, double bonus, double drift) {
    if (!(bonus < 0.0)) throw Error("domain", "bonus must be negative");
    if (bonus < -1.0) throw Error("domain", "bonus must satisfy |bonus| <= 1 for unit-l1 costs");
    if (!(drift >= 0.0) || drift > 0.5) throw Error("domain", "drift must lie in [0, 0.5]");
    if (n_steps < 2) throw Error("domain", "need at least 2 steps");
    DistributionSequence seq;
    seq.n = 2;
    seq.norm_bound = NormBound::L1Unit;
    StepDistribution first;
    first.kind = StepDistribution::Kind::PointMass;
    first.values = {0.0, bonus};
    seq.steps.push_back(first);
    // Later steps: costs in {0, 1/2}^2 with expert 1 cheaper by drift in
    // expectation; l1 norm at most 1.
    StepDistribution later;
    later.kind = StepDistribution::Kind::BernoulliExperts;
    later.values = {0.5 - drift, 0.5 + drift};
    later.scale = 0.5;
    for (long t = 1; t < n_steps; ++t) seq.steps.push_back(later);
    return seq;
}

double concentration_diagnostic(const DistributionSequence& seq, double c, long trials,
                                const Bundle& bundle) {
    if (!(c > 2.0)) throw Error("domain", "the bound needs c > 2");
    if (seq.norm_bound != NormBound::L1Unit) {
        throw Error("domain", "concentration diagnostic applies to l1-unit sequences");
    }
    if (trials < 1) throw Error("domain", "trials must be >= 1");
    const std::size_t n = seq.n;
    const double nd = static_cast<double>(n);
    long exceed = 0;
    for (long k = 0; k < trials; ++k) {
        const Bundle pair = bundle.fork(static_cast<std::uint64_t>(k));
        const Bundle b1 = pair.fork("a");
        const Bundle b2 = pair.fork("b");
        std::vector<double> diff(n, 0.0);
        bool over = false;
        for (long t = 1; t <= seq.T() && !over; ++t) {
            const auto v = sample_step(seq, t, b1);
            const auto w = sample_step(seq, t, b2);
            double l1 = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                diff[i] += v[i] - w[i];
                l1 += std::abs(diff[i]);
            }
            if (l1 > c * std::sqrt(static_cast<double>(t) * nd)) over = true;
        }
        if (over) ++exceed;
    }
    return static_cast<double>(exceed) / static_cast<double>(trials);
}

namespace {

StepDistribution bernoulli_step(std::vector<double> bias, double scale) {
    StepDistribution s;
    s.kind = StepDistribution::Kind::BernoulliExperts;
    s.values = std::move(bias);
    s.scale = scale;
    return s;
}

StepDistribution point_mass_step(std::vector<double> v) {
    StepDistribution s;
    s.kind = StepDistribution::Kind::PointMass;
    s.values = std::move(v);
    return s;
}

StepDistribution uniform_box_step(double width, double scale) {
    StepDistribution s;
    s.kind = StepDistribution::Kind::UniformBox;
    s.width = width;
    s.scale = scale;
    return s;
}

}  // namespace

DistributionSequence builtin_adversary(const std::string& name, long T, std::size_t n) {
    if (T < 1) throw Error("domain", "builtin adversary needs T >= 1");
    if (n < 2) throw Error("domain", "builtin adversary needs n >= 2");
    DistributionSequence seq;
    seq.n = n;
    if (name == "zeros") {
        seq.norm_bound = NormBound::L1Unit;
        seq.steps.assign(static_cast<std::size_t>(T),
                         point_mass_step(std::vector<double>(n, 0.0)));
        return seq;
    }
    if (name == "bernoulli-experts") {
        seq.norm_bound = NormBound::LinfUnit;
        seq.steps.assign(static_cast<std::size_t>(T),
                         bernoulli_step(std::vector<double>(n, 0.5), 1.0));
        return seq;
    }
    if (name == "bernoulli-olo") {
        // Bernoulli expert costs mapped to unit-l1 OLO costs by a 1/n scale.
        seq.norm_bound = NormBound::L1Unit;
        seq.steps.assign(
            static_cast<std::size_t>(T),
            bernoulli_step(std::vector<double>(n, 0.5), 1.0 / static_cast<double>(n)));
        return seq;
    }
    if (name == "uniform-box-l1") {
        seq.norm_bound = NormBound::L1Unit;
        seq.steps.assign(static_cast<std::size_t>(T),
                         uniform_box_step(1.0 / static_cast<double>(n), 1.0));
        return seq;
    }
    if (name == "mixed-l1") {
        // Alternating point-mass and stochastic steps.
        seq.norm_bound = NormBound::L1Unit;
        std::vector<double> pm(n, 0.0);
        pm[0] = 0.6;
        if (n > 1) pm[1] = -0.3;
        for (long t = 1; t <= T; ++t) {
            if (t % 2 == 1) {
                seq.steps.push_back(point_mass_step(pm));
            } else {
                seq.steps.push_back(
                    bernoulli_step(std::vector<double>(n, 0.5), 1.0 / static_cast<double>(n)));
            }
        }
        return seq;
    }
    if (name == "mixed-experts") {
        seq.norm_bound = NormBound::LinfUnit;
        std::vector<double> pm(n);
        for (std::size_t i = 0; i < n; ++i) {
            pm[i] = 0.2 + 0.6 * static_cast<double>(i) / static_cast<double>(n);
        }
        for (long t = 1; t <= T; ++t) {
            if (t % 2 == 1) {
                seq.steps.push_back(point_mass_step(pm));
            } else {
                seq.steps.push_back(bernoulli_step(std::vector<double>(n, 0.5), 1.0));
            }
        }
        return seq;
    }
    const auto colon = name.find(':');
    if (colon != std::string::npos) {
        const std::string head = name.substr(0, colon);
        const std::string arg = name.substr(colon + 1);
        if (head == "coin+" || head == "coin-") {
            const double tau = std::stod(arg);
            return coin_embedding(T, tau, head == "coin+" ? 1 : -1);
        }
    }
    if (name == "fll-counterexample") {
        return fll_counterexample(T, -1.0, 0.2);
    }
    throw Error("config", "unknown builtin adversary: " + name);
}

namespace {

using nlohmann::json;

StepDistribution parse_step(const json& j, const std::string& path) {
    if (!j.is_object()) throw Error("config", path + ": step must be an object");
    const std::string kind = j.value("kind", "");
    StepDistribution s;
    if (kind == "point_mass") {
        if (!j.contains("values")) throw Error("config", path + ".values: missing");
        s = point_mass_step(j.at("values").get<std::vector<double>>());
    } else if (kind == "bernoulli_experts") {
        if (!j.contains("bias")) throw Error("config", path + ".bias: missing");
        s = bernoulli_step(j.at("bias").get<std::vector<double>>(), j.value("scale", 1.0));
    } else if (kind == "uniform_box") {
        if (!j.contains("width")) throw Error("config", path + ".width: missing");
        s = uniform_box_step(j.at("width").get<double>(), j.value("scale", 1.0));
    } else {
        throw Error("config", path + ".kind: unknown kind '" + kind + "'");
    }
    return s;
}

}  // namespace

DistributionSequence adversary_from_json(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const std::exception& e) {
        throw Error("config", std::string("adversary JSON parse error: ") + e.what());
    }
    DistributionSequence seq;
    if (!j.contains("n")) throw Error("config", "n: missing");
    seq.n = j.at("n").get<std::size_t>();
    const std::string norm = j.value("norm", "linf");
    if (norm == "l1") {
        seq.norm_bound = NormBound::L1Unit;
    } else if (norm == "linf") {
        seq.norm_bound = NormBound::LinfUnit;
    } else {
        throw Error("config", "norm: must be 'l1' or 'linf'");
    }
    if (!j.contains("steps") || !j.at("steps").is_array()) {
        throw Error("config", "steps: missing or not an array");
    }
    std::size_t idx = 0;
    for (const auto& item : j.at("steps")) {
        const std::string path = "steps[" + std::to_string(idx) + "]";
        if (item.is_object() && item.contains("repeat")) {
            const long k = item.at("repeat").get<long>();
            if (k < 1) throw Error("config", path + ".repeat: must be >= 1");
            if (!item.contains("step")) throw Error("config", path + ".step: missing");
            const auto step = parse_step(item.at("step"), path + ".step");
            for (long r = 0; r < k; ++r) seq.steps.push_back(step);
        } else {
            seq.steps.push_back(parse_step(item, path));
        }
        ++idx;
    }
    if (seq.steps.empty()) throw Error("config", "steps: must be nonempty");
    return seq;
}

DistributionSequence adversary_from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("config", "cannot open adversary file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return adversary_from_json(ss.str());
}

}  // namespace repol
