#include "partigrowth/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <iomanip>
#include <map>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "partigrowth/analysis.hpp"
#include "partigrowth/chains.hpp"
#include "partigrowth/combinatorics.hpp"
#include "partigrowth/measures.hpp"
#include "partigrowth/parallel.hpp"
#include "partigrowth/poisson.hpp"
#include "partigrowth/rng.hpp"
#include "partigrowth/stats.hpp"
#include "partigrowth/version.hpp"
#include "partigrowth/young_flow.hpp"

namespace partigrowth::cli {

using nlohmann::json;

std::string to_string(Command command) {
    switch (command) {
        case Command::Sample: return "sample";
        case Command::Grow: return "grow";
        case Command::Ppp: return "ppp";
        case Command::Verify: return "verify";
        case Command::Shape: return "shape";
        case Command::OddEven: return "oddeven";
        case Command::FlowCheck: return "flowcheck";
    }
    return "unknown";
}

std::string to_string(OutputFormat format) {
    switch (format) {
        case OutputFormat::Jsonl: return "jsonl";
        case OutputFormat::Csv: return "csv";
        case OutputFormat::Pretty: return "pretty";
    }
    return "unknown";
}

namespace {

// caps keep a single run at desk scale
constexpr Weight kSampleCapPdc = 100'000'000;
constexpr Weight kSampleCapRejection = 100'000;
constexpr Weight kGrowCap = 100'000'000;
constexpr double kSmaxCap = 1e7;
constexpr Weight kRecursionCap = 100'000;
constexpr Weight kIdentityCap = 1000;
constexpr std::int64_t kReplicaCap = 100'000'000;

// residual plus certified tail must stay below this for an identity row to pass
constexpr double kIdentityTolerance = 1e-9;

json config_json(const RunConfig& c) {
    json j;
    j["command"] = to_string(c.command);
    switch (c.command) {
        case Command::Sample:
            j["n"] = c.n;
            j["replicas"] = c.replicas;
            j["method"] = c.method;
            j["partition_cap"] = c.partition_cap;
            break;
        case Command::Grow:
            j["n"] = c.n;
            j["replicas"] = c.replicas;
            j["partition_cap"] = c.partition_cap;
            j["summary_only"] = c.summary_only;
            break;
        case Command::Ppp:
            j["smax"] = c.smax;
            j["replicas"] = c.replicas;
            break;
        case Command::Verify:
            j["target"] = c.verify_target;
            j["nmax"] = c.nmax;
            j["precision"] = c.precision;
            break;
        case Command::Shape:
            j["n"] = c.n;
            j["samples"] = c.samples;
            j["x0"] = c.x0;
            j["tolerance"] = c.tolerance;
            break;
        case Command::OddEven:
            j["n"] = c.n;
            j["samples"] = c.samples;
            break;
        case Command::FlowCheck:
            j["kind"] = c.kind;
            j["nmax"] = c.nmax;
            break;
    }
    j["seed"] = c.seed;
    j["out"] = to_string(c.out);
    j["threads"] = c.threads;
    return j;
}

std::string utc_now() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    std::ostringstream s;
    s << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
    return s.str();
}

std::string cell(const json& v) {
    if (v.is_string()) return v.get<std::string>();
    return v.dump();
}

// Writes tables and summaries in one of the three formats. Every format
// starts with the schema version, artifact version and resolved config.
class Emitter {
public:
    Emitter(OutputFormat format, std::ostream& out, const RunConfig& config) : format_(format), out_(out) {
        const json cfg = config_json(config);
        switch (format_) {
            case OutputFormat::Jsonl:
                out_ << json{{"schema_version", kSchemaVersion}, {"record", "header"}, {"version", kVersion}, {"config", cfg}}.dump()
                     << '\n';
                if (config.timestamp) {
                    out_ << json{{"schema_version", kSchemaVersion}, {"record", "timestamp"}, {"utc", utc_now()}}.dump() << '\n';
                }
                break;
            case OutputFormat::Csv:
            case OutputFormat::Pretty:
                out_ << "# schema_version=" << kSchemaVersion << " version=" << kVersion << '\n';
                out_ << "# config=" << cfg.dump() << '\n';
                if (config.timestamp) out_ << "# timestamp=" << utc_now() << '\n';
                break;
        }
    }

    void table(std::string name, std::vector<std::string> columns) {
        table_ = std::move(name);
        columns_ = std::move(columns);
        if (format_ == OutputFormat::Jsonl) return;
        out_ << "# table=" << table_ << '\n';
        std::vector<std::string> cells(columns_.begin(), columns_.end());
        write_cells(cells);
    }

    void row(const std::vector<json>& values) {
        if (values.size() != columns_.size()) throw std::logic_error("row width does not match the table");
        if (format_ == OutputFormat::Jsonl) {
            json j{{"schema_version", kSchemaVersion}, {"record", table_}};
            for (std::size_t i = 0; i < values.size(); ++i) j[columns_[i]] = values[i];
            out_ << j.dump() << '\n';
            return;
        }
        std::vector<std::string> cells;
        for (const auto& v : values) cells.push_back(cell(v));
        write_cells(cells);
    }

    void summary(json s) {
        switch (format_) {
            case OutputFormat::Jsonl:
                s["schema_version"] = kSchemaVersion;
                s["record"] = "summary";
                out_ << s.dump() << '\n';
                break;
            case OutputFormat::Csv:
                out_ << "# summary=" << s.dump() << '\n';
                break;
            case OutputFormat::Pretty:
                out_ << "summary\n";
                for (const auto& [key, value] : s.items()) out_ << "  " << std::left << std::setw(28) << key << cell(value) << '\n';
                break;
        }
    }

private:
    void write_cells(const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (format_ == OutputFormat::Csv) {
                if (i > 0) out_ << ',';
                out_ << cells[i];
            } else {
                out_ << std::left << std::setw(i + 1 == cells.size() ? 0 : 16) << cells[i];
                if (i + 1 < cells.size()) out_ << ' ';
            }
        }
        out_ << '\n';
    }

    OutputFormat format_;
    std::ostream& out_;
    std::string table_;
    std::vector<std::string> columns_;
};

std::string parts_text(const Partition& p) {
    std::string s;
    for (Weight part : p.parts()) {
        if (!s.empty()) s += ' ';
        s += std::to_string(part);
    }
    return s;
}

void require(bool condition, const std::string& message) {
    if (!condition) throw std::invalid_argument(message);
}

std::vector<Partition> draw_uniform(Weight n, std::int64_t count, std::uint64_t seed, unsigned threads) {
    std::vector<Partition> samples(static_cast<std::size_t>(count));
    parallel_for(samples.size(), threads, [&](std::size_t i) {
        RngStream rng(seed, i);
        samples[i] = sample_uniform_pdc(n, rng).partition;
    });
    return samples;
}

int run_sample(const RunConfig& c, Emitter& emit) {
    const bool pdc = c.method == "pdc";
    require(pdc || c.method == "rejection", "--method must be pdc or rejection");
    require(c.n >= 1 && c.n <= (pdc ? kSampleCapPdc : kSampleCapRejection), "--n out of range for the chosen method");
    std::vector<RejectionDraw> draws(static_cast<std::size_t>(c.replicas));
    parallel_for(draws.size(), c.threads, [&](std::size_t i) {
        RngStream rng(c.seed, i);
        draws[i] = pdc ? sample_uniform_pdc(c.n, rng) : sample_uniform_rejection(c.n, rng);
    });
    const bool show = c.n <= c.partition_cap;
    emit.table("sample", {"seed", "stream", "attempts", "length", "largest", "partition"});
    double attempts = 0;
    for (std::size_t i = 0; i < draws.size(); ++i) {
        const auto& d = draws[i];
        attempts += static_cast<double>(d.attempts);
        emit.row({c.seed, i, d.attempts, d.partition.length(), d.partition.largest(),
                  show ? json(parts_text(d.partition)) : json("")});
    }
    json s{{"replicas", c.replicas}, {"mean_attempts", attempts / static_cast<double>(c.replicas)}};
    if (!pdc) s["expected_attempts_asymptotic"] = std::pow(96.0 * std::pow(static_cast<double>(c.n), 3), 0.25);
    emit.summary(s);
    return kExitOk;
}

int run_grow(const RunConfig& c, Emitter& emit) {
    require(c.n >= 1 && c.n <= kGrowCap, "--n must be in [1, 1e8]");
    const BackwardKernel kernel(c.n + 4096);
    const bool keep = c.n <= c.partition_cap;
    std::vector<BackwardRun> runs(static_cast<std::size_t>(c.replicas));
    parallel_for(runs.size(), c.threads, [&](std::size_t i) {
        RngStream rng(c.seed, i);
        runs[i] = run_backward_until(c.n, kernel, rng, {.record_steps = false, .keep_hit_partition = keep});
    });

    if (!c.summary_only) emit.table("replica", {"seed", "stream", "hit", "n_final", "steps", "partition"});
    std::int64_t hits = 0;
    std::unordered_map<Partition, std::int64_t, PartitionHash> tally;
    for (std::size_t i = 0; i < runs.size(); ++i) {
        const auto& r = runs[i];
        if (r.hit) {
            ++hits;
            if (r.at_hit) ++tally[*r.at_hit];
        }
        if (!c.summary_only) {
            const json partition = r.hit && r.at_hit ? json(parts_text(*r.at_hit)) : json("");
            emit.row({c.seed, i, r.hit, r.n_final, r.steps, partition});
        }
    }
    const double gamma = gamma_visit(c.n).value();
    const double R = static_cast<double>(c.replicas);
    const double sigma = std::sqrt(gamma * (1 - gamma) / R);
    const double rate = static_cast<double>(hits) / R;
    const double z = sigma > 0 ? (rate - gamma) / sigma : 0.0;
    bool pass = std::abs(z) <= 4.0;
    json s{{"replicas", c.replicas}, {"hits", hits}, {"hit_rate", rate}, {"gamma_exact", gamma}, {"z", z}};
    // conditional on a hit, the partition of weight n is uniform; test it
    // when the level is small enough to enumerate and well populated
    if (keep && c.n <= kVisitTableCap) {
        const auto level = enumerate_partitions(c.n);
        if (hits >= 5 * static_cast<std::int64_t>(level.size())) {
            std::vector<std::int64_t> observed;
            for (const auto& p : level) observed.push_back(tally.count(p) ? tally.at(p) : 0);
            const auto chi = chi_square(observed, std::vector<double>(level.size(), 1.0 / static_cast<double>(level.size())));
            s["chi_square"] = chi.statistic;
            s["chi_square_dof"] = chi.dof;
            s["chi_square_p"] = chi.p_value;
            pass = pass && chi.p_value > 1e-3;
        }
    }
    s["pass"] = pass;
    emit.summary(s);
    return pass ? kExitOk : kExitVerificationFailed;
}

int run_ppp(const RunConfig& c, Emitter& emit) {
    require(c.smax > 0 && c.smax <= kSmaxCap, "--smax must be in (0, 1e7]");
    std::vector<PoissonTrajectory> paths(static_cast<std::size_t>(c.replicas));
    parallel_for(paths.size(), c.threads, [&](std::size_t i) {
        RngStream rng(c.seed, i);
        paths[i] = sample_trajectory(c.smax, rng);
    });
    emit.table("point", {"stream", "s", "t", "k", "r"});
    std::size_t points = 0;
    for (std::size_t i = 0; i < paths.size(); ++i) {
        for (const auto& p : paths[i].points()) {
            emit.row({i, p.s, p.t, p.mark_k, p.mark_r});
            ++points;
        }
    }
    json s{{"replicas", c.replicas}, {"points", points}};
    if (paths.size() == 1) s["weight_at_smax"] = paths[0].weight_at(c.smax);
    emit.summary(s);
    return kExitOk;
}

int run_verify_recursions(const RunConfig& c, Emitter& emit) {
    require(c.nmax >= 1 && c.nmax <= kRecursionCap, "--nmax must be in [1, 1e5]");
    emit.table("identity", {"name", "n_from", "n_to", "max_residual", "pass"});
    bool all = true;
    auto line = [&](const std::string& name, Weight from, Weight to, const json& residual, bool pass) {
        emit.row({name, from, to, residual, pass ? "PASS" : "FAIL"});
        all = all && pass;
    };

    BigCount worst = 0;
    const auto residuals = np_recursion_residuals(c.nmax);
    for (const auto& r : residuals) worst = std::max(worst, BigCount(abs(r)));
    line("np_recursion", 1, c.nmax, worst.get_str(), worst == 0);

    const Weight enum_to = std::min<Weight>(c.nmax, 30);
    Weight mismatches = 0;
    for (Weight n = 0; n <= enum_to; ++n) {
        if (partition_count(n) != BigCount(static_cast<unsigned long>(enumerate_partitions(n).size()))) ++mismatches;
    }
    line("pentagonal_vs_enumeration", 0, enum_to, mismatches, mismatches == 0);

    const Weight q_to = std::min<Weight>(c.nmax, 200);
    mpq_class worst_q = 0;
    for (Weight n = 1; n <= q_to; ++n) {
        mpq_class total = 0;
        for (Weight m = 0; m < n; ++m) total += q_forward_exact(n, m);
        worst_q = std::max(worst_q, mpq_class(abs(total - 1)));
    }
    line("forward_normalization_exact", 1, q_to, worst_q.get_str(), worst_q == 0);

    const Weight strict_to = std::min<Weight>(c.nmax, 2000);
    bool increasing = true;
    for (Weight n = 5; n <= strict_to; ++n) increasing = increasing && strict_partition_count(n) > strict_partition_count(n - 1);
    if (strict_to >= 5) line("strict_counts_increasing", 4, strict_to, 0, increasing);

    emit.summary({{"pass", all}});
    return all ? kExitOk : kExitVerificationFailed;
}

int run_verify_identities(const RunConfig& c, Emitter& emit) {
    require(c.nmax >= 0 && c.nmax <= kIdentityCap, "--nmax must be in [0, 1000]");
    const Precision precision = Precision::parse(c.precision);
    emit.table("identity", {"name", "n", "residual", "bound", "pass"});
    bool all = true;
    double worst = 0;
    auto line = [&](const char* name, Weight n, const IdentityCheck& check) {
        const bool pass = check.residual + check.tail_bound <= kIdentityTolerance;
        all = all && pass;
        worst = std::max(worst, check.residual);
        emit.row({name, n, check.residual, check.tail_bound, pass});
    };
    for (Weight n = 0; n <= c.nmax; ++n) {
        line("backward_normalization", n, backward_normalization_residual(n, precision));
        line("divisor_identity", n, divisor_identity_residual(n, precision));
    }
    emit.summary({{"pass", all}, {"max_residual", worst}, {"tolerance", kIdentityTolerance}});
    return all ? kExitOk : kExitVerificationFailed;
}

int run_shape(const RunConfig& c, Emitter& emit) {
    require(c.n >= 1 && c.n <= kSampleCapPdc, "--n must be in [1, 1e8]");
    require(c.x0 > 0, "--x0 must be positive");
    const auto samples = draw_uniform(c.n, c.samples, c.seed, c.threads);
    std::vector<double> distances(samples.size());
    parallel_for(samples.size(), c.threads, [&](std::size_t i) { distances[i] = shape_distance(samples[i], c.x0); });

    emit.table("distance", {"sample", "sup_distance"});
    std::int64_t within = 0;
    for (std::size_t i = 0; i < distances.size(); ++i) {
        emit.row({i, distances[i]});
        if (distances[i] <= c.tolerance) ++within;
    }
    emit.table("curve", {"x", "y"});
    for (int i = 0; i <= 100; ++i) {
        const double x = c.x0 + (5.0 - c.x0) * i / 100.0;
        emit.row({x, limit_shape_y(x)});
    }
    const double fraction = static_cast<double>(within) / static_cast<double>(c.samples);
    const bool pass = fraction >= 0.95;
    emit.summary({{"fraction_within", fraction},
                  {"median", median(distances)},
                  {"max", *std::max_element(distances.begin(), distances.end())},
                  {"tolerance", c.tolerance},
                  {"tolerance_is_engineering_choice", true},
                  {"pass", pass}});
    return pass ? kExitOk : kExitVerificationFailed;
}

int run_oddeven(const RunConfig& c, Emitter& emit) {
    require(c.n >= 1 && c.n <= kSampleCapPdc, "--n must be in [1, 1e8]");
    const auto samples = draw_uniform(c.n, c.samples, c.seed, c.threads);
    emit.table("pair", {"sample", "x", "y"});
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const auto xy = odd_even_scaled(samples[i]);
        emit.row({i, xy.x, xy.y});
    }
    const auto s = summarize_odd_even(samples);
    const bool pass = s.ks_odd <= 0.06 && s.ks_even <= 0.06 && std::abs(s.correlation) <= 0.08 &&
                      s.ks_odd < s.ks_odd_vs_even_limit && s.ks_even < s.ks_even_vs_odd_limit && s.ks_length <= 0.06;
    emit.summary({{"ks_odd", s.ks_odd},
                  {"ks_even", s.ks_even},
                  {"ks_odd_vs_even_limit", s.ks_odd_vs_even_limit},
                  {"ks_even_vs_odd_limit", s.ks_even_vs_odd_limit},
                  {"corr", s.correlation},
                  {"ks_length", s.ks_length},
                  {"tolerance_is_engineering_choice", true},
                  {"pass", pass}});
    return pass ? kExitOk : kExitVerificationFailed;
}

int run_flowcheck(const RunConfig& c, Emitter& emit) {
    const LevelKind kind = parse_level_kind(c.kind);
    const Weight cap = kind == LevelKind::Ordinary ? kOrdinaryLevelCap : kStrictLevelCap;
    require(c.nmax >= 0 && c.nmax <= cap, "--nmax must be in [0, " + std::to_string(cap) + "] for this kind");
    const auto verdicts = scan_levels(c.nmax, kind, c.threads);
    emit.table("level", {"n", "p_n", "p_n1", "feasible", "violating_set_size", "certified", "contains_staircase"});
    bool pass = true;
    json infeasible = json::array();
    for (const auto& v : verdicts) {
        emit.row({v.n, v.left_size, v.right_size, v.feasible, v.violating_set_size, v.certified, v.contains_staircase});
        if (!v.feasible) {
            infeasible.push_back(v.n);
            pass = pass && v.certified;
        }
        // triangular strict levels from 10 on must fail with the staircase in A
        if (kind == LevelKind::Strict && v.n >= 10 && !staircase_parts(v.n).empty()) {
            pass = pass && !v.feasible && v.contains_staircase;
        }
    }
    emit.summary({{"infeasible_levels", infeasible}, {"pass", pass}});
    return pass ? kExitOk : kExitVerificationFailed;
}

// All cap and range checks, done before any output is written.
void validate(const RunConfig& c) {
    require(c.replicas >= 1 && c.replicas <= kReplicaCap, "--replicas must be in [1, 1e8]");
    require(c.samples >= 1 && c.samples <= kReplicaCap, "--samples must be in [1, 1e8]");
    switch (c.command) {
        case Command::Sample: {
            const bool pdc = c.method == "pdc";
            require(pdc || c.method == "rejection", "--method must be pdc or rejection");
            require(c.n >= 1 && c.n <= (pdc ? kSampleCapPdc : kSampleCapRejection), "--n out of range for the chosen method");
            break;
        }
        case Command::Grow: require(c.n >= 1 && c.n <= kGrowCap, "--n must be in [1, 1e8]"); break;
        case Command::Ppp: require(c.smax > 0 && c.smax <= kSmaxCap, "--smax must be in (0, 1e7]"); break;
        case Command::Verify:
            if (c.verify_target == "recursions") {
                require(c.nmax >= 1 && c.nmax <= kRecursionCap, "--nmax must be in [1, 1e5]");
            } else {
                require(c.verify_target == "identities", "verify target must be recursions or identities");
                require(c.nmax >= 0 && c.nmax <= kIdentityCap, "--nmax must be in [0, 1000]");
                Precision::parse(c.precision);
            }
            break;
        case Command::Shape:
            require(c.n >= 1 && c.n <= kSampleCapPdc, "--n must be in [1, 1e8]");
            require(c.x0 > 0, "--x0 must be positive");
            break;
        case Command::OddEven: require(c.n >= 1 && c.n <= kSampleCapPdc, "--n must be in [1, 1e8]"); break;
        case Command::FlowCheck: {
            const Weight cap = parse_level_kind(c.kind) == LevelKind::Ordinary ? kOrdinaryLevelCap : kStrictLevelCap;
            require(c.nmax >= 0 && c.nmax <= cap, "--nmax must be in [0, " + std::to_string(cap) + "] for this kind");
            break;
        }
    }
}

}  // namespace

int dispatch(const RunConfig& config, std::ostream& out) {
    validate(config);
    RunConfig c = config;
    c.threads = std::max(1u, c.threads);
    Emitter emit(c.out, out, c);
    int code = kExitOk;
    switch (c.command) {
        case Command::Sample: code = run_sample(c, emit); break;
        case Command::Grow: code = run_grow(c, emit); break;
        case Command::Ppp: code = run_ppp(c, emit); break;
        case Command::Verify:
            code = c.verify_target == "recursions" ? run_verify_recursions(c, emit) : run_verify_identities(c, emit);
            break;
        case Command::Shape: code = run_shape(c, emit); break;
        case Command::OddEven: code = run_oddeven(c, emit); break;
        case Command::FlowCheck: code = run_flowcheck(c, emit); break;
    }
    out.flush();
    if (!out) throw std::runtime_error("failed writing output");
    return code;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Markov growth of integer partitions: samplers and verifiers"};
    app.set_version_flag("--version", std::string(kVersion));
    app.require_subcommand(1);

    RunConfig c;
    int threads_flag = 0;
    std::string out_format = "jsonl";
    bool no_timestamp = false;
    const std::map<std::string, OutputFormat> formats{
        {"jsonl", OutputFormat::Jsonl}, {"csv", OutputFormat::Csv}, {"pretty", OutputFormat::Pretty}};

    auto common = [&](CLI::App* sub, const std::string& default_out) {
        sub->add_option("--seed", c.seed, "64-bit base seed")->capture_default_str();
        sub->add_option("--out", out_format, "output format")->check(CLI::IsMember({"jsonl", "csv", "pretty"}))->default_str(default_out);
        sub->add_option("--threads", threads_flag, "worker threads (default: logical cores; PARTIGROWTH_THREADS overrides)");
        sub->add_flag("--no-timestamp", no_timestamp, "omit the timestamp header line");
    };
    std::map<CLI::App*, std::pair<Command, std::string>> commands;
    auto add = [&](const char* name, const char* help, Command command, const std::string& default_out) {
        auto* sub = app.add_subcommand(name, help);
        common(sub, default_out);
        commands[sub] = {command, default_out};
        return sub;
    };

    auto* sample = add("sample", "uniform random partitions of n", Command::Sample, "jsonl");
    sample->add_option("--n", c.n, "weight")->required();
    sample->add_option("--replicas", c.replicas, "number of samples")->capture_default_str();
    sample->add_option("--method", c.method, "pdc | rejection")->check(CLI::IsMember({"pdc", "rejection"}))->capture_default_str();
    sample->add_option("--partition-cap", c.partition_cap, "print parts only for n up to this")->capture_default_str();

    auto* grow = add("grow", "backward growth chain from the empty partition", Command::Grow, "jsonl");
    grow->add_option("--n", c.n, "target weight")->required();
    grow->add_option("--replicas", c.replicas, "independent runs")->capture_default_str();
    grow->add_option("--partition-cap", c.partition_cap, "keep the hit partition only for n up to this")->capture_default_str();
    grow->add_flag("--summary-only", c.summary_only, "suppress per-replica records");

    auto* ppp = add("ppp", "marked Poisson representation", Command::Ppp, "csv");
    ppp->add_option("--smax", c.smax, "horizon in the s clock")->required();
    ppp->add_option("--replicas", c.replicas, "independent trajectories")->capture_default_str();

    auto* verify = add("verify", "exact and certified identity checks", Command::Verify, "csv");
    verify->add_option("target", c.verify_target, "recursions | identities")->required()->check(CLI::IsMember({"recursions", "identities"}));
    verify->add_option("--nmax", c.nmax, "largest n checked")->required();
    verify->add_option("--precision", c.precision, "double | mp:<digits>")->capture_default_str();

    auto* shape = add("shape", "sup distance to the limit shape", Command::Shape, "csv");
    shape->add_option("--n", c.n, "weight")->required();
    shape->add_option("--samples", c.samples, "uniform samples")->capture_default_str();
    shape->add_option("--x0", c.x0, "left end of the sup")->capture_default_str();
    shape->add_option("--tolerance", c.tolerance, "per-sample sup tolerance")->capture_default_str();

    auto* oddeven = add("oddeven", "joint law of odd and even part counts", Command::OddEven, "csv");
    oddeven->add_option("--n", c.n, "weight")->required();
    oddeven->add_option("--samples", c.samples, "uniform samples")->capture_default_str();

    auto* flow = add("flowcheck", "one-box growth feasibility by max-flow", Command::FlowCheck, "csv");
    flow->add_option("--kind", c.kind, "ordinary | strict")->check(CLI::IsMember({"ordinary", "strict"}))->capture_default_str();
    flow->add_option("--nmax", c.nmax, "largest level")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    for (const auto& [sub, entry] : commands) {
        if (sub->parsed()) {
            c.command = entry.first;
            if (sub->count("--out") == 0) out_format = entry.second;
        }
    }
    c.out = formats.at(out_format);
    c.threads = resolve_threads(threads_flag);
    c.timestamp = !no_timestamp;
    try {
        return dispatch(c, out);
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::out_of_range& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
}

}  // namespace partigrowth::cli
