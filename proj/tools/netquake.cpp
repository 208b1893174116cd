// netquake: robustness estimation from the command line.
//
//   netquake attack --input g.gml --strategy betw --interactive --output r.json
//   netquake qre    --input g.txt --x 100 --z 20 --seed 1 --output r.json
//   netquake gen    --model ba --n 500 --m 2 --seed 7 --output ba.txt
//   netquake bench  --input a.gml --input b.txt --strategies ideg,ibetw,qre --output table.csv
//
// Exit codes: 0 success, 1 data error, 2 usage error.

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "netquake/netquake.hpp"

namespace nq = netquake;

namespace {

constexpr int kDataError = 1;
constexpr int kUsageError = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string shortest(double x) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, ptr);
}

std::string resolve_format(const std::string& format, const std::string& path) {
    if (format != "auto")
        return format;
    auto ext = std::filesystem::path(path).extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(), ::tolower);
    return ext == ".gml" ? "gml" : "edgelist";
}

nq::Graph load_graph(const std::string& path, const std::string& format) {
    std::ifstream in(path);
    if (!in)
        throw nq::Error("cannot open " + path);
    return resolve_format(format, path) == "gml" ? nq::load_gml(in) : nq::load_edge_list(in);
}

std::string network_name(const std::string& path) {
    return std::filesystem::path(path).stem().string();
}

// "deg", "ibetw", "ci3", "abet", ... -> StrategySpec. `interactive` forces the
// interactive mode for names without the "i" prefix.
nq::StrategySpec parse_strategy(std::string name, bool interactive) {
    std::transform(name.begin(), name.end(), name.begin(), ::tolower);
    nq::StrategySpec spec;
    spec.mode = interactive ? nq::AttackMode::Interactive : nq::AttackMode::Static;
    auto base = name;
    static const char* const kBases[] = {"deg", "betw", "bet", "abet", "pr"};
    bool known = std::find(std::begin(kBases), std::end(kBases), base) != std::end(kBases) ||
                 base.rfind("ci", 0) == 0;
    if (!known && base.size() > 1 && base[0] == 'i') {
        base = base.substr(1);
        spec.mode = nq::AttackMode::Interactive;
    }
    if (base == "deg")
        spec.metric = nq::Metric::Degree;
    else if (base == "betw" || base == "bet")
        spec.metric = nq::Metric::Betweenness;
    else if (base == "abet")
        spec.metric = nq::Metric::ApproxBetweenness;
    else if (base == "pr")
        spec.metric = nq::Metric::PageRank;
    else if (base.rfind("ci", 0) == 0 && base.size() > 2 &&
             std::all_of(base.begin() + 2, base.end(), ::isdigit)) {
        spec.metric = nq::Metric::CollectiveInfluence;
        spec.ball_radius = static_cast<unsigned>(std::stoul(base.substr(2)));
        if (spec.ball_radius < 1)
            throw UsageError("collective influence needs a ball radius >= 1");
    } else {
        throw UsageError("unknown strategy '" + name + "'");
    }
    return spec;
}

nq::PivotRule parse_rule(const std::string& mode) {
    if (mode == "scaled")
        return nq::PivotRule::Scaled;
    if (mode == "paper" || mode == "paper_literal")
        return nq::PivotRule::PaperLiteral;
    throw UsageError("unknown y-mode '" + mode + "'");
}

void write_text(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw nq::Error("cannot write " + path);
    out << text;
}

void write_curve_csv(const std::string& path, const std::vector<double>& materialized) {
    std::ostringstream out;
    out << "Q,gcs\n";
    for (std::size_t q = 0; q < materialized.size(); ++q)
        out << q << ',' << shortest(materialized[q]) << '\n';
    write_text(path, out.str());
}

long long elapsed_ms(std::chrono::steady_clock::time_point since) {
    return std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() -
                                                                 since)
        .count();
}

struct SharedOptions {
    std::string input;
    std::string format = "auto";
    std::string output = "-";
    std::string name;
    std::uint64_t seed = 0;
    unsigned threads = nq::detail::threads_from_env(1);
    std::string curve_csv;
};

void add_shared(CLI::App* cmd, SharedOptions& o, bool with_input = true) {
    if (with_input)
        cmd->add_option("--input", o.input, "Network file")->required();
    cmd->add_option("--format", o.format, "edgelist | gml | auto (by extension)")
        ->check(CLI::IsMember({"auto", "edgelist", "gml"}));
    cmd->add_option("--output", o.output, "Result file ('-' for stdout)");
    cmd->add_option("--name", o.name, "Network name in the record (default: file stem)");
    cmd->add_option("--seed", o.seed, "Seed for randomized parts");
    cmd->add_option("--threads", o.threads, "Worker threads (env NETQUAKE_THREADS)")
        ->check(CLI::PositiveNumber);
}

struct AttackOptions {
    SharedOptions shared;
    std::string strategy = "deg";
    bool interactive = false;
    std::size_t pivots = 8;
    double damping = 0.85;
    std::size_t batch = 1;
};

nlohmann::json strategy_params(const nq::StrategySpec& spec) {
    nlohmann::json p;
    p["mode"] = spec.mode == nq::AttackMode::Interactive ? "interactive" : "static";
    if (spec.mode == nq::AttackMode::Interactive)
        p["batch"] = spec.batch;
    if (spec.metric == nq::Metric::PageRank)
        p["damping"] = spec.pagerank.damping;
    if (spec.metric == nq::Metric::CollectiveInfluence)
        p["ball_radius"] = spec.ball_radius;
    if (spec.metric == nq::Metric::ApproxBetweenness) {
        p["Y"] = spec.pivots;
        p["seed"] = spec.seed;
    }
    return p;
}

nq::ResultRecord attack_record(const nq::Graph& graph, const std::string& name,
                               const nq::StrategySpec& spec, std::stop_token stop,
                               std::vector<double>* curve_out = nullptr) {
    const auto t0 = std::chrono::steady_clock::now();
    auto curve = nq::run_strategy(graph, spec, stop);
    nq::ResultRecord rec;
    rec.runtime_ms = elapsed_ms(t0);
    rec.network_name = name;
    rec.N = graph.node_count();
    rec.M = graph.edge_count();
    rec.strategy = spec.descriptor();
    rec.params = strategy_params(spec);
    rec.R = curve.R;
    rec.samples = nq::curve_breakpoints(curve.materialized);
    if (curve_out)
        *curve_out = std::move(curve.materialized);
    return rec;
}

struct QreOptions {
    SharedOptions shared;
    std::size_t x = 100;
    std::optional<std::size_t> y;
    std::optional<std::size_t> z;
    std::string y_mode = "scaled";
};

nq::ResultRecord qre_record(const nq::Graph& graph, const std::string& name,
                            const nq::QreParams& params, std::stop_token stop,
                            std::vector<double>* curve_out = nullptr) {
    const auto t0 = std::chrono::steady_clock::now();
    auto state = nq::qre_estimate(graph, params, stop);
    nq::ResultRecord rec;
    rec.runtime_ms = elapsed_ms(t0);
    rec.network_name = name;
    rec.N = graph.node_count();
    rec.M = graph.edge_count();
    rec.strategy = "QRE";
    rec.params = {{"X", params.intervals},
                  {"Y", nq::resolved_pivots(params, graph.node_count())},
                  {"Z", nq::resolved_iterations(params, graph.node_count())},
                  {"seed", params.seed},
                  {"y_mode", params.rule == nq::PivotRule::Scaled ? "scaled" : "paper_literal"}};
    rec.R = state.best_R;
    rec.samples = nq::curve_breakpoints(state.best_materialized);
    rec.history = state.history;
    if (curve_out)
        *curve_out = std::move(state.best_materialized);
    return rec;
}

void emit(const nq::ResultRecord& rec, const std::string& output) {
    write_text(output, nq::to_json(rec).dump(2) + "\n");
}

int run_attack(const AttackOptions& o) {
    auto spec = parse_strategy(o.strategy, o.interactive);
    spec.seed = o.shared.seed;
    spec.threads = o.shared.threads;
    spec.pivots = o.pivots;
    spec.pagerank.damping = o.damping;
    spec.batch = o.batch;
    if (o.pivots < 1 || o.batch < 1 || !(o.damping > 0.0 && o.damping < 1.0))
        throw UsageError("invalid strategy parameters");
    const auto graph = load_graph(o.shared.input, o.shared.format);
    std::vector<double> curve;
    auto rec = attack_record(graph, o.shared.name.empty() ? network_name(o.shared.input) : o.shared.name,
                             spec, {}, &curve);
    emit(rec, o.shared.output);
    if (!o.shared.curve_csv.empty())
        write_curve_csv(o.shared.curve_csv, curve);
    return 0;
}

nq::QreParams qre_params(const QreOptions& o) {
    nq::QreParams p;
    if (o.x < 1)
        throw UsageError("--x must be at least 1");
    if (o.y && *o.y < 1)
        throw UsageError("--y must be at least 1");
    p.intervals = o.x;
    p.pivots = o.y;
    p.iterations = o.z;
    p.seed = o.shared.seed;
    p.rule = parse_rule(o.y_mode);
    p.threads = o.shared.threads;
    return p;
}

int run_qre(const QreOptions& o) {
    const auto params = qre_params(o);
    const auto graph = load_graph(o.shared.input, o.shared.format);
    std::vector<double> curve;
    auto rec = qre_record(graph, o.shared.name.empty() ? network_name(o.shared.input) : o.shared.name,
                          params, {}, &curve);
    emit(rec, o.shared.output);
    if (!o.shared.curve_csv.empty())
        write_curve_csv(o.shared.curve_csv, curve);
    return 0;
}

struct GenOptions {
    std::string model;
    std::size_t n = 0;
    std::optional<std::size_t> m;
    std::optional<double> p;
    std::uint64_t seed = 0;
    std::string output = "-";
};

int run_gen(const GenOptions& o) {
    nq::Graph graph;
    if (o.model == "ba") {
        if (!o.m)
            throw UsageError("--m is required for the ba model");
        if (*o.m < 1 || *o.m >= o.n)
            throw UsageError("ba needs 1 <= m < n");
        graph = nq::generate_ba(o.n, *o.m, o.seed);
    } else {
        // Default p gives mean degree 4.
        double p = o.p.value_or(o.n > 1 ? 4.0 / static_cast<double>(o.n - 1) : 0.0);
        if (!(p >= 0.0 && p <= 1.0))
            throw UsageError("er needs 0 <= p <= 1");
        graph = nq::generate_er(o.n, p, o.seed);
    }
    std::ostringstream out;
    nq::write_edge_list(graph, out);
    write_text(o.output, out.str());
    return 0;
}

struct BenchOptions {
    std::vector<std::string> inputs;
    std::string format = "auto";
    std::string strategies = "deg,ideg,qre";
    std::size_t repeats = 1;
    double timeout_s = 3600.0;
    std::string output = "-";
    std::uint64_t seed = 0;
    unsigned threads = nq::detail::threads_from_env(1);
    std::optional<std::size_t> z;
};

struct BenchCell {
    std::string status;  // "ok", "timeout", "error"
    double R = 0.0;
    long long runtime_ms = 0;
};

// Runs fn(stop) with a wall-clock limit; the computation is asked to stop when
// the limit passes.
template <class Fn>
std::optional<double> run_with_timeout(Fn fn, double timeout_s, long long& ms) {
    std::promise<double> done;
    auto result = done.get_future();
    const auto t0 = std::chrono::steady_clock::now();
    std::jthread worker([&](std::stop_token stop) {
        try {
            done.set_value(fn(stop));
        } catch (...) {
            done.set_exception(std::current_exception());
        }
    });
    const auto limit = std::chrono::duration<double>(timeout_s);
    if (result.wait_for(limit) == std::future_status::timeout) {
        worker.request_stop();
        return std::nullopt;
    }
    ms = elapsed_ms(t0);
    return result.get();
}

int run_bench(const BenchOptions& o) {
    if (o.repeats < 1)
        throw UsageError("--repeats must be at least 1");
    std::vector<std::string> names;
    {
        std::stringstream ss(o.strategies);
        for (std::string s; std::getline(ss, s, ',');)
            if (!s.empty())
                names.push_back(s);
    }
    if (names.empty())
        throw UsageError("no strategies given");
    std::vector<std::optional<nq::StrategySpec>> specs;
    for (const auto& s : names) {
        if (s == "qre" || s == "QRE") {
            specs.emplace_back(std::nullopt);
            continue;
        }
        auto spec = parse_strategy(s, false);
        spec.seed = o.seed;
        specs.emplace_back(spec);
    }

    struct Network {
        std::string name;
        std::optional<nq::Graph> graph;
        std::string error;
    };
    std::vector<Network> nets;
    for (const auto& path : o.inputs) {
        Network net{network_name(path), std::nullopt, {}};
        try {
            net.graph = load_graph(path, o.format);
        } catch (const std::exception& e) {
            net.error = e.what();
            std::cerr << "bench: " << path << ": " << e.what() << '\n';
        }
        nets.push_back(std::move(net));
    }

    const std::size_t cells = nets.size() * specs.size();
    std::vector<BenchCell> table(cells);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t c; (c = next++) < cells;) {
            const auto& net = nets[c / specs.size()];
            const auto& spec = specs[c % specs.size()];
            BenchCell& cell = table[c];
            if (!net.graph) {
                cell.status = "error";
                continue;
            }
            std::vector<long long> times;
            try {
                for (std::size_t r = 0; r < o.repeats; ++r) {
                    long long ms = 0;
                    auto value = run_with_timeout(
                        [&](std::stop_token stop) {
                            if (spec)
                                return nq::run_strategy(*net.graph, *spec, stop).R;
                            nq::QreParams params;
                            params.seed = o.seed;
                            params.iterations = o.z;
                            return nq::qre_estimate(*net.graph, params, stop).best_R;
                        },
                        o.timeout_s, ms);
                    if (!value) {
                        cell.status = "timeout";
                        break;
                    }
                    cell.R = *value;
                    times.push_back(ms);
                }
                if (cell.status.empty()) {
                    std::sort(times.begin(), times.end());
                    cell.runtime_ms = times[times.size() / 2];
                    cell.status = "ok";
                }
            } catch (const std::exception& e) {
                cell.status = "error";
            }
        }
    };
    {
        std::vector<std::jthread> pool;
        for (unsigned t = 1; t < std::max(1u, o.threads); ++t)
            pool.emplace_back(worker);
        worker();
    }

    std::ostringstream out;
    out << "network,N,M";
    for (std::size_t s = 0; s < specs.size(); ++s) {
        const std::string label = specs[s] ? specs[s]->descriptor() : "QRE";
        out << ',' << label << "_R," << label << "_ms";
    }
    out << '\n';
    for (std::size_t i = 0; i < nets.size(); ++i) {
        const auto& net = nets[i];
        out << net.name << ',' << (net.graph ? net.graph->node_count() : 0) << ','
            << (net.graph ? net.graph->edge_count() : 0);
        for (std::size_t s = 0; s < specs.size(); ++s) {
            const auto& cell = table[i * specs.size() + s];
            if (cell.status == "ok") {
                char buf[32];
                std::snprintf(buf, sizeof buf, "%.4f", nq::round4(cell.R));
                out << ',' << buf << ',' << cell.runtime_ms;
            } else {
                out << ',' << cell.status << ',' << cell.status;
            }
        }
        out << '\n';
    }
    write_text(o.output, out.str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"netquake: attack robustness estimation for large networks"};
    app.require_subcommand(1);
    app.set_version_flag("--version", nq::kToolVersion);

    AttackOptions attack;
    auto* attack_cmd = app.add_subcommand("attack", "Run one baseline attack strategy");
    add_shared(attack_cmd, attack.shared);
    attack_cmd->add_option("--strategy", attack.strategy, "deg | betw | abet | pr | ci2 | ci3 | ci<l>");
    attack_cmd->add_flag("--interactive", attack.interactive, "Re-rank after every removal");
    attack_cmd->add_option("--pivots", attack.pivots, "Pivot count Y for abet");
    attack_cmd->add_option("--damping", attack.damping, "PageRank damping");
    attack_cmd->add_option("--batch", attack.batch, "Removals between re-rankings (interactive)");
    attack_cmd->add_option("--curve-csv", attack.shared.curve_csv, "Write the Q,gcs curve here");

    QreOptions qre;
    auto* qre_cmd = app.add_subcommand("qre", "Quick robustness estimation");
    add_shared(qre_cmd, qre.shared);
    qre_cmd->add_option("--x", qre.x, "Sub-interval count X");
    qre_cmd->add_option("--y", qre.y, "Pivot count Y (default from --y-mode)");
    qre_cmd->add_option("--z", qre.z, "Refinement iterations Z (default from --y-mode)");
    qre_cmd->add_option("--y-mode", qre.y_mode, "scaled | paper")
        ->check(CLI::IsMember({"scaled", "paper", "paper_literal"}));
    qre_cmd->add_option("--curve-csv", qre.shared.curve_csv, "Write the Q,gcs curve here");

    GenOptions gen;
    auto* gen_cmd = app.add_subcommand("gen", "Generate a random network as an edge list");
    gen_cmd->add_option("--model", gen.model, "ba | er")->required()->check(CLI::IsMember({"ba", "er"}));
    gen_cmd->add_option("--n", gen.n, "Node count")->required();
    gen_cmd->add_option("--m", gen.m, "Attachment count (ba)");
    gen_cmd->add_option("--p", gen.p, "Edge probability (er, default 4/(n-1))");
    gen_cmd->add_option("--seed", gen.seed, "Seed");
    gen_cmd->add_option("--output", gen.output, "Output file ('-' for stdout)");

    BenchOptions bench;
    auto* bench_cmd = app.add_subcommand("bench", "Run a network x strategy matrix");
    bench_cmd->add_option("--input", bench.inputs, "Network files")->required();
    bench_cmd->add_option("--format", bench.format)->check(CLI::IsMember({"auto", "edgelist", "gml"}));
    bench_cmd->add_option("--strategies", bench.strategies, "Comma list, e.g. deg,ideg,ibetw,ci2,qre");
    bench_cmd->add_option("--repeats", bench.repeats, "Runs per cell; runtime is the median");
    bench_cmd->add_option("--timeout", bench.timeout_s, "Per-run wall-clock limit in seconds");
    bench_cmd->add_option("--output", bench.output, "CSV output ('-' for stdout)");
    bench_cmd->add_option("--seed", bench.seed, "Seed for abet and QRE");
    bench_cmd->add_option("--z", bench.z, "QRE refinement iterations");
    bench_cmd->add_option("--threads", bench.threads, "Cells evaluated concurrently")->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kUsageError;
    }

    try {
        if (*attack_cmd)
            return run_attack(attack);
        if (*qre_cmd)
            return run_qre(qre);
        if (*gen_cmd)
            return run_gen(gen);
        if (*bench_cmd)
            return run_bench(bench);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kUsageError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kDataError;
    }
    return kUsageError;
}
