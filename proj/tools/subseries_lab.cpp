// subseries-lab: command-line front end for the series-selection library.
//
// Subcommands: enumerate-fn32, partition, classify, two-series, balance,
// construct-three, counterexample, regression. Domain errors leave as a
// machine-readable JSON object on stderr with a nonzero exit status.

#include "subseries/balance.hpp"
#include "subseries/catalog.hpp"
#include "subseries/counterexample.hpp"
#include "subseries/errors.hpp"
#include "subseries/report.hpp"
#include "subseries/selector.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>

using namespace subseries;
using nlohmann::json;

namespace {

struct RunConfig {
    u64 depth = 1000000;
    double epsilon = 0.01;
    double threshold = 2.0;
    double margin = 0.5;
    std::vector<u64> checkpoints;
    std::string cx_mode = "paper";
    int cx_blocks = 5;
    u64 seed = 20260810;
    std::string fixtures = "fixtures";

    void validate() const {
        if (depth < 1000) throw std::invalid_argument("depth must be at least 1000");
        if (epsilon <= 0) throw std::invalid_argument("epsilon must be positive");
    }
    TrendPolicy policy() const {
        TrendPolicy p;
        p.threshold = threshold;
        p.margin = margin;
        p.checkpoints = checkpoints;
        return p;
    }
};

// flat key=value files; '#' starts a comment
void load_config_file(const std::string& path, RunConfig& cfg) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file " + path);
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        auto trim = [](std::string s) {
            s.erase(0, s.find_first_not_of(" \t"));
            s.erase(s.find_last_not_of(" \t") + 1);
            return s;
        };
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key == "depth")
            cfg.depth = std::stoull(value);
        else if (key == "epsilon")
            cfg.epsilon = std::stod(value);
        else if (key == "threshold")
            cfg.threshold = std::stod(value);
        else if (key == "margin")
            cfg.margin = std::stod(value);
        else if (key == "cx_mode")
            cfg.cx_mode = value;
        else if (key == "cx_blocks")
            cfg.cx_blocks = std::stoi(value);
        else if (key == "seed")
            cfg.seed = std::stoull(value);
        else if (key == "fixtures")
            cfg.fixtures = value;
        else if (key == "checkpoints") {
            cfg.checkpoints.clear();
            std::size_t pos = 0;
            while (pos < value.size()) {
                auto comma = value.find(',', pos);
                if (comma == std::string::npos) comma = value.size();
                cfg.checkpoints.push_back(std::stoull(value.substr(pos, comma - pos)));
                pos = comma + 1;
            }
        } else
            throw std::invalid_argument("unknown config key: " + key);
    }
}

IndexSet parse_set(const std::string& text) {
    if (text == "all") return IndexSet::all();
    if (text == "empty") return IndexSet::empty();
    if (text == "odds") return IndexSet::odds();
    if (text == "evens") return IndexSet::evens();
    if (text.rfind("mod:", 0) == 0) {
        auto colon = text.find(':', 4);
        if (colon != std::string::npos) {
            u64 q = std::stoull(text.substr(4, colon - 4));
            u64 r = std::stoull(text.substr(colon + 1));
            return IndexSet::residue(q, r);
        }
    }
    throw std::invalid_argument("unknown set: " + text +
                                " (use all, empty, odds, evens, or mod:Q:R)");
}

cx::RecurrenceMode parse_mode(const std::string& text) {
    if (text == "paper") return cx::RecurrenceMode::Paper;
    if (text == "strict") return cx::RecurrenceMode::Strict;
    throw std::invalid_argument("mode must be paper or strict");
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << content;
}

void emit_json(const std::string& path, const json& j) {
    write_file(path, j.dump(2) + "\n");
}

// ---------------------------------------------------------------- commands

int cmd_enumerate(const std::string& json_path) {
    auto classes = fn32::enumerate_classes();
    std::uint64_t total = 0;
    for (const auto& c : classes) {
        std::cout << to_string(c.type) << "  members=" << c.representative.to_string()
                  << "  orbit=" << c.orbit_size << "\n";
        total += c.orbit_size;
    }
    std::cout << classes.size() << " classes, " << total << " qualifying families\n";
    if (!json_path.empty()) emit_json(json_path, to_json(classes));
    return 0;
}

struct PreparedInstance {
    Instance instance;
    SignPartition cells;
    VerdictOracle oracle;
};

PreparedInstance prepare(const std::string& name, const RunConfig& cfg) {
    PreparedInstance p{catalog::instance_by_name(name, cfg.depth + cfg.depth / 2), {}, {}};
    p.cells = sign_partition(p.instance.streams);
    catalog::declare_all(p.oracle, p.instance, p.cells);
    return p;
}

int cmd_partition(const std::string& name, const RunConfig& cfg, const std::string& json_path) {
    PreparedInstance p = prepare(name, cfg);
    json cells_json = json::array();
    for (unsigned bits : p.cells.nonempty_patterns()) {
        const IndexSet& cell = p.cells.cells[bits];
        auto sample = cell.materialize(40);
        std::cout << "cell " << p.cells.pattern_of(bits).to_string() << "  first indices:";
        for (u64 n : sample) std::cout << " " << n;
        std::cout << "\n";
        json e;
        e["pattern"] = p.cells.pattern_of(bits).to_string();
        e["sample"] = sample;
        auto it = p.instance.cell_verdicts.find(bits);
        if (it != p.instance.cell_verdicts.end()) {
            json verdicts = json::array();
            for (Verdict v : it->second) verdicts.push_back(to_string(v));
            e["declared_verdicts"] = verdicts;
        }
        cells_json.push_back(e);
    }
    std::cout << p.cells.nonempty_patterns().size() << " nonempty cells of "
              << p.cells.cells.size() << "\n";
    if (!json_path.empty()) {
        json j;
        j["schema_version"] = kSchemaVersion;
        j["instance"] = name;
        j["cells"] = cells_json;
        emit_json(json_path, j);
    }
    return 0;
}

int cmd_classify(const std::string& name, bool check15, const RunConfig& cfg,
                 const std::string& json_path) {
    PreparedInstance p = prepare(name, cfg);
    if (p.instance.streams.size() != 3)
        throw std::invalid_argument("classify needs a three-series instance");
    TamePhiFamily fam = tame_phi_family(p.cells, p.instance.streams, p.oracle);
    fn32::FamilyType type = fn32::classify(fam.family);
    std::cout << "profile family: " << fam.family.to_string() << "\n";
    std::cout << "type: " << to_string(type) << "\n";

    json j;
    j["schema_version"] = kSchemaVersion;
    j["instance"] = name;
    j["family"] = fam.family.to_string();
    j["type"] = to_string(type);

    int failures = 0;
    if (check15) {
        auto inhabited = p.cells.nonempty_patterns();
        unsigned count = static_cast<unsigned>(inhabited.size());
        json unions = json::array();
        for (unsigned mask = 1; mask < (1u << count); ++mask) {
            fn32::PartialFunction profile;
            bool clash = false;
            for (std::size_t coord = 0; coord < 3 && !clash; ++coord) {
                Verdict folded = Verdict::AbsolutelyConvergent;
                for (unsigned i = 0; i < count; ++i)
                    if ((mask >> i) & 1u)
                        folded = verdict_union(folded,
                                               p.oracle.resolve(p.instance.streams[coord],
                                                                p.cells.cells[inhabited[i]]));
                if (folded == Verdict::Unknown)
                    clash = true;
                else if (folded == Verdict::PlusInfinity)
                    profile = profile.with(static_cast<int>(coord) + 1, fn32::Value::P);
                else if (folded == Verdict::MinusInfinity)
                    profile = profile.with(static_cast<int>(coord) + 1, fn32::Value::N);
            }
            std::string desc = clash ? "(sum not well-defined)" : profile.to_string();
            bool total = !clash && profile.is_total();
            if (total) ++failures;
            json e;
            e["cells"] = mask;
            e["profile"] = desc;
            e["total"] = total;
            unions.push_back(e);
            std::cout << "union mask " << mask << ": " << desc << (total ? "  TOTAL" : "")
                      << "\n";
        }
        std::cout << ((1u << count) - 1) << " unions checked, " << failures
                  << " with a total profile\n";
        j["unions"] = unions;
        j["total_profiles"] = failures;
    }
    if (!json_path.empty()) emit_json(json_path, j);
    return failures == 0 ? 0 : 1;
}

int cmd_two_series(const std::string& name, const RunConfig& cfg,
                   const std::string& json_path) {
    PreparedInstance p = prepare(name, cfg);
    if (p.instance.streams.size() != 2)
        throw std::invalid_argument("two-series needs a two-series instance");
    TwoSeriesResult res = two_series_select(p.cells, p.instance.streams, p.oracle);
    std::cout << "chosen set: " << res.chosen.describe() << "\n";
    std::cout << "verdicts: " << to_string(res.verdicts[0]) << ", "
              << to_string(res.verdicts[1]) << "\n";
    for (const auto& step : res.certificate)
        std::cout << "  [" << step.rule << "] " << step.claim << " -> "
                  << to_string(step.verdict) << "\n";
    if (!json_path.empty()) emit_json(json_path, to_json(res));
    return 0;
}

int cmd_balance(const std::string& mode, const std::string& stream_name,
                const std::string& set_text, const std::string& c_text, unsigned blocks,
                const RunConfig& cfg, const std::string& csv_path,
                const std::string& json_path) {
    TermStream stream = catalog::stream_by_name(stream_name, cfg.depth + cfg.depth / 2);
    VerdictOracle oracle;
    catalog::declare_standalone(oracle, stream);
    IndexSet a = parse_set(set_text);

    if (mode == "split") {
        BalanceSplit split = balance_split(a, stream, blocks, cfg.depth, oracle);
        std::cout << "cutpoints:";
        for (const auto& k : split.schedule->cutpoints) std::cout << " " << k.str();
        std::cout << "\n";
        std::cout << "engine: " << (split.schedule->analytic ? "closed-form" : "walked")
                  << ", propagated verdict " << to_string(split.propagated)
                  << " on both halves\n";
        if (!json_path.empty()) {
            json j;
            j["schema_version"] = kSchemaVersion;
            j["stream"] = stream.label;
            j["set"] = a.describe();
            json cuts = json::array();
            for (const auto& k : split.schedule->cutpoints) cuts.push_back(k.str());
            j["cutpoints"] = cuts;
            j["analytic"] = split.schedule->analytic;
            j["verdict"] = to_string(split.propagated);
            emit_json(json_path, j);
        }
        if (!csv_path.empty()) {
            std::ofstream out(csv_path, std::ios::binary);
            out << "m,cutpoint\n";
            int m = 1;
            for (const auto& k : split.schedule->cutpoints)
                out << (m++) << "," << k.str() << "\n";
        }
        return 0;
    }
    if (mode == "greedy") {
        IndexSet c = parse_set(c_text);
        GreedyResult res = greedy_balance(c, a, stream, cfg.depth, oracle);
        u64 env = envelope_start(res.trace, cfg.epsilon);
        std::cout << "B size to depth: " << res.b.count_to(cfg.depth) << "\n";
        std::cout << "final sum: " << format_double(res.trace.final_sum()) << "\n";
        std::cout << "envelope (-2e,3e) for e=" << cfg.epsilon << " holds from N=" << env
                  << (env == 0 ? " (never)" : "") << "\n";
        std::cout << "flagged sign decisions: " << res.flagged_decisions << "\n";
        if (!json_path.empty()) {
            json j;
            j["schema_version"] = kSchemaVersion;
            j["stream"] = stream.label;
            j["A"] = a.describe();
            j["C"] = c.describe();
            j["depth"] = cfg.depth;
            j["final_sum"] = format_double(res.trace.final_sum());
            j["envelope_start"] = env;
            j["mirrored"] = res.mirrored;
            emit_json(json_path, j);
        }
        if (!csv_path.empty()) {
            std::ofstream out(csv_path, std::ios::binary);
            write_trace_csv(out, res.trace, stream, cfg.depth > 100000);
        }
        return 0;
    }
    throw std::invalid_argument("balance mode must be split or greedy");
}

int cmd_construct_three(const std::string& name, const RunConfig& cfg,
                        const std::string& json_path, const std::string& csv_prefix,
                        bool csv_full) {
    PreparedInstance p = prepare(name, cfg);
    if (p.instance.streams.size() != 3)
        throw std::invalid_argument("construct-three needs a three-series instance");
    SelectorParams params;
    params.depth = cfg.depth;
    params.policy = cfg.policy();
    CaseReport report = three_series_select(p.instance, p.oracle, params);

    std::cout << "family type: " << to_string(report.family_type) << "\n";
    std::cout << "case: " << to_string(report.tag) << "\n";
    std::cout << "relabeling: " << report.relabeling.to_string() << "\n";
    std::cout << "chosen set: " << report.chosen.describe() << "\n";
    for (int i = 0; i < 3; ++i) {
        std::cout << "series " << (i + 1) << ": "
                  << to_string(report.instance_verdicts[static_cast<std::size_t>(i)]);
        if (report.traces_computed)
            std::cout << "  (final sum "
                      << format_double(report.final_sums[static_cast<std::size_t>(i)])
                      << ", trend tag "
                      << to_string(report.empirical_tags[static_cast<std::size_t>(i)]) << ")";
        std::cout << "\n";
    }
    std::string why;
    bool valid = validate_certificate(report.certificate, &why);
    std::cout << "certificate: " << report.certificate.size() << " steps, "
              << (valid ? "re-validates" : ("INVALID: " + why)) << "\n";
    for (const auto& note : report.notes) std::cout << "note: " << note << "\n";

    if (!json_path.empty()) emit_json(json_path, to_json(report));
    if (!csv_prefix.empty()) {
        for (int i = 0; i < 3; ++i) {
            PartialSumTrace tr = PartialSumTrace::compute(
                p.instance.streams[static_cast<std::size_t>(i)], report.chosen, cfg.depth);
            std::ofstream out(csv_prefix + "series" + std::to_string(i + 1) + ".csv",
                              std::ios::binary);
            write_trace_csv(out, tr, p.instance.streams[static_cast<std::size_t>(i)],
                            !csv_full);
        }
    }
    return valid ? 0 : 1;
}

int cmd_counterexample(const RunConfig& cfg, const std::string& selection, int series,
                       const std::string& threshold_text, bool print_b,
                       const std::string& csv_path, const std::string& json_path) {
    cx::RecurrenceMode mode = parse_mode(cfg.cx_mode);
    cx::BlockTable table = cx::b_sequence(cfg.cx_blocks, mode);
    if (print_b) {
        std::cout << "b:";
        for (const auto& b : table.lengths) std::cout << " " << b.str();
        std::cout << "\n";
    }

    cx::BlockSelection sel;
    if (selection == "odds") {
        sel = cx::witness_odds(cfg.cx_blocks, table);
    } else if (selection == "random") {
        std::mt19937_64 rng(cfg.seed);
        for (int m = 1; m <= cfg.cx_blocks; ++m) {
            BigInt cap = table.lengths[static_cast<std::size_t>(m - 1)] / 2;
            u64 capped = cap > 1000000 ? 1000000 : cap.convert_to<u64>();
            sel.counts.emplace_back(BigInt(rng() % (capped + 1)),
                                    BigInt(rng() % (capped + 1)));
        }
    } else {
        throw std::invalid_argument("selection must be odds or random");
    }

    BigRat threshold(threshold_text.empty() ? std::string("1") : threshold_text);
    cx::OscillationReport report =
        cx::oscillation_report(sel, series, cfg.cx_blocks, threshold, table);
    for (std::size_t m = 0; m < report.boundary_sums.size(); ++m)
        std::cout << "after block " << (m + 1) << ": " << to_string(report.boundary_sums[m])
                  << "\n";
    for (const auto& c : report.crossings)
        std::cout << "crossing of " << to_string(c.threshold) << " ("
                  << (c.upward ? "up" : "down") << ") within block " << c.block << "\n";

    if (!csv_path.empty()) {
        std::ofstream out(csv_path, std::ios::binary);
        write_oscillation_csv(out, report);
    }
    if (!json_path.empty()) {
        json j = to_json(report);
        j["mode"] = to_string(mode);
        json lengths = json::array();
        for (const auto& b : table.lengths) lengths.push_back(b.str());
        j["b"] = lengths;
        emit_json(json_path, j);
    }
    return 0;
}

// ---------------------------------------------------------------- regression

json compute_regression_state() {
    json j;
    j["schema_version"] = kSchemaVersion;

    {
        auto classes = fn32::enumerate_classes();
        json sizes = json::array(), orbits = json::array();
        std::uint64_t total = 0;
        for (const auto& c : classes) {
            sizes.push_back(c.representative.size());
            orbits.push_back(c.orbit_size);
            total += c.orbit_size;
        }
        j["fn32"] = {{"class_sizes", sizes}, {"orbit_sizes", orbits}, {"total", total}};
    }
    {
        TermStream s = catalog::stream_by_name("altharm");
        VerdictOracle oracle;
        catalog::declare_standalone(oracle, s);
        BalanceSplit split = balance_split(IndexSet::odds(), s, 8, 1000000, oracle);
        json cuts = json::array();
        for (const auto& k : split.schedule->cutpoints) cuts.push_back(k.str());
        j["balance_cutpoints_altharm_odds"] = cuts;
    }
    {
        TermStream s = catalog::stream_by_name("negaltharm");
        VerdictOracle oracle;
        catalog::declare_standalone(oracle, s);
        GreedyResult res =
            greedy_balance(IndexSet::residue(4, 0), IndexSet::evens(), s, 100000, oracle);
        j["greedy_final_1e5"] = format_double(res.trace.final_sum());
        j["greedy_b_count_1e5"] = res.b.count_to(100000);
    }
    for (const char* name : {"intro", "type1", "type2"}) {
        Instance inst = catalog::instance_by_name(name);
        SignPartition cells = sign_partition(inst.streams);
        VerdictOracle oracle;
        catalog::declare_all(oracle, inst, cells);
        SelectorParams params;
        params.depth = 100000;
        params.policy.threshold = 1.2;
        CaseReport report = three_series_select(inst, oracle, params);
        json e;
        e["family_type"] = to_string(report.family_type);
        e["case"] = to_string(report.tag);
        json finals = json::array(), verdicts = json::array();
        for (int i = 0; i < 3; ++i) {
            finals.push_back(format_double(report.final_sums[static_cast<std::size_t>(i)]));
            verdicts.push_back(
                to_string(report.instance_verdicts[static_cast<std::size_t>(i)]));
        }
        e["final_sums_1e5"] = finals;
        e["instance_verdicts"] = verdicts;
        j[std::string("selector_") + name] = e;
    }
    {
        json modes;
        for (auto mode : {cx::RecurrenceMode::Paper, cx::RecurrenceMode::Strict}) {
            cx::BlockTable t = cx::b_sequence(8, mode);
            json lengths = json::array();
            for (const auto& b : t.lengths) lengths.push_back(b.str());
            modes[to_string(mode)] = lengths;
        }
        j["b_sequences_M8"] = modes;

        cx::BlockTable t = cx::b_sequence(5, cx::RecurrenceMode::Paper);
        cx::BlockSelection odds = cx::witness_odds(5, t);
        auto report = cx::oscillation_report(odds, 2, 5, BigRat(1), t);
        json sums = json::array();
        for (const auto& s : report.boundary_sums) sums.push_back(to_string(s));
        j["cx_series2_boundaries_M5"] = sums;
        j["cx_series2_crossings_M5"] = report.crossings.size();
    }
    {
        PreparedInstance p{catalog::instance_by_name("tableau"), {}, {}};
        p.cells = sign_partition(p.instance.streams);
        catalog::declare_all(p.oracle, p.instance, p.cells);
        TwoSeriesResult res = two_series_select(p.cells, p.instance.streams, p.oracle);
        j["two_series_tableau_chosen"] = res.chosen.describe();
    }
    return j;
}

int cmd_regression(const RunConfig& cfg) {
    namespace fs = std::filesystem;
    fs::path dir = cfg.fixtures;
    if (const char* env = std::getenv("SUBSERIES_LAB_FIXTURES")) dir = env;
    fs::path file = dir / "regression.json";

    json current = compute_regression_state();
    if (!fs::exists(file)) {
        fs::create_directories(dir);
        emit_json(file.string(), current);
        std::cout << "bootstrap: recorded " << current.size() << " fixture entries to "
                  << file.string() << "\n";
        return 0;
    }
    std::ifstream in(file);
    json recorded = json::parse(in);
    int drifts = 0;
    for (auto it = recorded.begin(); it != recorded.end(); ++it) {
        if (!current.contains(it.key())) {
            std::cout << "MISSING " << it.key() << "\n";
            ++drifts;
            continue;
        }
        if (current[it.key()] != it.value()) {
            std::cout << "DRIFT " << it.key() << "\n  recorded: " << it.value().dump()
                      << "\n  current:  " << current[it.key()].dump() << "\n";
            ++drifts;
        }
    }
    for (auto it = current.begin(); it != current.end(); ++it)
        if (!recorded.contains(it.key())) {
            std::cout << "NEW " << it.key() << " (not in fixtures)\n";
            ++drifts;
        }
    if (drifts == 0) {
        std::cout << "regression: " << recorded.size() << " entries match\n";
        return 0;
    }
    std::cout << "regression: " << drifts << " drifting entries\n";
    return 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"desk-scale constructions for subseries selection across several "
                 "conditionally convergent series"};
    app.require_subcommand(1);
    app.fallthrough();  // configuration flags may follow the subcommand

    RunConfig cfg;
    // a config file applies before flag parsing, so flags win
    try {
        for (int i = 1; i + 1 < argc; ++i)
            if (std::string(argv[i]) == "--config") load_config_file(argv[i + 1], cfg);
    } catch (const std::exception& e) {
        std::cerr << json{{"error", {{"code", "Config"}, {"message", e.what()}}}}.dump()
                  << "\n";
        return 2;
    }
    std::string config_path;
    app.add_option("--config", config_path, "key=value configuration file");

    app.add_option("--depth", cfg.depth, "materialization depth cap");
    app.add_option("--epsilon", cfg.epsilon, "envelope epsilon");
    app.add_option("--threshold", cfg.threshold, "trend threshold T");
    app.add_option("--margin", cfg.margin, "trend margin");
    app.add_option("--seed", cfg.seed, "seed for randomized selections");
    app.add_option("--fixtures", cfg.fixtures, "fixture directory");

    auto* enumerate = app.add_subcommand("enumerate-fn32", "the four family classes");
    std::string enum_json;
    enumerate->add_option("--json", enum_json, "write the classes as JSON");

    auto* partition = app.add_subcommand("partition", "sign cells of an instance");
    std::string part_instance = "intro", part_json;
    partition->add_option("--instance", part_instance, "catalog instance");
    partition->add_option("--json", part_json);

    auto* classify = app.add_subcommand("classify", "profile family of an instance");
    std::string cls_instance = "intro", cls_json;
    bool check15 = false;
    classify->add_option("--instance", cls_instance);
    classify->add_flag("--check-15", check15, "scan every nonempty union of inhabited cells");
    classify->add_option("--json", cls_json);

    auto* two = app.add_subcommand("two-series", "select a set for two series");
    std::string two_instance = "mirror", two_json;
    two->add_option("--instance", two_instance);
    two->add_option("--json", two_json);

    auto* balance = app.add_subcommand("balance", "block split / greedy balancing");
    std::string bal_mode = "split", bal_stream = "altharm", bal_set = "odds",
                bal_c = "empty", bal_csv, bal_json;
    unsigned bal_blocks = 4;
    balance->add_option("--mode", bal_mode, "split or greedy");
    balance->add_option("--stream", bal_stream, "catalog stream");
    balance->add_option("--set", bal_set, "the set A (all|odds|evens|mod:Q:R)");
    balance->add_option("--C", bal_c, "the subset C for greedy mode");
    balance->add_option("--blocks", bal_blocks, "blocks to compute (split)");
    balance->add_option("--csv", bal_csv);
    balance->add_option("--json", bal_json);

    auto* three = app.add_subcommand("construct-three", "the full three-series selection");
    std::string three_instance = "intro", three_json, three_csv_prefix;
    bool three_csv_full = false;
    three->add_option("--instance", three_instance);
    three->add_option("--json", three_json, "CaseReport as JSON");
    three->add_option("--csv-prefix", three_csv_prefix, "write three trace CSVs");
    three->add_flag("--csv-full", three_csv_full, "full-resolution CSV rows");

    auto* cxcmd = app.add_subcommand("counterexample", "four-series block construction");
    std::string cx_selection = "odds", cx_threshold = "1", cx_csv, cx_json;
    int cx_series = 2;
    bool print_b = false;
    cxcmd->add_option("--mode", cfg.cx_mode, "paper or strict");
    cxcmd->add_option("--blocks", cfg.cx_blocks, "number of blocks M");
    cxcmd->add_option("--selection", cx_selection, "odds or random");
    cxcmd->add_option("--series", cx_series, "series index 1..4");
    cxcmd->add_option("--threshold", cx_threshold, "crossing threshold (exact rational)");
    cxcmd->add_flag("--print-b", print_b, "print the block lengths");
    cxcmd->add_option("--csv", cx_csv);
    cxcmd->add_option("--json", cx_json);

    auto* regression = app.add_subcommand("regression", "replay recorded derived constants");

    CLI11_PARSE(app, argc, argv);

    try {
        cfg.validate();
        if (enumerate->parsed()) return cmd_enumerate(enum_json);
        if (partition->parsed()) return cmd_partition(part_instance, cfg, part_json);
        if (classify->parsed()) return cmd_classify(cls_instance, check15, cfg, cls_json);
        if (two->parsed()) return cmd_two_series(two_instance, cfg, two_json);
        if (balance->parsed())
            return cmd_balance(bal_mode, bal_stream, bal_set, bal_c, bal_blocks, cfg, bal_csv,
                               bal_json);
        if (three->parsed())
            return cmd_construct_three(three_instance, cfg, three_json, three_csv_prefix,
                                       three_csv_full);
        if (cxcmd->parsed())
            return cmd_counterexample(cfg, cx_selection, cx_series, cx_threshold, print_b,
                                      cx_csv, cx_json);
        if (regression->parsed()) return cmd_regression(cfg);
    } catch (const UnresolvableVerdict& e) {
        std::cerr << json{{"error", {{"code", "UnresolvableVerdict"}, {"message", e.what()}}}}
                         .dump()
                  << "\n";
        return 2;
    } catch (const DepthExhausted& e) {
        std::cerr << json{{"error", {{"code", "DepthExhausted"}, {"message", e.what()}}}}.dump()
                  << "\n";
        return 2;
    } catch (const InstanceContradiction& e) {
        std::cerr << json{{"error", {{"code", "InstanceContradiction"}, {"message", e.what()}}}}
                         .dump()
                  << "\n";
        return 2;
    } catch (const PreconditionViolated& e) {
        std::cerr << json{{"error", {{"code", "PreconditionViolated"}, {"message", e.what()}}}}
                         .dump()
                  << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << json{{"error", {{"code", "Error"}, {"message", e.what()}}}}.dump() << "\n";
        return 2;
    }
    return 0;
}
