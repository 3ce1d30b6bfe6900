// srgen - search-based unit-test generation for subject-language units
#include <CLI11.hpp>
#include <json.hpp>

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "srgen/mutation.hpp"
#include "srgen/parser.hpp"
#include "srgen/pipeline.hpp"
#include "srgen/version.hpp"

namespace fs = std::filesystem;
using namespace srgen;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitEvaluationFailure = 1;
constexpr int kExitInputError = 2;
constexpr int kExitConfigError = 3;

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const fs::path& path, const std::string& text) {
    fs::create_directories(path.parent_path().empty() ? "." : path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
    out << text;
}

std::string timestamp_utc() {
    auto now = std::chrono::system_clock::now();
    std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
    return buf;
}

std::string stem_of(const std::string& path) { return fs::path(path).stem().string(); }

// "1..10", "3" or "1,2,5"
std::vector<uint64_t> parse_seeds(const std::string& spec) {
    std::vector<uint64_t> seeds;
    auto range = spec.find("..");
    if (range != std::string::npos) {
        uint64_t lo = std::stoull(spec.substr(0, range));
        uint64_t hi = std::stoull(spec.substr(range + 2));
        for (uint64_t s = lo; s <= hi; ++s) seeds.push_back(s);
        return seeds;
    }
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) seeds.push_back(std::stoull(item));
    if (seeds.empty()) throw std::runtime_error("empty seed list");
    return seeds;
}

struct CommonOpts {
    uint64_t seed = 1;
    int64_t budget = 50000;
    int population = 50;
    int max_len = 40;
    int64_t step_limit = 100000;
    double tolerance = 1e-6;
};

RunConfig to_run_config(const CommonOpts& o, Representation repr) {
    RunConfig cfg;
    cfg.repr = repr;
    cfg.seed = o.seed;
    cfg.budget = o.budget;
    cfg.population = o.population;
    cfg.chrom.max_len = o.max_len;
    cfg.limits.step_limit = o.step_limit;
    cfg.tolerance = o.tolerance;
    return cfg;
}

void add_common_flags(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--budget", o.budget, "search budget in test executions")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--population", o.population, "population size (even, >= 4)")
        ->check(CLI::Range(4, 10000));
    cmd->add_option("--max-len", o.max_len, "statement cap per test")->check(CLI::PositiveNumber);
    cmd->add_option("--step-limit", o.step_limit, "interpreter steps per execution")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--tolerance", o.tolerance, "real-valued assertion tolerance")
        ->check(CLI::PositiveNumber);
}

int write_generate_outputs(const fs::path& out_dir, const std::string& subject_path,
                           const std::string& label, const RunConfig& cfg,
                           const GenerateOutput& result) {
    write_file(out_dir / "report.json", result.report_json);
    write_file(out_dir / (label + "." + repr_name(cfg.repr) + ".tests"), result.rendered);
    write_file(out_dir / "manifest.json",
               manifest_json(subject_path, cfg, out_dir.string(), timestamp_utc()));
    if (cfg.dump_traces) write_file(out_dir / "traces.json", result.traces_json);
    return kExitOk;
}

int cmd_generate(const std::string& subject_path, const std::string& repr_text,
                 const CommonOpts& opts, const std::string& out_dir, bool dump_traces) {
    std::string source;
    try {
        source = read_file(subject_path);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    }
    try {
        SubjectUnit unit = parse_subject(source);
        SubjectInfo info(unit);
        Representation repr =
            repr_text == "focal" ? Representation::Focal : Representation::Baseline;
        RunConfig cfg = to_run_config(opts, repr);
        cfg.dump_traces = dump_traces;
        GenerateOutput result = run_generate(info, stem_of(subject_path), cfg);
        write_generate_outputs(out_dir, subject_path, stem_of(subject_path), cfg, result);
        std::cout << result.report_json;
        return kExitOk;
    } catch (const ParseError& e) {
        std::cerr << "error: " << subject_path << ":" << e.pos.line << ":" << e.pos.col << ": "
                  << e.message << "\n";
        return kExitInputError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    }
}

int cmd_mutants(const std::string& subject_path) {
    try {
        SubjectUnit unit = parse_subject(read_file(subject_path));
        for (const Mutant& m : generate_mutants(unit)) {
            nlohmann::ordered_json j;
            j["id"] = m.id;
            j["method"] = m.method;
            j["operator"] = mutop_name(m.op);
            j["location"] = {{"node", m.node_id}, {"line", m.pos.line}, {"col", m.pos.col}};
            j["description"] = m.description;
            std::cout << j.dump() << "\n";
        }
        return kExitOk;
    } catch (const ParseError& e) {
        std::cerr << "error: " << subject_path << ":" << e.pos.line << ":" << e.pos.col << ": "
                  << e.message << "\n";
        return kExitInputError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    }
}

int cmd_evaluate(const std::string& subject_path, const std::string& suite_path,
                 const CommonOpts& opts) {
    try {
        SubjectUnit unit = parse_subject(read_file(subject_path));
        SubjectInfo info(unit);
        ParsedSuite suite = parse_suite(read_file(suite_path), info, opts.tolerance);
        ExecLimits limits;
        limits.step_limit = opts.step_limit;
        EvaluateOutput result = run_evaluate(info, stem_of(subject_path), suite, limits);
        std::cout << result.report_json;
        for (const std::string& f : result.failures) std::cerr << "failed: " << f << "\n";
        return result.failed_assertions > 0 ? kExitEvaluationFailure : kExitOk;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.pos.line << ":" << e.pos.col << ": " << e.message << "\n";
        return kExitInputError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    }
}

int cmd_compare(const std::vector<std::string>& subject_args, const std::string& seeds_spec,
                const CommonOpts& opts, const std::string& out_dir) {
    std::vector<std::string> subjects;
    for (const std::string& arg : subject_args) {
        if (fs::is_directory(arg)) {
            std::vector<std::string> found;
            for (auto& entry : fs::directory_iterator(arg))
                if (entry.path().extension() == ".sub") found.push_back(entry.path().string());
            std::sort(found.begin(), found.end());
            subjects.insert(subjects.end(), found.begin(), found.end());
        } else {
            subjects.push_back(arg);
        }
    }
    if (subjects.empty()) {
        std::cerr << "error: no subjects found\n";
        return kExitInputError;
    }
    std::vector<uint64_t> seeds;
    try {
        seeds = parse_seeds(seeds_spec);
    } catch (const std::exception&) {
        std::cerr << "error: bad seed list '" << seeds_spec << "' (use N, N..M or N,M,...)\n";
        return kExitConfigError;
    }

    struct Cell {
        std::string path;
        Representation repr;
        uint64_t seed;
    };
    std::vector<Cell> cells;
    for (const std::string& s : subjects)
        for (Representation r : {Representation::Baseline, Representation::Focal})
            for (uint64_t seed : seeds) cells.push_back({s, r, seed});

    std::vector<CompareRow> rows(cells.size());
    std::atomic<size_t> next{0};
    std::atomic<bool> any_failed{false};

    auto worker = [&]() {
        while (true) {
            size_t i = next.fetch_add(1);
            if (i >= cells.size()) break;
            const Cell& cell = cells[i];
            CompareRow& row = rows[i];
            row.subject = stem_of(cell.path);
            row.repr = cell.repr;
            row.seed = cell.seed;
            try {
                SubjectUnit unit = parse_subject(read_file(cell.path));
                SubjectInfo info(unit);
                CommonOpts cell_opts = opts;
                cell_opts.seed = cell.seed;
                RunConfig cfg = to_run_config(cell_opts, cell.repr);
                GenerateOutput result = run_generate(info, row.subject, cfg);
                fs::path dir = fs::path(out_dir) / row.subject / repr_name(cell.repr) /
                               ("seed-" + std::to_string(cell.seed));
                write_generate_outputs(dir, cell.path, row.subject, cfg, result);
                row.metrics = result.metrics;
                row.evals_used = result.stats.evaluations;
            } catch (const ParseError& e) {
                std::cerr << "failed: " << cell.path << ": " << e.message << "\n";
                row.failed = true;
                any_failed = true;
            } catch (const std::exception& e) {
                std::cerr << "failed: " << cell.path << ": " << e.what() << "\n";
                row.failed = true;
                any_failed = true;
            }
        }
    };

    unsigned n_threads = std::thread::hardware_concurrency();
    if (const char* env = std::getenv("SRGEN_THREADS")) {
        long v = std::strtol(env, nullptr, 10);
        if (v >= 1) n_threads = static_cast<unsigned>(v);
    }
    n_threads = std::max(1u, std::min<unsigned>(n_threads, cells.size()));
    if (n_threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned i = 0; i < n_threads; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    CompareOutput cmp = compare(rows);
    write_file(fs::path(out_dir) / "comparison.csv", cmp.csv);
    for (const std::string& w : cmp.warnings) std::cerr << "note: " << w << "\n";
    std::cout << cmp.csv;
    return any_failed ? kExitEvaluationFailure : kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"search-based unit-test generation with focal-method structure"};
    app.set_version_flag("--version", kToolVersion);
    app.require_subcommand(1);

    // generate
    std::string gen_subject, gen_repr = "baseline", gen_out = "out";
    bool gen_dump = false;
    CommonOpts gen_opts;
    CLI::App* gen = app.add_subcommand("generate", "evolve a test suite for one subject");
    gen->add_option("subject", gen_subject, "subject file (.sub)")->required();
    gen->add_option("--repr", gen_repr, "test representation")
        ->check(CLI::IsMember({"baseline", "focal"}));
    gen->add_option("--seed", gen_opts.seed, "random seed");
    gen->add_option("--out", gen_out, "output directory");
    gen->add_flag("--dump-traces", gen_dump, "write per-test trace JSON");
    add_common_flags(gen, gen_opts);

    // compare
    std::vector<std::string> cmp_subjects;
    std::string cmp_seeds = "1..10", cmp_out = "out";
    CommonOpts cmp_opts;
    CLI::App* cmp = app.add_subcommand("compare", "run both representations over seeds");
    cmp->add_option("--subjects", cmp_subjects, "subject files or directories")->required();
    cmp->add_option("--seeds", cmp_seeds, "seed list: N, N..M or N,M,...");
    cmp->add_option("--out", cmp_out, "output directory");
    add_common_flags(cmp, cmp_opts);

    // mutants
    std::string mut_subject;
    CLI::App* mut = app.add_subcommand("mutants", "list mutants as JSON lines");
    mut->add_option("subject", mut_subject, "subject file (.sub)")->required();

    // evaluate
    std::string eval_subject, eval_suite;
    CommonOpts eval_opts;
    CLI::App* ev = app.add_subcommand("evaluate", "re-run a rendered suite and print metrics");
    ev->add_option("subject", eval_subject, "subject file (.sub)")->required();
    ev->add_option("suite", eval_suite, "rendered test file")->required();
    ev->add_option("--tolerance", eval_opts.tolerance, "default assertion tolerance")
        ->check(CLI::PositiveNumber);
    ev->add_option("--step-limit", eval_opts.step_limit, "interpreter steps per execution")
        ->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfigError;
    }

    if (gen->parsed()) return cmd_generate(gen_subject, gen_repr, gen_opts, gen_out, gen_dump);
    if (cmp->parsed()) return cmd_compare(cmp_subjects, cmp_seeds, cmp_opts, cmp_out);
    if (mut->parsed()) return cmd_mutants(mut_subject);
    if (ev->parsed()) return cmd_evaluate(eval_subject, eval_suite, eval_opts);
    return kExitConfigError;
}
