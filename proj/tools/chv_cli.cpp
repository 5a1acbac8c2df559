// chv: compute constructible images of polynomial/rational maps between
// affine varieties over Q, and locally closed descriptions of algebraic
// group orbits.

#include <iomanip>
#include <iostream>

#include "CLI11.hpp"

#include "chv/chv.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitParse = 2;
constexpr int kExitBudget = 3;
constexpr int kExitOracle = 4;

struct CommonFlags {
    std::string strategy, iteration, oracle, stats_mode;
    std::uint64_t seed = 0;
    bool seed_set = false;
    unsigned budget = 0;
    bool saturate = false;
    int threads = 0;
};

void apply_flags(chv::ProblemOptions& o, const CommonFlags& f)
{
    if (f.strategy == "infinity") o.strategy = chv::Strategy::Infinity;
    else if (f.strategy == "kemper") o.strategy = chv::Strategy::Kemper;
    else if (!f.strategy.empty()) throw chv::ParseError("unknown strategy: " + f.strategy);
    if (f.iteration == "linear") o.iteration = chv::Iteration::Linear;
    else if (f.iteration == "graph") o.iteration = chv::Iteration::Graph;
    else if (!f.iteration.empty()) throw chv::ParseError("unknown iteration: " + f.iteration);
    if (f.seed_set) o.seed = f.seed;
    if (f.budget) o.hyperplane_budget = f.budget;
    if (f.saturate) o.saturate_graph = true;
    if (f.threads > 0) o.threads = f.threads;
    if (!f.oracle.empty()) {
        o.oracle_primes.clear();
        std::stringstream ss(f.oracle);
        std::string tok;
        while (std::getline(ss, tok, ',')) o.oracle_primes.push_back(std::stoul(tok));
    }
}

void add_common(CLI::App* cmd, CommonFlags& f)
{
    cmd->add_option("--strategy", f.strategy, "infinity|kemper");
    cmd->add_option("--iteration", f.iteration, "linear|graph");
    cmd->add_option("--seed", f.seed, "hyperplane search seed")->each([&f](const std::string&) {
        f.seed_set = true;
    });
    cmd->add_option("--hyperplane-budget", f.budget, "candidates per escalation stage, times n");
    cmd->add_flag("--saturate-graph", f.saturate,
                  "restrict rational maps to the locus where all denominators are nonzero");
    cmd->add_option("--oracle", f.oracle, "comma-separated good-reduction primes");
    cmd->add_option("--stats", f.stats_mode, "json|text: emit per-step solver events on stderr");
    cmd->add_option("--threads", f.threads, "within-level parallel LCA calls (graph iteration)");
}

void print_events(const chv::RunReport& rep, const std::string& mode)
{
    if (mode == "json") {
        for (const auto& ev : rep.events) std::cerr << ev.dump() << "\n";
    } else if (mode == "text") {
        for (const auto& ev : rep.events) {
            std::cerr << "[" << ev.value("event", "?") << "]";
            for (auto it = ev.begin(); it != ev.end(); ++it)
                if (it.key() != "event") std::cerr << " " << it.key() << "=" << it.value().dump();
            std::cerr << "\n";
        }
    }
}

int oracle_exit(const chv::RunReport& rep)
{
    for (const auto& v : rep.oracle)
        if (!v.agree()) return kExitOracle;
    return kExitOk;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"constructible images of rational maps between affine varieties over Q"};
    app.require_subcommand(1);

    std::string run_file;
    CommonFlags run_flags;
    bool run_json = false, run_quiet = false;
    CLI::App* cmd_run = app.add_subcommand("run", "solve a problem file");
    cmd_run->add_option("file", run_file, "problem file (text or JSON)")->required();
    add_common(cmd_run, run_flags);
    cmd_run->add_flag("--json", run_json, "print the full report as JSON");
    cmd_run->add_flag("--quiet", run_quiet, "suppress the result line");

    std::string corpus_dir = "corpus", corpus_name;
    CommonFlags corpus_flags;
    bool corpus_list = false, include_slow = false;
    CLI::App* cmd_corpus = app.add_subcommand("corpus", "run the bundled example corpus");
    cmd_corpus->add_option("dir", corpus_dir, "corpus directory (default: ./corpus)");
    cmd_corpus->add_option("--name", corpus_name, "run a single entry");
    cmd_corpus->add_flag("--list", corpus_list, "list entries and exit");
    cmd_corpus->add_flag("--include-slow", include_slow, "also run entries marked slow");
    add_common(cmd_corpus, corpus_flags);

    CLI11_PARSE(app, argc, argv);

    try {
        if (cmd_run->parsed()) {
            chv::ProblemSpec spec = chv::load_problem_file(run_file);
            apply_flags(spec.options, run_flags);
            chv::RunReport rep = chv::run(spec);
            print_events(rep, run_flags.stats_mode);
            if (run_json) {
                nlohmann::json j = {{"result", rep.result_json},
                                    {"result_text", rep.result_text},
                                    {"stats", rep.stats}};
                std::cout << j.dump(2) << "\n";
            } else if (!run_quiet) {
                std::cout << rep.result_text << "\n";
            }
            return oracle_exit(rep);
        }

        if (cmd_corpus->parsed()) {
            if (corpus_list) {
                for (const auto& e : chv::corpus_entries())
                    std::cout << e.name << (e.slow ? " (slow)" : "") << "\n";
                return kExitOk;
            }
            chv::ProblemOptions overrides;
            apply_flags(overrides, corpus_flags);
            bool apply = !corpus_flags.strategy.empty() || !corpus_flags.iteration.empty() ||
                         corpus_flags.seed_set || corpus_flags.budget || corpus_flags.threads > 0 ||
                         !corpus_flags.oracle.empty();
            bool all_ok = true;
            const int width = 12;
            for (const auto& e : chv::corpus_entries()) {
                if (!corpus_name.empty() && e.name != corpus_name) continue;
                if (e.slow && !include_slow && corpus_name.empty()) {
                    std::cout << std::left << std::setw(width) << e.name << " SKIP (slow)\n";
                    continue;
                }
                chv::CorpusOutcome out = chv::run_corpus_entry(corpus_dir, e, overrides, apply);
                std::cout << std::left << std::setw(width) << out.name << " ";
                if (out.skipped) {
                    std::cout << "SKIP (" << out.detail << ")\n";
                    continue;
                }
                bool ok = out.matched && out.oracle_ok;
                all_ok = all_ok && ok;
                std::cout << (ok ? "OK  " : "FAIL") << "  " << std::fixed << std::setprecision(1)
                          << out.wall_ms << " ms";
                if (!ok) std::cout << "\n  " << out.detail;
                std::cout << "\n";
            }
            return all_ok ? kExitOk : kExitOracle;
        }
    } catch (const chv::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitParse;
    } catch (const chv::FiberReductionExhausted& e) {
        std::cerr << "budget exhausted: " << e.what() << "\n";
        return kExitBudget;
    } catch (const chv::BadReductionPrime& e) {
        std::cerr << "oracle error: " << e.what() << "\n";
        return kExitOracle;
    } catch (const std::exception& e) {
        std::string msg = e.what();
        std::cerr << "error: " << msg << "\n";
        if (msg.find("step budget") != std::string::npos) return kExitBudget;
        return 1;
    }
    return kExitOk;
}
