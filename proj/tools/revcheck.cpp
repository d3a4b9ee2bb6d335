// revcheck: decide STRIPS action reversibility, emit ASP/ELP encodings for it,
// and cross-check the two against an external solver.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "rev/benchgen.hpp"
#include "rev/encodings.hpp"
#include "rev/formula.hpp"
#include "rev/pddl.hpp"
#include "rev/report.hpp"
#include "rev/reversibility.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitCapExceeded = 2;
constexpr int kExitSolverFailure = 3;
constexpr int kExitDisagreement = 4;

rev::PddlSource read_source(const std::string& path) {
    if (path == "-") {
        std::ostringstream buf;
        buf << std::cin.rdbuf();
        return {buf.str(), "<stdin>"};
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) throw rev::Error("cannot read " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return {buf.str(), path};
}

void write_output(const std::string& out_path, const std::string& payload) {
    if (out_path.empty() || out_path == "-") {
        std::cout << payload;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw rev::Error("cannot write " + out_path);
    out << payload;
}

std::string default_solver() {
    const char* env = std::getenv("REVCHECK_SOLVER");
    return env ? env : "";
}

struct CheckArgs {
    std::string domain_file;
    std::string mode = "universal";
    std::size_t horizon = 1;
    bool exact = false;
    std::string phi_text;
    std::string task_file;
    std::string only_action;
    std::size_t max_plans = 10;
    std::size_t cap = 20;
    unsigned jobs = 1;
    bool no_timing = false;
    bool pretty = false;
    bool lenient = false;
    std::string out;
};

int cmd_check(const CheckArgs& args) {
    std::vector<std::string> warnings;
    rev::Domain d = parse_domain(read_source(args.domain_file),
                                 args.lenient ? rev::Wellformed::lenient : rev::Wellformed::strict,
                                 &warnings);
    for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";

    rev::CheckOptions opts;
    opts.config.horizon = args.horizon;
    opts.config.length_mode = args.exact ? rev::LengthMode::exact : rev::LengthMode::up_to;
    opts.config.max_plans = args.max_plans;
    opts.config.enumeration_cap = args.cap;
    opts.jobs = args.jobs;
    opts.timing = !args.no_timing;
    if (!args.only_action.empty()) opts.only_action = args.only_action;

    if (args.mode == "universal") {
        opts.mode = rev::ModeKind::universal;
    } else if (args.mode == "phi") {
        if (args.phi_text.empty()) throw rev::Error("--mode phi needs --phi \"<formula>\"");
        opts.mode = rev::ModeKind::by_formula;
        opts.phi = rev::parse_formula(args.phi_text, d, "<phi>");
    } else if (args.mode == "task") {
        if (args.task_file.empty()) throw rev::Error("--mode task needs --task <problem.pddl>");
        opts.mode = rev::ModeKind::in_task;
        opts.task = parse_problem(read_source(args.task_file), d);
    } else {
        throw rev::Error("unknown mode '" + args.mode + "' (universal|phi|task)");
    }

    auto report = run_check(d, opts);
    write_output(args.out, args.pretty ? rev::render_table(report) : report.dump(2) + "\n");
    return kExitOk;
}

struct EmitArgs {
    std::string domain_file;
    std::string kind = "simple-asp";
    std::size_t horizon = 1;
    std::string phi_text;
    std::string out;
};

int cmd_emit(const EmitArgs& args) {
    rev::Domain d = parse_domain(read_source(args.domain_file));
    auto kind = rev::encoding_kind_from(args.kind);
    if (!kind)
        throw rev::Error("unknown encoding kind '" + args.kind +
                         "' (simple-asp|simple-elp|general-asp|general-elp)");
    std::optional<rev::Formula> phi;
    if (!args.phi_text.empty()) phi = rev::parse_formula(args.phi_text, d, "<phi>");
    rev::EncodedProgram prog = emit(*kind, d, args.horizon, phi);
    write_output(args.out, prog.text);
    return kExitOk;
}

struct CrosscheckArgs {
    std::string domain_file;
    std::size_t horizon = 1;
    std::string solver = default_solver();
    std::size_t max_plans = 1000000;
    std::string out;
};

int cmd_crosscheck(const CrosscheckArgs& args) {
    if (args.solver.empty())
        throw rev::SolverNotFound(
            "no solver command; pass --solver or set REVCHECK_SOLVER "
            "(e.g. \"clingo --outf=2 -n {all_models} {program}\")");
    rev::Domain d = parse_domain(read_source(args.domain_file));
    auto outcome = rev::run_crosscheck(d, args.horizon, args.solver, args.max_plans);
    write_output(args.out, outcome.report.dump(2) + "\n");
    return outcome.agree ? kExitOk : kExitDisagreement;
}

struct GenRevArgs {
    std::size_t i = 1;
    std::string out;
};

int cmd_gen_rev(const GenRevArgs& args) {
    rev::PddlSource src = gen_rev_domain(rev::RevSpec{args.i});
    write_output(args.out.empty() ? src.origin : args.out, src.text);
    if (args.out.empty()) std::cerr << "wrote " << src.origin << "\n";
    return kExitOk;
}

struct GenRandomArgs {
    std::size_t facts = 3;
    std::size_t actions = 3;
    std::uint64_t seed = 0;
    double p = 0.5;
    std::string out;
};

int cmd_gen_random(const GenRandomArgs& args) {
    rev::Domain d = gen_random_domain(rev::RandomSpec{args.facts, args.actions, args.seed, args.p});
    write_output(args.out, pretty_print(d));
    return kExitOk;
}

struct ReachableArgs {
    std::string domain_file;
    std::string task_file;
    std::size_t cap = 1u << 20;
    std::string out;
};

int cmd_reachable(const ReachableArgs& args) {
    rev::Domain d = parse_domain(read_source(args.domain_file));
    rev::PlanningTask task = parse_problem(read_source(args.task_file), d);
    auto states = reachable_states(task, args.cap);

    nlohmann::ordered_json report;
    report["schema_version"] = rev::kReportSchemaVersion;
    report["tool"] = rev::kToolName;
    report["tool_version"] = rev::kToolVersion;
    report["domain"] = d.name();
    report["task"] = task.name;
    report["count"] = states.size();
    auto list = nlohmann::ordered_json::array();
    for (const auto& s : states) list.push_back(d.names_of(s));
    report["states"] = std::move(list);
    write_output(args.out, report.dump(2) + "\n");
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"STRIPS action reversibility toolkit"};
    app.require_subcommand(1);
    app.set_config("--config", "", "read defaults from an INI/TOML file");

    CheckArgs check;
    auto* check_cmd = app.add_subcommand("check", "decide reversibility for a domain's actions");
    check_cmd->add_option("domain", check.domain_file, "PDDL domain file (- for stdin)")
        ->required();
    check_cmd->add_option("--mode", check.mode, "universal|phi|task")->capture_default_str();
    check_cmd->add_option("--horizon", check.horizon, "candidate plan length bound")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    check_cmd->add_flag("--exact", check.exact, "search exactly horizon-length plans");
    check_cmd->add_option("--phi", check.phi_text, "state-set formula, e.g. \"(and f0 (not f1))\"");
    check_cmd->add_option("--task", check.task_file, "PDDL problem file for task mode");
    check_cmd->add_option("--action", check.only_action, "check a single action by name");
    check_cmd->add_option("--max-plans", check.max_plans, "witness cap per action")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    check_cmd->add_option("--cap", check.cap, "state-enumeration cap (exponent)")
        ->capture_default_str();
    check_cmd->add_option("--jobs", check.jobs, "parallel per-action workers")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    check_cmd->add_flag("--no-timing", check.no_timing, "omit time_ms for reproducible output");
    check_cmd->add_flag("--pretty", check.pretty, "table output instead of JSON");
    check_cmd->add_flag("--lenient", check.lenient, "repair pre/add overlaps instead of refusing");
    check_cmd->add_option("--out", check.out, "write report here instead of stdout");

    EmitArgs emit_args;
    auto* emit_cmd = app.add_subcommand("emit", "write a solver-ready ASP/ELP program");
    emit_cmd->add_option("domain", emit_args.domain_file, "PDDL domain file")->required();
    emit_cmd->add_option("--kind", emit_args.kind, "simple-asp|simple-elp|general-asp|general-elp")
        ->capture_default_str();
    emit_cmd->add_option("--horizon", emit_args.horizon, "reverse-plan length")
        ->capture_default_str();
    emit_cmd->add_option("--phi", emit_args.phi_text, "state-set formula (general kinds only)");
    emit_cmd->add_option("--out", emit_args.out, "output .lp path (default stdout)");

    CrosscheckArgs cross;
    auto* cross_cmd =
        app.add_subcommand("crosscheck", "compare native decisions against a solver run");
    cross_cmd->add_option("domain", cross.domain_file, "PDDL domain file")->required();
    cross_cmd->add_option("--horizon", cross.horizon, "exact reverse-plan length")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cross_cmd->add_option("--solver", cross.solver,
                          "command template with {program} and {all_models} "
                          "(default: $REVCHECK_SOLVER)");
    cross_cmd->add_option("--max-plans", cross.max_plans, "internal witness cap")
        ->capture_default_str();
    cross_cmd->add_option("--out", cross.out, "write report here instead of stdout");

    auto* gen_cmd = app.add_subcommand("gen", "generate benchmark domains");
    gen_cmd->require_subcommand(1);
    GenRevArgs gen_rev;
    auto* gen_rev_cmd = gen_cmd->add_subcommand("rev", "the rev-i family");
    gen_rev_cmd->add_option("i", gen_rev.i, "number of facts")
        ->check(CLI::PositiveNumber)
        ->required();
    gen_rev_cmd->add_option("--out", gen_rev.out, "output path (default rev-{i}.pddl)");
    GenRandomArgs gen_random;
    auto* gen_random_cmd = gen_cmd->add_subcommand("random", "a seeded random domain");
    gen_random_cmd->add_option("--facts", gen_random.facts, "fact count")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    gen_random_cmd->add_option("--actions", gen_random.actions, "action count")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    gen_random_cmd->add_option("--seed", gen_random.seed, "RNG seed")->capture_default_str();
    gen_random_cmd->add_option("--p", gen_random.p, "per-set inclusion probability")
        ->check(CLI::Range(0.0, 1.0))
        ->capture_default_str();
    gen_random_cmd->add_option("--out", gen_random.out, "output path (default stdout)");

    ReachableArgs reach;
    auto* reach_cmd = app.add_subcommand("reachable", "list a task's reachable states");
    reach_cmd->add_option("domain", reach.domain_file, "PDDL domain file")->required();
    reach_cmd->add_option("task", reach.task_file, "PDDL problem file")->required();
    reach_cmd->add_option("--cap", reach.cap, "maximum number of states")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    reach_cmd->add_option("--out", reach.out, "write listing here instead of stdout");

    try {
        app.parse(argc, argv);
        if (check_cmd->parsed()) return cmd_check(check);
        if (emit_cmd->parsed()) return cmd_emit(emit_args);
        if (cross_cmd->parsed()) return cmd_crosscheck(cross);
        if (gen_rev_cmd->parsed()) return cmd_gen_rev(gen_rev);
        if (gen_random_cmd->parsed()) return cmd_gen_random(gen_random);
        if (reach_cmd->parsed()) return cmd_reachable(reach);
        return kExitUsage;
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    } catch (const rev::EnumerationCapExceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitCapExceeded;
    } catch (const rev::SolverError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitSolverFailure;
    } catch (const rev::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}
