#include "rev/report.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <iomanip>
#include <set>
#include <sstream>
#include <thread>

#include "rev/encodings.hpp"

namespace rev {

namespace {

using nlohmann::ordered_json;

double elapsed_ms(std::chrono::steady_clock::time_point from) {
    auto delta = std::chrono::steady_clock::now() - from;
    return std::chrono::duration<double, std::milli>(delta).count();
}

ordered_json verdict_json(const Domain& d, const Verdict& v, std::optional<double> time_ms) {
    ordered_json out;
    out["action"] = v.action;
    out["mode"] = to_string(v.mode);
    out["mode_detail"] = v.mode_detail;
    out["horizon"] = v.horizon;
    out["length_mode"] = to_string(v.length_mode);
    out["status"] = to_string(v.status);
    ordered_json witnesses = ordered_json::array();
    for (const Plan& p : v.witnesses) witnesses.push_back(plan_action_names(d, p));
    out["witnesses"] = std::move(witnesses);
    out["diagnostics"] = v.diagnostics;
    out["vacuous"] = v.vacuous;
    out["witness_cap_hit"] = v.witness_cap_hit;
    if (time_ms) out["time_ms"] = std::round(*time_ms * 1000.0) / 1000.0;
    return out;
}

ordered_json report_header(const Domain& d) {
    ordered_json out;
    out["schema_version"] = kReportSchemaVersion;
    out["tool"] = kToolName;
    out["tool_version"] = kToolVersion;
    out["domain"] = d.name();
    return out;
}

} // namespace

nlohmann::ordered_json run_check(const Domain& d, const CheckOptions& opts) {
    std::vector<std::size_t> targets;
    for (std::size_t i = 0; i < d.actions().size(); ++i)
        if (!opts.only_action || d.action(i).name == *opts.only_action) targets.push_back(i);
    if (opts.only_action && targets.empty())
        throw Error("no action named '" + *opts.only_action + "' in domain '" + d.name() + "'");

    auto decide_one = [&](std::size_t action_index) {
        switch (opts.mode) {
        case ModeKind::universal:
            return decide_universal(d, action_index, opts.config);
        case ModeKind::by_formula:
            if (!opts.phi) throw Error("formula mode needs a formula");
            return decide_over_set(d, action_index, StateSetSpec::by_formula(*opts.phi),
                                   opts.config);
        case ModeKind::in_task:
            if (!opts.task) throw Error("in-task mode needs a problem file");
            return decide_in_task(*opts.task, action_index, opts.config);
        case ModeKind::explicit_set:
            throw Error("explicit state sets are a library-level feature");
        }
        throw Error("unknown mode");
    };

    std::vector<Verdict> verdicts(targets.size());
    std::vector<double> times(targets.size(), 0.0);
    std::vector<std::exception_ptr> errors(targets.size());

    auto work = [&](std::size_t slot) {
        auto begin = std::chrono::steady_clock::now();
        try {
            verdicts[slot] = decide_one(targets[slot]);
        } catch (...) {
            errors[slot] = std::current_exception();
        }
        times[slot] = elapsed_ms(begin);
    };

    unsigned jobs = std::max(1u, opts.jobs);
    if (jobs <= 1 || targets.size() <= 1) {
        for (std::size_t slot = 0; slot < targets.size(); ++slot) work(slot);
    } else {
        std::atomic<std::size_t> next{0};
        auto drain = [&] {
            for (std::size_t slot; (slot = next.fetch_add(1)) < targets.size();) work(slot);
        };
        std::vector<std::thread> pool;
        for (unsigned t = 1; t < std::min<std::size_t>(jobs, targets.size()); ++t)
            pool.emplace_back(drain);
        drain();
        for (auto& t : pool) t.join();
    }

    for (auto& e : errors)
        if (e) std::rethrow_exception(e);

    ordered_json report = report_header(d);
    ordered_json config;
    config["mode"] = to_string(opts.mode);
    config["horizon"] = opts.config.horizon;
    config["length_mode"] = to_string(opts.config.length_mode);
    config["phi"] = opts.phi ? ordered_json(to_text(*opts.phi, d)) : ordered_json(nullptr);
    config["task"] = opts.task ? ordered_json(opts.task->name) : ordered_json(nullptr);
    config["max_plans"] = opts.config.max_plans;
    config["enumeration_cap"] = opts.config.enumeration_cap;
    report["config"] = std::move(config);

    ordered_json actions = ordered_json::array();
    for (std::size_t slot = 0; slot < targets.size(); ++slot)
        actions.push_back(verdict_json(
            d, verdicts[slot], opts.timing ? std::optional<double>(times[slot]) : std::nullopt));
    report["actions"] = std::move(actions);
    return report;
}

std::string render_table(const nlohmann::ordered_json& report) {
    std::ostringstream out;
    const auto& config = report.at("config");
    out << "domain: " << report.at("domain").get<std::string>()
        << "  mode: " << config.at("mode").get<std::string>()
        << "  horizon: " << config.at("horizon").get<std::size_t>() << " ("
        << config.at("length_mode").get<std::string>() << ")";
    if (!config.at("phi").is_null())
        out << "  phi: " << config.at("phi").get<std::string>();
    out << "\n";

    std::size_t name_w = std::string("action").size();
    std::size_t status_w = std::string("status").size();
    for (const auto& a : report.at("actions")) {
        name_w = std::max(name_w, a.at("action").get<std::string>().size());
        status_w = std::max(status_w, a.at("status").get<std::string>().size());
    }
    out << std::left << std::setw(static_cast<int>(name_w) + 2) << "action"
        << std::setw(static_cast<int>(status_w) + 2) << "status"
        << "witnesses\n";
    for (const auto& a : report.at("actions")) {
        out << std::left << std::setw(static_cast<int>(name_w) + 2)
            << a.at("action").get<std::string>() << std::setw(static_cast<int>(status_w) + 2)
            << a.at("status").get<std::string>();
        const auto& witnesses = a.at("witnesses");
        if (witnesses.empty()) {
            out << "-";
        } else {
            for (std::size_t i = 0; i < witnesses.size(); ++i) {
                if (i) out << " ";
                out << "[";
                const auto& plan = witnesses[i];
                for (std::size_t j = 0; j < plan.size(); ++j) {
                    if (j) out << " ";
                    out << plan[j].get<std::string>();
                }
                out << "]";
            }
        }
        if (a.value("vacuous", false)) out << "  (vacuous)";
        out << "\n";
    }
    return out.str();
}

CrosscheckOutcome run_crosscheck(const Domain& d, std::size_t horizon,
                                 const std::string& solver_cmdline, std::size_t max_plans) {
    using Pair = std::pair<std::string, std::vector<std::string>>;

    SearchConfig cfg;
    cfg.horizon = horizon;
    cfg.length_mode = LengthMode::exact;
    cfg.max_plans = max_plans;

    std::set<Pair> internal;
    for (std::size_t i = 0; i < d.actions().size(); ++i) {
        Verdict v = decide_universal(d, i, cfg);
        for (const Plan& p : v.witnesses) internal.insert({v.action, plan_action_names(d, p)});
    }

    EncodedProgram prog = emit(EncodingKind::simple_asp, d, horizon);
    SolverResult solved = run_external_solver(prog, solver_cmdline);
    std::set<Pair> external;
    for (auto& pair : extract_plans(solved)) external.insert(std::move(pair));

    auto difference = [](const std::set<Pair>& lhs, const std::set<Pair>& rhs) {
        ordered_json out = ordered_json::array();
        for (const Pair& p : lhs)
            if (!rhs.count(p)) out.push_back({{"action", p.first}, {"plan", p.second}});
        return out;
    };

    CrosscheckOutcome outcome;
    outcome.agree = internal == external;
    outcome.report = report_header(d);
    ordered_json body;
    body["encoding"] = to_string(EncodingKind::simple_asp);
    body["horizon"] = horizon;
    body["agree"] = outcome.agree;
    body["pairs"] = internal.size();
    body["only_internal"] = difference(internal, external);
    body["only_solver"] = difference(external, internal);
    body["solver_exit"] = solved.exit_code;
    body["models"] = solved.models.size();
    outcome.report["crosscheck"] = std::move(body);
    return outcome;
}

} // namespace rev
