#include "rev/encodings.hpp"

#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <regex>
#include <sstream>

#include <json.hpp>

#include "rev/pddl.hpp"

#ifdef __unix__
#include <sys/wait.h>
#endif

namespace rev {

namespace {

// The four rule blocks are fixed assets; the only injection points are the
// horizon constant and the optional formula hook appended behind them.

constexpr const char* kSimpleElpRules = R"(chosen(A) :- action(action(A)), not &k{-chosen(A)}.
-chosen(A) :- action(action(A)), not &k{ chosen(A)}.
:- chosen(A), chosen(B), A!=B.
onechosen :- chosen(A).
:- not onechosen.

holds(V, Val, 0) :-
  chosen(A), precondition(action(A), variable(V), value(variable(V), Val)).
relevant(V) :- holds(V, _, 0).

time(0..horizon+1).

occurs(A, 1) :- chosen(A).
occurs(A, T) :- action(action(A)),time(T), T > 1, not &k{-occurs(A, T)}.
-occurs(A, T) :- action(action(A)),time(T), T > 1, not &k{occurs(A, T)}.

:- occurs(A,T), occurs(B,T), A!=B.
oneoccurs(T) :- occurs(A,T), time(T), T > 0.
:- time(T), T>0, not oneoccurs(T).

caused(V, Val, T) :-
  occurs(A, T), postcondition(action(A), _, variable(V), value(variable(V), Val)).
modified(V, T) :- caused(V, _, T).

holds(V, Val, T) :- caused(V, Val, T).
holds(V, Val, T) :- holds(V, Val, T - 1), not modified(V, T), time(T).

:- occurs(A, T), precondition(action(A), variable(V), value(variable(V), Val)),
   not holds(V, Val, T - 1).

:- occurs(A, T), precondition(action(A), variable(V), _), not relevant(V).
:- occurs(A, T), postcondition(action(A), _, variable(V), _), not relevant(V).

noreversal :- holds(V, Val, 0), not holds(V, Val, H+1), horizon(H).
noreversal :- holds(V, Val, H+1), not holds(V, Val, 0), horizon(H).
:- not &k{ ~ noreversal}.

horizon(horizon).
)";

constexpr const char* kSimpleAspRules = R"(1 {chosen(A) : action(action(A))} 1.

holds(V, Val, 0) :-
  chosen(A), precondition(action(A), variable(V), value(variable(V), Val)).
relevant(V) :- holds(V, _, 0).

time(0..horizon+1).

occurs(A, 1) :- chosen(A).
1 {occurs(A, T) : action(action(A))} 1 :- time(T), T > 1.

caused(V, Val, T) :-
  occurs(A, T), postcondition(action(A), _, variable(V), value(variable(V), Val)).
modified(V, T) :- caused(V, _, T).

holds(V, Val, T) :- caused(V, Val, T).
holds(V, Val, T) :- holds(V, Val, T - 1), not modified(V, T), time(T).

:- occurs(A, T), precondition(action(A), variable(V), value(variable(V), Val)),
   not holds(V, Val, T - 1).

:- occurs(A, T), precondition(action(A), variable(V), _), not relevant(V).
:- occurs(A, T), postcondition(action(A), _, variable(V), _), not relevant(V).

:- holds(V, Val, 0), not holds(V, Val, horizon+1).
:- holds(V, Val, horizon+1), not holds(V, Val, 0).
)";

constexpr const char* kGeneralElpRules = R"(chosen(A) :- action(action(A)), not &k{-chosen(A)}.
-chosen(A) :- action(action(A)), not &k{ chosen(A)}.

:- chosen(A), chosen(B), A!=B.
onechosen :- chosen(A).
:- not onechosen.

holds(V, Val, 0) :- chosen(A),
  precondition(action(A), variable(V), value(variable(V), Val)).

holds(V,Val,0) | -holds(V,Val,0) :-
  variable(variable(V)), contains(variable(V),value(variable(V),Val)).

oneholds(V,0) :- holds(V,Val,0).
:- variable(variable(V)), not oneholds(V,0).
:- holds(V,Val,0), holds(V,Val1,0), Val != Val1.

time(0..horizon+1).

occurs(A, 1) :- chosen(A).
occurs(A, T) :- action(action(A)),time(T), T > 1, not  &k{-occurs(A, T)}.
-occurs(A, T) :- action(action(A)),time(T), T > 1, not  &k{occurs(A, T)}.

:- occurs(A,T), occurs(B,T), A!=B.
oneoccurs(T) :- occurs(A,T), time(T), T > 0.
:- time(T), T>0, not oneoccurs(T).

inapplicable :-  occurs(A, T),
  precondition(action(A), variable(V), value(variable(V), Val)),
  not holds(V, Val, T - 1).
:- not &k{ ~ inapplicable}.

caused(V, Val, T) :- occurs(A, T),
  postcondition(action(A), E, variable(V), value(variable(V), Val)).
modified(V, T) :- caused(V, _, T).

holds(V, Val, T) :- caused(V, Val, T).
holds(V, Val, T) :- holds(V, Val, T - 1), not modified(V, T), time(T).

noreversal :- holds(V, Val, 0), not holds(V, Val, H+1), horizon(H).
noreversal :- holds(V, Val, H+1), not holds(V, Val, 0), horizon(H).
:- not &k{ ~ noreversal}.

horizon(horizon).
)";

constexpr const char* kGeneralAspRules = R"(1 {chosen(A) : action(action(A))} 1.
holds(V, Val, 0) :- chosen(A),
  precondition(action(A), variable(V), value(variable(V), Val)).
affected(A, V) :- postcondition(action(A), _, variable(V), _).

opposites(true, false).
opposites(false, true).

time(0..horizon+1).

occurs(A, 1) :- chosen(A).
1 {occurs(A, T) : action(action(A))} 1 :- time(T), T > 1.

applied(0).
applicable(A, T) :- occurs(A, T), applied(T - 1),
  holds(V, Val, T - 1) :
    precondition(action(A), variable(V), value(variable(V), Val)).
applied(T) :- applicable(_, T).
holds(V, Val, T) :-  applicable(A, T),
  postcondition(action(A), _, variable(V), value(variable(V), Val)).
holds(V, Val, T) :- holds(V, Val, T - 1), occurs(A, T), applied(T),
  not affected(A, V).

same(V) :- holds(V, Val, 0), holds(V, Val, horizon + 1).
samestate :- same(V) : variable(variable(V)).
planvalid :- applied(horizon + 1).
reversePlan :- samestate, planvalid.

holds(V, Val1, 0) | holds(V, Val2, 0) :-  variable(variable(V)),
  opposites(Val1, Val2), Val1 < Val2.
holds(V, Val, T) :- reversePlan, contains(variable(V), value(variable(V), Val)),
  time(T).
:- not reversePlan.
)";

const char* rules_for(EncodingKind kind) {
    switch (kind) {
    case EncodingKind::simple_asp: return kSimpleAspRules;
    case EncodingKind::simple_elp: return kSimpleElpRules;
    case EncodingKind::general_asp: return kGeneralAspRules;
    case EncodingKind::general_elp: return kGeneralElpRules;
    }
    throw Error("unknown encoding kind");
}

} // namespace

std::string to_string(EncodingKind k) {
    switch (k) {
    case EncodingKind::simple_asp: return "simple-asp";
    case EncodingKind::simple_elp: return "simple-elp";
    case EncodingKind::general_asp: return "general-asp";
    case EncodingKind::general_elp: return "general-elp";
    }
    return "?";
}

std::optional<EncodingKind> encoding_kind_from(const std::string& name) {
    if (name == "simple-asp") return EncodingKind::simple_asp;
    if (name == "simple-elp") return EncodingKind::simple_elp;
    if (name == "general-asp") return EncodingKind::general_asp;
    if (name == "general-elp") return EncodingKind::general_elp;
    return std::nullopt;
}

namespace {

/// Negation normal form of φ (or of ¬φ), with literals at the leaves,
/// constants folded away and same-kind nesting flattened.
struct Nnf {
    enum class Kind { lit, conj, disj, always_true, always_false };

    Kind kind = Kind::always_true;
    std::size_t fact = 0;
    bool positive = true;
    std::vector<Nnf> kids;
};

Nnf make_nnf(const Formula& f, bool negated) {
    switch (f.kind()) {
    case Formula::Kind::constant_true:
        return {negated ? Nnf::Kind::always_false : Nnf::Kind::always_true};
    case Formula::Kind::constant_false:
        return {negated ? Nnf::Kind::always_true : Nnf::Kind::always_false};
    case Formula::Kind::atom:
        return {Nnf::Kind::lit, f.fact(), !negated};
    case Formula::Kind::negation:
        return make_nnf(f.children()[0], !negated);
    case Formula::Kind::conjunction:
    case Formula::Kind::disjunction: {
        bool conj = (f.kind() == Formula::Kind::conjunction) != negated;
        Nnf out{conj ? Nnf::Kind::conj : Nnf::Kind::disj};
        for (const Formula& c : f.children()) {
            Nnf k = make_nnf(c, negated);
            if (k.kind == Nnf::Kind::always_true) {
                if (!conj) return {Nnf::Kind::always_true};
                continue; // neutral for conjunction
            }
            if (k.kind == Nnf::Kind::always_false) {
                if (conj) return {Nnf::Kind::always_false};
                continue; // neutral for disjunction
            }
            if (k.kind == out.kind) {
                for (auto& g : k.kids) out.kids.push_back(std::move(g));
            } else {
                out.kids.push_back(std::move(k));
            }
        }
        if (out.kids.empty())
            return {conj ? Nnf::Kind::always_true : Nnf::Kind::always_false};
        if (out.kids.size() == 1) return std::move(out.kids[0]);
        return out;
    }
    }
    throw Error("corrupt formula node");
}

std::string join(const std::vector<std::string>& atoms) {
    std::string s;
    for (const auto& a : atoms) s += (s.empty() ? "" : ", ") + a;
    return s;
}

} // namespace

std::string compile_phi_hook(EncodingKind kind, const Formula& phi, const Domain& d) {
    if (kind != EncodingKind::general_asp && kind != EncodingKind::general_elp)
        throw PhiNotSupported("state-set formulas require the general-asp or general-elp "
                              "encoding; the simple kinds decide the universal case only");

    // phi_violated must hold exactly when the time-0 guess falsifies φ, i.e.
    // when ¬φ holds. The guessed state is total, so a negative literal can be
    // read off the false-valued holds atom directly.
    Nnf root = make_nnf(phi, /*negated=*/true);

    std::vector<std::string> rules;
    std::size_t next_aux = 0;

    auto lit_atom = [&](const Nnf& n) {
        return "holds(\"" + d.fact_name(n.fact) + "\", " + (n.positive ? "true" : "false") +
               ", 0)";
    };

    // Returns the conjunctive body encoding of a node; emits helper rules for
    // nested disjunctions.
    auto body = [&](auto&& self, const Nnf& n) -> std::vector<std::string> {
        switch (n.kind) {
        case Nnf::Kind::lit:
            return {lit_atom(n)};
        case Nnf::Kind::conj: {
            std::vector<std::string> atoms;
            for (const Nnf& k : n.kids)
                for (auto& a : self(self, k)) atoms.push_back(std::move(a));
            return atoms;
        }
        case Nnf::Kind::disj: {
            std::string aux = "phi_sub" + std::to_string(next_aux++);
            for (const Nnf& k : n.kids)
                rules.push_back(aux + " :- " + join(self(self, k)) + ".");
            return {aux};
        }
        case Nnf::Kind::always_true:
        case Nnf::Kind::always_false:
            throw Error("constants should have been folded out of the formula");
        }
        throw Error("corrupt formula node");
    };

    switch (root.kind) {
    case Nnf::Kind::always_true:
        rules.push_back("phi_violated."); // φ is unsatisfiable: every guess violates it
        break;
    case Nnf::Kind::always_false:
        break; // φ is a tautology: phi_violated can never hold
    case Nnf::Kind::disj:
        for (const Nnf& k : root.kids)
            rules.push_back("phi_violated :- " + join(body(body, k)) + ".");
        break;
    default:
        rules.push_back("phi_violated :- " + join(body(body, root)) + ".");
        break;
    }

    rules.push_back(kind == EncodingKind::general_elp ? ":- phi_violated."
                                                      : "reversePlan :- phi_violated.");

    std::string out;
    for (const auto& r : rules) {
        out += r;
        out += '\n';
    }
    return out;
}

EncodedProgram emit(EncodingKind kind, const Domain& d, std::size_t horizon,
                    const std::optional<Formula>& phi) {
    if (phi && kind != EncodingKind::general_asp && kind != EncodingKind::general_elp)
        throw PhiNotSupported("state-set formulas require the general-asp or general-elp "
                              "encoding; the simple kinds decide the universal case only");

    EncodedProgram prog;
    prog.kind = kind;
    prog.horizon = horizon;

    std::ostringstream out;
    out << "#const horizon=" << horizon << ".\n\n";
    out << emit_plasp_facts(d).str() << "\n";
    out << rules_for(kind);
    if (phi) {
        prog.phi_hook = compile_phi_hook(kind, *phi, d);
        out << "\n" << *prog.phi_hook;
    }
    prog.text = out.str();
    return prog;
}

namespace {

std::string replace_all(std::string text, const std::string& from, const std::string& to) {
    for (std::size_t at = 0; (at = text.find(from, at)) != std::string::npos; at += to.size())
        text.replace(at, from.size(), to);
    return text;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void parse_atoms_into(SolverModel& model, const std::string& atom) {
    static const std::regex chosen_re(R"re(^chosen\("([^"]*)"\)$)re");
    static const std::regex occurs_re(R"re(^occurs\("([^"]*)"\s*,\s*(\d+)\)$)re");
    std::smatch m;
    if (std::regex_match(atom, m, chosen_re)) {
        model.chosen.push_back(m[1]);
    } else if (std::regex_match(atom, m, occurs_re)) {
        model.occurs.emplace_back(static_cast<std::size_t>(std::stoull(m[2])), m[1]);
    }
}

std::vector<SolverModel> parse_json_output(const std::string& text) {
    nlohmann::json doc = nlohmann::json::parse(text);
    std::vector<SolverModel> models;
    for (const auto& call : doc.at("Call")) {
        if (!call.contains("Witnesses")) continue;
        for (const auto& witness : call.at("Witnesses")) {
            SolverModel model;
            for (const auto& atom : witness.at("Value"))
                parse_atoms_into(model, atom.get<std::string>());
            models.push_back(std::move(model));
        }
    }
    return models;
}

std::vector<SolverModel> parse_text_output(const std::string& text) {
    std::vector<SolverModel> models;
    std::istringstream in(text);
    std::string line;
    bool expect_atoms = false;
    while (std::getline(in, line)) {
        if (line.rfind("Answer:", 0) == 0) {
            expect_atoms = true;
            continue;
        }
        if (!expect_atoms) continue;
        expect_atoms = false;
        SolverModel model;
        std::istringstream atoms(line);
        std::string atom;
        while (atoms >> atom) parse_atoms_into(model, atom);
        models.push_back(std::move(model));
    }
    return models;
}

} // namespace

SolverResult run_external_solver(const EncodedProgram& prog, const std::string& solver_cmdline) {
    namespace fs = std::filesystem;
    static std::atomic<unsigned> counter{0};
    static const unsigned session = std::random_device{}();

    fs::path dir = fs::temp_directory_path();
    std::string tag = "revcheck-" + std::to_string(session) + "-" +
                      std::to_string(counter.fetch_add(1));
    fs::path program_file = dir / (tag + ".lp");
    fs::path out_file = dir / (tag + ".out");
    fs::path err_file = dir / (tag + ".err");

    {
        std::ofstream out(program_file, std::ios::binary);
        if (!out) throw SolverError("cannot write temp program file " + program_file.string());
        out << prog.text;
    }

    std::string command = replace_all(solver_cmdline, "{program}", program_file.string());
    command = replace_all(command, "{all_models}", "0");
    command += " > " + out_file.string() + " 2> " + err_file.string();

    int raw_status = std::system(command.c_str());

    SolverResult result;
    result.horizon = prog.horizon;
    result.raw_stdout = slurp(out_file);
    result.raw_stderr = slurp(err_file);

    std::error_code ignore;
    fs::remove(program_file, ignore);
    fs::remove(out_file, ignore);
    fs::remove(err_file, ignore);

    if (raw_status == -1) throw SolverCrashed("failed to launch solver process", command);
#ifdef __unix__
    if (!WIFEXITED(raw_status))
        throw SolverCrashed("solver terminated abnormally", result.raw_stderr);
    result.exit_code = WEXITSTATUS(raw_status);
#else
    result.exit_code = raw_status;
#endif

    if (result.exit_code == 126 || result.exit_code == 127)
        throw SolverNotFound("solver command not found or not executable: " + solver_cmdline);
    // clingo-style termination: 0 plain, 10 satisfiable, 20 unsatisfiable,
    // 30 satisfiable and search exhausted.
    if (result.exit_code != 0 && result.exit_code != 10 && result.exit_code != 20 &&
        result.exit_code != 30)
        throw SolverCrashed("solver exited with status " + std::to_string(result.exit_code),
                            result.raw_stderr.empty() ? result.raw_stdout : result.raw_stderr);

    std::size_t first = result.raw_stdout.find_first_not_of(" \t\r\n");
    try {
        if (first != std::string::npos && result.raw_stdout[first] == '{')
            result.models = parse_json_output(result.raw_stdout);
        else
            result.models = parse_text_output(result.raw_stdout);
    } catch (const nlohmann::json::exception& e) {
        throw SolverOutputError(std::string("cannot parse solver output: ") + e.what(),
                                result.raw_stdout);
    }
    return result;
}

std::vector<std::pair<std::string, std::vector<std::string>>>
extract_plans(const SolverResult& result) {
    std::vector<std::pair<std::string, std::vector<std::string>>> out;
    for (const SolverModel& model : result.models) {
        if (model.chosen.size() != 1)
            throw InconsistentModel("model has " + std::to_string(model.chosen.size()) +
                                    " chosen atoms; expected exactly one");
        std::map<std::size_t, std::string> steps;
        for (const auto& [step, action] : model.occurs) {
            auto [it, fresh] = steps.emplace(step, action);
            if (!fresh && it->second != action)
                throw InconsistentModel("two actions occur at step " + std::to_string(step));
        }
        for (std::size_t t = 1; t <= result.horizon + 1; ++t)
            if (!steps.count(t))
                throw InconsistentModel("occurs misses step " + std::to_string(t));
        if (steps.size() != result.horizon + 1)
            throw InconsistentModel("occurs has steps outside 1..horizon+1");
        if (steps.at(1) != model.chosen.front())
            throw InconsistentModel("step 1 is '" + steps.at(1) + "' but chosen is '" +
                                    model.chosen.front() + "'");
        std::vector<std::string> plan;
        for (std::size_t t = 2; t <= result.horizon + 1; ++t) plan.push_back(steps.at(t));
        out.emplace_back(model.chosen.front(), std::move(plan));
    }
    return out;
}

} // namespace rev
