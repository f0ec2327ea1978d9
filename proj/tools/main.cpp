// Command-line workbench: load problem-sensitive models, evaluate formulas,
// contrast the semilattice semantics with the partition-based one, search
// for countermodels, and check Hilbert-style derivations.
//
// Exit codes (all subcommands): 0 success/true, 1 false / check failed /
// nothing found / expectation mismatch, 2 usage, parse, or validation
// errors.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "intentlog/errors.hpp"
#include "intentlog/formula.hpp"
#include "intentlog/kripke.hpp"
#include "intentlog/partition.hpp"
#include "intentlog/proof.hpp"
#include "intentlog/search.hpp"

namespace {

using namespace intentlog;

constexpr int kExitTrue = 0;
constexpr int kExitFalse = 1;
constexpr int kExitError = 2;

bool strictMode() {
    const char* v = std::getenv("INTENTLOG_STRICT");
    return v != nullptr && std::string(v) == "1";
}

KripkeModel loadOrDie(const std::string& path, bool closeUpward) {
    LoadOptions opts;
    opts.closeUpward = closeUpward;
    LoadResult res = loadModelFile(path, opts);
    if (!res.ok()) {
        std::cerr << "model " << path << " is invalid:\n";
        for (const Violation& v : res.violations) {
            std::cerr << "  violation: " << v.format() << "\n";
        }
        std::exit(kExitError);
    }
    return std::move(res.model);
}

void rejectUndeclared(const KripkeModel& m, const Formula& f) {
    if (!strictMode()) return;
    std::vector<std::string> missing = undeclaredAtoms(m, f);
    if (!missing.empty()) {
        std::cerr << "strict mode: undeclared atom(s):";
        for (const std::string& a : missing) std::cerr << " " << a;
        std::cerr << "\n";
        std::exit(kExitError);
    }
}

std::string joinNames(const std::vector<std::string>& names) {
    std::string out;
    for (std::size_t i = 0; i < names.size(); ++i) {
        if (i) out += ",";
        out += names[i];
    }
    return out;
}

// Every intention subformula, first occurrence only.
void collectIntends(const Formula& f, std::vector<Formula>& out) {
    switch (f.kind()) {
        case Formula::Kind::Intend: {
            for (const Formula& seen : out) {
                if (seen == f) return;
            }
            out.push_back(f);
            return;
        }
        case Formula::Kind::Not:
        case Formula::Kind::Nec:
            collectIntends(f.child(), out);
            return;
        case Formula::Kind::Or:
        case Formula::Kind::And:
            collectIntends(f.left(), out);
            collectIntends(f.right(), out);
            return;
        default:
            return;
    }
}

void printTrace(const KripkeModel& m, std::uint32_t w, const Formula& phi) {
    std::vector<Formula> intends;
    collectIntends(phi, intends);
    for (const Formula& sub : intends) {
        Formula arg = sub.child();
        std::vector<std::uint32_t> argExt = extensionIdx(m, arg);
        std::vector<std::string> succ, badSucc;
        for (std::uint32_t v : m.successors[w]) {
            succ.push_back(m.worlds[v]);
            if (!std::binary_search(argExt.begin(), argExt.end(), v)) {
                badSucc.push_back(m.worlds[v]);
            }
        }
        std::uint32_t prob = m.assignment[w];
        std::vector<std::string> probAtoms;
        for (const std::string& atom : m.atoms) {
            if (m.problems.atomSolvedByIdx(atom, prob)) probAtoms.push_back(atom);
        }
        bool solves = solvesFastIdx(m.problems, prob, arg);
        bool conOk = badSucc.empty();
        std::cout << "trace.subformula=" << print(sub) << "\n";
        std::cout << "trace.successors=" << joinNames(succ) << "\n";
        std::cout << "trace.successors_ok=" << (conOk ? "true" : "false") << "\n";
        if (!conOk) {
            std::cout << "trace.successors_failing=" << joinNames(badSucc) << "\n";
        }
        std::cout << "trace.problem=" << m.problems.problems[prob] << "\n";
        std::cout << "trace.problem_atoms=" << joinNames(probAtoms) << "\n";
        std::cout << "trace.arg_vars=" << joinNames(vars(arg)) << "\n";
        std::cout << "trace.solves=" << (solves ? "true" : "false") << "\n";
        std::cout << "trace.value=" << ((conOk && solves) ? "true" : "false") << "\n";
    }
}

int cmdCheck(const std::string& modelPath, const std::string& world,
             const std::string& formulaText, bool trace, bool closeUpward) {
    KripkeModel m = loadOrDie(modelPath, closeUpward);
    Formula f = parse(formulaText);
    rejectUndeclared(m, f);
    auto w = m.worldIndex(world);
    if (!w) {
        std::cerr << "unknown world: " << world << "\n";
        return kExitError;
    }
    bool value = eval(m, world, f);
    if (trace) {
        std::cout << "world=" << world << "\n";
        std::cout << "formula=" << print(f) << "\n";
        printTrace(m, *w, f);
    }
    std::cout << "result=" << (value ? "true" : "false") << "\n";
    return value ? kExitTrue : kExitFalse;
}

int cmdCompare(const std::string& modelPath, const std::string& world,
               const std::string& formulaText, bool closeUpward) {
    KripkeModel m = loadOrDie(modelPath, closeUpward);
    Formula f = parse(formulaText);
    if (!f.isCore()) {
        std::cerr << "compare takes a core formula (no # or I)\n";
        return kExitError;
    }
    rejectUndeclared(m, f);
    auto w = m.worldIndex(world);
    if (!w) {
        std::cerr << "unknown world: " << world << "\n";
        return kExitError;
    }
    bool kripke = eval(m, world, Formula::intend(f));
    Partition q = piOfProblemIdx(m, m.assignment[*w]);
    const std::vector<std::uint32_t>& con = m.successors[*w];
    bool bg = bgIntends(m, con, q, f);
    bool bgFirst = bgIntendsFirstProposal(m, con, q, f);
    std::cout << "world=" << world << "\n";
    std::cout << "formula | kripke | bg | bg-first-proposal\n";
    std::cout << print(f) << " | " << (kripke ? "true" : "false") << " | "
              << (bg ? "true" : "false") << " | " << (bgFirst ? "true" : "false")
              << "\n";
    return kExitTrue;
}

int cmdValidate(const std::string& modelPath, bool closeUpward) {
    LoadOptions opts;
    opts.closeUpward = closeUpward;
    LoadResult res = loadModelFile(modelPath, opts);
    if (!res.ok()) {
        for (const Violation& v : res.violations) {
            std::cout << "violation: " << v.format() << "\n";
        }
        return kExitError;
    }
    std::cout << "ok: " << res.model.worlds.size() << " worlds, "
              << res.model.problems.size() << " problems, "
              << res.model.atoms.size() << " atoms\n";
    return kExitTrue;
}

struct RandomSearchOpts {
    bool enabled = false;
    std::uint64_t samples = 10'000;
    std::uint64_t seed = 0;
    bool moore = true;
};

int cmdCountermodel(const std::string& formulaText, int maxWorlds, int maxGenerators,
                    std::uint64_t budget, const std::vector<std::string>& atoms,
                    const std::string& outPath, bool principles,
                    const std::string& outDir, const RandomSearchOpts& random) {
    SearchBounds b;
    b.maxWorlds = maxWorlds;
    b.maxGenerators = maxGenerators;
    b.budget = budget;
    b.atoms = atoms;
    b.seed = random.seed;

    if (principles) {
        ClosureReport report = refuteClosurePrinciples(b);
        for (const PrincipleRefutation& r : report.principles) {
            std::cout << "principle=" << r.id << "\n";
            std::cout << "instance=" << print(r.instance) << "\n";
            std::cout << "note=" << r.premiseNote << "\n";
            if (r.witness) {
                std::cout << "refuted=true\n";
                std::cout << "world=" << r.witness->world << "\n";
                if (!outDir.empty()) {
                    std::filesystem::create_directories(outDir);
                    std::string file = outDir + "/" + r.id + ".json";
                    std::ofstream out(file);
                    out << saveModel(r.witness->model);
                    std::cout << "model_file=" << file << "\n";
                } else {
                    std::cout << saveModel(r.witness->model);
                }
            } else {
                std::cout << "refuted=false\n";
            }
            std::cout << "\n";
        }
        return report.allRefuted() ? kExitTrue : kExitFalse;
    }

    Formula f = parse(formulaText);
    std::optional<Countermodel> found =
        random.enabled ? findCountermodelRandom(f, b, random.samples, random.moore)
                       : findCountermodel(f, b);
    if (!found) {
        std::cout << "not found within bounds (max-worlds=" << maxWorlds
                  << ", max-generators=" << maxGenerators << ")\n";
        return kExitFalse;
    }
    std::cout << "world=" << found->world << "\n";
    if (!outPath.empty()) {
        std::ofstream out(outPath);
        out << saveModel(found->model);
        std::cout << "model_file=" << outPath << "\n";
    } else {
        std::cout << saveModel(found->model);
    }
    return kExitTrue;
}

int cmdProve(const std::string& derivationPath, const std::string& premisesPath,
             const std::string& goalText) {
    std::ifstream in(derivationPath);
    if (!in) {
        std::cerr << "cannot open derivation file: " << derivationPath << "\n";
        return kExitError;
    }
    std::ostringstream text;
    text << in.rdbuf();
    Derivation d = parseDerivation(text.str());

    std::vector<Formula> premises;
    if (!premisesPath.empty()) {
        std::ifstream pin(premisesPath);
        if (!pin) {
            std::cerr << "cannot open premises file: " << premisesPath << "\n";
            return kExitError;
        }
        std::string line;
        while (std::getline(pin, line)) {
            std::size_t first = line.find_first_not_of(" \t\r");
            if (first == std::string::npos) continue;
            if (line.compare(first, 2, "//") == 0) continue;
            premises.push_back(parse(line));
        }
    }

    Formula goal = goalText.empty()
                       ? (d.lines.empty() ? Formula::top() : d.lines.back().formula)
                       : parse(goalText);
    CheckResult res = checkDerivation(d, premises, goal);
    if (res) {
        std::cout << "failure: line " << res->line << ": " << res->reason;
        if (!res->detail.empty()) std::cout << " (" << res->detail << ")";
        std::cout << "\n";
        return kExitFalse;
    }
    std::cout << "ok: " << d.lines.size() << " lines, goal " << print(goal) << "\n";
    return kExitTrue;
}

int cmdScenarios(const std::string& scenarioPath) {
    std::ifstream in(scenarioPath);
    if (!in) {
        std::cerr << "cannot open scenario file: " << scenarioPath << "\n";
        return kExitError;
    }
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        std::cerr << "scenario file: " << e.what() << "\n";
        return kExitError;
    }
    if (!j.is_object() || !j.contains("model") || !j["model"].is_string() ||
        !j.contains("queries") || !j["queries"].is_array()) {
        std::cerr << "scenario file: need {\"model\": path, \"queries\": "
                     "[[world, formula], ...]}\n";
        return kExitError;
    }
    std::filesystem::path base = std::filesystem::path(scenarioPath).parent_path();
    std::string modelPath = (base / j["model"].get<std::string>()).string();
    KripkeModel m = loadOrDie(modelPath, false);

    std::vector<bool> expected;
    if (j.contains("expected")) {
        for (const auto& e : j["expected"]) {
            if (!e.is_boolean()) {
                std::cerr << "scenario file: \"expected\" must hold booleans\n";
                return kExitError;
            }
            expected.push_back(e.get<bool>());
        }
        if (expected.size() != j["queries"].size()) {
            std::cerr << "scenario file: \"expected\" length differs from \"queries\"\n";
            return kExitError;
        }
    }

    bool allMatch = true;
    std::size_t qi = 0;
    for (const auto& entry : j["queries"]) {
        if (!entry.is_array() || entry.size() != 2 || !entry[0].is_string() ||
            !entry[1].is_string()) {
            std::cerr << "scenario file: queries must be [world, formula] pairs\n";
            return kExitError;
        }
        std::string world = entry[0].get<std::string>();
        Formula f = parse(entry[1].get<std::string>());
        rejectUndeclared(m, f);
        if (!m.worldIndex(world)) {
            std::cerr << "unknown world: " << world << "\n";
            return kExitError;
        }
        bool value = eval(m, world, f);
        std::cout << world << " | " << print(f) << " | " << (value ? "true" : "false");
        if (!expected.empty()) {
            bool want = expected[qi];
            bool match = want == value;
            allMatch = allMatch && match;
            std::cout << " | expected " << (want ? "true" : "false") << " | "
                      << (match ? "ok" : "MISMATCH");
        }
        std::cout << "\n";
        ++qi;
    }
    return allMatch ? kExitTrue : kExitFalse;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"workbench for the problem-sensitive logic of intention"};
    app.require_subcommand(1);

    std::string modelPath, world, formulaText, outPath, outDir;
    std::string derivationPath, premisesPath, goalText, scenarioPath;
    bool trace = false, closeUpward = false, principles = false;
    int maxWorlds = 2, maxGenerators = 2;
    std::uint64_t budget = 1'000'000;
    std::vector<std::string> atoms;

    CLI::App* check = app.add_subcommand("check", "evaluate a formula at a world");
    check->add_option("model", modelPath, "model file")->required();
    check->add_option("world", world, "world id")->required();
    check->add_option("formula", formulaText, "formula text")->required();
    check->add_flag("--trace", trace, "print per-intention evaluation details");
    check->add_flag("--close-upward", closeUpward,
                    "upward-close solve sets before validating");

    CLI::App* compare = app.add_subcommand(
        "compare", "contrast semilattice and partition intention verdicts");
    compare->add_option("model", modelPath, "model file")->required();
    compare->add_option("world", world, "world id")->required();
    compare->add_option("formula", formulaText, "core formula text")->required();
    compare->add_flag("--close-upward", closeUpward,
                      "upward-close solve sets before validating");

    CLI::App* validateCmd = app.add_subcommand("validate", "validate a model file");
    validateCmd->add_option("model", modelPath, "model file")->required();
    validateCmd->add_flag("--close-upward", closeUpward,
                          "upward-close solve sets before validating");

    CLI::App* counter = app.add_subcommand("countermodel", "search for a countermodel");
    counter->add_option("--formula", formulaText, "formula to refute");
    counter->add_option("--max-worlds", maxWorlds, "world bound")
        ->check(CLI::PositiveNumber);
    counter->add_option("--max-generators", maxGenerators, "problem-generator bound")
        ->check(CLI::PositiveNumber);
    counter->add_option("--budget", budget, "enumeration step budget");
    counter
        ->add_option("--atoms", atoms,
                     "atoms of the search space (default: vars of the formula)")
        ->delimiter(',');
    counter->add_option("--out", outPath, "write the found model here");
    counter->add_flag("--principles", principles,
                      "refute the four closure principles instead");
    counter->add_option("--out-dir", outDir, "directory for --principles witnesses");
    RandomSearchOpts random;
    counter->add_flag("--random", random.enabled,
                      "sample random models instead of enumerating");
    counter->add_option("--samples", random.samples, "sample count for --random");
    counter->add_option("--seed", random.seed, "seed for --random");
    counter->add_flag("--moore,!--no-moore", random.moore,
                      "sample intersection-closed fusion tables (--random)");

    CLI::App* prove = app.add_subcommand("prove", "check a derivation file");
    prove->add_option("derivation", derivationPath, "derivation file")->required();
    prove->add_option("--premises", premisesPath, "premise formulas, one per line");
    prove->add_option("--goal", goalText, "goal formula (default: last line)");

    CLI::App* scenarios = app.add_subcommand("scenarios", "run a scenario file");
    scenarios->add_option("scenario", scenarioPath, "scenario file")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (check->parsed()) {
            return cmdCheck(modelPath, world, formulaText, trace, closeUpward);
        }
        if (compare->parsed()) {
            return cmdCompare(modelPath, world, formulaText, closeUpward);
        }
        if (validateCmd->parsed()) {
            return cmdValidate(modelPath, closeUpward);
        }
        if (counter->parsed()) {
            if (!principles && formulaText.empty()) {
                std::cerr << "countermodel needs --formula (or --principles)\n";
                return kExitError;
            }
            return cmdCountermodel(formulaText, maxWorlds, maxGenerators, budget,
                                   atoms, outPath, principles, outDir, random);
        }
        if (prove->parsed()) {
            return cmdProve(derivationPath, premisesPath, goalText);
        }
        if (scenarios->parsed()) {
            return cmdScenarios(scenarioPath);
        }
    } catch (const intentlog::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
    return kExitError;
}
