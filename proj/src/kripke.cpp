#include "intentlog/kripke.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include <json.hpp>

#include "intentlog/errors.hpp"

namespace intentlog {

std::optional<std::uint32_t> KripkeModel::worldIndex(std::string_view name) const {
    for (std::uint32_t i = 0; i < worlds.size(); ++i) {
        if (worlds[i] == name) return i;
    }
    return std::nullopt;
}

bool KripkeModel::atomTrueAt(const std::string& atom, std::uint32_t w) const {
    auto it = valuation.find(atom);
    if (it == valuation.end()) return false;
    return std::binary_search(it->second.begin(), it->second.end(), w);
}

std::vector<Violation> validateModel(const KripkeModel& m) {
    std::vector<Violation> out = validate(m.problems);
    const std::size_t n = m.worlds.size();

    if (n == 0) {
        out.push_back({"worlds-nonempty", {}, "the world set is empty"});
        return out;
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (m.worlds[i] == m.worlds[j]) {
                out.push_back({"world-uniqueness", {m.worlds[i]}, "duplicate world id"});
            }
        }
    }

    if (m.successors.size() != n) {
        out.push_back({"relation-shape", {}, "successor table has wrong size"});
    } else {
        for (std::uint32_t w = 0; w < n; ++w) {
            if (m.successors[w].empty()) {
                out.push_back({"seriality", {m.worlds[w]}, "world has no successor"});
            }
            for (std::uint32_t v : m.successors[w]) {
                if (v >= n) {
                    out.push_back({"relation-range", {m.worlds[w]}, "successor out of range"});
                }
            }
        }
    }

    if (m.assignment.size() != n) {
        out.push_back({"assignment-totality", {}, "assignment does not cover every world"});
    } else {
        for (std::uint32_t w = 0; w < n; ++w) {
            if (m.assignment[w] == KripkeModel::kUnset) {
                out.push_back({"assignment-totality", {m.worlds[w]}, "world has no problem"});
            } else if (m.assignment[w] >= m.problems.size()) {
                out.push_back({"assignment-range", {m.worlds[w]}, "problem index out of range"});
            }
        }
    }

    for (const auto& [atom, set] : m.valuation) {
        if (std::find(m.atoms.begin(), m.atoms.end(), atom) == m.atoms.end()) {
            out.push_back({"valuation-atom", {atom}, "valuation names an undeclared atom"});
        }
        for (std::uint32_t w : set) {
            if (w >= n) {
                out.push_back({"valuation-range", {atom}, "world index out of range"});
            }
        }
    }
    for (const auto& [atom, set] : m.problems.solvesAtoms) {
        (void)set;
        if (std::find(m.atoms.begin(), m.atoms.end(), atom) == m.atoms.end()) {
            out.push_back({"solves-atom", {atom}, "solves names an undeclared atom"});
        }
    }
    for (const std::string& atom : m.atoms) {
        if (!isValidAtomName(atom)) {
            out.push_back({"atom-name", {atom}, "not a valid atom identifier"});
        }
    }
    return out;
}

// ── Evaluation ──────────────────────────────────────────────────────────────

namespace {

// Bottom-up extension computation with a per-call memo keyed on node
// identity (shared subtrees are computed once).
class Evaluator {
public:
    explicit Evaluator(const KripkeModel& m) : m_(m) {}

    const std::vector<bool>& extensionOf(const Formula& f) {
        auto it = memo_.find(f.nodeId());
        if (it != memo_.end()) return it->second;
        std::vector<bool> ext = compute(f);
        return memo_.emplace(f.nodeId(), std::move(ext)).first->second;
    }

private:
    std::vector<bool> compute(const Formula& f) {
        const std::size_t n = m_.worlds.size();
        switch (f.kind()) {
            case Formula::Kind::Top:
                return std::vector<bool>(n, true);
            case Formula::Kind::Atom: {
                std::vector<bool> ext(n, false);
                auto it = m_.valuation.find(f.atomName());
                if (it != m_.valuation.end()) {
                    for (std::uint32_t w : it->second) ext[w] = true;
                }
                return ext;
            }
            case Formula::Kind::Not: {
                std::vector<bool> ext = extensionOf(f.child());
                ext.flip();
                return ext;
            }
            case Formula::Kind::Or: {
                std::vector<bool> ext = extensionOf(f.left());
                const std::vector<bool>& r = extensionOf(f.right());
                for (std::size_t i = 0; i < n; ++i) ext[i] = ext[i] || r[i];
                return ext;
            }
            case Formula::Kind::And: {
                std::vector<bool> ext = extensionOf(f.left());
                const std::vector<bool>& r = extensionOf(f.right());
                for (std::size_t i = 0; i < n; ++i) ext[i] = ext[i] && r[i];
                return ext;
            }
            case Formula::Kind::Nec: {
                const std::vector<bool>& c = extensionOf(f.child());
                bool everywhere =
                    std::all_of(c.begin(), c.end(), [](bool b) { return b; });
                return std::vector<bool>(n, everywhere);
            }
            case Formula::Kind::Intend: {
                Formula arg = f.child();
                const std::vector<bool>& argExt = extensionOf(arg);
                // Solvedness depends on the world only through f(w).
                std::vector<bool> solved(m_.problems.size(), false);
                for (std::uint32_t a = 0; a < m_.problems.size(); ++a) {
                    solved[a] = solvesFastIdx(m_.problems, a, arg);
                }
                std::vector<bool> ext(n, false);
                for (std::uint32_t w = 0; w < n; ++w) {
                    bool conOk = true;
                    for (std::uint32_t v : m_.successors[w]) {
                        if (!argExt[v]) {
                            conOk = false;
                            break;
                        }
                    }
                    ext[w] = conOk && solved[m_.assignment[w]];
                }
                return ext;
            }
        }
        return {};
    }

    const KripkeModel& m_;
    std::unordered_map<const void*, std::vector<bool>> memo_;
};

}  // namespace

bool eval(const KripkeModel& m, std::string_view world, const Formula& phi) {
    auto w = m.worldIndex(world);
    if (!w) throw UnknownWorld(std::string(world));
    Evaluator ev(m);
    return ev.extensionOf(phi)[*w];
}

std::vector<std::uint32_t> extensionIdx(const KripkeModel& m, const Formula& phi) {
    Evaluator ev(m);
    const std::vector<bool>& ext = ev.extensionOf(phi);
    std::vector<std::uint32_t> out;
    for (std::uint32_t w = 0; w < ext.size(); ++w) {
        if (ext[w]) out.push_back(w);
    }
    return out;
}

std::vector<std::string> extension(const KripkeModel& m, const Formula& phi) {
    std::vector<std::string> out;
    for (std::uint32_t w : extensionIdx(m, phi)) out.push_back(m.worlds[w]);
    return out;
}

bool validOnModel(const KripkeModel& m, const Formula& phi) {
    return extensionIdx(m, phi).size() == m.worlds.size();
}

std::vector<std::string> undeclaredAtoms(const KripkeModel& m, const Formula& phi) {
    std::vector<std::string> out;
    for (const std::string& v : vars(phi)) {
        if (std::find(m.atoms.begin(), m.atoms.end(), v) == m.atoms.end()) {
            out.push_back(v);
        }
    }
    return out;
}

// ── Model files ─────────────────────────────────────────────────────────────

namespace {

using nlohmann::json;

std::vector<std::string> stringList(const json& j, const std::string& key) {
    if (!j.contains(key) || !j[key].is_array()) {
        throw FormatError("model file: missing or non-array \"" + key + "\"");
    }
    std::vector<std::string> out;
    for (const auto& e : j[key]) {
        if (!e.is_string()) throw FormatError("model file: \"" + key + "\" holds a non-string");
        out.push_back(e.get<std::string>());
    }
    return out;
}

// Splits a canonical unordered-pair key "x|y".
std::pair<std::string, std::string> splitPairKey(const std::string& key) {
    auto bar = key.find('|');
    if (bar == std::string::npos || bar == 0 || bar + 1 == key.size()) {
        throw FormatError("model file: bad fusion key '" + key + "' (want \"x|y\")");
    }
    return {key.substr(0, bar), key.substr(bar + 1)};
}

}  // namespace

LoadResult loadModel(const std::string& jsonText, const LoadOptions& opts) {
    json j;
    try {
        j = json::parse(jsonText);
    } catch (const json::parse_error& e) {
        throw FormatError(std::string("model file: ") + e.what());
    }
    if (!j.is_object()) throw FormatError("model file: top level must be an object");

    KripkeModel m;
    m.worlds = stringList(j, "worlds");
    m.atoms = stringList(j, "atoms");

    auto worldIdx = [&](const std::string& name) -> std::uint32_t {
        auto i = m.worldIndex(name);
        if (!i) throw FormatError("model file: unknown world '" + name + "'");
        return *i;
    };

    m.successors.assign(m.worlds.size(), {});
    if (!j.contains("relation") || !j["relation"].is_array()) {
        throw FormatError("model file: missing or non-array \"relation\"");
    }
    for (const auto& e : j["relation"]) {
        if (!e.is_array() || e.size() != 2 || !e[0].is_string() || !e[1].is_string()) {
            throw FormatError("model file: relation entries must be [from, to] pairs");
        }
        m.successors[worldIdx(e[0].get<std::string>())].push_back(
            worldIdx(e[1].get<std::string>()));
    }
    for (auto& succ : m.successors) {
        std::sort(succ.begin(), succ.end());
        succ.erase(std::unique(succ.begin(), succ.end()), succ.end());
    }

    if (!j.contains("valuation") || !j["valuation"].is_object()) {
        throw FormatError("model file: missing or non-object \"valuation\"");
    }
    for (const auto& [atom, arr] : j["valuation"].items()) {
        if (!arr.is_array()) throw FormatError("model file: valuation of '" + atom + "' must be an array");
        std::vector<std::uint32_t> ws;
        for (const auto& e : arr) {
            if (!e.is_string()) throw FormatError("model file: valuation worlds must be strings");
            ws.push_back(worldIdx(e.get<std::string>()));
        }
        std::sort(ws.begin(), ws.end());
        ws.erase(std::unique(ws.begin(), ws.end()), ws.end());
        m.valuation[atom] = std::move(ws);
    }
    for (const std::string& atom : m.atoms) {
        m.valuation.try_emplace(atom);  // omitted atom = empty extension
    }

    std::vector<std::string> problems = stringList(j, "problems");
    for (const std::string& name : problems) {
        // '|' is the fusion-key separator and cannot appear in an id.
        if (name.empty() || name.find('|') != std::string::npos) {
            throw FormatError("model file: bad problem id '" + name + "'");
        }
    }
    std::vector<std::tuple<std::string, std::string, std::string>> fusionPairs;
    if (!j.contains("fusion") || !j["fusion"].is_object()) {
        throw FormatError("model file: missing or non-object \"fusion\"");
    }
    for (const auto& [key, val] : j["fusion"].items()) {
        if (!val.is_string()) throw FormatError("model file: fusion values must be strings");
        auto [a, b] = splitPairKey(key);
        fusionPairs.emplace_back(a, b, val.get<std::string>());
    }
    std::map<std::string, std::vector<std::string>> solves;
    if (!j.contains("solves") || !j["solves"].is_object()) {
        throw FormatError("model file: missing or non-object \"solves\"");
    }
    for (const auto& [atom, arr] : j["solves"].items()) {
        if (!arr.is_array()) throw FormatError("model file: solves of '" + atom + "' must be an array");
        std::vector<std::string> names;
        for (const auto& e : arr) {
            if (!e.is_string()) throw FormatError("model file: solves entries must be strings");
            names.push_back(e.get<std::string>());
        }
        solves[atom] = std::move(names);
    }
    m.problems = makeProblemsModel(std::move(problems), fusionPairs, solves);

    if (!j.contains("assignment") || !j["assignment"].is_object()) {
        throw FormatError("model file: missing or non-object \"assignment\"");
    }
    m.assignment.assign(m.worlds.size(), KripkeModel::kUnset);
    for (const auto& [world, prob] : j["assignment"].items()) {
        if (!prob.is_string()) throw FormatError("model file: assignment values must be strings");
        auto pi = m.problems.problemIndex(prob.get<std::string>());
        if (!pi) throw FormatError("model file: unknown problem '" + prob.get<std::string>() + "'");
        m.assignment[worldIdx(world)] = *pi;
    }

    if (opts.closeUpward) {
        // Closing needs a working fusion table; other violations (including
        // the upward-closure ones being repaired) do not block it.
        bool fusionOk = true;
        for (const Violation& v : validate(m.problems)) {
            if (v.law != "upward-closure") fusionOk = false;
        }
        if (fusionOk) closeSolvesUpward(m.problems);
    }

    LoadResult res{std::move(m), {}};
    res.violations = validateModel(res.model);
    return res;
}

LoadResult loadModelFile(const std::string& path, const LoadOptions& opts) {
    std::ifstream in(path);
    if (!in) throw FormatError("cannot open model file: " + path);
    std::ostringstream text;
    text << in.rdbuf();
    return loadModel(text.str(), opts);
}

std::string saveModel(const KripkeModel& m) {
    json j;
    j["worlds"] = m.worlds;
    json rel = json::array();
    for (std::uint32_t w = 0; w < m.successors.size(); ++w) {
        for (std::uint32_t v : m.successors[w]) {
            rel.push_back({m.worlds[w], m.worlds[v]});
        }
    }
    j["relation"] = std::move(rel);
    j["atoms"] = m.atoms;
    json val = json::object();
    for (const auto& [atom, ws] : m.valuation) {
        json arr = json::array();
        for (std::uint32_t w : ws) arr.push_back(m.worlds[w]);
        val[atom] = std::move(arr);
    }
    j["valuation"] = std::move(val);
    j["problems"] = m.problems.problems;
    json fus = json::object();
    const std::size_t n = m.problems.size();
    for (std::uint32_t a = 0; a < n; ++a) {
        for (std::uint32_t b = a + 1; b < n; ++b) {
            const std::string& x = m.problems.problems[a];
            const std::string& y = m.problems.problems[b];
            std::string key = x <= y ? x + "|" + y : y + "|" + x;
            fus[key] = m.problems.problems[m.problems.fuseIdx(a, b)];
        }
    }
    j["fusion"] = std::move(fus);
    json sol = json::object();
    for (const auto& [atom, probs] : m.problems.solvesAtoms) {
        json arr = json::array();
        for (std::uint32_t a : probs) arr.push_back(m.problems.problems[a]);
        sol[atom] = std::move(arr);
    }
    j["solves"] = std::move(sol);
    json assign = json::object();
    for (std::uint32_t w = 0; w < m.assignment.size(); ++w) {
        assign[m.worlds[w]] = m.problems.problems[m.assignment[w]];
    }
    j["assignment"] = std::move(assign);
    return j.dump(2) + "\n";
}

}  // namespace intentlog
