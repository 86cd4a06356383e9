#include <set>
#include <string>

#include "json.hpp"

#include "wcross/errors.hpp"
#include "wcross/lemma_checkers.hpp"

namespace wcross {

namespace {

using nlohmann::json;

// A parameter is an integer, an array of integers, or {"min": a, "max": b}.
std::vector<Int> parse_values(const json& v, const std::string& key) {
    auto as_int = [&key](const json& x) -> Int {
        if (!x.is_number_integer()) throw ParseError("'" + key + "': expected integer values", 0);
        return x.get<Int>();
    };
    if (v.is_number_integer()) return {v.get<Int>()};
    if (v.is_array()) {
        std::vector<Int> out;
        for (const auto& x : v) out.push_back(as_int(x));
        return out;
    }
    if (v.is_object()) {
        for (const auto& [name, _] : v.items()) {
            if (name != "min" && name != "max") throw ParseError("'" + key + "': unknown range key '" + name + "'", 0);
        }
        if (!v.contains("min") || !v.contains("max")) throw ParseError("'" + key + "': range needs min and max", 0);
        const Int lo = as_int(v.at("min"));
        const Int hi = as_int(v.at("max"));
        if (lo > hi) throw PreconditionError("sweep config: '" + key + "' range has min > max");
        std::vector<Int> out;
        for (Int x = lo; x <= hi; ++x) out.push_back(x);
        return out;
    }
    throw ParseError("'" + key + "': expected integer, array or {min,max}", 0);
}

NPolicy parse_policy(const json& v) {
    NPolicy p;
    if (v.is_string()) {
        if (v.get<std::string>() != "at_threshold") {
            throw ParseError("n_policy: unknown policy '" + v.get<std::string>() + "'", 0);
        }
        return p;
    }
    if (!v.is_object() || v.size() != 1) {
        throw ParseError("n_policy: expected \"at_threshold\", {\"threshold_plus\": ...} or {\"explicit\": ...}", 0);
    }
    if (v.contains("threshold_plus")) {
        p.kind = NPolicy::Kind::ThresholdPlus;
        p.offsets = parse_values(v.at("threshold_plus"), "threshold_plus");
    } else if (v.contains("explicit")) {
        p.kind = NPolicy::Kind::Explicit;
        p.explicit_n = parse_values(v.at("explicit"), "explicit");
    } else {
        throw ParseError("n_policy: unknown policy '" + v.begin().key() + "'", 0);
    }
    return p;
}

}  // namespace

SweepConfig parse_sweep_config(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("sweep config is not valid JSON: ") + e.what(), 0);
    }
    if (!doc.is_object()) throw ParseError("sweep config must be a JSON object", 0);

    static const std::set<std::string> known{"t", "k", "kp", "l", "q", "m", "n_policy", "lemmas"};
    for (const auto& [key, _] : doc.items()) {
        if (!known.count(key)) throw ParseError("sweep config: unknown key '" + key + "'", 0);
    }
    for (const char* key : {"t", "k", "l"}) {
        if (!doc.contains(key)) throw ParseError(std::string("sweep config: missing key '") + key + "'", 0);
    }

    SweepConfig cfg;
    cfg.t = parse_values(doc.at("t"), "t");
    cfg.k = parse_values(doc.at("k"), "k");
    cfg.l = parse_values(doc.at("l"), "l");
    cfg.q = doc.contains("q") ? parse_values(doc.at("q"), "q") : std::vector<Int>{2};
    if (doc.contains("kp")) cfg.kp = parse_values(doc.at("kp"), "kp");
    if (doc.contains("m")) cfg.m = parse_values(doc.at("m"), "m");
    if (doc.contains("n_policy")) cfg.n_policy = parse_policy(doc.at("n_policy"));
    if (doc.contains("lemmas")) {
        const json& lemmas = doc.at("lemmas");
        if (!lemmas.is_array()) throw ParseError("'lemmas' must be an array of names", 0);
        for (const auto& name : lemmas) {
            if (!name.is_string()) throw ParseError("'lemmas' must be an array of names", 0);
            const auto fam = parse_family(name.get<std::string>());
            if (!fam) throw ParseError("unknown lemma '" + name.get<std::string>() + "'", 0);
            cfg.lemmas.push_back(*fam);
        }
    }
    cfg.validate();
    return cfg;
}

}  // namespace wcross
