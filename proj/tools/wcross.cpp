// Command-line front end: counting queries, lemma sweeps, family checks,
// sunflower detection and extremal search.
//
// Exit codes: 0 success / holds, 1 semantic negative, 2 input or usage error.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>

#include <openssl/evp.h>

#include "CLI11.hpp"
#include "json.hpp"

#include "wcross/errors.hpp"
#include "wcross/exact_arith.hpp"
#include "wcross/family_analysis.hpp"
#include "wcross/lemma_checkers.hpp"
#include "wcross/search_engine.hpp"

namespace {

using json = nlohmann::ordered_json;
using namespace wcross;

constexpr const char* kVersion = "0.1.0";
constexpr int kExitOk = 0;
constexpr int kExitNegative = 1;
constexpr int kExitInput = 2;

// Thrown for malformed arguments that CLI11 cannot catch itself.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string sha256_hex(const std::string& data) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr);
    std::ostringstream out;
    for (unsigned int i = 0; i < len; ++i) out << std::hex << std::setw(2) << std::setfill('0') << int{digest[i]};
    return out.str();
}

struct Input {
    std::string path;
    std::string text;
};

Input read_input(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("cannot read '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return {path, buf.str()};
}

class Manifest {
public:
    Manifest(std::string command, json params) : command_(std::move(command)), params_(std::move(params)) {}

    void add_input(const Input& in) { inputs_.push_back({{"path", in.path}, {"sha256", sha256_hex(in.text)}}); }

    json to_json() const {
        const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
        return {{"command", command_},
                {"parameters", params_},
                {"inputs", inputs_},
                {"version", kVersion},
                {"elapsed_ms", std::round(ms * 1000.0) / 1000.0}};
    }

private:
    std::string command_;
    json params_;
    json inputs_ = json::array();
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

unsigned default_workers() {
    if (const char* env = std::getenv("WCROSS_WORKERS")) {
        try {
            const long v = std::stol(env);
            if (v >= 1 && v <= 1024) return static_cast<unsigned>(v);
        } catch (const std::exception&) {
        }
        std::cerr << "warning: ignoring WCROSS_WORKERS='" << env << "'\n";
    }
    return 1;
}

Int parse_arg(const std::string& s, const char* what) {
    try {
        std::size_t pos = 0;
        const long long v = std::stoll(s, &pos);
        if (pos != s.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw UsageError(std::string("expected an integer for ") + what + ", got '" + s + "'");
    }
}

json params_json(const LemmaParams& p) {
    json j{{"n", p.n}, {"k", p.k}, {"kp", p.kp}, {"t", p.t}};
    if (p.l) j["l"] = *p.l;
    if (p.q) j["q"] = *p.q;
    if (p.m) j["m"] = *p.m;
    if (p.h) j["h"] = *p.h;
    return j;
}

json witness_json(const ConditionReport& r) {
    if (!r.witness) return nullptr;
    return {{"f", r.witness->rows}, {"g", r.witness->cols}};
}

json subspace_json(const Subspace& s) {
    json rows = json::array();
    for (const auto& r : s.basis()) rows.push_back(r);
    return rows;
}

bool looks_like_subspaces(const std::string& text) {
    const auto pos = text.find_first_not_of(" \t\r\n");
    return pos != std::string::npos && text.compare(pos, 2, "q=") == 0;
}

// ---------------------------------------------------------------------------
// count

int cmd_count(const std::string& what, const std::vector<std::string>& raw, bool as_json) {
    std::vector<Int> a;
    for (const auto& s : raw) a.push_back(parse_arg(s, what.c_str()));
    auto arity = [&](std::size_t n, const char* usage) {
        if (a.size() != n) throw UsageError("count " + what + " expects " + usage);
    };
    Nat v;
    if (what == "binom") {
        arity(2, "<m> <i>");
        if (a[0] < 0) throw UsageError("m must be nonnegative");
        v = binomial(a[0], a[1]);
    } else if (what == "gauss") {
        arity(3, "<a> <b> <q>");
        if (a[0] < 0) throw UsageError("a must be nonnegative");
        v = gaussian_binomial(a[0], a[1], a[2]);
    } else if (what == "spacenumber") {
        arity(5, "<n> <kw> <m> <h> <q>");
        v = count_subspaces_by_intersection(a[0], a[1], a[2], a[3], a[4]);
    } else if (what == "set-profile") {
        arity(4, "<n> <k> <kp> <h>");
        v = set_profile(a[0], a[1], a[2], a[3]);
    } else if (what == "subspace-profile") {
        arity(5, "<n> <k> <kp> <h> <q>");
        v = subspace_profile(a[0], a[1], a[2], a[3], a[4]);
    } else if (what == "cond-threshold") {
        arity(2, "<l> <t>");
        if (a[0] < 1 || a[1] < 1) throw UsageError("cond-threshold needs l >= 1 and t >= 1");
        v = condition_threshold(a[0], a[1]);
    } else if (what == "threshold-set") {
        arity(3, "<k> <l> <t>");
        v = set_threshold(a[0], a[1], a[2]);
    } else if (what == "threshold-subspace") {
        arity(4, "<k> <kp> <l> <t>");
        v = subspace_threshold(a[0], a[1], a[2], a[3]);
    } else {
        throw UsageError("unknown count '" + what +
                         "' (binom, gauss, spacenumber, set-profile, subspace-profile, cond-threshold, "
                         "threshold-set, threshold-subspace)");
    }
    if (as_json) {
        Manifest m("count", {{"kind", what}, {"args", a}});
        std::cout << json{{"value", v.str()}, {"manifest", m.to_json()}}.dump() << "\n";
    } else {
        std::cout << v.str() << "\n";
    }
    return kExitOk;
}

// ---------------------------------------------------------------------------
// verify-lemmas

int cmd_verify(const std::string& path, unsigned workers) {
    const Input in = read_input(path);
    Manifest m("verify-lemmas", {{"config", path}, {"workers", workers}});
    m.add_input(in);
    const SweepConfig cfg = parse_sweep_config(in.text);
    const SweepResult res = run_sweep(cfg, workers);
    for (const auto& r : res.reports) {
        std::cout << json{{"lemma", std::string(lemma_name(r.id))},
                          {"params", params_json(r.params)},
                          {"lhs", r.lhs.str()},
                          {"rhs", r.rhs.str()},
                          {"holds", r.holds},
                          {"strict", r.strict}}
                         .dump()
                  << "\n";
    }
    std::cout << json{{"summary",
                       {{"total", res.summary.total}, {"holds", res.summary.holds}, {"violations", res.summary.violations}}},
                      {"manifest", m.to_json()}}
                     .dump()
              << "\n";
    return res.summary.violations == 0 ? kExitOk : kExitNegative;
}

// ---------------------------------------------------------------------------
// check-family

int cmd_check(const std::string& fpath, const std::string& gpath, Int l, Int t) {
    const Input fin = read_input(fpath);
    const Input gin = read_input(gpath);
    Manifest m("check-family", {{"f", fpath}, {"g", gpath}, {"l", l}, {"t", t}});
    m.add_input(fin);
    m.add_input(gin);
    ConditionReport r;
    json sizes;
    if (looks_like_subspaces(fin.text) != looks_like_subspaces(gin.text)) {
        throw UsageError("one file holds sets and the other subspaces");
    }
    if (looks_like_subspaces(fin.text)) {
        const auto f = parse_subspace_family(fin.text);
        const auto g = parse_subspace_family(gin.text);
        r = is_weakly_cross_intersecting(f, g, l, t);
        sizes = {f.size(), g.size()};
    } else {
        const auto f = parse_set_family(fin.text);
        const auto g = parse_set_family(gin.text);
        r = is_weakly_cross_intersecting(f, g, l, t);
        sizes = {f.size(), g.size()};
    }
    json out{{"satisfied", r.satisfied},
             {"vacuous", r.vacuous},
             {"threshold", r.threshold},
             {"min_sum", r.min_sum ? json(*r.min_sum) : json(nullptr)},
             {"witness", witness_json(r)},
             {"sizes", sizes},
             {"manifest", m.to_json()}};
    std::cout << out.dump(2) << "\n";
    return r.satisfied ? kExitOk : kExitNegative;
}

// ---------------------------------------------------------------------------
// sunflower

int cmd_sunflower(const std::string& path, Int t, Int u) {
    const Input in = read_input(path);
    Manifest m("sunflower", {{"f", path}, {"t", t}, {"u", u}});
    m.add_input(in);
    if (u < 2) throw UsageError("--u must be at least 2");
    json list = json::array();
    if (looks_like_subspaces(in.text)) {
        const auto f = parse_subspace_family(in.text);
        if (f.members.empty()) throw UsageError("empty family, nothing to analyze");
        for (const auto& s : find_sunflowers(f, t, static_cast<std::size_t>(u))) {
            list.push_back({{"kernel", subspace_json(s.kernel)}, {"petals", s.petal_indices}, {"u", s.u()}});
        }
    } else {
        const auto f = parse_set_family(in.text);
        if (f.members.empty()) throw UsageError("empty family, nothing to analyze");
        for (const auto& s : find_sunflowers(f, t, static_cast<std::size_t>(u))) {
            list.push_back({{"kernel", set_elements(s.kernel)}, {"petals", s.petal_indices}, {"u", s.u()}});
        }
    }
    std::cout << json{{"sunflowers", list}, {"manifest", m.to_json()}}.dump(2) << "\n";
    return kExitOk;
}

// ---------------------------------------------------------------------------
// search

struct SearchArgs {
    Int n = 0, k = 0, kp = 0, l = 1, t = 1, q = 2;
    std::string pool, pool_f, pool_g;
    bool naive = false;
    bool symmetry = false;
    std::optional<std::uint64_t> node_budget;
    std::optional<std::uint64_t> time_budget_ms;
    std::size_t guard = kNaiveGuard;
};

int cmd_search(const std::string& kind, const SearchArgs& a, unsigned workers) {
    json params{{"kind", kind}, {"n", a.n}, {"k", a.k}, {"kp", a.kp}, {"l", a.l}, {"t", a.t}};
    if (kind == "subspaces") params["q"] = a.q;
    params["naive"] = a.naive;
    params["symmetry"] = a.symmetry;
    params["workers"] = workers;
    Manifest m("search", params);

    std::string fpath = a.pool_f.empty() ? a.pool : a.pool_f;
    std::string gpath = a.pool_g.empty() ? a.pool : a.pool_g;
    if (fpath.empty() != gpath.empty()) throw UsageError("give pools for both sides (--pool, or --pool-f and --pool-g)");

    CandidatePool pool;
    if (kind == "sets") {
        if (fpath.empty()) {
            pool = set_layer_pool(a.n, a.k, a.kp);
        } else {
            const Input fi = read_input(fpath), gi = read_input(gpath);
            m.add_input(fi);
            if (gpath != fpath) m.add_input(gi);
            SetFamily f = parse_set_family(fi.text);
            SetFamily g = parse_set_family(gi.text);
            // a single pool file serves both sides when k = kp
            if (a.pool_f.empty() && a.k != a.kp) throw UsageError("--pool needs k = kp; use --pool-f/--pool-g");
            if (f.n != a.n || f.k != a.k || g.k != a.kp) throw UsageError("pool files do not match --n/--k/--kp");
            pool = set_pool(std::move(f), std::move(g));
        }
    } else if (kind == "subspaces") {
        if (fpath.empty()) {
            pool = subspace_layer_pool(a.q, a.n, a.k, a.kp);
        } else {
            const Input fi = read_input(fpath), gi = read_input(gpath);
            m.add_input(fi);
            if (gpath != fpath) m.add_input(gi);
            SubspaceFamily f = parse_subspace_family(fi.text);
            SubspaceFamily g = parse_subspace_family(gi.text);
            if (a.pool_f.empty() && a.k != a.kp) throw UsageError("--pool needs k = kp; use --pool-f/--pool-g");
            // an empty pool file carries no dimension; take it from the flags
            if (f.members.empty()) f.k = a.k;
            if (g.members.empty()) g.k = a.kp;
            if (f.n != a.n || f.q != a.q || f.k != a.k || g.k != a.kp) {
                throw UsageError("pool files do not match --q/--n/--k/--kp");
            }
            pool = subspace_pool(std::move(f), std::move(g));
        }
    } else {
        throw UsageError("search kind must be 'sets' or 'subspaces'");
    }

    SearchResult r;
    if (a.naive) {
        r = max_product_naive(pool, a.l, a.t, a.guard);
    } else {
        SearchOptions opt;
        opt.node_budget = a.node_budget;
        if (a.time_budget_ms) opt.time_budget = std::chrono::milliseconds(*a.time_budget_ms);
        opt.symmetry = a.symmetry;
        r = max_product_bb(pool, a.l, a.t, opt);
    }
    json out{{"best_product", r.best_product.str()},
             {"best_F", r.best_f},
             {"best_G", r.best_g},
             {"optimal", r.optimal},
             {"nodes_explored", r.nodes_explored},
             {"star_lower_bound", r.star_lower_bound.str()},
             {"star_in_pool", r.star_in_pool.str()},
             {"vacuous", r.vacuous},
             {"certified", certify(r, pool, a.l, a.t)},
             {"manifest", m.to_json()}};
    std::cout << out.dump(2) << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact tools for l-weakly cross t-intersecting families of sets and subspaces"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);
    unsigned workers = default_workers();
    app.add_option("--workers", workers, "Worker threads (default: $WCROSS_WORKERS or 1)")->check(CLI::Range(1U, 1024U));

    auto* count = app.add_subcommand("count", "Exact counting queries");
    std::string count_kind;
    std::vector<std::string> count_args;
    bool count_json = false;
    count->add_option("kind", count_kind,
                      "binom | gauss | spacenumber | set-profile | subspace-profile | cond-threshold | "
                      "threshold-set | threshold-subspace")
        ->required();
    count->add_option("args", count_args, "Integer arguments");
    count->add_flag("--json", count_json, "Emit a JSON report");

    auto* verify = app.add_subcommand("verify-lemmas", "Sweep the inequality lemmas over a JSON grid");
    std::string config;
    verify->add_option("config", config, "Sweep configuration file")->required();

    auto* check = app.add_subcommand("check-family", "Test the weak cross-intersection condition");
    std::string fpath, gpath;
    Int cl = 1, ct = 1;
    check->add_option("F", fpath, "Family file for F")->required();
    check->add_option("G", gpath, "Family file for G")->required();
    check->add_option("--l", cl, "Tuple size")->required()->check(CLI::PositiveNumber);
    check->add_option("--t", ct, "Intersection level")->required()->check(CLI::PositiveNumber);

    auto* sun = app.add_subcommand("sunflower", "List maximal sunflowers with a t-kernel");
    std::string spath;
    Int st = 1, su = 2;
    sun->add_option("F", spath, "Family file")->required();
    sun->add_option("--t", st, "Kernel size")->required()->check(CLI::NonNegativeNumber);
    sun->add_option("--u", su, "Minimum number of petals")->required();

    auto* search = app.add_subcommand("search", "Maximize |F||G| over a candidate pool");
    std::string search_kind;
    SearchArgs sa;
    search->add_option("kind", search_kind, "sets | subspaces")->required()->check(CLI::IsMember({"sets", "subspaces"}));
    search->add_option("--n", sa.n, "Ambient size")->required();
    search->add_option("--k", sa.k, "Size of F members")->required();
    search->add_option("--kp", sa.kp, "Size of G members")->required();
    search->add_option("--l", sa.l, "Tuple size")->required()->check(CLI::PositiveNumber);
    search->add_option("--t", sa.t, "Intersection level")->required()->check(CLI::PositiveNumber);
    search->add_option("--q", sa.q, "Field order (subspaces)");
    search->add_option("--pool", sa.pool, "Candidate file used for both sides");
    search->add_option("--pool-f", sa.pool_f, "Candidate file for F");
    search->add_option("--pool-g", sa.pool_g, "Candidate file for G");
    search->add_flag("--naive", sa.naive, "Run the exhaustive oracle");
    search->add_flag("--symmetry", sa.symmetry, "Fix {1..k} in F (full set layers only)");
    search->add_option("--node-budget", sa.node_budget, "Stop after this many nodes");
    search->add_option("--time-budget", sa.time_budget_ms, "Stop after this many milliseconds");
    search->add_option("--guard", sa.guard, "Naive oracle limit on |F pool| + |G pool|");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInput;
    }

    try {
        if (*count) return cmd_count(count_kind, count_args, count_json);
        if (*verify) return cmd_verify(config, workers);
        if (*check) return cmd_check(fpath, gpath, cl, ct);
        if (*sun) return cmd_sunflower(spath, st, su);
        if (*search) return cmd_search(search_kind, sa, workers);
    } catch (const ParseError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInput;
    } catch (const PreconditionError& e) {
        std::cerr << "precondition violated: " << e.what() << "\n";
        return kExitInput;
    } catch (const LimitError& e) {
        std::cerr << "limit exceeded: " << e.what() << "\n";
        return kExitInput;
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    }
    return kExitInput;
}
