#include "wcross/set_family.hpp"

#include <algorithm>
#include <charconv>
#include <set>
#include <sstream>

#include "wcross/errors.hpp"

namespace wcross {

SetMask make_set(const std::vector<Int>& elements) {
    SetMask s = 0;
    for (Int e : elements) {
        if (e < 1 || e > 64) throw PreconditionError("set element " + std::to_string(e) + " outside [1, 64]");
        s |= SetMask{1} << (e - 1);
    }
    return s;
}

std::vector<Int> set_elements(SetMask s) {
    std::vector<Int> out;
    while (s) {
        out.push_back(std::countr_zero(s) + 1);
        s &= s - 1;
    }
    return out;
}

std::string set_str(SetMask s) {
    std::string out;
    for (Int e : set_elements(s)) {
        if (!out.empty()) out += ',';
        out += std::to_string(e);
    }
    return out;
}

namespace {

void check_universe(Int n, Int k) {
    if (n < 0 || n > 64) throw PreconditionError("universe size n = " + std::to_string(n) + " outside [0, 64]");
    if (k < 0 || k > n) throw PreconditionError("uniformity k = " + std::to_string(k) + " outside [0, n]");
}

SetMask universe_mask(Int n) { return n == 64 ? ~SetMask{0} : (SetMask{1} << n) - 1; }

// k-subsets of the positions in `free`, each OR-ed with base, in lex order.
std::vector<SetMask> combinations(const std::vector<Int>& free, Int k, SetMask base) {
    std::vector<SetMask> out;
    std::vector<std::size_t> idx(static_cast<std::size_t>(k));
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    if (k > static_cast<Int>(free.size())) return out;
    while (true) {
        SetMask s = base;
        for (std::size_t i : idx) s |= SetMask{1} << free[i];
        out.push_back(s);
        // advance to the next combination
        std::size_t i = idx.size();
        while (i > 0 && idx[i - 1] == free.size() - idx.size() + i - 1) --i;
        if (i == 0) break;
        ++idx[i - 1];
        for (std::size_t j = i; j < idx.size(); ++j) idx[j] = idx[j - 1] + 1;
    }
    return out;
}

}  // namespace

void SetFamily::validate() const {
    check_universe(n, k);
    std::set<SetMask> seen;
    for (SetMask m : members) {
        if (m & ~universe_mask(n)) throw PreconditionError("member {" + set_str(m) + "} not inside [n]");
        if (set_size(m) != k) throw PreconditionError("member {" + set_str(m) + "} does not have size k");
        if (!seen.insert(m).second) throw PreconditionError("duplicate member {" + set_str(m) + "}");
    }
}

SetFamily set_layer(Int n, Int k, std::uint64_t cap) { return set_star(n, k, 0, cap); }

SetFamily set_star(Int n, Int k, SetMask core, std::uint64_t cap) {
    check_universe(n, k);
    if (core & ~universe_mask(n)) throw PreconditionError("core not inside [n]");
    const Int t = set_size(core);
    if (t > k) throw PreconditionError("core larger than k");
    const Nat count = binomial(n - t, k - t);
    if (count > Nat(cap)) {
        throw LimitError("C(" + std::to_string(n - t) + "," + std::to_string(k - t) + ") = " + count.str() +
                         " exceeds the cap of " + std::to_string(cap));
    }
    std::vector<Int> free;
    for (Int i = 0; i < n; ++i) {
        if (!(core >> i & 1U)) free.push_back(i);
    }
    SetFamily f{n, k, combinations(free, k - t, core)};
    // combinations() walks positions in increasing order, which is already lex
    // order on element lists; sort anyway so the contract does not depend on it.
    std::sort(f.members.begin(), f.members.end(), set_lex_less);
    return f;
}

namespace {

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

Int parse_int(std::string_view tok, std::size_t line, const char* what) {
    Int v = 0;
    const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (tok.empty() || res.ec != std::errc() || res.ptr != tok.data() + tok.size()) {
        throw ParseError(std::string("expected integer for ") + what + ", got '" + std::string(tok) + "'", line);
    }
    return v;
}

}  // namespace

SetFamily parse_set_family(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string raw;
    std::size_t line_no = 0;
    SetFamily fam;
    bool have_header = false;
    std::set<SetMask> seen;

    while (std::getline(in, raw)) {
        ++line_no;
        const std::string line = trim(raw);
        if (line.empty()) continue;
        if (!have_header) {
            std::istringstream hs(line);
            std::string a, b, extra;
            hs >> a >> b;
            if (a.rfind("n=", 0) != 0 || b.rfind("k=", 0) != 0 || (hs >> extra)) {
                throw ParseError("expected header 'n=<n> k=<k>'", line_no);
            }
            fam.n = parse_int(std::string_view(a).substr(2), line_no, "n");
            fam.k = parse_int(std::string_view(b).substr(2), line_no, "k");
            if (fam.n < 1 || fam.n > 64) throw ParseError("n must lie in [1, 64]", line_no);
            if (fam.k < 0 || fam.k > fam.n) throw ParseError("k must lie in [0, n]", line_no);
            have_header = true;
            continue;
        }
        SetMask s = 0;
        std::string_view rest(line);
        while (true) {
            const auto comma = rest.find(',');
            const std::string tok = trim(rest.substr(0, comma));
            const Int e = parse_int(tok, line_no, "element");
            if (e < 1 || e > fam.n) throw ParseError("element " + tok + " outside [1, n]", line_no);
            const SetMask bit = SetMask{1} << (e - 1);
            if (s & bit) throw ParseError("element " + tok + " repeated", line_no);
            s |= bit;
            if (comma == std::string_view::npos) break;
            rest.remove_prefix(comma + 1);
        }
        if (set_size(s) != fam.k) {
            throw ParseError("member has " + std::to_string(set_size(s)) + " elements, expected k = " +
                             std::to_string(fam.k), line_no);
        }
        if (!seen.insert(s).second) throw ParseError("duplicate member {" + set_str(s) + "}", line_no);
        fam.members.push_back(s);
    }
    if (!have_header) throw ParseError("missing header 'n=<n> k=<k>'", line_no);
    return fam;
}

std::string format_set_family(const SetFamily& family) {
    std::string out = "n=" + std::to_string(family.n) + " k=" + std::to_string(family.k) + "\n";
    for (SetMask m : family.members) out += set_str(m) + "\n";
    return out;
}

}  // namespace wcross
