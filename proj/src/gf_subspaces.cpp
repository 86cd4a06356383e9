#include "wcross/gf_subspaces.hpp"

#include <algorithm>
#include <charconv>
#include <functional>
#include <set>
#include <sstream>

#include "wcross/errors.hpp"

namespace wcross {

bool is_prime(Int q) {
    if (q < 2) return false;
    for (Int d = 2; d * d <= q; ++d) {
        if (q % d == 0) return false;
    }
    return true;
}

PrimeField::PrimeField(Int q) {
    if (!is_prime(q) || q >= (Int{1} << 16)) {
        throw PreconditionError("field order must be a prime below 65536 (q = " + std::to_string(q) +
                                "); prime powers are not supported");
    }
    q_ = static_cast<Elem>(q);
    inverse_.assign(q_, 0);
    for (Elem a = 1; a < q_; ++a) {
        // Fermat: a^{q-2}
        std::uint64_t r = 1;
        std::uint64_t base = a;
        for (Elem e = q_ - 2; e; e >>= 1) {
            if (e & 1U) r = r * base % q_;
            base = base * base % q_;
        }
        inverse_[a] = static_cast<Elem>(r);
    }
}

Elem PrimeField::inv(Elem a) const {
    if (a == 0 || a >= q_) throw std::domain_error("PrimeField: no inverse");
    return inverse_[a];
}

namespace {

void check_entries(const Matrix& m, Int q, std::size_t width) {
    for (const auto& row : m) {
        if (row.size() != width) throw PreconditionError("matrix rows have different lengths");
        for (Elem e : row) {
            if (static_cast<Int>(e) >= q) throw PreconditionError("matrix entry out of range [0, q)");
        }
    }
}

// In-place Gauss-Jordan elimination. Returns the pivot columns.
std::vector<Int> eliminate(Matrix& m, const PrimeField& f, std::size_t width) {
    std::vector<Int> pivots;
    std::size_t lead = 0;
    for (std::size_t col = 0; col < width && lead < m.size(); ++col) {
        std::size_t sel = lead;
        while (sel < m.size() && m[sel][col] == 0) ++sel;
        if (sel == m.size()) continue;
        std::swap(m[sel], m[lead]);
        const Elem scale = f.inv(m[lead][col]);
        for (auto& e : m[lead]) e = f.mul(e, scale);
        for (std::size_t r = 0; r < m.size(); ++r) {
            if (r == lead || m[r][col] == 0) continue;
            const Elem factor = m[r][col];
            for (std::size_t c = col; c < width; ++c) m[r][c] = f.sub(m[r][c], f.mul(factor, m[lead][c]));
        }
        pivots.push_back(static_cast<Int>(col));
        ++lead;
    }
    m.resize(lead);
    return pivots;
}

// Basis of {x in F_q^width : a . x = 0 for every row a of m}.
Matrix null_space(const Matrix& m, const PrimeField& f, std::size_t width) {
    Matrix r = m;
    const std::vector<Int> pivots = eliminate(r, f, width);
    std::vector<bool> is_pivot(width, false);
    for (Int p : pivots) is_pivot[static_cast<std::size_t>(p)] = true;
    Matrix out;
    for (std::size_t free = 0; free < width; ++free) {
        if (is_pivot[free]) continue;
        Row v(width, 0);
        v[free] = 1;
        for (std::size_t i = 0; i < pivots.size(); ++i) v[static_cast<std::size_t>(pivots[i])] = f.sub(0, r[i][free]);
        out.push_back(std::move(v));
    }
    return out;
}

Matrix stack(const Matrix& a, const Matrix& b) {
    Matrix out = a;
    out.insert(out.end(), b.begin(), b.end());
    return out;
}

void require_compatible(const Subspace& u, const Subspace& w) {
    if (u.q() != w.q() || u.ambient_dim() != w.ambient_dim()) {
        throw PreconditionError("subspaces live in different ambient spaces (q=" + std::to_string(u.q()) +
                                ", n=" + std::to_string(u.ambient_dim()) + " vs q=" + std::to_string(w.q()) +
                                ", n=" + std::to_string(w.ambient_dim()) + ")");
    }
}

// Row vector times matrix.
Row times(std::span<const Elem> x, const Matrix& basis, const PrimeField& f, std::size_t width) {
    Row v(width, 0);
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] == 0) continue;
        for (std::size_t c = 0; c < width; ++c) v[c] = f.add(v[c], f.mul(x[i], basis[i][c]));
    }
    return v;
}

}  // namespace

Matrix rref(const Matrix& m, Int q) {
    const PrimeField f(q);
    if (m.empty()) return {};
    const std::size_t width = m.front().size();
    check_entries(m, q, width);
    Matrix r = m;
    eliminate(r, f, width);
    return r;
}

Int rank(const Matrix& m, Int q) { return static_cast<Int>(rref(m, q).size()); }

// ---------------------------------------------------------------------------
// Subspace

Subspace Subspace::span(Int q, Int n, const Matrix& rows) {
    if (n < 0) throw PreconditionError("negative ambient dimension");
    for (const auto& r : rows) {
        if (static_cast<Int>(r.size()) != n) throw PreconditionError("row length differs from ambient dimension");
    }
    const PrimeField f(q);
    check_entries(rows, q, static_cast<std::size_t>(n));
    Matrix r = rows;
    eliminate(r, f, static_cast<std::size_t>(n));
    return Subspace(q, n, std::move(r));
}

Subspace Subspace::zero(Int q, Int n) { return span(q, n, {}); }

Subspace Subspace::coordinate(Int q, Int n, const std::vector<Int>& coords) {
    Matrix rows;
    for (Int c : coords) {
        if (c < 0 || c >= n) throw PreconditionError("coordinate index out of range");
        Row r(static_cast<std::size_t>(n), 0);
        r[static_cast<std::size_t>(c)] = 1;
        rows.push_back(std::move(r));
    }
    return span(q, n, rows);
}

std::vector<Int> Subspace::pivots() const {
    std::vector<Int> out;
    for (const auto& row : basis_) {
        const auto it = std::find_if(row.begin(), row.end(), [](Elem e) { return e != 0; });
        out.push_back(static_cast<Int>(it - row.begin()));
    }
    return out;
}

bool Subspace::contains_vector(std::span<const Elem> v) const {
    if (static_cast<Int>(v.size()) != n_) throw PreconditionError("vector length differs from ambient dimension");
    // In RREF the coefficients of v are its entries at the pivot columns.
    const PrimeField f(q_);
    Row residual(v.begin(), v.end());
    const std::vector<Int> piv = pivots();
    for (std::size_t i = 0; i < basis_.size(); ++i) {
        const Elem c = residual[static_cast<std::size_t>(piv[i])];
        if (c == 0) continue;
        for (std::size_t j = 0; j < residual.size(); ++j) residual[j] = f.sub(residual[j], f.mul(c, basis_[i][j]));
    }
    return std::all_of(residual.begin(), residual.end(), [](Elem e) { return e == 0; });
}

std::strong_ordering operator<=>(const Subspace& a, const Subspace& b) {
    if (auto c = a.q_ <=> b.q_; c != 0) return c;
    if (auto c = a.n_ <=> b.n_; c != 0) return c;
    if (auto c = a.dim() <=> b.dim(); c != 0) return c;
    return a.basis_ <=> b.basis_;
}

std::string Subspace::str() const {
    std::string out;
    for (std::size_t i = 0; i < basis_.size(); ++i) {
        if (i) out += ';';
        for (std::size_t j = 0; j < basis_[i].size(); ++j) {
            if (j) out += ' ';
            out += std::to_string(basis_[i][j]);
        }
    }
    return out;
}

std::size_t SubspaceHash::operator()(const Subspace& s) const {
    std::size_t h = std::hash<Int>{}(s.q() * 1315423911 + s.ambient_dim());
    for (const auto& row : s.basis()) {
        for (Elem e : row) h = h * 1099511628211ULL ^ e;
    }
    return h;
}

void SubspaceFamily::validate() const {
    std::set<Subspace> seen;
    for (const auto& m : members) {
        if (m.q() != q || m.ambient_dim() != n) throw PreconditionError("family member in a different ambient space");
        if (m.dim() != k) {
            throw PreconditionError("family is not uniform: member of dimension " + std::to_string(m.dim()) +
                                    " in a family of dimension " + std::to_string(k));
        }
        if (!seen.insert(m).second) throw PreconditionError("duplicate family member " + m.str());
    }
}

// ---------------------------------------------------------------------------
// Enumeration

SubspaceFamily enumerate_subspaces(Int n, Int k, Int q, std::uint64_t cap) {
    const PrimeField f(q);
    if (n < 0 || k < 0 || k > n) throw PreconditionError("enumerate_subspaces: need 0 <= k <= n");
    const Nat count = gaussian_binomial(n, k, q);
    if (count > Nat(cap)) {
        throw LimitError("enumerate_subspaces: [" + std::to_string(n) + "," + std::to_string(k) + "]_" +
                         std::to_string(q) + " = " + count.str() + " exceeds the cap of " + std::to_string(cap));
    }
    SubspaceFamily fam{q, n, k, {}};
    fam.members.reserve(count.to_u64());
    const auto width = static_cast<std::size_t>(n);

    // Walk pivot sets; for each, walk every assignment of the free entries.
    std::vector<Int> piv(static_cast<std::size_t>(k));
    std::function<void(Int, Int)> choose = [&](Int idx, Int start) {
        if (idx == k) {
            std::vector<bool> is_pivot(width, false);
            for (Int p : piv) is_pivot[static_cast<std::size_t>(p)] = true;
            std::vector<std::pair<std::size_t, std::size_t>> free;  // (row, col)
            for (std::size_t i = 0; i < piv.size(); ++i) {
                for (std::size_t c = static_cast<std::size_t>(piv[i]) + 1; c < width; ++c) {
                    if (!is_pivot[c]) free.emplace_back(i, c);
                }
            }
            Matrix m(piv.size(), Row(width, 0));
            for (std::size_t i = 0; i < piv.size(); ++i) m[i][static_cast<std::size_t>(piv[i])] = 1;
            // Odometer over q^{|free|} assignments.
            while (true) {
                fam.members.push_back(Subspace::span(q, n, m));
                std::size_t pos = 0;
                while (pos < free.size()) {
                    auto& e = m[free[pos].first][free[pos].second];
                    e = (e + 1) % f.order();
                    if (e != 0) break;
                    ++pos;
                }
                if (pos == free.size()) break;
            }
            return;
        }
        for (Int p = start; p <= n - (k - idx); ++p) {
            piv[static_cast<std::size_t>(idx)] = p;
            choose(idx + 1, p + 1);
        }
    };
    choose(0, 0);
    std::sort(fam.members.begin(), fam.members.end());
    return fam;
}

Int dim_intersection(const Subspace& u, const Subspace& w) {
    require_compatible(u, w);
    return u.dim() + w.dim() - rank(stack(u.basis(), w.basis()), u.q());
}

Subspace sum_subspace(const Subspace& u, const Subspace& w) {
    require_compatible(u, w);
    return Subspace::span(u.q(), u.ambient_dim(), stack(u.basis(), w.basis()));
}

Subspace intersect(const Subspace& u, const Subspace& w) {
    require_compatible(u, w);
    const PrimeField f(u.q());
    const auto width = static_cast<std::size_t>(u.ambient_dim());
    // U ∩ W = (U^⊥ + W^⊥)^⊥ for the standard bilinear form.
    const Matrix perp = stack(null_space(u.basis(), f, width), null_space(w.basis(), f, width));
    return Subspace::span(u.q(), u.ambient_dim(), null_space(perp, f, width));
}

bool contains(const Subspace& u, const Subspace& w) { return dim_intersection(u, w) == w.dim(); }

SubspaceFamily build_star(Int n, Int k, Int q, const Subspace& t_core, std::uint64_t cap) {
    if (t_core.q() != q || t_core.ambient_dim() != n) throw PreconditionError("build_star: core lives in another space");
    const Int t = t_core.dim();
    if (k < t || k > n) throw PreconditionError("build_star: need dim T <= k <= n");

    // Subspaces containing T correspond to subspaces of a complement of T;
    // the non-pivot coordinates of T's RREF span one.
    const std::vector<Int> piv = t_core.pivots();
    std::vector<Int> complement;
    for (Int c = 0; c < n; ++c) {
        if (std::find(piv.begin(), piv.end(), c) == piv.end()) complement.push_back(c);
    }
    const SubspaceFamily quotient = enumerate_subspaces(n - t, k - t, q, cap);
    SubspaceFamily star{q, n, k, {}};
    star.members.reserve(quotient.size());
    for (const auto& s : quotient.members) {
        Matrix rows = t_core.basis();
        for (const auto& r : s.basis()) {
            Row full(static_cast<std::size_t>(n), 0);
            for (std::size_t j = 0; j < complement.size(); ++j) full[static_cast<std::size_t>(complement[j])] = r[j];
            rows.push_back(std::move(full));
        }
        star.members.push_back(Subspace::span(q, n, rows));
    }
    std::sort(star.members.begin(), star.members.end());
    return star;
}

std::vector<Subspace> subspaces_within(const Subspace& u, Int d) {
    const PrimeField f(u.q());
    const SubspaceFamily coeffs = enumerate_subspaces(u.dim(), d, u.q());
    const auto width = static_cast<std::size_t>(u.ambient_dim());
    std::vector<Subspace> out;
    out.reserve(coeffs.size());
    for (const auto& c : coeffs.members) {
        Matrix rows;
        for (const auto& x : c.basis()) rows.push_back(times(x, u.basis(), f, width));
        out.push_back(Subspace::span(u.q(), u.ambient_dim(), rows));
    }
    std::sort(out.begin(), out.end());
    return out;
}

Subspace transform(const Subspace& s, const Matrix& g) {
    const PrimeField f(s.q());
    const auto width = static_cast<std::size_t>(s.ambient_dim());
    if (g.size() != width) throw PreconditionError("transform: matrix size differs from ambient dimension");
    check_entries(g, s.q(), width);
    if (rank(g, s.q()) != s.ambient_dim()) throw PreconditionError("transform: matrix is singular");
    Matrix rows;
    for (const auto& r : s.basis()) rows.push_back(times(r, g, f, width));
    return Subspace::span(s.q(), s.ambient_dim(), rows);
}

// ---------------------------------------------------------------------------
// File format

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
    if (res.ec != std::errc() || res.ptr != tok.data() + tok.size()) {
        throw ParseError(std::string("expected integer for ") + what + ", got '" + std::string(tok) + "'", line);
    }
    return v;
}

}  // namespace

SubspaceFamily parse_subspace_family(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string raw;
    std::size_t line_no = 0;

    Int q = 0;
    Int n = -1;
    while (std::getline(in, raw)) {
        ++line_no;
        const std::string line = trim(raw);
        if (line.empty()) continue;
        std::istringstream hs(line);
        std::string a, b, extra;
        hs >> a >> b;
        if (a.rfind("q=", 0) != 0 || b.rfind("n=", 0) != 0 || (hs >> extra)) {
            throw ParseError("expected header 'q=<q> n=<n>'", line_no);
        }
        q = parse_int(std::string_view(a).substr(2), line_no, "q");
        n = parse_int(std::string_view(b).substr(2), line_no, "n");
        if (!is_prime(q)) throw ParseError("q must be prime (got " + std::to_string(q) + ")", line_no);
        if (n < 1) throw ParseError("n must be positive", line_no);
        break;
    }
    if (n < 0) throw ParseError("missing header 'q=<q> n=<n>'", line_no);

    SubspaceFamily fam{q, n, -1, {}};
    std::set<Subspace> seen;
    Matrix block;
    std::size_t block_start = 0;
    auto flush = [&]() {
        if (block.empty()) return;
        Subspace s = Subspace::span(q, n, block);
        if (s.dim() != static_cast<Int>(block.size())) {
            throw ParseError("rows of this block are linearly dependent", block_start);
        }
        if (fam.k < 0) fam.k = s.dim();
        if (s.dim() != fam.k) {
            throw ParseError("block has dimension " + std::to_string(s.dim()) + ", expected " + std::to_string(fam.k),
                             block_start);
        }
        if (!seen.insert(s).second) throw ParseError("duplicate subspace", block_start);
        fam.members.push_back(std::move(s));
        block.clear();
    };
    while (std::getline(in, raw)) {
        ++line_no;
        const std::string line = trim(raw);
        if (line.empty()) {
            flush();
            continue;
        }
        if (block.empty()) block_start = line_no;
        std::istringstream rs(line);
        std::string tok;
        Row row;
        while (rs >> tok) {
            const Int v = parse_int(tok, line_no, "matrix entry");
            if (v < 0 || v >= q) throw ParseError("entry " + tok + " not in [0, q)", line_no);
            row.push_back(static_cast<Elem>(v));
        }
        if (static_cast<Int>(row.size()) != n) {
            throw ParseError("row has " + std::to_string(row.size()) + " entries, expected n = " + std::to_string(n),
                             line_no);
        }
        block.push_back(std::move(row));
    }
    flush();
    if (fam.k < 0) fam.k = 0;
    return fam;
}

std::string format_subspace_family(const SubspaceFamily& family) {
    std::ostringstream out;
    out << "q=" << family.q << " n=" << family.n << "\n";
    for (std::size_t i = 0; i < family.members.size(); ++i) {
        out << "\n";
        for (const auto& row : family.members[i].basis()) {
            for (std::size_t j = 0; j < row.size(); ++j) out << (j ? " " : "") << row[j];
            out << "\n";
        }
    }
    return out.str();
}

}  // namespace wcross
