#include "pbnest/persistence.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_map>

namespace pbnest {

void PersistenceDiagram::add(int degree, double birth, double death) {
    if (degree < 0) throw ValidationError("negative degree");
    if (!(birth <= death)) throw ValidationError("birth after death");
    if (birth == death) return;
    if (static_cast<std::size_t>(degree) >= pairs_.size()) pairs_.resize(degree + 1);
    pairs_[degree].push_back({birth, death});
}

const std::vector<PersistencePair>& PersistenceDiagram::pairs(int degree) const {
    static const std::vector<PersistencePair> none;
    if (degree < 0 || static_cast<std::size_t>(degree) >= pairs_.size()) return none;
    return pairs_[degree];
}

std::size_t PersistenceDiagram::essential_count(int degree) const {
    const auto& P = pairs(degree);
    return static_cast<std::size_t>(std::count_if(P.begin(), P.end(), [](const auto& p) { return p.essential(); }));
}

bool PersistenceDiagram::empty() const noexcept {
    for (const auto& P : pairs_)
        if (!P.empty()) return false;
    return true;
}

void PersistenceDiagram::normalize() {
    for (auto& P : pairs_)
        std::sort(P.begin(), P.end(), [](const auto& a, const auto& b) {
            return a.birth != b.birth ? a.birth < b.birth : a.death < b.death;
        });
    while (!pairs_.empty() && pairs_.back().empty()) pairs_.pop_back();
}

namespace {

using Column = std::vector<std::uint32_t>;  // sorted ascending; the pivot is the last entry

void add_into(Column& target, const Column& source) {
    Column out;
    out.reserve(target.size() + source.size());
    std::size_t i = 0, j = 0;
    while (i < target.size() || j < source.size()) {
        if (j == source.size() || (i < target.size() && target[i] < source[j])) out.push_back(target[i++]);
        else if (i == target.size() || source[j] < target[i]) out.push_back(source[j++]);
        else ++i, ++j;
    }
    target.swap(out);
}

std::vector<std::size_t> facets(const SimplicialComplex& K, const Simplex& s) {
    std::vector<std::size_t> out;
    if (s.size() < 2) return out;
    for (std::size_t drop = 0; drop < s.size(); ++drop) {
        Simplex f;
        f.reserve(s.size() - 1);
        for (std::size_t k = 0; k < s.size(); ++k)
            if (k != drop) f.push_back(s[k]);
        out.push_back(*K.index_of(f));
    }
    return out;
}

}  // namespace

PersistenceDiagram reduce(const FilteredComplex& F) {
    if (F.n != 1) throw ValidationError("reduce needs a one-parameter filtration");
    F.validate();
    const auto& S = F.complex.simplices();
    const std::size_t N = S.size();
    for (const auto& v : F.values)
        if (std::isnan(v[0])) throw ValidationError("invalid filtration");

    // canonical order: value, then dimension and lexicographic (the complex's own order)
    std::vector<std::uint32_t> order(N);
    std::iota(order.begin(), order.end(), 0u);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::uint32_t a, std::uint32_t b) { return F.values[a][0] < F.values[b][0]; });
    std::vector<std::uint32_t> pos(N);
    for (std::uint32_t k = 0; k < N; ++k) pos[order[k]] = k;

    std::vector<Column> cols(N);
    for (std::uint32_t k = 0; k < N; ++k) {
        for (auto f : facets(F.complex, S[order[k]])) cols[k].push_back(pos[f]);
        std::sort(cols[k].begin(), cols[k].end());
    }

    PersistenceDiagram D;
    std::vector<std::int64_t> pivot_owner(N, -1);
    std::vector<char> paired(N, 0);
    for (std::uint32_t k = 0; k < N; ++k) {
        Column& c = cols[k];
        while (!c.empty() && pivot_owner[c.back()] != -1) add_into(c, cols[pivot_owner[c.back()]]);
        if (c.empty()) continue;
        std::uint32_t low = c.back();
        pivot_owner[low] = k;
        paired[low] = paired[k] = 1;
        int deg = static_cast<int>(S[order[low]].size()) - 1;
        D.add(deg, F.values[order[low]][0], F.values[order[k]][0]);
    }
    for (std::uint32_t k = 0; k < N; ++k) {
        if (paired[k]) continue;
        D.add(static_cast<int>(S[order[k]].size()) - 1, F.values[order[k]][0], kInf);
    }
    D.normalize();
    return D;
}

int pbn_query_1d(const PersistenceDiagram& D, int degree, double u, double v) {
    if (!(u < v)) throw ValidationError("not in Δ⁺");
    int count = 0;
    for (const auto& p : D.pairs(degree))
        if (p.birth <= u && p.death > v) ++count;
    return count;
}

namespace {

// Vectors over Z/2 packed in 64-bit words.
struct Bits {
    std::vector<std::uint64_t> w;
    explicit Bits(std::size_t n = 0) : w((n + 63) / 64, 0) {}
    void flip(std::size_t i) { w[i / 64] ^= std::uint64_t(1) << (i % 64); }
    void xor_with(const Bits& o) {
        for (std::size_t k = 0; k < w.size(); ++k) w[k] ^= o.w[k];
    }
    // highest set bit, or -1
    std::int64_t top() const {
        for (std::size_t k = w.size(); k-- > 0;)
            if (w[k]) return static_cast<std::int64_t>(k * 64 + 63 - __builtin_clzll(w[k]));
        return -1;
    }
};

// Echelon basis keyed by leading bit.
struct XorBasis {
    std::unordered_map<std::int64_t, Bits> rows;
    // Reduces v in place; returns true when v was independent and got stored.
    bool insert(Bits v, std::int64_t floor = 0, Bits* residue = nullptr) {
        for (;;) {
            std::int64_t t = v.top();
            if (t < floor) {
                if (residue) *residue = std::move(v);
                return false;
            }
            auto it = rows.find(t);
            if (it == rows.end()) {
                rows.emplace(t, std::move(v));
                return true;
            }
            v.xor_with(it->second);
        }
    }
    std::size_t rank() const { return rows.size(); }
};

bool leq(const Vec& a, const Vec& b) {
    for (std::size_t j = 0; j < a.size(); ++j)
        if (a[j] > b[j]) return false;
    return true;
}

}  // namespace

int pbn_query_multi(const FilteredComplex& F, int degree, const Vec& u, const Vec& v) {
    if (u.size() != F.n || v.size() != F.n) throw ValidationError("query has wrong number of components");
    for (std::size_t j = 0; j < F.n; ++j)
        if (!(u[j] < v[j])) throw ValidationError("not in Δ⁺");
    if (degree < 0) return 0;
    const auto& S = F.complex.simplices();
    const std::size_t d = static_cast<std::size_t>(degree);

    // i-simplices of K_v, indexed locally; those of K_u are a subset
    std::vector<std::size_t> cells, lower, upper;
    std::unordered_map<std::size_t, std::size_t> cell_at, lower_at;
    for (std::size_t k = 0; k < S.size(); ++k) {
        if (!leq(F.values[k], v)) continue;
        if (S[k].size() == d + 1) cell_at[k] = cells.size(), cells.push_back(k);
        else if (S[k].size() == d) lower_at[k] = lower.size(), lower.push_back(k);
        else if (S[k].size() == d + 2) upper.push_back(k);
    }
    std::vector<std::size_t> in_u;
    for (std::size_t c = 0; c < cells.size(); ++c)
        if (leq(F.values[cells[c]], u)) in_u.push_back(c);
    if (in_u.empty()) return 0;

    // cycles of K_u: columns [track | boundary] with the boundary in the high bits
    const std::size_t nt = in_u.size();
    std::vector<Bits> cycles;
    if (d == 0) {
        for (std::size_t c : in_u) {
            Bits z(cells.size());
            z.flip(c);
            cycles.push_back(std::move(z));
        }
    } else {
        XorBasis B;
        for (std::size_t t = 0; t < nt; ++t) {
            Bits col(nt + lower.size());
            col.flip(t);
            for (auto f : facets(F.complex, S[cells[in_u[t]]])) col.flip(nt + lower_at.at(f));
            Bits residue;
            if (!B.insert(std::move(col), static_cast<std::int64_t>(nt), &residue)) {
                Bits z(cells.size());
                for (std::size_t s = 0; s < nt; ++s)
                    if (residue.w[s / 64] >> (s % 64) & 1) z.flip(in_u[s]);
                cycles.push_back(std::move(z));
            }
        }
    }

    XorBasis span;
    for (std::size_t k : upper) {
        Bits b(cells.size());
        for (auto f : facets(F.complex, S[k])) b.flip(cell_at.at(f));
        span.insert(std::move(b));
    }
    int rank = 0;
    for (auto& z : cycles)
        if (span.insert(std::move(z))) ++rank;
    return rank;
}

std::vector<Segment> discontinuity_set(const PersistenceDiagram& D, int degree) {
    std::vector<Segment> out;
    for (const auto& p : D.pairs(degree)) {
        Segment vert{Segment::Orientation::Vertical, p.birth, p.birth, p.death, false, !p.essential()};
        out.push_back(vert);
        if (!p.essential()) out.push_back({Segment::Orientation::Horizontal, p.death, p.birth, p.death, true, false});
    }
    out.push_back({Segment::Orientation::Diagonal, 0.0, -kInf, kInf, false, false});
    return out;
}

std::vector<int> betti_numbers(const SimplicialComplex& K) {
    const int top = K.dimension();
    if (top < 0) return {};
    std::vector<std::size_t> count(top + 2, 0), rank(top + 2, 0);
    std::vector<std::size_t> local(K.size());
    for (std::size_t k = 0; k < K.size(); ++k) local[k] = count[K.simplices()[k].size() - 1]++;
    for (int d = 1; d <= top; ++d) {
        XorBasis B;
        for (std::size_t k = 0; k < K.size(); ++k) {
            const auto& s = K.simplices()[k];
            if (static_cast<int>(s.size()) != d + 1) continue;
            Bits b(count[d - 1]);
            for (auto f : facets(K, s)) b.flip(local[f]);
            B.insert(std::move(b));
        }
        rank[d] = B.rank();
    }
    std::vector<int> betti(top + 1);
    for (int d = 0; d <= top; ++d) betti[d] = static_cast<int>(count[d] - rank[d] - rank[d + 1]);
    return betti;
}

}  // namespace pbnest
