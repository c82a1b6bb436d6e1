#include "gcw/strata.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>

#include "gcw/errors.hpp"

namespace gcw::strata {

namespace {

using Mask = std::uint32_t;

Mask to_mask(const IndexSet& s)
{
    Mask m = 0;
    for (int i : s) m |= Mask{1} << i;
    return m;
}

IndexSet from_mask(Mask m)
{
    IndexSet s;
    for (; m; m &= m - 1) s.push_back(std::countr_zero(m));
    return s;
}

bool compatible(Mask a, Mask b)
{
    const Mask both = a & b;
    return both == 0 || both == a || both == b;
}

void validate_subset(int n, const IndexSet& s)
{
    if (!std::is_sorted(s.begin(), s.end()) || std::adjacent_find(s.begin(), s.end()) != s.end())
        throw std::invalid_argument("index set must be sorted without repeats");
    if (!s.empty() && (s.front() < 0 || s.back() > n)) throw std::invalid_argument("index out of range");
}

QuotientSet from_blocks(std::vector<IndexSet> blocks)
{
    for (auto& b : blocks) std::sort(b.begin(), b.end());
    std::sort(blocks.begin(), blocks.end(), [](const IndexSet& x, const IndexSet& y) { return x.front() < y.front(); });
    return QuotientSet{std::move(blocks)};
}

} // namespace

std::size_t QuotientSet::block_of(int i) const
{
    for (std::size_t b = 0; b < blocks.size(); ++b)
        if (std::binary_search(blocks[b].begin(), blocks[b].end(), i)) return b;
    throw std::out_of_range("element not in quotient ground set");
}

bool is_nested(const std::vector<IndexSet>& sets)
{
    for (std::size_t i = 0; i < sets.size(); ++i) {
        if (sets[i].size() < 2) return false;
        for (std::size_t j = i + 1; j < sets.size(); ++j) {
            const Mask a = to_mask(sets[i]), b = to_mask(sets[j]);
            if (a == b || !compatible(a, b)) return false;
        }
    }
    return true;
}

bool is_disjoint_collection(const std::vector<IndexSet>& sets)
{
    Mask seen = 0;
    for (const auto& s : sets) {
        if (s.size() < 2) return false;
        const Mask m = to_mask(s);
        if (seen & m) return false;
        seen |= m;
    }
    return true;
}

std::vector<NestedFamily> enumerate_nested(int n, int max_size, std::size_t cap)
{
    if (n > kMaxNestedN) throw ResourceLimitError("enumerate_nested supports n <= 8");
    if (n < 1 || max_size < 1) return {};
    std::vector<IndexSet> subsets;
    for (Mask m = 0; m < (Mask{1} << (n + 1)); ++m)
        if (std::popcount(m) >= 2) subsets.push_back(from_mask(m));
    std::sort(subsets.begin(), subsets.end());
    std::vector<Mask> masks;
    for (const auto& s : subsets) masks.push_back(to_mask(s));

    std::vector<NestedFamily> out;
    std::vector<std::size_t> chosen;
    std::function<void(std::size_t)> extend = [&](std::size_t start) {
        for (std::size_t i = start; i < masks.size(); ++i) {
            bool ok = std::all_of(chosen.begin(), chosen.end(), [&](std::size_t c) { return compatible(masks[c], masks[i]); });
            if (!ok) continue;
            chosen.push_back(i);
            NestedFamily f;
            for (std::size_t c : chosen) f.sets.push_back(subsets[c]);
            out.push_back(std::move(f));
            if (out.size() > cap) throw ResourceLimitError("nested family enumeration exceeded its cap");
            if (static_cast<int>(chosen.size()) < max_size) extend(i + 1);
            chosen.pop_back();
        }
    };
    extend(0);
    std::sort(out.begin(), out.end(), [](const NestedFamily& a, const NestedFamily& b) {
        return a.size() != b.size() ? a.size() < b.size() : a.sets < b.sets;
    });
    return out;
}

FacePoset face_poset(int n, int max_size, bool with_containments, int fiber_dim, int base_dim)
{
    FacePoset poset;
    poset.n = n;
    poset.nodes.push_back(NestedFamily{});
    for (auto& f : enumerate_nested(n, max_size)) poset.nodes.push_back(std::move(f));
    std::map<NestedFamily, std::size_t> index;
    for (std::size_t i = 0; i < poset.nodes.size(); ++i) {
        index.emplace(poset.nodes[i], i);
        poset.dims.push_back(StratumLabel{n, poset.nodes[i], fiber_dim, base_dim}.dimension());
    }

    std::vector<IndexSet> subsets;
    for (Mask m = 0; m < (Mask{1} << (n + 1)); ++m)
        if (std::popcount(m) >= 2) subsets.push_back(from_mask(m));

    for (std::size_t i = 0; i < poset.nodes.size(); ++i) {
        const auto& f = poset.nodes[i];
        if (static_cast<int>(f.size()) >= max_size) continue;
        for (const auto& s : subsets) {
            if (std::binary_search(f.sets.begin(), f.sets.end(), s)) continue;
            NestedFamily g = f;
            g.sets.insert(std::upper_bound(g.sets.begin(), g.sets.end(), s), s);
            if (!is_nested(g.sets)) continue;
            poset.covers.emplace_back(i, index.at(g));
        }
    }
    std::sort(poset.covers.begin(), poset.covers.end());

    if (with_containments) {
        for (std::size_t j = 0; j < poset.nodes.size(); ++j) {
            const auto& g = poset.nodes[j];
            const std::size_t k = g.size();
            for (std::uint64_t pick = 0; pick + 1 < (std::uint64_t{1} << k); ++pick) {
                NestedFamily f;
                for (std::size_t b = 0; b < k; ++b)
                    if ((pick >> b) & 1u) f.sets.push_back(g.sets[b]);
                poset.containments.emplace_back(index.at(f), j);
            }
        }
        std::sort(poset.containments.begin(), poset.containments.end());
    }
    return poset;
}

std::vector<NestedFamily> face_closure(const NestedFamily& family, int n, int max_size)
{
    std::vector<NestedFamily> out;
    if (family.size() == 0) out.push_back(family);
    for (auto& g : enumerate_nested(n, max_size))
        if (std::includes(g.sets.begin(), g.sets.end(), family.sets.begin(), family.sets.end())) out.push_back(std::move(g));
    return out;
}

std::optional<NestedFamily> face_intersection(const NestedFamily& a, const NestedFamily& b)
{
    NestedFamily u;
    std::set_union(a.sets.begin(), a.sets.end(), b.sets.begin(), b.sets.end(), std::back_inserter(u.sets));
    if (!is_nested(u.sets)) return std::nullopt;
    return u;
}

QuotientSet quotient(int n, const IndexSet& subset)
{
    if (subset.size() < 2) throw std::invalid_argument("collapsed subset needs at least 2 elements");
    return quotient(n, DisjointCollection{{subset}});
}

QuotientSet quotient(int n, const DisjointCollection& collection)
{
    for (const auto& s : collection.sets) validate_subset(n, s);
    if (!is_disjoint_collection(collection.sets)) throw std::invalid_argument("not a disjoint collection");
    std::vector<IndexSet> blocks = collection.sets;
    Mask covered = 0;
    for (const auto& s : collection.sets) covered |= to_mask(s);
    for (int i = 0; i <= n; ++i)
        if (!((covered >> i) & 1u)) blocks.push_back({i});
    return from_blocks(std::move(blocks));
}

QuotientSet collapse_blocks(const QuotientSet& q, const std::vector<std::size_t>& block_indices)
{
    std::vector<char> merge(q.size(), 0);
    for (std::size_t b : block_indices) {
        if (b >= q.size()) throw std::invalid_argument("block index out of range");
        merge[b] = 1;
    }
    std::vector<IndexSet> blocks;
    IndexSet merged;
    for (std::size_t b = 0; b < q.size(); ++b) {
        if (merge[b])
            merged.insert(merged.end(), q.blocks[b].begin(), q.blocks[b].end());
        else
            blocks.push_back(q.blocks[b]);
    }
    if (!merged.empty()) blocks.push_back(std::move(merged));
    return from_blocks(std::move(blocks));
}

DisjointCollection s_dot_a(int n, const DisjointCollection& collection, const std::vector<std::size_t>& block_indices)
{
    const QuotientSet q = quotient(n, collection);
    std::set<std::size_t> distinct(block_indices.begin(), block_indices.end());
    if (distinct.size() != block_indices.size() || distinct.size() < 2 || *distinct.rbegin() >= q.size())
        throw std::invalid_argument("A must list at least two distinct blocks of n/S");
    const QuotientSet collapsed = collapse_blocks(q, block_indices);
    DisjointCollection out;
    for (const auto& b : collapsed.blocks)
        if (b.size() >= 2) out.sets.push_back(b);
    std::sort(out.sets.begin(), out.sets.end());
    return out;
}

std::vector<std::size_t> image_blocks(const QuotientSet& q, const IndexSet& subset)
{
    std::set<std::size_t> out;
    for (int i : subset) out.insert(q.block_of(i));
    return {out.begin(), out.end()};
}

bool codim2_consistency(int n, const IndexSet& a, const IndexSet& d)
{
    validate_subset(n, a);
    validate_subset(n, d);
    if (a.size() < 2 || d.size() < 2) throw std::invalid_argument("codim-2 faces need |A|, |D| >= 2");
    const Mask ma = to_mask(a), md = to_mask(d);
    const bool disjoint = (ma & md) == 0;
    const bool inside = (ma & md) == ma && ma != md;
    if (!disjoint && !inside) throw std::invalid_argument("A and D must be disjoint or A strictly inside D");

    NestedFamily label;
    label.sets = {a, d};
    std::sort(label.sets.begin(), label.sets.end());
    if (!is_nested(label.sets)) return false;

    if (disjoint) {
        // D first, then the image of A; and the other way round.
        const QuotientSet by_d = quotient(n, d), by_a = quotient(n, a);
        const auto a_img = image_blocks(by_d, a), d_img = image_blocks(by_a, d);
        const DisjointCollection via_d = s_dot_a(n, DisjointCollection{{d}}, a_img);
        const DisjointCollection via_a = s_dot_a(n, DisjointCollection{{a}}, d_img);
        const DisjointCollection both{label.sets};
        const QuotientSet target = quotient(n, both);
        return via_d == both && via_a == both && collapse_blocks(by_d, a_img) == target &&
               collapse_blocks(by_a, d_img) == target && quotient(n, via_d) == target;
    }

    // A inside D: collapsing D directly versus collapsing A and then D/A.
    const QuotientSet by_d = quotient(n, d), by_a = quotient(n, a);
    const auto d_over_a = image_blocks(by_a, d);
    if (d_over_a.size() != d.size() - a.size() + 1 || d_over_a.size() < 2) return false;
    const DisjointCollection iterated = s_dot_a(n, DisjointCollection{{a}}, d_over_a);
    return iterated == DisjointCollection{{d}} && collapse_blocks(by_a, d_over_a) == by_d &&
           quotient(n, iterated) == by_d;
}

std::vector<std::pair<IndexSet, IndexSet>> legal_codim2_pairs(int n)
{
    std::vector<IndexSet> subsets;
    for (Mask m = 0; m < (Mask{1} << (n + 1)); ++m)
        if (std::popcount(m) >= 2) subsets.push_back(from_mask(m));
    std::sort(subsets.begin(), subsets.end());
    std::vector<std::pair<IndexSet, IndexSet>> out;
    for (const auto& a : subsets)
        for (const auto& d : subsets) {
            const Mask ma = to_mask(a), md = to_mask(d);
            if (((ma & md) == 0 && a < d) || ((ma & md) == ma && ma != md)) out.emplace_back(a, d);
        }
    return out;
}

std::vector<std::pair<std::size_t, std::size_t>> propagator_index_set(int n, const DisjointCollection& collection)
{
    const QuotientSet q = quotient(n, collection);
    const std::size_t base = q.block_of(0);
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t i = 0; i < q.size(); ++i)
        for (std::size_t j = 0; j < q.size(); ++j)
            if (i != base && j != base && i != j) out.emplace_back(i, j);
    return out;
}

std::vector<DisjointCollection> enumerate_disjoint_collections(int n)
{
    // Set partitions of {0..n} by restricted growth strings; blocks of size
    // >= 2 form the collection.
    std::vector<DisjointCollection> out;
    const int size = n + 1;
    std::vector<int> rgs(static_cast<std::size_t>(size), 0);
    std::function<void(int, int)> fill = [&](int pos, int used) {
        if (pos == size) {
            std::vector<IndexSet> blocks(static_cast<std::size_t>(used));
            for (int i = 0; i < size; ++i) blocks[static_cast<std::size_t>(rgs[static_cast<std::size_t>(i)])].push_back(i);
            DisjointCollection c;
            for (auto& b : blocks)
                if (b.size() >= 2) c.sets.push_back(std::move(b));
            std::sort(c.sets.begin(), c.sets.end());
            out.push_back(std::move(c));
            return;
        }
        for (int b = 0; b <= used; ++b) {
            rgs[static_cast<std::size_t>(pos)] = b;
            fill(pos + 1, std::max(used, b + 1));
        }
    };
    fill(0, 0);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<ScheduleLayer> induction_schedule(int n)
{
    if (n < 2) throw std::invalid_argument("induction_schedule requires n >= 2");
    std::vector<ScheduleLayer> layers;
    const auto all = enumerate_disjoint_collections(n);
    for (int k = 3; k <= n + 1; ++k) {
        ScheduleLayer layer;
        layer.quotient_size = k;
        for (const auto& c : all)
            if (static_cast<int>(quotient(n, c).size()) == k) layer.collections.push_back(c);
        layers.push_back(std::move(layer));
    }
    return layers;
}

bool schedule_is_closed(int n, const std::vector<ScheduleLayer>& schedule)
{
    std::map<DisjointCollection, std::size_t> layer_of;
    for (std::size_t l = 0; l < schedule.size(); ++l)
        for (const auto& c : schedule[l].collections) layer_of.emplace(c, l);
    for (std::size_t l = 0; l < schedule.size(); ++l)
        for (const auto& c : schedule[l].collections) {
            const std::size_t blocks = quotient(n, c).size();
            for (std::uint64_t pick = 0; pick < (std::uint64_t{1} << blocks); ++pick) {
                if (std::popcount(pick) < 2) continue;
                std::vector<std::size_t> a;
                for (std::size_t b = 0; b < blocks; ++b)
                    if ((pick >> b) & 1u) a.push_back(b);
                const DisjointCollection sa = s_dot_a(n, c, a);
                if (quotient(n, sa).size() < 3) continue; // I(S.A) is empty
                auto it = layer_of.find(sa);
                if (it == layer_of.end() || it->second >= l) return false;
            }
        }
    return true;
}

} // namespace gcw::strata
