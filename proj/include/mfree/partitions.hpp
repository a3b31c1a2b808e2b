#pragma once

// Set partitions of {1..n}: enumeration, the non-crossing property, nesting
// depth, and exact counts of non-crossing partitions filtered by block count
// and depth.  The counting recurrences and brute-force enumeration are
// deliberately independent code paths so each can serve as the other's oracle.

#include "mfree/errors.hpp"
#include "mfree/numeric.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace mfree {

inline constexpr int kDefaultEnumerationCap = 14; // Bell(14) ~ 1.9e8

// A partition of {1..n} into disjoint non-empty blocks, stored canonically:
// blocks ordered by least element, each block sorted ascending.
struct SetPartition {
    int n = 0;
    std::vector<std::vector<int>> blocks;

    int block_count() const { return static_cast<int>(blocks.size()); }

    bool is_pair_partition() const {
        for (const auto& b : blocks)
            if (b.size() != 2) return false;
        return true;
    }

    // Validates and canonicalizes an arbitrary list of blocks.
    static SetPartition from_blocks(int n, std::vector<std::vector<int>> blocks) {
        if (n < 1) throw std::invalid_argument("SetPartition: n must be positive");
        std::vector<char> seen(static_cast<size_t>(n) + 1, 0);
        for (auto& b : blocks) {
            if (b.empty()) throw std::invalid_argument("SetPartition: empty block");
            std::sort(b.begin(), b.end());
            for (int x : b) {
                if (x < 1 || x > n) throw std::invalid_argument("SetPartition: element out of range");
                if (seen[static_cast<size_t>(x)]) throw std::invalid_argument("SetPartition: duplicate element");
                seen[static_cast<size_t>(x)] = 1;
            }
        }
        for (int x = 1; x <= n; ++x)
            if (!seen[static_cast<size_t>(x)]) throw std::invalid_argument("SetPartition: element not covered");
        std::sort(blocks.begin(), blocks.end(),
                  [](const auto& a, const auto& b) { return a.front() < b.front(); });
        return SetPartition{n, std::move(blocks)};
    }
};

inline bool operator==(const SetPartition& a, const SetPartition& b) {
    return a.n == b.n && a.blocks == b.blocks;
}

// Positions p, q share a block iff t[p] == t[q]; blocks come out canonical.
template <typename Label>
SetPartition partition_of_tuple(const std::vector<Label>& t) {
    if (t.empty()) throw std::invalid_argument("partition_of_tuple: empty tuple");
    std::map<Label, int> block_of;
    std::vector<std::vector<int>> blocks;
    for (int i = 0; i < static_cast<int>(t.size()); ++i) {
        auto [it, inserted] = block_of.try_emplace(t[i], static_cast<int>(blocks.size()));
        if (inserted) blocks.emplace_back();
        blocks[static_cast<size_t>(it->second)].push_back(i + 1);
    }
    // first-appearance order == least-element order, so this is canonical
    return SetPartition{static_cast<int>(t.size()), std::move(blocks)};
}

// Streams every partition of {1..n} exactly once, in restricted-growth-string
// lexicographic order (which yields canonical block order for free).  The
// visitor may return void, or bool where false stops the enumeration early.
template <typename Visit>
void enumerate_partitions(int n, Visit&& visit, int enumeration_cap = kDefaultEnumerationCap) {
    if (n < 1) throw std::invalid_argument("enumerate_partitions: n must be positive");
    if (n > enumeration_cap)
        throw resource_limit_error("enumerate_partitions: n = " + std::to_string(n) +
                                   " exceeds enumeration cap " + std::to_string(enumeration_cap));
    std::vector<int> rgs(static_cast<size_t>(n), 0);
    bool stop = false;
    std::function<void(int, int)> rec = [&](int i, int maxlab) {
        if (stop) return;
        if (i == n) {
            std::vector<std::vector<int>> blocks(static_cast<size_t>(maxlab) + 1);
            for (int p = 0; p < n; ++p) blocks[static_cast<size_t>(rgs[static_cast<size_t>(p)])].push_back(p + 1);
            SetPartition part{n, std::move(blocks)};
            if constexpr (std::is_convertible_v<decltype(visit(part)), bool>) {
                if (!visit(part)) stop = true;
            } else {
                visit(part);
            }
            return;
        }
        for (int lab = 0; lab <= maxlab + 1 && !stop; ++lab) {
            rgs[static_cast<size_t>(i)] = lab;
            rec(i + 1, std::max(maxlab, lab));
        }
    };
    rec(0, -1);
}

// Streams every pair partition (perfect matching) of {1..n}; n odd yields
// nothing.  Order: first pair anchored at the least unmatched element.
template <typename Visit>
void enumerate_pair_partitions(int n, Visit&& visit, int enumeration_cap = kDefaultEnumerationCap) {
    if (n < 1) throw std::invalid_argument("enumerate_pair_partitions: n must be positive");
    if (n > enumeration_cap)
        throw resource_limit_error("enumerate_pair_partitions: n = " + std::to_string(n) +
                                   " exceeds enumeration cap " + std::to_string(enumeration_cap));
    if (n % 2 != 0) return;
    std::vector<int> free_pos;
    for (int i = 1; i <= n; ++i) free_pos.push_back(i);
    std::vector<std::vector<int>> pairs;
    bool stop = false;
    std::function<void()> rec = [&]() {
        if (stop) return;
        if (free_pos.empty()) {
            SetPartition part{n, pairs}; // anchored order is canonical
            if constexpr (std::is_convertible_v<decltype(visit(part)), bool>) {
                if (!visit(part)) stop = true;
            } else {
                visit(part);
            }
            return;
        }
        int a = free_pos.front();
        for (size_t j = 1; j < free_pos.size() && !stop; ++j) {
            int b = free_pos[j];
            std::vector<int> rest;
            rest.reserve(free_pos.size() - 2);
            for (size_t t = 1; t < free_pos.size(); ++t)
                if (t != j) rest.push_back(free_pos[t]);
            std::swap(free_pos, rest);
            pairs.push_back({a, b});
            rec();
            pairs.pop_back();
            std::swap(free_pos, rest);
        }
    };
    rec();
}

namespace detail {

// Single left-to-right scan tracking the stack of open blocks.  Returns the
// maximal nesting depth, or -1 if two blocks cross.  A block B' counts as
// nested in B iff min B < min B' and max B' < max B; the depth is the longest
// chain of strictly nested blocks (singletons inside a block add a level).
inline int scan_depth(const SetPartition& p) {
    std::vector<int> owner(static_cast<size_t>(p.n) + 1, -1);
    std::vector<int> block_min(p.blocks.size()), block_max(p.blocks.size());
    for (size_t bi = 0; bi < p.blocks.size(); ++bi) {
        const auto& b = p.blocks[bi];
        block_min[bi] = b.front();
        block_max[bi] = b.back();
        for (int x : b) owner[static_cast<size_t>(x)] = static_cast<int>(bi);
    }
    std::vector<int> stack;
    int depth = 0;
    for (int pos = 1; pos <= p.n; ++pos) {
        int bi = owner[static_cast<size_t>(pos)];
        if (pos == block_min[static_cast<size_t>(bi)]) {
            stack.push_back(bi);
            depth = std::max(depth, static_cast<int>(stack.size()));
        } else if (stack.empty() || stack.back() != bi) {
            return -1; // pos re-enters a block that is not the innermost open one
        }
        if (pos == block_max[static_cast<size_t>(bi)]) stack.pop_back();
    }
    return depth;
}

} // namespace detail

// True iff no two blocks cross, i.e. there are no a < b < c < d with {a, c}
// in one block and {b, d} in another.
inline bool is_noncrossing(const SetPartition& p) { return detail::scan_depth(p) >= 0; }

// Nesting depth of a non-crossing partition (see detail::scan_depth).  On pair
// partitions this equals the longest chain of pairs (a_1,b_1),...,(a_d,b_d)
// with a_1 < ... < a_d and b_1 > ... > b_d.
inline int depth(const SetPartition& p) {
    if (p.n < 1 || p.blocks.empty()) throw std::invalid_argument("depth: empty partition");
    int d = detail::scan_depth(p);
    if (d < 0) throw std::domain_error("depth: partition has crossing blocks");
    return d;
}

namespace detail {

inline uint64_t pack_key(int a, int b, int c) {
    return (static_cast<uint64_t>(static_cast<uint32_t>(a)) << 42) |
           (static_cast<uint64_t>(static_cast<uint32_t>(b)) << 21) |
           static_cast<uint64_t>(static_cast<uint32_t>(c));
}

integer count_nc_suffix(int t, int c, int m); // forward

// Memoized |NC_n(b,m)| core, conventions baked in at the boundaries.
inline integer count_nc_impl(int n, int b, int m) {
    if (n == 0) return b == 0 ? 1 : 0;
    if (b == 0 || m == 0) return 0; // depth >= 1 and >= 1 block once n >= 1
    if (b > n) return 0;
    static thread_local std::unordered_map<uint64_t, integer> memo;
    uint64_t key = pack_key(n, b, m);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    // Peel position 1, the first element of the outermost leading block.
    integer v = count_nc_suffix(n - 1, b - 1, m);
    memo.emplace(key, v);
    return v;
}

// Number of ways to fill t positions to the right of an open outer-block
// element with c further blocks, keeping the whole picture non-crossing of
// depth <= m.  Either the open block closes (the rest is a free tail of depth
// <= m), or a gap nested inside it (depth <= m-1) is followed by the open
// block's next element.
inline integer count_nc_suffix(int t, int c, int m) {
    if (t == 0) return c == 0 ? 1 : 0;
    static thread_local std::unordered_map<uint64_t, integer> memo;
    uint64_t key = pack_key(t, c, m);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    integer total = count_nc_impl(t, c, m);
    for (int gap = 0; gap < t; ++gap)
        for (int cg = 0; cg <= c; ++cg) {
            integer inner = count_nc_impl(gap, cg, m - 1);
            if (inner != 0) total += inner * count_nc_suffix(t - gap - 1, c - cg, m);
        }
    memo.emplace(key, total);
    return total;
}

} // namespace detail

// |NC_n(b,m)|: non-crossing partitions of {1..n} with exactly b blocks and
// nesting depth <= m.  Conventions: count(0,0,m) = 1, count(n,0,m) = 0 and
// count(n,b,0) = 0 for n >= 1, count(n,b,m) = 0 for b > n >= 1.
inline integer count_nc(int n, int b, int m) {
    if (n < 0 || b < 0 || m < 0) throw std::invalid_argument("count_nc: negative argument");
    // Depth never exceeds ceil(n/2); clamping keeps the memo small.
    return detail::count_nc_impl(n, b, std::min(m, (n + 1) / 2));
}

// |NC_n^pair(m)|: non-crossing pair partitions of {1..n} with depth <= m,
// via the gap/tail recurrence
//   |NC_{2k}^pair(m)| = sum_j |NC_{2j-2}^pair(m-1)| * |NC_{2k-2j}^pair(m)|
// (position 1 pairs with position 2j; the gap between them nests one deeper).
inline integer count_nc_pair(int n, int m) {
    if (n < 0 || m < 0) throw std::invalid_argument("count_nc_pair: negative argument");
    if (n == 0) return 1;
    if (n % 2 != 0 || m == 0) return 0;
    int mc = std::min(m, n / 2); // pair-partition depth never exceeds n/2
    static thread_local std::unordered_map<uint64_t, integer> memo;
    uint64_t key = detail::pack_key(n, 0, mc);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    integer total = 0;
    for (int j = 1; 2 * j <= n; ++j)
        total += count_nc_pair(2 * j - 2, mc - 1) * count_nc_pair(n - 2 * j, mc);
    memo.emplace(key, total);
    return total;
}

} // namespace mfree
