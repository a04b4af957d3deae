#include "wonder/partition.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <sstream>

namespace wonder {

namespace {

void canonicalize(std::vector<std::vector<int>>& blocks) {
    for (auto& b : blocks)
        std::sort(b.begin(), b.end());
    std::sort(blocks.begin(), blocks.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
}

} // namespace

SetPartition SetPartition::from_blocks(int n, std::vector<std::vector<int>> blocks) {
    if (n < 1)
        throw DomainError("SetPartition: n must be positive");
    std::vector<char> seen(static_cast<std::size_t>(n) + 1, 0);
    int count = 0;
    for (const auto& b : blocks) {
        if (b.empty())
            throw DomainError("SetPartition: empty block");
        for (int x : b) {
            if (x < 1 || x > n)
                throw DomainError("SetPartition: element out of range");
            if (seen[static_cast<std::size_t>(x)])
                throw DomainError("SetPartition: repeated element");
            seen[static_cast<std::size_t>(x)] = 1;
            ++count;
        }
    }
    if (count != n)
        throw DomainError("SetPartition: blocks do not cover the ground set");
    canonicalize(blocks);
    SetPartition p;
    p.n_ = n;
    p.blocks_ = std::move(blocks);
    p.rebuild_index();
    return p;
}

SetPartition SetPartition::bottom(int n) {
    std::vector<int> all(static_cast<std::size_t>(n));
    std::iota(all.begin(), all.end(), 1);
    return from_blocks(n, {all});
}

SetPartition SetPartition::top(int n) {
    std::vector<std::vector<int>> blocks;
    blocks.reserve(static_cast<std::size_t>(n));
    for (int i = 1; i <= n; ++i)
        blocks.push_back({i});
    return from_blocks(n, std::move(blocks));
}

SetPartition SetPartition::from_merged_subset(int n, std::vector<int> merged) {
    if (merged.size() < 2)
        throw DomainError("from_merged_subset: need at least two elements");
    std::vector<char> in(static_cast<std::size_t>(n) + 1, 0);
    for (int x : merged) {
        if (x < 1 || x > n)
            throw DomainError("from_merged_subset: element out of range");
        in[static_cast<std::size_t>(x)] = 1;
    }
    std::vector<std::vector<int>> blocks{std::move(merged)};
    for (int i = 1; i <= n; ++i)
        if (!in[static_cast<std::size_t>(i)])
            blocks.push_back({i});
    return from_blocks(n, std::move(blocks));
}

SetPartition SetPartition::parse(const std::string& text) {
    if (text.empty())
        throw DomainError("SetPartition::parse: empty string");
    const bool comma_mode = text.find(',') != std::string::npos;
    std::vector<std::vector<int>> blocks;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t bar = text.find('|', pos);
        std::string piece = text.substr(pos, bar == std::string::npos ? std::string::npos : bar - pos);
        if (piece.empty())
            throw DomainError("SetPartition::parse: empty block in \"" + text + "\"");
        std::vector<int> block;
        if (comma_mode) {
            std::stringstream ss(piece);
            std::string tok;
            while (std::getline(ss, tok, ',')) {
                if (tok.empty())
                    throw DomainError("SetPartition::parse: empty element");
                block.push_back(std::stoi(tok));
            }
        } else {
            for (char c : piece) {
                if (c < '1' || c > '9')
                    throw DomainError("SetPartition::parse: bad character in \"" + text + "\"");
                block.push_back(c - '0');
            }
        }
        blocks.push_back(std::move(block));
        if (bar == std::string::npos)
            break;
        pos = bar + 1;
    }
    int n = 0;
    for (const auto& b : blocks)
        n += static_cast<int>(b.size());
    return from_blocks(n, std::move(blocks));
}

void SetPartition::rebuild_index() {
    block_of_.assign(static_cast<std::size_t>(n_) + 1, -1);
    for (std::size_t bi = 0; bi < blocks_.size(); ++bi)
        for (int x : blocks_[bi])
            block_of_[static_cast<std::size_t>(x)] = static_cast<int>(bi);
}

int SetPartition::block_of(int i) const {
    if (i < 1 || i > n_)
        throw DomainError("block_of: element out of range");
    return block_of_[static_cast<std::size_t>(i)];
}

std::vector<std::vector<int>> SetPartition::non_singleton_blocks() const {
    std::vector<std::vector<int>> out;
    for (const auto& b : blocks_)
        if (b.size() >= 2)
            out.push_back(b);
    return out;
}

bool SetPartition::in_ex() const {
    int big = 0;
    for (const auto& b : blocks_)
        if (b.size() >= 2 && ++big >= 2)
            return true;
    return false;
}

std::string SetPartition::to_string() const {
    std::string out;
    const bool commas = n_ >= 10;
    for (std::size_t bi = 0; bi < blocks_.size(); ++bi) {
        if (bi)
            out += '|';
        for (std::size_t k = 0; k < blocks_[bi].size(); ++k) {
            if (k && commas)
                out += ',';
            out += std::to_string(blocks_[bi][k]);
        }
    }
    return out;
}

bool leq(const SetPartition& a, const SetPartition& b) {
    if (a.n() != b.n())
        throw DomainError("leq: ground sets differ");
    for (const auto& block : b.blocks()) {
        const int home = a.block_of(block.front());
        for (int x : block)
            if (a.block_of(x) != home)
                return false;
    }
    return true;
}

bool comparable(const SetPartition& a, const SetPartition& b) {
    return leq(a, b) || leq(b, a);
}

SetPartition common_coarsening(const SetPartition& a, const SetPartition& b) {
    if (a.n() != b.n())
        throw DomainError("common_coarsening: ground sets differ");
    const int n = a.n();
    std::vector<int> parent(static_cast<std::size_t>(n) + 1);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) {
        while (parent[static_cast<std::size_t>(x)] != x) {
            parent[static_cast<std::size_t>(x)] =
                parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
            x = parent[static_cast<std::size_t>(x)];
        }
        return x;
    };
    auto unite = [&](int x, int y) { parent[static_cast<std::size_t>(find(x))] = find(y); };
    for (const auto* p : {&a, &b})
        for (const auto& block : p->blocks())
            for (std::size_t k = 1; k < block.size(); ++k)
                unite(block[0], block[k]);
    std::vector<std::vector<int>> groups(static_cast<std::size_t>(n) + 1);
    for (int i = 1; i <= n; ++i)
        groups[static_cast<std::size_t>(find(i))].push_back(i);
    std::vector<std::vector<int>> blocks;
    for (auto& g : groups)
        if (!g.empty())
            blocks.push_back(std::move(g));
    return SetPartition::from_blocks(n, std::move(blocks));
}

bool canonical_less(const SetPartition& a, const SetPartition& b) {
    if (a.n() != b.n())
        throw DomainError("canonical_less: ground sets differ");
    if (a.block_count() != b.block_count())
        return a.block_count() < b.block_count();
    // Lexicographic on the flattened block lists, with a high sentinel at
    // each block boundary so shorter first blocks sort later (12|3 < 1|23).
    auto flat = [](const SetPartition& p) {
        std::vector<int> seq;
        seq.reserve(static_cast<std::size_t>(2 * p.n()));
        for (const auto& b : p.blocks()) {
            seq.insert(seq.end(), b.begin(), b.end());
            seq.push_back(std::numeric_limits<int>::max());
        }
        return seq;
    };
    return flat(a) < flat(b);
}

std::vector<SetPartition> enumerate_partitions(int n, int max_n) {
    if (n < 1 || n > max_n)
        throw BoundsError("enumerate_partitions: n out of range [1, " + std::to_string(max_n) + "]");
    // Restricted growth strings; then sort into the documented order.
    std::vector<SetPartition> out;
    std::vector<int> rgs(static_cast<std::size_t>(n), 0);
    auto emit = [&]() {
        int nblocks = 1 + *std::max_element(rgs.begin(), rgs.end());
        std::vector<std::vector<int>> blocks(static_cast<std::size_t>(nblocks));
        for (int i = 0; i < n; ++i)
            blocks[static_cast<std::size_t>(rgs[static_cast<std::size_t>(i)])].push_back(i + 1);
        out.push_back(SetPartition::from_blocks(n, std::move(blocks)));
    };
    std::function<void(int, int)> rec = [&](int i, int maxv) {
        if (i == n) {
            emit();
            return;
        }
        for (int v = 0; v <= maxv + 1; ++v) {
            rgs[static_cast<std::size_t>(i)] = v;
            rec(i + 1, std::max(maxv, v));
        }
    };
    rec(1, 0); // rgs[0] = 0 fixed
    std::sort(out.begin(), out.end(), canonical_less);
    return out;
}

std::vector<SetPartition> enumerate_ex(int n, int max_n) {
    std::vector<SetPartition> out;
    for (auto& p : enumerate_partitions(n, max_n))
        if (p.in_ex())
            out.push_back(std::move(p));
    return out;
}

std::size_t SetPartitionHash::operator()(const SetPartition& p) const {
    std::size_t h = static_cast<std::size_t>(p.n()) * 0x9e3779b97f4a7c15ULL;
    for (const auto& b : p.blocks()) {
        h ^= 0x2545f4914f6cdd1dULL;
        for (int x : b)
            h = h * 1099511628211ULL + static_cast<std::size_t>(x);
    }
    return h;
}

} // namespace wonder
