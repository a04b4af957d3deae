#include "wonder/linalg.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <unordered_map>

namespace wonder {

namespace {

struct I64Overflow {};

long long checked_narrow(__int128 v) {
    if (v > static_cast<__int128>(INT64_MAX) || v < static_cast<__int128>(INT64_MIN))
        throw I64Overflow{};
    return static_cast<long long>(v);
}

long long gcd_ll(long long a, long long b) {
    if (a < 0)
        a = -a;
    if (b < 0)
        b = -b;
    while (b) {
        long long t = a % b;
        a = b;
        b = t;
    }
    return a;
}

// row <- (row * pa - piv * pb) / content, where pa, pb cancel the lead
// coefficient of `row` against the pivot row.
template <typename Coeff, typename Wide>
std::vector<std::pair<std::uint32_t, Coeff>>
merge_rows(const std::vector<std::pair<std::uint32_t, Coeff>>& row,
           const std::vector<std::pair<std::uint32_t, Coeff>>& piv, Coeff a, Coeff b,
           Coeff (*narrow)(Wide)) {
    // eliminate via l = lcm(|a|, |b|): row * (l/a) - piv * (l/b)
    Coeff g = 0;
    if constexpr (std::is_same_v<Coeff, long long>)
        g = gcd_ll(a, b);
    else
        g = boost::multiprecision::gcd(boost::multiprecision::abs(a),
                                       boost::multiprecision::abs(b));
    Coeff ma = b / g;
    Coeff mb = a / g;
    std::vector<std::pair<std::uint32_t, Coeff>> out;
    out.reserve(row.size() + piv.size());
    std::size_t i = 0, j = 0;
    while (i < row.size() || j < piv.size()) {
        if (j == piv.size() || (i < row.size() && row[i].first < piv[j].first)) {
            out.emplace_back(row[i].first, narrow(static_cast<Wide>(row[i].second) * static_cast<Wide>(ma)));
            ++i;
        } else if (i == row.size() || piv[j].first < row[i].first) {
            out.emplace_back(piv[j].first, narrow(static_cast<Wide>(piv[j].second) * static_cast<Wide>(-mb)));
            ++j;
        } else {
            Wide v = static_cast<Wide>(row[i].second) * static_cast<Wide>(ma) -
                     static_cast<Wide>(piv[j].second) * static_cast<Wide>(mb);
            if (v != 0)
                out.emplace_back(row[i].first, narrow(v));
            ++i;
            ++j;
        }
    }
    // divide by content to keep entries small
    Coeff content = 0;
    for (const auto& [c, v] : out) {
        if constexpr (std::is_same_v<Coeff, long long>)
            content = gcd_ll(content, v);
        else
            content = boost::multiprecision::gcd(content, boost::multiprecision::abs(v));
        if (content == 1)
            break;
    }
    if (content > 1)
        for (auto& [c, v] : out)
            v /= content;
    return out;
}

long long narrow_i64(__int128 v) { return checked_narrow(v); }
BigInt narrow_big(BigInt v) { return v; }

template <typename Coeff, typename Wide>
std::size_t rank_impl(const std::vector<std::vector<std::pair<std::uint32_t, Coeff>>>& input,
                      std::uint32_t ncols, Coeff (*narrow)(Wide)) {
    std::vector<std::vector<std::pair<std::uint32_t, Coeff>>> pivot(ncols);
    std::vector<char> has_pivot(ncols, 0);
    std::size_t rank = 0;
    for (const auto& source : input) {
        auto row = source;
        while (!row.empty()) {
            const std::uint32_t lead = row.front().first;
            if (!has_pivot[lead]) {
                pivot[lead] = std::move(row);
                has_pivot[lead] = 1;
                ++rank;
                break;
            }
            row = merge_rows<Coeff, Wide>(row, pivot[lead], row.front().second,
                                          pivot[lead].front().second, narrow);
        }
    }
    return rank;
}

} // namespace

std::size_t sparse_rank(std::vector<SparseRow> rows, std::uint32_t ncols) {
    // Rows with small leading columns first make better pivots.
    std::stable_sort(rows.begin(), rows.end(), [](const SparseRow& a, const SparseRow& b) {
        if (a.empty() || b.empty())
            return b.empty() && !a.empty();
        if (a.front().first != b.front().first)
            return a.front().first < b.front().first;
        return a.size() < b.size();
    });
    try {
        return rank_impl<long long, __int128>(rows, ncols, narrow_i64);
    } catch (const I64Overflow&) {
        std::vector<std::vector<std::pair<std::uint32_t, BigInt>>> big;
        big.reserve(rows.size());
        for (const auto& r : rows) {
            std::vector<std::pair<std::uint32_t, BigInt>> br;
            br.reserve(r.size());
            for (const auto& [c, v] : r)
                br.emplace_back(c, BigInt(v));
            big.push_back(std::move(br));
        }
        return rank_impl<BigInt, BigInt>(big, ncols, narrow_big);
    }
}

std::vector<std::pair<std::uint32_t, BigRational>>
Rref::reduce(std::vector<std::pair<std::uint32_t, BigRational>> v) const {
    std::map<std::uint32_t, BigRational> acc(v.begin(), v.end());
    for (std::size_t r = 0; r < rows.size(); ++r) {
        auto it = acc.find(pivot_cols[r]);
        if (it == acc.end() || it->second == 0)
            continue;
        BigRational coeff = it->second;
        for (const auto& [c, val] : rows[r]) {
            auto& slot = acc[c];
            slot -= coeff * val;
            if (slot == 0)
                acc.erase(c);
        }
    }
    return {acc.begin(), acc.end()};
}

Rref rref_of(const std::vector<SparseRow>& rows, std::uint32_t ncols) {
    Rref out;
    out.ncols = ncols;
    std::map<std::uint32_t, std::vector<std::pair<std::uint32_t, BigRational>>> pivots;
    for (const auto& source : rows) {
        std::map<std::uint32_t, BigRational> acc;
        for (const auto& [c, v] : source)
            acc.emplace(c, BigRational(v));
        // forward reduce
        for (auto it = acc.begin(); it != acc.end();) {
            auto piv = pivots.find(it->first);
            if (piv == pivots.end() || it->second == 0) {
                if (it->second == 0) {
                    it = acc.erase(it);
                    continue;
                }
                break;
            }
            BigRational coeff = it->second;
            for (const auto& [c, val] : piv->second) {
                auto& slot = acc[c];
                slot -= coeff * val;
                if (slot == 0)
                    acc.erase(c);
            }
            it = acc.begin();
        }
        if (acc.empty())
            continue;
        // normalize to unit pivot
        const std::uint32_t lead = acc.begin()->first;
        BigRational leadval = acc.begin()->second;
        std::vector<std::pair<std::uint32_t, BigRational>> row;
        row.reserve(acc.size());
        for (const auto& [c, v] : acc)
            row.emplace_back(c, v / leadval);
        // clear this column from existing pivot rows
        for (auto& [pcol, prow] : pivots) {
            BigRational at = 0;
            for (const auto& [c, v] : prow)
                if (c == lead) {
                    at = v;
                    break;
                }
            if (at == 0)
                continue;
            std::map<std::uint32_t, BigRational> nacc(prow.begin(), prow.end());
            for (const auto& [c, v] : row) {
                auto& slot = nacc[c];
                slot -= at * v;
                if (slot == 0)
                    nacc.erase(c);
            }
            prow.assign(nacc.begin(), nacc.end());
        }
        pivots.emplace(lead, std::move(row));
    }
    std::vector<char> is_pivot(ncols, 0);
    for (auto& [col, row] : pivots) {
        out.pivot_cols.push_back(col);
        out.rows.push_back(std::move(row));
        is_pivot[col] = 1;
    }
    for (std::uint32_t c = 0; c < ncols; ++c)
        if (!is_pivot[c])
            out.free_cols.push_back(c);
    return out;
}

} // namespace wonder
