#include "wonder/chow.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

namespace wonder {

namespace {

std::string join_ints(const std::vector<int>& xs, bool commas) {
    std::string out;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i && commas)
            out += ',';
        out += std::to_string(xs[i]);
    }
    return out;
}

bool subsets_nested_or_disjoint(const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> inter;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(inter));
    if (inter.empty())
        return true;
    return inter.size() == a.size() || inter.size() == b.size();
}

bool edge_inside_block(const std::pair<int, int>& e, const SetPartition& sigma) {
    return sigma.same_block(e.first, e.second);
}

} // namespace

void PolyElement::add_term(Monomial m, BigInt coeff) {
    if (coeff == 0)
        return;
    std::sort(m.begin(), m.end());
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        terms_.emplace(std::move(m), std::move(coeff));
    } else {
        it->second += coeff;
        if (it->second == 0)
            terms_.erase(it);
    }
}

PolyElement PolyElement::operator+(const PolyElement& o) const {
    PolyElement out = *this;
    for (const auto& [m, c] : o.terms_)
        out.add_term(m, c);
    return out;
}

PolyElement PolyElement::operator-(const PolyElement& o) const {
    PolyElement out = *this;
    for (const auto& [m, c] : o.terms_)
        out.add_term(m, -c);
    return out;
}

PolyElement PolyElement::operator*(const BigInt& scalar) const {
    PolyElement out;
    if (scalar == 0)
        return out;
    for (const auto& [m, c] : terms_)
        out.terms_.emplace(m, c * scalar);
    return out;
}

RingPresentation RingPresentation::make(int n, RingModel model) {
    if (n < 2)
        throw DomainError("RingPresentation: need n >= 2");
    RingPresentation p;
    p.n_ = n;
    p.model_ = model;
    p.top_degree_ = (model == RingModel::Augmented) ? n - 1 : n - 2;

    std::vector<std::pair<int, int>> edges;
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j)
            edges.emplace_back(i, j);

    switch (model) {
    case RingModel::Wonderful:
        for (const auto& sigma : enumerate_partitions(n)) {
            if (sigma.is_bottom() || sigma.is_top())
                continue;
            GeneratorInfo g;
            g.label = "x[" + sigma.to_string() + "]";
            g.sigma = sigma;
            p.gens_.push_back(std::move(g));
        }
        break;
    case RingModel::Keel: {
        std::vector<std::vector<int>> subsets;
        for (unsigned mask = 0; mask < (1u << n); ++mask) {
            std::vector<int> s;
            for (int i = 0; i < n; ++i)
                if (mask & (1u << i))
                    s.push_back(i + 1);
            if (s.size() >= 2 && static_cast<int>(s.size()) <= n - 1)
                subsets.push_back(std::move(s));
        }
        std::sort(subsets.begin(), subsets.end(), [](const auto& a, const auto& b) {
            if (a.size() != b.size())
                return a.size() < b.size();
            return a < b;
        });
        for (auto& s : subsets) {
            GeneratorInfo g;
            g.label = "x[" + join_ints(s, n >= 10) + "]";
            g.subset = std::move(s);
            p.gens_.push_back(std::move(g));
        }
        break;
    }
    case RingModel::Augmented:
        for (const auto& e : edges) {
            GeneratorInfo g;
            g.label = "y[" + std::to_string(e.first) + "," + std::to_string(e.second) + "]";
            g.subset = std::vector<int>{e.first, e.second};
            p.gens_.push_back(std::move(g));
        }
        for (const auto& sigma : enumerate_partitions(n)) {
            if (sigma.is_bottom())
                continue;
            GeneratorInfo g;
            g.label = "x[" + sigma.to_string() + "]";
            g.sigma = sigma;
            p.gens_.push_back(std::move(g));
        }
        break;
    }

    for (std::uint16_t i = 0; i < p.gens_.size(); ++i)
        p.label_index_[p.gens_[i].label] = i;

    // pairwise compatibility (false = the product is a quadratic relation)
    const std::size_t gcount = p.gens_.size();
    const std::size_t words = (gcount + 63) / 64;
    p.compat_.assign(gcount, std::vector<std::uint64_t>(words, 0));
    auto set_bit = [&](std::size_t i, std::size_t j) {
        p.compat_[i][j / 64] |= (1ull << (j % 64));
    };
    auto gen_compatible = [&](const GeneratorInfo& a, const GeneratorInfo& b) {
        const bool ax = a.sigma.has_value() || (model == RingModel::Keel);
        const bool bx = b.sigma.has_value() || (model == RingModel::Keel);
        if (model == RingModel::Keel)
            return subsets_nested_or_disjoint(*a.subset, *b.subset);
        if (model == RingModel::Wonderful)
            return comparable(*a.sigma, *b.sigma);
        // augmented
        if (!ax && !bx)
            return true; // y with y
        if (ax && bx)
            return comparable(*a.sigma, *b.sigma);
        const GeneratorInfo& y = ax ? b : a;
        const GeneratorInfo& x = ax ? a : b;
        return edge_inside_block({(*y.subset)[0], (*y.subset)[1]}, *x.sigma);
    };
    for (std::size_t i = 0; i < gcount; ++i)
        for (std::size_t j = i; j < gcount; ++j)
            if (gen_compatible(p.gens_[i], p.gens_[j])) {
                set_bit(i, j);
                set_bit(j, i);
            }

    // spanning linear relations
    auto edge_sum_indices = [&](const std::pair<int, int>& e) {
        std::vector<std::uint16_t> out;
        for (std::uint16_t i = 0; i < p.gens_.size(); ++i) {
            const auto& g = p.gens_[i];
            if (model == RingModel::Keel) {
                const auto& s = *g.subset;
                if (std::binary_search(s.begin(), s.end(), e.first) &&
                    std::binary_search(s.begin(), s.end(), e.second))
                    out.push_back(i);
            } else if (g.sigma.has_value() && g.sigma->same_block(e.first, e.second)) {
                out.push_back(i);
            }
        }
        return out;
    };
    if (model == RingModel::Augmented) {
        // y_e minus the x-generators whose partition keeps e split
        for (const auto& e : edges) {
            std::map<std::uint16_t, int> acc;
            acc[p.label_index_.at("y[" + std::to_string(e.first) + "," + std::to_string(e.second) +
                                  "]")] = 1;
            for (std::uint16_t i = 0; i < p.gens_.size(); ++i)
                if (p.gens_[i].sigma.has_value() && !p.gens_[i].sigma->same_block(e.first, e.second))
                    acc[i] -= 1;
            std::vector<std::pair<std::uint16_t, int>> rel(acc.begin(), acc.end());
            p.linear_relations_.push_back(std::move(rel));
        }
    } else {
        auto base = edge_sum_indices(edges.front());
        for (std::size_t k = 1; k < edges.size(); ++k) {
            std::map<std::uint16_t, int> acc;
            for (auto i : base)
                acc[i] += 1;
            for (auto i : edge_sum_indices(edges[k]))
                acc[i] -= 1;
            std::vector<std::pair<std::uint16_t, int>> rel;
            for (const auto& [i, c] : acc)
                if (c != 0)
                    rel.emplace_back(i, c);
            if (!rel.empty())
                p.linear_relations_.push_back(std::move(rel));
        }
    }
    return p;
}

std::uint16_t RingPresentation::generator_index(const std::string& label) const {
    auto it = label_index_.find(label);
    if (it == label_index_.end())
        throw DomainError("unknown generator label: " + label);
    return it->second;
}

bool RingPresentation::compatible(std::uint16_t g, std::uint16_t h) const {
    return (compat_[g][h / 64] >> (h % 64)) & 1ull;
}

bool RingPresentation::monomial_survives(const Monomial& m) const {
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = i + 1; j < m.size(); ++j)
            if (!compatible(m[i], m[j]))
                return false;
    return true;
}

std::vector<PolyElement> RingPresentation::displayed_linear_relations() const {
    std::vector<PolyElement> out;
    if (model_ == RingModel::Augmented) {
        for (const auto& rel : linear_relations_) {
            PolyElement e;
            for (const auto& [g, c] : rel)
                e.add_term({g}, c);
            out.push_back(std::move(e));
        }
        return out;
    }
    // every ordered pair of edge sums
    std::vector<std::pair<int, int>> edges;
    for (int i = 1; i <= n_; ++i)
        for (int j = i + 1; j <= n_; ++j)
            edges.emplace_back(i, j);
    auto edge_sum = [&](const std::pair<int, int>& e) {
        PolyElement sum;
        for (std::uint16_t i = 0; i < gens_.size(); ++i) {
            const auto& g = gens_[i];
            if (model_ == RingModel::Keel) {
                const auto& s = *g.subset;
                if (std::binary_search(s.begin(), s.end(), e.first) &&
                    std::binary_search(s.begin(), s.end(), e.second))
                    sum.add_term({i}, 1);
            } else if (g.sigma.has_value() && g.sigma->same_block(e.first, e.second)) {
                sum.add_term({i}, 1);
            }
        }
        return sum;
    };
    for (std::size_t a = 0; a < edges.size(); ++a)
        for (std::size_t b = a + 1; b < edges.size(); ++b)
            out.push_back(edge_sum(edges[a]) - edge_sum(edges[b]));
    return out;
}

std::vector<std::uint64_t> RingPresentation::monomial_mask(const Monomial& m) const {
    const std::size_t words = compat_.empty() ? 0 : compat_[0].size();
    std::vector<std::uint64_t> mask(words, ~0ull);
    for (auto g : m)
        for (std::size_t w = 0; w < words; ++w)
            mask[w] &= compat_[g][w];
    return mask;
}

void RingPresentation::ensure_monomials(DegreeData& dd, int k) const {
    if (dd.monomials_done || k < 0)
        return;
    dd.monomials_done = true;
    const std::size_t gcount = gens_.size();
    const std::size_t words = compat_.empty() ? 0 : compat_[0].size();
    Monomial cur;
    std::vector<std::uint64_t> mask(words, ~0ull);
    auto rec = [&](auto&& self, std::size_t start) -> void {
        if (cur.size() == static_cast<std::size_t>(k)) {
            dd.monomials.push_back(cur);
            dd.masks.push_back(mask);
            return;
        }
        for (std::size_t j = start; j < gcount; ++j) {
            if (!((mask[j / 64] >> (j % 64)) & 1ull))
                continue;
            auto saved = mask;
            for (std::size_t w = 0; w < words; ++w)
                mask[w] &= compat_[j][w];
            cur.push_back(static_cast<std::uint16_t>(j));
            self(self, j);
            cur.pop_back();
            mask = std::move(saved);
        }
    };
    if (k == 0) {
        dd.monomials.push_back({});
        dd.masks.push_back(mask);
    } else {
        rec(rec, 0);
    }
    for (std::uint32_t i = 0; i < dd.monomials.size(); ++i)
        dd.index.emplace(dd.monomials[i], i);
}

RingPresentation::DegreeData& RingPresentation::degree_data(int k) const {
    std::lock_guard<std::mutex> lock(mu_);
    auto& dd = degree_cache_[k];
    ensure_monomials(dd, k);
    return dd;
}

std::vector<SparseRow> RingPresentation::relation_rows(int k) const {
    std::vector<SparseRow> rows;
    if (k <= 0)
        return rows;
    auto& lower = degree_data(k - 1);
    auto& target = degree_data(k);
    rows.reserve(linear_relations_.size() * lower.monomials.size());
    for (std::size_t mi = 0; mi < lower.monomials.size(); ++mi) {
        const Monomial& m = lower.monomials[mi];
        const auto& mask = lower.masks[mi];
        for (const auto& rel : linear_relations_) {
            SparseRow row;
            for (const auto& [g, c] : rel) {
                if (!((mask[g / 64] >> (g % 64)) & 1ull))
                    continue;
                Monomial m2 = m;
                m2.insert(std::upper_bound(m2.begin(), m2.end(), g), g);
                row.emplace_back(target.index.at(m2), c);
            }
            if (row.empty())
                continue;
            std::sort(row.begin(), row.end());
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

const Rref& RingPresentation::degree_rref(int k) const {
    {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = degree_cache_.find(k);
        if (it != degree_cache_.end() && it->second.rref)
            return *it->second.rref;
    }
    auto rows = relation_rows(k);
    auto& dd = degree_data(k);
    auto rref = std::make_shared<const Rref>(
        rref_of(rows, static_cast<std::uint32_t>(dd.monomials.size())));
    std::lock_guard<std::mutex> lock(mu_);
    if (!dd.rref)
        dd.rref = std::move(rref);
    return *dd.rref;
}

long long RingPresentation::graded_dimension(int k) const {
    if (k < 0 || k > top_degree_)
        throw DomainError("graded_dimension: degree out of range");
    auto& dd = degree_data(k);
    const std::size_t cols = dd.monomials.size();
    if (k == 0)
        return static_cast<long long>(cols); // single empty monomial
    {
        std::lock_guard<std::mutex> lock(mu_);
        if (dd.rref)
            return static_cast<long long>(cols - dd.rref->rank());
        if (dd.relation_rank)
            return static_cast<long long>(cols - *dd.relation_rank);
    }
    auto rows = relation_rows(k);
    std::size_t rank = sparse_rank(std::move(rows), static_cast<std::uint32_t>(cols));
    std::lock_guard<std::mutex> lock(mu_);
    dd.relation_rank = rank;
    return static_cast<long long>(cols - rank);
}

BettiTable RingPresentation::betti_table() const {
    BettiTable t;
    for (int k = 0; k <= top_degree_; ++k)
        t.ranks.push_back(graded_dimension(k));
    return t;
}

std::vector<Monomial> RingPresentation::degree_monomials(int k) const {
    return degree_data(k).monomials;
}

std::vector<Monomial> RingPresentation::degree_basis(int k) const {
    const Rref& rref = degree_rref(k);
    auto& dd = degree_data(k);
    std::vector<Monomial> out;
    out.reserve(rref.free_cols.size());
    for (auto c : rref.free_cols)
        out.push_back(dd.monomials[c]);
    return out;
}

PolyElement RingPresentation::multiply(const PolyElement& a, const PolyElement& b) const {
    PolyElement out;
    for (const auto& [ma, ca] : a.terms()) {
        for (const auto& [mb, cb] : b.terms()) {
            bool ok = true;
            for (auto g : ma) {
                for (auto h : mb)
                    if (!compatible(g, h)) {
                        ok = false;
                        break;
                    }
                if (!ok)
                    break;
            }
            if (!ok)
                continue; // product monomial is zero by the quadratic ideal
            Monomial m;
            m.reserve(ma.size() + mb.size());
            std::merge(ma.begin(), ma.end(), mb.begin(), mb.end(), std::back_inserter(m));
            if (monomial_survives(m))
                out.add_term(std::move(m), ca * cb);
        }
    }
    return out;
}

PolyElement RingPresentation::normal_form(const PolyElement& a) const {
    std::map<int, std::map<Monomial, BigInt>> by_degree;
    for (const auto& [m, c] : a.terms()) {
        if (!monomial_survives(m))
            continue; // zero in the ring
        by_degree[static_cast<int>(m.size())][m] = c;
    }
    PolyElement out;
    for (const auto& [k, terms] : by_degree) {
        if (k == 0) {
            for (const auto& [m, c] : terms)
                out.add_term(m, c);
            continue;
        }
        const Rref& rref = degree_rref(k);
        auto& dd = degree_data(k);
        std::vector<std::pair<std::uint32_t, BigRational>> vec;
        for (const auto& [m, c] : terms)
            vec.emplace_back(dd.index.at(m), BigRational(c));
        std::sort(vec.begin(), vec.end());
        auto reduced = rref.reduce(std::move(vec));
        for (const auto& [col, val] : reduced) {
            if (boost::multiprecision::denominator(val) != 1)
                throw InternalError("normal_form: non-integral canonical representative");
            out.add_term(dd.monomials[col], BigInt(boost::multiprecision::numerator(val)));
        }
    }
    return out;
}

std::vector<std::vector<long long>> RingPresentation::pairing_matrix(int k) const {
    const int d = top_degree_;
    if (k < 0 || k > d)
        throw DomainError("pairing_matrix: degree out of range");
    const Rref& top = degree_rref(d);
    if (top.free_cols.size() != 1)
        throw InternalError("pairing_matrix: CH^top does not have rank one");
    const std::uint32_t star = top.free_cols.front();
    auto& dd_top = degree_data(d);

    // coefficient of each top monomial on the basis class
    std::vector<BigRational> topcoef(dd_top.monomials.size(), 0);
    topcoef[star] = 1;
    for (std::size_t r = 0; r < top.rows.size(); ++r) {
        BigRational at_star = 0;
        for (const auto& [c, v] : top.rows[r])
            if (c == star)
                at_star = v;
        topcoef[top.pivot_cols[r]] = -at_star;
    }

    auto basis_k = degree_basis(k);
    auto basis_l = degree_basis(d - k);
    std::vector<std::vector<long long>> matrix(basis_k.size(),
                                               std::vector<long long>(basis_l.size(), 0));
    for (std::size_t i = 0; i < basis_k.size(); ++i)
        for (std::size_t j = 0; j < basis_l.size(); ++j) {
            Monomial m;
            std::merge(basis_k[i].begin(), basis_k[i].end(), basis_l[j].begin(),
                       basis_l[j].end(), std::back_inserter(m));
            if (!monomial_survives(m))
                continue;
            const BigRational& val = topcoef[dd_top.index.at(m)];
            if (boost::multiprecision::denominator(val) != 1)
                throw InternalError("pairing_matrix: non-integral pairing value");
            matrix[i][j] = static_cast<long long>(BigInt(boost::multiprecision::numerator(val)));
        }
    return matrix;
}

bool RingPresentation::duality_check() const {
    auto betti = betti_table();
    if (!betti.palindromic())
        return false;
    if (betti.ranks.front() != 1 || betti.ranks.back() != 1)
        return false;
    const int d = top_degree_;
    for (int k = 0; 2 * k <= d; ++k) {
        auto matrix = pairing_matrix(k);
        const std::size_t rows_n = matrix.size();
        if (rows_n != static_cast<std::size_t>(betti.ranks[static_cast<std::size_t>(k)]))
            return false;
        std::vector<SparseRow> rows;
        for (const auto& r : matrix) {
            SparseRow sr;
            for (std::uint32_t c = 0; c < r.size(); ++c)
                if (r[c] != 0)
                    sr.emplace_back(c, r[c]);
            rows.push_back(std::move(sr));
        }
        if (sparse_rank(std::move(rows), static_cast<std::uint32_t>(matrix.empty() ? 0 : matrix[0].size())) != rows_n)
            return false;
    }
    return true;
}

PolyElement RingPresentation::parse_element(const std::string& text) const {
    PolyElement out;
    std::size_t pos = 0;
    auto skip_ws = [&]() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos])))
            ++pos;
    };
    skip_ws();
    if (pos == text.size())
        throw DomainError("parse_element: empty input");
    if (text.compare(pos, 1, "0") == 0 && pos + 1 == text.size())
        return out;
    bool first = true;
    while (pos < text.size()) {
        skip_ws();
        int sign = 1;
        if (text[pos] == '+' || text[pos] == '-') {
            sign = (text[pos] == '-') ? -1 : 1;
            ++pos;
            skip_ws();
        } else if (!first) {
            throw DomainError("parse_element: expected '+' or '-'");
        }
        first = false;
        BigInt coeff = 1;
        bool have_digits = false;
        std::string digits;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
            digits += text[pos++];
            have_digits = true;
        }
        if (have_digits)
            coeff = BigInt(digits);
        Monomial mono;
        skip_ws();
        bool expect_factor = !have_digits;
        while (pos < text.size()) {
            if (text[pos] == '*') {
                ++pos;
                skip_ws();
                expect_factor = true;
            } else if (!expect_factor) {
                break;
            }
            if (pos >= text.size() || (text[pos] != 'x' && text[pos] != 'y'))
                throw DomainError("parse_element: expected generator after '*'");
            std::size_t open = text.find('[', pos);
            std::size_t close = text.find(']', pos);
            if (open == std::string::npos || close == std::string::npos || close < open)
                throw DomainError("parse_element: malformed generator label");
            std::string label = text.substr(pos, close - pos + 1);
            pos = close + 1;
            int exponent = 1;
            if (pos < text.size() && text[pos] == '^') {
                ++pos;
                std::string e;
                while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
                    e += text[pos++];
                if (e.empty())
                    throw DomainError("parse_element: malformed exponent");
                exponent = std::stoi(e);
            }
            auto g = generator_index(label);
            for (int r = 0; r < exponent; ++r)
                mono.push_back(g);
            expect_factor = false;
            skip_ws();
        }
        out.add_term(std::move(mono), coeff * sign);
        skip_ws();
    }
    return out;
}

std::string RingPresentation::print_element(const PolyElement& e) const {
    if (e.is_zero())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : e.terms()) {
        BigInt mag = c < 0 ? BigInt(-c) : c;
        if (first) {
            if (c < 0)
                os << "-";
            first = false;
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        bool printed = false;
        if (mag != 1 || m.empty()) {
            os << mag.str();
            printed = true;
        }
        for (auto g : m) {
            if (printed)
                os << "*";
            os << gens_[g].label;
            printed = true;
        }
    }
    return os.str();
}

std::vector<long long> fy_hilbert_series(int n) {
    if (n < 2)
        throw DomainError("fy_hilbert_series: need n >= 2");

    auto compute = [](int m) {
        // Chains taken finest-to-coarsest over L_m minus top (bottom allowed);
        // the factor for a chain element is t + ... + t^e with e one less than
        // the rank gap to the previous element (sentinel: top, rank 0).
        std::vector<SetPartition> ground;
        for (const auto& sigma : enumerate_partitions(m))
            if (!sigma.is_top())
                ground.push_back(sigma);
        std::vector<long long> total(static_cast<std::size_t>(std::max(m - 1, 1)), 0);
        total[0] = 1; // empty chain
        std::vector<long long> poly = total;
        auto rec = [&](auto&& self, std::size_t pick, int prev_rank) -> void {
            const int cap = ground[pick].rank() - prev_rank - 1;
            if (cap <= 0)
                return;
            // multiply poly by (t + ... + t^cap) into next
            std::vector<long long> next(total.size(), 0);
            for (std::size_t d = 0; d < total.size(); ++d) {
                if (poly[d] == 0)
                    continue;
                for (int e = 1; e <= cap && d + static_cast<std::size_t>(e) < next.size(); ++e)
                    next[d + static_cast<std::size_t>(e)] += poly[d];
            }
            for (std::size_t d = 0; d < total.size(); ++d)
                total[d] += next[d];
            auto saved = std::move(poly);
            poly = std::move(next);
            // extend by strictly coarser elements (earlier in canonical order)
            for (std::size_t q = 0; q < pick; ++q)
                if (leq(ground[q], ground[pick]) && ground[q] != ground[pick])
                    self(self, q, ground[pick].rank());
            poly = std::move(saved);
        };
        // chains starting at any element; recursion handles coarser extensions
        for (std::size_t pick = 0; pick < ground.size(); ++pick)
            rec(rec, pick, 0);
        return total;
    };

    static std::mutex gate_mu;
    static std::set<int> validated;
    auto validate = [&](int m) {
        auto series = compute(m);
        auto betti = RingPresentation::make(m, RingModel::Wonderful).betti_table();
        if (series != std::vector<long long>(betti.ranks.begin(), betti.ranks.end()))
            throw InternalError("fy_hilbert_series: exponent convention disagrees with row "
                                "reduction at n=" + std::to_string(m) + "; fix the convention");
    };
    {
        std::lock_guard<std::mutex> lock(gate_mu);
        std::vector<int> to_check = (n <= 5) ? std::vector<int>{n} : std::vector<int>{3, 4, 5};
        for (int m : to_check)
            if (!validated.count(m)) {
                validate(m);
                validated.insert(m);
            }
    }
    return compute(n);
}

} // namespace wonder
