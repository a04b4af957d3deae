#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "wonder/arrangement.hpp"
#include "wonder/linalg.hpp"
#include "wonder/partition.hpp"

namespace wonder {

/// Wonderful: boundary-divisor presentation x_sigma, sigma in L_n minus
/// {bottom, top}; quadratic relations kill incomparable products, linear
/// relations identify the edge sums.  Keel: the same pattern over subsets
/// 2 <= |S| <= n-1 with crossing products killed.  Augmented: y_e per edge
/// and x_sigma for sigma != bottom, with y_e = sum over sigma not merging e.
enum class RingModel { Wonderful, Keel, Augmented };

/// Monomial in the generators: sorted index multiset.
using Monomial = std::vector<std::uint16_t>;

/// Sparse exact-integer ring element.
class PolyElement {
public:
    PolyElement() = default;

    bool is_zero() const { return terms_.empty(); }
    const std::map<Monomial, BigInt>& terms() const { return terms_; }

    void add_term(Monomial m, BigInt coeff);
    PolyElement operator+(const PolyElement& o) const;
    PolyElement operator-(const PolyElement& o) const;
    PolyElement operator*(const BigInt& scalar) const;
    bool operator==(const PolyElement& o) const { return terms_ == o.terms_; }

private:
    std::map<Monomial, BigInt> terms_; // no zero coefficients stored
};

struct GeneratorInfo {
    std::string label;                     // "x[12|34]" or "y[1,3]"
    std::optional<SetPartition> sigma;     // Wonderful/Augmented x-generators
    std::optional<std::vector<int>> subset; // Keel subsets / Augmented edges
};

/// Graded ring by generators and relations; graded dimensions, normal forms
/// and the top-degree pairing are computed per degree by exact row reduction
/// over the monomials that survive the quadratic ideal.
class RingPresentation {
public:
    static RingPresentation make(int n, RingModel model);

    int n() const { return n_; }
    RingModel model() const { return model_; }
    int top_degree() const { return top_degree_; }
    int generator_count() const { return static_cast<int>(gens_.size()); }
    const std::vector<GeneratorInfo>& generators() const { return gens_; }

    /// Index lookup by label; DomainError if unknown.
    std::uint16_t generator_index(const std::string& label) const;

    /// False iff the product of the two generators lies in the quadratic
    /// ideal (so every monomial with an incompatible pair is zero).
    bool compatible(std::uint16_t g, std::uint16_t h) const;
    bool monomial_survives(const Monomial& m) const;

    /// The spanning difference relations actually used for row reduction.
    const std::vector<std::vector<std::pair<std::uint16_t, int>>>& linear_relations() const {
        return linear_relations_;
    }
    /// Every displayed linear relation, as ring elements (for verification).
    std::vector<PolyElement> displayed_linear_relations() const;

    long long graded_dimension(int k) const;
    BettiTable betti_table() const;

    /// J-surviving monomials of degree k in degree-lex order; the quotient
    /// basis of CH^k is the subset at the non-pivot positions.
    std::vector<Monomial> degree_monomials(int k) const;
    std::vector<Monomial> degree_basis(int k) const;

    PolyElement multiply(const PolyElement& a, const PolyElement& b) const;
    PolyElement normal_form(const PolyElement& a) const;

    /// Multiplication CH^k x CH^{d-k} -> CH^d = Z in the degree_basis bases,
    /// the top degree identified with Z via its unique basis element.
    std::vector<std::vector<long long>> pairing_matrix(int k) const;

    /// Nondegenerate pairing in every degree plus palindromic Betti table.
    bool duality_check() const;

    PolyElement parse_element(const std::string& text) const;
    std::string print_element(const PolyElement& e) const;

private:
    RingPresentation() = default;

    int n_ = 0;
    RingModel model_ = RingModel::Wonderful;
    int top_degree_ = 0;
    std::vector<GeneratorInfo> gens_;
    std::map<std::string, std::uint16_t> label_index_;
    std::vector<std::vector<std::uint64_t>> compat_; // bitset rows
    std::vector<std::vector<std::pair<std::uint16_t, int>>> linear_relations_;

    struct DegreeData {
        bool monomials_done = false;
        std::vector<Monomial> monomials;
        std::map<Monomial, std::uint32_t> index;
        std::vector<std::vector<std::uint64_t>> masks; // compat mask per monomial
        std::optional<std::size_t> relation_rank;
        std::shared_ptr<const Rref> rref;
    };
    mutable std::mutex mu_;
    mutable std::map<int, DegreeData> degree_cache_;

    DegreeData& degree_data(int k) const;
    void ensure_monomials(DegreeData& dd, int k) const;
    std::vector<SparseRow> relation_rows(int k) const;
    const Rref& degree_rref(int k) const;
    std::vector<std::uint64_t> monomial_mask(const Monomial& m) const;
};

/// Chain-sum Hilbert series of the Wonderful model: coefficients of t^0..t^{n-2}.
/// Validated against the row-reduction Betti table for n <= 5 before any
/// larger n is returned; a mismatch is a hard failure.
std::vector<long long> fy_hilbert_series(int n);

} // namespace wonder
