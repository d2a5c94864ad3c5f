#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace walklab {

/// A finite group as explicit tables. Elements are dense indices
/// 0..order-1 with index 0 the identity; all structure is immutable after
/// construction, so instances can be shared freely across threads.
class FiniteGroup {
public:
    static FiniteGroup cyclic(int n);
    static FiniteGroup dihedral(int n);   // order 2n, n >= 3
    static FiniteGroup symmetric(int n);  // n <= 6
    static FiniteGroup product(const FiniteGroup& a, const FiniteGroup& b);

    /// Wrap externally supplied tables (mul is row-major order x order).
    static FiniteGroup custom(std::vector<int> mul, std::vector<std::string> labels,
                              std::string tag = "custom");

    int order() const { return order_; }
    int mul(int g, int h) const { return mul_[static_cast<std::size_t>(g) * order_ + h]; }
    int inv(int g) const { return inv_[g]; }
    int identity() const { return 0; }
    const std::string& label(int g) const { return labels_[g]; }
    const std::vector<std::string>& labels() const { return labels_; }
    const std::string& family_tag() const { return tag_; }

    /// Structured descriptor, e.g. {"family":"product","a":...,"b":...};
    /// {"family":"custom"} when the group came from raw tables.
    const nlohmann::json& family_spec() const { return spec_; }

private:
    FiniteGroup() = default;
    void finish();  // derives inv_, checks identity placement

    int order_ = 0;
    std::vector<int> mul_;  // row-major
    std::vector<int> inv_;
    std::vector<std::string> labels_;
    std::string tag_;
    nlohmann::json spec_;
};

/// Construct from a family descriptor, e.g.
///   {"family":"cyclic","n":5}
///   {"family":"product","a":{...},"b":{...}}
FiniteGroup construct_group(const nlohmann::json& spec);

struct ConjugacyPartition {
    std::vector<std::vector<int>> classes;  // ordered by (size, min element)
    std::vector<int> class_of;
};

ConjugacyPartition conjugacy_classes(const FiniteGroup& g);

struct AxiomReport {
    bool valid = true;
    bool exhaustive = true;  // false when associativity was sampled
    std::string violation;   // first violated axiom, empty if valid
};

/// Diagnoses associativity, identity, inverses and the Latin-square
/// property. Exhaustive for order <= 200, otherwise 10,000 seeded triples.
AxiomReport verify_group_axioms(const FiniteGroup& g, std::uint64_t seed = 0);

nlohmann::json group_to_json(const FiniteGroup& g);
FiniteGroup group_from_json(const nlohmann::json& j);

} // namespace walklab
