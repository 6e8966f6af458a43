#ifndef THINLOOP_FUSION_HPP
#define THINLOOP_FUSION_HPP

/**
 * Fusion maps on the thin loop space.
 *
 * A fusion map with abelian values is a homomorphism on the free group of the
 * 1-skeleton, so it is stored by its values on the cycle basis of a spanning
 * tree. LoopTable is the extensional form (loop -> value) used to ingest and
 * validate maps that are not known to be fusion.
 */

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <vector>

#include "thinloop/complex.hpp"
#include "thinloop/group.hpp"
#include "thinloop/words.hpp"

namespace thinloop {

using ComplexPtr = std::shared_ptr<const Complex>;

class FusionMap
{
public:
    /// values must be keyed by exactly the non-tree edges of tree.
    FusionMap(ComplexPtr complex, GroupSpec group, Tree tree, std::map<EdgeId, GroupElement> values);

    const Complex& complex() const { return *complex_; }
    const ComplexPtr& complex_ptr() const { return complex_; }
    const GroupSpec& group() const { return group_; }
    const Tree& tree() const { return tree_; }
    VertexId basepoint() const { return tree_.basepoint(); }
    const std::map<EdgeId, GroupElement>& values() const { return values_; }

    /// Value on the basis loop of a non-tree edge.
    const GroupElement& value(EdgeId e) const;

    /// Signed sum of basis values along any word; tree edges contribute nothing.
    GroupElement signed_sum(const Word& w) const;

private:
    ComplexPtr complex_;
    GroupSpec group_;
    Tree tree_;
    std::map<EdgeId, GroupElement> values_;
    std::vector<std::optional<GroupElement>> by_edge_;
};

/// Every basis value is the identity.
FusionMap trivial_fusion_map(ComplexPtr complex, const GroupSpec& group, VertexId basepoint);

/// Basis values drawn with random_element; deterministic in seed.
FusionMap random_fusion_map(ComplexPtr complex, const GroupSpec& group, VertexId basepoint, std::uint64_t seed);

GroupElement evaluate(const FusionMap& f, const ThinLoop& l);

/// f evaluated on loop_of_pair(gamma1, gamma2).
GroupElement evaluate_pair(const FusionMap& f, const ThinPath& gamma1, const ThinPath& gamma2);

/// Throws StructuralError unless f and g share complex, tree and group.
void require_compatible(const FusionMap& f, const FusionMap& g);

FusionMap multiply(const FusionMap& f, const FusionMap& g);
FusionMap invert(const FusionMap& f);

/// True iff f is trivial on every cell boundary.
bool is_locally_constant(const FusionMap& f);

/// pi0 projection of each basis value, keyed by non-tree edge.
std::map<EdgeId, GroupElement> homotopy_class(const FusionMap& f);
bool are_fusion_homotopic(const FusionMap& f, const FusionMap& g);

/// Basis-wise equality of two maps over the same structure.
bool same_values(const FusionMap& f, const FusionMap& g);

// ----------------------------------------------------------------------------
// Extensional tables
// ----------------------------------------------------------------------------

struct LoopTable
{
    GroupSpec group;
    std::map<ThinLoop, GroupElement> entries;
    std::size_t max_len = 0;
};

using LoopFunction = std::function<GroupElement(const ThinLoop&)>;

/// Values of f on every canonical loop of length at most max_len.
LoopTable tabulate(const FusionMap& f, std::size_t max_len);

/// Table lookup; CoverageError naming the loop when it is absent.
LoopFunction table_lookup(const Complex& c, const LoopTable& table);

inline constexpr std::size_t kMaxFusionTripleLength = 6;

struct FusionViolation
{
    ThinPath gamma1, gamma2, gamma3;
    GroupElement lhs; // f(l(g1,g2)) * f(l(g2,g3))
    GroupElement rhs; // f(l(g1,g3))
};

/// Checks the fusion identity on every triple of reduced paths of length at
/// most max_len sharing start and end points. Returns at most
/// max_violations violations; an empty result means the identity holds.
/// Throws LimitError above kMaxFusionTripleLength and CoverageError for loops
/// missing from the table.
std::vector<FusionViolation> validate_fusion(const LoopTable& table, const Complex& c, std::size_t max_len,
                                             std::size_t max_violations = 64);

/// Same check for an arbitrary loop function over group `group`.
std::vector<FusionViolation> validate_fusion(const LoopFunction& f, const GroupSpec& group, const Complex& c,
                                             std::size_t max_len, std::size_t max_violations = 64);

/// Compresses a table to cycle-basis form over the breadth-first tree at
/// basepoint. Fusion is validated on path triples of length up to half the
/// table's bound (capped at 6). Throws FusionError, CoverageError, or
/// InconsistencyError.
FusionMap from_table(const LoopTable& table, ComplexPtr complex, VertexId basepoint);

/// All reduced paths of length at most max_len, grouped by (start, end).
std::map<std::pair<VertexId, VertexId>, std::vector<ThinPath>> enumerate_paths(const Complex& c, std::size_t max_len);

} // namespace thinloop

#endif
