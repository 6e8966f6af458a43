#ifndef THINLOOP_CONNECTION_HPP
#define THINLOOP_CONNECTION_HPP

/**
 * Principal A-bundles with connection over a complex, in the canonical
 * trivialization: one transport value per edge, read along the edge's positive
 * orientation. Fibres are vertex x A; gauges act vertex-wise.
 */

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "thinloop/complex.hpp"
#include "thinloop/fusion.hpp"
#include "thinloop/group.hpp"

namespace thinloop {

class Connection
{
public:
    /// transport holds one value per edge, indexed by EdgeId.
    Connection(ComplexPtr complex, GroupSpec group, std::vector<GroupElement> transport);

    const Complex& complex() const { return *complex_; }
    const ComplexPtr& complex_ptr() const { return complex_; }
    const GroupSpec& group() const { return group_; }
    const GroupElement& transport(EdgeId e) const { return transport_.at(e); }
    const std::vector<GroupElement>& transports() const { return transport_; }

private:
    ComplexPtr complex_;
    GroupSpec group_;
    std::vector<GroupElement> transport_;
};

struct Gauge
{
    std::vector<GroupElement> assignment; // indexed by VertexId
};

struct FiberElement
{
    VertexId vertex;
    GroupElement value;
};

Connection trivial_connection(ComplexPtr complex, const GroupSpec& group);
Gauge identity_gauge(const Complex& c, const GroupSpec& group);

/// Edge values drawn with random_element; deterministic in seed.
Connection random_connection(const GroupSpec& group, ComplexPtr complex, std::uint64_t seed);
Gauge random_gauge(const GroupSpec& group, const Complex& c, std::uint64_t seed);

/// t'(e) = g(dst) * t(e) * g(src)^-1
Connection apply_gauge(const Connection& c, const Gauge& g);

/// Ordered product along the word; negative traversals contribute inverses.
GroupElement parallel_transport(const Connection& c, const EdgePath& p);
GroupElement parallel_transport(const Connection& c, const ThinPath& p);
/// (end(p), x.value * parallel_transport(p)); StructuralError unless p starts at x.vertex.
FiberElement transport_fiber(const Connection& c, const ThinPath& p, const FiberElement& x);

GroupElement holonomy(const Connection& c, const ThinLoop& l);

/// Holonomy around the cell's boundary word.
GroupElement curvature(const Connection& c, CellId cell);
bool is_flat(const Connection& c);

/// Edge-wise product.
Connection tensor(const Connection& a, const Connection& b);

/// A gauge g with apply_gauge(a, g) == b, or nullopt. Built by matching
/// transports along a breadth-first spanning forest (identity at each root),
/// then verified on every edge.
std::optional<Gauge> are_isomorphic(const Connection& a, const Connection& b);

/// Edge-by-edge check that apply_gauge(a, g) equals b.
bool is_gauge_witness(const Connection& a, const Connection& b, const Gauge& g);

/// pi0 projection of the holonomy of each cycle-basis loop of the
/// breadth-first tree at basepoint, keyed by non-tree edge.
std::map<EdgeId, GroupElement> deformation_class(const Connection& c, VertexId basepoint = 0);

/// Edge-wise equality (circle parts within tolerance).
bool same_transports(const Connection& a, const Connection& b);

void require_compatible(const Connection& a, const Connection& b);

} // namespace thinloop

#endif
