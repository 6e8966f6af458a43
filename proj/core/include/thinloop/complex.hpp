#ifndef THINLOOP_COMPLEX_HPP
#define THINLOOP_COMPLEX_HPP

/**
 * Finite 2-complexes: vertices, directed edges (multi-edges and self-loops
 * allowed) and 2-cells glued along closed edge walks.
 *
 * Vertices and edges are stored sorted by name, so every derived structure
 * (spanning trees, cycle bases, loop enumerations) depends only on names and
 * never on the order in which the input listed them.
 */

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "thinloop/words.hpp"

namespace thinloop {

/// Raw, unvalidated description of a complex, as read from a file.
struct ComplexSpec
{
    struct Edge
    {
        std::string id;
        std::string src;
        std::string dst;
    };
    struct Cell
    {
        std::string id;
        std::vector<std::string> boundary; // "<edge>+" / "<edge>-" tokens
    };

    std::vector<std::string> vertices;
    std::vector<Edge> edges;
    std::vector<Cell> cells;
};

struct Diagnostic
{
    std::string subject; // offending identifier
    std::string message;

    friend bool operator==(const Diagnostic&, const Diagnostic&) = default;
};

/// Empty iff the description is a well-formed complex.
std::vector<Diagnostic> validate_complex(const ComplexSpec& spec);

class Complex
{
public:
    struct Edge
    {
        std::string id;
        VertexId src;
        VertexId dst;
    };
    struct Cell
    {
        std::string id;
        VertexId start;
        Word boundary;
    };

    /// Throws StructuralError carrying every diagnostic when the spec is invalid.
    static Complex build(const ComplexSpec& spec);

    std::size_t vertex_count() const { return vertices_.size(); }
    std::size_t edge_count() const { return edges_.size(); }
    std::size_t cell_count() const { return cells_.size(); }

    const std::string& vertex_name(VertexId v) const { return vertices_.at(v); }
    const Edge& edge(EdgeId e) const { return edges_.at(e); }
    const Cell& cell(CellId c) const { return cells_.at(c); }
    const std::vector<Edge>& edges() const { return edges_; }
    const std::vector<Cell>& cells() const { return cells_; }

    std::optional<VertexId> find_vertex(std::string_view name) const;
    std::optional<EdgeId> find_edge(std::string_view name) const;
    std::optional<CellId> find_cell(std::string_view name) const;
    /// Throwing lookups (StructuralError naming the identifier).
    VertexId vertex(std::string_view name) const;
    EdgeId edge_index(std::string_view name) const;
    CellId cell_index(std::string_view name) const;

    VertexId tail(Traversal t) const { return t.dir == Dir::Plus ? edges_[t.edge].src : edges_[t.edge].dst; }
    VertexId head(Traversal t) const { return t.dir == Dir::Plus ? edges_[t.edge].dst : edges_[t.edge].src; }

    /// Traversals leaving v, ascending by (edge name, direction). A self-loop
    /// at v contributes both of its directions.
    const std::vector<Traversal>& outgoing(VertexId v) const { return outgoing_.at(v); }

    bool is_connected() const;
    /// Euler count #edges - #vertices + 1 (connected complexes only).
    std::size_t cycle_rank() const { return edges_.size() + 1 - vertices_.size(); }

    Traversal parse_token(std::string_view token) const;
    std::string token(Traversal t) const;

    ComplexSpec to_spec() const;

    friend bool operator==(const Complex& a, const Complex& b);

private:
    std::vector<std::string> vertices_;
    std::vector<Edge> edges_;
    std::vector<Cell> cells_;
    std::vector<std::vector<Traversal>> outgoing_;
};

/// Parses "<edge-id>+" / "<edge-id>-" without a complex; throws ParseError.
std::pair<std::string, Dir> split_token(std::string_view token);

// ----------------------------------------------------------------------------
// Spanning tree and cycle basis
// ----------------------------------------------------------------------------

class Tree
{
public:
    struct Link
    {
        EdgeId edge;
        Dir dir;         // direction of travel from parent to child
        VertexId parent;
    };

    /// Breadth-first tree from basepoint; each dequeued vertex scans its
    /// incident edges in ascending edge-name order.
    static Tree breadth_first(const Complex& c, VertexId basepoint);

    /// Tree from an explicit edge set; throws StructuralError unless the edges
    /// form a spanning tree of c.
    static Tree from_edges(const Complex& c, VertexId basepoint, const std::vector<EdgeId>& edges);

    VertexId basepoint() const { return basepoint_; }
    std::size_t vertex_count() const { return links_.size(); }
    const std::optional<Link>& link(VertexId v) const { return links_.at(v); }
    bool is_tree_edge(EdgeId e) const { return tree_edge_.at(e); }
    /// Tree edges in ascending order.
    std::vector<EdgeId> edges() const;

    /// The reduced tree word from the basepoint to v.
    const ThinPath& path_to(VertexId v) const;

    friend bool operator==(const Tree& a, const Tree& b)
    {
        return a.basepoint_ == b.basepoint_ && a.tree_edge_ == b.tree_edge_;
    }

private:
    void finish(const Complex& c);

    VertexId basepoint_ = 0;
    std::vector<std::optional<Link>> links_;
    std::vector<bool> tree_edge_;
    std::vector<ThinPath> paths_;
};

/// Throws ConnectivityError naming an unreachable vertex.
Tree spanning_tree(const Complex& c, VertexId basepoint);

struct BasisLoop
{
    EdgeId edge;
    /// reverse(path_to(dst)) after e after path_to(src), freely reduced and
    /// based at the tree's basepoint.
    ThinPath loop;
};

/// One entry per non-tree edge, ascending by edge name.
std::vector<BasisLoop> cycle_basis(const Complex& c, const Tree& t);

inline constexpr std::size_t kMaxEnumerationLength = 12;

/// All canonical thin loops of length at most max_len, the empty loop first,
/// then shortlex order. Throws LimitError above kMaxEnumerationLength.
std::vector<ThinLoop> enumerate_loops(const Complex& c, std::size_t max_len);

// ----------------------------------------------------------------------------
// Seeded instances
// ----------------------------------------------------------------------------

struct RandomComplexLimits
{
    std::size_t min_vertices = 1;
    std::size_t max_vertices = 8;
    std::size_t max_edges = 16;
    std::size_t max_cells = 4;
    /// Cap on cycle rank, as extra edges per vertex beyond a tree.
    std::size_t max_extra_per_vertex = 1;
    bool allow_self_loops = true;
};

/// Connected random complex, deterministic in (seed, limits). Cells are glued
/// along cyclically reduced cycle-basis loops or products of two of them.
ComplexSpec random_complex(std::uint64_t seed, const RandomComplexLimits& limits = {});

} // namespace thinloop

#endif
