#include "thinloop/complex.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include "thinloop/errors.hpp"
#include "thinloop/path.hpp"

namespace thinloop {

std::pair<std::string, Dir> split_token(std::string_view token)
{
    if (token.size() < 2 || (token.back() != '+' && token.back() != '-'))
        throw ParseError("invalid traversal token '" + std::string(token) + "'");
    return {std::string(token.substr(0, token.size() - 1)), token.back() == '+' ? Dir::Plus : Dir::Minus};
}

std::vector<Diagnostic> validate_complex(const ComplexSpec& spec)
{
    std::vector<Diagnostic> out;

    std::set<std::string> vertices;
    for (const auto& v : spec.vertices)
        if (!vertices.insert(v).second)
            out.push_back({v, "duplicate vertex id"});

    std::map<std::string, const ComplexSpec::Edge*> edges;
    for (const auto& e : spec.edges) {
        if (!edges.emplace(e.id, &e).second)
            out.push_back({e.id, "duplicate edge id"});
        if (!vertices.count(e.src))
            out.push_back({e.src, "edge " + e.id + " starts at undeclared vertex " + e.src});
        if (!vertices.count(e.dst))
            out.push_back({e.dst, "edge " + e.id + " ends at undeclared vertex " + e.dst});
    }

    std::set<std::string> cells;
    for (const auto& cell : spec.cells) {
        if (!cells.insert(cell.id).second)
            out.push_back({cell.id, "duplicate cell id"});
        if (cell.boundary.empty()) {
            out.push_back({cell.id, "cell boundary is empty"});
            continue;
        }
        // Walk the boundary; stop at the first broken step.
        std::optional<std::string> first_start;
        std::optional<std::string> at;
        bool broken = false;
        for (const auto& token : cell.boundary) {
            std::pair<std::string, Dir> parsed;
            try {
                parsed = split_token(token);
            } catch (const ParseError&) {
                out.push_back({cell.id, "cell boundary has malformed token '" + token + "'"});
                broken = true;
                break;
            }
            auto it = edges.find(parsed.first);
            if (it == edges.end()) {
                out.push_back({cell.id, "cell boundary uses unknown edge " + parsed.first});
                broken = true;
                break;
            }
            const auto& from = parsed.second == Dir::Plus ? it->second->src : it->second->dst;
            const auto& to = parsed.second == Dir::Plus ? it->second->dst : it->second->src;
            if (at && *at != from) {
                out.push_back({cell.id, "cell boundary is not composable at token '" + token + "'"});
                broken = true;
                break;
            }
            if (!first_start)
                first_start = from;
            at = to;
        }
        if (!broken && at != first_start)
            out.push_back({cell.id, "cell boundary is not closed"});
    }
    return out;
}

Complex Complex::build(const ComplexSpec& spec)
{
    const auto diagnostics = validate_complex(spec);
    if (!diagnostics.empty()) {
        std::ostringstream msg;
        msg << "invalid complex:";
        for (const auto& d : diagnostics)
            msg << "\n  " << d.subject << ": " << d.message;
        throw StructuralError(msg.str());
    }

    Complex c;
    c.vertices_ = spec.vertices;
    std::sort(c.vertices_.begin(), c.vertices_.end());

    std::vector<const ComplexSpec::Edge*> sorted;
    for (const auto& e : spec.edges)
        sorted.push_back(&e);
    std::sort(sorted.begin(), sorted.end(), [](auto* a, auto* b) { return a->id < b->id; });
    for (const auto* e : sorted)
        c.edges_.push_back({e->id, c.vertex(e->src), c.vertex(e->dst)});

    c.outgoing_.assign(c.vertices_.size(), {});
    for (EdgeId e = 0; e < c.edges_.size(); ++e) {
        c.outgoing_[c.edges_[e].src].push_back({e, Dir::Plus});
        c.outgoing_[c.edges_[e].dst].push_back({e, Dir::Minus});
    }
    for (auto& list : c.outgoing_)
        std::sort(list.begin(), list.end());

    for (const auto& cell : spec.cells) {
        Cell out{cell.id, 0, {}};
        for (const auto& token : cell.boundary)
            out.boundary.push_back(c.parse_token(token));
        out.start = c.tail(out.boundary.front());
        c.cells_.push_back(std::move(out));
    }
    std::sort(c.cells_.begin(), c.cells_.end(), [](const Cell& a, const Cell& b) { return a.id < b.id; });
    return c;
}

std::optional<VertexId> Complex::find_vertex(std::string_view name) const
{
    auto it = std::lower_bound(vertices_.begin(), vertices_.end(), name);
    if (it == vertices_.end() || *it != name)
        return std::nullopt;
    return static_cast<VertexId>(it - vertices_.begin());
}

std::optional<EdgeId> Complex::find_edge(std::string_view name) const
{
    auto it = std::lower_bound(edges_.begin(), edges_.end(), name,
                               [](const Edge& e, std::string_view n) { return e.id < n; });
    if (it == edges_.end() || it->id != name)
        return std::nullopt;
    return static_cast<EdgeId>(it - edges_.begin());
}

std::optional<CellId> Complex::find_cell(std::string_view name) const
{
    auto it = std::lower_bound(cells_.begin(), cells_.end(), name,
                               [](const Cell& c, std::string_view n) { return c.id < n; });
    if (it == cells_.end() || it->id != name)
        return std::nullopt;
    return static_cast<CellId>(it - cells_.begin());
}

VertexId Complex::vertex(std::string_view name) const
{
    if (auto v = find_vertex(name))
        return *v;
    throw StructuralError("unknown vertex " + std::string(name));
}

EdgeId Complex::edge_index(std::string_view name) const
{
    if (auto e = find_edge(name))
        return *e;
    throw StructuralError("unknown edge " + std::string(name));
}

CellId Complex::cell_index(std::string_view name) const
{
    if (auto c = find_cell(name))
        return *c;
    throw StructuralError("unknown cell " + std::string(name));
}

bool Complex::is_connected() const
{
    if (vertices_.empty())
        return true;
    std::vector<bool> seen(vertices_.size(), false);
    std::vector<VertexId> stack{0};
    seen[0] = true;
    std::size_t count = 1;
    while (!stack.empty()) {
        const auto v = stack.back();
        stack.pop_back();
        for (const auto& t : outgoing_[v]) {
            const auto w = head(t);
            if (!seen[w]) {
                seen[w] = true;
                ++count;
                stack.push_back(w);
            }
        }
    }
    return count == vertices_.size();
}

Traversal Complex::parse_token(std::string_view token) const
{
    auto [name, dir] = split_token(token);
    return {edge_index(name), dir};
}

std::string Complex::token(Traversal t) const
{
    return edges_.at(t.edge).id + (t.dir == Dir::Plus ? "+" : "-");
}

ComplexSpec Complex::to_spec() const
{
    ComplexSpec spec;
    spec.vertices = vertices_;
    for (const auto& e : edges_)
        spec.edges.push_back({e.id, vertices_[e.src], vertices_[e.dst]});
    for (const auto& cell : cells_) {
        ComplexSpec::Cell out{cell.id, {}};
        for (const auto& t : cell.boundary)
            out.boundary.push_back(token(t));
        spec.cells.push_back(std::move(out));
    }
    return spec;
}

bool operator==(const Complex& a, const Complex& b)
{
    if (&a == &b)
        return true;
    if (a.vertices_ != b.vertices_ || a.edges_.size() != b.edges_.size() || a.cells_.size() != b.cells_.size())
        return false;
    for (std::size_t i = 0; i < a.edges_.size(); ++i) {
        const auto& x = a.edges_[i];
        const auto& y = b.edges_[i];
        if (x.id != y.id || x.src != y.src || x.dst != y.dst)
            return false;
    }
    for (std::size_t i = 0; i < a.cells_.size(); ++i)
        if (a.cells_[i].id != b.cells_[i].id || a.cells_[i].boundary != b.cells_[i].boundary)
            return false;
    return true;
}

// ----------------------------------------------------------------------------
// Trees
// ----------------------------------------------------------------------------

Tree Tree::breadth_first(const Complex& c, VertexId basepoint)
{
    if (basepoint >= c.vertex_count())
        throw StructuralError("basepoint is not a vertex of the complex");
    Tree t;
    t.basepoint_ = basepoint;
    t.links_.assign(c.vertex_count(), std::nullopt);
    t.tree_edge_.assign(c.edge_count(), false);

    std::vector<bool> seen(c.vertex_count(), false);
    std::deque<VertexId> queue{basepoint};
    seen[basepoint] = true;
    while (!queue.empty()) {
        const auto u = queue.front();
        queue.pop_front();
        for (const auto& step : c.outgoing(u)) {
            const auto w = c.head(step);
            if (seen[w])
                continue;
            seen[w] = true;
            t.links_[w] = Link{step.edge, step.dir, u};
            t.tree_edge_[step.edge] = true;
            queue.push_back(w);
        }
    }
    for (VertexId v = 0; v < c.vertex_count(); ++v)
        if (!seen[v])
            throw ConnectivityError("complex is disconnected: vertex " + c.vertex_name(v)
                                    + " is unreachable from " + c.vertex_name(basepoint));
    t.finish(c);
    return t;
}

Tree Tree::from_edges(const Complex& c, VertexId basepoint, const std::vector<EdgeId>& edges)
{
    if (basepoint >= c.vertex_count())
        throw StructuralError("basepoint is not a vertex of the complex");
    if (edges.size() + 1 != c.vertex_count())
        throw StructuralError("a spanning tree needs exactly #vertices - 1 edges");
    Tree t;
    t.basepoint_ = basepoint;
    t.links_.assign(c.vertex_count(), std::nullopt);
    t.tree_edge_.assign(c.edge_count(), false);
    for (auto e : edges) {
        if (e >= c.edge_count())
            throw StructuralError("tree edge index out of range");
        t.tree_edge_[e] = true;
    }

    std::vector<bool> seen(c.vertex_count(), false);
    std::deque<VertexId> queue{basepoint};
    seen[basepoint] = true;
    std::size_t reached = 1;
    while (!queue.empty()) {
        const auto u = queue.front();
        queue.pop_front();
        for (const auto& step : c.outgoing(u)) {
            if (!t.tree_edge_[step.edge])
                continue;
            const auto w = c.head(step);
            if (seen[w]) {
                if (!(t.links_[u] && t.links_[u]->edge == step.edge))
                    throw StructuralError("tree edges contain a cycle through edge " + c.edge(step.edge).id);
                continue;
            }
            seen[w] = true;
            ++reached;
            t.links_[w] = Link{step.edge, step.dir, u};
            queue.push_back(w);
        }
    }
    if (reached != c.vertex_count())
        throw StructuralError("tree edges do not span the complex");
    t.finish(c);
    return t;
}

void Tree::finish(const Complex& c)
{
    paths_.assign(links_.size(), {});
    // Parents are always reached before children, so resolve by depth.
    std::vector<int> depth(links_.size(), -1);
    depth[basepoint_] = 0;
    std::function<int(VertexId)> depth_of = [&](VertexId v) -> int {
        if (depth[v] < 0)
            depth[v] = depth_of(links_[v]->parent) + 1;
        return depth[v];
    };
    std::vector<VertexId> order(links_.size());
    std::iota(order.begin(), order.end(), VertexId{0});
    for (auto v : order)
        depth_of(v);
    std::stable_sort(order.begin(), order.end(), [&](VertexId a, VertexId b) { return depth[a] < depth[b]; });
    for (auto v : order) {
        if (v == basepoint_) {
            paths_[v] = ThinPath::from_reduced(v, v, {});
            continue;
        }
        const auto& link = *links_[v];
        Word w = paths_[link.parent].word();
        w.push_back({link.edge, link.dir});
        paths_[v] = ThinPath::from_reduced(basepoint_, v, std::move(w));
    }
    (void)c;
}

std::vector<EdgeId> Tree::edges() const
{
    std::vector<EdgeId> out;
    for (EdgeId e = 0; e < tree_edge_.size(); ++e)
        if (tree_edge_[e])
            out.push_back(e);
    return out;
}

const ThinPath& Tree::path_to(VertexId v) const
{
    if (v >= paths_.size())
        throw StructuralError("tree_path: vertex is not in the complex");
    return paths_[v];
}

Tree spanning_tree(const Complex& c, VertexId basepoint) { return Tree::breadth_first(c, basepoint); }

std::vector<BasisLoop> cycle_basis(const Complex& c, const Tree& t)
{
    if (t.vertex_count() != c.vertex_count())
        throw StructuralError("cycle_basis: tree does not belong to this complex");
    std::vector<BasisLoop> out;
    for (EdgeId e = 0; e < c.edge_count(); ++e) {
        if (t.is_tree_edge(e))
            continue;
        const auto& edge = c.edge(e);
        EdgePath walk{t.basepoint(), t.path_to(edge.src).word()};
        walk.word.push_back({e, Dir::Plus});
        const ThinPath back = reverse(c, t.path_to(edge.dst));
        for (const auto& step : back.word())
            walk.word.push_back(step);
        out.push_back({e, reduce(c, walk)});
    }
    return out;
}

// ----------------------------------------------------------------------------
// Loop enumeration
// ----------------------------------------------------------------------------

namespace {

bool is_least_rotation(const Word& w)
{
    const std::size_t n = w.size();
    for (std::size_t k = 1; k < n; ++k) {
        for (std::size_t i = 0; i < n; ++i) {
            const auto& a = w[(k + i) % n];
            const auto& b = w[i];
            if (a < b)
                return false;
            if (b < a)
                break;
        }
    }
    return true;
}

struct LoopSearch
{
    const Complex& c;
    std::size_t max_len;
    Traversal first;
    VertexId origin;
    Word word;
    std::vector<ThinLoop>& out;

    void extend(VertexId at)
    {
        if (!word.empty() && at == origin && !word.back().cancels(word.front()) && is_least_rotation(word))
            out.push_back(ThinLoop::from_canonical(word));
        if (word.size() == max_len)
            return;
        for (const auto& step : c.outgoing(at)) {
            if (step < first)
                continue;
            if (!word.empty() && word.back().cancels(step))
                continue;
            word.push_back(step);
            extend(c.head(step));
            word.pop_back();
        }
    }
};

} // namespace

std::vector<ThinLoop> enumerate_loops(const Complex& c, std::size_t max_len)
{
    if (max_len > kMaxEnumerationLength)
        throw LimitError("enumerate_loops: max_len " + std::to_string(max_len) + " exceeds the guard of "
                         + std::to_string(kMaxEnumerationLength));
    std::vector<ThinLoop> out{ThinLoop{}};
    if (max_len == 0)
        return out;
    for (VertexId v = 0; v < c.vertex_count(); ++v) {
        for (const auto& first : c.outgoing(v)) {
            LoopSearch search{c, max_len, first, v, {first}, out};
            search.extend(c.head(first));
        }
    }
    std::sort(out.begin() + 1, out.end());
    return out;
}

// ----------------------------------------------------------------------------
// Random complexes
// ----------------------------------------------------------------------------

namespace {

std::size_t pick(std::mt19937_64& rng, std::size_t lo, std::size_t hi)
{
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

std::string padded(char prefix, std::size_t i)
{
    std::string digits = std::to_string(i);
    if (digits.size() < 2)
        digits.insert(0, "0");
    return std::string(1, prefix) + digits;
}

} // namespace

ComplexSpec random_complex(std::uint64_t seed, const RandomComplexLimits& limits)
{
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
    const std::size_t max_v = std::min(limits.max_vertices, limits.max_edges + 1);
    const std::size_t nv = pick(rng, std::max<std::size_t>(1, limits.min_vertices), std::max<std::size_t>(1, max_v));

    ComplexSpec spec;
    for (std::size_t i = 0; i < nv; ++i)
        spec.vertices.push_back(padded('v', i));

    struct RawEdge { std::size_t src, dst; };
    std::vector<RawEdge> raw;
    for (std::size_t i = 1; i < nv; ++i) {
        const auto j = pick(rng, 0, i - 1);
        if (pick(rng, 0, 1))
            raw.push_back({i, j});
        else
            raw.push_back({j, i});
    }
    const std::size_t room = limits.max_edges - raw.size();
    const std::size_t extra = pick(rng, 0, std::min(room, limits.max_extra_per_vertex * nv + 1));
    for (std::size_t k = 0; k < extra; ++k) {
        auto u = pick(rng, 0, nv - 1);
        auto v = pick(rng, 0, nv - 1);
        if (u == v && (!limits.allow_self_loops || pick(rng, 0, 3) != 0))
            v = (nv > 1) ? (u + 1 + pick(rng, 0, nv - 2)) % nv : u;
        if (u == v && !limits.allow_self_loops)
            continue;
        raw.push_back({u, v});
    }

    std::vector<std::size_t> names(raw.size());
    std::iota(names.begin(), names.end(), std::size_t{0});
    std::shuffle(names.begin(), names.end(), rng);
    for (std::size_t k = 0; k < raw.size(); ++k)
        spec.edges.push_back({padded('e', names[k]), spec.vertices[raw[k].src], spec.vertices[raw[k].dst]});

    const Complex c = Complex::build(spec);
    const auto basis = cycle_basis(c, spanning_tree(c, 0));
    if (basis.empty() || limits.max_cells == 0)
        return spec;
    const std::size_t ncells = pick(rng, 0, std::min(limits.max_cells, basis.size()));
    for (std::size_t k = 0; k < ncells; ++k) {
        ThinPath based = basis[pick(rng, 0, basis.size() - 1)].loop;
        if (basis.size() > 1 && pick(rng, 0, 1)) {
            const auto& other = basis[pick(rng, 0, basis.size() - 1)].loop;
            const auto candidate = compose(c, based, pick(rng, 0, 1) ? other : reverse(c, other));
            if (!candidate.empty())
                based = candidate;
        }
        if (pick(rng, 0, 1))
            based = reverse(c, based);
        const ThinLoop loop = canonical_loop(c, based.as_edge_path());
        ComplexSpec::Cell cell{padded('c', k), {}};
        for (const auto& t : loop.word())
            cell.boundary.push_back(c.token(t));
        spec.cells.push_back(std::move(cell));
    }
    return spec;
}

} // namespace thinloop
