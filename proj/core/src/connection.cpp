#include "thinloop/connection.hpp"

#include <deque>

#include "thinloop/errors.hpp"
#include "thinloop/path.hpp"

namespace thinloop {

Connection::Connection(ComplexPtr complex, GroupSpec group, std::vector<GroupElement> transport)
    : complex_(std::move(complex)), group_(std::move(group)), transport_(std::move(transport))
{
    if (!complex_)
        throw StructuralError("connection needs a complex");
    if (transport_.size() != complex_->edge_count())
        throw StructuralError("connection must assign exactly one transport per edge");
    for (EdgeId e = 0; e < transport_.size(); ++e)
        if (transport_[e].spec() != group_)
            throw StructuralError("transport on " + complex_->edge(e).id + " is not in " + to_string(group_));
}

Connection trivial_connection(ComplexPtr complex, const GroupSpec& group)
{
    std::vector<GroupElement> t(complex->edge_count(), identity(group));
    return Connection(std::move(complex), group, std::move(t));
}

Gauge identity_gauge(const Complex& c, const GroupSpec& group)
{
    return Gauge{std::vector<GroupElement>(c.vertex_count(), identity(group))};
}

Connection random_connection(const GroupSpec& group, ComplexPtr complex, std::uint64_t seed)
{
    std::vector<GroupElement> t;
    for (EdgeId e = 0; e < complex->edge_count(); ++e)
        t.push_back(random_element(group, seed * 0x9e3779b97f4a7c15ULL + e + 1));
    return Connection(std::move(complex), group, std::move(t));
}

Gauge random_gauge(const GroupSpec& group, const Complex& c, std::uint64_t seed)
{
    Gauge g;
    for (VertexId v = 0; v < c.vertex_count(); ++v)
        g.assignment.push_back(random_element(group, seed * 0xbf58476d1ce4e5b9ULL + v + 7));
    return g;
}

namespace {

void require_gauge(const Connection& c, const Gauge& g)
{
    if (g.assignment.size() != c.complex().vertex_count())
        throw StructuralError("gauge must assign exactly one value per vertex");
    for (const auto& v : g.assignment)
        if (v.spec() != c.group())
            throw StructuralError("gauge value is not in " + to_string(c.group()));
}

} // namespace

void require_compatible(const Connection& a, const Connection& b)
{
    if (a.group() != b.group())
        throw StructuralError("connections take values in different groups");
    if (!(a.complex() == b.complex()))
        throw StructuralError("connections live on different complexes");
}

Connection apply_gauge(const Connection& c, const Gauge& g)
{
    require_gauge(c, g);
    std::vector<GroupElement> t;
    t.reserve(c.transports().size());
    for (EdgeId e = 0; e < c.transports().size(); ++e) {
        const auto& edge = c.complex().edge(e);
        t.push_back(difference(combine(g.assignment[edge.dst], c.transport(e)), g.assignment[edge.src]));
    }
    return Connection(c.complex_ptr(), c.group(), std::move(t));
}

GroupElement parallel_transport(const Connection& c, const EdgePath& p)
{
    GroupElement acc = identity(c.group());
    for (const auto& t : p.word) {
        if (t.edge >= c.transports().size())
            throw StructuralError("path references an edge outside the complex");
        acc = t.dir == Dir::Plus ? combine(acc, c.transport(t.edge)) : difference(acc, c.transport(t.edge));
    }
    return acc;
}

GroupElement parallel_transport(const Connection& c, const ThinPath& p)
{
    return parallel_transport(c, p.as_edge_path());
}

FiberElement transport_fiber(const Connection& c, const ThinPath& p, const FiberElement& x)
{
    if (p.start() != x.vertex)
        throw StructuralError("transport_fiber: path does not start at the fibre's vertex");
    return {p.end(), combine(x.value, parallel_transport(c, p))};
}

GroupElement holonomy(const Connection& c, const ThinLoop& l)
{
    return parallel_transport(c, EdgePath{0, l.word()});
}

GroupElement curvature(const Connection& c, CellId cell)
{
    if (cell >= c.complex().cell_count())
        throw StructuralError("curvature: unknown cell");
    const auto& boundary = c.complex().cell(cell);
    return parallel_transport(c, EdgePath{boundary.start, boundary.boundary});
}

bool is_flat(const Connection& c)
{
    for (CellId k = 0; k < c.complex().cell_count(); ++k)
        if (!is_identity(curvature(c, k)))
            return false;
    return true;
}

Connection tensor(const Connection& a, const Connection& b)
{
    require_compatible(a, b);
    std::vector<GroupElement> t;
    for (EdgeId e = 0; e < a.transports().size(); ++e)
        t.push_back(combine(a.transport(e), b.transport(e)));
    return Connection(a.complex_ptr(), a.group(), std::move(t));
}

bool same_transports(const Connection& a, const Connection& b)
{
    require_compatible(a, b);
    for (EdgeId e = 0; e < a.transports().size(); ++e)
        if (!equals(a.transport(e), b.transport(e)))
            return false;
    return true;
}

bool is_gauge_witness(const Connection& a, const Connection& b, const Gauge& g)
{
    return same_transports(apply_gauge(a, g), b);
}

std::optional<Gauge> are_isomorphic(const Connection& a, const Connection& b)
{
    require_compatible(a, b);
    const Complex& c = a.complex();
    std::vector<std::optional<GroupElement>> g(c.vertex_count());
    for (VertexId root = 0; root < c.vertex_count(); ++root) {
        if (g[root])
            continue;
        g[root] = identity(a.group());
        std::deque<VertexId> queue{root};
        while (!queue.empty()) {
            const auto u = queue.front();
            queue.pop_front();
            for (const auto& step : c.outgoing(u)) {
                const auto w = c.head(step);
                if (g[w])
                    continue;
                // b(e) = g(dst) + a(e) - g(src), solved for the unknown end.
                const auto delta = difference(b.transport(step.edge), a.transport(step.edge));
                g[w] = step.dir == Dir::Plus ? combine(*g[u], delta) : difference(*g[u], delta);
                queue.push_back(w);
            }
        }
    }
    Gauge gauge;
    for (auto& v : g)
        gauge.assignment.push_back(std::move(*v));
    if (!is_gauge_witness(a, b, gauge))
        return std::nullopt;
    return gauge;
}

std::map<EdgeId, GroupElement> deformation_class(const Connection& c, VertexId basepoint)
{
    const Tree tree = spanning_tree(c.complex(), basepoint);
    std::map<EdgeId, GroupElement> out;
    for (const auto& b : cycle_basis(c.complex(), tree))
        out.emplace(b.edge, pi0_project(parallel_transport(c, b.loop)));
    return out;
}

} // namespace thinloop
