#include "thinloop/transgression.hpp"

#include <map>
#include <numeric>
#include <set>

#include "thinloop/errors.hpp"
#include "thinloop/path.hpp"

namespace thinloop {

FusionMap transgress(const Connection& c, VertexId basepoint)
{
    Tree tree = spanning_tree(c.complex(), basepoint);
    std::map<EdgeId, GroupElement> values;
    for (const auto& b : cycle_basis(c.complex(), tree))
        values.emplace(b.edge, holonomy(c, canonical_loop(c.complex(), b.loop.as_edge_path())));
    return FusionMap(c.complex_ptr(), c.group(), std::move(tree), std::move(values));
}

Connection regress(const FusionMap& f, VertexId basepoint)
{
    const Complex& c = f.complex();
    const Tree tree = basepoint == f.basepoint() ? f.tree() : spanning_tree(c, basepoint);
    std::vector<GroupElement> transport;
    transport.reserve(c.edge_count());
    for (EdgeId e = 0; e < c.edge_count(); ++e) {
        const auto& edge = c.edge(e);
        EdgePath walk{basepoint, tree.path_to(edge.src).word()};
        walk.word.push_back({e, Dir::Plus});
        const ThinPath back = reverse(c, tree.path_to(edge.dst));
        for (const auto& t : back.word())
            walk.word.push_back(t);
        transport.push_back(evaluate(f, canonical_loop(c, walk)));
    }
    return Connection(f.complex_ptr(), f.group(), std::move(transport));
}

// ----------------------------------------------------------------------------
// Descent quotient
// ----------------------------------------------------------------------------

namespace {

class UnionFind
{
public:
    explicit UnionFind(std::size_t n) : parent_(n), rank_(n, 0) { std::iota(parent_.begin(), parent_.end(), 0); }

    std::size_t find(std::size_t x)
    {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }

    void unite(std::size_t a, std::size_t b)
    {
        a = find(a);
        b = find(b);
        if (a == b)
            return;
        if (rank_[a] < rank_[b])
            std::swap(a, b);
        parent_[b] = a;
        if (rank_[a] == rank_[b])
            ++rank_[a];
    }

private:
    std::vector<std::size_t> parent_;
    std::vector<unsigned char> rank_;
};

std::vector<ThinPath> based_paths(const Complex& c, VertexId basepoint, std::size_t max_len)
{
    std::vector<ThinPath> out;
    Word word;
    std::function<void(VertexId)> extend = [&](VertexId at) {
        out.push_back(ThinPath::from_reduced(basepoint, at, word));
        if (word.size() == max_len)
            return;
        for (const auto& step : c.outgoing(at)) {
            if (!word.empty() && word.back().cancels(step))
                continue;
            word.push_back(step);
            extend(c.head(step));
            word.pop_back();
        }
    };
    extend(basepoint);
    return out;
}

} // namespace

DescentResult regress_via_descent(const LoopFunction& f, const GroupSpec& group, ComplexPtr complex,
                                  VertexId basepoint, std::size_t max_len)
{
    if (!group.is_finite())
        throw UnsupportedSpecError("descent quotient needs a finite group, got " + to_string(group));
    if (max_len > kMaxDescentLength)
        throw LimitError("regress_via_descent: max_len " + std::to_string(max_len) + " exceeds the guard of "
                         + std::to_string(kMaxDescentLength));
    const Complex& c = *complex;
    const auto elements = all_elements(group);
    const std::size_t order = elements.size();

    const auto paths = based_paths(c, basepoint, max_len);
    std::map<Word, std::size_t> index_of;
    std::vector<std::vector<std::size_t>> over(c.vertex_count());
    for (std::size_t i = 0; i < paths.size(); ++i) {
        index_of.emplace(paths[i].word(), i);
        over[paths[i].end()].push_back(i);
    }
    for (VertexId v = 0; v < c.vertex_count(); ++v)
        if (over[v].empty())
            throw CoverageError("vertex " + c.vertex_name(v) + " has no based path of length <= "
                                + std::to_string(max_len));

    // Point (path i, element k) lives at index i * order + k.
    UnionFind uf(paths.size() * order);
    for (VertexId v = 0; v < c.vertex_count(); ++v) {
        for (auto i : over[v])
            for (auto j : over[v]) {
                // (g1, a) ~ (g2, f(l(g2, g1)) a)
                const auto shift = f(loop_of_pair(c, paths[j], paths[i]));
                if (shift.spec() != group)
                    throw StructuralError("loop function returned a value outside " + to_string(group));
                for (std::size_t k = 0; k < order; ++k)
                    uf.unite(i * order + k, j * order + finite_index(combine(shift, elements[k])));
            }
    }

    DescentResult result{trivial_connection(complex, group), paths.size(), {}};
    for (VertexId v = 0; v < c.vertex_count(); ++v) {
        std::set<std::size_t> roots;
        for (auto i : over[v])
            for (std::size_t k = 0; k < order; ++k)
                roots.insert(uf.find(i * order + k));
        result.fiber_classes.push_back(roots.size());
        if (roots.size() != order)
            throw InconsistencyError("fibre over " + c.vertex_name(v) + " has " + std::to_string(roots.size())
                                     + " classes instead of " + std::to_string(order)
                                     + "; the loop function is not fusion");
    }

    // Trivialize each fibre by the tree path to its vertex: class of
    // (path_to(v), a) has coordinate a.
    const Tree tree = spanning_tree(c, basepoint);
    std::vector<std::map<std::size_t, std::size_t>> coordinate(c.vertex_count());
    for (VertexId v = 0; v < c.vertex_count(); ++v) {
        auto it = index_of.find(tree.path_to(v).word());
        if (it == index_of.end())
            throw CoverageError("tree path to " + c.vertex_name(v) + " is longer than " + std::to_string(max_len));
        for (std::size_t k = 0; k < order; ++k)
            coordinate[v].emplace(uf.find(it->second * order + k), k);
    }

    // The horizontal lift of e from (path_to(u), 1) ends at (path_to(u) e, 1).
    std::vector<GroupElement> transport;
    for (EdgeId e = 0; e < c.edge_count(); ++e) {
        const auto& edge = c.edge(e);
        const auto lifted = compose(c, tree.path_to(edge.src), ThinPath::from_reduced(edge.src, edge.dst, {{e, Dir::Plus}}));
        auto it = index_of.find(lifted.word());
        if (it == index_of.end())
            throw CoverageError("lift of edge " + edge.id + " needs based paths longer than " + std::to_string(max_len));
        const auto shifted = coordinate[edge.dst].at(uf.find(it->second * order + finite_index(identity(group))));
        transport.push_back(invert(elements[shifted]));
    }
    result.connection = Connection(complex, group, std::move(transport));
    return result;
}

DescentResult regress_via_descent(const FusionMap& f, VertexId basepoint, std::size_t max_len)
{
    const auto fn = [&f](const ThinLoop& l) { return evaluate(f, l); };
    return regress_via_descent(fn, f.group(), f.complex_ptr(), basepoint, max_len);
}

// ----------------------------------------------------------------------------
// Round trips and theorem checks
// ----------------------------------------------------------------------------

RoundTripReport roundtrip_fusion(const FusionMap& f, std::size_t loop_len)
{
    const Complex& c = f.complex();
    const FusionMap back = transgress(regress(f), f.basepoint());

    RoundTripReport report{RoundTripReport::Direction::FusionFirst, true, 0, {}, std::nullopt};
    for (const auto& b : cycle_basis(c, f.tree())) {
        const auto loop = canonical_loop(c, b.loop.as_edge_path());
        auto actual = evaluate(back, loop);
        const bool match = equals(f.value(b.edge), actual);
        report.witnesses.push_back({c.edge(b.edge).id, f.value(b.edge), std::move(actual), match});
        report.verdict = report.verdict && match;
        ++report.checked;
    }
    for (const auto& loop : enumerate_loops(c, loop_len)) {
        auto expected = evaluate(f, loop);
        auto actual = evaluate(back, loop);
        ++report.checked;
        if (equals(expected, actual))
            continue;
        report.witnesses.push_back({format_word(c, loop.word()), std::move(expected), std::move(actual), false});
        report.verdict = false;
    }
    return report;
}

RoundTripReport roundtrip_bundle(const Connection& c, VertexId basepoint)
{
    const Complex& complex = c.complex();
    const Connection back = regress(transgress(c, basepoint), basepoint);

    RoundTripReport report{RoundTripReport::Direction::BundleFirst, false, 0, {}, are_isomorphic(back, c)};
    if (report.gauge) {
        const Connection moved = apply_gauge(back, *report.gauge);
        report.verdict = true;
        for (EdgeId e = 0; e < complex.edge_count(); ++e) {
            const bool match = equals(c.transport(e), moved.transport(e));
            report.witnesses.push_back({complex.edge(e).id, c.transport(e), moved.transport(e), match});
            report.verdict = report.verdict && match;
            ++report.checked;
        }
        return report;
    }
    // No gauge: localize the failure on the cycle basis.
    for (const auto& b : cycle_basis(complex, spanning_tree(complex, basepoint))) {
        auto expected = parallel_transport(c, b.loop);
        auto actual = parallel_transport(back, b.loop);
        const bool match = equals(expected, actual);
        report.witnesses.push_back({complex.edge(b.edge).id, std::move(expected), std::move(actual), match});
        ++report.checked;
    }
    return report;
}

CorollaryACheck corollary_a_check(const Connection& c, const FusionMap& f)
{
    if (!(c.complex() == f.complex()))
        throw StructuralError("corollary check needs a connection and a fusion map on the same complex");
    CorollaryACheck out{};
    out.flat_to_locally_constant = {is_flat(c), is_locally_constant(transgress(c, f.basepoint()))};
    out.locally_constant_to_flat = {is_locally_constant(f), is_flat(regress(f))};
    return out;
}

bool theorem_c_check(const Connection& c, VertexId basepoint)
{
    const auto fusion_side = homotopy_class(transgress(c, basepoint));
    const auto bundle_side = deformation_class(c, basepoint);
    if (fusion_side.size() != bundle_side.size())
        return false;
    for (const auto& [e, v] : fusion_side) {
        auto it = bundle_side.find(e);
        if (it == bundle_side.end() || !equals(v, it->second))
            return false;
    }
    return true;
}

bool connection_independence_check(const Connection& a, const Connection& b, VertexId basepoint)
{
    require_compatible(a, b);
    const auto ca = deformation_class(a, basepoint);
    const auto cb = deformation_class(b, basepoint);
    for (const auto& [e, v] : ca)
        if (!equals(v, cb.at(e)))
            throw ContractError("connections present different bundles: deformation classes differ on edge "
                                + a.complex().edge(e).id);
    return are_fusion_homotopic(transgress(a, basepoint), transgress(b, basepoint));
}

} // namespace thinloop
