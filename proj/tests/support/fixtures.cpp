#include "fixtures.hpp"

namespace fixtures {

using namespace thinloop;

ComplexSpec theta_spec()
{
    ComplexSpec s;
    s.vertices = {"p", "q"};
    s.edges = {{"e1", "p", "q"}, {"e2", "p", "q"}, {"e3", "p", "q"}};
    return s;
}

ComplexSpec theta_cell_spec()
{
    ComplexSpec s = theta_spec();
    s.cells = {{"c1", {"e2+", "e1-"}}};
    return s;
}

namespace {

GroupElement from_long(const GroupSpec& g, long v)
{
    return g.kind() == GroupSpec::Kind::Integers ? GroupElement::from_integer(g, v) : GroupElement::from_residue(g, v);
}

} // namespace

Connection residues(ComplexPtr c, const GroupSpec& g, std::initializer_list<long> values)
{
    std::vector<GroupElement> t;
    for (long v : values)
        t.push_back(from_long(g, v));
    return Connection(std::move(c), g, std::move(t));
}

FusionMap fusion(ComplexPtr c, const GroupSpec& g, std::initializer_list<long> values)
{
    Tree tree = spanning_tree(*c, 0);
    std::map<EdgeId, GroupElement> m;
    auto it = values.begin();
    for (EdgeId e = 0; e < c->edge_count(); ++e)
        if (!tree.is_tree_edge(e))
            m.emplace(e, from_long(g, *it++));
    return FusionMap(std::move(c), g, std::move(tree), std::move(m));
}

} // namespace fixtures
