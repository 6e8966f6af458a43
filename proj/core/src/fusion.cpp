#include "thinloop/fusion.hpp"

#include <cmath>
#include <limits>

#include "thinloop/errors.hpp"
#include "thinloop/path.hpp"

namespace thinloop {

FusionMap::FusionMap(ComplexPtr complex, GroupSpec group, Tree tree, std::map<EdgeId, GroupElement> values)
    : complex_(std::move(complex)), group_(std::move(group)), tree_(std::move(tree)), values_(std::move(values))
{
    if (!complex_)
        throw StructuralError("fusion map needs a complex");
    if (tree_.vertex_count() != complex_->vertex_count())
        throw StructuralError("fusion map tree does not belong to its complex");
    by_edge_.assign(complex_->edge_count(), std::nullopt);
    for (const auto& [e, v] : values_) {
        if (e >= complex_->edge_count())
            throw StructuralError("fusion map value on an edge outside the complex");
        if (tree_.is_tree_edge(e))
            throw StructuralError("fusion map has a value on tree edge " + complex_->edge(e).id);
        if (v.spec() != group_)
            throw StructuralError("fusion map value on " + complex_->edge(e).id + " is not in " + to_string(group_));
        by_edge_[e] = v;
    }
    for (EdgeId e = 0; e < complex_->edge_count(); ++e)
        if (!tree_.is_tree_edge(e) && !by_edge_[e])
            throw StructuralError("fusion map is missing a value for edge " + complex_->edge(e).id);
}

const GroupElement& FusionMap::value(EdgeId e) const
{
    if (e >= by_edge_.size() || !by_edge_[e])
        throw StructuralError("no basis value: edge is a tree edge or outside the complex");
    return *by_edge_[e];
}

GroupElement FusionMap::signed_sum(const Word& w) const
{
    GroupElement acc = identity(group_);
    for (const auto& t : w) {
        if (t.edge >= by_edge_.size())
            throw StructuralError("loop references an edge outside the complex");
        const auto& v = by_edge_[t.edge];
        if (!v)
            continue;
        acc = t.dir == Dir::Plus ? combine(acc, *v) : difference(acc, *v);
    }
    return acc;
}

FusionMap trivial_fusion_map(ComplexPtr complex, const GroupSpec& group, VertexId basepoint)
{
    Tree tree = spanning_tree(*complex, basepoint);
    std::map<EdgeId, GroupElement> values;
    for (EdgeId e = 0; e < complex->edge_count(); ++e)
        if (!tree.is_tree_edge(e))
            values.emplace(e, identity(group));
    return FusionMap(std::move(complex), group, std::move(tree), std::move(values));
}

FusionMap random_fusion_map(ComplexPtr complex, const GroupSpec& group, VertexId basepoint, std::uint64_t seed)
{
    Tree tree = spanning_tree(*complex, basepoint);
    std::map<EdgeId, GroupElement> values;
    for (EdgeId e = 0; e < complex->edge_count(); ++e)
        if (!tree.is_tree_edge(e))
            values.emplace(e, random_element(group, seed * 0x100000001b3ULL + e + 1));
    return FusionMap(std::move(complex), group, std::move(tree), std::move(values));
}

GroupElement evaluate(const FusionMap& f, const ThinLoop& l) { return f.signed_sum(l.word()); }

GroupElement evaluate_pair(const FusionMap& f, const ThinPath& gamma1, const ThinPath& gamma2)
{
    return evaluate(f, loop_of_pair(f.complex(), gamma1, gamma2));
}

void require_compatible(const FusionMap& f, const FusionMap& g)
{
    if (f.group() != g.group())
        throw StructuralError("fusion maps take values in different groups");
    if (!(f.complex() == g.complex()))
        throw StructuralError("fusion maps live on different complexes");
    if (!(f.tree() == g.tree()))
        throw StructuralError("fusion maps use different spanning trees");
}

FusionMap multiply(const FusionMap& f, const FusionMap& g)
{
    require_compatible(f, g);
    std::map<EdgeId, GroupElement> values;
    for (const auto& [e, v] : f.values())
        values.emplace(e, combine(v, g.value(e)));
    return FusionMap(f.complex_ptr(), f.group(), f.tree(), std::move(values));
}

FusionMap invert(const FusionMap& f)
{
    std::map<EdgeId, GroupElement> values;
    for (const auto& [e, v] : f.values())
        values.emplace(e, invert(v));
    return FusionMap(f.complex_ptr(), f.group(), f.tree(), std::move(values));
}

bool is_locally_constant(const FusionMap& f)
{
    for (const auto& cell : f.complex().cells())
        if (!is_identity(f.signed_sum(cell.boundary)))
            return false;
    return true;
}

std::map<EdgeId, GroupElement> homotopy_class(const FusionMap& f)
{
    std::map<EdgeId, GroupElement> out;
    for (const auto& [e, v] : f.values())
        out.emplace(e, pi0_project(v));
    return out;
}

bool are_fusion_homotopic(const FusionMap& f, const FusionMap& g)
{
    require_compatible(f, g);
    const auto a = homotopy_class(f);
    const auto b = homotopy_class(g);
    for (const auto& [e, v] : a)
        if (!equals(v, b.at(e)))
            return false;
    return true;
}

bool same_values(const FusionMap& f, const FusionMap& g)
{
    require_compatible(f, g);
    for (const auto& [e, v] : f.values())
        if (!equals(v, g.value(e)))
            return false;
    return true;
}

// ----------------------------------------------------------------------------
// Tables
// ----------------------------------------------------------------------------

LoopTable tabulate(const FusionMap& f, std::size_t max_len)
{
    LoopTable table{f.group(), {}, max_len};
    for (const auto& l : enumerate_loops(f.complex(), max_len))
        table.entries.emplace(l, evaluate(f, l));
    return table;
}

LoopFunction table_lookup(const Complex& c, const LoopTable& table)
{
    return [&c, &table](const ThinLoop& l) -> GroupElement {
        auto it = table.entries.find(l);
        if (it == table.entries.end())
            throw CoverageError("loop table has no entry for loop '" + format_word(c, l.word()) + "'");
        return it->second;
    };
}

std::map<std::pair<VertexId, VertexId>, std::vector<ThinPath>> enumerate_paths(const Complex& c, std::size_t max_len)
{
    std::map<std::pair<VertexId, VertexId>, std::vector<ThinPath>> out;
    for (VertexId v = 0; v < c.vertex_count(); ++v) {
        Word word;
        std::function<void(VertexId)> extend = [&](VertexId at) {
            out[{v, at}].push_back(ThinPath::from_reduced(v, at, word));
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
        extend(v);
    }
    return out;
}

namespace {

// Leaf-major copy of the pair table for the triple scan: residues and
// integers as int64, angles as double. Moduli or integers past 62 bits are
// not packed.
struct PackedPairs
{
    struct Leaf
    {
        GroupSpec::Kind kind;
        std::int64_t modulus;
        double tolerance;
    };
    std::size_t n = 0;
    std::vector<Leaf> leaves;
    std::vector<std::vector<std::int64_t>> ints; // per leaf, n * n entries
    std::vector<std::vector<double>> reals;

    /// ok[k] := the fusion identity holds for (i, j, k), for every k.
    void screen(std::size_t i, std::size_t j, std::vector<int>& ok) const
    {
        ok.assign(n, 1);
        for (std::size_t l = 0; l < leaves.size(); ++l) {
            const auto& leaf = leaves[l];
            if (leaf.kind == GroupSpec::Kind::Circle) {
                const double* jk = reals[l].data() + j * n;
                const double* ik = reals[l].data() + i * n;
                const double ij = reals[l][i * n + j];
                for (std::size_t k = 0; k < n; ++k) {
                    double d = std::fabs(ij + jk[k] - ik[k]);
                    d -= std::floor(d);
                    ok[k] &= std::min(d, 1.0 - d) <= leaf.tolerance;
                }
                continue;
            }
            const std::int64_t* jk = ints[l].data() + j * n;
            const std::int64_t* ik = ints[l].data() + i * n;
            const std::int64_t ij = ints[l][i * n + j];
            const std::int64_t m = leaf.kind == GroupSpec::Kind::Cyclic ? leaf.modulus : kNoModulus;
            for (std::size_t k = 0; k < n; ++k) {
                std::int64_t sum = ij + jk[k];
                sum -= sum >= m ? m : 0;
                ok[k] &= sum == ik[k];
            }
        }
    }

    static constexpr std::int64_t kNoModulus = std::numeric_limits<std::int64_t>::max();
};

constexpr std::int64_t kPackLimit = std::int64_t{1} << 62;

bool collect_leaves(const GroupSpec& g, std::vector<PackedPairs::Leaf>& out)
{
    switch (g.kind()) {
    case GroupSpec::Kind::Product:
        for (const auto& f : g.factors())
            if (!collect_leaves(f, out))
                return false;
        return true;
    case GroupSpec::Kind::Cyclic:
        if (g.modulus() >= static_cast<std::uint64_t>(kPackLimit))
            return false;
        out.push_back({g.kind(), static_cast<std::int64_t>(g.modulus()), 0.0});
        return true;
    case GroupSpec::Kind::Integers: out.push_back({g.kind(), 0, 0.0}); return true;
    case GroupSpec::Kind::Circle: out.push_back({g.kind(), 0, g.tolerance()}); return true;
    }
    return false;
}

bool pack(const GroupElement& a, PackedPairs& p, std::size_t& leaf)
{
    switch (a.spec().kind()) {
    case GroupSpec::Kind::Product:
        for (const auto& x : a.components())
            if (!pack(x, p, leaf))
                return false;
        return true;
    case GroupSpec::Kind::Cyclic: p.ints[leaf++].push_back(static_cast<std::int64_t>(a.residue())); return true;
    case GroupSpec::Kind::Integers:
        if (a.integer() >= kPackLimit || a.integer() <= -kPackLimit)
            return false;
        p.ints[leaf++].push_back(static_cast<std::int64_t>(a.integer()));
        return true;
    case GroupSpec::Kind::Circle: p.reals[leaf++].push_back(a.angle()); return true;
    }
    return false;
}

std::optional<PackedPairs> pack_pairs(const GroupSpec& group, const std::vector<GroupElement>& pair, std::size_t n)
{
    PackedPairs p;
    p.n = n;
    if (!collect_leaves(group, p.leaves))
        return std::nullopt;
    p.ints.resize(p.leaves.size());
    p.reals.resize(p.leaves.size());
    for (const auto& x : pair) {
        std::size_t leaf = 0;
        if (!pack(x, p, leaf))
            return std::nullopt;
    }
    return p;
}

} // namespace

std::vector<FusionViolation> validate_fusion(const LoopFunction& f, const GroupSpec& group, const Complex& c,
                                             std::size_t max_len, std::size_t max_violations)
{
    if (max_len > kMaxFusionTripleLength)
        throw LimitError("validate_fusion: max_len " + std::to_string(max_len) + " exceeds the guard of "
                         + std::to_string(kMaxFusionTripleLength));
    std::vector<FusionViolation> violations;
    for (const auto& [ends, paths] : enumerate_paths(c, max_len)) {
        const std::size_t n = paths.size();
        std::vector<GroupElement> pair;
        pair.reserve(n * n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                auto value = f(loop_of_pair(c, paths[i], paths[j]));
                if (value.spec() != group)
                    throw StructuralError("loop function returned a value outside " + to_string(group));
                pair.push_back(std::move(value));
            }
        const auto packed = pack_pairs(group, pair, n);
        std::vector<int> ok(n, 0);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                // The packed screen only filters; mismatches are confirmed below.
                if (packed)
                    packed->screen(i, j, ok);
                for (std::size_t k = 0; k < n; ++k) {
                    if (ok[k])
                        continue;
                    auto lhs = combine(pair[i * n + j], pair[j * n + k]);
                    const auto& rhs = pair[i * n + k];
                    if (equals(lhs, rhs))
                        continue;
                    violations.push_back({paths[i], paths[j], paths[k], std::move(lhs), rhs});
                    if (violations.size() >= max_violations)
                        return violations;
                }
            }
    }
    return violations;
}

std::vector<FusionViolation> validate_fusion(const LoopTable& table, const Complex& c, std::size_t max_len,
                                             std::size_t max_violations)
{
    return validate_fusion(table_lookup(c, table), table.group, c, max_len, max_violations);
}

FusionMap from_table(const LoopTable& table, ComplexPtr complex, VertexId basepoint)
{
    const Complex& c = *complex;
    const std::size_t depth = std::min(kMaxFusionTripleLength, table.max_len / 2);
    const auto violations = validate_fusion(table, c, depth, 1);
    if (!violations.empty()) {
        const auto& v = violations.front();
        throw FusionError("loop table is not fusion: triple (" + format_word(c, v.gamma1.word()) + " | "
                          + format_word(c, v.gamma2.word()) + " | " + format_word(c, v.gamma3.word()) + ") gives "
                          + format_element(v.lhs) + " vs " + format_element(v.rhs));
    }

    Tree tree = spanning_tree(c, basepoint);
    const auto lookup = table_lookup(c, table);
    std::map<EdgeId, GroupElement> values;
    for (const auto& b : cycle_basis(c, tree))
        values.emplace(b.edge, lookup(canonical_loop(c, b.loop.as_edge_path())));
    FusionMap f(std::move(complex), table.group, std::move(tree), std::move(values));

    for (const auto& [loop, expected] : table.entries) {
        const auto actual = evaluate(f, loop);
        if (!equals(actual, expected))
            throw InconsistencyError("loop table disagrees with its cycle-basis homomorphism on '"
                                     + format_word(c, loop.word()) + "': table " + format_element(expected)
                                     + ", induced " + format_element(actual));
    }
    return f;
}

} // namespace thinloop
