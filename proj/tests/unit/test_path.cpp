#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "thinloop/errors.hpp"
#include "thinloop/path.hpp"

using namespace thinloop;

namespace {

std::string words(const Complex& c, const ThinPath& p) { return format_word(c, p.word()); }
std::string words(const Complex& c, const ThinLoop& l) { return format_word(c, l.word()); }

ThinPath to_path(const Complex& c, const oracle::Path& p)
{
    return parse_path(c, oracle::spell(p.word), c.vertex(p.start));
}

oracle::Path to_oracle(const Complex& c, const ThinPath& p)
{
    return {c.vertex_name(p.start()), c.vertex_name(p.end()), oracle::letters(c, p.word())};
}

// A random closed walk of the given length from v (backtracks allowed), or
// nullopt if the walk does not return to v.
std::optional<EdgePath> random_walk(const Complex& c, VertexId v, std::size_t len, std::mt19937_64& rng)
{
    EdgePath p{v, {}};
    VertexId at = v;
    for (std::size_t i = 0; i < len; ++i) {
        const auto& out = c.outgoing(at);
        if (out.empty())
            return std::nullopt;
        const auto t = out[rng() % out.size()];
        p.word.push_back(t);
        at = c.head(t);
    }
    if (at != v)
        return std::nullopt;
    return p;
}

void check_ell_relations(const ComplexSpec& spec, std::size_t len)
{
    const auto c = Complex::build(spec);
    const auto paths = oracle::reduced_paths(oracle::graph_of(spec), len);
    std::size_t prefixed = 0, suffixed = 0;
    for (const auto& g1 : paths)
        for (const auto& g2 : paths) {
            if (g1.start == g2.start && g1.end == g2.end) {
                const auto l12 = loop_of_pair(c, to_path(c, g1), to_path(c, g2));
                REQUIRE(oracle::letters(c, l12.word()) == oracle::ell(g1, g2));
            }
            for (const auto& k : paths) {
                // l(g1, k g2) = l(reverse(k) g1, g2) with k : start(g1) -> start(g2)
                if (k.start == g1.start && k.end == g2.start && g1.end == g2.end) {
                    const auto lhs = loop_of_pair(c, to_path(c, g1), to_path(c, *oracle::join(k, g2)));
                    const auto rhs = loop_of_pair(c, to_path(c, *oracle::join(oracle::backwards(k), g1)), to_path(c, g2));
                    REQUIRE(lhs == rhs);
                    ++prefixed;
                }
                // l(g1, g2 k) = l(g1 reverse(k), g2) with k : end(g2) -> end(g1)
                if (k.start == g2.end && k.end == g1.end && g1.start == g2.start) {
                    const auto lhs = loop_of_pair(c, to_path(c, g1), to_path(c, *oracle::join(g2, k)));
                    const auto rhs = loop_of_pair(c, to_path(c, *oracle::join(g1, oracle::backwards(k))), to_path(c, g2));
                    REQUIRE(lhs == rhs);
                    ++suffixed;
                }
            }
        }
    CHECK(prefixed > 0);
    CHECK(suffixed > 0);
}

} // namespace

TEST_CASE("free reduction")
{
    const auto c = fixtures::theta();
    const auto p = c->vertex("p");
    auto r = reduce(*c, {p, parse_word(*c, "e1+ e1-")});
    CHECK(r.empty());
    CHECK(r.start() == p);
    CHECK(r.end() == p);

    r = reduce(*c, {p, parse_word(*c, "e2+ e1- e1+ e3-")});
    CHECK(words(*c, r) == "e2+ e3-");
    CHECK(reduce(*c, r.as_edge_path()) == r);

    CHECK_THROWS_AS(reduce(*c, {p, parse_word(*c, "e1+ e2+")}), ComposabilityError);
}

TEST_CASE("reduce is idempotent, endpoint preserving and shortening")
{
    const auto c = fixtures::theta_cell();
    std::mt19937_64 rng(5);
    for (int n = 0; n < 500; ++n) {
        EdgePath p{static_cast<VertexId>(rng() % 2), {}};
        VertexId at = p.start;
        const std::size_t len = rng() % 9;
        for (std::size_t i = 0; i < len; ++i) {
            const auto& out = c->outgoing(at);
            p.word.push_back(out[rng() % out.size()]);
            at = c->head(p.word.back());
        }
        const auto r = reduce(*c, p);
        CHECK(r.start() == p.start);
        CHECK(r.end() == at);
        CHECK(r.length() <= p.word.size());
        CHECK(reduce(*c, r.as_edge_path()) == r);
        CHECK(oracle::letters(*c, r.word()) == oracle::free_reduce(oracle::letters(*c, p.word)));
    }
}

TEST_CASE("groupoid operations on theta")
{
    const auto c = fixtures::theta();
    const auto a = parse_path(*c, "e2+");
    const auto b = parse_path(*c, "e1-");
    CHECK(words(*c, compose(*c, a, b)) == "e2+ e1-");

    const auto ab = compose(*c, a, b);
    CHECK(compose(*c, reverse(*c, ab), ab).empty());
    CHECK(compose(*c, ab, reverse(*c, ab)) == identity_path(ab.start()));
    CHECK_THROWS_AS(compose(*c, a, a), ComposabilityError);
}

TEST_CASE("groupoid laws hold exhaustively on theta up to length 3")
{
    const auto spec = fixtures::theta_spec();
    const auto c = Complex::build(spec);
    const auto paths = oracle::reduced_paths(oracle::graph_of(spec), 3);
    std::vector<ThinPath> lib;
    for (const auto& p : paths)
        lib.push_back(to_path(c, p));

    for (std::size_t i = 0; i < lib.size(); ++i) {
        const auto& p = lib[i];
        CHECK(compose(c, identity_path(p.start()), p) == p);
        CHECK(compose(c, p, identity_path(p.end())) == p);
        CHECK(compose(c, p, reverse(c, p)) == identity_path(p.start()));
        CHECK(compose(c, reverse(c, p), p) == identity_path(p.end()));
        CHECK(to_oracle(c, reverse(c, p)) == oracle::backwards(paths[i]));
        for (std::size_t j = 0; j < lib.size(); ++j) {
            if (lib[j].start() != p.end())
                continue;
            const auto pq = compose(c, p, lib[j]);
            REQUIRE(to_oracle(c, pq) == *oracle::join(paths[i], paths[j]));
            for (const auto& r : lib)
                if (r.start() == lib[j].end())
                    REQUIRE(compose(c, pq, r) == compose(c, p, compose(c, lib[j], r)));
        }
    }
}

TEST_CASE("loop of a pair")
{
    const auto c = fixtures::theta();
    const auto l = loop_of_pair(*c, parse_path(*c, "e2+"), parse_path(*c, "e3+"));
    CHECK(words(*c, l) == "e2+ e3-");
    for (const auto& g : {"e1+", "e2+ e1- e3+", "e1- e2+"}) {
        const auto p = parse_path(*c, g);
        CHECK(loop_of_pair(*c, p, p).empty());
    }
    CHECK_THROWS_AS(loop_of_pair(*c, parse_path(*c, "e1+"), parse_path(*c, "e1-")), ComposabilityError);
}

TEST_CASE("both loop-of-pair relations on theta up to length 2")
{
    check_ell_relations(fixtures::theta_spec(), 2);
}

TEST_CASE("both loop-of-pair relations on a seeded six-edge complex up to length 2")
{
    RandomComplexLimits lim;
    lim.max_vertices = 4;
    lim.max_edges = 6;
    lim.max_extra_per_vertex = 2;
    std::uint64_t seed = 0;
    while (Complex::build(random_complex(seed, lim)).edge_count() != 6)
        ++seed;
    check_ell_relations(random_complex(seed, lim), 2);
}

TEST_CASE("canonical loops")
{
    const auto c = fixtures::theta();
    const auto p = c->vertex("p");
    CHECK(words(*c, canonical_loop(*c, {p, parse_word(*c, "e1+ e2- e3+ e1-")})) == "e2- e3+");
    CHECK(canonical_loop(*c, {p, {}}).empty());
    CHECK(canonical_loop(*c, {p, parse_word(*c, "e1+ e1-")}).empty());
    CHECK(words(*c, canonical_loop(*c, {c->vertex("q"), parse_word(*c, "e3- e1+")})) == "e1+ e3-");
    CHECK_THROWS_AS(canonical_loop(*c, {p, parse_word(*c, "e1+")}), StructuralError);
}

TEST_CASE("canonical loop agrees with the oracle and ignores rotation")
{
    std::mt19937_64 rng(11);
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        const auto c = Complex::build(random_complex(seed));
        for (int attempt = 0; attempt < 60; ++attempt) {
            const auto v = static_cast<VertexId>(rng() % c.vertex_count());
            const auto walk = random_walk(c, v, 1 + rng() % 8, rng);
            if (!walk)
                continue;
            const auto l = canonical_loop(c, *walk);
            REQUIRE(oracle::letters(c, l.word()) == oracle::canonical(oracle::letters(c, walk->word)));
            for (std::size_t k = 0; k < walk->word.size(); ++k) {
                EdgePath rot{c.tail(walk->word[k]), {}};
                for (std::size_t i = 0; i < walk->word.size(); ++i)
                    rot.word.push_back(walk->word[(k + i) % walk->word.size()]);
                REQUIRE(canonical_loop(c, rot) == l);
            }
            CHECK(oracle::letters(c, inverse(c, l).word())
                  == oracle::canonical(oracle::reversed(oracle::letters(c, l.word()))));
        }
    }
}

TEST_CASE("base_loop is a section of canonical_loop on theta")
{
    const auto c = fixtures::theta();
    for (VertexId base = 0; base < 2; ++base) {
        const auto t = spanning_tree(*c, base);
        for (const auto& l : enumerate_loops(*c, 4)) {
            const auto b = base_loop(*c, t, l);
            CHECK(b.start() == base);
            CHECK(b.end() == base);
            CHECK(canonical_loop(*c, b.as_edge_path()) == l);
        }
    }
}

TEST_CASE("rotations")
{
    const auto c = fixtures::theta();
    const auto l = parse_loop(*c, "e1+ e2-");
    const auto r = rotation(*c, l, 1);
    CHECK(format_word(*c, r.word) == "e2- e1+");
    CHECK(r.start == c->vertex("q"));
    CHECK(loop_start(*c, l) == c->vertex("p"));
    CHECK_FALSE(loop_start(*c, ThinLoop{}).has_value());
    CHECK_THROWS_AS(rotation(*c, ThinLoop{}, 0), StructuralError);
}

TEST_CASE("cell moves on theta with one cell")
{
    const auto c = fixtures::theta_cell();
    const auto c1 = c->cell_index("c1");
    const auto filled = cell_move(*c, ThinLoop{}, c1, 0, +1);
    CHECK(words(*c, filled) == "e1- e2+");
    CHECK(filled == parse_loop(*c, "e2+ e1-"));
    CHECK(cell_move(*c, parse_loop(*c, "e2+ e1-"), c1, 0, -1).empty());
    CHECK(cell_move(*c, parse_loop(*c, "e2+ e1-"), c1, 1, -1).empty());
    CHECK_THROWS_AS(cell_move(*c, parse_loop(*c, "e2+ e3-"), c1, 0, -1), MoveError);
    CHECK_THROWS_AS(cell_move(*c, filled, c1, 0, 0), MoveError);
    CHECK_THROWS_AS(cell_move(*c, filled, 7, 0, 1), StructuralError);
}

TEST_CASE("insertion then excision at the same site restores the loop")
{
    const auto c = fixtures::theta_cell();
    const auto& cell = c->cell(0);
    std::size_t restored = 0;
    for (const auto& l : enumerate_loops(*c, 4)) {
        for (std::size_t pos = 0; pos < std::max<std::size_t>(1, l.length()); ++pos) {
            const auto m = cell_move(*c, l, 0, pos, +1);
            if (m.length() < l.length() + cell.boundary.size())
                continue; // the boundary partly cancelled against the loop
            bool found = false;
            for (std::size_t j = 0; j < m.length() && !found; ++j) {
                try {
                    found = cell_move(*c, m, 0, j, -1) == l;
                } catch (const MoveError&) {
                }
            }
            CHECK(found);
            ++restored;
        }
    }
    CHECK(restored > 20);
}

TEST_CASE("parsing")
{
    const auto c = fixtures::theta();
    CHECK_THROWS_AS(parse_word(*c, "e1+ e9-"), ParseError);
    CHECK_THROWS_AS(parse_word(*c, "e1"), ParseError);
    CHECK_THROWS_AS(parse_path(*c, ""), ParseError);
    CHECK(parse_path(*c, "", c->vertex("q")) == identity_path(c->vertex("q")));
    CHECK(parse_loop(*c, "").empty());
    CHECK_THROWS_AS(parse_loop(*c, "e1+ e2+"), ComposabilityError);
}
