#include <doctest.h>

#include "fixtures.hpp"
#include "thinloop/errors.hpp"
#include "thinloop/io.hpp"
#include "thinloop/path.hpp"

using namespace thinloop;
using thinloop::io::Json;

namespace {

std::string error_of(const std::function<void()>& fn)
{
    try {
        fn();
    } catch (const ParseError& e) {
        return e.what();
    }
    return {};
}

ComplexPtr load_complex(const std::string& name)
{
    return fixtures::build(io::complex_from_json(io::read_json_file(fixtures::kDataDir + "/" + name)));
}

} // namespace

TEST_CASE("data files load")
{
    const auto c = load_complex("theta_cell.json");
    CHECK(*c == *fixtures::theta_cell());
    const auto f = io::fusion_from_json(io::read_json_file(fixtures::kDataDir + "/f12.json"), c);
    CHECK(f.value(1).residue() == 1);
    CHECK(f.value(2).residue() == 2);
    const auto t = io::connection_from_json(io::read_json_file(fixtures::kDataDir + "/t123.json"), c);
    CHECK(t.transport(0).residue() == 1);
    CHECK(t.transport(2).residue() == 3);
    const auto table = io::table_from_json(io::read_json_file(fixtures::kDataDir + "/nonfusion_table.json"), *c);
    CHECK(table.entries.size() == 7);
    CHECK(table.max_len == 2);
    CHECK(table.group == GroupSpec::cyclic(2));
}

TEST_CASE("documents round trip")
{
    const auto c = fixtures::build(random_complex(7));
    CHECK(Complex::build(io::complex_from_json(io::to_json(c->to_spec()))) == *c);

    const auto group = parse_group_spec("ZxZn:3xU1");
    const auto f = random_fusion_map(c, group, 0, 2);
    const auto f2 = io::fusion_from_json(io::parse_json(io::to_json(f).dump()), c);
    CHECK(same_values(f, f2));
    CHECK(f2.tree() == f.tree());

    const auto t = random_connection(group, c, 3);
    CHECK(same_transports(io::connection_from_json(io::parse_json(io::to_json(t).dump()), c), t));

    const auto g = random_gauge(group, *c, 4);
    const auto g2 = io::gauge_from_json(io::to_json(*c, g), *c, group);
    for (std::size_t v = 0; v < g.assignment.size(); ++v)
        CHECK(equals(g.assignment[v], g2.assignment[v]));

    const auto table = tabulate(random_fusion_map(c, GroupSpec::cyclic(5), 0, 1), 3);
    const auto table2 = io::table_from_json(io::to_json(*c, table), *c);
    CHECK(table2.entries.size() == table.entries.size());
    for (const auto& [loop, value] : table.entries)
        CHECK(equals(table2.entries.at(loop), value));
}

TEST_CASE("fusion documents without a tree use the breadth-first tree")
{
    const auto c = fixtures::theta();
    const auto doc = io::parse_json(R"({"group":"Zn:4","basepoint":"q","values":{"e2":"1","e3":"3"}})");
    const auto f = io::fusion_from_json(doc, c);
    CHECK(f.basepoint() == c->vertex("q"));
    CHECK(f.tree() == spanning_tree(*c, c->vertex("q")));
}

TEST_CASE("syntax errors carry a byte offset")
{
    const auto msg = error_of([] { io::parse_json("{\"vertices\": [\"p\",}", "bad.json"); });
    CHECK(msg.find("bad.json") != std::string::npos);
    CHECK(msg.find("byte 19") != std::string::npos);
    CHECK(error_of([] { io::read_json_file("/nonexistent/x.json"); }).find("cannot open") != std::string::npos);
}

TEST_CASE("schema errors carry a JSON pointer")
{
    auto msg = error_of([] {
        io::complex_from_json(io::parse_json(R"({"vertices":["p"],"edges":[{"id":"e1","src":"p"}]})"));
    });
    CHECK(msg.find("/edges/0") != std::string::npos);
    CHECK(msg.find("dst") != std::string::npos);

    msg = error_of([] { io::complex_from_json(io::parse_json(R"({"vertices":["p", 3],"edges":[]})")); });
    CHECK(msg.find("/vertices/1") != std::string::npos);

    const auto c = fixtures::theta();
    msg = error_of([&] { io::connection_from_json(io::parse_json(R"({"group":"Zn:4","transport":{"e1":"1","e2":"x","e3":"0"}})"), c); });
    CHECK(msg.find("/transport/e2") != std::string::npos);

    msg = error_of([&] { io::connection_from_json(io::parse_json(R"({"group":"Zn:4","transport":{"e1":"1"}})"), c); });
    CHECK(msg.find("e2") != std::string::npos);

    msg = error_of([&] { io::connection_from_json(io::parse_json(R"({"group":"Q","transport":{}})"), c); });
    CHECK(msg.find("/group") != std::string::npos);

    msg = error_of([&] {
        io::fusion_from_json(io::parse_json(R"({"group":"Zn:4","basepoint":"p","tree":["e2"],"values":{"e2":"1","e3":"2"}})"), c);
    });
    CHECK(msg.find("/values") != std::string::npos);

    msg = error_of([&] {
        io::fusion_from_json(io::parse_json(R"({"group":"Zn:4","basepoint":"p","tree":["e1","e2"],"values":{}})"), c);
    });
    CHECK(msg.find("/tree") != std::string::npos);

    msg = error_of([&] {
        io::table_from_json(io::parse_json(R"({"group":"Zn:2","entries":[{"loop":"e1+ e2-","value":"1"},{"loop":"e2- e1+","value":"0"}]})"), *c);
    });
    CHECK(msg.find("/entries/1") != std::string::npos);
    CHECK(msg.find("duplicate") != std::string::npos);

    msg = error_of([&] {
        io::table_from_json(io::parse_json(R"({"group":"Zn:2","entries":[{"loop":"e1+ e2+","value":"1"}]})"), *c);
    });
    CHECK(msg.find("/entries/0/loop") != std::string::npos);

    msg = error_of([&] { io::gauge_from_json(io::parse_json(R"({"assignment":{"p":"0","z":"1"}})"), *c, GroupSpec::cyclic(4)); });
    CHECK(msg.find("/assignment/z") != std::string::npos);
}
