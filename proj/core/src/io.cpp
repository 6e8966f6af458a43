#include "thinloop/io.hpp"

#include <fstream>
#include <sstream>

#include "thinloop/errors.hpp"
#include "thinloop/path.hpp"

namespace thinloop::io {

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what)
{
    throw ParseError(where + ": " + what);
}

const Json& field(const Json& obj, const std::string& key, const std::string& where)
{
    if (!obj.is_object())
        fail(where, "expected an object");
    auto it = obj.find(key);
    if (it == obj.end())
        fail(where, "missing field \"" + key + "\"");
    return *it;
}

std::string string_at(const Json& value, const std::string& where)
{
    if (!value.is_string())
        fail(where, "expected a string");
    return value.get<std::string>();
}

const Json& array_at(const Json& value, const std::string& where)
{
    if (!value.is_array())
        fail(where, "expected an array");
    return value;
}

const Json& object_at(const Json& value, const std::string& where)
{
    if (!value.is_object())
        fail(where, "expected an object");
    return value;
}

GroupSpec group_at(const Json& doc)
{
    const auto text = string_at(field(doc, "group", ""), "/group");
    try {
        return parse_group_spec(text);
    } catch (const Error& e) {
        fail("/group", e.what());
    }
}

GroupElement element_at(const Json& value, const GroupSpec& group, const std::string& where)
{
    std::string text;
    if (value.is_string())
        text = value.get<std::string>();
    else if (value.is_number())
        text = value.dump();
    else
        fail(where, "expected a group element string");
    try {
        return parse_element(group, text);
    } catch (const Error& e) {
        fail(where, e.what());
    }
}

// JSON pointer escaping for keys that may contain '/' or '~'.
std::string escape(const std::string& key)
{
    std::string out;
    for (char ch : key) {
        if (ch == '~')
            out += "~0";
        else if (ch == '/')
            out += "~1";
        else
            out += ch;
    }
    return out;
}

} // namespace

Json parse_json(std::string_view text, const std::string& source)
{
    try {
        return Json::parse(text.begin(), text.end());
    } catch (const Json::parse_error& e) {
        throw ParseError(source + ": byte " + std::to_string(e.byte) + ": " + e.what());
    }
}

Json read_json_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ParseError(path + ": cannot open file");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_json(buffer.str(), path);
}

// ----------------------------------------------------------------------------

ComplexSpec complex_from_json(const Json& doc)
{
    ComplexSpec spec;
    const auto& vertices = array_at(field(doc, "vertices", ""), "/vertices");
    for (std::size_t i = 0; i < vertices.size(); ++i)
        spec.vertices.push_back(string_at(vertices[i], "/vertices/" + std::to_string(i)));

    const auto& edges = array_at(field(doc, "edges", ""), "/edges");
    for (std::size_t i = 0; i < edges.size(); ++i) {
        const auto where = "/edges/" + std::to_string(i);
        spec.edges.push_back({string_at(field(edges[i], "id", where), where + "/id"),
                              string_at(field(edges[i], "src", where), where + "/src"),
                              string_at(field(edges[i], "dst", where), where + "/dst")});
    }

    if (doc.contains("cells")) {
        const auto& cells = array_at(doc.at("cells"), "/cells");
        for (std::size_t i = 0; i < cells.size(); ++i) {
            const auto where = "/cells/" + std::to_string(i);
            ComplexSpec::Cell cell{string_at(field(cells[i], "id", where), where + "/id"), {}};
            const auto& boundary = array_at(field(cells[i], "boundary", where), where + "/boundary");
            for (std::size_t k = 0; k < boundary.size(); ++k)
                cell.boundary.push_back(string_at(boundary[k], where + "/boundary/" + std::to_string(k)));
            spec.cells.push_back(std::move(cell));
        }
    }
    return spec;
}

Json to_json(const ComplexSpec& spec)
{
    Json doc;
    doc["vertices"] = spec.vertices;
    doc["edges"] = Json::array();
    for (const auto& e : spec.edges)
        doc["edges"].push_back({{"id", e.id}, {"src", e.src}, {"dst", e.dst}});
    doc["cells"] = Json::array();
    for (const auto& c : spec.cells)
        doc["cells"].push_back({{"id", c.id}, {"boundary", c.boundary}});
    return doc;
}

// ----------------------------------------------------------------------------

FusionMap fusion_from_json(const Json& doc, ComplexPtr complex)
{
    const Complex& c = *complex;
    const GroupSpec group = group_at(doc);
    const auto base_name = string_at(field(doc, "basepoint", ""), "/basepoint");
    const auto basepoint = c.find_vertex(base_name);
    if (!basepoint)
        fail("/basepoint", "unknown vertex " + base_name);

    Tree tree = spanning_tree(c, *basepoint);
    if (doc.contains("tree")) {
        const auto& list = array_at(doc.at("tree"), "/tree");
        std::vector<EdgeId> edges;
        for (std::size_t i = 0; i < list.size(); ++i) {
            const auto name = string_at(list[i], "/tree/" + std::to_string(i));
            auto e = c.find_edge(name);
            if (!e)
                fail("/tree/" + std::to_string(i), "unknown edge " + name);
            edges.push_back(*e);
        }
        try {
            tree = Tree::from_edges(c, *basepoint, edges);
        } catch (const StructuralError& e) {
            fail("/tree", e.what());
        }
    }

    std::map<EdgeId, GroupElement> values;
    const auto& obj = object_at(field(doc, "values", ""), "/values");
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        const auto where = "/values/" + escape(it.key());
        auto e = c.find_edge(it.key());
        if (!e)
            fail(where, "unknown edge " + it.key());
        values.emplace(*e, element_at(it.value(), group, where));
    }
    try {
        return FusionMap(std::move(complex), group, std::move(tree), std::move(values));
    } catch (const StructuralError& e) {
        fail("/values", e.what());
    }
}

Json to_json(const FusionMap& f)
{
    const Complex& c = f.complex();
    Json doc;
    doc["group"] = to_string(f.group());
    doc["basepoint"] = c.vertex_name(f.basepoint());
    doc["tree"] = Json::array();
    for (auto e : f.tree().edges())
        doc["tree"].push_back(c.edge(e).id);
    doc["values"] = Json::object();
    for (const auto& [e, v] : f.values())
        doc["values"][c.edge(e).id] = format_element(v);
    return doc;
}

// ----------------------------------------------------------------------------

Connection connection_from_json(const Json& doc, ComplexPtr complex)
{
    const Complex& c = *complex;
    const GroupSpec group = group_at(doc);
    std::vector<std::optional<GroupElement>> slots(c.edge_count());
    const auto& obj = object_at(field(doc, "transport", ""), "/transport");
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        const auto where = "/transport/" + escape(it.key());
        auto e = c.find_edge(it.key());
        if (!e)
            fail(where, "unknown edge " + it.key());
        slots[*e] = element_at(it.value(), group, where);
    }
    std::vector<GroupElement> transport;
    for (EdgeId e = 0; e < c.edge_count(); ++e) {
        if (!slots[e])
            fail("/transport", "missing transport for edge " + c.edge(e).id);
        transport.push_back(std::move(*slots[e]));
    }
    return Connection(std::move(complex), group, std::move(transport));
}

Json to_json(const Connection& conn)
{
    Json doc;
    doc["group"] = to_string(conn.group());
    doc["transport"] = Json::object();
    for (EdgeId e = 0; e < conn.transports().size(); ++e)
        doc["transport"][conn.complex().edge(e).id] = format_element(conn.transport(e));
    return doc;
}

// ----------------------------------------------------------------------------

Gauge gauge_from_json(const Json& doc, const Complex& complex, const GroupSpec& group)
{
    std::vector<std::optional<GroupElement>> slots(complex.vertex_count());
    const auto& obj = object_at(field(doc, "assignment", ""), "/assignment");
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        const auto where = "/assignment/" + escape(it.key());
        auto v = complex.find_vertex(it.key());
        if (!v)
            fail(where, "unknown vertex " + it.key());
        slots[*v] = element_at(it.value(), group, where);
    }
    Gauge g;
    for (VertexId v = 0; v < complex.vertex_count(); ++v) {
        if (!slots[v])
            fail("/assignment", "missing value for vertex " + complex.vertex_name(v));
        g.assignment.push_back(std::move(*slots[v]));
    }
    return g;
}

Json to_json(const Complex& complex, const Gauge& g)
{
    Json doc;
    doc["assignment"] = Json::object();
    for (VertexId v = 0; v < g.assignment.size(); ++v)
        doc["assignment"][complex.vertex_name(v)] = format_element(g.assignment[v]);
    return doc;
}

// ----------------------------------------------------------------------------

LoopTable table_from_json(const Json& doc, const Complex& complex)
{
    LoopTable table{group_at(doc), {}, 0};
    const auto& entries = array_at(field(doc, "entries", ""), "/entries");
    for (std::size_t i = 0; i < entries.size(); ++i) {
        const auto where = "/entries/" + std::to_string(i);
        const auto text = string_at(field(entries[i], "loop", where), where + "/loop");
        ThinLoop loop;
        try {
            loop = parse_loop(complex, text);
        } catch (const Error& e) {
            fail(where + "/loop", e.what());
        }
        auto value = element_at(field(entries[i], "value", where), table.group, where + "/value");
        table.max_len = std::max(table.max_len, loop.length());
        if (!table.entries.emplace(loop, value).second)
            fail(where, "duplicate entry for loop '" + format_word(complex, loop.word()) + "'");
    }
    return table;
}

Json to_json(const Complex& complex, const LoopTable& table)
{
    Json doc;
    doc["group"] = to_string(table.group);
    doc["entries"] = Json::array();
    for (const auto& [loop, value] : table.entries)
        doc["entries"].push_back({{"loop", format_word(complex, loop.word())}, {"value", format_element(value)}});
    return doc;
}

} // namespace thinloop::io
