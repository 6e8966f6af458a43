#include "cli.hpp"

#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "thinloop/complex.hpp"
#include "thinloop/connection.hpp"
#include "thinloop/errors.hpp"
#include "thinloop/fusion.hpp"
#include "thinloop/io.hpp"
#include "thinloop/path.hpp"
#include "thinloop/transgression.hpp"

namespace thinloop::cli {

namespace {

using io::Json;

struct Options
{
    std::string complex_path;
    std::string fusion_path;
    std::string connection_path;
    std::string other_path;
    std::string table_path;
    std::string basepoint;
    std::string loop;
    std::string group = "Zn:4";
    std::string out_path;
    std::size_t max_len = 0;
    std::uint64_t seed = 0;
    bool quiet = false;
};

/// What a command produced: the full document, the --quiet value, and the exit code.
struct Result
{
    Json doc;
    std::string value;
    int code = kOk;
};

ComplexPtr load_complex(const Options& o)
{
    if (o.complex_path.empty())
        throw ParseError("--complex is required");
    const auto spec = io::complex_from_json(io::read_json_file(o.complex_path));
    return std::make_shared<const Complex>(Complex::build(spec));
}

VertexId basepoint_of(const Options& o, const Complex& c)
{
    if (o.basepoint.empty())
        return 0;
    return c.vertex(o.basepoint);
}

Connection load_connection(const std::string& path, const ComplexPtr& c)
{
    return io::connection_from_json(io::read_json_file(path), c);
}

FusionMap load_fusion(const Options& o, const ComplexPtr& c)
{
    if (!o.fusion_path.empty())
        return io::fusion_from_json(io::read_json_file(o.fusion_path), c);
    if (!o.table_path.empty()) {
        const auto table = io::table_from_json(io::read_json_file(o.table_path), *c);
        return from_table(table, c, basepoint_of(o, *c));
    }
    throw ParseError("--fusion or --table is required");
}

Json element_map(const Complex& c, const std::map<EdgeId, GroupElement>& values)
{
    Json out = Json::object();
    for (const auto& [e, v] : values)
        out[c.edge(e).id] = format_element(v);
    return out;
}

std::string compact(const Json& j)
{
    if (j.is_string())
        return j.get<std::string>();
    return j.dump();
}

Json report_json(const Complex& c, const RoundTripReport& r)
{
    Json doc;
    doc["direction"] = r.direction == RoundTripReport::Direction::FusionFirst ? "fusion-first" : "bundle-first";
    doc["verdict"] = r.verdict;
    doc["checked"] = r.checked;
    doc["witnesses"] = Json::array();
    for (const auto& w : r.witnesses)
        doc["witnesses"].push_back({{"subject", w.subject},
                                    {"expected", format_element(w.expected)},
                                    {"actual", format_element(w.actual)},
                                    {"match", w.match}});
    if (r.gauge)
        doc["gauge"] = io::to_json(c, *r.gauge)["assignment"];
    else
        doc["gauge"] = nullptr;
    return doc;
}

Json violations_json(const Complex& c, const std::vector<FusionViolation>& violations)
{
    Json out = Json::array();
    for (const auto& v : violations)
        out.push_back({{"gamma1", format_word(c, v.gamma1.word())},
                       {"gamma2", format_word(c, v.gamma2.word())},
                       {"gamma3", format_word(c, v.gamma3.word())},
                       {"start", c.vertex_name(v.gamma1.start())},
                       {"end", c.vertex_name(v.gamma1.end())},
                       {"lhs", format_element(v.lhs)},
                       {"rhs", format_element(v.rhs)}});
    return out;
}

// ----------------------------------------------------------------------------
// Commands
// ----------------------------------------------------------------------------

Result cmd_validate(const Options& o)
{
    Result r;
    if (o.complex_path.empty())
        throw ParseError("--complex is required");
    const auto spec = io::complex_from_json(io::read_json_file(o.complex_path));
    const auto diagnostics = validate_complex(spec);
    Json complex_doc;
    complex_doc["valid"] = diagnostics.empty();
    complex_doc["diagnostics"] = Json::array();
    for (const auto& d : diagnostics)
        complex_doc["diagnostics"].push_back({{"subject", d.subject}, {"message", d.message}});
    if (!diagnostics.empty()) {
        r.doc["complex"] = complex_doc;
        r.value = "invalid";
        r.code = kInputError;
        return r;
    }
    const auto c = std::make_shared<const Complex>(Complex::build(spec));
    complex_doc["vertices"] = c->vertex_count();
    complex_doc["edges"] = c->edge_count();
    complex_doc["cells"] = c->cell_count();
    complex_doc["connected"] = c->is_connected();
    if (c->is_connected())
        complex_doc["cycle_rank"] = c->cycle_rank();
    r.doc["complex"] = complex_doc;
    r.value = "valid";

    if (!o.fusion_path.empty()) {
        const auto f = io::fusion_from_json(io::read_json_file(o.fusion_path), c);
        r.doc["fusion"] = {{"valid", true}, {"locally_constant", is_locally_constant(f)}};
    }
    if (!o.connection_path.empty()) {
        const auto conn = load_connection(o.connection_path, c);
        r.doc["connection"] = {{"valid", true}, {"flat", is_flat(conn)}};
    }
    if (!o.table_path.empty()) {
        const auto table = io::table_from_json(io::read_json_file(o.table_path), *c);
        const std::size_t depth = o.max_len ? o.max_len : std::min(kMaxFusionTripleLength, table.max_len / 2);
        const auto violations = validate_fusion(table, *c, depth);
        r.doc["table"] = {{"entries", table.entries.size()},
                          {"checked_path_length", depth},
                          {"fusion", violations.empty()},
                          {"violations", violations_json(*c, violations)}};
        if (!violations.empty()) {
            r.value = "not-fusion";
            r.code = kFalse;
        }
    }
    return r;
}

Result cmd_transgress(const Options& o)
{
    const auto c = load_complex(o);
    const auto f = transgress(load_connection(o.connection_path, c), basepoint_of(o, *c));
    Result r;
    r.doc = io::to_json(f);
    r.value = compact(r.doc["values"]);
    return r;
}

Result cmd_regress(const Options& o)
{
    const auto c = load_complex(o);
    const auto f = load_fusion(o, c);
    const VertexId base = o.basepoint.empty() ? f.basepoint() : c->vertex(o.basepoint);
    Result r;
    r.doc = io::to_json(regress(f, base));
    r.value = compact(r.doc["transport"]);
    return r;
}

Result cmd_regress_descent(const Options& o)
{
    const auto c = load_complex(o);
    const VertexId base = basepoint_of(o, *c);
    std::size_t max_len = o.max_len;
    if (max_len == 0) {
        // Long enough to lift every edge from its tree-path representative.
        const Tree tree = spanning_tree(*c, base);
        for (VertexId v = 0; v < c->vertex_count(); ++v)
            max_len = std::max(max_len, tree.path_to(v).length() + 1);
        max_len = std::min(max_len, kMaxDescentLength);
    }

    std::optional<DescentResult> result;
    if (!o.table_path.empty()) {
        const auto table = io::table_from_json(io::read_json_file(o.table_path), *c);
        result = regress_via_descent(table_lookup(*c, table), table.group, c, base, max_len);
    } else {
        result = regress_via_descent(load_fusion(o, c), base, max_len);
    }
    Result r;
    r.doc["connection"] = io::to_json(result->connection);
    r.doc["max_len"] = max_len;
    r.doc["based_paths"] = result->path_count;
    r.doc["fiber_classes"] = Json::object();
    for (VertexId v = 0; v < c->vertex_count(); ++v)
        r.doc["fiber_classes"][c->vertex_name(v)] = result->fiber_classes[v];
    r.value = compact(r.doc["connection"]["transport"]);
    return r;
}

Result cmd_roundtrip(const Options& o)
{
    const auto c = load_complex(o);
    if (o.fusion_path.empty() && o.table_path.empty() && o.connection_path.empty())
        throw ParseError("roundtrip needs --fusion, --table or --connection");
    Result r;
    bool verdict = true;
    if (!o.fusion_path.empty() || !o.table_path.empty()) {
        const auto report = roundtrip_fusion(load_fusion(o, c), o.max_len ? o.max_len : kRoundTripLoopLength);
        r.doc["fusion_first"] = report_json(*c, report);
        verdict = verdict && report.verdict;
    }
    if (!o.connection_path.empty()) {
        const auto report = roundtrip_bundle(load_connection(o.connection_path, c), basepoint_of(o, *c));
        r.doc["bundle_first"] = report_json(*c, report);
        verdict = verdict && report.verdict;
    }
    r.doc["verdict"] = verdict;
    r.value = verdict ? "true" : "false";
    r.code = verdict ? kOk : kFalse;
    return r;
}

Result cmd_holonomy(const Options& o)
{
    const auto c = load_complex(o);
    const auto conn = load_connection(o.connection_path, c);
    const auto loop = parse_loop(*c, o.loop);
    const auto value = holonomy(conn, loop);
    Result r;
    r.doc["loop"] = format_word(*c, loop.word());
    r.doc["holonomy"] = format_element(value);
    r.value = format_element(value);
    return r;
}

Result cmd_curvature(const Options& o)
{
    const auto c = load_complex(o);
    const auto conn = load_connection(o.connection_path, c);
    Result r;
    r.doc["cells"] = Json::object();
    for (CellId k = 0; k < c->cell_count(); ++k)
        r.doc["cells"][c->cell(k).id] = format_element(curvature(conn, k));
    const bool flat = is_flat(conn);
    r.doc["flat"] = flat;
    r.value = flat ? "flat" : "curved";
    return r;
}

Result cmd_iso(const Options& o)
{
    const auto c = load_complex(o);
    if (o.other_path.empty())
        throw ParseError("--other is required");
    const auto a = load_connection(o.connection_path, c);
    const auto b = load_connection(o.other_path, c);
    const auto gauge = are_isomorphic(a, b);
    Result r;
    r.doc["isomorphic"] = gauge.has_value();
    r.doc["gauge"] = gauge ? io::to_json(*c, *gauge)["assignment"] : Json(nullptr);
    r.value = gauge ? compact(r.doc["gauge"]) : "none";
    r.code = gauge ? kOk : kFalse;
    return r;
}

Result cmd_classify(const Options& o)
{
    const auto c = load_complex(o);
    if (o.connection_path.empty() && o.fusion_path.empty() && o.table_path.empty())
        throw ParseError("classify needs --connection, --fusion or --table");
    Result r;
    bool verdict = true;
    if (!o.connection_path.empty()) {
        const auto conn = load_connection(o.connection_path, c);
        const VertexId base = basepoint_of(o, *c);
        r.doc["pi0"] = to_string(pi0_spec(conn.group()));
        r.doc["deformation_class"] = element_map(*c, deformation_class(conn, base));
        r.doc["transgression_homotopy_class"] = element_map(*c, homotopy_class(transgress(conn, base)));
        const bool square = theorem_c_check(conn, base);
        r.doc["classes_agree"] = square;
        verdict = verdict && square;
        r.value = compact(r.doc["deformation_class"]);
    }
    if (!o.fusion_path.empty() || !o.table_path.empty()) {
        const auto f = load_fusion(o, c);
        r.doc["pi0"] = to_string(pi0_spec(f.group()));
        r.doc["homotopy_class"] = element_map(*c, homotopy_class(f));
        if (r.value.empty())
            r.value = compact(r.doc["homotopy_class"]);
    }
    r.code = verdict ? kOk : kFalse;
    return r;
}

Result cmd_gen(const Options& o)
{
    const auto spec = random_complex(o.seed);
    const auto c = std::make_shared<const Complex>(Complex::build(spec));
    const GroupSpec group = parse_group_spec(o.group);
    Result r;
    r.doc["seed"] = o.seed;
    r.doc["complex"] = io::to_json(spec);
    r.doc["connection"] = io::to_json(random_connection(group, c, o.seed));
    r.doc["fusion"] = io::to_json(random_fusion_map(c, group, 0, o.seed));
    r.value = r.doc.dump();
    return r;
}

Result cmd_enumerate(const Options& o)
{
    const auto c = load_complex(o);
    const auto loops = enumerate_loops(*c, o.max_len);
    Result r;
    r.doc["max_len"] = o.max_len;
    r.doc["count"] = loops.size();
    r.doc["loops"] = Json::array();
    std::string lines;
    for (const auto& l : loops) {
        const auto text = format_word(*c, l.word());
        r.doc["loops"].push_back(text);
        lines += text + "\n";
    }
    r.value = lines.empty() ? "" : lines.substr(0, lines.size() - 1);
    return r;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Transgression and regression between abelian bundles with connection and fusion maps"};
    app.require_subcommand(1);
    app.fallthrough();
    Options o;

    app.add_flag("-q,--quiet", o.quiet, "Print only the result value");
    app.add_option("-o,--out", o.out_path, "Write the document to a file instead of standard output");

    const auto add_complex = [&](CLI::App* cmd) { cmd->add_option("--complex", o.complex_path, "Complex JSON file")->required(); };
    const auto add_base = [&](CLI::App* cmd) { cmd->add_option("--basepoint", o.basepoint, "Basepoint vertex (default: least vertex)"); };

    auto* validate = app.add_subcommand("validate", "Check a complex and optional fusion map, connection or loop table");
    validate->add_option("--complex", o.complex_path, "Complex JSON file")->required();
    validate->add_option("--fusion", o.fusion_path, "Fusion map JSON file");
    validate->add_option("--connection", o.connection_path, "Connection JSON file");
    validate->add_option("--table", o.table_path, "Loop table JSON file");
    validate->add_option("--max-len", o.max_len, "Path length for fusion triples (default: half the table bound)")
        ->check(CLI::Range(std::size_t{0}, kMaxFusionTripleLength));

    auto* trans = app.add_subcommand("transgress", "Holonomy fusion map of a connection");
    add_complex(trans);
    trans->add_option("--connection", o.connection_path, "Connection JSON file")->required();
    add_base(trans);

    auto* reg = app.add_subcommand("regress", "Connection in tree gauge from a fusion map");
    add_complex(reg);
    reg->add_option("--fusion", o.fusion_path, "Fusion map JSON file");
    reg->add_option("--table", o.table_path, "Loop table JSON file");
    add_base(reg);

    auto* desc = app.add_subcommand("regress-descent", "Connection from the descent quotient (finite groups)");
    add_complex(desc);
    desc->add_option("--fusion", o.fusion_path, "Fusion map JSON file");
    desc->add_option("--table", o.table_path, "Loop table JSON file");
    desc->add_option("--max-len", o.max_len, "Based path length bound")->check(CLI::Range(std::size_t{1}, kMaxDescentLength));
    add_base(desc);

    auto* round = app.add_subcommand("roundtrip", "Check both round trips");
    add_complex(round);
    round->add_option("--fusion", o.fusion_path, "Fusion map JSON file");
    round->add_option("--table", o.table_path, "Loop table JSON file");
    round->add_option("--connection", o.connection_path, "Connection JSON file");
    round->add_option("--max-len", o.max_len, "Loop length for the fusion-first sweep")
        ->check(CLI::Range(std::size_t{0}, kMaxEnumerationLength));
    add_base(round);

    auto* hol = app.add_subcommand("holonomy", "Holonomy of a connection around a loop");
    add_complex(hol);
    hol->add_option("--connection", o.connection_path, "Connection JSON file")->required();
    hol->add_option("--loop", o.loop, "Closed walk as traversal tokens, e.g. \"e2+ e1-\"")->required();

    auto* curv = app.add_subcommand("curvature", "Per-cell curvature and flatness");
    add_complex(curv);
    curv->add_option("--connection", o.connection_path, "Connection JSON file")->required();

    auto* iso = app.add_subcommand("iso", "Decide gauge equivalence of two connections");
    add_complex(iso);
    iso->add_option("--connection", o.connection_path, "Connection JSON file")->required();
    iso->add_option("--other", o.other_path, "Second connection JSON file")->required();

    auto* classify = app.add_subcommand("classify", "Deformation and fusion-homotopy classes");
    add_complex(classify);
    classify->add_option("--connection", o.connection_path, "Connection JSON file");
    classify->add_option("--fusion", o.fusion_path, "Fusion map JSON file");
    classify->add_option("--table", o.table_path, "Loop table JSON file");
    add_base(classify);

    auto* gen = app.add_subcommand("gen", "Seeded random complex, connection and fusion map");
    gen->add_option("--seed", o.seed, "64-bit seed")->required();
    gen->add_option("--group", o.group, "Group spec (default Zn:4)");

    auto* enumerate = app.add_subcommand("enumerate-loops", "All canonical thin loops up to a length");
    add_complex(enumerate);
    enumerate->add_option("--max-len", o.max_len, "Maximum word length")
        ->required()
        ->check(CLI::Range(std::size_t{0}, kMaxEnumerationLength));

    std::ostringstream cli_out, cli_err;
    try {
        app.parse(std::vector<std::string>(args.rbegin(), args.rend()));
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, cli_out, cli_err);
        out << cli_out.str();
        err << cli_err.str();
        return code == 0 ? kOk : kInputError;
    }

    Result result;
    try {
        if (validate->parsed()) result = cmd_validate(o);
        else if (trans->parsed()) result = cmd_transgress(o);
        else if (reg->parsed()) result = cmd_regress(o);
        else if (desc->parsed()) result = cmd_regress_descent(o);
        else if (round->parsed()) result = cmd_roundtrip(o);
        else if (hol->parsed()) result = cmd_holonomy(o);
        else if (curv->parsed()) result = cmd_curvature(o);
        else if (iso->parsed()) result = cmd_iso(o);
        else if (classify->parsed()) result = cmd_classify(o);
        else if (gen->parsed()) result = cmd_gen(o);
        else if (enumerate->parsed()) result = cmd_enumerate(o);
    } catch (const FusionError& e) {
        err << "error: " << e.what() << "\n";
        return kFalse;
    } catch (const InconsistencyError& e) {
        err << "error: " << e.what() << "\n";
        return kFalse;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kInputError;
    }

    const std::string text = o.quiet ? result.value + "\n" : result.doc.dump(2) + "\n";
    if (!o.out_path.empty()) {
        std::ofstream file(o.out_path, std::ios::binary);
        if (!file) {
            err << "error: cannot write " << o.out_path << "\n";
            return kInputError;
        }
        file << text;
    } else {
        out << text;
    }
    if (result.code == kInputError)
        err << "error: input is invalid\n";
    return result.code;
}

} // namespace thinloop::cli
