#ifndef THINLOOP_IO_HPP
#define THINLOOP_IO_HPP

/**
 * JSON file formats.
 *
 *   complex     {"vertices":[...], "edges":[{"id","src","dst"}], "cells":[{"id","boundary":["e1+",...]}]}
 *   fusion map  {"group":"Zn:4", "basepoint":"p", "tree":["e1"], "values":{"e2":"1"}}
 *   connection  {"group":"Zn:4", "transport":{"e1":"1", ...}}
 *   gauge       {"assignment":{"p":"0", ...}}
 *   loop table  {"group":"Zn:4", "entries":[{"loop":"e2+ e1-", "value":"1"}, ...]}
 *
 * Group elements are strings in the group's element syntax. Malformed input
 * raises ParseError whose message carries a byte offset or a JSON pointer.
 */

#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "thinloop/complex.hpp"
#include "thinloop/connection.hpp"
#include "thinloop/fusion.hpp"

namespace thinloop::io {

using Json = nlohmann::ordered_json;

/// Parses text; `source` names the input in error messages.
Json parse_json(std::string_view text, const std::string& source = "<input>");
Json read_json_file(const std::string& path);

ComplexSpec complex_from_json(const Json& doc);
Json to_json(const ComplexSpec& spec);

/// Tree omitted: the breadth-first tree at the basepoint.
FusionMap fusion_from_json(const Json& doc, ComplexPtr complex);
Json to_json(const FusionMap& f);

Connection connection_from_json(const Json& doc, ComplexPtr complex);
Json to_json(const Connection& c);

Gauge gauge_from_json(const Json& doc, const Complex& complex, const GroupSpec& group);
Json to_json(const Complex& complex, const Gauge& g);

/// max_len is the longest loop among the entries.
LoopTable table_from_json(const Json& doc, const Complex& complex);
Json to_json(const Complex& complex, const LoopTable& table);

} // namespace thinloop::io

#endif
