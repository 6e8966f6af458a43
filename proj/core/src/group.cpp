#include "thinloop/group.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <random>
#include <sstream>

#include "thinloop/errors.hpp"

namespace thinloop {

struct GroupSpec::Node
{
    Kind kind;
    std::uint64_t modulus = 0;
    double tolerance = 0.0;
    std::vector<GroupSpec> factors;
    int depth = 1;
};

GroupSpec GroupSpec::cyclic(std::uint64_t modulus)
{
    if (modulus < 1)
        throw StructuralError("cyclic modulus must be at least 1");
    auto node = std::make_shared<Node>();
    node->kind = Kind::Cyclic;
    node->modulus = modulus;
    return GroupSpec(std::move(node));
}

GroupSpec GroupSpec::integers()
{
    auto node = std::make_shared<Node>();
    node->kind = Kind::Integers;
    return GroupSpec(std::move(node));
}

GroupSpec GroupSpec::circle(double tolerance)
{
    if (!(tolerance > 0.0 && tolerance < 0.25))
        throw StructuralError("circle tolerance must lie in (0, 0.25)");
    auto node = std::make_shared<Node>();
    node->kind = Kind::Circle;
    node->tolerance = tolerance;
    return GroupSpec(std::move(node));
}

GroupSpec GroupSpec::product(std::vector<GroupSpec> factors)
{
    if (factors.empty())
        throw StructuralError("product group needs at least one factor");
    int depth = 0;
    for (const auto& f : factors)
        depth = std::max(depth, f.depth());
    if (depth + 1 > kMaxGroupDepth)
        throw StructuralError("product groups nest at most 4 levels deep");
    auto node = std::make_shared<Node>();
    node->kind = Kind::Product;
    node->factors = std::move(factors);
    node->depth = depth + 1;
    return GroupSpec(std::move(node));
}

GroupSpec::Kind GroupSpec::kind() const { return node_->kind; }

std::uint64_t GroupSpec::modulus() const
{
    if (node_->kind != Kind::Cyclic)
        throw StructuralError("modulus requested on a non-cyclic group");
    return node_->modulus;
}

double GroupSpec::tolerance() const
{
    if (node_->kind != Kind::Circle)
        throw StructuralError("tolerance requested on a non-circle group");
    return node_->tolerance;
}

const std::vector<GroupSpec>& GroupSpec::factors() const
{
    if (node_->kind != Kind::Product)
        throw StructuralError("factors requested on a non-product group");
    return node_->factors;
}

int GroupSpec::depth() const { return node_->depth; }

bool GroupSpec::is_finite() const { return order().has_value(); }

std::optional<std::uint64_t> GroupSpec::order() const
{
    switch (node_->kind) {
    case Kind::Cyclic: return node_->modulus;
    case Kind::Integers:
    case Kind::Circle: return std::nullopt;
    case Kind::Product: {
        std::uint64_t total = 1;
        for (const auto& f : node_->factors) {
            auto o = f.order();
            if (!o)
                return std::nullopt;
            total *= *o;
        }
        return total;
    }
    }
    return std::nullopt;
}

bool operator==(const GroupSpec& a, const GroupSpec& b)
{
    if (a.node_ == b.node_)
        return true;
    if (a.node_->kind != b.node_->kind)
        return false;
    switch (a.node_->kind) {
    case GroupSpec::Kind::Cyclic: return a.node_->modulus == b.node_->modulus;
    case GroupSpec::Kind::Integers: return true;
    case GroupSpec::Kind::Circle: return a.node_->tolerance == b.node_->tolerance;
    case GroupSpec::Kind::Product: return a.node_->factors == b.node_->factors;
    }
    return false;
}

// ----------------------------------------------------------------------------
// Elements
// ----------------------------------------------------------------------------

namespace {

double canonical_angle(double turns)
{
    if (!std::isfinite(turns))
        throw StructuralError("circle element must be finite");
    double r = turns - std::floor(turns);
    if (r >= 1.0 || r == 0.0)
        r = 0.0;
    return r;
}

void require_kind(const GroupSpec& spec, GroupSpec::Kind kind, const char* what)
{
    if (spec.kind() != kind)
        throw StructuralError(std::string("element constructor does not match group: ") + what);
}

void require_same(const GroupElement& a, const GroupElement& b)
{
    if (a.spec() != b.spec())
        throw StructuralError("group mismatch between operands: " + to_string(a.spec()) + " vs "
                              + to_string(b.spec()));
}

} // namespace

GroupElement GroupElement::from_residue(const GroupSpec& spec, std::int64_t residue)
{
    require_kind(spec, GroupSpec::Kind::Cyclic, "residue");
    const auto n = static_cast<std::int64_t>(spec.modulus());
    std::int64_t r = residue % n;
    if (r < 0)
        r += n;
    return GroupElement(spec, static_cast<std::uint64_t>(r));
}

GroupElement GroupElement::from_integer(const GroupSpec& spec, BigInt value)
{
    require_kind(spec, GroupSpec::Kind::Integers, "integer");
    return GroupElement(spec, std::move(value));
}

GroupElement GroupElement::from_angle(const GroupSpec& spec, double turns)
{
    require_kind(spec, GroupSpec::Kind::Circle, "angle");
    return GroupElement(spec, canonical_angle(turns));
}

GroupElement GroupElement::from_components(const GroupSpec& spec, Components components)
{
    require_kind(spec, GroupSpec::Kind::Product, "components");
    const auto& factors = spec.factors();
    if (components.size() != factors.size())
        throw StructuralError("product element arity does not match its group");
    for (std::size_t i = 0; i < factors.size(); ++i)
        if (components[i].spec() != factors[i])
            throw StructuralError("product component " + std::to_string(i) + " has the wrong group");
    return GroupElement(spec, std::move(components));
}

std::uint64_t GroupElement::residue() const { return std::get<std::uint64_t>(value_); }
const BigInt& GroupElement::integer() const { return std::get<BigInt>(value_); }
double GroupElement::angle() const { return std::get<double>(value_); }
const GroupElement::Components& GroupElement::components() const { return std::get<Components>(value_); }

GroupElement identity(const GroupSpec& spec)
{
    switch (spec.kind()) {
    case GroupSpec::Kind::Cyclic: return GroupElement(spec, std::uint64_t{0});
    case GroupSpec::Kind::Integers: return GroupElement(spec, BigInt{0});
    case GroupSpec::Kind::Circle: return GroupElement(spec, 0.0);
    case GroupSpec::Kind::Product: {
        GroupElement::Components parts;
        parts.reserve(spec.factors().size());
        for (const auto& f : spec.factors())
            parts.push_back(identity(f));
        return GroupElement(spec, std::move(parts));
    }
    }
    throw StructuralError("unknown group kind");
}

GroupElement combine(const GroupElement& a, const GroupElement& b)
{
    require_same(a, b);
    const auto& spec = a.spec_;
    switch (spec.kind()) {
    case GroupSpec::Kind::Cyclic: {
        const std::uint64_t n = spec.modulus();
        const std::uint64_t x = a.residue(), y = b.residue();
        // x, y < n, so x + y cannot wrap unless n is close to 2^64
        const std::uint64_t s = (x >= n - y) ? x - (n - y) : x + y;
        return GroupElement(spec, s);
    }
    case GroupSpec::Kind::Integers: return GroupElement(spec, BigInt(a.integer() + b.integer()));
    case GroupSpec::Kind::Circle: return GroupElement(spec, canonical_angle(a.angle() + b.angle()));
    case GroupSpec::Kind::Product: {
        const auto& xs = a.components();
        const auto& ys = b.components();
        GroupElement::Components parts;
        parts.reserve(xs.size());
        for (std::size_t i = 0; i < xs.size(); ++i)
            parts.push_back(combine(xs[i], ys[i]));
        return GroupElement(spec, std::move(parts));
    }
    }
    throw StructuralError("unknown group kind");
}

GroupElement invert(const GroupElement& a)
{
    const auto& spec = a.spec_;
    switch (spec.kind()) {
    case GroupSpec::Kind::Cyclic: {
        const std::uint64_t r = a.residue();
        return GroupElement(spec, r == 0 ? std::uint64_t{0} : spec.modulus() - r);
    }
    case GroupSpec::Kind::Integers: return GroupElement(spec, BigInt(-a.integer()));
    case GroupSpec::Kind::Circle: return GroupElement(spec, canonical_angle(-a.angle()));
    case GroupSpec::Kind::Product: {
        GroupElement::Components parts;
        parts.reserve(a.components().size());
        for (const auto& c : a.components())
            parts.push_back(invert(c));
        return GroupElement(spec, std::move(parts));
    }
    }
    throw StructuralError("unknown group kind");
}

GroupElement difference(const GroupElement& a, const GroupElement& b) { return combine(a, invert(b)); }

namespace {

double raw_circle_distance(double x, double y)
{
    const double d = std::fabs(x - y);
    return std::min(d, 1.0 - d);
}

} // namespace

bool equals(const GroupElement& a, const GroupElement& b)
{
    require_same(a, b);
    switch (a.spec().kind()) {
    case GroupSpec::Kind::Cyclic: return a.residue() == b.residue();
    case GroupSpec::Kind::Integers: return a.integer() == b.integer();
    case GroupSpec::Kind::Circle: return raw_circle_distance(a.angle(), b.angle()) <= a.spec().tolerance();
    case GroupSpec::Kind::Product: {
        const auto& xs = a.components();
        const auto& ys = b.components();
        for (std::size_t i = 0; i < xs.size(); ++i)
            if (!equals(xs[i], ys[i]))
                return false;
        return true;
    }
    }
    return false;
}

bool is_identity(const GroupElement& a) { return equals(a, identity(a.spec())); }

double circle_distance(const GroupElement& a, const GroupElement& b)
{
    require_same(a, b);
    switch (a.spec().kind()) {
    case GroupSpec::Kind::Circle: return raw_circle_distance(a.angle(), b.angle());
    case GroupSpec::Kind::Product: {
        double worst = 0.0;
        for (std::size_t i = 0; i < a.components().size(); ++i)
            worst = std::max(worst, circle_distance(a.components()[i], b.components()[i]));
        return worst;
    }
    default: return 0.0;
    }
}

// ----------------------------------------------------------------------------
// Component group
// ----------------------------------------------------------------------------

namespace {

bool is_trivial(const GroupSpec& spec)
{
    return spec.kind() == GroupSpec::Kind::Cyclic && spec.modulus() == 1;
}

// Indices of the factors of a product whose component group is nontrivial.
std::vector<std::size_t> surviving_factors(const GroupSpec& spec)
{
    std::vector<std::size_t> kept;
    const auto& factors = spec.factors();
    for (std::size_t i = 0; i < factors.size(); ++i)
        if (!is_trivial(pi0_spec(factors[i])))
            kept.push_back(i);
    return kept;
}

} // namespace

GroupSpec pi0_spec(const GroupSpec& spec)
{
    switch (spec.kind()) {
    case GroupSpec::Kind::Cyclic:
    case GroupSpec::Kind::Integers: return spec;
    case GroupSpec::Kind::Circle: return GroupSpec::trivial();
    case GroupSpec::Kind::Product: {
        const auto kept = surviving_factors(spec);
        if (kept.empty())
            return GroupSpec::trivial();
        if (kept.size() == 1)
            return pi0_spec(spec.factors()[kept.front()]);
        std::vector<GroupSpec> factors;
        for (auto i : kept)
            factors.push_back(pi0_spec(spec.factors()[i]));
        return GroupSpec::product(std::move(factors));
    }
    }
    throw StructuralError("unknown group kind");
}

GroupElement pi0_project(const GroupElement& a)
{
    const auto& spec = a.spec();
    switch (spec.kind()) {
    case GroupSpec::Kind::Cyclic:
    case GroupSpec::Kind::Integers: return a;
    case GroupSpec::Kind::Circle: return identity(GroupSpec::trivial());
    case GroupSpec::Kind::Product: {
        const auto kept = surviving_factors(spec);
        const auto target = pi0_spec(spec);
        if (kept.empty())
            return identity(target);
        if (kept.size() == 1)
            return pi0_project(a.components()[kept.front()]);
        GroupElement::Components parts;
        for (auto i : kept)
            parts.push_back(pi0_project(a.components()[i]));
        return GroupElement::from_components(target, std::move(parts));
    }
    }
    throw StructuralError("unknown group kind");
}

// ----------------------------------------------------------------------------
// Random and finite enumeration
// ----------------------------------------------------------------------------

namespace {

GroupElement draw(const GroupSpec& spec, std::mt19937_64& rng)
{
    switch (spec.kind()) {
    case GroupSpec::Kind::Cyclic: {
        std::uniform_int_distribution<std::uint64_t> dist(0, spec.modulus() - 1);
        return GroupElement::from_residue(spec, static_cast<std::int64_t>(dist(rng)));
    }
    case GroupSpec::Kind::Integers: {
        std::uniform_int_distribution<int> dist(-100, 100);
        return GroupElement::from_integer(spec, BigInt(dist(rng)));
    }
    case GroupSpec::Kind::Circle: {
        // 53 random bits give a uniform double in [0, 1)
        const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
        return GroupElement::from_angle(spec, u);
    }
    case GroupSpec::Kind::Product: {
        GroupElement::Components parts;
        for (const auto& f : spec.factors())
            parts.push_back(draw(f, rng));
        return GroupElement::from_components(spec, std::move(parts));
    }
    }
    throw StructuralError("unknown group kind");
}

} // namespace

GroupElement random_element(const GroupSpec& spec, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    return draw(spec, rng);
}

std::vector<GroupElement> all_elements(const GroupSpec& spec)
{
    if (!spec.is_finite())
        throw UnsupportedSpecError("cannot enumerate the infinite group " + to_string(spec));
    if (spec.kind() == GroupSpec::Kind::Cyclic) {
        std::vector<GroupElement> out;
        out.reserve(spec.modulus());
        for (std::uint64_t r = 0; r < spec.modulus(); ++r)
            out.push_back(GroupElement::from_residue(spec, static_cast<std::int64_t>(r)));
        return out;
    }
    std::vector<GroupElement::Components> partial{{}};
    for (const auto& f : spec.factors()) {
        std::vector<GroupElement::Components> next;
        const auto options = all_elements(f);
        for (const auto& prefix : partial)
            for (const auto& x : options) {
                auto extended = prefix;
                extended.push_back(x);
                next.push_back(std::move(extended));
            }
        partial = std::move(next);
    }
    std::vector<GroupElement> out;
    out.reserve(partial.size());
    for (auto& parts : partial)
        out.push_back(GroupElement::from_components(spec, std::move(parts)));
    return out;
}

std::uint64_t finite_index(const GroupElement& a)
{
    const auto& spec = a.spec();
    if (!spec.is_finite())
        throw UnsupportedSpecError("finite_index on the infinite group " + to_string(spec));
    if (spec.kind() == GroupSpec::Kind::Cyclic)
        return a.residue();
    std::uint64_t index = 0;
    for (std::size_t i = 0; i < spec.factors().size(); ++i)
        index = index * *spec.factors()[i].order() + finite_index(a.components()[i]);
    return index;
}

// ----------------------------------------------------------------------------
// Text forms
// ----------------------------------------------------------------------------

namespace {

std::vector<std::string_view> split(std::string_view text, char sep)
{
    std::vector<std::string_view> parts;
    std::size_t begin = 0;
    while (true) {
        const auto pos = text.find(sep, begin);
        parts.push_back(text.substr(begin, pos == std::string_view::npos ? std::string_view::npos : pos - begin));
        if (pos == std::string_view::npos)
            break;
        begin = pos + 1;
    }
    return parts;
}

double parse_double(std::string_view text, const std::string& context)
{
    double value = 0.0;
    const auto* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (text.empty() || ec != std::errc() || ptr != end || !std::isfinite(value))
        throw ParseError("invalid real '" + std::string(text) + "' in " + context);
    return value;
}

GroupSpec parse_factor(std::string_view text)
{
    if (text == "Z")
        return GroupSpec::integers();
    if (text == "U1")
        return GroupSpec::circle();
    if (text.rfind("U1:", 0) == 0) {
        const double tol = parse_double(text.substr(3), "circle tolerance");
        if (!(tol > 0.0 && tol < 0.25))
            throw ParseError("circle tolerance must lie in (0, 0.25): '" + std::string(text) + "'");
        return GroupSpec::circle(tol);
    }
    if (text.rfind("Zn:", 0) == 0) {
        const auto digits = text.substr(3);
        std::uint64_t n = 0;
        const auto* end = digits.data() + digits.size();
        auto [ptr, ec] = std::from_chars(digits.data(), end, n);
        if (digits.empty() || ec != std::errc() || ptr != end || n < 1)
            throw ParseError("invalid cyclic modulus in '" + std::string(text) + "'");
        return GroupSpec::cyclic(n);
    }
    throw ParseError("unknown group '" + std::string(text) + "'");
}

} // namespace

GroupSpec parse_group_spec(std::string_view text)
{
    const auto parts = split(text, 'x');
    if (parts.size() == 1)
        return parse_factor(parts.front());
    std::vector<GroupSpec> factors;
    for (auto p : parts)
        factors.push_back(parse_factor(p));
    return GroupSpec::product(std::move(factors));
}

std::string to_string(const GroupSpec& spec)
{
    switch (spec.kind()) {
    case GroupSpec::Kind::Cyclic: return "Zn:" + std::to_string(spec.modulus());
    case GroupSpec::Kind::Integers: return "Z";
    case GroupSpec::Kind::Circle: {
        if (spec.tolerance() == kDefaultCircleTolerance)
            return "U1";
        char buf[64];
        auto res = std::to_chars(buf, buf + sizeof buf, spec.tolerance());
        return "U1:" + std::string(buf, res.ptr);
    }
    case GroupSpec::Kind::Product: {
        // Nested products flatten; the text grammar has no brackets.
        std::string out;
        for (const auto& f : spec.factors()) {
            if (!out.empty())
                out += 'x';
            out += to_string(f);
        }
        return out;
    }
    }
    return {};
}

std::string format_element(const GroupElement& a)
{
    switch (a.spec().kind()) {
    case GroupSpec::Kind::Cyclic: return std::to_string(a.residue());
    case GroupSpec::Kind::Integers: return a.integer().str();
    case GroupSpec::Kind::Circle: {
        char buf[64];
        auto res = std::to_chars(buf, buf + sizeof buf, a.angle());
        return std::string(buf, res.ptr);
    }
    case GroupSpec::Kind::Product: {
        std::string out;
        for (const auto& c : a.components()) {
            if (!out.empty())
                out += ',';
            out += format_element(c);
        }
        return out;
    }
    }
    return {};
}

namespace {

bool is_decimal_integer(std::string_view text)
{
    std::size_t i = (!text.empty() && (text[0] == '-' || text[0] == '+')) ? 1 : 0;
    if (i == text.size())
        return false;
    for (; i < text.size(); ++i)
        if (text[i] < '0' || text[i] > '9')
            return false;
    return true;
}

} // namespace

GroupElement parse_element(const GroupSpec& spec, std::string_view text)
{
    switch (spec.kind()) {
    case GroupSpec::Kind::Cyclic: {
        if (!is_decimal_integer(text))
            throw ParseError("invalid residue '" + std::string(text) + "' for " + to_string(spec));
        const BigInt value(std::string(text[0] == '+' ? text.substr(1) : text));
        BigInt r = value % spec.modulus();
        if (r < 0)
            r += spec.modulus();
        return GroupElement::from_residue(spec, r.convert_to<std::int64_t>());
    }
    case GroupSpec::Kind::Integers: {
        if (!is_decimal_integer(text))
            throw ParseError("invalid integer '" + std::string(text) + "'");
        return GroupElement::from_integer(spec, BigInt(std::string(text[0] == '+' ? text.substr(1) : text)));
    }
    case GroupSpec::Kind::Circle:
        return GroupElement::from_angle(spec, parse_double(text, "circle element"));
    case GroupSpec::Kind::Product: {
        const auto& factors = spec.factors();
        const auto parts = split(text, ',');
        if (parts.size() != factors.size())
            throw ParseError("element '" + std::string(text) + "' has " + std::to_string(parts.size())
                             + " components, " + to_string(spec) + " needs " + std::to_string(factors.size()));
        GroupElement::Components comps;
        for (std::size_t i = 0; i < parts.size(); ++i)
            comps.push_back(parse_element(factors[i], parts[i]));
        return GroupElement::from_components(spec, std::move(comps));
    }
    }
    throw ParseError("unknown group kind");
}

} // namespace thinloop
