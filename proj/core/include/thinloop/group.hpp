#ifndef THINLOOP_GROUP_HPP
#define THINLOOP_GROUP_HPP

/**
 * The abelian structure group.
 *
 * Groups are written additively internally: cyclic groups as residues, the
 * integers with arbitrary precision, and the circle as reals modulo 1 compared
 * up to a per-spec tolerance. Products are component-wise, and nest at most
 * four levels deep.
 *
 * Text grammar for specs: "Z", "Zn:<n>", "U1", "U1:<tol>", with products
 * joined by 'x' (for instance "Zn:2xU1").
 */

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace thinloop {

using BigInt = boost::multiprecision::cpp_int;

inline constexpr double kDefaultCircleTolerance = 1e-9;
inline constexpr int kMaxGroupDepth = 4;

class GroupSpec
{
public:
    enum class Kind { Cyclic, Integers, Circle, Product };

    static GroupSpec cyclic(std::uint64_t modulus);
    static GroupSpec integers();
    static GroupSpec circle(double tolerance = kDefaultCircleTolerance);
    static GroupSpec product(std::vector<GroupSpec> factors);

    /// The trivial group, cyclic(1).
    static GroupSpec trivial() { return cyclic(1); }

    Kind kind() const;
    std::uint64_t modulus() const;
    double tolerance() const;
    const std::vector<GroupSpec>& factors() const;

    /// 1 for non-product specs, 1 + max factor depth for products.
    int depth() const;
    bool is_finite() const;
    /// Number of elements, for finite specs.
    std::optional<std::uint64_t> order() const;

    friend bool operator==(const GroupSpec& a, const GroupSpec& b);
    friend bool operator!=(const GroupSpec& a, const GroupSpec& b) { return !(a == b); }

private:
    struct Node;
    explicit GroupSpec(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
    std::shared_ptr<const Node> node_;
};

class GroupElement
{
public:
    using Components = std::vector<GroupElement>;
    using Value = std::variant<std::uint64_t, BigInt, double, Components>;

    /// Residue is reduced modulo n (negative inputs wrap).
    static GroupElement from_residue(const GroupSpec& spec, std::int64_t residue);
    static GroupElement from_integer(const GroupSpec& spec, BigInt value);
    /// Angle in turns; canonicalized to [0, 1).
    static GroupElement from_angle(const GroupSpec& spec, double turns);
    static GroupElement from_components(const GroupSpec& spec, Components components);

    const GroupSpec& spec() const { return spec_; }
    const Value& value() const { return value_; }

    std::uint64_t residue() const;
    const BigInt& integer() const;
    double angle() const;
    const Components& components() const;

private:
    GroupElement(GroupSpec spec, Value value) : spec_(std::move(spec)), value_(std::move(value)) {}
    friend GroupElement identity(const GroupSpec& spec);
    friend GroupElement combine(const GroupElement& a, const GroupElement& b);
    friend GroupElement invert(const GroupElement& a);

    GroupSpec spec_;
    Value value_;
};

GroupElement identity(const GroupSpec& spec);
/// The group law. Throws StructuralError when the operands have different specs.
GroupElement combine(const GroupElement& a, const GroupElement& b);
GroupElement invert(const GroupElement& a);
/// combine(a, invert(b))
GroupElement difference(const GroupElement& a, const GroupElement& b);

/// Exact for discrete parts; circular distance within tolerance for circle parts.
bool equals(const GroupElement& a, const GroupElement& b);
bool is_identity(const GroupElement& a);

/// Largest circular distance over all circle components; 0 when there are none.
double circle_distance(const GroupElement& a, const GroupElement& b);

/// Component group. Trivial factors are dropped from products, so
/// pi0_spec(Z x U1) is Z, and a product with no nontrivial factor is cyclic(1).
GroupSpec pi0_spec(const GroupSpec& spec);
GroupElement pi0_project(const GroupElement& a);

/// Deterministic in (spec, seed). Integers are drawn from [-100, 100].
GroupElement random_element(const GroupSpec& spec, std::uint64_t seed);

/// Every element of a finite group, in lexicographic residue order.
std::vector<GroupElement> all_elements(const GroupSpec& spec);
/// Position of a finite-group element in all_elements(spec).
std::uint64_t finite_index(const GroupElement& a);

GroupSpec parse_group_spec(std::string_view text);
std::string to_string(const GroupSpec& spec);

/// Decimal integer, shortest round-trip decimal real, or comma-joined tuple.
std::string format_element(const GroupElement& a);
GroupElement parse_element(const GroupSpec& spec, std::string_view text);

} // namespace thinloop

#endif
