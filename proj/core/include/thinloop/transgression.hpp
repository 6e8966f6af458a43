#ifndef THINLOOP_TRANSGRESSION_HPP
#define THINLOOP_TRANSGRESSION_HPP

/**
 * Transgression (connection -> holonomy fusion map) and regression (fusion
 * map -> connection), with the checks that they are mutually inverse.
 *
 * Sign convention: transport along e: u -> v is the value of f on the based
 * loop  path_to(u), e, reverse(path_to(v)),  and holonomy is the signed sum of
 * transports in travel order. With these choices holonomy(regress(f)) equals f
 * on every loop, with no residual inversion.
 */

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "thinloop/connection.hpp"
#include "thinloop/fusion.hpp"

namespace thinloop {

/// Fusion map over the breadth-first tree at basepoint whose basis values are
/// the holonomies of c. ConnectivityError on a disconnected complex.
FusionMap transgress(const Connection& c, VertexId basepoint);

/// Connection in tree gauge: transport(e) = f(path_to(src) e reverse(path_to(dst))).
/// Uses f's own tree when basepoint is f's basepoint, otherwise the
/// breadth-first tree at basepoint.
Connection regress(const FusionMap& f, VertexId basepoint);
inline Connection regress(const FusionMap& f) { return regress(f, f.basepoint()); }

/// Outcome of the quotient construction, kept for inspection.
struct DescentResult
{
    Connection connection;
    std::size_t path_count = 0;             // based paths of length <= max_len
    std::vector<std::size_t> fiber_classes; // classes over each vertex
};

inline constexpr std::size_t kMaxDescentLength = 6;

/// Literal quotient of (based paths of length <= max_len) x A by the
/// identification (g1, a) ~ (g2, f(l(g2, g1)) a), computed with union-find.
/// Transports are read off in the trivialization given by tree paths, using
/// the holonomy convention that a horizontal lift ending at q.a has holonomy
/// a^-1 relative to q.
///
/// Throws UnsupportedSpecError for infinite groups, LimitError above
/// kMaxDescentLength, CoverageError if some vertex has no based path within
/// the bound, and InconsistencyError when a fibre does not have exactly |A|
/// classes (which happens exactly when the loop function is not fusion).
DescentResult regress_via_descent(const LoopFunction& f, const GroupSpec& group, ComplexPtr complex,
                                  VertexId basepoint, std::size_t max_len);
DescentResult regress_via_descent(const FusionMap& f, VertexId basepoint, std::size_t max_len);

struct Witness
{
    std::string subject; // basis edge, loop tokens, or edge id
    GroupElement expected;
    GroupElement actual;
    bool match;
};

struct RoundTripReport
{
    enum class Direction { FusionFirst, BundleFirst };

    Direction direction;
    bool verdict = false;
    std::size_t checked = 0;        // number of comparisons performed
    std::vector<Witness> witnesses; // every basis/edge comparison, plus every mismatching loop
    std::optional<Gauge> gauge;
};

inline constexpr std::size_t kRoundTripLoopLength = 6;

/// transgress(regress(f)) against f on the cycle basis and on every loop up
/// to loop_len.
RoundTripReport roundtrip_fusion(const FusionMap& f, std::size_t loop_len = kRoundTripLoopLength);

/// regress(transgress(c)) against c up to gauge; the witness gauge is checked
/// edge by edge.
RoundTripReport roundtrip_bundle(const Connection& c, VertexId basepoint = 0);

struct Implication
{
    bool premise;
    bool conclusion;
    bool holds() const { return !premise || conclusion; }
};

struct CorollaryACheck
{
    Implication flat_to_locally_constant;  // is_flat(c) => is_locally_constant(transgress(c))
    Implication locally_constant_to_flat;  // is_locally_constant(f) => is_flat(regress(f))
    bool holds() const { return flat_to_locally_constant.holds() && locally_constant_to_flat.holds(); }
};

CorollaryACheck corollary_a_check(const Connection& c, const FusionMap& f);

/// homotopy_class(transgress(c)) equals deformation_class(c) edge by edge.
bool theorem_c_check(const Connection& c, VertexId basepoint = 0);

/// Throws ContractError naming the first basis edge where the deformation
/// classes of a and b differ; otherwise reports whether their transgressions
/// are fusion-homotopic.
bool connection_independence_check(const Connection& a, const Connection& b, VertexId basepoint = 0);

} // namespace thinloop

#endif
