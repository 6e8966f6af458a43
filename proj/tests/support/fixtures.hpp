#ifndef THINLOOP_TESTS_FIXTURES_HPP
#define THINLOOP_TESTS_FIXTURES_HPP

#include <initializer_list>
#include <memory>
#include <string>

#include "thinloop/complex.hpp"
#include "thinloop/connection.hpp"
#include "thinloop/fusion.hpp"
#include "thinloop/group.hpp"

namespace fixtures {

/// Two vertices p, q and three parallel edges e1, e2, e3 : p -> q.
thinloop::ComplexSpec theta_spec();
/// Theta with one cell c1 glued along e2+ e1-.
thinloop::ComplexSpec theta_cell_spec();

inline thinloop::ComplexPtr build(const thinloop::ComplexSpec& spec)
{
    return std::make_shared<const thinloop::Complex>(thinloop::Complex::build(spec));
}
inline thinloop::ComplexPtr theta() { return build(theta_spec()); }
inline thinloop::ComplexPtr theta_cell() { return build(theta_cell_spec()); }

/// Connection from residues (or integers, for Z) per edge, in edge-id order.
thinloop::Connection residues(thinloop::ComplexPtr c, const thinloop::GroupSpec& g, std::initializer_list<long> values);

/// Fusion map over the breadth-first tree at vertex 0 from residues on the
/// non-tree edges, in edge-id order.
thinloop::FusionMap fusion(thinloop::ComplexPtr c, const thinloop::GroupSpec& g, std::initializer_list<long> values);

inline const std::string kDataDir = THINLOOP_TEST_DATA_DIR;

} // namespace fixtures

#endif
