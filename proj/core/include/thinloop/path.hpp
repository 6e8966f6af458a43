#ifndef THINLOOP_PATH_HPP
#define THINLOOP_PATH_HPP

/**
 * Thin homotopy classes of paths and loops.
 *
 * Paths are freely reduced edge words and form a groupoid under concatenation.
 * Loops are cyclically reduced words in least rotation. Homotopy across a
 * 2-cell is never decided implicitly; it is the explicit cell_move.
 *
 * Word order is travel order: compose(p, q) walks p first, then q.
 */

#include <optional>
#include <string>
#include <string_view>

#include "thinloop/complex.hpp"
#include "thinloop/words.hpp"

namespace thinloop {

/// Free reduction. Throws ComposabilityError if consecutive steps do not chain.
ThinPath reduce(const Complex& c, const EdgePath& p);

ThinPath identity_path(VertexId v);
ThinPath reverse(const Complex& c, const ThinPath& p);
/// p then q, reduced. Throws ComposabilityError unless p ends where q starts.
ThinPath compose(const Complex& c, const ThinPath& p, const ThinPath& q);

/// Free and cyclic reduction followed by least rotation. Throws
/// StructuralError if p is not closed.
ThinLoop canonical_loop(const Complex& c, const EdgePath& p);

/// The loop formed by gamma1 followed by the reverse of gamma2. Both paths
/// must share their start and end vertices.
ThinLoop loop_of_pair(const Complex& c, const ThinPath& gamma1, const ThinPath& gamma2);

/// The same loop traversed backwards.
ThinLoop inverse(const Complex& c, const ThinLoop& l);

/// Vertex where the canonical rotation starts; nullopt for the empty loop.
std::optional<VertexId> loop_start(const Complex& c, const ThinLoop& l);

/// Rotation of l beginning at its k-th letter, as a closed walk.
EdgePath rotation(const Complex& c, const ThinLoop& l, std::size_t k);

/// Conjugates the canonical rotation of l to the tree's basepoint by the tree
/// path to its start vertex; canonical_loop of the result is l again. The
/// empty loop maps to the identity at the basepoint.
ThinPath base_loop(const Complex& c, const Tree& t, const ThinLoop& l);

/// Homotopy across a 2-cell at letter `position` of l (taken modulo the loop
/// length). Direction +1 inserts the cell's boundary there, conjugated by the
/// breadth-first tree path from the site to the boundary's start vertex.
/// Direction -1 excises a rotation of the boundary word that begins at
/// `position`; MoveError if none does.
ThinLoop cell_move(const Complex& c, const ThinLoop& l, CellId cell, std::size_t position, int direction);

/// Whitespace-separated traversal tokens, e.g. "e2+ e1-".
std::string format_word(const Complex& c, const Word& w);
Word parse_word(const Complex& c, std::string_view text);

/// Parses tokens into a reduced path. An empty token list needs `start`.
ThinPath parse_path(const Complex& c, std::string_view text, std::optional<VertexId> start = std::nullopt);
/// Parses a closed walk and canonicalizes it.
ThinLoop parse_loop(const Complex& c, std::string_view text);

} // namespace thinloop

#endif
