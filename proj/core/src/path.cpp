#include "thinloop/path.hpp"

#include <sstream>

#include "thinloop/errors.hpp"

namespace thinloop {

namespace {

void check_composable(const Complex& c, const EdgePath& p)
{
    if (p.start >= c.vertex_count())
        throw StructuralError("path starts at a vertex outside the complex");
    VertexId at = p.start;
    for (std::size_t i = 0; i < p.word.size(); ++i) {
        const auto& t = p.word[i];
        if (t.edge >= c.edge_count())
            throw StructuralError("path uses an edge outside the complex");
        if (c.tail(t) != at)
            throw ComposabilityError("walk breaks at step " + std::to_string(i) + " (" + c.token(t) + " does not start at "
                                     + c.vertex_name(at) + ")");
        at = c.head(t);
    }
}

VertexId end_of(const Complex& c, const EdgePath& p)
{
    return p.word.empty() ? p.start : c.head(p.word.back());
}

// Stack-based free reduction; the word is already known to be composable.
Word free_reduce(const Word& w)
{
    Word out;
    out.reserve(w.size());
    for (const auto& t : w) {
        if (!out.empty() && out.back().cancels(t))
            out.pop_back();
        else
            out.push_back(t);
    }
    return out;
}

Word least_rotation(const Word& w)
{
    const std::size_t n = w.size();
    std::size_t best = 0;
    for (std::size_t k = 1; k < n; ++k) {
        for (std::size_t i = 0; i < n; ++i) {
            const auto& a = w[(k + i) % n];
            const auto& b = w[(best + i) % n];
            if (a < b) {
                best = k;
                break;
            }
            if (b < a)
                break;
        }
    }
    Word out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
        out.push_back(w[(best + i) % n]);
    return out;
}

// Cyclic reduction of a freely reduced closed word.
Word cyclic_reduce(Word w)
{
    std::size_t lo = 0, hi = w.size();
    while (hi - lo >= 2 && w[hi - 1].cancels(w[lo])) {
        ++lo;
        --hi;
    }
    return Word(w.begin() + static_cast<std::ptrdiff_t>(lo), w.begin() + static_cast<std::ptrdiff_t>(hi));
}

} // namespace

ThinPath reduce(const Complex& c, const EdgePath& p)
{
    check_composable(c, p);
    return ThinPath::from_reduced(p.start, end_of(c, p), free_reduce(p.word));
}

ThinPath identity_path(VertexId v) { return ThinPath::from_reduced(v, v, {}); }

ThinPath reverse(const Complex&, const ThinPath& p)
{
    Word w;
    w.reserve(p.length());
    for (auto it = p.word().rbegin(); it != p.word().rend(); ++it)
        w.push_back(it->inverse());
    return ThinPath::from_reduced(p.end(), p.start(), std::move(w));
}

ThinPath compose(const Complex& c, const ThinPath& p, const ThinPath& q)
{
    if (p.end() != q.start())
        throw ComposabilityError("cannot compose: first path ends at " + c.vertex_name(p.end())
                                 + ", second starts at " + c.vertex_name(q.start()));
    Word w = p.word();
    for (const auto& t : q.word()) {
        if (!w.empty() && w.back().cancels(t))
            w.pop_back();
        else
            w.push_back(t);
    }
    return ThinPath::from_reduced(p.start(), q.end(), std::move(w));
}

ThinLoop canonical_loop(const Complex& c, const EdgePath& p)
{
    check_composable(c, p);
    if (end_of(c, p) != p.start)
        throw StructuralError("canonical_loop needs a closed walk; this one ends at " + c.vertex_name(end_of(c, p)));
    return ThinLoop::from_canonical(least_rotation(cyclic_reduce(free_reduce(p.word))));
}

ThinLoop loop_of_pair(const Complex& c, const ThinPath& gamma1, const ThinPath& gamma2)
{
    if (gamma1.start() != gamma2.start() || gamma1.end() != gamma2.end())
        throw ComposabilityError("loop_of_pair needs paths with common start and end points");
    const auto closed = compose(c, gamma1, reverse(c, gamma2));
    return ThinLoop::from_canonical(least_rotation(cyclic_reduce(closed.word())));
}

ThinLoop inverse(const Complex&, const ThinLoop& l)
{
    Word w;
    w.reserve(l.length());
    for (auto it = l.word().rbegin(); it != l.word().rend(); ++it)
        w.push_back(it->inverse());
    return ThinLoop::from_canonical(least_rotation(w));
}

std::optional<VertexId> loop_start(const Complex& c, const ThinLoop& l)
{
    if (l.empty())
        return std::nullopt;
    return c.tail(l.word().front());
}

EdgePath rotation(const Complex& c, const ThinLoop& l, std::size_t k)
{
    if (l.empty())
        throw StructuralError("the empty loop has no rotations");
    const std::size_t n = l.length();
    k %= n;
    EdgePath out{c.tail(l.word()[k]), {}};
    out.word.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
        out.word.push_back(l.word()[(k + i) % n]);
    return out;
}

ThinPath base_loop(const Complex& c, const Tree& t, const ThinLoop& l)
{
    if (l.empty())
        return identity_path(t.basepoint());
    const auto v = *loop_start(c, l);
    const auto& to_v = t.path_to(v);
    const auto loop = ThinPath::from_reduced(v, v, l.word());
    return compose(c, compose(c, to_v, loop), reverse(c, to_v));
}

ThinLoop cell_move(const Complex& c, const ThinLoop& l, CellId cell, std::size_t position, int direction)
{
    if (cell >= c.cell_count())
        throw StructuralError("cell_move: unknown cell");
    if (direction != 1 && direction != -1)
        throw MoveError("cell_move direction must be +1 or -1");
    const auto& boundary = c.cell(cell).boundary;

    if (direction == 1) {
        if (l.empty())
            return canonical_loop(c, {c.cell(cell).start, boundary});
        const EdgePath site = rotation(c, l, position);
        const Tree local = spanning_tree(c, site.start);
        const auto& kappa = local.path_to(c.cell(cell).start);
        EdgePath walk{site.start, kappa.word()};
        walk.word.insert(walk.word.end(), boundary.begin(), boundary.end());
        const ThinPath back = reverse(c, kappa);
        for (const auto& t : back.word())
            walk.word.push_back(t);
        walk.word.insert(walk.word.end(), site.word.begin(), site.word.end());
        return canonical_loop(c, walk);
    }

    const std::size_t m = boundary.size();
    if (l.length() < m)
        throw MoveError("cell_move: boundary of " + c.cell(cell).id + " does not occur in the loop");
    const std::size_t n = l.length();
    const std::size_t k = position % n;
    for (std::size_t r = 0; r < m; ++r) {
        bool match = true;
        for (std::size_t i = 0; i < m && match; ++i)
            match = l.word()[(k + i) % n] == boundary[(r + i) % m];
        if (!match)
            continue;
        // What remains is a closed walk from the end of the excised block.
        Word rest;
        for (std::size_t i = m; i < n; ++i)
            rest.push_back(l.word()[(k + i) % n]);
        const VertexId start = rest.empty() ? 0 : c.tail(rest.front());
        if (rest.empty())
            return ThinLoop{};
        return canonical_loop(c, {start, std::move(rest)});
    }
    throw MoveError("cell_move: boundary of " + c.cell(cell).id + " does not occur at position "
                    + std::to_string(position));
}

std::string format_word(const Complex& c, const Word& w)
{
    std::string out;
    for (const auto& t : w) {
        if (!out.empty())
            out += ' ';
        out += c.token(t);
    }
    return out;
}

Word parse_word(const Complex& c, std::string_view text)
{
    Word w;
    std::istringstream in{std::string(text)};
    std::string token;
    while (in >> token) {
        try {
            w.push_back(c.parse_token(token));
        } catch (const StructuralError& e) {
            throw ParseError(e.what());
        }
    }
    return w;
}

ThinPath parse_path(const Complex& c, std::string_view text, std::optional<VertexId> start)
{
    Word w = parse_word(c, text);
    if (w.empty()) {
        if (!start)
            throw ParseError("an empty path needs an explicit start vertex");
        return identity_path(*start);
    }
    const VertexId from = start.value_or(c.tail(w.front()));
    return reduce(c, {from, std::move(w)});
}

ThinLoop parse_loop(const Complex& c, std::string_view text)
{
    Word w = parse_word(c, text);
    if (w.empty())
        return ThinLoop{};
    const VertexId from = c.tail(w.front());
    return canonical_loop(c, {from, std::move(w)});
}

} // namespace thinloop
