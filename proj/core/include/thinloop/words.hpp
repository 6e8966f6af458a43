#ifndef THINLOOP_WORDS_HPP
#define THINLOOP_WORDS_HPP

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

namespace thinloop {

using VertexId = std::uint32_t;
using EdgeId = std::uint32_t;
using CellId = std::uint32_t;

/// Orientation of an edge traversal. Plus sorts before Minus.
enum class Dir : std::uint8_t { Plus = 0, Minus = 1 };

inline Dir opposite(Dir d) { return d == Dir::Plus ? Dir::Minus : Dir::Plus; }

/// One step along an edge. Edge ids are indices into the complex's edge list,
/// which is sorted by edge name, so the derived ordering is (name, +/-).
struct Traversal
{
    EdgeId edge = 0;
    Dir dir = Dir::Plus;

    Traversal inverse() const { return {edge, opposite(dir)}; }
    bool cancels(const Traversal& next) const { return edge == next.edge && dir != next.dir; }

    friend auto operator<=>(const Traversal&, const Traversal&) = default;
};

using Word = std::vector<Traversal>;

/// An edge walk, not necessarily reduced. An empty word is the constant path at start.
struct EdgePath
{
    VertexId start = 0;
    Word word;
};

/// A freely reduced edge walk: a thin homotopy class of paths.
class ThinPath
{
public:
    ThinPath() = default;

    /// The caller guarantees that word is composable from start to end and reduced.
    static ThinPath from_reduced(VertexId start, VertexId end, Word word)
    {
        ThinPath p;
        p.start_ = start;
        p.end_ = end;
        p.word_ = std::move(word);
        return p;
    }

    VertexId start() const { return start_; }
    VertexId end() const { return end_; }
    const Word& word() const { return word_; }
    std::size_t length() const { return word_.size(); }
    bool empty() const { return word_.empty(); }
    bool closed() const { return start_ == end_; }

    EdgePath as_edge_path() const { return {start_, word_}; }

    friend bool operator==(const ThinPath&, const ThinPath&) = default;

private:
    VertexId start_ = 0;
    VertexId end_ = 0;
    Word word_;
};

/// A cyclically reduced word in its lexicographically least rotation: a thin
/// homotopy class of free loops. The empty word stands for every constant loop.
class ThinLoop
{
public:
    ThinLoop() = default;

    /// The caller guarantees that word is a closed walk, cyclically reduced and
    /// already in least rotation.
    static ThinLoop from_canonical(Word word)
    {
        ThinLoop l;
        l.word_ = std::move(word);
        return l;
    }

    const Word& word() const { return word_; }
    std::size_t length() const { return word_.size(); }
    bool empty() const { return word_.empty(); }

    friend auto operator<=>(const ThinLoop& a, const ThinLoop& b)
    {
        if (a.word_.size() != b.word_.size())
            return a.word_.size() <=> b.word_.size();
        return a.word_ <=> b.word_;
    }
    friend bool operator==(const ThinLoop&, const ThinLoop&) = default;

private:
    Word word_;
};

struct ThinLoopHash
{
    std::size_t operator()(const ThinLoop& l) const noexcept
    {
        std::size_t h = 0xcbf29ce484222325ULL;
        for (const auto& t : l.word()) {
            h ^= (static_cast<std::size_t>(t.edge) << 1) | static_cast<std::size_t>(t.dir);
            h *= 0x100000001b3ULL;
        }
        return h;
    }
};

} // namespace thinloop

#endif
