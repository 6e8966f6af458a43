#include "oracles.hpp"

#include <algorithm>
#include <deque>
#include <sstream>
#include <stdexcept>

namespace oracle {

using thinloop::GroupElement;
using thinloop::GroupSpec;

Graph graph_of(const thinloop::ComplexSpec& spec)
{
    Graph g;
    g.vertices = spec.vertices;
    std::sort(g.vertices.begin(), g.vertices.end());
    for (const auto& e : spec.edges)
        g.edges[e.id] = {e.src, e.dst};
    for (const auto& cell : spec.cells) {
        Letters w;
        for (const auto& tok : cell.boundary)
            w.push_back({tok.substr(0, tok.size() - 1), tok.back()});
        g.cells[cell.id] = w;
    }
    return g;
}

std::string tail(const Graph& g, const Letter& l)
{
    const auto& e = g.edges.at(l.edge);
    return l.sign == '+' ? e.first : e.second;
}

std::string head(const Graph& g, const Letter& l)
{
    const auto& e = g.edges.at(l.edge);
    return l.sign == '+' ? e.second : e.first;
}

Letter flip(const Letter& l) { return {l.edge, l.sign == '+' ? '-' : '+'}; }

Letters letters(const thinloop::Complex& c, const thinloop::Word& w)
{
    Letters out;
    for (const auto& t : w)
        out.push_back({c.edge(t.edge).id, t.dir == thinloop::Dir::Plus ? '+' : '-'});
    return out;
}

Letters parse(const std::string& tokens)
{
    Letters out;
    std::istringstream in(tokens);
    std::string tok;
    while (in >> tok)
        out.push_back({tok.substr(0, tok.size() - 1), tok.back()});
    return out;
}

std::string spell(const Letters& w)
{
    std::string out;
    for (const auto& l : w) {
        if (!out.empty())
            out += ' ';
        out += l.edge;
        out += l.sign;
    }
    return out;
}

bool walks(const Graph& g, const std::string& start, const Letters& w)
{
    std::string at = start;
    for (const auto& l : w) {
        if (!g.edges.count(l.edge) || tail(g, l) != at)
            return false;
        at = head(g, l);
    }
    return true;
}

Letters free_reduce(Letters w)
{
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i + 1 < w.size(); ++i) {
            if (w[i].edge == w[i + 1].edge && w[i].sign != w[i + 1].sign) {
                w.erase(w.begin() + static_cast<std::ptrdiff_t>(i), w.begin() + static_cast<std::ptrdiff_t>(i + 2));
                changed = true;
                break;
            }
        }
    }
    return w;
}

Letters canonical(const Letters& closed)
{
    Letters w = free_reduce(closed);
    while (w.size() >= 2 && w.front().edge == w.back().edge && w.front().sign != w.back().sign) {
        w.erase(w.begin());
        w.pop_back();
        w = free_reduce(w);
    }
    Letters best = w;
    for (std::size_t k = 1; k < w.size(); ++k) {
        Letters r(w.begin() + static_cast<std::ptrdiff_t>(k), w.end());
        r.insert(r.end(), w.begin(), w.begin() + static_cast<std::ptrdiff_t>(k));
        best = std::min(best, r);
    }
    return best;
}

Letters reversed(const Letters& w)
{
    Letters out;
    for (auto it = w.rbegin(); it != w.rend(); ++it)
        out.push_back(flip(*it));
    return out;
}

namespace {

std::vector<Letter> all_letters(const Graph& g)
{
    std::vector<Letter> out;
    for (const auto& [id, ends] : g.edges) {
        out.push_back({id, '+'});
        out.push_back({id, '-'});
    }
    return out;
}

template <class Visit>
void each_walk(const Graph& g, const std::string& start, std::size_t max_len, Visit&& visit)
{
    const auto alphabet = all_letters(g);
    Letters w;
    std::function<void(const std::string&)> go = [&](const std::string& at) {
        visit(at, w);
        if (w.size() == max_len)
            return;
        for (const auto& l : alphabet) {
            if (tail(g, l) != at)
                continue;
            w.push_back(l);
            go(head(g, l));
            w.pop_back();
        }
    };
    go(start);
}

} // namespace

std::set<Letters, Shortlex> loops_upto(const Graph& g, std::size_t max_len)
{
    std::set<Letters, Shortlex> out;
    for (const auto& v : g.vertices)
        each_walk(g, v, max_len, [&](const std::string& at, const Letters& w) {
            if (at == v)
                out.insert(canonical(w));
        });
    return out;
}

std::vector<Path> reduced_paths(const Graph& g, std::size_t max_len)
{
    std::set<Path> out;
    for (const auto& v : g.vertices)
        each_walk(g, v, max_len, [&](const std::string& at, const Letters& w) { out.insert({v, at, free_reduce(w)}); });
    return {out.begin(), out.end()};
}

std::optional<Path> join(const Path& a, const Path& b)
{
    if (a.end != b.start)
        return std::nullopt;
    Letters w = a.word;
    w.insert(w.end(), b.word.begin(), b.word.end());
    return Path{a.start, b.end, free_reduce(w)};
}

Path backwards(const Path& p) { return {p.end, p.start, reversed(p.word)}; }

Letters ell(const Path& a, const Path& b)
{
    if (a.start != b.start || a.end != b.end)
        throw std::logic_error("ell needs parallel paths");
    Letters w = a.word;
    const Letters back = reversed(b.word);
    w.insert(w.end(), back.begin(), back.end());
    return canonical(w);
}

Transport transport_of(const thinloop::Connection& c)
{
    Transport t;
    for (thinloop::EdgeId e = 0; e < c.complex().edge_count(); ++e)
        t.emplace(c.complex().edge(e).id, c.transport(e));
    return t;
}

GroupElement signed_sum(const GroupSpec& g, const Transport& t, const Letters& w)
{
    GroupElement acc = thinloop::identity(g);
    for (const auto& l : w) {
        const auto& v = t.at(l.edge);
        acc = l.sign == '+' ? thinloop::combine(acc, v) : thinloop::combine(acc, thinloop::invert(v));
    }
    return acc;
}

std::vector<std::map<std::string, GroupElement>> all_gauges(const Graph& graph, const GroupSpec& group,
                                                           const Transport& a, const Transport& b)
{
    const auto elements = thinloop::all_elements(group);
    const std::size_t n = graph.vertices.size();
    std::vector<std::size_t> digits(n, 0);
    std::vector<std::map<std::string, GroupElement>> out;
    while (true) {
        std::map<std::string, GroupElement> g;
        for (std::size_t i = 0; i < n; ++i)
            g.emplace(graph.vertices[i], elements[digits[i]]);
        bool ok = true;
        for (const auto& [id, ends] : graph.edges) {
            const auto moved = thinloop::combine(thinloop::combine(g.at(ends.second), a.at(id)),
                                                 thinloop::invert(g.at(ends.first)));
            if (!thinloop::equals(moved, b.at(id))) {
                ok = false;
                break;
            }
        }
        if (ok)
            out.push_back(std::move(g));
        std::size_t i = 0;
        while (i < n && ++digits[i] == elements.size())
            digits[i++] = 0;
        if (i == n)
            break;
    }
    return out;
}

std::map<std::string, std::size_t> descent_classes(const Graph& graph, const std::string& basepoint, const GroupSpec& group,
                                                   const std::function<GroupElement(const Letters&)>& f,
                                                   std::size_t max_len)
{
    std::vector<Path> paths;
    for (const auto& p : reduced_paths(graph, max_len))
        if (p.start == basepoint && p.word.size() <= max_len)
            paths.push_back(p);
    const auto elements = thinloop::all_elements(group);
    const std::size_t order = elements.size();
    auto index_of = [&](const GroupElement& x) {
        for (std::size_t k = 0; k < order; ++k)
            if (thinloop::equals(elements[k], x))
                return k;
        throw std::logic_error("element not found");
    };

    const std::size_t count = paths.size() * order;
    std::vector<std::vector<std::size_t>> adjacent(count);
    for (std::size_t i = 0; i < paths.size(); ++i)
        for (std::size_t j = 0; j < paths.size(); ++j) {
            if (paths[i].end != paths[j].end)
                continue;
            const auto shift = f(ell(paths[j], paths[i]));
            for (std::size_t k = 0; k < order; ++k) {
                const std::size_t from = i * order + k;
                const std::size_t to = j * order + index_of(thinloop::combine(shift, elements[k]));
                adjacent[from].push_back(to);
                adjacent[to].push_back(from);
            }
        }

    std::vector<int> seen(count, 0);
    std::map<std::string, std::size_t> classes;
    for (std::size_t s = 0; s < count; ++s) {
        if (seen[s])
            continue;
        ++classes[paths[s / order].end];
        std::deque<std::size_t> queue{s};
        seen[s] = 1;
        while (!queue.empty()) {
            const auto x = queue.front();
            queue.pop_front();
            for (auto y : adjacent[x])
                if (!seen[y]) {
                    seen[y] = 1;
                    queue.push_back(y);
                }
        }
    }
    return classes;
}

} // namespace oracle
