#include "knotcensus/planar_map.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <stdexcept>

#include "knotcensus/errors.hpp"

namespace knotcensus {

PartialGraph::PartialGraph(int vertices) {
    slots_.resize(static_cast<size_t>(vertices));
}

int PartialGraph::edge_count() const {
    int n = 0;
    for (char c : live_) n += c;
    return n;
}

int PartialGraph::degree(int v) const {
    int d = 0;
    for (End e : slots_[static_cast<size_t>(v)]) d += e != kEmpty;
    return d;
}

std::vector<int> PartialGraph::live_edges() const {
    std::vector<int> out;
    for (size_t e = 0; e < live_.size(); ++e)
        if (live_[e]) out.push_back(static_cast<int>(e));
    return out;
}

int PartialGraph::add_vertex() {
    slots_.emplace_back();
    return vertex_count() - 1;
}

int PartialGraph::add_edge() {
    live_.push_back(1);
    pos_.push_back({});
    pos_.push_back({});
    return static_cast<int>(live_.size()) - 1;
}

void PartialGraph::delete_edge(int edge) {
    for (End e : {2 * edge, 2 * edge + 1}) {
        EndPos p = pos_[static_cast<size_t>(e)];
        if (p.vertex >= 0) slots_[static_cast<size_t>(p.vertex)][static_cast<size_t>(p.slot)] = kEmpty;
        pos_[static_cast<size_t>(e)] = {};
    }
    live_[static_cast<size_t>(edge)] = 0;
}

std::vector<End> PartialGraph::rotation(int v) const {
    std::vector<End> out;
    for (End e : slots_[static_cast<size_t>(v)])
        if (e != kEmpty) out.push_back(e);
    return out;
}

void PartialGraph::repack(int v, const std::vector<End>& order) {
    auto& s = slots_[static_cast<size_t>(v)];
    s.assign(order.size(), kEmpty);
    for (size_t k = 0; k < order.size(); ++k) {
        s[k] = order[k];
        pos_[static_cast<size_t>(order[k])] = {v, static_cast<int>(k)};
    }
}

void PartialGraph::place_after(End e, End anchor) {
    EndPos p = pos_[static_cast<size_t>(anchor)];
    std::vector<End> order = rotation(p.vertex);
    auto it = std::find(order.begin(), order.end(), anchor);
    order.insert(it + 1, e);
    repack(p.vertex, order);
}

void PartialGraph::place_before(End e, End anchor) {
    EndPos p = pos_[static_cast<size_t>(anchor)];
    std::vector<End> order = rotation(p.vertex);
    auto it = std::find(order.begin(), order.end(), anchor);
    order.insert(it, e);
    repack(p.vertex, order);
}

void PartialGraph::place_append(End e, int v) {
    std::vector<End> order = rotation(v);
    order.push_back(e);
    repack(v, order);
}

int PartialGraph::multiplicity(int u, int v) const {
    return static_cast<int>(edges_between(u, v).size());
}

std::vector<int> PartialGraph::edges_between(int u, int v) const {
    std::vector<int> out;
    for (int e : live_edges()) {
        int a = end_vertex(2 * e), b = end_vertex(2 * e + 1);
        if ((a == u && b == v) || (a == v && b == u)) out.push_back(e);
    }
    return out;
}

std::vector<int> PartialGraph::loops_at(int v) const {
    std::vector<int> out;
    for (int e : live_edges())
        if (end_vertex(2 * e) == v && end_vertex(2 * e + 1) == v) out.push_back(e);
    return out;
}

bool PartialGraph::simple() const {
    for (int e : live_edges()) {
        int a = end_vertex(2 * e), b = end_vertex(2 * e + 1);
        if (a == b) return false;
        if (edges_between(a, b).size() > 1) return false;
    }
    return true;
}

int PartialGraph::component_count() const {
    std::vector<char> seen(static_cast<size_t>(vertex_count()), 0);
    int count = 0;
    for (int s = 0; s < vertex_count(); ++s) {
        if (seen[static_cast<size_t>(s)]) continue;
        ++count;
        std::queue<int> q;
        q.push(s);
        seen[static_cast<size_t>(s)] = 1;
        while (!q.empty()) {
            int v = q.front();
            q.pop();
            for (End e : rotation(v)) {
                int w = end_vertex(twin(e));
                if (!seen[static_cast<size_t>(w)]) {
                    seen[static_cast<size_t>(w)] = 1;
                    q.push(w);
                }
            }
        }
    }
    return count;
}

bool PartialGraph::connected_ignoring(const std::vector<int>& skip_edges) const {
    if (vertex_count() == 0) return true;
    std::vector<char> skip(live_.size(), 0);
    for (int e : skip_edges) skip[static_cast<size_t>(e)] = 1;
    std::vector<char> seen(static_cast<size_t>(vertex_count()), 0);
    std::queue<int> q;
    q.push(0);
    seen[0] = 1;
    int reached = 1;
    while (!q.empty()) {
        int v = q.front();
        q.pop();
        for (End e : rotation(v)) {
            if (skip[static_cast<size_t>(edge_of(e))]) continue;
            int w = end_vertex(twin(e));
            if (!seen[static_cast<size_t>(w)]) {
                seen[static_cast<size_t>(w)] = 1;
                ++reached;
                q.push(w);
            }
        }
    }
    return reached == vertex_count();
}

bool PartialGraph::is_bridge(int edge) const {
    return !connected_ignoring({edge});
}

End PartialGraph::corner_successor(End a) const {
    EndPos p = pos_[static_cast<size_t>(a)];
    const auto& s = slots_[static_cast<size_t>(p.vertex)];
    int len = static_cast<int>(s.size());
    for (int step = 1; step < len; ++step) {
        End e = s[static_cast<size_t>((p.slot + step) % len)];
        if (e != kEmpty) return e;
    }
    return a;
}

std::vector<std::vector<End>> PartialGraph::faces() const {
    std::vector<std::vector<End>> out;
    std::vector<char> used(pos_.size(), 0);
    for (size_t start = 0; start < pos_.size(); ++start) {
        if (used[start] || !live_[start >> 1]) continue;
        std::vector<End> walk;
        End e = static_cast<End>(start);
        do {
            used[static_cast<size_t>(e)] = 1;
            walk.push_back(e);
            e = corner_successor(twin(e));
        } while (e != static_cast<End>(start));
        out.push_back(std::move(walk));
    }
    return out;
}

std::vector<int> PartialGraph::face_of_end() const {
    std::vector<int> out(pos_.size(), -1);
    auto fs = faces();
    for (size_t f = 0; f < fs.size(); ++f)
        for (End e : fs[f]) out[static_cast<size_t>(e)] = static_cast<int>(f);
    return out;
}

int PartialGraph::genus() const {
    int v = vertex_count();
    int e = edge_count();
    int f = static_cast<int>(faces().size());
    // Edgeless components still bound one sphere face that no walk visits.
    std::vector<char> seen(static_cast<size_t>(v), 0);
    int comps = 0;
    for (int s = 0; s < v; ++s) {
        if (seen[static_cast<size_t>(s)]) continue;
        ++comps;
        if (degree(s) == 0) {
            seen[static_cast<size_t>(s)] = 1;
            ++f;
            continue;
        }
        std::queue<int> q;
        q.push(s);
        seen[static_cast<size_t>(s)] = 1;
        while (!q.empty()) {
            int x = q.front();
            q.pop();
            for (End d : rotation(x)) {
                int w = end_vertex(twin(d));
                if (!seen[static_cast<size_t>(w)]) {
                    seen[static_cast<size_t>(w)] = 1;
                    q.push(w);
                }
            }
        }
    }
    int defect = 2 * comps - (v - e + f);
    if (defect & 1) throw std::domain_error("planar_map: odd Euler defect");
    return defect / 2;
}

PartialGraph PartialGraph::from_shadow(const PdCode& code) {
    PartialGraph g(code.crossings());
    int edges = code.edge_count();
    for (int e = 0; e < edges; ++e) g.add_edge();
    for (size_t v = 0; v < code.verts.size(); ++v) {
        g.slots_[v].assign(4, kEmpty);
        for (int k = 0; k < 4; ++k) {
            SignedEdge s = code.verts[v][static_cast<size_t>(k)];
            int e = (s > 0 ? s : -s) - 1;
            End end = 2 * e + (s < 0 ? 1 : 0);
            g.slots_[v][static_cast<size_t>(k)] = end;
            g.pos_[static_cast<size_t>(end)] = {static_cast<int>(v), k};
        }
    }
    return g;
}

PdCode PartialGraph::to_shadow() const {
    for (int v = 0; v < vertex_count(); ++v)
        if (degree(v) != 4 || slots_[static_cast<size_t>(v)].size() != 4)
            throw std::invalid_argument(
                "planar_map: to_shadow needs four occupied slots per vertex");
    PdCode code;
    code.verts.assign(static_cast<size_t>(vertex_count()), {0, 0, 0, 0});
    std::vector<char> oriented(live_.size(), 0);
    int label = 0;
    for (size_t seed = 0; seed < live_.size(); ++seed) {
        if (!live_[seed] || oriented[seed]) continue;
        End start = 2 * static_cast<End>(seed);
        End depart = start;
        do {
            oriented[static_cast<size_t>(edge_of(depart))] = 1;
            ++label;
            End arrive = twin(depart);
            EndPos tail = pos_[static_cast<size_t>(depart)];
            EndPos head = pos_[static_cast<size_t>(arrive)];
            code.verts[static_cast<size_t>(tail.vertex)][static_cast<size_t>(tail.slot)] = -label;
            code.verts[static_cast<size_t>(head.vertex)][static_cast<size_t>(head.slot)] = label;
            depart = slots_[static_cast<size_t>(head.vertex)]
                           [static_cast<size_t>((head.slot + 2) & 3)];
        } while (depart != start);
    }
    Validation check = validate(code);
    if (!check.ok())
        throw std::logic_error("planar_map: strand labeling produced an invalid code: " +
                               check.detail);
    return code;
}

namespace {

// Rotation of v starting at `from`, forward (dir=+1) or reversed (dir=-1).
std::vector<End> rotation_from(const PartialGraph& g, int v, End from, int dir) {
    std::vector<End> rot = g.rotation(v);
    std::vector<End> out;
    auto it = std::find(rot.begin(), rot.end(), from);
    size_t k = static_cast<size_t>(it - rot.begin());
    size_t m = rot.size();
    for (size_t i = 0; i < m; ++i)
        out.push_back(rot[(k + m + (dir > 0 ? i : m - i)) % m]);
    return out;
}

std::string encode_from(const PartialGraph& g, End root, int dir) {
    std::vector<int> vnum(static_cast<size_t>(g.vertex_count()), -1);
    std::vector<End> entry(static_cast<size_t>(g.vertex_count()), -1);
    std::vector<int> order;
    auto discover = [&](int v, End via) {
        if (vnum[static_cast<size_t>(v)] < 0) {
            vnum[static_cast<size_t>(v)] = static_cast<int>(order.size());
            entry[static_cast<size_t>(v)] = via;
            order.push_back(v);
        }
    };
    discover(g.end_vertex(root), root);
    std::string enc;
    for (size_t i = 0; i < order.size(); ++i) {
        int v = order[i];
        auto rot = rotation_from(g, v, entry[static_cast<size_t>(v)], dir);
        enc += '|';
        for (End d : rot) {
            End t = PartialGraph::twin(d);
            int w = g.end_vertex(t);
            discover(w, t);
            auto wrot = rotation_from(g, w, entry[static_cast<size_t>(w)], dir);
            size_t off = static_cast<size_t>(
                std::find(wrot.begin(), wrot.end(), t) - wrot.begin());
            enc += std::to_string(vnum[static_cast<size_t>(w)]);
            enc += '.';
            enc += std::to_string(off);
            enc += ';';
        }
    }
    return enc;
}

}  // namespace

std::string PartialGraph::canonical_encoding() const {
    // Per component: minimum over every root end and both directions; then
    // components sorted, with edgeless vertices counted up front.
    std::vector<char> seen(static_cast<size_t>(vertex_count()), 0);
    int isolated = 0;
    std::vector<std::string> parts;
    for (int s = 0; s < vertex_count(); ++s) {
        if (seen[static_cast<size_t>(s)]) continue;
        if (degree(s) == 0) {
            seen[static_cast<size_t>(s)] = 1;
            ++isolated;
            continue;
        }
        std::vector<int> verts;
        std::queue<int> q;
        q.push(s);
        seen[static_cast<size_t>(s)] = 1;
        while (!q.empty()) {
            int v = q.front();
            q.pop();
            verts.push_back(v);
            for (End e : rotation(v)) {
                int w = end_vertex(twin(e));
                if (!seen[static_cast<size_t>(w)]) {
                    seen[static_cast<size_t>(w)] = 1;
                    q.push(w);
                }
            }
        }
        std::string best;
        for (int v : verts) {
            for (End e : rotation(v)) {
                for (int dir : {1, -1}) {
                    std::string enc = encode_from(*this, e, dir);
                    if (best.empty() || enc < best) best = std::move(enc);
                }
            }
        }
        parts.push_back(std::move(best));
    }
    std::sort(parts.begin(), parts.end());
    std::string out = "V" + std::to_string(isolated);
    for (const auto& p : parts) out += p;
    return out;
}

PartialGraph dual_map(const PartialGraph& g) {
    auto fs = g.faces();
    PartialGraph d(static_cast<int>(fs.size()));
    std::map<int, int> dual_edge;
    for (size_t f = 0; f < fs.size(); ++f) {
        for (End a : fs[f]) {
            int e = PartialGraph::edge_of(a);
            auto it = dual_edge.find(e);
            End dend;
            if (it == dual_edge.end()) {
                dend = 2 * d.add_edge();
                dual_edge.emplace(e, PartialGraph::edge_of(dend));
            } else {
                dend = 2 * it->second + 1;
            }
            d.place_append(dend, static_cast<int>(f));
        }
    }
    return d;
}

std::vector<PartialGraph> parse_planar_code(const std::string& bytes) {
    static const std::string magic = ">>planar_code<<";
    if (bytes.size() < magic.size() || bytes.compare(0, magic.size(), magic) != 0)
        throw BadMagicHeader("planar_code: bad magic header");
    size_t p = magic.size();
    std::vector<PartialGraph> out;
    while (p < bytes.size()) {
        int n = static_cast<unsigned char>(bytes[p++]);
        if (n == 0) throw TruncatedRecord("planar_code: zero vertex count");
        PartialGraph g(n);
        std::map<std::pair<int, int>, int> pending;
        for (int v = 0; v < n; ++v) {
            for (;;) {
                if (p >= bytes.size())
                    throw TruncatedRecord("planar_code: truncated record");
                int w = static_cast<unsigned char>(bytes[p++]);
                if (w == 0) break;
                if (w < 1 || w > n)
                    throw TruncatedRecord("planar_code: neighbor out of range");
                int u = w - 1;
                if (u == v)
                    throw std::invalid_argument("planar_code: loop edges unsupported");
                std::pair<int, int> key = std::minmax(u, v);
                auto it = pending.find(key);
                if (it == pending.end()) {
                    int e = g.add_edge();
                    g.place_append(2 * e, v);
                    pending.emplace(key, e);
                } else {
                    g.place_append(2 * it->second + 1, v);
                    pending.erase(it);
                }
            }
        }
        if (!pending.empty())
            throw TruncatedRecord("planar_code: unmatched adjacency");
        out.push_back(std::move(g));
    }
    return out;
}

std::string write_planar_code(const std::vector<PartialGraph>& graphs) {
    std::string out = ">>planar_code<<";
    for (const PartialGraph& g : graphs) {
        if (!g.simple())
            throw std::invalid_argument("planar_code: only simple graphs are representable");
        if (g.vertex_count() > 255)
            throw std::invalid_argument("planar_code: more than 255 vertices");
        out += static_cast<char>(g.vertex_count());
        for (int v = 0; v < g.vertex_count(); ++v) {
            for (End e : g.rotation(v))
                out += static_cast<char>(g.end_vertex(PartialGraph::twin(e)) + 1);
            out += '\0';
        }
    }
    return out;
}

}  // namespace knotcensus
